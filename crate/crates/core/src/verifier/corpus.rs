//! Running every applicable check over a list of groups.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::claims::*;
use super::{Case, Claim, Report, Summary};
use crate::fingrp::{builtin, load_group_file, FiniteGroup, GroupError, Subgroup};

/// Built-in groups checked when no manifest is given.
pub const DEFAULT_MANIFEST: &str = "\
# order 8
builtin:cyclic(8)
builtin:abelian(4,2)
builtin:abelian(2,2,2)
builtin:dihedral(8)
builtin:quaternion(8)
# order 16
builtin:cyclic(16)
builtin:abelian(8,2)
builtin:abelian(4,4)
builtin:abelian(4,2,2)
builtin:abelian(2,2,2,2)
builtin:dihedral(16)
builtin:quaternion(16)
builtin:semidihedral(16)
builtin:modular(2,4)
builtin:direct_product(dihedral(8),cyclic(2))
builtin:direct_product(quaternion(8),cyclic(2))
# odd order
builtin:heisenberg(3)
builtin:modular(3,3)
builtin:abelian(9,3)
builtin:abelian(3,3)
builtin:cyclic(27)
# order 32
builtin:dihedral(32)
builtin:quaternion(32)
builtin:modular(2,5)
builtin:semidihedral(32)
builtin:abelian(8,4)
builtin:direct_product(dihedral(8),cyclic(4))
builtin:direct_product(quaternion(8),cyclic(4))
builtin:direct_product(modular(2,4),cyclic(2))
builtin:direct_product(dihedral(8),abelian(2,2))
# small and non-nilpotent
builtin:cyclic(2)
builtin:cyclic(4)
builtin:abelian(2,2)
builtin:dihedral(6)
builtin:cyclic(6)
";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ManifestEntry {
    Builtin(String),
    File(PathBuf),
}

impl ManifestEntry {
    pub fn load(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            ManifestEntry::Builtin(spec) => builtin(spec),
            ManifestEntry::File(path) => load_group_file(path),
        }
    }
}

impl std::fmt::Display for ManifestEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManifestEntry::Builtin(s) => write!(f, "builtin:{s}"),
            ManifestEntry::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// One entry per non-blank line, `builtin:<spec>` or `file:<path>`; `#`
/// starts a comment. Relative file paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: Option<&Path>) -> Result<Vec<ManifestEntry>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(spec) = line.strip_prefix("builtin:") {
            out.push(ManifestEntry::Builtin(spec.trim().to_string()));
        } else if let Some(path) = line.strip_prefix("file:") {
            let path = PathBuf::from(path.trim());
            let path = match base {
                Some(b) if path.is_relative() => b.join(path),
                _ => path,
            };
            out.push(ManifestEntry::File(path));
        } else {
            return Err(format!(
                "line {}: expected `builtin:<spec>` or `file:<path>`, got `{line}`",
                i + 1
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryError {
    pub entry: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bundle {
    pub groups: Vec<String>,
    /// One report per claim that produced cases, in claim order.
    pub reports: Vec<Report>,
    pub errors: Vec<EntryError>,
    pub summary: Summary,
}

impl Bundle {
    pub fn from_cases(groups: Vec<String>, cases: Vec<Case>, errors: Vec<EntryError>) -> Self {
        let mut by_claim: BTreeMap<Claim, Vec<Case>> = BTreeMap::new();
        for c in cases {
            by_claim.entry(c.subject).or_default().push(c);
        }
        let reports: Vec<Report> = by_claim
            .into_iter()
            .map(|(claim, cases)| Report::new(claim, cases))
            .collect();
        let mut summary = Summary::default();
        for r in &reports {
            summary.add(&r.summary);
        }
        Bundle {
            groups,
            reports,
            errors,
            summary,
        }
    }

    pub fn report(&self, claim: Claim) -> Option<&Report> {
        self.reports.iter().find(|r| r.subject == claim)
    }

    pub fn is_success(&self) -> bool {
        self.summary.disagree == 0
    }
}

fn label(s: &Subgroup, named: &[(&str, &Subgroup)]) -> String {
    match named.iter().find(|(_, t)| *t == s) {
        Some((n, _)) => n.to_string(),
        None if s.is_trivial() => "1".into(),
        None => format!("<order {}>", s.order()),
    }
}

/// Largest group order for which the subgroup-pair checks run.
pub const PAIR_CHECK_MAX_ORDER: usize = 32;

/// Every applicable check on one group. Checks whose preconditions the
/// group does not meet are left out; hypotheses that fail inside a check
/// produce skipped cases.
pub fn run_group(ctx: &GroupContext) -> Result<Vec<Case>, VerifyError> {
    let g = &ctx.group;
    let mut cases = Vec::new();
    let z = &ctx.center;
    let whole = g.whole();
    let gz = g.join(&ctx.derived, z);
    let named = [("Z", z), ("G'Z", &gz), ("G", &whole)];

    if g.order() <= PAIR_CHECK_MAX_ORDER {
        let normals = g.normal_subgroups();
        let mut xs: Vec<&Subgroup> = vec![z, &gz, &whole];
        xs.dedup();
        for x in xs {
            for y in normals
                .iter()
                .filter(|y| y.is_subset_of(z) && y.is_subset_of(x))
            {
                let input = format!("X={}, Y={}", label(x, &named), label(y, &named));
                cases.push(verify_lemma23(ctx, x, y, &input)?);
            }
        }
        if !ctx.is_abelian() {
            for m in normals.iter().filter(|m| m.is_subset_of(z)) {
                for n in normals.iter().filter(|n| z.is_subset_of(n)) {
                    let input = format!("M={}, N={}", label(m, &named), label(n, &named));
                    cases.push(verify_cor25(ctx, m, n, &input)?);
                }
            }
        }
    }

    let is_p = g.p_group_prime().is_some();
    if is_p {
        cases.push(verify_attar(ctx)?);
        cases.extend(verify_cor28_29(ctx)?);
        cases.push(verify_cor210(ctx)?);
    }
    if ctx.class == Some(2) {
        cases.push(verify_cor24(ctx)?);
    }
    if ctx.class.is_some_and(|c| c >= 2) {
        cases.extend(verify_cor26_27(ctx)?);
    }
    cases.push(verify_exp_equality(ctx)?);
    Ok(cases)
}

/// Loads every entry, runs [`run_group`] on it and aggregates the results.
/// Entries that fail to load or to compute are recorded and skipped.
pub fn run_corpus(entries: &[ManifestEntry], max_order: usize) -> Bundle {
    let results: Vec<Result<(String, Vec<Case>), EntryError>> = entries
        .par_iter()
        .map(|entry| {
            let err = |message: String| EntryError {
                entry: entry.to_string(),
                message,
            };
            let group = entry.load().map_err(|e| err(e.to_string()))?;
            let ctx = GroupContext::new(group, max_order).map_err(|e| err(e.to_string()))?;
            let cases = run_group(&ctx).map_err(|e| err(e.to_string()))?;
            Ok((ctx.name().to_string(), cases))
        })
        .collect();
    let mut groups = Vec::new();
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok((name, c)) => {
                groups.push(name);
                cases.extend(c);
            }
            Err(e) => errors.push(e),
        }
    }
    Bundle::from_cases(groups, cases, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::DEFAULT_MAX_ORDER;

    #[test]
    fn manifest_parsing() {
        let text = "# comment\n\nbuiltin:dihedral(8)\nfile: groups/a.json # trailing\n";
        let entries = parse_manifest(text, Some(Path::new("/tmp"))).unwrap();
        assert_eq!(
            entries,
            vec![
                ManifestEntry::Builtin("dihedral(8)".into()),
                ManifestEntry::File(PathBuf::from("/tmp/groups/a.json")),
            ]
        );
        let err = parse_manifest("builtin:cyclic(2)\nnonsense", None).unwrap_err();
        assert!(err.starts_with("line 2"), "{err}");
    }

    #[test]
    fn default_manifest_shape() {
        let entries = parse_manifest(DEFAULT_MANIFEST, None).unwrap();
        assert!(entries.len() >= 14);
        let orders: Vec<usize> = entries.iter().map(|e| e.load().unwrap().order()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 5);
        assert!(orders.iter().filter(|&&o| o == 16).count() >= 7);
    }

    #[test]
    fn load_errors_are_recorded() {
        let entries = vec![
            ManifestEntry::Builtin("quaternion(8)".into()),
            ManifestEntry::Builtin("nosuch(3)".into()),
            ManifestEntry::File(PathBuf::from("/nonexistent.json")),
        ];
        let bundle = run_corpus(&entries, DEFAULT_MAX_ORDER);
        assert_eq!(bundle.groups, vec!["quaternion(8)".to_string()]);
        assert_eq!(bundle.errors.len(), 2);
        assert!(bundle.is_success(), "{:?}", bundle.summary);
        assert!(bundle.report(Claim::Attar).is_some());
    }

    #[test]
    fn empty_manifest_succeeds() {
        let entries = parse_manifest("# nothing here\n", None).unwrap();
        let bundle = run_corpus(&entries, DEFAULT_MAX_ORDER);
        assert!(bundle.groups.is_empty() && bundle.reports.is_empty());
        assert!(bundle.is_success());
    }

    #[test]
    fn class_two_predictions_coincide() {
        // for p-groups of class 2 the set-level and invariant-level
        // predictions about C* and Inn must be the same
        let entries = parse_manifest(DEFAULT_MANIFEST, None).unwrap();
        let bundle = run_corpus(&entries, DEFAULT_MAX_ORDER);
        let attar = bundle.report(Claim::Attar).unwrap();
        let cor24 = bundle.report(Claim::Cor24).unwrap();
        let mut compared = 0;
        for c in &cor24.cases {
            if let Some(a) = attar.cases.iter().find(|a| a.group == c.group) {
                assert_eq!(a.predicted, c.predicted, "{}", c.group);
                compared += 1;
            }
        }
        assert!(compared >= 4, "{compared}");
    }

    #[test]
    fn corrupt_file_only_affects_its_entry() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("c3.json"),
            r#"{"name": "c3", "table": [[0,1,2],[1,2,0],[2,0,1]]}"#,
        )
        .unwrap();
        // row 1 repeats an element, so this is not a group table
        std::fs::write(
            dir.path().join("bad.json"),
            r#"{"name": "bad", "table": [[0,1],[1,1]]}"#,
        )
        .unwrap();
        let text = "file:c3.json\nfile:bad.json\nbuiltin:quaternion(8)\n";
        let entries = parse_manifest(text, Some(dir.path())).unwrap();
        let bundle = run_corpus(&entries, DEFAULT_MAX_ORDER);
        assert_eq!(
            bundle.groups,
            vec!["c3".to_string(), "quaternion(8)".to_string()]
        );
        assert_eq!(bundle.errors.len(), 1);
        assert!(bundle.errors[0].entry.ends_with("bad.json"));
        assert!(bundle.is_success());
    }
}
