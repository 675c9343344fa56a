//! Cross-checks of invariant-level predictions against brute-force
//! automorphism computations, collected into reports.

mod claims;
mod corpus;
mod sweep;

pub use claims::{
    verify_attar, verify_cor210, verify_cor24, verify_cor25, verify_cor26_27, verify_cor28_29,
    verify_exp_equality, verify_lemma23, GroupContext, VerifyError,
};
pub use corpus::{
    parse_manifest, run_corpus, run_group, Bundle, EntryError, ManifestEntry, DEFAULT_MANIFEST,
};
pub use sweep::{enumerate_groups, sweep_lemma21, SweepBounds, SweepStats};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Claim {
    Lemma21Sweep,
    Lemma23,
    Attar,
    Cor24,
    Cor25,
    Cor26,
    Cor27,
    Cor28,
    Cor29,
    Cor210,
    #[serde(rename = "EXP_EQUALITY_210")]
    ExpEquality210,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::Lemma21Sweep,
        Claim::Lemma23,
        Claim::Attar,
        Claim::Cor24,
        Claim::Cor25,
        Claim::Cor26,
        Claim::Cor27,
        Claim::Cor28,
        Claim::Cor29,
        Claim::Cor210,
        Claim::ExpEquality210,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Lemma21Sweep => "LEMMA21_SWEEP",
            Claim::Lemma23 => "LEMMA23",
            Claim::Attar => "ATTAR",
            Claim::Cor24 => "COR24",
            Claim::Cor25 => "COR25",
            Claim::Cor26 => "COR26",
            Claim::Cor27 => "COR27",
            Claim::Cor28 => "COR28",
            Claim::Cor29 => "COR29",
            Claim::Cor210 => "COR210",
            Claim::ExpEquality210 => "EXP_EQUALITY_210",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Claim {
    type Err = String;

    /// Accepts the report identifiers case-insensitively, with or without
    /// underscores (`cor24`, `COR24`, `exp_equality_210`, `exp210`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        if key == "exp210" {
            return Ok(Claim::ExpEquality210);
        }
        Claim::ALL
            .into_iter()
            .find(|c| c.as_str().replace('_', "").to_lowercase() == key)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

pub const FLAG_SKIPPED: &str = "SKIPPED";
pub const FLAG_DEGENERATE: &str = "DEGENERATE";

/// One comparison of a prediction with an observation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub subject: Claim,
    pub group: String,
    pub input: String,
    pub predicted: String,
    pub observed: String,
    pub agree: bool,
    pub flags: Vec<String>,
}

impl Case {
    pub fn compare(
        subject: Claim,
        group: &str,
        input: impl Into<String>,
        predicted: impl ToString,
        observed: impl ToString,
    ) -> Self {
        let predicted = predicted.to_string();
        let observed = observed.to_string();
        Case {
            subject,
            group: group.to_string(),
            input: input.into(),
            agree: predicted == observed,
            predicted,
            observed,
            flags: Vec::new(),
        }
    }

    /// A case whose hypotheses do not hold; never counts as a disagreement.
    pub fn skipped(subject: Claim, group: &str, input: impl Into<String>, reason: &str) -> Self {
        Case {
            subject,
            group: group.to_string(),
            input: input.into(),
            predicted: "-".into(),
            observed: "-".into(),
            agree: true,
            flags: vec![FLAG_SKIPPED.into(), reason.to_string()],
        }
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }

    pub fn is_skipped(&self) -> bool {
        self.flags.iter().any(|f| f == FLAG_SKIPPED)
    }

    pub fn is_degenerate(&self) -> bool {
        self.flags.iter().any(|f| f.starts_with(FLAG_DEGENERATE))
    }

    /// Disagreement that is neither skipped nor flagged degenerate.
    pub fn is_failure(&self) -> bool {
        !self.agree && !self.is_skipped() && !self.is_degenerate()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: u64,
    pub agree: u64,
    /// Non-degenerate, non-skipped disagreements.
    pub disagree: u64,
    pub degenerate: u64,
    /// Degenerate cases whose prediction and observation differ.
    pub degenerate_divergent: u64,
    pub skipped: u64,
}

impl Summary {
    pub fn tally(cases: &[Case]) -> Self {
        let mut s = Summary::default();
        for c in cases {
            s.total += 1;
            if c.is_skipped() {
                s.skipped += 1;
                continue;
            }
            if c.agree {
                s.agree += 1;
            }
            if c.is_degenerate() {
                s.degenerate += 1;
                if !c.agree {
                    s.degenerate_divergent += 1;
                }
            } else if !c.agree {
                s.disagree += 1;
            }
        }
        s
    }

    pub fn add(&mut self, other: &Summary) {
        self.total += other.total;
        self.agree += other.agree;
        self.disagree += other.disagree;
        self.degenerate += other.degenerate;
        self.degenerate_divergent += other.degenerate_divergent;
        self.skipped += other.skipped;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: Claim,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    /// Builds a report, sorting cases by group name (stable otherwise).
    pub fn new(subject: Claim, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.group.cmp(&b.group));
        let summary = Summary::tally(&cases);
        Report {
            subject,
            cases,
            summary,
        }
    }

    pub fn is_success(&self) -> bool {
        self.summary.disagree == 0
    }
}

/// Plain-text table of cases.
pub fn render_cases(cases: &[Case]) -> String {
    let headers = [
        "subject",
        "group",
        "input",
        "predicted",
        "observed",
        "agree",
        "flags",
    ];
    let rows: Vec<[String; 7]> = cases
        .iter()
        .map(|c| {
            [
                c.subject.to_string(),
                c.group.clone(),
                c.input.clone(),
                c.predicted.clone(),
                c.observed.clone(),
                if c.is_skipped() {
                    "skip".into()
                } else if c.agree {
                    "yes".into()
                } else {
                    "NO".into()
                },
                c.flags.join(","),
            ]
        })
        .collect();
    let mut widths = headers.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&headers.map(String::from), &mut out);
    for r in &rows {
        line(r, &mut out);
    }
    out
}

pub fn render_summary(subject: &str, s: &Summary) -> String {
    format!(
        "{subject}: {} cases, {} agree, {} disagree, {} degenerate ({} divergent), {} skipped",
        s.total, s.agree, s.disagree, s.degenerate, s.degenerate_divergent, s.skipped
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_names() {
        for c in Claim::ALL {
            assert_eq!(c.as_str().parse::<Claim>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.as_str()));
        }
        assert_eq!("cor24".parse::<Claim>().unwrap(), Claim::Cor24);
        assert_eq!("exp210".parse::<Claim>().unwrap(), Claim::ExpEquality210);
        assert!("cor99".parse::<Claim>().is_err());
    }

    #[test]
    fn tallies() {
        let cases = vec![
            Case::compare(Claim::Attar, "a", "", true, true),
            Case::compare(Claim::Attar, "b", "", true, false),
            Case::compare(Claim::Attar, "c", "", true, false).with_flag("DEGENERATE_TRIVIAL_M"),
            Case::skipped(Claim::Attar, "d", "", "NOT_P_GROUP"),
        ];
        let r = Report::new(Claim::Attar, cases);
        assert_eq!(
            r.summary,
            Summary {
                total: 4,
                agree: 1,
                disagree: 1,
                degenerate: 1,
                degenerate_divergent: 1,
                skipped: 1
            }
        );
        assert!(!r.is_success());
        assert!(render_cases(&r.cases).contains("NO"));
    }
}
