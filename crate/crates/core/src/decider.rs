//! Deciding when `Hom(G/N, M) ≅ G/L` from invariant data alone.
//!
//! The caller supplies the invariants of `G/L`, `G/N` and the abelian
//! subgroup `M`, together with the torsion class of `G` itself (which cannot
//! be recovered from the quotients). [`decide_lemma21`] evaluates the three
//! structural conditions (torsion-free, torsion, mixed) directly on the
//! exponent partitions; it never computes `Hom`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgab::FgAbelian;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GroupClass {
    TorsionFree,
    Torsion,
    Mixed,
}

impl GroupClass {
    pub const ALL: [GroupClass; 3] = [
        GroupClass::TorsionFree,
        GroupClass::Torsion,
        GroupClass::Mixed,
    ];

    fn branch(self) -> Branch {
        match self {
            GroupClass::TorsionFree => Branch::CondI,
            GroupClass::Torsion => Branch::CondII,
            GroupClass::Mixed => Branch::CondIII,
        }
    }
}

impl FromStr for GroupClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tf" | "torsion-free" | "torsion_free" => Ok(GroupClass::TorsionFree),
            "torsion" => Ok(GroupClass::Torsion),
            "mixed" => Ok(GroupClass::Mixed),
            other => Err(format!(
                "unknown group class `{other}` (expected tf, torsion or mixed)"
            )),
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupClass::TorsionFree => "tf",
            GroupClass::Torsion => "torsion",
            GroupClass::Mixed => "mixed",
        })
    }
}

/// Invariants of `G/L`, `G/N` and `M`, with `G' ≤ N ≤ L`.
#[derive(Debug, Clone, Copy)]
pub struct DecisionInput<'a> {
    pub class: GroupClass,
    pub gl: &'a FgAbelian,
    pub gn: &'a FgAbelian,
    pub m: &'a FgAbelian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    #[serde(rename = "COND_I")]
    CondI,
    #[serde(rename = "COND_II")]
    CondII,
    #[serde(rename = "COND_III")]
    CondIII,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailReason {
    /// A prime of `G/N` does not divide `|tor M|`.
    PrimeMissingInM,
    /// `M` has a non-cyclic primary component at a prime of `G/N`.
    PartNotCyclic,
    LengthMismatch,
    ExponentMismatch,
    RankMismatch,
    NotFiniteQuotient,
    TorsionInQuotient,
    NotInfiniteCyclic,
}

/// Inputs where the structural conditions and the actual `Hom` can part ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Degeneracy {
    /// `G/N = 1`: `Hom(1, M) = 1 = G/L` unconditionally.
    TrivialQuotient,
    /// `M = 1`: `Hom(G/N, 1) = 1`, so the answer is `G/L = 1`.
    TrivialM,
    /// Mixed `G` whose quotients are both free abelian: behaves like the
    /// torsion-free case (`M ≅ Z`, equal ranks) although `G/N` is infinite.
    MixedFreeQuotients,
}

impl Degeneracy {
    /// The identifier used in reports and serialized output.
    pub fn as_str(self) -> &'static str {
        match self {
            Degeneracy::TrivialQuotient => "TRIVIAL_QUOTIENT",
            Degeneracy::TrivialM => "TRIVIAL_M",
            Degeneracy::MixedFreeQuotients => "MIXED_FREE_QUOTIENTS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub prime: u64,
    /// Largest `j` with `β_j > γ_1`, or 0 if there is none.
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub branch: Branch,
    pub witnesses: Vec<Witness>,
    pub reason: Option<FailReason>,
    pub degenerate: Option<Degeneracy>,
    /// What the structural conditions say taken literally; differs from
    /// `holds` only on degenerate inputs.
    pub literal: bool,
}

impl Verdict {
    fn accept(branch: Branch, witnesses: Vec<Witness>) -> Self {
        Verdict {
            holds: true,
            branch,
            witnesses,
            reason: None,
            degenerate: None,
            literal: true,
        }
    }

    fn reject(reason: FailReason) -> Self {
        Verdict {
            holds: false,
            branch: Branch::None,
            witnesses: Vec::new(),
            reason: Some(reason),
            degenerate: None,
            literal: false,
        }
    }

    /// A degenerate input whose literal reading disagrees with `holds`.
    pub fn is_divergent(&self) -> bool {
        self.degenerate.is_some() && self.literal != self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("inputs are not p-groups for a single prime")]
    MixedPrimes,
}

/// Why `input` is not a valid configuration, if it is not.
pub fn compatibility_violation(input: &DecisionInput<'_>) -> Option<String> {
    let DecisionInput { class, gl, gn, m } = *input;
    if gl.free_rank() > gn.free_rank() {
        return Some(format!(
            "free rank of G/L ({}) exceeds that of G/N ({})",
            gl.free_rank(),
            gn.free_rank()
        ));
    }
    if !gl.primes().eq(gn.primes()) {
        return Some("G/L and G/N have different torsion primes".into());
    }
    for part in gl.parts() {
        let beta = gn.exponents_at(part.prime);
        if part.len() > beta.len() || part.exponents.iter().zip(beta).any(|(a, b)| a > b) {
            return Some(format!(
                "G/L is not a quotient of G/N at prime {}",
                part.prime
            ));
        }
    }
    match class {
        GroupClass::TorsionFree if !m.is_torsion_free() => {
            Some("torsion-free G cannot contain torsion in M".into())
        }
        GroupClass::Torsion if gl.free_rank() + gn.free_rank() + m.free_rank() > 0 => {
            Some("torsion G forces all free ranks to be zero".into())
        }
        _ => None,
    }
}

pub fn check_compatible(input: &DecisionInput<'_>) -> bool {
    compatibility_violation(input).is_none()
}

pub fn decide_lemma21(input: &DecisionInput<'_>) -> Result<Verdict, DecideError> {
    if let Some(why) = compatibility_violation(input) {
        return Err(DecideError::PreconditionViolated(why));
    }
    let DecisionInput { class, gl, gn, m } = *input;
    let mut verdict = match literal(input) {
        Ok((branch, witnesses)) => Verdict::accept(branch, witnesses),
        Err(reason) => Verdict::reject(reason),
    };

    let degenerate = if gn.is_trivial() {
        Some((Degeneracy::TrivialQuotient, true))
    } else if m.is_trivial() {
        Some((Degeneracy::TrivialM, gl.is_trivial()))
    } else if class == GroupClass::Mixed && gn.is_torsion_free() {
        // compatibility makes gl torsion-free as well
        let holds = m.is_infinite_cyclic() && gl.free_rank() == gn.free_rank();
        Some((Degeneracy::MixedFreeQuotients, holds))
    } else {
        None
    };
    if let Some((kind, holds)) = degenerate {
        verdict.degenerate = Some(kind);
        verdict.holds = holds;
        if holds {
            verdict.branch = class.branch();
            verdict.reason = None;
        } else {
            verdict.branch = Branch::None;
            verdict.witnesses.clear();
            if verdict.reason.is_none() {
                verdict.reason = Some(if kind == Degeneracy::TrivialM {
                    FailReason::RankMismatch
                } else {
                    FailReason::NotInfiniteCyclic
                });
            }
        }
    }
    Ok(verdict)
}

fn literal(input: &DecisionInput<'_>) -> Result<(Branch, Vec<Witness>), FailReason> {
    let DecisionInput { class, gl, gn, m } = *input;
    match class {
        GroupClass::TorsionFree => {
            if !m.is_infinite_cyclic() {
                return Err(FailReason::NotInfiniteCyclic);
            }
            if !gl.is_torsion_free() || !gn.is_torsion_free() {
                return Err(FailReason::TorsionInQuotient);
            }
            if gl.free_rank() != gn.free_rank() {
                return Err(FailReason::RankMismatch);
            }
            Ok((Branch::CondI, Vec::new()))
        }
        GroupClass::Torsion => Ok((Branch::CondII, partition_conditions(gl, gn, m)?)),
        GroupClass::Mixed => {
            if !gl.is_finite() || !gn.is_finite() {
                return Err(FailReason::NotFiniteQuotient);
            }
            Ok((Branch::CondIII, partition_conditions(gl, gn, m)?))
        }
    }
}

/// Per prime of `G/N`: `M` cyclic and nontrivial there, equal partition
/// lengths, and `α_j = γ_1` up to `r`, `α_j = β_j` after it.
fn partition_conditions(
    gl: &FgAbelian,
    gn: &FgAbelian,
    m: &FgAbelian,
) -> Result<Vec<Witness>, FailReason> {
    let mut witnesses = Vec::with_capacity(gn.parts().len());
    for part in gn.parts() {
        let mp = m.part(part.prime).ok_or(FailReason::PrimeMissingInM)?;
        if !mp.is_cyclic() {
            return Err(FailReason::PartNotCyclic);
        }
        let gamma = mp.top();
        let beta = &part.exponents;
        let alpha = gl.exponents_at(part.prime);
        if alpha.len() != beta.len() {
            return Err(FailReason::LengthMismatch);
        }
        // beta is non-increasing, so this is the largest j with beta_j > gamma
        let r = beta.iter().take_while(|&&b| b > gamma).count();
        let ok = alpha[..r].iter().all(|&a| a == gamma)
            && alpha[r..].iter().zip(&beta[r..]).all(|(a, b)| a == b);
        if !ok {
            return Err(FailReason::ExponentMismatch);
        }
        witnesses.push(Witness {
            prime: part.prime,
            r,
        });
    }
    Ok(witnesses)
}

/// The specialization `N = L` with `exp(G/N) | exp(M)`.
///
/// Under that hypothesis the partition conditions collapse: the answer is
/// whether `M` is cyclic at every prime of `G/L` (finite `G/L`), or whether
/// `M ≅ Z` (free `G/L`).
pub fn decide_remark22(
    gl: &FgAbelian,
    m: &FgAbelian,
    class: GroupClass,
) -> Result<Verdict, DecideError> {
    let input = DecisionInput {
        class,
        gl,
        gn: gl,
        m,
    };
    if let Some(why) = compatibility_violation(&input) {
        return Err(DecideError::PreconditionViolated(why));
    }
    for part in gl.parts() {
        let have = m.part(part.prime).map_or(0, |p| p.top());
        if have < part.top() {
            return Err(DecideError::HypothesisViolated(format!(
                "exponent of G/L at {} exceeds that of M",
                part.prime
            )));
        }
    }

    let branch = class.branch();
    if gl.is_trivial() {
        let mut v = Verdict::accept(branch, Vec::new());
        v.degenerate = Some(Degeneracy::TrivialQuotient);
        v.literal = m.is_infinite_cyclic() || class != GroupClass::TorsionFree;
        return Ok(v);
    }
    if m.is_trivial() {
        // the hypothesis leaves only free G/L here
        let mut v = Verdict::reject(FailReason::RankMismatch);
        v.degenerate = Some(Degeneracy::TrivialM);
        return Ok(v);
    }
    if gl.is_finite() {
        if gl
            .primes()
            .all(|p| m.part(p).is_some_and(|mp| mp.is_cyclic()))
        {
            let witnesses = gl.primes().map(|prime| Witness { prime, r: 0 }).collect();
            return Ok(Verdict::accept(branch, witnesses));
        }
        return Ok(Verdict::reject(FailReason::PartNotCyclic));
    }
    let mixed_free = class == GroupClass::Mixed && gl.is_torsion_free();
    let mut v = if !gl.is_torsion_free() {
        Verdict::reject(FailReason::NotFiniteQuotient)
    } else if m.is_infinite_cyclic() {
        Verdict::accept(branch, Vec::new())
    } else {
        Verdict::reject(FailReason::NotInfiniteCyclic)
    };
    if mixed_free {
        v.degenerate = Some(Degeneracy::MixedFreeQuotients);
        v.literal = false;
    }
    Ok(v)
}

/// Shape of `Z(G)` for which `C* ≅ Inn(G)` in class 2: infinite cyclic, or
/// cyclic and nontrivial at every prime of `G/Z(G)`.
pub fn cor24_center_shape(center: &FgAbelian, primes_g_mod_z: &BTreeSet<u64>) -> bool {
    center.is_infinite_cyclic()
        || primes_g_mod_z
            .iter()
            .all(|&p| center.part(p).is_some_and(|part| part.is_cyclic()))
}

/// Shape condition for `Var(G) = Inn(G)` on a finite `p`-group, from the
/// invariants of `G/Z(G)`, `G/L(G)` and `L(G)`.
pub fn cor29_shape(
    g_mod_z: &FgAbelian,
    g_mod_l: &FgAbelian,
    l: &FgAbelian,
) -> Result<bool, DecideError> {
    let all = [g_mod_z, g_mod_l, l];
    if all.iter().any(|g| !g.is_finite()) {
        return Err(DecideError::MixedPrimes);
    }
    let primes: BTreeSet<u64> = all.iter().flat_map(|g| g.primes()).collect();
    if primes.len() > 1 {
        return Err(DecideError::MixedPrimes);
    }
    if !l.is_cyclic() {
        return Ok(false);
    }
    if g_mod_l == g_mod_z {
        // L(G) ≤ Z(G) with equal index: L(G) = Z(G)
        return Ok(true);
    }
    let Some(&p) = primes.iter().next() else {
        return Ok(true);
    };
    let alpha = g_mod_z.exponents_at(p);
    let beta = g_mod_l.exponents_at(p);
    let gamma = l.exponents_at(p).first().copied().unwrap_or(0);
    if alpha.len() != beta.len() {
        return Ok(false);
    }
    let k = beta.iter().take_while(|&&b| b > gamma).count();
    Ok(alpha[..k].iter().all(|&a| a == gamma) && alpha[k..] == beta[k..])
}
