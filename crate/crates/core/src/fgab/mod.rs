//! Finitely generated abelian groups in canonical primary form.
//!
//! A group is stored as its torsion-free rank plus, for every prime dividing
//! the torsion part, the descending list of exponents of its cyclic
//! prime-power factors. Two values are isomorphic exactly when they are equal.

mod matrix;

pub use matrix::{from_relations, smith_normal_form, BigMatrix, IntMatrix, SmithForm};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FgabError {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("shape mismatch: expected {expected} columns, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("entry count {found} does not match {rows}x{cols}")]
    BadEntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("invalid invariants: {0}")]
    InvalidInvariants(String),
}

/// One cyclic factor handed to [`normalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CyclicFactor {
    /// `C_n`. An order of zero is read as `Z/0Z`, i.e. infinite cyclic.
    Finite(u64),
    Infinite,
}

/// The exponent partition of a group at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePart {
    pub prime: u64,
    /// Non-empty, positive, non-increasing.
    pub exponents: Vec<u32>,
}

impl PrimePart {
    /// Number of cyclic factors at this prime.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Largest exponent; `p^top` is the exponent of this primary component.
    pub fn top(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponents.len() == 1
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgAbelian {
    free_rank: u32,
    parts: Vec<PrimePart>,
}

/// Coarse numerical data of a group: prime set, exponents, ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub primes: BTreeSet<u64>,
    pub exponent_by_prime: BTreeMap<u64, u128>,
    /// Exponent of the torsion part; 1 when the torsion part is trivial.
    pub exponent: u128,
    pub torsion_rank: usize,
    pub free_rank: u32,
}

impl FgAbelian {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Z^rank`.
    pub fn free(rank: u32) -> Self {
        FgAbelian {
            free_rank: rank,
            parts: Vec::new(),
        }
    }

    /// `C_n` in primary form (`n = 0` gives `Z`).
    pub fn cyclic(n: u64) -> Self {
        normalize(&[CyclicFactor::Finite(n)])
    }

    /// An abelian `p`-group with the given exponents, in any order.
    pub fn p_group(prime: u64, exponents: &[u32]) -> Result<Self, FgabError> {
        Self::from_parts(
            0,
            vec![PrimePart {
                prime,
                exponents: exponents.to_vec(),
            }],
        )
    }

    /// Builds a group from raw parts, sorting them into canonical order.
    ///
    /// Primes must be prime and distinct, exponents positive. Empty exponent
    /// lists are dropped.
    pub fn from_parts(free_rank: u32, parts: Vec<PrimePart>) -> Result<Self, FgabError> {
        let mut out: Vec<PrimePart> = Vec::with_capacity(parts.len());
        for mut part in parts {
            if !is_prime(part.prime) {
                return Err(FgabError::InvalidInvariants(format!(
                    "{} is not prime",
                    part.prime
                )));
            }
            if part.exponents.contains(&0) {
                return Err(FgabError::InvalidInvariants(format!(
                    "zero exponent at prime {}",
                    part.prime
                )));
            }
            if part.exponents.is_empty() {
                continue;
            }
            part.exponents.sort_unstable_by(|a, b| b.cmp(a));
            out.push(part);
        }
        out.sort_by_key(|p| p.prime);
        if out.windows(2).any(|w| w[0].prime == w[1].prime) {
            return Err(FgabError::InvalidInvariants("repeated prime".into()));
        }
        Ok(FgAbelian {
            free_rank,
            parts: out,
        })
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn parts(&self) -> &[PrimePart] {
        &self.parts
    }

    pub fn part(&self, prime: u64) -> Option<&PrimePart> {
        self.parts
            .binary_search_by_key(&prime, |p| p.prime)
            .ok()
            .map(|i| &self.parts[i])
    }

    /// Exponent partition at `prime`; empty when the prime does not occur.
    pub fn exponents_at(&self, prime: u64) -> &[u32] {
        self.part(prime).map_or(&[], |p| &p.exponents)
    }

    /// Primes of the torsion part, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().map(|p| p.prime)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.parts.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Z`, with no torsion.
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.parts.is_empty()
    }

    /// Cyclic in the group-theoretic sense (including trivial and `Z`).
    pub fn is_cyclic(&self) -> bool {
        match self.free_rank {
            0 => self.parts.iter().all(PrimePart::is_cyclic),
            1 => self.parts.is_empty(),
            _ => false,
        }
    }

    /// Total number of cyclic prime-power factors.
    pub fn torsion_rank(&self) -> usize {
        self.parts.iter().map(PrimePart::len).sum()
    }

    pub fn torsion_part(&self) -> FgAbelian {
        FgAbelian {
            free_rank: 0,
            parts: self.parts.clone(),
        }
    }

    /// Order of a finite group, `None` when infinite.
    pub fn order(&self) -> Result<Option<u128>, FgabError> {
        if self.free_rank > 0 {
            return Ok(None);
        }
        let mut order: u128 = 1;
        for part in &self.parts {
            for &e in &part.exponents {
                order = order
                    .checked_mul(prime_power(part.prime, e)?)
                    .ok_or(FgabError::Overflow)?;
            }
        }
        Ok(Some(order))
    }

    pub fn summary(&self) -> Result<Summary, FgabError> {
        let mut exponent_by_prime = BTreeMap::new();
        let mut exponent: u128 = 1;
        for part in &self.parts {
            let e = prime_power(part.prime, part.top())?;
            exponent_by_prime.insert(part.prime, e);
            // distinct primes, so the lcm is the product
            exponent = exponent.checked_mul(e).ok_or(FgabError::Overflow)?;
        }
        Ok(Summary {
            primes: self.primes().collect(),
            exponent_by_prime,
            exponent,
            torsion_rank: self.torsion_rank(),
            free_rank: self.free_rank,
        })
    }

    /// Whether `self` is isomorphic to a quotient (equivalently, a subgroup)
    /// of the finite group `other`: partitions dominated part by part.
    pub fn is_dominated_by(&self, other: &FgAbelian) -> bool {
        if self.free_rank > other.free_rank {
            return false;
        }
        self.parts.iter().all(|part| {
            let big = other.exponents_at(part.prime);
            part.len() <= big.len() && part.exponents.iter().zip(big).all(|(a, b)| a <= b)
        })
    }
}

/// Canonical form of a direct product of cyclic groups.
pub fn normalize(factors: &[CyclicFactor]) -> FgAbelian {
    let mut free_rank = 0u32;
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for factor in factors {
        match *factor {
            CyclicFactor::Infinite | CyclicFactor::Finite(0) => free_rank += 1,
            CyclicFactor::Finite(n) => {
                for (p, e) in factorize(n) {
                    by_prime.entry(p).or_default().push(e);
                }
            }
        }
    }
    let parts = by_prime
        .into_iter()
        .map(|(prime, mut exponents)| {
            exponents.sort_unstable_by(|a, b| b.cmp(a));
            PrimePart { prime, exponents }
        })
        .collect();
    FgAbelian { free_rank, parts }
}

pub fn direct_product(a: &FgAbelian, b: &FgAbelian) -> FgAbelian {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for part in a.parts.iter().chain(&b.parts) {
        by_prime
            .entry(part.prime)
            .or_default()
            .extend_from_slice(&part.exponents);
    }
    let parts = by_prime
        .into_iter()
        .map(|(prime, mut exponents)| {
            exponents.sort_unstable_by(|x, y| y.cmp(x));
            PrimePart { prime, exponents }
        })
        .collect();
    FgAbelian {
        free_rank: a.free_rank + b.free_rank,
        parts,
    }
}

pub fn is_isomorphic(a: &FgAbelian, b: &FgAbelian) -> bool {
    a == b
}

impl fmt::Display for FgAbelian {
    /// Primary decomposition, e.g. `C4 x C2 x C3 x Z^2`; the trivial group is `C1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("C1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::replace(&mut first, false) {
                f.write_str(" x ")
            } else {
                Ok(())
            }
        };
        for part in &self.parts {
            for &e in &part.exponents {
                sep(f)?;
                match prime_power(part.prime, e) {
                    Ok(q) => write!(f, "C{q}")?,
                    Err(_) => write!(f, "C{}^{}", part.prime, e)?,
                }
            }
        }
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn prime_power(p: u64, e: u32) -> Result<u128, FgabError> {
    (p as u128).checked_pow(e).ok_or(FgabError::Overflow)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use CyclicFactor::*;

    fn pg(free: u32, parts: &[(u64, &[u32])]) -> FgAbelian {
        FgAbelian::from_parts(
            free,
            parts
                .iter()
                .map(|&(prime, e)| PrimePart {
                    prime,
                    exponents: e.to_vec(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize(&[Finite(6), Finite(4)]),
            pg(0, &[(2, &[2, 1]), (3, &[1])])
        );
        assert_eq!(normalize(&[Infinite, Finite(1)]), FgAbelian::free(1));
        assert_eq!(
            normalize(&[Finite(8), Finite(8), Infinite, Infinite]),
            pg(2, &[(2, &[3, 3])])
        );
        assert!(normalize(&[]).is_trivial());
    }

    #[test]
    fn normalize_is_idempotent() {
        let g = normalize(&[Finite(12), Finite(18), Infinite]);
        let mut again = Vec::new();
        for part in g.parts() {
            for &e in &part.exponents {
                again.push(Finite(part.prime.pow(e)));
            }
        }
        again.extend(std::iter::repeat_n(Infinite, g.free_rank() as usize));
        assert_eq!(normalize(&again), g);
    }

    #[test]
    fn product_examples() {
        let a = pg(0, &[(2, &[2])]);
        let b = pg(0, &[(2, &[1])]);
        assert_eq!(direct_product(&a, &b), pg(0, &[(2, &[2, 1])]));
        assert_eq!(
            direct_product(&FgAbelian::free(1), &FgAbelian::trivial()),
            FgAbelian::free(1)
        );
        let c = pg(0, &[(2, &[1]), (3, &[1])]);
        let d = pg(0, &[(2, &[3])]);
        assert_eq!(direct_product(&c, &d), pg(0, &[(2, &[3, 1]), (3, &[1])]));
    }

    #[test]
    fn isomorphism_examples() {
        let a = pg(0, &[(2, &[2, 1])]);
        let b = pg(0, &[(2, &[1, 2])]);
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&FgAbelian::free(1), &FgAbelian::cyclic(2)));
        assert!(!is_isomorphic(
            &normalize(&[Finite(4), Finite(2)]),
            &FgAbelian::cyclic(8)
        ));
    }

    #[test]
    fn summary_examples() {
        let s = pg(0, &[(2, &[3, 1]), (3, &[2])]).summary().unwrap();
        assert_eq!(s.primes.into_iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(s.exponent, 72);
        assert_eq!(s.torsion_rank, 3);

        let s = FgAbelian::free(2).summary().unwrap();
        assert!(s.primes.is_empty());
        assert_eq!((s.exponent, s.torsion_rank, s.free_rank), (1, 0, 2));

        let s = pg(0, &[(5, &[1, 1, 1])]).summary().unwrap();
        assert_eq!((s.exponent, s.torsion_rank), (5, 3));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(FgAbelian::p_group(4, &[1]).is_err());
        assert!(FgAbelian::p_group(2, &[0]).is_err());
        let dup = vec![
            PrimePart {
                prime: 3,
                exponents: vec![1],
            },
            PrimePart {
                prime: 3,
                exponents: vec![2],
            },
        ];
        assert!(FgAbelian::from_parts(0, dup).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let g = FgAbelian::p_group(2, &[200]).unwrap();
        assert_eq!(g.order(), Err(FgabError::Overflow));
        assert_eq!(g.summary().unwrap_err(), FgabError::Overflow);
    }

    #[test]
    fn display() {
        assert_eq!(
            normalize(&[Finite(4), Finite(2), Infinite, Infinite]).to_string(),
            "C4 x C2 x Z^2"
        );
        assert_eq!(FgAbelian::trivial().to_string(), "C1");
        assert_eq!(FgAbelian::cyclic(6).to_string(), "C2 x C3");
        assert_eq!(FgAbelian::free(1).to_string(), "Z");
    }

    #[test]
    fn domination() {
        let big = pg(0, &[(2, &[2, 1])]);
        assert!(FgAbelian::cyclic(4).is_dominated_by(&big));
        assert!(pg(0, &[(2, &[1, 1])]).is_dominated_by(&big));
        assert!(!FgAbelian::cyclic(8).is_dominated_by(&big));
        assert!(!pg(0, &[(2, &[1, 1, 1])]).is_dominated_by(&big));
    }
}
