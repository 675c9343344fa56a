//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`, with the identity at index 0. Subgroups
//! are plain element sets; generated subgroups are computed by closure.

mod abelian;
mod aut;
mod builtin;
mod io;
mod series;

pub use abelian::{abelian_invariants, hom_bruteforce, invariants_from_orders, HomCount};
pub use aut::{
    absolute_center, aut_set_group, aut_xy, autocenter_series, autocommutator_subgroup,
    automorphism_group, inner_automorphisms, kpwi_group, same_set, var_group, Automorphism,
    DEFAULT_MAX_ORDER,
};
pub use builtin::{builtin, Builtin};
pub use io::{load_group_file, parse_group_json, GroupFile};
pub use series::{lower_central_series, nilpotency_class, upper_central_series};

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("not a Latin square: value {value} repeated at {first:?} and {second:?}")]
    NotLatin {
        first: (usize, usize),
        second: (usize, usize),
        value: usize,
    },
    #[error("index 0 is not a two-sided identity (fails at element {witness})")]
    NoIdentity { witness: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{0} element labels for a group of order {1}")]
    BadNames(usize, usize),
    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("{0}")]
    Load(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Checks the table and returns the group.
///
/// Checks run in the order: shape, Latin property, identity at index 0,
/// associativity; the first failure is reported with its witness.
pub fn validate(
    name: impl Into<String>,
    table: &[Vec<usize>],
    names: Option<Vec<String>>,
) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(GroupError::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::OutOfRange { row, col, value });
        }
    }
    if let Some(names) = &names {
        if names.len() != n {
            return Err(GroupError::BadNames(names.len(), n));
        }
    }
    let mut seen = vec![usize::MAX; n];
    for (i, r) in table.iter().enumerate() {
        seen.fill(usize::MAX);
        for (j, &v) in r.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Err(GroupError::NotLatin {
                    first: (i, seen[v]),
                    second: (i, j),
                    value: v,
                });
            }
            seen[v] = j;
        }
    }
    for j in 0..n {
        seen.fill(usize::MAX);
        for (i, r) in table.iter().enumerate() {
            let v = r[j];
            if seen[v] != usize::MAX {
                return Err(GroupError::NotLatin {
                    first: (seen[v], j),
                    second: (i, j),
                    value: v,
                });
            }
            seen[v] = i;
        }
    }
    if let Some(j) = (0..n).find(|&j| table[0][j] != j || table[j][0] != j) {
        return Err(GroupError::NoIdentity { witness: j });
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    let inverse = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .expect("Latin row contains 0")
        })
        .collect();
    Ok(FiniteGroup {
        name: name.into(),
        order: n,
        table: flat,
        inverse,
        names,
    })
}

impl FiniteGroup {
    /// Builds the group generated by closing `elements` under `mul`.
    ///
    /// `elements[0]` must be the identity; further elements are discovered
    /// as products and labelled with `label`.
    pub(crate) fn from_closure<T, M, L>(
        name: impl Into<String>,
        seed: Vec<T>,
        mul: M,
        label: L,
    ) -> Result<FiniteGroup, GroupError>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elems: Vec<T> = Vec::new();
        let mut index: HashMap<T, usize> = HashMap::new();
        for e in seed {
            if !index.contains_key(&e) {
                index.insert(e.clone(), elems.len());
                elems.push(e);
            }
        }
        let gens = elems.clone();
        let mut i = 0;
        while i < elems.len() {
            for g in &gens {
                let p = mul(&elems[i], g);
                if !index.contains_key(&p) {
                    if elems.len() >= builtin::MAX_BUILTIN_ORDER {
                        return Err(GroupError::BadParams(format!(
                            "order exceeds {}",
                            builtin::MAX_BUILTIN_ORDER
                        )));
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        let names = elems.iter().map(label).collect();
        validate(name, &table, Some(names))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    /// `b⁻¹ a b`
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime `p` when the order is a nontrivial power of `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        let f = crate::fgab::factorize(self.order as u64);
        (f.len() == 1).then(|| f[0].0)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_mask(vec![true; self.order])
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_mask(mask)
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = a.members().iter().chain(b.members()).copied().collect();
        self.generate(&gens)
    }

    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let conjugates: HashSet<usize> = gens
            .iter()
            .flat_map(|&g| (0..self.order).map(move |x| (g, x)))
            .map(|(g, x)| self.conj(g, x))
            .collect();
        let mut v: Vec<usize> = conjugates.into_iter().collect();
        v.sort_unstable();
        self.generate(&v)
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(0)
            && s.members().iter().all(|&a| {
                s.contains(self.inv(a)) && s.members().iter().all(|&b| s.contains(self.mul(a, b)))
            })
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.order).all(|x| s.members().iter().all(|&a| s.contains(self.conj(a, x))))
    }

    /// All normal subgroups, sorted by order then members.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashSet<Subgroup> = HashSet::new();
        let minimal: Vec<Subgroup> = (0..self.order).map(|x| self.normal_closure(&[x])).collect();
        let mut frontier: Vec<Subgroup> = Vec::new();
        for s in minimal.iter() {
            if found.insert(s.clone()) {
                frontier.push(s.clone());
            }
        }
        let generators: Vec<Subgroup> = found.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for t in &generators {
                let j = self.join(&s, t);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().collect();
        out.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members().cmp(b.members()))
        });
        out
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order;
        Subgroup::from_mask(
            (0..n)
                .map(|z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
                .collect(),
        )
    }

    /// Subgroup generated by all `[s, t]`.
    pub fn commutator(&self, s: &Subgroup, t: &Subgroup) -> Subgroup {
        let mut gens: Vec<usize> = s
            .members()
            .iter()
            .flat_map(|&a| t.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.comm(a, b))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        self.generate(&gens)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator(&g, &g)
    }

    /// `{x : x s = s x for all s in S}`
    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_mask(
            (0..self.order)
                .map(|x| {
                    s.members()
                        .iter()
                        .all(|&a| self.mul(x, a) == self.mul(a, x))
                })
                .collect(),
        )
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] == usize::MAX {
                let id = reps.len();
                reps.push(x);
                for &m in n.members() {
                    coset_of[self.mul(x, m)] = id;
                }
            }
        }
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let names = reps
            .iter()
            .map(|&r| format!("{}N", self.label(r)))
            .collect();
        let group = validate(format!("{}/N", self.name), &table, Some(names))?;
        Ok(Quotient {
            group,
            coset_of,
            reps,
        })
    }

    /// The subgroup as a group in its own right, relabelled `0..|S|` in
    /// increasing order of the original indices.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> FiniteGroup {
        let members = s.members();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        let names = members.iter().map(|&m| self.label(m)).collect();
        validate(format!("subgroup of {}", self.name), &table, Some(names))
            .expect("closed subgroup yields a valid table")
    }

    /// Direct product, element `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let table: Vec<Vec<usize>> = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
            .collect();
        validate(
            format!("direct_product({},{})", self.name, other.name),
            &table,
            Some(names),
        )
        .expect("product of valid groups")
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of each element of the parent group.
    pub coset_of: Vec<usize>,
    /// Smallest element of each coset.
    pub reps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a && *b)
                .collect(),
        )
    }
}
