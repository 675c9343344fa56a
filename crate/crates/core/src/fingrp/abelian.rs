//! Invariants of finite abelian groups and brute-force `Hom` between them.

use std::collections::BTreeMap;

use super::aut::{extend_images, greedy_generators};
use super::{lcm, FiniteGroup, GroupError};
use crate::fgab::{factorize, normalize, CyclicFactor, FgAbelian, PrimePart};

/// Primary invariants by repeatedly splitting off a cyclic subgroup
/// generated by an element of largest order.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<FgAbelian, GroupError> {
    if !g.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let mut factors = Vec::new();
    let mut cur = g.clone();
    while cur.order() > 1 {
        let orders = cur.element_orders();
        let (x, &ord) = orders
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty group");
        factors.push(CyclicFactor::Finite(ord as u64));
        let c = cur.generate(&[x]);
        cur = cur.quotient(&c)?.group;
    }
    Ok(normalize(&factors))
}

/// Invariants of a finite abelian group from the multiset of its element
/// orders: `#{x : x^{p^k} = 1} = p^{Σ_j min(λ_j, k)}` determines every
/// partition `λ`.
pub fn invariants_from_orders(orders: &BTreeMap<u64, u128>) -> FgAbelian {
    let total: u128 = orders.values().sum();
    let mut parts = Vec::new();
    for (p, _) in factorize(total as u64) {
        let mut sums = vec![0u32];
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let n: u128 = orders
                .iter()
                .filter(|(&o, _)| pk % o == 0)
                .map(|(_, &c)| c)
                .sum();
            let mut log = 0u32;
            let mut v = n;
            while v > 1 {
                v /= p as u128;
                log += 1;
            }
            if log == *sums.last().unwrap() {
                break;
            }
            sums.push(log);
            k += 1;
        }
        // parts of size >= k: sums[k] - sums[k-1]
        let at_least: Vec<u32> = sums.windows(2).map(|w| w[1] - w[0]).collect();
        let mut exponents = Vec::new();
        for (i, &c) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(c - next) {
                exponents.push(i as u32 + 1);
            }
        }
        parts.push(PrimePart {
            prime: p,
            exponents,
        });
    }
    FgAbelian::from_parts(0, parts).expect("derived from valid order statistics")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCount {
    pub count: u128,
    pub invariants: FgAbelian,
}

/// Enumerates `Hom(a, b)` for finite abelian groups.
///
/// Candidate images of each generator of `a` are the elements of `b` whose
/// order divides the generator's; each full assignment is checked for
/// well-definedness. The structure of `Hom(a, b)` under pointwise product is
/// recovered from the orders of the homomorphisms (the order of `φ` is the
/// lcm of the orders of the generator images).
pub fn hom_bruteforce(a: &FiniteGroup, b: &FiniteGroup) -> Result<HomCount, GroupError> {
    if !a.is_abelian() || !b.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let gens = greedy_generators(a);
    let b_orders = b.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = a.element_order(s);
            (0..b.order())
                .filter(|&y| o.is_multiple_of(b_orders[y]))
                .collect()
        })
        .collect();
    let mut by_order: BTreeMap<u64, u128> = BTreeMap::new();
    let mut images = Vec::with_capacity(gens.len());

    fn search(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        b_orders: &[usize],
        images: &mut Vec<usize>,
        by_order: &mut BTreeMap<u64, u128>,
    ) {
        let depth = images.len();
        if extend_images(a, b, &gens[..depth], images, false).is_none() {
            return;
        }
        if depth == gens.len() {
            let ord = images.iter().fold(1, |acc, &y| lcm(acc, b_orders[y]));
            *by_order.entry(ord as u64).or_default() += 1;
            return;
        }
        for &c in &candidates[depth] {
            images.push(c);
            search(a, b, gens, candidates, b_orders, images, by_order);
            images.pop();
        }
    }
    search(
        a,
        b,
        &gens,
        &candidates,
        &b_orders,
        &mut images,
        &mut by_order,
    );
    let count = by_order.values().sum();
    Ok(HomCount {
        count,
        invariants: invariants_from_orders(&by_order),
    })
}
