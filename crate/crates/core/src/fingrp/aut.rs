//! Automorphisms and the automorphism subgroups built from them.
//!
//! `automorphism_group` backtracks over images of a small generating set,
//! restricted to elements of matching order. At every depth the partial map
//! is extended over the subgroup generated so far and rejected as soon as it
//! is inconsistent or non-injective, so complete leaves are automorphisms.

use rayon::prelude::*;
use std::collections::HashMap;

use super::{lower_central_series, validate, FiniteGroup, GroupError, Subgroup};

pub const DEFAULT_MAX_ORDER: usize = 64;

/// A bijection on element indices that respects the multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    image: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            image: (0..n).collect(),
        }
    }

    /// Checks bijectivity and the homomorphism property.
    pub fn new(g: &FiniteGroup, image: Vec<usize>) -> Option<Self> {
        let n = g.order();
        if image.len() != n {
            return None;
        }
        let mut hit = vec![false; n];
        for &x in &image {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return None;
            }
        }
        let ok = (0..n).all(|a| (0..n).all(|b| image[g.mul(a, b)] == g.mul(image[a], image[b])));
        ok.then_some(Automorphism { image })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Automorphism { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// The autocommutator `[x, α] = x⁻¹ α(x)`.
    pub fn autocommutator(&self, g: &FiniteGroup, x: usize) -> usize {
        g.mul(g.inv(x), self.image[x])
    }
}

/// Greedy generating set: repeatedly add an element of largest order outside
/// the subgroup generated so far.
pub(crate) fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let orders = g.element_orders();
    let mut by_order: Vec<usize> = (0..g.order()).collect();
    by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let mut gens = Vec::new();
    let mut h = g.trivial_subgroup();
    for x in by_order {
        if h.order() == g.order() {
            break;
        }
        if !h.contains(x) {
            gens.push(x);
            h = g.generate(&gens);
        }
    }
    gens
}

/// Extends generator images to the subgroup they generate.
///
/// Returns the partial map (`usize::MAX` off the subgroup), or `None` when
/// the images do not define an injective homomorphism there. With
/// `injective = false` only well-definedness is checked.
pub(crate) fn extend_images(
    g: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    injective: bool,
) -> Option<Vec<usize>> {
    let mut phi = vec![usize::MAX; g.order()];
    let mut used = vec![false; target.order()];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let im = target.mul(phi[x], t);
            if phi[y] == usize::MAX {
                if injective && used[im] {
                    return None;
                }
                phi[y] = im;
                used[im] = true;
                queue.push(y);
            } else if phi[y] != im {
                return None;
            }
        }
    }
    Some(phi)
}

/// Every automorphism of `g`, sorted lexicographically by image.
pub fn automorphism_group(
    g: &FiniteGroup,
    max_order: usize,
) -> Result<Vec<Automorphism>, GroupError> {
    if g.order() > max_order {
        return Err(GroupError::OrderBoundExceeded {
            order: g.order(),
            bound: max_order,
        });
    }
    let gens = greedy_generators(g);
    if gens.is_empty() {
        return Ok(vec![Automorphism::identity(g.order())]);
    }
    let orders = g.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&x| orders[x] == orders[s]).collect())
        .collect();

    fn search(
        g: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Automorphism>,
    ) {
        let depth = images.len();
        let Some(phi) = extend_images(g, g, &gens[..depth], images, true) else {
            return;
        };
        if depth == gens.len() {
            out.push(Automorphism { image: phi });
            return;
        }
        for &c in &candidates[depth] {
            images.push(c);
            search(g, gens, candidates, images, out);
            images.pop();
        }
    }

    let mut all: Vec<Automorphism> = candidates[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut images = vec![first];
            search(g, &gens, &candidates, &mut images, &mut out);
            out
        })
        .collect();
    all.sort_unstable();
    Ok(all)
}

/// Conjugations `x ↦ b⁻¹ x b`, deduplicated and sorted.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<Automorphism> {
    let n = g.order();
    let mut out: Vec<Automorphism> = (0..n)
        .map(|b| Automorphism {
            image: (0..n).map(|x| g.conj(x, b)).collect(),
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `{α : x⁻¹α(x) ∈ X for all x, and α fixes Y pointwise}`, i.e. the
/// automorphisms centralizing `G/X` and `Y`.
pub fn aut_xy(
    g: &FiniteGroup,
    auts: &[Automorphism],
    x: &Subgroup,
    y: &Subgroup,
) -> Vec<Automorphism> {
    auts.iter()
        .filter(|a| y.members().iter().all(|&m| a.apply(m) == m))
        .filter(|a| (0..g.order()).all(|e| x.contains(a.autocommutator(g, e))))
        .cloned()
        .collect()
}

/// `L(G)`: elements fixed by every automorphism.
pub fn absolute_center(g: &FiniteGroup, auts: &[Automorphism]) -> Subgroup {
    Subgroup::from_mask(
        (0..g.order())
            .map(|x| auts.iter().all(|a| a.apply(x) == x))
            .collect(),
    )
}

/// `L_n(G)`: elements with `[x, α_1, ..., α_n] = 1` for all choices.
///
/// Computed as `T_1 = L(G)`, `T_k = {x : [x, α] ∈ T_{k-1} for all α}`, which
/// unwinds the nested quantifier one automorphism at a time.
pub fn autocenter_series(g: &FiniteGroup, auts: &[Automorphism], n: usize) -> Subgroup {
    let mut level = g.trivial_subgroup();
    for _ in 0..n {
        level = Subgroup::from_mask(
            (0..g.order())
                .map(|x| auts.iter().all(|a| level.contains(a.autocommutator(g, x))))
                .collect(),
        );
    }
    level
}

/// `G*`: generated by all autocommutators.
pub fn autocommutator_subgroup(g: &FiniteGroup, auts: &[Automorphism]) -> Subgroup {
    let mut gens: Vec<usize> = auts
        .iter()
        .flat_map(|a| (0..g.order()).map(move |x| a.autocommutator(g, x)))
        .collect();
    gens.sort_unstable();
    gens.dedup();
    g.generate(&gens)
}

/// `Var(G)`: automorphisms with every autocommutator in `L(G)`.
pub fn var_group(g: &FiniteGroup, auts: &[Automorphism]) -> Vec<Automorphism> {
    let l = absolute_center(g, auts);
    auts.iter()
        .filter(|a| (0..g.order()).all(|x| l.contains(a.autocommutator(g, x))))
        .cloned()
        .collect()
}

/// `γ_k(G)`-pointwise inner automorphisms: for every `x` some `h ∈ γ_k(G)`
/// has `α(x) = h⁻¹ x h`.
pub fn kpwi_group(
    g: &FiniteGroup,
    auts: &[Automorphism],
    k: usize,
) -> Result<Vec<Automorphism>, GroupError> {
    if k == 0 {
        return Err(GroupError::BadParams("k must be at least 1".into()));
    }
    let lower = lower_central_series(g);
    let gamma = &lower[(k - 1).min(lower.len() - 1)];
    let n = g.order();
    let allowed: Vec<Vec<bool>> = (0..n)
        .map(|x| {
            let mut row = vec![false; n];
            for &h in gamma.members() {
                row[g.conj(x, h)] = true;
            }
            row
        })
        .collect();
    Ok(auts
        .iter()
        .filter(|a| (0..n).all(|x| allowed[x][a.apply(x)]))
        .cloned()
        .collect())
}

/// Set equality of two automorphism lists.
pub fn same_set(a: &[Automorphism], b: &[Automorphism]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// A set of automorphisms as a group under composition.
///
/// Elements are indexed in lexicographic order of their images, which puts
/// the identity at index 0.
pub fn aut_set_group(
    g: &FiniteGroup,
    set: &[Automorphism],
    name: &str,
) -> Result<FiniteGroup, GroupError> {
    let mut elems = set.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.first().is_none_or(|a| !a.is_identity()) {
        return Err(GroupError::NotClosed);
    }
    let index: HashMap<&Automorphism, usize> =
        elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut table = Vec::with_capacity(elems.len());
    for a in &elems {
        let mut row = Vec::with_capacity(elems.len());
        for b in &elems {
            let c = a.compose(b);
            row.push(*index.get(&c).ok_or(GroupError::NotClosed)?);
        }
        table.push(row);
    }
    debug_assert!(elems.iter().all(|a| a.image.len() == g.order()));
    validate(name, &table, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{builtin, upper_central_series};

    fn aut(spec: &str) -> (FiniteGroup, Vec<Automorphism>) {
        let g = builtin(spec).unwrap();
        let a = automorphism_group(&g, DEFAULT_MAX_ORDER).unwrap();
        (g, a)
    }

    #[test]
    fn aut_orders() {
        assert_eq!(aut("quaternion(8)").1.len(), 24);
        assert_eq!(aut("cyclic(2)").1.len(), 1);
        assert_eq!(aut("abelian(2,2)").1.len(), 6);
        assert_eq!(aut("dihedral(8)").1.len(), 8);
        assert_eq!(aut("cyclic(1)").1.len(), 1);
        assert_eq!(aut("cyclic(12)").1.len(), 4);
        assert_eq!(aut("abelian(2,2,2)").1.len(), 168);
        assert_eq!(aut("dihedral(6)").1.len(), 6);
    }

    #[test]
    fn order_bound() {
        let g = builtin("cyclic(70)").unwrap();
        assert_eq!(
            automorphism_group(&g, 64).unwrap_err(),
            GroupError::OrderBoundExceeded {
                order: 70,
                bound: 64
            }
        );
        assert_eq!(automorphism_group(&g, 80).unwrap().len(), 24);
    }

    #[test]
    fn listed_maps_are_automorphisms_and_closed() {
        for spec in [
            "dihedral(8)",
            "quaternion(8)",
            "abelian(4,2)",
            "modular(2,4)",
        ] {
            let (g, auts) = aut(spec);
            for a in &auts {
                assert!(Automorphism::new(&g, a.image().to_vec()).is_some());
                assert!(auts.binary_search(&a.inverse()).is_ok());
                for b in &auts {
                    assert!(auts.binary_search(&a.compose(b)).is_ok());
                }
            }
        }
    }

    #[test]
    fn inner_and_central() {
        let (d8, auts) = aut("dihedral(8)");
        let inn = inner_automorphisms(&d8);
        assert_eq!(inn.len(), 4);
        let z = d8.center();
        let cstar = aut_xy(&d8, &auts, &z, &z);
        assert_eq!(cstar.len(), 4);
        assert!(same_set(&cstar, &inn));
        assert_eq!(
            aut_xy(&d8, &auts, &d8.whole(), &d8.trivial_subgroup()).len(),
            auts.len()
        );

        let (g, auts) = aut("direct_product(dihedral(8),cyclic(2))");
        let z = g.center();
        assert_eq!(aut_xy(&g, &auts, &z, &z).len(), 16);
        assert_eq!(inner_automorphisms(&g).len(), 4);
    }

    #[test]
    fn absolute_center_and_friends() {
        let (q8, auts) = aut("quaternion(8)");
        let l = absolute_center(&q8, &auts);
        assert_eq!(l.order(), 2);
        assert_eq!(q8.element_order(l.members()[1]), 2);
        assert_eq!(autocommutator_subgroup(&q8, &auts).order(), 8);

        let (c2, auts) = aut("cyclic(2)");
        assert!(autocommutator_subgroup(&c2, &auts).is_trivial());

        let (c4, auts) = aut("cyclic(4)");
        assert_eq!(absolute_center(&c4, &auts).order(), 2);
        assert_eq!(autocenter_series(&c4, &auts, 1).order(), 2);
        assert_eq!(autocenter_series(&c4, &auts, 2).order(), 4);
    }

    #[test]
    fn var_examples() {
        let (q8, auts) = aut("quaternion(8)");
        let var = var_group(&q8, &auts);
        assert_eq!(var.len(), 4);
        assert!(same_set(&var, &inner_automorphisms(&q8)));

        let (c4, auts) = aut("cyclic(4)");
        assert_eq!(var_group(&c4, &auts).len(), 2);
        assert_eq!(inner_automorphisms(&c4).len(), 1);
    }

    #[test]
    fn kpwi_examples() {
        let (c6, auts) = aut("abelian(2,3)");
        let k = kpwi_group(&c6, &auts, 1).unwrap();
        assert_eq!(k.len(), 1);
        assert!(k[0].is_identity());
        let (d8, auts) = aut("dihedral(8)");
        // pointwise inner automorphisms of D8 are exactly the inner ones
        assert!(same_set(
            &kpwi_group(&d8, &auts, 1).unwrap(),
            &inner_automorphisms(&d8)
        ));
        assert!(kpwi_group(&d8, &auts, 0).is_err());
    }

    #[test]
    fn inn_is_g_mod_z() {
        for spec in [
            "dihedral(16)",
            "quaternion(16)",
            "heisenberg(3)",
            "dihedral(12)",
        ] {
            let g = builtin(spec).unwrap();
            let z = &upper_central_series(&g)[1];
            assert_eq!(
                inner_automorphisms(&g).len() * z.order(),
                g.order(),
                "{spec}"
            );
        }
    }

    #[test]
    fn aut_set_group_of_inn() {
        let (q8, _) = aut("quaternion(8)");
        let inn = aut_set_group(&q8, &inner_automorphisms(&q8), "Inn").unwrap();
        assert_eq!(inn.order(), 4);
        assert!(inn.is_abelian());
        let half = vec![Automorphism::identity(8)];
        assert_eq!(aut_set_group(&q8, &half, "1").unwrap().order(), 1);
    }
}
