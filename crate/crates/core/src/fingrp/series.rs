//! Upper and lower central series.

use super::{FiniteGroup, Subgroup};

/// `[γ_1 = G, γ_2, ...]`, stopping at the first repeat (so the last entry
/// is trivial exactly when the group is nilpotent).
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    let mut series = vec![whole.clone()];
    loop {
        let next = g.commutator(series.last().unwrap(), &whole);
        if &next == series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

/// `[ζ_0 = 1, ζ_1 = Z(G), ...]`, stopping at the first repeat.
pub fn upper_central_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut series = vec![g.trivial_subgroup()];
    loop {
        let prev = series.last().unwrap();
        let next = Subgroup::from_mask(
            (0..n)
                .map(|x| (0..n).all(|y| prev.contains(g.comm(x, y))))
                .collect(),
        );
        if &next == prev {
            return series;
        }
        series.push(next);
    }
}

/// Least `c` with `ζ_c = G`; `None` when the group is not nilpotent.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let upper = upper_central_series(g);
    (upper.last().unwrap().order() == g.order()).then(|| upper.len() - 1)
}
