//! Randomized invariants of the abelian-group algebra, the decider and the
//! finite group engine.

use homaut::fgab::{from_relations, smith_normal_form, BigMatrix, IntMatrix, PrimePart};
use homaut::fingrp::{
    abelian_invariants, builtin, inner_automorphisms, lower_central_series, upper_central_series,
};
use homaut::{
    check_compatible, decide_lemma21, decide_remark22, direct_product, hom_group, hom_iso_check,
    is_isomorphic, normalize, CyclicFactor, DecisionInput, FgAbelian, GroupClass,
};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 0..=3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn torsion_over(primes: &'static [u64]) -> impl Strategy<Value = FgAbelian> {
    prop::collection::vec(partition(), primes.len()).prop_map(move |parts| {
        let parts = primes
            .iter()
            .zip(parts)
            .filter(|(_, e)| !e.is_empty())
            .map(|(&prime, exponents)| PrimePart { prime, exponents })
            .collect();
        FgAbelian::from_parts(0, parts).expect("valid parts")
    })
}

fn abelian() -> impl Strategy<Value = FgAbelian> {
    (0u32..=2, torsion_over(&[2, 3, 5]))
        .prop_map(|(r, t)| FgAbelian::from_parts(r, t.parts().to_vec()).expect("valid parts"))
}

fn finite_abelian() -> impl Strategy<Value = FgAbelian> {
    torsion_over(&[2, 3])
}

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::new(r, c, e).expect("shape matches"))
    })
}

fn factors(g: &FgAbelian) -> Vec<CyclicFactor> {
    let mut out: Vec<CyclicFactor> = g
        .parts()
        .iter()
        .flat_map(|p| {
            p.exponents
                .iter()
                .map(move |&e| CyclicFactor::Finite(p.prime.pow(e)))
        })
        .collect();
    out.extend((0..g.free_rank()).map(|_| CyclicFactor::Infinite));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn snf_reconstructs(a in matrix(5, 30)) {
        let s = smith_normal_form(&a).unwrap();
        let uav = s.u.mul(&BigMatrix::from(&a)).unwrap().mul(&s.v).unwrap();
        prop_assert_eq!(uav, BigMatrix::from(&s.d));
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0);
            let divides = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
            prop_assert!(divides, "chain broken: {:?}", diag);
        }
    }

    #[test]
    fn relations_ignore_row_and_column_operations(
        a in matrix(4, 12),
        picks in (any::<prop::sample::Index>(), any::<prop::sample::Index>(), -3i64..=3),
    ) {
        let g = from_relations(a.cols(), &a).unwrap();
        let (i, j, f) = (picks.0.index(a.rows()), picks.1.index(a.rows()), picks.2);
        let mut rows: Vec<Vec<i64>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
        if i != j {
            let src = rows[j].clone();
            for (x, s) in rows[i].iter_mut().zip(&src) {
                *x += f * s;
            }
        }
        rows.swap(0, j);
        let b = IntMatrix::from_rows(&rows);
        prop_assert_eq!(from_relations(b.cols(), &b).unwrap(), g.clone());

        // a column operation is a change of generators
        let (x, y) = (picks.0.index(a.cols()), picks.1.index(a.cols()));
        if x != y {
            for row in &mut rows {
                row[x] += f * row[y];
            }
            let c = IntMatrix::from_rows(&rows);
            prop_assert_eq!(from_relations(c.cols(), &c).unwrap(), g);
        }
    }

    #[test]
    fn normalize_ignores_factor_order(g in abelian(), seed in any::<u64>()) {
        let mut fs = factors(&g);
        prop_assert_eq!(normalize(&fs), g.clone());
        let n = fs.len();
        if n > 1 {
            fs.rotate_left((seed as usize) % n);
            fs.swap(0, (seed as usize / 7) % n);
        }
        prop_assert_eq!(normalize(&fs), g);
    }

    #[test]
    fn product_is_commutative_and_associative(a in abelian(), b in abelian(), c in abelian()) {
        prop_assert_eq!(direct_product(&a, &b), direct_product(&b, &a));
        prop_assert_eq!(
            direct_product(&direct_product(&a, &b), &c),
            direct_product(&a, &direct_product(&b, &c))
        );
        prop_assert_eq!(direct_product(&a, &FgAbelian::trivial()), a);
    }

    #[test]
    fn hom_is_additive(a in abelian(), b in abelian(), c in abelian()) {
        let left = hom_group(&direct_product(&a, &b), &c);
        prop_assert_eq!(left, direct_product(&hom_group(&a, &c), &hom_group(&b, &c)));
        let right = hom_group(&a, &direct_product(&b, &c));
        prop_assert_eq!(right, direct_product(&hom_group(&a, &b), &hom_group(&a, &c)));
    }

    #[test]
    fn hom_from_cyclic_and_free(n in 1u64..=60, b in abelian()) {
        prop_assert_eq!(hom_group(&FgAbelian::free(1), &b), b.clone());
        let from_cyclic = hom_group(&FgAbelian::cyclic(n), &b);
        let expected = normalize(
            &factors(&b.torsion_part())
                .into_iter()
                .map(|f| match f {
                    CyclicFactor::Finite(q) => CyclicFactor::Finite(gcd(q, n)),
                    CyclicFactor::Infinite => unreachable!(),
                })
                .chain((0..b.free_rank()).map(|_| CyclicFactor::Finite(1)))
                .collect::<Vec<_>>(),
        );
        prop_assert_eq!(from_cyclic, expected);
    }

    #[test]
    fn iso_check_matches_hom(gn in abelian(), m in abelian(), gl in abelian()) {
        let direct = is_isomorphic(&hom_group(&gn, &m), &gl);
        prop_assert_eq!(hom_iso_check(&gn, &m, &gl), direct);
        // hitting the `true` side needs gl taken from the actual Hom
        let h = hom_group(&gn, &m);
        prop_assert!(hom_iso_check(&gn, &m, &h));
    }

    #[test]
    fn decider_matches_oracle(
        gn in finite_abelian(),
        m in finite_abelian(),
        cuts in prop::collection::vec(any::<u32>(), 8),
        use_hom in any::<bool>(),
    ) {
        prop_assume!(!gn.is_trivial());
        // half the time aim for the accepting side
        let gl = if use_hom { hom_group(&gn, &m) } else { quotient_of(&gn, &cuts) };
        let input = DecisionInput { class: GroupClass::Torsion, gl: &gl, gn: &gn, m: &m };
        prop_assume!(check_compatible(&input));
        let v = decide_lemma21(&input).unwrap();
        prop_assert_eq!(v.holds, hom_iso_check(&gn, &m, &gl), "{:?}", v);
    }

    #[test]
    fn equal_quotient_specialization_agrees(gl in finite_abelian(), m in finite_abelian()) {
        let input = DecisionInput { class: GroupClass::Torsion, gl: &gl, gn: &gl, m: &m };
        prop_assume!(check_compatible(&input));
        if let Ok(special) = decide_remark22(&gl, &m, GroupClass::Torsion) {
            let general = decide_lemma21(&input).unwrap();
            prop_assert_eq!(special.holds, general.holds);
            prop_assert_eq!(special.holds, hom_iso_check(&gl, &m, &gl));
        }
    }
}

/// A quotient of `g` with the same primes, chosen by `cuts`.
fn quotient_of(g: &FgAbelian, cuts: &[u32]) -> FgAbelian {
    let mut cuts = cuts.iter().cycle();
    let parts = g
        .parts()
        .iter()
        .map(|p| {
            let mut exps: Vec<u32> = p
                .exponents
                .iter()
                .map(|&e| 1 + cuts.next().unwrap() % e)
                .collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            exps.truncate(1 + *cuts.next().unwrap() as usize % exps.len());
            PrimePart {
                prime: p.prime,
                exponents: exps,
            }
        })
        .collect();
    FgAbelian::from_parts(0, parts).expect("valid parts")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

const SMALL_GROUPS: &[&str] = &[
    "cyclic(12)",
    "abelian(4,2)",
    "dihedral(8)",
    "quaternion(8)",
    "dihedral(12)",
    "heisenberg(3)",
    "modular(2,4)",
    "semidihedral(16)",
    "direct_product(dihedral(6),cyclic(2))",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn abelian_builtins_round_trip(picks in prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 8, 9]), 1..=3)) {
        let mut orders = picks;
        orders.sort_unstable_by(|a, b| b.cmp(a));
        prop_assume!(orders.iter().product::<u64>() <= 128);
        let spec = format!(
            "abelian({})",
            orders.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        );
        let g = builtin(&spec).unwrap();
        let expected = normalize(&orders.iter().map(|&q| CyclicFactor::Finite(q)).collect::<Vec<_>>());
        prop_assert_eq!(abelian_invariants(&g).unwrap(), expected);
        prop_assert_eq!(inner_automorphisms(&g).len(), 1);
    }

    #[test]
    fn structural_subgroups_are_normal(idx in 0..SMALL_GROUPS.len()) {
        let g = builtin(SMALL_GROUPS[idx]).unwrap();
        let z = g.center();
        let d = g.derived_subgroup();
        prop_assert!(g.is_normal(&z));
        prop_assert!(g.is_normal(&d));
        prop_assert_eq!(inner_automorphisms(&g).len() * z.order(), g.order());
        for s in lower_central_series(&g).iter().chain(upper_central_series(&g).iter()) {
            prop_assert!(g.is_normal(s));
        }
    }
}
