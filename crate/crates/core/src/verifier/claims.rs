//! Per-group checks: each compares an invariant-level prediction with what
//! the full automorphism group shows.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{Case, Claim, FLAG_DEGENERATE};
use crate::decider::{
    cor24_center_shape, cor29_shape, decide_lemma21, DecideError, DecisionInput, Degeneracy,
    GroupClass,
};
use crate::fgab::FgAbelian;
use crate::fingrp::{
    abelian_invariants, absolute_center, aut_set_group, aut_xy, autocenter_series,
    autocommutator_subgroup, automorphism_group, hom_bruteforce, inner_automorphisms, kpwi_group,
    lower_central_series, nilpotency_class, same_set, upper_central_series, var_group,
    Automorphism, FiniteGroup, GroupError, Subgroup,
};
use crate::homfun::hom_group;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("group is not a p-group")]
    NotPGroup,
    #[error("wrong nilpotency class: expected {expected}, found {found}")]
    WrongClass { expected: String, found: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Decide(#[from] DecideError),
}

/// A group with everything the checks share computed once.
#[derive(Debug, Clone)]
pub struct GroupContext {
    pub group: FiniteGroup,
    pub auts: Vec<Automorphism>,
    pub inner: Vec<Automorphism>,
    pub center: Subgroup,
    pub derived: Subgroup,
    /// `γ_1 = G, γ_2, ...`
    pub lower: Vec<Subgroup>,
    /// `ζ_0 = 1, ζ_1 = Z(G), ...`
    pub upper: Vec<Subgroup>,
    pub class: Option<usize>,
    /// `L(G)`
    pub absolute_center: Subgroup,
    pub var: Vec<Automorphism>,
}

impl GroupContext {
    pub fn new(group: FiniteGroup, max_order: usize) -> Result<Self, GroupError> {
        let auts = automorphism_group(&group, max_order)?;
        let inner = inner_automorphisms(&group);
        let center = group.center();
        let derived = group.derived_subgroup();
        let lower = lower_central_series(&group);
        let upper = upper_central_series(&group);
        let class = nilpotency_class(&group);
        let absolute_center = absolute_center(&group, &auts);
        let var = var_group(&group, &auts);
        Ok(GroupContext {
            group,
            auts,
            inner,
            center,
            derived,
            lower,
            upper,
            class,
            absolute_center,
            var,
        })
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    fn p_group(&self) -> Result<u64, VerifyError> {
        self.group.p_group_prime().ok_or(VerifyError::NotPGroup)
    }

    /// Invariants of a subgroup, which must be abelian.
    pub fn sub_invariants(&self, s: &Subgroup) -> Result<FgAbelian, GroupError> {
        abelian_invariants(&self.group.subgroup_as_group(s))
    }

    /// Invariants of the abelianization of `G/N`.
    pub fn quotient_ab_invariants(&self, n: &Subgroup) -> Result<FgAbelian, GroupError> {
        let n = self.group.join(n, &self.derived);
        abelian_invariants(&self.group.quotient(&n)?.group)
    }

    /// Invariants of `G/N`, which must be abelian.
    pub fn quotient_invariants(&self, n: &Subgroup) -> Result<FgAbelian, GroupError> {
        abelian_invariants(&self.group.quotient(n)?.group)
    }

    pub fn is_abelian(&self) -> bool {
        self.class.is_some_and(|c| c <= 1)
    }
}

/// "order n; <invariants>" for an automorphism set, or "order n; non-abelian".
fn describe_set(
    ctx: &GroupContext,
    set: &[Automorphism],
    name: &str,
) -> Result<String, GroupError> {
    let grp = aut_set_group(&ctx.group, set, name)?;
    Ok(describe_group(&grp))
}

fn describe_group(g: &FiniteGroup) -> String {
    match abelian_invariants(g) {
        Ok(inv) => describe_abelian(g.order() as u128, &inv),
        Err(_) => format!("order {}; non-abelian", g.order()),
    }
}

fn describe_abelian(order: u128, inv: &FgAbelian) -> String {
    format!("order {order}; {inv}")
}

fn finite_order(a: &FgAbelian) -> u128 {
    a.order().ok().flatten().unwrap_or(0)
}

fn primes(a: &FgAbelian) -> BTreeSet<u64> {
    a.primes().collect()
}

/// The automorphisms fixing `x` pointwise with every `g⁻¹α(g)` in `y`,
/// against `Hom((G/X)^ab, Y)`.
pub fn verify_lemma23(
    ctx: &GroupContext,
    x: &Subgroup,
    y: &Subgroup,
    label: &str,
) -> Result<Case, VerifyError> {
    let g = &ctx.group;
    if !g.is_normal(x) {
        return Err(VerifyError::Precondition("X is not normal".into()));
    }
    if !y.is_subset_of(&ctx.center) || !y.is_subset_of(x) {
        return Err(VerifyError::Precondition(
            "Y must lie in Z(G) and in X".into(),
        ));
    }
    let hom = hom_group(&ctx.quotient_ab_invariants(x)?, &ctx.sub_invariants(y)?);
    let predicted = describe_abelian(finite_order(&hom), &hom);
    let set = aut_xy(g, &ctx.auts, y, x);
    let observed = describe_set(ctx, &set, "Aut_X^Y")?;
    Ok(Case::compare(
        Claim::Lemma23,
        ctx.name(),
        label,
        predicted,
        observed,
    ))
}

/// `C* = Inn` exactly for abelian groups and class-2 groups with cyclic
/// centre.
pub fn verify_attar(ctx: &GroupContext) -> Result<Case, VerifyError> {
    ctx.p_group()?;
    let z_cyclic = ctx.sub_invariants(&ctx.center)?.is_cyclic();
    let predicted = ctx.is_abelian() || (ctx.class == Some(2) && z_cyclic);
    let cstar = aut_xy(&ctx.group, &ctx.auts, &ctx.center, &ctx.center);
    let observed = same_set(&cstar, &ctx.inner);
    let input = format!("|C*|={}, |Inn|={}", cstar.len(), ctx.inner.len());
    Ok(Case::compare(
        Claim::Attar,
        ctx.name(),
        input,
        predicted,
        observed,
    ))
}

fn require_class(ctx: &GroupContext, ok: bool, expected: &str) -> Result<usize, VerifyError> {
    match ctx.class {
        Some(c) if ok && c >= 2 => Ok(c),
        other => Err(VerifyError::WrongClass {
            expected: expected.into(),
            found: other.map_or("not nilpotent".into(), |c| c.to_string()),
        }),
    }
}

/// For class 2, `C* ≅ Inn` read off the centre.
pub fn verify_cor24(ctx: &GroupContext) -> Result<Case, VerifyError> {
    require_class(ctx, ctx.class == Some(2), "2")?;
    let z = ctx.sub_invariants(&ctx.center)?;
    let g_mod_z = ctx.quotient_invariants(&ctx.center)?;
    let predicted = cor24_center_shape(&z, &primes(&g_mod_z));
    let cstar = aut_xy(&ctx.group, &ctx.auts, &ctx.center, &ctx.center);
    let c_desc = describe_set(ctx, &cstar, "C*")?;
    let i_desc = describe_set(ctx, &ctx.inner, "Inn")?;
    let observed = c_desc == i_desc;
    let input = format!("C*: {c_desc}; Inn: {i_desc}");
    Ok(Case::compare(
        Claim::Cor24,
        ctx.name(),
        input,
        predicted,
        observed,
    ))
}

/// `Aut^M_N = Inn` for non-abelian `G` with `M ≤ Z(G) ≤ N`.
pub fn verify_cor25(
    ctx: &GroupContext,
    m: &Subgroup,
    n: &Subgroup,
    label: &str,
) -> Result<Case, VerifyError> {
    let g = &ctx.group;
    if ctx.is_abelian() {
        return Err(VerifyError::Precondition("G is abelian".into()));
    }
    if !m.is_subset_of(&ctx.center) || !ctx.center.is_subset_of(n) || !g.is_normal(n) {
        return Err(VerifyError::Precondition(
            "need M ≤ Z(G) ≤ N with N normal".into(),
        ));
    }
    let shape = || -> Result<bool, VerifyError> {
        let g_mod_z = ctx.quotient_invariants(&ctx.center)?;
        Ok(cor24_center_shape(
            &ctx.sub_invariants(m)?,
            &primes(&g_mod_z),
        ))
    };
    let predicted =
        ctx.class == Some(2) && n == &ctx.center && ctx.derived.is_subset_of(m) && shape()?;
    let set = aut_xy(g, &ctx.auts, m, n);
    let observed = same_set(&set, &ctx.inner);
    Ok(Case::compare(
        Claim::Cor25,
        ctx.name(),
        label,
        predicted,
        observed,
    ))
}

/// Whether `{[x, h] : h ∈ γ_k}` is all of `γ_{k+1}` for every `x` outside
/// `C_G(γ_k)`.
fn commutator_hypothesis(ctx: &GroupContext, k: usize) -> bool {
    let g = &ctx.group;
    let gk = &ctx.lower[k - 1];
    let next = &ctx.lower[k];
    let cent = g.centralizer(gk);
    (0..g.order()).filter(|&x| !cent.contains(x)).all(|x| {
        let mut hit = vec![false; g.order()];
        for &h in gk.members() {
            hit[g.comm(x, h)] = true;
        }
        (0..g.order()).all(|e| hit[e] == next.contains(e))
    })
}

/// With `k = class - 1`: `Hom(G/ζ_k, γ_{k+1})` against `G/ζ_k` and `Inn`,
/// and, when the commutator hypothesis holds, against the `k`-pointwise
/// inner automorphisms.
pub fn verify_cor26_27(ctx: &GroupContext) -> Result<Vec<Case>, VerifyError> {
    let c = require_class(ctx, true, ">= 2")?;
    let k = c - 1;
    let g = &ctx.group;
    let name = ctx.name();
    let zeta = &ctx.upper[k];
    let gamma = &ctx.lower[k];
    let g_mod_zeta = g.quotient(zeta)?.group;
    let gamma_grp = g.subgroup_as_group(gamma);
    let hom = hom_bruteforce(&g_mod_zeta, &gamma_grp)?;
    let hom_desc = describe_abelian(hom.count, &hom.invariants);
    let gz_inv = abelian_invariants(&g_mod_zeta)?;
    let gamma_cyclic = abelian_invariants(&gamma_grp)?.is_cyclic();
    let g2_cyclic = ctx.sub_invariants(&ctx.derived)?.is_cyclic();
    let inn_desc = describe_set(ctx, &ctx.inner, "Inn")?;
    let input = format!("k={k}; Hom(G/zeta_k, gamma_k+1): {hom_desc}");

    let mut cases = vec![
        Case::compare(
            Claim::Cor26,
            name,
            format!("{input}; G/zeta_k: {gz_inv}"),
            gamma_cyclic,
            hom.invariants == gz_inv,
        ),
        Case::compare(
            Claim::Cor27,
            name,
            format!("{input}; Inn: {inn_desc}"),
            c == 2 && g2_cyclic,
            hom_desc == inn_desc,
        ),
    ];

    let kpwi_input = format!("k={k}; k-pointwise inner");
    if commutator_hypothesis(ctx, k) {
        let kpwi = kpwi_group(g, &ctx.auts, k)?;
        let kpwi_desc = describe_set(ctx, &kpwi, "kpwi")?;
        cases.push(Case::compare(
            Claim::Cor26,
            name,
            format!("{kpwi_input} vs Hom"),
            &hom_desc,
            &kpwi_desc,
        ));
        cases.push(Case::compare(
            Claim::Cor26,
            name,
            format!("{kpwi_input} as a quotient of Inn"),
            true,
            is_quotient_of_inn(ctx, &kpwi)?,
        ));
        cases.push(Case::compare(
            Claim::Cor27,
            name,
            format!("{kpwi_input} vs Inn: {kpwi_desc} / {inn_desc}"),
            c == 2 && g2_cyclic,
            kpwi_desc == inn_desc,
        ));
    } else {
        for subject in [Claim::Cor26, Claim::Cor26, Claim::Cor27] {
            cases.push(Case::skipped(
                subject,
                name,
                kpwi_input.clone(),
                "HYPOTHESIS_VIOLATED",
            ));
        }
    }
    Ok(cases)
}

/// Whether an automorphism subgroup is an abelian image of `Inn(G)`: its
/// order divides `|Inn|` and its invariants fit inside those of `Inn^ab`,
/// which is exactly when an epimorphism `Inn → set` exists.
fn is_quotient_of_inn(ctx: &GroupContext, set: &[Automorphism]) -> Result<bool, GroupError> {
    let grp = aut_set_group(&ctx.group, set, "set")?;
    let Ok(inv) = abelian_invariants(&grp) else {
        return Ok(false);
    };
    let inn = aut_set_group(&ctx.group, &ctx.inner, "Inn")?;
    let inn_ab = abelian_invariants(&inn.quotient(&inn.derived_subgroup())?.group)?;
    Ok(ctx.inner.len().is_multiple_of(set.len()) && inv.is_dominated_by(&inn_ab))
}

/// `Var(G) = Inn(G)` from the shapes of `G/Z`, `G/L` and `L`, and through
/// the torsion branch of the decider.
pub fn verify_cor28_29(ctx: &GroupContext) -> Result<Vec<Case>, VerifyError> {
    ctx.p_group()?;
    let name = ctx.name();
    let l = &ctx.absolute_center;
    let observed = same_set(&ctx.var, &ctx.inner);
    let orders = format!("|Var|={}, |Inn|={}", ctx.var.len(), ctx.inner.len());
    if !ctx.derived.is_subset_of(l) {
        let input = format!("G' not in L; {orders}");
        return Ok(vec![
            Case::skipped(Claim::Cor28, name, input.clone(), "HYPOTHESIS_VIOLATED"),
            Case::compare(Claim::Cor29, name, input, false, observed),
        ]);
    }
    // G' ≤ L ≤ Z, so both quotients are abelian
    let g_mod_z = ctx.quotient_invariants(&ctx.center)?;
    let g_mod_l = ctx.quotient_invariants(l)?;
    let l_inv = ctx.sub_invariants(l)?;
    let input = format!("G/Z: {g_mod_z}; G/L: {g_mod_l}; L: {l_inv}; {orders}");

    let predicted = cor29_shape(&g_mod_z, &g_mod_l, &l_inv)?;
    let mut cor29 = Case::compare(Claim::Cor29, name, input.clone(), predicted, observed);
    if l.is_trivial() {
        cor29 = cor29.with_flag(format!(
            "{FLAG_DEGENERATE}_{}",
            Degeneracy::TrivialM.as_str()
        ));
    }
    if ctx.is_abelian() {
        cor29 = cor29.with_flag("ABELIAN");
    }

    let cor28 = if primes(&g_mod_l) == primes(&g_mod_z) {
        let verdict = decide_lemma21(&DecisionInput {
            class: GroupClass::Torsion,
            gl: &g_mod_z,
            gn: &g_mod_l,
            m: &l_inv,
        })?;
        let mut case = Case::compare(Claim::Cor28, name, input, verdict.holds, observed);
        if let Some(d) = verdict.degenerate {
            case = case.with_flag(format!("{FLAG_DEGENERATE}_{}", d.as_str()));
        }
        case
    } else {
        Case::skipped(Claim::Cor28, name, input, "HYPOTHESIS_VIOLATED")
    };
    Ok(vec![cor28, cor29])
}

/// For `L_2(G) = G`: `Var = Inn` exactly when `L(G) = Z(G)` is cyclic.
pub fn verify_cor210(ctx: &GroupContext) -> Result<Case, VerifyError> {
    ctx.p_group()?;
    let g = &ctx.group;
    let name = ctx.name();
    let l2 = autocenter_series(g, &ctx.auts, 2);
    if l2.order() != g.order() {
        return Ok(Case::skipped(
            Claim::Cor210,
            name,
            format!("|L_2|={}", l2.order()),
            "HYPOTHESIS_VIOLATED",
        ));
    }
    let l = &ctx.absolute_center;
    let predicted = l == &ctx.center && ctx.sub_invariants(l)?.is_cyclic();
    let observed = same_set(&ctx.var, &ctx.inner);
    let input = format!("|L|={}, |Z|={}", l.order(), ctx.center.order());
    let mut case = Case::compare(Claim::Cor210, name, input, predicted, observed);
    if ctx.is_abelian() {
        case = case.with_flag("ABELIAN");
    }
    Ok(case)
}

/// `exp(G/L(G)) = exp(G*)` whenever `G* ≤ L(G)`.
pub fn verify_exp_equality(ctx: &GroupContext) -> Result<Case, VerifyError> {
    let g = &ctx.group;
    let name = ctx.name();
    let gstar = autocommutator_subgroup(g, &ctx.auts);
    let l = &ctx.absolute_center;
    let input = format!("|G*|={}, |L|={}", gstar.order(), l.order());
    if !gstar.is_subset_of(l) {
        return Ok(Case::skipped(
            Claim::ExpEquality210,
            name,
            input,
            "HYPOTHESIS_VIOLATED",
        ));
    }
    let predicted = g.quotient(l)?.group.exponent();
    let observed = g.subgroup_as_group(&gstar).exponent();
    Ok(Case::compare(
        Claim::ExpEquality210,
        name,
        input,
        predicted,
        observed,
    ))
}
