//! Invariant-level `Hom` computations for finitely generated abelian groups,
//! a structural decision procedure for `Hom(G/N, M) ≅ G/L`, and a brute-force
//! finite group engine used to cross-check the automorphism-group
//! consequences (central automorphisms, absolute centre, autocentral and
//! pointwise-inner automorphisms) on small groups.

pub mod decider;
pub mod fgab;
pub mod fingrp;
pub mod homfun;
pub mod verifier;

pub use decider::{
    check_compatible, compatibility_violation, decide_lemma21, decide_remark22, Branch,
    DecisionInput, Degeneracy, FailReason, GroupClass, Verdict,
};
pub use fgab::{
    direct_product, from_relations, is_isomorphic, normalize, smith_normal_form, BigMatrix,
    CyclicFactor, FgAbelian, FgabError, IntMatrix, PrimePart, SmithForm,
};
pub use fingrp::{builtin, load_group_file, Automorphism, FiniteGroup, GroupError, Subgroup};
pub use homfun::{hom_group, hom_iso_check};
pub use verifier::{Case, Claim, Report};
