//! `Hom(A, B)` for finitely generated abelian groups, at the invariant level.
//!
//! `Hom` is additive in both slots, so the computation splits into
//! free-to-anything (`B^rank(A)`), torsion-to-free (trivial) and, at each
//! shared prime, `Hom(C_{p^b}, C_{p^c}) = C_{p^min(b,c)}`.

use smallvec::SmallVec;

use crate::fgab::{FgAbelian, PrimePart};

pub fn hom_group(a: &FgAbelian, b: &FgAbelian) -> FgAbelian {
    let copies = a.free_rank() as usize;
    let mut parts = Vec::new();
    for bp in b.parts() {
        let mut exps: Vec<u32> = Vec::new();
        for _ in 0..copies {
            exps.extend_from_slice(&bp.exponents);
        }
        for &beta in a.exponents_at(bp.prime) {
            exps.extend(bp.exponents.iter().map(|&gamma| beta.min(gamma)));
        }
        if !exps.is_empty() {
            parts.push(PrimePart {
                prime: bp.prime,
                exponents: exps,
            });
        }
    }
    FgAbelian::from_parts(a.free_rank() * b.free_rank(), parts)
        .expect("parts inherited from valid groups")
}

/// Whether `Hom(gn, m)` is isomorphic to `gl`.
///
/// Equivalent to `is_isomorphic(&hom_group(gn, m), gl)`, but compares prime by
/// prime without building the whole group, so it stays cheap inside sweeps.
pub fn hom_iso_check(gn: &FgAbelian, m: &FgAbelian, gl: &FgAbelian) -> bool {
    if gn.free_rank() * m.free_rank() != gl.free_rank() {
        return false;
    }
    let copies = gn.free_rank() as usize;
    // every prime of gl must come from m
    if gl.primes().any(|p| m.part(p).is_none()) {
        return false;
    }
    let mut buf: SmallVec<[u32; 32]> = SmallVec::new();
    for mp in m.parts() {
        let target = gl.exponents_at(mp.prime);
        let src = gn.exponents_at(mp.prime);
        let len = copies * mp.len() + src.len() * mp.len();
        if len != target.len() {
            return false;
        }
        if len == 0 {
            continue;
        }
        buf.clear();
        for _ in 0..copies {
            buf.extend_from_slice(&mp.exponents);
        }
        for &beta in src {
            buf.extend(mp.exponents.iter().map(|&gamma| beta.min(gamma)));
        }
        buf.sort_unstable_by(|x, y| y.cmp(x));
        if buf.as_slice() != target {
            return false;
        }
    }
    true
}

/// `|Hom(a, b)|` for finite groups, `None` when infinite or too large.
pub fn hom_order(a: &FgAbelian, b: &FgAbelian) -> Option<u128> {
    hom_group(a, b).order().ok().flatten()
}
