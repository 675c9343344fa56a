//! Built-in group families.
//!
//! Spec strings look like `dihedral(8)`, `abelian(4,2)`, `modular(2,4)` or
//! `direct_product(quaternion(8),cyclic(2))`. Orders are total orders, so
//! `dihedral(8)` is the symmetry group of the square.

use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, GroupError};
use crate::fgab::is_prime;

pub(crate) const MAX_BUILTIN_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Builtin {
    Cyclic(u64),
    Abelian(Vec<u64>),
    /// Dihedral group of the given order (even, at least 2).
    Dihedral(u64),
    /// Generalized quaternion group of order `2^k`, `k ≥ 3`.
    Quaternion(u64),
    /// Semidihedral group of order `2^k`, `k ≥ 4`.
    Semidihedral(u64),
    /// `<a, b | a^{p^{n-1}} = b^p = 1, b a b⁻¹ = a^{1+p^{n-2}}>`, order `p^n`.
    Modular(u64, u32),
    /// Upper unitriangular 3x3 matrices over `F_p`.
    Heisenberg(u64),
    DirectProduct(Box<Builtin>, Box<Builtin>),
}

pub fn builtin(spec: &str) -> Result<FiniteGroup, GroupError> {
    spec.parse::<Builtin>()?.build()
}

impl Builtin {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let name = self.to_string();
        let g = match self {
            Builtin::Cyclic(n) => abelian(&[*n])?,
            Builtin::Abelian(orders) => abelian(orders)?,
            Builtin::Dihedral(order) => {
                if *order < 2 || order % 2 != 0 {
                    return Err(bad("dihedral order must be even and at least 2"));
                }
                metacyclic(order / 2, 2, order / 2 - 1, 0)?
            }
            Builtin::Quaternion(order) => {
                let k = two_power(*order).filter(|&k| k >= 3);
                if k.is_none() {
                    return Err(bad("quaternion order must be 2^k with k >= 3"));
                }
                let n = order / 2;
                // a^n = 1, b^2 = a^{n/2}, b a b⁻¹ = a⁻¹
                metacyclic(n, 2, n - 1, n / 2)?
            }
            Builtin::Semidihedral(order) => {
                if two_power(*order).filter(|&k| k >= 4).is_none() {
                    return Err(bad("semidihedral order must be 2^k with k >= 4"));
                }
                let n = order / 2;
                metacyclic(n, 2, n / 2 - 1, 0)?
            }
            Builtin::Modular(p, n) => {
                if !is_prime(*p) || *n < 3 || (*p == 2 && *n < 4) {
                    return Err(bad(
                        "modular(p, n) needs p prime, n >= 3 (n >= 4 for p = 2)",
                    ));
                }
                let a_order = checked_pow(*p, n - 1)?;
                let m = 1 + checked_pow(*p, n - 2)?;
                metacyclic(a_order, *p, m, 0)?
            }
            Builtin::Heisenberg(p) => {
                if !is_prime(*p) {
                    return Err(bad("heisenberg(p) needs p prime"));
                }
                heisenberg(*p)?
            }
            Builtin::DirectProduct(a, b) => {
                let (a, b) = (a.build()?, b.build()?);
                if a.order() * b.order() > MAX_BUILTIN_ORDER {
                    return Err(bad("product order exceeds 128"));
                }
                a.direct_product(&b)
            }
        };
        Ok(g.with_name(name))
    }
}

fn bad(msg: &str) -> GroupError {
    GroupError::BadParams(msg.to_string())
}

fn checked_pow(p: u64, e: u32) -> Result<u64, GroupError> {
    p.checked_pow(e)
        .filter(|&v| v <= MAX_BUILTIN_ORDER as u64)
        .ok_or_else(|| bad("order exceeds 128"))
}

fn two_power(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

fn abelian(orders: &[u64]) -> Result<FiniteGroup, GroupError> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(bad("abelian orders must be positive"));
    }
    let total = orders
        .iter()
        .try_fold(1u64, |acc, &n| acc.checked_mul(n))
        .filter(|&t| t <= MAX_BUILTIN_ORDER as u64);
    if total.is_none() {
        return Err(bad("order exceeds 128"));
    }
    let k = orders.len();
    let mut seed = vec![vec![0u64; k]];
    for i in 0..k {
        let mut e = vec![0u64; k];
        e[i] = 1 % orders[i];
        seed.push(e);
    }
    let orders = orders.to_vec();
    FiniteGroup::from_closure(
        "abelian",
        seed,
        |a, b| {
            a.iter()
                .zip(b)
                .zip(&orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect()
        },
        |a| {
            if a.iter().all(|&x| x == 0) {
                "e".to_string()
            } else {
                format!(
                    "({})",
                    a.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                )
            }
        },
    )
}

/// `a^i b^j` with `a^n = 1`, `b^k = a^s` and `b a b⁻¹ = a^m`.
///
/// Requires `m^k ≡ 1 (mod n)` and `m s ≡ s (mod n)`.
fn metacyclic(n: u64, k: u64, m: u64, s: u64) -> Result<FiniteGroup, GroupError> {
    if n * k > MAX_BUILTIN_ORDER as u64 {
        return Err(bad("order exceeds 128"));
    }
    let m = m % n;
    let mut mpow = vec![1 % n];
    for _ in 1..k {
        mpow.push(mpow.last().unwrap() * m % n);
    }
    // b^j a^i = a^{i m^j} b^j
    let mul = move |x: &(u64, u64), y: &(u64, u64)| {
        let i = (x.0 + y.0 * mpow[x.1 as usize]) % n;
        let j = x.1 + y.1;
        if j >= k {
            ((i + s) % n, j - k)
        } else {
            (i, j)
        }
    };
    FiniteGroup::from_closure(
        "metacyclic",
        vec![(0, 0), (1 % n, 0), (0, 1 % k)],
        mul,
        |&(i, j)| match (i, j) {
            (0, 0) => "e".into(),
            (i, 0) => format!("a^{i}"),
            (0, j) => format!("b^{j}"),
            (i, j) => format!("a^{i}b^{j}"),
        },
    )
}

fn heisenberg(p: u64) -> Result<FiniteGroup, GroupError> {
    if p * p * p > MAX_BUILTIN_ORDER as u64 {
        return Err(bad("order exceeds 128"));
    }
    FiniteGroup::from_closure(
        "heisenberg",
        vec![(0, 0, 0), (1, 0, 0), (0, 1, 0)],
        move |a: &(u64, u64, u64), b: &(u64, u64, u64)| {
            (
                (a.0 + b.0) % p,
                (a.1 + b.1) % p,
                (a.2 + b.2 + a.0 * b.1) % p,
            )
        },
        |&(x, y, z)| format!("[{x},{y},{z}]"),
    )
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Cyclic(n) => write!(f, "cyclic({n})"),
            Builtin::Abelian(v) => write!(
                f,
                "abelian({})",
                v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
            Builtin::Dihedral(n) => write!(f, "dihedral({n})"),
            Builtin::Quaternion(n) => write!(f, "quaternion({n})"),
            Builtin::Semidihedral(n) => write!(f, "semidihedral({n})"),
            Builtin::Modular(p, n) => write!(f, "modular({p},{n})"),
            Builtin::Heisenberg(p) => write!(f, "heisenberg({p})"),
            Builtin::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (b, rest) = parse_spec(&compact)?;
        if !rest.is_empty() {
            return Err(GroupError::BadParams(format!("trailing input `{rest}`")));
        }
        Ok(b)
    }
}

fn parse_spec(s: &str) -> Result<(Builtin, &str), GroupError> {
    let open = s
        .find('(')
        .ok_or_else(|| GroupError::UnknownFamily(s.to_string()))?;
    let family = &s[..open];
    let body = &s[open + 1..];
    if family == "direct_product" {
        let (a, rest) = parse_spec(body)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| bad("direct_product takes two groups"))?;
        let (b, rest) = parse_spec(rest)?;
        let rest = rest.strip_prefix(')').ok_or_else(|| bad("missing `)`"))?;
        return Ok((Builtin::DirectProduct(Box::new(a), Box::new(b)), rest));
    }
    let close = body.find(')').ok_or_else(|| bad("missing `)`"))?;
    let args: Vec<u64> = if body[..close].is_empty() {
        Vec::new()
    } else {
        body[..close]
            .split(',')
            .map(|a| {
                a.parse::<u64>()
                    .map_err(|_| bad(&format!("bad integer `{a}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let rest = &body[close + 1..];
    let one = |args: &[u64]| -> Result<u64, GroupError> {
        match args {
            [x] => Ok(*x),
            _ => Err(bad(&format!("{family} takes one parameter"))),
        }
    };
    let b = match family {
        "cyclic" => Builtin::Cyclic(one(&args)?),
        "abelian" => Builtin::Abelian(args),
        "dihedral" => Builtin::Dihedral(one(&args)?),
        "quaternion" => Builtin::Quaternion(one(&args)?),
        "semidihedral" => Builtin::Semidihedral(one(&args)?),
        "heisenberg" => Builtin::Heisenberg(one(&args)?),
        "modular" => match args[..] {
            [p, n] => Builtin::Modular(p, u32::try_from(n).map_err(|_| bad("n too large"))?),
            _ => return Err(bad("modular takes (p, n)")),
        },
        other => return Err(GroupError::UnknownFamily(other.to_string())),
    };
    Ok((b, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::nilpotency_class;

    #[test]
    fn orders() {
        for (spec, order) in [
            ("cyclic(5)", 5),
            ("abelian(4,2)", 8),
            ("dihedral(8)", 8),
            ("dihedral(2)", 2),
            ("quaternion(8)", 8),
            ("quaternion(16)", 16),
            ("semidihedral(16)", 16),
            ("modular(2,4)", 16),
            ("modular(3,3)", 27),
            ("heisenberg(3)", 27),
            ("direct_product(dihedral(8),cyclic(2))", 16),
        ] {
            let g = builtin(spec).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.name(), spec);
        }
    }

    #[test]
    fn structure() {
        let d8 = builtin("dihedral(8)").unwrap();
        assert_eq!(d8.center().order(), 2);
        assert!(!d8.is_abelian());
        let h = builtin("heisenberg(3)").unwrap();
        assert_eq!(h.exponent(), 3);
        assert_eq!(nilpotency_class(&h), Some(2));
        let m = builtin("modular(3,3)").unwrap();
        assert_eq!(m.exponent(), 9);
        let q = builtin("quaternion(8)").unwrap();
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 2).count(), 1);
        let sd = builtin("semidihedral(16)").unwrap();
        assert_eq!(sd.center().order(), 2);
        let m16 = builtin("modular(2,4)").unwrap();
        assert_eq!(m16.center().order(), 4);
        assert_eq!(m16.exponent(), 8);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            builtin("foo(3)"),
            Err(GroupError::UnknownFamily(_))
        ));
        assert!(matches!(
            builtin("dihedral(7)"),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            builtin("quaternion(12)"),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            builtin("modular(4,3)"),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            builtin("cyclic(256)"),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            builtin("cyclic(2,3)"),
            Err(GroupError::BadParams(_))
        ));
        assert!(matches!(
            builtin("cyclic"),
            Err(GroupError::UnknownFamily(_))
        ));
    }

    #[test]
    fn spec_round_trip() {
        let s = "direct_product(quaternion(8), abelian(2,2))";
        let b: Builtin = s.parse().unwrap();
        assert_eq!(b.to_string(), "direct_product(quaternion(8),abelian(2,2))");
        assert_eq!(b.to_string().parse::<Builtin>().unwrap(), b);
    }
}
