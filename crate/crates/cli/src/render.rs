//! Text and JSON rendering of command results. JSON objects use sorted keys
//! so that identical inputs give byte-identical output.

use homaut::fgab::{BigMatrix, SmithForm};
use homaut::fingrp::{
    abelian_invariants, absolute_center, aut_set_group, autocenter_series, autocommutator_subgroup,
    automorphism_group, inner_automorphisms, lower_central_series, nilpotency_class, same_set,
    upper_central_series, var_group, Automorphism, FiniteGroup, GroupError, Subgroup,
};
use homaut::verifier::{render_cases, render_summary, Bundle, Report, SweepBounds, SweepStats};
use homaut::{FgAbelian, Verdict};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{AbelianExpr, DecideArgs, Format, GroupQuery};

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// The serialized name of a unit enum variant, e.g. `COND_II`.
fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

pub fn hom(fmt: Format, a: &AbelianExpr, b: &AbelianExpr, h: &FgAbelian) -> String {
    match fmt {
        Format::Text => format!("{h}\n"),
        Format::Json => {
            to_json(&json!({ "a": a.to_string(), "b": b.to_string(), "hom": h.to_string() }))
        }
    }
}

pub fn iso(fmt: Format, a: &AbelianExpr, b: &AbelianExpr, iso: bool) -> String {
    match fmt {
        Format::Text => format!("{iso}\n"),
        Format::Json => {
            to_json(&json!({ "a": a.to_string(), "b": b.to_string(), "isomorphic": iso }))
        }
    }
}

pub fn verdict(fmt: Format, args: &DecideArgs, v: &Verdict) -> String {
    match fmt {
        Format::Text => {
            let mut parts = vec![
                if v.holds { "holds" } else { "fails" }.to_string(),
                tag(&v.branch),
            ];
            match v.witnesses.as_slice() {
                [w] => parts.push(format!("r={}", w.r)),
                ws => parts.extend(ws.iter().map(|w| format!("r({})={}", w.prime, w.r))),
            }
            if let Some(reason) = &v.reason {
                parts.push(format!("reason {}", tag(reason)));
            }
            if let Some(kind) = &v.degenerate {
                parts.push(format!("degenerate {}", tag(kind)));
                if v.literal != v.holds {
                    parts.push(format!("literal reading {}", v.literal));
                }
            }
            format!("{}\n", parts.join(", "))
        }
        Format::Json => to_json(&json!({
            "input": {
                "class": args.class,
                "gl": args.gl.to_string(),
                "gn": args.gn.to_string(),
                "m": args.m.to_string(),
            },
            "verdict": v,
        })),
    }
}

/// Entries as JSON numbers when they all fit in 64 bits, as decimal strings
/// otherwise.
fn big_json(m: &BigMatrix) -> Value {
    match m.to_int_matrix() {
        Ok(small) => json!((0..small.rows())
            .map(|i| small.row(i).to_vec())
            .collect::<Vec<_>>()),
        Err(_) => json!((0..m.rows())
            .map(|i| m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    }
}

pub fn snf(fmt: Format, s: &SmithForm) -> String {
    match fmt {
        Format::Text => {
            let diag: Vec<String> = s.d.diagonal().iter().map(i64::to_string).collect();
            format!(
                "diagonal: {}\nrank: {}\nD:\n{}U:\n{}V:\n{}",
                diag.join(" "),
                s.rank(),
                s.d,
                s.u,
                s.v
            )
        }
        Format::Json => to_json(&json!({
            "diagonal": s.d.diagonal(),
            "rank": s.rank(),
            "d": (0..s.d.rows()).map(|i| s.d.row(i).to_vec()).collect::<Vec<_>>(),
            "u": big_json(&s.u),
            "v": big_json(&s.v),
        })),
    }
}

fn describe(g: &FiniteGroup) -> String {
    match abelian_invariants(g) {
        Ok(inv) => inv.to_string(),
        Err(_) => "non-abelian".into(),
    }
}

fn describe_set(g: &FiniteGroup, set: &[Automorphism], name: &str) -> Result<String, GroupError> {
    Ok(describe(&aut_set_group(g, set, name)?))
}

fn sub_description(g: &FiniteGroup, s: &Subgroup) -> String {
    describe(&g.subgroup_as_group(s))
}

fn labels(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.members().iter().map(|&x| g.label(x)).collect()
}

/// `(key, value)` rows shown as `key: value` lines or a JSON object.
fn fields(fmt: Format, rows: Vec<(&str, Value)>) -> String {
    match fmt {
        Format::Text => rows
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                Value::Array(items) => {
                    let items: Vec<String> = items
                        .iter()
                        .map(|i| i.as_str().map_or_else(|| i.to_string(), str::to_string))
                        .collect();
                    format!("{k}: {}\n", items.join(", "))
                }
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        Format::Json => to_json(&Value::Object(
            rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        )),
    }
}

pub fn group(
    fmt: Format,
    what: GroupQuery,
    g: &FiniteGroup,
    max_order: usize,
) -> Result<String, GroupError> {
    let name = g.name().to_string();
    let rows = match what {
        GroupQuery::Info => {
            let z = g.center();
            let d = g.derived_subgroup();
            let ab = g.quotient(&d)?.group;
            vec![
                ("name", json!(name)),
                ("order", json!(g.order())),
                ("abelian", json!(g.is_abelian())),
                ("exponent", json!(g.exponent())),
                ("p_group_prime", json!(g.p_group_prime())),
                ("nilpotency_class", json!(nilpotency_class(g))),
                ("center_order", json!(z.order())),
                ("center", json!(sub_description(g, &z))),
                ("derived_order", json!(d.order())),
                ("abelianization", json!(describe(&ab))),
            ]
        }
        GroupQuery::Aut => {
            let auts = automorphism_group(g, max_order)?;
            let inner = inner_automorphisms(g);
            vec![
                ("name", json!(name)),
                ("aut_order", json!(auts.len())),
                ("aut", json!(describe_set(g, &auts, "Aut")?)),
                ("inn_order", json!(inner.len())),
                ("inn", json!(describe_set(g, &inner, "Inn")?)),
                ("out_order", json!(auts.len() / inner.len())),
            ]
        }
        GroupQuery::Series => {
            let orders = |s: &[Subgroup]| s.iter().map(Subgroup::order).collect::<Vec<_>>();
            vec![
                ("name", json!(name)),
                (
                    "lower_central_orders",
                    json!(orders(&lower_central_series(g))),
                ),
                (
                    "upper_central_orders",
                    json!(orders(&upper_central_series(g))),
                ),
                ("nilpotency_class", json!(nilpotency_class(g))),
            ]
        }
        GroupQuery::Var => {
            let auts = automorphism_group(g, max_order)?;
            let var = var_group(g, &auts);
            let inner = inner_automorphisms(g);
            vec![
                ("name", json!(name)),
                ("var_order", json!(var.len())),
                ("var", json!(describe_set(g, &var, "Var")?)),
                ("inn_order", json!(inner.len())),
                ("var_equals_inn", json!(same_set(&var, &inner))),
                (
                    "absolute_center_order",
                    json!(absolute_center(g, &auts).order()),
                ),
            ]
        }
        GroupQuery::AbsCenter => {
            let auts = automorphism_group(g, max_order)?;
            let l = absolute_center(g, &auts);
            let star = autocommutator_subgroup(g, &auts);
            vec![
                ("name", json!(name)),
                ("absolute_center_order", json!(l.order())),
                ("absolute_center", json!(sub_description(g, &l))),
                ("absolute_center_elements", json!(labels(g, &l))),
                (
                    "second_autocenter_order",
                    json!(autocenter_series(g, &auts, 2).order()),
                ),
                ("autocommutator_order", json!(star.order())),
                (
                    "autocommutator_in_absolute_center",
                    json!(star.is_subset_of(&l)),
                ),
            ]
        }
    };
    Ok(fields(fmt, rows))
}

pub fn report(fmt: Format, r: &Report) -> String {
    match fmt {
        Format::Text => format!(
            "{}{}\n",
            render_cases(&r.cases),
            render_summary(r.subject.as_str(), &r.summary)
        ),
        Format::Json => to_json(r),
    }
}

pub fn sweep(
    fmt: Format,
    bounds: &SweepBounds,
    r: &Report,
    stats: &SweepStats,
    limit: usize,
) -> String {
    match fmt {
        Format::Text => {
            let mut out = format!("{}\n", render_summary(r.subject.as_str(), &r.summary));
            for (class, n) in &stats.by_class {
                out.push_str(&format!("  class {class}: {n} cases\n"));
            }
            for (branch, n) in &stats.holds_by_branch {
                out.push_str(&format!("  holds via {}: {n}\n", tag(branch)));
            }
            if !r.cases.is_empty() {
                let shown = &r.cases[..r.cases.len().min(limit)];
                out.push_str(&format!(
                    "flagged cases ({} of {}):\n",
                    shown.len(),
                    r.cases.len()
                ));
                out.push_str(&render_cases(shown));
            }
            out
        }
        Format::Json => to_json(&json!({ "bounds": bounds, "stats": stats, "report": r })),
    }
}

pub fn bundle(fmt: Format, b: &Bundle) -> String {
    match fmt {
        Format::Text => {
            let mut out = format!("{} groups\n", b.groups.len());
            for r in &b.reports {
                out.push_str(&render_summary(r.subject.as_str(), &r.summary));
                out.push('\n');
            }
            let noteworthy: Vec<_> = b
                .reports
                .iter()
                .flat_map(|r| r.cases.iter().filter(|c| !c.agree && !c.is_skipped()))
                .cloned()
                .collect();
            if !noteworthy.is_empty() {
                out.push_str("disagreements and degenerate divergences:\n");
                out.push_str(&render_cases(&noteworthy));
            }
            for e in &b.errors {
                out.push_str(&format!("error: {}: {}\n", e.entry, e.message));
            }
            out.push_str(&render_summary("TOTAL", &b.summary));
            out.push('\n');
            out
        }
        Format::Json => to_json(b),
    }
}
