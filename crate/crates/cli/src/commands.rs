use std::fmt::Write as _;
use std::path::Path;

use knotcalc::cable::{cable2, full_twist_step, hat_from_tilde, jprime_chain, jprime_from_full_twist, king_sides, make_hat, CableSpec};
use knotcalc::poly::LaurentPoly;
use knotcalc::seifert::{
    alexander_from_seifert, determinant, is_monic, seifert_matrix, seifert_surface_genus, signature,
};
use knotcalc::skein::{conway_with, jones_memoized, kauffman_f_with};
use knotcalc::stevedore::{self, Expected, Status};
use knotcalc::table::KnotTable;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::input::InputArgs;
use crate::{CliError, Ctx, Outcome, Output};

const ALL: [&str; 8] = [
    "jones",
    "kauffman_f",
    "conway",
    "alexander",
    "determinant",
    "signature",
    "genus",
    "fibered",
];
const LINK_OK: [&str; 3] = ["jones", "kauffman_f", "conway"];

fn load_table(path: Option<&Path>) -> Result<KnotTable, CliError> {
    match path {
        None => Ok(KnotTable::bundled()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Ok(KnotTable::from_json(&text)?)
        }
    }
}

fn selection<'a>(requested: &'a [String], all: &[&'a str]) -> Result<Vec<&'a str>, CliError> {
    let mut out: Vec<&str> = Vec::new();
    for w in requested {
        let w = w.trim();
        if w == "all" {
            out.extend(all.iter().copied());
        } else if let Some(n) = all.iter().find(|&&n| n == w) {
            out.push(n);
        } else {
            return Err(CliError::Input(format!("unknown name '{w}', expected one of {} or all", all.join(", "))));
        }
    }
    out.dedup();
    Ok(out)
}

fn span_genus(delta: &LaurentPoly) -> usize {
    match (delta.min_exp(), delta.max_exp()) {
        (Some(lo), Some(hi)) => ((hi - lo) / 8) as usize,
        _ => 0,
    }
}

pub fn invariants(ctx: &Ctx, input: &InputArgs, which: &[String]) -> Result<Output, CliError> {
    let (label, d) = input.load()?;
    let comps = d.component_count();
    let mut names = selection(which, &ALL)?;
    if comps != 1 {
        let knot_only: Vec<_> = names.iter().filter(|n| !LINK_OK.contains(n)).collect();
        if which.iter().any(|w| w == "all") {
            names.retain(|n| LINK_OK.contains(n));
        } else if !knot_only.is_empty() {
            return Err(CliError::Input(format!(
                "{} need a knot, input has {comps} components",
                knot_only.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let seifert = if names.iter().any(|n| !LINK_OK.contains(n)) {
        let s = seifert_matrix(&d).map_err(|e| CliError::Input(e.to_string()))?;
        let delta = alexander_from_seifert(&s);
        Some((s, delta))
    } else {
        None
    };
    let mut values = Map::new();
    let plural = if comps == 1 { "" } else { "s" };
    let mut text = format!("{label}: {} crossings, {comps} component{plural}\n", d.crossing_count());
    for &n in &names {
        let v: Value = match n {
            "jones" => jones_memoized(&d, &ctx.memo, &ctx.cfg)?.to_string().into(),
            "kauffman_f" => kauffman_f_with(&d, &ctx.memo, &ctx.cfg)?.to_string().into(),
            "conway" => conway_with(&d, &ctx.memo, &ctx.cfg)?.display_as("z", 1, 1).into(),
            _ => {
                let (s, delta) = seifert.as_ref().expect("computed for knot invariants");
                match n {
                    "alexander" => delta.to_string().into(),
                    "determinant" => determinant(s).into(),
                    "signature" => signature(s).into(),
                    "genus" => {
                        let hi = seifert_surface_genus(&d).map_err(|e| CliError::Input(e.to_string()))?;
                        let lo = span_genus(delta);
                        if lo == hi {
                            hi.into()
                        } else {
                            format!("{lo}..={hi}").into()
                        }
                    }
                    "fibered" => (if is_monic(delta) { "pass" } else { "fail: alexander not monic" }).into(),
                    _ => unreachable!("names come from ALL"),
                }
            }
        };
        match &v {
            Value::String(s) => writeln!(text, "{n}: {s}").ok(),
            other => writeln!(text, "{n}: {other}").ok(),
        };
        values.insert(n.to_string(), v);
    }
    Ok(Output {
        report: json!({
            "input": label,
            "crossings": d.crossing_count(),
            "components": comps,
            "invariants": values,
        }),
        text,
        outcome: Outcome::Ok,
        note: None,
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::ResourceLimit => "LIMIT",
        Status::Error => "ERROR",
        Status::Skipped => "skip",
    }
}

pub fn verify_chain(ctx: &Ctx, expected: Option<&Path>, table: Option<&Path>) -> Result<Output, CliError> {
    let exp = match expected {
        None => Expected::bundled(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Expected::from_json(&text)?
        }
    };
    let table = load_table(table)?;
    let checks = stevedore::run(&exp, &table, &ctx.memo, &ctx.cfg)?;
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{:5} {}", status_word(c.status), c.name).ok();
        if c.status != Status::Pass {
            if let Some(d) = &c.detail {
                writeln!(text, "      {d}").ok();
            }
        }
    }
    let first = checks.iter().find(|c| c.status != Status::Pass);
    let (outcome, note) = match first {
        None => (Outcome::Ok, None),
        Some(c) => {
            let outcome = if c.status == Status::ResourceLimit {
                Outcome::ResourceLimit
            } else {
                Outcome::VerifyFailed
            };
            let mut n = format!("first failed identity: {} ({})\n", c.name, status_word(c.status));
            writeln!(n, "  computed: {}", c.lhs).ok();
            write!(n, "  expected: {}", c.rhs).ok();
            if let Some(d) = &c.detail {
                write!(n, "\n  {d}").ok();
            }
            (outcome, Some(n))
        }
    };
    let passed = first.is_none();
    writeln!(text, "{}/{} identities hold", checks.iter().filter(|c| c.status == Status::Pass).count(), checks.len()).ok();
    Ok(Output {
        report: json!({ "knot": exp.knot, "framing": exp.framing, "passed": passed, "checks": checks }),
        text,
        outcome,
        note,
    })
}

#[derive(Serialize)]
struct ListedKnot<'a> {
    name: &'a str,
    crossings: usize,
    jones: &'a str,
    alexander: &'a str,
    determinant: u64,
    signature: i64,
    genus: usize,
    fibered: bool,
}

pub fn table_list(table: Option<&Path>) -> Result<Output, CliError> {
    let t = load_table(table)?;
    let mut text = String::new();
    let knots: Vec<ListedKnot> = t
        .knots
        .iter()
        .map(|k| ListedKnot {
            name: &k.name,
            crossings: k.crossing_number(),
            jones: &k.jones,
            alexander: &k.alexander,
            determinant: k.determinant,
            signature: k.signature,
            genus: k.genus,
            fibered: k.fibered,
        })
        .collect();
    for k in &knots {
        writeln!(text, "{:5} V = {}; Δ = {}", k.name, k.jones, k.alexander).ok();
    }
    Ok(Output {
        report: json!({ "source": t.source, "knots": knots }),
        text,
        outcome: Outcome::Ok,
        note: None,
    })
}

pub fn table_verify(ctx: &Ctx, table: Option<&Path>) -> Result<Output, CliError> {
    let t = load_table(table)?;
    let diffs = t.verify(&ctx.memo, &ctx.cfg);
    let mut text = String::new();
    for d in &diffs {
        writeln!(text, "{} {}: expected {}, got {}", d.name, d.field, d.expected, d.got).ok();
    }
    writeln!(text, "{} entries, {} diffs", t.knots.len(), diffs.len()).ok();
    Ok(Output {
        report: json!({ "entries": t.knots.len(), "diffs": diffs }),
        text,
        outcome: if diffs.is_empty() { Outcome::Ok } else { Outcome::VerifyFailed },
        note: None,
    })
}

#[derive(Serialize)]
struct Identity {
    name: String,
    holds: bool,
    lhs: String,
    rhs: String,
}

pub fn cable(ctx: &Ctx, input: &InputArgs, framing: i64, checks: &[String]) -> Result<Output, CliError> {
    let (label, base) = input.load()?;
    let names = selection(checks, &["king", "hat", "jprime"])?;
    let c = cable2(&CableSpec {
        base: base.clone(),
        framing,
    })
    .map_err(|e| CliError::Input(e.to_string()))?;
    let hat = make_hat(&c).map_err(|e| CliError::Input(e.to_string()))?;
    let want_f = names.contains(&"king");
    let (fk, (vt, vh)) = rayon::join(
        || want_f.then(|| kauffman_f_with(&base, &ctx.memo, &ctx.cfg)).transpose(),
        || {
            rayon::join(
                || jones_memoized(&c, &ctx.memo, &ctx.cfg),
                || jones_memoized(&hat, &ctx.memo, &ctx.cfg),
            )
        },
    );
    let (fk, vt, vh) = (fk?, vt?, vh?);
    let mut ids = Vec::new();
    for n in names {
        let (lhs, rhs) = match n {
            "king" => {
                let (l, r) = king_sides(fk.as_ref().expect("computed"), &vt, framing)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                (l.to_string(), r.to_string())
            }
            "hat" => (vh.to_string(), hat_from_tilde(&vt, framing).to_string()),
            _ => (
                jprime_chain(&vh).to_string(),
                jprime_from_full_twist(&full_twist_step(&vh)).to_string(),
            ),
        };
        ids.push(Identity {
            name: n.to_string(),
            holds: lhs == rhs,
            lhs,
            rhs,
        });
    }
    let lk = c.linking_number(0, 1).unwrap_or(0);
    let mut text = format!("cable of {label}, framing {framing}: {} crossings, lk {lk}\n", c.crossing_count());
    writeln!(text, "V(cable) = {vt}").ok();
    writeln!(text, "V(hat) = {vh}").ok();
    for i in &ids {
        writeln!(text, "{:5} {}: {} = {}", if i.holds { "pass" } else { "FAIL" }, i.name, i.lhs, i.rhs).ok();
    }
    let ok = ids.iter().all(|i| i.holds);
    Ok(Output {
        report: json!({
            "base": label,
            "framing": framing,
            "crossings": c.crossing_count(),
            "linking_number": lk,
            "cable_jones": vt.to_string(),
            "hat_jones": vh.to_string(),
            "identities": ids,
        }),
        text,
        outcome: if ok { Outcome::Ok } else { Outcome::VerifyFailed },
        note: None,
    })
}
