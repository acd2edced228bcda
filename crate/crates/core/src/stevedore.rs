//! The stevedore cabling scenario: Kauffman polynomial of 6_1, its image
//! under the cabling substitution, the Jones polynomials of the 2-cable and
//! the twisted double built from it, checked link by link.

use serde::{Deserialize, Serialize};

use crate::cable::{cable2, hat_from_tilde, jprime_chain, king_sides, make_hat, CableSpec};
use crate::diagram::Diagram;
use crate::poly::{king_a_image, king_z_image, two_var_substitute, LaurentPoly, TwoVarPoly};
use crate::seifert::{alexander_from_seifert, is_monic, normalize_alexander, seifert_matrix};
use crate::skein::{alexander_from_conway, conway_with, jones_memoized, kauffman_f_with, SkeinConfig, SkeinError, SkeinMemo};
use crate::table::KnotTable;
use crate::Error;

const BUNDLED: &str = include_str!("../data/stevedore.json");

/// Expected values, in the canonical polynomial grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    /// Table entry used as the companion.
    pub knot: String,
    /// Whether the companion is the mirror of the table diagram.
    pub mirror: bool,
    pub framing: i64,
    pub alexander: String,
    pub kauffman_f: String,
    pub substitution: String,
    pub cable_jones: String,
    pub jprime_jones: String,
}

impl Expected {
    pub fn bundled() -> Expected {
        Expected::from_json(BUNDLED).expect("bundled scenario is valid")
    }

    pub fn from_json(text: &str) -> Result<Expected, Error> {
        serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ResourceLimit,
    Error,
    Skipped,
}

/// One identity: `lhs` is what was computed, `rhs` what it must equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn compare(name: &str, lhs: String, rhs: String) -> Check {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        Check {
            name: name.into(),
            status,
            lhs,
            rhs,
            detail: None,
        }
    }

    fn failed(name: &str, rhs: String, e: &Error) -> Check {
        let status = match e {
            Error::Skein(SkeinError::ResourceLimit { .. } | SkeinError::TooLarge { .. }) => Status::ResourceLimit,
            _ => Status::Error,
        };
        Check {
            name: name.into(),
            status,
            lhs: String::new(),
            rhs,
            detail: Some(e.to_string()),
        }
    }

    fn skipped(name: &str, rhs: String, after: &str) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            lhs: String::new(),
            rhs,
            detail: Some(format!("needs {after}")),
        }
    }
}

fn parse_laurent(s: &str) -> Result<LaurentPoly, Error> {
    Ok(s.parse::<LaurentPoly>()?)
}

fn table_knot(table: &KnotTable, name: &str) -> Result<Diagram, Error> {
    table
        .get(name)
        .ok_or_else(|| Error::Table(format!("no entry {name}")))?
        .diagram()
}

/// Names of the checks, in the order [`run`] reports them.
pub const CHECKS: [&str; 9] = [
    "alexander",
    "monicity",
    "kauffman_f",
    "substitution",
    "cable",
    "cable_jones",
    "hat_jones",
    "king",
    "jprime",
];

/// Runs every check. Independent polynomial computations go through rayon,
/// so the caller's thread pool decides the parallelism; the report itself
/// does not depend on it.
pub fn run(exp: &Expected, table: &KnotTable, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<Vec<Check>, Error> {
    let base = table_knot(table, &exp.knot)?;
    let k = if exp.mirror { base.mirror() } else { base.clone() };
    let trefoil = table_knot(table, "3_1")?;
    let f = exp.framing;
    let mut out = Vec::with_capacity(CHECKS.len());

    // Seifert and Conway paths for the companion
    let delta = alexander_from_seifert(&seifert_matrix(&k)?);
    let via_conway = conway_with(&k, memo, cfg).map(|c| normalize_alexander(&alexander_from_conway(&c)));
    let want = parse_laurent(&exp.alexander)?.to_string();
    out.push(match via_conway {
        Ok(c) => {
            let lhs = format!("seifert {delta}; conway {c}");
            let rhs = format!("seifert {want}; conway {want}");
            Check::compare("alexander", lhs, rhs)
        }
        Err(e) => Check::failed("alexander", want.clone(), &e.into()),
    });

    let trefoil_monic = is_monic(&alexander_from_seifert(&seifert_matrix(&trefoil)?));
    out.push(Check::compare(
        "monicity",
        format!("3_1 {}; {} {}", trefoil_monic, exp.knot, is_monic(&delta)),
        format!("3_1 true; {} false", exp.knot),
    ));

    let cable = cable2(&CableSpec {
        base: k.clone(),
        framing: f,
    })?;
    let hat = make_hat(&cable)?;
    let (fk, (v_tilde, v_hat)) = rayon::join(
        || kauffman_f_with(&k, memo, cfg),
        || {
            rayon::join(
                || jones_memoized(&cable, memo, cfg),
                || jones_memoized(&hat, memo, cfg),
            )
        },
    );

    let want_f = exp.kauffman_f.parse::<TwoVarPoly>()?.to_string();
    let want_sub = parse_laurent(&exp.substitution)?.to_string();
    match &fk {
        Ok(fk) => {
            out.push(Check::compare("kauffman_f", fk.to_string(), want_f));
            let sub = two_var_substitute(fk, &king_a_image(), &king_z_image());
            out.push(match sub {
                Ok(s) => Check::compare("substitution", s.to_string(), want_sub),
                Err(e) => Check::failed("substitution", want_sub, &e.into()),
            });
        }
        Err(e) => {
            out.push(Check::failed("kauffman_f", want_f, &e.clone().into()));
            out.push(Check::skipped("substitution", want_sub, "kauffman_f"));
        }
    }

    let twists = (f - k.writhe()).unsigned_abs() as usize;
    let shape = |d: &Diagram| {
        format!(
            "{} crossings; {} components; lk {}",
            d.crossing_count(),
            d.component_count(),
            d.linking_number(0, 1).map_or_else(|e| e.to_string(), |l| l.to_string())
        )
    };
    out.push(Check::compare(
        "cable",
        shape(&cable),
        format!("{} crossings; 2 components; lk {f}", 4 * k.crossing_count() + 2 * twists),
    ));

    let want_v = parse_laurent(&exp.cable_jones)?.to_string();
    match &v_tilde {
        Ok(v) => out.push(Check::compare("cable_jones", v.to_string(), want_v)),
        Err(e) => out.push(Check::failed("cable_jones", want_v, &e.clone().into())),
    }
    match (&v_tilde, &v_hat) {
        (Ok(vt), Ok(vh)) => out.push(Check::compare("hat_jones", vh.to_string(), hat_from_tilde(vt, f).to_string())),
        (Ok(_), Err(e)) => out.push(Check::failed("hat_jones", String::new(), &e.clone().into())),
        (Err(_), _) => out.push(Check::skipped("hat_jones", String::new(), "cable_jones")),
    }

    match (&fk, &v_tilde) {
        (Ok(fk), Ok(vt)) => out.push(match king_sides(fk, vt, f) {
            Ok((l, r)) => Check::compare("king", l.to_string(), r.to_string()),
            Err(e) => Check::failed("king", String::new(), &e.into()),
        }),
        (Err(_), _) => out.push(Check::skipped("king", String::new(), "kauffman_f")),
        (_, Err(_)) => out.push(Check::skipped("king", String::new(), "cable_jones")),
    }

    let want_j = parse_laurent(&exp.jprime_jones)?.to_string();
    match &v_hat {
        Ok(vh) => out.push(Check::compare("jprime", jprime_chain(vh).to_string(), want_j)),
        Err(_) => out.push(Check::skipped("jprime", want_j, "hat_jones")),
    }
    Ok(out)
}
