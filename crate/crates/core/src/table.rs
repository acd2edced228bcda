//! The bundled table of prime knots through eight crossings, and
//! recomputation of the invariants it stores.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{pd_parse, Diagram};
use crate::poly::LaurentPoly;
use crate::seifert::{
    alexander_from_seifert, determinant, is_monic, normalize_alexander, seifert_matrix, seifert_surface_genus,
    signature,
};
use crate::skein::{alexander_from_conway, conway_with, jones_memoized, SkeinConfig, SkeinMemo};
use crate::Error;

const BUNDLED: &str = include_str!("../data/knot_table.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: String,
    #[serde(default)]
    pub braid: String,
    pub jones: String,
    pub alexander: String,
    pub determinant: u64,
    pub signature: i64,
    pub genus: usize,
    pub fibered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTable {
    #[serde(default)]
    pub source: String,
    pub knots: Vec<KnotTableEntry>,
}

impl KnotTable {
    pub fn bundled() -> KnotTable {
        KnotTable::from_json(BUNDLED).expect("bundled table is valid")
    }

    pub fn from_json(text: &str) -> Result<KnotTable, Error> {
        serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))
    }

    pub fn get(&self, name: &str) -> Option<&KnotTableEntry> {
        self.knots.iter().find(|k| k.name == name)
    }

    /// Entries with at most `n` crossings, judged by the name prefix.
    pub fn up_to(&self, n: usize) -> impl Iterator<Item = &KnotTableEntry> {
        self.knots.iter().filter(move |k| k.crossing_number() <= n)
    }

    /// Recomputes every entry and lists the disagreements, in table order.
    pub fn verify(&self, memo: &SkeinMemo, cfg: &SkeinConfig) -> Vec<EntryDiff> {
        self.knots
            .par_iter()
            .map(|k| verify_entry(k, memo, cfg))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

impl KnotTableEntry {
    pub fn diagram(&self) -> Result<Diagram, Error> {
        Ok(pd_parse(&self.pd)?)
    }

    pub fn crossing_number(&self) -> usize {
        self.name.split('_').next().and_then(|c| c.parse().ok()).unwrap_or(usize::MAX)
    }
}

/// Invariants of a knot diagram, each in canonical string form where it is
/// a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotInvariants {
    pub jones: String,
    pub alexander: String,
    /// Same polynomial from the Conway skein path.
    pub alexander_conway: String,
    pub determinant: u64,
    pub signature: i64,
    /// Genus of the surface Seifert's algorithm builds on this diagram.
    pub canonical_genus: usize,
    /// Half the span of the Alexander polynomial, a lower bound for the genus.
    pub alexander_genus: usize,
    pub monic: bool,
}

pub fn knot_invariants(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<KnotInvariants, Error> {
    let jones = jones_memoized(d, memo, cfg)?;
    let s = seifert_matrix(d)?;
    let delta = alexander_from_seifert(&s);
    let via_conway = normalize_alexander(&alexander_from_conway(&conway_with(d, memo, cfg)?));
    Ok(KnotInvariants {
        jones: jones.to_string(),
        alexander: delta.to_string(),
        alexander_conway: via_conway.to_string(),
        determinant: determinant(&s),
        signature: signature(&s),
        canonical_genus: seifert_surface_genus(d)?,
        alexander_genus: alexander_span(&delta) / 2,
        monic: is_monic(&delta),
    })
}

fn alexander_span(p: &LaurentPoly) -> usize {
    match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => ((hi - lo) / 4) as usize,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryDiff {
    pub name: String,
    pub field: String,
    pub expected: String,
    pub got: String,
}

/// Compares polynomials after parsing, so spacing differences do not count.
fn same_poly(stored: &str, got: &str) -> bool {
    match (stored.parse::<LaurentPoly>(), got.parse::<LaurentPoly>()) {
        (Ok(a), Ok(b)) => a == b,
        _ => stored == got,
    }
}

pub fn verify_entry(k: &KnotTableEntry, memo: &SkeinMemo, cfg: &SkeinConfig) -> Vec<EntryDiff> {
    let diff = |field: &str, expected: String, got: String| EntryDiff {
        name: k.name.clone(),
        field: field.to_string(),
        expected,
        got,
    };
    let inv = match k.diagram().and_then(|d| knot_invariants(&d, memo, cfg)) {
        Ok(inv) => inv,
        Err(e) => return vec![diff("pd", k.pd.clone(), e.to_string())],
    };
    let mut out = Vec::new();
    if !same_poly(&k.jones, &inv.jones) {
        out.push(diff("jones", k.jones.clone(), inv.jones.clone()));
    }
    if !same_poly(&k.alexander, &inv.alexander) {
        out.push(diff("alexander", k.alexander.clone(), inv.alexander.clone()));
    }
    if inv.alexander_conway != inv.alexander {
        out.push(diff("alexander_conway", inv.alexander.clone(), inv.alexander_conway.clone()));
    }
    if k.determinant != inv.determinant {
        out.push(diff("determinant", k.determinant.to_string(), inv.determinant.to_string()));
    }
    if k.signature != inv.signature {
        out.push(diff("signature", k.signature.to_string(), inv.signature.to_string()));
    }
    // the genus is certified when the two bounds meet
    if inv.alexander_genus != inv.canonical_genus || k.genus != inv.alexander_genus {
        out.push(diff(
            "genus",
            k.genus.to_string(),
            format!("{}..={}", inv.alexander_genus, inv.canonical_genus),
        ));
    }
    if k.fibered && !inv.monic {
        out.push(diff("fibered", "true".into(), "alexander not monic".into()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_contents() {
        let t = KnotTable::bundled();
        assert_eq!(t.knots.len(), 36);
        for n in ["0_1", "3_1", "4_1", "6_1", "8_21"] {
            assert!(t.get(n).is_some(), "{n}");
        }
        assert_eq!(t.up_to(7).count(), 15);
        assert_eq!(t.get("6_1").unwrap().crossing_number(), 6);
    }

    #[test]
    fn whole_table_verifies() {
        let diffs = KnotTable::bundled().verify(&SkeinMemo::new(), &SkeinConfig::default());
        assert_eq!(diffs, vec![]);
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let mut t = KnotTable::bundled();
        t.knots.retain(|k| k.crossing_number() <= 5);
        t.knots[1].jones = "t + t^3".into();
        let diffs = t.verify(&SkeinMemo::new(), &SkeinConfig::default());
        assert_eq!(diffs.len(), 1);
        assert_eq!((diffs[0].name.as_str(), diffs[0].field.as_str()), ("3_1", "jones"));
    }

    #[test]
    fn unknot_invariants() {
        let inv = knot_invariants(&Diagram::unknot(), &SkeinMemo::new(), &SkeinConfig::default()).unwrap();
        assert_eq!(inv.jones, "1");
        assert_eq!(inv.alexander, "1");
        assert_eq!((inv.determinant, inv.signature, inv.canonical_genus), (1, 0, 0));
        assert!(inv.monic);
    }
}
