//! Oriented planar link diagrams stored as PD codes.
//!
//! A crossing `X[a,b,c,d]` lists its four arcs counterclockwise starting
//! with the incoming under-strand, so the under-strand runs `a → c`. The
//! over-strand runs `d → b` at a positive crossing and `b → d` at a negative
//! one. Crossing-free circles cannot be written in PD form and are counted
//! separately (`O` terms in the text grammar).

mod faces;
mod key;
mod moves;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{Dart, Face};
pub use key::CanonicalKey;
pub use moves::{MoveKind, MoveRecord, RMove};
pub use parse::pd_parse;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("arc {0} does not occur exactly twice")]
    DanglingArc(u32),
    #[error("linking number needs two distinct components")]
    SameComponent,
    #[error("no component with index {0}")]
    UnknownComponent(usize),
    #[error("pattern not found: {0}")]
    PatternNotFound(String),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// Sign of a crossing.
pub type Sign = i8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub pd: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Builds the crossing whose under-strand runs `ui → uo` and over-strand `oi → oo`.
    pub fn from_strands(ui: u32, uo: u32, oi: u32, oo: u32, sign: Sign) -> Crossing {
        let pd = if sign > 0 {
            [ui, oo, uo, oi]
        } else {
            [ui, oi, uo, oo]
        };
        Crossing { pd, sign }
    }

    pub fn under_in(&self) -> u32 {
        self.pd[0]
    }

    pub fn under_out(&self) -> u32 {
        self.pd[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.pd[3]
        } else {
            self.pd[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.pd[1]
        } else {
            self.pd[3]
        }
    }

    /// Whether the arc at `slot` points into the crossing.
    pub fn slot_is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.sign < 0,
            _ => self.sign > 0,
        }
    }

    /// `(under_in, under_out, over_in, over_out)`.
    pub fn strands(&self) -> (u32, u32, u32, u32) {
        (self.under_in(), self.under_out(), self.over_in(), self.over_out())
    }

    /// The same crossing with the two strands exchanged (over becomes under).
    pub fn switched(&self) -> Crossing {
        let (ui, uo, oi, oo) = self.strands();
        Crossing::from_strands(oi, oo, ui, uo, -self.sign)
    }
}

/// A position on a crossing: `(crossing index, slot 0..4)`.
pub type Slot = (usize, usize);

/// Oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// The JSON mirror of the PD grammar.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<Sign>>,
}

impl Diagram {
    /// Validates crossings that already carry signs.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Diagram, DiagramError> {
        let d = Diagram {
            crossings,
            free_loops,
        };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(crossings: Vec<Crossing>, free_loops: usize) -> Diagram {
        let d = Diagram {
            crossings,
            free_loops,
        };
        debug_assert!(d.validate().is_ok(), "invalid diagram {d}");
        d
    }

    /// Orients a PD code whose slot 0 entries are incoming under-strands.
    ///
    /// Over-strand directions are propagated along components; a component
    /// that never passes under is oriented from its smallest crossing slot.
    pub fn from_pd(pd: &[[u32; 4]], free_loops: usize) -> Result<Diagram, DiagramError> {
        orient(pd, free_loops, true)
    }

    /// Orients an unoriented PD code (under-strand on slots 0 and 2, either
    /// direction), rotating crossings so slot 0 becomes incoming.
    pub fn from_unoriented_pd(pd: &[[u32; 4]], free_loops: usize) -> Result<Diagram, DiagramError> {
        orient(pd, free_loops, false)
    }

    pub fn unknot() -> Diagram {
        Diagram::new_unchecked(Vec::new(), 1)
    }

    /// `n` crossing-free circles.
    pub fn unlink(n: usize) -> Diagram {
        Diagram::new_unchecked(Vec::new(), n)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Both ends of every arc, keyed by label: `[tail, head]`.
    pub fn arc_ends(&self) -> BTreeMap<u32, [Slot; 2]> {
        let mut seen: BTreeMap<u32, (Option<Slot>, Option<Slot>)> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let e = seen.entry(c.pd[s]).or_default();
                if c.slot_is_incoming(s) {
                    e.1 = Some((i, s));
                } else {
                    e.0 = Some((i, s));
                }
            }
        }
        seen.into_iter()
            .map(|(a, (t, h))| (a, [t.expect("validated"), h.expect("validated")]))
            .collect()
    }

    pub fn arcs(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.crossings.iter().flat_map(|c| c.pd).collect();
        set.into_iter().collect()
    }

    pub fn max_label(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.pd)
            .max()
            .unwrap_or(0)
    }

    /// The arc following `arc` along its component.
    pub fn successor(&self, arc: u32) -> Option<u32> {
        let ends = self.arc_ends();
        let [_, (c, s)] = *ends.get(&arc)?;
        Some(self.crossings[c].pd[(s + 2) % 4])
    }

    /// Components as cyclic arc sequences, ordered by their smallest arc.
    /// Crossing-free circles are not listed here; they come after these in
    /// component numbering.
    pub fn arc_components(&self) -> Vec<Vec<u32>> {
        let ends = self.arc_ends();
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for &start in ends.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            loop {
                done.insert(a);
                comp.push(a);
                let (c, s) = ends[&a][1];
                a = self.crossings[c].pd[(s + 2) % 4];
                if a == start {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.arc_components().len() + self.free_loops
    }

    /// Component index of every arc.
    pub fn component_map(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for (i, comp) in self.arc_components().iter().enumerate() {
            for &a in comp {
                m.insert(a, i);
            }
        }
        m
    }

    /// Components `(under, over)` meeting at each crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let m = self.component_map();
        self.crossings
            .iter()
            .map(|c| (m[&c.pd[0]], m[&c.pd[1]]))
            .collect()
    }

    fn check_component(&self, c: usize) -> Result<(), DiagramError> {
        if c >= self.component_count() {
            Err(DiagramError::UnknownComponent(c))
        } else {
            Ok(())
        }
    }

    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, DiagramError> {
        self.check_component(c1)?;
        self.check_component(c2)?;
        if c1 == c2 {
            return Err(DiagramError::SameComponent);
        }
        let total: i64 = self
            .crossing_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| (*u == c1 && *o == c2) || (*u == c2 && *o == c1))
            .map(|(_, c)| c.sign as i64)
            .sum();
        Ok(total / 2)
    }

    /// Sum of the signs of crossings of a component with itself.
    pub fn self_writhe(&self, c: usize) -> i64 {
        self.crossing_components()
            .iter()
            .zip(&self.crossings)
            .filter(|((u, o), _)| *u == c && *o == c)
            .map(|(_, x)| x.sign as i64)
            .sum()
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Diagram {
        Diagram::new_unchecked(
            self.crossings.iter().map(Crossing::switched).collect(),
            self.free_loops,
        )
    }

    /// Reverses the orientation of every component in `comps`.
    pub fn reverse_components(&self, comps: &[usize]) -> Result<Diagram, DiagramError> {
        for &c in comps {
            self.check_component(c)?;
        }
        let map = self.component_map();
        let flip = |a: u32| comps.contains(&map[&a]);
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let (mut ui, mut uo, mut oi, mut oo) = x.strands();
                let mut sign = x.sign;
                if flip(ui) {
                    std::mem::swap(&mut ui, &mut uo);
                    sign = -sign;
                }
                if flip(oi) {
                    std::mem::swap(&mut oi, &mut oo);
                    sign = -sign;
                }
                Crossing::from_strands(ui, uo, oi, oo, sign)
            })
            .collect();
        Ok(Diagram::new_unchecked(crossings, self.free_loops))
    }

    pub fn reverse_component(&self, c: usize) -> Result<Diagram, DiagramError> {
        self.reverse_components(&[c])
    }

    pub fn reverse(&self) -> Diagram {
        let all: Vec<usize> = (0..self.component_count()).collect();
        self.reverse_components(&all).expect("all components exist")
    }

    /// Disjoint union with arc labels of `other` shifted past ours.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let off = self.max_label();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            pd: c.pd.map(|a| a + off),
            sign: c.sign,
        }));
        Diagram::new_unchecked(crossings, self.free_loops + other.free_loops)
    }

    /// Relabels arcs `1..=2n` following components in order.
    pub fn compact_labels(&self) -> Diagram {
        let mut map = BTreeMap::new();
        for comp in self.arc_components() {
            for a in comp {
                let next = map.len() as u32 + 1;
                map.insert(a, next);
            }
        }
        self.relabel(|a| map[&a])
    }

    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Diagram {
        Diagram::new_unchecked(
            self.crossings
                .iter()
                .map(|c| Crossing {
                    pd: c.pd.map(&f),
                    sign: c.sign,
                })
                .collect(),
            self.free_loops,
        )
    }

    /// Sub-diagram made of the given components, arcs keeping their labels.
    pub fn sublink(&self, comps: &[usize]) -> Result<Diagram, DiagramError> {
        for &c in comps {
            self.check_component(c)?;
        }
        let arc_comps = self.arc_components().len();
        let map = self.component_map();
        let keep = |a: u32| comps.contains(&map[&a]);
        let mut removed: Vec<usize> = Vec::new();
        let mut kept = Vec::new();
        for (i, c) in self.crossings.iter().enumerate() {
            match (keep(c.pd[0]), keep(c.pd[1])) {
                (true, true) => kept.push(i),
                (false, false) => {}
                _ => removed.push(i),
            }
        }
        // Dropping a crossing between a kept and a discarded strand joins the kept strand's two arcs.
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        fn find(p: &mut BTreeMap<u32, u32>, a: u32) -> u32 {
            let mut r = a;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            p.insert(a, r);
            r
        }
        for &i in &removed {
            let c = &self.crossings[i];
            let (x, y) = if keep(c.pd[0]) {
                (c.pd[0], c.pd[2])
            } else {
                (c.pd[1], c.pd[3])
            };
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                let (lo, hi) = (rx.min(ry), rx.max(ry));
                parent.insert(hi, lo);
            }
        }
        let crossings: Vec<Crossing> = kept
            .iter()
            .map(|&i| {
                let c = self.crossings[i];
                Crossing {
                    pd: c.pd.map(|a| find(&mut parent, a)),
                    sign: c.sign,
                }
            })
            .collect();
        let mut d = Diagram {
            crossings,
            free_loops: comps.iter().filter(|&&c| c >= arc_comps).count(),
        };
        let present: BTreeSet<usize> = d
            .crossings
            .iter()
            .map(|c| map[&c.pd[0]])
            .chain(d.crossings.iter().map(|c| map[&c.pd[1]]))
            .collect();
        d.free_loops += comps
            .iter()
            .filter(|&&c| c < arc_comps && !present.contains(&c))
            .count();
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self.crossings.iter().map(|c| c.pd).collect(),
            free_loops: self.free_loops,
            signs: Some(self.crossings.iter().map(|c| c.sign).collect()),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Diagram, DiagramError> {
        let d = Diagram::from_pd(&j.crossings, j.free_loops)?;
        if let Some(signs) = &j.signs {
            let got: Vec<Sign> = d.crossings.iter().map(|c| c.sign).collect();
            if *signs != got {
                return Err(DiagramError::InconsistentOrientation(
                    "declared signs disagree with the orientation".into(),
                ));
            }
        }
        Ok(d)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut count: BTreeMap<u32, (u8, u8)> = BTreeMap::new();
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::InconsistentOrientation(format!(
                    "crossing sign {}",
                    c.sign
                )));
            }
            for s in 0..4 {
                let e = count.entry(c.pd[s]).or_default();
                if c.slot_is_incoming(s) {
                    e.1 += 1;
                } else {
                    e.0 += 1;
                }
            }
        }
        for (&a, &(t, h)) in &count {
            if t + h != 2 {
                return Err(DiagramError::DanglingArc(a));
            }
            if t != 1 {
                return Err(DiagramError::InconsistentOrientation(format!(
                    "arc {a} has two {}",
                    if t == 0 { "heads" } else { "tails" }
                )));
            }
        }
        Ok(())
    }
}

/// Labels occurring a number of times other than two, smallest first.
fn dangling(pd: &[[u32; 4]]) -> Option<u32> {
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for x in pd {
        for &a in x {
            *count.entry(a).or_default() += 1;
        }
    }
    count.into_iter().find(|&(_, n)| n != 2).map(|(a, _)| a)
}

fn orient(pd: &[[u32; 4]], free_loops: usize, strict: bool) -> Result<Diagram, DiagramError> {
    if let Some(a) = dangling(pd) {
        return Err(DiagramError::DanglingArc(a));
    }
    let mut where_: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
    for (i, x) in pd.iter().enumerate() {
        for s in 0..4 {
            where_.entry(x[s]).or_default().push((i, s));
        }
    }
    let other_end = |slot: Slot| -> Slot {
        let v = &where_[&pd[slot.0][slot.1]];
        if v[0] == slot {
            v[1]
        } else {
            v[0]
        }
    };
    // incoming[c][s]: does the strand enter crossing c through slot s?
    let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; pd.len()];
    let walk = |start: Slot, incoming: &mut Vec<[Option<bool>; 4]>| -> Result<(), DiagramError> {
        let mut cur = start;
        loop {
            let (c, s) = cur;
            let out = (c, (s + 2) % 4);
            for (slot, val) in [(cur, true), (out, false)] {
                match incoming[slot.0][slot.1] {
                    Some(v) if v != val => {
                        return Err(DiagramError::InconsistentOrientation(format!(
                            "arc {} is traversed both ways at crossing {}",
                            pd[slot.0][slot.1], slot.0
                        )))
                    }
                    _ => incoming[slot.0][slot.1] = Some(val),
                }
            }
            cur = other_end(out);
            if cur == start {
                return Ok(());
            }
        }
    };
    if strict {
        for c in 0..pd.len() {
            if incoming[c][0].is_none() {
                walk((c, 0), &mut incoming)?;
            }
        }
    }
    for c in 0..pd.len() {
        for s in 0..4 {
            if incoming[c][s].is_none() {
                walk((c, s), &mut incoming)?;
            }
        }
    }
    let mut crossings = Vec::with_capacity(pd.len());
    for (c, x) in pd.iter().enumerate() {
        let inc = incoming[c].map(|v| v.expect("all slots walked"));
        let mut x = *x;
        let mut inc = inc;
        if !inc[0] {
            if strict {
                return Err(DiagramError::InconsistentOrientation(format!(
                    "slot 0 of crossing {c} is not an incoming strand"
                )));
            }
            x = [x[2], x[3], x[0], x[1]];
            inc = [inc[2], inc[3], inc[0], inc[1]];
        }
        if inc[2] || inc[1] == inc[3] {
            return Err(DiagramError::InconsistentOrientation(format!(
                "strands at crossing {c} do not pass through"
            )));
        }
        let sign = if inc[3] { 1 } else { -1 };
        crossings.push(Crossing { pd: x, sign });
    }
    Diagram::new(crossings, free_loops)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3]))
            .collect();
        parts.extend(std::iter::repeat("O".to_string()).take(self.free_loops));
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    pub(crate) const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";
    pub(crate) const FIGURE8: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    pub(crate) fn d(s: &str) -> Diagram {
        pd_parse(s).unwrap()
    }

    #[test]
    fn trefoil_basics() {
        let t = d(TREFOIL);
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe().abs(), 3);
        assert_eq!(t.mirror().writhe(), -t.writhe());
        assert_eq!(t.mirror().mirror(), t);
    }

    #[test]
    fn figure_eight_zero_writhe() {
        assert_eq!(d(FIGURE8).writhe(), 0);
    }

    #[test]
    fn hopf_linking() {
        let h = d(HOPF);
        assert_eq!(h.component_count(), 2);
        let lk = h.linking_number(0, 1).unwrap();
        assert_eq!(lk.abs(), 1);
        assert_eq!(h.linking_number(1, 0).unwrap(), lk);
        let r = h.reverse_component(1).unwrap();
        assert_eq!(r.linking_number(0, 1).unwrap(), -lk);
        assert_eq!(h.linking_number(0, 0), Err(DiagramError::SameComponent));
        assert_eq!(h.linking_number(0, 5), Err(DiagramError::UnknownComponent(5)));
    }

    #[test]
    fn unlink_linking_zero() {
        let u = Diagram::unlink(2);
        assert_eq!(u.linking_number(0, 1).unwrap(), 0);
        assert_eq!(u.writhe(), 0);
    }

    #[test]
    fn union_and_sublink() {
        let t = d(TREFOIL);
        let u = t.disjoint_union(&d(HOPF));
        assert_eq!(u.component_count(), 3);
        assert_eq!(u.writhe(), t.writhe() + d(HOPF).writhe());
        let back = u.sublink(&[0]).unwrap();
        assert_eq!(back.writhe(), t.writhe());
        let one = d(HOPF).sublink(&[1]).unwrap();
        assert_eq!(one.crossing_count(), 0);
        assert_eq!(one.free_loops(), 1);
    }

    #[test]
    fn unoriented_input_is_rotated() {
        // slot 0 outgoing on the second crossing
        let d = Diagram::from_unoriented_pd(&[[1, 4, 2, 5], [4, 1, 3, 6], [5, 2, 6, 3]], 0).unwrap();
        assert_eq!(d.writhe().abs(), 3);
        assert!(Diagram::from_pd(&[[1, 4, 2, 5], [4, 1, 3, 6], [5, 2, 6, 3]], 0).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = d(FIGURE8);
        let j = serde_json::to_string(&t.to_json()).unwrap();
        let back: DiagramJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Diagram::from_json(&back).unwrap(), t);
    }

    #[test]
    fn successor_cycles() {
        let t = d(TREFOIL);
        let comps = t.arc_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 6);
        for w in comps[0].windows(2) {
            assert_eq!(t.successor(w[0]), Some(w[1]));
        }
    }
}
