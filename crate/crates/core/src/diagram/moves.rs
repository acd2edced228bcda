use std::collections::BTreeMap;

use serde::Serialize;

use super::{Crossing, Diagram, DiagramError, Sign, Slot};

/// A Reidemeister move together with the place it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RMove {
    /// Remove the kink at this crossing.
    R1Remove { crossing: usize },
    /// Insert a kink of the given sign on `arc`. `under_first` picks whether
    /// the strand passes under or over first.
    R1Add { arc: u32, sign: Sign, under_first: bool },
    /// Remove a bigon whose two crossings share their over-strand.
    R2Remove { crossings: (usize, usize) },
    /// Push `over_arc` across `under_arc` through a face both border.
    /// `face` indexes [`Diagram::faces`]; `None` takes the first shared face.
    R2Add { over_arc: u32, under_arc: u32, face: Option<usize> },
    /// Slide across the triangular face with this index.
    R3 { face: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    /// R2 and R3 preserve regular isotopy; R1 does not.
    pub regular: bool,
    pub crossing_delta: i64,
    pub writhe_delta: i64,
}

fn not_found(msg: impl Into<String>) -> DiagramError {
    DiagramError::PatternNotFound(msg.into())
}

impl Diagram {
    pub fn apply_reidemeister(&self, mv: &RMove) -> Result<(Diagram, MoveRecord), DiagramError> {
        let out = match *mv {
            RMove::R1Remove { crossing } => self.r1_remove(crossing)?,
            RMove::R1Add {
                arc,
                sign,
                under_first,
            } => self.r1_add(arc, sign, under_first)?,
            RMove::R2Remove { crossings } => self.r2_remove(crossings.0, crossings.1)?,
            RMove::R2Add {
                over_arc,
                under_arc,
                face,
            } => self.r2_add(over_arc, under_arc, face)?,
            RMove::R3 { face } => self.r3(face)?,
        };
        let kind = match mv {
            RMove::R1Remove { .. } | RMove::R1Add { .. } => MoveKind::R1,
            RMove::R2Remove { .. } | RMove::R2Add { .. } => MoveKind::R2,
            RMove::R3 { .. } => MoveKind::R3,
        };
        let rec = MoveRecord {
            kind,
            regular: kind != MoveKind::R1,
            crossing_delta: out.crossing_count() as i64 - self.crossing_count() as i64,
            writhe_delta: out.writhe() - self.writhe(),
        };
        Ok((out, rec))
    }

    /// Deletes crossings, joining the arcs that ran straight through each.
    /// Circles left without crossings become free loops.
    pub(crate) fn remove_crossings(&self, dead: &[usize]) -> Diagram {
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        fn find(p: &mut BTreeMap<u32, u32>, a: u32) -> u32 {
            let mut r = a;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            let mut x = a;
            while x != r {
                let next = p[&x];
                p.insert(x, r);
                x = next;
            }
            r
        }
        for &i in dead {
            let pd = self.crossings[i].pd;
            for (s, t) in [(0, 2), (1, 3)] {
                let (a, b) = (find(&mut parent, pd[s]), find(&mut parent, pd[t]));
                if a != b {
                    parent.insert(a.max(b), a.min(b));
                }
            }
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !dead.contains(i))
            .map(|(_, c)| Crossing {
                pd: c.pd.map(|a| find(&mut parent, a)),
                sign: c.sign,
            })
            .collect();
        let mut survivors = std::collections::BTreeSet::new();
        for c in &crossings {
            survivors.extend(c.pd);
        }
        let mut dead_classes = std::collections::BTreeSet::new();
        for &i in dead {
            for a in self.crossings[i].pd {
                let r = find(&mut parent, a);
                if !survivors.contains(&r) {
                    dead_classes.insert(r);
                }
            }
        }
        Diagram::new_unchecked(crossings, self.free_loops + dead_classes.len())
    }

    /// Slots `s` with `pd[s] == pd[s+1]`, i.e. kinks.
    fn kink_slot(&self, c: usize) -> Option<usize> {
        let pd = self.crossings.get(c)?.pd;
        (0..4).find(|&s| pd[s] == pd[(s + 1) % 4])
    }

    fn r1_remove(&self, c: usize) -> Result<Diagram, DiagramError> {
        if c >= self.crossings.len() {
            return Err(not_found(format!("no crossing {c}")));
        }
        self.kink_slot(c)
            .ok_or_else(|| not_found(format!("crossing {c} is not a kink")))?;
        Ok(self.remove_crossings(&[c]))
    }

    fn r1_add(&self, arc: u32, sign: Sign, under_first: bool) -> Result<Diagram, DiagramError> {
        if sign != 1 && sign != -1 {
            return Err(not_found("kink sign must be ±1"));
        }
        let ends = self.arc_ends();
        let [_, head] = *ends
            .get(&arc)
            .ok_or_else(|| not_found(format!("no arc {arc}")))?;
        let m = self.max_label();
        let (l, x2) = (m + 1, m + 2);
        let mut crossings = self.crossings.clone();
        crossings[head.0].pd[head.1] = x2;
        let pd = match (sign > 0, under_first) {
            (true, true) => [arc, x2, l, l],
            (false, true) => [arc, l, l, x2],
            (true, false) => [l, l, x2, arc],
            (false, false) => [l, arc, x2, l],
        };
        crossings.push(Crossing { pd, sign });
        Diagram::new(crossings, self.free_loops)
    }

    fn r2_remove(&self, a: usize, b: usize) -> Result<Diagram, DiagramError> {
        let n = self.crossings.len();
        if a == b || a >= n || b >= n {
            return Err(not_found("R2 needs two distinct crossings"));
        }
        let other = self.other_end_table();
        for f in self.faces() {
            if f.len() != 2 {
                continue;
            }
            let cs = [f.darts[0].0, f.darts[1].0];
            if !(cs == [a, b] || cs == [b, a]) {
                continue;
            }
            // Both edges of the bigon must be over at both ends or under at both.
            let ok = f.darts.iter().all(|&d| {
                let e = other[&d];
                d.1 % 2 == e.1 % 2
            });
            if ok {
                return Ok(self.remove_crossings(&[a, b]));
            }
        }
        Err(not_found(format!("no R2 bigon between crossings {a} and {b}")))
    }

    fn r2_add(&self, x: u32, y: u32, face: Option<usize>) -> Result<Diagram, DiagramError> {
        if x == y {
            return Err(not_found("R2 needs two distinct arcs"));
        }
        let faces = self.faces();
        let dart_of = |f: usize, a: u32| {
            faces[f]
                .darts
                .iter()
                .copied()
                .find(|&(c, s)| self.crossings[c].pd[s] == a)
        };
        let fi = match face {
            Some(f) if f < faces.len() => f,
            Some(f) => return Err(not_found(format!("no face {f}"))),
            None => (0..faces.len())
                .find(|&f| dart_of(f, x).is_some() && dart_of(f, y).is_some())
                .ok_or_else(|| not_found(format!("arcs {x} and {y} share no face")))?,
        };
        let (dx, dy) = match (dart_of(fi, x), dart_of(fi, y)) {
            (Some(dx), Some(dy)) => (dx, dy),
            _ => return Err(not_found(format!("arcs {x} and {y} do not both border face {fi}"))),
        };
        let fx: Sign = if self.dart_is_forward(dx) { 1 } else { -1 };
        let fy: Sign = if self.dart_is_forward(dy) { 1 } else { -1 };
        let ends = self.arc_ends();
        let hx = ends[&x][1];
        let hy = ends[&y][1];
        let m = self.max_label();
        let (x2, x3, y2, y3) = (m + 1, m + 2, m + 3, m + 4);
        let mut crossings = self.crossings.clone();
        crossings[hx.0].pd[hx.1] = x3;
        crossings[hy.0].pd[hy.1] = y3;
        // Xa is the first of the new crossings along x.
        let (xa, xb) = if fx * fy == -1 {
            (
                Crossing::from_strands(y, y2, x, x2, -fy),
                Crossing::from_strands(y2, y3, x2, x3, fy),
            )
        } else {
            (
                Crossing::from_strands(y2, y3, x, x2, -fy),
                Crossing::from_strands(y, y2, x2, x3, fy),
            )
        };
        crossings.push(xa);
        crossings.push(xb);
        Diagram::new(crossings, self.free_loops)
    }

    fn r3(&self, fi: usize) -> Result<Diagram, DiagramError> {
        let faces = self.faces();
        let f = faces
            .get(fi)
            .ok_or_else(|| not_found(format!("no face {fi}")))?;
        if f.len() != 3 {
            return Err(not_found(format!("face {fi} is not a triangle")));
        }
        let tri: Vec<usize> = f.darts.iter().map(|d| d.0).collect();
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            return Err(not_found(format!("face {fi} is not a triangle")));
        }
        let ends = self.arc_ends();
        // Each triangle edge as (label, tail slot, head slot, over-count).
        struct Edge {
            tail: Slot,
            head: Slot,
            arcs: [u32; 3],
            level: usize,
        }
        let mut edges = Vec::new();
        for &(c, s) in &f.darts {
            let a = self.crossings[c].pd[s];
            let [tail, head] = ends[&a];
            let level = (tail.1 % 2) + (head.1 % 2);
            let a_in = self.crossings[tail.0].pd[(tail.1 + 2) % 4];
            let a_out = self.crossings[head.0].pd[(head.1 + 2) % 4];
            edges.push(Edge {
                tail,
                head,
                arcs: [a_in, a, a_out],
                level,
            });
        }
        let mut levels: Vec<usize> = edges.iter().map(|e| e.level).collect();
        levels.sort_unstable();
        if levels != [0, 1, 2] {
            return Err(not_found(format!(
                "face {fi} has no strand passing over both of its crossings and one passing under both"
            )));
        }
        let mut crossings = self.crossings.clone();
        for &c in &tri {
            let x = self.crossings[c];
            // Strand arcs at the new crossing: the edge and the arc on the far side.
            let at = |e: &Edge| -> (u32, u32) {
                if e.tail.0 == c {
                    (e.arcs[1], e.arcs[2])
                } else {
                    (e.arcs[0], e.arcs[1])
                }
            };
            let mut under = None;
            let mut over = None;
            for e in &edges {
                let slot = if e.tail.0 == c {
                    e.tail.1
                } else if e.head.0 == c {
                    e.head.1
                } else {
                    continue;
                };
                if slot % 2 == 0 {
                    under = Some(at(e));
                } else {
                    over = Some(at(e));
                }
            }
            let ((ui, uo), (oi, oo)) = match (under, over) {
                (Some(u), Some(o)) => (u, o),
                _ => return Err(not_found(format!("face {fi} is degenerate"))),
            };
            crossings[c] = Crossing::from_strands(ui, uo, oi, oo, x.sign);
        }
        Diagram::new(crossings, self.free_loops)
    }

    /// Sites where a simplifying move (R1 or R2 removal) or an R3 applies.
    pub fn move_sites(&self) -> Vec<RMove> {
        let mut out = Vec::new();
        for c in 0..self.crossings.len() {
            if self.kink_slot(c).is_some() {
                out.push(RMove::R1Remove { crossing: c });
            }
        }
        let other = self.other_end_table();
        for (i, f) in self.faces().iter().enumerate() {
            if f.len() == 2 && f.darts[0].0 != f.darts[1].0 {
                let ok = f.darts.iter().all(|&d| d.1 % 2 == other[&d].1 % 2);
                if ok {
                    let (a, b) = (f.darts[0].0, f.darts[1].0);
                    out.push(RMove::R2Remove {
                        crossings: (a.min(b), a.max(b)),
                    });
                }
            }
            if f.len() == 3 && self.r3(i).is_ok() {
                out.push(RMove::R3 { face: i });
            }
        }
        out.dedup();
        out
    }

    /// Greedily removes kinks and R2 bigons until none remain.
    pub fn simplify(&self) -> Diagram {
        self.simplify_with(true)
    }

    /// Greedy R2 removal only, which keeps the writhe and framing.
    pub fn simplify_regular(&self) -> Diagram {
        self.simplify_with(false)
    }

    fn simplify_with(&self, allow_r1: bool) -> Diagram {
        let mut d = self.clone();
        loop {
            let next = d.move_sites().into_iter().find(|m| match m {
                RMove::R1Remove { .. } => allow_r1,
                RMove::R2Remove { .. } => true,
                _ => false,
            });
            match next {
                Some(m) => d = d.apply_reidemeister(&m).expect("site was found").0,
                None => return d,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;

    fn is_planar(d: &Diagram) -> bool {
        let pieces = d.connected_pieces().len();
        d.faces().len() == d.crossing_count() + 2 * pieces
    }

    #[test]
    fn r1_add_and_remove() {
        let t = d(TREFOIL);
        for sign in [1, -1] {
            for under_first in [true, false] {
                let (k, rec) = t
                    .apply_reidemeister(&RMove::R1Add {
                        arc: 2,
                        sign,
                        under_first,
                    })
                    .unwrap();
                assert_eq!(rec.writhe_delta, sign as i64);
                assert!(!rec.regular);
                assert!(is_planar(&k));
                let (back, rec) = k
                    .apply_reidemeister(&RMove::R1Remove { crossing: 3 })
                    .unwrap();
                assert_eq!(rec.writhe_delta, -(sign as i64));
                assert_eq!(back.writhe(), t.writhe());
                assert_eq!(back.canonical_key(), t.canonical_key());
            }
        }
    }

    #[test]
    fn one_crossing_unknot_reduces_to_circle() {
        let k = pd_parse_ok("X[1,1,2,2]");
        assert_eq!(k.writhe(), 1);
        let (u, _) = k.apply_reidemeister(&RMove::R1Remove { crossing: 0 }).unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.free_loops(), 1);
    }

    fn pd_parse_ok(s: &str) -> Diagram {
        super::super::pd_parse(s).unwrap()
    }

    #[test]
    fn r2_add_then_remove() {
        let t = d(FIGURE8);
        let faces = t.faces();
        let mut tried = 0;
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                for j in 0..f.len() {
                    let x = t.crossings()[f.darts[i].0].pd[f.darts[i].1];
                    let y = t.crossings()[f.darts[j].0].pd[f.darts[j].1];
                    if x == y {
                        continue;
                    }
                    let (e, rec) = t
                        .apply_reidemeister(&RMove::R2Add {
                            over_arc: x,
                            under_arc: y,
                            face: Some(fi),
                        })
                        .unwrap();
                    tried += 1;
                    assert_eq!(rec.crossing_delta, 2);
                    assert_eq!(rec.writhe_delta, 0);
                    assert!(is_planar(&e), "R2 on face {fi} arcs {x},{y} broke planarity");
                    let (back, _) = e
                        .apply_reidemeister(&RMove::R2Remove { crossings: (4, 5) })
                        .unwrap();
                    assert_eq!(back.canonical_key(), t.canonical_key());
                }
            }
        }
        assert!(tried > 10);
    }

    #[test]
    fn r2_remove_rejects_alternating_bigon() {
        // The trefoil's bigons alternate over and under.
        let t = d(TREFOIL);
        assert!(t.apply_reidemeister(&RMove::R2Remove { crossings: (0, 1) }).is_err());
    }

    #[test]
    fn r3_preserves_writhe_and_planarity() {
        // Push arcs to make an R3-ready triangle, then slide.
        let t = d(TREFOIL);
        let mut found = 0;
        let mut frontier = vec![t.clone()];
        for (fi, f) in t.faces().iter().enumerate() {
            for &x in &f.darts {
                for &y in &f.darts {
                    let over = t.crossings()[x.0].pd[x.1];
                    let under = t.crossings()[y.0].pd[y.1];
                    if let Ok((e, _)) = t.apply_reidemeister(&RMove::R2Add {
                        over_arc: over,
                        under_arc: under,
                        face: Some(fi),
                    }) {
                        frontier.push(e);
                    }
                }
            }
        }
        for e in frontier {
            for m in e.move_sites() {
                if let RMove::R3 { .. } = m {
                    let (r, rec) = e.apply_reidemeister(&m).unwrap();
                    assert_eq!(rec.writhe_delta, 0);
                    assert!(rec.regular);
                    assert!(is_planar(&r));
                    assert_eq!(r.component_count(), e.component_count());
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn simplify_kinked_trefoil() {
        let (k, _) = d(TREFOIL)
            .apply_reidemeister(&RMove::R1Add {
                arc: 1,
                sign: -1,
                under_first: false,
            })
            .unwrap();
        assert_eq!(k.simplify().crossing_count(), 3);
    }
}
