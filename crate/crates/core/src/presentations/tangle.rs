use std::collections::BTreeMap;

use super::{BraidWord, PresentationError};
use crate::diagram::{Crossing, Diagram, DiagramError};

/// An n-strand tangle with every strand running downward from a top
/// endpoint to a bottom endpoint.
///
/// `top[i]` is the arc leaving top endpoint `i` and `bottom[i]` the arc
/// arriving at bottom endpoint `i`, both counted left to right. A strand
/// without crossings has `top[i] == bottom[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    top: Vec<u32>,
    bottom: Vec<u32>,
}

/// Two copies of each arc label: left and right of the arc's direction.
pub(crate) fn left_copy(a: u32) -> u32 {
    2 * a - 1
}

pub(crate) fn right_copy(a: u32) -> u32 {
    2 * a
}

/// Replaces one crossing by the 2×2 grid of its blackboard parallel.
///
/// Arc `a` becomes `left_copy(a)` and `right_copy(a)`; the four arcs inside
/// the grid are taken from `fresh`.
pub(crate) fn double_crossing(c: &Crossing, fresh: &mut impl FnMut() -> u32) -> [Crossing; 4] {
    let (ui, uo, oi, oo) = c.strands();
    let s = c.sign;
    // Columns: under-strand copies, west then east. Facing along the
    // under-strand, west is on the left.
    let cols = [
        (left_copy(ui), fresh(), left_copy(uo)),
        (right_copy(ui), fresh(), right_copy(uo)),
    ];
    // Rows: over-strand copies, south then north. The over-strand runs east
    // at a positive crossing, so its left copy is the north row there.
    let (south, north) = if s > 0 {
        (right_copy as fn(u32) -> u32, left_copy as fn(u32) -> u32)
    } else {
        (left_copy as fn(u32) -> u32, right_copy as fn(u32) -> u32)
    };
    let rows = [(south(oi), fresh(), south(oo)), (north(oi), fresh(), north(oo))];
    let mut out = [*c; 4];
    let mut k = 0;
    for (r, row) in rows.iter().enumerate() {
        for (ci, col) in cols.iter().enumerate() {
            let (u_in, u_out) = if r == 0 { (col.0, col.1) } else { (col.1, col.2) };
            // Positive: the over-strand meets the west column first.
            let first_col = if s > 0 { 0 } else { 1 };
            let (o_in, o_out) = if ci == first_col {
                (row.0, row.1)
            } else {
                (row.1, row.2)
            };
            out[k] = Crossing::from_strands(u_in, u_out, o_in, o_out, s);
            k += 1;
        }
    }
    out
}

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

fn union(p: &mut BTreeMap<u32, u32>, a: u32, b: u32) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p.insert(ra.max(rb), ra.min(rb));
    }
}

/// Arcs of a diagram to cut open, listed left to right across a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSite {
    pub arcs: Vec<u32>,
    /// Whether each arc's orientation runs downward through the box.
    pub downward: Vec<bool>,
}

impl BoxSite {
    /// A two-strand box across face `face`, between the two given arcs on
    /// its boundary. `left` is placed on the left.
    pub fn across_face(d: &Diagram, face: usize, left: u32, right: u32) -> Result<BoxSite, PresentationError> {
        let faces = d.faces();
        let f = faces
            .get(face)
            .ok_or_else(|| PresentationError::InterfaceMismatch(format!("no face {face}")))?;
        let dart = |a: u32| {
            f.darts
                .iter()
                .copied()
                .find(|&(c, s)| d.crossings()[c].pd[s] == a)
                .ok_or_else(|| {
                    PresentationError::InterfaceMismatch(format!("arc {a} does not border face {face}"))
                })
        };
        let (dl, dr) = (dart(left)?, dart(right)?);
        // The face lies east of the left arc and west of the right arc.
        Ok(BoxSite {
            arcs: vec![left, right],
            downward: vec![!d.dart_is_forward(dl), d.dart_is_forward(dr)],
        })
    }
}

impl Tangle {
    /// The trivial tangle on `n` strands.
    pub fn identity(n: usize) -> Tangle {
        let labels: Vec<u32> = (1..=n as u32).collect();
        Tangle {
            crossings: Vec::new(),
            top: labels.clone(),
            bottom: labels,
        }
    }

    pub fn from_braid(b: &BraidWord) -> Tangle {
        let n = b.strands();
        let top: Vec<u32> = (1..=n as u32).collect();
        let mut cur = top.clone();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(b.len());
        for &l in b.letters() {
            let p = l.unsigned_abs() as usize - 1;
            let (left, right) = (cur[p], cur[p + 1]);
            let (left_out, right_out) = (next, next + 1);
            next += 2;
            let c = if l > 0 {
                Crossing::from_strands(left, left_out, right, right_out, 1)
            } else {
                Crossing::from_strands(right, right_out, left, left_out, -1)
            };
            crossings.push(c);
            cur[p] = right_out;
            cur[p + 1] = left_out;
        }
        Tangle {
            crossings,
            top,
            bottom: cur,
        }
    }

    pub fn strands(&self) -> usize {
        self.top.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn max_label(&self) -> u32 {
        self.crossings
            .iter()
            .flat_map(|c| c.pd)
            .chain(self.top.iter().copied())
            .chain(self.bottom.iter().copied())
            .max()
            .unwrap_or(0)
    }

    fn map_labels(&self, f: &mut impl FnMut(u32) -> u32) -> Tangle {
        Tangle {
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing {
                    pd: c.pd.map(&mut *f),
                    sign: c.sign,
                })
                .collect(),
            top: self.top.iter().map(|&a| f(a)).collect(),
            bottom: self.bottom.iter().map(|&a| f(a)).collect(),
        }
    }

    /// Bottom endpoint reached from each top endpoint.
    pub fn permutation(&self) -> Vec<usize> {
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.slot_is_incoming(s) {
                    head.insert(c.pd[s], (i, s));
                }
            }
        }
        let bottom_pos: BTreeMap<u32, usize> =
            self.bottom.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        self.top
            .iter()
            .map(|&start| {
                let mut a = start;
                loop {
                    if let Some(&j) = bottom_pos.get(&a) {
                        return j;
                    }
                    let (c, s) = head[&a];
                    a = self.crossings[c].pd[(s + 2) % 4];
                }
            })
            .collect()
    }

    /// `self` stacked on top of `below`.
    pub fn compose(&self, below: &Tangle) -> Result<Tangle, PresentationError> {
        if self.strands() != below.strands() {
            return Err(PresentationError::StrandMismatch {
                left: self.strands(),
                right: below.strands(),
            });
        }
        let off = self.max_label();
        let joins: BTreeMap<u32, u32> = below
            .top
            .iter()
            .zip(&self.bottom)
            .map(|(&t, &b)| (t, b))
            .collect();
        let lower = below.map_labels(&mut |a| joins.get(&a).copied().unwrap_or(a + off));
        let mut crossings = self.crossings.clone();
        crossings.extend(lower.crossings);
        Ok(Tangle {
            crossings,
            top: self.top.clone(),
            bottom: lower.bottom,
        })
    }

    /// Reflection in a horizontal line of the page: the word read backwards
    /// with every letter inverted.
    pub fn mirror(&self) -> Tangle {
        Tangle {
            crossings: self
                .crossings
                .iter()
                .map(|c| {
                    let (ui, uo, oi, oo) = c.strands();
                    Crossing::from_strands(uo, ui, oo, oi, -c.sign)
                })
                .collect(),
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// `self` followed by its mirror image.
    pub fn double_delta(&self) -> Tangle {
        self.compose(&self.mirror()).expect("same strand count")
    }

    /// Blackboard parallel: every strand replaced by two copies, every
    /// crossing by a 2×2 block of the same sign.
    pub fn parallel_double(&self) -> Tangle {
        let mut next = 2 * self.max_label();
        let mut fresh = || {
            next += 1;
            next
        };
        let mut crossings = Vec::with_capacity(4 * self.crossings.len());
        for c in &self.crossings {
            crossings.extend(double_crossing(c, &mut fresh));
        }
        // Facing down a strand, its left copy lies to the east.
        let pair = |v: &[u32]| -> Vec<u32> {
            v.iter().flat_map(|&a| [right_copy(a), left_copy(a)]).collect()
        };
        Tangle {
            crossings,
            top: pair(&self.top),
            bottom: pair(&self.bottom),
        }
    }

    /// Braid-style closure: bottom endpoint `i` joins top endpoint `i`.
    pub fn closure(&self) -> Diagram {
        let mut parent = BTreeMap::new();
        for (&t, &b) in self.top.iter().zip(&self.bottom) {
            union(&mut parent, t, b);
        }
        let crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing {
                pd: c.pd.map(|a| find(&mut parent, a)),
                sign: c.sign,
            })
            .collect();
        let mut used = std::collections::BTreeSet::new();
        for c in &crossings {
            used.extend(c.pd);
        }
        let mut loops = std::collections::BTreeSet::new();
        for &t in &self.top {
            let r = find(&mut parent, t);
            if !used.contains(&r) {
                loops.insert(r);
            }
        }
        Diagram::new(crossings, loops.len()).expect("closure of a downward tangle is oriented")
    }

    /// Relabeling-invariant description walking strands from the left.
    pub fn canonical_key(&self) -> Vec<i64> {
        let mut head: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.slot_is_incoming(s) {
                    head.insert(c.pd[s], (i, s));
                }
            }
        }
        let mut labels: BTreeMap<u32, i64> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.crossings.len()];
        let bottoms: std::collections::BTreeSet<u32> = self.bottom.iter().copied().collect();
        for &start in &self.top {
            let mut a = start;
            loop {
                let n = labels.len() as i64;
                labels.entry(a).or_insert(n);
                if bottoms.contains(&a) {
                    break;
                }
                let (c, s) = head[&a];
                if !seen[c] {
                    seen[c] = true;
                    order.push(c);
                }
                a = self.crossings[c].pd[(s + 2) % 4];
            }
        }
        let mut key = Vec::new();
        key.push(self.strands() as i64);
        for &c in &order {
            let x = self.crossings[c];
            key.push(x.sign as i64);
            key.extend(x.pd.iter().map(|a| labels[a]));
        }
        key.extend(self.bottom.iter().map(|a| labels[a]));
        key
    }

    /// Splices this tangle into `d` in place of the trivial tangle formed by
    /// the arcs of `site`.
    pub fn substitute_into(&self, d: &Diagram, site: &BoxSite) -> Result<Diagram, PresentationError> {
        let n = self.strands();
        let mismatch = |m: String| PresentationError::InterfaceMismatch(m);
        if site.arcs.len() != n || site.downward.len() != n {
            return Err(mismatch(format!(
                "box has {} arcs but the tangle has {n} strands",
                site.arcs.len()
            )));
        }
        let ends = d.arc_ends();
        for (i, a) in site.arcs.iter().enumerate() {
            if !ends.contains_key(a) {
                return Err(mismatch(format!("arc {a} is not in the diagram")));
            }
            if site.arcs[..i].contains(a) {
                return Err(mismatch(format!("arc {a} listed twice")));
            }
        }
        // Consecutive box arcs must face each other across one face.
        let faces = d.faces();
        for i in 0..n.saturating_sub(1) {
            let (l, r) = (site.arcs[i], site.arcs[i + 1]);
            let ok = faces.iter().any(|f| {
                let dart = |a: u32| {
                    f.darts
                        .iter()
                        .copied()
                        .find(|&(c, s)| d.crossings()[c].pd[s] == a)
                };
                match (dart(l), dart(r)) {
                    (Some(dl), Some(dr)) => {
                        d.dart_is_forward(dl) != site.downward[i]
                            && d.dart_is_forward(dr) == site.downward[i + 1]
                    }
                    _ => false,
                }
            });
            if !ok {
                return Err(mismatch(format!("arcs {l} and {r} are not adjacent across a face")));
            }
        }
        let mut next = d.max_label().max(self.max_label());
        let off = next;
        next += self.max_label();
        let mut pd: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.pd).collect();
        let mut above = Vec::with_capacity(n);
        let mut below = Vec::with_capacity(n);
        for (i, &a) in site.arcs.iter().enumerate() {
            next += 1;
            let head = ends[&a][1];
            pd[head.0][head.1] = next;
            if site.downward[i] {
                above.push(a);
                below.push(next);
            } else {
                above.push(next);
                below.push(a);
            }
        }
        let mut parent = BTreeMap::new();
        for i in 0..n {
            union(&mut parent, self.top[i] + off, above[i]);
            union(&mut parent, self.bottom[i] + off, below[i]);
        }
        pd.extend(self.crossings.iter().map(|c| c.pd.map(|a| a + off)));
        let pd: Vec<[u32; 4]> = pd
            .into_iter()
            .map(|x| x.map(|a| find(&mut parent, a)))
            .collect();
        let mut used = std::collections::BTreeSet::new();
        for x in &pd {
            used.extend(x.iter().copied());
        }
        let mut loops = std::collections::BTreeSet::new();
        for &a in above.iter().chain(&below) {
            let r = find(&mut parent, a);
            if !used.contains(&r) {
                loops.insert(r);
            }
        }
        Diagram::from_unoriented_pd(&pd, d.free_loops() + loops.len())
            .map_err(|e: DiagramError| mismatch(e.to_string()))
    }
}
