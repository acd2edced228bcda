use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{braid_parse, BraidWord, PresentationError};
use crate::diagram::Diagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlatMode {
    /// Caps and cups side by side: `(1,2), (3,4), ...`.
    Plat,
    /// Caps concentrically nested, cups outside the cone nested.
    Standard,
}

/// A wedge of `2g` circles drawn as `M = 2g + m` caps above a braid on
/// `2M` strands, with the cone on the leftmost `4g` bottom points and `m`
/// cups to its right.
///
/// Loops of the wedge are numbered by their smaller cone leg and oriented
/// upward out of that leg. `curls[i]` is the signed number of blackboard
/// curls on loop `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatPresentation {
    genus: usize,
    extra: usize,
    braid: BraidWord,
    mode: PlatMode,
    curls: Vec<i32>,
}

/// File form of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlatRecord {
    pub g: usize,
    pub m: usize,
    pub braid: String,
    #[serde(default = "default_mode")]
    pub mode: PlatMode,
    #[serde(default)]
    pub curls: Vec<i32>,
}

fn default_mode() -> PlatMode {
    PlatMode::Plat
}

/// One crossing between two oriented pieces of the wedge.
#[derive(Clone, Copy, Debug)]
struct CoreCrossing {
    over: usize,
    under: usize,
    sign: i64,
}

fn find(p: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while p[r] != r {
        r = p[r];
    }
    p[a] = r;
    r
}

/// Word taking side-by-side caps on `2k` points starting at `start` to
/// nested ones. Each new cap's left leg is pulled leftward over the nest.
fn nesting_word(k: usize, start: usize) -> Vec<i32> {
    let mut w = Vec::new();
    for j in 1..k {
        for i in (1..=2 * j).rev() {
            w.push((start + i) as i32);
        }
    }
    w
}

fn nested_pairs(first: usize, count: usize) -> Vec<(usize, usize)> {
    (0..count).map(|i| (first + i, first + 2 * count - 1 - i)).collect()
}

fn adjacent_pairs(first: usize, count: usize) -> Vec<(usize, usize)> {
    (0..count).map(|i| (first + 2 * i, first + 2 * i + 1)).collect()
}

impl PlatPresentation {
    /// Validated plat-mode presentation. Curls default to zero.
    pub fn plat_wedge(g: usize, m: usize, braid: BraidWord) -> Result<PlatPresentation, PresentationError> {
        Self::with_mode(g, m, braid, PlatMode::Plat, Vec::new())
    }

    pub fn with_mode(
        g: usize,
        m: usize,
        braid: BraidWord,
        mode: PlatMode,
        curls: Vec<i32>,
    ) -> Result<PlatPresentation, PresentationError> {
        if g == 0 {
            return Err(PresentationError::Invalid("genus must be at least 1".into()));
        }
        let arcs = 2 * g + m;
        if braid.strands() != 2 * arcs {
            return Err(PresentationError::StrandMismatch {
                left: 2 * arcs,
                right: braid.strands(),
            });
        }
        let curls = if curls.is_empty() { vec![0; 2 * g] } else { curls };
        if curls.len() != 2 * g {
            return Err(PresentationError::Invalid(format!(
                "{} curl counts for {} loops",
                curls.len(),
                2 * g
            )));
        }
        let p = PlatPresentation {
            genus: g,
            extra: m,
            braid,
            mode,
            curls,
        };
        let comps = p.spine_components();
        if comps != 1 {
            return Err(PresentationError::ExtraComponents { components: comps });
        }
        Ok(p)
    }

    pub fn from_record(r: &PlatRecord) -> Result<PlatPresentation, PresentationError> {
        let braid = braid_parse(&r.braid, Some(2 * (2 * r.g + r.m)))?;
        Self::with_mode(r.g, r.m, braid, r.mode, r.curls.clone())
    }

    pub fn to_record(&self) -> PlatRecord {
        PlatRecord {
            g: self.genus,
            m: self.extra,
            braid: self.braid.to_string(),
            mode: self.mode,
            curls: self.curls.clone(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn extra_arcs(&self) -> usize {
        self.extra
    }

    /// Number of caps, `2g + m`.
    pub fn arcs(&self) -> usize {
        2 * self.genus + self.extra
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn mode(&self) -> PlatMode {
        self.mode
    }

    pub fn curls(&self) -> &[i32] {
        &self.curls
    }

    /// Same presentation with `n` more curls on loop `i`.
    pub fn add_curls(&self, i: usize, n: i32) -> PlatPresentation {
        let mut p = self.clone();
        p.curls[i] += n;
        p
    }

    fn cone_legs(&self) -> usize {
        4 * self.genus
    }

    /// Top caps as 0-based position pairs.
    fn caps(&self) -> Vec<(usize, usize)> {
        match self.mode {
            PlatMode::Plat => adjacent_pairs(0, self.arcs()),
            PlatMode::Standard => nested_pairs(0, self.arcs()),
        }
    }

    /// Bottom cups to the right of the cone, 0-based.
    fn cups(&self) -> Vec<(usize, usize)> {
        let first = self.cone_legs();
        match self.mode {
            PlatMode::Plat => adjacent_pairs(first, self.extra),
            PlatMode::Standard => nested_pairs(first, self.extra),
        }
    }

    /// Components of the closed 1-complex, counted by union-find over the
    /// top points, the bottom points and the cone vertex.
    pub fn spine_components(&self) -> usize {
        let n = self.braid.strands();
        let v = 2 * n;
        let mut p: Vec<usize> = (0..=v).collect();
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra.max(rb)] = ra.min(rb);
        };
        for (t, b) in self.braid.permutation().into_iter().enumerate() {
            union(&mut p, t, n + b);
        }
        for (a, b) in self.caps() {
            union(&mut p, a, b);
        }
        for (a, b) in self.cups() {
            union(&mut p, n + a, n + b);
        }
        for leg in 0..self.cone_legs() {
            union(&mut p, n + leg, v);
        }
        (0..=v).filter(|&i| find(&mut p, i) == i).count()
    }

    /// Rewrites a plat presentation into standard form by adding nesting
    /// words above and below the braid.
    pub fn standardize(&self) -> PlatPresentation {
        if self.mode == PlatMode::Standard {
            return self.clone();
        }
        let n = self.braid.strands();
        let top = BraidWord::new(n, nesting_word(self.arcs(), 0)).expect("in range");
        let bottom = BraidWord::new(n, nesting_word(self.extra, self.cone_legs())).expect("in range");
        let braid = top
            .inverse()
            .then(&self.braid)
            .and_then(|b| b.then(&bottom))
            .expect("same strand count");
        let p = PlatPresentation {
            braid,
            mode: PlatMode::Standard,
            ..self.clone()
        };
        debug_assert_eq!(p.spine_components(), 1);
        p
    }

    /// For each braid strand (indexed by top position): its loop and
    /// whether the loop runs down it. Also the loops' cone legs.
    fn trace_loops(&self) -> (Vec<(usize, bool)>, Vec<(usize, usize)>) {
        let n = self.braid.strands();
        let perm = self.braid.permutation();
        let mut ending_at = vec![0; n];
        for (t, &b) in perm.iter().enumerate() {
            ending_at[b] = t;
        }
        let mut cap_mate = vec![0; n];
        for (a, b) in self.caps() {
            cap_mate[a] = b;
            cap_mate[b] = a;
        }
        let mut cup_mate = vec![usize::MAX; n];
        for (a, b) in self.cups() {
            cup_mate[a] = b;
            cup_mate[b] = a;
        }
        let legs = self.cone_legs();
        let mut strand = vec![(usize::MAX, false); n];
        let mut loops = Vec::new();
        let mut used = vec![false; legs];
        for start in 0..legs {
            if used[start] {
                continue;
            }
            let id = loops.len();
            let mut bottom = start;
            let end = loop {
                let up = ending_at[bottom];
                strand[up] = (id, false);
                let down = cap_mate[up];
                strand[down] = (id, true);
                let b = perm[down];
                if b < legs {
                    break b;
                }
                bottom = cup_mate[b];
            };
            used[start] = true;
            used[end] = true;
            loops.push((start, end));
        }
        (strand, loops)
    }

    fn core_crossings(&self) -> (Vec<CoreCrossing>, Vec<(usize, usize)>) {
        let (strand, loops) = self.trace_loops();
        let mut cur: Vec<usize> = (0..self.braid.strands()).collect();
        let mut out = Vec::with_capacity(self.braid.len());
        for &l in self.braid.letters() {
            let p = l.unsigned_abs() as usize - 1;
            let (left, right) = (cur[p], cur[p + 1]);
            let e: i64 = if l > 0 { 1 } else { -1 };
            let (over, under) = if l > 0 { (right, left) } else { (left, right) };
            let same = strand[left].1 == strand[right].1;
            out.push(CoreCrossing {
                over: strand[over].0,
                under: strand[under].0,
                sign: if same { e } else { -e },
            });
            cur.swap(p, p + 1);
        }
        (out, loops)
    }

    /// Seifert matrix of the banded surface in the loop basis:
    /// `S[i][j] = lk(loop i, loop j pushed toward the viewer)`.
    pub fn seifert_matrix(&self) -> Vec<Vec<i64>> {
        let (crossings, loops) = self.core_crossings();
        let n = loops.len();
        let mut s = vec![vec![0i64; n]; n];
        for c in &crossings {
            s[c.under][c.over] += c.sign;
        }
        for i in 0..n {
            s[i][i] += self.curls[i] as i64;
            for j in 0..n {
                let ((ai, bi), (aj, bj)) = (loops[i], loops[j]);
                let (ai, bi) = (ai.min(bi), ai.max(bi));
                let (aj, bj) = (aj.min(bj), aj.max(bj));
                // the two arcs inside the cone disk cross once
                if ai < aj && aj < bi && bi < bj {
                    s[i][j] += 1;
                } else if aj < ai && ai < bj && bj < bi {
                    s[i][j] -= 1;
                }
            }
        }
        s
    }

    /// Boundary of the banded surface as a blackboard diagram.
    pub fn spine_boundary_knot(&self) -> Result<Diagram, PresentationError> {
        if self.mode != PlatMode::Standard {
            return Err(PresentationError::NotStandardized);
        }
        let (_, loops) = self.trace_loops();
        let n = self.braid.strands();
        let mut m = Morse::default();
        let mut state = vec![0u32; 2 * n];
        for (p, q) in self.caps() {
            for (a, b) in [(2 * p, 2 * q + 1), (2 * p + 1, 2 * q)] {
                let l = m.fresh();
                state[a] = l;
                state[b] = l;
            }
        }
        m.state = state;
        for &l in self.braid.letters() {
            let j = 2 * (l.unsigned_abs() as usize);
            let e = l.signum();
            for k in [j - 1, j - 2, j, j - 1] {
                m.cross(k, e);
            }
        }
        // curls sit at the bottom of each loop's first leg
        let mut sites: Vec<(usize, i32)> = loops
            .iter()
            .zip(&self.curls)
            .filter(|(_, &c)| c != 0)
            .map(|(&(a, _), &c)| (a, c))
            .collect();
        sites.sort_by(|x, y| y.0.cmp(&x.0));
        for (leg, c) in sites {
            for _ in 0..c.unsigned_abs() {
                m.doubled_kink(2 * leg, c.signum());
            }
        }
        let legs = self.cone_legs();
        let mut cups: Vec<(usize, usize)> = (0..2 * legs - 2)
            .step_by(2)
            .map(|i| (i + 1, i + 2))
            .collect();
        cups.push((0, 2 * legs - 1));
        for (p, q) in self.cups() {
            cups.push((2 * p, 2 * q + 1));
            cups.push((2 * p + 1, 2 * q));
        }
        let d = m.finish(&cups)?;
        let comps = d.component_count();
        if comps != 1 {
            return Err(PresentationError::DisconnectedBoundary { components: comps });
        }
        Ok(d)
    }
}

/// Builds an unoriented diagram from top to bottom, one row of points at a
/// time. Labels that meet at a cup are merged at the end.
#[derive(Default)]
struct Morse {
    state: Vec<u32>,
    next: u32,
    pd: Vec<[u32; 4]>,
    merge: Vec<(u32, u32)>,
}

impl Morse {
    fn fresh(&mut self) -> u32 {
        self.next += 1;
        self.next
    }

    /// Crossing of the points at `i` and `i + 1`; `e > 0` puts the right
    /// strand over.
    fn cross(&mut self, i: usize, e: i32) {
        let (l, r) = (self.state[i], self.state[i + 1]);
        let (l2, r2) = (self.fresh(), self.fresh());
        // l continues to l2 at i + 1, r continues to r2 at i
        self.pd.push(if e > 0 { [l, r2, l2, r] } else { [r, l, r2, l2] });
        self.state[i] = r2;
        self.state[i + 1] = l2;
    }

    /// A curl on the band occupying points `i` and `i + 1`.
    fn doubled_kink(&mut self, i: usize, e: i32) {
        let (a, b) = (self.fresh(), self.fresh());
        let tail = self.state.split_off(i + 2);
        self.state.extend([a, b, b, a]);
        self.state.extend(tail);
        for k in [i + 1, i, i + 2, i + 1] {
            self.cross(k, e);
        }
        let (x, y, z, w) = (
            self.state[i + 2],
            self.state[i + 3],
            self.state[i + 4],
            self.state[i + 5],
        );
        self.merge.push((x, w));
        self.merge.push((y, z));
        self.state.drain(i + 2..i + 6);
    }

    fn finish(mut self, cups: &[(usize, usize)]) -> Result<Diagram, PresentationError> {
        for &(a, b) in cups {
            self.merge.push((self.state[a], self.state[b]));
        }
        let mut parent: Vec<usize> = (0..=self.next as usize).collect();
        for &(a, b) in &self.merge {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut root = |a: u32| find(&mut parent, a as usize) as u32;
        let pd: Vec<[u32; 4]> = self.pd.iter().map(|x| x.map(&mut root)).collect();
        let mut used: BTreeMap<u32, ()> = BTreeMap::new();
        for x in &pd {
            for &a in x {
                used.insert(a, ());
            }
        }
        let mut loops = std::collections::BTreeSet::new();
        for l in 1..=self.next {
            let r = root(l);
            if !used.contains_key(&r) {
                loops.insert(r);
            }
        }
        Diagram::from_unoriented_pd(&pd, loops.len())
            .map(|d| d.compact_labels())
            .map_err(|e| PresentationError::Invalid(e.to_string()))
    }
}
