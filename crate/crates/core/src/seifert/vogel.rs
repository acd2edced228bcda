//! Seifert circles and Vogel's braiding algorithm.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::SeifertError;
use crate::diagram::{Diagram, RMove};
use crate::presentations::BraidWord;
use crate::skein::oriented_pairs;

/// Seifert circles as lists of arcs in traversal order, plus the circle
/// index of every arc. Each free loop is an extra circle with no arcs.
pub(crate) fn circles_with_index(d: &Diagram) -> (Vec<Vec<u32>>, BTreeMap<u32, usize>) {
    let ends = d.arc_ends();
    let next = |a: u32| {
        let (c, s) = ends[&a][1];
        let x = d.crossings()[c];
        let t = oriented_pairs(&x)
            .iter()
            .find_map(|&(p, q)| {
                if p == s {
                    Some(q)
                } else if q == s {
                    Some(p)
                } else {
                    None
                }
            })
            .expect("every slot is paired");
        x.pd[t]
    };
    let mut index = BTreeMap::new();
    let mut circles = Vec::new();
    for &a in ends.keys() {
        if index.contains_key(&a) {
            continue;
        }
        let mut circle = Vec::new();
        let mut x = a;
        while !index.contains_key(&x) {
            index.insert(x, circles.len());
            circle.push(x);
            x = next(x);
        }
        circles.push(circle);
    }
    circles.extend((0..d.free_loops()).map(|_| Vec::new()));
    (circles, index)
}

/// The circles of the oriented smoothing.
pub fn seifert_circles(d: &Diagram) -> Vec<Vec<u32>> {
    circles_with_index(d).0
}

/// Genus `(c - s + 1) / 2` of the surface built by Seifert's algorithm.
pub fn seifert_surface_genus(d: &Diagram) -> Result<usize, SeifertError> {
    let comps = d.component_count();
    if comps != 1 {
        return Err(SeifertError::MultiComponent(comps));
    }
    let s = seifert_circles(d).len();
    Ok((d.crossing_count() + 1 - s) / 2)
}

/// Face structure needed by the braiding: for every arc the faces on its
/// right and left, and for every face its darts as `(arc, forward)`.
struct FaceData {
    darts: Vec<Vec<(u32, bool)>>,
    right: BTreeMap<u32, usize>,
    left: BTreeMap<u32, usize>,
    region: Vec<usize>,
}

fn face_data(d: &Diagram) -> FaceData {
    let faces = d.faces();
    let mut corner = BTreeMap::new();
    let mut darts = Vec::with_capacity(faces.len());
    let (mut right, mut left) = (BTreeMap::new(), BTreeMap::new());
    for (fi, f) in faces.iter().enumerate() {
        let mut ds = Vec::with_capacity(f.len());
        for &dart in &f.darts {
            corner.insert(dart, fi);
            let a = d.crossings()[dart.0].pd[dart.1];
            let fwd = d.dart_is_forward(dart);
            if fwd {
                right.insert(a, fi);
            } else {
                left.insert(a, fi);
            }
            ds.push((a, fwd));
        }
        darts.push(ds);
    }
    // faces meeting across the gap of each smoothed crossing share a region
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, c) in d.crossings().iter().enumerate() {
        let (s, t) = if c.sign > 0 { (0, 2) } else { (1, 3) };
        let (a, b) = (root(&mut parent, corner[&(i, s)]), root(&mut parent, corner[&(i, t)]));
        parent[a.max(b)] = a.min(b);
    }
    let region = (0..faces.len()).map(|f| root(&mut parent, f)).collect();
    FaceData {
        darts,
        right,
        left,
        region,
    }
}

/// A face with darts of two different circles running the same way around
/// it, as `(face, arc, arc)`.
fn find_defect(fd: &FaceData, circle: &BTreeMap<u32, usize>) -> Option<(usize, u32, u32)> {
    for (fi, ds) in fd.darts.iter().enumerate() {
        for (i, &(a, fa)) in ds.iter().enumerate() {
            for &(b, fb) in &ds[i + 1..] {
                if fa == fb && circle[&a] != circle[&b] {
                    return Some((fi, a, b));
                }
            }
        }
    }
    None
}

/// Applies Vogel moves until the Seifert circles are coherently nested.
pub fn braided_form(d: &Diagram) -> Result<Diagram, SeifertError> {
    let mut cur = d.clone();
    let limit = 4 * (d.crossing_count() + 2).pow(2);
    for _ in 0..limit {
        if cur.crossing_count() == 0 {
            return Ok(cur);
        }
        let (_, circle) = circles_with_index(&cur);
        let fd = face_data(&cur);
        match find_defect(&fd, &circle) {
            None => return Ok(cur),
            Some((fi, a, b)) => {
                let mv = RMove::R2Add {
                    over_arc: a,
                    under_arc: b,
                    face: Some(fi),
                };
                cur = cur
                    .apply_reidemeister(&mv)
                    .map_err(|e| SeifertError::Braiding(e.to_string()))?
                    .0;
            }
        }
    }
    Err(SeifertError::Braiding(format!("no braided form after {limit} moves")))
}

/// A braid whose closure is isotopic to `d`, read off the braided form.
pub fn braid_from_diagram(d: &Diagram) -> Result<BraidWord, SeifertError> {
    let comps = d.component_count();
    if (d.free_loops() > 0 && d.crossing_count() > 0) || d.connected_pieces().len() > 1 {
        return Err(SeifertError::Braiding("split diagram".into()));
    }
    if d.crossing_count() == 0 {
        return Ok(BraidWord::identity(comps.max(1)));
    }
    let b = braided_form(d)?;
    let (circles, circle) = circles_with_index(&b);
    let fd = face_data(&b);
    let bad = |m: &str| SeifertError::Braiding(m.to_string());
    let n = circles.len();
    let right: Vec<usize> = circles.iter().map(|c| fd.region[fd.right[&c[0]]]).collect();
    let left: Vec<usize> = circles.iter().map(|c| fd.region[fd.left[&c[0]]]).collect();
    // outermost region: on the right of exactly one circle and the left of none
    let outer = right
        .iter()
        .copied()
        .find(|&r| right.iter().filter(|&&x| x == r).count() == 1 && !left.contains(&r))
        .ok_or_else(|| bad("no outer region"))?;
    let mut order = Vec::with_capacity(n);
    let mut reg = outer;
    for _ in 0..n {
        let c = (0..n)
            .find(|&c| right[c] == reg)
            .ok_or_else(|| bad("circles are not nested"))?;
        order.push(c);
        reg = left[c];
    }
    let mut level = vec![0usize; n];
    for (i, &c) in order.iter().enumerate() {
        level[c] = i;
    }
    // a ray from the outer region inwards, crossing each circle once
    let mut start = vec![0u32; n];
    let mut arc = circles[order[0]][0];
    start[0] = arc;
    for i in 1..n {
        let face = fd.left[&arc];
        arc = fd.darts[face]
            .iter()
            .find(|&&(a, _)| circle[&a] == order[i])
            .ok_or_else(|| bad("ray blocked"))?
            .0;
        start[i] = arc;
    }
    let ends = b.arc_ends();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); b.crossing_count()];
    let mut indeg = vec![0usize; b.crossing_count()];
    for i in 0..n {
        let arcs = &circles[order[i]];
        let pos = arcs.iter().position(|&a| a == start[i]).expect("start on circle");
        let seq: Vec<usize> = (0..arcs.len())
            .map(|k| ends[&arcs[(pos + k) % arcs.len()]][1].0)
            .collect();
        for w in seq.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..b.crossing_count())
        .filter(|&c| indeg[c] == 0)
        .map(Reverse)
        .collect();
    let mut letters = Vec::with_capacity(b.crossing_count());
    while let Some(Reverse(c)) = heap.pop() {
        let x = b.crossings()[c];
        let (l1, l2) = (level[circle[&x.pd[0]]], level[circle[&x.pd[2]]]);
        if l1.abs_diff(l2) != 1 {
            return Err(bad("crossing between non-adjacent circles"));
        }
        let col = l1.min(l2) as i32 + 1;
        letters.push(if x.sign > 0 { col } else { -col });
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse(s));
            }
        }
    }
    if letters.len() != b.crossing_count() {
        return Err(bad("inconsistent crossing order"));
    }
    BraidWord::new(n, letters).map_err(|e| SeifertError::Braiding(e.to_string()))
}
