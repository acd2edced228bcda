//! Skein-theoretic invariants: Kauffman bracket and Jones polynomial,
//! two-variable Kauffman polynomial, Conway polynomial.
//!
//! Bracket values are stored as polynomials in `t^{1/4}` with `A = t^{-1/4}`,
//! so `A^k` sits at quarter-exponent `-k`.

mod bracket;
mod conway;
mod kauffman;
mod memo;
mod relation;

use thiserror::Error;

pub use bracket::{bracket, bracket_state_sum, jones, jones_memoized, jones_state_sum};
pub use conway::{alexander_from_conway, conway, conway_with};
pub use kauffman::{kauffman_f, kauffman_f_with, kauffman_lambda};
pub use memo::{MemoStats, SkeinMemo};
pub use relation::{jones_skein_holds, skein_triple, verify_jones_skein, SkeinTriple};

#[cfg(test)]
pub(crate) use bracket::tests as tests_support;

use crate::diagram::{Crossing, Diagram};
use crate::poly::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("{crossings} crossings exceed the state-sum cap of {cap}")]
    TooLarge { crossings: usize, cap: usize },
    #[error("{crossings} crossings exceed the resource cap of {cap}")]
    ResourceLimit { crossings: usize, cap: usize },
    #[error("no crossing {0}")]
    BadSite(usize),
}

/// Limits shared by the skein engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeinConfig {
    /// Largest diagram the brute-force state sum accepts.
    pub state_sum_cap: usize,
    /// Largest diagram the memoized engines accept.
    pub max_crossings: usize,
    /// Entries kept per memo table; later results are computed but not stored.
    pub memo_entries: usize,
}

impl Default for SkeinConfig {
    fn default() -> Self {
        SkeinConfig {
            state_sum_cap: 26,
            max_crossings: 64,
            memo_entries: 1 << 20,
        }
    }
}

/// `A^k` in the quarter-exponent encoding.
pub(crate) fn a_pow(k: i64) -> LaurentPoly {
    LaurentPoly::t_quarters(-k)
}

/// `-A^2 - A^{-2}`.
pub(crate) fn loop_value() -> LaurentPoly {
    -(a_pow(2) + a_pow(-2))
}

fn find(p: &mut [u32], a: u32) -> u32 {
    let mut r = a;
    while p[r as usize] != r {
        r = p[r as usize];
    }
    p[a as usize] = r;
    r
}

/// Removes crossing `i`, joining its slots in the two given pairs.
///
/// With `keep_orientation` the pairs must join an incoming slot to an
/// outgoing one and the result keeps every orientation; otherwise the
/// result is re-oriented from scratch.
pub(crate) fn smooth(d: &Diagram, i: usize, pairs: [(usize, usize); 2], keep_orientation: bool) -> Diagram {
    let x = d.crossings()[i];
    let mut p: Vec<u32> = (0..=d.max_label()).collect();
    for (s, t) in pairs {
        let (a, b) = (find(&mut p, x.pd[s]), find(&mut p, x.pd[t]));
        p[a.max(b) as usize] = a.min(b);
    }
    let rest: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, c)| Crossing {
            pd: c.pd.map(|a| find(&mut p, a)),
            sign: c.sign,
        })
        .collect();
    let mut used = std::collections::BTreeSet::new();
    for c in &rest {
        used.extend(c.pd);
    }
    let mut loops = std::collections::BTreeSet::new();
    for a in x.pd {
        let r = find(&mut p, a);
        if !used.contains(&r) {
            loops.insert(r);
        }
    }
    let free = d.free_loops() + loops.len();
    if keep_orientation {
        Diagram::new(rest, free).expect("oriented smoothing keeps orientations")
    } else {
        let pd: Vec<[u32; 4]> = rest.iter().map(|c| c.pd).collect();
        Diagram::from_unoriented_pd(&pd, free).expect("smoothing of a planar diagram")
    }
}

/// Slot pairs of the orientation-respecting smoothing of a crossing.
pub(crate) fn oriented_pairs(c: &Crossing) -> [(usize, usize); 2] {
    if c.sign > 0 {
        [(0, 1), (2, 3)]
    } else {
        [(0, 3), (1, 2)]
    }
}

/// Slot pairs of the other smoothing.
pub(crate) fn unoriented_pairs(c: &Crossing) -> [(usize, usize); 2] {
    if c.sign > 0 {
        [(0, 3), (1, 2)]
    } else {
        [(0, 1), (2, 3)]
    }
}

/// First crossing met as an under-crossing when each component is walked
/// from its smallest arc, components taken in order. `None` means the
/// diagram is descending.
pub(crate) fn first_ascending(d: &Diagram) -> Option<usize> {
    let ends = d.arc_ends();
    let mut seen = vec![false; d.crossing_count()];
    for comp in d.arc_components() {
        for a in comp {
            let (c, s) = ends[&a][1];
            if !seen[c] {
                if s % 2 == 0 {
                    return Some(c);
                }
                seen[c] = true;
            }
        }
    }
    None
}

/// `d` with crossing `i` switched.
pub(crate) fn switch_at(d: &Diagram, i: usize) -> Diagram {
    let mut cs = d.crossings().to_vec();
    cs[i] = cs[i].switched();
    Diagram::new(cs, d.free_loops()).expect("switching keeps orientations")
}
