use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{a_pow, find, loop_value, SkeinConfig, SkeinError, SkeinMemo};
use crate::diagram::{Crossing, Diagram};
use crate::poly::{GaussInt, LaurentPoly};

/// `(-A)^k`.
fn minus_a_pow(k: i64) -> LaurentPoly {
    let p = a_pow(k);
    if k % 2 == 0 {
        p
    } else {
        -p
    }
}

fn to_jones(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    bracket * &minus_a_pow(-3 * writhe)
}

/// Brute-force sum over all `2^n` smoothings.
pub fn bracket_state_sum(d: &Diagram, cfg: &SkeinConfig) -> Result<LaurentPoly, SkeinError> {
    let n = d.crossing_count();
    if n > cfg.state_sum_cap {
        return Err(SkeinError::TooLarge {
            crossings: n,
            cap: cfg.state_sum_cap,
        });
    }
    if n == 0 {
        return Ok(loop_value().pow(d.free_loops().saturating_sub(1) as u32));
    }
    let labels = d.arcs();
    let size = d.max_label() as usize + 1;
    // (number of A-smoothings, circle count) -> number of states
    let mut tally: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    let mut parent: Vec<u32> = vec![0; size];
    for state in 0u64..(1u64 << n) {
        for &l in &labels {
            parent[l as usize] = l;
        }
        let mut a_count = 0;
        for (i, c) in d.crossings().iter().enumerate() {
            let [a, b, cc, dd] = c.pd;
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                [(a, b), (cc, dd)]
            } else {
                [(a, dd), (b, cc)]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry) as usize] = rx.min(ry);
                }
            }
        }
        let circles = labels
            .iter()
            .filter(|&&l| find(&mut parent, l) == l)
            .count()
            + d.free_loops();
        *tally.entry((a_count, circles)).or_default() += 1;
    }
    let delta = loop_value();
    let mut out = LaurentPoly::zero();
    for ((a_count, circles), k) in tally {
        let term = a_pow(2 * a_count - n as i64) * delta.pow(circles as u32 - 1);
        out = out + term.scale(GaussInt::real(k));
    }
    Ok(out)
}

/// Jones polynomial from the state-sum bracket.
pub fn jones_state_sum(d: &Diagram, cfg: &SkeinConfig) -> Result<LaurentPoly, SkeinError> {
    Ok(to_jones(&bracket_state_sum(d, cfg)?, d.writhe()))
}

/// Order in which to add crossings so the set of open ends stays small.
fn contraction_order(crossings: &[Crossing], piece: &[usize]) -> Vec<usize> {
    let mut open: BTreeSet<u32> = BTreeSet::new();
    let mut left: BTreeSet<usize> = piece.iter().copied().collect();
    let mut order = Vec::with_capacity(piece.len());
    while let Some(&first) = left.iter().next() {
        let next = left
            .iter()
            .copied()
            .max_by_key(|&c| {
                let shared = crossings[c].pd.iter().filter(|a| open.contains(a)).count();
                (shared, std::cmp::Reverse(c))
            })
            .unwrap_or(first);
        left.remove(&next);
        order.push(next);
        for a in crossings[next].pd {
            if !open.remove(&a) {
                open.insert(a);
            }
        }
    }
    order
}

/// Joins the path ending at `u` to the one ending at `v`. Returns whether a
/// circle closed.
fn glue(m: &mut BTreeMap<u32, u32>, u: u32, v: u32) -> bool {
    if u == v || m.get(&u) == Some(&v) {
        m.remove(&u);
        m.remove(&v);
        return true;
    }
    let mut take = |x: u32| match m.remove(&x) {
        Some(p) => {
            m.remove(&p);
            p
        }
        None => x,
    };
    let (eu, ev) = (take(u), take(v));
    m.insert(eu, ev);
    m.insert(ev, eu);
    false
}

/// Bracket of one connected piece by adding crossings one at a time and
/// tracking, for every planar pairing of the open ends, the partial sum.
fn contract_piece(crossings: &[Crossing], piece: &[usize]) -> LaurentPoly {
    let order = contraction_order(crossings, piece);
    let delta = loop_value();
    let delta_pows: Vec<LaurentPoly> = (0..4).map(|k| delta.pow(k)).collect();
    let weights = [a_pow(1), a_pow(-1)];
    let mut states: HashMap<Vec<(u32, u32)>, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());
    for (step, &ci) in order.iter().enumerate() {
        let last = step + 1 == order.len();
        let [a, b, c, d] = crossings[ci].pd;
        let smoothings = [[(a, b), (c, d)], [(a, d), (b, c)]];
        let mut next: HashMap<Vec<(u32, u32)>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (key, poly) in &states {
            for (arcs, w) in smoothings.iter().zip(&weights) {
                let mut m: BTreeMap<u32, u32> = BTreeMap::new();
                for &(x, y) in key {
                    m.insert(x, y);
                    m.insert(y, x);
                }
                let mut circles = 0;
                for &(x, y) in arcs {
                    if glue(&mut m, x, y) {
                        circles += 1;
                    }
                }
                if last {
                    circles -= 1;
                }
                let k: Vec<(u32, u32)> = m.iter().filter(|(x, y)| x < y).map(|(&x, &y)| (x, y)).collect();
                let term = poly * &(w * &delta_pows[circles]);
                let slot = next.entry(k).or_insert_with(LaurentPoly::zero);
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    states.remove(&Vec::new()).unwrap_or_else(LaurentPoly::zero)
}

/// Kauffman bracket by planar contraction.
pub fn bracket(d: &Diagram) -> LaurentPoly {
    let pieces = d.connected_pieces();
    let circles = pieces.len() + d.free_loops();
    let mut out = loop_value().pow(circles.saturating_sub(1) as u32);
    for p in &pieces {
        out = out * contract_piece(d.crossings(), p);
    }
    out
}

/// Jones polynomial, `V = (-A)^{-3w} <D>` at `t = A^{-4}`.
pub fn jones(d: &Diagram) -> LaurentPoly {
    to_jones(&bracket(d), d.writhe())
}

fn bracket_memo(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> LaurentPoly {
    let s = d.simplify();
    let factor = minus_a_pow(3 * (d.writhe() - s.writhe()));
    let key = s.canonical_key();
    if let Some(v) = memo.get_bracket(&key) {
        return &v * &factor;
    }
    let pieces = s.connected_pieces();
    let v = if pieces.len() > 1 {
        let circles = pieces.len() + s.free_loops();
        let mut out = loop_value().pow(circles as u32 - 1);
        for p in &pieces {
            let sub: Vec<Crossing> = p.iter().map(|&i| s.crossings()[i]).collect();
            let piece = Diagram::new(sub, 0).expect("a piece is a closed diagram");
            out = out * bracket_memo(&piece, memo, cfg);
        }
        out
    } else {
        bracket(&s)
    };
    memo.put_bracket(key, v.clone(), cfg.memo_entries);
    &v * &factor
}

/// Jones polynomial through R1/R2 simplification, split-piece recursion and
/// the shared memo.
pub fn jones_memoized(d: &Diagram, memo: &SkeinMemo, cfg: &SkeinConfig) -> Result<LaurentPoly, SkeinError> {
    let n = d.crossing_count();
    if n > cfg.max_crossings {
        return Err(SkeinError::ResourceLimit {
            crossings: n,
            cap: cfg.max_crossings,
        });
    }
    Ok(to_jones(&bracket_memo(d, memo, cfg), d.writhe()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::diagram::tests::{FIGURE8, HOPF, TREFOIL};
    use crate::diagram::{pd_parse, RMove};
    use proptest::prelude::*;

    fn cfg() -> SkeinConfig {
        SkeinConfig::default()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_state_sum(&Diagram::unknot(), &cfg()).unwrap(), LaurentPoly::one());
        let curl = pd_parse("X[1,1,2,2]").unwrap();
        assert_eq!(curl.writhe(), 1);
        assert_eq!(bracket_state_sum(&curl, &cfg()).unwrap(), -a_pow(3));
        assert_eq!(bracket(&curl), -a_pow(3));
        assert_eq!(bracket_state_sum(&Diagram::unlink(2), &cfg()).unwrap(), loop_value());
        assert_eq!(bracket(&Diagram::unlink(2)), loop_value());
    }

    #[test]
    fn jones_examples() {
        assert_eq!(jones(&Diagram::unknot()), LaurentPoly::one());
        assert_eq!(jones(&Diagram::unlink(2)), p("-t^-1/2 - t^1/2"));
        let t = pd_parse(TREFOIL).unwrap();
        let v = jones(&t);
        let vm = jones(&t.mirror());
        assert_eq!(vm, v.invert_variable());
        let left = p("-t^-4 + t^-3 + t^-1");
        assert!(v == left || vm == left, "{v}");
        assert_eq!(jones(&pd_parse(FIGURE8).unwrap()), p("t^-2 - t^-1 + 1 - t + t^2"));
        let hopf = jones(&pd_parse(HOPF).unwrap());
        assert!(hopf == p("-t^1/2 - t^5/2") || hopf == p("-t^-1/2 - t^-5/2"), "{hopf}");
    }

    #[test]
    fn too_large() {
        let c = SkeinConfig {
            state_sum_cap: 2,
            ..cfg()
        };
        assert!(matches!(
            bracket_state_sum(&pd_parse(TREFOIL).unwrap(), &c),
            Err(SkeinError::TooLarge { crossings: 3, cap: 2 })
        ));
        let c = SkeinConfig {
            max_crossings: 2,
            ..cfg()
        };
        assert!(matches!(
            jones_memoized(&pd_parse(TREFOIL).unwrap(), &SkeinMemo::new(), &c),
            Err(SkeinError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn memo_is_deterministic() {
        let memo = SkeinMemo::new();
        let d = pd_parse(FIGURE8).unwrap().disjoint_union(&pd_parse(TREFOIL).unwrap());
        let v1 = jones_memoized(&d, &memo, &cfg()).unwrap();
        let r1 = memo.bracket_stats().hit_rate();
        let v2 = jones_memoized(&d, &memo, &cfg()).unwrap();
        let r2 = memo.bracket_stats().hit_rate();
        assert_eq!(v1, v2);
        assert!(r2 >= r1);
        assert_eq!(v1, jones(&d));
    }

    #[test]
    fn disjoint_union_factor() {
        let a = pd_parse(TREFOIL).unwrap();
        let b = pd_parse(FIGURE8).unwrap();
        let lhs = jones(&a.disjoint_union(&b));
        assert_eq!(lhs, p("-t^-1/2 - t^1/2") * jones(&a) * jones(&b));
    }

    /// Random closed braids give assorted multi-component diagrams.
    pub(crate) fn arb_diagram() -> impl Strategy<Value = Diagram> {
        (2usize..5).prop_flat_map(|n| {
            prop::collection::vec((1..n as i32, any::<bool>()), 1..10).prop_map(move |v| {
                let w = v.into_iter().map(|(k, s)| if s { k } else { -k }).collect();
                crate::presentations::BraidWord::new(n, w).unwrap().closure()
            })
        })
    }

    proptest! {
        #[test]
        fn contraction_matches_state_sum(d in arb_diagram()) {
            prop_assert_eq!(bracket(&d), bracket_state_sum(&d, &cfg()).unwrap());
        }

        #[test]
        fn invariance_under_moves(d in arb_diagram(), pick in 0usize..1000) {
            let b = bracket(&d);
            let v = jones(&d);
            let mut moves = d.move_sites();
            for arc in d.arcs().into_iter().take(3) {
                for sign in [1, -1] {
                    moves.push(RMove::R1Add { arc, sign, under_first: pick % 2 == 0 });
                }
            }
            if moves.is_empty() {
                return Ok(());
            }
            let mv = &moves[pick % moves.len()];
            let (e, rec) = d.apply_reidemeister(mv).unwrap();
            prop_assert_eq!(jones(&e), v.clone());
            let scale = minus_a_pow(3 * rec.writhe_delta);
            prop_assert_eq!(bracket(&e), &b * &scale);
        }

        #[test]
        fn mirror_inverts(d in arb_diagram()) {
            prop_assert_eq!(jones(&d.mirror()), jones(&d).invert_variable());
        }
    }
}
