use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::Diagram;

const PIECE_BREAK: u32 = u32::MAX;

/// Relabeling-invariant fingerprint of a diagram.
///
/// Equal for diagrams that differ only by arc labels and crossing order.
/// It does not identify isotopic diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    free_loops: usize,
    words: Vec<u32>,
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}O", self.free_loops)?;
        for w in &self.words {
            if *w == PIECE_BREAK {
                f.write_str("|")?;
            } else {
                write!(f, ".{w}")?;
            }
        }
        Ok(())
    }
}

impl Diagram {
    /// BFS encoding of the piece containing `start`.
    fn encode_from(&self, start: usize, other: &BTreeMap<(usize, usize), (usize, usize)>) -> Vec<u32> {
        let mut order = vec![usize::MAX; self.crossings.len()];
        let mut labels: BTreeMap<u32, u32> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        order[start] = 0;
        let mut next_crossing = 1;
        let mut out = Vec::new();
        while let Some(c) = queue.pop_front() {
            let x = self.crossings[c];
            out.push((x.sign + 1) as u32);
            for s in 0..4 {
                let n = labels.len() as u32;
                out.push(*labels.entry(x.pd[s]).or_insert(n));
                let (c2, _) = other[&(c, s)];
                if order[c2] == usize::MAX {
                    order[c2] = next_crossing;
                    next_crossing += 1;
                    queue.push_back(c2);
                }
            }
        }
        out
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let other = self.other_end_table();
        let mut pieces: Vec<Vec<u32>> = self
            .connected_pieces()
            .iter()
            .map(|piece| {
                piece
                    .iter()
                    .map(|&c| self.encode_from(c, &other))
                    .min()
                    .expect("pieces are nonempty")
            })
            .collect();
        pieces.sort();
        let mut words = Vec::new();
        for p in pieces {
            words.extend(p);
            words.push(PIECE_BREAK);
        }
        CanonicalKey {
            free_loops: self.free_loops,
            words,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::super::{Crossing, Diagram};

    #[test]
    fn relabel_and_reorder_invariant() {
        let t = d(TREFOIL);
        let shifted = t.relabel(|a| 7 * a + 100);
        assert_eq!(t.canonical_key(), shifted.canonical_key());
        let mut cs: Vec<Crossing> = t.crossings().to_vec();
        cs.rotate_left(1);
        let reordered = Diagram::new(cs, 0).unwrap();
        assert_eq!(t.canonical_key(), reordered.canonical_key());
    }

    #[test]
    fn distinguishes() {
        let t = d(TREFOIL);
        assert_ne!(t.canonical_key(), t.mirror().canonical_key());
        assert_ne!(
            t.canonical_key(),
            t.disjoint_union(&Diagram::unknot()).canonical_key()
        );
        assert_ne!(t.canonical_key(), d(FIGURE8).canonical_key());
    }

    #[test]
    fn union_order_irrelevant() {
        let a = d(TREFOIL).disjoint_union(&d(HOPF));
        let b = d(HOPF).disjoint_union(&d(TREFOIL));
        assert_eq!(a.canonical_key(), b.canonical_key());
    }
}
