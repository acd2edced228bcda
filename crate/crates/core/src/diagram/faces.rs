use std::collections::BTreeMap;

use super::{Diagram, Slot};

/// Leaving crossing `.0` along the arc at slot `.1`.
pub type Dart = Slot;

/// A complementary region, traced with the region on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

impl Diagram {
    /// Slot holding the other end of the arc at `slot`.
    pub fn other_end(&self, slot: Slot) -> Slot {
        let a = self.crossings[slot.0].pd[slot.1];
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.pd[s] == a && (i, s) != slot {
                    return (i, s);
                }
            }
        }
        unreachable!("validated diagrams have two ends per arc")
    }

    pub(crate) fn other_end_table(&self) -> BTreeMap<Slot, Slot> {
        let mut by_label: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                by_label.entry(c.pd[s]).or_default().push((i, s));
            }
        }
        let mut out = BTreeMap::new();
        for v in by_label.values() {
            out.insert(v[0], v[1]);
            out.insert(v[1], v[0]);
        }
        out
    }

    /// Whether travelling along dart `d` follows the arc's orientation.
    pub fn dart_is_forward(&self, d: Dart) -> bool {
        !self.crossings[d.0].slot_is_incoming(d.1)
    }

    /// All faces, each starting from its smallest dart, in dart order.
    pub fn faces(&self) -> Vec<Face> {
        let other = self.other_end_table();
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for c in 0..self.crossings.len() {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut d = (c, s);
                while !seen[d.0][d.1] {
                    seen[d.0][d.1] = true;
                    darts.push(d);
                    let (c2, s2) = other[&d];
                    d = (c2, (s2 + 1) % 4);
                }
                faces.push(Face { darts });
            }
        }
        faces
    }

    /// Number of split pieces among the crossings (free loops not counted).
    pub(crate) fn connected_pieces(&self) -> Vec<Vec<usize>> {
        let other = self.other_end_table();
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            piece[start] = id;
            let mut members = Vec::new();
            while let Some(c) = stack.pop() {
                members.push(c);
                for s in 0..4 {
                    let (c2, _) = other[&(c, s)];
                    if piece[c2] == usize::MAX {
                        piece[c2] = id;
                        stack.push(c2);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}
