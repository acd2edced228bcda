use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::diagram::CanonicalKey;
use crate::poly::{LaurentPoly, TwoVarPoly};

/// Write-once table keyed by canonical diagram keys.
#[derive(Debug)]
struct Table<V> {
    map: Mutex<HashMap<CanonicalKey, V>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<V> Default for Table<V> {
    fn default() -> Self {
        Table {
            map: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }
}

impl<V: Clone + PartialEq + std::fmt::Debug> Table<V> {
    fn get(&self, k: &CanonicalKey) -> Option<V> {
        let v = self.map.lock().expect("memo lock").get(k).cloned();
        match v {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        v
    }

    fn put(&self, k: CanonicalKey, v: V, cap: usize) {
        let mut m = self.map.lock().expect("memo lock");
        if let Some(old) = m.get(&k) {
            assert_eq!(old, &v, "memo entry {k} recomputed with a different value");
            return;
        }
        if m.len() < cap {
            m.insert(k, v);
        }
    }

    fn len(&self) -> usize {
        self.map.lock().expect("memo lock").len()
    }
}

/// Hit and miss counts for each table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MemoStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

impl MemoStats {
    pub fn hit_rate(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }
}

/// Memo tables for the bracket, the Kauffman `Λ` and the Conway polynomial.
/// Safe to share between threads.
#[derive(Debug, Default)]
pub struct SkeinMemo {
    bracket: Table<LaurentPoly>,
    lambda: Table<TwoVarPoly>,
    conway: Table<LaurentPoly>,
}

macro_rules! accessors {
    ($get:ident, $put:ident, $field:ident, $ty:ty) => {
        pub(crate) fn $get(&self, k: &CanonicalKey) -> Option<$ty> {
            self.$field.get(k)
        }

        pub(crate) fn $put(&self, k: CanonicalKey, v: $ty, cap: usize) {
            self.$field.put(k, v, cap)
        }
    };
}

impl SkeinMemo {
    pub fn new() -> SkeinMemo {
        SkeinMemo::default()
    }

    accessors!(get_bracket, put_bracket, bracket, LaurentPoly);
    accessors!(get_lambda, put_lambda, lambda, TwoVarPoly);
    accessors!(get_conway, put_conway, conway, LaurentPoly);

    fn stats_of<V: Clone + PartialEq + std::fmt::Debug>(t: &Table<V>) -> MemoStats {
        MemoStats {
            hits: t.hits.load(Ordering::Relaxed),
            misses: t.misses.load(Ordering::Relaxed),
            entries: t.len(),
        }
    }

    /// Combined counters over all tables.
    pub fn stats(&self) -> MemoStats {
        let parts = [
            Self::stats_of(&self.bracket),
            Self::stats_of(&self.lambda),
            Self::stats_of(&self.conway),
        ];
        parts.iter().fold(MemoStats::default(), |acc, s| MemoStats {
            hits: acc.hits + s.hits,
            misses: acc.misses + s.misses,
            entries: acc.entries + s.entries,
        })
    }

    pub fn bracket_stats(&self) -> MemoStats {
        Self::stats_of(&self.bracket)
    }

    pub fn lambda_stats(&self) -> MemoStats {
        Self::stats_of(&self.lambda)
    }

    pub fn conway_stats(&self) -> MemoStats {
        Self::stats_of(&self.conway)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Diagram;

    #[test]
    fn write_once() {
        let m = SkeinMemo::new();
        let k = Diagram::unknot().canonical_key();
        assert_eq!(m.get_bracket(&k), None);
        m.put_bracket(k.clone(), LaurentPoly::one(), 10);
        m.put_bracket(k.clone(), LaurentPoly::one(), 10);
        assert_eq!(m.get_bracket(&k), Some(LaurentPoly::one()));
        let s = m.bracket_stats();
        assert_eq!((s.hits, s.misses, s.entries), (1, 1, 1));
    }

    #[test]
    #[should_panic(expected = "different value")]
    fn conflicting_write_panics() {
        let m = SkeinMemo::new();
        let k = Diagram::unknot().canonical_key();
        m.put_conway(k.clone(), LaurentPoly::one(), 10);
        m.put_conway(k, LaurentPoly::int(2), 10);
    }

    #[test]
    fn capacity_is_respected() {
        let m = SkeinMemo::new();
        m.put_lambda(Diagram::unlink(1).canonical_key(), TwoVarPoly::one(), 1);
        m.put_lambda(Diagram::unlink(2).canonical_key(), TwoVarPoly::one(), 1);
        assert_eq!(m.lambda_stats().entries, 1);
    }
}
