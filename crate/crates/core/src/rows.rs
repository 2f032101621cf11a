//! Least-recently-used store for lazily computed Gram rows.

use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

#[derive(Debug)]
pub(crate) struct RowCache<K, V> {
    rows: HashMap<K, (Rc<V>, u64)>,
    capacity: usize,
    clock: u64,
    misses: usize,
}

impl<K: Hash + Eq + Copy, V> RowCache<K, V> {
    /// `capacity` 0 disables reuse: every lookup recomputes.
    pub fn new(capacity: usize) -> Self {
        RowCache {
            rows: HashMap::new(),
            capacity,
            clock: 0,
            misses: 0,
        }
    }

    pub fn misses(&self) -> usize {
        self.misses
    }

    pub fn get(&mut self, key: K, make: impl FnOnce() -> V) -> Rc<V> {
        self.clock += 1;
        if let Some(entry) = self.rows.get_mut(&key) {
            entry.1 = self.clock;
            return entry.0.clone();
        }
        self.misses += 1;
        let row = Rc::new(make());
        if self.capacity > 0 {
            if self.rows.len() >= self.capacity {
                let oldest = self
                    .rows
                    .iter()
                    .min_by_key(|(_, (_, stamp))| *stamp)
                    .map(|(k, _)| *k);
                if let Some(k) = oldest {
                    self.rows.remove(&k);
                }
            }
            self.rows.insert(key, (row.clone(), self.clock));
        }
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evicts_least_recent() {
        let mut c: RowCache<u32, u32> = RowCache::new(2);
        c.get(1, || 10);
        c.get(2, || 20);
        c.get(1, || unreachable!());
        c.get(3, || 30); // evicts 2
        assert_eq!(*c.get(1, || unreachable!()), 10);
        assert_eq!(*c.get(2, || 21), 21);
        assert_eq!(c.misses(), 4);
    }

    #[test]
    fn zero_capacity_always_recomputes() {
        let mut c: RowCache<u32, u32> = RowCache::new(0);
        c.get(1, || 1);
        c.get(1, || 1);
        assert_eq!(c.misses(), 2);
    }
}
