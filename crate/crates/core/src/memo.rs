use std::collections::HashMap;
use std::hash::Hash;

use parking_lot::RwLock;

/// A concurrent-read memo table. The lock is never held while computing, so
/// recursive computations may re-enter it.
pub(crate) struct Memo<K, V> {
    table: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo {
            table: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.table.read().get(key) {
            return v.clone();
        }
        let v = compute();
        self.table.write().entry(key.clone()).or_insert(v).clone()
    }
}
