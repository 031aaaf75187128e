use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Successor lists memoized across closure queries.
///
/// Entries are computed outside the lock and merged on write; concurrent
/// writers of the same key store identical values.
pub struct ClosureCache<S> {
    successors: RwLock<HashMap<S, Arc<Vec<S>>>>,
}

impl<S> Default for ClosureCache<S> {
    fn default() -> Self {
        Self {
            successors: RwLock::new(HashMap::new()),
        }
    }
}

impl<S: Clone + Eq + Hash> ClosureCache<S> {
    pub fn successors(&self, node: &S, step: &dyn Fn(&S) -> Vec<S>) -> Arc<Vec<S>> {
        if let Some(hit) = self.successors.read().expect("cache lock").get(node) {
            return Arc::clone(hit);
        }
        let computed = Arc::new(step(node));
        self.successors
            .write()
            .expect("cache lock")
            .entry(node.clone())
            .or_insert(computed)
            .clone()
    }

    /// Breadth-first search from `from`; nodes failing `keep` are not expanded.
    pub fn reaches(
        &self,
        from: &S,
        to: &S,
        step: &dyn Fn(&S) -> Vec<S>,
        keep: &dyn Fn(&S) -> bool,
    ) -> bool {
        if from == to {
            return true;
        }
        let mut seen: HashSet<S> = HashSet::from([from.clone()]);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(node) = queue.pop_front() {
            for next in self.successors(&node, step).iter() {
                if next == to {
                    return true;
                }
                if keep(next) && seen.insert(next.clone()) {
                    queue.push_back(next.clone());
                }
            }
        }
        false
    }

    pub fn len(&self) -> usize {
        self.successors.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
