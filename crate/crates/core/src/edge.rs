use std::collections::{BTreeMap, BTreeSet};

/// A cover (or one-step transition) between two structures of the same size,
/// with every rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverEdge<S, R> {
    pub source: S,
    pub target: S,
    pub rules: Vec<R>,
}

impl<S, R: Copy> CoverEdge<S, R> {
    pub fn rule(&self) -> R {
        self.rules[0]
    }
}

/// Closure queries need structures of equal dimensions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: {}x{} versus {}x{}", left.0, left.1, right.0, right.1)]
pub struct DimensionMismatch {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

/// Accumulates targets from one source, merging duplicate targets.
pub(crate) struct EdgeCollector<S, R> {
    source: S,
    targets: BTreeMap<S, BTreeSet<R>>,
}

impl<S: Ord + Clone, R: Ord + Copy> EdgeCollector<S, R> {
    pub(crate) fn new(source: S) -> Self {
        Self {
            source,
            targets: BTreeMap::new(),
        }
    }

    pub(crate) fn source(&self) -> &S {
        &self.source
    }

    pub(crate) fn push(&mut self, target: S, rule: R) {
        if target != self.source {
            self.targets.entry(target).or_default().insert(rule);
        }
    }

    pub(crate) fn finish(self) -> Vec<CoverEdge<S, R>> {
        let source = self.source;
        self.targets
            .into_iter()
            .map(|(target, rules)| CoverEdge {
                source: source.clone(),
                target,
                rules: rules.into_iter().collect(),
            })
            .collect()
    }
}

/// Sorted multiset helpers shared by the rule engines.
pub(crate) mod multiset {
    pub(crate) fn distinct(sorted: &[usize]) -> Vec<usize> {
        let mut out = sorted.to_vec();
        out.dedup();
        out
    }

    pub(crate) fn count(sorted: &[usize], x: usize) -> usize {
        sorted.iter().filter(|&&v| v == x).count()
    }

    /// Removes one copy of each value in `remove` (zero means "nothing") and
    /// inserts the non-zero values of `insert`.
    pub(crate) fn replaced(sorted: &[usize], remove: &[usize], insert: &[usize]) -> Vec<usize> {
        let mut out = sorted.to_vec();
        for &r in remove {
            let pos = out.iter().position(|&v| v == r).expect("value present");
            out.remove(pos);
        }
        out.extend_from_slice(insert);
        out.sort_unstable();
        out
    }

    pub(crate) fn replaced_keep_zero_free(
        sorted: &[usize],
        remove: &[usize],
        insert: &[usize],
    ) -> Vec<usize> {
        let remove: Vec<usize> = remove.iter().copied().filter(|&v| v > 0).collect();
        let insert: Vec<usize> = insert.iter().copied().filter(|&v| v > 0).collect();
        replaced(sorted, &remove, &insert)
    }

    /// Pairs `(j, k)`, `1 <= j <= k`, of existing blocks for which
    /// `X_j + X_k -> X_(j-1) + X_(k+1)` leaves no other block in `[j, k]`
    /// (any pair when `j = k`).
    pub(crate) fn spreading_pairs(sorted: &[usize]) -> Vec<(usize, usize)> {
        let values = distinct(sorted);
        let mut out = Vec::new();
        for (a, &j) in values.iter().enumerate() {
            if j == 0 {
                continue;
            }
            for &k in &values[a..] {
                if j == k && count(sorted, j) < 2 {
                    continue;
                }
                let others = replaced(sorted, &[j, k], &[]);
                if j == k || !others.iter().any(|&x| j <= x && x <= k) {
                    out.push((j, k));
                }
            }
        }
        out
    }

    /// Pairs `(a, b)` with `a = 0` (no block) or an existing block, `b` an
    /// existing block and `a + 2 <= b`, such that `X_a + X_b -> X_(a+1) +
    /// X_(b-1)` leaves no other block in `[a + 1, b - 1]` (any pair when
    /// `b = a + 2`).
    pub(crate) fn merging_pairs(sorted: &[usize]) -> Vec<(usize, usize)> {
        let values = distinct(sorted);
        let mut lows = vec![0];
        lows.extend(values.iter().copied());
        lows.dedup();
        let mut out = Vec::new();
        for &b in &values {
            for &a in &lows {
                if a + 2 > b {
                    continue;
                }
                let (j, k) = (a + 1, b - 1);
                let others = replaced_keep_zero_free(sorted, &[a, b], &[]);
                if j == k || !others.iter().any(|&x| j <= x && x <= k) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All `(j, k)` with `1 <= j <= k` over existing blocks, no minimality.
    pub(crate) fn all_spreading_pairs(sorted: &[usize]) -> Vec<(usize, usize)> {
        let values = distinct(sorted);
        let mut out = Vec::new();
        for (a, &j) in values.iter().enumerate() {
            if j == 0 {
                continue;
            }
            for &k in &values[a..] {
                if j < k || count(sorted, j) >= 2 {
                    out.push((j, k));
                }
            }
        }
        out
    }

    /// All `(a, b)` with `a = 0` or existing, `b` existing, `a + 2 <= b`.
    pub(crate) fn all_merging_pairs(sorted: &[usize]) -> Vec<(usize, usize)> {
        let values = distinct(sorted);
        let mut lows = vec![0];
        lows.extend(values.iter().copied());
        lows.dedup();
        let mut out = Vec::new();
        for &b in &values {
            for &a in &lows {
                if a + 2 <= b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn spreading() {
            assert_eq!(spreading_pairs(&[1, 1]), vec![(1, 1)]);
            assert_eq!(spreading_pairs(&[1, 3]), vec![(1, 3)]);
            assert_eq!(spreading_pairs(&[1, 1, 3]), vec![(1, 1)]);
            assert_eq!(spreading_pairs(&[0, 2]), vec![]);
            assert_eq!(spreading_pairs(&[1, 2, 3]), vec![(1, 2), (2, 3)]);
        }

        #[test]
        fn merging() {
            assert_eq!(merging_pairs(&[3]), vec![(0, 3)]);
            assert_eq!(merging_pairs(&[1, 2]), vec![(0, 2)]);
            assert_eq!(merging_pairs(&[1, 1, 4]), vec![(1, 4)]);
            assert_eq!(merging_pairs(&[2, 4]), vec![(0, 2), (2, 4)]);
        }
    }
}
