//! Integer partitions, the dominance order, and coin moves.
//!
//! A partition is read as a coin table: `parts[i]` coins stand in column `i`.
//! Weyr characteristics of a pencil are partitions in this sense, and every
//! cover engine in the crate is expressed through the moves defined here.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be non-increasing, got {0:?}")]
    NotMonotone(Vec<i64>),
    #[error("parts must be non-negative, got {0:?}")]
    NegativePart(Vec<i64>),
    #[error("partitions of different totals cannot be compared ({left} vs {right})")]
    TotalMismatch { left: usize, right: usize },
    #[error("part {value} at position {index} is odd")]
    OddPart { index: usize, value: usize },
    #[error("scaling by {numer}/{denom} does not give integer parts")]
    NotIntegral { numer: usize, denom: usize },
}

/// Outcome of comparing two partitions of the same total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// A non-increasing sequence of non-negative integers, trailing zeros stripped.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

/// A single coin move together with the partition it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinMove {
    pub from: usize,
    pub to: usize,
    pub result: IntegerPartition,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotMonotone(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds the partition whose parts are `values` in any order.
    pub fn from_unsorted(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(values)
    }

    fn from_sorted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part at position `i`, zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn last(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|k| self.parts.iter().take_while(|&&p| p >= k).count())
            .collect();
        Self { parts }
    }

    pub fn dominance_compare(&self, other: &Self) -> Result<Dominance, PartitionError> {
        let (left, right) = (self.total(), other.total());
        if left != right {
            return Err(PartitionError::TotalMismatch { left, right });
        }
        let n = self.len().max(other.len());
        let (mut ge, mut le) = (true, true);
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.get(i);
            b += other.get(i);
            match a.cmp(&b) {
                Ordering::Greater => le = false,
                Ordering::Less => ge = false,
                Ordering::Equal => {}
            }
        }
        Ok(match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// `true` when `self ≽ other` in dominance order; totals must agree.
    pub fn dominates(&self, other: &Self) -> Result<bool, PartitionError> {
        Ok(matches!(
            self.dominance_compare(other)?,
            Dominance::Greater | Dominance::Equal
        ))
    }

    /// Adds `a` to every stored (non-zero) part.
    pub fn shift(&self, a: i64) -> Result<Self, PartitionError> {
        let shifted: Vec<i64> = self.parts.iter().map(|&p| p as i64 + a).collect();
        if shifted.iter().any(|&p| p < 0) {
            return Err(PartitionError::NegativePart(shifted));
        }
        Ok(Self::from_sorted(shifted.into_iter().map(|p| p as usize).collect()))
    }

    /// Multiplies every part by `numer / denom`.
    pub fn scale(&self, numer: usize, denom: usize) -> Result<Self, PartitionError> {
        assert!(denom > 0, "scale denominator must be positive");
        let mut parts = Vec::with_capacity(self.parts.len());
        for &p in &self.parts {
            if !(p * numer).is_multiple_of(denom) {
                return Err(PartitionError::NotIntegral { numer, denom });
            }
            parts.push(p * numer / denom);
        }
        Ok(Self::from_sorted(parts))
    }

    /// Adds one coin to each of the columns `0..len`.
    pub fn with_row(&self, len: usize) -> Self {
        let n = self.len().max(len);
        let parts = (0..n).map(|i| self.get(i) + usize::from(i < len)).collect();
        Self::from_sorted(parts)
    }

    /// Removes the last coin of the rightmost column.
    pub fn without_last_coin(&self) -> Self {
        let mut parts = self.parts.clone();
        if let Some(last) = parts.last_mut() {
            *last -= 1;
        }
        Self::from_sorted(parts)
    }

    /// Appends a new rightmost column holding `coins` coins.
    pub fn with_column(&self, coins: usize) -> Result<Self, PartitionError> {
        let mut parts = self.parts.clone();
        parts.push(coins);
        Self::new(parts)
    }

    fn ensure_even(&self) -> Result<(), PartitionError> {
        match self.parts.iter().position(|p| p % 2 == 1) {
            Some(index) => Err(PartitionError::OddPart {
                index,
                value: self.parts[index],
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<&[usize]> for IntegerPartition {
    fn from(parts: &[usize]) -> Self {
        Self::from_unsorted(parts.to_vec())
    }
}

fn is_partition(parts: &[usize]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

/// Lower covers of `p` in the dominance order, with the column each coin left
/// and the column it landed in.
///
/// A coin moving from column `i` to `j > i` gives a cover exactly when the
/// result is a partition and either `j = i + 1` or the two columns end up
/// the same height.
pub fn min_rightward_coin_moves(p: &IntegerPartition) -> Vec<CoinMove> {
    let n = p.len();
    let mut moves = Vec::new();
    for from in 0..n {
        for to in from + 1..=n {
            let covering = to == from + 1 || p.get(from) == p.get(to) + 2;
            if !covering {
                continue;
            }
            let mut parts = p.parts.clone();
            if to == n {
                parts.push(0);
            }
            parts[from] -= 1;
            parts[to] += 1;
            if is_partition(&parts) {
                moves.push(CoinMove {
                    from,
                    to,
                    result: IntegerPartition::from_sorted(parts),
                });
            }
        }
    }
    moves
}

/// Upper covers of `p`: a coin moves from column `from` leftward to `to`.
pub fn min_leftward_coin_moves(p: &IntegerPartition) -> Vec<CoinMove> {
    let n = p.len();
    let mut moves = Vec::new();
    for from in 1..n {
        for to in 0..from {
            // the reverse move from `to` to `from` on the result must be a cover
            let covering = from == to + 1 || p.get(to) == p.get(from);
            if !covering {
                continue;
            }
            let mut parts = p.parts.clone();
            parts[from] -= 1;
            parts[to] += 1;
            if is_partition(&parts) {
                moves.push(CoinMove {
                    from,
                    to,
                    result: IntegerPartition::from_sorted(parts),
                });
            }
        }
    }
    moves
}

fn results(moves: Vec<CoinMove>) -> Vec<IntegerPartition> {
    let mut out: Vec<_> = moves.into_iter().map(|m| m.result).collect();
    out.sort();
    out.dedup();
    out
}

pub fn min_rightward_moves(p: &IntegerPartition) -> Vec<IntegerPartition> {
    results(min_rightward_coin_moves(p))
}

pub fn min_leftward_moves(p: &IntegerPartition) -> Vec<IntegerPartition> {
    results(min_leftward_coin_moves(p))
}

/// Leftward moves of vertical coin pairs: the upper covers of `p / 2`, doubled.
pub fn vertical_pair_leftward_moves(
    p: &IntegerPartition,
) -> Result<Vec<IntegerPartition>, PartitionError> {
    p.ensure_even()?;
    let half = p.scale(1, 2)?;
    min_leftward_moves(&half)
        .into_iter()
        .map(|q| q.scale(2, 1))
        .collect()
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn all_partitions(n: usize) -> Vec<IntegerPartition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition::from_sorted(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> IntegerPartition {
        IntegerPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(part(&[3, 1]).dominance_compare(&part(&[2, 2])), Ok(Dominance::Greater));
        assert_eq!(part(&[2, 2]).dominance_compare(&part(&[3, 1])), Ok(Dominance::Less));
        assert_eq!(part(&[2, 1]).dominance_compare(&part(&[2, 1, 0])), Ok(Dominance::Equal));
        assert_eq!(
            part(&[3, 1, 1]).dominance_compare(&part(&[2, 2, 2])),
            Err(PartitionError::TotalMismatch { left: 5, right: 6 })
        );
        assert_eq!(
            part(&[3, 1, 1, 1]).dominance_compare(&part(&[2, 2, 2])),
            Ok(Dominance::Incomparable)
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[]).conjugate(), part(&[]));
        assert_eq!(part(&[2, 2]).conjugate(), part(&[2, 2]));
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(matches!(
            IntegerPartition::new(vec![1, 2]),
            Err(PartitionError::NotMonotone(_))
        ));
    }

    #[test]
    fn trailing_zeros_are_insignificant() {
        assert_eq!(part(&[2, 1, 0, 0]), part(&[2, 1]));
        assert_eq!(part(&[2, 1, 0, 0]).len(), 2);
    }

    #[test]
    fn rightward_examples() {
        assert_eq!(min_rightward_moves(&part(&[2, 2])), vec![part(&[2, 1, 1])]);
        assert_eq!(min_rightward_moves(&part(&[3, 1])), vec![part(&[2, 2])]);
        assert!(min_rightward_moves(&part(&[1, 1])).is_empty());
    }

    #[test]
    fn leftward_examples() {
        // partitions of 4 form a chain, so (3,1) is not an upper cover of (2,1,1)
        assert_eq!(min_leftward_moves(&part(&[2, 1, 1])), vec![part(&[2, 2])]);
        assert_eq!(
            min_leftward_moves(&part(&[2, 2, 1, 1])),
            vec![part(&[2, 2, 2]), part(&[3, 1, 1, 1])]
        );
        assert_eq!(min_leftward_moves(&part(&[1, 1])), vec![part(&[2])]);
        assert!(min_leftward_moves(&part(&[5])).is_empty());
    }

    #[test]
    fn vertical_pair_examples() {
        assert_eq!(
            vertical_pair_leftward_moves(&part(&[2, 2, 2])).unwrap(),
            vec![part(&[4, 2])]
        );
        assert!(vertical_pair_leftward_moves(&part(&[2])).unwrap().is_empty());
        assert_eq!(
            vertical_pair_leftward_moves(&part(&[4, 2])).unwrap(),
            vec![part(&[6])]
        );
        assert_eq!(
            vertical_pair_leftward_moves(&part(&[2, 1])),
            Err(PartitionError::OddPart { index: 1, value: 1 })
        );
    }

    #[test]
    fn shift_and_scale() {
        assert_eq!(part(&[3, 1]).shift(1).unwrap(), part(&[4, 2]));
        assert_eq!(part(&[3, 1]).shift(-1).unwrap(), part(&[2]));
        assert!(matches!(part(&[3, 1]).shift(-2), Err(PartitionError::NegativePart(_))));
        assert_eq!(part(&[4, 2]).scale(1, 2).unwrap(), part(&[2, 1]));
        assert!(part(&[3]).scale(1, 2).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn row_helpers() {
        assert_eq!(part(&[2, 1]).with_row(3), part(&[3, 2, 1]));
        assert_eq!(part(&[2, 1]).without_last_coin(), part(&[2]));
        assert_eq!(part(&[2, 2]).with_column(2).unwrap(), part(&[2, 2, 2]));
        assert!(part(&[2, 1]).with_column(2).is_err());
    }
}
