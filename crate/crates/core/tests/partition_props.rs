// Coin-move generators checked against a brute-force dominance order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use pencil_strata::partitions::{
    all_partitions, min_leftward_moves, min_rightward_moves, vertical_pair_leftward_moves,
    Dominance, IntegerPartition,
};
use proptest::prelude::*;

fn prefix_dominates(p: &[usize], q: &[usize]) -> bool {
    let n = p.len().max(q.len());
    let (mut a, mut b) = (0, 0);
    (0..n).all(|i| {
        a += p.get(i).copied().unwrap_or(0);
        b += q.get(i).copied().unwrap_or(0);
        a >= b
    })
}

/// Lower covers of `p` among all partitions of the same total.
fn brute_lower_covers(p: &IntegerPartition) -> BTreeSet<IntegerPartition> {
    let all = all_partitions(p.total());
    let below: Vec<&IntegerPartition> = all
        .iter()
        .filter(|q| *q != p && prefix_dominates(p.parts(), q.parts()))
        .collect();
    below
        .iter()
        .filter(|q| {
            !below
                .iter()
                .any(|r| r != *q && prefix_dominates(r.parts(), q.parts()))
        })
        .map(|q| (*q).clone())
        .collect()
}

fn brute_upper_covers(p: &IntegerPartition) -> BTreeSet<IntegerPartition> {
    all_partitions(p.total())
        .into_iter()
        .filter(|q| brute_lower_covers(q).contains(p))
        .collect()
}

#[test]
fn covers_match_brute_force_up_to_twelve() {
    for n in 0..=12 {
        for p in all_partitions(n) {
            let down: BTreeSet<_> = min_rightward_moves(&p).into_iter().collect();
            assert_eq!(down, brute_lower_covers(&p), "lower covers of {p}");
            let up: BTreeSet<_> = min_leftward_moves(&p).into_iter().collect();
            assert_eq!(up, brute_upper_covers(&p), "upper covers of {p}");
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=12).map(|n| all_partitions(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

#[test]
fn vertical_pairs_are_doubled_upper_covers() {
    for n in 0..=6 {
        for half in all_partitions(n) {
            let doubled = half.scale(2, 1).unwrap();
            let got: BTreeSet<_> = vertical_pair_leftward_moves(&doubled).unwrap().into_iter().collect();
            let want: BTreeSet<_> = brute_upper_covers(&half)
                .into_iter()
                .map(|q| q.scale(2, 1).unwrap())
                .collect();
            assert_eq!(got, want, "{doubled}");
            assert!(got.iter().all(|q| q.parts().iter().all(|x| x % 2 == 0)));
        }
    }
    assert!(vertical_pair_leftward_moves(&IntegerPartition::from(&[3, 1][..])).is_err());
}

fn partition() -> impl Strategy<Value = IntegerPartition> {
    prop::collection::vec(0usize..7, 0..7).prop_map(IntegerPartition::from_unsorted)
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().total(), p.total());
    }

    #[test]
    fn conjugation_reverses_dominance(p in partition(), extra in prop::collection::vec(0usize..7, 0..7)) {
        // A second partition of the same total, built by redistributing p's coins.
        let mut q = extra;
        let target = p.total();
        let mut sum: usize = q.iter().sum();
        while sum > target {
            let i = q.iter().position(|&x| x > 0).unwrap();
            q[i] -= 1;
            sum -= 1;
        }
        q.push(target - sum);
        let q = IntegerPartition::from_unsorted(q);
        let forward = p.dominance_compare(&q).unwrap();
        let back = q.conjugate().dominance_compare(&p.conjugate()).unwrap();
        prop_assert_eq!(forward, back);
    }

    #[test]
    fn dominance_agrees_with_prefix_sums(p in partition(), q in partition()) {
        match p.dominance_compare(&q) {
            Err(_) => prop_assert_ne!(p.total(), q.total()),
            Ok(d) => {
                let (ge, le) = (prefix_dominates(p.parts(), q.parts()), prefix_dominates(q.parts(), p.parts()));
                let want = match (ge, le) {
                    (true, true) => Dominance::Equal,
                    (true, false) => Dominance::Greater,
                    (false, true) => Dominance::Less,
                    (false, false) => Dominance::Incomparable,
                };
                prop_assert_eq!(d, want);
            }
        }
    }

    #[test]
    fn covers_are_dual(p in partition()) {
        for q in min_rightward_moves(&p) {
            prop_assert!(min_leftward_moves(&q).contains(&p));
            prop_assert_eq!(p.dominance_compare(&q).unwrap(), Dominance::Greater);
        }
        for q in min_leftward_moves(&p) {
            prop_assert!(min_rightward_moves(&q).contains(&p));
        }
    }

    #[test]
    fn trailing_zeros_are_insignificant(p in partition(), zeros in 0usize..4) {
        let mut padded = p.parts().to_vec();
        padded.extend(std::iter::repeat_n(0, zeros));
        prop_assert_eq!(IntegerPartition::new(padded).unwrap(), p.clone());
        prop_assert_eq!(p.cmp(&p), Ordering::Equal);
    }
}
