// Integer partitions as coin tables: dominance, conjugation and the
// minimal coin moves that generate dominance covers.

use pencil_strata::partitions::{
    all_partitions, min_leftward_moves, min_rightward_moves, vertical_pair_leftward_moves,
    IntegerPartition,
};

fn p(parts: &[usize]) -> IntegerPartition {
    IntegerPartition::from(parts)
}

pub fn run_example() {
    let a = p(&[3, 1, 1]);
    let b = p(&[2, 2, 2]);
    match a.dominance_compare(&b) {
        Ok(order) => println!("{a} vs {b}: {order:?}"),
        Err(e) => println!("{a} vs {b}: {e}"),
    }
    println!("{a} vs (2,2): {}", a.dominance_compare(&p(&[2, 2])).unwrap_err());
    println!("conjugate of {a} is {}", a.conjugate());

    for q in [p(&[2, 2]), p(&[3, 1]), p(&[2, 2, 1, 1])] {
        println!(
            "{q}: lower covers {:?}, upper covers {:?}",
            min_rightward_moves(&q),
            min_leftward_moves(&q)
        );
    }
    println!(
        "vertical pairs on (2,2,2): {:?}",
        vertical_pair_leftward_moves(&p(&[2, 2, 2])).unwrap()
    );

    let sixes = all_partitions(6);
    let edges: usize = sixes.iter().map(|q| min_rightward_moves(q).len()).sum();
    println!("partitions of 6: {}, dominance covers: {edges}", sixes.len());
    assert_eq!(sixes.len(), 11);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
