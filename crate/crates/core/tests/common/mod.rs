#![allow(dead_code)]

use lbq_core::{Rational, Sequence};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Entries `p/q` with `|p| ≤ 20`, `1 ≤ q ≤ 10`.
pub fn random_rational_sequence(
    rng: &mut ChaCha8Rng,
    start: i64,
    len: usize,
) -> Sequence<Rational> {
    let values = (0..len)
        .map(|_| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=10)))
        .collect();
    Sequence::new(start, values).unwrap()
}
