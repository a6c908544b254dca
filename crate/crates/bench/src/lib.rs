//! Inputs shared by the benchmarks.

use lbq_core::seqgen::{generate, Family, GeneratorSpec};
use lbq_core::{Rational, Scalar, Sequence};

/// The first `count` partial sums of `Σ 1/k²` in any mode.
pub fn zeta2<T: Scalar>(count: usize, ctx: T::Context) -> Sequence<T> {
    generate::<T>(&GeneratorSpec::new(Family::Zeta2, count, 1), ctx)
        .expect("valid generator")
        .sequence
}

/// A fixed rational sequence with unstructured entries `p/q`.
pub fn scrambled_rationals(len: usize) -> Sequence<Rational> {
    Sequence::from_fn(0, len, |n| {
        Rational::new((n * 7 + 3) % 41 - 20, (n * 5 + 1) % 10 + 1)
    })
    .expect("nonempty")
}
