//! Wynn's ε-algorithm:
//!
//! ```text
//! ε_{-1}^(n) = 0,   ε_0^(n) = S_n,
//! ε_{k+1}^(n) = ε_{k-1}^(n+1) + 1 / (ε_k^(n+1) - ε_k^(n)).
//! ```
//!
//! Only the even columns approximate the limit; the odd ones are auxiliary
//! and stay internal. `ε_{2k}^(n)` consumes `S_n ..= S_{n+2k}`.

use crate::lbq::BreakdownGuard;
use crate::scalar::Scalar;
use crate::sequence::Sequence;
use crate::table::{TransformEntry, TransformTable};

pub const EPSILON_SPAN: usize = 2;

/// Table whose entry `(k, n)` is `ε_{2k}^(n)`, for `k ≤ max_order`.
pub fn epsilon_transform<T: Scalar>(
    seq: &Sequence<T>,
    max_order: usize,
    guard: BreakdownGuard,
) -> TransformTable<T> {
    let ctx = seq.context();
    let mut prev: Vec<TransformEntry<T>> = vec![TransformEntry::Valid(T::zero(ctx)); seq.len() + 1];
    let mut cur: Vec<TransformEntry<T>> = seq
        .values()
        .iter()
        .cloned()
        .map(TransformEntry::Valid)
        .collect();
    let mut columns = vec![cur.clone()];

    for j in 1..=2 * max_order {
        if cur.len() < 2 {
            // nothing further is computable; pad the remaining even columns
            if j % 2 == 0 {
                columns.push(Vec::new());
            }
            continue;
        }
        let next: Vec<TransformEntry<T>> = (0..cur.len() - 1)
            .map(|i| epsilon_cell(guard, &prev[i + 1], &cur[i], &cur[i + 1]))
            .collect();
        prev = std::mem::replace(&mut cur, next);
        if j % 2 == 0 {
            columns.push(cur.clone());
        }
    }
    TransformTable::from_columns(seq.start_label(), seq.len(), EPSILON_SPAN, columns)
}

fn epsilon_cell<T: Scalar>(
    guard: BreakdownGuard,
    below: &TransformEntry<T>,
    lo: &TransformEntry<T>,
    hi: &TransformEntry<T>,
) -> TransformEntry<T> {
    let (Some(b), Some(lo), Some(hi)) = (below.value(), lo.value(), hi.value()) else {
        return TransformEntry::Breakdown;
    };
    let Some(d) = guard.difference(hi, lo) else {
        return TransformEntry::Breakdown;
    };
    let v = b.clone() + T::one(d.context()) / d;
    if v.is_finite() {
        TransformEntry::Valid(v)
    } else {
        TransformEntry::Breakdown
    }
}
