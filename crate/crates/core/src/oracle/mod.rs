//! Determinant-based evaluation of the transform, independent of the
//! lattice recursion in [`crate::lbq`].
//!
//! For a sequence `v` the Hankel-like determinants are
//!
//! ```text
//!            | v_n            ...  v_{n+k-1}           |
//! Ψ_k(v_n) = | Δ²v_n          ...  Δ²v_{n+k-1}         |
//!            | ...                                     |
//!            | Δ^{2k-2}v_n    ...  Δ^{2k-2}v_{n+k-1}   |
//! ```
//!
//! and `Φ_k(v_n)`, which replaces the last row by a leading row of labels
//! `n ... n+k-1`; `Ψ_{-1} = Φ_{-1} = 0` and `Ψ_0 = Φ_0 = 1`.

mod kernel;
mod molecule;

pub use kernel::{kernel_construct, KernelSequence};
pub use molecule::{
    check_bilinear, molecule_solution, BilinearEquation, BilinearReport, MoleculeSolution, Residual,
};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::scalar::Scalar;
use crate::sequence::{Differences, Sequence};

/// `Ψ_k(v_n)`. For `k ≥ 1` the window `v_n ..= v_{n+3k-3}` must be stored.
pub fn psi_det<T: Scalar>(v: &Sequence<T>, k: i64, n: i64) -> Result<T> {
    let diffs = Differences::new(v);
    psi_from(&diffs, 0, k, n, v.context()).ok_or_else(|| {
        Error::window(format!(
            "Ψ_{k} at label {n} needs v_{n}..=v_{}, stored {}..={}",
            n + 3 * k - 3,
            v.start_label(),
            v.end_label()
        ))
    })
}

/// `Φ_k(v_n)`. For `k ≥ 2` the window `v_n ..= v_{n+3k-5}` must be stored;
/// `Φ_1(v_n) = n` reads no elements.
pub fn phi_det<T: Scalar>(v: &Sequence<T>, k: i64, n: i64) -> Result<T> {
    let diffs = Differences::new(v);
    phi_from(&diffs, 0, k, n, v.context()).ok_or_else(|| {
        Error::window(format!(
            "Φ_{k} at label {n} needs v_{n}..=v_{}, stored {}..={}",
            n + 3 * k - 5,
            v.start_label(),
            v.end_label()
        ))
    })
}

/// `Ψ_k(Δ^d S_n)` from a precomputed difference table; `None` when the
/// window is missing or `k < -1`.
pub(crate) fn psi_from<T: Scalar>(
    diffs: &Differences<T>,
    d: usize,
    k: i64,
    n: i64,
    ctx: T::Context,
) -> Option<T> {
    match k {
        -1 => Some(T::zero(ctx)),
        0 => Some(T::one(ctx)),
        k if k < -1 => None,
        k => {
            let size = k as usize;
            let rows = (0..size)
                .map(|r| {
                    (0..size)
                        .map(|c| diffs.get(d + 2 * r, n + c as i64).cloned())
                        .collect::<Option<Vec<T>>>()
                })
                .collect::<Option<Vec<_>>>()?;
            Some(determinant(&rows, ctx).value)
        }
    }
}

/// `Φ_k(Δ^d S_n)`; see [`psi_from`].
pub(crate) fn phi_from<T: Scalar>(
    diffs: &Differences<T>,
    d: usize,
    k: i64,
    n: i64,
    ctx: T::Context,
) -> Option<T> {
    match k {
        -1 => Some(T::zero(ctx)),
        0 => Some(T::one(ctx)),
        k if k < -1 => None,
        k => {
            let size = k as usize;
            let mut rows = vec![(0..size)
                .map(|c| T::from_i64(n + c as i64, ctx))
                .collect::<Vec<T>>()];
            for r in 0..size - 1 {
                let row = (0..size)
                    .map(|c| diffs.get(d + 2 * r, n + c as i64).cloned())
                    .collect::<Option<Vec<T>>>()?;
                rows.push(row);
            }
            Some(determinant(&rows, ctx).value)
        }
    }
}

/// Rows `Δ^2 S, Δ^4 S, ..., Δ^{2k} S` over columns `n ..= n+k`, below the
/// given first row.
fn transform_matrix<T: Scalar>(
    diffs: &Differences<T>,
    first: Vec<T>,
    k: usize,
    n: i64,
) -> Option<Vec<Vec<T>>> {
    let mut rows = vec![first];
    for r in 1..=k {
        rows.push(
            (0..=k)
                .map(|c| diffs.get(2 * r, n + c as i64).cloned())
                .collect::<Option<Vec<T>>>()?,
        );
    }
    Some(rows)
}

fn check_transform_window<T: Scalar>(seq: &Sequence<T>, k: usize, n: i64) -> Result<()> {
    let last = n + 3 * k as i64;
    if n < seq.start_label() || last > seq.end_label() {
        return Err(Error::window(format!(
            "T_{k}^({n}) needs S_{n}..=S_{last}, stored {}..={}",
            seq.start_label(),
            seq.end_label()
        )));
    }
    Ok(())
}

/// Numerator of the determinant ratio: first row `S_n ... S_{n+k}`.
pub fn t_numerator<T: Scalar>(seq: &Sequence<T>, k: usize, n: i64) -> Result<T> {
    check_transform_window(seq, k, n)?;
    let diffs = Differences::new(seq);
    let first = (0..=k)
        .map(|c| seq.get(n + c as i64).cloned())
        .collect::<Result<Vec<T>>>()?;
    let rows = transform_matrix(&diffs, first, k, n).expect("window checked");
    Ok(determinant(&rows, seq.context()).value)
}

/// Denominator of the determinant ratio: first row all ones.
pub fn t_denominator<T: Scalar>(seq: &Sequence<T>, k: usize, n: i64) -> Result<T> {
    check_transform_window(seq, k, n)?;
    let diffs = Differences::new(seq);
    let ctx = seq.context();
    let rows = transform_matrix(&diffs, vec![T::one(ctx); k + 1], k, n).expect("window checked");
    Ok(determinant(&rows, ctx).value)
}

/// `T_k^(n)` as the ratio of two `(k+1)×(k+1)` determinants whose first rows
/// are `S_{n..n+k}` and ones, followed by rows `Δ^{2i} S_{n..n+k}` for
/// `i = 1..k`.
pub fn t_determinant<T: Scalar>(seq: &Sequence<T>, k: usize, n: i64) -> Result<T> {
    let den = t_denominator(seq, k, n)?;
    if den.is_zero() || !den.is_finite() {
        return Err(Error::Singular(format!(
            "denominator of T_{k}^({n}) vanishes"
        )));
    }
    Ok(t_numerator(seq, k, n)? / den)
}
