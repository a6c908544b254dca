use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::scalar::Scalar;
use crate::sequence::Sequence;

/// A sequence `S_n = S + Σ_j c_j r_j^n` certified to satisfy
/// `S_n = S + Σ_i a_i Δ^{2i} S_n` with the recorded constants `a_i`,
/// which places it in the kernel of `T_k` for `k = ratios.len()`.
#[derive(Debug, Clone)]
pub struct KernelSequence<T: Scalar> {
    pub sequence: Sequence<T>,
    pub limit: T,
    /// `a_1, ..., a_k`.
    pub coefficients: Vec<T>,
}

/// Builds a kernel sequence from distinct ratios `r_j ≠ 1` and nonzero
/// weights `c_j`.
///
/// Since `Δ^{2i} r^n = (r-1)^{2i} r^n`, the constants `a_i` solve
/// `Σ_i a_i (r_j - 1)^{2i} = 1` for every `j`; inputs for which that system
/// is singular are rejected with [`Error::KernelDegeneracy`].
pub fn kernel_construct<T: Scalar>(
    limit: &T,
    ratios: &[T],
    weights: &[T],
    start_label: i64,
    len: usize,
) -> Result<KernelSequence<T>> {
    if ratios.is_empty() || ratios.len() != weights.len() {
        return Err(Error::Spec(format!(
            "need matching nonempty ratio and weight lists, got {} and {}",
            ratios.len(),
            weights.len()
        )));
    }
    if weights.iter().any(Scalar::is_zero) {
        return Err(Error::Spec("kernel weights must be nonzero".into()));
    }
    for (i, r) in ratios.iter().enumerate() {
        if ratios[..i].contains(r) {
            return Err(Error::Spec(format!("ratio {r} appears twice")));
        }
    }
    let ctx = limit.context();
    let one = T::one(ctx);
    if let Some(r) = ratios.iter().find(|r| **r == one) {
        return Err(Error::KernelDegeneracy(format!(
            "ratio {r}: (r - 1)^2 vanishes"
        )));
    }

    let k = ratios.len();
    let system: Vec<Vec<T>> = ratios
        .iter()
        .map(|r| {
            let sq = (r.clone() - one.clone()) * (r.clone() - one.clone());
            let mut row = Vec::with_capacity(k);
            let mut p = sq.clone();
            for _ in 0..k {
                row.push(p.clone());
                p = p * sq.clone();
            }
            row
        })
        .collect();
    let coefficients = solve(&system, &vec![one; k])
        .map_err(|e| Error::KernelDegeneracy(format!("coefficient system is singular ({e})")))?;

    let mut values = Vec::with_capacity(len);
    for i in 0..len as i64 {
        let n = start_label + i;
        let mut v = limit.clone();
        for (r, c) in ratios.iter().zip(weights) {
            let rn = r
                .powi(n)
                .ok_or_else(|| Error::Spec(format!("ratio {r} raised to label {n}")))?;
            v = v + c.clone() * rn;
        }
        values.push(v);
    }
    Ok(KernelSequence {
        sequence: Sequence::new(start_label, values)?,
        limit: limit.clone(),
        coefficients,
    })
}
