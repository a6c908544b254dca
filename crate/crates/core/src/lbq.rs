//! The lattice-Boussinesq convergence acceleration algorithm.
//!
//! The two-dimensional lattice `U_k^n` is filled level by level from
//!
//! ```text
//! U_1^n = 0,   U_2^n = n,   U_3^n = S_n,
//! U_{k+3}^n = U_k^{n+1} - 1 / ((U_{k+2}^{n+1} - U_{k+2}^n) (U_{k+1}^{n+1} - U_{k+1}^n)),
//! ```
//!
//! and the transform is read off every third level, `T_k^(n) = U_{3k+3}^n`.
//! Level `L ≥ 3` depends on `S_n ..= S_{n+L-3}`, so `T_k^(n)` consumes the
//! window `S_n ..= S_{n+3k}`.

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Scalar};
use crate::sequence::Sequence;
use crate::table::{TransformEntry, TransformTable};

/// Elements of `S` consumed per transform order.
pub const LBQ_SPAN: usize = 3;

/// Guard applied to every difference a recursion divides by.
///
/// A difference that is exactly zero or not finite always breaks down. In
/// floating modes a positive `relative` threshold also rejects differences
/// whose magnitude is below `relative` times the larger operand. The default
/// is 0: converged lattice levels legitimately differ by a few ulps, and
/// any larger relative cut discards usable high-order entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakdownGuard {
    relative: f64,
}

impl BreakdownGuard {
    pub const DEFAULT_RELATIVE: f64 = 0.0;

    pub fn new(relative: f64) -> Result<Self> {
        if !(relative >= 0.0 && relative.is_finite()) {
            return Err(Error::Spec(format!(
                "breakdown threshold must be finite and non-negative, got {relative}"
            )));
        }
        Ok(BreakdownGuard { relative })
    }

    pub fn relative(self) -> f64 {
        self.relative
    }

    /// `hi - lo`, or `None` if the difference is too small to divide by.
    pub fn difference<T: Scalar>(self, hi: &T, lo: &T) -> Option<T> {
        let d = hi.clone() - lo.clone();
        if d.is_zero() || !d.is_finite() {
            return None;
        }
        if !T::EXACT && self.relative > 0.0 {
            let scale = max_abs(hi, lo) * T::from_f64(self.relative, d.context());
            if d.abs() < scale {
                return None;
            }
        }
        Some(d)
    }
}

impl Default for BreakdownGuard {
    fn default() -> Self {
        BreakdownGuard {
            relative: Self::DEFAULT_RELATIVE,
        }
    }
}

/// The lattice `U_k^n`, stored level by level over the labels of the source
/// sequence.
#[derive(Debug, Clone)]
pub struct LatticeTable<T: Scalar> {
    /// `levels[k - 1][i]` is `U_k^{n0 + i}`.
    levels: Vec<Vec<TransformEntry<T>>>,
    source: Sequence<T>,
    guard: BreakdownGuard,
}

/// Levels 1-3 of the lattice: `U_1 = 0`, `U_2 = n`, `U_3 = S_n`.
pub fn init_lattice<T: Scalar>(seq: &Sequence<T>, guard: BreakdownGuard) -> LatticeTable<T> {
    LatticeTable::with_label_offset(seq, guard, T::zero(seq.context()))
}

impl<T: Scalar> LatticeTable<T> {
    /// Like [`init_lattice`] but with `U_2^n = n + offset`. The transform
    /// does not depend on the offset.
    pub fn with_label_offset(seq: &Sequence<T>, guard: BreakdownGuard, offset: T) -> Self {
        let ctx = seq.context();
        let level1 = vec![TransformEntry::Valid(T::zero(ctx)); seq.len()];
        let level2 = seq
            .labels()
            .map(|n| TransformEntry::Valid(T::from_i64(n, ctx) + offset.clone()))
            .collect();
        let level3 = seq
            .values()
            .iter()
            .cloned()
            .map(TransformEntry::Valid)
            .collect();
        LatticeTable {
            levels: vec![level1, level2, level3],
            source: seq.clone(),
            guard,
        }
    }

    pub fn source(&self) -> &Sequence<T> {
        &self.source
    }

    pub fn guard(&self) -> BreakdownGuard {
        self.guard
    }

    /// Highest level computed so far.
    pub fn top_level(&self) -> usize {
        self.levels.len()
    }

    /// Row `U_k^·`, indexed from the source's start label.
    pub fn level(&self, k: usize) -> Option<&[TransformEntry<T>]> {
        k.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map(Vec::as_slice)
    }

    /// `U_k^n`, or `Unavailable` outside the computed region.
    pub fn get(&self, k: usize, n: i64) -> TransformEntry<T> {
        let idx = n - self.source.start_label();
        self.level(k)
            .and_then(|row| usize::try_from(idx).ok().and_then(|i| row.get(i)))
            .cloned()
            .unwrap_or(TransformEntry::Unavailable)
    }

    /// Whether another level can be appended.
    pub fn can_extend(&self) -> bool {
        self.levels.last().map_or(0, Vec::len) >= 2
    }

    /// Appends the next level from the three below it.
    pub fn extend_level(&mut self) -> Result<()> {
        if !self.can_extend() {
            return Err(Error::window(format!(
                "level {} has fewer than two entries; cannot build level {}",
                self.top_level(),
                self.top_level() + 1
            )));
        }
        let top = self.levels.len();
        let (base, mid, upper) = (
            &self.levels[top - 3],
            &self.levels[top - 2],
            &self.levels[top - 1],
        );
        let len = base.len().min(mid.len()).min(upper.len()) - 1;
        let guard = self.guard;
        let next = (0..len)
            .map(|i| {
                lattice_cell(
                    guard,
                    &base[i + 1],
                    (&mid[i], &mid[i + 1]),
                    (&upper[i], &upper[i + 1]),
                )
            })
            .collect();
        self.levels.push(next);
        Ok(())
    }

    /// Extends until `level` exists or no further level is computable.
    pub fn extend_to(&mut self, level: usize) {
        while self.top_level() < level && self.can_extend() {
            self.extend_level().expect("extension checked above");
        }
    }

    /// `T_k^(n) = U_{3k+3}^n` for `k ≤ max_order`, extending as needed.
    pub fn transform_table(&mut self, max_order: usize) -> TransformTable<T> {
        self.extend_to(3 * max_order + 3);
        let n_in = self.source.len();
        let columns = (0..=max_order)
            .map(|k| {
                let want = n_in.saturating_sub(LBQ_SPAN * k);
                match self.level(3 * k + 3) {
                    Some(row) => row[..want].to_vec(),
                    None => Vec::new(),
                }
            })
            .collect();
        TransformTable::from_columns(self.source.start_label(), n_in, LBQ_SPAN, columns)
    }
}

/// One application of the lattice recursion.
fn lattice_cell<T: Scalar>(
    guard: BreakdownGuard,
    shifted: &TransformEntry<T>,
    mid: (&TransformEntry<T>, &TransformEntry<T>),
    upper: (&TransformEntry<T>, &TransformEntry<T>),
) -> TransformEntry<T> {
    let (Some(a), Some(m0), Some(m1), Some(u0), Some(u1)) = (
        shifted.value(),
        mid.0.value(),
        mid.1.value(),
        upper.0.value(),
        upper.1.value(),
    ) else {
        return TransformEntry::Breakdown;
    };
    let (Some(du), Some(dm)) = (guard.difference(u1, u0), guard.difference(m1, m0)) else {
        return TransformEntry::Breakdown;
    };
    let product = du * dm;
    if product.is_zero() || !product.is_finite() {
        return TransformEntry::Breakdown;
    }
    let value = a.clone() - T::one(product.context()) / product;
    if value.is_finite() {
        TransformEntry::Valid(value)
    } else {
        TransformEntry::Breakdown
    }
}

/// The lattice-Boussinesq transform table `T_k^(n)`, `0 ≤ k ≤ max_order`.
pub fn lbq_transform<T: Scalar>(
    seq: &Sequence<T>,
    max_order: usize,
    guard: BreakdownGuard,
) -> TransformTable<T> {
    init_lattice(seq, guard).transform_table(max_order)
}
