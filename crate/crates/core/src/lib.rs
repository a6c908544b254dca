//! Sequence transformations built on the lattice-Boussinesq recursion.
//!
//! The crate provides:
//!
//! * [`lbq`]: the convergence acceleration algorithm driven by the lattice
//!   equation `U_{k+3}^n = U_k^{n+1} - 1/((U_{k+2}^{n+1} - U_{k+2}^n)(U_{k+1}^{n+1} - U_{k+1}^n))`
//!   with `U_1 = 0`, `U_2 = n`, `U_3 = S_n`, read off as `T_k^(n) = U_{3k+3}^n`;
//! * [`oracle`]: an independent determinant evaluation of the same
//!   transform, the determinant (molecule) solution of the bilinear form,
//!   and construction of sequences in the transform's kernel;
//! * [`epsilon`]: Wynn's ε-algorithm as a baseline;
//! * [`seqgen`] and [`analysis`]: test sequences, file ingestion, and
//!   convergence diagnostics.
//!
//! All algorithms are generic over [`Scalar`]: `f64`, [`BigFloat`] or exact
//! [`Rational`] arithmetic.

pub mod analysis;
pub mod epsilon;
mod error;
pub mod lbq;
pub mod linalg;
pub mod oracle;
pub mod scalar;
pub mod seqgen;
mod sequence;
mod table;

pub use error::{Error, Result};
pub use lbq::{lbq_transform, BreakdownGuard, LatticeTable};
pub use scalar::{BigFloat, Precision, Rational, Scalar, ScalarMode};
pub use sequence::Sequence;
pub use table::{TransformEntry, TransformTable};
