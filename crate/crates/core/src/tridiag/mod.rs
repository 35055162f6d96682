//! Tridiagonal matrices with a biperiodic diagonal: normal form, J-unitary block
//! reductions and entry-wise hyperbolicity certificates for orders 3 to 6.

mod blocks;
mod certify;
mod spec;

pub use blocks::{block_reduce4, block_reduce5, block_reduce6, block_residual, q4, q5, q6};
pub use certify::{
    certify, certify_order3, certify_order4, certify_order5, certify_order6, Certificate,
    Certificate3, Certificate4, Certificate5, Certificate6, FocalSet, Subcase4,
};
pub use spec::{normal_form, NormalForm, TridiagonalSpec};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::spectra::SpectraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TridiagError {
    #[error("unsupported order {0}; certificates exist for orders 3 to 6")]
    UnsupportedOrder(usize),
    #[error("field `{field}` has length {found}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("tridiagonal entries must be finite")]
    NonFinite,
    #[error("spec is not centrosymmetric up to subdiagonal swaps (mismatch {mismatch:e})")]
    NotCentrosymmetric { mismatch: f64 },
    #[error("matrix is not tridiagonal")]
    NotTridiagonal,
    #[error("diagonal is not biperiodic after the shift (deviation {deviation:e})")]
    NotBiperiodic { deviation: f64 },
    #[error("metric does not match the canonical signature for order {order}")]
    MetricMismatch { order: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}
