//! Eigen-decomposition of small dense matrices and the spectral data of `H_θ(A)`:
//! sign splitting, support bounds, validity windows and the generating polynomial.

mod closed_form;
mod eigen;
mod poly;
mod split;
mod support;

pub use closed_form::{char_poly, closed_form_eigenvalues};
pub use eigen::{eig_dense, eigenvalues, hermitian_eigen, schur, EigenPair, Schur, MAX_ORDER};
pub use poly::{curve_form, curve_poly_eval, knr_poly_eval, pencil_determinant, Monomial, TernaryForm};
pub(crate) use split::split_pairs;
pub use split::{j_eigenpairs, split_spectrum, Branch, NeutralEigen, SpectrumSplit, SplitStatus};
pub use support::{
    longest_valid_run, omega_window, support_bounds, support_bounds_with, support_sweep,
    uniform_grid, window_from_sweep, SupportData, ThetaWindow,
};

use thiserror::Error;

use crate::algebra::{AlgebraError, CMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("QR iteration did not converge after {iterations} iterations for matrix\n{matrix}")]
    NoConvergence { iterations: usize, matrix: CMatrix },
    #[error("order {n} exceeds the dense solver limit of {MAX_ORDER}")]
    TooLarge { n: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is not J-Hermitian (defect {defect:e})")]
    NotJHermitian { defect: f64 },
    #[error("metric is definite; support bounds need 0 < r < n")]
    DefiniteMetric,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}
