//! Krein-space numerical ranges of small complex matrices.
//!
//! The indefinite numerical range of `A` with respect to a signature `J` is
//! `W^J(A) = W+(A) ∪ -W-(A)`, where `W±(A) = {[Ax,x]_J : [x,x]_J = ±1}`.
//! This crate computes its support data by eigen-sweeps of `H_θ`, certifies
//! hyperbolic boundaries for structured tridiagonal matrices, classifies the range,
//! and checks every analytic claim against a Monte Carlo oracle.

pub mod algebra;
pub mod fixtures;
pub mod geometry;
pub mod oracle;
pub mod spectra;
pub mod tol;
pub mod tridiag;

pub use algebra::{
    cartesian_decompose, h_theta, indefinite_inner, is_j_unitary, j_adjoint, AlgebraError,
    CMatrix, CVector, Metric, Sign,
};
pub use num_complex::Complex64;
pub use geometry::{classify_range, Hyperbola, RangeClassification, RangeKind};
pub use spectra::{eig_dense, split_spectrum, support_bounds, SupportData};
pub use tridiag::{certify, Certificate, TridiagonalSpec};
