//! Complex matrix arithmetic and the Krein-space algebra built on a signature metric.

mod matrix;
mod metric;

pub use matrix::{format_complex, CMatrix, CVector};
pub use metric::{Metric, Sign};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("metric must have at least one entry")]
    EmptyMetric,
    #[error("metric entries must be ±1 (entry {index} is {value})")]
    BadMetricEntry { index: usize, value: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
}

fn check_vec(x: &CVector, j: &Metric) -> Result<(), AlgebraError> {
    j.check_dim(x.len())
}

/// `[x, y]_J = y* J x`.
pub fn indefinite_inner(x: &CVector, y: &CVector, j: &Metric) -> Result<Complex64, AlgebraError> {
    check_vec(x, j)?;
    check_vec(y, j)?;
    Ok(x.iter()
        .zip(y.iter())
        .zip(j.signs())
        .map(|((a, b), s)| b.conj() * a * s.value())
        .sum())
}

/// `A# = J A* J`. Entry `(i, j)` is `s_i s_j conj(a_ji)`.
pub fn j_adjoint(a: &CMatrix, j: &Metric) -> Result<CMatrix, AlgebraError> {
    j.check_dim(a.n())?;
    Ok(CMatrix::from_fn(a.n(), |r, c| {
        a[(c, r)].conj() * (j.sign(r) * j.sign(c))
    }))
}

/// Returns `(Re^J A, Im^J A)`, both J-Hermitian, with `A = Re + i Im`.
pub fn cartesian_decompose(a: &CMatrix, j: &Metric) -> Result<(CMatrix, CMatrix), AlgebraError> {
    let ah = j_adjoint(a, j)?;
    let re = (a + &ah).scale_real(0.5);
    let im = (a - &ah).scale(Complex64::new(0.0, -0.5));
    Ok((re, im))
}

/// `H_θ = Re^J A cos θ + Im^J A sin θ`, computed as `(e^{-iθ} A + e^{iθ} A#) / 2`.
pub fn h_theta(a: &CMatrix, j: &Metric, theta: f64) -> Result<CMatrix, AlgebraError> {
    let ah = j_adjoint(a, j)?;
    let w = Complex64::from_polar(0.5, -theta);
    Ok(&a.scale(w) + &ah.scale(w.conj()))
}

/// True when `max |U U# - I| <= tol`.
pub fn is_j_unitary(u: &CMatrix, j: &Metric, tol: f64) -> Result<bool, AlgebraError> {
    if !(tol > 0.0) {
        return Err(AlgebraError::BadTolerance(tol));
    }
    let uh = j_adjoint(u, j)?;
    Ok((u * &uh).max_diff(&CMatrix::identity(u.n())) <= tol)
}

/// Max-norm distance of `A` from its J-adjoint.
pub fn j_hermitian_defect(a: &CMatrix, j: &Metric) -> Result<f64, AlgebraError> {
    Ok(a.max_diff(&j_adjoint(a, j)?))
}

/// `Tr(A# A)`, real for every `A`.
pub fn trace_adj_product(a: &CMatrix, j: &Metric) -> Result<f64, AlgebraError> {
    Ok((&j_adjoint(a, j)? * a).trace().re)
}

/// Quotient `[A x, x]_J / [x, x]_J`; `None` for neutral `x`.
pub fn rayleigh_quotient(a: &CMatrix, x: &CVector, j: &Metric) -> Result<Option<Complex64>, AlgebraError> {
    let d = indefinite_inner(x, x, j)?.re;
    if d == 0.0 {
        return Ok(None);
    }
    Ok(Some(indefinite_inner(&a.mul_vec(x), x, j)? / d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn j2() -> Metric {
        Metric::from_entries(&[1, -1]).unwrap()
    }

    fn nilpotent() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        let e1 = CVector::basis(2, 0);
        let e2 = CVector::basis(2, 1);
        assert_eq!(indefinite_inner(&e1, &e1, &j2()).unwrap(), c(1.0, 0.0));
        assert_eq!(indefinite_inner(&e2, &e2, &j2()).unwrap(), c(-1.0, 0.0));
        let x = CVector::from_real(&[1.0, 1.0]);
        let y = CVector::from_real(&[1.0, -1.0]);
        assert_eq!(indefinite_inner(&x, &y, &j2()).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn inner_product_dimension_error() {
        let x = CVector::zeros(3);
        assert!(matches!(
            indefinite_inner(&x, &x, &j2()),
            Err(AlgebraError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn adjoint_of_nilpotent() {
        let ah = j_adjoint(&nilpotent(), &j2()).unwrap();
        let expected = CMatrix::from_real_rows(&[&[0.0, 0.0], &[-1.0, 0.0]]).unwrap();
        assert_eq!(ah, expected);
        let plain = j_adjoint(&nilpotent(), &Metric::identity(2)).unwrap();
        assert_eq!(plain, nilpotent().adjoint());
    }

    #[test]
    fn cartesian_parts_of_nilpotent() {
        let (re, im) = cartesian_decompose(&nilpotent(), &j2()).unwrap();
        let re_exp = CMatrix::from_real_rows(&[&[0.0, 0.5], &[-0.5, 0.0]]).unwrap();
        let im_exp =
            CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -0.5)], vec![c(0.0, -0.5), c(0.0, 0.0)]])
                .unwrap();
        assert!(re.max_diff(&re_exp) < 1e-15);
        assert!(im.max_diff(&im_exp) < 1e-15);
        let back = &re + &im.scale(c(0.0, 1.0));
        assert!(back.max_diff(&nilpotent()) < 1e-15);
    }

    #[test]
    fn h_theta_endpoints() {
        let a = CMatrix::from_rows(vec![
            vec![c(1.0, 2.0), c(0.5, -1.0)],
            vec![c(3.0, 0.0), c(-2.0, 0.5)],
        ])
        .unwrap();
        let (re, im) = cartesian_decompose(&a, &j2()).unwrap();
        assert!(h_theta(&a, &j2(), 0.0).unwrap().max_diff(&re) < 1e-15);
        assert!(h_theta(&a, &j2(), std::f64::consts::FRAC_PI_2).unwrap().max_diff(&im) < 1e-15);
        let h1 = h_theta(&a, &j2(), 0.3).unwrap();
        let h2 = h_theta(&a, &j2(), 0.3 + std::f64::consts::PI).unwrap();
        assert!((&h1 + &h2).max_norm() < 1e-14);
        assert!(j_hermitian_defect(&h1, &j2()).unwrap() < 1e-15);
    }

    #[test]
    fn diagonal_phases_are_j_unitary() {
        let u = CMatrix::from_diag(&[Complex64::from_polar(1.0, 0.7), c(1.0, 0.0)]);
        assert!(is_j_unitary(&u, &j2(), 1e-12).unwrap());
        assert!(!is_j_unitary(&nilpotent(), &j2(), 1e-12).unwrap());
        assert!(is_j_unitary(&u, &j2(), 0.0).is_err());
    }

    #[test]
    fn hyperbolic_rotation_is_j_unitary() {
        let (ch, sh) = (0.8f64.cosh(), 0.8f64.sinh());
        let u = CMatrix::from_real_rows(&[&[ch, sh], &[sh, ch]]).unwrap();
        assert!(is_j_unitary(&u, &j2(), 1e-12).unwrap());
    }
}
