use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundary::{sweep_samples, ThetaSample};
use super::{hyperbola_from_fit, GeometryError, Hyperbola, HyperbolaFitParams};
use crate::algebra::{CMatrix, Metric};
use crate::tol;

type C64 = Complex64;

/// Least squares for a small dense system via normal equations and Gaussian
/// elimination with partial pivoting.
fn lstsq<const K: usize>(rows: &[[f64; K]], rhs: &[f64]) -> Option<[f64; K]> {
    let mut m = [[0.0; K]; K];
    let mut v = [0.0; K];
    for (r, &y) in rows.iter().zip(rhs) {
        for i in 0..K {
            v[i] += r[i] * y;
            for k in 0..K {
                m[i][k] += r[i] * r[k];
            }
        }
    }
    for col in 0..K {
        let piv = (col..K).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        v.swap(col, piv);
        for row in col + 1..K {
            let f = m[row][col] / m[col][col];
            for k in col..K {
                m[row][k] -= f * m[col][k];
            }
            v[row] -= f * v[col];
        }
    }
    let mut x = [0.0; K];
    for row in (0..K).rev() {
        let s: f64 = (row + 1..K).map(|k| m[row][k] * x[k]).sum();
        x[row] = (v[row] - s) / m[row][row];
    }
    Some(x)
}

fn valid_bounds(samples: &[ThetaSample]) -> Vec<(f64, f64, f64)> {
    samples
        .iter()
        .filter_map(|s| Some((s.support.theta, s.support.lambda_l?, s.support.lambda_r?)))
        .collect()
}

fn fit_pqt(data: &[(f64, f64)]) -> Result<(HyperbolaFitParams, f64), GeometryError> {
    let rows: Vec<[f64; 3]> = data
        .iter()
        .map(|&(t, _)| [1.0, (2.0 * t).cos(), (2.0 * t).sin()])
        .collect();
    let rhs: Vec<f64> = data.iter().map(|d| d.1).collect();
    let [p, q, t] = lstsq(&rows, &rhs).ok_or(GeometryError::TooFewSamples { found: data.len() })?;
    let params = HyperbolaFitParams::new(p, q, t)?;
    let resid = data
        .iter()
        .map(|&(th, y)| (y - params.model(th)).abs())
        .fold(0.0, f64::max);
    Ok((params, resid))
}

pub(crate) fn fit_quadratic_samples(samples: &[ThetaSample]) -> Result<(HyperbolaFitParams, f64), GeometryError> {
    let b = valid_bounds(samples);
    if b.len() < 3 {
        return Err(GeometryError::TooFewSamples { found: b.len() });
    }
    let data: Vec<(f64, f64)> = b.iter().map(|&(t, _, r)| (t, r * r)).collect();
    let (params, resid) = fit_pqt(&data)?;
    let sym = b.iter().map(|&(_, l, r)| (l + r).abs()).fold(0.0, f64::max);
    Ok((params, resid.max(sym)))
}

/// Fits `λ_R(θ)² = p + q cos 2θ + t sin 2θ` over the valid angles of `grid`, for ranges
/// centered at the origin. The residual also includes `max |λ_L + λ_R|`.
pub fn fit_quadratic(a: &CMatrix, j: &Metric, grid: &[f64]) -> Result<(HyperbolaFitParams, f64), GeometryError> {
    fit_quadratic_samples(&sweep_samples(a, j, grid, tol::DEFAULT_TOL)?)
}

/// A hyperbola fitted to support data with a free center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaFit {
    pub hyperbola: Hyperbola,
    pub params: HyperbolaFitParams,
    pub center: C64,
    /// Max deviation of the midpoint and of the squared half-width from the model.
    pub residual: f64,
    pub samples: usize,
}

pub(crate) fn fit_hyperbola_samples(samples: &[ThetaSample]) -> Result<HyperbolaFit, GeometryError> {
    let b = valid_bounds(samples);
    if b.len() < 3 {
        return Err(GeometryError::TooFewSamples { found: b.len() });
    }
    let rows: Vec<[f64; 2]> = b.iter().map(|&(t, _, _)| [t.cos(), t.sin()]).collect();
    let mids: Vec<f64> = b.iter().map(|&(_, l, r)| 0.5 * (l + r)).collect();
    let [cx, cy] = lstsq(&rows, &mids).ok_or(GeometryError::TooFewSamples { found: b.len() })?;
    let mid_resid = b
        .iter()
        .zip(&mids)
        .map(|(&(t, _, _), &m)| (m - cx * t.cos() - cy * t.sin()).abs())
        .fold(0.0, f64::max);
    let data: Vec<(f64, f64)> = b.iter().map(|&(t, l, r)| (t, (0.5 * (r - l)).powi(2))).collect();
    let (params, resid) = fit_pqt(&data)?;
    let center = C64::new(cx, cy);
    Ok(HyperbolaFit {
        hyperbola: hyperbola_from_fit(&params, center)?,
        params,
        center,
        residual: resid.max(mid_resid),
        samples: b.len(),
    })
}

/// Fits a hyperbola with free center to the support bounds over the valid angles of
/// `grid`: the strip midpoint is `Re(c) cos θ + Im(c) sin θ` and the squared
/// half-width follows the `(p, q, t)` model.
pub fn fit_hyperbola(a: &CMatrix, j: &Metric, grid: &[f64]) -> Result<HyperbolaFit, GeometryError> {
    fit_hyperbola_samples(&sweep_samples(a, j, grid, tol::DEFAULT_TOL)?)
}
