//! Support bounds `λ_L(θ)`, `λ_R(θ)` and the validity window over which they exist.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::split::{split_spectrum, Branch, SplitStatus};
use super::SpectraError;
use crate::algebra::{h_theta, CMatrix, Metric};
use crate::tol;

/// Support data of `W^J(A)` in direction `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportData {
    pub theta: f64,
    pub lambda_l: Option<f64>,
    pub lambda_r: Option<f64>,
    pub valid: bool,
    pub status: SplitStatus,
}

impl SupportData {
    pub fn branch(&self) -> Option<Branch> {
        match self.status {
            SplitStatus::Separated(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_interlacing(&self) -> bool {
        self.status == SplitStatus::Interlacing
    }
}

/// `θ_k = 2πk/n`, `k = 0..n`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// Support bounds at `θ` with the default tolerance.
pub fn support_bounds(a: &CMatrix, j: &Metric, theta: f64) -> Result<SupportData, SpectraError> {
    support_bounds_with(a, j, theta, tol::DEFAULT_TOL)
}

pub fn support_bounds_with(
    a: &CMatrix,
    j: &Metric,
    theta: f64,
    tol: f64,
) -> Result<SupportData, SpectraError> {
    if j.is_definite() {
        return Err(SpectraError::DefiniteMetric);
    }
    let h = h_theta(a, j, theta)?;
    let split = split_spectrum(&h, j, tol)?;
    let pair = split.support_pair();
    Ok(SupportData {
        theta,
        lambda_l: pair.map(|p| p.0),
        lambda_r: pair.map(|p| p.1),
        valid: pair.is_some(),
        status: split.status,
    })
}

/// Support bounds over a list of angles, evaluated in parallel.
pub fn support_sweep(
    a: &CMatrix,
    j: &Metric,
    thetas: &[f64],
    tol: f64,
) -> Result<Vec<SupportData>, SpectraError> {
    thetas
        .par_iter()
        .map(|&t| support_bounds_with(a, j, t, tol))
        .collect()
}

/// An open angular interval `(start, end)` with `start < end <= start + 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaWindow {
    pub start: f64,
    pub end: f64,
    /// Every sampled angle was valid.
    pub full: bool,
}

impl ThetaWindow {
    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, theta: f64) -> bool {
        if self.full {
            return true;
        }
        let t = self.start + (theta - self.start).rem_euclid(TAU);
        t > self.start && t < self.end
    }

    /// `k` equally spaced interior angles, keeping `margin` (a fraction of the width)
    /// away from each end.
    pub fn interior_samples(&self, k: usize, margin: f64) -> Vec<f64> {
        let w = self.width();
        let lo = self.start + margin * w;
        let hi = self.end - margin * w;
        if k == 1 {
            return vec![0.5 * (lo + hi)];
        }
        (0..k)
            .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
            .collect()
    }

    /// The window shifted by `π`, where validity recurs since `H_{θ+π} = -H_θ`.
    pub fn opposite(&self) -> ThetaWindow {
        ThetaWindow {
            start: self.start + PI,
            end: self.end + PI,
            full: self.full,
        }
    }
}

/// Longest run of valid consecutive grid angles, as `(first, len)` in grid indices,
/// treating the grid as circular. `None` when nothing is valid.
pub fn longest_valid_run(valid: &[bool]) -> Option<(usize, usize)> {
    let n = valid.len();
    if n == 0 || !valid.iter().any(|&v| v) {
        return None;
    }
    if valid.iter().all(|&v| v) {
        return Some((0, n));
    }
    let origin = (0..n).find(|&i| !valid[i]).unwrap();
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = None;
    for step in 1..=n {
        let i = (origin + step) % n;
        if valid[i] {
            if run_start.is_none() {
                run_start = Some((i, step));
            }
        } else if let Some((s, s_step)) = run_start.take() {
            let len = step - s_step;
            let better = match best {
                None => true,
                Some((b, blen)) => len > blen || (len == blen && s < b),
            };
            if better {
                best = Some((s, len));
            }
        }
    }
    best
}

fn bisect(a: &CMatrix, j: &Metric, mut good: f64, mut bad: f64, tol: f64) -> Result<f64, SpectraError> {
    while (good - bad).abs() > tol::WINDOW_BISECT {
        let mid = 0.5 * (good + bad);
        if support_bounds_with(a, j, mid, tol)?.valid {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// Maximal validity window found on a uniform grid of `grid_size` angles, with
/// endpoints refined by bisection.
pub fn omega_window(
    a: &CMatrix,
    j: &Metric,
    grid_size: usize,
    tol: f64,
) -> Result<Option<ThetaWindow>, SpectraError> {
    let grid = uniform_grid(grid_size);
    let data = support_sweep(a, j, &grid, tol)?;
    window_from_sweep(a, j, &data, tol)
}

/// Same as [`omega_window`] but reusing a sweep over a uniform grid.
pub fn window_from_sweep(
    a: &CMatrix,
    j: &Metric,
    data: &[SupportData],
    tol: f64,
) -> Result<Option<ThetaWindow>, SpectraError> {
    let n = data.len();
    let valid: Vec<bool> = data.iter().map(|d| d.valid).collect();
    let Some((first, len)) = longest_valid_run(&valid) else {
        return Ok(None);
    };
    if len == n {
        return Ok(Some(ThetaWindow {
            start: 0.0,
            end: TAU,
            full: true,
        }));
    }
    let step = TAU / n as f64;
    let t_first = data[first].theta;
    let t_last = t_first + step * (len - 1) as f64;
    let start = bisect(a, j, t_first, t_first - step, tol)?;
    let end = bisect(a, j, t_last, t_last + step, tol)?;
    let (start, end) = if start < 0.0 {
        (start + TAU, end + TAU)
    } else {
        (start, end)
    };
    Ok(Some(ThetaWindow {
        start,
        end,
        full: false,
    }))
}
