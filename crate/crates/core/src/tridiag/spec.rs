use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TridiagError;
use crate::algebra::{CMatrix, Metric};

type C64 = Complex64;

/// Relative tolerance for structural comparisons of entries.
const STRUCT_REL: f64 = 1e-12;

/// `T_m(c, a, b)`: diagonal `a·J_ii`, superdiagonal `b`, subdiagonal `c`.
///
/// Odd orders use `J = diag(1,-1,...,-1,1)`; even orders use the mirrored pattern
/// `diag(1,-1,...,-1,-1,...,1)` (e.g. `diag(1,-1,-1,1)`, `diag(1,-1,1,1,-1,1)`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalSpec {
    pub order: usize,
    pub a: f64,
    pub b: Vec<C64>,
    pub c: Vec<C64>,
}

impl TridiagonalSpec {
    pub fn new(order: usize, a: f64, b: Vec<C64>, c: Vec<C64>) -> Result<Self, TridiagError> {
        if order < 2 {
            return Err(TridiagError::UnsupportedOrder(order));
        }
        for (field, v) in [("b", &b), ("c", &c)] {
            if v.len() != order - 1 {
                return Err(TridiagError::LengthMismatch {
                    field,
                    expected: order - 1,
                    found: v.len(),
                });
            }
        }
        if !a.is_finite() || b.iter().chain(&c).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TridiagError::NonFinite);
        }
        Ok(TridiagonalSpec { order, a, b, c })
    }

    /// Centrosymmetric spec with `c = reverse(b)`.
    pub fn centrosymmetric(order: usize, a: f64, b: Vec<C64>) -> Result<Self, TridiagError> {
        let c = b.iter().rev().copied().collect();
        Self::new(order, a, b, c)
    }

    pub fn metric(&self) -> Metric {
        canonical_metric(self.order)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let j = self.metric();
        (0..self.order).map(|i| self.a * j.sign(i)).collect()
    }

    pub fn matrix(&self) -> CMatrix {
        let d = self.diagonal();
        CMatrix::from_fn(self.order, |i, k| {
            if i == k {
                C64::new(d[i], 0.0)
            } else if k == i + 1 {
                self.b[i]
            } else if i == k + 1 {
                self.c[k]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    fn entry_scale(&self) -> f64 {
        self.b
            .iter()
            .chain(&self.c)
            .map(|z| z.norm())
            .fold(self.a.abs(), f64::max)
    }

    /// Largest `|c_k - b_{m-2-k}|`.
    pub fn centro_mismatch(&self) -> f64 {
        let m = self.order;
        (0..m - 1)
            .map(|k| (self.c[k] - self.b[m - 2 - k]).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_centrosymmetric(&self) -> bool {
        self.centro_mismatch() <= STRUCT_REL * self.entry_scale()
    }

    /// Exchanges `b_k` and `c_k` at every position with `mask[k]`.
    pub fn swapped(&self, mask: &[bool]) -> TridiagonalSpec {
        let mut out = self.clone();
        for (k, &s) in mask.iter().enumerate().take(self.order - 1) {
            if s {
                std::mem::swap(&mut out.b[k], &mut out.c[k]);
            }
        }
        out
    }

    /// The centrosymmetric spec reachable by subdiagonal swaps, which leave the range
    /// unchanged. Masks are tried in increasing binary order.
    pub fn canonical(&self) -> Result<TridiagonalSpec, TridiagError> {
        if self.is_centrosymmetric() {
            return Ok(self.clone());
        }
        let m = self.order - 1;
        let mut best = f64::INFINITY;
        for bits in 1u32..(1 << m) {
            let mask: Vec<bool> = (0..m).map(|k| bits >> k & 1 == 1).collect();
            let s = self.swapped(&mask);
            if s.is_centrosymmetric() {
                return Ok(s);
            }
            best = best.min(s.centro_mismatch());
        }
        Err(TridiagError::NotCentrosymmetric {
            mismatch: best.min(self.centro_mismatch()),
        })
    }

    /// `b_k c_k`, unchanged by swapping position `k`.
    pub(crate) fn pair_product(&self, k: usize) -> C64 {
        self.b[k] * self.c[k]
    }

    /// `|b_k|² + |c_k|²`.
    pub(crate) fn pair_norm(&self, k: usize) -> f64 {
        self.b[k].norm_sqr() + self.c[k].norm_sqr()
    }

    /// `(b_k + c_k)/2`, the symmetric reading of a self-paired central entry.
    pub(crate) fn pair_mean(&self, k: usize) -> C64 {
        (self.b[k] + self.c[k]) * 0.5
    }

    pub(crate) fn is_negligible(&self, z: C64) -> bool {
        z.norm() <= STRUCT_REL * self.entry_scale()
    }
}

/// Signature used by the tridiagonal theorems for order `m`.
pub fn canonical_metric(m: usize) -> Metric {
    if m % 2 == 1 {
        Metric::alternating(m)
    } else {
        Metric::mirrored_alternating(m)
    }
}

/// `A = e^{iτ} T + δ I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalForm {
    pub t: TridiagonalSpec,
    pub tau: f64,
    pub delta: C64,
}

impl NormalForm {
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.t.order;
        &self.t.matrix().scale(C64::from_polar(1.0, self.tau)) + &CMatrix::scalar(n, self.delta)
    }

    /// Maps a point of `W^J(T)` to the corresponding point of `W^J(A)`.
    pub fn map_point(&self, z: C64) -> C64 {
        C64::from_polar(1.0, self.tau) * z + self.delta
    }
}

/// Writes a tridiagonal `A` with a (shifted) biperiodic diagonal as `e^{iτ}T + δI`.
///
/// With `d±` the mean diagonal over the `J = ±1` positions, `δ = (d₊ + d₋)/2` and
/// `a e^{iτ} = (d₊ - d₋)/2`. When that difference vanishes, `τ = 0` and `a = 0`.
pub fn normal_form(a: &CMatrix, j: &Metric) -> Result<NormalForm, TridiagError> {
    let n = a.n();
    if j.n() != n || *j != canonical_metric(n) {
        return Err(TridiagError::MetricMismatch { order: n });
    }
    if !a.is_finite() {
        return Err(TridiagError::NonFinite);
    }
    if n < 2 {
        return Err(TridiagError::UnsupportedOrder(n));
    }
    let scale = a.max_norm();
    if !a.is_tridiagonal(STRUCT_REL * scale) {
        return Err(TridiagError::NotTridiagonal);
    }
    let diag = a.diagonal();
    let mean = |s: f64| {
        let v: Vec<C64> = (0..n).filter(|&i| j.sign(i) == s).map(|i| diag[i]).collect();
        v.iter().sum::<C64>() / v.len() as f64
    };
    let (dp, dm) = (mean(1.0), mean(-1.0));
    let deviation = (0..n)
        .map(|i| (diag[i] - if j.sign(i) > 0.0 { dp } else { dm }).norm())
        .fold(0.0, f64::max);
    if deviation > STRUCT_REL * scale.max(f64::MIN_POSITIVE) {
        return Err(TridiagError::NotBiperiodic { deviation });
    }
    let delta = (dp + dm) * 0.5;
    let alpha = (dp - dm) * 0.5;
    let (tau, amp) = if alpha.norm() <= STRUCT_REL * scale {
        (0.0, 0.0)
    } else {
        (alpha.arg(), alpha.norm())
    };
    let rot = C64::from_polar(1.0, -tau);
    let b = (0..n - 1).map(|k| a[(k, k + 1)] * rot).collect();
    let c = (0..n - 1).map(|k| a[(k + 1, k)] * rot).collect();
    Ok(NormalForm {
        t: TridiagonalSpec::new(n, amp, b, c)?,
        tau,
        delta,
    })
}
