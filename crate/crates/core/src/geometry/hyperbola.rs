use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GeometryError;

type C64 = Complex64;

/// Reduces an axis direction to `(-π/2, π/2]`.
pub fn normalize_axis(gamma: f64) -> f64 {
    let mut g = gamma.rem_euclid(PI);
    if g > FRAC_PI_2 {
        g -= PI;
    }
    g
}

/// A hyperbola with its branch regions (the convex sides containing the foci).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperbola {
    pub center: C64,
    /// Direction of the transverse axis, in `(-π/2, π/2]`.
    pub gamma: f64,
    pub semi_transverse: f64,
    pub semi_nontransverse: f64,
    pub foci: [C64; 2],
}

impl Hyperbola {
    pub fn new(center: C64, gamma: f64, semi_transverse: f64, semi_nontransverse: f64) -> Result<Self, GeometryError> {
        if !(semi_transverse >= 0.0 && semi_nontransverse >= 0.0)
            || !semi_transverse.is_finite()
            || !semi_nontransverse.is_finite()
            || !center.re.is_finite()
            || !center.im.is_finite()
        {
            return Err(GeometryError::DegenerateHyperbola(format!(
                "semi-axes ({semi_transverse}, {semi_nontransverse})"
            )));
        }
        let gamma = normalize_axis(gamma);
        let c = semi_transverse.hypot(semi_nontransverse);
        let dir = C64::from_polar(c, gamma);
        Ok(Hyperbola {
            center,
            gamma,
            semi_transverse,
            semi_nontransverse,
            foci: [center + dir, center - dir],
        })
    }

    /// Hyperbola with the given foci and semi-non-transverse axis.
    pub fn from_foci(f1: C64, f2: C64, semi_nontransverse: f64) -> Result<Self, GeometryError> {
        let center = (f1 + f2) * 0.5;
        let half = (f1 - f2) * 0.5;
        let c = half.norm();
        let b = semi_nontransverse;
        let a_sq = c * c - b * b;
        if !(b >= 0.0) || a_sq < -1e-12 * c * c.max(1.0) {
            return Err(GeometryError::DegenerateHyperbola(format!(
                "non-transverse semi-axis {b} exceeds focal half-distance {c}"
            )));
        }
        let gamma = if c == 0.0 { 0.0 } else { half.arg() };
        let mut h = Hyperbola::new(center, gamma, a_sq.max(0.0).sqrt(), b)?;
        // keep the supplied foci exactly
        if (h.foci[0] - f1).norm() <= (h.foci[0] - f2).norm() {
            h.foci = [f1, f2];
        } else {
            h.foci = [f2, f1];
        }
        Ok(h)
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.semi_transverse > 0.0 && self.semi_nontransverse > 0.0)
    }

    /// `c̃ = sqrt(ã² + b̃²)`.
    pub fn focal_half_distance(&self) -> f64 {
        self.semi_transverse.hypot(self.semi_nontransverse)
    }

    pub fn transverse_length(&self) -> f64 {
        2.0 * self.semi_transverse
    }

    pub fn nontransverse_length(&self) -> f64 {
        2.0 * self.semi_nontransverse
    }

    fn axis(&self) -> C64 {
        C64::from_polar(1.0, self.gamma)
    }

    /// Coordinates of `z` in the frame centered at `center` with the transverse axis
    /// along the first coordinate.
    pub fn to_local(&self, z: C64) -> (f64, f64) {
        let w = (z - self.center) * self.axis().conj();
        (w.re, w.im)
    }

    pub fn from_local(&self, x: f64, y: f64) -> C64 {
        self.center + C64::new(x, y) * self.axis()
    }

    pub fn vertices(&self) -> [C64; 2] {
        [
            self.from_local(self.semi_transverse, 0.0),
            self.from_local(-self.semi_transverse, 0.0),
        ]
    }

    /// Point `(±ã cosh t, b̃ sinh t)` on the branch through the vertex on side `side`
    /// (`+1` for the vertex along `+e^{iγ}`).
    pub fn branch_point(&self, side: f64, t: f64) -> C64 {
        self.from_local(side.signum() * self.semi_transverse * t.cosh(), self.semi_nontransverse * t.sinh())
    }

    /// Signed slack of `z`: positive inside a branch region (the convex side holding a
    /// focus), negative between the branches, zero on the curve. Measured as
    /// `|X| - ã·sqrt(1 + (Y/b̃)²)` in local coordinates.
    pub fn slack(&self, z: C64) -> f64 {
        let (x, y) = self.to_local(z);
        x.abs() - self.semi_transverse * (1.0 + (y / self.semi_nontransverse).powi(2)).sqrt()
    }

    /// Support values `(min, max)` of the branch regions' projections onto direction
    /// `θ`... precisely the roots `proj(center) ∓ w` with
    /// `w² = ã² cos²(θ-γ) - b̃² sin²(θ-γ)`; `None` where `w² < 0`.
    pub fn support(&self, theta: f64) -> Option<(f64, f64)> {
        let phi = theta - self.gamma;
        let w2 = (self.semi_transverse * phi.cos()).powi(2) - (self.semi_nontransverse * phi.sin()).powi(2);
        if w2 < 0.0 {
            return None;
        }
        let proj = self.center.re * theta.cos() + self.center.im * theta.sin();
        let w = w2.sqrt();
        Some((proj - w, proj + w))
    }

    /// Parameters `(p, q, t)` of `w(θ)² = p + q cos 2θ + t sin 2θ`.
    pub fn params(&self) -> (f64, f64, f64) {
        let a2 = self.semi_transverse.powi(2);
        let b2 = self.semi_nontransverse.powi(2);
        let s = C64::from_polar(0.5 * (a2 + b2), 2.0 * self.gamma);
        (0.5 * (a2 - b2), s.re, s.im)
    }

    /// Image under `z ↦ αz + β`.
    pub fn affine_map(&self, alpha: C64, beta: C64) -> Hyperbola {
        let r = alpha.norm();
        let mut h = Hyperbola::new(
            alpha * self.center + beta,
            self.gamma + alpha.arg(),
            r * self.semi_transverse,
            r * self.semi_nontransverse,
        )
        .expect("affine image of a valid hyperbola");
        h.foci = self.foci.map(|f| alpha * f + beta);
        h
    }

    /// Largest distance between matching foci, centers and axis lengths.
    pub fn distance(&self, other: &Hyperbola) -> f64 {
        let foci = ((self.foci[0] - other.foci[0]).norm().max((self.foci[1] - other.foci[1]).norm()))
            .min((self.foci[0] - other.foci[1]).norm().max((self.foci[1] - other.foci[0]).norm()));
        foci.max((self.center - other.center).norm())
            .max((self.semi_transverse - other.semi_transverse).abs())
            .max((self.semi_nontransverse - other.semi_nontransverse).abs())
    }

    /// Sampled points on both branches for `t` in `[-t_max, t_max]`.
    pub fn sample_branches(&self, per_branch: usize, t_max: f64) -> Vec<C64> {
        let mut out = Vec::with_capacity(2 * per_branch);
        for side in [1.0, -1.0] {
            for k in 0..per_branch {
                let t = if per_branch == 1 {
                    0.0
                } else {
                    -t_max + 2.0 * t_max * k as f64 / (per_branch - 1) as f64
                };
                out.push(self.branch_point(side, t));
            }
        }
        out
    }
}

/// Membership slack of `z` with respect to a non-degenerate hyperbola; see
/// [`Hyperbola::slack`].
pub fn hyperbola_membership(h: &Hyperbola, z: C64) -> Result<f64, GeometryError> {
    if h.is_degenerate() {
        return Err(GeometryError::DegenerateHyperbola("membership needs positive semi-axes".into()));
    }
    Ok(h.slack(z))
}

/// Result of testing whether one hyperbola's branch regions lie inside another's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nesting {
    pub nested: bool,
    /// Smallest outer slack over the inner hyperbola's vertices, foci and samples.
    pub min_slack: f64,
    /// Outer asymptote half-angle minus inner half-angle minus axis misalignment.
    pub cone_margin: f64,
}

/// Whether the branch regions of `inner` lie within those of `outer`: every vertex,
/// focus and sampled branch point of `inner` has outer slack above `-tol`, and the
/// inner asymptotic cone fits inside the outer one.
pub fn nesting(inner: &Hyperbola, outer: &Hyperbola, tol: f64) -> Nesting {
    let mut pts: Vec<C64> = inner.vertices().to_vec();
    pts.extend(inner.foci);
    pts.extend(inner.sample_branches(41, 4.0));
    let min_slack = pts.iter().map(|&z| outer.slack(z)).fold(f64::INFINITY, f64::min);
    let half = |h: &Hyperbola| h.semi_nontransverse.atan2(h.semi_transverse);
    let mis = normalize_axis(inner.gamma - outer.gamma).abs();
    let cone_margin = half(outer) - half(inner) - mis;
    Nesting {
        nested: min_slack > -tol && cone_margin > -tol,
        min_slack,
        cone_margin,
    }
}

/// Parameters of `λ_R(θ)² = p + q cos 2θ + t sin 2θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaFitParams {
    pub p: f64,
    pub q: f64,
    pub t: f64,
    pub s: C64,
    pub gamma: f64,
    pub theta0: f64,
    /// Open interval `(γ - θ₀, γ + θ₀)` where the model is positive.
    pub window: (f64, f64),
}

impl HyperbolaFitParams {
    pub fn new(p: f64, q: f64, t: f64) -> Result<Self, GeometryError> {
        let s = C64::new(q, t);
        let m = s.norm();
        if !(p * p < q * q + t * t) {
            return Err(GeometryError::DegenerateFit { p, s_abs: m });
        }
        let gamma = normalize_axis(0.5 * s.arg());
        let theta0 = ((m + p) / (m - p)).sqrt().atan();
        Ok(HyperbolaFitParams {
            p,
            q,
            t,
            s,
            gamma,
            theta0,
            window: (gamma - theta0, gamma + theta0),
        })
    }

    pub fn model(&self, theta: f64) -> f64 {
        self.p + self.q * (2.0 * theta).cos() + self.t * (2.0 * theta).sin()
    }
}

/// The hyperbola `√(|s|+p)`, `√(|s|-p)` with transverse direction `arg(s)/2`.
pub fn hyperbola_from_fit(params: &HyperbolaFitParams, center: C64) -> Result<Hyperbola, GeometryError> {
    let m = params.s.norm();
    if !(params.p.abs() < m) {
        return Err(GeometryError::DegenerateFit { p: params.p, s_abs: m });
    }
    Hyperbola::new(center, params.gamma, (m + params.p).sqrt(), (m - params.p).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rectangular_from_fit() {
        let p = HyperbolaFitParams::new(0.0, 1.0, 0.0).unwrap();
        let h = hyperbola_from_fit(&p, c(0.0, 0.0)).unwrap();
        assert!((h.semi_transverse - 1.0).abs() < 1e-15);
        assert!((h.semi_nontransverse - 1.0).abs() < 1e-15);
        assert!((h.foci[0] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_of_validity_rejected() {
        assert!(HyperbolaFitParams::new(0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn focal_relation() {
        let h = Hyperbola::new(c(1.0, -2.0), 0.4, 3.0, 2.0).unwrap();
        let d = (h.foci[0] - h.center).norm();
        assert!((d * d - 13.0).abs() < 1e-12);
        assert!(hyperbola_membership(&h, h.foci[0]).unwrap() > 0.0);
        assert!(hyperbola_membership(&h, h.foci[1]).unwrap() > 0.0);
        assert!(hyperbola_membership(&h, h.center).unwrap() < 0.0);
        for z in h.sample_branches(9, 2.0) {
            assert!(h.slack(z).abs() < 1e-12);
        }
    }

    #[test]
    fn params_round_trip() {
        let h = Hyperbola::new(c(0.0, 0.0), -0.3, 1.7, 0.6).unwrap();
        let (p, q, t) = h.params();
        let back = hyperbola_from_fit(&HyperbolaFitParams::new(p, q, t).unwrap(), h.center).unwrap();
        assert!(back.distance(&h) < 1e-12);
    }

    #[test]
    fn support_matches_model() {
        let h = Hyperbola::new(c(0.5, 0.2), 0.3, 2.0, 1.0).unwrap();
        let (p, q, t) = h.params();
        let theta = 0.1f64;
        let (lo, hi) = h.support(theta).unwrap();
        let w2 = p + q * (2.0 * theta).cos() + t * (2.0 * theta).sin();
        assert!((0.5 * (hi - lo) - w2.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nesting_of_scaled_copies() {
        let outer = Hyperbola::new(c(0.0, 0.0), 0.0, 1.0, 1.0).unwrap();
        let inner = Hyperbola::new(c(0.0, 0.0), 0.0, 2.0, 1.0).unwrap();
        assert!(nesting(&inner, &outer, 1e-8).nested);
        assert!(!nesting(&outer, &inner, 1e-8).nested);
    }

    #[test]
    fn from_foci_keeps_foci() {
        let f1 = c(1.0, 1.0);
        let f2 = c(-3.0, 0.0);
        let h = Hyperbola::from_foci(f1, f2, 1.0).unwrap();
        assert_eq!(h.foci, [f1, f2]);
        assert!((h.focal_half_distance() - (f1 - f2).norm() / 2.0).abs() < 1e-12);
        assert!(Hyperbola::from_foci(f1, f2, 10.0).is_err());
    }

    #[test]
    fn affine_image() {
        let h = Hyperbola::new(c(1.0, 0.0), 0.0, 1.0, 2.0).unwrap();
        let g = h.affine_map(c(0.0, 2.0), c(1.0, 1.0));
        assert!((g.center - c(1.0, 3.0)).norm() < 1e-12);
        assert!((g.semi_transverse - 2.0).abs() < 1e-12);
        assert!((g.gamma - FRAC_PI_2).abs() < 1e-12);
        assert!(g.slack(c(0.0, 2.0) * h.foci[0] + c(1.0, 1.0)) > 0.0);
    }
}
