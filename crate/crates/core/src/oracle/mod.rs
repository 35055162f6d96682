//! Definition-level checks: Monte Carlo clouds of `W+(A)` and `-W-(A)`, containment
//! against a classification, support-line consistency and the order-6 factorization.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, CMatrix, CVector, Metric, Sign};
use crate::geometry::{BoundaryCurve, Hyperbola, RangeClassification, RangeKind};
use crate::spectra::{curve_form, curve_poly_eval, support_sweep, uniform_grid, Branch, SpectraError, TernaryForm};
use crate::tol;
use crate::tridiag::{block_reduce6, TridiagError, TridiagonalSpec};

type C64 = Complex64;

const CHUNK: usize = 4096;
const MAX_REJECT_RATE: f64 = 0.99;
const REPORTED_VIOLATIONS: usize = 64;
/// Scaled vectors must satisfy `|[x,x]_J ∓ 1|` below this; rounding of the scaled
/// entries can exceed it close to the null cone, and such draws are rejected.
const CONSTRAINT_TOL: f64 = 1e-12;

/// `[x,x]_J` with error-free products and compensated summation.
fn exact_quadratic(j: &Metric, x: &[C64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut add = |t: f64| {
        let s = sum + t;
        comp += if sum.abs() >= t.abs() { (sum - s) + t } else { (t - s) + sum };
        sum = s;
    };
    for (i, z) in x.iter().enumerate() {
        let sg = j.sign(i);
        for c in [z.re, z.im] {
            let p = c * c;
            add(sg * p);
            add(sg * c.mul_add(c, -p));
        }
    }
    sum + comp
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("the {0:?} sign class of the metric is empty")]
    EmptySignClass(Sign),
    #[error("rejection rate {rate:.4} exceeds 99%")]
    ExcessiveRejection { rate: f64 },
    #[error("no valid angle on the grid")]
    NoValidTheta,
    #[error("containment against the whole plane is vacuous")]
    WholePlane,
    #[error("sample count must be positive")]
    NoSamples,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Tridiag(#[from] TridiagError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub z: C64,
    pub sign: Sign,
}

/// Samples of `W+(A)` (sign `+`) or `-W-(A)` (sign `-`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleCloud {
    pub points: Vec<SamplePoint>,
    pub seed: u64,
    /// Requested number of samples.
    pub count: usize,
    /// Samples with `|z|` above the reporting bound, left out of `points`.
    pub clipped: usize,
    /// Draws of the wrong sign, near-neutral, or too close to the null cone to scale
    /// within the constraint tolerance.
    pub rejected: usize,
    /// Largest `|[x,x]_J ∓ 1|` over the scaled generating vectors.
    pub max_constraint_error: f64,
}

struct ChunkOut {
    points: Vec<SamplePoint>,
    clipped: usize,
    rejected: usize,
    constraint: f64,
}

/// Draws `n` standard complex Gaussian vectors with `[x,x]_J` of the requested sign,
/// rejecting near-neutral draws, scales them to `[x,x]_J = ±1` and emits `[Ax,x]_J`
/// (negated for the minus class). Chunk `k` uses ChaCha stream `k` of `seed`, so the
/// output does not depend on thread scheduling.
pub fn sample_range(a: &CMatrix, j: &Metric, n: usize, sign: Sign, seed: u64) -> Result<SampleCloud, OracleError> {
    j.check_dim(a.n())?;
    if n == 0 {
        return Err(OracleError::NoSamples);
    }
    let class_size = match sign {
        Sign::Plus => j.r(),
        Sign::Minus => j.n() - j.r(),
    };
    if class_size == 0 {
        return Err(OracleError::EmptySignClass(sign));
    }
    let dim = a.n();
    let clip = tol::CLIP_FACTOR * tol::scale(a.max_norm());
    let chunks = n.div_ceil(CHUNK);
    let max_attempts = ((CHUNK as f64) / (1.0 - MAX_REJECT_RATE)) as usize;
    let outs: Vec<Result<ChunkOut, OracleError>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let want = CHUNK.min(n - k * CHUNK);
            let mut out = ChunkOut {
                points: Vec::with_capacity(want),
                clipped: 0,
                rejected: 0,
                constraint: 0.0,
            };
            let mut accepted = 0;
            let mut x = CVector::zeros(dim);
            while accepted < want {
                if out.rejected > max_attempts {
                    let rate = out.rejected as f64 / (out.rejected + accepted) as f64;
                    return Err(OracleError::ExcessiveRejection { rate });
                }
                for i in 0..dim {
                    x[i] = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                }
                let q = exact_quadratic(j, x.as_slice());
                let norm2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
                if q.abs() < tol::NEUTRAL_REJECT * norm2 || (q > 0.0) != (sign == Sign::Plus) {
                    out.rejected += 1;
                    continue;
                }
                let s = 1.0 / q.abs().sqrt();
                for i in 0..dim {
                    x[i] *= s;
                }
                let err = (exact_quadratic(j, x.as_slice()) - sign.value()).abs();
                if err > CONSTRAINT_TOL {
                    out.rejected += 1;
                    continue;
                }
                out.constraint = out.constraint.max(err);
                let ax = a.mul_vec(&x);
                let inner: C64 = (0..dim).map(|i| x[i].conj() * ax[i] * j.sign(i)).sum();
                let z = inner * sign.value();
                accepted += 1;
                if z.norm() > clip {
                    out.clipped += 1;
                } else {
                    out.points.push(SamplePoint { z, sign });
                }
            }
            Ok(out)
        })
        .collect();
    let mut cloud = SampleCloud {
        points: Vec::with_capacity(n),
        seed,
        count: n,
        clipped: 0,
        rejected: 0,
        max_constraint_error: 0.0,
    };
    for o in outs {
        let o = o?;
        cloud.points.extend(o.points);
        cloud.clipped += o.clipped;
        cloud.rejected += o.rejected;
        cloud.max_constraint_error = cloud.max_constraint_error.max(o.constraint);
    }
    Ok(cloud)
}

/// Worst containment violation of a cloud against a classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub worst_violation: f64,
    /// Up to 64 of the worst offending samples.
    pub violating_samples: Vec<SamplePoint>,
    pub violating_count: usize,
    pub checked: usize,
    pub tol: f64,
    pub verdict: bool,
    /// Passing is evidence of containment, not a proof.
    pub note: String,
}

/// Forbidden open strip `l < Re(e^{-iθ} z) < r`, with `cos θ` and `sin θ` cached.
#[derive(Clone, Copy)]
struct Strip {
    cos: f64,
    sin: f64,
    l: f64,
    r: f64,
}

impl Strip {
    fn new(t: f64, l: f64, r: f64) -> Self {
        Strip { cos: t.cos(), sin: t.sin(), l, r }
    }
}

/// Strip test: `z` must not project strictly inside `(λ_L(θ), λ_R(θ))` at any angle.
fn strip_violation(z: C64, strips: &[Strip]) -> f64 {
    strips
        .iter()
        .map(|s| {
            let x = z.re * s.cos + z.im * s.sin;
            (x - s.l).min(s.r - x)
        })
        .fold(0.0, f64::max)
}

fn hyperbola_strips(hs: &[Hyperbola], grid: usize) -> Vec<Strip> {
    uniform_grid(grid)
        .into_iter()
        .filter_map(|t| {
            let mut l = f64::NEG_INFINITY;
            let mut r = f64::INFINITY;
            for h in hs {
                let (lo, hi) = h.support(t)?;
                l = l.max(lo);
                r = r.min(hi);
            }
            (l < r).then(|| Strip::new(t, l, r))
        })
        .collect()
}

fn curve_strips(curve: &BoundaryCurve) -> Vec<Strip> {
    let mut out = Vec::new();
    let mut i = 0;
    let pts = &curve.points;
    while i < pts.len() {
        let t = pts[i].theta;
        let mut k = i;
        while k < pts.len() && pts[k].theta == t {
            k += 1;
        }
        let group = &pts[i..k];
        let ext = |s: Sign, hi: bool| {
            let it = group.iter().filter(|p| p.sign == s).map(|p| p.lambda);
            if hi {
                it.fold(f64::NEG_INFINITY, f64::max)
            } else {
                it.fold(f64::INFINITY, f64::min)
            }
        };
        let (pmin, pmax) = (ext(Sign::Plus, false), ext(Sign::Plus, true));
        let (mmin, mmax) = (ext(Sign::Minus, false), ext(Sign::Minus, true));
        if pmin > mmax {
            out.push(Strip::new(t, mmax, pmin));
        } else if mmin > pmax {
            out.push(Strip::new(t, pmax, mmin));
        }
        i = k;
    }
    out
}

/// Checks every sample against the classified region: hyperbolic-disc slack for
/// discs, support strips of the constructed hull for bihyperbolic and numeric
/// classifications, and direct distances for degenerate ones.
pub fn containment_check(
    cloud: &SampleCloud,
    classification: &RangeClassification,
    tol: f64,
) -> Result<ContainmentReport, OracleError> {
    let violation: Box<dyn Fn(C64) -> f64 + Sync> = match &classification.kind {
        RangeKind::WholePlane => return Err(OracleError::WholePlane),
        RangeKind::HyperbolicDisc { hyperbola: h } | RangeKind::BihyperbolicNested { outer: h, .. } => {
            let h = *h;
            Box::new(move |z| (-h.slack(z)).max(0.0))
        }
        RangeKind::BihyperbolicFlat { plus, minus, .. } => {
            let strips = hyperbola_strips(&[*plus, *minus], tol::DEFAULT_GRID);
            Box::new(move |z| strip_violation(z, &strips))
        }
        RangeKind::NumericOnly { curve } => {
            let strips = curve_strips(curve);
            Box::new(move |z| strip_violation(z, &strips))
        }
        RangeKind::DegenerateRays { endpoints: [l, r] } => {
            let (l, r) = (*l, *r);
            Box::new(move |z: C64| z.im.abs().max((z.re - l).min(r - z.re)).max(0.0))
        }
        RangeKind::RealLine => Box::new(|z: C64| z.im.abs()),
        RangeKind::Point { value } => {
            let v = *value;
            Box::new(move |z: C64| (z - v).norm())
        }
    };
    let scored: Vec<(f64, SamplePoint)> = cloud.points.par_iter().map(|p| (violation(p.z), *p)).collect();
    let mut bad: Vec<(f64, SamplePoint)> = scored.iter().copied().filter(|(v, _)| *v > tol).collect();
    bad.sort_by(|x, y| y.0.total_cmp(&x.0));
    let worst = scored.iter().map(|s| s.0).fold(0.0, f64::max);
    Ok(ContainmentReport {
        worst_violation: worst,
        violating_count: bad.len(),
        violating_samples: bad.into_iter().take(REPORTED_VIOLATIONS).map(|s| s.1).collect(),
        checked: cloud.points.len(),
        tol,
        verdict: worst <= tol,
        note: "sampling can refute containment but only supports it".into(),
    })
}

/// Result of comparing sampled clouds with the support bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportConsistency {
    /// Largest amount by which a sample crosses a support line (should be ~0).
    pub worst_violation: f64,
    /// Largest distance between a support line and the nearest sample projection.
    pub worst_gap: f64,
    pub valid_thetas: usize,
}

/// Checks that `W+` samples and `-W-` samples stay on their sides of the support
/// lines `λ_L(θ)`, `λ_R(θ)` for every valid angle of `grid`.
pub fn support_consistency(
    a: &CMatrix,
    j: &Metric,
    grid: &[f64],
    n: usize,
    seed: u64,
) -> Result<SupportConsistency, OracleError> {
    let data = support_sweep(a, j, grid, tol::DEFAULT_TOL)?;
    let valid: Vec<_> = data.iter().filter(|d| d.valid).collect();
    if valid.is_empty() {
        return Err(OracleError::NoValidTheta);
    }
    let plus = sample_range(a, j, n, Sign::Plus, seed)?;
    let minus = sample_range(a, j, n, Sign::Minus, seed.wrapping_add(1))?;
    let mut worst_violation: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for d in &valid {
        let (Some(branch), Some(l), Some(r)) = (d.branch(), d.lambda_l, d.lambda_r) else {
            continue;
        };
        let proj = |p: &SamplePoint| p.z.re * d.theta.cos() + p.z.im * d.theta.sin();
        let (pmin, pmax, mmin, mmax) = (
            plus.points.iter().map(proj).fold(f64::INFINITY, f64::min),
            plus.points.iter().map(proj).fold(f64::NEG_INFINITY, f64::max),
            minus.points.iter().map(proj).fold(f64::INFINITY, f64::min),
            minus.points.iter().map(proj).fold(f64::NEG_INFINITY, f64::max),
        );
        let (viol, gap) = match branch {
            Branch::PlusRight => ((r - pmin).max(mmax - l), (pmin - r).max(l - mmax)),
            Branch::MinusRight => ((pmax - l).max(r - mmin), (l - pmax).max(mmin - r)),
        };
        worst_violation = worst_violation.max(viol.max(0.0));
        worst_gap = worst_gap.max(gap);
    }
    Ok(SupportConsistency {
        worst_violation,
        worst_gap,
        valid_thetas: valid.len(),
    })
}

/// Outcome of the order-6 factorization check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorCheck {
    /// Max relative error between the generating polynomial of `A` and the product
    /// of the two block cubics.
    pub block_residual: f64,
    /// Same against a supplied reference pair, when given.
    pub reference_residual: Option<f64>,
    pub block_cubics: [TernaryForm; 2],
    /// Number of linear factors found in each block cubic.
    pub linear_factors: [usize; 2],
    pub trials: usize,
}

fn random_direction(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    loop {
        let (u, v, w): (f64, f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
        let n = (u * u + v * v + w * w).sqrt();
        if n > 1e-8 {
            return (u / n, v / n, w / n);
        }
    }
}

fn product_residual(
    a: &CMatrix,
    j: &Metric,
    f: &[TernaryForm; 2],
    trials: usize,
    seed: u64,
) -> Result<f64, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let (u, v, w) = random_direction(&mut rng);
        let lhs = curve_poly_eval(a, j, u, v, w)?;
        let rhs = f[0].eval(u, v, w) * f[1].eval(u, v, w);
        let scale = (f[0].eval_abs(u, v, w) * f[1].eval_abs(u, v, w)).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    Ok(worst)
}

/// [`factor_check6_against`] without a reference.
pub fn factor_check6(spec: &TridiagonalSpec, trials: usize) -> Result<FactorCheck, OracleError> {
    factor_check6_against(spec, trials, None)
}

/// Compares `det(u Re + v Im + w I)` of an order-6 centrosymmetric matrix with the
/// product of its two block cubics at `trials` random directions `(u, v, w)`; the
/// relative error is normalized by the product of the absolute term sums.
pub fn factor_check6_against(
    spec: &TridiagonalSpec,
    trials: usize,
    reference: Option<&[TernaryForm; 2]>,
) -> Result<FactorCheck, OracleError> {
    let (upper, lower) = block_reduce6(spec)?;
    let j2 = Metric::alternating(3);
    let cubics = [
        curve_form(&upper, &j2)?,
        curve_form(&lower, &j2)?,
    ];
    let a = spec.matrix();
    let j = spec.metric();
    let block_residual = product_residual(&a, &j, &cubics, trials, tol::DEFAULT_SEED)?;
    let reference_residual = match reference {
        Some(r) => Some(product_residual(&a, &j, r, trials, tol::DEFAULT_SEED.wrapping_add(1))?),
        None => None,
    };
    let linear = |b: &CMatrix| -> Result<usize, OracleError> {
        let comps = crate::geometry::knr_components(b, &j2)?;
        Ok(comps
            .iter()
            .filter(|c| matches!(c, crate::geometry::Component::Point { .. }))
            .count())
    };
    Ok(FactorCheck {
        block_residual,
        reference_residual,
        linear_factors: [linear(&upper)?, linear(&lower)?],
        block_cubics: cubics,
        trials,
    })
}
