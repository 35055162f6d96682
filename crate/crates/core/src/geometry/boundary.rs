use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::algebra::{h_theta, CMatrix, Metric, Sign};
use crate::spectra::{j_eigenpairs, uniform_grid, Branch, SupportData};
use crate::tol;

type C64 = Complex64;

/// A point of the boundary generating curve with the sign of its generating vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaggedPoint {
    pub z: C64,
    pub sign: Sign,
    pub theta: f64,
    /// Generating eigenvalue of `H_θ`; `cos θ Re z + sin θ Im z = lambda`.
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    /// Sorted by `theta`.
    pub points: Vec<TaggedPoint>,
    pub invalid_thetas: Vec<f64>,
}

/// Support data and generating points at one angle.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ThetaSample {
    pub support: SupportData,
    pub points: Vec<TaggedPoint>,
}

impl ThetaSample {
    /// Generating points on the support line of the given side.
    pub fn contacts(&self, side: Side, tie: f64) -> Vec<C64> {
        let (Some(branch), Some(l), Some(r)) = (self.support.branch(), self.support.lambda_l, self.support.lambda_r)
        else {
            return Vec::new();
        };
        let right_sign = match branch {
            Branch::PlusRight => Sign::Plus,
            Branch::MinusRight => Sign::Minus,
        };
        let (lambda, sign) = match side {
            Side::Right => (r, right_sign),
            Side::Left => (l, right_sign.flip()),
        };
        self.points
            .iter()
            .filter(|p| p.sign == sign && (p.lambda - lambda).abs() <= tie)
            .map(|p| p.z)
            .collect()
    }
}

pub(crate) fn theta_sample(a: &CMatrix, j: &Metric, theta: f64, tol: f64) -> Result<ThetaSample, GeometryError> {
    if j.is_definite() {
        return Err(crate::spectra::SpectraError::DefiniteMetric.into());
    }
    let h = h_theta(a, j, theta)?;
    let pairs = j_eigenpairs(&h, j, tol)?;
    let hnorm = h.frobenius_norm();
    let split = crate::spectra::split_pairs(&pairs, j, hnorm, tol);
    let pair = split.support_pair();
    let support = SupportData {
        theta,
        lambda_l: pair.map(|p| p.0),
        lambda_r: pair.map(|p| p.1),
        valid: pair.is_some(),
        status: split.status,
    };
    let imag_tol = tol::REAL_EIG_REL * tol::scale(hnorm);
    let mut points = Vec::new();
    for p in &pairs {
        let jn = p.j_norm.unwrap_or(0.0);
        if jn.abs() < tol || p.value.im.abs() > imag_tol {
            continue;
        }
        let v = &p.vector;
        let av = a.mul_vec(v);
        let num: C64 = (0..v.len()).map(|i| v[i].conj() * av[i] * j.sign(i)).sum();
        let den = j.quadratic(v.as_slice());
        points.push(TaggedPoint {
            z: num / den,
            sign: if den > 0.0 { Sign::Plus } else { Sign::Minus },
            theta,
            lambda: p.value.re,
        });
    }
    Ok(ThetaSample { support, points })
}

/// Generating points `[Av,v]_J / [v,v]_J` for the definite eigenvectors of `H_θ(A)`.
pub fn boundary_points(a: &CMatrix, j: &Metric, theta: f64) -> Result<Vec<TaggedPoint>, GeometryError> {
    let s = theta_sample(a, j, theta, tol::DEFAULT_TOL)?;
    if !s.support.valid {
        return Err(GeometryError::InvalidTheta { theta });
    }
    Ok(s.points)
}

pub(crate) fn sweep_samples(a: &CMatrix, j: &Metric, thetas: &[f64], tol: f64) -> Result<Vec<ThetaSample>, GeometryError> {
    thetas.par_iter().map(|&t| theta_sample(a, j, t, tol)).collect()
}

pub(crate) fn curve_from_samples(samples: &[ThetaSample]) -> BoundaryCurve {
    let mut points = Vec::new();
    let mut invalid_thetas = Vec::new();
    for s in samples {
        if s.support.valid {
            points.extend(s.points.iter().copied());
        } else {
            invalid_thetas.push(s.support.theta);
        }
    }
    points.sort_by(|p, q| p.theta.total_cmp(&q.theta));
    BoundaryCurve { points, invalid_thetas }
}

/// Boundary points over a uniform grid of `grid_size` angles in `[0, 2π)`.
pub fn sweep_boundary(a: &CMatrix, j: &Metric, grid_size: usize) -> Result<BoundaryCurve, GeometryError> {
    if grid_size < tol::MIN_GRID {
        return Err(GeometryError::GridTooSmall {
            grid: grid_size,
            min: tol::MIN_GRID,
        });
    }
    let samples = sweep_samples(a, j, &uniform_grid(grid_size), tol::DEFAULT_TOL)?;
    Ok(curve_from_samples(&samples))
}

/// Pseudo-convex join of two generating points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Join {
    /// `[z₁, z₂]`, for equal signs.
    Segment { from: C64, to: C64 },
    /// `{t z₁ + (1-t) z₂ : t ≤ 0 or t ≥ 1}`, for opposite signs.
    RayPair { z1: C64, z2: C64 },
}

impl Join {
    /// Whether `z` lies on the join within `tol`.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        let (p, q, rays) = match *self {
            Join::Segment { from, to } => (from, to, false),
            Join::RayPair { z1, z2 } => (z2, z1, true),
        };
        let d = q - p;
        let t = ((z - p) * d.conj()).re / d.norm_sqr();
        let off = (z - (p + d * t)).norm();
        let on_part = if rays { t <= 0.0 || t >= 1.0 } else { (0.0..=1.0).contains(&t) };
        off <= tol && (on_part || (z - p).norm() <= tol || (z - q).norm() <= tol)
    }
}

pub fn pseudo_convex_join(p1: &TaggedPoint, p2: &TaggedPoint) -> Result<Join, GeometryError> {
    let scale = tol::scale(p1.z.norm().max(p2.z.norm()));
    if (p1.z - p2.z).norm() <= tol::CERT_GUARD * scale {
        return if p1.sign == p2.sign {
            Ok(Join::Segment { from: p1.z, to: p2.z })
        } else {
            Err(GeometryError::DegenerateJoin)
        };
    }
    Ok(if p1.sign == p2.sign {
        Join::Segment { from: p1.z, to: p2.z }
    } else {
        Join::RayPair { z1: p1.z, z2: p2.z }
    })
}

/// Side of the separating strip: `Right` follows `λ_R`, `Left` follows `λ_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A straight portion of the boundary where the contact point jumps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatSegment {
    pub theta: f64,
    pub side: Side,
    pub from: C64,
    pub to: C64,
}

impl FlatSegment {
    pub fn length(&self) -> f64 {
        (self.to - self.from).norm()
    }
}

/// A boundary point supported by a range of directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corner {
    pub z: C64,
    pub side: Side,
    pub theta_start: f64,
    pub theta_end: f64,
}

fn nearest(contacts: &[C64], to: C64) -> Option<C64> {
    contacts
        .iter()
        .copied()
        .min_by(|x, y| (x - to).norm().total_cmp(&(y - to).norm()))
}

/// Contact point on `side` at `theta`, nearest to `hint` when several exist.
fn contact_at(a: &CMatrix, j: &Metric, theta: f64, side: Side, hint: C64, tie: f64) -> Option<C64> {
    let s = theta_sample(a, j, theta, tol::DEFAULT_TOL).ok()?;
    nearest(&s.contacts(side, tie), hint)
}

/// Flats and corners along the support contacts of a uniform sweep.
///
/// A step whose contact jump exceeds `FLAT_FACTOR` times both neighbouring steps is
/// refined by bisection in `θ`; it is a flat when the jump survives refinement. Runs
/// of contacts that stay within `CORNER_TOL` while `θ` advances are corners.
pub(crate) fn flats_and_corners(
    a: &CMatrix,
    j: &Metric,
    samples: &[ThetaSample],
) -> (Vec<FlatSegment>, Vec<Corner>) {
    let n = samples.len();
    let scale = tol::scale(a.max_norm());
    let tie = tol::CLUSTER_REL * tol::scale(a.frobenius_norm()) * 10.0;
    let step = TAU / n as f64;
    let mut flats = Vec::new();
    let mut corners = Vec::new();
    for side in [Side::Left, Side::Right] {
        let contacts: Vec<Vec<C64>> = samples.iter().map(|s| s.contacts(side, tie)).collect();
        // several contacts on one support line: a flat at a grid angle
        for (k, c) in contacts.iter().enumerate() {
            if c.len() > 1 {
                let (mut lo, mut hi) = (c[0], c[0]);
                let mut best = 0.0;
                for &p in c {
                    for &q in c {
                        if (p - q).norm() > best {
                            best = (p - q).norm();
                            lo = p;
                            hi = q;
                        }
                    }
                }
                if best > tol::CORNER_TOL * scale {
                    flats.push(FlatSegment {
                        theta: samples[k].support.theta,
                        side,
                        from: lo,
                        to: hi,
                    });
                }
            }
        }
        let first = |k: usize| contacts[k % n].first().copied();
        let jump = |k: usize| -> Option<f64> { Some((first(k + 1)? - first(k)?).norm()) };
        let mut corner_run: Option<(C64, f64, f64)> = None;
        for k in 0..n {
            let Some(d) = jump(k) else {
                if let Some((z, t0, t1)) = corner_run.take() {
                    corners.push(Corner { z, side, theta_start: t0, theta_end: t1 });
                }
                continue;
            };
            let theta = samples[k].support.theta;
            if d <= tol::CORNER_TOL * scale {
                let z = first(k).unwrap();
                corner_run = match corner_run {
                    Some((z0, t0, _)) => Some((z0, t0, theta + step)),
                    None => Some((z, theta, theta + step)),
                };
                continue;
            } else if let Some((z, t0, t1)) = corner_run.take() {
                corners.push(Corner { z, side, theta_start: t0, theta_end: t1 });
            }
            let prev = if k == 0 { None } else { jump(k - 1) };
            let next = jump(k + 1);
            let local = prev.unwrap_or(0.0).max(next.unwrap_or(0.0));
            if !(d > tol::FLAT_FACTOR * local) {
                continue;
            }
            // refine the jump in θ
            let (mut t0, mut t1) = (theta, theta + step);
            let (mut z0, mut z1) = (first(k).unwrap(), first(k + 1).unwrap());
            let mut ok = true;
            for _ in 0..40 {
                let tm = 0.5 * (t0 + t1);
                let Some(zm) = contact_at(a, j, tm, side, z0, tie) else {
                    ok = false;
                    break;
                };
                if (zm - z0).norm() >= (z1 - zm).norm() {
                    t1 = tm;
                    z1 = zm;
                } else {
                    t0 = tm;
                    z0 = zm;
                }
            }
            if ok && (z1 - z0).norm() >= 0.5 * d {
                flats.push(FlatSegment {
                    theta: 0.5 * (t0 + t1),
                    side,
                    from: z0,
                    to: z1,
                });
            }
        }
        if let Some((z, t0, t1)) = corner_run.take() {
            corners.push(Corner { z, side, theta_start: t0, theta_end: t1 });
        }
    }
    (flats, corners)
}
