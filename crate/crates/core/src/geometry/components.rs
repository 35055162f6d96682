use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GeometryError, Hyperbola};
use crate::algebra::{h_theta, CMatrix, Metric};
use crate::spectra::eigenvalues;
use crate::tol;

type C64 = Complex64;

const PROBES: usize = 9;

/// Shape of a quadratic factor `w(θ)² = p + q cos 2θ + t sin 2θ` about its center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicKind {
    Hyperbola,
    Ellipse,
    PointPair,
    Imaginary,
}

/// A factor of the generating polynomial identified from eigenvalue probes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "component", rename_all = "snake_case")]
pub enum Component {
    /// Linear factor: the point `value` (an eigenvalue of `A`).
    Point { value: C64 },
    /// Quadratic factor with foci at two eigenvalues of `A`.
    Conic {
        foci: [C64; 2],
        center: C64,
        p: f64,
        q: f64,
        t: f64,
        kind: ConicKind,
        hyperbola: Option<Hyperbola>,
        residual: f64,
    },
    /// Roots not explained by points or conics.
    Remainder { degree: usize },
}

impl Component {
    /// Roots of the factor at angle `θ`, as real support values where real.
    pub fn roots(&self, theta: f64) -> Vec<f64> {
        let (c, s) = (theta.cos(), theta.sin());
        match self {
            Component::Point { value } => vec![value.re * c + value.im * s],
            Component::Conic { center, p, q, t, .. } => {
                let w2 = p + q * (2.0 * theta).cos() + t * (2.0 * theta).sin();
                if w2 < 0.0 {
                    return Vec::new();
                }
                let proj = center.re * c + center.im * s;
                vec![proj - w2.sqrt(), proj + w2.sqrt()]
            }
            Component::Remainder { .. } => Vec::new(),
        }
    }
}

fn probe_angles() -> [f64; PROBES] {
    std::array::from_fn(|k| 0.1 + k as f64 * PI / PROBES as f64)
}

fn take_nearest(roots: &mut Vec<C64>, target: C64, tol: f64) -> bool {
    let best = roots
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - target).norm().total_cmp(&(y.1 - target).norm()));
    match best {
        Some((i, z)) if (z - target).norm() <= tol => {
            roots.swap_remove(i);
            true
        }
        _ => false,
    }
}

/// Splits the generating polynomial `det(H_θ(A) - z)` into linear factors (points),
/// quadratic factors (conics whose foci are eigenvalues of `A`) and an unexplained
/// remainder, by matching eigenvalues of `H_θ` at a fixed set of probe angles.
pub fn knr_components(a: &CMatrix, j: &Metric) -> Result<Vec<Component>, GeometryError> {
    let scale = tol::scale(a.max_norm());
    let tol_root = 1e-6 * scale;
    let thetas = probe_angles();
    let mut roots: Vec<Vec<C64>> = thetas
        .iter()
        .map(|&t| Ok(eigenvalues(&h_theta(a, j, t)?)?))
        .collect::<Result<_, GeometryError>>()?;
    let mut eig = eigenvalues(a)?;
    let mut out = Vec::new();

    // points: real roots linear in (cos θ, sin θ)
    let (t0, t1) = (thetas[0], thetas[4]);
    let det = t0.cos() * t1.sin() - t0.sin() * t1.cos();
    'points: loop {
        let cand0: Vec<f64> = roots[0].iter().filter(|z| z.im.abs() <= tol_root).map(|z| z.re).collect();
        let cand1: Vec<f64> = roots[4].iter().filter(|z| z.im.abs() <= tol_root).map(|z| z.re).collect();
        for &r0 in &cand0 {
            for &r1 in &cand1 {
                let alpha = (r0 * t1.sin() - r1 * t0.sin()) / det;
                let beta = (t0.cos() * r1 - t1.cos() * r0) / det;
                let fits = thetas.iter().zip(&roots).all(|(&t, rs)| {
                    let target = alpha * t.cos() + beta * t.sin();
                    rs.iter().any(|z| (z - target).norm() <= tol_root)
                });
                if fits {
                    for (k, &t) in thetas.iter().enumerate() {
                        take_nearest(&mut roots[k], C64::new(alpha * t.cos() + beta * t.sin(), 0.0), tol_root);
                    }
                    let value = C64::new(alpha, beta);
                    take_nearest(&mut eig, value, 1e-4 * scale);
                    out.push(Component::Point { value });
                    continue 'points;
                }
            }
        }
        break;
    }

    // conics: foci are a pair of the remaining eigenvalues of A
    let tol_sq = 1e-6 * scale * scale;
    'conics: loop {
        for i in 0..eig.len() {
            for k in i + 1..eig.len() {
                let (f1, f2) = (eig[i], eig[k]);
                let center = (f1 + f2) * 0.5;
                let s = (f1 - center) * (f1 - center) * 0.5;
                let sum_at = |t: f64| 2.0 * (center.re * t.cos() + center.im * t.sin());
                let p_of = |t: f64, za: C64, zb: C64| {
                    let half = (za - zb) * 0.5;
                    half * half - s.re * (2.0 * t).cos() - s.im * (2.0 * t).sin()
                };
                let pairs_at = |k: usize| -> Vec<(usize, usize, C64)> {
                    let rs = &roots[k];
                    let mut v = Vec::new();
                    for x in 0..rs.len() {
                        for y in x + 1..rs.len() {
                            if (rs[x] + rs[y] - sum_at(thetas[k])).norm() <= 2.0 * tol_root {
                                v.push((x, y, p_of(thetas[k], rs[x], rs[y])));
                            }
                        }
                    }
                    v
                };
                for (_, _, p0) in pairs_at(0) {
                    if p0.im.abs() > tol_sq {
                        continue;
                    }
                    let mut chosen = Vec::with_capacity(PROBES);
                    let mut resid: f64 = 0.0;
                    for kk in 0..PROBES {
                        let best = pairs_at(kk)
                            .into_iter()
                            .min_by(|x, y| (x.2 - p0).norm().total_cmp(&(y.2 - p0).norm()));
                        match best {
                            Some((x, y, pk)) if (pk - p0).norm() <= tol_sq => {
                                resid = resid.max((pk - p0).norm());
                                chosen.push((x, y));
                            }
                            _ => break,
                        }
                    }
                    if chosen.len() < PROBES {
                        continue;
                    }
                    for (kk, (x, y)) in chosen.into_iter().enumerate() {
                        roots[kk].remove(y);
                        roots[kk].remove(x);
                    }
                    eig.remove(k);
                    eig.remove(i);
                    let p = p0.re;
                    let m = s.norm();
                    let kind = if p.abs() < m - tol_sq {
                        ConicKind::Hyperbola
                    } else if (p - m).abs() <= tol_sq {
                        ConicKind::PointPair
                    } else if p > m {
                        ConicKind::Ellipse
                    } else {
                        ConicKind::Imaginary
                    };
                    let hyperbola = match kind {
                        ConicKind::Hyperbola => Hyperbola::from_foci(f1, f2, (m - p).sqrt()).ok(),
                        _ => None,
                    };
                    out.push(Component::Conic {
                        foci: [f1, f2],
                        center,
                        p,
                        q: s.re,
                        t: s.im,
                        kind,
                        hyperbola,
                        residual: resid,
                    });
                    continue 'conics;
                }
            }
        }
        break;
    }
    let degree = roots[0].len();
    if degree > 0 {
        out.push(Component::Remainder { degree });
    }
    Ok(out)
}
