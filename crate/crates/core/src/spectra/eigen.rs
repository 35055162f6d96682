//! Dense complex eigensolver: Householder reduction to Hessenberg form followed by
//! single-shift QR with Givens rotations, then triangular back-substitution for
//! eigenvectors. A cyclic Jacobi solver handles Hermitian matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SpectraError;
use crate::algebra::{CMatrix, CVector};

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Largest order accepted by the dense solvers.
pub const MAX_ORDER: usize = 16;

const ITER_PER_EIGENVALUE: usize = 60;

/// An eigenvalue with a unit eigenvector and, once a metric is known, its J-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: C64,
    pub vector: CVector,
    pub j_norm: Option<f64>,
}

/// Complex Schur decomposition `M = Z T Z*` with `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur {
    pub t: CMatrix,
    pub z: CMatrix,
    pub iterations: usize,
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn hessenberg(m: &CMatrix) -> (CMatrix, CMatrix) {
    let n = m.n();
    let mut h = m.clone();
    let mut q = CMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let alpha_norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // H <- (I - 2 v v*) H on rows k+1..n
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * s * 2.0;
            }
        }
        // H <- H (I - 2 v v*) and Q <- Q (I - 2 v v*) on columns k+1..n
        for mat in [&mut h, &mut q] {
            for i in 0..n {
                let s: C64 = v.iter().enumerate().map(|(t, vi)| mat[(i, k + 1 + t)] * vi).sum();
                for (t, vi) in v.iter().enumerate() {
                    mat[(i, k + 1 + t)] -= s * vi.conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let s1 = mid + disc;
    let s2 = mid - disc;
    if (s1 - d).norm() <= (s2 - d).norm() {
        s1
    } else {
        s2
    }
}

/// Complex Schur form of `m`.
pub fn schur(m: &CMatrix) -> Result<Schur, SpectraError> {
    let n = m.n();
    if n > MAX_ORDER {
        return Err(SpectraError::TooLarge { n });
    }
    if !m.is_finite() {
        return Err(SpectraError::NonFinite);
    }
    let (mut h, mut z) = hessenberg(m);
    if n <= 1 {
        return Ok(Schur { t: h, z, iterations: 0 });
    }
    let eps = f64::EPSILON;
    let norm = m.frobenius_norm();
    let cap = ITER_PER_EIGENVALUE * n;
    let mut total = 0usize;
    let mut hi = n - 1;
    let mut since_deflation = 0usize;
    let mut rot: Vec<(f64, C64)> = Vec::with_capacity(n);
    while hi > 0 {
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if diag == 0.0 { norm } else { diag };
            if sub <= eps * scale || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= cap {
            return Err(SpectraError::NoConvergence {
                iterations: total,
                matrix: m.clone(),
            });
        }
        total += 1;
        since_deflation += 1;
        let mu = if since_deflation % 11 == 10 {
            h[(hi, hi)] + C64::new(0.75, 0.5) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rot.push((c, s));
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = ZERO;
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            let rows = (k + 2).min(hi) + 1;
            for i in 0..rows {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * c + y * s.conj();
                z[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { t: h, z, iterations: total })
}

/// Eigenvectors of an upper-triangular `t`, one per diagonal entry.
fn triangular_eigenvectors(t: &CMatrix) -> Vec<CVector> {
    let n = t.n();
    let smin = (f64::EPSILON * t.frobenius_norm()).max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let mut y = vec![ZERO; n];
            y[k] = ONE;
            for i in (0..k).rev() {
                let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * y[j]).sum();
                let mut d = t[(i, i)] - lambda;
                if d.norm() < smin {
                    d = C64::new(smin, 0.0);
                }
                y[i] = -s / d;
                let big = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if big > 1e100 {
                    for z in y.iter_mut() {
                        *z /= big;
                    }
                }
            }
            CVector::from_vec(y)
        })
        .collect()
}

/// All eigenpairs of `m` (with multiplicity), eigenvectors of unit Euclidean length.
/// `tol` only validates the call; accuracy is that of backward-stable QR.
pub fn eig_dense(m: &CMatrix, tol: f64) -> Result<Vec<EigenPair>, SpectraError> {
    if !(tol > 0.0) {
        return Err(SpectraError::BadTolerance(tol));
    }
    let s = schur(m)?;
    let ys = triangular_eigenvectors(&s.t);
    Ok(ys
        .into_iter()
        .enumerate()
        .map(|(k, y)| EigenPair {
            value: s.t[(k, k)],
            vector: s.z.mul_vec(&y).normalized(),
            j_norm: None,
        })
        .collect())
}

/// Eigenvalues only, in Schur order.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>, SpectraError> {
    Ok(schur(m)?.t.diagonal())
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Returns ascending eigenvalues and a unitary matrix whose columns are eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.n();
    let mut a = CMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let total = a.frobenius_norm();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-17 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                let nb = b.norm();
                if nb == 0.0 {
                    continue;
                }
                let phase = b / nb;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * nb);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let em = phase.conj();
                // columns: A <- A U, V <- V U
                for mat in [&mut a, &mut v] {
                    for i in 0..n {
                        let x = mat[(i, p)];
                        let y = mat[(i, q)];
                        mat[(i, p)] = x * c - y * em * s;
                        mat[(i, q)] = x * s + y * em * c;
                    }
                }
                // rows: A <- U* A
                let ep = phase;
                for j in 0..n {
                    let x = a[(p, j)];
                    let y = a[(q, j)];
                    a[(p, j)] = x * c - y * ep * s;
                    a[(q, j)] = x * s + y * ep * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = CMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    (values, vecs)
}
