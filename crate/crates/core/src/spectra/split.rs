//! Sign classification of eigenvalues of J-Hermitian matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{eig_dense, hermitian_eigen, EigenPair};
use super::SpectraError;
use crate::algebra::{j_hermitian_defect, CMatrix, CVector, Metric};
use crate::tol;

type C64 = Complex64;

/// Which sign class lies to the right of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `min σ+ > max σ-`: `λ_L = max σ-`, `λ_R = min σ+`.
    PlusRight,
    /// `min σ- > max σ+`: `λ_L = max σ+`, `λ_R = min σ-`.
    MinusRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "branch")]
pub enum SplitStatus {
    Separated(Branch),
    /// `σ+` and `σ-` strictly interlace.
    Interlacing,
    /// The two classes meet within the tie tolerance.
    Touching,
    NonReal,
    /// Some real eigenvalue has a (near-)neutral eigenspace.
    Neutral,
    /// One sign class is empty.
    Definite,
}

/// Eigenvalue with no definite sign: non-real, or real with neutral eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeutralEigen {
    pub value: C64,
    pub j_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSplit {
    /// Descending.
    pub sigma_plus: Vec<f64>,
    /// Descending.
    pub sigma_minus: Vec<f64>,
    pub neutral: Vec<NeutralEigen>,
    pub all_real: bool,
    pub in_class_j: bool,
    pub status: SplitStatus,
}

impl SpectrumSplit {
    pub fn branch(&self) -> Option<Branch> {
        match self.status {
            SplitStatus::Separated(b) => Some(b),
            _ => None,
        }
    }

    /// `(λ_L, λ_R)` when in class 𝒥.
    pub fn support_pair(&self) -> Option<(f64, f64)> {
        let min = |v: &[f64]| v.last().copied();
        let max = |v: &[f64]| v.first().copied();
        match self.branch()? {
            Branch::PlusRight => Some((max(&self.sigma_minus)?, min(&self.sigma_plus)?)),
            Branch::MinusRight => Some((max(&self.sigma_plus)?, min(&self.sigma_minus)?)),
        }
    }
}

fn cluster(values: &[C64], radius: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (root(&mut label, i), root(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut label, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Eigenpairs of `h` with J-norms. Repeated eigenvalues get a J-orthogonal basis of
/// their eigenspace; directions missing from a defective eigenspace are returned
/// with `j_norm = Some(0.0)`.
pub fn j_eigenpairs(h: &CMatrix, j: &Metric, tol: f64) -> Result<Vec<EigenPair>, SpectraError> {
    j.check_dim(h.n())?;
    let pairs = eig_dense(h, tol)?;
    let hscale = tol::scale(h.frobenius_norm());
    let values: Vec<C64> = pairs.iter().map(|p| p.value).collect();
    let mut out = Vec::with_capacity(pairs.len());
    for group in cluster(&values, tol::CLUSTER_REL * hscale) {
        if group.len() == 1 {
            let mut p = pairs[group[0]].clone();
            p.j_norm = Some(j.quadratic(p.vector.as_slice()));
            out.push(p);
            continue;
        }
        let k = group.len();
        let mean: C64 = group.iter().map(|&i| values[i]).sum::<C64>() / k as f64;
        let shifted = h - &CMatrix::scalar(h.n(), mean);
        let (_, basis) = hermitian_eigen(&(&shifted.adjoint() * &shifted));
        let resid_tol = 1e-6 * hscale;
        let mut good: Vec<CVector> = Vec::new();
        for col in 0..k {
            let v = basis.column(col);
            if shifted.mul_vec(&v).norm() <= resid_tol {
                good.push(v);
            } else {
                out.push(EigenPair {
                    value: mean,
                    vector: v,
                    j_norm: Some(0.0),
                });
            }
        }
        if good.is_empty() {
            continue;
        }
        let m = good.len();
        let gram = CMatrix::from_fn(m, |a, b| {
            good[a]
                .iter()
                .zip(good[b].iter())
                .zip(j.signs())
                .map(|((x, y), s)| x.conj() * y * s.value())
                .sum()
        });
        let (mu, w) = hermitian_eigen(&gram);
        for (col, &mu_c) in mu.iter().enumerate() {
            let mut v = CVector::zeros(h.n());
            for (b, gv) in good.iter().enumerate() {
                let coef = w[(b, col)];
                for i in 0..h.n() {
                    v[i] += gv[i] * coef;
                }
            }
            let nrm = v.norm_sqr();
            out.push(EigenPair {
                value: mean,
                vector: v.normalized(),
                j_norm: Some(mu_c / nrm),
            });
        }
    }
    Ok(out)
}

/// Partitions the spectrum of a J-Hermitian `h` into `σ+`, `σ-` and neutral parts.
pub fn split_spectrum(h: &CMatrix, j: &Metric, tol: f64) -> Result<SpectrumSplit, SpectraError> {
    if !(tol > 0.0) {
        return Err(SpectraError::BadTolerance(tol));
    }
    j.check_dim(h.n())?;
    let hnorm = h.frobenius_norm();
    let defect = j_hermitian_defect(h, j)?;
    if defect > tol * tol::scale(hnorm) {
        return Err(SpectraError::NotJHermitian { defect });
    }
    let pairs = j_eigenpairs(h, j, tol)?;
    Ok(split_pairs(&pairs, j, hnorm, tol))
}

pub(crate) fn split_pairs(pairs: &[EigenPair], j: &Metric, hnorm: f64, tol: f64) -> SpectrumSplit {
    let imag_tol = tol::REAL_EIG_REL * tol::scale(hnorm);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut neutral = Vec::new();
    let mut all_real = true;
    for p in pairs {
        let jn = p.j_norm.unwrap_or(0.0);
        if p.value.im.abs() > imag_tol {
            all_real = false;
            neutral.push(NeutralEigen { value: p.value, j_norm: jn.abs() });
        } else if jn.abs() < tol {
            neutral.push(NeutralEigen {
                value: C64::new(p.value.re, 0.0),
                j_norm: jn.abs(),
            });
        } else if jn > 0.0 {
            plus.push(p.value.re);
        } else {
            minus.push(p.value.re);
        }
    }
    plus.sort_by(|a, b| b.total_cmp(a));
    minus.sort_by(|a, b| b.total_cmp(a));
    let status = if !all_real {
        SplitStatus::NonReal
    } else if !neutral.is_empty() || plus.len() != j.r() || minus.len() != j.n() - j.r() {
        SplitStatus::Neutral
    } else if plus.is_empty() || minus.is_empty() {
        SplitStatus::Definite
    } else {
        let tie = tol::TIE_REL * tol::scale(hnorm);
        let gap_plus_right = plus[plus.len() - 1] - minus[0];
        let gap_minus_right = minus[minus.len() - 1] - plus[0];
        if gap_plus_right > tie {
            SplitStatus::Separated(Branch::PlusRight)
        } else if gap_minus_right > tie {
            SplitStatus::Separated(Branch::MinusRight)
        } else if gap_plus_right >= -tie || gap_minus_right >= -tie {
            SplitStatus::Touching
        } else {
            SplitStatus::Interlacing
        }
    };
    SpectrumSplit {
        sigma_plus: plus,
        sigma_minus: minus,
        neutral,
        all_real,
        in_class_j: matches!(status, SplitStatus::Separated(_)),
        status,
    }
}
