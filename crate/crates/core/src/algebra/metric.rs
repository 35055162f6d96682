use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, CMatrix, CVector};

/// Sign of an indefinite norm, `[x, x]_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Plus)
        } else if x < 0.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A diagonal signature matrix `J` with `±1` entries. Any permutation is absorbed
/// into the order of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Metric {
    signs: Vec<Sign>,
}

impl Metric {
    pub fn new(signs: Vec<Sign>) -> Result<Self, AlgebraError> {
        if signs.is_empty() {
            return Err(AlgebraError::EmptyMetric);
        }
        Ok(Metric { signs })
    }

    /// Builds a metric from integer entries, rejecting anything other than `±1`.
    pub fn from_entries(entries: &[i64]) -> Result<Self, AlgebraError> {
        let signs = entries
            .iter()
            .enumerate()
            .map(|(i, &e)| match e {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                _ => Err(AlgebraError::BadMetricEntry { index: i, value: e as f64 }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(signs)
    }

    pub fn from_f64(entries: &[f64]) -> Result<Self, AlgebraError> {
        let signs = entries
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if e == 1.0 {
                    Ok(Sign::Plus)
                } else if e == -1.0 {
                    Ok(Sign::Minus)
                } else {
                    Err(AlgebraError::BadMetricEntry { index: i, value: e })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(signs)
    }

    pub fn identity(n: usize) -> Self {
        Metric {
            signs: vec![Sign::Plus; n.max(1)],
        }
    }

    /// `diag(1, -1, 1, ...)` of order `n`.
    pub fn alternating(n: usize) -> Self {
        Metric {
            signs: (0..n.max(1))
                .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
                .collect(),
        }
    }

    /// Mirror-symmetric alternating metric of even order `2k`: the first `k` entries
    /// alternate starting at `+1` and the rest mirror them, e.g. `diag(1,-1,-1,1)`.
    pub fn mirrored_alternating(n: usize) -> Self {
        let half = n / 2;
        let first: Vec<Sign> = (0..half)
            .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        let mut signs = first.clone();
        signs.extend(first.into_iter().rev());
        Metric { signs }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, i: usize) -> f64 {
        self.signs[i].value()
    }

    /// Number of `+1` entries.
    pub fn r(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn is_definite(&self) -> bool {
        let r = self.r();
        r == 0 || r == self.n()
    }

    pub fn negated(&self) -> Metric {
        Metric {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    pub fn apply(&self, x: &CVector) -> CVector {
        CVector::from_vec(
            x.iter()
                .zip(&self.signs)
                .map(|(z, s)| z * s.value())
                .collect(),
        )
    }

    pub fn to_matrix(&self) -> CMatrix {
        let d: Vec<f64> = self.signs.iter().map(|s| s.value()).collect();
        CMatrix::from_real_diag(&d)
    }

    pub fn trace(&self) -> f64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// Metric with entries reordered so that position `k` holds entry `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Metric {
        Metric {
            signs: perm.iter().map(|&p| self.signs[p]).collect(),
        }
    }

    /// Sub-metric on the contiguous index range `start..start + len`.
    pub fn block(&self, start: usize, len: usize) -> Metric {
        Metric {
            signs: self.signs[start..start + len].to_vec(),
        }
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<(), AlgebraError> {
        if self.n() != n {
            Err(AlgebraError::DimensionMismatch {
                expected: self.n(),
                found: n,
            })
        } else {
            Ok(())
        }
    }

    /// `[x, x]_J` for a vector given as a slice.
    pub(crate) fn quadratic(&self, x: &[Complex64]) -> f64 {
        x.iter()
            .zip(&self.signs)
            .map(|(z, s)| z.norm_sqr() * s.value())
            .sum()
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.signs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let signs = Vec::<Sign>::deserialize(d)?;
        Metric::new(signs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit_entries() {
        let err = Metric::from_entries(&[1, 2]).unwrap_err();
        assert_eq!(err.to_string(), "metric entries must be ±1 (entry 1 is 2)");
    }

    #[test]
    fn mirrored_patterns() {
        let m4 = Metric::mirrored_alternating(4);
        assert_eq!(m4, Metric::from_entries(&[1, -1, -1, 1]).unwrap());
        let m6 = Metric::mirrored_alternating(6);
        assert_eq!(m6, Metric::from_entries(&[1, -1, 1, 1, -1, 1]).unwrap());
    }

    #[test]
    fn applying_twice_is_identity() {
        let j = Metric::from_entries(&[1, -1, -1, 1, -1]).unwrap();
        let x = CVector::from_vec(
            (0..5)
                .map(|k| Complex64::new(k as f64 - 1.5, 0.25 * k as f64))
                .collect(),
        );
        assert_eq!(j.apply(&j.apply(&x)), x);
        assert_eq!(j.r(), 2);
    }
}
