//! The KNR generating polynomial and homogeneous ternary forms.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SpectraError;
use crate::algebra::{cartesian_decompose, h_theta, CMatrix, Metric};

type C64 = Complex64;

/// `det(H_θ(A) - z I)`.
pub fn knr_poly_eval(a: &CMatrix, j: &Metric, z: C64, theta: f64) -> Result<C64, SpectraError> {
    let h = h_theta(a, j, theta)?;
    Ok((&h - &CMatrix::scalar(a.n(), z)).det())
}

/// `det(u Re^J A + v Im^J A + w I)`.
pub fn curve_poly_eval(a: &CMatrix, j: &Metric, u: f64, v: f64, w: f64) -> Result<C64, SpectraError> {
    let (re, im) = cartesian_decompose(a, j)?;
    let m = &(&re.scale_real(u) + &im.scale_real(v)) + &CMatrix::scalar(a.n(), C64::new(w, 0.0));
    Ok(m.det())
}

/// Exponents of `u^i v^j w^k`.
pub type Monomial = [u32; 3];

/// A homogeneous polynomial in `(u, v, w)` with complex coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TernaryForm {
    terms: BTreeMap<Monomial, C64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    u: u32,
    v: u32,
    w: u32,
    coef: C64,
}

impl TernaryForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        let mut f = Self::zero();
        f.add_term([0, 0, 0], c);
        f
    }

    /// `cu·u + cv·v + cw·w`.
    pub fn linear(cu: C64, cv: C64, cw: C64) -> Self {
        let mut f = Self::zero();
        f.add_term([1, 0, 0], cu);
        f.add_term([0, 1, 0], cv);
        f.add_term([0, 0, 1], cw);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C64)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// Real-coefficient form from `(i, j, k, c)` tuples.
    pub fn from_real_terms(terms: &[(u32, u32, u32, f64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, k, c)| ([i, j, k], C64::new(c, 0.0))))
    }

    fn add_term(&mut self, m: Monomial, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(m).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: Monomial) -> C64 {
        self.terms.get(&m).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C64)> {
        self.terms.iter()
    }

    /// Total degree of the highest term; `None` for the zero form.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m[0] + m[1] + m[2]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m[0] + m[1] + m[2]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn eval(&self, u: f64, v: f64, w: f64) -> C64 {
        self.terms
            .iter()
            .map(|(m, c)| c * u.powi(m[0] as i32) * v.powi(m[1] as i32) * w.powi(m[2] as i32))
            .sum()
    }

    /// Sum of the absolute values of the terms at `(u, v, w)`; a natural scale for
    /// relative errors of evaluations with cancellation.
    pub fn eval_abs(&self, u: f64, v: f64, w: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                c.norm() * u.abs().powi(m[0] as i32) * v.abs().powi(m[1] as i32) * w.abs().powi(m[2] as i32)
            })
            .sum()
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn scale(&self, s: C64) -> TernaryForm {
        TernaryForm::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    /// Largest coefficient difference against `other`.
    pub fn max_coef_diff(&self, other: &TernaryForm) -> f64 {
        let keys: std::collections::BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|m| (self.coefficient(*m) - other.coefficient(*m)).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_coef(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients with modulus at most `eps` and imaginary parts at most `eps`.
    pub fn cleaned(&self, eps: f64) -> TernaryForm {
        TernaryForm::from_terms(self.terms.iter().filter(|(_, c)| c.norm() > eps).map(|(m, c)| {
            let c = if c.im.abs() <= eps { C64::new(c.re, 0.0) } else { *c };
            (*m, c)
        }))
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            for (name, e) in ["u", "v", "w"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Serialize for TernaryForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                u: m[0],
                v: m[1],
                w: m[2],
                coef: *c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TernaryForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        Ok(TernaryForm::from_terms(terms.into_iter().map(|t| ([t.u, t.v, t.w], t.coef))))
    }
}

/// Symbolic `det(u·re + v·im + w·I)` by Laplace expansion along rows, memoized on
/// the set of used columns. Intended for orders up to about 8.
pub fn pencil_determinant(re: &CMatrix, im: &CMatrix) -> TernaryForm {
    let n = re.n();
    assert_eq!(n, im.n(), "pencil dimension mismatch");
    assert!(n <= 12, "symbolic determinant limited to order 12");
    let entry = |i: usize, j: usize| {
        let w = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        TernaryForm::linear(re[(i, j)], im[(i, j)], w)
    };
    let mut memo: Vec<Option<TernaryForm>> = vec![None; 1 << n];
    fn rec(
        used: usize,
        n: usize,
        memo: &mut Vec<Option<TernaryForm>>,
        entry: &dyn Fn(usize, usize) -> TernaryForm,
    ) -> TernaryForm {
        let row = used.count_ones() as usize;
        if row == n {
            return TernaryForm::constant(C64::new(1.0, 0.0));
        }
        if let Some(f) = &memo[used] {
            return f.clone();
        }
        let mut acc = TernaryForm::zero();
        let mut sign = 1.0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let e = entry(row, col);
            if !e.terms.is_empty() {
                let minor = rec(used | (1 << col), n, memo, entry);
                acc = acc.add(&e.mul(&minor).scale(C64::new(sign, 0.0)));
            }
            sign = -sign;
        }
        memo[used] = Some(acc.clone());
        acc
    }
    rec(0, n, &mut memo, &entry)
}

/// The curve polynomial `det(u Re^J A + v Im^J A + w I)` as a ternary form.
pub fn curve_form(a: &CMatrix, j: &Metric) -> Result<TernaryForm, SpectraError> {
    let (re, im) = cartesian_decompose(a, j)?;
    Ok(pencil_determinant(&re, &im))
}
