use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Hyperbola;
use crate::tol::{self, Strict};

type C64 = Complex64;

/// Axis data of a 2×2 range from its eigenvalues and `Tr(A#A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HrtAxes {
    pub eigenvalues: [C64; 2],
    pub trace_adj: f64,
    /// Squared full transverse length, `Tr(A#A) - 2Re(λ₁λ̄₂)`.
    pub transverse_sq: f64,
    /// Squared full non-transverse length, `|λ₁|² + |λ₂|² - Tr(A#A)`.
    pub nontransverse_sq: f64,
}

impl HrtAxes {
    pub fn new(l1: C64, l2: C64, trace_adj: f64) -> Self {
        let cross = 2.0 * (l1 * l2.conj()).re;
        HrtAxes {
            eigenvalues: [l1, l2],
            trace_adj,
            transverse_sq: trace_adj - cross,
            nontransverse_sq: l1.norm_sqr() + l2.norm_sqr() - trace_adj,
        }
    }

    /// `2Re(λ̄₁λ₂) < Tr(A#A) < |λ₁|² + |λ₂|²`, strictly.
    pub fn check(&self) -> Strict {
        let [l1, l2] = self.eigenvalues;
        let lower = 2.0 * (l1.conj() * l2).re;
        let upper = l1.norm_sqr() + l2.norm_sqr();
        tol::strict_lt(lower, self.trace_adj).and(tol::strict_lt(self.trace_adj, upper))
    }

    /// The bounding hyperbola when the strict condition holds.
    pub fn hyperbola(&self) -> Option<Hyperbola> {
        if !self.check().holds() {
            return None;
        }
        let [l1, l2] = self.eigenvalues;
        let center = (l1 + l2) * 0.5;
        let mut h = Hyperbola::new(
            center,
            (l1 - l2).arg(),
            0.5 * self.transverse_sq.max(0.0).sqrt(),
            0.5 * self.nontransverse_sq.max(0.0).sqrt(),
        )
        .ok()?;
        h.foci = [l1, l2];
        Some(h)
    }
}
