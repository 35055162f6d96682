use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::blocks::{block_reduce4, block_reduce6};
use super::{TridiagError, TridiagonalSpec};
use crate::algebra::{trace_adj_product, Metric};
use crate::geometry::{HrtAxes, Hyperbola};
use crate::spectra::{curve_form, TernaryForm};
use crate::tol::{self, Strict};

type C64 = Complex64;

const AT_BOUNDARY: &str = "inequality holds with equality within the guard band (at boundary)";

fn note_for(check: Strict, what: &str, notes: &mut Vec<String>) {
    if check == Strict::AtBoundary {
        notes.push(format!("{what}: {AT_BOUNDARY}"));
    }
}

fn require_order(spec: &TridiagonalSpec, m: usize) -> Result<(), TridiagError> {
    if spec.order == m {
        Ok(())
    } else {
        Err(TridiagError::UnsupportedOrder(spec.order))
    }
}

/// Hyperbola with foci `±√Δ` and full non-transverse length `√len_sq`.
fn centered(delta: C64, len_sq: f64) -> Option<Hyperbola> {
    let r = delta.sqrt();
    Hyperbola::from_foci(r, -r, 0.5 * len_sq.max(0.0).sqrt()).ok()
}

/// `|M| < 2|Δ|`, the entry-wise non-degeneracy condition.
fn disc_check(m: f64, delta: C64) -> Strict {
    tol::strict_lt(m.abs(), 2.0 * delta.norm())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate3 {
    pub delta: C64,
    pub trace_adj: f64,
    pub verdict: bool,
    pub hyperbola: Option<Hyperbola>,
    /// The eigenvalue `a` outside the conic component.
    pub third_eigenvalue: f64,
    /// Squared full non-transverse length, `2|Δ| - (Tr(A#A) - a²)`.
    pub nontransverse_sq: f64,
    pub notes: Vec<String>,
}

/// Order-3 certificate: `a² - 2|Δ| < Tr(A#A) < a² + 2|Δ|` with `Δ = a² + b₁c₁ + b₂c₂`.
pub fn certify_order3(spec: &TridiagonalSpec) -> Result<Certificate3, TridiagError> {
    require_order(spec, 3)?;
    let a2 = spec.a * spec.a;
    let delta = C64::new(a2, 0.0) + spec.pair_product(0) + spec.pair_product(1);
    let trace_adj = 3.0 * a2 - (spec.pair_norm(0) + spec.pair_norm(1));
    let d = delta.norm();
    let check = tol::strict_lt(a2 - 2.0 * d, trace_adj).and(tol::strict_lt(trace_adj, a2 + 2.0 * d));
    let mut notes = Vec::new();
    note_for(check, "a² - 2|Δ| < Tr(A#A) < a² + 2|Δ|", &mut notes);
    let nontransverse_sq = 2.0 * d - (trace_adj - a2);
    let verdict = check.holds();
    Ok(Certificate3 {
        delta,
        trace_adj,
        verdict,
        hyperbola: if verdict { centered(delta, nontransverse_sq) } else { None },
        third_eigenvalue: spec.a,
        nontransverse_sq,
        notes,
    })
}

/// A focal conic that may degenerate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FocalSet {
    Hyperbola { hyperbola: Hyperbola },
    /// `M ≥ 2|Δ|`: the conic collapses to its foci.
    PointPair { points: [C64; 2] },
    /// `M ≤ -2|Δ|`: no real conic.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate5 {
    pub delta1: C64,
    pub delta2: C64,
    pub m1: f64,
    pub m2: f64,
    pub h1: FocalSet,
    pub h2: Option<Hyperbola>,
    pub verdict: bool,
    /// `Σ_k (2|Δ_k| - M_k)`, the sum of squared non-transverse lengths.
    pub axis_sum: f64,
    pub notes: Vec<String>,
}

/// Order-5 certificate for centrosymmetric specs: `|M₂| < 2|Δ₂|`.
pub fn certify_order5(spec: &TridiagonalSpec) -> Result<Certificate5, TridiagError> {
    require_order(spec, 5)?;
    spec.canonical()?;
    let a2 = spec.a * spec.a;
    let delta1 = C64::new(a2, 0.0) + spec.pair_product(0);
    let delta2 = delta1 + spec.pair_product(1) * 2.0;
    let m1 = 2.0 * a2 - spec.pair_norm(0);
    let m2 = m1 - 2.0 * spec.pair_norm(1);
    let mut notes = Vec::new();
    let c2 = disc_check(m2, delta2);
    note_for(c2, "|M₂| < 2|Δ₂|", &mut notes);
    let verdict = c2.holds();
    let r1 = delta1.sqrt();
    let h1 = match disc_check(m1, delta1) {
        Strict::Holds => match centered(delta1, 2.0 * delta1.norm() - m1) {
            Some(h) => FocalSet::Hyperbola { hyperbola: h },
            None => FocalSet::PointPair { points: [r1, -r1] },
        },
        _ if m1 > 0.0 => FocalSet::PointPair { points: [r1, -r1] },
        _ => FocalSet::Empty,
    };
    Ok(Certificate5 {
        delta1,
        delta2,
        m1,
        m2,
        h1,
        h2: if verdict { centered(delta2, 2.0 * delta2.norm() - m2) } else { None },
        verdict,
        axis_sum: 2.0 * delta1.norm() - m1 + 2.0 * delta2.norm() - m2,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcase4 {
    /// `b₂ = 0` and `|M| < 2|Δ|`: a single hyperbolic disc.
    B2zeroDisc,
    /// `b₂ ≠ 0` and both `S±` bound non-degenerate hyperbolic discs.
    BihyperbolicA,
    NotCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate4 {
    pub delta: C64,
    pub delta_plus: C64,
    pub delta_minus: C64,
    pub m: f64,
    /// `M±` under the pairing consistent with the 2×2 range theorem on `S±`.
    pub m_plus: f64,
    pub m_minus: f64,
    /// `M + ½|b₂|² ± 2a Re(b₂)`, the literal pairing of the signs.
    pub m_plus_literal: f64,
    pub m_minus_literal: f64,
    /// The consistent pairing differs from the literal one.
    pub pairing_swapped: bool,
    pub b2_zero: bool,
    pub h_plus: Option<Hyperbola>,
    pub h_minus: Option<Hyperbola>,
    /// Entry-wise full non-transverse lengths `(2|Δ±| - M±)^{1/2}` (consistent pairing).
    pub entrywise_lengths: [Option<f64>; 2],
    pub verdict: bool,
    /// Verdict obtained with the literal pairing.
    pub verdict_literal: bool,
    pub subcase: Subcase4,
    pub notes: Vec<String>,
}

fn length(sq: f64) -> Option<f64> {
    (sq >= 0.0).then(|| sq.sqrt())
}

/// Order-4 certificate for centrosymmetric specs.
pub fn certify_order4(spec: &TridiagonalSpec) -> Result<Certificate4, TridiagError> {
    require_order(spec, 4)?;
    let (sp, sm) = block_reduce4(spec)?;
    let j1 = Metric::alternating(2);
    let a = spec.a;
    let a2 = a * a;
    let b2 = spec.pair_mean(1);
    let b2_zero = spec.is_negligible(b2);
    let delta = C64::new(a2, 0.0) + spec.pair_product(0);
    let quarter = b2 * b2 * 0.25;
    let delta_plus = delta - b2 * a + quarter;
    let delta_minus = delta + b2 * a + quarter;
    let m = 2.0 * a2 - spec.pair_norm(0);
    let base = m + 0.5 * b2.norm_sqr();
    let shift = 2.0 * a * b2.re;
    let literal = (base + shift, base - shift);
    let swapped = (base - shift, base + shift);
    // the range theorem on S± gives Tr(J₁S±*J₁S±) - ½|b₂|² = M±
    let direct = (
        trace_adj_product(&sp, &j1)? - 0.5 * b2.norm_sqr(),
        trace_adj_product(&sm, &j1)? - 0.5 * b2.norm_sqr(),
    );
    let dev = |p: (f64, f64)| (p.0 - direct.0).abs().max((p.1 - direct.1).abs());
    let use_swapped = dev(swapped) < dev(literal);
    let (m_plus, m_minus) = if use_swapped { swapped } else { literal };
    let pairing_swapped = use_swapped && tol::strict_lt(0.0, shift.abs()).holds();

    let mut notes = Vec::new();
    if pairing_swapped {
        notes.push(format!(
            "literal M± pairing disagrees with the 2×2 range theorem on S±; using M₊ = {m_plus}, M₋ = {m_minus}"
        ));
    }
    let (check, check_literal) = if b2_zero {
        let c = disc_check(m, delta);
        note_for(c, "|M| < 2|Δ|", &mut notes);
        (c, c)
    } else {
        let c = disc_check(m_plus, delta_plus).and(disc_check(m_minus, delta_minus));
        note_for(c, "|M±| < 2|Δ±|", &mut notes);
        let p = disc_check(literal.0, delta_plus).and(disc_check(literal.1, delta_minus));
        (c, p)
    };
    let verdict = check.holds();
    let subcase = match (verdict, b2_zero) {
        (false, _) => Subcase4::NotCertified,
        (true, true) => Subcase4::B2zeroDisc,
        (true, false) => Subcase4::BihyperbolicA,
    };
    let half = b2 * 0.5;
    let hrt = |centre: C64, d: C64, s: &crate::algebra::CMatrix| -> Result<Option<Hyperbola>, TridiagError> {
        let r = d.sqrt();
        Ok(HrtAxes::new(centre + r, centre - r, trace_adj_product(s, &j1)?).hyperbola())
    };
    let (h_plus, h_minus) = if verdict {
        (hrt(half, delta_plus, &sp)?, hrt(-half, delta_minus, &sm)?)
    } else {
        (None, None)
    };
    Ok(Certificate4 {
        delta,
        delta_plus,
        delta_minus,
        m,
        m_plus,
        m_minus,
        m_plus_literal: literal.0,
        m_minus_literal: literal.1,
        pairing_swapped,
        b2_zero,
        h_plus,
        h_minus,
        entrywise_lengths: [
            length(2.0 * delta_plus.norm() - m_plus),
            length(2.0 * delta_minus.norm() - m_minus),
        ],
        verdict,
        verdict_literal: check_literal.holds(),
        subcase,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate6 {
    pub b3_zero: bool,
    /// `a² + b₁b₅ + b₂b₄`.
    pub focus_sq: C64,
    /// `Tr(J₂S*J₂S)` for the upper block with `b₃ = 0`.
    pub trace_s: f64,
    pub verdict: bool,
    pub k: Option<Hyperbola>,
    /// Generating cubics `det(u Re + v Im + w I)` of the two blocks, when `b₃ ≠ 0`.
    pub cubic_factors: Option<[TernaryForm; 2]>,
    pub notes: Vec<String>,
}

/// Order-6 certificate for centrosymmetric specs; only `b₃ = 0` can be certified.
pub fn certify_order6(spec: &TridiagonalSpec) -> Result<Certificate6, TridiagError> {
    require_order(spec, 6)?;
    let (upper, lower) = block_reduce6(spec)?;
    let a2 = spec.a * spec.a;
    let b3 = spec.pair_mean(2);
    let b3_zero = spec.is_negligible(b3);
    let focus_sq = C64::new(a2, 0.0) + spec.pair_product(0) + spec.pair_product(1);
    let trace_s = 3.0 * a2 - spec.pair_norm(0) - spec.pair_norm(1);
    let mut notes = Vec::new();
    if b3_zero {
        let check = tol::strict_lt((trace_s - a2).abs(), 2.0 * focus_sq.norm());
        note_for(check, "|Tr(J₂S*J₂S) - a²| < 2|a² + b₁b₅ + b₂b₄|", &mut notes);
        let verdict = check.holds();
        let len_sq = 2.0 * focus_sq.norm() - (trace_s - a2);
        Ok(Certificate6 {
            b3_zero,
            focus_sq,
            trace_s,
            verdict,
            k: if verdict { centered(focus_sq, len_sq) } else { None },
            cubic_factors: None,
            notes,
        })
    } else {
        notes.push("b₃ ≠ 0: the generating polynomial splits into two cubics; no conic certificate".into());
        let j2 = Metric::alternating(3);
        Ok(Certificate6 {
            b3_zero,
            focus_sq,
            trace_s,
            verdict: false,
            k: None,
            cubic_factors: Some([curve_form(&upper, &j2)?, curve_form(&lower, &j2)?]),
            notes,
        })
    }
}

/// Certificate of any supported order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "order")]
pub enum Certificate {
    #[serde(rename = "3")]
    Order3(Certificate3),
    #[serde(rename = "4")]
    Order4(Certificate4),
    #[serde(rename = "5")]
    Order5(Certificate5),
    #[serde(rename = "6")]
    Order6(Certificate6),
}

impl Certificate {
    pub fn verdict(&self) -> bool {
        match self {
            Certificate::Order3(c) => c.verdict,
            Certificate::Order4(c) => c.verdict,
            Certificate::Order5(c) => c.verdict,
            Certificate::Order6(c) => c.verdict,
        }
    }

    pub fn notes(&self) -> &[String] {
        match self {
            Certificate::Order3(c) => &c.notes,
            Certificate::Order4(c) => &c.notes,
            Certificate::Order5(c) => &c.notes,
            Certificate::Order6(c) => &c.notes,
        }
    }

    /// Certified hyperbolas of the conic components.
    pub fn hyperbolas(&self) -> Vec<Hyperbola> {
        match self {
            Certificate::Order3(c) => c.hyperbola.into_iter().collect(),
            Certificate::Order4(c) => {
                let mut v: Vec<Hyperbola> = c.h_plus.into_iter().collect();
                if !c.b2_zero {
                    v.extend(c.h_minus);
                }
                v
            }
            Certificate::Order5(c) => {
                let mut v: Vec<Hyperbola> = c.h2.into_iter().collect();
                if let FocalSet::Hyperbola { hyperbola } = c.h1 {
                    if c.verdict {
                        v.push(hyperbola);
                    }
                }
                v
            }
            Certificate::Order6(c) => c.k.into_iter().collect(),
        }
    }
}

/// Dispatches on the order of `spec`.
pub fn certify(spec: &TridiagonalSpec) -> Result<Certificate, TridiagError> {
    match spec.order {
        3 => certify_order3(spec).map(Certificate::Order3),
        4 => certify_order4(spec).map(Certificate::Order4),
        5 => certify_order5(spec).map(Certificate::Order5),
        6 => certify_order6(spec).map(Certificate::Order6),
        m => Err(TridiagError::UnsupportedOrder(m)),
    }
}
