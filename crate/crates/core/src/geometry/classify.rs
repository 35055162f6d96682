use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::boundary::{curve_from_samples, flats_and_corners, sweep_samples, ThetaSample};
use super::components::{knr_components, Component};
use super::fit::{fit_hyperbola_samples, HyperbolaFit};
use super::{nesting, BoundaryCurve, Corner, FlatSegment, GeometryError, HrtAxes, Hyperbola};
use crate::algebra::{j_hermitian_defect, trace_adj_product, CMatrix, Metric};
use crate::spectra::{
    eigenvalues, split_spectrum, uniform_grid, window_from_sweep, SplitStatus, ThetaWindow, MAX_ORDER,
};
use crate::tol;
use crate::tridiag::{certify, normal_form, Certificate};

type C64 = Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RangeKind {
    HyperbolicDisc { hyperbola: Hyperbola },
    BihyperbolicNested { outer: Hyperbola, inner: Hyperbola },
    BihyperbolicFlat { plus: Hyperbola, minus: Hyperbola, flats: Vec<FlatSegment> },
    WholePlane,
    /// `(-∞, lo] ∪ [hi, ∞)` on the real axis.
    DegenerateRays { endpoints: [f64; 2] },
    RealLine,
    Point { value: C64 },
    NumericOnly { curve: BoundaryCurve },
}

impl RangeKind {
    pub fn name(&self) -> &'static str {
        match self {
            RangeKind::HyperbolicDisc { .. } => "hyperbolic_disc",
            RangeKind::BihyperbolicNested { .. } => "bihyperbolic_nested",
            RangeKind::BihyperbolicFlat { .. } => "bihyperbolic_flat",
            RangeKind::WholePlane => "whole_plane",
            RangeKind::DegenerateRays { .. } => "degenerate_rays",
            RangeKind::RealLine => "real_line",
            RangeKind::Point { .. } => "point",
            RangeKind::NumericOnly { .. } => "numeric_only",
        }
    }
}

/// Everything the classifier looked at, in order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub notes: Vec<String>,
    pub grid: usize,
    pub valid_thetas: usize,
    pub interlacing_thetas: Vec<f64>,
    pub window: Option<ThetaWindow>,
    pub certificate: Option<Certificate>,
    pub components: Vec<Component>,
    pub corners: Vec<Corner>,
    pub flats: Vec<FlatSegment>,
    pub fit: Option<HyperbolaFit>,
    /// Distance between the reported outer hyperbola and the free-center fit.
    pub fit_distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeClassification {
    #[serde(flatten)]
    pub kind: RangeKind,
    pub evidence: Evidence,
}

impl RangeClassification {
    fn new(kind: RangeKind, evidence: Evidence) -> Self {
        RangeClassification { kind, evidence }
    }

    /// Hyperbolas that bound the range, if any.
    pub fn boundary_hyperbolas(&self) -> Vec<Hyperbola> {
        match &self.kind {
            RangeKind::HyperbolicDisc { hyperbola } => vec![*hyperbola],
            RangeKind::BihyperbolicNested { outer, .. } => vec![*outer],
            RangeKind::BihyperbolicFlat { plus, minus, .. } => vec![*plus, *minus],
            _ => Vec::new(),
        }
    }
}

fn hrt_of(a: &CMatrix, j: &Metric) -> Result<HrtAxes, GeometryError> {
    let ev = eigenvalues(a)?;
    Ok(HrtAxes::new(ev[0], ev[1], trace_adj_product(a, j)?))
}

fn hermitian_kind(a: &CMatrix, j: &Metric) -> Result<RangeKind, GeometryError> {
    let split = split_spectrum(a, j, tol::DEFAULT_TOL)?;
    Ok(match split.support_pair() {
        Some((l, r)) => RangeKind::DegenerateRays { endpoints: [l, r] },
        None => RangeKind::RealLine,
    })
}

/// The range of a 2×2 matrix under `diag(1,-1)` or `diag(-1,1)`.
pub fn hyperbola_2x2(a: &CMatrix, j: &Metric) -> Result<RangeClassification, GeometryError> {
    if a.n() != 2 {
        return Err(GeometryError::WrongDimension { expected: 2, found: a.n() });
    }
    if j.n() != 2 || j.is_definite() {
        return Err(GeometryError::BadMetric);
    }
    let mut ev = Evidence { grid: tol::DEFAULT_GRID, ..Evidence::default() };
    let scale = tol::scale(a.max_norm());
    if a.is_scalar(tol::DEFAULT_TOL * scale) {
        return Ok(RangeClassification::new(RangeKind::Point { value: a[(0, 0)] }, ev));
    }
    if j_hermitian_defect(a, j)? <= tol::DEFAULT_TOL * scale {
        return Ok(RangeClassification::new(hermitian_kind(a, j)?, ev));
    }
    let hrt = hrt_of(a, j)?;
    if let Some(h) = hrt.hyperbola() {
        ev.notes.push("2×2 range theorem: strict trace condition holds".into());
        return Ok(RangeClassification::new(RangeKind::HyperbolicDisc { hyperbola: h }, ev));
    }
    ev.notes.push(format!("2×2 range theorem condition fails ({:?})", hrt.check()));
    let samples = sweep_samples(a, j, &uniform_grid(tol::DEFAULT_GRID), tol::DEFAULT_TOL)?;
    Ok(RangeClassification::new(
        RangeKind::NumericOnly { curve: curve_from_samples(&samples) },
        ev,
    ))
}

/// Component index supporting each (sample, side); `None` when unmatched.
fn ownership(
    samples: &[ThetaSample],
    comps: &[Component],
    tol: f64,
) -> (Vec<usize>, usize) {
    let mut counts = vec![0usize; comps.len()];
    let mut unmatched = 0;
    for s in samples {
        let (Some(l), Some(r)) = (s.support.lambda_l, s.support.lambda_r) else {
            continue;
        };
        for lambda in [l, r] {
            let hits: Vec<usize> = comps
                .iter()
                .enumerate()
                .filter(|(_, c)| c.roots(s.support.theta).iter().any(|x| (x - lambda).abs() <= tol))
                .map(|(i, _)| i)
                .collect();
            match hits.len() {
                0 => unmatched += 1,
                1 => counts[hits[0]] += 1,
                _ => {}
            }
        }
    }
    (counts, unmatched)
}

/// Components with repeated factors merged.
fn distinct(comps: &[Component], tol: f64) -> Vec<Component> {
    let same = |x: &Component, y: &Component| match (x, y) {
        (Component::Point { value: u }, Component::Point { value: v }) => (u - v).norm() <= tol,
        (
            Component::Conic { center: c1, p: p1, q: q1, t: t1, .. },
            Component::Conic { center: c2, p: p2, q: q2, t: t2, .. },
        ) => (c1 - c2).norm().max((p1 - p2).abs()).max((q1 - q2).abs()).max((t1 - t2).abs()) <= tol,
        _ => false,
    };
    let mut out: Vec<Component> = Vec::new();
    for c in comps {
        if !out.iter().any(|o| same(o, c)) {
            out.push(c.clone());
        }
    }
    out
}

fn dedup_hyperbolas(hs: Vec<Hyperbola>, tol: f64) -> Vec<Hyperbola> {
    let mut out: Vec<Hyperbola> = Vec::new();
    for h in hs {
        if !out.iter().any(|g| g.distance(&h) <= tol) {
            out.push(h);
        }
    }
    out
}

/// Classifies `W^J(A)` from a support sweep on `grid_size` angles.
///
/// Order of checks: scalar, J-Hermitian, 2×2 range theorem, interlacing anywhere on
/// the grid (whole plane), then the factor structure of the generating polynomial
/// matched against the support bounds, with tridiagonal certificates attached and
/// preferred for the reported hyperbolas. Never fails: errors become evidence.
pub fn classify_range(a: &CMatrix, j: &Metric, grid_size: usize) -> RangeClassification {
    let grid_size = grid_size.max(tol::MIN_GRID);
    match classify_inner(a, j, grid_size) {
        Ok(c) => c,
        Err(e) => RangeClassification::new(
            RangeKind::NumericOnly {
                curve: BoundaryCurve { points: Vec::new(), invalid_thetas: Vec::new() },
            },
            Evidence {
                notes: vec![format!("classification aborted: {e}")],
                grid: grid_size,
                ..Evidence::default()
            },
        ),
    }
}

fn classify_inner(a: &CMatrix, j: &Metric, grid: usize) -> Result<RangeClassification, GeometryError> {
    let n = a.n();
    if j.n() != n {
        return Err(crate::algebra::AlgebraError::DimensionMismatch { expected: n, found: j.n() }.into());
    }
    if n > MAX_ORDER {
        return Err(crate::spectra::SpectraError::TooLarge { n }.into());
    }
    let mut ev = Evidence { grid, ..Evidence::default() };
    let scale = tol::scale(a.max_norm());
    if a.is_scalar(tol::DEFAULT_TOL * scale) {
        ev.notes.push("scalar matrix".into());
        return Ok(RangeClassification::new(RangeKind::Point { value: a[(0, 0)] }, ev));
    }
    if j.is_definite() {
        ev.notes.push("definite metric: the range is a classical numerical range, not analysed here".into());
        return Err(crate::spectra::SpectraError::DefiniteMetric.into());
    }
    if j_hermitian_defect(a, j)? <= tol::DEFAULT_TOL * scale {
        ev.notes.push("J-Hermitian matrix: the range lies on the real line".into());
        return Ok(RangeClassification::new(hermitian_kind(a, j)?, ev));
    }
    if n == 2 {
        let hrt = hrt_of(a, j)?;
        if let Some(h) = hrt.hyperbola() {
            ev.notes.push("2×2 range theorem: strict trace condition holds".into());
            return Ok(RangeClassification::new(RangeKind::HyperbolicDisc { hyperbola: h }, ev));
        }
    }

    let samples = sweep_samples(a, j, &uniform_grid(grid), tol::DEFAULT_TOL)?;
    ev.valid_thetas = samples.iter().filter(|s| s.support.valid).count();
    ev.interlacing_thetas = samples
        .iter()
        .filter(|s| s.support.status == SplitStatus::Interlacing)
        .map(|s| s.support.theta)
        .collect();
    if !ev.interlacing_thetas.is_empty() {
        ev.notes.push(format!(
            "σ+ and σ- interlace at {} of {grid} grid angles",
            ev.interlacing_thetas.len()
        ));
        return Ok(RangeClassification::new(RangeKind::WholePlane, ev));
    }
    if ev.valid_thetas == 0 {
        ev.notes.push("no grid angle admits support lines".into());
        return Ok(RangeClassification::new(RangeKind::WholePlane, ev));
    }
    ev.notes.push(format!(
        "no interlacing on the {grid}-angle grid; whole-plane detection is grid-based and may miss narrow windows"
    ));
    let supports: Vec<_> = samples.iter().map(|s| s.support).collect();
    ev.window = window_from_sweep(a, j, &supports, tol::DEFAULT_TOL)?;

    // tridiagonal certificate
    let mut certified: Vec<Hyperbola> = Vec::new();
    match normal_form(a, j) {
        Ok(nf) if (3..=6).contains(&n) => match certify(&nf.t) {
            Ok(cert) => {
                let rot = C64::from_polar(1.0, nf.tau);
                certified = cert.hyperbolas().iter().map(|h| h.affine_map(rot, nf.delta)).collect();
                ev.notes.push(format!(
                    "tridiagonal certificate of order {n}: verdict {}",
                    cert.verdict()
                ));
                ev.certificate = Some(cert);
            }
            Err(e) => ev.notes.push(format!("no certificate: {e}")),
        },
        Ok(_) => {}
        Err(e) => ev.notes.push(format!("no tridiagonal normal form: {e}")),
    }

    ev.components = knr_components(a, j)?;
    let comps = distinct(&ev.components, 1e-8 * scale);
    let (counts, unmatched) = ownership(&samples, &comps, 1e-6 * scale);
    let (flats, corners) = flats_and_corners(a, j, &samples);
    let eig = eigenvalues(a)?;
    for c in &corners {
        let d = eig.iter().map(|e| (e - c.z).norm()).fold(f64::INFINITY, f64::min);
        ev.notes.push(format!("corner at {} (distance to nearest eigenvalue {d:e})", c.z));
    }
    ev.corners = corners;
    ev.flats = flats.clone();

    let owners: Vec<usize> = (0..comps.len()).filter(|&i| counts[i] > 0).collect();
    let owner_hyps: Vec<Hyperbola> = dedup_hyperbolas(
        owners
            .iter()
            .filter_map(|&i| match &comps[i] {
                Component::Conic { hyperbola: Some(h), .. } => Some(*h),
                _ => None,
            })
            .collect(),
        1e-8 * scale,
    );
    let all_hyps = dedup_hyperbolas(
        comps
            .iter()
            .filter_map(|c| match c {
                Component::Conic { hyperbola: Some(h), .. } => Some(*h),
                _ => None,
            })
            .collect(),
        1e-8 * scale,
    );
    let only_hyperbolas = owners
        .iter()
        .all(|&i| matches!(comps[i], Component::Conic { hyperbola: Some(_), .. }));
    // prefer the certified (analytic) hyperbola when it matches a numeric one
    let prefer = |h: Hyperbola, ev: &mut Evidence| -> Hyperbola {
        match certified.iter().min_by(|x, y| x.distance(&h).total_cmp(&y.distance(&h))) {
            Some(c) if c.distance(&h) <= 1e-6 * scale => {
                ev.notes.push(format!("certified hyperbola agrees with the factor analysis ({:e})", c.distance(&h)));
                *c
            }
            _ => h,
        }
    };

    let kind = if unmatched > 0 || !only_hyperbolas || owner_hyps.is_empty() {
        ev.notes.push(format!(
            "{unmatched} support samples not explained by conic factors; numeric boundary only"
        ));
        RangeKind::NumericOnly { curve: curve_from_samples(&samples) }
    } else if owner_hyps.len() == 1 {
        let outer = prefer(owner_hyps[0], &mut ev);
        let others: Vec<Hyperbola> = all_hyps
            .into_iter()
            .filter(|h| h.distance(&owner_hyps[0]) > 1e-8 * scale)
            .collect();
        match others.first() {
            None => RangeKind::HyperbolicDisc { hyperbola: outer },
            Some(&inner) => {
                let inner = prefer(inner, &mut ev);
                let nest = nesting(&inner, &outer, 1e-8 * scale);
                ev.notes.push(format!(
                    "inner hyperbola nested in the outer one: {} (min slack {:e}, cone margin {:e})",
                    nest.nested, nest.min_slack, nest.cone_margin
                ));
                if nest.nested {
                    RangeKind::BihyperbolicNested { outer, inner }
                } else {
                    // The second hyperbola supports the range only on angles between
                    // grid points, typically close to the asymptotic directions.
                    ev.notes.push("second hyperbola escapes the first; both bound the range".into());
                    let (plus, minus) = if outer.center.re >= inner.center.re { (outer, inner) } else { (inner, outer) };
                    RangeKind::BihyperbolicFlat { plus, minus, flats: flats.clone() }
                }
            }
        }
    } else if owner_hyps.len() == 2 {
        let (h1, h2) = (prefer(owner_hyps[0], &mut ev), prefer(owner_hyps[1], &mut ev));
        // `plus` is the hyperbola whose center has the larger real part
        let (plus, minus) = if h1.center.re >= h2.center.re { (h1, h2) } else { (h2, h1) };
        if flats.is_empty() {
            ev.notes.push("two hyperbolas share the boundary but no flat was resolved on the grid".into());
        } else {
            ev.notes.push(format!("{} flat portions detected", flats.len()));
        }
        RangeKind::BihyperbolicFlat { plus, minus, flats }
    } else {
        ev.notes.push(format!("{} hyperbolas share the boundary", owner_hyps.len()));
        RangeKind::NumericOnly { curve: curve_from_samples(&samples) }
    };

    if let RangeKind::HyperbolicDisc { hyperbola: h } | RangeKind::BihyperbolicNested { outer: h, .. } = &kind {
        match fit_hyperbola_samples(&samples) {
            Ok(fit) => {
                ev.fit_distance = Some(fit.hyperbola.distance(h));
                ev.fit = Some(fit);
            }
            Err(e) => ev.notes.push(format!("support fit failed: {e}")),
        }
    }
    Ok(RangeClassification::new(kind, ev))
}
