//! Default tolerances shared across modules. Every public operation that compares
//! floating values also takes an explicit tolerance or derives one from these.

/// Max-norm tolerance for matrix identities.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative threshold on `|Im λ|` for treating an eigenvalue as real.
pub const REAL_EIG_REL: f64 = 1e-8;

/// Relative spread under which eigenvalues are treated as one cluster.
pub const CLUSTER_REL: f64 = 1e-7;

/// Relative gap under which `σ+` and `σ-` are considered touching.
pub const TIE_REL: f64 = 1e-9;

/// Relative guard band for strict certificate inequalities.
pub const CERT_GUARD: f64 = 1e-12;

/// Bisection resolution for validity-window endpoints, in radians.
pub const WINDOW_BISECT: f64 = 1e-10;

/// Default number of angles in a support sweep over `[0, 2π)`.
pub const DEFAULT_GRID: usize = 720;

/// Smallest accepted sweep grid.
pub const MIN_GRID: usize = 16;

/// Ratio of a contact jump to the local sample spacing that marks a flat portion.
pub const FLAT_FACTOR: f64 = 10.0;

/// Distance under which a contact point counts as stationary (a corner).
pub const CORNER_TOL: f64 = 1e-7;

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: usize = 100_000;

/// Default RNG seed.
pub const DEFAULT_SEED: u64 = 42;

/// Draws with `|[x,x]_J| < NEUTRAL_REJECT * |x|^2` are rejected.
pub const NEUTRAL_REJECT: f64 = 1e-6;

/// Cloud points with `|z| > CLIP_FACTOR * max(1, |A|)` are counted as clipped.
pub const CLIP_FACTOR: f64 = 1e3;

/// Scale helper: `max(1, x)`.
pub fn scale(x: f64) -> f64 {
    x.abs().max(1.0)
}

/// Outcome of a strict inequality evaluated with the certificate guard band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strict {
    Holds,
    AtBoundary,
    Fails,
}

impl Strict {
    pub fn holds(self) -> bool {
        self == Strict::Holds
    }

    pub fn and(self, other: Strict) -> Strict {
        match (self, other) {
            (Strict::Fails, _) | (_, Strict::Fails) => Strict::Fails,
            (Strict::AtBoundary, _) | (_, Strict::AtBoundary) => Strict::AtBoundary,
            _ => Strict::Holds,
        }
    }
}

/// `lhs < rhs` with a guard band of `CERT_GUARD * max(1, |lhs|, |rhs|)`; values
/// inside the band are reported as `AtBoundary`.
pub fn strict_lt(lhs: f64, rhs: f64) -> Strict {
    let guard = CERT_GUARD * scale(lhs).max(scale(rhs));
    if lhs < rhs - guard {
        Strict::Holds
    } else if lhs <= rhs + guard {
        Strict::AtBoundary
    } else {
        Strict::Fails
    }
}
