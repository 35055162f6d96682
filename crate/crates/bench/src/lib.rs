//! Benchmark inputs: the reference tridiagonal fixtures plus seeded random dense
//! matrices with alternating signatures.

use knr_core::{fixtures, CMatrix, Complex64, Metric, TridiagonalSpec};

pub fn tridiagonal_cases() -> Vec<(&'static str, TridiagonalSpec)> {
    fixtures::all()
}

/// A deterministic dense matrix of order `n` with entries on a small lattice.
pub fn dense_case(n: usize, seed: u64) -> (CMatrix, Metric) {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 9) as f64 - 4.0
    };
    let a = CMatrix::from_fn(n, |_, _| Complex64::new(next(), next()));
    (a, Metric::alternating(n))
}
