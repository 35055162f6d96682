//! Helpers shared by the property and acceptance suites.

use knr_core::geometry::{classify_range, RangeClassification, RangeKind};
use knr_core::tridiag::{certify, TridiagonalSpec};
use knr_core::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random tridiagonal spec whose certificate holds and whose classification has a
/// hyperbolic boundary, drawn by rejection from `seed`.
pub fn certified_instance(seed: u64) -> (TridiagonalSpec, RangeClassification) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = rng.random_range(3..=6usize);
        let a = rng.random_range(-4.0..4.0);
        let mut draw = || C64::new(rng.random_range(-4.0..4.0), rng.random_range(-2.0..2.0));
        let mut b: Vec<C64> = (0..m - 1).map(|_| draw()).collect();
        if m == 6 && b.len() == 5 {
            b[2] = C64::new(0.0, 0.0);
        }
        let spec = if m == 3 {
            let c: Vec<C64> = (0..2).map(|_| draw()).collect();
            TridiagonalSpec::new(3, a, b, c).unwrap()
        } else {
            TridiagonalSpec::centrosymmetric(m, a, b).unwrap()
        };
        if !certify(&spec).map(|c| c.verdict()).unwrap_or(false) {
            continue;
        }
        let cls = classify_range(&spec.matrix(), &spec.metric(), 360);
        if matches!(
            cls.kind,
            RangeKind::HyperbolicDisc { .. } | RangeKind::BihyperbolicNested { .. } | RangeKind::BihyperbolicFlat { .. }
        ) {
            return (spec, cls);
        }
    }
}

