//! Randomized invariants, each over at least 200 cases with matrices of order at most 6.

use knr_core::algebra::{h_theta, j_adjoint};
use knr_core::geometry::{classify_range, sweep_boundary, RangeClassification};
use knr_core::oracle::{containment_check, sample_range};
use knr_core::spectra::{curve_form, curve_poly_eval, eig_dense, support_bounds};
use knr_core::tridiag::{block_reduce4, block_reduce5, block_reduce6, certify, TridiagonalSpec};
use knr_core::{tol, CMatrix, CVector, Complex64 as C64, Metric, Sign};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::certified_instance;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn complex(range: f64) -> impl Strategy<Value = C64> {
    (-range..range, -range..range).prop_map(|(re, im)| C64::new(re, im))
}

fn metric(n: usize) -> impl Strategy<Value = Metric> {
    prop::collection::vec(any::<bool>(), n).prop_map(|bits| {
        let entries: Vec<i64> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
        Metric::from_entries(&entries).unwrap()
    })
}

fn indefinite_metric(n: usize) -> impl Strategy<Value = Metric> {
    metric(n).prop_filter("indefinite", |j| !j.is_definite())
}

fn matrix(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(complex(3.0), n * n).prop_map(move |e| CMatrix::from_fn(n, |i, k| e[i * n + k]))
}

fn pair(lo: usize) -> impl Strategy<Value = (CMatrix, Metric)> {
    (lo..=6usize).prop_flat_map(|n| (matrix(n), metric(n)))
}

fn indefinite_pair() -> impl Strategy<Value = (CMatrix, Metric)> {
    (2..=6usize).prop_flat_map(|n| (matrix(n), indefinite_metric(n)))
}

fn centrosymmetric(orders: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TridiagonalSpec> {
    orders.prop_flat_map(|m| {
        (-4.0..4.0f64, prop::collection::vec(complex(4.0), m - 1))
            .prop_map(move |(a, b)| TridiagonalSpec::centrosymmetric(m, a, b).unwrap())
    })
}

fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b
}

/// `U` mixing coordinates `p` (positive) and `q` (negative) by a hyperbolic rotation,
/// followed by a diagonal phase. Such `U` satisfy `U# U = I`.
fn hyperbolic_rotation(j: &Metric, s: f64, phases: &[f64]) -> CMatrix {
    let n = j.n();
    let mut u = CMatrix::from_diag(&phases.iter().map(|&p| C64::from_polar(1.0, p)).collect::<Vec<_>>());
    let p = (0..n).find(|&i| j.sign(i) > 0.0);
    let q = (0..n).find(|&i| j.sign(i) < 0.0);
    if let (Some(p), Some(q)) = (p, q) {
        let mut h = CMatrix::identity(n);
        h.set_column(p, &column(n, &[(p, s.cosh()), (q, s.sinh())]));
        h.set_column(q, &column(n, &[(p, s.sinh()), (q, s.cosh())]));
        u = matmul(&h, &u);
    }
    u
}

fn column(n: usize, entries: &[(usize, f64)]) -> CVector {
    let mut v = vec![C64::new(0.0, 0.0); n];
    for &(i, x) in entries {
        v[i] = C64::new(x, 0.0);
    }
    CVector::from_vec(v)
}

fn hyperbolas_close(a: &RangeClassification, b: &RangeClassification, tol: f64) -> bool {
    let (ha, hb) = (a.boundary_hyperbolas(), b.boundary_hyperbolas());
    ha.len() == hb.len() && ha.iter().zip(&hb).all(|(x, y)| x.distance(y) <= tol)
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn j_adjoint_is_an_involution((a, j) in pair(1)) {
        let back = j_adjoint(&j_adjoint(&a, &j).unwrap(), &j).unwrap();
        prop_assert!(back.max_diff(&a) <= 1e-12);
    }

    #[test]
    fn support_data_is_affine_covariant(
        (a, j) in indefinite_pair(),
        r in 0.2..3.0f64,
        phi in -3.0..3.0f64,
        beta in complex(5.0),
        theta in 0.0..std::f64::consts::TAU,
    ) {
        let alpha = C64::from_polar(r, phi);
        let b = CMatrix::from_fn(a.n(), |i, k| alpha * a.row(i)[k] + if i == k { beta } else { C64::new(0.0, 0.0) });
        let lhs = support_bounds(&b, &j, theta).unwrap();
        let rhs = support_bounds(&a, &j, theta - phi).unwrap();
        let shift = beta.re * theta.cos() + beta.im * theta.sin();
        if lhs.valid && rhs.valid {
            let scale = tol::scale(b.max_norm());
            for (x, y) in [(lhs.lambda_l, rhs.lambda_l), (lhs.lambda_r, rhs.lambda_r)] {
                let (x, y) = (x.unwrap(), y.unwrap());
                prop_assert!((x - (r * y + shift)).abs() <= 1e-8 * scale, "{x} vs {}", r * y + shift);
            }
        }
    }

    #[test]
    fn eigenpairs_have_small_residuals((a, _j) in pair(1)) {
        let norm = a.frobenius_norm().max(1.0);
        for p in eig_dense(&a, tol::DEFAULT_TOL).unwrap() {
            let av = a.mul_vec(&p.vector);
            let r: f64 = av.iter().zip(p.vector.iter()).map(|(x, v)| (x - p.value * v).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-10 * norm * p.vector.norm(), "residual {r}");
        }
    }

    #[test]
    fn boundary_points_satisfy_the_contact_identity((a, j) in indefinite_pair()) {
        let curve = sweep_boundary(&a, &j, 32).unwrap();
        let scale = tol::scale(a.max_norm());
        for p in &curve.points {
            let x = p.theta.cos() * p.z.re + p.theta.sin() * p.z.im;
            prop_assert!((x - p.lambda).abs() <= 1e-9 * scale);
            let h = h_theta(&a, &j, p.theta).unwrap();
            let ev = eig_dense(&h, tol::DEFAULT_TOL).unwrap();
            prop_assert!(ev.iter().any(|e| (e.value.re - p.lambda).abs() <= 1e-8 * scale));
        }
    }

    #[test]
    fn certificates_ignore_subdiagonal_swaps(spec in centrosymmetric(3..=6), bits in 0u32..32) {
        let mask: Vec<bool> = (0..spec.order - 1).map(|k| bits >> k & 1 == 1).collect();
        let base = certify(&spec).unwrap();
        let swapped = certify(&spec.swapped(&mask)).unwrap();
        prop_assert_eq!(base.verdict(), swapped.verdict());
        // Canonicalization may land on the reversed representative, which reorders
        // floating-point operations; geometry agrees to rounding.
        let (h1, h2) = (base.hyperbolas(), swapped.hyperbolas());
        prop_assert_eq!(h1.len(), h2.len());
        let scale = tol::scale(spec.matrix().max_norm());
        for (x, y) in h1.iter().zip(&h2) {
            prop_assert!(x.distance(y) <= 1e-12 * scale);
        }
    }

    #[test]
    fn generating_polynomial_factors_through_blocks(spec in centrosymmetric(4..=6), u in -1.0..1.0f64, v in -1.0..1.0f64, w in -1.0..1.0f64) {
        let j = spec.metric();
        let lhs = curve_poly_eval(&spec.matrix(), &j, u, v, w).unwrap();
        let forms = match spec.order {
            4 => {
                let (sp, sm) = block_reduce4(&spec).unwrap();
                [curve_form(&sm, &j.block(0, 2)).unwrap(), curve_form(&sp, &j.block(2, 2).permuted(&[1, 0])).unwrap()]
            }
            5 => {
                let (r, s) = block_reduce5(&spec).unwrap();
                [curve_form(&r, &j.block(0, 2)).unwrap(), curve_form(&s, &j.block(2, 3)).unwrap()]
            }
            _ => {
                let (up, lo) = block_reduce6(&spec).unwrap();
                [curve_form(&up, &j.block(0, 3)).unwrap(), curve_form(&lo, &j.block(3, 3)).unwrap()]
            }
        };
        let rhs = forms[0].eval(u, v, w) * forms[1].eval(u, v, w);
        let scale = forms[0].eval_abs(u, v, w) * forms[1].eval_abs(u, v, w);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale.max(1.0), "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn classification_is_j_unitarily_invariant(
        spec in centrosymmetric(3..=6),
        s in -0.8..0.8f64,
        phases in prop::collection::vec(-3.0..3.0f64, 6),
    ) {
        let (a, j) = (spec.matrix(), spec.metric());
        let u = hyperbolic_rotation(&j, s, &phases[..a.n()]);
        let moved = matmul(&matmul(&j_adjoint(&u, &j).unwrap(), &a), &u);
        let c1 = classify_range(&a, &j, 360);
        let c2 = classify_range(&moved, &j, 360);
        prop_assert_eq!(c1.kind.name(), c2.kind.name());
        prop_assert!(hyperbolas_close(&c1, &c2, 1e-6 * tol::scale(a.max_norm())));
    }

    #[test]
    fn corners_sit_on_eigenvalues(spec in centrosymmetric(3..=6)) {
        let (a, j) = (spec.matrix(), spec.metric());
        let cls = classify_range(&a, &j, 360);
        let ev: Vec<C64> = eig_dense(&a, tol::DEFAULT_TOL).unwrap().into_iter().map(|p| p.value).collect();
        for corner in &cls.evidence.corners {
            let d = ev.iter().map(|e| (e - corner.z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-6 * tol::scale(a.max_norm()), "corner {} is {d} from the spectrum", corner.z);
        }
    }

    #[test]
    fn dense_corners_sit_on_eigenvalues((a, j) in (3..=4usize).prop_flat_map(|n| (matrix(n), indefinite_metric(n)))) {
        let cls = classify_range(&a, &j, 360);
        let ev: Vec<C64> = eig_dense(&a, tol::DEFAULT_TOL).unwrap().into_iter().map(|p| p.value).collect();
        for corner in &cls.evidence.corners {
            let d = ev.iter().map(|e| (e - corner.z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-6 * tol::scale(a.max_norm()), "corner {} is {d} from the spectrum", corner.z);
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn certified_ranges_contain_their_samples(seed in any::<u64>()) {
        let (spec, cls) = certified_instance(seed);
        let (a, j) = (spec.matrix(), spec.metric());
        for sign in [Sign::Plus, Sign::Minus] {
            let cloud = sample_range(&a, &j, 100_000, sign, seed).unwrap();
            prop_assert!(cloud.max_constraint_error <= 1e-12);
            let rep = containment_check(&cloud, &cls, 1e-6).unwrap();
            prop_assert!(rep.verdict, "{} {:?}: worst {}", cls.kind.name(), sign, rep.worst_violation);
        }
    }

    #[test]
    fn joins_of_generating_vectors_stay_inside(seed in any::<u64>()) {
        let (spec, cls) = certified_instance(seed);
        let (a, j) = (spec.matrix(), spec.metric());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let n = a.n();
        let mut points = Vec::new();
        while points.len() < 200 {
            let x: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let y: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let t: f64 = rng.random_range(0.0..1.0);
            let mix: Vec<C64> = x.iter().zip(&y).map(|(p, q)| p * (1.0 - t) + q * t).collect();
            let norms: Vec<f64> = [&x, &y, &mix].iter().map(|v| v.iter().enumerate().map(|(i, z)| j.sign(i) * z.norm_sqr()).sum()).collect();
            let sign = norms[0].signum();
            if norms.iter().any(|q| q.signum() != sign || q.abs() < 1e-3) {
                continue;
            }
            let v = CVector::from_vec(mix);
            let av = a.mul_vec(&v);
            let inner: C64 = (0..n).map(|i| v[i].conj() * av[i] * j.sign(i)).sum();
            points.push(knr_core::oracle::SamplePoint { z: inner / norms[2], sign: if sign > 0.0 { Sign::Plus } else { Sign::Minus } });
        }
        let cloud = knr_core::oracle::SampleCloud {
            count: points.len(),
            points,
            seed,
            clipped: 0,
            rejected: 0,
            max_constraint_error: 0.0,
        };
        let rep = containment_check(&cloud, &cls, 1e-6).unwrap();
        prop_assert!(rep.verdict, "worst {}", rep.worst_violation);
    }
}
