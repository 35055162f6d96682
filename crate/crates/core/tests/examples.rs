//! Worked examples through the public API, one test per operation.

use knr_core::algebra::{cartesian_decompose, h_theta, indefinite_inner, is_j_unitary, j_adjoint, trace_adj_product};
use knr_core::geometry::{
    boundary_points, classify_range, fit_quadratic, hyperbola_2x2, hyperbola_from_fit, hyperbola_membership,
    pseudo_convex_join, sweep_boundary, HyperbolaFitParams, Join, RangeKind, TaggedPoint,
};
use knr_core::spectra::{curve_poly_eval, eig_dense, knr_poly_eval, split_spectrum, support_bounds, uniform_grid, TernaryForm};
use knr_core::tridiag::{
    block_reduce4, block_reduce5, block_reduce6, block_residual, certify_order3, certify_order4, certify_order5,
    certify_order6, normal_form, q5, Subcase4, TridiagonalSpec,
};
use knr_core::{fixtures, CMatrix, CVector, Complex64 as C64, Metric, Sign};

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn j2() -> Metric {
    Metric::from_entries(&[1, -1]).unwrap()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn contains_all(values: &[C64], expected: &[C64], tol: f64) -> bool {
    values.len() == expected.len() && expected.iter().all(|e| values.iter().any(|v| close(*v, *e, tol)))
}

fn eigs(m: &CMatrix) -> Vec<C64> {
    eig_dense(m, 1e-10).unwrap().into_iter().map(|p| p.value).collect()
}

fn real_spec(order: usize, a: f64, b: &[f64]) -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(order, a, b.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
}

#[test]
fn indefinite_inner_products() {
    let j = j2();
    let e1 = CVector::basis(2, 0);
    let e2 = CVector::basis(2, 1);
    assert_eq!(indefinite_inner(&e1, &e1, &j).unwrap(), c(1.0, 0.0));
    assert_eq!(indefinite_inner(&e2, &e2, &j).unwrap(), c(-1.0, 0.0));
    let x = CVector::from_real(&[1.0, 1.0]);
    let y = CVector::from_real(&[1.0, -1.0]);
    assert_eq!(indefinite_inner(&x, &y, &j).unwrap(), c(2.0, 0.0));
}

#[test]
fn j_adjoints() {
    let j = j2();
    assert_eq!(j_adjoint(&CMatrix::identity(2), &j).unwrap(), CMatrix::identity(2));
    let a = CMatrix::from_rows(vec![vec![c(1.0, 2.0), c(0.0, 3.0)], vec![c(4.0, 0.0), c(0.0, -1.0)]]).unwrap();
    assert_eq!(j_adjoint(&a, &Metric::identity(2)).unwrap(), a.adjoint());
    let n = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let expected = CMatrix::from_real_rows(&[&[0.0, 0.0], &[-1.0, 0.0]]).unwrap();
    assert!(j_adjoint(&n, &j).unwrap().max_diff(&expected) < 1e-15);
}

#[test]
fn cartesian_parts() {
    let j = j2();
    let n = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let (re, im) = cartesian_decompose(&n, &j).unwrap();
    let re_expected = CMatrix::from_real_rows(&[&[0.0, 0.5], &[-0.5, 0.0]]).unwrap();
    let im_expected = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, -0.5)], vec![c(0.0, -0.5), c(0.0, 0.0)]]).unwrap();
    assert!(re.max_diff(&re_expected) < 1e-15);
    assert!(im.max_diff(&im_expected) < 1e-15);
    let h = CMatrix::from_real_diag(&[2.0, -3.0]);
    let (re, im) = cartesian_decompose(&h, &j).unwrap();
    assert!(re.max_diff(&h) < 1e-15 && im.max_norm() < 1e-15);
    let (re, im) = cartesian_decompose(&h.scale(c(0.0, 1.0)), &j).unwrap();
    assert!(re.max_norm() < 1e-15 && im.max_diff(&h) < 1e-15);
}

#[test]
fn rotated_hermitian_parts() {
    let spec = fixtures::order3_disc();
    let (a, j) = (spec.matrix(), spec.metric());
    let (re, im) = cartesian_decompose(&a, &j).unwrap();
    assert!(h_theta(&a, &j, 0.0).unwrap().max_diff(&re) < 1e-14);
    assert!(h_theta(&a, &j, PI / 2.0).unwrap().max_diff(&im) < 1e-14);
    let h = CMatrix::from_real_diag(&[2.0, -3.0]);
    assert!(h_theta(&h, &j2(), 0.7).unwrap().max_diff(&h.scale_real(0.7f64.cos())) < 1e-14);
}

#[test]
fn j_unitary_matrices() {
    let j = j2();
    assert!(is_j_unitary(&CMatrix::identity(2), &j, 1e-12).unwrap());
    let phase = CMatrix::from_diag(&[C64::from_polar(1.0, 0.4), c(1.0, 0.0)]);
    assert!(is_j_unitary(&phase, &j, 1e-12).unwrap());
    assert!(is_j_unitary(&q5(), &Metric::alternating(5), 1e-12).unwrap());
    assert!(!is_j_unitary(&CMatrix::scalar(2, c(2.0, 0.0)), &j, 1e-12).unwrap());
}

#[test]
fn dense_eigenvalues() {
    let d = eig_dense(&CMatrix::from_real_diag(&[3.0, -1.0, 2.0]), 1e-10).unwrap();
    for p in &d {
        let k = [3.0, -1.0, 2.0].iter().position(|&x| (p.value.re - x).abs() < 1e-12).unwrap();
        let v = p.vector.normalized();
        assert!((v[k].norm() - 1.0).abs() < 1e-12);
    }
    let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
    assert!(contains_all(&eigs(&x), &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-12));
    let r = c(3.0, -2.0).sqrt();
    assert!(contains_all(&eigs(&fixtures::order3_disc().matrix()), &[c(4.0, 0.0), r, -r], 1e-9));
}

#[test]
fn spectrum_splits() {
    let s = split_spectrum(&CMatrix::from_real_diag(&[2.0, -3.0]), &j2(), 1e-10).unwrap();
    assert_eq!(s.sigma_plus, vec![2.0]);
    assert_eq!(s.sigma_minus, vec![-3.0]);
    assert!(s.in_class_j);
    let h = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, -1.0]]).unwrap();
    let s = split_spectrum(&h, &Metric::identity(2), 1e-10).unwrap();
    assert!(s.sigma_minus.is_empty() && s.sigma_plus.len() == 2);
    let spec = fixtures::order3_disc();
    let h0 = h_theta(&spec.matrix(), &spec.metric(), 0.0).unwrap();
    let s = split_spectrum(&h0, &spec.metric(), 1e-10).unwrap();
    assert_eq!(s.sigma_plus.len(), 2);
    assert!((s.sigma_plus[0] - 4.0).abs() < 1e-12 && (s.sigma_plus[1] - 1.5).abs() < 1e-12);
    assert!((s.sigma_minus[0] + 1.5).abs() < 1e-12);
}

#[test]
fn support_data() {
    let d = support_bounds(&CMatrix::from_real_diag(&[2.0, -3.0]), &j2(), 0.0).unwrap();
    assert!(d.valid);
    assert_eq!((d.lambda_l, d.lambda_r), (Some(-3.0), Some(2.0)));
    let spec = fixtures::order3_disc();
    let d = support_bounds(&spec.matrix(), &spec.metric(), 0.0).unwrap();
    assert!((d.lambda_l.unwrap() + 1.5).abs() < 1e-12);
    assert!((d.lambda_r.unwrap() - 1.5).abs() < 1e-12);
    let spec = fixtures::order4_whole_plane();
    let invalid = uniform_grid(720)
        .into_iter()
        .map(|t| support_bounds(&spec.matrix(), &spec.metric(), t).unwrap())
        .filter(|d| d.is_interlacing())
        .count();
    assert!(invalid > 0);
}

#[test]
fn generating_polynomials() {
    let alpha = c(1.5, -0.5);
    let one = CMatrix::from_diag(&[alpha]);
    let j1 = Metric::identity(1);
    for (z, t) in [(c(0.3, 0.1), 0.2f64), (c(-1.0, 2.0), 2.5)] {
        let expected = alpha.re * t.cos() + alpha.im * t.sin() - z;
        assert!(close(knr_poly_eval(&one, &j1, z, t).unwrap(), expected, 1e-14));
    }

    // Third-order closed form with p = 3/4, q = 3/2, t = -1.
    let spec = fixtures::order3_disc();
    let (a, j) = (spec.matrix(), spec.metric());
    for (z, t) in [(c(0.7, -0.4), 0.3f64), (c(2.0, 1.0), 1.9), (c(-0.2, 0.0), 4.0)] {
        let closed = -(z - 4.0 * t.cos()) * (z * z - 0.75 - 1.5 * (2.0 * t).cos() + (2.0 * t).sin());
        assert!(close(knr_poly_eval(&a, &j, z, t).unwrap(), closed, 1e-10));
        let sub = curve_poly_eval(&a, &j, t.cos(), t.sin(), -z.re).unwrap();
        assert!(close(sub, knr_poly_eval(&a, &j, c(z.re, 0.0), t).unwrap(), 1e-10));
    }
    for lambda in eigs(&h_theta(&a, &j, 0.8).unwrap()) {
        assert!(knr_poly_eval(&a, &j, lambda, 0.8).unwrap().norm() < 1e-9);
    }
    assert!(close(curve_poly_eval(&a, &j, 0.0, 0.0, 1.0).unwrap(), c(1.0, 0.0), 1e-14));

    let p1 = TernaryForm::from_real_terms(&[(0, 0, 3, 1.0), (3, 0, 0, -68.0), (2, 0, 1, -11.0), (1, 2, 0, 90.0), (1, 0, 2, 6.0), (0, 2, 1, 18.0)]);
    let p2 = TernaryForm::from_real_terms(&[(0, 0, 3, 1.0), (3, 0, 0, -20.0), (2, 0, 1, -11.0), (1, 2, 0, 54.0), (1, 0, 2, 2.0), (0, 2, 1, 18.0)]);
    let spec = fixtures::order6_two_cubics();
    let (a, j) = (spec.matrix(), spec.metric());
    for (u, v, w) in [(0.3, -0.7, 0.2), (1.0, 0.5, -2.0), (-0.4, 0.9, 0.6)] {
        let lhs = curve_poly_eval(&a, &j, u, v, w).unwrap();
        let rhs = p1.eval(u, v, w) * p2.eval(u, v, w);
        assert!((lhs - rhs).norm() <= 1e-10 * p1.eval_abs(u, v, w) * p2.eval_abs(u, v, w));
    }
}

#[test]
fn two_by_two_ranges() {
    let j = j2();
    let point = hyperbola_2x2(&CMatrix::scalar(2, c(2.0, 1.0)), &j).unwrap();
    assert_eq!(point.kind, RangeKind::Point { value: c(2.0, 1.0) });
    let rot = CMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
    assert_eq!(hyperbola_2x2(&rot, &j).unwrap().kind, RangeKind::RealLine);
    let s_plus = CMatrix::from_real_rows(&[&[5.0, 1.0], &[7.0, -3.0]]).unwrap();
    let RangeKind::HyperbolicDisc { hyperbola } = hyperbola_2x2(&s_plus, &j).unwrap().kind else {
        panic!("expected a hyperbolic disc");
    };
    let r = 23f64.sqrt();
    assert!(contains_all(&hyperbola.foci, &[c(1.0 + r, 0.0), c(1.0 - r, 0.0)], 1e-9));
}

#[test]
fn quadratic_fits() {
    let spec = fixtures::order3_disc();
    let (a, j) = (spec.matrix(), spec.metric());
    let (params, residual) = fit_quadratic(&a, &j, &uniform_grid(720)).unwrap();
    assert!((params.p - 0.75).abs() < 1e-9);
    assert!((params.q - 1.5).abs() < 1e-9);
    assert!((params.t + 1.0).abs() < 1e-9);
    assert!(residual <= 1e-8);

    // Axis-aligned centered disc: t vanishes by symmetry.
    let aligned = CMatrix::from_real_rows(&[&[1.0, 1.0], &[0.5, -1.0]]).unwrap();
    let (params, _) = fit_quadratic(&aligned, &j2(), &uniform_grid(720)).unwrap();
    assert!(params.t.abs() < 1e-9);

    let spec = fixtures::order4_whole_plane();
    assert!(fit_quadratic(&spec.matrix(), &spec.metric(), &uniform_grid(720)).is_err());
}

#[test]
fn hyperbolas_from_fits() {
    assert!(HyperbolaFitParams::new(0.5, 0.5, 0.0).is_err());
    let params = HyperbolaFitParams::new(0.75, 1.5, -1.0).unwrap();
    let h = hyperbola_from_fit(&params, c(0.0, 0.0)).unwrap();
    let r = c(3.0, -2.0).sqrt();
    assert!(contains_all(&h.foci, &[r, -r], 1e-12));
    let expected = (2.0 * 13f64.sqrt() - 3.0).sqrt();
    assert!((h.nontransverse_length() - expected).abs() < 1e-12);

    let rect = hyperbola_from_fit(&HyperbolaFitParams::new(0.0, 1.0, 0.0).unwrap(), c(0.0, 0.0)).unwrap();
    assert!((rect.semi_transverse - 1.0).abs() < 1e-12 && (rect.semi_nontransverse - 1.0).abs() < 1e-12);
    let s2 = 2f64.sqrt();
    assert!(contains_all(&rect.foci, &[c(s2, 0.0), c(-s2, 0.0)], 1e-12));
}

#[test]
fn boundary_point_sets() {
    let pts = boundary_points(&CMatrix::from_real_diag(&[2.0, -3.0]), &j2(), 0.0).unwrap();
    let mut got: Vec<(f64, Sign)> = pts.iter().map(|p| (p.z.re, p.sign)).collect();
    got.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert_eq!(got, vec![(-3.0, Sign::Minus), (2.0, Sign::Plus)]);

    let spec = fixtures::order3_disc();
    let pts = boundary_points(&spec.matrix(), &spec.metric(), 0.0).unwrap();
    let mut got: Vec<(f64, Sign)> = pts.iter().map(|p| (p.z.re, p.sign)).collect();
    got.sort_by(|a, b| a.0.total_cmp(&b.0));
    let want = [(-1.5, Sign::Minus), (1.5, Sign::Plus), (4.0, Sign::Plus)];
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip(want) {
        assert!((g.0 - w.0).abs() < 1e-12 && g.1 == w.1, "{got:?}");
    }
}

#[test]
fn boundary_sweeps() {
    let j = Metric::from_entries(&[1, -1, 1]).unwrap();
    let id = sweep_boundary(&CMatrix::identity(3), &j, 64).unwrap();
    assert!(id.points.iter().all(|p| close(p.z, c(1.0, 0.0), 1e-12)));

    let spec = fixtures::order4_nested();
    let curve = sweep_boundary(&spec.matrix(), &spec.metric(), 720).unwrap();
    let plus = curve.points.iter().filter(|p| p.sign == Sign::Plus).count();
    let minus = curve.points.iter().filter(|p| p.sign == Sign::Minus).count();
    assert!(plus > 0 && minus > 0);
    // Positive points lie on the right of the outer branch pair, negative on the left.
    let center = c(1.0, 0.0);
    let (l, r) = curve.points.iter().fold((0, 0), |(l, r), p| {
        let side = (p.z - center).re * (p.theta.cos()) + (p.z - center).im * p.theta.sin();
        if side > 0.0 { (l, r + 1) } else { (l + 1, r) }
    });
    assert!(l > 0 && r > 0);

    let a = CMatrix::from_rows(vec![
        vec![c(1.0, 0.5), c(0.2, 0.0), c(0.0, 0.3)],
        vec![c(0.1, -0.2), c(-2.0, 0.0), c(0.4, 0.1)],
        vec![c(0.0, 0.0), c(0.3, 0.3), c(0.5, -1.0)],
    ])
    .unwrap();
    let curve = sweep_boundary(&a, &j, 16).unwrap();
    assert_eq!(curve.points.len() + 3 * curve.invalid_thetas.len(), 48);
}

fn tagged(z: C64, sign: Sign) -> TaggedPoint {
    TaggedPoint { z, sign, theta: 0.0, lambda: 0.0 }
}

#[test]
fn pseudo_convex_joins() {
    let seg = pseudo_convex_join(&tagged(c(1.0, 0.0), Sign::Plus), &tagged(c(0.0, 1.0), Sign::Plus)).unwrap();
    assert_eq!(seg, Join::Segment { from: c(1.0, 0.0), to: c(0.0, 1.0) });
    assert!(seg.contains(c(0.5, 0.5), 1e-12));
    let rays = pseudo_convex_join(&tagged(c(-3.0, 0.0), Sign::Minus), &tagged(c(2.0, 0.0), Sign::Plus)).unwrap();
    assert!(rays.contains(c(-10.0, 0.0), 1e-12) && rays.contains(c(7.0, 0.0), 1e-12));
    assert!(!rays.contains(c(0.0, 0.0), 1e-12));
    assert!(pseudo_convex_join(&tagged(c(0.0, 0.0), Sign::Plus), &tagged(c(0.0, 0.0), Sign::Minus)).is_err());
}

#[test]
fn classifications() {
    let spec = fixtures::order4_nested();
    let cls = classify_range(&spec.matrix(), &spec.metric(), 720);
    let RangeKind::BihyperbolicNested { outer, .. } = cls.kind else {
        panic!("expected nested, got {}", cls.kind.name());
    };
    assert!(close(outer.center, c(1.0, 0.0), 1e-9));
    assert!((outer.focal_half_distance() - 23f64.sqrt()).abs() < 1e-9);

    let spec = fixtures::order4_flat();
    let cls = classify_range(&spec.matrix(), &spec.metric(), 720);
    assert_eq!(cls.kind.name(), "bihyperbolic_flat");
    assert!(!cls.evidence.flats.is_empty());

    let spec = fixtures::order4_whole_plane();
    assert_eq!(classify_range(&spec.matrix(), &spec.metric(), 720).kind, RangeKind::WholePlane);
}

#[test]
fn membership_signs() {
    let spec = fixtures::order3_disc();
    let cert = certify_order3(&spec).unwrap();
    let h = cert.hyperbola.unwrap();
    assert!(hyperbola_membership(&h, h.foci[0]).unwrap() > 0.0);
    assert!(hyperbola_membership(&h, h.center).unwrap() < 0.0);
    assert!(hyperbola_membership(&h, c(4.0, 0.0)).unwrap() > 0.0);
}

#[test]
fn normal_forms() {
    let t = fixtures::order3_disc();
    let nf = normal_form(&t.matrix(), &t.metric()).unwrap();
    assert!(nf.tau.abs() < 1e-15 && nf.delta.norm() < 1e-15);

    let real = real_spec(3, 1.0, &[2.0, 3.0]);
    let rotated = real.matrix().scale(c(0.0, 1.0));
    let nf = normal_form(&rotated, &real.metric()).unwrap();
    assert!((nf.tau - PI / 2.0).abs() < 1e-12 && nf.delta.norm() < 1e-12);
    assert!((nf.t.a - 1.0).abs() < 1e-12);

    let shift = c(2.0, 1.0);
    let shifted = CMatrix::from_fn(3, |i, k| t.matrix().row(i)[k] + if i == k { shift } else { c(0.0, 0.0) });
    let nf = normal_form(&shifted, &t.metric()).unwrap();
    assert!(close(nf.delta, shift, 1e-12));
    assert!(nf.reconstruct().max_diff(&shifted) < 1e-12);
    assert!(nf.t.matrix().max_diff(&t.matrix()) < 1e-12);
}

#[test]
fn order3_certificates() {
    let cert = certify_order3(&fixtures::order3_disc()).unwrap();
    assert!(close(cert.delta, c(3.0, -2.0), 1e-12));
    assert!((cert.trace_adj - 19.0).abs() < 1e-12);
    assert!(cert.verdict);
    let r = c(3.0, -2.0).sqrt();
    assert!(contains_all(&cert.hyperbola.unwrap().foci, &[r, -r], 1e-9));

    let diag = real_spec(3, 1.0, &[0.0, 0.0]);
    let cert = certify_order3(&diag).unwrap();
    assert!((cert.trace_adj - 3.0).abs() < 1e-15 && !cert.verdict);
    assert!(!certify_order3(&real_spec(3, 0.0, &[0.0, 0.0])).unwrap().verdict);
}

#[test]
fn order5_blocks_and_certificates() {
    let spec = fixtures::order5_two_conics();
    let (r, s) = block_reduce5(&spec).unwrap();
    let s2 = 2f64.sqrt();
    assert!(r.max_diff(&CMatrix::from_real_rows(&[&[6.0, -3.0], &[2.0, -6.0]]).unwrap()) < 1e-12);
    let s_expected = CMatrix::from_rows(vec![
        vec![c(6.0, 0.0), c(0.0, s2), c(0.0, 0.0)],
        vec![c(5.0 * s2, 0.0), c(-6.0, 0.0), c(2.0, 0.0)],
        vec![c(0.0, 0.0), c(-3.0, 0.0), c(6.0, 0.0)],
    ])
    .unwrap();
    assert!(s.max_diff(&s_expected) < 1e-12);
    assert!(block_residual(&spec).unwrap() < 1e-12);

    let (r0, s0) = block_reduce5(&real_spec(5, 2.0, &[0.0; 4])).unwrap();
    assert!(r0.is_tridiagonal(0.0) && r0.max_diff(&CMatrix::from_real_diag(&[2.0, -2.0])) == 0.0);
    assert!(s0.max_diff(&CMatrix::from_real_diag(&[2.0, -2.0, 2.0])) == 0.0);

    let cert = certify_order5(&spec).unwrap();
    assert!(close(cert.delta1, c(30.0, 0.0), 1e-12) && close(cert.delta2, c(30.0, 10.0), 1e-12));
    assert!((cert.m1 - 59.0).abs() < 1e-12 && (cert.m2 - 7.0).abs() < 1e-12);
    assert!(cert.verdict);

    let a = spec.matrix();
    let lhs: f64 = eigs(&a).iter().map(|z| z.norm_sqr()).sum::<f64>() - trace_adj_product(&a, &spec.metric()).unwrap();
    assert!((lhs - cert.axis_sum).abs() < 1e-9);

    let cert = certify_order5(&real_spec(5, 1.0, &[0.0; 4])).unwrap();
    assert!(close(cert.delta2, c(1.0, 0.0), 1e-15) && (cert.m2 - 2.0).abs() < 1e-15 && !cert.verdict);
}

#[test]
fn order4_blocks_and_certificates() {
    let spec = fixtures::order4_nested();
    let (sp, sm) = block_reduce4(&spec).unwrap();
    assert!(sp.max_diff(&CMatrix::from_real_rows(&[&[5.0, 1.0], &[7.0, -3.0]]).unwrap()) < 1e-12);
    assert!(sm.max_diff(&CMatrix::from_real_rows(&[&[5.0, 1.0], &[7.0, -7.0]]).unwrap()) < 1e-12);
    let (p0, m0) = block_reduce4(&real_spec(4, 3.0, &[1.0, 0.0, 2.0])).unwrap();
    assert_eq!(p0, m0);
    assert!(block_residual(&fixtures::order4_flat()).unwrap() < 1e-12);

    let cert = certify_order4(&spec).unwrap();
    assert!(close(cert.delta, c(32.0, 0.0), 1e-12));
    assert!(close(cert.delta_plus, c(23.0, 0.0), 1e-12) && close(cert.delta_minus, c(43.0, 0.0), 1e-12));
    assert!(cert.verdict);
    let (r23, r43) = (23f64.sqrt(), 43f64.sqrt());
    assert!(contains_all(&cert.h_plus.unwrap().foci, &[c(1.0 + r23, 0.0), c(1.0 - r23, 0.0)], 1e-9));
    assert!(contains_all(&cert.h_minus.unwrap().foci, &[c(-1.0 + r43, 0.0), c(-1.0 - r43, 0.0)], 1e-9));
    let expected = [c(-1.0 + r43, 0.0), c(-1.0 - r43, 0.0), c(1.0 + r23, 0.0), c(1.0 - r23, 0.0)];
    assert!(contains_all(&eigs(&spec.matrix()), &expected, 1e-9));

    let whole = fixtures::order4_whole_plane();
    let (r55, r15) = (55f64.sqrt(), 15f64.sqrt());
    let expected = [c((-5.0 + r55) / 2.0, 0.0), c((-5.0 - r55) / 2.0, 0.0), c((5.0 + r15) / 2.0, 0.0), c((5.0 - r15) / 2.0, 0.0)];
    assert!(contains_all(&eigs(&whole.matrix()), &expected, 1e-9));

    let cert = certify_order4(&real_spec(4, 1.0, &[0.0, 0.0, 0.0])).unwrap();
    assert!(cert.b2_zero);
    assert_eq!(cert.subcase, Subcase4::NotCertified);
    assert!(close(cert.delta, c(1.0, 0.0), 1e-15) && (cert.m - 2.0).abs() < 1e-15 && !cert.verdict);
}

#[test]
fn order6_blocks_and_certificates() {
    let spec = fixtures::order6_two_cubics();
    let (upper, lower) = block_reduce6(&spec).unwrap();
    let u = CMatrix::from_real_rows(&[&[4.0, 1.0, 0.0], &[5.0, -4.0, 2.0], &[0.0, 4.0, 6.0]]).unwrap();
    let l = CMatrix::from_real_rows(&[&[2.0, 4.0, 0.0], &[2.0, -4.0, 5.0], &[0.0, 1.0, 4.0]]).unwrap();
    assert!(upper.max_diff(&u) < 1e-12 && lower.max_diff(&l) < 1e-12);
    assert!(block_residual(&spec).unwrap() < 1e-12);

    let disc = fixtures::order6_disc();
    let (upper, lower) = block_reduce6(&disc).unwrap();
    let e3 = CMatrix::exchange(3);
    let reflected = CMatrix::from_fn(3, |i, k| (0..3).flat_map(|p| (0..3).map(move |q| (p, q))).map(|(p, q)| e3.row(i)[p] * lower.row(p)[q] * e3.row(q)[k]).sum());
    assert!(upper.max_diff(&reflected) < 1e-12);

    let (u0, l0) = block_reduce6(&real_spec(6, 3.0, &[0.0; 5])).unwrap();
    assert!(u0.max_diff(&CMatrix::from_real_diag(&[3.0, -3.0, 3.0])) == 0.0);
    assert!(l0.max_diff(&CMatrix::from_real_diag(&[3.0, -3.0, 3.0])) == 0.0);

    let cert = certify_order6(&disc).unwrap();
    assert!(cert.verdict && cert.b3_zero);
    let k = cert.k.unwrap();
    let r29 = 29f64.sqrt();
    assert!(contains_all(&k.foci, &[c(r29, 0.0), c(-r29, 0.0)], 1e-9));
    assert!((k.nontransverse_length() - 6.0 * 2f64.sqrt()).abs() < 1e-9);

    assert!(!certify_order6(&spec).unwrap().verdict);
    assert!(!certify_order6(&real_spec(6, 3.0, &[0.0; 5])).unwrap().verdict);
}
