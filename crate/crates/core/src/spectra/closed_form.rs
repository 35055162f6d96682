//! Closed-form eigenvalues for orders up to four, used to cross-check the QR solver.

use num_complex::Complex64;

use crate::algebra::CMatrix;

type C64 = Complex64;

/// Monic characteristic polynomial coefficients `[c_0, ..., c_{n-1}]` of
/// `z^n + c_{n-1} z^{n-1} + ... + c_0`, via Faddeev-LeVerrier.
pub fn char_poly(m: &CMatrix) -> Vec<C64> {
    let n = m.n();
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    let mut mk = CMatrix::zeros(n);
    let mut c_prev = C64::new(1.0, 0.0);
    for k in 1..=n {
        let shifted = &mk + &CMatrix::scalar(n, c_prev);
        mk = m * &shifted;
        let ck = -mk.trace() / k as f64;
        coeffs[n - k] = ck;
        c_prev = ck;
    }
    coeffs
}

fn eval_monic(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(1.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn quadratic(b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) * 0.5
    } else {
        -(b - disc) * 0.5
    };
    if q.norm() == 0.0 {
        return [C64::new(0.0, 0.0); 2];
    }
    [q, c / q]
}

fn cubic(a: C64, b: C64, c: C64) -> [C64; 3] {
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let mut u3 = -q / 2.0 + disc;
    if u3.norm() < (-q / 2.0 - disc).norm() {
        u3 = -q / 2.0 - disc;
    }
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    if u3.norm() == 0.0 {
        return [shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut out = [C64::new(0.0, 0.0); 3];
    let mut w = C64::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * w;
        *slot = uk - p / (uk * 3.0) + shift;
        w *= omega;
    }
    out
}

fn quartic(a: C64, b: C64, c: C64, d: C64) -> [C64; 4] {
    let shift = -a / 4.0;
    let p = b - a * a * (3.0 / 8.0);
    let q = c - a * b / 2.0 + a * a * a / 8.0;
    let r = d - a * c / 4.0 + a * a * b / 16.0 - a * a * a * a * (3.0 / 256.0);
    let roots: [C64; 4] = if q.norm() <= 1e-14 * (1.0 + p.norm() + r.norm()) {
        let [s1, s2] = quadratic(p, r);
        let (y1, y2) = (s1.sqrt(), s2.sqrt());
        [y1, -y1, y2, -y2]
    } else {
        // resolvent: 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
        let ms = cubic(p, (p * p * 2.0 - r * 8.0) / 8.0, -q * q / 8.0);
        let m = ms
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap();
        let s = (m * 2.0).sqrt();
        let k = q / (s * 2.0);
        let [y1, y2] = quadratic(-s, p / 2.0 + m + k);
        let [y3, y4] = quadratic(s, p / 2.0 + m - k);
        [y1, y2, y3, y4]
    };
    roots.map(|y| y + shift)
}

/// Eigenvalues of `m` for `n <= 4` from the characteristic polynomial, polished by
/// two Newton steps. Returns `None` for larger orders.
pub fn closed_form_eigenvalues(m: &CMatrix) -> Option<Vec<C64>> {
    let cp = char_poly(m);
    let raw: Vec<C64> = match m.n() {
        1 => vec![-cp[0]],
        2 => quadratic(cp[1], cp[0]).to_vec(),
        3 => cubic(cp[2], cp[1], cp[0]).to_vec(),
        4 => quartic(cp[3], cp[2], cp[1], cp[0]).to_vec(),
        _ => return None,
    };
    Some(
        raw.into_iter()
            .map(|mut z| {
                for _ in 0..2 {
                    let (p, dp) = eval_monic(&cp, z);
                    if dp.norm() == 0.0 {
                        break;
                    }
                    let step = p / dp;
                    if step.re.is_finite() && step.im.is_finite() {
                        z -= step;
                    }
                }
                z
            })
            .collect(),
    )
}
