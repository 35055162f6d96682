use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{TridiagError, TridiagonalSpec};
use crate::algebra::{j_adjoint, CMatrix};

type C64 = Complex64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn check_order(spec: &TridiagonalSpec, m: usize) -> Result<TridiagonalSpec, TridiagError> {
    if spec.order != m {
        return Err(TridiagError::UnsupportedOrder(spec.order));
    }
    spec.canonical()
}

/// `(√2/2)[[I, E],[-E, I]]` with `k×k` blocks.
fn q_even(k: usize) -> CMatrix {
    CMatrix::from_fn(2 * k, |i, j| {
        let v = match (i < k, j < k) {
            (true, true) | (false, false) => f64::from(u8::from(i % k == j % k)),
            (true, false) => f64::from(u8::from(i + (j - k) == k - 1)),
            (false, true) => -f64::from(u8::from((i - k) + j == k - 1)),
        };
        c(v * FRAC_1_SQRT_2)
    })
}

pub fn q4() -> CMatrix {
    q_even(2)
}

pub fn q6() -> CMatrix {
    q_even(3)
}

/// `(√2/2)[[I₂, 0, E₂],[0, √2, 0],[-E₂, 0, I₂]]`.
pub fn q5() -> CMatrix {
    let r = FRAC_1_SQRT_2;
    CMatrix::from_real_rows(&[
        &[r, 0.0, 0.0, 0.0, r],
        &[0.0, r, 0.0, r, 0.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0],
        &[0.0, -r, 0.0, r, 0.0],
        &[-r, 0.0, 0.0, 0.0, r],
    ])
    .expect("constant matrix")
}

/// `(S₊, S₋)` with `S± = [[a, b₁],[b₃, ±b₂ - a]]`.
pub fn block_reduce4(spec: &TridiagonalSpec) -> Result<(CMatrix, CMatrix), TridiagError> {
    let s = check_order(spec, 4)?;
    let a = c(s.a);
    let (b1, b2, b3) = (s.b[0], s.b[1], s.b[2]);
    let block = |sign: f64| CMatrix::from_rows(vec![vec![a, b1], vec![b3, b2 * sign - a]]);
    Ok((block(1.0)?, block(-1.0)?))
}

/// `(R, S)` with `R = [[a, b₁],[b₄, -a]]` and
/// `S = [[a, √2 b₃, 0],[√2 b₂, -a, b₄],[0, b₁, a]]`.
pub fn block_reduce5(spec: &TridiagonalSpec) -> Result<(CMatrix, CMatrix), TridiagError> {
    let s = check_order(spec, 5)?;
    let a = c(s.a);
    let z = c(0.0);
    let r2 = std::f64::consts::SQRT_2;
    let (b1, b2, b3, b4) = (s.b[0], s.b[1], s.b[2], s.b[3]);
    let r = CMatrix::from_rows(vec![vec![a, b1], vec![b4, -a]])?;
    let big = CMatrix::from_rows(vec![
        vec![a, b3 * r2, z],
        vec![b2 * r2, -a, b4],
        vec![z, b1, a],
    ])?;
    Ok((r, big))
}

/// Upper block `[[a, b₁, 0],[b₅, -a, b₂],[0, b₄, a - b₃]]` and lower block
/// `[[a + b₃, b₄, 0],[b₂, -a, b₅],[0, b₁, a]]`.
pub fn block_reduce6(spec: &TridiagonalSpec) -> Result<(CMatrix, CMatrix), TridiagError> {
    let s = check_order(spec, 6)?;
    let a = c(s.a);
    let z = c(0.0);
    let (b1, b2, b3, b4, b5) = (s.b[0], s.b[1], s.b[2], s.b[3], s.b[4]);
    let upper = CMatrix::from_rows(vec![vec![a, b1, z], vec![b5, -a, b2], vec![z, b4, a - b3]])?;
    let lower = CMatrix::from_rows(vec![vec![a + b3, b4, z], vec![b2, -a, b5], vec![z, b1, a]])?;
    Ok((upper, lower))
}

/// Max-norm distance between `Q#AQ` (computed by multiplication) and the direct sum of
/// the blocks returned by the matching `block_reduce*`.
pub fn block_residual(spec: &TridiagonalSpec) -> Result<f64, TridiagError> {
    let s = spec.canonical()?;
    let (q, expected) = match s.order {
        4 => {
            let (sp, sm) = block_reduce4(&s)?;
            let e = CMatrix::exchange(2);
            (q4(), sm.direct_sum(&(&(&e * &sp) * &e)))
        }
        5 => {
            let (r, big) = block_reduce5(&s)?;
            (q5(), r.direct_sum(&big))
        }
        6 => {
            let (u, l) = block_reduce6(&s)?;
            (q6(), u.direct_sum(&l))
        }
        m => return Err(TridiagError::UnsupportedOrder(m)),
    };
    let j = s.metric();
    let reduced = &(&j_adjoint(&q, &j)? * &s.matrix()) * &q;
    Ok(reduced.max_diff(&expected))
}
