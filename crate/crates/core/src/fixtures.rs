//! Reference tridiagonal matrices with known ranges, shared by tests, benches and
//! the command-line examples.

use num_complex::Complex64;

use crate::tridiag::TridiagonalSpec;

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn real(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

/// Order 3, `Δ = 3 - 2i`: a hyperbolic disc with foci `±√(3-2i)` and the eigenvalue 4.
pub fn order3_disc() -> TridiagonalSpec {
    TridiagonalSpec::new(3, 4.0, vec![c(3.0, 1.0), c(1.0, 0.0)], vec![c(-4.0, 1.0), c(0.0, -1.0)])
        .expect("valid spec")
}

/// Order 5, `Δ₁ = 30`, `Δ₂ = 30 + 10i`: two conics and the eigenvalue 6.
pub fn order5_two_conics() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(5, 6.0, vec![c(-3.0, 0.0), c(5.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)])
        .expect("valid spec")
}

/// Order 4 with nested hyperbolas, outer one centered at 1 with foci `1 ± √23`.
pub fn order4_nested() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(4, 5.0, real(&[1.0, 2.0, 7.0])).expect("valid spec")
}

/// Order 4 whose boundary mixes two hyperbolas joined by flat portions.
pub fn order4_flat() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(4, 6.0, vec![c(0.0, 1.0), c(2.0, 1.0), c(2.0, 0.0)]).expect("valid spec")
}

/// Order 4 with interlacing `σ±` at some angles: the whole plane.
pub fn order4_whole_plane() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(4, 1.0, real(&[3.0, 5.0, 0.5])).expect("valid spec")
}

/// Order 6 with `b₃ ≠ 0`: the generating polynomial is a product of two cubics.
pub fn order6_two_cubics() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(6, 4.0, real(&[1.0, 2.0, -2.0, 4.0, 5.0])).expect("valid spec")
}

/// Order 6 with `b₃ = 0`: a hyperbolic disc with foci `±√29`.
pub fn order6_disc() -> TridiagonalSpec {
    TridiagonalSpec::centrosymmetric(6, 4.0, real(&[1.0, 2.0, 0.0, 4.0, 5.0])).expect("valid spec")
}

/// All named fixtures.
pub fn all() -> Vec<(&'static str, TridiagonalSpec)> {
    vec![
        ("order3_disc", order3_disc()),
        ("order5_two_conics", order5_two_conics()),
        ("order4_nested", order4_nested()),
        ("order4_flat", order4_flat()),
        ("order4_whole_plane", order4_whole_plane()),
        ("order6_two_cubics", order6_two_cubics()),
        ("order6_disc", order6_disc()),
    ]
}
