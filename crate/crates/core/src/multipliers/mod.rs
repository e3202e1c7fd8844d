//! Radial multipliers, word-length projections and the dilation machinery
//! behind their complete boundedness.

mod dilation;
mod norm;

pub use dilation::*;
pub use norm::*;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::poly::{p_of_q, Rational};

/// `Φ_r(T_w) = r^{|w|} T_w`.
pub fn radial_multiplier(r: Rational, a: &HeckeElement) -> Result<HeckeElement> {
    if r.is_negative() || r.is_zero() || r > Rational::ONE {
        return Err(Error::Precondition("radial multiplier needs 0 < r ≤ 1".into()));
    }
    Ok(a.map_coeffs(|w, c| c.scale(r.pow(w.len() as u32))))
}

/// `Ψ_{≤n}`: keeps terms of length at most `n`.
pub fn wordlength_projection(n: usize, a: &HeckeElement) -> HeckeElement {
    a.filter(|w| w.len() <= n)
}

/// `Ψ_n`: keeps terms of length exactly `n`.
pub fn wordlength_exact(n: usize, a: &HeckeElement) -> HeckeElement {
    a.filter(|w| w.len() == n)
}

pub type Mat2 = [[f64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn sandwich(k: &Mat2, x: &Mat2) -> Mat2 {
    mat_mul(&mat_mul(&transpose(k), x), k)
}

fn add(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]]
}

/// Kraus operators `A, B, C` of the radial multiplier on one generator, in
/// the basis `(Ω, T_s Ω)`.
pub fn kraus_matrices(r: f64) -> [Mat2; 3] {
    let a = libm::sqrt(1.0 - r);
    let c = libm::sqrt(r);
    [[[a, 0.0], [0.0, 0.0]], [[0.0, a], [0.0, 0.0]], [[c, 0.0], [0.0, c]]]
}

/// Matrix of `T_s` acting on `(Ω, T_s Ω)`.
pub fn generator_matrix(q: f64) -> Mat2 {
    [[0.0, 1.0], [1.0, p_of_q(q)]]
}

/// Checks `A*A + B*B + C*C = I` and `Σ K* x K = Φ_r(x)` for `x ∈ {1, T_s}`.
pub fn kraus_check(r: f64, q: f64) -> bool {
    const TOL: f64 = 1e-12;
    if !(r > 0.0 && r < 1.0 && q > 0.0) {
        return false;
    }
    let ks = kraus_matrices(r);
    let channel = |x: &Mat2| ks.iter().fold([[0.0; 2]; 2], |acc, k| add(&acc, &sandwich(k, x)));
    let close = |a: &Mat2, b: &Mat2| (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() <= TOL));
    let id = [[1.0, 0.0], [0.0, 1.0]];
    let ts = generator_matrix(q);
    let scaled = [[r * ts[0][0], r * ts[0][1]], [r * ts[1][0], r * ts[1][1]]];
    close(&channel(&id), &id) && close(&channel(&ts), &scaled)
}

/// `‖Ψ_{≤n}(Φ_r(a)) - a‖₂` at `q` along a schedule of `(r, n)`.
pub fn ccap_convergence_demo(a: &HeckeElement, schedule: &[(f64, usize)], q: f64) -> Vec<f64> {
    schedule
        .iter()
        .map(|&(r, n)| {
            let sq: f64 = a
                .terms()
                .map(|(w, c)| {
                    let keep = if w.len() <= n { libm::pow(r, w.len() as f64) } else { 0.0 };
                    libm::pow((keep - 1.0) * c.eval(q), 2.0)
                })
                .sum();
            libm::sqrt(sq)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::PolyScalar;
    use crate::word::{parse_word, Word};

    #[test]
    fn radial_examples() {
        let g = catalog::free(2);
        let st = HeckeElement::basis(parse_word(&g, "a b").unwrap());
        let half = Rational::new(1, 2);
        assert_eq!(radial_multiplier(half, &HeckeElement::one()).unwrap(), HeckeElement::one());
        assert_eq!(radial_multiplier(half, &st).unwrap(), st.scale(&PolyScalar::constant(Rational::new(1, 4))));
        assert_eq!(radial_multiplier(Rational::ONE, &st).unwrap(), st);
        assert!(radial_multiplier(Rational::ZERO, &st).is_err());
        assert!(radial_multiplier(Rational::integer(2), &st).is_err());
    }

    #[test]
    fn projection_examples() {
        let g = catalog::free(2);
        let t = |s: &str| HeckeElement::basis(parse_word(&g, s).unwrap());
        let two = HeckeElement::one().scale(&PolyScalar::integer(2));
        assert_eq!(wordlength_projection(0, &t("a").add(&two)), two);
        let x = t("a b").add(&t("a"));
        assert_eq!(wordlength_projection(2, &x), x);
        assert!(wordlength_projection(1, &t("a b")).is_zero());
        assert_eq!(wordlength_exact(1, &x), t("a"));
    }

    #[test]
    fn kraus_examples() {
        assert!(kraus_check(0.5, 1.0));
        assert!(kraus_check(0.25, 2.0));
        assert!(!kraus_check(1.5, 2.0));
    }

    #[test]
    fn ccap_examples() {
        let g = catalog::free(2);
        let st = HeckeElement::basis(parse_word(&g, "a b").unwrap());
        let gaps = ccap_convergence_demo(&st, &[(0.9, 2)], 1.0);
        assert!((gaps[0] - 0.19).abs() < 1e-12);
        let gaps = ccap_convergence_demo(&HeckeElement::basis(Word::identity()), &[(0.5, 1), (0.75, 2)], 2.0);
        assert_eq!(gaps, alloc::vec![0.0, 0.0]);
    }
}
