use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expansion::{apply_terms, OperatorTerm};
use crate::graph::CoxeterGraph;
use crate::hecke::HeckeElement;
use crate::word::{enumerate_ball, Word};

/// Finite section of an operator, evaluated at a fixed `q`.
///
/// Entry `(v, u)` is `⟨Op T_u Ω, T_v Ω⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedMatrix {
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    /// `(row, col, value)` triples with nonzero values.
    pub entries: Vec<(usize, usize, f64)>,
}

impl TruncatedMatrix {
    /// Columns `cols`; rows are every word reached by an image.
    pub fn from_map(cols: Vec<Word>, q: f64, mut op: impl FnMut(&Word) -> HeckeElement) -> Self {
        let images: Vec<HeckeElement> = cols.iter().map(&mut op).collect();
        let mut row_index: BTreeMap<Word, usize> = BTreeMap::new();
        for img in &images {
            for (w, _) in img.terms() {
                row_index.entry(w.clone()).or_insert(0);
            }
        }
        for (i, v) in row_index.values_mut().enumerate() {
            *v = i;
        }
        let mut entries = Vec::new();
        for (j, img) in images.iter().enumerate() {
            for (w, c) in img.terms() {
                let val = c.eval(q);
                if val != 0.0 {
                    entries.push((row_index[w], j, val));
                }
            }
        }
        TruncatedMatrix { rows: row_index.into_keys().collect(), cols, entries }
    }

    /// Section of `Σ terms` from `B_N` into the span of the images.
    pub fn from_terms(graph: &CoxeterGraph, terms: &[OperatorTerm], n: usize, q: f64, cap: usize) -> Result<Self> {
        let cols = enumerate_ball(graph, n, cap)?;
        Ok(TruncatedMatrix::from_map(cols, q, |w| apply_terms(graph, terms, &HeckeElement::basis(w.clone()))))
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = alloc::vec![0.0; self.rows.len()];
        for &(i, j, v) in &self.entries {
            y[i] += v * x[j];
        }
        y
    }

    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut x = alloc::vec![0.0; self.cols.len()];
        for &(i, j, v) in &self.entries {
            x[j] += v * y[i];
        }
        x
    }

    /// Largest singular value by power iteration on `MᵀM`.
    ///
    /// Each iterate's `‖Mx‖/‖x‖` is a lower bound for the norm; the best one is returned.
    pub fn norm_lower_bound(&self, tol: f64, max_iter: usize) -> Result<f64> {
        if self.cols.is_empty() || self.entries.is_empty() {
            return Ok(0.0);
        }
        // Deterministic, generic starting vector.
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut x: Vec<f64> = (0..self.cols.len())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                0.5 + (state >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect();
        let mut best = 0.0f64;
        let mut prev = f64::NEG_INFINITY;
        for _ in 0..max_iter {
            let nx = norm(&x);
            x.iter_mut().for_each(|v| *v /= nx);
            let y = self.apply(&x);
            let sigma = norm(&y);
            best = best.max(sigma);
            if (sigma - prev).abs() <= (tol * 1e-3).max(8.0 * f64::EPSILON) * sigma.max(1.0) {
                return Ok(best);
            }
            prev = sigma;
            x = self.apply_transpose(&y);
            if norm(&x) == 0.0 {
                return Ok(best);
            }
        }
        Err(Error::NonConvergence(max_iter))
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|a| a * a).sum())
}

pub const MAX_NORM_ITER: usize = 200_000;

/// Norm lower bound for `Σ terms` restricted to `B_N` at `q`.
pub fn operator_norm_lower(
    graph: &CoxeterGraph,
    terms: &[OperatorTerm],
    n: usize,
    q: f64,
    tol: f64,
    cap: usize,
) -> Result<f64> {
    if q.is_nan() || q <= 0.0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    TruncatedMatrix::from_terms(graph, terms, n, q, cap)?.norm_lower_bound(tol, MAX_NORM_ITER)
}

/// Largest singular value of a small dense matrix (rows of equal length).
pub fn dense_norm(m: &[Vec<f64>], tol: f64) -> Result<f64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut entries = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0.0 {
                entries.push((i, j, v));
            }
        }
    }
    let t = TruncatedMatrix {
        rows: alloc::vec![Word::identity(); m.len()],
        cols: alloc::vec![Word::identity(); cols],
        entries,
    };
    t.norm_lower_bound(tol, MAX_NORM_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::expansion::t_expansion;
    use crate::word::{parse_word, DEFAULT_BALL_CAP};

    #[test]
    fn generator_norm_matches_eigenvalues() {
        let g = catalog::free(3);
        let s = parse_word(&g, "a").unwrap();
        for q in [0.25, 1.0, 4.0] {
            let want = libm::sqrt(q).max(1.0 / libm::sqrt(q));
            for n in 1..=3 {
                let got = operator_norm_lower(&g, &t_expansion(&g, &s), n, q, 1e-12, DEFAULT_BALL_CAP).unwrap();
                assert!((got - want).abs() < 1e-9, "q={q} n={n} got {got}");
            }
        }
    }

    #[test]
    fn permutations_have_norm_one() {
        let g = catalog::path_complement();
        let id = alloc::vec![OperatorTerm::identity()];
        assert!((operator_norm_lower(&g, &id, 3, 2.0, 1e-12, DEFAULT_BALL_CAP).unwrap() - 1.0).abs() < 1e-12);
        let shift = alloc::vec![OperatorTerm { creator: parse_word(&g, "s").unwrap(), ..OperatorTerm::identity() }];
        assert!((operator_norm_lower(&g, &shift, 3, 2.0, 1e-12, DEFAULT_BALL_CAP).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_norm_of_diagonal() {
        let m = alloc::vec![alloc::vec![3.0, 0.0], alloc::vec![0.0, -5.0]];
        assert!((dense_norm(&m, 1e-12).unwrap() - 5.0).abs() < 1e-9);
    }
}
