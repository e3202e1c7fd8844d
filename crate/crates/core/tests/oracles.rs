use std::collections::HashSet;

use racg_hecke_core::catalog;
use racg_hecke_core::growth::{count_by_length_automaton, kappa_bound_check};
use racg_hecke_core::khintchine::{assemble_blocks, creation_row_norm, structured_norm_bound, Block};
use racg_hecke_core::multipliers::{delta_identity_check, dense_norm, dilation_apply, dilation_norm_bound, Sign};
use racg_hecke_core::word::{enumerate_ball, enumerate_sphere, inverse, is_prefix, multiply, reduce, DEFAULT_BALL_CAP};
use racg_hecke_core::CoxeterGraph;

type Mat = Vec<Vec<i64>>;

/// Reflection of the geometric representation: `σ_s(e_t) = e_t - 2B(e_s, e_t)e_s`
/// with `B(e_s, e_s) = 1`, `0` for commuting pairs and `-1` otherwise.
fn reflection(g: &CoxeterGraph, s: usize) -> Mat {
    let n = g.rank();
    let form = |a: usize, b: usize| -> i64 {
        if a == b {
            1
        } else if g.commute(a as u8, b as u8) {
            0
        } else {
            -1
        }
    };
    let mut m = tits_identity(g);
    for (t, x) in m[s].iter_mut().enumerate().take(n) {
        *x -= 2 * form(s, t);
    }
    m
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Sphere sizes of the group image under the faithful geometric representation.
fn tits_sphere_sizes(g: &CoxeterGraph, k: usize) -> Vec<usize> {
    let gens: Vec<Mat> = (0..g.rank()).map(|s| reflection(g, s)).collect();
    let id = tits_identity(g);
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    let mut sizes = vec![1];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &frontier {
            for s in &gens {
                let p = matmul(m, s);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        sizes.push(next.len());
        frontier = next;
    }
    sizes
}

#[test]
fn ball_counts_match_geometric_representation() {
    for (name, g) in catalog::test_graphs() {
        let tits = tits_sphere_sizes(&g, 6);
        let spheres: Vec<usize> = (0..=6).map(|k| enumerate_sphere(&g, k, DEFAULT_BALL_CAP).unwrap().len()).collect();
        let automaton: Vec<usize> = count_by_length_automaton(&g, 6).into_iter().map(|c| c as usize).collect();
        assert_eq!(spheres, tits, "{name}");
        assert_eq!(automaton, tits, "{name}");
    }
}

#[test]
fn normal_forms_match_geometric_representation() {
    for (name, g) in catalog::test_graphs() {
        let n = g.rank() as u8;
        let mut by_matrix = std::collections::HashMap::new();
        // every letter sequence of length ≤ 5
        let mut seqs: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..5 {
            let last: Vec<Vec<u8>> = seqs.iter().filter(|s| s.len() == seqs.last().unwrap().len()).cloned().collect();
            for s in last {
                for t in 0..n {
                    let mut x = s.clone();
                    x.push(t);
                    seqs.push(x);
                }
            }
        }
        for s in &seqs {
            let m = s.iter().fold(tits_identity(&g), |acc, &t| matmul(&acc, &reflection(&g, t as usize)));
            let w = reduce(&g, s).unwrap();
            let prior = by_matrix.entry(m).or_insert_with(|| w.clone());
            assert_eq!(*prior, w, "{name}: {s:?}");
        }
    }
}

fn tits_identity(g: &CoxeterGraph) -> Mat {
    (0..g.rank()).map(|i| (0..g.rank()).map(|j| (i == j) as i64).collect()).collect()
}

#[test]
fn prefix_order_matches_length_additivity() {
    for (name, g) in catalog::test_graphs() {
        let ball = enumerate_ball(&g, 4, DEFAULT_BALL_CAP).unwrap();
        for w in &ball {
            let winv = inverse(&g, w);
            for v in &ball {
                let additive = multiply(&g, &winv, v).unwrap().len() + w.len() == v.len();
                assert_eq!(is_prefix(&g, w, v), additive, "{name}: {} <= {}", w.display(&g), v.display(&g));
            }
        }
    }
}

#[test]
fn structured_bound_dominates_dense_norm() {
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 2001) as f64 / 1000.0 - 1.0
    };
    for trial in 0..200 {
        // four blocks, each column used by exactly one row
        let rows = [0, trial % 2, (trial / 2) % 3, 1];
        let blocks: Vec<Block<usize>> = (0..4)
            .map(|c| Block { row: rows[c], col: c, matrix: (0..2).map(|_| (0..3).map(|_| next()).collect()).collect() })
            .collect();
        let dense = dense_norm(&assemble_blocks(&blocks).unwrap(), 1e-13).unwrap();
        let bound = structured_norm_bound(&blocks, 1e-13).unwrap();
        assert!(dense <= bound + 1e-9, "trial {trial}: {dense} > {bound}");
    }
}

#[test]
fn column_sharing_blocks_are_rejected() {
    let e11 = vec![vec![1.0, 0.0], vec![0.0, 0.0]];
    let e21 = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
    let blocks = vec![Block { row: 0, col: 0, matrix: e11 }, Block { row: 1, col: 0, matrix: e21 }];
    let dense = dense_norm(&assemble_blocks(&blocks).unwrap(), 1e-13).unwrap();
    assert!((dense - 2f64.sqrt()).abs() < 1e-9);
    assert!(structured_norm_bound(&blocks, 1e-13).is_err());
}

#[test]
fn creation_row_norm_is_euclidean_on_free_graphs() {
    for n in 2..=4 {
        let g = catalog::free(n);
        let coeffs: Vec<f64> = (0..n).map(|i| 0.5 + i as f64).collect();
        let want = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let got = creation_row_norm(&g, &coeffs, 4, 1e-13, DEFAULT_BALL_CAP).unwrap();
        assert!((got - want).abs() < 1e-8, "free({n}): {got} vs {want}");
    }
}

#[test]
fn dilation_norms_respect_polynomial_bound() {
    for (name, g) in catalog::test_graphs() {
        let kappa = kappa_bound_check(&g, 5, DEFAULT_BALL_CAP).unwrap();
        let m = g.max_clique_size();
        for x in enumerate_ball(&g, 5, DEFAULT_BALL_CAP).unwrap() {
            for a in 0..=12 {
                let bound = dilation_norm_bound(kappa.constant, kappa.exponent, m, a);
                for sign in [Sign::Plus, Sign::Minus] {
                    let norm = dilation_apply(&g, sign, a, &x).norm();
                    assert!(norm <= bound + 1e-9, "{name}: x = {}, a = {a}: {norm} > {bound}", x.display(&g));
                }
            }
        }
    }
}

#[test]
fn delta_projection_identity_on_b5() {
    for (name, g) in catalog::test_graphs() {
        for w in enumerate_ball(&g, 3, DEFAULT_BALL_CAP).unwrap() {
            assert!(delta_identity_check(&g, &w, 5, DEFAULT_BALL_CAP).unwrap(), "{name}: {}", w.display(&g));
        }
    }
}
