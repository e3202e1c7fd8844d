//! Small named graphs used throughout the tests and suites.

use alloc::vec::Vec;

use crate::graph::CoxeterGraph;

const LETTERS: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "i"];

/// Edgeless graph on `n ≤ 8` generators `a, b, c, …`.
pub fn free(n: usize) -> CoxeterGraph {
    CoxeterGraph::from_fn(&LETTERS[..n], |_, _| false).unwrap()
}

/// Complete graph on `n ≤ 8` generators: the group `(ℤ/2)^n`.
pub fn complete(n: usize) -> CoxeterGraph {
    CoxeterGraph::from_fn(&LETTERS[..n], |_, _| true).unwrap()
}

/// `{r, s, t}` with the single edge `r – t`; its complement is the path `r – s – t`.
pub fn path_complement() -> CoxeterGraph {
    CoxeterGraph::new(&["r", "s", "t"], &[("r", "t")]).unwrap()
}

/// `{r, s, t}` with the single edge `r – s`.
pub fn edge_rs() -> CoxeterGraph {
    CoxeterGraph::new(&["r", "s", "t"], &[("r", "s")]).unwrap()
}

/// Path `a – b – c – d`.
pub fn path4() -> CoxeterGraph {
    CoxeterGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
}

/// Four-cycle `a – b – c – d – a`.
pub fn square() -> CoxeterGraph {
    CoxeterGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap()
}

/// Complete bipartite graph `K_{2,3}`.
pub fn k23() -> CoxeterGraph {
    CoxeterGraph::from_fn(&["a1", "a2", "b1", "b2", "b3"], |i, j| (i < 2) != (j < 2)).unwrap()
}

/// The standard test graphs, all on at most five vertices.
pub fn test_graphs() -> Vec<(&'static str, CoxeterGraph)> {
    alloc::vec![
        ("free3", free(3)),
        ("path-complement", path_complement()),
        ("z2xz2", complete(2)),
        ("path4", path4()),
        ("square", square()),
        ("k23", k23()),
    ]
}

/// The test graphs with at most four vertices.
pub fn small_test_graphs() -> Vec<(&'static str, CoxeterGraph)> {
    test_graphs().into_iter().filter(|(_, g)| g.rank() <= 4).collect()
}
