use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::clique::Clique;
use crate::error::{Error, Result};

/// Generator index into [`CoxeterGraph::labels`].
pub type Gen = u8;

/// Maximum number of generators; generator sets are stored as `u64` masks.
pub const MAX_GENERATORS: usize = 64;

#[inline]
pub(crate) fn bit(s: Gen) -> u64 {
    1u64 << s
}

/// Iterates the generators in a mask in increasing order.
pub fn mask_iter(mut mask: u64) -> impl Iterator<Item = Gen> {
    core::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let s = mask.trailing_zeros() as Gen;
        mask &= mask - 1;
        Some(s)
    })
}

/// Commutation graph of a right-angled Coxeter system.
///
/// An edge between `s` and `t` means `st = ts`; no edge means `st` has
/// infinite order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    labels: Vec<String>,
    adj: Vec<u64>,
}

impl CoxeterGraph {
    pub fn new<S: AsRef<str>>(generators: &[S], edges: &[(S, S)]) -> Result<Self> {
        if generators.len() > MAX_GENERATORS {
            return Err(Error::InvalidGraph(format!("at most {MAX_GENERATORS} generators are supported")));
        }
        let labels: Vec<String> = generators.iter().map(|g| g.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || "[]*+()".contains(c)) {
                return Err(Error::InvalidGraph(format!("bad generator label `{l}`")));
            }
            if l == "e" || l == "p" {
                return Err(Error::InvalidGraph(format!("generator label `{l}` is reserved")));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidGraph(format!("duplicate generator `{l}`")));
            }
        }
        let mut graph = CoxeterGraph { adj: alloc::vec![0; labels.len()], labels };
        for (a, b) in edges {
            let s = graph.index_of(a.as_ref())?;
            let t = graph.index_of(b.as_ref())?;
            if s == t {
                return Err(Error::InvalidGraph(format!("self-edge on `{}`", a.as_ref())));
            }
            graph.adj[s as usize] |= bit(t);
            graph.adj[t as usize] |= bit(s);
        }
        Ok(graph)
    }

    /// Builds a graph from generator labels and an adjacency predicate on indices.
    pub fn from_fn<S: AsRef<str>>(generators: &[S], adjacent: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if adjacent(i, j) {
                    edges.push((generators[i].as_ref(), generators[j].as_ref()));
                }
            }
        }
        let names: Vec<&str> = generators.iter().map(|g| g.as_ref()).collect();
        CoxeterGraph::new(&names, &edges)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: Gen) -> &str {
        &self.labels[s as usize]
    }

    pub fn index_of(&self, label: &str) -> Result<Gen> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Gen)
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    /// Mask of a set of generator labels.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels.iter().try_fold(0, |m, l| Ok(m | bit(self.index_of(l.as_ref())?)))
    }

    /// Mask containing every generator.
    pub fn all(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    /// Whether `s` and `t` are distinct commuting generators.
    #[inline]
    pub fn commute(&self, s: Gen, t: Gen) -> bool {
        self.adj[s as usize] & bit(t) != 0
    }

    /// Neighbours of `s`.
    #[inline]
    pub fn link(&self, s: Gen) -> u64 {
        self.adj[s as usize]
    }

    pub fn star(&self, s: Gen) -> u64 {
        self.adj[s as usize] | bit(s)
    }

    /// Intersection of the links of the vertices in `set`; all generators for the empty set.
    pub fn link_of(&self, set: u64) -> u64 {
        mask_iter(set).fold(self.all(), |m, s| m & self.adj[s as usize])
    }

    /// Generators commuting with every member of `set`, members included.
    pub fn centralizing(&self, set: u64) -> u64 {
        mask_iter(set).fold(self.all(), |m, s| m & self.star(s))
    }

    pub fn edges(&self) -> Vec<(Gen, Gen)> {
        let mut out = Vec::new();
        for s in 0..self.rank() as Gen {
            for t in mask_iter(self.adj[s as usize]) {
                if s < t {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn is_free(&self) -> bool {
        self.adj.iter().all(|&m| m == 0)
    }

    pub fn is_clique(&self, set: u64) -> bool {
        mask_iter(set).all(|s| set & !self.star(s) == 0)
    }

    /// All cliques, the empty one included, ordered by size then mask.
    pub fn cliques(&self) -> Vec<Clique> {
        let mut out = Vec::new();
        self.extend_cliques(0, self.all(), &mut out);
        out.sort_by_key(|c| (c.len(), c.mask()));
        out
    }

    fn extend_cliques(&self, current: u64, candidates: u64, out: &mut Vec<Clique>) {
        out.push(Clique::from_mask(current));
        for s in mask_iter(candidates) {
            let rest = candidates & self.adj[s as usize] & !(bit(s) << 1).wrapping_sub(1);
            self.extend_cliques(current | bit(s), rest, out);
        }
    }

    /// Cliques with exactly `l` vertices.
    pub fn cliques_of_size(&self, l: usize) -> Vec<Clique> {
        self.cliques().into_iter().filter(|c| c.len() == l).collect()
    }

    /// Cliques contained in `set`.
    pub fn cliques_within(&self, set: u64) -> Vec<Clique> {
        self.cliques().into_iter().filter(|c| c.mask() & !set == 0).collect()
    }

    pub fn max_clique_size(&self) -> usize {
        self.cliques().last().map_or(0, |c| c.len())
    }

    /// Induced subgraph on `subset`, keeping the original generator order.
    pub fn induced(&self, subset: u64) -> CoxeterGraph {
        let keep: Vec<Gen> = mask_iter(subset & self.all()).collect();
        let labels: Vec<String> = keep.iter().map(|&s| self.labels[s as usize].clone()).collect();
        let adj = keep
            .iter()
            .map(|&s| {
                keep.iter().enumerate().filter(|&(_, &t)| self.commute(s, t)).fold(0, |m, (j, _)| m | bit(j as Gen))
            })
            .collect();
        CoxeterGraph { labels, adj }
    }

    /// True iff the complement of the graph is connected.
    pub fn is_reduced_system(&self) -> bool {
        let n = self.rank();
        if n == 0 {
            return false;
        }
        let mut seen = 1u64;
        let mut stack = alloc::vec![0 as Gen];
        while let Some(s) = stack.pop() {
            let next = self.all() & !self.star(s) & !seen;
            seen |= next;
            stack.extend(mask_iter(next));
        }
        seen == self.all()
    }

    /// An induced 4-cycle, if any.
    pub fn induced_square(&self) -> Option<[Gen; 4]> {
        let n = self.rank() as Gen;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        let set = vs.iter().fold(0, |m, &v| m | bit(v));
                        let degree = |v: Gen| (self.adj[v as usize] & set).count_ones();
                        if vs.iter().all(|&v| degree(v) == 2) {
                            // 2-regular on four vertices is a 4-cycle; order it around the cycle.
                            let nb: Vec<Gen> = mask_iter(self.adj[a as usize] & set).collect();
                            let opposite = mask_iter(set & !bit(a) & !bit(nb[0]) & !bit(nb[1])).next()?;
                            return Some([a, nb[0], opposite, nb[1]]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Word hyperbolicity of the Coxeter group: no induced square in the graph.
    pub fn is_hyperbolic(&self) -> bool {
        self.induced_square().is_none()
    }

    /// Vertices `v` with at least two generators outside `Star(v)`.
    pub fn separating_vertices(&self) -> Vec<Gen> {
        (0..self.rank() as Gen).filter(|&v| (self.all() & !self.star(v)).count_ones() >= 2).collect()
    }

    pub fn find_separating_vertex(&self) -> Result<Gen> {
        if !self.is_reduced_system() || self.rank() < 3 {
            return Err(Error::Precondition(
                "separating vertex search needs a reduced graph on at least 3 vertices".into(),
            ));
        }
        self.separating_vertices().first().copied().ok_or_else(|| Error::Precondition("no separating vertex".into()))
    }

    /// Checks that every letter is a generator of this graph.
    pub fn check_letters(&self, letters: &[Gen]) -> Result<()> {
        match letters.iter().find(|&&s| s as usize >= self.rank()) {
            Some(&s) => Err(Error::GraphMismatch(s)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_complement() -> CoxeterGraph {
        CoxeterGraph::new(&["r", "s", "t"], &[("r", "t")]).unwrap()
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(CoxeterGraph::new(&["a", "a"], &[]).is_err());
        assert!(CoxeterGraph::new(&["a"], &[("a", "a")]).is_err());
        assert!(matches!(CoxeterGraph::new(&["a"], &[("a", "b")]), Err(Error::UnknownGenerator(_))));
        assert!(CoxeterGraph::new(&["e"], &[]).is_err());
    }

    #[test]
    fn links_and_stars() {
        let g = path_complement();
        assert_eq!(g.link(0), 0b100);
        assert_eq!(g.star(1), 0b010);
        assert_eq!(g.link_of(0), g.all());
        assert_eq!(g.link_of(0b101), 0);
        assert_eq!(g.centralizing(0b001), 0b101);
    }

    #[test]
    fn clique_enumeration_examples() {
        let free = CoxeterGraph::new(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(free.cliques().len(), 4);
        assert_eq!(path_complement().cliques().len(), 5);
        let tri = CoxeterGraph::from_fn(&["a", "b", "c"], |_, _| true).unwrap();
        assert_eq!(tri.cliques().len(), 8);
    }

    #[test]
    fn cliques_match_subset_scan() {
        let g = CoxeterGraph::from_fn(&["a", "b", "c", "d", "e1"], |i, j| (i + j) % 3 != 0).unwrap();
        let brute: Vec<u64> = (0..(1u64 << 5)).filter(|&m| g.is_clique(m)).collect();
        let mut got: Vec<u64> = g.cliques().iter().map(|c| c.mask()).collect();
        got.sort_unstable();
        assert_eq!(got, brute);
    }

    #[test]
    fn reducedness() {
        let free = CoxeterGraph::new(&["a", "b", "c"], &[]).unwrap();
        assert!(free.is_reduced_system());
        assert!(path_complement().is_reduced_system());
        let tri = CoxeterGraph::from_fn(&["a", "b", "c"], |_, _| true).unwrap();
        assert!(!tri.is_reduced_system());
    }

    #[test]
    fn hyperbolicity() {
        assert!(path_complement().is_hyperbolic());
        let square =
            CoxeterGraph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert!(!square.is_hyperbolic());
        let k23 = CoxeterGraph::from_fn(&["a1", "a2", "b1", "b2", "b3"], |i, j| (i < 2) != (j < 2)).unwrap();
        assert!(!k23.is_hyperbolic());
        let sq = k23.induced_square().unwrap();
        for i in 0..4 {
            assert!(k23.commute(sq[i], sq[(i + 1) % 4]));
            assert!(!k23.commute(sq[i], sq[(i + 2) % 4]));
        }
    }

    #[test]
    fn separating_vertex_examples() {
        let free = CoxeterGraph::new(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(free.find_separating_vertex().unwrap(), 0);
        assert_eq!(path_complement().find_separating_vertex().unwrap(), 1);
        let k23i =
            CoxeterGraph::from_fn(&["a1", "a2", "b1", "b2", "b3", "z"], |i, j| i < 5 && j < 5 && (i < 2) != (j < 2))
                .unwrap();
        assert!(k23i.is_reduced_system());
        assert!(k23i.separating_vertices().contains(&5));
        let tri = CoxeterGraph::from_fn(&["a", "b", "c"], |_, _| true).unwrap();
        assert!(tri.find_separating_vertex().is_err());
    }

    #[test]
    fn induced_subgraph_keeps_edges() {
        let g = path_complement();
        let h = g.induced(0b101);
        assert_eq!(h.labels(), &["r".to_string(), "t".to_string()]);
        assert!(h.commute(0, 1));
    }
}
