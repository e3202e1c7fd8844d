use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{bit, mask_iter, CoxeterGraph, Gen};
use crate::word::Word;

/// A set of pairwise commuting generators, possibly empty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(u64);

impl Clique {
    pub const EMPTY: Clique = Clique(0);

    pub fn new(graph: &CoxeterGraph, mask: u64) -> Result<Self> {
        if mask & !graph.all() != 0 || !graph.is_clique(mask) {
            return Err(Error::NotAClique);
        }
        Ok(Clique(mask))
    }

    pub fn from_labels<S: AsRef<str>>(graph: &CoxeterGraph, labels: &[S]) -> Result<Self> {
        Clique::new(graph, graph.mask_of(labels)?)
    }

    /// Wraps a mask already known to be a clique.
    pub(crate) fn from_mask(mask: u64) -> Self {
        Clique(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, s: Gen) -> bool {
        self.0 & bit(s) != 0
    }

    pub fn vertices(self) -> impl Iterator<Item = Gen> {
        mask_iter(self.0)
    }

    pub fn is_subset(self, other: Clique) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Clique) -> bool {
        self.0 & other.0 == 0
    }

    pub fn difference(self, other: Clique) -> Clique {
        Clique(self.0 & !other.0)
    }

    pub fn intersection(self, other: Clique) -> Clique {
        Clique(self.0 & other.0)
    }

    /// All sub-cliques, ordered by mask.
    pub fn subsets(self) -> Vec<Clique> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(Clique(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out
    }

    /// The clique word `V Λ`; its normal form lists the vertices in generator order.
    pub fn word(self) -> Word {
        Word::from_normal_letters(self.vertices().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_power_set() {
        let c = Clique(0b1011);
        let subs = c.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(c)));
        assert_eq!(Clique::EMPTY.subsets(), alloc::vec![Clique::EMPTY]);
    }

    #[test]
    fn rejects_non_cliques() {
        let g = CoxeterGraph::new(&["s", "t"], &[]).unwrap();
        assert_eq!(Clique::from_labels(&g, &["s", "t"]), Err(Error::NotAClique));
        assert!(Clique::from_labels(&g, &["s"]).is_ok());
    }
}
