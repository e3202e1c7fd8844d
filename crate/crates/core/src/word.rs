use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::clique::Clique;
use crate::error::{Error, Result};
use crate::graph::{bit, CoxeterGraph, Gen};

/// Default cap on the number of words produced by ball enumeration.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// A group element stored as its ShortLex-least reduced expression.
///
/// Ordering is ShortLex: by length, then lexicographically by generator index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Wraps letters that are already in normal form.
    pub(crate) fn from_normal_letters(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Set of generators occurring in the word.
    pub fn support(&self) -> u64 {
        self.0.iter().fold(0, |m, &s| m | bit(s))
    }

    pub fn display<'a>(&'a self, graph: &'a CoxeterGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Space-separated generator labels, `e` for the identity.
pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a CoxeterGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("e");
        }
        for (i, &s) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.label(s))?;
        }
        Ok(())
    }
}

/// Appends `s` to a reduced expression, cancelling it against the last
/// occurrence of `s` when everything after that occurrence commutes with `s`.
pub(crate) fn push_letter(graph: &CoxeterGraph, buf: &mut Vec<Gen>, s: Gen) {
    for j in (0..buf.len()).rev() {
        if buf[j] == s {
            buf.remove(j);
            return;
        }
        if !graph.commute(buf[j], s) {
            break;
        }
    }
    buf.push(s);
}

/// Rewrites a reduced expression into its lexicographically least
/// rearrangement under commuting transpositions.
pub(crate) fn normalize(graph: &CoxeterGraph, mut rest: Vec<Gen>) -> Word {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut seen = 0u64;
        let mut best: Option<usize> = None;
        for (j, &s) in rest.iter().enumerate() {
            if seen & !graph.link(s) == 0 && best.is_none_or(|b| s < rest[b]) {
                best = Some(j);
            }
            seen |= bit(s);
        }
        let j = best.expect("a reduced expression always has an available first letter");
        out.push(rest.remove(j));
    }
    Word(out)
}

/// Normal form of the product of an arbitrary letter sequence.
pub fn reduce(graph: &CoxeterGraph, letters: &[Gen]) -> Result<Word> {
    graph.check_letters(letters)?;
    Ok(reduce_unchecked(graph, letters))
}

pub(crate) fn reduce_unchecked(graph: &CoxeterGraph, letters: &[Gen]) -> Word {
    let mut buf = Vec::with_capacity(letters.len());
    for &s in letters {
        push_letter(graph, &mut buf, s);
    }
    normalize(graph, buf)
}

/// Normal form of the product of a sequence of generator labels.
pub fn reduce_labels<S: AsRef<str>>(graph: &CoxeterGraph, labels: &[S]) -> Result<Word> {
    let letters = labels.iter().map(|l| graph.index_of(l.as_ref())).collect::<Result<Vec<_>>>()?;
    Ok(reduce_unchecked(graph, &letters))
}

/// Parses `t r s`, `[t r s]`, `e` or `[e]`.
pub fn parse_word(graph: &CoxeterGraph, text: &str) -> Result<Word> {
    let t = text.trim();
    let t = match (t.strip_prefix('['), t.strip_suffix(']')) {
        (Some(_), Some(_)) => &t[1..t.len() - 1],
        (None, None) => t,
        _ => return Err(Error::Parse(alloc::format!("unbalanced brackets in `{text}`"))),
    };
    let labels: Vec<&str> = t.split_whitespace().filter(|&l| l != "e").collect();
    reduce_labels(graph, &labels)
}

pub fn format_word(graph: &CoxeterGraph, w: &Word) -> String {
    alloc::format!("{}", w.display(graph))
}

/// Group product `w1 w2`.
pub fn multiply(graph: &CoxeterGraph, w1: &Word, w2: &Word) -> Result<Word> {
    graph.check_letters(&w1.0)?;
    graph.check_letters(&w2.0)?;
    Ok(mul(graph, w1, w2))
}

pub(crate) fn mul(graph: &CoxeterGraph, w1: &Word, w2: &Word) -> Word {
    if w2.is_identity() {
        return w1.clone();
    }
    if w1.is_identity() {
        return w2.clone();
    }
    let mut buf = w1.0.clone();
    for &s in &w2.0 {
        push_letter(graph, &mut buf, s);
    }
    normalize(graph, buf)
}

/// `s w` for a generator `s`.
pub(crate) fn left_mul_gen(graph: &CoxeterGraph, s: Gen, w: &Word) -> Word {
    match first_occurrence(graph, &w.0, s) {
        Some(j) => {
            let mut letters = w.0.clone();
            letters.remove(j);
            normalize(graph, letters)
        }
        None => {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.push(s);
            letters.extend_from_slice(&w.0);
            normalize(graph, letters)
        }
    }
}

pub fn inverse(graph: &CoxeterGraph, w: &Word) -> Word {
    let mut letters = w.0.clone();
    letters.reverse();
    normalize(graph, letters)
}

/// Position of an occurrence of `s` that can be commuted to the front.
fn first_occurrence(graph: &CoxeterGraph, letters: &[Gen], s: Gen) -> Option<usize> {
    for (j, &t) in letters.iter().enumerate() {
        if t == s {
            return Some(j);
        }
        if !graph.commute(t, s) {
            return None;
        }
    }
    None
}

/// Generators `s` with `|s w| < |w|`.
pub fn left_descents(graph: &CoxeterGraph, w: &Word) -> u64 {
    let mut seen = 0u64;
    let mut out = 0u64;
    for &s in &w.0 {
        if seen & bit(s) == 0 && seen & !graph.link(s) == 0 {
            out |= bit(s);
        }
        seen |= bit(s);
    }
    out
}

/// Generators `s` with `|w s| < |w|`.
pub fn right_descents(graph: &CoxeterGraph, w: &Word) -> u64 {
    let mut seen = 0u64;
    let mut out = 0u64;
    for &s in w.0.iter().rev() {
        if seen & bit(s) == 0 && seen & !graph.link(s) == 0 {
            out |= bit(s);
        }
        seen |= bit(s);
    }
    out
}

/// Prefix order: `w ≤ x` iff `|w⁻¹x| = |x| - |w|`.
///
/// Peels the letters of `w` off the front of `x` one at a time.
pub fn is_prefix(graph: &CoxeterGraph, w: &Word, x: &Word) -> bool {
    if w.len() > x.len() {
        return false;
    }
    let mut rest = x.0.clone();
    for &s in &w.0 {
        match first_occurrence(graph, &rest, s) {
            Some(j) => {
                rest.remove(j);
            }
            None => return false,
        }
    }
    true
}

/// `w⁻¹ x` when `w ≤ x`.
pub(crate) fn strip_prefix(graph: &CoxeterGraph, w: &Word, x: &Word) -> Option<Word> {
    if w.len() > x.len() {
        return None;
    }
    let mut rest = x.0.clone();
    for &s in &w.0 {
        let j = first_occurrence(graph, &rest, s)?;
        rest.remove(j);
    }
    Some(normalize(graph, rest))
}

/// `(v(1,Λ), v(2,Λ))`: the maximal clique suffix of `v` minus `Λ`, and the rest.
pub fn clique_split(graph: &CoxeterGraph, v: &Word, lambda: Clique) -> Result<(Word, Clique)> {
    if !graph.is_clique(lambda.mask()) || lambda.mask() & !graph.all() != 0 {
        return Err(Error::NotAClique);
    }
    Ok(clique_split_unchecked(graph, v, lambda))
}

pub(crate) fn clique_split_unchecked(graph: &CoxeterGraph, v: &Word, lambda: Clique) -> (Word, Clique) {
    let tail = Clique::from_mask(right_descents(graph, v) & !lambda.mask());
    (mul(graph, v, &tail.word()), tail)
}

/// `v(2,∅)`, the maximal clique `Γ₀` with `|v·VΓ₀| = |v| - |VΓ₀|`.
pub fn max_clique_suffix(graph: &CoxeterGraph, v: &Word) -> Clique {
    Clique::from_mask(right_descents(graph, v))
}

/// `Λ_{g,x}`, the maximal clique prefix of `g⁻¹x`.
pub fn lambda(graph: &CoxeterGraph, g: &Word, x: &Word) -> Result<Clique> {
    let rest = strip_prefix(graph, g, x).ok_or_else(|| Error::Precondition("interval needs g ≤ x".into()))?;
    Ok(Clique::from_mask(left_descents(graph, &rest)))
}

/// `C(g,x) = {w : g ≤ w ≤ g·Λ_{g,x}}`, sorted.
pub fn interval_set(graph: &CoxeterGraph, g: &Word, x: &Word) -> Result<Vec<Word>> {
    let lam = lambda(graph, g, x)?;
    Ok(interval_from(graph, g, lam))
}

pub(crate) fn interval_from(graph: &CoxeterGraph, g: &Word, lam: Clique) -> Vec<Word> {
    let mut out: Vec<Word> = lam.subsets().into_iter().map(|c| mul(graph, g, &c.word())).collect();
    out.sort();
    out
}

/// All `w ≤ x`, sorted.
pub fn prefixes(graph: &CoxeterGraph, x: &Word) -> Vec<Word> {
    let mut all = BTreeSet::new();
    let mut frontier: Vec<(Word, Word)> = alloc::vec![(Word::identity(), x.clone())];
    all.insert(Word::identity());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, rest) in &frontier {
            for s in crate::graph::mask_iter(left_descents(graph, rest)) {
                let ws = mul(graph, w, &Word(alloc::vec![s]));
                if all.insert(ws.clone()) {
                    next.push((ws, left_mul_gen(graph, s, rest)));
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// Every group element of length at most `n`, sorted ShortLex.
pub fn enumerate_ball(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Vec<Word>> {
    let mut out = alloc::vec![Word::identity()];
    let mut level = alloc::vec![Word::identity()];
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for w in &level {
            let blocked = left_descents(graph, w);
            for s in 0..graph.rank() as Gen {
                if blocked & bit(s) == 0 {
                    next.insert(left_mul_gen(graph, s, w));
                }
            }
            if out.len() + next.len() > cap {
                return Err(Error::ResourceLimit { cap });
            }
        }
        if next.is_empty() {
            break;
        }
        level = next.into_iter().collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Elements of length exactly `n`.
pub fn enumerate_sphere(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Vec<Word>> {
    Ok(enumerate_ball(graph, n, cap)?.into_iter().filter(|w| w.len() == n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(gens: &[&str], edges: &[(&str, &str)]) -> CoxeterGraph {
        CoxeterGraph::new(gens, edges).unwrap()
    }

    fn w(graph: &CoxeterGraph, s: &str) -> Word {
        parse_word(graph, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let free = g(&["s", "t"], &[]);
        assert!(reduce_labels(&free, &["s", "s"]).unwrap().is_identity());
        let rt = g(&["r", "s", "t"], &[("r", "t")]);
        assert_eq!(reduce_labels(&rt, &["r", "t", "r"]).unwrap(), w(&rt, "t"));
        let rs = g(&["r", "s", "t"], &[("r", "s")]);
        assert_eq!(reduce_labels(&rs, &["s", "r"]).unwrap().letters(), &[0, 1]);
        assert!(matches!(reduce_labels(&rs, &["x"]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn multiply_examples() {
        let rt = g(&["r", "s", "t"], &[("r", "t")]);
        let e = Word::identity();
        let x = w(&rt, "s r t s");
        assert_eq!(multiply(&rt, &e, &x).unwrap(), x);
        assert!(multiply(&rt, &w(&rt, "r t"), &w(&rt, "t r")).unwrap().is_identity());
        let free = g(&["s", "t"], &[]);
        assert!(multiply(&free, &w(&free, "s t"), &w(&free, "t s")).unwrap().is_identity());
        let foreign = Word(vec![5]);
        assert_eq!(multiply(&free, &foreign, &e), Err(Error::GraphMismatch(5)));
    }

    #[test]
    fn prefix_examples() {
        let rt = g(&["r", "s", "t"], &[("r", "t")]);
        assert!(is_prefix(&rt, &Word::identity(), &w(&rt, "s r")));
        assert!(is_prefix(&rt, &w(&rt, "r"), &w(&rt, "t r")));
        let free = g(&["r", "s"], &[]);
        assert!(!is_prefix(&free, &w(&free, "s"), &w(&free, "r s")));
    }

    #[test]
    fn clique_split_example() {
        let graph = g(&["r", "s", "t"], &[("r", "s")]);
        let v = w(&graph, "t r s");
        let (v1, v2) = clique_split(&graph, &v, Clique::EMPTY).unwrap();
        assert_eq!(v1, w(&graph, "t"));
        assert_eq!(v2, Clique::from_labels(&graph, &["r", "s"]).unwrap());
        let r = Clique::from_labels(&graph, &["r"]).unwrap();
        let (v1, v2) = clique_split(&graph, &v, r).unwrap();
        assert_eq!(v1, w(&graph, "t r"));
        assert_eq!(v2, Clique::from_labels(&graph, &["s"]).unwrap());
        let (v1, v2) = clique_split(&graph, &Word::identity(), r).unwrap();
        assert!(v1.is_identity() && v2.is_empty());
        let free = g(&["s", "t"], &[]);
        assert_eq!(clique_split(&free, &v1, Clique::from_mask(0b11)), Err(Error::NotAClique));
    }

    #[test]
    fn interval_examples() {
        let graph = g(&["r", "s", "t"], &[("r", "s")]);
        let got = interval_set(&graph, &w(&graph, "t"), &w(&graph, "t r s t")).unwrap();
        let want: Vec<Word> = ["t", "t r", "t s", "t r s"].iter().map(|s| w(&graph, s)).collect();
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
        let x = w(&graph, "t r s t");
        assert_eq!(interval_set(&graph, &x, &x).unwrap(), vec![x.clone()]);
        let free = g(&["s", "t"], &[]);
        let got = interval_set(&free, &Word::identity(), &w(&free, "s t")).unwrap();
        assert_eq!(got, vec![Word::identity(), w(&free, "s")]);
        assert!(interval_set(&free, &w(&free, "t"), &w(&free, "s t")).is_err());
    }

    #[test]
    fn ball_examples() {
        let free = g(&["a", "b", "c"], &[]);
        assert_eq!(enumerate_ball(&free, 0, DEFAULT_BALL_CAP).unwrap(), vec![Word::identity()]);
        assert_eq!(enumerate_ball(&free, 2, DEFAULT_BALL_CAP).unwrap().len(), 10);
        let rt = g(&["r", "s", "t"], &[("r", "t")]);
        assert_eq!(enumerate_ball(&rt, 2, DEFAULT_BALL_CAP).unwrap().len(), 9);
        assert_eq!(enumerate_ball(&free, 6, 50), Err(Error::ResourceLimit { cap: 50 }));
        let ball = enumerate_ball(&rt, 4, DEFAULT_BALL_CAP).unwrap();
        assert!(ball.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn parse_and_format() {
        let rt = g(&["r", "s", "t"], &[("r", "t")]);
        assert!(parse_word(&rt, "[e]").unwrap().is_identity());
        assert!(parse_word(&rt, "e").unwrap().is_identity());
        assert_eq!(format_word(&rt, &parse_word(&rt, "[t r s]").unwrap()), "r t s");
        assert_eq!(format_word(&rt, &Word::identity()), "e");
        assert!(parse_word(&rt, "[t r").is_err());
    }
}
