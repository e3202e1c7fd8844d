use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, CoxeterGraph, Gen};
use crate::word::{enumerate_ball, prefixes, Word};

/// Counts `a_0..=a_k` by breadth-first enumeration of the ball.
pub fn count_by_length_bfs(graph: &CoxeterGraph, k: usize, cap: usize) -> Result<Vec<u128>> {
    let mut counts = alloc::vec![0u128; k + 1];
    for w in enumerate_ball(graph, k, cap)? {
        counts[w.len()] += 1;
    }
    Ok(counts)
}

/// Deterministic automaton accepting exactly the normal forms.
///
/// A state is the set of generators that may not come next: appending `s`
/// would either cancel against an earlier `s` or let `s` slide left past a
/// larger commuting letter.
#[derive(Clone, Debug)]
pub struct SuccessorAutomaton {
    pub states: Vec<u64>,
    /// `transitions[i]` lists `(letter, target)` pairs.
    pub transitions: Vec<Vec<(Gen, usize)>>,
}

impl SuccessorAutomaton {
    pub fn new(graph: &CoxeterGraph) -> Self {
        let mut index: BTreeMap<u64, usize> = BTreeMap::new();
        let mut states = alloc::vec![0u64];
        let mut transitions = Vec::new();
        index.insert(0, 0);
        let mut i = 0;
        while i < states.len() {
            let forbidden = states[i];
            let mut out = Vec::new();
            for c in 0..graph.rank() as Gen {
                if forbidden & bit(c) != 0 {
                    continue;
                }
                let smaller = bit(c) - 1;
                let next = (forbidden & graph.link(c)) | bit(c) | (graph.link(c) & smaller);
                let j = *index.entry(next).or_insert_with(|| {
                    states.push(next);
                    states.len() - 1
                });
                out.push((c, j));
            }
            transitions.push(out);
            i += 1;
        }
        SuccessorAutomaton { states, transitions }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of accepted words of each length `0..=k`.
    pub fn counts(&self, k: usize) -> Vec<u128> {
        let mut dist = alloc::vec![0u128; self.len()];
        dist[0] = 1;
        let mut out = Vec::with_capacity(k + 1);
        for step in 0..=k {
            out.push(dist.iter().sum());
            if step == k {
                break;
            }
            let mut next = alloc::vec![0u128; self.len()];
            for (i, &d) in dist.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for &(_, j) in &self.transitions[i] {
                    next[j] = next[j].checked_add(d).expect("count overflow");
                }
            }
            dist = next;
        }
        out
    }

    /// Strongly connected components (Tarjan), each as a list of states.
    fn components(&self) -> Vec<Vec<usize>> {
        struct Tarjan<'a> {
            aut: &'a SuccessorAutomaton,
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            counter: usize,
            out: Vec<Vec<usize>>,
        }
        impl Tarjan<'_> {
            fn visit(&mut self, v: usize) {
                self.index[v] = Some(self.counter);
                self.low[v] = self.counter;
                self.counter += 1;
                self.stack.push(v);
                self.on_stack[v] = true;
                for &(_, w) in &self.aut.transitions[v] {
                    match self.index[w] {
                        None => {
                            self.visit(w);
                            self.low[v] = self.low[v].min(self.low[w]);
                        }
                        Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                        _ => {}
                    }
                }
                if Some(self.low[v]) == self.index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = self.stack.pop() {
                        self.on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    self.out.push(comp);
                }
            }
        }
        let n = self.len();
        let mut t = Tarjan {
            aut: self,
            index: alloc::vec![None; n],
            low: alloc::vec![0; n],
            on_stack: alloc::vec![false; n],
            stack: Vec::new(),
            counter: 0,
            out: Vec::new(),
        };
        for v in 0..n {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        t.out
    }

    /// Spectral radius of the transfer matrix.
    ///
    /// Every state is reachable and accepting, so this is the exponential
    /// growth rate of the counts. Each strongly connected component is
    /// irreducible, and power iteration on `A + I` is bracketed by the
    /// Collatz–Wielandt bounds `min (Bx)_i/x_i ≤ λ ≤ max (Bx)_i/x_i`.
    pub fn spectral_radius(&self, tol: f64, max_iter: usize) -> Result<f64> {
        let mut best = 0.0f64;
        for comp in self.components() {
            let pos: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let n = comp.len();
            let mut m = alloc::vec![alloc::vec![0f64; n]; n];
            let mut has_edge = false;
            for (i, &s) in comp.iter().enumerate() {
                for &(_, t) in &self.transitions[s] {
                    if let Some(&j) = pos.get(&t) {
                        m[j][i] += 1.0;
                        has_edge = true;
                    }
                }
            }
            if !has_edge {
                continue;
            }
            let mut x = alloc::vec![1.0f64; n];
            let mut converged = false;
            for _ in 0..max_iter {
                let y: Vec<f64> = (0..n).map(|i| x[i] + m[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>()).collect();
                let ratios = y.iter().zip(&x).map(|(a, b)| a / b);
                let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
                let top = y.iter().cloned().fold(0.0, f64::max);
                x = y.iter().map(|v| v / top).collect();
                if hi - lo <= tol {
                    best = best.max((lo + hi) / 2.0 - 1.0);
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NonConvergence(max_iter));
            }
        }
        Ok(best)
    }
}

/// Counts `a_0..=a_k` by the automaton.
pub fn count_by_length_automaton(graph: &CoxeterGraph, k: usize) -> Vec<u128> {
    SuccessorAutomaton::new(graph).counts(k)
}

/// Counts `a_0..=a_k`, computed both ways and cross-checked.
pub fn count_by_length(graph: &CoxeterGraph, k: usize, cap: usize) -> Result<Vec<u128>> {
    let bfs = count_by_length_bfs(graph, k, cap)?;
    let aut = count_by_length_automaton(graph, k);
    if bfs != aut {
        return Err(Error::Inconsistent(alloc::format!(
            "breadth-first counts {bfs:?} disagree with automaton counts {aut:?}"
        )));
    }
    Ok(bfs)
}

/// Radius of convergence of the growth series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Radius {
    Finite(f64),
    /// The group is finite and the series is a polynomial.
    Infinite,
}

impl Radius {
    pub fn value(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::Infinite => None,
        }
    }

    /// `[ρ, ρ⁻¹]`, when `ρ ≤ 1`.
    pub fn interval(self) -> Option<(f64, f64)> {
        match self {
            Radius::Finite(r) if r <= 1.0 => Some((r, 1.0 / r)),
            _ => None,
        }
    }
}

const MAX_POWER_ITER: usize = 1_000_000;

/// `ρ = 1/λ_max` of the transfer matrix, infinite for finite groups.
pub fn growth_rate(graph: &CoxeterGraph, tol: f64) -> Result<Radius> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let lambda = SuccessorAutomaton::new(graph).spectral_radius(tol, MAX_POWER_ITER)?;
    Ok(if lambda == 0.0 { Radius::Infinite } else { Radius::Finite(1.0 / lambda) })
}

/// Limit of `a_{k+1}/a_k` estimated from the first `k` normalized counts.
pub fn ratio_estimate(graph: &CoxeterGraph, k: usize) -> Option<f64> {
    let aut = SuccessorAutomaton::new(graph);
    let mut dist = alloc::vec![0f64; aut.len()];
    dist[0] = 1.0;
    let mut ratio = None;
    for _ in 0..k {
        let mut next = alloc::vec![0f64; aut.len()];
        for (i, &d) in dist.iter().enumerate() {
            for &(_, j) in &aut.transitions[i] {
                next[j] += d;
            }
        }
        let before: f64 = dist.iter().sum();
        let after: f64 = next.iter().sum();
        if after == 0.0 {
            return None;
        }
        ratio = Some(after / before);
        dist = next.iter().map(|v| v / after).collect();
    }
    ratio
}

/// Factoriality of the Hecke von Neumann algebra at `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Classification {
    /// `q` lies strictly inside `[ρ, ρ⁻¹]`.
    Factor { rho: f64 },
    /// `q` is within tolerance of an endpoint of the closed interval.
    FactorBoundary { rho: f64 },
    /// Direct sum of a factor and `ℂ`.
    FactorPlusC { rho: f64 },
    /// The graph is not reduced or has fewer than three vertices.
    NotApplicable,
}

/// Short decimal rendering, e.g. `0.5` and `2` rather than `0.500000` and `2.000000`.
pub fn fmt_decimal(x: f64) -> String {
    let s = alloc::format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let iv = |rho: f64| alloc::format!("[{}, {}]", fmt_decimal(rho), fmt_decimal(1.0 / rho));
        match *self {
            Classification::Factor { rho } => write!(f, "Factor (q ∈ {})", iv(rho)),
            Classification::FactorBoundary { rho } => write!(f, "Factor, boundary (q at an endpoint of {})", iv(rho)),
            Classification::FactorPlusC { rho } => write!(f, "FactorPlusC (q ∉ {})", iv(rho)),
            Classification::NotApplicable => {
                f.write_str("NotApplicable (graph not reduced or fewer than 3 generators)")
            }
        }
    }
}

pub fn factor_classification(graph: &CoxeterGraph, q: f64, tol: f64) -> Result<Classification> {
    if q.is_nan() || q <= 0.0 {
        return Err(Error::Precondition("q must be positive".into()));
    }
    if !graph.is_reduced_system() || graph.rank() < 3 {
        return Ok(Classification::NotApplicable);
    }
    let rho = match growth_rate(graph, tol)? {
        Radius::Finite(r) => r,
        Radius::Infinite => return Ok(Classification::NotApplicable),
    };
    let (lo, hi) = (rho, 1.0 / rho);
    Ok(if (q - lo).abs() <= tol || (q - hi).abs() <= tol {
        Classification::FactorBoundary { rho }
    } else if lo < q && q < hi {
        Classification::Factor { rho }
    } else {
        Classification::FactorPlusC { rho }
    })
}

/// Which procedure produced a count sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Bfs,
    TransferMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub counts: Vec<u128>,
    pub rho: Radius,
    pub interval: Option<(f64, f64)>,
    pub method: CountMethod,
    /// `a_{k+1}/a_k` at the largest computed `k`, for comparison with `1/ρ`.
    pub ratio_estimate: Option<f64>,
}

/// Counts up to `k` (cross-checked against breadth-first search up to `bfs_k`) and `ρ`.
pub fn growth_report(graph: &CoxeterGraph, k: usize, bfs_k: usize, tol: f64, cap: usize) -> Result<GrowthReport> {
    let counts = count_by_length_automaton(graph, k);
    let bfs_k = bfs_k.min(k);
    let bfs = count_by_length_bfs(graph, bfs_k, cap)?;
    if bfs[..] != counts[..=bfs_k] {
        return Err(Error::Inconsistent("breadth-first and automaton counts disagree".into()));
    }
    let rho = growth_rate(graph, tol)?;
    Ok(GrowthReport {
        counts,
        rho,
        interval: rho.interval(),
        method: CountMethod::TransferMatrix,
        ratio_estimate: ratio_estimate(graph, 2000),
    })
}

/// `κ_x(a) = #{w ≤ x : |w| = a}`.
pub fn kappa_count(graph: &CoxeterGraph, x: &Word, a: usize) -> Result<usize> {
    if a > x.len() {
        return Err(Error::Precondition("kappa needs a ≤ |x|".into()));
    }
    Ok(prefixes(graph, x).iter().filter(|w| w.len() == a).count())
}

#[derive(Clone, Debug, PartialEq)]
pub struct KappaReport {
    /// `|VΓ| - 2`.
    pub exponent: i32,
    /// Smallest `C` with `κ_x(a) ≤ C·a^exponent` on the scanned ball.
    pub constant: f64,
    pub witness: Word,
    pub witness_length: usize,
    pub max_kappa: usize,
    pub cases: usize,
}

pub fn kappa_bound_check(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<KappaReport> {
    let exponent = graph.rank() as i32 - 2;
    let mut report =
        KappaReport { exponent, constant: 0.0, witness: Word::identity(), witness_length: 0, max_kappa: 0, cases: 0 };
    for x in enumerate_ball(graph, n, cap)? {
        let mut by_len = alloc::vec![0usize; x.len() + 1];
        for w in prefixes(graph, &x) {
            by_len[w.len()] += 1;
        }
        for (a, &k) in by_len.iter().enumerate().skip(1) {
            report.cases += 1;
            report.max_kappa = report.max_kappa.max(k);
            let c = k as f64 / libm::pow(a as f64, exponent as f64);
            if c > report.constant {
                report.constant = c;
                report.witness = x.clone();
                report.witness_length = a;
            }
        }
    }
    if !report.constant.is_finite() {
        return Err(Error::Inconsistent("kappa constant is not finite".into()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::{parse_word, DEFAULT_BALL_CAP};

    #[test]
    fn count_examples() {
        let c = count_by_length(&catalog::free(3), 8, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(c, alloc::vec![1, 3, 6, 12, 24, 48, 96, 192, 384]);
        let c = count_by_length(&catalog::path_complement(), 3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(c, alloc::vec![1, 3, 5, 8]);
        let c = count_by_length(&catalog::complete(2), 5, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(c, alloc::vec![1, 2, 1, 0, 0, 0]);
    }

    #[test]
    fn rate_examples() {
        let r = growth_rate(&catalog::free(3), 1e-9).unwrap().value().unwrap();
        assert!((r - 0.5).abs() < 1e-9);
        assert_eq!(growth_rate(&catalog::complete(2), 1e-9).unwrap(), Radius::Infinite);
        let r = growth_rate(&catalog::free(2), 1e-9).unwrap().value().unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!(growth_rate(&catalog::free(2), 0.0).is_err());
    }

    #[test]
    fn classification_examples() {
        let g = catalog::free(3);
        let c = factor_classification(&g, 1.0, 1e-9).unwrap();
        assert!(matches!(c, Classification::Factor { .. }));
        assert_eq!(alloc::format!("{c}"), "Factor (q ∈ [0.5, 2])");
        assert!(matches!(factor_classification(&g, 3.0, 1e-9).unwrap(), Classification::FactorPlusC { .. }));
        assert!(matches!(factor_classification(&g, 2.0, 1e-6).unwrap(), Classification::FactorBoundary { .. }));
        assert_eq!(factor_classification(&catalog::complete(3), 1.0, 1e-9).unwrap(), Classification::NotApplicable);
    }

    #[test]
    fn kappa_examples() {
        let free = CoxeterGraph::new(&["s", "t"], &[]).unwrap();
        let x = parse_word(&free, "s t s").unwrap();
        assert_eq!(kappa_count(&free, &x, 0).unwrap(), 1);
        assert_eq!(kappa_count(&free, &x, 1).unwrap(), 1);
        let rs = catalog::edge_rs();
        assert_eq!(kappa_count(&rs, &parse_word(&rs, "r s").unwrap(), 1).unwrap(), 2);
        assert!(kappa_count(&rs, &x, 4).is_err());
        let rep = kappa_bound_check(&catalog::free(3), 4, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(rep.constant, 1.0);
    }
}
