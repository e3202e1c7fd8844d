use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::check::Tally;
use crate::clique::Clique;
use crate::error::{Error, Result};
use crate::expansion::OperatorTerm;
use crate::graph::CoxeterGraph;
use crate::hecke::{basis_times, hmul, HeckeElement};
use crate::word::{self, enumerate_ball, interval_from, is_prefix, left_descents, mul, prefixes, right_descents, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

#[cfg(test)]
impl Sign {
    fn of_subset(self, size: usize) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus if size.is_multiple_of(2) => 1,
            Sign::Minus => -1,
        }
    }
}

/// `ξ̃_Λ^± = Σ_{ω ⊆ Λ} (±1)^{|ω|} δ_ω` in `ℓ²` of finite subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSetVector {
    pub support: Clique,
    pub sign: Sign,
}

impl SignedSetVector {
    pub fn new(support: Clique, sign: Sign) -> Self {
        SignedSetVector { support, sign }
    }

    /// `Σ_{ω ⊆ A∩B} σ(ω)τ(ω)`: `2^{|A∩B|}` for equal signs, `[A∩B = ∅]` otherwise.
    pub fn pairing(&self, other: &SignedSetVector) -> i64 {
        let common = self.support.intersection(other.support).len();
        if self.sign == other.sign {
            1 << common
        } else {
            (common == 0) as i64
        }
    }

    pub fn norm_sq(&self) -> i64 {
        self.pairing(self)
    }
}

/// `F_{Λ,a}(v) = [2|v(1,Λ)| + |v(2,Λ)| ≤ a]`.
pub fn f_indicator(graph: &CoxeterGraph, v: &Word, lambda: Clique, a: i64) -> bool {
    let tail = (right_descents(graph, v) & !lambda.mask()).count_ones() as i64;
    2 * v.len() as i64 - tail <= a
}

fn beta_from_interval(graph: &CoxeterGraph, g: &Word, interval: &[Word], lambda: Clique, a: i64) -> i64 {
    interval
        .iter()
        .map(|v| {
            let sign = if (v.len() - g.len()).is_multiple_of(2) { 1 } else { -1 };
            if f_indicator(graph, v, lambda, a) {
                sign
            } else {
                0
            }
        })
        .sum()
}

/// `β^±_{g,x,Λ,a}`; `β^-` is the indicator of `β^+ ≠ 0`.
pub fn beta_coefficient(graph: &CoxeterGraph, sign: Sign, g: &Word, x: &Word, lambda: Clique, a: i64) -> Result<i64> {
    if lambda.mask() & !right_descents(graph, g) != 0 {
        return Err(Error::Precondition("β needs Λ ⊆ g(2,∅)".into()));
    }
    let interval = word::interval_set(graph, g, x)?;
    let plus = beta_from_interval(graph, g, &interval, lambda, a);
    Ok(match sign {
        Sign::Plus => plus,
        Sign::Minus => (plus != 0) as i64,
    })
}

/// One summand `coeff · δ_g ⊗ δ_h ⊗ δ_d ⊗ ξ̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationTerm {
    pub g: Word,
    pub h: Word,
    pub d: Word,
    pub xi: SignedSetVector,
    pub coeff: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DilationVector {
    pub terms: Vec<DilationTerm>,
}

impl DilationVector {
    /// Inner product, factored over the four legs.
    pub fn pairing(&self, other: &DilationVector) -> i64 {
        let mut acc = 0;
        for a in &self.terms {
            for b in &other.terms {
                if a.g == b.g && a.h == b.h && a.d == b.d {
                    acc += a.coeff * b.coeff * a.xi.pairing(&b.xi);
                }
            }
        }
        acc
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.pairing(self) as f64)
    }
}

/// `U_a^± δ_x = Σ_{g ≤ x} Σ_{Λ ⊆ g(2,∅)} β^±_{g,x,Λ,a} δ_g ⊗ δ_{g⁻¹x} ⊗ δ_{g(2,Λ)} ⊗ ξ̃_Λ^±`.
pub fn dilation_apply(graph: &CoxeterGraph, sign: Sign, a: i64, x: &Word) -> DilationVector {
    let mut terms = Vec::new();
    for g in prefixes(graph, x) {
        let rest = word::strip_prefix(graph, &g, x).expect("g is a prefix of x");
        let interval = interval_from(graph, &g, Clique::from_mask(left_descents(graph, &rest)));
        let tail = Clique::from_mask(right_descents(graph, &g));
        for lambda in tail.subsets() {
            let plus = beta_from_interval(graph, &g, &interval, lambda, a);
            let coeff = match sign {
                Sign::Plus => plus,
                Sign::Minus => (plus != 0) as i64,
            };
            if coeff != 0 {
                terms.push(DilationTerm {
                    g: g.clone(),
                    h: rest.clone(),
                    d: tail.difference(lambda).word(),
                    xi: SignedSetVector::new(lambda, sign),
                    coeff,
                });
            }
        }
    }
    DilationVector { terms }
}

/// Upper bound for `‖U_a^± δ_x‖` over all `x` whose prefix counts obey
/// `κ_x(k) ≤ c·k^{exponent}`, with `m` the largest clique size.
///
/// `β` vanishes unless `g = x` or `(a - 2m)/2 < |g| ≤ (a + m)/2`.
pub fn dilation_norm_bound(c: f64, exponent: i32, m: usize, a: i64) -> f64 {
    let m = m as i64;
    let four_m = libm::pow(4.0, m as f64);
    let mut total = four_m;
    for k in 0..=((a + m) / 2).max(0) {
        if 2 * k > a - 2 * m {
            let kappa = if k == 0 { 1.0 } else { (c * libm::pow(k as f64, exponent as f64)).max(1.0) };
            total += kappa * four_m * four_m;
        }
    }
    libm::sqrt(total)
}

/// `Q_w = Σ_{v ∈ C(w,+)} (-1)^{|w⁻¹v|} P_v`, the projection onto `δ_w`, checked on `B_N`.
pub fn delta_identity_check(graph: &CoxeterGraph, w: &Word, n: usize, cap: usize) -> Result<bool> {
    if w.len() > n {
        return Err(Error::Precondition("needs |w| ≤ N".into()));
    }
    let free_tail = graph.all() & !right_descents(graph, w);
    let plus: Vec<(Word, i64)> = graph
        .cliques_within(free_tail)
        .into_iter()
        .map(|c| (mul(graph, w, &c.word()), if c.len() % 2 == 0 { 1 } else { -1 }))
        .collect();
    for x in enumerate_ball(graph, n, cap)? {
        let rhs: i64 = plus.iter().filter(|(v, _)| is_prefix(graph, v, &x)).map(|(_, s)| s).sum();
        if rhs != (x == *w) as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `β^+_{g,x,Λ,a}` is unchanged when `(g, x, Λ, a)` is moved to
/// `(u′u″g, u′u″x, Λ′, reindexed_parameter(a, u′, u″))`.
pub fn reindexed_parameter(a: i64, u_prime: &Word, u_doubleprime: &Word) -> i64 {
    a + 2 * u_prime.len() as i64 - 2 * u_doubleprime.len() as i64
}

/// Whether `(x, u′, u″, v)` satisfy the length conditions of the telescoping sum.
pub fn aux_preconditions(graph: &CoxeterGraph, x: &Word, u_prime: &Word, u_doubleprime: &Word, v: &Word) -> bool {
    let ux = mul(graph, u_doubleprime, x);
    let uux = mul(graph, u_prime, &ux);
    ux.len() + u_doubleprime.len() == x.len()
        && uux.len() + u_doubleprime.len() == x.len() + u_prime.len()
        && is_prefix(graph, &word::inverse(graph, u_doubleprime), v)
        && is_prefix(graph, v, x)
}

/// Left side of the telescoping identity,
/// `Σ_{v ≤ g ≤ x} β^+_{g,x,Λ(g),a} β^-_{u′u″g, u′u″x, Λ′(g), a′}`.
pub fn aux_sum(
    graph: &CoxeterGraph,
    x: &Word,
    u_prime: &Word,
    u_doubleprime: &Word,
    v: &Word,
    a: i64,
    a_shifted: i64,
) -> Result<i64> {
    let shift = mul(graph, u_prime, u_doubleprime);
    let sx = mul(graph, &shift, x);
    let mut acc = 0;
    for g in prefixes(graph, x) {
        if !is_prefix(graph, v, &g) {
            continue;
        }
        let sg = mul(graph, &shift, &g);
        let dg = right_descents(graph, &g);
        let dsg = right_descents(graph, &sg);
        let lam = Clique::from_mask(dg & !dsg);
        let lam2 = Clique::from_mask(dsg & !dg);
        let bp = beta_coefficient(graph, Sign::Plus, &g, x, lam, a)?;
        if bp == 0 {
            continue;
        }
        acc += bp * beta_coefficient(graph, Sign::Minus, &sg, &sx, lam2, a_shifted)?;
    }
    Ok(acc)
}

/// Telescoping identity: the sum equals `F_{Λ(v),a}(v)`.
pub fn aux_sum_check(
    graph: &CoxeterGraph,
    x: &Word,
    u_prime: &Word,
    u_doubleprime: &Word,
    v: &Word,
    a: i64,
) -> Result<bool> {
    if !aux_preconditions(graph, x, u_prime, u_doubleprime, v) {
        return Err(Error::Precondition("length conditions of the telescoping sum fail".into()));
    }
    let lhs = aux_sum(graph, x, u_prime, u_doubleprime, v, a, reindexed_parameter(a, u_prime, u_doubleprime))?;
    let sv = mul(graph, &mul(graph, u_prime, u_doubleprime), v);
    let lam = Clique::from_mask(right_descents(graph, v) & !right_descents(graph, &sv));
    Ok(lhs == f_indicator(graph, v, lam, a) as i64)
}

/// Term-level selection of `|u″| - |u′| = i`.
///
/// Exact for terms whose length change does not depend on the input; the
/// general selection acts on matrix entries, see [`phi_entries`].
pub fn phi_component(i: i64, terms: &[OperatorTerm]) -> Vec<OperatorTerm> {
    terms.iter().filter(|t| t.annihilator.len() as i64 - t.creator.len() as i64 == i).cloned().collect()
}

/// `ρ_k`: keeps terms with `|u′| + |u″| = k`.
pub fn rho_component(k: usize, terms: &[OperatorTerm]) -> Vec<OperatorTerm> {
    terms.iter().filter(|t| t.creator.len() + t.annihilator.len() == k).cloned().collect()
}

/// `Φ_i` on the column `Op δ_x`: keeps the entries `δ_y` with `|x| - |y| = i`.
pub fn phi_entries(i: i64, x: &Word, image: &HeckeElement) -> HeckeElement {
    image.filter(|y| x.len() as i64 - y.len() as i64 == i)
}

/// Which dilation parameters pair with `Φ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutdownConvention {
    /// `σ_{n-i, n+i}`: `U^+_{n+i}` on the input side, `U^-_{n-i}` on the output side.
    Standard,
    /// The parameters exchanged, `U^+_{n-i}` and `U^-_{n+i}`.
    Swapped,
}

struct BetaCache<'g> {
    graph: &'g CoxeterGraph,
    plus: BTreeMap<(Word, Word, u64, i64), i64>,
}

impl<'g> BetaCache<'g> {
    fn plus(&mut self, g: &Word, x: &Word, lambda: Clique, a: i64) -> i64 {
        let key = (g.clone(), x.clone(), lambda.mask(), a);
        if let Some(&b) = self.plus.get(&key) {
            return b;
        }
        let graph = self.graph;
        let rest = word::strip_prefix(graph, g, x).expect("prefix");
        let interval = interval_from(graph, g, Clique::from_mask(left_descents(graph, &rest)));
        let b = beta_from_interval(graph, g, &interval, lambda, a);
        self.plus.insert(key, b);
        b
    }
}

/// `Σ_{i=-n}^{n} σ_{a(i), b(i)}(Φ_i(T_w)) δ_x` with `σ_{a,b}(X) = (U_a^-)^* (X ⊗ 1 ⊗ 1 ⊗ 1) U_b^+`.
fn cutdown_lhs(
    graph: &CoxeterGraph,
    cache: &mut BetaCache<'_>,
    products: &BTreeMap<Word, HeckeElement>,
    n: i64,
    x: &Word,
    convention: CutdownConvention,
) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for g in prefixes(graph, x) {
        let k = word::strip_prefix(graph, &g, x).expect("prefix");
        let tail_g = right_descents(graph, &g);
        let image = &products[&g];
        for i in -n..=n {
            let (a_in, a_out) = match convention {
                CutdownConvention::Standard => (n + i, n - i),
                CutdownConvention::Swapped => (n - i, n + i),
            };
            if a_in < 0 || a_out < 0 {
                continue;
            }
            for lambda in Clique::from_mask(tail_g).subsets() {
                let bp = cache.plus(&g, x, lambda, a_in);
                if bp == 0 {
                    continue;
                }
                let d = tail_g & !lambda.mask();
                for (h, c) in phi_entries(i, &g, image).terms() {
                    let tail_h = right_descents(graph, h);
                    if d & !tail_h != 0 {
                        continue;
                    }
                    let lambda2 = Clique::from_mask(tail_h & !d);
                    if !lambda.is_disjoint(lambda2) {
                        continue;
                    }
                    let y = mul(graph, h, &k);
                    if y.len() != h.len() + k.len() {
                        continue;
                    }
                    if cache.plus(h, &y, lambda2, a_out) == 0 {
                        continue;
                    }
                    out.add_term(y, &c.scale(crate::poly::Rational::integer(bp as i128)));
                }
            }
        }
    }
    out
}

/// Checks `Ψ_{≤n}(T_w) = Σ_{i=-n}^{n} σ_{n-i,n+i}(Φ_i(T_w))` on `δ_x` for
/// every `w ∈ B_{2n+2}` and `x ∈ B_N`, exactly.
pub fn cutdown_identity_check(
    graph: &CoxeterGraph,
    n: usize,
    big_n: usize,
    convention: CutdownConvention,
    cap: usize,
) -> Result<Tally> {
    let xs = enumerate_ball(graph, big_n, cap)?;
    let ws = enumerate_ball(graph, 2 * n + 2, cap)?;
    let mut cache = BetaCache { graph, plus: BTreeMap::new() };
    let mut tally = Tally::new();
    for w in &ws {
        let tw = HeckeElement::basis(w.clone());
        let products: BTreeMap<Word, HeckeElement> =
            xs.iter().map(|g| (g.clone(), basis_times(graph, w, &HeckeElement::basis(g.clone())))).collect();
        for x in &xs {
            let lhs = cutdown_lhs(graph, &mut cache, &products, n as i64, x, convention);
            let rhs =
                if w.len() <= n { hmul(graph, &tw, &HeckeElement::basis(x.clone())) } else { HeckeElement::zero() };
            tally.record(lhs == rhs, || {
                format!(
                    "n={n}, w=[{}], x=[{}]: got {}, want {}",
                    w.display(graph),
                    x.display(graph),
                    crate::hecke::format_element(graph, &lhs),
                    crate::hecke::format_element(graph, &rhs)
                )
            });
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::{parse_word, DEFAULT_BALL_CAP};

    fn w(graph: &CoxeterGraph, s: &str) -> Word {
        parse_word(graph, s).unwrap()
    }

    #[test]
    fn xi_pairing_matches_subset_sum() {
        let g = catalog::complete(4);
        for a in g.cliques() {
            for b in g.cliques() {
                for (sa, sb) in [(Sign::Plus, Sign::Minus), (Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)] {
                    let direct: i64 = a
                        .intersection(b)
                        .subsets()
                        .iter()
                        .map(|om| sa.of_subset(om.len()) * sb.of_subset(om.len()))
                        .sum();
                    assert_eq!(SignedSetVector::new(a, sa).pairing(&SignedSetVector::new(b, sb)), direct);
                }
                let plus_minus = SignedSetVector::new(a, Sign::Plus).pairing(&SignedSetVector::new(b, Sign::Minus));
                assert_eq!(plus_minus, a.is_disjoint(b) as i64);
            }
            assert_eq!(SignedSetVector::new(a, Sign::Minus).norm_sq(), 1 << a.len());
        }
    }

    #[test]
    fn beta_examples() {
        let g = catalog::free(2);
        let s = w(&g, "a");
        let e = Word::identity();
        assert_eq!(beta_coefficient(&g, Sign::Plus, &s, &s, Clique::EMPTY, 1).unwrap(), 1);
        for a in 1..5 {
            assert_eq!(beta_coefficient(&g, Sign::Plus, &e, &s, Clique::EMPTY, a).unwrap(), 0);
        }
        assert_eq!(beta_coefficient(&g, Sign::Plus, &e, &s, Clique::EMPTY, 0).unwrap(), 1);
        assert_eq!(beta_coefficient(&g, Sign::Minus, &e, &s, Clique::EMPTY, 0).unwrap(), 1);
        let bad = Clique::from_labels(&g, &["b"]).unwrap();
        assert!(beta_coefficient(&g, Sign::Plus, &s, &s, bad, 1).is_err());
    }

    #[test]
    fn dilation_examples() {
        let g = catalog::free(2);
        let e = Word::identity();
        for a in 0..4 {
            let u = dilation_apply(&g, Sign::Plus, a, &e);
            assert_eq!(u.terms.len(), 1);
            assert_eq!(u.terms[0].coeff, 1);
        }
        let u = dilation_apply(&g, Sign::Plus, 1, &w(&g, "a"));
        assert!(u.terms.iter().all(|t| !(t.g.is_identity() && t.xi.support.is_empty())));
        assert!(u.terms.iter().any(|t| t.g == w(&g, "a")));
    }

    #[test]
    fn delta_identity_examples() {
        let free = catalog::free(3);
        assert!(delta_identity_check(&free, &Word::identity(), 4, DEFAULT_BALL_CAP).unwrap());
        let rs = catalog::edge_rs();
        assert!(delta_identity_check(&rs, &w(&rs, "t"), 4, DEFAULT_BALL_CAP).unwrap());
        let x = w(&rs, "t r s");
        assert!(delta_identity_check(&rs, &x, 4, DEFAULT_BALL_CAP).unwrap());
    }

    #[test]
    fn aux_examples() {
        let g = CoxeterGraph::new(&["s", "t"], &[]).unwrap();
        let (x, s, e) = (w(&g, "s t"), w(&g, "s"), Word::identity());
        assert!(aux_sum_check(&g, &x, &e, &s, &s, 3).unwrap());
        assert!(aux_sum_check(&g, &x, &e, &e, &s, 1).unwrap());
        assert!(aux_sum_check(&g, &x, &e, &e, &e, 0).unwrap());
        assert!(aux_sum_check(&g, &x, &s, &e, &s, 2).is_err());
    }

    #[test]
    fn phi_component_examples() {
        let g = catalog::free(2);
        let create = OperatorTerm { creator: w(&g, "a"), ..OperatorTerm::identity() };
        let diag = OperatorTerm { diagonal: w(&g, "a"), ..OperatorTerm::identity() };
        assert!(phi_component(0, core::slice::from_ref(&create)).is_empty());
        assert_eq!(phi_component(-1, core::slice::from_ref(&create)).len(), 1);
        assert_eq!(phi_component(0, core::slice::from_ref(&diag)).len(), 1);
    }

    #[test]
    fn cutdown_small_cases() {
        let free = CoxeterGraph::new(&["s", "t"], &[]).unwrap();
        for n in 0..=1 {
            let t = cutdown_identity_check(&free, n, 3, CutdownConvention::Standard, DEFAULT_BALL_CAP).unwrap();
            assert!(t.passed(), "{:?}", t.failures);
        }
    }
}
