use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{bit, CoxeterGraph, Gen};
use crate::poly::{write_monomial, write_signed_terms, PolyScalar, Rational};
use crate::text::Parser;
use crate::word::{self, is_prefix, left_descents, left_mul_gen, mul, Word};

/// Finite combination `Σ c_w T_w` with polynomial coefficients.
///
/// Doubles as the GNS vector `Σ c_w T_w Ω`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<Word, PolyScalar>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn one() -> Self {
        HeckeElement::basis(Word::identity())
    }

    /// `T_w`.
    pub fn basis(w: Word) -> Self {
        HeckeElement::monomial(w, PolyScalar::one())
    }

    pub fn monomial(w: Word, c: PolyScalar) -> Self {
        let mut out = HeckeElement::zero();
        out.add_term(w, &c);
        out
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Word, PolyScalar)>) -> Self {
        let mut out = HeckeElement::zero();
        for (w, c) in pairs {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: Word, c: &PolyScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> PolyScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &PolyScalar) -> Self {
        HeckeElement::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn add(&self, other: &HeckeElement) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> Self {
        self.add(&other.scale(&PolyScalar::integer(-1)))
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Self {
        HeckeElement {
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Applies a transformation to the coefficients.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Word, &PolyScalar) -> PolyScalar) -> Self {
        HeckeElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(w, c))))
    }

    /// Coefficients evaluated at `q`.
    pub fn eval(&self, q: f64) -> Vec<(Word, f64)> {
        self.terms.iter().map(|(w, c)| (w.clone(), c.eval(q))).collect()
    }

    /// GNS norm `‖a Ω‖₂` at `q`.
    pub fn norm2(&self, q: f64) -> f64 {
        libm::sqrt(self.terms.values().map(|c| libm::pow(c.eval(q), 2.0)).sum())
    }

    /// `Σ a_w b_w`, the inner product in the orthonormal basis.
    pub fn coefficient_pairing(&self, other: &HeckeElement) -> PolyScalar {
        let mut acc = PolyScalar::zero();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc += &(c * d);
            }
        }
        acc
    }

    fn check(&self, graph: &CoxeterGraph) -> Result<()> {
        self.terms.keys().try_for_each(|w| graph.check_letters(w.letters()))
    }
}

/// `T_s · b` by the generator rule.
pub fn generator_times(graph: &CoxeterGraph, s: Gen, b: &HeckeElement) -> HeckeElement {
    let p = PolyScalar::p();
    let mut out = HeckeElement::zero();
    for (u, c) in &b.terms {
        out.add_term(left_mul_gen(graph, s, u), c);
        if left_descents(graph, u) & bit(s) != 0 {
            out.add_term(u.clone(), &(c * &p));
        }
    }
    out
}

/// `T_w · b`, folding the generator rule over the letters of `w` from the right.
pub(crate) fn basis_times(graph: &CoxeterGraph, w: &Word, b: &HeckeElement) -> HeckeElement {
    w.letters().iter().rev().fold(b.clone(), |acc, &s| generator_times(graph, s, &acc))
}

pub fn hecke_multiply(graph: &CoxeterGraph, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.check(graph)?;
    b.check(graph)?;
    Ok(hmul(graph, a, b))
}

pub(crate) fn hmul(graph: &CoxeterGraph, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, c) in &a.terms {
        for (v, d) in &basis_times(graph, w, b).terms {
            out.add_term(v.clone(), &(c * d));
        }
    }
    out
}

/// `T_w ↦ T_{w⁻¹}`; coefficients are real so conjugation is trivial.
pub fn adjoint(graph: &CoxeterGraph, a: &HeckeElement) -> HeckeElement {
    HeckeElement::from_terms(a.terms.iter().map(|(w, c)| (word::inverse(graph, w), c.clone())))
}

/// Coefficient of `T_e`.
pub fn trace(a: &HeckeElement) -> PolyScalar {
    a.coeff(&Word::identity())
}

/// `⟨a, b⟩ = τ(b* a)`, computed in the algebra.
pub fn inner_product(graph: &CoxeterGraph, a: &HeckeElement, b: &HeckeElement) -> PolyScalar {
    trace(&hmul(graph, &adjoint(graph, b), a))
}

/// `T^(1)_v`: the basis permutation `T_w Ω ↦ T_{vw} Ω`.
pub fn group_action(graph: &CoxeterGraph, v: &Word, a: &HeckeElement) -> HeckeElement {
    HeckeElement::from_terms(a.terms.iter().map(|(w, c)| (mul(graph, v, w), c.clone())))
}

/// `P_w`: keeps the terms `T_v Ω` with `w ≤ v`.
pub fn project_prefix(graph: &CoxeterGraph, w: &Word, a: &HeckeElement) -> HeckeElement {
    a.filter(|v| is_prefix(graph, w, v))
}

/// Trace-preserving conditional expectation onto the subsystem spanned by `subset`.
pub fn conditional_expectation(graph: &CoxeterGraph, subset: u64, a: &HeckeElement) -> Result<HeckeElement> {
    if subset & !graph.all() != 0 {
        return Err(Error::Precondition("subset is not a set of generators".into()));
    }
    Ok(a.filter(|w| w.support() & !subset == 0))
}

/// Text form, e.g. `1 + p [s] + (1 - p) [s t]`.
pub fn format_element(graph: &CoxeterGraph, a: &HeckeElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (w, c) in &a.terms {
        if w.is_identity() {
            write_signed_terms(&mut out, c.terms(), first).unwrap();
        } else if let [(d, k)] = c.terms() {
            match (first, k.is_negative()) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if !(*d == 0 && k.abs() == Rational::ONE) {
                write_monomial(&mut out, *d, *k).unwrap();
                out.push(' ');
            }
            write!(out, "[{}]", w.display(graph)).unwrap();
        } else {
            if !first {
                out.push_str(" + ");
            }
            write!(out, "({c}) [{}]", w.display(graph)).unwrap();
        }
        first = false;
    }
    out
}

/// Parses the text form; accepts `c * [w]` as well as `c [w]`.
pub fn parse_element(graph: &CoxeterGraph, text: &str) -> Result<HeckeElement> {
    let mut parser = Parser::new(text)?;
    if text.trim() == "0" {
        return Ok(HeckeElement::zero());
    }
    let mut out = HeckeElement::zero();
    for (c, w) in parser.linear_combination()? {
        let w = match w {
            Some(w) => word::parse_word(graph, &w)?,
            None => Word::identity(),
        };
        out.add_term(w, &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn free_st() -> CoxeterGraph {
        CoxeterGraph::new(&["s", "t"], &[]).unwrap()
    }

    fn t(graph: &CoxeterGraph, w: &str) -> HeckeElement {
        HeckeElement::basis(parse_word(graph, w).unwrap())
    }

    #[test]
    fn multiplication_examples() {
        let g = free_st();
        let ss = hecke_multiply(&g, &t(&g, "s"), &t(&g, "s")).unwrap();
        assert_eq!(ss, HeckeElement::one().add(&t(&g, "s").scale(&PolyScalar::p())));
        assert_eq!(hecke_multiply(&g, &t(&g, "s"), &t(&g, "t")).unwrap(), t(&g, "s t"));
        let prod = hecke_multiply(&g, &t(&g, "s t"), &t(&g, "t s")).unwrap();
        let want = parse_element(&g, "1 + p [s] + p [s t s]").unwrap();
        assert_eq!(prod, want);
        assert_eq!(trace(&prod), PolyScalar::one());
        assert!(trace(&t(&g, "s t")).is_zero());
    }

    #[test]
    fn inner_product_examples() {
        let g = free_st();
        assert_eq!(inner_product(&g, &t(&g, "s t s"), &t(&g, "s t s")), PolyScalar::one());
        assert!(inner_product(&g, &t(&g, "s"), &t(&g, "t")).is_zero());
        let ss = hmul(&g, &t(&g, "s"), &t(&g, "s"));
        assert_eq!(inner_product(&g, &ss, &t(&g, "s")), PolyScalar::p());
    }

    #[test]
    fn adjoint_and_actions() {
        let g = free_st();
        assert_eq!(adjoint(&g, &t(&g, "s t")), t(&g, "t s"));
        assert_eq!(adjoint(&g, &t(&g, "s")), t(&g, "s"));
        assert_eq!(group_action(&g, &Word::identity(), &t(&g, "s t")), t(&g, "s t"));
        assert_eq!(group_action(&g, &parse_word(&g, "s").unwrap(), &t(&g, "s")), HeckeElement::one());
        assert_eq!(group_action(&g, &parse_word(&g, "s t").unwrap(), &t(&g, "t")), t(&g, "s"));
    }

    #[test]
    fn projections() {
        let g = free_st();
        let s = parse_word(&g, "s").unwrap();
        assert_eq!(project_prefix(&g, &Word::identity(), &t(&g, "t s")), t(&g, "t s"));
        assert!(project_prefix(&g, &s, &t(&g, "t")).is_zero());
        let rs = CoxeterGraph::new(&["r", "s", "t"], &[("r", "s")]).unwrap();
        let s = parse_word(&rs, "s").unwrap();
        assert_eq!(project_prefix(&rs, &s, &t(&rs, "r s")), t(&rs, "r s"));
    }

    #[test]
    fn conditional_expectation_examples() {
        let g = CoxeterGraph::new(&["r", "s", "t"], &[("r", "t")]).unwrap();
        let rt = g.mask_of(&["r", "t"]).unwrap();
        assert_eq!(conditional_expectation(&g, rt, &t(&g, "r t")).unwrap(), t(&g, "r t"));
        assert!(conditional_expectation(&g, rt, &t(&g, "r s")).unwrap().is_zero());
        assert!(conditional_expectation(&g, 1 << 7, &t(&g, "r")).is_err());
    }

    #[test]
    fn text_format() {
        let g = free_st();
        let ss = hmul(&g, &t(&g, "s"), &t(&g, "s"));
        assert_eq!(format_element(&g, &ss), "1 + p [s]");
        let a = parse_element(&g, "2 * [e] - 1/2 p^2 * [s t] + (1 - p) * [t]").unwrap();
        assert_eq!(format_element(&g, &a), "2 + (1 - p) [t] - 1/2 p^2 [s t]");
        assert_eq!(parse_element(&g, &format_element(&g, &a)).unwrap(), a);
        assert_eq!(parse_element(&g, "-[s]").unwrap(), t(&g, "s").scale(&PolyScalar::integer(-1)));
        assert_eq!(format_element(&g, &HeckeElement::zero()), "0");
        assert!(parse_element(&g, "[x]").is_err());
    }

    #[test]
    fn graph_mismatch_is_reported() {
        let g = free_st();
        let big = CoxeterGraph::new(&["a", "b", "c"], &[]).unwrap();
        let c = t(&big, "c");
        assert!(matches!(hecke_multiply(&g, &c, &c), Err(Error::GraphMismatch(2))));
    }
}
