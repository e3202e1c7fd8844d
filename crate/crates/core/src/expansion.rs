use alloc::vec::Vec;

use crate::clique::Clique;
use crate::error::{Error, Result};
use crate::graph::{mask_iter, CoxeterGraph};
use crate::hecke::HeckeElement;
use crate::poly::PolyScalar;
use crate::word::{self, is_prefix, left_descents, left_mul_gen, mul, prefixes, right_descents, Word};

/// `(w′, Γ₀, w″)` with `w = w′·VΓ₀·w″` reduced and no generator commuting
/// with `VΓ₀` ending `w′`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpansionTriple {
    pub w_prime: Word,
    pub clique: Clique,
    pub w_doubleprime: Word,
}

impl ExpansionTriple {
    /// The product `w′·VΓ₀·w″`.
    pub fn word(&self, graph: &CoxeterGraph) -> Word {
        mul(graph, &mul(graph, &self.w_prime, &self.clique.word()), &self.w_doubleprime)
    }

    pub fn is_valid(&self, graph: &CoxeterGraph) -> bool {
        let w = self.word(graph);
        graph.is_clique(self.clique.mask())
            && w.len() == self.w_prime.len() + self.clique.len() + self.w_doubleprime.len()
            && right_descents(graph, &self.w_prime) & graph.centralizing(self.clique.mask()) == 0
    }

    /// The unexpanded operator `T^(1)_{w′} P_{VΓ₀} T^(1)_{w″}` with the given weight.
    pub fn raw_term(&self, weight: PolyScalar) -> OperatorTerm {
        OperatorTerm {
            creator: self.w_prime.clone(),
            diagonal: self.clique.word(),
            annihilator: self.w_doubleprime.clone(),
            weight,
        }
    }
}

/// `weight · T^(1)_{creator} P_{diagonal} T^(1)_{annihilator}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub creator: Word,
    pub diagonal: Word,
    pub annihilator: Word,
    pub weight: PolyScalar,
}

impl OperatorTerm {
    pub fn identity() -> Self {
        OperatorTerm {
            creator: Word::identity(),
            diagonal: Word::identity(),
            annihilator: Word::identity(),
            weight: PolyScalar::one(),
        }
    }

    /// Image of `T_v Ω` as a basis word, ignoring the weight.
    pub fn apply_basis(&self, graph: &CoxeterGraph, v: &Word) -> Option<Word> {
        let z = mul(graph, &self.annihilator, v);
        is_prefix(graph, &self.diagonal, &z).then(|| mul(graph, &self.creator, &z))
    }

    pub fn apply(&self, graph: &CoxeterGraph, a: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (v, c) in a.terms() {
            if let Some(img) = self.apply_basis(graph, v) {
                out.add_term(img, &(c * &self.weight));
            }
        }
        out
    }
}

/// `Σ_terms term(a)`.
pub fn apply_terms(graph: &CoxeterGraph, terms: &[OperatorTerm], a: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for t in terms {
        for (w, c) in t.apply(graph, a).terms() {
            out.add_term(w.clone(), c);
        }
    }
    out
}

/// All triples `(w′, Γ₀, w″)` for `w`.
pub fn enumerate_aw(graph: &CoxeterGraph, w: &Word) -> Vec<ExpansionTriple> {
    let pre = prefixes(graph, w);
    let mut out = Vec::new();
    for clique in graph.cliques() {
        let forbidden = graph.centralizing(clique.mask());
        let cw = clique.word();
        for wp in &pre {
            if right_descents(graph, wp) & forbidden != 0 {
                continue;
            }
            let head = mul(graph, wp, &cw);
            if head.len() != wp.len() + clique.len() {
                continue;
            }
            if let Some(tail) = word::strip_prefix(graph, &head, w) {
                out.push(ExpansionTriple { w_prime: wp.clone(), clique, w_doubleprime: tail });
            }
        }
    }
    out.sort();
    out
}

/// The cancellation data `(u, u′, u″)` of a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakdown {
    pub u: Word,
    pub u_prime: Word,
    pub u_doubleprime: Word,
}

/// Largest `u` with `w′ = u′·u` and `w″ = u⁻¹·u″` both reduced.
pub fn breakdown(graph: &CoxeterGraph, t: &ExpansionTriple) -> Result<Breakdown> {
    if !t.is_valid(graph) {
        return Err(Error::Precondition("not an expansion triple".into()));
    }
    // u⁻¹ is the largest common prefix of w′⁻¹ and w″.
    let mut a = word::inverse(graph, &t.w_prime);
    let mut b = t.w_doubleprime.clone();
    let mut common = Word::identity();
    loop {
        let shared = left_descents(graph, &a) & left_descents(graph, &b);
        let Some(s) = mask_iter(shared).next() else { break };
        a = left_mul_gen(graph, s, &a);
        b = left_mul_gen(graph, s, &b);
        common = mul(graph, &common, &Word::from_normal_letters(alloc::vec![s]));
    }
    Ok(Breakdown { u: word::inverse(graph, &common), u_prime: mul(graph, &t.w_prime, &common), u_doubleprime: b })
}

/// The reduced operator `T^(1)_{u′} P_{u·VΓ₀} T^(1)_{u″}` of a triple.
pub fn breakdown_term(graph: &CoxeterGraph, t: &ExpansionTriple, weight: PolyScalar) -> Result<OperatorTerm> {
    let b = breakdown(graph, t)?;
    Ok(OperatorTerm {
        diagonal: mul(graph, &b.u, &t.clique.word()),
        creator: b.u_prime,
        annihilator: b.u_doubleprime,
        weight,
    })
}

/// `T_w = Σ_{A_w} p^{#Γ₀} T^(1)_{u′} P_{u·VΓ₀} T^(1)_{u″}`.
pub fn t_expansion(graph: &CoxeterGraph, w: &Word) -> Vec<OperatorTerm> {
    enumerate_aw(graph, w)
        .iter()
        .map(|t| {
            breakdown_term(graph, t, PolyScalar::p_pow(t.clique.len() as u32)).expect("enumerated triples are valid")
        })
        .collect()
}
