//! Named identity checks run exhaustively over finite balls.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::check::Tally;
use crate::error::{Error, Result};
use crate::expansion::{apply_terms, breakdown_term, enumerate_aw, t_expansion};
use crate::graph::{CoxeterGraph, Gen};
use crate::growth::kappa_bound_check;
use crate::hecke::{format_element, hmul, inner_product, HeckeElement};
use crate::khintchine::{intertwiner_check, jd_general, verify_factorization};
use crate::multipliers::{
    aux_preconditions, aux_sum_check, cutdown_identity_check, delta_identity_check, CutdownConvention,
};
use crate::poly::PolyScalar;
use crate::word::{enumerate_ball, inverse, is_prefix, prefixes, reduce, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    HeckeRelations,
    Expansion,
    QwIdentity,
    Cutdown,
    AuxSum,
    Factorization,
    Intertwiner,
    Kappa,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HeckeRelations,
        Suite::Expansion,
        Suite::QwIdentity,
        Suite::Cutdown,
        Suite::AuxSum,
        Suite::Factorization,
        Suite::Intertwiner,
        Suite::Kappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HeckeRelations => "hecke-relations",
            Suite::Expansion => "expansion",
            Suite::QwIdentity => "qw-identity",
            Suite::Cutdown => "cutdown",
            Suite::AuxSum => "aux-sum",
            Suite::Factorization => "factorization",
            Suite::Intertwiner => "intertwiner",
            Suite::Kappa => "kappa",
        }
    }

    pub fn lemma(self) -> &'static str {
        match self {
            Suite::HeckeRelations => "quadratic and commutation relations, orthonormal GNS basis",
            Suite::Expansion => "T_w as a sum of creation-diagonal-annihilation terms, reduced form of each term",
            Suite::QwIdentity => "alternating sum of prefix projections equals the projection onto one basis vector",
            Suite::Cutdown => "word-length cut-down as a sum of dilated length-shift components",
            Suite::AuxSum => "telescoping sum of dilation coefficients",
            Suite::Factorization => "products of generators through the Khintchine decomposition",
            Suite::Intertwiner => "Khintchine components intertwined with their free counterparts",
            Suite::Kappa => "polynomial bound on prefix counts",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Radius `N` of the ball of basis vectors.
    pub radius: usize,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lemma: String,
    pub graph: String,
    pub parameters: BTreeMap<String, String>,
    pub cases_checked: u64,
    pub failures: Vec<String>,
    pub failed: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Largest `n` for the cut-down identity.
pub const CUTDOWN_MAX_N: usize = 2;
/// Largest `|u′|` in the telescoping-sum instances.
pub const AUX_MAX_SHIFT: usize = 2;
/// Largest word length for the decomposition suites.
pub const KHINTCHINE_MAX_D: usize = 3;

pub fn run_suite(suite: Suite, graph: &CoxeterGraph, graph_name: &str, config: SuiteConfig) -> Result<SuiteReport> {
    let n = config.radius;
    let cap = config.cap;
    let mut params = BTreeMap::new();
    params.insert("N".to_string(), n.to_string());
    let tally = match suite {
        Suite::HeckeRelations => hecke_relations(graph, n, cap)?,
        Suite::Expansion => {
            params.insert("basis_radius".into(), (n + 1).to_string());
            expansion(graph, n, cap)?
        }
        Suite::QwIdentity => {
            params.insert("basis_radius".into(), (n + 1).to_string());
            qw_identity(graph, n, cap)?
        }
        Suite::Cutdown => {
            params.insert("max_n".into(), CUTDOWN_MAX_N.to_string());
            let mut t = Tally::new();
            for m in 0..=CUTDOWN_MAX_N {
                t.merge(cutdown_identity_check(graph, m, n, CutdownConvention::Standard, cap)?);
            }
            t
        }
        Suite::AuxSum => {
            params.insert("max_shift".into(), AUX_MAX_SHIFT.to_string());
            aux_suite(graph, n, cap)?
        }
        Suite::Factorization => {
            params.insert("max_d".into(), KHINTCHINE_MAX_D.to_string());
            let mut t = Tally::new();
            for letters in reduced_sequences(graph, KHINTCHINE_MAX_D) {
                t.merge(verify_factorization(graph, &letters, n, cap)?);
            }
            t
        }
        Suite::Intertwiner => {
            params.insert("max_d".into(), KHINTCHINE_MAX_D.to_string());
            let mut t = Tally::new();
            for letters in reduced_sequences(graph, KHINTCHINE_MAX_D) {
                for comp in jd_general(graph, &letters)? {
                    t.merge(intertwiner_check(graph, &comp, n, cap)?);
                }
            }
            t
        }
        Suite::Kappa => {
            let report = kappa_bound_check(graph, n, cap)?;
            params.insert("exponent".into(), report.exponent.to_string());
            params.insert("constant".into(), format!("{}", report.constant));
            params.insert("witness".into(), format!("[{}]", report.witness.display(graph)));
            let mut t = Tally { cases: report.cases as u64, ..Tally::new() };
            if !report.constant.is_finite() {
                t.cases += 1;
                t.record(false, || "fitted constant is not finite".into());
            }
            t
        }
    };
    Ok(SuiteReport {
        suite,
        lemma: suite.lemma().into(),
        graph: graph_name.into(),
        parameters: params,
        cases_checked: tally.cases,
        failures: tally.failures,
        failed: tally.failed,
    })
}

/// Every letter sequence of length at most `d` spelling a reduced word.
pub fn reduced_sequences(graph: &CoxeterGraph, d: usize) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Gen>> = alloc::vec![Vec::new()];
    for len in 0..=d {
        out.extend(layer.iter().cloned());
        if len == d {
            break;
        }
        let mut next = Vec::new();
        for seq in &layer {
            for s in 0..graph.rank() as Gen {
                let mut ext = seq.clone();
                ext.push(s);
                if reduce(graph, &ext).is_ok_and(|w| w.len() == ext.len()) {
                    next.push(ext);
                }
            }
        }
        layer = next;
    }
    out
}

fn hecke_relations(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let gens: Vec<Word> = (0..graph.rank() as Gen).map(|s| Word::from_normal_letters(alloc::vec![s])).collect();
    for (s, ws) in gens.iter().enumerate() {
        let ts = HeckeElement::basis(ws.clone());
        let sq = hmul(graph, &ts, &ts);
        let want = HeckeElement::one().add(&ts.scale(&PolyScalar::p()));
        t.record(sq == want, || format!("T_{}^2 = {}", graph.label(s as Gen), format_element(graph, &sq)));
        for (u, wu) in gens.iter().enumerate().skip(s + 1) {
            if graph.commute(s as Gen, u as Gen) {
                let tu = HeckeElement::basis(wu.clone());
                t.record(hmul(graph, &ts, &tu) == hmul(graph, &tu, &ts), || {
                    format!("T_{} and T_{} do not commute", graph.label(s as Gen), graph.label(u as Gen))
                });
            }
        }
    }
    let ball = enumerate_ball(graph, n, cap)?;
    for w in &ball {
        let tw = HeckeElement::basis(w.clone());
        for v in &ball {
            let got = inner_product(graph, &tw, &HeckeElement::basis(v.clone()));
            let want = if w == v { PolyScalar::one() } else { PolyScalar::zero() };
            t.record(got == want, || format!("<T_[{}], T_[{}]> = {}", w.display(graph), v.display(graph), got));
        }
    }
    Ok(t)
}

fn expansion(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Tally> {
    let mut t = Tally::new();
    let ball = enumerate_ball(graph, n, cap)?;
    let bigger = enumerate_ball(graph, n + 1, cap)?;
    for w in &ball {
        let terms = t_expansion(graph, w);
        let tw = HeckeElement::basis(w.clone());
        for v in &ball {
            let vv = HeckeElement::basis(v.clone());
            let got = apply_terms(graph, &terms, &vv);
            let want = hmul(graph, &tw, &vv);
            t.record(got == want, || {
                format!(
                    "T_[{}] on [{}]: expansion {}, product {}",
                    w.display(graph),
                    v.display(graph),
                    format_element(graph, &got),
                    format_element(graph, &want)
                )
            });
        }
        for triple in enumerate_aw(graph, w) {
            let raw = triple.raw_term(PolyScalar::one());
            let reduced = breakdown_term(graph, &triple, PolyScalar::one())?;
            for v in &bigger {
                t.record(raw.apply_basis(graph, v) == reduced.apply_basis(graph, v), || {
                    format!("{:?} on [{}]: reduced form differs", triple, v.display(graph))
                });
            }
        }
    }
    Ok(t)
}

fn qw_identity(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Tally> {
    let mut t = Tally::new();
    for w in enumerate_ball(graph, n, cap)? {
        let ok = delta_identity_check(graph, &w, n + 1, cap)?;
        t.record(ok, || format!("Q_[{}] is not the projection onto its basis vector", w.display(graph)));
    }
    Ok(t)
}

/// One instance `(x, u′, u″, v, a)` of the telescoping sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxInstance {
    pub x: Word,
    pub u_prime: Word,
    pub u_doubleprime: Word,
    pub v: Word,
    pub a: i64,
}

/// Instances with `x ∈ B_N`, `|u′| ≤ max_shift` and `0 ≤ a ≤ 2|x| + 2`.
pub fn aux_instances(graph: &CoxeterGraph, n: usize, max_shift: usize, cap: usize) -> Result<Vec<AuxInstance>> {
    let shifts = enumerate_ball(graph, max_shift, cap)?;
    let mut out = Vec::new();
    for x in enumerate_ball(graph, n, cap)? {
        let pre = prefixes(graph, &x);
        for head in &pre {
            let u_doubleprime = inverse(graph, head);
            for u_prime in &shifts {
                for v in pre.iter().filter(|v| is_prefix(graph, head, v)) {
                    if !aux_preconditions(graph, &x, u_prime, &u_doubleprime, v) {
                        continue;
                    }
                    for a in 0..=2 * x.len() as i64 + 2 {
                        out.push(AuxInstance {
                            x: x.clone(),
                            u_prime: u_prime.clone(),
                            u_doubleprime: u_doubleprime.clone(),
                            v: v.clone(),
                            a,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn aux_suite(graph: &CoxeterGraph, n: usize, cap: usize) -> Result<Tally> {
    let mut t = Tally::new();
    for inst in aux_instances(graph, n, AUX_MAX_SHIFT, cap)? {
        let ok = aux_sum_check(graph, &inst.x, &inst.u_prime, &inst.u_doubleprime, &inst.v, inst.a)?;
        t.record(ok, || {
            format!(
                "x=[{}], u'=[{}], u''=[{}], v=[{}], a={}",
                inst.x.display(graph),
                inst.u_prime.display(graph),
                inst.u_doubleprime.display(graph),
                inst.v.display(graph),
                inst.a
            )
        });
    }
    Ok(t)
}
