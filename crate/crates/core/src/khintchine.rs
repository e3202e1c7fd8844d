//! Khintchine-type decompositions of products of generators into
//! creation, diagonal and annihilation blocks, the diagonal word families
//! and the non-injectivity crossover arithmetic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::Tally;
use crate::clique::Clique;
use crate::error::{Error, Result};
use crate::graph::{bit, CoxeterGraph, Gen};
use crate::hecke::{generator_times, HeckeElement};
use crate::multipliers::{dense_norm, TruncatedMatrix, MAX_NORM_ITER};
use crate::poly::PolyScalar;
use crate::word::{
    self, enumerate_ball, inverse, left_descents, left_mul_gen, mul, prefixes, reduce, right_descents, Word,
};

/// Which summand of the decomposition a component lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockTag {
    /// `L_k ⊗ K_{d-k}`.
    Split { k: usize },
    /// `L_k ⊗ A_s ⊗ K_{d-k-1}`.
    Diagonal { k: usize, s: Gen },
    /// `L_k ⊗ A_{Γ₀} ⊗ K_{d-k-l}` for `(Γ₁, Γ₂) ∈ Comm(Γ₀)`.
    General { k: usize, gamma0: Clique, gamma1: Clique, gamma2: Clique },
}

/// The legs of a nonzero component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFactors {
    /// Letters of the `T_c P_c^⊥` factors, left to right.
    pub creation: Vec<Gen>,
    pub diagonal: Clique,
    /// Letters of the `T_a P_a` factors, left to right.
    pub annihilation: Vec<Gen>,
    /// Factor `i` (creation, then clique in ascending order, then
    /// annihilation) uses input letter `sigma[i]`.
    pub sigma: Vec<usize>,
}

impl ComponentFactors {
    /// Image of `T_v Ω` under the product of the legs with the group
    /// operators; the rightmost factor acts first.
    pub fn apply_basis(&self, graph: &CoxeterGraph, v: &Word) -> Option<Word> {
        let mut z = v.clone();
        for &a in self.annihilation.iter().rev() {
            if left_descents(graph, &z) & bit(a) == 0 {
                return None;
            }
            z = left_mul_gen(graph, a, &z);
        }
        if self.diagonal.mask() & !left_descents(graph, &z) != 0 {
            return None;
        }
        for &c in self.creation.iter().rev() {
            if left_descents(graph, &z) & bit(c) != 0 {
                return None;
            }
            z = left_mul_gen(graph, c, &z);
        }
        Some(z)
    }

    /// The same legs acting on the free group basis, given as letter
    /// sequences without equal neighbours.
    pub fn apply_free(&self, seq: &[Gen]) -> Option<Vec<Gen>> {
        let m = self.annihilation.len();
        if seq.len() < m || !seq[..m].iter().eq(self.annihilation.iter().rev()) {
            return None;
        }
        let rest = &seq[m..];
        let clique = self.diagonal.word();
        if !rest.starts_with(clique.letters()) {
            return None;
        }
        let mut out = rest.to_vec();
        for &c in self.creation.iter().rev() {
            if out.first() == Some(&c) {
                return None;
            }
            out.insert(0, c);
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhintchineComponent {
    pub block: BlockTag,
    pub weight: PolyScalar,
    /// `None` when no admissible permutation exists.
    pub factors: Option<ComponentFactors>,
}

impl KhintchineComponent {
    pub fn is_zero(&self) -> bool {
        self.factors.is_none() || self.weight.is_zero()
    }

    pub fn apply(&self, graph: &CoxeterGraph, a: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        if self.is_zero() {
            return out;
        }
        let f = self.factors.as_ref().expect("nonzero component");
        for (v, c) in a.terms() {
            if let Some(img) = f.apply_basis(graph, v) {
                out.add_term(img, &(c * &self.weight));
            }
        }
        out
    }
}

fn check_reduced(graph: &CoxeterGraph, letters: &[Gen]) -> Result<Word> {
    graph.check_letters(letters)?;
    let w = reduce(graph, letters)?;
    if w.len() != letters.len() {
        return Err(Error::Precondition("letters must form a reduced word".into()));
    }
    Ok(w)
}

/// Occurrence-preserving permutation taking `letters` to `target`.
fn matching_permutation(letters: &[Gen], target: &[Gen]) -> Vec<usize> {
    let mut used: BTreeMap<Gen, usize> = BTreeMap::new();
    target
        .iter()
        .map(|&c| {
            let nth = used.entry(c).or_insert(0);
            let pos = letters
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x == c)
                .nth(*nth)
                .map(|(i, _)| i)
                .expect("target is a rearrangement of letters");
            *nth += 1;
            pos
        })
        .collect()
}

/// Decomposition for an edgeless graph: `d + 1` split blocks and `d·|S|`
/// diagonal blocks. A diagonal block `(k, s)` carries weight `p` when
/// `s = w_{k+1}` and weight zero otherwise.
pub fn jd_free(graph: &CoxeterGraph, letters: &[Gen]) -> Result<Vec<KhintchineComponent>> {
    if !graph.is_free() {
        return Err(Error::Precondition("the free decomposition needs an edgeless graph".into()));
    }
    check_reduced(graph, letters)?;
    let d = letters.len();
    let identity: Vec<usize> = (0..d).collect();
    let mut out = Vec::with_capacity(d + 1 + d * graph.rank());
    for k in 0..=d {
        out.push(KhintchineComponent {
            block: BlockTag::Split { k },
            weight: PolyScalar::one(),
            factors: Some(ComponentFactors {
                creation: letters[..k].to_vec(),
                diagonal: Clique::EMPTY,
                annihilation: letters[k..].to_vec(),
                sigma: identity.clone(),
            }),
        });
    }
    for s in 0..graph.rank() as Gen {
        for k in 0..d {
            out.push(KhintchineComponent {
                block: BlockTag::Diagonal { k, s },
                weight: if letters[k] == s { PolyScalar::p() } else { PolyScalar::zero() },
                factors: Some(ComponentFactors {
                    creation: letters[..k].to_vec(),
                    diagonal: Clique::from_mask(bit(s)),
                    annihilation: letters[k + 1..].to_vec(),
                    sigma: identity.clone(),
                }),
            });
        }
    }
    Ok(out)
}

/// `Comm(Γ₀)`: ordered pairs of disjoint cliques of `Link(Γ₀)`.
pub fn comm(graph: &CoxeterGraph, gamma0: Clique) -> Vec<(Clique, Clique)> {
    let link = graph.cliques_within(graph.link_of(gamma0.mask()));
    let mut out = Vec::new();
    for &a in &link {
        for &b in &link {
            if a.is_disjoint(b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `Σ_l Σ_{Γ₀ ∈ Cliq(l)} |Comm(Γ₀)|·(d - l + 1)`, the number of blocks.
pub fn index_set_size(graph: &CoxeterGraph, d: usize) -> usize {
    graph.cliques().into_iter().filter(|c| c.len() <= d).map(|c| comm(graph, c).len() * (d - c.len() + 1)).sum()
}

/// `w = P·VΓ₀·R` with `|P| = k`, reduced.
fn clique_splits(graph: &CoxeterGraph, w: &Word, pre: &[Word], gamma0: Clique, k: usize) -> Vec<(Word, Word)> {
    let cw = gamma0.word();
    pre.iter()
        .filter(|p| p.len() == k)
        .filter_map(|p| {
            let head = mul(graph, p, &cw);
            if head.len() != k + gamma0.len() {
                return None;
            }
            word::strip_prefix(graph, &head, w).map(|r| (p.clone(), r))
        })
        .collect()
}

/// Decomposition for any right-angled graph: one component per
/// `(l, Γ₀, Γ₁, Γ₂, k)`, with factors when the admissible permutation exists.
pub fn jd_general(graph: &CoxeterGraph, letters: &[Gen]) -> Result<Vec<KhintchineComponent>> {
    let w = check_reduced(graph, letters)?;
    let d = letters.len();
    let pre = prefixes(graph, &w);
    let mut out = Vec::new();
    for gamma0 in graph.cliques().into_iter().filter(|c| c.len() <= d) {
        let l = gamma0.len();
        let link = graph.link_of(gamma0.mask());
        let pairs = comm(graph, gamma0);
        for k in 0..=d - l {
            let splits = clique_splits(graph, &w, &pre, gamma0, k);
            for &(gamma1, gamma2) in &pairs {
                let mut found = splits.iter().filter(|(p, r)| {
                    right_descents(graph, p) & link == gamma1.mask() && left_descents(graph, r) & link == gamma2.mask()
                });
                let factors = match (found.next(), found.next()) {
                    (None, _) => None,
                    (Some(_), Some(_)) => {
                        return Err(Error::Inconsistent(format!("two admissible splittings at k={k}")));
                    }
                    (Some((p, r)), None) => {
                        let mut target = p.letters().to_vec();
                        target.extend_from_slice(gamma0.word().letters());
                        target.extend_from_slice(r.letters());
                        Some(ComponentFactors {
                            creation: p.letters().to_vec(),
                            diagonal: gamma0,
                            annihilation: r.letters().to_vec(),
                            sigma: matching_permutation(letters, &target),
                        })
                    }
                };
                out.push(KhintchineComponent {
                    block: BlockTag::General { k, gamma0, gamma1, gamma2 },
                    weight: PolyScalar::p_pow(l as u32),
                    factors,
                });
            }
        }
    }
    Ok(out)
}

/// `T_{w_1}⋯T_{w_d} = Σ_components p^{#VΓ₀}·(legs)` on every basis vector
/// of `B_N`; the free decomposition is checked too on edgeless graphs.
pub fn verify_factorization(graph: &CoxeterGraph, letters: &[Gen], n: usize, cap: usize) -> Result<Tally> {
    let mut sets = vec![jd_general(graph, letters)?];
    if graph.is_free() {
        sets.push(jd_free(graph, letters)?);
    }
    let mut tally = Tally::new();
    for v in enumerate_ball(graph, n, cap)? {
        let basis = HeckeElement::basis(v.clone());
        let lhs = letters.iter().rev().fold(basis.clone(), |acc, &s| generator_times(graph, s, &acc));
        for comps in &sets {
            let rhs = comps.iter().fold(HeckeElement::zero(), |acc, c| acc.add(&c.apply(graph, &basis)));
            tally.record(lhs == rhs, || {
                format!(
                    "letters {:?} on [{}]: product {}, decomposition {}",
                    letters,
                    v.display(graph),
                    crate::hecke::format_element(graph, &lhs),
                    crate::hecke::format_element(graph, &rhs)
                )
            });
        }
    }
    Ok(tally)
}

/// The unique `(A, B)` with `v = A·VΓ₀·B` reduced, `|A| = m` and
/// `rightdesc(A) ∩ Link(Γ₀) = Γ`.
fn head_split(graph: &CoxeterGraph, v: &Word, m: usize, gamma0: Clique, gamma: Clique) -> Result<Option<(Word, Word)>> {
    let link = graph.link_of(gamma0.mask());
    let mut found = clique_splits(graph, v, &prefixes(graph, v), gamma0, m)
        .into_iter()
        .filter(|(a, _)| right_descents(graph, a) & link == gamma.mask());
    match (found.next(), found.next()) {
        (Some(_), Some(_)) => Err(Error::Inconsistent("two admissible splittings".into())),
        (first, _) => Ok(first),
    }
}

/// `𝒬_{m,Γ₀,Γ}`: `T_v Ω ↦ T^f_{v'} Ω` with the head written so that its
/// reverse is minimal.
pub fn intertwiner_q(
    graph: &CoxeterGraph,
    v: &Word,
    m: usize,
    gamma0: Clique,
    gamma: Clique,
) -> Result<Option<Vec<Gen>>> {
    Ok(head_split(graph, v, m, gamma0, gamma)?.map(|(a, b)| {
        let mut out: Vec<Gen> = inverse(graph, &a).letters().iter().rev().copied().collect();
        out.extend_from_slice(gamma0.word().letters());
        out.extend_from_slice(b.letters());
        out
    }))
}

/// `ℛ_{k,Γ₀,Γ}`: as `𝒬` but with the head itself minimal.
pub fn intertwiner_r(
    graph: &CoxeterGraph,
    u: &Word,
    k: usize,
    gamma0: Clique,
    gamma: Clique,
) -> Result<Option<Vec<Gen>>> {
    Ok(head_split(graph, u, k, gamma0, gamma)?.map(|(a, b)| {
        let mut out = a.letters().to_vec();
        out.extend_from_slice(gamma0.word().letters());
        out.extend_from_slice(b.letters());
        out
    }))
}

/// `ℛ*` on a free basis vector: the preimage under `ℛ`, if any.
pub fn intertwiner_r_adjoint(
    graph: &CoxeterGraph,
    f: &[Gen],
    k: usize,
    gamma0: Clique,
    gamma: Clique,
) -> Result<Option<Word>> {
    if f.len() < k + gamma0.len() {
        return Ok(None);
    }
    let u = reduce(graph, f)?;
    if u.len() != f.len() {
        return Ok(None);
    }
    Ok((intertwiner_r(graph, &u, k, gamma0, gamma)?.as_deref() == Some(f)).then_some(u))
}

/// `ℛ*·Π^f(component)·𝒬 = (legs with the group operators)` on every basis
/// vector of `B_N`.
pub fn intertwiner_check(graph: &CoxeterGraph, component: &KhintchineComponent, n: usize, cap: usize) -> Result<Tally> {
    let BlockTag::General { k, gamma0, gamma1, gamma2 } = component.block else {
        return Err(Error::Precondition("intertwiners need a general-case component".into()));
    };
    let mut tally = Tally::new();
    let Some(f) = &component.factors else {
        return Ok(tally);
    };
    let m = f.annihilation.len();
    for v in enumerate_ball(graph, n, cap)? {
        let free_image = match intertwiner_q(graph, &v, m, gamma0, gamma2)? {
            Some(seq) => f.apply_free(&seq),
            None => None,
        };
        let lhs = match free_image {
            Some(seq) => intertwiner_r_adjoint(graph, &seq, k, gamma0, gamma1)?,
            None => None,
        };
        let rhs = f.apply_basis(graph, &v);
        tally.record(lhs == rhs, || {
            format!("{:?} on [{}]: intertwined {:?}, direct {:?}", component.block, v.display(graph), lhs, rhs)
        });
    }
    Ok(tally)
}

/// Norm of `Σ_s c_s T^(1)_s P_s^⊥` from `B_N` into `B_{N+1}`.
pub fn creation_row_norm(graph: &CoxeterGraph, coeffs: &[f64], n: usize, tol: f64, cap: usize) -> Result<f64> {
    if coeffs.len() != graph.rank() {
        return Err(Error::Precondition("one coefficient per generator".into()));
    }
    let cols = enumerate_ball(graph, n, cap)?;
    let mut rows: BTreeMap<Word, usize> = BTreeMap::new();
    let mut raw = Vec::new();
    for (j, v) in cols.iter().enumerate() {
        let desc = left_descents(graph, v);
        for (s, &c) in coeffs.iter().enumerate() {
            let s = s as Gen;
            if desc & bit(s) == 0 && c != 0.0 {
                raw.push((left_mul_gen(graph, s, v), j, c));
                rows.entry(left_mul_gen(graph, s, v)).or_insert(0);
            }
        }
    }
    for (i, slot) in rows.values_mut().enumerate() {
        *slot = i;
    }
    let entries = raw.into_iter().map(|(w, j, c)| (rows[&w], j, c)).collect();
    TruncatedMatrix { rows: rows.into_keys().collect(), cols, entries }.norm_lower_bound(tol, MAX_NORM_ITER)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyVariant {
    /// Three pairwise free generators.
    Free3,
    /// `r, s, t` with `r, t` commuting and `s` free with both; odd `d` only.
    Rst,
}

/// Words of length `2d` whose first halves are pairwise distinct and whose
/// second halves are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalFamily {
    pub d: usize,
    pub words: Vec<Word>,
    pub halves: Vec<(Word, Word)>,
}

impl DiagonalFamily {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Equal first halves or equal second halves force equal indices.
    pub fn check_pairwise(&self) -> bool {
        let n = self.halves.len();
        self.words.iter().all(|w| w.len() == 2 * self.d)
            && (0..n).all(|i| {
                (i + 1..n).all(|j| self.halves[i].0 != self.halves[j].0 && self.halves[i].1 != self.halves[j].1)
            })
    }
}

fn free_triple(graph: &CoxeterGraph) -> Option<(Gen, Gen, Gen)> {
    let n = graph.rank() as Gen;
    for s in 0..n {
        for t in s + 1..n {
            for r in t + 1..n {
                if !graph.commute(s, t) && !graph.commute(s, r) && !graph.commute(t, r) {
                    return Some((s, t, r));
                }
            }
        }
    }
    None
}

fn rst_triple(graph: &CoxeterGraph) -> Option<(Gen, Gen, Gen)> {
    let n = graph.rank() as Gen;
    for r in 0..n {
        for t in r + 1..n {
            if !graph.commute(r, t) {
                continue;
            }
            for s in 0..n {
                if s != r && s != t && !graph.commute(s, r) && !graph.commute(s, t) {
                    return Some((r, s, t));
                }
            }
        }
    }
    None
}

/// Sequences of length `len` over `alphabet` without equal neighbours,
/// constrained at the first or last slot, in lexicographic order.
fn alternating(alphabet: &[Gen], len: usize, first: Option<Gen>, last: Option<Gen>) -> Vec<Vec<Gen>> {
    let mut out = vec![Vec::new()];
    for i in 0..len {
        let mut next = Vec::new();
        for seq in &out {
            for &c in alphabet {
                if seq.last() == Some(&c) || (i == 0 && first.is_some_and(|f| f != c)) {
                    continue;
                }
                if i + 1 == len && last.is_some_and(|l| l != c) {
                    continue;
                }
                let mut s = seq.clone();
                s.push(c);
                next.push(s);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn rst_words(r: Gen, s: Gen, t: Gen, d: usize, head: bool) -> Vec<Vec<Gen>> {
    let slots = (d - 1) / 2;
    let mut out = Vec::with_capacity(1 << slots);
    for bits in 0..1usize << slots {
        let a = |i: usize| if bits >> (slots - 1 - i) & 1 == 0 { r } else { t };
        let seq = if head {
            let mut v = Vec::with_capacity(d);
            for i in 0..slots {
                v.push(a(i));
                v.push(s);
            }
            v.push(r);
            v
        } else {
            let mut v = vec![t];
            for i in 0..slots {
                v.push(s);
                v.push(a(i));
            }
            v
        };
        out.push(seq);
    }
    out.sort();
    out
}

/// Builds the family `{w·φ(w)}` with `φ` the lexicographic pairing.
pub fn diagonal_family(graph: &CoxeterGraph, d: usize, variant: FamilyVariant) -> Result<DiagonalFamily> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let (heads, tails) = match variant {
        FamilyVariant::Free3 => {
            let (s, t, r) =
                free_triple(graph).ok_or_else(|| Error::Precondition("needs three pairwise free generators".into()))?;
            let alphabet = [s, t, r];
            (alternating(&alphabet, d, None, Some(s)), alternating(&alphabet, d, Some(t), None))
        }
        FamilyVariant::Rst => {
            if d.is_multiple_of(2) {
                return Err(Error::Precondition("the r,s,t family needs odd d".into()));
            }
            let (r, s, t) = rst_triple(graph)
                .ok_or_else(|| Error::Precondition("needs r, t commuting and s free with both".into()))?;
            (rst_words(r, s, t, d, true), rst_words(r, s, t, d, false))
        }
    };
    let mut words = Vec::with_capacity(heads.len());
    let mut halves = Vec::with_capacity(heads.len());
    for (a, b) in heads.iter().zip(&tails) {
        let mut letters = a.clone();
        letters.extend_from_slice(b);
        let w = reduce(graph, &letters)?;
        if w.len() != 2 * d {
            return Err(Error::Inconsistent("family word is not reduced".into()));
        }
        words.push(w);
        halves.push((reduce(graph, a)?, reduce(graph, b)?));
    }
    Ok(DiagonalFamily { d, words, halves })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossoverReport {
    pub variant: FamilyVariant,
    pub p: f64,
    pub s_count: usize,
    pub d_star: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// `log₂` of both sides of the injectivity bound at block length `d`:
/// the family size against the Khintchine estimate.
pub fn crossover_log_sides(p: f64, s_count: usize, variant: FamilyVariant, d: usize) -> (f64, f64) {
    let d_f = d as f64;
    let growth = libm::log2(1.0 + (d_f + 1.0) * p);
    match variant {
        FamilyVariant::Free3 => {
            let blocks = (2.0 * d_f + 1.0) + 2.0 * d_f * s_count as f64;
            (d_f - 1.0, (d_f - 1.0) / 2.0 + growth + libm::log2(blocks))
        }
        FamilyVariant::Rst => {
            let family = (d_f - 1.0) / 2.0;
            let blocks = index_set_size(&crate::catalog::path_complement(), 2 * d) as f64;
            (family, family / 2.0 + growth + libm::log2(blocks))
        }
    }
}

/// Whether the injectivity bound still holds at `d`.
pub fn crossover_holds(p: f64, s_count: usize, variant: FamilyVariant, d: usize) -> bool {
    let (lhs, rhs) = crossover_log_sides(p, s_count, variant, d);
    lhs <= rhs
}

/// Smallest admissible `d` at which the injectivity bound fails.
pub fn crossover(p: f64, s_count: usize, variant: FamilyVariant) -> Result<CrossoverReport> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::Precondition("p must be finite and nonnegative".into()));
    }
    if s_count < 3 {
        return Err(Error::Precondition("needs at least three generators".into()));
    }
    let step = match variant {
        FamilyVariant::Free3 => 1,
        FamilyVariant::Rst => 2,
    };
    let mut d = 1;
    while crossover_holds(p, s_count, variant, d) {
        d += step;
    }
    let (lhs, rhs) = crossover_log_sides(p, s_count, variant, d);
    Ok(CrossoverReport { variant, p, s_count, d_star: d, lhs: libm::exp2(lhs), rhs: libm::exp2(rhs) })
}

/// A block `M_{row,col}` of a block matrix, itself a small dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Block<K> {
    pub row: K,
    pub col: K,
    pub matrix: Vec<Vec<f64>>,
}

fn block_shape<K>(blocks: &[Block<K>]) -> Result<(usize, usize)> {
    let first = blocks.first().ok_or_else(|| Error::Precondition("no blocks".into()))?;
    let shape = (first.matrix.len(), first.matrix.first().map_or(0, Vec::len));
    for b in blocks {
        if b.matrix.len() != shape.0 || b.matrix.iter().any(|r| r.len() != shape.1) {
            return Err(Error::Precondition("blocks must share one shape".into()));
        }
    }
    Ok(shape)
}

/// `√‖Σ M_{ij} M_{ij}^*‖`, valid when each column holds a single nonzero block.
///
/// Rows may hold many blocks. With one column shared by two rows the bound
/// can fail: `E₁₁` over `E₂₁` has norm `√2` while `E₁₁E₁₁^* + E₂₁E₂₁^* = 1`.
pub fn structured_norm_bound<K: Ord + Clone>(blocks: &[Block<K>], tol: f64) -> Result<f64> {
    let (h, w) = block_shape(blocks)?;
    let mut seen: BTreeMap<K, K> = BTreeMap::new();
    for b in blocks {
        match seen.get(&b.col) {
            Some(r) if *r != b.row => return Err(Error::Precondition("a column holds blocks in two rows".into())),
            Some(_) => return Err(Error::Precondition("repeated block position".into())),
            None => {
                seen.insert(b.col.clone(), b.row.clone());
            }
        }
    }
    let mut sum = vec![vec![0.0; h]; h];
    for b in blocks {
        for (row, bi) in sum.iter_mut().zip(&b.matrix) {
            for (cell, bj) in row.iter_mut().zip(&b.matrix) {
                *cell += bi.iter().zip(bj).take(w).map(|(x, y)| x * y).sum::<f64>();
            }
        }
    }
    Ok(libm::sqrt(dense_norm(&sum, tol)?))
}

/// The full matrix with rows and columns grouped by key.
pub fn assemble_blocks<K: Ord + Clone>(blocks: &[Block<K>]) -> Result<Vec<Vec<f64>>> {
    let (h, w) = block_shape(blocks)?;
    let index = |keys: &mut Vec<K>| {
        keys.sort();
        keys.dedup();
    };
    let mut rows: Vec<K> = blocks.iter().map(|b| b.row.clone()).collect();
    let mut cols: Vec<K> = blocks.iter().map(|b| b.col.clone()).collect();
    index(&mut rows);
    index(&mut cols);
    let mut out = vec![vec![0.0; cols.len() * w]; rows.len() * h];
    for b in blocks {
        let r0 = rows.binary_search(&b.row).expect("indexed") * h;
        let c0 = cols.binary_search(&b.col).expect("indexed") * w;
        for i in 0..h {
            for j in 0..w {
                out[r0 + i][c0 + j] += b.matrix[i][j];
            }
        }
    }
    Ok(out)
}
