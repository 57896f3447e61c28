//! The dictionary between words and edges of the complete n-partite
//! hypergraph, plus the degree/codegree statistics of the implicit auxiliary
//! hypergraphs that the matching constructors operate on.
//!
//! A word maps to the partite edge `π(x) = {(i, x_i) : x_i ≠ 0}`. Two words
//! of weight `w` satisfy the distance identity
//! `d(x,y) = 2w − |π(x)∩π(y)| − |supp(x)∩supp(y)|`, so minimum-distance
//! constraints become intersection constraints on edges. The auxiliary
//! hypergraphs themselves are never materialized — their vertex sets grow
//! like `C(nq, 2t)` — matchings are represented by codeword lists and
//! disjointness is decided by the pairwise predicates [`cwc_compatible`] and
//! [`ccc_compatible`].

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::bounds::{self, BigCount};
use crate::code::{CodeSpec, Composition, Constraint, Word};
use crate::ratio;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HyperError {
    #[error("partiteness violated: coordinate {coord} appears more than once")]
    RepeatedCoordinate { coord: u32 },
    #[error("pair ({coord},{symbol}) out of range for q={q}, n={n}")]
    PairOutOfRange { coord: u32, symbol: u8, q: u8, n: usize },
    #[error("words have different shapes or weights")]
    ShapeMismatch,
    #[error("enumeration infeasible: {0}")]
    Infeasible(String),
    #[error("empirical enumeration needs ~{needed} operations, budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
}

/// An edge of the complete n-partite hypergraph: a set of
/// `(coordinate, symbol)` pairs with 1-based coordinates, at most one pair
/// per coordinate, and symbols drawn from `{1,…,q−1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartiteEdge {
    q: u8,
    n: usize,
    /// Sorted by coordinate.
    pairs: Vec<(u32, u8)>,
}

impl PartiteEdge {
    /// Pairs may arrive in any order; they are sorted and checked for
    /// partiteness and range.
    pub fn new(q: u8, n: usize, mut pairs: Vec<(u32, u8)>) -> Result<Self, HyperError> {
        pairs.sort_unstable();
        for window in pairs.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(HyperError::RepeatedCoordinate { coord: window[0].0 });
            }
        }
        for &(coord, symbol) in &pairs {
            if coord == 0 || coord as usize > n || symbol == 0 || symbol >= q {
                return Err(HyperError::PairOutOfRange { coord, symbol, q, n });
            }
        }
        Ok(PartiteEdge { q, n, pairs })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u8)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `π(x)`: the partite edge recording the nonzero coordinates of `x`.
pub fn pi(x: &Word) -> PartiteEdge {
    let pairs = x
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(i, &s)| (i as u32 + 1, s))
        .collect();
    PartiteEdge {
        q: x.q(),
        n: x.n(),
        pairs,
    }
}

/// `π⁻¹(e)`: the unique word whose nonzero coordinates are exactly `e`.
pub fn pi_inv(e: &PartiteEdge) -> Word {
    let mut symbols = vec![0u8; e.n];
    for &(coord, symbol) in &e.pairs {
        symbols[coord as usize - 1] = symbol;
    }
    Word::new(e.q, symbols).expect("edge invariants imply a well-formed word")
}

/// The support of a pair set: the 1-based coordinates it touches.
pub fn edge_support(e: &PartiteEdge) -> Vec<u32> {
    e.pairs.iter().map(|&(coord, _)| coord).collect()
}

/// Shared-pair and shared-support counts of two words in a single pass:
/// `(|π(x)∩π(y)|, |supp(x)∩supp(y)|)`.
fn shared_counts(x: &Word, y: &Word) -> (u32, u32) {
    debug_assert_eq!(x.n(), y.n());
    let mut pairs = 0u32;
    let mut support = 0u32;
    for (&a, &b) in x.symbols().iter().zip(y.symbols()) {
        if a != 0 && b != 0 {
            support += 1;
            if a == b {
                pairs += 1;
            }
        }
    }
    (pairs, support)
}

/// Evaluates both sides of the distance identity
/// `d(x,y) = 2w − |π(x)∩π(y)| − |supp(x)∩supp(y)|` and returns
/// `(lhs, rhs)`; the contract is that they are equal. Errors if the words
/// have different shapes or weights.
pub fn distance_identity(x: &Word, y: &Word) -> Result<(u32, u32), HyperError> {
    if x.q() != y.q() || x.n() != y.n() || x.weight() != y.weight() {
        return Err(HyperError::ShapeMismatch);
    }
    let w = x.weight();
    let lhs = crate::code::hamming_distance(x, y).expect("shapes checked above");
    let (pairs, support) = shared_counts(x, y);
    let rhs = 2 * w - pairs - support;
    Ok((lhs, rhs))
}

/// Matching-disjointness predicate for weight-`w` words at threshold `t`:
/// `|π(x)∩π(y)| + |supp(x)∩supp(y)| ≤ 2t − 1`. By the distance identity this
/// holds exactly when `d(x,y) ≥ 2w − 2t + 1`.
pub fn cwc_compatible(x: &Word, y: &Word, t: u32) -> bool {
    let (pairs, support) = shared_counts(x, y);
    pairs + support <= 2 * t - 1
}

/// Conflict-free-matching predicate for composition words at threshold `t`:
/// `|π(x)∩π(y)| ≤ t − 1` and `|supp(x)∩supp(y)| ≤ t`. Strictly stronger than
/// the distance-`d` condition (it also forbids some pairs at distance
/// exactly `d` and above); the verifier uses the true distance instead.
pub fn ccc_compatible(x: &Word, y: &Word, t: u32) -> bool {
    let (pairs, support) = shared_counts(x, y);
    pairs <= t - 1 && support <= t
}

/// Compatibility predicate matching the spec's constraint kind.
pub fn compatible(spec: &CodeSpec, x: &Word, y: &Word) -> bool {
    match spec.constraint() {
        Constraint::Weight(_) => cwc_compatible(x, y, spec.t()),
        Constraint::Composition(_) => ccc_compatible(x, y, spec.t()),
    }
}

/// Number of words the spec's enumeration will produce:
/// `C(n,w)(q−1)^w` for weight specs, `C(n; n−w,w_1,…,w_{q−1})` for
/// composition specs.
pub fn word_space_size(spec: &CodeSpec) -> BigCount {
    let n = spec.n() as u64;
    let w = u64::from(spec.w());
    match spec.constraint() {
        Constraint::Weight(_) => {
            bounds::binom(n, w).expect("w <= n by spec invariant")
                * BigUint::from(u32::from(spec.q()) - 1).pow(spec.w())
        }
        Constraint::Composition(c) => {
            let mut parts: Vec<u64> = Vec::with_capacity(c.num_parts() + 1);
            parts.push(n - w);
            parts.extend(c.counts().iter().map(|&v| u64::from(v)));
            bounds::multinom(n, &parts).expect("parts sum to n")
        }
    }
}

// ---------------------------------------------------------------------------
// Word enumeration
// ---------------------------------------------------------------------------

/// Deterministic enumeration of a word space.
///
/// Order contract (stable across releases): supports are visited in
/// colexicographic order; on each support, symbol assignments are visited in
/// lexicographic order — for weight specs this is base-(q−1) counting over
/// `{1,…,q−1}^w`, for composition specs the multiset permutations of the
/// symbol multiset in lexicographic order.
pub struct WordEnumerator {
    q: u8,
    n: usize,
    kind: EnumKind,
    /// 0-based ascending support coordinates.
    support: Vec<usize>,
    /// Symbol at each support position.
    symbols: Vec<u8>,
    done: bool,
}

enum EnumKind {
    Weight,
    Composition(Vec<u8>),
}

/// All words of weight `w` over `Σ_q^n`.
pub fn enumerate_weight_words(q: u8, n: usize, w: u32) -> Result<WordEnumerator, HyperError> {
    if w as usize > n {
        return Err(HyperError::Infeasible(format!("w={w} exceeds n={n}")));
    }
    if !(2..=crate::code::MAX_Q).contains(&q) {
        return Err(HyperError::Infeasible(format!("q={q} out of range")));
    }
    Ok(WordEnumerator {
        q,
        n,
        kind: EnumKind::Weight,
        support: (0..w as usize).collect(),
        symbols: vec![1; w as usize],
        done: false,
    })
}

/// All words with composition `w̄` over `Σ_q^n`.
pub fn enumerate_composition_words(
    q: u8,
    n: usize,
    wbar: &Composition,
) -> Result<WordEnumerator, HyperError> {
    if !(2..=crate::code::MAX_Q).contains(&q) {
        return Err(HyperError::Infeasible(format!("q={q} out of range")));
    }
    if wbar.num_parts() != usize::from(q) - 1 {
        return Err(HyperError::Infeasible(format!(
            "composition has {} parts, expected {}",
            wbar.num_parts(),
            usize::from(q) - 1
        )));
    }
    let w = wbar.weight();
    if w as usize > n {
        return Err(HyperError::Infeasible(format!("w={w} exceeds n={n}")));
    }
    // Sorted-ascending multiset is the lexicographically first arrangement.
    let mut multiset = Vec::with_capacity(w as usize);
    for (j, &count) in wbar.counts().iter().enumerate() {
        multiset.extend(std::iter::repeat_n(j as u8 + 1, count as usize));
    }
    Ok(WordEnumerator {
        q,
        n,
        kind: EnumKind::Composition(multiset.clone()),
        support: (0..w as usize).collect(),
        symbols: multiset,
        done: false,
    })
}

/// Enumeration in the spec's word space, in the documented stable order.
pub fn enumerate_words(spec: &CodeSpec) -> WordEnumerator {
    match spec.constraint() {
        Constraint::Weight(w) => enumerate_weight_words(spec.q(), spec.n(), *w)
            .expect("spec invariants imply feasibility"),
        Constraint::Composition(c) => enumerate_composition_words(spec.q(), spec.n(), c)
            .expect("spec invariants imply feasibility"),
    }
}

impl WordEnumerator {
    fn current_word(&self) -> Word {
        let mut symbols = vec![0u8; self.n];
        for (&pos, &sym) in self.support.iter().zip(&self.symbols) {
            symbols[pos] = sym;
        }
        Word::new(self.q, symbols).expect("enumerator state is well-formed")
    }

    /// Advances the symbol assignment; returns false when it wraps around.
    fn advance_symbols(&mut self) -> bool {
        match &self.kind {
            EnumKind::Weight => {
                // Base-(q−1) odometer, least significant digit last.
                for i in (0..self.symbols.len()).rev() {
                    if self.symbols[i] < self.q - 1 {
                        self.symbols[i] += 1;
                        for s in &mut self.symbols[i + 1..] {
                            *s = 1;
                        }
                        return true;
                    }
                }
                for s in &mut self.symbols {
                    *s = 1;
                }
                false
            }
            EnumKind::Composition(initial) => {
                if next_permutation(&mut self.symbols) {
                    true
                } else {
                    self.symbols.copy_from_slice(initial);
                    false
                }
            }
        }
    }

    /// Advances the support in colexicographic order; false when it wraps.
    fn advance_support(&mut self) -> bool {
        let w = self.support.len();
        for i in 0..w {
            let ceiling = if i + 1 < w {
                self.support[i + 1]
            } else {
                self.n
            };
            if self.support[i] + 1 < ceiling {
                self.support[i] += 1;
                for (j, slot) in self.support[..i].iter_mut().enumerate() {
                    *slot = j;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let word = self.current_word();
        if self.symbols.is_empty() {
            // Weight zero: the single zero word.
            self.done = true;
        } else if !self.advance_symbols() && !self.advance_support() {
            self.done = true;
        }
        Some(word)
    }
}

/// In-place next lexicographic permutation; false if already the last.
fn next_permutation(values: &mut [u8]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Degree statistics
// ---------------------------------------------------------------------------

/// How [`degree_stats`] obtains its numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StatsMode {
    /// Only the closed-form maximum degree and the codegree envelope.
    ClosedForm,
    /// Exhaustive enumeration of the auxiliary vertex space (small instances).
    Empirical,
}

/// A vertex of the auxiliary hypergraph: a set of partite pairs plus, for
/// weight specs, a set of bare coordinates. Sizes: `|pairs| + |bare| = 2t`
/// for weight specs, `|pairs| = t` and no bare part for composition specs.
/// Coordinates are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuxVertex {
    pub pairs: Vec<(u32, u8)>,
    pub bare: Vec<u32>,
}

/// Degree and codegree statistics of the auxiliary hypergraph, with the
/// closed-form reference values they are compared against.
#[derive(Clone, Debug)]
pub struct DegreeStats {
    pub spec: CodeSpec,
    pub mode: StatsMode,
    pub t: u32,
    /// Closed-form maximum degree: `Δ = C(n−t,w−t)(q−1)^{w−t}` for weight
    /// specs, `D = C(n−t,w−t)·f(w̄,w−t)` for composition specs.
    pub closed_form: BigCount,
    /// Codegree upper envelope: `C(n−t−1,w−t−1)(q−1)^w` resp.
    /// `C(n−t−1,w−t−1)·C(w; w_1,…,w_{q−1})`; zero when `t = w`.
    pub codegree_envelope: BigCount,
    /// Exhaustive maximum degree (empirical mode only).
    pub max_degree: Option<BigCount>,
    /// A vertex attaining the maximum degree (empirical mode only).
    pub max_degree_witness: Option<AuxVertex>,
    /// Exhaustive maximum codegree (empirical mode only).
    pub max_codegree: Option<BigCount>,
    /// `α(f_c) = cod/Δ` of the constant fractional matching `f_c ≡ 1/Δ`,
    /// from the empirical values (empirical mode only).
    pub alpha_fc: Option<BigRational>,
    /// Exhaustive maximum conflict degree `Δ₂(ℱ)` of the forbidden-pair
    /// configuration hypergraph (empirical mode, composition specs only).
    pub conflict_degree_max: Option<BigCount>,
}

/// Closed-form maximum degree of the auxiliary hypergraph.
pub fn closed_form_degree(spec: &CodeSpec) -> BigCount {
    let n = spec.n() as u64;
    let w = u64::from(spec.w());
    let t = u64::from(spec.t());
    match spec.constraint() {
        Constraint::Weight(_) => {
            bounds::choose(n - t, w - t) * BigUint::from(u32::from(spec.q()) - 1).pow(spec.w() - spec.t())
        }
        Constraint::Composition(c) => {
            let (f, _) = bounds::f_max(c, spec.w() - spec.t()).expect("w−t <= w");
            bounds::choose(n - t, w - t) * f
        }
    }
}

/// Closed-form codegree envelope of the auxiliary hypergraph.
pub fn codegree_envelope(spec: &CodeSpec) -> BigCount {
    let n = spec.n() as u64;
    let w = u64::from(spec.w());
    let t = u64::from(spec.t());
    if t == w {
        return BigCount::zero();
    }
    match spec.constraint() {
        Constraint::Weight(_) => {
            bounds::choose(n - t - 1, w - t - 1) * BigUint::from(u32::from(spec.q()) - 1).pow(spec.w())
        }
        Constraint::Composition(c) => {
            let parts: Vec<u64> = c.counts().iter().map(|&v| u64::from(v)).collect();
            bounds::choose(n - t - 1, w - t - 1) * bounds::multinom(w, &parts).expect("w̄ sums to w")
        }
    }
}

/// Envelope for the maximum conflict degree `Δ₂(ℱ)` of a composition spec:
/// `Σ_{i=t+1}^{w} C(w,i)·C(n−w,w−i)·C(w; w_1,…,w_{q−1})`. Empty sum (zero)
/// when `t = w`.
pub fn conflict_degree_envelope(spec: &CodeSpec) -> Result<BigCount, HyperError> {
    let Some(c) = spec.composition() else {
        return Err(HyperError::Infeasible(
            "conflict degrees are defined for composition specs".into(),
        ));
    };
    let n = spec.n() as u64;
    let w = u64::from(spec.w());
    let t = u64::from(spec.t());
    let parts: Vec<u64> = c.counts().iter().map(|&v| u64::from(v)).collect();
    let arrangements = bounds::multinom(w, &parts).expect("w̄ sums to w");
    let mut total = BigCount::zero();
    for i in (t + 1)..=w {
        total += bounds::choose(w, i) * bounds::choose(n - w, w - i) * &arrangements;
    }
    Ok(total)
}

/// Computes degree statistics. Closed-form mode is cheap at any size;
/// empirical mode enumerates, for every word, all auxiliary subsets of its
/// edge (and all subset pairs for codegrees), so it needs roughly
/// `|J| · C(2w,2t)²` operations and is gated by `budget`.
pub fn degree_stats(
    spec: &CodeSpec,
    mode: StatsMode,
    budget: u64,
) -> Result<DegreeStats, HyperError> {
    let mut stats = DegreeStats {
        spec: spec.clone(),
        mode,
        t: spec.t(),
        closed_form: closed_form_degree(spec),
        codegree_envelope: codegree_envelope(spec),
        max_degree: None,
        max_degree_witness: None,
        max_codegree: None,
        alpha_fc: None,
        conflict_degree_max: None,
    };
    if mode == StatsMode::ClosedForm {
        return Ok(stats);
    }

    let is_ccc = spec.is_composition();
    let w = spec.w();
    let t = spec.t();
    let (edge_items, subset_size) = if is_ccc {
        (w, t)
    } else {
        (2 * w, 2 * t)
    };
    let subsets_per_word = bounds::choose(u64::from(edge_items), u64::from(subset_size));
    let space = word_space_size(spec);
    let pair_work = &subsets_per_word * (&subsets_per_word + 1u32) / 2u32;
    let mut needed = &space * (&subsets_per_word + pair_work);
    if is_ccc {
        // Conflict degrees need the all-pairs word scan as well.
        needed += &space * &space;
    }
    if needed > BigUint::from(budget) {
        return Err(HyperError::BudgetExceeded { needed, budget });
    }

    let words: Vec<Word> = enumerate_words(spec).collect();
    let q_items = u32::from(spec.q()) - 1;
    let pair_code_limit = spec.n() as u32 * q_items;

    let mut degrees: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut codegrees: HashMap<(Vec<u32>, Vec<u32>), u64> = HashMap::new();
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for word in &words {
        // Encode the word's auxiliary edge as sorted item codes: pair
        // (i, a) ↦ i·(q−1) + (a−1), bare coordinate i ↦ n(q−1) + i.
        let mut items: Vec<u32> = Vec::with_capacity(edge_items as usize);
        for (i, &s) in word.symbols().iter().enumerate() {
            if s != 0 {
                items.push(i as u32 * q_items + u32::from(s) - 1);
            }
        }
        if !is_ccc {
            for (i, &s) in word.symbols().iter().enumerate() {
                if s != 0 {
                    items.push(pair_code_limit + i as u32);
                }
            }
        }
        items.sort_unstable();

        subsets.clear();
        for_each_combination(items.len(), subset_size as usize, |picked| {
            subsets.push(picked.iter().map(|&i| items[i]).collect());
        });
        for subset in &subsets {
            *degrees.entry(subset.clone()).or_insert(0) += 1;
        }
        for a in 0..subsets.len() {
            for b in (a + 1)..subsets.len() {
                let key = (subsets[a].clone(), subsets[b].clone());
                *codegrees.entry(key).or_insert(0) += 1;
            }
        }
    }

    let (best_key, best_degree) = degrees
        .iter()
        .max_by(|(ka, va), (kb, vb)| va.cmp(vb).then_with(|| kb.cmp(ka)))
        .map(|(k, v)| (k.clone(), *v))
        .expect("at least one word exists for a feasible spec");
    let max_codegree = codegrees.values().copied().max().unwrap_or(0);

    stats.max_degree = Some(BigUint::from(best_degree));
    stats.max_degree_witness = Some(decode_aux_vertex(&best_key, q_items, pair_code_limit));
    stats.max_codegree = Some(BigUint::from(max_codegree));
    stats.alpha_fc = Some(ratio::ratio_of(
        &BigUint::from(max_codegree),
        &BigUint::from(best_degree),
    ));

    if is_ccc {
        let mut worst = 0u64;
        for (i, x) in words.iter().enumerate() {
            let mut conflicts = 0u64;
            for (j, y) in words.iter().enumerate() {
                if i != j {
                    let (_, support) = shared_counts(x, y);
                    if support > t {
                        conflicts += 1;
                    }
                }
            }
            worst = worst.max(conflicts);
        }
        stats.conflict_degree_max = Some(BigUint::from(worst));
    }

    Ok(stats)
}

fn decode_aux_vertex(codes: &[u32], q_items: u32, pair_code_limit: u32) -> AuxVertex {
    let mut pairs = Vec::new();
    let mut bare = Vec::new();
    for &code in codes {
        if code < pair_code_limit {
            pairs.push((code / q_items + 1, (code % q_items) as u8 + 1));
        } else {
            bare.push(code - pair_code_limit + 1);
        }
    }
    AuxVertex { pairs, bare }
}

/// Calls `visit` with every `k`-subset of `0..m` (ascending index slices).
fn for_each_combination(m: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 <= m - (k - i) {
                idx[i] += 1;
                for j in (i + 1)..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            return;
        }
    }
}
