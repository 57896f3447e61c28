//! Randomized construction of large codes by greedy and nibble-style
//! matching on the implicit auxiliary hypergraphs.
//!
//! Acceptance of a candidate word is exactly pairwise compatibility with
//! everything accepted so far ([`hyper::cwc_compatible`] /
//! [`hyper::ccc_compatible`]), so every emitted code is distance-valid by
//! construction. Conflict checks go through a per-coordinate inverted index:
//! two words can only conflict when their supports intersect, so a candidate
//! is tested only against accepted words sharing at least one coordinate.
//!
//! Randomness contract: all draws come from `ChaCha12`, a seedable generator
//! with a documented cross-platform stable stream. Stream 0 drives candidate
//! ordering and sampling; nibble round `r` uses stream `r+1`. Identical
//! `(spec, config)` therefore reproduce byte-identical codes anywhere.

use std::collections::HashSet;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bounds::{self, BigCount};
use crate::code::{Code, CodeSpec, Constraint, Word};
use crate::hyper;
use crate::ratio;

pub const DEFAULT_BITE_FRACTION: f64 = 0.1;
pub const DEFAULT_MAX_ROUNDS: u32 = 200;
pub const DEFAULT_SAMPLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum MatchError {
    #[error("even d unsupported by constructor")]
    EvenDistance,
    #[error("bite fraction {0} outside (0, 1]")]
    InvalidBiteFraction(f64),
    #[error("conflict diagnostics are defined for composition specs")]
    NotComposition,
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    Greedy,
    Nibble,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Nibble => "nibble",
        }
    }
}

/// Construction parameters. Identical `(spec, config)` pairs produce
/// identical codes — every field participates in that contract.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Per-round inclusion pressure for nibble; each surviving word enters a
    /// bite with probability `bite_fraction / Δ̂`.
    pub bite_fraction: f64,
    /// Maximum nibble rounds.
    pub max_rounds: u32,
    /// Run a greedy maximality pass after the nibble rounds.
    pub completion: bool,
    /// Above this word-space size the constructors switch from full
    /// enumeration to rejection sampling, and this caps total draws.
    pub sample_budget: u64,
}

impl MatchConfig {
    pub fn greedy(seed: u64) -> Self {
        MatchConfig {
            algorithm: Algorithm::Greedy,
            seed,
            bite_fraction: DEFAULT_BITE_FRACTION,
            max_rounds: DEFAULT_MAX_ROUNDS,
            completion: true,
            sample_budget: DEFAULT_SAMPLE_BUDGET,
        }
    }

    pub fn nibble(seed: u64) -> Self {
        MatchConfig {
            algorithm: Algorithm::Nibble,
            ..Self::greedy(seed)
        }
    }

    fn validate(&self) -> Result<(), MatchError> {
        if !(self.bite_fraction > 0.0 && self.bite_fraction <= 1.0) {
            return Err(MatchError::InvalidBiteFraction(self.bite_fraction));
        }
        Ok(())
    }
}

/// Outcome bookkeeping for one construction run. `wall_time_ms` is volatile
/// and never serialized into result files.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub spec: CodeSpec,
    pub config: MatchConfig,
    pub code_size: usize,
    pub bound: BigCount,
    pub ratio: BigRational,
    pub maximal: bool,
    pub wall_time_ms: u128,
    pub rounds_executed: u32,
    pub candidates_examined: u64,
}

// ---------------------------------------------------------------------------
// Inverted conflict index
// ---------------------------------------------------------------------------

struct ConflictIndex {
    spec: CodeSpec,
    t: u32,
    accepted: Vec<Word>,
    by_coord: Vec<Vec<u32>>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl ConflictIndex {
    fn new(spec: &CodeSpec) -> Self {
        ConflictIndex {
            spec: spec.clone(),
            t: spec.t(),
            accepted: Vec::new(),
            by_coord: vec![Vec::new(); spec.n()],
            stamp: Vec::new(),
            epoch: 0,
        }
    }

    fn compatible(&self, a: &Word, b: &Word) -> bool {
        match self.spec.constraint() {
            Constraint::Weight(_) => hyper::cwc_compatible(a, b, self.t),
            Constraint::Composition(_) => hyper::ccc_compatible(a, b, self.t),
        }
    }

    /// Tests the candidate against accepted words sharing a support
    /// coordinate; each such word is tested once per call (stamp dedup).
    fn conflicts(&mut self, candidate: &Word) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        for (i, &s) in candidate.symbols().iter().enumerate() {
            if s == 0 {
                continue;
            }
            for &id in &self.by_coord[i] {
                let id = id as usize;
                if self.stamp[id] != self.epoch {
                    self.stamp[id] = self.epoch;
                    if !self.compatible(candidate, &self.accepted[id]) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn insert(&mut self, word: Word) {
        let id = self.accepted.len() as u32;
        for (i, &s) in word.symbols().iter().enumerate() {
            if s != 0 {
                self.by_coord[i].push(id);
            }
        }
        self.stamp.push(0);
        self.accepted.push(word);
    }

    fn into_words(self) -> Vec<Word> {
        self.accepted
    }
}

// ---------------------------------------------------------------------------
// Uniform sampling (large-n regime)
// ---------------------------------------------------------------------------

/// Uniform random word of the spec's space. Floyd's algorithm for the
/// support keeps the draw count independent of `n`.
fn sample_uniform(spec: &CodeSpec, rng: &mut ChaCha12Rng) -> Word {
    let n = spec.n();
    let w = spec.w() as usize;
    let mut chosen: HashSet<usize> = HashSet::with_capacity(w);
    for j in (n - w)..n {
        let pick = rng.random_range(0..=j);
        if !chosen.insert(pick) {
            chosen.insert(j);
        }
    }
    let mut support: Vec<usize> = chosen.into_iter().collect();
    support.sort_unstable();

    let mut symbols = vec![0u8; n];
    match spec.constraint() {
        Constraint::Weight(_) => {
            for &i in &support {
                symbols[i] = rng.random_range(1..spec.q());
            }
        }
        Constraint::Composition(c) => {
            let mut multiset: Vec<u8> = Vec::with_capacity(w);
            for (j, &count) in c.counts().iter().enumerate() {
                multiset.extend(std::iter::repeat_n(j as u8 + 1, count as usize));
            }
            multiset.shuffle(rng);
            for (&i, &sym) in support.iter().zip(&multiset) {
                symbols[i] = sym;
            }
        }
    }
    Word::new(spec.q(), symbols).expect("sampled word is well-formed")
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn space_is_enumerable(spec: &CodeSpec, budget: u64) -> bool {
    hyper::word_space_size(spec) <= BigUint::from(budget)
}

fn precheck(spec: &CodeSpec, config: &MatchConfig) -> Result<(), MatchError> {
    config.validate()?;
    if spec.d() % 2 == 0 {
        return Err(MatchError::EvenDistance);
    }
    Ok(())
}

fn finish(
    spec: &CodeSpec,
    config: &MatchConfig,
    index: ConflictIndex,
    maximal: bool,
    rounds_executed: u32,
    candidates_examined: u64,
    started: Instant,
) -> Result<(Code, RunReport), MatchError> {
    let bound = bounds::upper_bound(spec)?.bound;
    let words = index.into_words();
    let code_size = words.len();
    let code = Code::new(spec.clone(), words).expect("accepted words are distinct");
    let report = RunReport {
        spec: spec.clone(),
        config: config.clone(),
        code_size,
        bound: bound.clone(),
        ratio: ratio::ratio_of(&BigUint::from(code_size as u64), &bound),
        maximal,
        wall_time_ms: started.elapsed().as_millis(),
        rounds_executed,
        candidates_examined,
    };
    Ok((code, report))
}

// ---------------------------------------------------------------------------
// Greedy
// ---------------------------------------------------------------------------

/// Seeded random-order greedy: scans candidates and accepts every word
/// compatible with all previously accepted ones. When the word space fits
/// in `sample_budget` the candidate stream is a full random permutation and
/// the output is maximal in the whole space; otherwise candidates are
/// rejection-sampled uniform words (deduplicated) until the budget is spent.
pub fn greedy_construct(
    spec: &CodeSpec,
    config: &MatchConfig,
) -> Result<(Code, RunReport), MatchError> {
    precheck(spec, config)?;
    let started = Instant::now();
    let mut rng = stream_rng(config.seed, 0);
    let mut index = ConflictIndex::new(spec);
    let mut examined = 0u64;
    let maximal;

    if space_is_enumerable(spec, config.sample_budget) {
        let mut words: Vec<Word> = hyper::enumerate_words(spec).collect();
        words.shuffle(&mut rng);
        for word in words {
            examined += 1;
            if !index.conflicts(&word) {
                index.insert(word);
            }
        }
        maximal = true;
    } else {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut draws = 0u64;
        while draws < config.sample_budget {
            let word = sample_uniform(spec, &mut rng);
            draws += 1;
            if !seen.insert(word.clone()) {
                continue;
            }
            examined += 1;
            if !index.conflicts(&word) {
                index.insert(word);
            }
        }
        maximal = false;
    }
    finish(spec, config, index, maximal, 0, examined, started)
}

// ---------------------------------------------------------------------------
// Nibble
// ---------------------------------------------------------------------------

/// Semi-random nibble: each round takes an independent random bite of the
/// surviving words (inclusion probability `bite_fraction/Δ̂` with `Δ̂` the
/// closed-form maximum degree), discards bite members conflicting with each
/// other or with accepted words, and accepts the survivors. Words killed by
/// earlier acceptances are removed lazily when drawn. Stops after
/// `max_rounds` or two consecutive empty rounds; an optional greedy
/// completion pass makes the result maximal.
pub fn nibble_construct(
    spec: &CodeSpec,
    config: &MatchConfig,
) -> Result<(Code, RunReport), MatchError> {
    precheck(spec, config)?;
    let started = Instant::now();
    let delta_hat = hyper::closed_form_degree(spec)
        .to_f64()
        .unwrap_or(f64::MAX);
    let inclusion_p = (config.bite_fraction / delta_hat).min(1.0);
    let mut index = ConflictIndex::new(spec);
    let mut examined = 0u64;
    let mut rounds_executed = 0u32;
    let mut stalled_rounds = 0u32;

    if space_is_enumerable(spec, config.sample_budget) {
        let words: Vec<Word> = hyper::enumerate_words(spec).collect();
        let mut alive = vec![true; words.len()];

        for round in 0..config.max_rounds {
            let mut rng = stream_rng(config.seed, u64::from(round) + 1);
            let mut bite: Vec<usize> = Vec::new();
            for (id, word) in words.iter().enumerate() {
                if !alive[id] || !rng.random_bool(inclusion_p) {
                    continue;
                }
                examined += 1;
                if index.conflicts(word) {
                    alive[id] = false;
                } else {
                    bite.push(id);
                }
            }
            let mut accepted_now = 0u32;
            for &a in &bite {
                let clean = bite
                    .iter()
                    .all(|&b| b == a || index.compatible(&words[a], &words[b]));
                if clean && !index.conflicts(&words[a]) {
                    index.insert(words[a].clone());
                    alive[a] = false;
                    accepted_now += 1;
                }
            }
            rounds_executed = round + 1;
            if accepted_now == 0 {
                stalled_rounds += 1;
                if stalled_rounds >= 2 {
                    break;
                }
            } else {
                stalled_rounds = 0;
            }
        }

        if config.completion {
            let mut order: Vec<usize> = (0..words.len()).filter(|&id| alive[id]).collect();
            order.shuffle(&mut stream_rng(config.seed, 0));
            for id in order {
                examined += 1;
                if !index.conflicts(&words[id]) {
                    index.insert(words[id].clone());
                }
            }
            return finish(spec, config, index, true, rounds_executed, examined, started);
        }
        finish(spec, config, index, false, rounds_executed, examined, started)
    } else {
        // Sampled regime: a full Bernoulli sweep over the space is
        // impossible, so each round draws the bite's expected size directly:
        // E|bite| = p·|space| ≈ bite_fraction · bound.
        let bound_f64 = bounds::upper_bound(spec)?.bound.to_f64().unwrap_or(f64::MAX);
        let per_round = ((config.bite_fraction * bound_f64).ceil() as u64).max(1);
        let mut draws = 0u64;

        for round in 0..config.max_rounds {
            if draws >= config.sample_budget {
                break;
            }
            let mut rng = stream_rng(config.seed, u64::from(round) + 1);
            let quota = per_round.min(config.sample_budget - draws);
            let mut bite: Vec<Word> = Vec::new();
            let mut in_bite: HashSet<Word> = HashSet::new();
            for _ in 0..quota {
                let word = sample_uniform(spec, &mut rng);
                draws += 1;
                if !in_bite.insert(word.clone()) {
                    continue;
                }
                examined += 1;
                if !index.conflicts(&word) {
                    bite.push(word);
                }
            }
            let mut accepted_now = 0u32;
            for a in 0..bite.len() {
                let clean = (0..bite.len())
                    .all(|b| b == a || index.compatible(&bite[a], &bite[b]));
                if clean && !index.conflicts(&bite[a]) {
                    index.insert(bite[a].clone());
                    accepted_now += 1;
                }
            }
            rounds_executed = round + 1;
            if accepted_now == 0 {
                stalled_rounds += 1;
                if stalled_rounds >= 2 {
                    break;
                }
            } else {
                stalled_rounds = 0;
            }
        }

        if config.completion {
            let mut rng = stream_rng(config.seed, 0);
            let mut seen: HashSet<Word> = HashSet::new();
            while draws < config.sample_budget {
                let word = sample_uniform(spec, &mut rng);
                draws += 1;
                if !seen.insert(word.clone()) {
                    continue;
                }
                examined += 1;
                if !index.conflicts(&word) {
                    index.insert(word);
                }
            }
        }
        finish(spec, config, index, false, rounds_executed, examined, started)
    }
}

/// Runs the algorithm selected in the config.
pub fn construct(spec: &CodeSpec, config: &MatchConfig) -> Result<(Code, RunReport), MatchError> {
    match config.algorithm {
        Algorithm::Greedy => greedy_construct(spec, config),
        Algorithm::Nibble => nibble_construct(spec, config),
    }
}

/// Exhaustive maximality check: no word of the full space is compatible
/// with every member of the code (constructor predicate). Only sensible for
/// enumerable spaces.
pub fn is_maximal(code: &Code) -> bool {
    let spec = code.spec();
    let members: HashSet<&Word> = code.words().iter().collect();
    for word in hyper::enumerate_words(spec) {
        if members.contains(&word) {
            continue;
        }
        if code.words().iter().all(|m| hyper::compatible(spec, &word, m)) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Conflict diagnostics (composition specs)
// ---------------------------------------------------------------------------

/// Numeric diagnostics of the forbidden-pair configuration hypergraph: the
/// degree target `D`, the conflict-degree envelope, the exhaustive conflict
/// degree when the space is small enough, and the ratios against `D^{1−β}`
/// with `β = 1/(2(w−t))`.
#[derive(Clone, Debug)]
pub struct ConflictDiagnostics {
    pub spec: CodeSpec,
    /// `D = C(n−t,w−t)·f(w̄,w−t)`.
    pub d_value: BigCount,
    /// `β = 1/(2(w−t))`; `None` when `t = w` (the exponent degenerates).
    pub beta: Option<f64>,
    pub delta2_envelope: BigCount,
    /// Exhaustive `Δ₂(ℱ)` when `|J|² ≤ budget`.
    pub delta2_empirical: Option<BigCount>,
    pub cod_envelope: BigCount,
    /// `Δ₂(ℱ)/D^{1−β}` using the empirical value when present, else the
    /// envelope.
    pub delta2_ratio: Option<f64>,
    /// `cod(ℋ)/D^{1−β}` using the codegree envelope.
    pub cod_ratio: Option<f64>,
}

pub fn conflict_diagnostics(
    spec: &CodeSpec,
    budget: u64,
) -> Result<ConflictDiagnostics, MatchError> {
    if !spec.is_composition() {
        return Err(MatchError::NotComposition);
    }
    let w = spec.w();
    let t = spec.t();
    let d_value = hyper::closed_form_degree(spec);
    let delta2_envelope =
        hyper::conflict_degree_envelope(spec).expect("spec checked to be composition");
    let cod_envelope = hyper::codegree_envelope(spec);

    let space = hyper::word_space_size(spec);
    let delta2_empirical = if &space * &space <= BigUint::from(budget) {
        let words: Vec<Word> = hyper::enumerate_words(spec).collect();
        let mut worst = 0u64;
        for (i, x) in words.iter().enumerate() {
            let mut conflicts = 0u64;
            for (j, y) in words.iter().enumerate() {
                if i == j {
                    continue;
                }
                let shared_support = x
                    .symbols()
                    .iter()
                    .zip(y.symbols())
                    .filter(|(&a, &b)| a != 0 && b != 0)
                    .count() as u32;
                if shared_support > t {
                    conflicts += 1;
                }
            }
            worst = worst.max(conflicts);
        }
        Some(BigUint::from(worst))
    } else {
        None
    };

    let (beta, delta2_ratio, cod_ratio) = if t < w {
        let beta = 1.0 / (2.0 * f64::from(w - t));
        let d_pow = d_value.to_f64().unwrap_or(f64::MAX).powf(1.0 - beta);
        let delta2 = delta2_empirical
            .as_ref()
            .unwrap_or(&delta2_envelope)
            .to_f64()
            .unwrap_or(f64::MAX);
        let cod = cod_envelope.to_f64().unwrap_or(f64::MAX);
        (Some(beta), Some(delta2 / d_pow), Some(cod / d_pow))
    } else {
        (None, None, None)
    };

    Ok(ConflictDiagnostics {
        spec: spec.clone(),
        d_value,
        beta,
        delta2_envelope,
        delta2_empirical,
        cod_envelope,
        delta2_ratio,
        cod_ratio,
    })
}
