//! Words, codes, distances, and validity checking for constant weight and
//! constant composition codes.
//!
//! Coordinates are 0-based internally and 1-based everywhere a coordinate is
//! reported (supports, partite edges, files), matching the index set
//! `[n] = {1,…,n}`.

use std::fmt;

use thiserror::Error;

/// Largest supported alphabet size. Keeps the one-symbol-per-character text
/// encoding compact; alphabets beyond this are out of scope.
pub const MAX_Q: u8 = 36;

/// Errors from constructing or combining the core code types.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("alphabet size q={0} out of range (2..={MAX_Q})")]
    BadAlphabet(u8),
    #[error("symbol {symbol} at coordinate {coord} out of range for q={q}")]
    SymbolOutOfRange { coord: usize, symbol: u8, q: u8 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("alphabet mismatch: q={left} vs q={right}")]
    AlphabetMismatch { left: u8, right: u8 },
    #[error("empty word length")]
    EmptyLength,
    #[error("composition has {got} counts, expected q-1 = {expected}")]
    CompositionArity { got: usize, expected: usize },
    #[error("weight {w} exceeds length {n}")]
    WeightExceedsLength { w: u32, n: usize },
    #[error("minimum distance must satisfy 1 <= d <= 2w (got d={d}, w={w})")]
    DistanceOutOfRange { d: u32, w: u32 },
    #[error("word {index} does not fit the code parameters: {reason}")]
    ForeignWord { index: usize, reason: String },
    #[error("duplicate word at index {second} (same as index {first})")]
    DuplicateWord { first: usize, second: usize },
}

/// A length-`n` vector over the alphabet `{0,…,q−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: u8,
    symbols: Vec<u8>,
}

impl Word {
    /// Validates every symbol against `q` and the length against `n >= 1`.
    pub fn new(q: u8, symbols: Vec<u8>) -> Result<Self, CodeError> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(CodeError::BadAlphabet(q));
        }
        if symbols.is_empty() {
            return Err(CodeError::EmptyLength);
        }
        for (coord, &symbol) in symbols.iter().enumerate() {
            if symbol >= q {
                return Err(CodeError::SymbolOutOfRange { coord, symbol, q });
            }
        }
        Ok(Word { q, symbols })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> u32 {
        self.symbols.iter().filter(|&&s| s != 0).count() as u32
    }

    /// Per-symbol multiplicities `(w_1,…,w_{q−1})` of the nonzero symbols.
    pub fn composition(&self) -> Composition {
        let mut counts = vec![0u32; usize::from(self.q) - 1];
        for &s in &self.symbols {
            if s != 0 {
                counts[usize::from(s) - 1] += 1;
            }
        }
        Composition { counts }
    }

    /// 1-based coordinates of the nonzero symbols, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(q={}, {:?})", self.q, self.symbols)
    }
}

/// Hamming distance: the number of coordinates where `x` and `y` differ.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<u32, CodeError> {
    if x.q != y.q {
        return Err(CodeError::AlphabetMismatch {
            left: x.q,
            right: y.q,
        });
    }
    if x.symbols.len() != y.symbols.len() {
        return Err(CodeError::LengthMismatch {
            left: x.symbols.len(),
            right: y.symbols.len(),
        });
    }
    Ok(hamming_unchecked(x, y))
}

/// Distance without the shape checks; callers guarantee matching `q` and `n`.
pub(crate) fn hamming_unchecked(x: &Word, y: &Word) -> u32 {
    debug_assert_eq!(x.q, y.q);
    debug_assert_eq!(x.symbols.len(), y.symbols.len());
    x.symbols
        .iter()
        .zip(&y.symbols)
        .filter(|(a, b)| a != b)
        .count() as u32
}

/// The multiplicity vector `(w_1,…,w_{q−1})` of nonzero symbols; the total
/// weight is `w = Σ w_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    counts: Vec<u32>,
}

impl Composition {
    /// `counts[j-1]` is the required multiplicity of symbol `j`. The vector
    /// must have exactly `q−1` entries for the alphabet it is used with; that
    /// arity is checked where a `CodeSpec` is assembled.
    pub fn new(counts: Vec<u32>) -> Self {
        Composition { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn num_parts(&self) -> usize {
        self.counts.len()
    }

    /// Total weight `w = Σ_j w_j`.
    pub fn weight(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// Which constraint the code imposes on its words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    /// Constant weight `w`.
    Weight(u32),
    /// Constant composition `w̄ = (w_1,…,w_{q−1})`.
    Composition(Composition),
}

/// Problem parameters: alphabet size, length, minimum distance, and either a
/// weight or a composition constraint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSpec {
    q: u8,
    n: usize,
    d: u32,
    constraint: Constraint,
}

impl CodeSpec {
    /// Constant-weight spec.
    pub fn cwc(q: u8, n: usize, d: u32, w: u32) -> Result<Self, CodeError> {
        Self::validate_common(q, n, d, w)?;
        Ok(CodeSpec {
            q,
            n,
            d,
            constraint: Constraint::Weight(w),
        })
    }

    /// Constant-composition spec; `counts` must have exactly `q−1` entries.
    pub fn ccc(q: u8, n: usize, d: u32, counts: Vec<u32>) -> Result<Self, CodeError> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(CodeError::BadAlphabet(q));
        }
        if counts.len() != usize::from(q) - 1 {
            return Err(CodeError::CompositionArity {
                got: counts.len(),
                expected: usize::from(q) - 1,
            });
        }
        let composition = Composition::new(counts);
        let w = composition.weight();
        Self::validate_common(q, n, d, w)?;
        Ok(CodeSpec {
            q,
            n,
            d,
            constraint: Constraint::Composition(composition),
        })
    }

    fn validate_common(q: u8, n: usize, d: u32, w: u32) -> Result<(), CodeError> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(CodeError::BadAlphabet(q));
        }
        if n == 0 {
            return Err(CodeError::EmptyLength);
        }
        if u64::from(w) > n as u64 {
            return Err(CodeError::WeightExceedsLength { w, n });
        }
        if d == 0 || d > 2 * w {
            return Err(CodeError::DistanceOutOfRange { d, w });
        }
        Ok(())
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn is_composition(&self) -> bool {
        matches!(self.constraint, Constraint::Composition(_))
    }

    /// The composition, when this is a CCC spec.
    pub fn composition(&self) -> Option<&Composition> {
        match &self.constraint {
            Constraint::Weight(_) => None,
            Constraint::Composition(c) => Some(c),
        }
    }

    /// Total weight `w` (for CCCs, the sum of the composition).
    pub fn w(&self) -> u32 {
        match &self.constraint {
            Constraint::Weight(w) => *w,
            Constraint::Composition(c) => c.weight(),
        }
    }

    /// Distance threshold `t = ⌈(2w − d + 1)/2⌉`. For odd `d` this equals
    /// `(2w − d + 1)/2` exactly, the regime the matching constructors need.
    pub fn t(&self) -> u32 {
        let x = 2 * self.w() - self.d + 1;
        x.div_ceil(2)
    }

    /// Does `word` satisfy this spec's shape and weight/composition constraint?
    pub fn admits(&self, word: &Word) -> bool {
        if word.q() != self.q || word.n() != self.n {
            return false;
        }
        match &self.constraint {
            Constraint::Weight(w) => word.weight() == *w,
            Constraint::Composition(c) => word.composition() == *c,
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.constraint {
            Constraint::Weight(w) => {
                write!(f, "cwc q={} n={} d={} w={}", self.q, self.n, self.d, w)
            }
            Constraint::Composition(c) => {
                let parts: Vec<String> = c.counts().iter().map(u32::to_string).collect();
                write!(
                    f,
                    "ccc q={} n={} d={} wbar={}",
                    self.q,
                    self.n,
                    self.d,
                    parts.join(",")
                )
            }
        }
    }
}

/// A duplicate-free list of words tied to a spec. Structural agreement
/// (alphabet, length, no duplicates) is enforced here; the weight/composition
/// and distance constraints are what [`verify`] checks, so that a `Code` can
/// hold the contents of an arbitrary well-formed input file.
#[derive(Clone, Debug)]
pub struct Code {
    spec: CodeSpec,
    words: Vec<Word>,
}

impl Code {
    pub fn new(spec: CodeSpec, words: Vec<Word>) -> Result<Self, CodeError> {
        for (index, word) in words.iter().enumerate() {
            if word.q() != spec.q() {
                return Err(CodeError::ForeignWord {
                    index,
                    reason: format!("word alphabet q={} but spec has q={}", word.q(), spec.q()),
                });
            }
            if word.n() != spec.n() {
                return Err(CodeError::ForeignWord {
                    index,
                    reason: format!("word length {} but spec has n={}", word.n(), spec.n()),
                });
            }
        }
        let mut seen: std::collections::HashMap<&Word, usize> = std::collections::HashMap::new();
        for (index, word) in words.iter().enumerate() {
            if let Some(&first) = seen.get(word) {
                return Err(CodeError::DuplicateWord {
                    first,
                    second: index,
                });
            }
            seen.insert(word, index);
        }
        drop(seen);
        Ok(Code { spec, words })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Outcome of [`verify`]: either valid, or the first violation in scan order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Ok,
    /// A word breaks the weight/composition constraint. `index` is the
    /// 0-based position in the word list.
    WordViolation { index: usize, reason: String },
    /// A pair of words is too close. Indices are 0-based list positions with
    /// `i < j`.
    PairViolation {
        i: usize,
        j: usize,
        distance: u32,
        required: u32,
    },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => write!(f, "ok"),
            Verdict::WordViolation { index, reason } => {
                write!(f, "word {}: {}", index + 1, reason)
            }
            Verdict::PairViolation {
                i,
                j,
                distance,
                required,
            } => write!(
                f,
                "words {} and {}: distance {} < {}",
                i + 1,
                j + 1,
                distance,
                required
            ),
        }
    }
}

/// Checks every word against the spec's weight/composition constraint and
/// every pair against the minimum distance. Scan order is deterministic:
/// words by index, then pairs `(i,j)` with `i < j` in lexicographic order;
/// the first violation found is reported.
pub fn verify(code: &Code) -> Verdict {
    let spec = code.spec();
    for (index, word) in code.words().iter().enumerate() {
        match spec.constraint() {
            Constraint::Weight(w) => {
                let got = word.weight();
                if got != *w {
                    return Verdict::WordViolation {
                        index,
                        reason: format!("weight {got} != {w}"),
                    };
                }
            }
            Constraint::Composition(c) => {
                let got = word.composition();
                if got != *c {
                    return Verdict::WordViolation {
                        index,
                        reason: format!(
                            "composition {:?} != {:?}",
                            got.counts(),
                            c.counts()
                        ),
                    };
                }
            }
        }
    }
    let words = code.words();
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let distance = hamming_unchecked(&words[i], &words[j]);
            if distance < spec.d() {
                return Verdict::PairViolation {
                    i,
                    j,
                    distance,
                    required: spec.d(),
                };
            }
        }
    }
    Verdict::Ok
}
