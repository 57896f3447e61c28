//! Exact arbitrary-precision Johnson-type upper bounds for constant weight
//! and constant composition codes, together with the admissible-vector
//! maximization `f(w̄,t)` that the composition bound needs.
//!
//! Everything here is integer-exact: closed forms are stated as rationals
//! and the returned bound is the floor of that rational, computed by big
//! integer division. No floating point is used anywhere in this module.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::code::{CodeSpec, Composition, Constraint};

/// Arbitrary-precision non-negative counter used for all bound values.
pub type BigCount = BigUint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("binomial arguments invalid: k={k} exceeds n={n}")]
    InvalidBinomial { n: u64, k: u64 },
    #[error("multinomial parts sum to {sum}, expected {n}")]
    InvalidMultinomial { n: u64, sum: u64 },
    #[error("threshold requires 1 <= d <= 2w (got d={d}, w={w})")]
    ThresholdOutOfRange { d: u32, w: u32 },
    #[error("no ({wbar:?},{t})-admissible vector exists")]
    InfeasibleAdmissible { wbar: Vec<u32>, t: u32 },
    #[error("spec kind mismatch: expected a {expected} spec")]
    KindMismatch { expected: &'static str },
    #[error("Johnson step undefined: {0}")]
    ZeroDenominator(&'static str),
}

/// Exact binomial coefficient `C(n,k)`.
pub fn binom(n: u64, k: u64) -> Result<BigCount, BoundsError> {
    if k > n {
        return Err(BoundsError::InvalidBinomial { n, k });
    }
    Ok(choose(n, k))
}

/// Exact multinomial coefficient `C(n; parts)`; the parts must sum to `n`.
pub fn multinom(n: u64, parts: &[u64]) -> Result<BigCount, BoundsError> {
    let sum: u64 = parts.iter().sum();
    if sum != n {
        return Err(BoundsError::InvalidMultinomial { n, sum });
    }
    let mut remaining = n;
    let mut acc = BigCount::one();
    for &part in parts {
        acc *= choose(remaining, part);
        remaining -= part;
    }
    Ok(acc)
}

/// `C(n,k)` with the standard zero extension for `k > n`. Exact at every
/// step: the running product is always divisible by the next divisor.
pub(crate) fn choose(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        acc /= BigUint::from(i);
    }
    acc
}

/// Distance threshold `t = ⌈(2w − d + 1)/2⌉` for `1 ≤ d ≤ 2w`. For odd `d`
/// this is exactly `(2w − d + 1)/2`.
pub fn threshold_t(d: u32, w: u32) -> Result<u32, BoundsError> {
    if d == 0 || d > 2 * w {
        return Err(BoundsError::ThresholdOutOfRange { d, w });
    }
    Ok((2 * w - d + 1).div_ceil(2))
}

/// All `(w̄,t)`-admissible vectors: `t̄ = (t_1,…,t_{q−1})` with `Σ t_i = t`
/// and `t_i ≤ w_i`, in lexicographic order. Empty when `t > w`.
pub fn admissible_vectors(wbar: &Composition, t: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(wbar.num_parts());
    fill_admissible(wbar.counts(), t, &mut prefix, &mut out);
    out
}

fn fill_admissible(counts: &[u32], remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if counts.is_empty() {
        if remaining == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let cap = counts[0].min(remaining);
    // Suffix capacity prunes branches that can never reach the target sum.
    let suffix: u32 = counts[1..].iter().sum();
    for v in 0..=cap {
        if remaining - v > suffix {
            continue;
        }
        prefix.push(v);
        fill_admissible(&counts[1..], remaining - v, prefix, out);
        prefix.pop();
    }
}

/// Multinomial coefficient `t!/(t_1!⋯t_k!)` of a vector summing to `t`.
fn vector_multinomial(parts: &[u32]) -> BigCount {
    let t: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    multinom(t, &parts.iter().map(|&p| u64::from(p)).collect::<Vec<_>>())
        .expect("parts sum to t by construction")
}

/// `f(w̄,t)`: the maximum multinomial coefficient over all `(w̄,t)`-admissible
/// vectors, together with the lexicographically smallest maximizer.
pub fn f_max(wbar: &Composition, t: u32) -> Result<(BigCount, Vec<u32>), BoundsError> {
    let vectors = admissible_vectors(wbar, t);
    let mut best: Option<(BigCount, Vec<u32>)> = None;
    for tbar in vectors {
        let value = vector_multinomial(&tbar);
        match &best {
            Some((cur, _)) if value <= *cur => {}
            _ => best = Some((value, tbar)),
        }
    }
    best.ok_or_else(|| BoundsError::InfeasibleAdmissible {
        wbar: wbar.counts().to_vec(),
        t,
    })
}

/// Which parity branch of a closed form was used.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(d: u32) -> Parity {
        if d % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// Textual identifier of the formula that produced a bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Formula {
    CwcClosedForm,
    CccClosedForm,
    JohnsonStep,
}

impl Formula {
    pub fn as_str(self) -> &'static str {
        match self {
            Formula::CwcClosedForm => "cwc-closed-form",
            Formula::CccClosedForm => "ccc-closed-form",
            Formula::JohnsonStep => "johnson-step",
        }
    }
}

/// An exact upper bound plus the branch bookkeeping needed to reproduce it.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub spec: CodeSpec,
    pub bound: BigCount,
    pub parity: Parity,
    pub formula: Formula,
    /// `f(w̄, ·)` value entering the denominator (composition bound only).
    pub f_value: Option<BigCount>,
    /// The admissible vector attaining `f_value` (composition bound only).
    pub witness_admissible: Option<Vec<u32>>,
}

/// Closed-form upper bound for constant weight codes:
/// `(q−1)^t · C(n,t)/C(w,t)` for odd `d`, one factor of `q−1` less for even
/// `d`, floored to an integer.
pub fn cwc_upper_bound(spec: &CodeSpec) -> Result<BoundReport, BoundsError> {
    let Constraint::Weight(w) = *spec.constraint() else {
        return Err(BoundsError::KindMismatch { expected: "weight" });
    };
    let t = spec.t();
    let parity = Parity::of(spec.d());
    let power = match parity {
        Parity::Odd => t,
        Parity::Even => t - 1,
    };
    let numerator =
        BigUint::from(u32::from(spec.q()) - 1).pow(power) * choose(spec.n() as u64, u64::from(t));
    let denominator = choose(u64::from(w), u64::from(t));
    Ok(BoundReport {
        spec: spec.clone(),
        bound: numerator / denominator,
        parity,
        formula: Formula::CwcClosedForm,
        f_value: None,
        witness_admissible: None,
    })
}

/// Closed-form upper bound for constant composition codes:
/// `C(n; n−w,w_1,…,w_{q−1}) / (C(n−t,w−t)·f(w̄,s))` with `s = w−t` for odd
/// `d` and `s = w−t+1` for even `d`, floored to an integer.
pub fn ccc_upper_bound(spec: &CodeSpec) -> Result<BoundReport, BoundsError> {
    let Some(wbar) = spec.composition() else {
        return Err(BoundsError::KindMismatch {
            expected: "composition",
        });
    };
    let w = spec.w();
    let t = spec.t();
    let parity = Parity::of(spec.d());
    let f_arg = match parity {
        Parity::Odd => w - t,
        Parity::Even => w - t + 1,
    };
    let (f_value, witness) = f_max(wbar, f_arg)?;
    let n = spec.n() as u64;
    let mut parts: Vec<u64> = Vec::with_capacity(wbar.num_parts() + 1);
    parts.push(n - u64::from(w));
    parts.extend(wbar.counts().iter().map(|&c| u64::from(c)));
    let numerator = multinom(n, &parts)?;
    let denominator = choose(n - u64::from(t), u64::from(w - t)) * &f_value;
    Ok(BoundReport {
        spec: spec.clone(),
        bound: numerator / denominator,
        parity,
        formula: Formula::CccClosedForm,
        f_value: Some(f_value),
        witness_admissible: Some(witness),
    })
}

/// Dispatches to the closed form matching the spec's constraint kind.
pub fn upper_bound(spec: &CodeSpec) -> Result<BoundReport, BoundsError> {
    match spec.constraint() {
        Constraint::Weight(_) => cwc_upper_bound(spec),
        Constraint::Composition(_) => ccc_upper_bound(spec),
    }
}

/// One step of the Johnson recursion. Given an upper bound for the
/// `(n−1)`-length problem (weight `w−1`, or first composition count
/// decremented), returns the floored bound for the `n`-length problem:
/// `⌊((q−1)·n/w)·value⌋` for weight specs, `⌊(n/w_1)·value⌋` for
/// composition specs.
pub fn johnson_step(spec: &CodeSpec, smaller_value: &BigCount) -> Result<BigCount, BoundsError> {
    let n = BigUint::from(spec.n() as u64);
    match spec.constraint() {
        Constraint::Weight(w) => {
            if *w == 0 {
                return Err(BoundsError::ZeroDenominator("weight w is zero"));
            }
            let numerator = BigUint::from(u32::from(spec.q()) - 1) * n * smaller_value;
            Ok(numerator / BigUint::from(*w))
        }
        Constraint::Composition(c) => {
            let w1 = c.counts()[0];
            if w1 == 0 {
                return Err(BoundsError::ZeroDenominator("first composition count is zero"));
            }
            Ok(n * smaller_value / BigUint::from(w1))
        }
    }
}
