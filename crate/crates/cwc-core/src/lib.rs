//! Constant weight codes (CWCs) and constant composition codes (CCCs):
//! construction, verification, exact small-instance optima, and Johnson-type
//! upper bounds.
//!
//! A `(n,d,w)_q`-CWC is a set of length-`n` words over `{0,…,q−1}`, all of
//! Hamming weight `w`, with pairwise distance at least `d`. A CCC additionally
//! fixes how many times each nonzero symbol occurs. This crate provides:
//!
//! - [`code`]: words, compositions, code specs, distance and validity checks,
//!   plus the text file format used by the CLI;
//! - [`bounds`]: exact arbitrary-precision Johnson-type upper bounds;
//! - [`hyper`]: the word ↔ partite-edge dictionary, pairwise compatibility
//!   predicates, and degree/codegree statistics of the implicit auxiliary
//!   hypergraphs that matchings-based construction runs on;
//! - [`matcher`]: randomized greedy and nibble-style constructors;
//! - [`exact`]: exact maximum code sizes on tiny instances via
//!   branch-and-bound maximum clique.
//!
//! All randomized components are seeded and deterministic: identical inputs
//! produce byte-identical codes across runs and platforms.

pub mod bounds;
pub mod code;
pub mod codefile;
pub mod exact;
pub mod hyper;
pub mod matcher;
pub mod ratio;

pub use code::{hamming_distance, verify, Code, CodeSpec, Composition, Constraint, Verdict, Word};
