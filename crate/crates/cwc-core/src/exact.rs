//! Exact maximum code sizes on tiny instances.
//!
//! A code with minimum distance `d` is exactly a clique in the compatibility
//! graph whose vertices are all words of the spec's space and whose edges
//! join pairs at true Hamming distance `≥ d` (for composition specs too —
//! the stronger constructor predicate is deliberately not used here, so the
//! computed value is the distance-defined optimum). Maximum clique is solved
//! by branch-and-bound with greedy-coloring upper bounds over bitset rows.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bounds::{self, BigCount};
use crate::code::{hamming_unchecked, Code, CodeSpec, Word};
use crate::hyper;

/// Default cap on the number of graph vertices; bitset rows at this size
/// stay near 300 MB.
pub const DEFAULT_VERTEX_CAP: usize = 50_000;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("word space has {vertices} vertices, exceeding the cap {cap}")]
    CapExceeded { vertices: BigUint, cap: usize },
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
}

/// Explicit compatibility graph with bitset adjacency rows.
pub struct CompatGraph {
    spec: CodeSpec,
    words: Vec<Word>,
    row_words: usize,
    adj: Vec<u64>,
    edge_count: u64,
}

impl CompatGraph {
    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, v: usize) -> &Word {
        &self.words[v]
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.row_words..(v + 1) * self.row_words]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] & (1u64 << (v % 64)) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Builds the compatibility graph; vertices follow the deterministic word
/// enumeration order. Fails if the word space exceeds `cap` vertices.
pub fn build_compat_graph(spec: &CodeSpec, cap: usize) -> Result<CompatGraph, ExactError> {
    let vertices = hyper::word_space_size(spec);
    if vertices > BigUint::from(cap as u64) {
        return Err(ExactError::CapExceeded { vertices, cap });
    }
    let words: Vec<Word> = hyper::enumerate_words(spec).collect();
    let count = words.len();
    let row_words = count.div_ceil(64);
    let mut adj = vec![0u64; count * row_words];
    let mut edge_count = 0u64;
    for i in 0..count {
        for j in (i + 1)..count {
            if hamming_unchecked(&words[i], &words[j]) >= spec.d() {
                adj[i * row_words + j / 64] |= 1 << (j % 64);
                adj[j * row_words + i / 64] |= 1 << (i % 64);
                edge_count += 1;
            }
        }
    }
    Ok(CompatGraph {
        spec: spec.clone(),
        words,
        row_words,
        adj,
        edge_count,
    })
}

/// Search status of [`max_clique`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliqueStatus {
    /// The returned size is the exact maximum.
    Exact,
    /// The time limit struck; `upper_bound` is a proven bound on the true
    /// maximum (the root greedy-coloring number).
    Timeout { upper_bound: usize },
}

#[derive(Clone, Debug)]
pub struct CliqueResult {
    pub size: usize,
    /// Vertex indices of one maximum (or best-so-far) clique, ascending.
    pub witness: Vec<usize>,
    pub status: CliqueStatus,
    pub nodes_explored: u64,
}

struct CliqueSearch<'g> {
    graph: &'g CompatGraph,
    row_words: usize,
    /// Vertex rank by reverse degeneracy order (densest core first); used as
    /// the coloring order, which keeps the color counts close to the clique
    /// number on these highly regular graphs.
    rank: Vec<u32>,
    best: usize,
    best_witness: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    /// External proven upper bound; reaching it ends the search exactly.
    cutoff: Option<usize>,
    timed_out: bool,
    done: bool,
}

impl<'g> CliqueSearch<'g> {
    /// Greedy coloring of the candidate set in rank order; returns
    /// `(vertex, color)` sorted by ascending color (ties by rank). The number
    /// of colors upper-bounds the clique size within `candidates`.
    fn color_sort(&self, candidates: &[u64]) -> Vec<(usize, usize)> {
        let mut members: Vec<usize> = iter_bits(candidates).collect();
        members.sort_by_key(|&v| self.rank[v]);
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let mut colored: Vec<(usize, usize)> = Vec::with_capacity(members.len());
        for v in members {
            let row = self.graph.row(v);
            let color = classes
                .iter()
                .position(|class| !intersects(class, row))
                .unwrap_or_else(|| {
                    classes.push(vec![0u64; self.row_words]);
                    classes.len() - 1
                });
            classes[color][v / 64] |= 1 << (v % 64);
            colored.push((v, color + 1));
        }
        colored.sort_by_key(|&(v, c)| (c, self.rank[v]));
        colored
    }

    fn record_if_best(&mut self) {
        if self.current.len() > self.best {
            self.best = self.current.len();
            self.best_witness = self.current.clone();
            self.best_witness.sort_unstable();
            if let Some(cutoff) = self.cutoff {
                if self.best >= cutoff {
                    self.done = true;
                }
            }
        }
    }

    fn expand(&mut self, candidates: &[u64]) {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out || self.done {
            return;
        }
        let colored = self.color_sort(candidates);
        let mut live = candidates.to_vec();
        for &(v, color) in colored.iter().rev() {
            if self.current.len() + color <= self.best {
                return; // every remaining vertex has color <= this one
            }
            live[v / 64] &= !(1 << (v % 64));
            self.current.push(v);
            let next: Vec<u64> = live
                .iter()
                .zip(self.graph.row(v))
                .map(|(a, b)| a & b)
                .collect();
            if next.iter().all(|&w| w == 0) {
                self.record_if_best();
            } else {
                self.expand(&next);
            }
            self.current.pop();
            if self.timed_out || self.done {
                return;
            }
        }
    }
}

/// Partitions the anchored neighborhood into orbit classes of the anchor's
/// stabilizer, for weight specs.
///
/// The stabilizer of the anchor word combines support-preserving coordinate
/// permutations with per-coordinate nonzero-symbol relabelings pinned at the
/// anchor's symbols. Two neighbors lie in the same orbit exactly when they
/// agree on the triple (symbol matches inside the anchor support, nonzero
/// disagreements inside it, support outside it): permutations align the
/// coordinate classes and the residual symbol freedom aligns the symbols,
/// which needs the per-coordinate relabelings — hence weight specs only.
/// Classes are ordered by that triple; every class lists its vertices in
/// ascending id order.
fn anchor_orbit_classes(graph: &CompatGraph, anchored: &[u64]) -> Option<Vec<Vec<usize>>> {
    if graph.spec().is_composition() {
        return None;
    }
    let anchor = graph.word(0);
    let mut classes: std::collections::BTreeMap<(u32, u32, u32), Vec<usize>> =
        std::collections::BTreeMap::new();
    for v in iter_bits(anchored) {
        let neighbor = graph.word(v);
        let mut matches = 0u32;
        let mut differs = 0u32;
        let mut outside = 0u32;
        for (&a, &b) in anchor.symbols().iter().zip(neighbor.symbols()) {
            match (a != 0, b != 0) {
                (true, true) if a == b => matches += 1,
                (true, true) => differs += 1,
                (false, true) => outside += 1,
                _ => {}
            }
        }
        classes
            .entry((matches, differs, outside))
            .or_default()
            .push(v);
    }
    Some(classes.into_values().collect())
}

/// Smallest-last elimination order, reversed so the densest core comes
/// first. Ties break on the lower vertex id, keeping the order deterministic.
fn reverse_degeneracy_order(graph: &CompatGraph) -> Vec<usize> {
    let count = graph.vertex_count();
    let mut degrees: Vec<usize> = (0..count).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; count];
    let mut elimination = Vec::with_capacity(count);
    for _ in 0..count {
        let v = (0..count)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degrees[v], v))
            .expect("vertices remain");
        removed[v] = true;
        elimination.push(v);
        for u in 0..count {
            if !removed[u] && graph.adjacent(v, u) {
                degrees[u] -= 1;
            }
        }
    }
    elimination.reverse();
    elimination
}

/// Deterministic greedy clique along the given order; warm start for the
/// branch-and-bound.
fn greedy_clique_along(graph: &CompatGraph, order: &[usize]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&u| graph.adjacent(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

fn iter_bits(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(word_idx, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let bit = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(word_idx * 64 + bit)
            }
        })
    })
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Exact maximum clique via branch-and-bound with greedy-coloring bounds,
/// reverse-degeneracy coloring order, and a greedy warm start. Deterministic
/// for a given graph. With a time limit, a timeout yields the best clique
/// found plus a proven upper bound instead of an exact answer.
pub fn max_clique(graph: &CompatGraph, time_limit: Option<Duration>) -> CliqueResult {
    max_clique_bounded(graph, time_limit, None)
}

/// [`max_clique`] with an externally proven upper bound: the search stops
/// (still exact) as soon as a clique of that size is found.
///
/// Compatibility graphs built from a spec are vertex-transitive (coordinate
/// permutations, together with per-coordinate nonzero-symbol relabelings for
/// weight specs, act transitively on the word space and preserve Hamming
/// distance), so some maximum clique contains vertex 0. The search therefore
/// anchors on vertex 0 and works inside its neighborhood.
pub fn max_clique_bounded(
    graph: &CompatGraph,
    time_limit: Option<Duration>,
    proven_upper_bound: Option<usize>,
) -> CliqueResult {
    let count = graph.vertex_count();
    let row_words = count.div_ceil(64);
    if count == 0 {
        return CliqueResult {
            size: 0,
            witness: Vec::new(),
            status: CliqueStatus::Exact,
            nodes_explored: 0,
        };
    }
    let order = reverse_degeneracy_order(graph);
    let mut rank = vec![0u32; count];
    for (position, &v) in order.iter().enumerate() {
        rank[v] = position as u32;
    }
    let warm = greedy_clique_along(graph, &order);
    let mut search = CliqueSearch {
        graph,
        row_words,
        rank,
        best: warm.len(),
        best_witness: warm,
        current: Vec::new(),
        nodes: 0,
        deadline: time_limit.map(|limit| Instant::now() + limit),
        cutoff: proven_upper_bound,
        timed_out: false,
        done: false,
    };
    if let Some(cutoff) = proven_upper_bound {
        if search.best >= cutoff {
            search.done = true;
        }
    }
    let anchored = search.graph.row(0).to_vec();
    let root_colors = 1 + search
        .color_sort(&anchored)
        .last()
        .map(|&(_, c)| c)
        .unwrap_or(0);
    if !search.done {
        search.current.push(0);
        if anchored.iter().all(|&word| word == 0) {
            search.record_if_best();
        } else if let Some(classes) = anchor_orbit_classes(graph, &anchored) {
            // A maximum clique through vertex 0 can be mapped, by a
            // stabilizer element, to one whose earliest orbit class is
            // represented by that class's first vertex. Branch only on those
            // representatives, excluding all earlier classes from the
            // candidates.
            let mut excluded = vec![0u64; row_words];
            for class in classes {
                let representative = class[0];
                let candidates: Vec<u64> = anchored
                    .iter()
                    .zip(search.graph.row(representative))
                    .zip(&excluded)
                    .map(|((a, r), x)| a & r & !x)
                    .collect();
                search.current.push(representative);
                if candidates.iter().all(|&word| word == 0) {
                    search.record_if_best();
                } else {
                    search.expand(&candidates);
                }
                search.current.pop();
                if search.timed_out || search.done {
                    break;
                }
                for &v in &class {
                    excluded[v / 64] |= 1 << (v % 64);
                }
            }
        } else {
            search.expand(&anchored);
        }
        search.current.pop();
    }
    let status = if search.timed_out {
        CliqueStatus::Timeout {
            upper_bound: root_colors.max(search.best),
        }
    } else {
        CliqueStatus::Exact
    };
    CliqueResult {
        size: search.best,
        witness: search.best_witness,
        status,
        nodes_explored: search.nodes,
    }
}

/// Brute-force maximum clique by unpruned exhaustive recursion. Reference
/// oracle for tiny graphs (up to roughly 25 vertices); independent of the
/// branch-and-bound path.
pub fn brute_force_max_clique(graph: &CompatGraph) -> (usize, Vec<usize>) {
    let count = graph.vertex_count();
    assert!(count <= 25, "brute force oracle is for tiny graphs");
    let mut neighbor_masks = vec![0u32; count];
    for u in 0..count {
        for v in 0..count {
            if u != v && graph.adjacent(u, v) {
                neighbor_masks[u] |= 1 << v;
            }
        }
    }
    fn recurse(
        neighbor_masks: &[u32],
        first: usize,
        candidates: u32,
        current: &mut Vec<usize>,
        best: &mut (usize, Vec<usize>),
    ) {
        if current.len() > best.0 {
            *best = (current.len(), current.clone());
        }
        for v in first..neighbor_masks.len() {
            if candidates & (1 << v) != 0 {
                current.push(v);
                recurse(
                    neighbor_masks,
                    v + 1,
                    candidates & neighbor_masks[v],
                    current,
                    best,
                );
                current.pop();
            }
        }
    }
    let mut best = (0, Vec::new());
    let all = if count == 0 { 0 } else { (1u32 << count) - 1 };
    recurse(&neighbor_masks, 0, all, &mut Vec::new(), &mut best);
    best
}

/// Outcome of [`exact_a`].
#[derive(Clone, Debug)]
pub struct ExactResult {
    /// Maximum code size found (exact unless `status` is a timeout).
    pub value: usize,
    /// A code attaining `value`; always passes verification.
    pub witness: Code,
    /// The Johnson-type upper bound for the same spec.
    pub bound: BigCount,
    /// Whether the exact value meets the bound with equality.
    pub tight: bool,
    pub status: CliqueStatus,
}

/// Exact `A_q(n,d,w)` or `A_q(n,d,w̄)` by maximum clique, with the
/// Johnson-type bound attached for comparison.
pub fn exact_a(
    spec: &CodeSpec,
    time_limit: Option<Duration>,
    cap: usize,
) -> Result<ExactResult, ExactError> {
    let graph = build_compat_graph(spec, cap)?;
    let bound = bounds::upper_bound(spec)?.bound;
    let cutoff = bound.to_usize();
    let clique = max_clique_bounded(&graph, time_limit, cutoff);
    let words: Vec<Word> = clique.witness.iter().map(|&v| graph.word(v).clone()).collect();
    let witness = Code::new(spec.clone(), words).expect("clique vertices are distinct words");
    let tight = clique.status == CliqueStatus::Exact
        && BigUint::from(clique.size as u64) == bound;
    Ok(ExactResult {
        value: clique.size,
        witness,
        bound,
        tight,
        status: clique.status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{verify, Verdict};

    #[test]
    fn graph_vertex_counts() {
        let spec = CodeSpec::cwc(3, 4, 3, 2).unwrap();
        let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(graph.vertex_count(), 24);

        let spec = CodeSpec::cwc(2, 7, 3, 3).unwrap();
        let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(graph.vertex_count(), 35);

        let spec = CodeSpec::ccc(3, 2, 3, vec![1, 1]).unwrap();
        let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(graph.vertex_count(), 2);
        assert_eq!(graph.edge_count(), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = CodeSpec::cwc(3, 4, 3, 2).unwrap();
        assert!(matches!(
            build_compat_graph(&spec, 10),
            Err(ExactError::CapExceeded { .. })
        ));
    }

    #[test]
    fn edgeless_graph_has_clique_one() {
        let spec = CodeSpec::ccc(3, 2, 3, vec![1, 1]).unwrap();
        let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
        let result = max_clique(&graph, None);
        assert_eq!(result.size, 1);
        assert_eq!(result.status, CliqueStatus::Exact);
    }

    #[test]
    fn known_exact_values() {
        let spec = CodeSpec::cwc(3, 4, 3, 2).unwrap();
        let result = exact_a(&spec, None, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(result.value, 4);
        assert!(result.tight);
        assert_eq!(verify(&result.witness), Verdict::Ok);

        let spec = CodeSpec::cwc(3, 3, 3, 2).unwrap();
        let result = exact_a(&spec, None, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(result.value, 3);
    }

    #[test]
    fn branch_and_bound_agrees_with_brute_force() {
        for spec in [
            CodeSpec::cwc(3, 3, 3, 2).unwrap(),
            CodeSpec::cwc(2, 5, 3, 2).unwrap(),
            CodeSpec::ccc(3, 4, 3, vec![1, 1]).unwrap(),
            CodeSpec::ccc(3, 3, 3, vec![1, 1]).unwrap(),
        ] {
            let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
            assert!(graph.vertex_count() <= 25);
            let bb = max_clique(&graph, None);
            let (brute, _) = brute_force_max_clique(&graph);
            assert_eq!(bb.size, brute, "disagreement on {spec}");
        }
    }

    #[test]
    fn known_ternary_values_pinned() {
        // Values independently confirmed by the plain (non-orbit-reduced)
        // search during development; they exercise the orbit-anchored path
        // on graphs far beyond the brute-force oracle's reach.
        for (spec, expected) in [
            (CodeSpec::cwc(3, 5, 3, 3).unwrap(), 12usize),
            (CodeSpec::cwc(3, 6, 3, 2).unwrap(), 6),
            (CodeSpec::cwc(3, 6, 3, 3).unwrap(), 18),
            (CodeSpec::cwc(3, 7, 3, 3).unwrap(), 28),
        ] {
            let result = exact_a(&spec, None, DEFAULT_VERTEX_CAP).unwrap();
            assert_eq!(result.value, expected, "{spec}");
            assert_eq!(verify(&result.witness), Verdict::Ok);
            assert_eq!(result.witness.len(), expected);
        }
    }

    #[test]
    fn timeout_yields_verdict_with_upper_bound() {
        let spec = CodeSpec::cwc(3, 8, 3, 3).unwrap();
        let graph = build_compat_graph(&spec, DEFAULT_VERTEX_CAP).unwrap();
        let result = max_clique(&graph, Some(Duration::from_nanos(1)));
        match result.status {
            CliqueStatus::Timeout { upper_bound } => assert!(upper_bound >= result.size),
            CliqueStatus::Exact => {
                // One expand step can finish before the first deadline check;
                // the exact answer is acceptable then.
            }
        }
    }
}
