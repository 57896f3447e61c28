//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its headline numbers (visible with `cargo test --test acceptance --
//! --nocapture`). Every tolerance is pinned in code.
//!
//! The paper-scale results are asymptotic; these gates substitute exact
//! small-instance equalities, provable floors, and property sweeps.

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use cwc_core::bounds::{self, f_max};
use cwc_core::code::{verify, CodeSpec, Composition, Constraint, Verdict, Word};
use cwc_core::codefile;
use cwc_core::exact::{self, brute_force_max_clique, build_compat_graph, CliqueStatus};
use cwc_core::hyper::{degree_stats, distance_identity, StatsMode};
use cwc_core::matcher::{construct, greedy_construct, nibble_construct, MatchConfig};
use cwc_core::ratio;

const EXACT_TIME_LIMIT: std::time::Duration = std::time::Duration::from_secs(240);

fn exact_value(spec: &CodeSpec) -> usize {
    let result = exact::exact_a(spec, Some(EXACT_TIME_LIMIT), exact::DEFAULT_VERTEX_CAP)
        .unwrap_or_else(|e| panic!("{spec}: {e}"));
    assert_eq!(
        result.status,
        CliqueStatus::Exact,
        "{spec}: clique search timed out; exactness not certified"
    );
    assert_eq!(verify(&result.witness), Verdict::Ok, "{spec}: witness invalid");
    result.value
}

/// Criterion 1: exact optimum equals the Johnson-type bound on the four
/// reference instances, cross-checked against the independent
/// naive-enumeration oracle wherever the graph has at most 20 vertices.
#[test]
fn criterion_1_bound_oracle_equality() {
    let cases: [(CodeSpec, usize); 4] = [
        (CodeSpec::cwc(3, 3, 3, 2).unwrap(), 3),
        (CodeSpec::cwc(3, 4, 3, 2).unwrap(), 4),
        (CodeSpec::ccc(3, 4, 3, vec![1, 1]).unwrap(), 4),
        (CodeSpec::cwc(2, 7, 3, 3).unwrap(), 7),
    ];
    for (spec, expected) in &cases {
        let value = exact_value(spec);
        assert_eq!(value, *expected, "{spec}");
        let bound = bounds::upper_bound(spec).unwrap().bound;
        assert_eq!(BigUint::from(*expected as u64), bound, "{spec}: bound not met");

        let graph = build_compat_graph(spec, exact::DEFAULT_VERTEX_CAP).unwrap();
        if graph.vertex_count() <= 20 {
            let (brute, _) = brute_force_max_clique(&graph);
            assert_eq!(brute, *expected, "{spec}: naive oracle disagrees");
        }
    }
    println!("acceptance criterion 1: PASS — 4 instances meet their bounds exactly");
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn recurse(total: u32, parts: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            current.push(total);
            out.push(current.clone());
            current.pop();
            return;
        }
        for v in 0..=total {
            current.push(v);
            recurse(total - v, parts - 1, current, out);
            current.pop();
        }
    }
    recurse(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Criterion 2: exact_A never exceeds the closed-form bound on the full
/// grid q ≤ 3, n ≤ 8, w ≤ 3, odd d ≤ 2w−1, for weight and composition
/// specs alike. Exact tolerance.
#[test]
fn criterion_2_bound_soundness_sweep() {
    let mut checked = 0usize;
    for q in 2u8..=3 {
        for w in 1u32..=3 {
            for d in (1..=2 * w - 1).step_by(2) {
                for n in w as usize..=8 {
                    let mut specs = vec![CodeSpec::cwc(q, n, d, w).unwrap()];
                    for wbar in compositions(w, usize::from(q) - 1) {
                        specs.push(CodeSpec::ccc(q, n, d, wbar).unwrap());
                    }
                    for spec in specs {
                        let value = exact_value(&spec);
                        let bound = bounds::upper_bound(&spec).unwrap().bound;
                        assert!(
                            BigUint::from(value as u64) <= bound,
                            "{spec}: exact {value} exceeds bound {bound}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    println!("acceptance criterion 2: PASS — {checked} instances, exact_A <= bound on all");
}

/// Criterion 3: empirical maximum degree equals the closed form and the
/// empirical codegree stays under the envelope, across the stated CWC and
/// CCC instance grids. Exact tolerance.
#[test]
fn criterion_3_degree_closed_forms() {
    let mut checked = 0usize;
    // CWC: q = 3, w in {2,3}, t in {1,2}, n in w+t+1 ..= 10.
    for w in 2u32..=3 {
        for t in 1u32..=2.min(w) {
            let d = 2 * w - 2 * t + 1;
            for n in (w + t + 1) as usize..=10 {
                let spec = CodeSpec::cwc(3, n, d, w).unwrap();
                assert_eq!(spec.t(), t);
                let stats = degree_stats(&spec, StatsMode::Empirical, 200_000_000).unwrap();
                assert_eq!(
                    stats.max_degree.as_ref(),
                    Some(&stats.closed_form),
                    "{spec}: empirical max degree differs from closed form"
                );
                assert!(
                    stats.max_codegree.unwrap() <= stats.codegree_envelope,
                    "{spec}: codegree exceeds envelope"
                );
                checked += 1;
            }
        }
    }
    // CCC: wbar in {(1,1),(2,1)}, same t and n ranges.
    for wbar in [vec![1u32, 1], vec![2, 1]] {
        let w: u32 = wbar.iter().sum();
        for t in 1u32..=2.min(w) {
            let d = 2 * w - 2 * t + 1;
            for n in (w + t + 1) as usize..=10 {
                let spec = CodeSpec::ccc(3, n, d, wbar.clone()).unwrap();
                assert_eq!(spec.t(), t);
                let stats = degree_stats(&spec, StatsMode::Empirical, 200_000_000).unwrap();
                assert_eq!(
                    stats.max_degree.as_ref(),
                    Some(&stats.closed_form),
                    "{spec}: empirical max degree differs from closed form"
                );
                assert!(
                    stats.max_codegree.unwrap() <= stats.codegree_envelope,
                    "{spec}: codegree exceeds envelope"
                );
                checked += 1;
            }
        }
    }
    println!("acceptance criterion 3: PASS — {checked} instances, empirical degree = closed form");
}

fn random_weight_word(rng: &mut ChaCha12Rng, q: u8, n: usize, w: u32) -> Word {
    let mut symbols = vec![0u8; n];
    let mut placed = 0;
    while placed < w {
        let i = rng.random_range(0..n);
        if symbols[i] == 0 {
            symbols[i] = rng.random_range(1..q);
            placed += 1;
        }
    }
    Word::new(q, symbols).unwrap()
}

/// Criterion 4: the distance identity holds on 10^4 random same-weight
/// pairs per configuration. Exact tolerance.
#[test]
fn criterion_4_distance_identity() {
    let configs: [(u8, usize, u32); 6] = [
        (2, 10, 3),
        (3, 20, 5),
        (4, 30, 6),
        (5, 40, 8),
        (5, 12, 4),
        (3, 40, 8),
    ];
    let mut rng = ChaCha12Rng::seed_from_u64(40_001);
    for (q, n, w) in configs {
        for _ in 0..10_000 {
            let x = random_weight_word(&mut rng, q, n, w);
            let y = random_weight_word(&mut rng, q, n, w);
            let (lhs, rhs) = distance_identity(&x, &y).unwrap();
            assert_eq!(lhs, rhs, "identity failed at q={q} n={n} w={w}");
        }
    }
    println!("acceptance criterion 4: PASS — 60000 random pairs, identity exact");
}

/// Criterion 5: 200 randomized (spec, seed) constructions all verify, and
/// re-running each reproduces a byte-identical code file.
#[test]
fn criterion_5_constructor_soundness_and_determinism() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
    let mut runs = 0usize;
    while runs < 200 {
        let q: u8 = rng.random_range(2..=5);
        let w: u32 = rng.random_range(1..=3);
        let n: usize = rng.random_range((w as usize).max(2)..=12);
        let odd_choices: Vec<u32> = (1..=2 * w - 1).step_by(2).collect();
        let d = odd_choices[rng.random_range(0..odd_choices.len())];
        let spec = if rng.random_bool(0.5) {
            CodeSpec::cwc(q, n, d, w).unwrap()
        } else {
            // Random composition of w into q−1 parts.
            let mut counts = vec![0u32; usize::from(q) - 1];
            for _ in 0..w {
                let idx = rng.random_range(0..counts.len());
                counts[idx] += 1;
            }
            CodeSpec::ccc(q, n, d, counts).unwrap()
        };
        let mut config = if rng.random_bool(0.5) {
            MatchConfig::greedy(rng.random())
        } else {
            MatchConfig::nibble(rng.random())
        };
        if runs % 10 == 0 {
            // Exercise the sampled regime as well.
            config.sample_budget = 2_000;
        }
        let (code, report) = construct(&spec, &config).unwrap();
        assert_eq!(verify(&code), Verdict::Ok, "{spec} seed {}", config.seed);
        assert!(BigUint::from(report.code_size as u64) <= report.bound);

        let (again, _) = construct(&spec, &config).unwrap();
        assert_eq!(
            codefile::write_code(&code),
            codefile::write_code(&again),
            "{spec} seed {}: non-deterministic output",
            config.seed
        );
        runs += 1;
    }
    println!("acceptance criterion 5: PASS — 200 constructions verified, byte-identical re-runs");
}

/// Criterion 6: provable maximality floors. Greedy on (q=3,d=3,w=2)
/// reaches n−1 for n in {20,40,80} on every seed; nibble+completion on
/// (q=3,d=5,w=3,n=60) reaches ratio ≥ 0.3 of the bound over 5 seeds.
#[test]
fn criterion_6_maximality_floors() {
    for n in [20usize, 40, 80] {
        let spec = CodeSpec::cwc(3, n, 3, 2).unwrap();
        for seed in 0..5 {
            let (code, _) = greedy_construct(&spec, &MatchConfig::greedy(seed)).unwrap();
            assert!(
                code.len() >= n - 1,
                "greedy n={n} seed={seed}: {} < {}",
                code.len(),
                n - 1
            );
        }
    }

    let spec = CodeSpec::cwc(3, 60, 5, 3).unwrap();
    let bound = bounds::upper_bound(&spec).unwrap().bound;
    let mut best = 0usize;
    for seed in 0..5 {
        let (code, report) = nibble_construct(&spec, &MatchConfig::nibble(seed)).unwrap();
        assert!(report.maximal);
        best = best.max(code.len());
    }
    let ratio = ratio::ratio_of(&BigUint::from(best as u64), &bound);
    let threshold = BigRational::new(3.into(), 10.into());
    assert!(
        ratio >= threshold,
        "nibble best {best} of bound {bound} is below 0.3"
    );
    println!(
        "acceptance criterion 6: PASS — greedy floor n-1 at n=20,40,80; nibble best {best}/{bound}"
    );
}

fn factorial(k: u32) -> BigUint {
    (1..=u64::from(k)).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u32))
}

/// Criterion 7: f_max agrees with factorial brute force for all
/// compositions with q ≤ 4, w ≤ 6, and all 0 ≤ t ≤ w. Exact tolerance.
#[test]
fn criterion_7_f_max_oracle_equivalence() {
    let mut checked = 0usize;
    for q in 2u8..=4 {
        for w in 0u32..=6 {
            for wbar in compositions(w, usize::from(q) - 1) {
                let composition = Composition::new(wbar.clone());
                for t in 0..=w {
                    let (value, _) = f_max(&composition, t).unwrap();
                    // Independent route: odometer over all vectors with
                    // sum t, factorial-based multinomials.
                    let mut best = BigUint::from(0u32);
                    let mut vector = vec![0u32; wbar.len()];
                    loop {
                        if vector.iter().sum::<u32>() == t
                            && vector.iter().zip(&wbar).all(|(v, w)| v <= w)
                        {
                            let mut m = factorial(t);
                            for &part in &vector {
                                m /= factorial(part);
                            }
                            best = best.max(m);
                        }
                        let mut pos = vector.len();
                        let mut done = true;
                        while pos > 0 {
                            pos -= 1;
                            if vector[pos] < t {
                                vector[pos] += 1;
                                vector[pos + 1..].fill(0);
                                done = false;
                                break;
                            }
                        }
                        if done {
                            break;
                        }
                    }
                    assert_eq!(value, best, "wbar={wbar:?} t={t}");
                    checked += 1;
                }
            }
        }
    }
    println!("acceptance criterion 7: PASS — {checked} (wbar,t) pairs agree with brute force");
}

/// Criterion 8: ratio probes. The greedy sweep at (q=3,d=3,w=2) keeps
/// best/bound ≥ 0.95 at n = 20, 40, 80 (hard gate, implied by the
/// criterion-6 floor); the nibble sweep at (q=3,d=5,w=3) over n = 30, 60 is
/// recorded and its weak-increase trend reported (informational).
#[test]
fn criterion_8_ratio_trend_probe() {
    use cwc_cli::sweep::{run_sweep, SweepPlan};

    let greedy_plan = SweepPlan {
        q: 3,
        d: 3,
        constraint: Constraint::Weight(2),
        n_values: vec![20, 40, 80],
        seeds: vec![0, 1, 2, 3, 4],
        config: MatchConfig::greedy(0),
    };
    let table = run_sweep(&greedy_plan, 0).unwrap();
    let threshold = BigRational::new(95.into(), 100.into());
    for row in &table.rows {
        assert!(row.errors.is_empty(), "n={}: {:?}", row.n, row.errors);
        let ratio = row.ratio.clone().expect("ratio present");
        assert!(
            ratio >= threshold,
            "n={}: ratio {} below 0.95",
            row.n,
            ratio::decimal_string(&ratio, 6)
        );
    }

    let nibble_plan = SweepPlan {
        q: 3,
        d: 5,
        constraint: Constraint::Weight(3),
        n_values: vec![30, 60],
        seeds: vec![0, 1, 2, 3, 4],
        config: MatchConfig::nibble(0),
    };
    let table = run_sweep(&nibble_plan, 0).unwrap();
    let ratios: Vec<BigRational> = table
        .rows
        .iter()
        .map(|row| row.ratio.clone().expect("ratio present"))
        .collect();
    let trend = if ratios[1] >= ratios[0] {
        "weakly increasing"
    } else {
        "decreasing (informational only)"
    };
    // Hard gate from criterion 6: best-of-seeds ratio at n=60 stays >= 0.3.
    assert!(
        ratios[1] >= BigRational::new(3.into(), 10.into()),
        "n=60 ratio below the provable floor"
    );
    println!(
        "acceptance criterion 8: PASS — greedy ratios >= 0.95; nibble ratios {} -> {} ({trend})",
        ratio::decimal_string(&ratios[0], 6),
        ratio::decimal_string(&ratios[1], 6),
    );
}
