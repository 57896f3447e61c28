//! Constructor properties: soundness across seeds, provable maximality
//! floors, the bite-sanity comparison between nibble and greedy, and the
//! exact-oracle dominance over heuristic outputs.

use num_bigint::BigUint;

use cwc_core::bounds;
use cwc_core::code::{verify, CodeSpec, Verdict};
use cwc_core::exact;
use cwc_core::matcher::{
    construct, greedy_construct, is_maximal, nibble_construct, Algorithm, MatchConfig,
};

#[test]
fn outputs_verify_across_spec_grid_and_seeds() {
    let specs = [
        CodeSpec::cwc(3, 10, 3, 2).unwrap(),
        CodeSpec::cwc(4, 12, 5, 3).unwrap(),
        CodeSpec::cwc(2, 9, 3, 3).unwrap(),
        CodeSpec::ccc(3, 10, 3, vec![1, 1]).unwrap(),
        CodeSpec::ccc(3, 12, 3, vec![2, 1]).unwrap(),
        CodeSpec::ccc(4, 10, 5, vec![1, 1, 1]).unwrap(),
    ];
    for spec in &specs {
        for seed in 0..5 {
            for algorithm in [Algorithm::Greedy, Algorithm::Nibble] {
                let mut config = MatchConfig::greedy(seed);
                config.algorithm = algorithm;
                let (code, report) = construct(spec, &config).unwrap();
                assert_eq!(verify(&code), Verdict::Ok, "{spec} seed {seed}");
                assert_eq!(code.len(), report.code_size);
                assert!(BigUint::from(code.len() as u64) <= report.bound);
            }
        }
    }
}

#[test]
fn maximality_floor_for_t1_specs() {
    // Any maximal output of a t=1 weight spec has at least
    // (q-1)·n/w² − w words.
    for (w, d, n_values) in [(2u32, 3u32, [30usize, 60]), (3, 5, [30, 60])] {
        for n in n_values {
            let spec = CodeSpec::cwc(3, n, d, w).unwrap();
            let floor = 2.0 * n as f64 / f64::from(w * w) - f64::from(w);
            for seed in 0..3 {
                let (code, _) = greedy_construct(&spec, &MatchConfig::greedy(seed)).unwrap();
                assert!(
                    code.len() as f64 >= floor,
                    "{spec} seed {seed}: {} < floor {floor}",
                    code.len()
                );
            }
        }
    }
}

#[test]
fn single_round_full_bite_tracks_greedy() {
    // bite_fraction = 1, one round, completion on: sizes within 10% of
    // greedy over 20 seeds.
    let spec = CodeSpec::cwc(3, 30, 3, 2).unwrap();
    let mut nibble_total = 0usize;
    let mut greedy_total = 0usize;
    for seed in 0..20 {
        let mut config = MatchConfig::nibble(seed);
        config.bite_fraction = 1.0;
        config.max_rounds = 1;
        let (code, _) = nibble_construct(&spec, &config).unwrap();
        nibble_total += code.len();
        let (code, _) = greedy_construct(&spec, &MatchConfig::greedy(seed)).unwrap();
        greedy_total += code.len();
    }
    let nibble_mean = nibble_total as f64 / 20.0;
    let greedy_mean = greedy_total as f64 / 20.0;
    let gap = (nibble_mean - greedy_mean).abs() / greedy_mean.max(nibble_mean);
    assert!(
        gap <= 0.10,
        "nibble mean {nibble_mean} vs greedy mean {greedy_mean}"
    );
}

#[test]
fn exact_oracle_dominates_heuristics() {
    for spec in [
        CodeSpec::cwc(3, 7, 3, 2).unwrap(),
        CodeSpec::ccc(3, 7, 3, vec![1, 1]).unwrap(),
    ] {
        let optimum = exact::exact_a(&spec, None, exact::DEFAULT_VERTEX_CAP)
            .unwrap()
            .value;
        for seed in 0..5 {
            let (code, _) = greedy_construct(&spec, &MatchConfig::greedy(seed)).unwrap();
            assert!(code.len() <= optimum, "{spec} seed {seed}");
            let (code, _) = nibble_construct(&spec, &MatchConfig::nibble(seed)).unwrap();
            assert!(code.len() <= optimum, "{spec} seed {seed}");
        }
    }
}

#[test]
fn ratio_never_exceeds_one() {
    for seed in [0u64, 17, 91] {
        let spec = CodeSpec::cwc(3, 15, 3, 2).unwrap();
        let (_, report) = greedy_construct(&spec, &MatchConfig::greedy(seed)).unwrap();
        let bound = bounds::upper_bound(&spec).unwrap().bound;
        assert_eq!(report.bound, bound);
        assert!(report.ratio <= num_rational::BigRational::from_integer(1.into()));
    }
}

#[test]
fn completion_pass_gives_maximal_outputs() {
    let spec = CodeSpec::cwc(3, 9, 3, 2).unwrap();
    for seed in 0..4 {
        let (code, report) = nibble_construct(&spec, &MatchConfig::nibble(seed)).unwrap();
        assert!(report.maximal);
        assert!(is_maximal(&code), "seed {seed}");
    }
}
