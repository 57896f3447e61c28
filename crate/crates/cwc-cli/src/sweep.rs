//! Sweep harness: runs a construction plan across a grid of lengths and
//! seeds, verifying every output, and tabulates achieved sizes against the
//! Johnson-type bound. Cells fail soft — an error is recorded in its row
//! and the sweep continues.

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use cwc_core::bounds::{self, BigCount};
use cwc_core::code::{verify, CodeSpec, Constraint, Verdict};
use cwc_core::matcher::{construct, MatchConfig};
use cwc_core::ratio;

use crate::reports::RATIO_DECIMALS;

/// A fixed `(q, d, constraint)` family swept across lengths and seeds.
#[derive(Clone, Debug)]
pub struct SweepPlan {
    pub q: u8,
    pub d: u32,
    pub constraint: Constraint,
    /// Strictly increasing lengths.
    pub n_values: Vec<usize>,
    pub seeds: Vec<u64>,
    /// Template config; the per-cell seed overrides its `seed` field.
    pub config: MatchConfig,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<(), String> {
        if self.d % 2 == 0 {
            return Err("sweep requires odd d (constructors refuse even d)".into());
        }
        if !self.n_values.windows(2).all(|w| w[0] < w[1]) {
            return Err("n-values must be strictly increasing".into());
        }
        if self.seeds.is_empty() {
            return Err("at least one seed is required".into());
        }
        Ok(())
    }

    fn spec_for(&self, n: usize) -> Result<CodeSpec, String> {
        match &self.constraint {
            Constraint::Weight(w) => {
                CodeSpec::cwc(self.q, n, self.d, *w).map_err(|e| e.to_string())
            }
            Constraint::Composition(c) => {
                CodeSpec::ccc(self.q, n, self.d, c.counts().to_vec()).map_err(|e| e.to_string())
            }
        }
    }
}

/// Aggregated results for one length. `wall_time_ms` is volatile bookkeeping
/// and never serialized into result files.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub bound: Option<BigCount>,
    pub best_size: Option<usize>,
    pub mean_size: Option<BigRational>,
    pub ratio: Option<BigRational>,
    pub wall_time_ms: u128,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub plan: SweepPlan,
    pub rows: Vec<SweepRow>,
}

/// Runs every `(n, seed)` cell of the plan in a work pool of `threads`
/// workers (0 = rayon default). Row assembly is ordered by `(n, seed)`, so
/// the table is deterministic for a given plan.
pub fn run_sweep(plan: &SweepPlan, threads: usize) -> Result<SweepTable, String> {
    plan.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;

    let cells: Vec<(usize, u64)> = plan
        .n_values
        .iter()
        .flat_map(|&n| plan.seeds.iter().map(move |&seed| (n, seed)))
        .collect();

    let results: Vec<(usize, u64, Result<usize, String>, u128)> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, seed)| {
                let started = std::time::Instant::now();
                let outcome = run_cell(plan, n, seed);
                (n, seed, outcome, started.elapsed().as_millis())
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(plan.n_values.len());
    for &n in &plan.n_values {
        let bound = plan
            .spec_for(n)
            .ok()
            .and_then(|spec| bounds::upper_bound(&spec).ok())
            .map(|report| report.bound);
        let mut best: Option<usize> = None;
        let mut sizes: Vec<usize> = Vec::new();
        let mut errors: Vec<String> = Vec::new();
        let mut wall = 0u128;
        for (cell_n, seed, outcome, elapsed) in &results {
            if *cell_n != n {
                continue;
            }
            wall += elapsed;
            match outcome {
                Ok(size) => {
                    sizes.push(*size);
                    best = Some(best.map_or(*size, |b: usize| b.max(*size)));
                }
                Err(message) => errors.push(format!("seed {seed}: {message}")),
            }
        }
        let mean_size = if sizes.is_empty() {
            None
        } else {
            let total: u64 = sizes.iter().map(|&s| s as u64).sum();
            Some(ratio::ratio_of(
                &BigUint::from(total),
                &BigUint::from(sizes.len() as u64),
            ))
        };
        let ratio = match (&best, &bound) {
            (Some(b), Some(bd)) => Some(ratio::ratio_of(&BigUint::from(*b as u64), bd)),
            _ => None,
        };
        rows.push(SweepRow {
            n,
            bound,
            best_size: best,
            mean_size,
            ratio,
            wall_time_ms: wall,
            errors,
        });
    }
    Ok(SweepTable {
        plan: plan.clone(),
        rows,
    })
}

fn run_cell(plan: &SweepPlan, n: usize, seed: u64) -> Result<usize, String> {
    let spec = plan.spec_for(n)?;
    let mut config = plan.config.clone();
    config.seed = seed;
    let (code, report) = construct(&spec, &config).map_err(|e| e.to_string())?;
    match verify(&code) {
        Verdict::Ok => Ok(report.code_size),
        violation => Err(format!("verification failed: {violation}")),
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

pub fn table_json(table: &SweepTable) -> Value {
    let plan = &table.plan;
    let mut plan_obj = serde_json::Map::new();
    plan_obj.insert("q".into(), json!(plan.q));
    plan_obj.insert("d".into(), json!(plan.d));
    match &plan.constraint {
        Constraint::Weight(w) => {
            plan_obj.insert("kind".into(), json!("cwc"));
            plan_obj.insert("w".into(), json!(w));
        }
        Constraint::Composition(c) => {
            plan_obj.insert("kind".into(), json!("ccc"));
            plan_obj.insert("wbar".into(), json!(c.counts()));
        }
    }
    plan_obj.insert("algorithm".into(), json!(plan.config.algorithm.as_str()));
    plan_obj.insert("bite_fraction".into(), json!(plan.config.bite_fraction));
    plan_obj.insert("max_rounds".into(), json!(plan.config.max_rounds));
    plan_obj.insert("completion".into(), json!(plan.config.completion));
    plan_obj.insert("sample_budget".into(), json!(plan.config.sample_budget));
    plan_obj.insert("n_values".into(), json!(plan.n_values));
    plan_obj.insert("seeds".into(), json!(plan.seeds));

    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "bound": row.bound.as_ref().map(|b| b.to_string()),
                "best_size": row.best_size,
                "mean_size": row.mean_size.as_ref().map(ratio::ratio_string),
                "mean_size_decimal": row
                    .mean_size
                    .as_ref()
                    .map(|m| ratio::decimal_string(m, RATIO_DECIMALS)),
                "ratio": row.ratio.as_ref().map(ratio::ratio_string),
                "ratio_decimal": row
                    .ratio
                    .as_ref()
                    .map(|r| ratio::decimal_string(r, RATIO_DECIMALS)),
                "errors": row.errors,
            })
        })
        .collect();
    json!({"plan": Value::Object(plan_obj), "rows": rows})
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// CSV with the fixed column order
/// `n,bound,best_size,mean_size,mean_size_decimal,ratio,ratio_decimal,errors`.
pub fn table_csv(table: &SweepTable) -> String {
    let mut out =
        String::from("n,bound,best_size,mean_size,mean_size_decimal,ratio,ratio_decimal,errors\n");
    for row in &table.rows {
        let cols = [
            row.n.to_string(),
            row.bound.as_ref().map(|b| b.to_string()).unwrap_or_default(),
            row.best_size.map(|b| b.to_string()).unwrap_or_default(),
            row.mean_size
                .as_ref()
                .map(ratio::ratio_string)
                .unwrap_or_default(),
            row.mean_size
                .as_ref()
                .map(|m| ratio::decimal_string(m, RATIO_DECIMALS))
                .unwrap_or_default(),
            row.ratio
                .as_ref()
                .map(ratio::ratio_string)
                .unwrap_or_default(),
            row.ratio
                .as_ref()
                .map(|r| ratio::decimal_string(r, RATIO_DECIMALS))
                .unwrap_or_default(),
            row.errors.join("; "),
        ];
        let line: Vec<String> = cols.iter().map(|c| csv_escape(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
