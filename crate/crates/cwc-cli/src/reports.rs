//! JSON shaping for every CLI output. Exact integers render as decimal
//! strings (they routinely exceed native widths), ratios as `"p/q"` plus a
//! 6-decimal rendering. Nothing volatile (timestamps, wall times) enters
//! these values, so identical inputs serialize byte-identically.

use serde_json::{json, Map, Value};

use cwc_core::bounds::BoundReport;
use cwc_core::code::{CodeSpec, Constraint, Verdict};
use cwc_core::exact::{CliqueStatus, ExactResult};
use cwc_core::hyper::{AuxVertex, DegreeStats, StatsMode};
use cwc_core::matcher::{ConflictDiagnostics, RunReport};
use cwc_core::ratio;

pub const RATIO_DECIMALS: u32 = 6;

/// Common spec fields: `q`, `n`, `d`, `kind`, `w` or `wbar`, `t`.
fn spec_fields(spec: &CodeSpec, out: &mut Map<String, Value>) {
    out.insert("q".into(), json!(spec.q()));
    out.insert("n".into(), json!(spec.n()));
    out.insert("d".into(), json!(spec.d()));
    match spec.constraint() {
        Constraint::Weight(w) => {
            out.insert("kind".into(), json!("cwc"));
            out.insert("w".into(), json!(w));
        }
        Constraint::Composition(c) => {
            out.insert("kind".into(), json!("ccc"));
            out.insert("wbar".into(), json!(c.counts()));
        }
    }
    out.insert("t".into(), json!(spec.t()));
}

pub fn bound_json(report: &BoundReport) -> Value {
    let mut out = Map::new();
    spec_fields(&report.spec, &mut out);
    out.insert("bound".into(), json!(report.bound.to_string()));
    out.insert("parity".into(), json!(report.parity.as_str()));
    out.insert("formula".into(), json!(report.formula.as_str()));
    out.insert(
        "f".into(),
        report
            .f_value
            .as_ref()
            .map(|f| json!(f.to_string()))
            .unwrap_or(Value::Null),
    );
    out.insert(
        "witness".into(),
        report
            .witness_admissible
            .as_ref()
            .map(|w| json!(w))
            .unwrap_or(Value::Null),
    );
    Value::Object(out)
}

/// Construction report; carries every config field so a run can be replayed
/// from its report alone. Wall time is deliberately absent (volatile).
pub fn run_report_json(report: &RunReport) -> Value {
    let mut out = Map::new();
    spec_fields(&report.spec, &mut out);
    let config = &report.config;
    out.insert("algorithm".into(), json!(config.algorithm.as_str()));
    out.insert("seed".into(), json!(config.seed));
    out.insert("bite_fraction".into(), json!(config.bite_fraction));
    out.insert("max_rounds".into(), json!(config.max_rounds));
    out.insert("completion".into(), json!(config.completion));
    out.insert("sample_budget".into(), json!(config.sample_budget));
    out.insert("code_size".into(), json!(report.code_size));
    out.insert("bound".into(), json!(report.bound.to_string()));
    out.insert("ratio".into(), json!(ratio::ratio_string(&report.ratio)));
    out.insert(
        "ratio_decimal".into(),
        json!(ratio::decimal_string(&report.ratio, RATIO_DECIMALS)),
    );
    out.insert("maximal".into(), json!(report.maximal));
    out.insert("rounds_executed".into(), json!(report.rounds_executed));
    out.insert(
        "candidates_examined".into(),
        json!(report.candidates_examined),
    );
    Value::Object(out)
}

fn aux_vertex_json(vertex: &AuxVertex) -> Value {
    json!({
        "pairs": vertex.pairs.iter().map(|&(i, a)| json!([i, a])).collect::<Vec<_>>(),
        "bare": vertex.bare,
    })
}

pub fn stats_json(stats: &DegreeStats, conflicts: Option<&ConflictDiagnostics>) -> Value {
    let mut out = Map::new();
    spec_fields(&stats.spec, &mut out);
    out.insert(
        "mode".into(),
        json!(match stats.mode {
            StatsMode::ClosedForm => "closed-form",
            StatsMode::Empirical => "empirical",
        }),
    );
    out.insert("closed_form".into(), json!(stats.closed_form.to_string()));
    out.insert(
        "codegree_envelope".into(),
        json!(stats.codegree_envelope.to_string()),
    );
    let opt_str = |v: &Option<num_bigint::BigUint>| {
        v.as_ref().map(|x| json!(x.to_string())).unwrap_or(Value::Null)
    };
    out.insert("max_degree".into(), opt_str(&stats.max_degree));
    out.insert("max_codegree".into(), opt_str(&stats.max_codegree));
    out.insert(
        "alpha_fc".into(),
        stats
            .alpha_fc
            .as_ref()
            .map(|a| json!(ratio::ratio_string(a)))
            .unwrap_or(Value::Null),
    );
    out.insert(
        "conflict_degree_max".into(),
        opt_str(&stats.conflict_degree_max),
    );
    out.insert(
        "max_degree_witness".into(),
        stats
            .max_degree_witness
            .as_ref()
            .map(aux_vertex_json)
            .unwrap_or(Value::Null),
    );
    out.insert(
        "conflicts".into(),
        conflicts.map(conflict_json).unwrap_or(Value::Null),
    );
    Value::Object(out)
}

fn conflict_json(diag: &ConflictDiagnostics) -> Value {
    json!({
        "d_value": diag.d_value.to_string(),
        "beta": diag.beta,
        "delta2_envelope": diag.delta2_envelope.to_string(),
        "delta2_empirical": diag.delta2_empirical.as_ref().map(|v| v.to_string()),
        "cod_envelope": diag.cod_envelope.to_string(),
        "delta2_ratio": diag.delta2_ratio,
        "cod_ratio": diag.cod_ratio,
    })
}

pub fn exact_json(result: &ExactResult, witness_file: Option<&str>) -> Value {
    let (status, upper_bound) = match &result.status {
        CliqueStatus::Exact => ("exact", Value::Null),
        CliqueStatus::Timeout { upper_bound } => ("timeout", json!(upper_bound.to_string())),
    };
    json!({
        "value": result.value,
        "bound": result.bound.to_string(),
        "tight": result.tight,
        "status": status,
        "upper_bound": upper_bound,
        "witness_file": witness_file,
    })
}

pub fn verdict_json(verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Ok => json!({"status": "ok"}),
        Verdict::WordViolation { index, reason } => json!({
            "status": "violation",
            "kind": "word",
            "word": index + 1,
            "reason": reason,
        }),
        Verdict::PairViolation {
            i,
            j,
            distance,
            required,
        } => json!({
            "status": "violation",
            "kind": "pair",
            "first": i + 1,
            "second": j + 1,
            "distance": distance,
            "required": required,
        }),
    }
}
