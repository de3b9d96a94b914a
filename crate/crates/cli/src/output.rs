//! Report encodings: JSON document, CSV trace and human-readable tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use grover_core::{
    actual_error, cost_summary, error_bound, BasisIndex, CostSummary, DenseUnitary, GroverPlan,
    Rounding, RunReport, TraceRecord,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSection {
    pub n: u32,
    pub n_records: u64,
    pub beta: f64,
    pub alpha: f64,
    pub k_iterations: u64,
    pub rounding: Rounding,
    pub iterations_run: u64,
    pub exact_error: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSection {
    pub initial: TraceRecord,
    pub iterations: Vec<TraceRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSection {
    pub shots: u64,
    pub final_state_success_prob: f64,
    pub empirical_success_rate: Option<f64>,
    pub counts: BTreeMap<BasisIndex, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub seed: u64,
    pub timestamp_unix: u64,
}

/// Top-level JSON layout of a run report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub plan: PlanSection,
    pub trace: TraceSection,
    pub histogram: HistogramSection,
    pub cost: CostSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl ReportDocument {
    pub fn new(report: &RunReport, meta: Option<Meta>) -> Self {
        let plan = &report.plan;
        ReportDocument {
            plan: PlanSection {
                n: plan.n,
                n_records: plan.n_records,
                beta: plan.beta,
                alpha: plan.alpha,
                k_iterations: plan.k_iterations,
                rounding: plan.rounding,
                iterations_run: report.iterations,
                exact_error: actual_error(plan),
                error_bound: error_bound(plan),
            },
            trace: TraceSection { initial: report.initial.clone(), iterations: report.trace.clone() },
            histogram: HistogramSection {
                shots: report.shots,
                final_state_success_prob: report.final_state_success_prob,
                empirical_success_rate: report.empirical_success_rate,
                counts: report.outcome_histogram.clone(),
            },
            cost: cost_summary(report),
            meta,
        }
    }

    /// Rebuilds the run report the document was made from.
    pub fn into_report(self) -> RunReport {
        RunReport {
            plan: GroverPlan {
                n: self.plan.n,
                n_records: self.plan.n_records,
                beta: self.plan.beta,
                alpha: self.plan.alpha,
                k_iterations: self.plan.k_iterations,
                rounding: self.plan.rounding,
            },
            iterations: self.plan.iterations_run,
            initial: self.trace.initial,
            trace: self.trace.iterations,
            final_state_success_prob: self.histogram.final_state_success_prob,
            shots: self.histogram.shots,
            empirical_success_rate: self.histogram.empirical_success_rate,
            outcome_histogram: self.histogram.counts,
            total_queries: self.cost.queries,
            total_single_qubit_ops: self.cost.single_qubit_ops,
            total_phase_ops: self.cost.phase_ops,
        }
    }
}

pub fn report_json(report: &RunReport, meta: Option<Meta>) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(&ReportDocument::new(report, meta))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_report_json(s: &str) -> serde_json::Result<RunReport> {
    Ok(serde_json::from_str::<ReportDocument>(s)?.into_report())
}

const TRACE_HEADER: [&str; 5] =
    ["k", "target_amplitude", "offtarget_amplitude", "predicted_target", "plane_residual"];

/// One header row plus one row per iteration.
pub fn trace_csv(report: &RunReport) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(TRACE_HEADER)?;
    for r in &report.trace {
        w.write_record([
            r.k.to_string(),
            r.target_amplitude.to_string(),
            r.offtarget_amplitude.to_string(),
            r.predicted_target.to_string(),
            r.plane_residual.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Histogram rows shown in tables before eliding the rest.
const TABLE_HISTOGRAM_ROWS: usize = 16;

pub fn report_table(report: &RunReport, show_trace: bool) -> String {
    let plan = &report.plan;
    let cost = cost_summary(report);
    let mut s = String::new();
    let _ = writeln!(s, "Grover search: n={} N={} rounding={}", plan.n, plan.n_records, plan.rounding);
    let _ = writeln!(s, "  beta                 {:.6} rad", plan.beta);
    let _ = writeln!(s, "  alpha                {:.6} rad", plan.alpha);
    let _ = writeln!(s, "  K (planned)          {}", plan.k_iterations);
    let _ = writeln!(s, "  iterations run       {}", report.iterations);
    if show_trace {
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "  {:>5}  {:>10}  {:>10}  {:>10}  {:>10}",
            "k", "target", "offtarget", "predicted", "residual"
        );
        for r in &report.trace {
            let _ = writeln!(
                s,
                "  {:>5}  {:>10.6}  {:>10.6}  {:>10.6}  {:>10.3e}",
                r.k, r.target_amplitude, r.offtarget_amplitude, r.predicted_target, r.plane_residual
            );
        }
        let _ = writeln!(s);
    }
    let _ = writeln!(s, "  final probability    {:.6}", report.final_state_success_prob);
    let _ = writeln!(s, "  failure probability  {:.6}", 1.0 - report.final_state_success_prob);
    let _ = writeln!(s, "  error bound          {:.6}", error_bound(plan));
    if let Some(rate) = report.empirical_success_rate {
        let _ = writeln!(s, "  shots                {}", report.shots);
        let _ = writeln!(s, "  empirical success    {rate:.6}");
        let _ = writeln!(s, "  outcomes:");
        for (label, count) in report.outcome_histogram.iter().take(TABLE_HISTOGRAM_ROWS) {
            let _ = writeln!(s, "    {:>8}  {}", label.value(), count);
        }
        let extra = report.outcome_histogram.len().saturating_sub(TABLE_HISTOGRAM_ROWS);
        if extra > 0 {
            let _ = writeln!(s, "    ... {extra} more outcomes");
        }
    }
    let _ = writeln!(
        s,
        "  cost                 queries={} single_qubit_ops={} phase_ops={} ops/(sqrt(N) lg N)={:.6}",
        cost.queries, cost.single_qubit_ops, cost.phase_ops, cost.bound_constant_check
    );
    s
}

fn integral_at(rows: &[Vec<f64>], scale: f64) -> bool {
    rows.iter().flatten().all(|x| (x * scale - (x * scale).round()).abs() < 1e-9)
}

/// Prints `m` with integer entries when possible: as is, or as `(1/(N/2)) x M`
/// (which covers `Q`). Falls back to decimals.
pub fn dense_table(name: &str, m: &DenseUnitary) -> String {
    let dim = m.dim();
    let rows = m.real_rows();
    let real = m.matrix().iter().all(|z| z.im.abs() < 1e-12);
    let half = (dim / 2).max(1) as f64;
    let mut s = String::new();
    let scale = if real && integral_at(&rows, 1.0) {
        let _ = writeln!(s, "{name} =");
        Some(1.0)
    } else if real && integral_at(&rows, half) {
        let _ = writeln!(s, "{name} = (1/{}) x", dim / 2);
        Some(half)
    } else {
        let _ = writeln!(s, "{name} =");
        None
    };
    for row in &rows {
        let cells: Vec<String> = match scale {
            Some(f) => row.iter().map(|x| format!("{:>3}", (x * f).round() as i64)).collect(),
            None => row.iter().map(|x| format!("{x:>9.6}")).collect(),
        };
        let _ = writeln!(s, "  [{}]", cells.join(" "));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanRow {
    pub n: u32,
    pub n_records: u64,
    pub beta: f64,
    pub k_iterations: u64,
    pub exact_error: f64,
    pub error_bound: f64,
    pub within_bound: bool,
}

impl PlanRow {
    pub fn new(plan: &GroverPlan) -> Self {
        let exact_error = actual_error(plan);
        let bound = error_bound(plan);
        PlanRow {
            n: plan.n,
            n_records: plan.n_records,
            beta: plan.beta,
            k_iterations: plan.k_iterations,
            exact_error,
            error_bound: bound,
            within_bound: exact_error <= bound + 1e-12,
        }
    }
}

pub fn plan_table(rows: &[PlanRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3}  {:>14}  {:>9}  {:>8}  {:>9}  {:>9}  ok",
        "n", "N", "beta", "K", "error", "bound"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3}  {:>14}  {:>9.6}  {:>8}  {:>9.6}  {:>9.6}  {}",
            r.n,
            r.n_records,
            r.beta,
            r.k_iterations,
            r.exact_error,
            r.error_bound,
            if r.within_bound { "yes" } else { "NO" }
        );
    }
    s
}

pub fn plan_csv(rows: &[PlanRow]) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}
