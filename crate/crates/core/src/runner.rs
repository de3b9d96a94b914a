//! End-to-end search: prepare `H|0>`, apply `Q` `K` times while recording a
//! trace, then sample standard-basis measurements.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analytics::{make_plan, predict_state, GroverPlan, Rounding};
use crate::error::{domain, Result};
use crate::geometry::{make_plane, project, PlaneBasis};
use crate::operators::{grover_iterate, hadamard, CostTally};
use crate::oracle::{seeded_rng, OracleBox};
use crate::state::{basis_ket, BasisIndex, Ket};
use crate::tolerance;

/// ChaCha8 stream used for measurement sampling.
pub const MEASURE_STREAM: u64 = 1;

/// Full amplitude vectors are kept in the trace up to this register size.
pub const FULL_TRACE_MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub rounding: Rounding,
    pub shots: u64,
    pub seed: u64,
    /// Replaces the planned `K`; negative values are rejected.
    pub iterations: Option<i64>,
    /// Keep whole amplitude vectors in the trace (`n <= 10` only).
    pub full_amplitudes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: u64,
    pub target_amplitude: f64,
    /// Common amplitude of the unmarked records.
    pub offtarget_amplitude: f64,
    /// Largest deviation among unmarked amplitudes from `offtarget_amplitude`.
    pub offtarget_spread: f64,
    /// Plane coordinate along `|x0_perp>`.
    pub perp_coordinate: f64,
    pub predicted_target: f64,
    pub predicted_perp: f64,
    pub plane_residual: f64,
    pub tally_snapshot: CostTally,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<Complex64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub plan: GroverPlan,
    pub iterations: u64,
    /// State after Step 0, before any iterate.
    pub initial: TraceRecord,
    pub trace: Vec<TraceRecord>,
    pub final_state_success_prob: f64,
    pub shots: u64,
    pub empirical_success_rate: Option<f64>,
    pub outcome_histogram: BTreeMap<BasisIndex, u64>,
    pub total_queries: u64,
    pub total_single_qubit_ops: u64,
    pub total_phase_ops: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostSummary {
    pub queries: u64,
    pub single_qubit_ops: u64,
    pub phase_ops: u64,
    /// `single_qubit_ops / (sqrt(N) lg N)`.
    pub bound_constant_check: f64,
}

fn record(
    k: u64,
    state: &Ket,
    target: BasisIndex,
    plane: &PlaneBasis,
    plan: &GroverPlan,
    tally: CostTally,
    keep_amplitudes: bool,
) -> Result<TraceRecord> {
    let amps = state.amplitudes();
    let t = target.value() as usize;
    let other = (t + 1) % amps.len();
    let offtarget = amps[other].re;
    let spread = amps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != t)
        .map(|(_, a)| (a - Complex64::new(offtarget, 0.0)).norm())
        .fold(0.0, f64::max);
    let coords = project(plane, state)?;
    let predicted = predict_state(plan, k);
    Ok(TraceRecord {
        k,
        target_amplitude: amps[t].re,
        offtarget_amplitude: offtarget,
        offtarget_spread: spread,
        perp_coordinate: coords.u,
        predicted_target: predicted.target_amp,
        predicted_perp: predicted.perp_amp,
        plane_residual: coords.residual,
        tally_snapshot: tally,
        amplitudes: keep_amplitudes.then(|| amps.to_vec()),
    })
}

/// Runs the search against `oracle`. The loop itself only touches the
/// blackbox through [`grover_iterate`]; the hidden label is read solely to
/// fill trace diagnostics and score the sampled outcomes.
pub fn run_grover(oracle: &mut OracleBox, options: RunOptions) -> Result<RunReport> {
    let n = oracle.n_qubits();
    let plan = make_plan(n as u32, options.rounding)?;
    let iterations = match options.iterations {
        Some(i) if i < 0 => return domain(format!("iteration override must be >= 0, got {i}")),
        Some(i) => i as u64,
        None => plan.k_iterations,
    };
    let keep = options.full_amplitudes && n <= FULL_TRACE_MAX_QUBITS;
    let target = oracle.reveal();
    let plane = make_plane(n, target)?;

    let mut tally = CostTally::default();
    let mut psi = hadamard(basis_ket(n, BasisIndex::new(0))?, &mut tally);
    let initial = record(0, &psi, target, &plane, &plan, tally, keep)?;

    let mut trace = Vec::with_capacity(iterations as usize);
    for k in 1..=iterations {
        psi = grover_iterate(psi, oracle, &mut tally)?;
        trace.push(record(k, &psi, target, &plane, &plan, tally, keep)?);
    }

    let final_state_success_prob = psi.amplitude(target).map_or(0.0, |a| a.norm_sqr());
    let outcome_histogram = measure(&psi, options.shots, options.seed)?;
    let empirical_success_rate = (options.shots > 0).then(|| {
        *outcome_histogram.get(&target).unwrap_or(&0) as f64 / options.shots as f64
    });

    Ok(RunReport {
        plan,
        iterations,
        initial,
        trace,
        final_state_success_prob,
        shots: options.shots,
        empirical_success_rate,
        outcome_histogram,
        total_queries: tally.oracle_queries,
        total_single_qubit_ops: tally.single_qubit_ops,
        total_phase_ops: tally.phase_ops,
    })
}

/// Draws `shots` independent standard-basis outcomes from `|amplitude|^2`
/// by inverse-CDF lookup on a ChaCha8 stream.
pub fn measure(state: &Ket, shots: u64, seed: u64) -> Result<BTreeMap<BasisIndex, u64>> {
    if (state.norm() - 1.0).abs() > tolerance::MEASURE_NORM {
        return domain(format!("cannot measure an unnormalized state (norm {})", state.norm()));
    }
    let mut histogram = BTreeMap::new();
    if shots == 0 {
        return Ok(histogram);
    }
    let cdf: Vec<f64> = state
        .amplitudes()
        .iter()
        .scan(0.0, |acc, a| {
            *acc += a.norm_sqr();
            Some(*acc)
        })
        .collect();
    let total = *cdf.last().unwrap_or(&1.0);
    let last = cdf.len() - 1;
    let mut rng = seeded_rng(seed, MEASURE_STREAM);
    for _ in 0..shots {
        let r = rng.gen::<f64>() * total;
        let slot = cdf.partition_point(|&c| c <= r).min(last);
        *histogram.entry(BasisIndex::new(slot as u64)).or_insert(0) += 1;
    }
    Ok(histogram)
}

pub fn cost_summary(report: &RunReport) -> CostSummary {
    let n_records = report.plan.n_records as f64;
    let denom = n_records.sqrt() * n_records.log2();
    CostSummary {
        queries: report.total_queries,
        single_qubit_ops: report.total_single_qubit_ops,
        phase_ops: report.total_phase_ops,
        bound_constant_check: report.total_single_qubit_ops as f64 / denom,
    }
}
