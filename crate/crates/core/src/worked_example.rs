//! The eight-record reference search (`n = 3`, marked record `5`).
//!
//! The reference tables list each vector and matrix with the marked record in
//! slot 4 (0-based) rather than slot 5. Relabeling by the transposition of
//! slots 4 and 5 maps every table exactly onto the simulator's 0-based
//! labels; no other entry differs.

use crate::analytics::{actual_error, make_plan, Rounding};
use crate::error::Result;
use crate::operators::{render_dense, DenseUnitary, OperatorSpec};
use crate::oracle::oracle_new;
use crate::runner::{run_grover, RunOptions};
use crate::state::BasisIndex;

pub const N_QUBITS: usize = 3;
pub const TARGET: BasisIndex = BasisIndex::new(5);
pub const K_ITERATIONS: u64 = 2;
/// Slot holding the marked record in the reference tables.
pub const TABLE_MARKED_SLOT: usize = 4;
pub const SUCCESS_PROB: f64 = 121.0 / 128.0;
pub const FAILURE_PROB: f64 = 7.0 / 128.0;

/// `psi0`, `psi1`, `psi2` as tabulated.
pub fn tabulated_states() -> [Vec<f64>; 3] {
    let s8 = 8f64.sqrt();
    let a = 4.0 * 2f64.sqrt();
    let b = 8.0 * 2f64.sqrt();
    [
        [1.0; 8].iter().map(|x| x / s8).collect(),
        [1.0, 1.0, 1.0, 1.0, 5.0, 1.0, 1.0, 1.0].iter().map(|x| x / a).collect(),
        [-1.0, -1.0, -1.0, -1.0, 11.0, -1.0, -1.0, -1.0].iter().map(|x| x / b).collect(),
    ]
}

/// `I_|5>` as tabulated.
pub fn tabulated_oracle() -> Vec<Vec<f64>> {
    (0..8)
        .map(|r| (0..8).map(|c| if r != c { 0.0 } else if r == 4 { -1.0 } else { 1.0 }).collect())
        .collect()
}

/// `4 Q` as tabulated.
pub fn tabulated_q_times_four() -> Vec<Vec<f64>> {
    vec![
        vec![-3.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0],
        vec![1.0, -3.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, -3.0, 1.0, -1.0, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, -3.0, -1.0, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 1.0, -1.0, -3.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -3.0, 1.0],
        vec![1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -3.0],
    ]
}

fn relabel_slot(i: usize) -> usize {
    match i {
        4 => 5,
        5 => 4,
        other => other,
    }
}

/// Moves a tabulated vector onto 0-based labels.
pub fn relabel_vector(values: &[f64]) -> Vec<f64> {
    (0..values.len()).map(|i| values[relabel_slot(i)]).collect()
}

/// Moves a tabulated matrix onto 0-based labels (`P M P` with `P` the swap).
pub fn relabel_matrix(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..rows.len())
        .map(|r| (0..rows.len()).map(|c| rows[relabel_slot(r)][relabel_slot(c)]).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckItem {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkedExampleCheck {
    pub items: Vec<CheckItem>,
    pub k_iterations: u64,
    pub success_prob: f64,
    pub failure_prob: f64,
}

impl WorkedExampleCheck {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

/// Runs the reference search and compares every tabulated quantity, after
/// relabeling, within `tol`. `rounding` is exposed so a wrong iteration count
/// can be injected.
pub fn check_worked_example(rounding: Rounding, tol: f64) -> Result<WorkedExampleCheck> {
    let mut items = Vec::new();
    let mut push = |name: String, expected: f64, actual: f64| {
        let passed = (expected - actual).abs() <= tol;
        items.push(CheckItem { name, expected, actual, passed });
    };

    let plan = make_plan(N_QUBITS as u32, rounding)?;
    push("K".into(), K_ITERATIONS as f64, plan.k_iterations as f64);

    let mut oracle = oracle_new(N_QUBITS, Some(TARGET), None)?;
    let report = run_grover(&mut oracle, RunOptions { rounding, full_amplitudes: true, ..Default::default() })?;
    let simulated: Vec<Option<&Vec<num_complex::Complex64>>> = std::iter::once(&report.initial)
        .chain(&report.trace)
        .map(|r| r.amplitudes.as_ref())
        .collect();

    for (k, table) in tabulated_states().iter().enumerate() {
        let expected = relabel_vector(table);
        let state = simulated.get(k).copied().flatten();
        for (slot, e) in expected.iter().enumerate() {
            let actual = state.map_or(f64::NAN, |s| s[slot].re);
            push(format!("psi{k}[{slot}]"), *e, actual);
        }
    }

    let success = report.final_state_success_prob;
    push("Prob_Success".into(), SUCCESS_PROB, success);
    push("Prob_Failure".into(), FAILURE_PROB, 1.0 - success);
    push("cos^2((2K+1)beta)".into(), FAILURE_PROB, actual_error(&plan));

    Ok(WorkedExampleCheck {
        items,
        k_iterations: plan.k_iterations,
        success_prob: success,
        failure_prob: 1.0 - success,
    })
}

/// Simulated `I_|5>` and `Q` for the reference search.
pub fn simulated_matrices() -> Result<(DenseUnitary, DenseUnitary)> {
    let mut oracle = oracle_new(N_QUBITS, Some(TARGET), None)?;
    let i5 = render_dense(OperatorSpec::Oracle(&mut oracle), N_QUBITS)?;
    let q = render_dense(OperatorSpec::Grover(&mut oracle), N_QUBITS)?;
    Ok((i5, q))
}
