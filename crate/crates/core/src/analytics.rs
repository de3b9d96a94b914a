//! Closed-form quantities of the search: the half-angle `beta`, the iteration
//! count `K`, the predicted state after `k` iterates and the error bounds.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest register a plan can describe while `2^n` stays exact in an `f64`.
pub const MAX_PLAN_QUBITS: u32 = 52;

/// How `pi/(4 beta) - 1/2` is turned into an iteration count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Nearest integer, ties away from zero.
    #[default]
    Round,
    Floor,
}

impl std::fmt::Display for Rounding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rounding::Round => "round",
            Rounding::Floor => "floor",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverPlan {
    pub n: u32,
    pub n_records: u64,
    /// `arcsin(1/sqrt N)`: angle from `|x0_perp>` to `|psi0>`.
    pub beta: f64,
    /// `pi/2 - beta`: angle from `|psi0>` to `|x0>`.
    pub alpha: f64,
    pub k_iterations: u64,
    pub rounding: Rounding,
}

impl GroverPlan {
    /// `pi / (4 beta)`, the continuous optimum of `k + 1/2`.
    pub fn quarter_turns(&self) -> f64 {
        PI / (4.0 * self.beta)
    }
}

/// `sin`/`cos` coordinates of `Q^k |psi0>` along `|x0>` and `|x0_perp>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictedState {
    pub k: u64,
    pub target_amp: f64,
    pub perp_amp: f64,
    pub success_prob: f64,
}

pub fn make_plan(n: u32, rounding: Rounding) -> Result<GroverPlan> {
    if n < 1 {
        return domain("a search needs at least one qubit");
    }
    if n > MAX_PLAN_QUBITS {
        return domain(format!("plans are limited to {MAX_PLAN_QUBITS} qubits"));
    }
    let n_records = 1u64 << n;
    let beta = (1.0 / (n_records as f64).sqrt()).asin();
    let raw = PI / (4.0 * beta) - 0.5;
    let k = match rounding {
        Rounding::Round => raw.round(),
        Rounding::Floor => raw.floor(),
    };
    Ok(GroverPlan {
        n,
        n_records,
        beta,
        alpha: FRAC_PI_2 - beta,
        k_iterations: k.max(0.0) as u64,
        rounding,
    })
}

pub fn predict_state(plan: &GroverPlan, k: u64) -> PredictedState {
    let angle = (2 * k + 1) as f64 * plan.beta;
    let (target_amp, perp_amp) = angle.sin_cos();
    PredictedState { k, target_amp, perp_amp, success_prob: target_amp * target_amp }
}

/// Upper bound on the failure probability: `1/N` when rounding,
/// `4/N - 4/N^2` when flooring.
pub fn error_bound(plan: &GroverPlan) -> f64 {
    let n = plan.n_records as f64;
    match plan.rounding {
        Rounding::Round => 1.0 / n,
        Rounding::Floor => 4.0 / n - 4.0 / (n * n),
    }
}

/// `cos^2((2K + 1) beta)`.
pub fn actual_error(plan: &GroverPlan) -> f64 {
    let c = predict_state(plan, plan.k_iterations).perp_amp;
    c * c
}

/// Large-`N` estimate `round((pi/4) sqrt N - 1/2)`.
pub fn approximate_iterations(n: u32) -> u64 {
    let sqrt_n = ((1u64 << n) as f64).sqrt();
    (PI / 4.0 * sqrt_n - 0.5).round().max(0.0) as u64
}
