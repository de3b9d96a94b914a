//! Exact state-vector simulation of Grover search over `N = 2^n` records.
//!
//! The crate is split along the lines of the algorithm itself:
//!
//! * [`state`]: dense kets and the bracket product.
//! * [`operators`]: Hadamard transform, inversions `I - 2|psi><psi|`, the phase
//!   oracle, the Grover iterate `Q = -H I_|0> H I_|x0>` and the standard oracle `U_f`.
//! * [`oracle`]: the blackbox holding the hidden record, plus the classical baseline.
//! * [`analytics`]: `beta`, `K`, the closed-form trajectory and the error bounds.
//! * [`geometry`]: the invariant real plane spanned by `|psi0>` and `|x0>`.
//! * [`runner`]: the end-to-end loop, measurement sampling and cost accounting.

pub mod analytics;
pub mod error;
pub mod geometry;
pub mod operators;
pub mod oracle;
pub mod runner;
pub mod state;
pub mod tolerance;
pub mod worked_example;

pub use analytics::{
    actual_error, error_bound, make_plan, predict_state, GroverPlan, PredictedState, Rounding,
};
pub use error::{GroverError, Result};
pub use geometry::{
    check_perp_negation, check_plane_invariance, make_plane, project, restricted_rotation_angle,
    restricted_rotation_matrix, PerpPair, PlaneBasis, PlaneCoords, PlaneOperator,
};
pub use operators::{
    grover_iterate, hadamard, inversion_about, phase_flip, phase_flip_zero, reflect_about,
    render_dense, standard_oracle_uf, CostTally, DenseUnitary, OperatorSpec,
};
pub use oracle::{classical_search, oracle_apply, oracle_new, OracleBox};
pub use runner::{cost_summary, measure, run_grover, CostSummary, RunOptions, RunReport, TraceRecord};
pub use state::{basis_ket, inner, norm, tensor, BasisIndex, Ket};
