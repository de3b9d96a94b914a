//! Numerical tolerances shared by the simulator and its checks.

/// A ket counts as normalized when `|<psi|psi> - 1|` is within this.
pub const NORMALIZED: f64 = 1e-12;

/// Measurement sampling accepts a norm this far from one.
pub const MEASURE_NORM: f64 = 1e-9;

/// Single dense-matrix identities (unitarity, conjugation).
pub const DENSE: f64 = 1e-10;

/// Iterated products `Q^k psi0`, where rounding error accumulates.
pub const ITERATED: f64 = 1e-9;
