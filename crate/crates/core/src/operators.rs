//! Unitary building blocks of the search.
//!
//! Every operator has a matrix-free form that works on a [`Ket`] in place and
//! charges a [`CostTally`]. [`render_dense`] turns any of them into an explicit
//! matrix for small registers so identities can be checked entrywise.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, GroverError, Result};
use crate::oracle::OracleBox;
use crate::state::{basis_ket, BasisIndex, Ket};

/// Largest register [`render_dense`] will expand into a matrix.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Operation counts under the cost model where one Hadamard transform on
/// `n` qubits is `n` single-qubit operations and every phase flip is O(1).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostTally {
    pub single_qubit_ops: u64,
    pub oracle_queries: u64,
    pub phase_ops: u64,
}

/// Explicit `dim x dim` complex matrix of a unitary operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    matrix: DMatrix<Complex64>,
}

impl DenseUnitary {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return domain(format!("{}x{} matrix is not square", matrix.nrows(), matrix.ncols()));
        }
        Ok(DenseUnitary { matrix })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return domain("rows must all have length equal to the row count");
        }
        Ok(DenseUnitary {
            matrix: DMatrix::from_fn(dim, dim, |r, c| Complex64::new(rows[r][c], 0.0)),
        })
    }

    pub fn identity(dim: usize) -> Self {
        DenseUnitary { matrix: DMatrix::identity(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        DenseUnitary { matrix: self.matrix.adjoint() }
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &DenseUnitary) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return domain(format!("dimension mismatch: {} vs {}", self.dim(), rhs.dim()));
        }
        Ok(DenseUnitary { matrix: &self.matrix * &rhs.matrix })
    }

    pub fn scale(&self, factor: f64) -> Self {
        DenseUnitary { matrix: self.matrix.map(|z| z * factor) }
    }

    pub fn apply(&self, state: &Ket) -> Result<Ket> {
        if state.dim() != self.dim() {
            return domain(format!("dimension mismatch: {} vs {}", state.dim(), self.dim()));
        }
        let out = &self.matrix * nalgebra::DVector::from_column_slice(state.amplitudes());
        Ket::from_amplitudes(state.n_qubits(), out.as_slice().to_vec())
    }

    /// Largest entrywise distance to `other`; infinite on a shape mismatch.
    pub fn max_abs_diff(&self, other: &DenseUnitary) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.matrix.iter().zip(other.matrix.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |(U^dagger U - I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .compose(self)
            .map(|p| p.max_abs_diff(&DenseUnitary::identity(self.dim())))
            .unwrap_or(f64::INFINITY)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Real parts as row-major nested vectors.
    pub fn real_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|r| (0..self.dim()).map(|c| self.matrix[(r, c)].re).collect()).collect()
    }
}

/// Fast Walsh-Hadamard transform with the unitary normalization
/// `(1/sqrt 2)[[1, 1], [1, -1]]` on every qubit. O(N log N) scalar work.
pub fn hadamard(mut state: Ket, tally: &mut CostTally) -> Ket {
    let n = state.n_qubits();
    let dim = state.dim();
    let amps = state.amplitudes_mut();
    let mut half = 1;
    while half < dim {
        for block in amps.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    let scale = 1.0 / (dim as f64).sqrt();
    amps.iter_mut().for_each(|a| *a *= scale);
    tally.single_qubit_ops += n as u64;
    state
}

/// Matrix-free `I - 2|psi><psi|` applied to `state`.
pub fn reflect_about(psi: &Ket, state: Ket) -> Result<Ket> {
    let overlap = psi.inner(&state)?;
    state.add_scaled(-2.0 * overlap, psi)
}

/// Dense `I - 2|psi><psi|`, the inversion in the hyperplane orthogonal to `psi`.
pub fn inversion_about(psi: &Ket) -> Result<DenseUnitary> {
    if !psi.is_normalized() {
        return domain(format!("inversion needs a unit ket, got norm {}", psi.norm()));
    }
    check_dense_size(psi.n_qubits())?;
    let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
    let dim = psi.dim();
    let matrix = DMatrix::identity(dim, dim) - (&v * v.adjoint()) * Complex64::new(2.0, 0.0);
    Ok(DenseUnitary { matrix })
}

/// Matrix-free `I_|target>`: negates the amplitude at `target`.
/// Counts as one oracle query and one phase operation.
pub fn phase_flip(mut state: Ket, target: BasisIndex, tally: &mut CostTally) -> Result<Ket> {
    let target = target.checked(state.n_qubits())?;
    let slot = &mut state.amplitudes_mut()[target.value() as usize];
    *slot = -*slot;
    tally.oracle_queries += 1;
    tally.phase_ops += 1;
    Ok(state)
}

/// Matrix-free `I_|0>`.
pub fn phase_flip_zero(mut state: Ket, tally: &mut CostTally) -> Ket {
    let slot = &mut state.amplitudes_mut()[0];
    *slot = -*slot;
    tally.phase_ops += 1;
    state
}

/// Matrix-free `-I_|0>`: negates every amplitude except the one at `|0>`.
fn negated_phase_flip_zero(mut state: Ket, tally: &mut CostTally) -> Ket {
    state.amplitudes_mut()[1..].iter_mut().for_each(|a| *a = -*a);
    tally.phase_ops += 1;
    state
}

/// One Grover iterate `Q = -H I_|0> H I_|x0>`, querying the oracle once.
///
/// `H^{-1} = H`, and the global sign is folded into the zero flip, which
/// becomes the single phase operation `-I_|0>`. Per call the tally gains
/// `2n` single-qubit operations, one oracle query and two phase operations.
pub fn grover_iterate(state: Ket, oracle: &mut OracleBox, tally: &mut CostTally) -> Result<Ket> {
    let state = oracle.apply(state, tally)?;
    let state = hadamard(state, tally);
    let state = negated_phase_flip_zero(state, tally);
    Ok(hadamard(state, tally))
}

/// Standard oracle `U_f |x>|y> = |x>|f(x) xor y>` on `n + 1` qubits, the last
/// qubit being `y`. A permutation swapping the `(target, 0)` and `(target, 1)`
/// amplitudes.
pub fn standard_oracle_uf(mut state: Ket, target: BasisIndex, tally: &mut CostTally) -> Result<Ket> {
    if state.n_qubits() < 2 {
        return domain("U_f needs at least one input qubit plus the output qubit");
    }
    let target = target.checked(state.n_qubits() - 1)?;
    let base = 2 * target.value() as usize;
    state.amplitudes_mut().swap(base, base + 1);
    tally.oracle_queries += 1;
    Ok(state)
}

/// An operator that [`render_dense`] can expand.
pub enum OperatorSpec<'a> {
    Hadamard,
    PhaseFlip(BasisIndex),
    PhaseFlipZero,
    Inversion(&'a Ket),
    /// The blackbox `I_|x0>`; rendering costs one query per column.
    Oracle(&'a mut OracleBox),
    /// `Q` built around the blackbox.
    Grover(&'a mut OracleBox),
}

fn check_dense_size(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(GroverError::Resource(format!(
            "dense rendering limited to {MAX_DENSE_QUBITS} qubits, asked for {n}"
        )));
    }
    Ok(())
}

/// Assembles a dense matrix column by column from a matrix-free map.
pub fn render_dense_with<F>(n: usize, mut op: F) -> Result<DenseUnitary>
where
    F: FnMut(Ket) -> Result<Ket>,
{
    check_dense_size(n)?;
    let dim = 1usize << n;
    let mut matrix = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let image = op(basis_ket(n, BasisIndex::new(col as u64))?)?;
        if image.dim() != dim {
            return domain("operator changed the register size");
        }
        matrix.set_column(col, &nalgebra::DVector::from_column_slice(image.amplitudes()));
    }
    Ok(DenseUnitary { matrix })
}

/// Column `j` of the result is the operator applied to `|j>`.
pub fn render_dense(op: OperatorSpec<'_>, n: usize) -> Result<DenseUnitary> {
    let mut tally = CostTally::default();
    match op {
        OperatorSpec::Hadamard => render_dense_with(n, |k| Ok(hadamard(k, &mut tally))),
        OperatorSpec::PhaseFlip(t) => render_dense_with(n, |k| phase_flip(k, t, &mut tally)),
        OperatorSpec::PhaseFlipZero => render_dense_with(n, |k| Ok(phase_flip_zero(k, &mut tally))),
        OperatorSpec::Inversion(psi) => render_dense_with(n, |k| reflect_about(psi, k)),
        OperatorSpec::Oracle(oracle) => render_dense_with(n, |k| oracle.apply(k, &mut tally)),
        OperatorSpec::Grover(oracle) => render_dense_with(n, |k| grover_iterate(k, oracle, &mut tally)),
    }
}
