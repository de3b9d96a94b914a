//! Dense n-qubit kets.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|x>` sits at
//! slot `x` and `tensor(a, b)` places `a` in the high-order bits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, GroverError, Result};
use crate::tolerance;

/// Largest register the dense simulator will allocate.
pub const MAX_QUBITS: usize = 24;

/// Label of a record / computational basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisIndex(u64);

impl BasisIndex {
    pub const fn new(value: u64) -> Self {
        BasisIndex(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    /// Returns the index if it addresses a basis state of an `n`-qubit register.
    pub fn checked(self, n_qubits: usize) -> Result<Self> {
        if n_qubits < 64 && self.0 < (1u64 << n_qubits) {
            Ok(self)
        } else {
            domain(format!("basis index {} out of range for {} qubits", self.0, n_qubits))
        }
    }

    pub(crate) fn slot(self) -> usize {
        self.0 as usize
    }
}

impl From<u64> for BasisIndex {
    fn from(value: u64) -> Self {
        BasisIndex(value)
    }
}

impl std::fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{}>", self.0)
    }
}

/// A dense amplitude vector over the `2^n` computational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ket {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

pub(crate) fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return domain("a register needs at least one qubit");
    }
    if n_qubits > MAX_QUBITS {
        return Err(GroverError::Resource(format!(
            "{n_qubits} qubits exceeds the dense simulator limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl Ket {
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return domain(format!(
                "{} amplitudes given for a {}-qubit register (expected {})",
                amplitudes.len(),
                n_qubits,
                1usize << n_qubits
            ));
        }
        Ok(Ket { n_qubits, amplitudes })
    }

    pub fn from_real(n_qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(n_qubits, amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The all-zero vector (not a state, but a useful accumulator).
    pub fn zeros(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Ket { n_qubits, amplitudes: vec![Complex64::new(0.0, 0.0); 1 << n_qubits] })
    }

    /// Uniform superposition `(1/sqrt N) sum |k>`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Ket { n_qubits, amplitudes: vec![amp; dim] })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: BasisIndex) -> Option<Complex64> {
        self.amplitudes.get(index.slot()).copied()
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tolerance::NORMALIZED
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        self.check_same_dim(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scale(mut self, factor: Complex64) -> Ket {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
        self
    }

    /// `self + factor * other`.
    pub fn add_scaled(mut self, factor: Complex64, other: &Ket) -> Result<Ket> {
        self.check_same_dim(other)?;
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
        Ok(self)
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Ket) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_same_dim(&self, other: &Ket) -> Result<()> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return domain(format!(
                "dimension mismatch: {} vs {}",
                self.amplitudes.len(),
                other.amplitudes.len()
            ));
        }
        Ok(())
    }
}

/// Standard basis ket `|index>` of an `n`-qubit register.
pub fn basis_ket(n_qubits: usize, index: BasisIndex) -> Result<Ket> {
    let mut ket = Ket::zeros(n_qubits)?;
    let index = index.checked(n_qubits)?;
    ket.amplitudes[index.slot()] = Complex64::new(1.0, 0.0);
    Ok(ket)
}

/// Bracket product `<a|b> = sum conj(a_i) b_i`.
pub fn inner(a: &Ket, b: &Ket) -> Result<Complex64> {
    a.inner(b)
}

pub fn norm(a: &Ket) -> f64 {
    a.norm()
}

/// Kronecker product with `a` as the high-order factor.
pub fn tensor(a: &Ket, b: &Ket) -> Result<Ket> {
    check_qubits(a.n_qubits + b.n_qubits)?;
    let amplitudes = a
        .amplitudes
        .iter()
        .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
        .collect();
    Ok(Ket { n_qubits: a.n_qubits + b.n_qubits, amplitudes })
}
