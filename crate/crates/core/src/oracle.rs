//! The blackbox that hides the marked record.
//!
//! An [`OracleBox`] answers phase-oracle applications and classical yes/no
//! membership queries, and counts both. Nothing in its public surface hands
//! back the hidden label.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::operators::{phase_flip, standard_oracle_uf, CostTally};
use crate::state::{check_qubits, BasisIndex, Ket};

/// ChaCha8 stream used to draw a hidden target from a seed.
pub const TARGET_STREAM: u64 = 0;
/// ChaCha8 stream used by the classical baseline.
pub const CLASSICAL_STREAM: u64 = 2;

pub(crate) fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub struct OracleBox {
    hidden_target: BasisIndex,
    n_qubits: usize,
    query_count: u64,
}

impl std::fmt::Debug for OracleBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleBox")
            .field("n_qubits", &self.n_qubits)
            .field("query_count", &self.query_count)
            .finish_non_exhaustive()
    }
}

impl OracleBox {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    /// Phase oracle `I_|x0>`.
    pub fn apply(&mut self, state: Ket, tally: &mut CostTally) -> Result<Ket> {
        self.check_register(state.n_qubits())?;
        self.query_count += 1;
        phase_flip(state, self.hidden_target, tally)
    }

    /// Standard oracle `U_f` on the register plus one output qubit.
    pub fn apply_standard(&mut self, state: Ket, tally: &mut CostTally) -> Result<Ket> {
        self.check_register(state.n_qubits().saturating_sub(1))?;
        self.query_count += 1;
        standard_oracle_uf(state, self.hidden_target, tally)
    }

    /// Classical evaluation of `f(label)`.
    pub fn query(&mut self, label: BasisIndex) -> Result<bool> {
        label.checked(self.n_qubits)?;
        self.query_count += 1;
        Ok(label == self.hidden_target)
    }

    /// Verification-only access to the hidden label.
    pub(crate) fn reveal(&self) -> BasisIndex {
        self.hidden_target
    }

    fn check_register(&self, n_qubits: usize) -> Result<()> {
        if n_qubits != self.n_qubits {
            return domain(format!(
                "oracle acts on {} qubits, state has {}",
                self.n_qubits, n_qubits
            ));
        }
        Ok(())
    }
}

/// Draws the label a seeded [`oracle_new`] would hide. Uniform over `[0, 2^n)`.
pub fn draw_target(n_qubits: usize, seed: u64) -> Result<BasisIndex> {
    use rand::Rng;
    check_qubits(n_qubits)?;
    let mut rng = seeded_rng(seed, TARGET_STREAM);
    Ok(BasisIndex::new(rng.gen_range(0..(1u64 << n_qubits))))
}

/// Builds a blackbox hiding `target`, or a seeded uniform draw when `target`
/// is absent.
pub fn oracle_new(n_qubits: usize, target: Option<BasisIndex>, seed: Option<u64>) -> Result<OracleBox> {
    check_qubits(n_qubits)?;
    let hidden_target = match (target, seed) {
        (Some(t), _) => t.checked(n_qubits)?,
        (None, Some(seed)) => draw_target(n_qubits, seed)?,
        (None, None) => return domain("oracle needs either a target or a seed"),
    };
    Ok(OracleBox { hidden_target, n_qubits, query_count: 0 })
}

pub fn oracle_apply(oracle: &mut OracleBox, state: Ket, tally: &mut CostTally) -> Result<Ket> {
    oracle.apply(state, tally)
}

/// Classical baseline: examine `k` distinct records chosen uniformly without
/// replacement. Returns whether the marked one was among them and the number
/// of queries spent.
pub fn classical_search(oracle: &mut OracleBox, k: u64, seed: u64) -> Result<(bool, u64)> {
    let records = 1u64 << oracle.n_qubits;
    if k > records {
        return domain(format!("cannot examine {k} distinct records out of {records}"));
    }
    let mut rng = seeded_rng(seed, CLASSICAL_STREAM);
    let mut found = false;
    let mut used = 0;
    for label in index::sample(&mut rng, records as usize, k as usize) {
        used += 1;
        if oracle.query(BasisIndex::new(label as u64))? {
            found = true;
            break;
        }
    }
    Ok((found, used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{render_dense, OperatorSpec};
    use crate::state::basis_ket;

    fn idx(v: u64) -> BasisIndex {
        BasisIndex::new(v)
    }

    #[test]
    fn oracle_new_examples() {
        let mut five = oracle_new(3, Some(idx(5)), None).unwrap();
        let m = render_dense(OperatorSpec::Oracle(&mut five), 3).unwrap();
        for i in 0..8 {
            assert_eq!(m.entry(i, i).re, if i == 5 { -1.0 } else { 1.0 });
        }

        let mut zero = oracle_new(1, Some(idx(0)), None).unwrap();
        let m = render_dense(OperatorSpec::Oracle(&mut zero), 1).unwrap();
        assert_eq!(m.real_rows(), vec![vec![-1.0, 0.0], vec![0.0, 1.0]]);

        let a = oracle_new(3, None, Some(42)).unwrap();
        let b = oracle_new(3, None, Some(42)).unwrap();
        assert_eq!(a.reveal(), b.reveal());
        assert_eq!(a.reveal(), draw_target(3, 42).unwrap());
    }

    #[test]
    fn oracle_new_errors() {
        assert!(oracle_new(3, Some(idx(8)), None).is_err());
        assert!(oracle_new(3, None, None).is_err());
    }

    #[test]
    fn seeded_targets_cover_the_range() {
        let mut seen = [false; 8];
        for seed in 0..200 {
            seen[draw_target(3, seed).unwrap().value() as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn apply_examples() {
        let mut oracle = oracle_new(3, Some(idx(5)), None).unwrap();
        let mut tally = CostTally::default();
        let psi0 = Ket::uniform(3).unwrap();
        let once = oracle.apply(psi0.clone(), &mut tally).unwrap();
        let s = 1.0 / 8f64.sqrt();
        for (i, a) in once.amplitudes().iter().enumerate() {
            assert_eq!(a.re, if i == 5 { -s } else { s });
        }
        let twice = oracle_apply(&mut oracle, once, &mut tally).unwrap();
        assert_eq!(twice, psi0);
        assert_eq!(oracle.query_count(), 2);
        assert_eq!(tally.oracle_queries, 2);

        let x = basis_ket(3, idx(1)).unwrap();
        assert_eq!(oracle.apply(x.clone(), &mut tally).unwrap(), x);
        assert!(oracle.apply(Ket::uniform(2).unwrap(), &mut tally).is_err());
    }

    #[test]
    fn debug_output_hides_target() {
        let oracle = oracle_new(4, Some(idx(13)), None).unwrap();
        let shown = format!("{oracle:?}");
        assert!(!shown.contains("13"));
        assert!(!shown.contains("hidden"));
    }

    #[test]
    fn classical_search_examples() {
        let mut oracle = oracle_new(3, Some(idx(6)), None).unwrap();
        for seed in 0..20 {
            assert!(classical_search(&mut oracle, 8, seed).unwrap().0);
        }
        let before = oracle.query_count();
        assert_eq!(classical_search(&mut oracle, 0, 1).unwrap(), (false, 0));
        assert_eq!(oracle.query_count(), before);
        assert!(classical_search(&mut oracle, 9, 1).is_err());
    }

    #[test]
    fn classical_search_samples_distinct_records() {
        // With k = N - 1 the only miss is when the excluded record is the target.
        let mut oracle = oracle_new(2, Some(idx(0)), None).unwrap();
        let hits = (0..4000).filter(|&s| classical_search(&mut oracle, 3, s).unwrap().0).count();
        let rate = hits as f64 / 4000.0;
        assert!((rate - 0.75).abs() < 3.0 * (0.75f64 * 0.25 / 4000.0).sqrt());
    }
}
