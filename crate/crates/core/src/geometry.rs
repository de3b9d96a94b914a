//! The real plane spanned by `|psi0>` and `|x0>`.
//!
//! Every operator of the search maps this plane to itself, and on it the
//! Grover iterate is a rotation by `2 beta`. Plane coordinates are taken in
//! the orthonormal frame `(|x0_perp>, |x0>)`; a line through the origin is
//! identified by its unit normal.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GroverError, Result};
use crate::operators::{grover_iterate, phase_flip, reflect_about, CostTally};
use crate::oracle::{oracle_new, seeded_rng, OracleBox};
use crate::state::{basis_ket, BasisIndex, Ket};
use crate::tolerance;

/// Orthonormal kets of the invariant plane, oriented so that `(x0_perp, x0)`
/// and `(psi0, psi0_perp)` both have the orientation of `(psi0, x0)`.
#[derive(Debug, Clone)]
pub struct PlaneBasis {
    n: usize,
    target: BasisIndex,
    pub psi0: Ket,
    pub x0: Ket,
    pub x0_perp: Ket,
    pub psi0_perp: Ket,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCoords {
    /// Component along `|x0_perp>`.
    pub u: f64,
    /// Component along `|x0>`.
    pub v: f64,
    /// Norm of whatever lies outside the plane.
    pub residual: f64,
}

/// Operators whose invariance of the plane can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneOperator {
    InversionPsi0,
    InversionX0,
    Grover,
}

/// Which unit vector / perpendicular pair to test with [`check_perp_negation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerpPair {
    Psi0,
    X0,
}

/// `(a - <b|a> b) / |...|`.
fn orthonormal_complement(a: &Ket, b: &Ket) -> Result<Ket> {
    let overlap = b.inner(a)?;
    let rest = a.clone().add_scaled(-overlap, b)?;
    let len = rest.norm();
    if len <= tolerance::NORMALIZED {
        return Err(GroverError::InvariantViolation("plane spanning kets are parallel".into()));
    }
    Ok(rest.scale(Complex64::new(1.0 / len, 0.0)))
}

impl PlaneBasis {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> BasisIndex {
        self.target
    }

    /// Signed area of `(a, b)` in the frame `(psi0, x0 - <psi0|x0> psi0)`;
    /// positive for the orientation of `(psi0, x0)`.
    pub fn orientation(&self, a: &Ket, b: &Ket) -> Result<f64> {
        let e1 = &self.psi0;
        let e2 = orthonormal_complement(&self.x0, &self.psi0)?;
        let (a1, a2) = (e1.inner(a)?.re, e2.inner(a)?.re);
        let (b1, b2) = (e1.inner(b)?.re, e2.inner(b)?.re);
        Ok(a1 * b2 - a2 * b1)
    }

    /// Plane coordinates of a ket that is known to lie in the plane.
    fn coords_of(&self, k: &Ket) -> Result<[f64; 2]> {
        let c = project(self, k)?;
        Ok([c.u, c.v])
    }
}

pub fn make_plane(n: usize, x0: BasisIndex) -> Result<PlaneBasis> {
    let x0_ket = basis_ket(n, x0)?;
    let psi0 = Ket::uniform(n)?;
    let mut plane = PlaneBasis {
        n,
        target: x0,
        x0_perp: orthonormal_complement(&psi0, &x0_ket)?,
        psi0_perp: orthonormal_complement(&x0_ket, &psi0)?,
        psi0,
        x0: x0_ket,
    };
    let minus = Complex64::new(-1.0, 0.0);
    if plane.orientation(&plane.x0_perp, &plane.x0)? < 0.0 {
        plane.x0_perp = plane.x0_perp.clone().scale(minus);
    }
    if plane.orientation(&plane.psi0, &plane.psi0_perp)? < 0.0 {
        plane.psi0_perp = plane.psi0_perp.clone().scale(minus);
    }
    Ok(plane)
}

pub fn project(plane: &PlaneBasis, state: &Ket) -> Result<PlaneCoords> {
    let u = plane.x0_perp.inner(state)?.re;
    let v = plane.x0.inner(state)?.re;
    let rest = state
        .clone()
        .add_scaled(Complex64::new(-u, 0.0), &plane.x0_perp)?
        .add_scaled(Complex64::new(-v, 0.0), &plane.x0)?;
    Ok(PlaneCoords { u, v, residual: rest.norm() })
}

/// Distance from `state` to the complex span of the plane.
fn complex_residual(plane: &PlaneBasis, state: &Ket) -> Result<f64> {
    let a = plane.x0_perp.inner(state)?;
    let b = plane.x0.inner(state)?;
    Ok(state.clone().add_scaled(-a, &plane.x0_perp)?.add_scaled(-b, &plane.x0)?.norm())
}

fn apply_plane_operator(plane: &PlaneBasis, op: PlaneOperator, state: Ket) -> Result<Ket> {
    let mut tally = CostTally::default();
    match op {
        PlaneOperator::InversionPsi0 => reflect_about(&plane.psi0, state),
        PlaneOperator::InversionX0 => phase_flip(state, plane.target, &mut tally),
        PlaneOperator::Grover => {
            let mut oracle = oracle_new(plane.n, Some(plane.target), None)?;
            grover_iterate(state, &mut oracle, &mut tally)
        }
    }
}

/// Largest distance from the plane of the image of a plane vector.
///
/// The real basis vectors are checked against the real plane; two seeded
/// random complex combinations of `psi0` and `x0` are checked against its
/// complex span.
pub fn check_plane_invariance(plane: &PlaneBasis, op: PlaneOperator) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in [&plane.psi0, &plane.x0, &plane.x0_perp, &plane.psi0_perp] {
        let image = apply_plane_operator(plane, op, v.clone())?;
        let c = project(plane, &image)?;
        worst = worst.max(c.residual);
    }
    let mut rng = seeded_rng(0x5eed, 3);
    for _ in 0..2 {
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let combo = plane.psi0.clone().scale(a).add_scaled(b, &plane.x0)?;
        let image = apply_plane_operator(plane, op, combo)?;
        worst = worst.max(complex_residual(plane, &image)?);
    }
    Ok(worst)
}

/// 2x2 matrix, in `(x0_perp, x0)` coordinates, of a map that preserves the
/// plane. Columns are the images of `x0_perp` and `x0`.
pub fn restrict_to_plane<F>(plane: &PlaneBasis, mut op: F) -> Result<[[f64; 2]; 2]>
where
    F: FnMut(Ket) -> Result<Ket>,
{
    let cu = project(plane, &op(plane.x0_perp.clone())?)?;
    let cv = project(plane, &op(plane.x0.clone())?)?;
    let worst = cu.residual.max(cv.residual);
    if worst > tolerance::DENSE {
        return Err(GroverError::InvariantViolation(format!(
            "operator leaves the plane (residual {worst:e})"
        )));
    }
    Ok([[cu.u, cv.u], [cu.v, cv.v]])
}

/// `Q` restricted to the plane, queried through the blackbox. Fails unless
/// the restriction is orthogonal with determinant `+1`.
pub fn restricted_rotation_matrix(plane: &PlaneBasis, oracle: &mut OracleBox) -> Result<[[f64; 2]; 2]> {
    let mut tally = CostTally::default();
    let m = restrict_to_plane(plane, |k| grover_iterate(k, oracle, &mut tally))?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let gram = [
        m[0][0] * m[0][0] + m[1][0] * m[1][0],
        m[0][0] * m[0][1] + m[1][0] * m[1][1],
        m[0][1] * m[0][1] + m[1][1] * m[1][1],
    ];
    let off = (gram[0] - 1.0).abs().max(gram[1].abs()).max((gram[2] - 1.0).abs());
    if off > tolerance::DENSE || (det - 1.0).abs() > tolerance::DENSE {
        return Err(GroverError::InvariantViolation(format!(
            "restricted Q is not a rotation (det {det}, orthogonality defect {off:e})"
        )));
    }
    Ok(m)
}

/// Angle of the rotation `Q` performs on the plane, measured from `x0_perp`
/// toward `x0`. Equals `2 beta`.
pub fn restricted_rotation_angle(plane: &PlaneBasis, oracle: &mut OracleBox) -> Result<f64> {
    let m = restricted_rotation_matrix(plane, oracle)?;
    Ok(m[1][0].atan2(m[0][0]))
}

fn reflection_2d(c: [f64; 2]) -> [[f64; 2]; 2] {
    [
        [1.0 - 2.0 * c[0] * c[0], -2.0 * c[0] * c[1]],
        [-2.0 * c[1] * c[0], 1.0 - 2.0 * c[1] * c[1]],
    ]
}

/// Checks `-I_|psi> = I_|psi_perp>` on the plane, together with the
/// realness of `<psi_perp|chi>` for the other spanning ket `chi`.
pub fn check_perp_negation(plane: &PlaneBasis, pair: PerpPair) -> bool {
    let (psi, perp, chi) = match pair {
        PerpPair::Psi0 => (&plane.psi0, &plane.psi0_perp, &plane.x0),
        PerpPair::X0 => (&plane.x0, &plane.x0_perp, &plane.psi0),
    };
    let (Ok(cp), Ok(cq), Ok(overlap)) = (plane.coords_of(psi), plane.coords_of(perp), perp.inner(chi)) else {
        return false;
    };
    let r = reflection_2d(cp);
    let rp = reflection_2d(cq);
    let negation_holds = (0..2).all(|i| (0..2).all(|j| (-r[i][j] - rp[i][j]).abs() <= tolerance::NORMALIZED));
    negation_holds && overlap.im.abs() <= tolerance::NORMALIZED
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{make_plan, predict_state, Rounding};
    use crate::operators::{inversion_about, render_dense, OperatorSpec};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    fn idx(v: u64) -> BasisIndex {
        BasisIndex::new(v)
    }

    #[test]
    fn plane_n3_examples() {
        let plane = make_plane(3, idx(5)).unwrap();
        let cos_beta = (7.0f64 / 8.0).sqrt();
        assert!((plane.x0_perp.inner(&plane.psi0).unwrap().re - cos_beta).abs() < 1e-15);
        assert!((plane.psi0_perp.inner(&plane.x0).unwrap().re - cos_beta).abs() < 1e-15);
        assert!(plane.x0.inner(&plane.x0_perp).unwrap().norm() <= 1e-12);
        assert!(plane.psi0.inner(&plane.psi0_perp).unwrap().norm() <= 1e-12);
        assert!(plane.orientation(&plane.psi0, &plane.x0).unwrap() > 0.0);
        assert!(plane.orientation(&plane.x0_perp, &plane.x0).unwrap() > 0.0);
        assert!(plane.orientation(&plane.psi0, &plane.psi0_perp).unwrap() > 0.0);
    }

    #[test]
    fn psi0_perp_against_x0_is_cos_beta_everywhere() {
        for n in 1..=8 {
            let plan = make_plan(n as u32, Rounding::Round).unwrap();
            let plane = make_plane(n, idx((1 << n) - 1)).unwrap();
            let c = plane.psi0_perp.inner(&plane.x0).unwrap();
            assert!((c.re - plan.beta.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn single_qubit_plane_is_everything() {
        let plane = make_plane(1, idx(1)).unwrap();
        for s in [
            Ket::from_real(1, &[0.6, 0.8]).unwrap(),
            Ket::from_real(1, &[1.0, 0.0]).unwrap(),
            Ket::from_real(1, &[-0.3, 0.1]).unwrap(),
        ] {
            assert!(project(&plane, &s).unwrap().residual <= 1e-15);
        }
    }

    #[test]
    fn project_examples() {
        let plan = make_plan(3, Rounding::Round).unwrap();
        let plane = make_plane(3, idx(5)).unwrap();
        let c = project(&plane, &plane.psi0).unwrap();
        assert!((c.u - plan.beta.cos()).abs() < 1e-15);
        assert!((c.v - plan.beta.sin()).abs() < 1e-15);
        assert!(c.residual < 1e-15);

        let c = project(&plane, &plane.x0).unwrap();
        assert_eq!((c.u, c.v, c.residual), (0.0, 1.0, 0.0));

        let mut oracle = oracle_new(3, Some(idx(5)), None).unwrap();
        let mut tally = CostTally::default();
        let mut psi = plane.psi0.clone();
        for _ in 0..2 {
            psi = grover_iterate(psi, &mut oracle, &mut tally).unwrap();
        }
        let c = project(&plane, &psi).unwrap();
        let b5 = 5.0 * plan.beta;
        assert!((c.u - b5.cos()).abs() < 1e-12);
        assert!((c.v - b5.sin()).abs() < 1e-12);
        assert!((c.v - 11.0 / (8.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!(c.residual < 1e-12);

        assert!(project(&plane, &Ket::uniform(2).unwrap()).is_err());
    }

    #[test]
    fn coords_account_for_whole_norm() {
        let plane = make_plane(3, idx(2)).unwrap();
        let s = Ket::from_real(3, &[0.1, -0.4, 0.3, 0.2, 0.0, 0.5, -0.6, 0.25]).unwrap();
        let c = project(&plane, &s).unwrap();
        assert!((c.u * c.u + c.v * c.v + c.residual * c.residual - s.norm_sqr()).abs() < 1e-10);
        assert!(c.residual > 0.1);
    }

    #[test]
    fn invariance_examples() {
        let plane = make_plane(3, idx(5)).unwrap();
        assert!(check_plane_invariance(&plane, PlaneOperator::Grover).unwrap() <= 1e-10);
        assert!(check_plane_invariance(&plane, PlaneOperator::InversionPsi0).unwrap() <= 1e-10);
        for n in 1..=6 {
            for t in [0u64, (1 << n) - 1] {
                let plane = make_plane(n, idx(t)).unwrap();
                assert!(check_plane_invariance(&plane, PlaneOperator::InversionX0).unwrap() <= 1e-12);
                assert!(check_plane_invariance(&plane, PlaneOperator::Grover).unwrap() <= 1e-10);
            }
        }
    }

    #[test]
    fn rotation_angle_examples() {
        let expected = [(1, FRAC_PI_2), (2, FRAC_PI_3), (3, 2.0 * (1.0 / 8f64.sqrt()).asin())];
        for (n, angle) in expected {
            let plane = make_plane(n, idx(1)).unwrap();
            let mut oracle = oracle_new(n, Some(idx(1)), None).unwrap();
            let got = restricted_rotation_angle(&plane, &mut oracle).unwrap();
            assert!((got - angle).abs() < 1e-10, "n={n}: {got} vs {angle}");
        }
        assert!((2.0 * (1.0 / 8f64.sqrt()).asin() - 0.722734).abs() < 1e-6);
    }

    #[test]
    fn rotation_angle_matches_matrix_logarithm() {
        // For a 2x2 rotation R, log R = theta [[0, -1], [1, 0]] with
        // theta = acos(tr R / 2), independent of the atan2 route.
        let plane = make_plane(3, idx(5)).unwrap();
        let mut oracle = oracle_new(3, Some(idx(5)), None).unwrap();
        let m = restricted_rotation_matrix(&plane, &mut oracle).unwrap();
        let theta = ((m[0][0] + m[1][1]) / 2.0).acos();
        let got = restricted_rotation_angle(&plane, &mut oracle).unwrap();
        assert!((theta - got).abs() < 1e-10);
    }

    #[test]
    fn rotation_rejects_mismatched_oracle() {
        let plane = make_plane(3, idx(5)).unwrap();
        let mut wrong = oracle_new(3, Some(idx(2)), None).unwrap();
        assert!(matches!(
            restricted_rotation_angle(&plane, &mut wrong),
            Err(GroverError::InvariantViolation(_))
        ));
    }

    #[test]
    fn perp_negation_examples() {
        for n in 1..=6 {
            let plane = make_plane(n, idx(0)).unwrap();
            assert!(check_perp_negation(&plane, PerpPair::Psi0));
            assert!(check_perp_negation(&plane, PerpPair::X0));
        }
        let plane = make_plane(3, idx(5)).unwrap();
        assert!(plane.psi0_perp.inner(&plane.x0).unwrap().im.abs() <= 1e-15);
    }

    #[test]
    fn perp_negation_fails_off_the_plane() {
        // As ambient operators -I_|psi> and I_|psi_perp> differ once N > 2.
        let plane = make_plane(3, idx(5)).unwrap();
        let a = inversion_about(&plane.psi0).unwrap().scale(-1.0);
        let b = inversion_about(&plane.psi0_perp).unwrap();
        assert!(a.max_abs_diff(&b) > 0.5);

        let plane = make_plane(1, idx(0)).unwrap();
        let a = inversion_about(&plane.psi0).unwrap().scale(-1.0);
        let b = inversion_about(&plane.psi0_perp).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn q_restriction_is_composed_reflections() {
        for n in 1..=8usize {
            for t in [0u64, 1, (1 << n) - 1] {
                let plane = make_plane(n, idx(t)).unwrap();
                let mut tally = CostTally::default();
                let composed = restrict_to_plane(&plane, |k| {
                    let k = phase_flip(k, plane.target(), &mut tally)?;
                    reflect_about(&plane.psi0_perp, k)
                })
                .unwrap();
                let mut oracle = oracle_new(n, Some(idx(t)), None).unwrap();
                let q = restricted_rotation_matrix(&plane, &mut oracle).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        assert!((composed[i][j] - q[i][j]).abs() <= 1e-10, "n={n} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn trajectory_stays_in_plane_on_closed_form() {
        for n in 1..=10usize {
            let plan = make_plan(n as u32, Rounding::Round).unwrap();
            let t = idx((3 * n as u64) % (1 << n));
            let plane = make_plane(n, t).unwrap();
            let mut oracle = oracle_new(n, Some(t), None).unwrap();
            let mut tally = CostTally::default();
            let mut psi = plane.psi0.clone();
            for k in 0..=(4 * plan.k_iterations) {
                if k > 0 {
                    psi = grover_iterate(psi, &mut oracle, &mut tally).unwrap();
                }
                let c = project(&plane, &psi).unwrap();
                let p = predict_state(&plan, k);
                assert!(c.residual <= tolerance::ITERATED);
                assert!((c.u - p.perp_amp).abs() <= tolerance::ITERATED);
                assert!((c.v - p.target_amp).abs() <= tolerance::ITERATED);
            }
        }
    }

    #[test]
    fn dense_q_is_minus_composed_inversions() {
        let plane = make_plane(3, idx(5)).unwrap();
        let mut oracle = oracle_new(3, Some(idx(5)), None).unwrap();
        let q = render_dense(OperatorSpec::Grover(&mut oracle), 3).unwrap();
        let ipsi = inversion_about(&plane.psi0).unwrap();
        let ix = inversion_about(&plane.x0).unwrap();
        let composed = ipsi.compose(&ix).unwrap().scale(-1.0);
        assert!(q.max_abs_diff(&composed) < 1e-12);
    }
}
