//! Pick-matrix feasibility for bounded holomorphic interpolation on the disc.
//!
//! Data `{(node_i, target_i)}` with distinct nodes in the open disc admits a
//! holomorphic self-map of the closed disc interpolating it iff the Hermitian
//! matrix `M_ij = (1 - t_i conj(t_j)) / (1 - z_i conj(z_j))` is positive
//! semidefinite. The minimum eigenvalue doubles as a signed certificate: the
//! interesting Lempert optima sit exactly on the feasibility boundary.

use nalgebra::DMatrix;

use crate::complex::{BOUNDARY_EPS, C64};
use crate::{Error, Result};

/// Finite interpolation data for a holomorphic self-map of the unit disc.
#[derive(Debug, Clone)]
pub struct PickProblem {
    data: Vec<(C64, C64)>,
}

impl PickProblem {
    /// Validates: nodes pairwise distinct and in the open disc, targets in
    /// the closed disc.
    pub fn new(data: Vec<(C64, C64)>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidParameter("empty interpolation data".into()));
        }
        for (i, (node, target)) in data.iter().enumerate() {
            if node.norm() >= 1.0 - BOUNDARY_EPS {
                return Err(Error::InvalidParameter(format!(
                    "node {i} = {node} must lie in the open unit disc"
                )));
            }
            if target.norm() > 1.0 + BOUNDARY_EPS {
                return Err(Error::InvalidParameter(format!(
                    "target {i} = {target} must lie in the closed unit disc"
                )));
            }
        }
        for i in 0..data.len() {
            for j in i + 1..data.len() {
                if data[i].0 == data[j].0 {
                    return Err(Error::DuplicateNodes(i, j));
                }
            }
        }
        Ok(PickProblem { data })
    }

    pub fn data(&self) -> &[(C64, C64)] {
        &self.data
    }

    /// Minimum eigenvalue of the Pick matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        pick_min_eig_raw(&self.data)
    }
}

/// Minimum eigenvalue of the Pick matrix of `(node, target)` data, without
/// input validation (solver hot path).
///
/// The n x n complex Hermitian matrix is embedded as the 2n x 2n real
/// symmetric matrix `[[Re M, -Im M], [Im M, Re M]]`, which has the same
/// spectrum with doubled multiplicities.
pub(crate) fn pick_min_eig_raw(data: &[(C64, C64)]) -> f64 {
    let n = data.len();
    let one = C64::new(1.0, 0.0);
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (zi, ti) = data[i];
            let (zj, tj) = data[j];
            let m = (one - ti * tj.conj()) / (one - zi * zj.conj());
            real[(i, j)] = m.re;
            real[(n + i, n + j)] = m.re;
            real[(i, n + j)] = -m.im;
            real[(n + i, j)] = m.im;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(real);
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Feasibility verdict with its signed certificate.
#[derive(Debug, Clone, Copy)]
pub struct PickCertificate {
    pub feasible: bool,
    pub min_eigenvalue: f64,
}

/// Decides solvability of the interpolation problem: feasible iff the Pick
/// matrix has minimum eigenvalue `>= -tol`.
pub fn pick_feasible(p: &PickProblem, tol: f64) -> PickCertificate {
    let min_eigenvalue = p.min_eigenvalue();
    PickCertificate {
        feasible: min_eigenvalue >= -tol,
        min_eigenvalue,
    }
}

/// Pseudo-hyperbolic distance `|(u - v)/(1 - conj(v) u)|`.
pub fn pseudo_hyperbolic(u: C64, v: C64) -> f64 {
    let one = C64::new(1.0, 0.0);
    ((u - v) / (one - v.conj() * u)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    const TOL: f64 = 1e-10;

    #[test]
    fn single_datum_with_interior_target_is_feasible() {
        let p = PickProblem::new(vec![(c(0.0, 0.0), c(0.3, 0.4))]).unwrap();
        let cert = pick_feasible(&p, TOL);
        assert!(cert.feasible);
        assert!(cert.min_eigenvalue > 0.0);
    }

    #[test]
    fn duplicate_nodes_are_rejected() {
        let err = PickProblem::new(vec![(c(0.1, 0.0), c(0.0, 0.0)), (c(0.1, 0.0), c(0.2, 0.0))]);
        assert!(matches!(err, Err(Error::DuplicateNodes(0, 1))));
    }

    #[test]
    fn schwarz_two_point_exactness() {
        // {(0,0), (zeta, a)} is feasible iff |a| <= |zeta|
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let zeta = C64::from_polar(
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let a = C64::from_polar(
                rng.gen_range(0.0..0.99),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let p = PickProblem::new(vec![(c(0.0, 0.0), c(0.0, 0.0)), (zeta, a)]).unwrap();
            let cert = pick_feasible(&p, TOL);
            let expect = a.norm() <= zeta.norm();
            if (a.norm() - zeta.norm()).abs() > 1e-6 {
                assert_eq!(cert.feasible, expect, "zeta {zeta} a {a}");
            }
        }
        // boundary case: |a| = |zeta| is feasible with eigenvalue ~ 0
        let p = PickProblem::new(vec![(c(0.0, 0.0), c(0.0, 0.0)), (c(0.5, 0.0), c(0.0, 0.5))])
            .unwrap();
        let cert = pick_feasible(&p, TOL);
        assert!(cert.feasible);
        assert!(cert.min_eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn base_point_with_two_zero_targets_product_rule() {
        // {(0,gamma), (z1,0), (z2,0)} feasible iff |gamma| <= |z1 z2|.
        // Oracle: the witness family c * b_{z1} * b_{z2} with |c| <= 1 hits
        // gamma at the origin exactly when |gamma| <= |z1 z2|.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let z1 = C64::from_polar(
                rng.gen_range(0.1..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let z2 = C64::from_polar(
                rng.gen_range(0.1..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            if (z1 - z2).norm() < 1e-3 {
                continue;
            }
            let gamma = C64::from_polar(
                rng.gen_range(0.0..0.95),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let p = PickProblem::new(vec![
                (c(0.0, 0.0), gamma),
                (z1, c(0.0, 0.0)),
                (z2, c(0.0, 0.0)),
            ])
            .unwrap();
            let cert = pick_feasible(&p, TOL);
            let prod = z1.norm() * z2.norm();
            if (gamma.norm() - prod).abs() > 1e-6 {
                assert_eq!(cert.feasible, gamma.norm() <= prod, "paired {gamma} {prod}");
            }
            if cert.feasible {
                // construct the witness and check it interpolates
                let scale = gamma / (z1 * z2); // b_{z}(0) = -z, so c = gamma/(z1 z2)
                assert!(scale.norm() <= prod.max(1.0));
                let f = |zeta: C64| {
                    scale
                        * crate::complex::blaschke_eval(&[z1, z2], c(1.0, 0.0), zeta).unwrap()
                };
                assert!((f(c(0.0, 0.0)) - gamma).norm() < 1e-12);
                assert!(f(z1).norm() < 1e-12);
                assert!(f(z2).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn three_point_pick_matches_schwarz_reduction() {
        // For data {(0,0), (zeta1, a), (zeta2, b)} the Schwarz factorization
        // gives: feasible iff |a| <= |zeta1|, |b| <= |zeta2| and
        //   d_ph(a/zeta1, b/zeta2) <= d_ph(zeta1, zeta2).
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut agree = 0usize;
        for _ in 0..800 {
            let zeta1 = C64::from_polar(
                rng.gen_range(0.2..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let zeta2 = C64::from_polar(
                rng.gen_range(0.2..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            if (zeta1 - zeta2).norm() < 1e-3 {
                continue;
            }
            let a = C64::from_polar(
                rng.gen_range(0.0..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let b = C64::from_polar(
                rng.gen_range(0.0..0.9),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let p = PickProblem::new(vec![(c(0.0, 0.0), c(0.0, 0.0)), (zeta1, a), (zeta2, b)])
                .unwrap();
            let cert = pick_feasible(&p, TOL);
            let reduced = a.norm() <= zeta1.norm()
                && b.norm() <= zeta2.norm()
                && pseudo_hyperbolic(a / zeta1, b / zeta2) <= pseudo_hyperbolic(zeta1, zeta2);
            // skip razor-edge cases where either route sits on its boundary
            let margin = (a.norm() - zeta1.norm())
                .abs()
                .min((b.norm() - zeta2.norm()).abs())
                .min(
                    (pseudo_hyperbolic(a / zeta1, b / zeta2)
                        - pseudo_hyperbolic(zeta1, zeta2))
                    .abs(),
                );
            if margin > 1e-6 {
                assert_eq!(cert.feasible, reduced);
                agree += 1;
            }
        }
        assert!(agree > 500);
    }
}
