//! Closed-form Green functions for axis poles in the bidisc/polydisc, and the
//! parametric ball boundary function `E(s,t)`.
//!
//! With all poles on the axis `{z2 = ... = zn = 0}` the weighted Green
//! function is a weight-telescoped combination of the equal-weight functions
//! `h_j = max(T_1 + ... + T_j, v)`, where `T_i` is the disc Green factor of
//! pole `i` in the first coordinate and `v = max(log|z2|, ..., log|zn|)`.
//! An equivalent max-of-affine-branches form is provided as an independent
//! evaluation route; the two must agree pointwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{in_domain, mobius_raw, Domain, BOUNDARY_EPS, C64};
use crate::ext::Ereal;
use crate::{Error, Result};

/// Pole set: a domain together with weighted pole locations.
#[derive(Debug, Clone)]
pub struct PoleConfig {
    domain: Domain,
    poles: Vec<(Vec<C64>, f64)>,
}

impl PoleConfig {
    pub fn new(domain: Domain, poles: Vec<(Vec<C64>, f64)>) -> Result<Self> {
        domain.validate()?;
        if poles.is_empty() {
            return Err(Error::InvalidParameter("empty pole list".into()));
        }
        for (loc, w) in &poles {
            if !(w.is_finite() && *w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "pole weight must be positive and finite, got {w}"
                )));
            }
            if !in_domain(domain, loc)? {
                return Err(Error::OutsideDomain(format!(
                    "pole location {loc:?} is not inside {domain:?}"
                )));
            }
        }
        for i in 0..poles.len() {
            for j in i + 1..poles.len() {
                if poles[i].0 == poles[j].0 {
                    return Err(Error::InvalidParameter(format!(
                        "pole locations {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(PoleConfig { domain, poles })
    }

    /// Axis poles `(a_i, 0, ..., 0)` from their disc coordinates.
    pub fn axis(domain: Domain, axis: &[(C64, f64)]) -> Result<Self> {
        let n = domain.dim();
        let poles = axis
            .iter()
            .map(|(a, w)| {
                let mut loc = vec![C64::new(0.0, 0.0); n];
                loc[0] = *a;
                (loc, *w)
            })
            .collect();
        PoleConfig::new(domain, poles)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn poles(&self) -> &[(Vec<C64>, f64)] {
        &self.poles
    }

    pub fn weights(&self) -> Vec<f64> {
        self.poles.iter().map(|(_, w)| *w).collect()
    }

    /// Disc coordinates of the poles, requiring every pole to sit on the
    /// axis `{z2 = ... = zn = 0}` exactly.
    pub fn axis_coordinates(&self) -> Result<Vec<C64>> {
        self.poles
            .iter()
            .enumerate()
            .map(|(i, (loc, _))| {
                if loc[1..].iter().any(|zi| *zi != C64::new(0.0, 0.0)) {
                    Err(Error::InvalidParameter(format!(
                        "pole {i} is off the axis z2 = ... = zn = 0: {loc:?}"
                    )))
                } else {
                    Ok(loc[0])
                }
            })
            .collect()
    }
}

/// Evaluator for the axis-pole Green function on the bidisc or polydisc.
///
/// Weights are sorted descending at construction (stable on ties), zero
/// weights drop their pole. Both the telescoped sum form and the max form
/// evaluate against the same sorted data.
#[derive(Debug, Clone)]
pub struct AxisGreen {
    domain: Domain,
    /// Disc coordinates of the poles, sorted by descending weight.
    poles: Vec<C64>,
    /// Matching weights, strictly positive, non-increasing.
    weights: Vec<f64>,
}

impl AxisGreen {
    pub fn from_config(cfg: &PoleConfig) -> Result<Self> {
        let w = cfg.weights();
        Self::with_weights(cfg, &w)
    }

    /// Build with an explicit weight vector replacing the configured weights.
    /// Zero entries drop the corresponding pole; at least one entry must be
    /// positive.
    pub fn with_weights(cfg: &PoleConfig, weights: &[f64]) -> Result<Self> {
        match cfg.domain() {
            Domain::Bidisc | Domain::Polydisc(_) => {}
            d => {
                return Err(Error::InvalidParameter(format!(
                    "axis Green closed form is defined on the bidisc/polydisc, not {d:?}"
                )))
            }
        }
        if weights.len() != cfg.len() {
            return Err(Error::DimensionMismatch {
                expected: cfg.len(),
                got: weights.len(),
            });
        }
        for w in weights {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "weights must be finite and >= 0, got {w}"
                )));
            }
        }
        let axis = cfg.axis_coordinates()?;
        let mut pairs: Vec<(C64, f64)> = axis
            .into_iter()
            .zip(weights.iter().copied())
            .filter(|(_, w)| *w > 0.0)
            .collect();
        if pairs.is_empty() {
            return Err(Error::InvalidParameter(
                "all weights are zero; the Green function needs a pole".into(),
            ));
        }
        pairs.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap());
        let (poles, weights) = pairs.into_iter().unzip();
        Ok(AxisGreen {
            domain: cfg.domain(),
            poles,
            weights,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Pole disc coordinates in evaluation (weight-sorted) order.
    pub fn sorted_poles(&self) -> &[C64] {
        &self.poles
    }

    pub fn sorted_weights(&self) -> &[f64] {
        &self.weights
    }

    fn check_point(&self, z: &[C64]) -> Result<()> {
        if !in_domain(self.domain, z)? {
            return Err(Error::OutsideDomain(format!(
                "point {z:?} is not inside {:?}",
                self.domain
            )));
        }
        Ok(())
    }

    /// `v(z) = max(log|z2|, ..., log|zn|)`; `log|z2|` on the bidisc.
    fn tail(&self, z: &[C64]) -> Ereal {
        z[1..]
            .iter()
            .map(|zi| Ereal::ln_abs(*zi))
            .fold(Ereal::NegInf, Ereal::max)
    }

    /// Telescoped sum form: `nu_k h_k + sum_{j<k} (nu_j - nu_{j+1}) h_j`.
    pub fn eval(&self, z: &[C64]) -> Result<Ereal> {
        self.check_point(z)?;
        Ok(self.eval_unchecked(z))
    }

    pub fn eval_unchecked(&self, z: &[C64]) -> Ereal {
        let v = self.tail(z);
        let k = self.poles.len();
        let mut sum = Ereal::ZERO;
        let mut partial = Ereal::ZERO; // T_1 + ... + T_j
        for j in 0..k {
            partial += Ereal::ln_abs(mobius_raw(self.poles[j], z[0]));
            let coeff = if j + 1 < k {
                self.weights[j] - self.weights[j + 1]
            } else {
                self.weights[j]
            };
            let h_j = partial.max(v);
            sum += h_j.scale(coeff);
        }
        sum
    }

    /// Max form: `max(u_1, ..., u_k, nu_1 v)` with
    /// `u_1 = sum_i nu_i T_i` and
    /// `u_j = nu_j v + sum_{i<j} (nu_i - nu_j) T_i` for `j >= 2`.
    ///
    /// The bare-`v` branch carries the leading weight `nu_1`: the branch list
    /// is stated for weights normalized to `nu_1 = 1` and the function is
    /// homogeneous of degree one in the weights.
    pub fn eval_maxform(&self, z: &[C64]) -> Result<Ereal> {
        self.check_point(z)?;
        Ok(self.eval_maxform_unchecked(z))
    }

    pub fn eval_maxform_unchecked(&self, z: &[C64]) -> Ereal {
        let v = self.tail(z);
        let k = self.poles.len();
        let t: Vec<Ereal> = self
            .poles
            .iter()
            .map(|a| Ereal::ln_abs(mobius_raw(*a, z[0])))
            .collect();

        // u_1
        let mut u1 = Ereal::ZERO;
        for i in 0..k {
            u1 += t[i].scale(self.weights[i]);
        }
        let mut best = u1;
        // u_j, j >= 2
        for j in 1..k {
            let mut uj = v.scale(self.weights[j]);
            for i in 0..j {
                uj += t[i].scale(self.weights[i] - self.weights[j]);
            }
            best = best.max(uj);
        }
        best.max(v.scale(self.weights[0]))
    }

    /// Smallest gap between the two competing branch values of any of the
    /// constituent maxes `h_j = max(S_j, v)`. Infinite when one branch
    /// dominates by an infinite margin; zero at a pole.
    pub fn branch_gap(&self, z: &[C64]) -> f64 {
        let v = self.tail(z);
        let k = self.poles.len();
        let mut gap = f64::INFINITY;
        let mut partial = Ereal::ZERO;
        for j in 0..k {
            partial += Ereal::ln_abs(mobius_raw(self.poles[j], z[0]));
            let g = match (partial, v) {
                (Ereal::Fin(a), Ereal::Fin(b)) => (a - b).abs(),
                (Ereal::NegInf, Ereal::NegInf) => 0.0,
                _ => f64::INFINITY,
            };
            gap = gap.min(g);
        }
        gap
    }
}

/// Equal-weight bidisc Green function `max(sum_i T_i(z1), log|z2|)`.
/// Requires every configured weight to be exactly 1.
pub fn green_bidisc_equal(cfg: &PoleConfig, z: &[C64]) -> Result<Ereal> {
    if cfg.weights().iter().any(|w| *w != 1.0) {
        return Err(Error::InvalidParameter(
            "green_bidisc_equal requires all weights equal to 1".into(),
        ));
    }
    require_domain(cfg, Domain::Bidisc)?;
    AxisGreen::from_config(cfg)?.eval(z)
}

/// Weighted bidisc Green function in the telescoped sum form.
pub fn green_bidisc_weighted(cfg: &PoleConfig, weights: &[f64], z: &[C64]) -> Result<Ereal> {
    require_domain(cfg, Domain::Bidisc)?;
    AxisGreen::with_weights(cfg, weights)?.eval(z)
}

/// Weighted bidisc Green function in the max form.
pub fn green_bidisc_maxform(cfg: &PoleConfig, weights: &[f64], z: &[C64]) -> Result<Ereal> {
    require_domain(cfg, Domain::Bidisc)?;
    AxisGreen::with_weights(cfg, weights)?.eval_maxform(z)
}

/// Axis-pole Green function on the polydisc: `log|z2|` is replaced by
/// `v(z) = max(log|z2|, ..., log|zn|)`.
pub fn green_polydisc_axis(cfg: &PoleConfig, weights: &[f64], z: &[C64]) -> Result<Ereal> {
    match cfg.domain() {
        Domain::Polydisc(_) => {}
        d => {
            return Err(Error::InvalidParameter(format!(
                "green_polydisc_axis wants a polydisc config, got {d:?}"
            )))
        }
    }
    AxisGreen::with_weights(cfg, weights)?.eval(z)
}

fn require_domain(cfg: &PoleConfig, d: Domain) -> Result<()> {
    if cfg.domain() != d {
        return Err(Error::InvalidParameter(format!(
            "expected {d:?} config, got {:?}",
            cfg.domain()
        )));
    }
    Ok(())
}

/// Parameters of the ball boundary function. `c` and `d` are opaque
/// caller-supplied constants; `beta` and `gamma` record the geometry they
/// were derived from but do not enter the evaluation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComanBallParams {
    pub c: f64,
    pub d: f64,
    pub beta: f64,
    pub gamma_re: f64,
    pub gamma_im: f64,
}

fn check_coman_args(s: f64, t: C64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("s must be in (0,1), got {s}")));
    }
    if t.norm() >= 1.0 - BOUNDARY_EPS {
        return Err(Error::InvalidParameter(format!(
            "t must lie in the open unit disc, got |t| = {}",
            t.norm()
        )));
    }
    Ok(())
}

/// `E(s,t) = (s^2 - c)(|t|^2 - c)|1 - st|^2 - (1 - s^2)(1 - |t|^2)|st + d|^2`.
pub fn coman_e(s: f64, t: C64, p: &ComanBallParams) -> Result<f64> {
    check_coman_args(s, t)?;
    let one = Complex64::new(1.0, 0.0);
    let st = t * s;
    let first = (s * s - p.c) * (t.norm_sqr() - p.c) * (one - st).norm_sqr();
    let second = (1.0 - s * s) * (1.0 - t.norm_sqr()) * (st + p.d).norm_sqr();
    Ok(first - second)
}

/// Membership in `S = {(s,t) in (0,1) x D : s != t, s^2 > c, |t|^2 > c, E(s,t) >= 0}`.
pub fn coman_s_membership(s: f64, t: C64, p: &ComanBallParams) -> Result<bool> {
    let e = coman_e(s, t, p)?;
    let s_ne_t = !(t.im == 0.0 && t.re == s);
    Ok(s_ne_t && s * s > p.c && t.norm_sqr() > p.c && e >= 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{Fin, NegInf};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn std_cfg(weights: (f64, f64)) -> PoleConfig {
        PoleConfig::axis(
            Domain::Bidisc,
            &[(c(0.5, 0.0), weights.0), (c(-0.5, 0.0), weights.1)],
        )
        .unwrap()
    }

    fn rand_bidisc_point(rng: &mut impl Rng) -> Vec<C64> {
        let mut coord = || {
            let r: f64 = rng.gen_range(0.0..0.97);
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            C64::from_polar(r, th)
        };
        vec![coord(), coord()]
    }

    #[test]
    fn equal_weights_value_at_axis_point() {
        // poles (a,0),(b,0), z=(0,gamma), |ab| < |gamma| < min(|a|,|b|)
        let cfg = std_cfg((1.0, 1.0));
        let z = [c(0.0, 0.0), c(0.3, 0.0)];
        let g = green_bidisc_equal(&cfg, &z).unwrap().finite().unwrap();
        assert!((g - 0.3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn equal_weights_rejects_other_weights() {
        let cfg = std_cfg((2.0, 1.0));
        assert!(green_bidisc_equal(&cfg, &[c(0.0, 0.0), c(0.3, 0.0)]).is_err());
    }

    #[test]
    fn value_at_pole_is_neg_inf() {
        let cfg = std_cfg((1.0, 1.0));
        assert_eq!(
            green_bidisc_equal(&cfg, &[c(0.5, 0.0), c(0.0, 0.0)]).unwrap(),
            NegInf
        );
        assert_eq!(
            green_bidisc_weighted(&cfg, &[2.0, 1.0], &[c(-0.5, 0.0), c(0.0, 0.0)]).unwrap(),
            NegInf
        );
    }

    #[test]
    fn single_pole_consistency_with_weighted_k1() {
        let cfg = PoleConfig::axis(Domain::Bidisc, &[(c(0.4, 0.2), 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = rand_bidisc_point(&mut rng);
            let a = green_bidisc_equal(&cfg, &z).unwrap();
            let b = green_bidisc_weighted(&cfg, &[1.0], &z).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn weighted_21_value_is_sum_of_green_values() {
        let cfg = std_cfg((2.0, 1.0));
        let z = [c(0.0, 0.0), c(0.3, 0.0)];
        let g = green_bidisc_weighted(&cfg, &[2.0, 1.0], &z)
            .unwrap()
            .finite()
            .unwrap();
        assert!((g - 0.15f64.ln()).abs() < 1e-14);
        // maxform route agrees with the telescoped value
        let m = green_bidisc_maxform(&cfg, &[2.0, 1.0], &z)
            .unwrap()
            .finite()
            .unwrap();
        assert!((m - 0.15f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn ties_collapse_to_equal_weight_function() {
        let cfg = std_cfg((1.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let z = rand_bidisc_point(&mut rng);
            let a = green_bidisc_weighted(&cfg, &[1.0, 1.0], &z).unwrap();
            let b = green_bidisc_equal(&cfg, &z).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unsorted_weights_are_sorted_internally() {
        let cfg = std_cfg((1.0, 2.0)); // heavier weight on the second pole
        let g = AxisGreen::from_config(&cfg).unwrap();
        assert_eq!(g.sorted_weights(), &[2.0, 1.0]);
        assert_eq!(g.sorted_poles()[0], c(-0.5, 0.0));
        // value at (0, gamma): log|gamma| + log|b| with b the heavy pole
        let v = g.eval(&[c(0.0, 0.0), c(0.3, 0.0)]).unwrap().finite().unwrap();
        assert!((v - 0.15f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn tail_dominated_region_returns_scaled_log_z2() {
        // z2 close to the distinguished boundary: every branch is log|z2|,
        // so g = nu_1 log|z2|.
        let cfg = std_cfg((1.0, 0.5));
        let z = [c(0.1, 0.0), c(0.0, 0.995)];
        let g = green_bidisc_weighted(&cfg, &[1.0, 0.5], &z)
            .unwrap()
            .finite()
            .unwrap();
        let m = green_bidisc_maxform(&cfg, &[1.0, 0.5], &z)
            .unwrap()
            .finite()
            .unwrap();
        let expect = 0.995f64.ln();
        assert!((g - expect).abs() < 1e-14, "g = {g}, expect {expect}");
        assert!((m - expect).abs() < 1e-14);
    }

    #[test]
    fn forms_agree_on_random_grid_k234() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for k in 2..=4usize {
            let axis: Vec<(C64, f64)> = (0..k)
                .map(|_| {
                    let a = C64::from_polar(
                        rng.gen_range(0.05..0.8),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    );
                    let w = rng.gen_range(0.1..3.0);
                    (a, w)
                })
                .collect();
            let cfg = PoleConfig::axis(Domain::Bidisc, &axis).unwrap();
            let w = cfg.weights();
            for _ in 0..1000 {
                let z = rand_bidisc_point(&mut rng);
                let s = green_bidisc_weighted(&cfg, &w, &z).unwrap();
                let m = green_bidisc_maxform(&cfg, &w, &z).unwrap();
                match (s, m) {
                    (Fin(a), Fin(b)) => {
                        assert!((a - b).abs() < 1e-12, "k={k} z={z:?} {a} vs {b}")
                    }
                    (a, b) => assert_eq!(a, b),
                }
            }
        }
    }

    #[test]
    fn monotone_in_weights() {
        let cfg = std_cfg((1.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let z = rand_bidisc_point(&mut rng);
            let lo = green_bidisc_weighted(&cfg, &[1.0, 0.5], &z).unwrap();
            let hi = green_bidisc_weighted(&cfg, &[1.5, 0.8], &z).unwrap();
            // larger weights deepen the function
            assert!(hi <= lo);
        }
    }

    #[test]
    fn boundary_limit_is_small() {
        let cfg = std_cfg((1.0, 0.7));
        for k in 0..64 {
            let th = std::f64::consts::TAU * k as f64 / 64.0;
            let z = [C64::from_polar(0.999, th), c(0.2, 0.1)];
            let g = green_bidisc_weighted(&cfg, &[1.0, 0.7], &z)
                .unwrap()
                .finite()
                .unwrap();
            assert!(g.abs() < 0.05, "theta {th}: g = {g}");
            let z2 = [c(0.2, 0.1), C64::from_polar(0.999, th)];
            let g2 = green_bidisc_weighted(&cfg, &[1.0, 0.7], &z2)
                .unwrap()
                .finite()
                .unwrap();
            assert!(g2.abs() < 0.05);
        }
    }

    #[test]
    fn pole_asymptotics_bounded_residual() {
        let cfg = std_cfg((2.0, 1.0));
        let eval = AxisGreen::from_config(&cfg).unwrap();
        let pole = [c(0.5, 0.0), c(0.0, 0.0)];
        let nu = 2.0;
        let mut sup_prev = f64::NEG_INFINITY;
        for rho in [1e-2, 1e-3, 1e-4, 1e-5] {
            let mut sup = f64::NEG_INFINITY;
            for k in 0..64 {
                let th = std::f64::consts::TAU * k as f64 / 64.0;
                for ph in [0.0, 1.1, 2.3] {
                    let d = [
                        C64::from_polar(th.cos().abs().max(0.2), ph),
                        C64::from_polar(th.sin().abs().max(0.2), ph + 0.4),
                    ];
                    let nd = crate::complex::norm(&d);
                    let z = [pole[0] + d[0] * (rho / nd), pole[1] + d[1] * (rho / nd)];
                    let g = eval.eval(&z).unwrap().finite().unwrap();
                    let resid = (g - nu * rho.ln()).abs();
                    sup = sup.max(resid);
                }
            }
            // residual stays within a fixed band as the spheres shrink
            assert!(sup < 3.0, "rho={rho}: residual sup {sup}");
            if sup_prev != f64::NEG_INFINITY {
                assert!(sup < sup_prev + 0.2, "residual growing: {sup_prev} -> {sup}");
            }
            sup_prev = sup;
        }
    }

    #[test]
    fn polydisc_reduces_to_bidisc_for_n2() {
        let axis = [(c(0.5, 0.0), 2.0), (c(-0.5, 0.0), 1.0)];
        let pcfg = PoleConfig::axis(Domain::Polydisc(2), &axis).unwrap();
        let bcfg = PoleConfig::axis(Domain::Bidisc, &axis).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let z = rand_bidisc_point(&mut rng);
            let p = green_polydisc_axis(&pcfg, &[2.0, 1.0], &z).unwrap();
            let b = green_bidisc_weighted(&bcfg, &[2.0, 1.0], &z).unwrap();
            assert_eq!(p, b);
        }
    }

    #[test]
    fn polydisc_with_vanishing_extra_coordinate() {
        let axis = [(c(0.5, 0.0), 2.0), (c(-0.5, 0.0), 1.0)];
        let cfg3 = PoleConfig::axis(Domain::Polydisc(3), &axis).unwrap();
        let cfg2 = PoleConfig::axis(Domain::Bidisc, &axis).unwrap();
        let z3 = [c(0.1, 0.2), c(0.3, -0.1), c(0.0, 0.0)];
        let z2 = [c(0.1, 0.2), c(0.3, -0.1)];
        assert_eq!(
            green_polydisc_axis(&cfg3, &[2.0, 1.0], &z3).unwrap(),
            green_bidisc_weighted(&cfg2, &[2.0, 1.0], &z2).unwrap()
        );
        // pole point still maps to -inf
        assert_eq!(
            green_polydisc_axis(&cfg3, &[2.0, 1.0], &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
                .unwrap(),
            NegInf
        );
    }

    #[test]
    fn rejects_off_axis_poles_and_outside_points() {
        let cfg = PoleConfig::new(
            Domain::Bidisc,
            vec![(vec![c(0.5, 0.0), c(0.1, 0.0)], 1.0)],
        )
        .unwrap();
        assert!(green_bidisc_weighted(&cfg, &[1.0], &[c(0.0, 0.0), c(0.0, 0.0)]).is_err());

        let good = std_cfg((1.0, 1.0));
        assert!(matches!(
            green_bidisc_weighted(&good, &[1.0, 1.0], &[c(1.2, 0.0), c(0.0, 0.0)]),
            Err(Error::OutsideDomain(_))
        ));
        assert!(green_bidisc_weighted(&good, &[1.0, -1.0], &[c(0.0, 0.0), c(0.1, 0.0)]).is_err());
    }

    #[test]
    fn coman_e_vanishing_first_factor() {
        let p = ComanBallParams {
            c: 0.25,
            d: 0.1,
            beta: 0.5,
            gamma_re: 0.3,
            gamma_im: 0.0,
        };
        // s^2 = c kills the first product; the remainder is <= 0
        let s = 0.5;
        for t in [c(0.1, 0.2), c(-0.4, 0.1), c(0.0, 0.6)] {
            let e = coman_e(s, t, &p).unwrap();
            let expected = -(1.0 - s * s) * (1.0 - t.norm_sqr()) * (t * s + p.d).norm_sqr();
            assert!((e - expected).abs() < 1e-14);
            assert!(e <= 0.0);
        }
        // |t|^2 = c likewise
        let t = C64::from_polar(0.5, 1.234);
        let e = coman_e(0.7, t, &p).unwrap();
        assert!(e <= 0.0);
    }

    #[test]
    fn coman_e_matches_expanded_polynomial_oracle() {
        // Independent route: the fully expanded real polynomial in
        // (s, x, y, c, d) with t = x + iy.
        fn oracle(s: f64, x: f64, y: f64, cc: f64, d: f64) -> f64 {
            let (s2, s3, s4) = (s * s, s * s * s, s * s * s * s);
            let (x2, x3, x4) = (x * x, x * x * x, x * x * x * x);
            let (y2, y4) = (y * y, y * y * y * y);
            cc * cc * s2 * x2 + cc * cc * s2 * y2 - 2.0 * cc * cc * s * x + cc * cc
                - cc * s4 * x2
                - cc * s4 * y2
                + 2.0 * cc * s3 * x
                - cc * s2 * x4
                - 2.0 * cc * s2 * x2 * y2
                - cc * s2 * y4
                - cc * s2
                + 2.0 * cc * s * x3
                + 2.0 * cc * s * x * y2
                - cc * x2
                - cc * y2
                - d * d * s2 * x2
                - d * d * s2 * y2
                + d * d * s2
                + d * d * x2
                + d * d * y2
                - d * d
                - 2.0 * d * s3 * x3
                - 2.0 * d * s3 * x * y2
                + 2.0 * d * s3 * x
                + 2.0 * d * s * x3
                + 2.0 * d * s * x * y2
                - 2.0 * d * s * x
                + s4 * x2
                + s4 * y2
                - 2.0 * s3 * x3
                - 2.0 * s3 * x * y2
                + s2 * x4
                + 2.0 * s2 * x2 * y2
                + s2 * y4
        }
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..2000 {
            let s = rng.gen_range(0.01..0.99);
            let x = rng.gen_range(-0.7..0.7);
            let y = rng.gen_range(-0.7..0.7);
            if (x * x + y * y) >= 0.98 {
                continue;
            }
            let p = ComanBallParams {
                c: rng.gen_range(-1.0..1.0),
                d: rng.gen_range(-1.0..1.0),
                beta: 0.5,
                gamma_re: 0.3,
                gamma_im: 0.0,
            };
            let e = coman_e(s, c(x, y), &p).unwrap();
            let o = oracle(s, x, y, p.c, p.d);
            assert!((e - o).abs() < 1e-12, "E={e} oracle={o}");
        }
    }

    #[test]
    fn coman_membership_side_conditions() {
        let p = ComanBallParams {
            c: 0.04,
            d: 0.0,
            beta: 0.5,
            gamma_re: 0.3,
            gamma_im: 0.0,
        };
        // s = t excluded
        assert!(!coman_s_membership(0.5, c(0.5, 0.0), &p).unwrap());
        // s^2 <= c excluded
        assert!(!coman_s_membership(0.1, c(0.5, 0.0), &p).unwrap());
        // |t|^2 <= c excluded
        assert!(!coman_s_membership(0.5, c(0.1, 0.0), &p).unwrap());
        // a point with all conditions and E > 0: with d = 0 and small c,
        // E at s=0.9, t=0.8 is (0.81-c)(0.64-c)(1-0.72)^2 - (0.19)(0.36)(0.72)^2
        let e = coman_e(0.9, c(0.8, 0.0), &p).unwrap();
        assert!(e > 0.0);
        assert!(coman_s_membership(0.9, c(0.8, 0.0), &p).unwrap());
        // out-of-range arguments error
        assert!(coman_e(1.2, c(0.1, 0.0), &p).is_err());
        assert!(coman_e(0.5, c(1.1, 0.0), &p).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn disc(r: f64) -> impl Strategy<Value = C64> {
            (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(m, th)| C64::from_polar(m, th))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn homogeneity_in_weights(
                a in disc(0.8), z1 in disc(0.95), z2 in disc(0.95),
                w1 in 0.2..2.0f64, w2 in 0.2..2.0f64, scale in 0.1..4.0f64,
            ) {
                prop_assume!((a - C64::new(0.31, 0.17)).norm() > 1e-3);
                let cfg = PoleConfig::axis(
                    Domain::Bidisc,
                    &[(a, w1), (C64::new(0.31, 0.17), w2)],
                ).unwrap();
                let z = [z1, z2];
                let g = green_bidisc_weighted(&cfg, &[w1, w2], &z).unwrap();
                let gs = green_bidisc_weighted(&cfg, &[scale * w1, scale * w2], &z).unwrap();
                match (g, gs) {
                    (Fin(x), Fin(y)) => {
                        let err = (y - scale * x).abs();
                        let tol = 1e-14 * (1.0 + (scale * x).abs());
                        prop_assert!(err <= tol, "err {err} tol {tol}");
                    }
                    (a, b) => prop_assert_eq!(a, b),
                }
            }

            #[test]
            fn decomposition_linearity(
                z1 in disc(0.95), z2 in disc(0.95),
                l1 in 0.0..2.0f64, l2 in 0.0..1.0f64,
            ) {
                // nu = (2,1), lambda <= nu preserving descending order
                let lam = [l1.max(l2), l2.min(l1).min(1.0)];
                let nu = [2.0f64, 1.0];
                prop_assume!(lam[0] <= 2.0 && lam[1] <= 1.0);
                prop_assume!(nu[0] - lam[0] >= nu[1] - lam[1]);
                prop_assume!(lam[0] > 1e-9 && lam[1] > 1e-9);
                prop_assume!(nu[0] - lam[0] > 1e-9 && nu[1] - lam[1] > 1e-9);
                let cfg = PoleConfig::axis(
                    Domain::Bidisc,
                    &[(C64::new(0.5, 0.0), 2.0), (C64::new(-0.5, 0.0), 1.0)],
                ).unwrap();
                let z = [z1, z2];
                let g = green_bidisc_weighted(&cfg, &nu, &z).unwrap();
                let ga = green_bidisc_weighted(&cfg, &lam, &z).unwrap();
                let gb = green_bidisc_weighted(
                    &cfg, &[nu[0] - lam[0], nu[1] - lam[1]], &z).unwrap();
                match (g, ga + gb) {
                    (Fin(x), Fin(y)) => prop_assert!((x - y).abs() < 1e-12),
                    (a, b) => prop_assert_eq!(a, b),
                }
            }
        }
    }
}
