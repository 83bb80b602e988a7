//! Lelong number estimation from radial scans.
//!
//! For a negative plurisubharmonic `u` near the origin the functional
//! `Psi_u(z, r) = sup_{|xi| = r} u(xi z) / log r` is non-decreasing in `r`
//! (the circle sup equals the disc sup for subharmonic slices), and its limit
//! as `r` shrinks is the Lelong number along non-exceptional directions. The
//! estimate reported here is the value at the smallest scanned radius: the
//! monotone convergence makes it a certified one-sided bound up to circle
//! sampling error, so no extrapolation is applied.

use crate::complex::C64;
use crate::ext::Ereal;
use crate::{Error, Result};

/// Default number of equispaced circle samples.
pub const DEFAULT_SAMPLES: usize = 256;

/// A radial scan plan: direction point, strictly decreasing radii, circle
/// sample count, and the slack allowed in the monotonicity flag.
#[derive(Debug, Clone)]
pub struct RadialScan {
    pub direction: Vec<C64>,
    pub radii: Vec<f64>,
    pub samples: usize,
    /// Sampling slack for the monotonicity flag (the sampled sup
    /// underestimates the true sup one-sidedly).
    pub monotone_tol: f64,
}

impl RadialScan {
    pub fn new(direction: Vec<C64>, radii: Vec<f64>, samples: usize) -> Result<Self> {
        if samples < 16 {
            return Err(Error::InvalidParameter(format!(
                "need at least 16 circle samples, got {samples}"
            )));
        }
        if radii.is_empty() || radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidParameter(
                "radii must be a non-empty strictly decreasing list".into(),
            ));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::InvalidParameter("radii must lie in (0, 1)".into()));
        }
        Ok(RadialScan {
            direction,
            radii,
            samples,
            monotone_tol: 1e-3,
        })
    }

    /// Geometric radius ladder from `r_hi` down to `r_lo`.
    pub fn geometric(
        direction: Vec<C64>,
        r_hi: f64,
        r_lo: f64,
        steps: usize,
        samples: usize,
    ) -> Result<Self> {
        if !(r_lo > 0.0 && r_lo < r_hi && r_hi < 1.0) || steps < 2 {
            return Err(Error::InvalidParameter(
                "want 0 < r_lo < r_hi < 1 and steps >= 2".into(),
            ));
        }
        let q = (r_lo / r_hi).powf(1.0 / (steps - 1) as f64);
        let radii = (0..steps).map(|i| r_hi * q.powi(i as i32)).collect();
        RadialScan::new(direction, radii, samples)
    }
}

/// `Psi_u(z, r)`: the sampled circle sup of `u(xi z)` over `|xi| = r`,
/// divided by `log r`.
///
/// Slices that are `-inf` at every sample report a degenerate-slice error.
pub fn psi<F>(u: F, z: &[C64], r: f64, samples: usize) -> Result<f64>
where
    F: Fn(&[C64]) -> Ereal,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0, 1)")));
    }
    if samples < 16 {
        return Err(Error::InvalidParameter(format!(
            "need at least 16 circle samples, got {samples}"
        )));
    }
    let mut sup = Ereal::NegInf;
    let mut point = vec![C64::new(0.0, 0.0); z.len()];
    for k in 0..samples {
        let th = std::f64::consts::TAU * k as f64 / samples as f64;
        let xi = C64::from_polar(r, th);
        for (p, zi) in point.iter_mut().zip(z) {
            *p = xi * zi;
        }
        sup = sup.max(u(&point));
    }
    match sup {
        Ereal::Fin(s) => Ok(s / r.ln()),
        Ereal::NegInf => Err(Error::DegenerateSlice),
        Ereal::PosInf => Err(Error::InvalidParameter(
            "field returned +inf on the slice".into(),
        )),
    }
}

/// Result of a radial scan: the smallest-radius value as the Lelong estimate,
/// the full ladder, and a flag asserting the expected monotone decrease.
#[derive(Debug, Clone)]
pub struct LelongEstimate {
    pub alpha: f64,
    /// Radius at which `alpha` was measured.
    pub radius: f64,
    /// `Psi` per scanned radius, in scan order.
    pub psi_values: Vec<f64>,
    /// True when `Psi` was non-increasing as `r` decreased, within the scan's
    /// sampling slack.
    pub monotone_ok: bool,
}

/// Runs the scan and reports the smallest-radius value of `Psi` as the
/// Lelong-number estimate.
pub fn lelong_estimate<F>(u: F, scan: &RadialScan) -> Result<LelongEstimate>
where
    F: Fn(&[C64]) -> Ereal,
{
    let mut psi_values = Vec::with_capacity(scan.radii.len());
    for r in &scan.radii {
        psi_values.push(psi(&u, &scan.direction, *r, scan.samples)?);
    }
    let monotone_ok = psi_values
        .windows(2)
        .all(|w| w[1] <= w[0] + scan.monotone_tol);
    Ok(LelongEstimate {
        alpha: *psi_values.last().unwrap(),
        radius: *scan.radii.last().unwrap(),
        psi_values,
        monotone_ok,
    })
}

/// Checks the logarithmic bound `u(xi z) <= alpha log|xi| + tol` over sampled
/// circles `|xi| = r` for each listed radius.
pub fn log_bound_check<F>(
    u: F,
    z: &[C64],
    alpha: f64,
    radii: &[f64],
    samples: usize,
    tol: f64,
) -> Result<bool>
where
    F: Fn(&[C64]) -> Ereal,
{
    let mut point = vec![C64::new(0.0, 0.0); z.len()];
    for r in radii {
        if !(*r > 0.0 && *r < 1.0) {
            return Err(Error::InvalidParameter(format!("radius {r} not in (0, 1)")));
        }
        let bound = alpha * r.ln() + tol;
        for k in 0..samples {
            let th = std::f64::consts::TAU * k as f64 / samples as f64;
            let xi = C64::from_polar(*r, th);
            for (p, zi) in point.iter_mut().zip(z) {
                *p = xi * zi;
            }
            match u(&point) {
                Ereal::Fin(v) => {
                    if v > bound {
                        return Ok(false);
                    }
                }
                Ereal::NegInf => {}
                Ereal::PosInf => {
                    return Err(Error::InvalidParameter(
                        "field returned +inf on the slice".into(),
                    ))
                }
            }
        }
    }
    Ok(true)
}
