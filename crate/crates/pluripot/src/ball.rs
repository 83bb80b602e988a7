//! Radial extremal function on the unit ball and the machinery from its
//! decomposition analysis: harmonic annulus solutions with prescribed
//! boundary data, and the closed-form chart Hessian determinant.
//!
//! `u(z) = max(log||z||, -1)` is the relative extremal function of the ball
//! of radius `1/e`. On each complex line through the origin it is harmonic in
//! the annulus where the log branch is active. Decomposing `u` leads to a
//! one-variable boundary problem on annuli `t < |w| < e t`: harmonic, zero on
//! the outer circle, prescribed data on the inner one. The solution is an
//! explicit log-plus-Fourier series, evaluated here in a form whose terms all
//! decay geometrically, so deep truncations stay stable.

use num_complex::Complex64;

use crate::complex::{in_domain, norm, Domain, C64};
use crate::ext::Ereal;
use crate::monge_ampere::{Field2, SmoothField};
use crate::{Error, Result};

/// `max(log||z||, -1)` on the open unit ball.
pub fn radial_extremal(z: &[C64]) -> Result<f64> {
    if !in_domain(Domain::UnitBall(z.len().max(2)), z)? {
        return Err(Error::OutsideDomain(format!("{z:?} is not inside the unit ball")));
    }
    let n = norm(z);
    if n == 0.0 {
        Ok(-1.0)
    } else {
        Ok(n.ln().max(-1.0))
    }
}

/// 1-D Laplacian of the slice `xi -> u(xi z)` at `xi`, by the 5-point stencil
/// in `(Re xi, Im xi)`.
pub fn slice_laplacian<F>(u: F, z: &[C64], xi: C64, h: f64) -> Result<f64>
where
    F: Fn(&[C64]) -> Ereal,
{
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let at = |x: C64| -> Result<f64> {
        let p: Vec<C64> = z.iter().map(|zi| x * zi).collect();
        u(&p).finite().ok_or_else(|| {
            Error::SingularStencil(format!("slice stencil hit a non-finite value at xi = {x}"))
        })
    };
    let c = at(xi)?;
    let xx = (at(xi + C64::new(h, 0.0))? - 2.0 * c + at(xi - C64::new(h, 0.0))?) / (h * h);
    let yy = (at(xi + C64::new(0.0, h))? - 2.0 * c + at(xi - C64::new(0.0, h))?) / (h * h);
    Ok(xx + yy)
}

/// Truncated harmonic solution on the annulus `t < |w| < e t` with boundary
/// values 0 on `|w| = e t` and the Fourier data `c_n` on `|w| = t`:
///
/// `H_t(w) = -c_0 log|w/(e t)|
///           + sum_{n>=1} (c_n (e w)^n + c_{-n} (e wbar)^n)
///             ((e t / |w|)^{2n} - 1) / (e^{2n} - 1)`.
#[derive(Debug, Clone)]
pub struct AnnulusHarmonic {
    t: f64,
    /// `c_n` for `n` in `[-trunc, trunc]`, stored at index `n + trunc`.
    coeffs: Vec<C64>,
    trunc: usize,
}

impl AnnulusHarmonic {
    /// Builds from explicit coefficients. Requires the Hermitian symmetry
    /// `c_{-n} = conj(c_n)` (real boundary data) and `0 < t < 1/e`.
    pub fn new(t: f64, coeffs: Vec<C64>) -> Result<Self> {
        if !(t > 0.0 && t < (-1.0f64).exp()) {
            return Err(Error::InvalidParameter(format!(
                "t must lie in (0, 1/e), got {t}"
            )));
        }
        if coeffs.len() % 2 != 1 {
            return Err(Error::InvalidParameter(
                "coefficient list must have odd length 2N + 1".into(),
            ));
        }
        let trunc = coeffs.len() / 2;
        if trunc < 1 || trunc > 256 {
            return Err(Error::InvalidParameter(format!(
                "truncation order {trunc} outside [1, 256]"
            )));
        }
        for n in 0..=trunc {
            let cp = coeffs[trunc + n];
            let cm = coeffs[trunc - n];
            if (cm - cp.conj()).norm() > 1e-9 * (1.0 + cp.norm()) {
                return Err(Error::InvalidParameter(format!(
                    "coefficients are not Hermitian-symmetric at n = {n}"
                )));
            }
        }
        Ok(AnnulusHarmonic { t, coeffs, trunc })
    }

    /// Computes `c_n = (1/2 pi) int v(theta) e^{-i n theta} d theta` from the
    /// inner-data angle function by the periodic trapezoid rule and builds
    /// the solution.
    pub fn from_boundary<V>(v: V, t: f64, trunc: usize, quad_points: usize) -> Result<Self>
    where
        V: Fn(f64) -> f64,
    {
        if quad_points < 4 * trunc.max(1) {
            return Err(Error::InvalidParameter(format!(
                "need at least {} quadrature points for truncation {trunc}",
                4 * trunc.max(1)
            )));
        }
        let samples: Vec<f64> = (0..quad_points)
            .map(|k| v(std::f64::consts::TAU * k as f64 / quad_points as f64))
            .collect();
        let mut coeffs = vec![C64::new(0.0, 0.0); 2 * trunc + 1];
        for n in -(trunc as i64)..=(trunc as i64) {
            let mut acc = C64::new(0.0, 0.0);
            for (k, s) in samples.iter().enumerate() {
                let th = std::f64::consts::TAU * k as f64 / quad_points as f64;
                acc += C64::from_polar(1.0, -(n as f64) * th) * *s;
            }
            coeffs[(n + trunc as i64) as usize] = acc / quad_points as f64;
        }
        AnnulusHarmonic::new(t, coeffs)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, n: i64) -> C64 {
        self.coeffs[(n + self.trunc as i64) as usize]
    }

    /// Evaluates the truncated series. `w` must lie in the closed annulus
    /// (tiny slack lets the boundary contracts be checked on the circles).
    ///
    /// The series is summed as `2 Re(c_n (q1^n - q2^n)) / (1 - e^{-2n})` with
    /// `q1 = (e t / |w|)^2 w / e` and `q2 = w / e`; both satisfy `|q| < 1` on
    /// the annulus, so every term decays geometrically.
    pub fn eval(&self, w: C64) -> Result<f64> {
        let e = 1.0f64.exp();
        let r = w.norm();
        let (lo, hi) = (self.t, e * self.t);
        if !(r >= lo * (1.0 - 1e-9) && r <= hi * (1.0 + 1e-9)) {
            return Err(Error::OutsideDomain(format!(
                "|w| = {r} outside the annulus [{lo}, {hi}]"
            )));
        }
        let c0 = self.coeff(0).re;
        let mut h = -c0 * (r / (e * self.t)).ln();

        let ratio = (e * self.t / r).powi(2);
        let q1 = w / e * ratio;
        let q2 = w / e;
        let em2 = (-2.0f64).exp();
        let mut p1 = Complex64::new(1.0, 0.0);
        let mut p2 = Complex64::new(1.0, 0.0);
        let mut en = 1.0;
        for n in 1..=self.trunc {
            p1 *= q1;
            p2 *= q2;
            en *= em2;
            let d = 1.0 / (1.0 - en);
            h += 2.0 * (self.coeff(n as i64) * (p1 - p2)).re * d;
        }
        Ok(h)
    }

    /// Fourier synthesis of the inner boundary data at radius `t`:
    /// `sum_n c_n (e t)^{|n|} e^{i n theta}`.
    pub fn synthesize_inner(&self, theta: f64) -> f64 {
        let et = 1.0f64.exp() * self.t;
        let mut v = self.coeff(0).re;
        let mut p = 1.0;
        for n in 1..=self.trunc {
            p *= et;
            let e = C64::from_polar(1.0, n as f64 * theta);
            v += 2.0 * (self.coeff(n as i64) * e).re * p;
        }
        v
    }

    /// Truncation tolerance for the boundary contracts, extrapolated from
    /// the geometric decay of the term sizes `2 |c_n| (e t)^n`.
    pub fn boundary_tolerance(&self) -> f64 {
        let et = 1.0f64.exp() * self.t;
        let size = |n: usize| 2.0 * self.coeff(n as i64).norm() * et.powi(n as i32);
        let n = self.trunc;
        let last = size(n);
        let prev = if n >= 3 { size(n - 3) } else { size(1).max(last) };
        let rho = if prev > 0.0 {
            (last / prev).powf(1.0 / 3.0).clamp(1e-6, 0.95)
        } else {
            0.5
        };
        (last * rho / (1.0 - rho)).max(1e-14)
    }
}

fn poly_derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| *c * k as f64)
        .collect()
}

fn poly_eval(coeffs: &[C64], x: C64) -> C64 {
    coeffs
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// Closed-form complex Hessian determinant, in the chart `(w1, w2)`, of
/// `h(w) = 2 Re g(wbar2 (1 + |w1|^2))` for a polynomial `g`:
///
/// `det = -| wbar1 (D1 + D2 wbar2 (1 + w1 wbar1)) |^2`,
///
/// where `D1, D2` are the first two derivatives of `g` at
/// `wbar2 (1 + |w1|^2)`. The value is never positive.
pub fn chart_hessian_det(g_coeffs: &[C64], w1: C64, w2: C64) -> f64 {
    let d1c = poly_derivative(g_coeffs);
    let d2c = poly_derivative(&d1c);
    let p = w2.conj() * (1.0 + w1.norm_sqr());
    let d1 = poly_eval(&d1c, p);
    let d2 = poly_eval(&d2c, p);
    -(w1.conj() * (d1 + d2 * p)).norm_sqr()
}

/// `h(w) = 2 Re g(wbar2 (1 + |w1|^2))` as a grid field, for cross-checking
/// the closed-form determinant against finite differences.
pub fn chart_field(g_coeffs: Vec<C64>) -> impl Field2 {
    SmoothField(move |w1: C64, w2: C64| {
        let p = w2.conj() * (1.0 + w1.norm_sqr());
        Ereal::Fin(2.0 * poly_eval(&g_coeffs, p).re)
    })
}
