//! Finite-difference complex Hessian and Monge-Ampere determinant on C^2
//! grids, with a maximality scan for max-form potentials.
//!
//! The mixed derivatives `d^2 u / dz_i dzbar_j` are assembled from centered
//! second differences in the four real coordinates. For `n = 2` the
//! determinant of that matrix is proportional to the Monge-Ampere density at
//! smooth points, and all checks here are zero/sign/ratio tests, so the
//! normalization constant is irrelevant.
//!
//! Max-form potentials are not twice differentiable where branches cross and
//! the distributional mass concentrates there; the scan therefore skips
//! points whose top two branch values are closer than `10 h`, alongside
//! caller-supplied exclusion discs around poles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Domain, C64, BOUNDARY_EPS};
use crate::ext::Ereal;
use crate::green::AxisGreen;
use crate::{Error, Result};

/// A scalar field on (a region of) C^2, with optional branch structure.
pub trait Field2: Sync {
    fn eval(&self, z1: C64, z2: C64) -> Ereal;

    /// Gap between the top two competing branch values when the field is a
    /// max form; fields without kinks report infinity.
    fn branch_gap(&self, _z1: C64, _z2: C64) -> f64 {
        f64::INFINITY
    }
}

/// Wraps a closure as a smooth (kink-free) field.
pub struct SmoothField<F>(pub F);

impl<F> Field2 for SmoothField<F>
where
    F: Fn(C64, C64) -> Ereal + Sync,
{
    fn eval(&self, z1: C64, z2: C64) -> Ereal {
        (self.0)(z1, z2)
    }
}

impl Field2 for AxisGreen {
    fn eval(&self, z1: C64, z2: C64) -> Ereal {
        self.eval_unchecked(&[z1, z2])
    }

    fn branch_gap(&self, z1: C64, z2: C64) -> f64 {
        AxisGreen::branch_gap(self, &[z1, z2])
    }
}

/// `|z1|^2 + |z2|^2`: strictly plurisubharmonic control with determinant 1.
pub fn control_quadratic() -> impl Field2 {
    SmoothField(|z1: C64, z2: C64| Ereal::Fin(z1.norm_sqr() + z2.norm_sqr()))
}

/// `|z1 z2|^2`: maximal (determinant 0), with non-trivial off-diagonal
/// Hessian entries. Degree <= 2 in each real variable separately, so the
/// centered differences reproduce its Hessian exactly.
pub fn quartic_cross() -> impl Field2 {
    SmoothField(|z1: C64, z2: C64| Ereal::Fin(z1.norm_sqr() * z2.norm_sqr()))
}

/// `|z1|^4 + |z2|^4`: determinant `16 |z1 z2|^2` with a genuine fourth
/// derivative in each real variable, so its finite-difference error is a
/// real O(h^2) quantity.
pub fn quartic_diag() -> impl Field2 {
    SmoothField(|z1: C64, z2: C64| {
        Ereal::Fin(z1.norm_sqr() * z1.norm_sqr() + z2.norm_sqr() * z2.norm_sqr())
    })
}

/// `log|z1|`: maximal away from `{z1 = 0}`.
pub fn log_abs_z1() -> impl Field2 {
    SmoothField(|z1: C64, _z2: C64| Ereal::ln_abs(z1))
}

/// The discrete complex Hessian at a point.
#[derive(Debug, Clone, Copy)]
pub struct Hessian2 {
    pub h11: f64,
    pub h22: f64,
    pub h12: C64,
}

impl Hessian2 {
    pub fn det(&self) -> f64 {
        self.h11 * self.h22 - self.h12.norm_sqr()
    }
}

fn finite(v: Ereal, z1: C64, z2: C64) -> Result<f64> {
    v.finite().ok_or_else(|| {
        Error::SingularStencil(format!("stencil hit a non-finite value near ({z1}, {z2})"))
    })
}

/// Centered-difference complex Hessian `d^2 u / dz_i dzbar_j` with step `h`.
pub fn complex_hessian(u: &dyn Field2, z1: C64, z2: C64, h: f64) -> Result<Hessian2> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let ev = |dx1: f64, dy1: f64, dx2: f64, dy2: f64| -> Result<f64> {
        let w1 = z1 + C64::new(dx1, dy1);
        let w2 = z2 + C64::new(dx2, dy2);
        finite(u.eval(w1, w2), z1, z2)
    };
    let center = ev(0.0, 0.0, 0.0, 0.0)?;
    let h2 = h * h;

    let second = |a: f64, b: f64| (a - 2.0 * center + b) / h2;
    let uxx1 = second(ev(h, 0.0, 0.0, 0.0)?, ev(-h, 0.0, 0.0, 0.0)?);
    let uyy1 = second(ev(0.0, h, 0.0, 0.0)?, ev(0.0, -h, 0.0, 0.0)?);
    let uxx2 = second(ev(0.0, 0.0, h, 0.0)?, ev(0.0, 0.0, -h, 0.0)?);
    let uyy2 = second(ev(0.0, 0.0, 0.0, h)?, ev(0.0, 0.0, 0.0, -h)?);

    // mixed d^2/da db = (u(+a+b) - u(+a-b) - u(-a+b) + u(-a-b)) / (4 h^2)
    let mixed = |pp: f64, pm: f64, mp: f64, mm: f64| (pp - pm - mp + mm) / (4.0 * h2);
    let x1x2 = mixed(
        ev(h, 0.0, h, 0.0)?,
        ev(h, 0.0, -h, 0.0)?,
        ev(-h, 0.0, h, 0.0)?,
        ev(-h, 0.0, -h, 0.0)?,
    );
    let y1y2 = mixed(
        ev(0.0, h, 0.0, h)?,
        ev(0.0, h, 0.0, -h)?,
        ev(0.0, -h, 0.0, h)?,
        ev(0.0, -h, 0.0, -h)?,
    );
    let x1y2 = mixed(
        ev(h, 0.0, 0.0, h)?,
        ev(h, 0.0, 0.0, -h)?,
        ev(-h, 0.0, 0.0, h)?,
        ev(-h, 0.0, 0.0, -h)?,
    );
    let y1x2 = mixed(
        ev(0.0, h, h, 0.0)?,
        ev(0.0, h, -h, 0.0)?,
        ev(0.0, -h, h, 0.0)?,
        ev(0.0, -h, -h, 0.0)?,
    );

    Ok(Hessian2 {
        h11: 0.25 * (uxx1 + uyy1),
        h22: 0.25 * (uxx2 + uyy2),
        h12: 0.25 * C64::new(x1x2 + y1y2, x1y2 - y1x2),
    })
}

/// Determinant of the discrete complex Hessian.
pub fn ma_det(u: &dyn Field2, z1: C64, z2: C64, h: f64) -> Result<f64> {
    Ok(complex_hessian(u, z1, z2, h)?.det())
}

/// Rectangular sampling region in C^2: a center, four real half-widths
/// (re z1, im z1, re z2, im z2), the grid/stencil step, and exclusion discs
/// around singular points.
#[derive(Debug, Clone)]
pub struct GridRegion {
    center: (C64, C64),
    half_widths: [f64; 4],
    step: f64,
    exclusions: Vec<((C64, C64), f64)>,
    counts: [usize; 4],
}

impl GridRegion {
    /// Validates the region against `domain`: every stencil point must stay
    /// inside, and every exclusion radius must exceed `2 h`.
    pub fn new(
        center: (C64, C64),
        half_widths: [f64; 4],
        step: f64,
        exclusions: Vec<((C64, C64), f64)>,
        domain: Domain,
    ) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step must be positive, got {step}"
            )));
        }
        if half_widths.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidParameter(
                "half-widths must be finite and non-negative".into(),
            ));
        }
        for (_, r) in &exclusions {
            if *r <= 2.0 * step {
                return Err(Error::InvalidParameter(format!(
                    "exclusion radius {r} must exceed twice the step {step}"
                )));
            }
        }
        // stencil margin: offsets up to one step in each real coordinate
        let m = step;
        let c = [center.0.re, center.0.im, center.1.re, center.1.im];
        let hi = |i: usize| c[i].abs() + half_widths[i] + m;
        let max_z1 = (hi(0).powi(2) + hi(1).powi(2)).sqrt();
        let max_z2 = (hi(2).powi(2) + hi(3).powi(2)).sqrt();
        let inside = match domain {
            Domain::Bidisc | Domain::Polydisc(2) => {
                max_z1 < 1.0 - BOUNDARY_EPS && max_z2 < 1.0 - BOUNDARY_EPS
            }
            Domain::UnitBall(2) => max_z1 * max_z1 + max_z2 * max_z2 < 1.0 - BOUNDARY_EPS,
            d => {
                return Err(Error::InvalidParameter(format!(
                    "grid regions are two-dimensional; unsupported domain {d:?}"
                )))
            }
        };
        if !inside {
            return Err(Error::OutsideDomain(format!(
                "region reaches outside {domain:?} (max |z1| = {max_z1}, max |z2| = {max_z2})"
            )));
        }
        let counts = half_widths.map(|w| (2.0 * w / step + 1e-9).floor() as usize + 1);
        Ok(GridRegion {
            center,
            half_widths,
            step,
            exclusions,
            counts,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid point by linear index, lexicographic in
    /// (re z1, im z1, re z2, im z2).
    pub fn point(&self, index: usize) -> (C64, C64) {
        let mut rest = index;
        let mut coord = [0usize; 4];
        for i in (0..4).rev() {
            coord[i] = rest % self.counts[i];
            rest /= self.counts[i];
        }
        let c = [
            self.center.0.re,
            self.center.0.im,
            self.center.1.re,
            self.center.1.im,
        ];
        let mut x = [0.0; 4];
        for i in 0..4 {
            x[i] = c[i] - self.half_widths[i] + coord[i] as f64 * self.step;
        }
        (C64::new(x[0], x[1]), C64::new(x[2], x[3]))
    }

    /// True when the point falls inside an exclusion disc.
    pub fn excluded(&self, z1: C64, z2: C64) -> bool {
        self.exclusions.iter().any(|((p1, p2), r)| {
            let d2 = (z1 - p1).norm_sqr() + (z2 - p2).norm_sqr();
            d2 <= r * r
        })
    }
}

/// Factor in the pass threshold `factor * h^2 * control_scale`.
pub const MA_CAL_FACTOR: f64 = 25.0;

/// A worst-offender grid point with its determinant at `h` and `h/2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorstPoint {
    pub z1_re: f64,
    pub z1_im: f64,
    pub z2_re: f64,
    pub z2_im: f64,
    pub det: f64,
    pub det_half_step: f64,
}

/// Outcome of a maximality scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub evaluated: usize,
    pub skipped_exclusion: usize,
    pub skipped_branch: usize,
    pub max_abs_det: f64,
    pub q50: f64,
    pub q90: f64,
    pub q99: f64,
    /// Median determinant of the quadratic control field on this grid; the
    /// unit against which "vanishing" is judged.
    pub control_median: f64,
    pub threshold: f64,
    pub pass: bool,
    pub step: f64,
    pub worst: Vec<WorstPoint>,
}

/// Scans `|det|` of the discrete complex Hessian over the region, skipping
/// exclusion discs and branch crossings (gap below `10 h`). Passes when the
/// maximum is below `MA_CAL_FACTOR * h^2` in units of the control field's
/// median determinant. The worst offenders are re-evaluated at `h/2`.
pub fn maximality_scan(u: &dyn Field2, region: &GridRegion) -> Result<ScanReport> {
    let h = region.step();
    let n = region.len();

    #[derive(Clone, Copy)]
    enum Visit {
        Excluded,
        BranchSkip,
        Det(f64),
    }

    let visits: Vec<Visit> = (0..n)
        .into_par_iter()
        .map(|idx| -> Result<Visit> {
            let (z1, z2) = region.point(idx);
            if region.excluded(z1, z2) {
                return Ok(Visit::Excluded);
            }
            if u.branch_gap(z1, z2) < 10.0 * h {
                return Ok(Visit::BranchSkip);
            }
            Ok(Visit::Det(ma_det(u, z1, z2, h)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut dets: Vec<(f64, usize)> = Vec::new();
    let mut skipped_exclusion = 0;
    let mut skipped_branch = 0;
    for (idx, v) in visits.iter().enumerate() {
        match v {
            Visit::Excluded => skipped_exclusion += 1,
            Visit::BranchSkip => skipped_branch += 1,
            Visit::Det(d) => dets.push((d.abs(), idx)),
        }
    }
    if dets.is_empty() {
        return Err(Error::EmptyRegion(
            "no grid points survive the exclusions".into(),
        ));
    }

    // control calibration on a subsample of the same grid
    let control = control_quadratic();
    let stride = (n / 128).max(1);
    let mut control_dets: Vec<f64> = (0..n)
        .step_by(stride)
        .map(|idx| {
            let (z1, z2) = region.point(idx);
            ma_det(&control, z1, z2, h)
        })
        .collect::<Result<Vec<_>>>()?;
    control_dets.sort_by(f64::total_cmp);
    let control_median = control_dets[control_dets.len() / 2];

    let mut sorted: Vec<f64> = dets.iter().map(|(d, _)| *d).collect();
    sorted.sort_by(f64::total_cmp);
    let q = |p: f64| sorted[((sorted.len() - 1) as f64 * p) as usize];

    let threshold = MA_CAL_FACTOR * h * h * control_median.abs();
    let max_abs_det = *sorted.last().unwrap();

    let mut by_size = dets.clone();
    by_size.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let worst = by_size
        .iter()
        .take(8)
        .map(|(d, idx)| -> Result<WorstPoint> {
            let (z1, z2) = region.point(*idx);
            Ok(WorstPoint {
                z1_re: z1.re,
                z1_im: z1.im,
                z2_re: z2.re,
                z2_im: z2.im,
                det: *d,
                det_half_step: ma_det(u, z1, z2, h / 2.0)?.abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ScanReport {
        evaluated: dets.len(),
        skipped_exclusion,
        skipped_branch,
        max_abs_det,
        q50: q(0.5),
        q90: q(0.9),
        q99: q(0.99),
        control_median,
        threshold,
        pass: max_abs_det <= threshold,
        step: h,
        worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::PoleConfig;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn hessian_of_quadratic_control_is_identity() {
        let u = control_quadratic();
        let hess = complex_hessian(&u, c(0.3, -0.2), c(0.1, 0.4), 1e-3).unwrap();
        assert!((hess.h11 - 1.0).abs() < 1e-9);
        assert!((hess.h22 - 1.0).abs() < 1e-9);
        assert!(hess.h12.norm() < 1e-9);
        assert!((hess.det() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn hessian_of_pluriharmonic_vanishes() {
        let u = SmoothField(|z1: C64, z2: C64| Ereal::Fin((z1 * z2).re));
        let hess = complex_hessian(&u, c(0.2, 0.1), c(-0.3, 0.2), 1e-3).unwrap();
        assert!(hess.h11.abs() < 1e-9);
        assert!(hess.h22.abs() < 1e-9);
        assert!(hess.h12.norm() < 1e-9);
        assert!(ma_det(&u, c(0.2, 0.1), c(-0.3, 0.2), 1e-3).unwrap().abs() < 1e-10);
    }

    #[test]
    fn hessian_of_quartic_matches_symbolic_oracle() {
        // u = |z1 z2|^2: H = [[|z2|^2, zbar1 z2], [z1 zbar2, |z1|^2]]
        let u = quartic_cross();
        let (z1, z2) = (c(0.3, 0.1), c(0.2, -0.4));
        let hess = complex_hessian(&u, z1, z2, 1e-3).unwrap();
        assert!((hess.h11 - z2.norm_sqr()).abs() < 1e-8);
        assert!((hess.h22 - z1.norm_sqr()).abs() < 1e-8);
        assert!((hess.h12 - z1.conj() * z2).norm() < 1e-8);
        // determinant cancels exactly in the limit
        assert!(hess.det().abs() < 1e-8);
    }

    #[test]
    fn combined_quartic_det_closed_form() {
        // u = |z1|^2 + |z2|^2 + |z1 z2|^2: det = 1 + |z1|^2 + |z2|^2
        let u = SmoothField(|z1: C64, z2: C64| {
            Ereal::Fin(z1.norm_sqr() + z2.norm_sqr() + z1.norm_sqr() * z2.norm_sqr())
        });
        let (z1, z2) = (c(0.25, -0.15), c(-0.3, 0.2));
        let d = ma_det(&u, z1, z2, 1e-3).unwrap();
        let expect = 1.0 + z1.norm_sqr() + z2.norm_sqr();
        assert!((d - expect).abs() < 1e-7, "{d} vs {expect}");
    }

    #[test]
    fn quartic_cross_differences_are_exact() {
        // degree <= 2 in each real variable: only rounding remains
        let u = quartic_cross();
        let (z1, z2) = (c(0.31, 0.12), c(0.22, -0.41));
        assert!(ma_det(&u, z1, z2, 1e-2).unwrap().abs() < 1e-12);
    }

    #[test]
    fn convergence_order_on_quartic_field() {
        // |det - 16 |z1 z2|^2| should shrink ~4x when h halves
        let u = quartic_diag();
        let (z1, z2) = (c(0.31, 0.12), c(0.22, -0.41));
        let exact = 16.0 * z1.norm_sqr() * z2.norm_sqr();
        let e1 = (ma_det(&u, z1, z2, 2e-2).unwrap() - exact).abs();
        let e2 = (ma_det(&u, z1, z2, 1e-2).unwrap() - exact).abs();
        let ratio = e1 / e2;
        assert!(
            (3.0..5.0).contains(&ratio),
            "expected ~4x error reduction, got {ratio} ({e1} -> {e2})"
        );
    }

    #[test]
    fn singular_stencil_reported() {
        let u = log_abs_z1();
        // stencil straddles z1 = 0
        assert!(matches!(
            ma_det(&u, c(0.0, 0.0), c(0.2, 0.0), 1e-3),
            Err(Error::SingularStencil(_))
        ));
    }

    #[test]
    fn region_validation_and_indexing() {
        let r = GridRegion::new(
            (c(0.1, 0.0), c(0.2, 0.0)),
            [0.05, 0.0, 0.05, 0.0],
            1e-2,
            vec![],
            Domain::Bidisc,
        )
        .unwrap();
        assert_eq!(r.len(), 11 * 11);
        let (z1, z2) = r.point(0);
        assert!((z1 - c(0.05, 0.0)).norm() < 1e-12);
        assert!((z2 - c(0.15, 0.0)).norm() < 1e-12);

        // region reaching outside the bidisc is rejected
        assert!(GridRegion::new(
            (c(0.9, 0.0), c(0.0, 0.0)),
            [0.2, 0.0, 0.0, 0.0],
            1e-2,
            vec![],
            Domain::Bidisc,
        )
        .is_err());
        // exclusion radius must exceed 2h
        assert!(GridRegion::new(
            (c(0.0, 0.0), c(0.0, 0.0)),
            [0.1, 0.0, 0.1, 0.0],
            1e-2,
            vec![((c(0.0, 0.0), c(0.0, 0.0)), 1e-2)],
            Domain::Bidisc,
        )
        .is_err());
    }

    #[test]
    fn scan_passes_for_green_and_fails_for_control() {
        let cfg = PoleConfig::axis(
            Domain::Bidisc,
            &[(c(0.5, 0.0), 2.0), (c(-0.5, 0.0), 1.0)],
        )
        .unwrap();
        let g = AxisGreen::from_config(&cfg).unwrap();
        let region = GridRegion::new(
            (c(0.0, 0.0), c(0.3, 0.0)),
            [0.08, 0.0, 0.08, 0.0],
            1e-3,
            vec![],
            Domain::Bidisc,
        )
        .unwrap();
        let rep = maximality_scan(&g, &region).unwrap();
        assert!(rep.pass, "green scan failed: {rep:?}");
        assert!(rep.skipped_branch > 0);

        let ctrl = control_quadratic();
        let rep = maximality_scan(&ctrl, &region).unwrap();
        assert!(!rep.pass);
        assert!((rep.max_abs_det - 1.0).abs() < 1e-6);
    }

    #[test]
    fn scan_passes_for_log_abs_z1_off_its_singular_line() {
        let u = log_abs_z1();
        let region = GridRegion::new(
            (c(0.4, 0.0), c(0.0, 0.0)),
            [0.1, 0.0, 0.1, 0.1],
            1e-3,
            vec![],
            Domain::Bidisc,
        )
        .unwrap();
        let rep = maximality_scan(&u, &region).unwrap();
        assert!(rep.pass, "log|z1| scan failed: {rep:?}");
    }

    #[test]
    fn scan_respects_exclusions_and_empty_region_errors() {
        let u = log_abs_z1();
        // exclusion disc swallows the whole region
        let region = GridRegion::new(
            (c(0.4, 0.0), c(0.0, 0.0)),
            [0.02, 0.0, 0.0, 0.0],
            1e-3,
            vec![((c(0.4, 0.0), c(0.0, 0.0)), 0.5)],
            Domain::Bidisc,
        )
        .unwrap();
        assert!(matches!(
            maximality_scan(&u, &region),
            Err(Error::EmptyRegion(_))
        ));
    }
}
