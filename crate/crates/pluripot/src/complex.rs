//! Disc automorphisms, Blaschke products, and domain membership.
//!
//! These are the scalar building blocks: the Mobius factor `(z-a)/(1-conj(a) z)`,
//! its log-modulus (the Green function of the unit disc), finite Blaschke
//! products, and open-membership predicates for the model domains.

use num_complex::Complex64;

use crate::ext::Ereal;
use crate::{Error, Result};

pub type C64 = Complex64;

/// Margin used for open-domain membership: a point counts as inside only when
/// it clears the boundary by this much. The model domains are open and every
/// tolerance downstream is coarser than this.
pub const BOUNDARY_EPS: f64 = 1e-12;

/// Model domains the library evaluates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    UnitDisc,
    Bidisc,
    Polydisc(usize),
    UnitBall(usize),
}

impl Domain {
    pub fn dim(self) -> usize {
        match self {
            Domain::UnitDisc => 1,
            Domain::Bidisc => 2,
            Domain::Polydisc(n) | Domain::UnitBall(n) => n,
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Domain::Polydisc(n) | Domain::UnitBall(n) if n < 2 => Err(Error::InvalidParameter(
                format!("polydisc/ball dimension must be >= 2, got {n}"),
            )),
            _ => Ok(()),
        }
    }
}

fn check_in_open_disc(name: &str, z: C64) -> Result<()> {
    if z.norm() < 1.0 - BOUNDARY_EPS {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {z} must lie in the open unit disc (|.| = {})",
            z.norm()
        )))
    }
}

fn check_in_closed_disc(name: &str, z: C64) -> Result<()> {
    if z.norm() <= 1.0 + BOUNDARY_EPS {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {z} must lie in the closed unit disc (|.| = {})",
            z.norm()
        )))
    }
}

/// Unchecked Mobius factor; callers have validated `|a| < 1`.
#[inline]
pub(crate) fn mobius_raw(a: C64, z: C64) -> C64 {
    (z - a) / (C64::new(1.0, 0.0) - a.conj() * z)
}

/// Disc automorphism `z -> (z - a)/(1 - conj(a) z)` for `|a| < 1`.
///
/// Maps the open disc onto itself and the unit circle onto itself, sending
/// `a` to the origin.
pub fn mobius(a: C64, z: C64) -> Result<C64> {
    check_in_open_disc("a", a)?;
    check_in_closed_disc("z", z)?;
    Ok(mobius_raw(a, z))
}

/// Green function of the unit disc with pole `a`: `log|mobius(a, z)|`.
///
/// Non-positive on the closed disc, `-inf` exactly at the pole.
pub fn disc_green(a: C64, z: C64) -> Result<Ereal> {
    Ok(Ereal::ln_abs(mobius(a, z)?))
}

/// Finite Blaschke product `rotation * prod_j mobius(zeros[j], zeta)`.
///
/// All zeros must lie in the open disc and `|rotation| <= 1`; the empty
/// product is the constant `rotation`.
pub fn blaschke_eval(zeros: &[C64], rotation: C64, zeta: C64) -> Result<C64> {
    for (j, z0) in zeros.iter().enumerate() {
        check_in_open_disc(&format!("zeros[{j}]"), *z0)?;
    }
    check_in_closed_disc("rotation", rotation)?;
    check_in_closed_disc("zeta", zeta)?;
    let mut acc = rotation;
    for z0 in zeros {
        acc *= mobius_raw(*z0, zeta);
    }
    Ok(acc)
}

/// Open membership test for the model domains.
pub fn in_domain(domain: Domain, z: &[C64]) -> Result<bool> {
    domain.validate()?;
    if z.len() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: z.len(),
        });
    }
    let inside = match domain {
        Domain::UnitDisc | Domain::Bidisc | Domain::Polydisc(_) => z
            .iter()
            .all(|zi| zi.norm() < 1.0 - BOUNDARY_EPS),
        Domain::UnitBall(_) => {
            z.iter().map(|zi| zi.norm_sqr()).sum::<f64>() < 1.0 - BOUNDARY_EPS
        }
    };
    Ok(inside)
}

/// Euclidean norm of a point of C^n.
pub fn norm(z: &[C64]) -> f64 {
    z.iter().map(|zi| zi.norm_sqr()).sum::<f64>().sqrt()
}
