//! Extended real values for potential-theoretic quantities.
//!
//! Green functions are genuinely `-inf` at their poles and the Lempert search
//! needs a distinct "no feasible disc" sentinel, so we carry both infinities
//! as explicit variants instead of IEEE specials. The arithmetic here fixes
//! the one convention raw floats get wrong: a zero coefficient annihilates an
//! infinite branch (`0 * -inf = 0`), which is what a dropped term in a
//! weighted sum of branch functions means.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

/// An extended real: finite double, `-inf`, or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ereal {
    NegInf,
    Fin(f64),
    PosInf,
}

pub use Ereal::{Fin, NegInf, PosInf};

impl Ereal {
    pub const ZERO: Ereal = Fin(0.0);

    /// log|z|, with the pole value mapped to the `-inf` marker.
    pub fn ln_abs(z: num_complex::Complex64) -> Ereal {
        let m = z.norm();
        if m == 0.0 {
            NegInf
        } else {
            Fin(m.ln())
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, NegInf)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Fin(x) => Some(x),
            _ => None,
        }
    }

    /// Collapse to an IEEE double (for CSV output and comparisons against
    /// plain-float bounds).
    pub fn as_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Fin(x) => x,
            PosInf => f64::INFINITY,
        }
    }

    pub fn max(self, other: Ereal) -> Ereal {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Scale by a non-negative coefficient. `scale(0.0)` is identically zero,
    /// including on infinite values: the term is simply absent from the sum.
    pub fn scale(self, c: f64) -> Ereal {
        debug_assert!(c >= 0.0 && c.is_finite(), "scale wants a finite c >= 0");
        if c == 0.0 {
            return Ereal::ZERO;
        }
        match self {
            NegInf => NegInf,
            PosInf => PosInf,
            Fin(x) => Fin(c * x),
        }
    }
}

impl From<f64> for Ereal {
    fn from(x: f64) -> Ereal {
        if x == f64::NEG_INFINITY {
            NegInf
        } else if x == f64::INFINITY {
            PosInf
        } else {
            Fin(x)
        }
    }
}

impl Add for Ereal {
    type Output = Ereal;
    fn add(self, rhs: Ereal) -> Ereal {
        match (self, rhs) {
            (NegInf, PosInf) | (PosInf, NegInf) => {
                panic!("Ereal: -inf + +inf is undefined")
            }
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Fin(a), Fin(b)) => Fin(a + b),
        }
    }
}

impl AddAssign for Ereal {
    fn add_assign(&mut self, rhs: Ereal) {
        *self = *self + rhs;
    }
}

impl PartialOrd for Ereal {
    fn partial_cmp(&self, other: &Ereal) -> Option<Ordering> {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
            (_, NegInf) | (PosInf, _) => Some(Ordering::Greater),
            (Fin(a), Fin(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for Ereal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "inf"),
            Fin(x) => write!(f, "{x}"),
        }
    }
}
