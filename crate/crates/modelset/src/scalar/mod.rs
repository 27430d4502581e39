//! Exact scalar arithmetic.
//!
//! All geometry in this crate runs over an exactly ordered field: comparisons,
//! signs and memberships are decided symbolically, never with floating point.
//! Two fields are provided: real quadratic extensions `a + b·√D` (with `D = 0`
//! meaning plain rationals) and the cyclic cubic field `ℚ[θ]/(θ³ - 3θ + 1)`
//! used by one-to-two dimensional cut-and-project schemes.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::BigRational;

mod cubic;
mod quad;

pub use cubic::Cubic;
pub use quad::Quad;

/// Arbitrary-precision rational, the coefficient type of every exact scalar.
pub type Rat = BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// An exactly ordered field.
///
/// `Ord` must agree with the real-number order of the embedded values, and
/// `Eq`/`Hash` with numeric equality.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    /// Exact sign: -1, 0 or 1.
    fn signum(&self) -> i32;
    /// Approximate value, for reporting only.
    fn to_f64(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_rat(&Rat::from_integer(v.into()))
    }

    fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }
}

/// Renders a float with 12 significant digits, deterministically.
pub fn render_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{:.11e}", x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let x = Quad::from_rat(&rat(3, 4));
        assert_eq!(x.to_f64(), 0.75);
        assert_eq!(x.signum(), 1);
        assert!((-x).is_negative());
    }

    #[test]
    fn render_is_stable() {
        assert_eq!(render_f64(0.0), "0");
        assert_eq!(render_f64(1.5), render_f64(1.5));
        assert_eq!(render_f64(1.0 / 3.0), "3.33333333333e-1");
    }
}
