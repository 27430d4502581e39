//! Real quadratic field elements `a + b·√D`.
//!
//! `D` is a squarefree non-negative integer shared per context; `D = 0` is the
//! plain rational case. Values normalize `b == 0` to `D = 0`, so rationals
//! coming from different contexts compare and hash identically. Mixing two
//! distinct irrational fields (√2 with √3, say) is a caller bug and panics;
//! scheme validation rejects such configurations up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{Rat, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: u32,
}

impl Quad {
    pub fn new(a: Rat, b: Rat, d: u32) -> Self {
        if b.is_zero() {
            Quad {
                a,
                b,
                d: 0,
            }
        } else {
            assert!(d > 0, "irrational part requires a positive discriminant");
            Quad { a, b, d }
        }
    }

    pub fn from_parts(a: Rat, b: Rat, d: u32) -> Self {
        Self::new(a, b, d)
    }

    /// √D itself.
    pub fn sqrt_d(d: u32) -> Self {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rat {
        &self.b
    }

    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a + b√D ↦ a − b√D`.
    pub fn conjugate(&self) -> Self {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a² − b²·D`, a rational.
    pub fn field_norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.into())
    }

    fn unified_d(&self, other: &Quad) -> u32 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic fields: sqrt({x}) vs sqrt({y})"),
        }
    }
}

impl Scalar for Quad {
    fn zero() -> Self {
        Quad {
            a: Rat::zero(),
            b: Rat::zero(),
            d: 0,
        }
    }

    fn one() -> Self {
        Quad {
            a: Rat::one(),
            b: Rat::zero(),
            d: 0,
        }
    }

    fn from_rat(r: &Rat) -> Self {
        Quad {
            a: r.clone(),
            b: Rat::zero(),
            d: 0,
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = rat_sign(&self.b);
        if self.a.is_zero() {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b have opposite signs: compare a² against b²·D.
        let d = Rat::from_integer(self.d.into());
        let cmp = (&self.a * &self.a).cmp(&(&self.b * &self.b * d));
        match cmp {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    num::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.clone() - other.clone()).signum() {
            s if s > 0 => Ordering::Greater,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        let d = self.unified_d(&rhs);
        Quad::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        let d = self.unified_d(&rhs);
        Quad::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        let d = self.unified_d(&rhs);
        let dd = Rat::from_integer(d.into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad::new(a, b, d)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Div for Quad {
    type Output = Quad;
    fn div(self, rhs: Quad) -> Quad {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.b.is_zero() {
            return Quad::new(self.a / &rhs.a, self.b / &rhs.a, self.d);
        }
        let d = self.unified_d(&rhs);
        let n = rhs.field_norm();
        let conj = rhs.conjugate();
        let prod = self * conj;
        Quad::new(prod.a / &n, prod.b / &n, d)
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}
