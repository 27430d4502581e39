//! The cyclic cubic field `ℚ[θ]/(θ³ - 3θ + 1)`.
//!
//! θ = 2·cos(2π/9) ≈ 1.53209 is totally real and its Galois group is cyclic:
//! the conjugation θ ↦ θ² − 2 permutes the three real roots. Embedding an
//! element by its three conjugates gives rank-3 lattices in ℝ × ℝ², which is
//! what one-to-two dimensional schemes need (a quadratic field only has two
//! real embeddings, so it can never produce an injective rank-3 projection).
//!
//! Signs are decided by isolating θ with exact bisection on the minimal
//! polynomial: a nonzero element `a + bθ + cθ²` is bounded away from zero, so
//! refining the bracket always terminates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{quad::rat_to_f64, rat, Rat, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cubic {
    c0: Rat,
    c1: Rat,
    c2: Rat,
}

/// `x³ - 3x + 1` evaluated exactly.
fn min_poly(x: &Rat) -> Rat {
    x * x * x - Rat::from_integer(3.into()) * x + Rat::one()
}

/// Starting bracket for θ: f(3/2) = -1/8 < 0 < 37/125 = f(8/5), f increasing.
fn base_bracket() -> (Rat, Rat) {
    (rat(3, 2), rat(8, 5))
}

fn bisect(lo: &mut Rat, hi: &mut Rat) {
    let two = Rat::from_integer(2.into());
    let mid = (lo.clone() + hi.clone()) / two;
    if min_poly(&mid).is_negative() {
        *lo = mid;
    } else {
        *hi = mid;
    }
}

impl Cubic {
    pub fn new(c0: Rat, c1: Rat, c2: Rat) -> Self {
        Cubic { c0, c1, c2 }
    }

    pub fn theta() -> Self {
        Cubic::new(Rat::zero(), Rat::one(), Rat::zero())
    }

    pub fn coeffs(&self) -> [&Rat; 3] {
        [&self.c0, &self.c1, &self.c2]
    }

    /// The generating field automorphism θ ↦ θ² − 2.
    pub fn conjugate(&self) -> Self {
        // σ(θ) = θ² − 2, σ(θ²) = −θ² − θ + 4
        let c0 = &self.c0 - Rat::from_integer(2.into()) * &self.c1
            + Rat::from_integer(4.into()) * &self.c2;
        let c1 = -self.c2.clone();
        let c2 = &self.c1 - &self.c2;
        Cubic::new(c0, c1, c2)
    }

    /// Product of the three conjugates; always rational.
    pub fn field_norm(&self) -> Rat {
        let n = self.clone() * self.conjugate() * self.conjugate().conjugate();
        debug_assert!(n.c1.is_zero() && n.c2.is_zero());
        n.c0
    }

    /// Interval evaluation over a θ-bracket with positive endpoints.
    fn eval_interval(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let (t_lo, t_hi) = (lo.clone(), hi.clone());
        let (s_lo, s_hi) = (lo * lo, hi * hi);
        let mut v_lo = self.c0.clone();
        let mut v_hi = self.c0.clone();
        if self.c1.is_negative() {
            v_lo += &self.c1 * &t_hi;
            v_hi += &self.c1 * &t_lo;
        } else {
            v_lo += &self.c1 * &t_lo;
            v_hi += &self.c1 * &t_hi;
        }
        if self.c2.is_negative() {
            v_lo += &self.c2 * &s_hi;
            v_hi += &self.c2 * &s_lo;
        } else {
            v_lo += &self.c2 * &s_lo;
            v_hi += &self.c2 * &s_hi;
        }
        (v_lo, v_hi)
    }
}

impl Scalar for Cubic {
    fn zero() -> Self {
        Cubic::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    fn one() -> Self {
        Cubic::new(Rat::one(), Rat::zero(), Rat::zero())
    }

    fn from_rat(r: &Rat) -> Self {
        Cubic::new(r.clone(), Rat::zero(), Rat::zero())
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (mut lo, mut hi) = base_bracket();
        loop {
            let (v_lo, v_hi) = self.eval_interval(&lo, &hi);
            if v_lo.is_positive() {
                return 1;
            }
            if v_hi.is_negative() {
                return -1;
            }
            bisect(&mut lo, &mut hi);
        }
    }

    fn to_f64(&self) -> f64 {
        const THETA: f64 = 1.532_088_886_237_956;
        rat_to_f64(&self.c0) + rat_to_f64(&self.c1) * THETA + rat_to_f64(&self.c2) * THETA * THETA
    }
}

impl PartialOrd for Cubic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cubic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.clone() - other.clone()).signum() {
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

impl Add for Cubic {
    type Output = Cubic;
    fn add(self, rhs: Cubic) -> Cubic {
        Cubic::new(self.c0 + rhs.c0, self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Cubic {
    type Output = Cubic;
    fn sub(self, rhs: Cubic) -> Cubic {
        Cubic::new(self.c0 - rhs.c0, self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Mul for Cubic {
    type Output = Cubic;
    fn mul(self, rhs: Cubic) -> Cubic {
        // Reduce with θ³ = 3θ − 1 and θ⁴ = 3θ² − θ.
        let t3 = &self.c1 * &rhs.c2 + &self.c2 * &rhs.c1;
        let t4 = &self.c2 * &rhs.c2;
        let three = Rat::from_integer(3.into());
        let c0 = &self.c0 * &rhs.c0 - &t3;
        let c1 = &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0 + &three * &t3 - &t4;
        let c2 = &self.c0 * &rhs.c2 + &self.c1 * &rhs.c1 + &self.c2 * &rhs.c0 + &three * &t4;
        Cubic::new(c0, c1, c2)
    }
}

impl Neg for Cubic {
    type Output = Cubic;
    fn neg(self) -> Cubic {
        Cubic::new(-self.c0, -self.c1, -self.c2)
    }
}

impl Div for Cubic {
    type Output = Cubic;
    fn div(self, rhs: Cubic) -> Cubic {
        assert!(!rhs.is_zero(), "division by zero");
        let n = rhs.field_norm();
        let adj = rhs.conjugate() * rhs.conjugate().conjugate();
        let prod = self * adj;
        Cubic::new(prod.c0 / &n, prod.c1 / &n, prod.c2 / &n)
    }
}

impl fmt::Debug for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*th+{}*th^2", self.c0, self.c1, self.c2)
    }
}
