//! Semifields used to evaluate subtraction-free expressions.
//!
//! [`Q`] is the ordinary field of rationals. [`MaxPlus`] is the tropical
//! semifield `(max, +)` extended by `-∞`; evaluating a subtraction-free formula
//! there yields its ultra-discretization.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::lattice::{Unit, Q};

/// A commutative semiring with multiplicative inverses for non-bottom elements.
pub trait Semifield: Unit + Clone + PartialEq + fmt::Debug {
    /// Additive identity: `0` for rationals, `-∞` for max-plus.
    fn zero() -> Self;

    fn one() -> Self {
        Self::unit()
    }

    fn plus(&self, other: &Self) -> Self;

    fn times(&self, other: &Self) -> Self;

    /// Division; panics if `other` is the additive identity.
    fn over(&self, other: &Self) -> Self;

    fn inv(&self) -> Self {
        Self::one().over(self)
    }

    fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(&base);
        }
        acc
    }

    /// Left-to-right sum; the empty sum is [`Semifield::zero`].
    fn sum<'a, I>(iter: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        iter.into_iter().fold(Self::zero(), |acc, v| acc.plus(v))
    }

    fn product<'a, I>(iter: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
        Self: 'a,
    {
        iter.into_iter().fold(Self::one(), |acc, v| acc.times(v))
    }
}

impl Semifield for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn over(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "rational division by zero");
        self / other
    }

    fn powi(&self, e: i64) -> Self {
        num_traits::pow::Pow::pow(self, e as i32)
    }
}

/// An element of the max-plus semifield; `None` is `-∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaxPlus(pub Option<i64>);

impl MaxPlus {
    pub const NEG_INF: MaxPlus = MaxPlus(None);

    pub fn fin(v: i64) -> Self {
        MaxPlus(Some(v))
    }

    /// The finite value; panics on `-∞`.
    pub fn value(self) -> i64 {
        self.0.expect("tropical value is -inf")
    }
}

impl fmt::Debug for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "-inf"),
        }
    }
}

impl Unit for MaxPlus {
    fn unit() -> Self {
        MaxPlus(Some(0))
    }
}

impl Semifield for MaxPlus {
    fn zero() -> Self {
        MaxPlus::NEG_INF
    }

    fn plus(&self, other: &Self) -> Self {
        (*self).max(*other)
    }

    fn times(&self, other: &Self) -> Self {
        match (self.0, other.0) {
            (Some(a), Some(b)) => MaxPlus(Some(a + b)),
            _ => MaxPlus::NEG_INF,
        }
    }

    fn over(&self, other: &Self) -> Self {
        let b = other.0.expect("tropical division by -inf");
        MaxPlus(self.0.map(|a| a - b))
    }

    fn powi(&self, e: i64) -> Self {
        match self.0 {
            Some(a) => MaxPlus(Some(a * e)),
            None if e > 0 => MaxPlus::NEG_INF,
            None if e == 0 => MaxPlus::fin(0),
            None => panic!("negative power of -inf"),
        }
    }
}

/// Rounded base-`2^bits` logarithm of a positive rational, computed from bit
/// lengths only. Exact whenever the value is `t^e` times a cofactor whose
/// magnitude stays well inside `2^(bits/2)`.
pub fn round_log2_pow(q: &Q, bits: u64) -> i64 {
    assert!(q.is_positive(), "logarithm of a non-positive rational");
    let num = q.numer().bits() as i64;
    let den = q.denom().bits() as i64;
    let diff = num - den;
    let b = bits as i64;
    // round(diff / b) with ties away from zero; ties cannot occur in range
    let half = b / 2;
    if diff >= 0 {
        (diff + half) / b
    } else {
        -((-diff + half) / b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn maxplus_arithmetic() {
        let a = MaxPlus::fin(3);
        let b = MaxPlus::fin(-2);
        assert_eq!(a.plus(&b), a);
        assert_eq!(a.times(&b), MaxPlus::fin(1));
        assert_eq!(a.over(&b), MaxPlus::fin(5));
        assert_eq!(MaxPlus::NEG_INF.plus(&b), b);
        assert_eq!(MaxPlus::NEG_INF.times(&a), MaxPlus::NEG_INF);
        assert_eq!(b.powi(-3), MaxPlus::fin(6));
        assert_eq!(MaxPlus::sum(&[]), MaxPlus::NEG_INF);
    }

    #[test]
    fn rational_powers() {
        assert_eq!(q(2, 3).powi(-2), q(9, 4));
        assert_eq!(q(2, 3).powi(0), q(1, 1));
        assert_eq!(Q::sum(&[q(1, 2), q(1, 3)]), q(5, 6));
    }

    #[test]
    fn log_rounding() {
        let t = Q::from_integer(BigInt::from(1) << 128u32);
        assert_eq!(round_log2_pow(&t.powi(5), 128), 5);
        assert_eq!(round_log2_pow(&t.powi(-4), 128), -4);
        assert_eq!(round_log2_pow(&(t.powi(-4) * q(70, 1)), 128), -4);
        assert_eq!(round_log2_pow(&(t.powi(3) / q(70, 1)), 128), 3);
        assert_eq!(round_log2_pow(&q(1, 1), 128), 0);
    }
}
