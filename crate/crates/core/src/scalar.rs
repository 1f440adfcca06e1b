//! Scalar traits shared by the algebra kernel.
//!
//! Everything in [`crate::algebra`] is written against [`Field`], so the same
//! code runs over exact rationals and over rational functions in symbolic
//! weights.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// A commutative ring with by-reference arithmetic.
pub trait Ring: Clone + Debug + PartialEq + Zero + One + Send + Sync {
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl<T> Ring for T
where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Send
        + Sync
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>,
    for<'a> &'a T: Add<&'a T, Output = T>
        + Sub<&'a T, Output = T>
        + Mul<&'a T, Output = T>
        + Neg<Output = T>,
{
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// A field with integer embedding.
pub trait Field: Ring + FromPrimitive + Div<Output = Self> {
    fn div_ref(&self, o: &Self) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer embedding")
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}

impl<T> Field for T
where
    T: Ring + FromPrimitive + Div<Output = T>,
    for<'a> &'a T: Div<&'a T, Output = T>,
{
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
}

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical decimal form `p` or `p/q`.
pub fn q_str(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Least common multiple of the denominators of `vals`.
pub fn denom_lcm<'a>(vals: impl IntoIterator<Item = &'a Q>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of the numerators of `vals` (0 for an empty or all-zero list).
pub fn numer_gcd<'a>(vals: impl IntoIterator<Item = &'a Q>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
        .abs()
}

pub fn factorial(k: u32) -> Q {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= i;
    }
    Q::from_integer(f)
}

pub fn pow_q(base: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc = &acc * base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_sum<F: Field>(xs: &[F]) -> F {
        xs.iter().fold(F::zero(), |a, b| a.add_ref(b))
    }

    #[test]
    fn rationals_satisfy_field() {
        let v = [qr(1, 2), qr(1, 3), qr(1, 6)];
        assert_eq!(generic_sum(&v), q(1));
        assert_eq!(q(3).inv(), qr(1, 3));
        assert_eq!(Q::from_int(-4), q(-4));
    }

    #[test]
    fn canonical_rational_strings() {
        assert_eq!(q_str(&qr(-6, 4)), "-3/2");
        assert_eq!(q_str(&q(5)), "5");
        assert_eq!(denom_lcm(&[qr(1, 4), qr(1, 6)]), BigInt::from(12));
        assert_eq!(numer_gcd(&[q(6), q(-9)]), BigInt::from(3));
    }
}
