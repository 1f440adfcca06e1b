//! Quotients of sparse polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::algebra::poly::{SparsePoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::{denom_lcm, numer_gcd, Q};

pub type Poly = SparsePoly<Q>;

/// `num / den` with integral coprime content and a positive leading denominator
/// coefficient. No multivariate gcd is taken, so equal values may have
/// different representations; `==` compares by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatFunc { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc::new(p, Poly::one(n)).expect("unit denominator")
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c, 0))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            let n = self.den.nvars();
            self.den = Poly::one(n);
            return;
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            self.num = self.num.scale(&(Q::one() / c));
            self.den = Poly::one(self.den.nvars());
        } else if let Some(qq) = self.num.div_exact(&self.den) {
            self.num = qq;
            self.den = Poly::one(self.den.nvars());
        }
        let all = || self.num.terms().chain(self.den.terms()).map(|(_, c)| c);
        let l = denom_lcm(all());
        let g = numer_gcd(all());
        let mut s = Q::new(l, g);
        if self.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            s = -s;
        }
        if !s.is_one() {
            self.num = self.num.scale(&s);
            self.den = self.den.scale(&s);
        }
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Substitute a constant for one variable.
    pub fn subst(&self, v: usize, val: &Q) -> Result<Self> {
        RatFunc::new(self.num.subst(v, val), self.den.subst(v, val))
    }

    pub fn subst_poly(&self, v: usize, val: &Poly) -> Result<Self> {
        RatFunc::new(self.num.subst_poly(v, val), self.den.subst_poly(v, val))
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        RatFunc { num: self.num.swap_vars(a, b), den: self.den.swap_vars(a, b) }.renormalized()
    }

    fn renormalized(mut self) -> Self {
        self.normalize();
        self
    }

    pub fn eval(&self, pt: &[Q]) -> Result<Q> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return Err(Error::Pole(format!("{pt:?}")));
        }
        Ok(self.num.eval(pt) / d)
    }

    pub fn scale(&self, c: &Q) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }.renormalized()
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RatFunc { num: &self.num * p, den: self.den.clone() }.renormalized()
    }

    /// Divide by a polynomial, requiring the quotient to be exact in the numerator.
    pub fn div_poly_exact(&self, p: &Poly) -> Result<Self> {
        let qq = self
            .num
            .div_exact(p)
            .ok_or_else(|| Error::NotDivisible("numerator by polynomial".into()))?;
        Ok(RatFunc { num: qq, den: self.den.clone() }.renormalized())
    }

    /// Canonical string: `num` or `(num)/(den)` with integer coefficients.
    pub fn to_canonical(&self, vars: &Vars) -> String {
        let l = denom_lcm(self.num.terms().chain(self.den.terms()).map(|(_, c)| c));
        let s = Q::from_integer(l);
        let (n, d) = (self.num.scale(&s), self.den.scale(&s));
        if d.is_constant() {
            let c = d.constant_term();
            return n.scale(&(Q::one() / c)).to_canonical(vars);
        }
        format!("({})/({})", n.to_canonical(vars), d.to_canonical(vars))
    }

    pub fn max_nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc { num: &self.num + &o.num, den: self.den.clone() }.renormalized();
        }
        if let Some(f) = o.den.div_exact(&self.den) {
            return RatFunc { num: &(&self.num * &f) + &o.num, den: o.den.clone() }.renormalized();
        }
        if let Some(f) = self.den.div_exact(&o.den) {
            return RatFunc { num: &self.num + &(&o.num * &f), den: self.den.clone() }.renormalized();
        }
        RatFunc {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .renormalized()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        // Cancel a whole denominator against the other numerator when possible.
        if let Some(a) = self.num.div_exact(&o.den) {
            return RatFunc { num: &a * &o.num, den: self.den.clone() }.renormalized();
        }
        if let Some(b) = o.num.div_exact(&self.den) {
            return RatFunc { num: &self.num * &b, den: o.den.clone() }.renormalized();
        }
        RatFunc { num: &self.num * &o.num, den: &self.den * &o.den }.renormalized()
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by the zero rational function")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::constant(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Q::one())
    }
}

impl FromPrimitive for RatFunc {
    fn from_i64(n: i64) -> Option<Self> {
        Some(RatFunc::constant(Q::from_integer(BigInt::from(n))))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(RatFunc::constant(Q::from_integer(BigInt::from(n))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Field};

    fn x(i: usize) -> Poly {
        Poly::var(i, 3)
    }

    fn rf(n: Poly, d: Poly) -> RatFunc {
        RatFunc::new(n, d).unwrap()
    }

    #[test]
    fn factorization_identity() {
        let f = rf(&x(0).pow(2) - &x(1).pow(2), &x(0) - &x(1));
        assert_eq!(f, RatFunc::from_poly(&x(0) + &x(1)));
        assert!(f.is_polynomial());
    }

    #[test]
    fn sum_of_simple_poles() {
        let one = Poly::one(3);
        let h = x(2);
        let a = rf(one.clone(), &h - &one);
        let b = rf(one.clone(), &h + &one);
        let s = &a + &b;
        let expect = rf(h.scale(&q(2)), &h.pow(2) - &one);
        assert_eq!(s, expect);
        assert_eq!(s.to_canonical(&Vars::xh()), "(2*h)/(h^2-1)");
    }

    #[test]
    fn self_division_is_one() {
        let f = RatFunc::from_poly(&x(0) - &x(1));
        assert_eq!(&f / &f, RatFunc::one());
        assert!(f.inv().is_ok());
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn normalization_is_integral_and_positive() {
        let f = rf(x(0).scale(&crate::scalar::qr(1, 2)), (-&x(1)).scale(&crate::scalar::qr(1, 3)));
        assert_eq!(f.num(), &x(0).scale(&q(-3)));
        assert_eq!(f.den(), &x(1).scale(&q(2)));
        assert_eq!(RatFunc::from_int(3), RatFunc::constant(q(3)));
    }
}
