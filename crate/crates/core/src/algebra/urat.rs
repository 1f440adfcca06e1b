//! Univariate rational functions in lowest terms.

use std::fmt;

use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq)]
pub struct URat<F> {
    num: UniPoly<F>,
    den: UniPoly<F>,
}

impl<F: Field> URat<F> {
    pub fn new(num: UniPoly<F>, den: UniPoly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let inv = d.lead().inv();
        Ok(URat { num: n.scale(&inv), den: d.scale(&inv) })
    }

    pub fn zero() -> Self {
        URat { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        URat { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        URat { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("{x:?}")));
        }
        Ok(self.num.eval(x).div_ref(&d))
    }

    /// Order of the pole at `x0` (0 at a regular point).
    pub fn pole_order(&self, x0: &F) -> u32 {
        let mut d = self.den.clone();
        let mut m = 0;
        loop {
            let (qt, r) = d.div_linear(x0);
            if !r.is_zero() || d.degree().unwrap_or(0) == 0 {
                return m;
            }
            d = qt;
            m += 1;
        }
    }
}

impl<F: Field> fmt::Debug for URat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}
