//! Rational functions with an explicitly factored denominator.
//!
//! Every denominator built by the series constructors is a product of known
//! factors, so sums take the multiset lcm instead of a blind product.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::poly::MAX_VARS;
use crate::algebra::ratfunc::{Poly, RatFunc};
use crate::algebra::unipoly::UniPoly;
use crate::algebra::urat::URat;
use crate::error::{Error, Result};
use crate::scalar::Q;

#[derive(Clone)]
pub struct FRat {
    num: Poly,
    /// Nonconstant factors with a leading coefficient of one, and multiplicities.
    den: Vec<(Poly, u32)>,
}

impl FRat {
    pub fn from_poly(p: Poly) -> Self {
        FRat { num: p, den: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c, 0))
    }

    /// `num / prod f^m`; constant factors fold into the numerator.
    pub fn new(num: Poly, factors: Vec<(Poly, u32)>) -> Result<Self> {
        let mut out = FRat { num, den: Vec::new() };
        for (f, m) in factors {
            out = out.div_factor(&f, m)?;
        }
        Ok(out)
    }

    /// Divide by `f^m`.
    pub fn div_factor(mut self, f: &Poly, m: u32) -> Result<Self> {
        if m == 0 {
            return Ok(self);
        }
        let (_, lc) = f.leading().ok_or(Error::DivisionByZero)?;
        let lc = lc.clone();
        let inv = Q::one() / &lc;
        for _ in 0..m {
            self.num = self.num.scale(&inv);
        }
        if f.is_constant() {
            return Ok(self);
        }
        let f = f.scale(&inv);
        match self.den.iter_mut().find(|(g, _)| *g == f) {
            Some(e) => e.1 += m,
            None => self.den.push((f, m)),
        }
        Ok(self)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn den_poly(&self) -> Poly {
        let mut d = Poly::one(self.num.nvars());
        for (f, m) in &self.den {
            d = &d * &f.pow(*m);
        }
        d
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den_poly()).expect("nonzero factors")
    }

    fn mult_of(&self, f: &Poly) -> u32 {
        self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m)
    }

    fn lcm_den(&self, o: &Self) -> Vec<(Poly, u32)> {
        let mut den = self.den.clone();
        for (f, m) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some(e) => e.1 = e.1.max(*m),
                None => den.push((f.clone(), *m)),
            }
        }
        den
    }

    fn lift(&self, den: &[(Poly, u32)]) -> Poly {
        let mut n = self.num.clone();
        for (f, m) in den {
            let have = self.mult_of(f);
            if *m > have {
                n = &n * &f.pow(m - have);
            }
        }
        n
    }

    pub fn scale(&self, c: &Q) -> Self {
        FRat { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        FRat { num: &self.num * p, den: self.den.clone() }
    }

    /// Exact division of the numerator by `p`.
    pub fn div_poly_exact(&self, p: &Poly) -> Result<Self> {
        let num = self
            .num
            .div_exact(p)
            .ok_or_else(|| Error::NotDivisible("numerator".into()))?;
        Ok(FRat { num, den: self.den.clone() })
    }

    /// Remove factors that divide the numerator.
    pub fn cancel(&self) -> Self {
        let mut out = self.clone();
        for (f, m) in out.den.iter_mut() {
            while *m > 0 {
                match out.num.div_exact(f) {
                    Some(qq) => {
                        out.num = qq;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        out.den.retain(|(_, m)| *m > 0);
        out
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = FRat::from_poly(self.num.swap_vars(a, b));
        for (f, m) in &self.den {
            out = out.div_factor(&f.swap_vars(a, b), *m).expect("nonzero factor");
        }
        out
    }

    /// Substitute a polynomial for a variable.
    pub fn subst_poly(&self, v: usize, val: &Poly) -> Result<Self> {
        let mut out = FRat::from_poly(self.num.subst_poly(v, val));
        for (f, m) in &self.den {
            let g = f.subst_poly(v, val);
            if g.is_zero() {
                return Err(Error::Pole(format!("factor vanishes after substituting variable {v}")));
            }
            out = out.div_factor(&g, *m)?;
        }
        Ok(out)
    }

    pub fn subst(&self, v: usize, val: &Q) -> Result<Self> {
        self.subst_poly(v, &Poly::constant(val.clone(), 0))
    }

    pub fn eval(&self, pt: &[Q]) -> Result<Q> {
        let mut d = Q::one();
        for (f, m) in &self.den {
            let v = f.eval(pt);
            if v.is_zero() {
                return Err(Error::Pole(format!("{pt:?}")));
            }
            for _ in 0..*m {
                d *= &v;
            }
        }
        Ok(self.num.eval(pt) / d)
    }

    /// View as a univariate function of variable `v`; no other variable may occur.
    pub fn to_urat(&self, v: usize) -> Result<URat<Q>> {
        let uni = |p: &Poly| -> Result<UniPoly<Q>> {
            let mut c: Vec<Q> = Vec::new();
            for (m, x) in p.terms() {
                if (0..MAX_VARS).any(|w| w != v && m.exp(w) != 0) {
                    return Err(Error::Invalid(format!("variable other than {v} present")));
                }
                let e = m.exp(v) as usize;
                if c.len() <= e {
                    c.resize(e + 1, Q::zero());
                }
                c[e] += x;
            }
            Ok(UniPoly::from_coeffs(c))
        };
        URat::new(uni(&self.num)?, uni(&self.den_poly())?)
    }

    /// Equality of values by lifting both sides to the common factored denominator.
    pub fn same_value(&self, o: &Self) -> bool {
        let den = self.lcm_den(o);
        self.lift(&den) == o.lift(&den)
    }

    /// True when the denominator is symmetric as a multiset under `a <-> b`.
    pub fn den_is_swap_symmetric(&self, a: usize, b: usize) -> bool {
        let sw = self.swap_vars(a, b);
        self.den.len() == sw.den.len() && self.den.iter().all(|(f, m)| sw.mult_of(f) == *m)
    }

    /// Same value with the denominator extended to its closure under `a <-> b`.
    pub fn symmetrize_den(&self, a: usize, b: usize) -> Self {
        let den = self.lcm_den(&self.swap_vars(a, b));
        FRat { num: self.lift(&den), den }
    }
}

impl fmt::Debug for FRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / {:?}", self.num, self.den)
    }
}

impl PartialEq for FRat {
    fn eq(&self, o: &Self) -> bool {
        self.same_value(o)
    }
}

impl Add for &FRat {
    type Output = FRat;
    fn add(self, o: &FRat) -> FRat {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let den = self.lcm_den(o);
        let num = &self.lift(&den) + &o.lift(&den);
        if num.is_zero() {
            return FRat::from_poly(num);
        }
        FRat { num, den }
    }
}

impl Neg for &FRat {
    type Output = FRat;
    fn neg(self) -> FRat {
        FRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &FRat {
    type Output = FRat;
    fn sub(self, o: &FRat) -> FRat {
        self + &(-o)
    }
}

impl Mul for &FRat {
    type Output = FRat;
    fn mul(self, o: &FRat) -> FRat {
        let num = &self.num * &o.num;
        if num.is_zero() {
            return FRat::from_poly(num);
        }
        let mut den = self.den.clone();
        for (f, m) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some(e) => e.1 += m,
                None => den.push((f.clone(), *m)),
            }
        }
        FRat { num, den }
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for FRat {
            type Output = FRat;
            fn $m(self, o: FRat) -> FRat {
                (&self).$m(&o)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl Neg for FRat {
    type Output = FRat;
    fn neg(self) -> FRat {
        -&self
    }
}

impl Zero for FRat {
    fn zero() -> Self {
        FRat::from_poly(Poly::zero(0))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for FRat {
    fn one() -> Self {
        FRat::from_poly(Poly::one(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn x(i: usize) -> Poly {
        Poly::var(i, 3)
    }

    #[test]
    fn lcm_addition_keeps_factors_once() {
        let f1 = &x(0) + &Poly::constant(q(1), 3);
        let f2 = &x(1) + &Poly::constant(q(1), 3);
        let a = FRat::new(Poly::one(3), vec![(f1.clone(), 1)]).unwrap();
        let b = FRat::new(Poly::one(3), vec![(f1.clone(), 1), (f2.clone(), 1)]).unwrap();
        let s = &a + &b;
        assert_eq!(s.factors().len(), 2);
        assert_eq!(s.to_ratfunc(), &a.to_ratfunc() + &b.to_ratfunc());
        assert!(s.den_is_swap_symmetric(0, 1));
        assert!(!a.den_is_swap_symmetric(0, 1));
        let sym = a.symmetrize_den(0, 1);
        assert!(sym.den_is_swap_symmetric(0, 1));
        assert_eq!(sym, a);
    }

    #[test]
    fn scalar_multiples_of_factors_merge() {
        let f = &x(0).scale(&q(2)) + &x(2);
        let a = FRat::new(Poly::one(3), vec![(f.clone(), 1)]).unwrap();
        let b = FRat::new(Poly::one(3), vec![(f.scale(&q(-3)), 1)]).unwrap();
        let s = &a + &b;
        assert_eq!(s.factors().len(), 1);
        assert_eq!(s.eval(&[q(1), q(0), q(1)]).unwrap(), q(1) / q(3) - q(1) / q(9));
    }

    #[test]
    fn cancellation_and_substitution() {
        let f = &x(0) - &x(1);
        let a = FRat::new(&f * &x(2), vec![(f.clone(), 2)]).unwrap().cancel();
        assert_eq!(a.factors()[0].1, 1);
        assert!(a.subst_poly(0, &x(1)).is_err());
        assert_eq!(a.subst(2, &q(0)).unwrap().num().is_zero(), true);
    }
}
