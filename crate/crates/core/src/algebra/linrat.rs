//! Univariate rational functions whose denominators split into known linear factors.
//!
//! Every series restricted to a torus fixed point lands here: a polynomial in `h`
//! over `prod (h - r)^m` with the roots carried explicitly.

use std::fmt;

use crate::algebra::laurent::Laurent;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone)]
pub struct LinRat<F> {
    num: UniPoly<F>,
    poles: Vec<(F, u32)>,
}

impl<F: Field> LinRat<F> {
    pub fn zero() -> Self {
        LinRat { num: UniPoly::zero(), poles: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly<F>) -> Self {
        LinRat { num: p, poles: Vec::new() }
    }

    /// `num / prod (h - r)^m`, normalized.
    pub fn new(num: UniPoly<F>, poles: Vec<(F, u32)>) -> Self {
        let mut merged: Vec<(F, u32)> = Vec::new();
        for (r, m) in poles {
            if m == 0 {
                continue;
            }
            match merged.iter_mut().find(|(s, _)| *s == r) {
                Some(e) => e.1 += m,
                None => merged.push((r, m)),
            }
        }
        let mut out = LinRat { num, poles: merged };
        out.normalize();
        out
    }

    /// `c / (h - r)`.
    pub fn simple_pole(c: F, r: F) -> Self {
        Self::new(UniPoly::constant(c), vec![(r, 1)])
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.poles.clear();
            return;
        }
        for (r, m) in self.poles.iter_mut() {
            while *m > 0 {
                let (quo, rem) = self.num.div_linear(r);
                if !rem.is_zero() {
                    break;
                }
                self.num = quo;
                *m -= 1;
            }
        }
        self.poles.retain(|(_, m)| *m > 0);
    }

    pub fn numerator(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn poles(&self) -> &[(F, u32)] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn denominator(&self) -> UniPoly<F> {
        let mut d = UniPoly::one();
        for (r, m) in &self.poles {
            for _ in 0..*m {
                d = d.mul_linear(r);
            }
        }
        d
    }

    fn pole_mult(&self, r: &F) -> u32 {
        self.poles.iter().find(|(s, _)| s == r).map_or(0, |(_, m)| *m)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut poles = self.poles.clone();
        for (r, m) in &o.poles {
            match poles.iter_mut().find(|(s, _)| s == r) {
                Some(e) => e.1 = e.1.max(*m),
                None => poles.push((r.clone(), *m)),
            }
        }
        let lift = |x: &Self| {
            let mut n = x.num.clone();
            for (r, m) in &poles {
                for _ in x.pole_mult(r)..*m {
                    n = n.mul_linear(r);
                }
            }
            n
        };
        let num = &lift(self) + &lift(o);
        let mut out = LinRat { num, poles };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        LinRat { num: -&self.num, poles: self.poles.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut poles = self.poles.clone();
        poles.extend(o.poles.iter().cloned());
        Self::new(&self.num * &o.num, poles)
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LinRat { num: self.num.scale(s), poles: self.poles.clone() }
    }

    pub fn mul_poly(&self, p: &UniPoly<F>) -> Self {
        Self::new(&self.num * p, self.poles.clone())
    }

    /// Divide by `(h - r)`.
    pub fn div_linear(&self, r: &F) -> Self {
        let mut poles = self.poles.clone();
        poles.push((r.clone(), 1));
        Self::new(self.num.clone(), poles)
    }

    /// Value at `h = c`; an error if `c` is a pole.
    pub fn eval(&self, c: &F) -> Result<F> {
        let mut den = F::one();
        for (r, m) in &self.poles {
            let f = c.sub_ref(r);
            if f.is_zero() {
                return Err(Error::Pole(format!("{c:?}")));
            }
            for _ in 0..*m {
                den = den.mul_ref(&f);
            }
        }
        Ok(self.num.eval(c).div_ref(&den))
    }

    /// Substitute `h -> -h`.
    pub fn negate_var(&self) -> Self {
        let total: u32 = self.poles.iter().map(|(_, m)| *m).sum();
        let mut num = self.num.negate_var();
        if total % 2 == 1 {
            num = -&num;
        }
        LinRat { num, poles: self.poles.iter().map(|(r, m)| (r.neg_ref(), *m)).collect() }
    }

    /// True when the only possible pole is at `h = 0`.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.poles.iter().all(|(r, _)| r.is_zero())
    }

    /// True when there is no pole at all.
    pub fn is_polynomial(&self) -> bool {
        self.poles.is_empty()
    }

    /// Poles other than `h = 0`.
    pub fn nonzero_poles(&self) -> Vec<(F, u32)> {
        self.poles.iter().filter(|(r, _)| !r.is_zero()).cloned().collect()
    }

    pub fn to_laurent(&self, depth: i64) -> Result<Laurent<F>> {
        Laurent::from_rational(&self.num, &self.denominator(), depth)
    }

    /// Exact equality of values.
    pub fn same_value(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl<F: Field> fmt::Debug for LinRat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / {:?}", self.num, self.poles)
    }
}

impl<F: Field> PartialEq for LinRat<F> {
    fn eq(&self, o: &Self) -> bool {
        self.same_value(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr, Q};

    fn p(v: &[i64]) -> UniPoly<Q> {
        UniPoly::from_coeffs(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn partial_fraction_sum_combines() {
        // 1/(h-1) + 1/(h+1) = 2h/(h^2-1)
        let a = LinRat::simple_pole(q(1), q(1));
        let b = LinRat::simple_pole(q(1), q(-1));
        let s = a.add(&b);
        assert_eq!(s.numerator(), &p(&[0, 2]));
        assert_eq!(s.denominator(), p(&[-1, 0, 1]));
    }

    #[test]
    fn cancellation_removes_poles() {
        let a = LinRat::new(p(&[-2, 1]), vec![(q(2), 2), (q(0), 1)]);
        assert_eq!(a.poles().len(), 2);
        assert_eq!(a.pole_mult(&q(2)), 1);
        let b = a.mul_poly(&p(&[-2, 1]));
        assert_eq!(b.nonzero_poles(), vec![]);
        assert!(b.is_laurent_polynomial());
        assert!(!b.is_polynomial());
    }

    #[test]
    fn evaluation_and_negation() {
        let a = LinRat::new(p(&[1, 1]), vec![(q(3), 1)]);
        assert_eq!(a.eval(&q(1)).unwrap(), q(-1));
        assert!(a.eval(&q(3)).is_err());
        let b = a.negate_var();
        assert_eq!(b.eval(&q(-1)).unwrap(), q(-1));
        assert_eq!(b.eval(&q(2)).unwrap(), qr(1, 5));
    }

    #[test]
    fn laurent_expansion_matches_geometric_oracle() {
        // (ai - ak)/(h - (ak - aj)/d) with ai=1, ak=5, aj=2, d=2: pole at 3/2
        let f = LinRat::simple_pole(q(-4), qr(3, 2));
        let l = f.to_laurent(3).unwrap();
        assert_eq!(l.coeff(-1).unwrap(), q(-4));
        assert_eq!(l.coeff(-2).unwrap(), q(-6));
        assert_eq!(l.coeff(0).unwrap(), q(0));
    }
}
