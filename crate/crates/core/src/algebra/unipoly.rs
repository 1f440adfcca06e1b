//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, Ring};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<F> {
    c: Vec<F>,
}

impl<F: Ring> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(v: F) -> Self {
        Self::from_coeffs(vec![v])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `t - r`.
    pub fn linear(r: &F) -> Self {
        Self::from_coeffs(vec![r.neg_ref(), F::one()])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> F {
        self.c.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for v in self.c.iter().rev() {
            acc = acc.mul_ref(x).add_ref(v);
        }
        acc
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| v.mul_ref(s)).collect())
    }

    /// `p(-t)`.
    pub fn negate_var(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, v)| if k % 2 == 1 { v.neg_ref() } else { v.clone() })
            .collect();
        Self::from_coeffs(c)
    }

    /// `p(t + s)`.
    pub fn shift(&self, s: &F) -> Self {
        // Horner in the shifted basis.
        let lin = Self::from_coeffs(vec![s.clone(), F::one()]);
        let mut acc = Self::zero();
        for v in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(v.clone());
        }
        acc
    }

    /// `p * (t - r)`.
    pub fn mul_linear(&self, r: &F) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + 1];
        for (k, v) in self.c.iter().enumerate() {
            c[k + 1] = c[k + 1].add_ref(v);
            c[k] = c[k].sub_ref(&v.mul_ref(r));
        }
        Self::from_coeffs(c)
    }

    /// `t^k * p`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Truncate to terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.c.iter().take(k).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, v)| v.mul_ref(&scalar_int::<F>(k)))
            .collect();
        Self::from_coeffs(c)
    }
}

fn scalar_int<F: Ring>(k: usize) -> F {
    let mut acc = F::zero();
    for _ in 0..k {
        acc = acc.add_ref(&F::one());
    }
    acc
}

impl<F: Field> UniPoly<F> {
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].mul_ref(&inv);
            if !coef.is_zero() {
                for (i, dv) in d.c.iter().enumerate() {
                    r[k + i] = r[k + i].sub_ref(&coef.mul_ref(dv));
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Synthetic division by `t - r`: returns `(quotient, p(r))`.
    pub fn div_linear(&self, r: &F) -> (Self, F) {
        if self.is_zero() {
            return (Self::zero(), F::zero());
        }
        let n = self.c.len();
        let mut q = vec![F::zero(); n - 1];
        let mut acc = F::zero();
        for k in (0..n).rev() {
            acc = acc.mul_ref(r).add_ref(&self.c[k]);
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Self::from_coeffs(q), acc)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().inv())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = &s0 - &(&qt * &s1);
            let t = &t0 - &(&qt * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Power-series inverse modulo `t^k`; requires a nonzero constant term.
    pub fn series_inverse(&self, k: usize) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.inv();
        let mut out: Vec<F> = Vec::with_capacity(k);
        for m in 0..k {
            if m == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut s = F::zero();
            for i in 1..=m.min(self.c.len().saturating_sub(1)) {
                s = s.add_ref(&self.c[i].mul_ref(&out[m - i]));
            }
            out.push(s.neg_ref().mul_ref(&inv0));
        }
        Some(Self::from_coeffs(out))
    }
}

impl<F: Ring> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.c)
    }
}

impl<F: Ring> Add for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, o: &UniPoly<F>) -> UniPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k).add_ref(&o.coeff(k))).collect();
        UniPoly::from_coeffs(c)
    }
}

impl<F: Ring> Sub for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, o: &UniPoly<F>) -> UniPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k).sub_ref(&o.coeff(k))).collect();
        UniPoly::from_coeffs(c)
    }
}

impl<F: Ring> Mul for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, o: &UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UniPoly::from_coeffs(c)
    }
}

impl<F: Ring> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly { c: self.c.iter().map(|v| v.neg_ref()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    fn p(v: &[i64]) -> UniPoly<Q> {
        UniPoly::from_coeffs(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[-1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert_eq!(r, UniPoly::constant(a.eval(&q(1))));
        let (q2, v) = a.div_linear(&q(1));
        assert_eq!(q2, qq);
        assert_eq!(v, q(10));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = &p(&[-1, 1]) * &p(&[2, 1]);
        let g = &p(&[-1, 1]) * &p(&[3, 0, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
    }

    #[test]
    fn shift_and_negate() {
        let a = p(&[0, 0, 1]);
        assert_eq!(a.shift(&q(1)), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1, 1]).negate_var(), p(&[1, -1, 1]));
        assert_eq!(p(&[1, 2]).mul_linear(&q(3)), p(&[-3, -5, 2]));
    }

    #[test]
    fn bezout_coefficients() {
        let a = &p(&[-1, 1]) * &p(&[1, 0, 1]);
        let b = p(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn geometric_series_inverse() {
        let inv = p(&[1, -1]).series_inverse(4).unwrap();
        assert_eq!(inv, p(&[1, 1, 1, 1]));
        assert!(p(&[0, 1]).series_inverse(3).is_none());
    }
}
