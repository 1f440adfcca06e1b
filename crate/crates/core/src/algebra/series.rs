//! Power series truncated in `q` (or `q1, q2`), optionally also in `z`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Multi-degree key: `(d1, d2, z)`. Single-`q` series keep `d2 = 0`.
pub type Key = (u32, u32, u32);

#[derive(Clone, PartialEq)]
pub struct QSeries<C> {
    two_q: bool,
    qdeg: u32,
    zdeg: Option<u32>,
    coeffs: BTreeMap<Key, C>,
}

impl<C: Ring> QSeries<C> {
    /// Series in one `q`, truncated after total degree `qdeg`.
    pub fn new(qdeg: u32) -> Self {
        QSeries { two_q: false, qdeg, zdeg: None, coeffs: BTreeMap::new() }
    }

    /// Series in `q1, q2`, truncated after total degree `qdeg`.
    pub fn new_two(qdeg: u32) -> Self {
        QSeries { two_q: true, qdeg, zdeg: None, coeffs: BTreeMap::new() }
    }

    pub fn with_z(mut self, zdeg: u32) -> Self {
        self.zdeg = Some(zdeg);
        self
    }

    pub fn constant(c: C, qdeg: u32) -> Self {
        let mut s = Self::new(qdeg);
        s.set((0, 0, 0), c);
        s
    }

    pub fn is_two_q(&self) -> bool {
        self.two_q
    }

    pub fn qdeg(&self) -> u32 {
        self.qdeg
    }

    pub fn zdeg(&self) -> Option<u32> {
        self.zdeg
    }

    fn same_shape(&self) -> Self {
        QSeries { two_q: self.two_q, qdeg: self.qdeg, zdeg: self.zdeg, coeffs: BTreeMap::new() }
    }

    pub fn in_range(&self, k: Key) -> bool {
        k.0 + k.1 <= self.qdeg
            && (self.two_q || k.1 == 0)
            && match self.zdeg {
                Some(z) => k.2 <= z,
                None => k.2 == 0,
            }
    }

    /// Store a coefficient; out-of-range keys are dropped.
    pub fn set(&mut self, k: Key, c: C) {
        if !self.in_range(k) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn add_at(&mut self, k: Key, c: &C) {
        if !self.in_range(k) || c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
    }

    pub fn get(&self, k: Key) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `q^d` in a single-`q` series without `z`.
    pub fn at(&self, d: u32) -> C {
        self.get((d, 0, 0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.two_q |= o.two_q;
        out.qdeg = self.qdeg.min(o.qdeg);
        out.coeffs.retain(|k, _| k.0 + k.1 <= out.qdeg);
        for (k, c) in &o.coeffs {
            out.add_at(*k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul_ref(s))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = self.same_shape();
        for (k, c) in &self.coeffs {
            out.set(*k, f(c));
        }
        out
    }

    pub fn map_into<D: Ring>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        let mut out =
            QSeries { two_q: self.two_q, qdeg: self.qdeg, zdeg: self.zdeg, coeffs: BTreeMap::new() };
        for (k, c) in &self.coeffs {
            out.set(*k, f(c));
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.same_shape();
        out.qdeg = self.qdeg.min(o.qdeg);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &o.coeffs {
                let k = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
                if out.in_range(k) {
                    out.add_at(k, &ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// `(q1 d/dq1 - q2 d/dq2)`.
    pub fn q_euler_difference(&self) -> Self {
        let mut out = self.same_shape();
        for (k, c) in &self.coeffs {
            let f = i64::from(k.0) - i64::from(k.1);
            out.set(*k, c.mul_ref(&int_in::<C>(f)));
        }
        out
    }

    /// `q1 = q2 = -q`: collapse to a single-`q` series.
    pub fn specialize_minus_q(&self) -> Self {
        let mut out = self.same_shape();
        out.two_q = false;
        for (k, c) in &self.coeffs {
            let d = k.0 + k.1;
            let v = if d % 2 == 1 { c.neg_ref() } else { c.clone() };
            out.add_at((d, 0, k.2), &v);
        }
        out
    }

    /// Swap `q1` and `q2`.
    pub fn swap_q(&self) -> Self {
        let mut out = self.same_shape();
        for (k, c) in &self.coeffs {
            out.set((k.1, k.0, k.2), c.clone());
        }
        out
    }

    pub fn truncate(&self, qdeg: u32) -> Self {
        let mut out = self.same_shape();
        out.qdeg = qdeg.min(self.qdeg);
        for (k, c) in &self.coeffs {
            out.set(*k, c.clone());
        }
        out
    }
}

/// Small integer as an element of any ring.
pub fn int_in<C: Ring>(v: i64) -> C {
    let mut acc = C::zero();
    let one = C::one();
    for _ in 0..v.unsigned_abs() {
        acc = acc.add_ref(&one);
    }
    if v < 0 {
        acc.neg_ref()
    } else {
        acc
    }
}

impl<C: Field> QSeries<C> {
    /// Multiplicative inverse of a single-`q` series with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.two_q || self.zdeg.is_some() {
            return Err(Error::Invalid("inverse only for single-q series".into()));
        }
        let c0 = self.at(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = c0.inv();
        let mut out = self.same_shape();
        out.set((0, 0, 0), inv0.clone());
        for d in 1..=self.qdeg {
            let mut s = C::zero();
            for e in 1..=d {
                s = s.add_ref(&self.at(e).mul_ref(&out.at(d - e)));
            }
            out.set((d, 0, 0), s.neg_ref().mul_ref(&inv0));
        }
        Ok(out)
    }
}

impl<C: Ring> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()?;
        write!(f, " + O(q^{})", self.qdeg + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};

    #[test]
    fn inverse_of_one_minus_q() {
        let mut s: QSeries<Q> = QSeries::new(4);
        s.set((0, 0, 0), q(1));
        s.set((1, 0, 0), q(-1));
        let inv = s.inverse().unwrap();
        for d in 0..=4 {
            assert_eq!(inv.at(d), q(1));
        }
        assert_eq!(s.mul(&inv), QSeries::constant(q(1), 4));
    }

    #[test]
    fn minus_q_specialization_and_euler_difference() {
        let mut s: QSeries<Q> = QSeries::new_two(3);
        s.set((1, 0, 0), q(2));
        s.set((0, 1, 0), q(5));
        s.set((2, 1, 0), q(1));
        let e = s.q_euler_difference();
        assert_eq!(e.get((1, 0, 0)), q(2));
        assert_eq!(e.get((0, 1, 0)), q(-5));
        assert_eq!(e.get((2, 1, 0)), q(1));
        let m = s.specialize_minus_q();
        assert_eq!(m.at(1), q(-7));
        assert_eq!(m.at(3), q(-1));
        assert_eq!(s.swap_q().get((1, 0, 0)), q(5));
    }
}
