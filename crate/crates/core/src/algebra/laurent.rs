//! Laurent series in `h^-1` with finite principal part, truncated below.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// `sum_e c_e h^e`, exact for every exponent `e >= valid_from`.
///
/// With the depth convention `p` ("drop `h^-p` and lower"), `valid_from = 1 - p`.
#[derive(Clone, PartialEq)]
pub struct Laurent<F> {
    terms: BTreeMap<i64, F>,
    valid_from: i64,
}

impl<F: Ring> Laurent<F> {
    pub fn zero(depth: i64) -> Self {
        Laurent { terms: BTreeMap::new(), valid_from: 1 - depth }
    }

    pub fn monomial(c: F, e: i64, depth: i64) -> Self {
        let mut l = Self::zero(depth);
        if e >= l.valid_from && !c.is_zero() {
            l.terms.insert(e, c);
        }
        l
    }

    pub fn from_poly(p: &UniPoly<F>, depth: i64) -> Self {
        let mut l = Self::zero(depth);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                l.terms.insert(k as i64, c.clone());
            }
        }
        l
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, F)>, depth: i64) -> Self {
        let mut l = Self::zero(depth);
        for (e, c) in it {
            l.add_term(e, c);
        }
        l
    }

    fn add_term(&mut self, e: i64, c: F) {
        if e < self.valid_from || c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    /// Depth `p`: everything from `h^(1-p)` upward is exact.
    pub fn depth(&self) -> i64 {
        1 - self.valid_from
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &F)> {
        self.terms.iter()
    }

    /// Coefficient of `h^e`; an error below the valid range.
    pub fn coeff(&self, e: i64) -> Result<F> {
        if e < self.valid_from {
            return Err(Error::DepthExceeded { needed: 1 - e, available: self.depth() });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(F::zero))
    }

    pub fn truncate(&self, depth: i64) -> Self {
        let vf = (1 - depth).max(self.valid_from);
        Laurent {
            terms: self.terms.range(vf..).map(|(e, c)| (*e, c.clone())).collect(),
            valid_from: vf,
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.mul_ref(s))), self.depth())
    }

    /// Multiply by `h^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            valid_from: self.valid_from + k,
        }
    }

    /// Substitute `h -> -h`.
    pub fn negate_var(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e.rem_euclid(2) == 1 { c.neg_ref() } else { c.clone() }))
                .collect(),
            valid_from: self.valid_from,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let vf = self.valid_from.max(o.valid_from);
        let mut out = Laurent { terms: BTreeMap::new(), valid_from: vf };
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
            valid_from: self.valid_from,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    // Unknown tails sit strictly below `valid_from`, so a zero series still
    // carries an effective top of `valid_from - 1`.
    fn effective_top(&self) -> i64 {
        self.top().unwrap_or(i64::MIN / 4).max(self.valid_from - 1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let vf = (self.valid_from + o.effective_top()).max(o.valid_from + self.effective_top());
        let mut out = Laurent { terms: BTreeMap::new(), valid_from: vf };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                if ea + eb >= vf {
                    out.add_term(ea + eb, ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// True when no negative powers of `h` survive in the valid range.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&e| e >= 0)
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Laurent<G> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), self.depth())
    }
}

impl<F: Field> Laurent<F> {
    /// Expansion of `num/den` at `h = infinity`.
    pub fn from_rational(num: &UniPoly<F>, den: &UniPoly<F>, depth: i64) -> Result<Self> {
        let dd = den.degree().ok_or(Error::DivisionByZero)? as i64;
        let Some(dn) = num.degree() else {
            return Ok(Self::zero(depth));
        };
        let dn = dn as i64;
        let top = dn - dd;
        // In w = 1/h: num/den = w^(dd-dn) * rev(num)(w) / rev(den)(w).
        let count = top + depth;
        if count <= 0 {
            return Ok(Self::zero(depth));
        }
        let rn: Vec<F> = num.coeffs().iter().rev().cloned().collect();
        let rd: UniPoly<F> = UniPoly::from_coeffs(den.coeffs().iter().rev().cloned().collect());
        let inv = rd.series_inverse(count as usize).ok_or(Error::DivisionByZero)?;
        let prod = &UniPoly::from_coeffs(rn) * &inv;
        let terms = (0..count).map(|k| (top - k, prod.coeff(k as usize)));
        Ok(Self::from_terms(terms, depth))
    }

    /// Inverse when the leading coefficient is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let top = self.top().ok_or(Error::DivisionByZero)?;
        let lead = self.terms[&top].clone();
        // Relative precision of self is top - valid_from; the inverse keeps it.
        let rel = top - self.valid_from;
        let inv_top = -top;
        let vf = inv_top - rel;
        let n = (rel + 1) as usize;
        let a: Vec<F> = (0..n).map(|k| self.terms.get(&(top - k as i64)).cloned().unwrap_or_else(F::zero)).collect();
        let s = UniPoly::from_coeffs(a).series_inverse(n).ok_or(Error::DivisionByZero)?;
        debug_assert!(!lead.is_zero());
        let mut out = Laurent { terms: BTreeMap::new(), valid_from: vf };
        for k in 0..n {
            out.add_term(inv_top - k as i64, s.coeff(k));
        }
        Ok(out)
    }
}

impl<F: Ring> fmt::Debug for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent(")?;
        f.debug_map().entries(self.terms.iter().rev()).finish()?;
        write!(f, " + O(h^{}))", self.valid_from - 1)
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
    fn geometric_expansions() {
        // h/(h-1) = 1 + h^-1 + h^-2 + ...
        let l = Laurent::from_rational(&p(&[0, 1]), &p(&[-1, 1]), 3).unwrap();
        assert_eq!(l, Laurent::from_terms([(0, q(1)), (-1, q(1)), (-2, q(1))], 3));
        // h^2/(h-1) = h + 1 + h^-1 + ...
        let l = Laurent::from_rational(&p(&[0, 0, 1]), &p(&[-1, 1]), 2).unwrap();
        assert_eq!(l, Laurent::from_terms([(1, q(1)), (0, q(1)), (-1, q(1))], 2));
        assert!(l.coeff(-2).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Laurent::from_rational(&p(&[1, 2, 3]), &p(&[5, 0, 0, 1]), 6).unwrap();
        let b = a.inverse().unwrap();
        let one = a.mul(&b);
        assert_eq!(one.coeff(0).unwrap(), q(1));
        for e in one.valid_from()..0 {
            assert_eq!(one.coeff(e).unwrap(), q(0));
        }
    }

    #[test]
    fn negation_of_variable() {
        let l = Laurent::from_terms([(1, q(2)), (0, q(1)), (-1, qr(1, 3))], 2);
        let m = l.negate_var();
        assert_eq!(m.coeff(1).unwrap(), q(-2));
        assert_eq!(m.coeff(-1).unwrap(), qr(-1, 3));
        assert_eq!(m.coeff(0).unwrap(), q(1));
    }
}
