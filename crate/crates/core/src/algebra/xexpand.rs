//! Expansion of rational functions in `x1, x2` about `x = 0` with coefficients
//! that are Laurent series in `h^-1`.

use std::collections::BTreeMap;

use crate::algebra::laurent::Laurent;
use crate::algebra::poly::{Monomial, H, X1, X2};
use crate::algebra::ratfunc::{Poly, RatFunc};
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Q;

/// `x1^a x2^b` exponent pair.
pub type XMono = (u32, u32);

pub type XSeries = BTreeMap<XMono, Laurent<Q>>;

/// Split a polynomial in `(x1, x2, h)` into `x`-monomial -> polynomial in `h`.
pub fn split_by_x(p: &Poly) -> Result<BTreeMap<XMono, UniPoly<Q>>> {
    let mut acc: BTreeMap<XMono, Vec<Q>> = BTreeMap::new();
    for (m, c) in p.terms() {
        if (0..crate::algebra::poly::MAX_VARS).any(|v| v > H && m.exp(v) != 0) {
            return Err(Error::Invalid("x-expansion needs a polynomial in x1, x2, h only".into()));
        }
        let e = m.exp(H) as usize;
        let v = acc.entry((m.exp(X1), m.exp(X2))).or_default();
        if v.len() <= e {
            v.resize(e + 1, Q::from_integer(0.into()));
        }
        v[e] = &v[e] + c;
    }
    Ok(acc.into_iter().map(|(k, v)| (k, UniPoly::from_coeffs(v))).collect())
}

fn monos_up_to(m: u32) -> Vec<XMono> {
    let mut out = Vec::new();
    for t in 0..=m {
        for a in (0..=t).rev() {
            out.push((a, t - a));
        }
    }
    out
}

/// Coefficients of every `x`-monomial of total degree `<= max_x_degree`,
/// each exact through `h^(1-depth)`.
pub fn expand_series_in_x(f: &RatFunc, max_x_degree: u32, depth: i64) -> Result<XSeries> {
    let num = split_by_x(f.num())?;
    let den = split_by_x(f.den())?;
    let d0 = den.get(&(0, 0)).cloned().unwrap_or_else(UniPoly::zero);
    if d0.is_zero() {
        return Err(Error::Pole("denominator vanishes at x = 0".into()));
    }
    let hdeg = |m: &BTreeMap<XMono, UniPoly<Q>>| {
        m.values().filter_map(UniPoly::degree).max().unwrap_or(0) as i64
    };
    // Products below lose at most the positive h-degree of each factor.
    let slack = hdeg(&num) + hdeg(&den) * i64::from(max_x_degree + 1) + 2;
    let inner = depth + slack;
    let inv0 = Laurent::from_rational(&UniPoly::one(), &d0, inner)?;
    let dl: BTreeMap<XMono, Laurent<Q>> = den
        .iter()
        .filter(|(k, _)| k.0 + k.1 <= max_x_degree)
        .map(|(k, p)| (*k, Laurent::from_poly(p, inner)))
        .collect();
    let monos = monos_up_to(max_x_degree);
    let mut inv: XSeries = BTreeMap::new();
    for &r in &monos {
        if r == (0, 0) {
            inv.insert(r, inv0.clone());
            continue;
        }
        let mut s = Laurent::zero(inner);
        for (k, dk) in &dl {
            if *k == (0, 0) || k.0 > r.0 || k.1 > r.1 {
                continue;
            }
            if let Some(ir) = inv.get(&(r.0 - k.0, r.1 - k.1)) {
                s = s.add(&dk.mul(ir));
            }
        }
        inv.insert(r, s.mul(&inv0).neg());
    }
    let mut out: XSeries = BTreeMap::new();
    for &r in &monos {
        let mut s = Laurent::zero(inner);
        for (k, nk) in &num {
            if k.0 > r.0 || k.1 > r.1 {
                continue;
            }
            let ir = &inv[&(r.0 - k.0, r.1 - k.1)];
            s = s.add(&Laurent::from_poly(nk, inner).mul(ir));
        }
        if s.depth() < depth {
            return Err(Error::DepthExceeded { needed: depth, available: s.depth() });
        }
        let s = s.truncate(depth);
        if !s.is_zero() {
            out.insert(r, s);
        }
    }
    Ok(out)
}

/// Rebuild the truncated expansion as a polynomial in `(x1, x2, h, h^-1)`,
/// returned as a rational function with denominator `h^depth`.
pub fn resum(series: &XSeries, depth: i64) -> Result<RatFunc> {
    let mut p = Poly::zero(3);
    for (&(a, b), l) in series {
        for (e, c) in l.terms() {
            let shifted = e + depth;
            if shifted < 0 {
                continue;
            }
            p.add_term(Monomial::from_exps(&[a, b, shifted as u32]), c.clone());
        }
    }
    RatFunc::new(p, Poly::var(H, 3).pow(depth.max(0) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn v(i: usize) -> Poly {
        Poly::var(i, 3)
    }

    #[test]
    fn geometric_series_in_x() {
        // 1/((x1+h)^2 - x1^2) = h^-2 (1 - 2 x1 h^-1 + 4 x1^2 h^-2 - ...)
        let d = &(&v(X1) + &v(H)).pow(2) - &v(X1).pow(2);
        let f = RatFunc::new(Poly::one(3), d).unwrap();
        let s = expand_series_in_x(&f, 2, 6).unwrap();
        assert_eq!(s[&(0, 0)].coeff(-2).unwrap(), q(1));
        assert_eq!(s[&(0, 0)].coeff(-3).unwrap(), q(0));
        assert_eq!(s[&(1, 0)].coeff(-3).unwrap(), q(-2));
        assert_eq!(s[&(2, 0)].coeff(-4).unwrap(), q(4));
        assert!(!s.contains_key(&(0, 1)));
    }

    #[test]
    fn unit_expands_to_itself() {
        let s = expand_series_in_x(&RatFunc::from_poly(Poly::one(3)), 3, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[&(0, 0)], Laurent::monomial(q(1), 0, 2));
    }

    #[test]
    fn pole_at_origin_is_rejected() {
        let f = RatFunc::new(Poly::one(3), v(X1)).unwrap();
        assert!(expand_series_in_x(&f, 1, 2).is_err());
    }
}
