//! Sparse multivariate polynomials with graded-lexicographic term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{q_str, Field, Ring, Q};

/// Maximum number of variables in one polynomial ring.
pub const MAX_VARS: usize = 12;

/// Exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { e: [0; MAX_VARS] }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x).expect("exponent overflow");
        }
        Monomial { e }
    }

    pub fn var(i: usize, k: u32) -> Self {
        let mut m = Self::one();
        m.e[i] = u16::try_from(k).expect("exponent overflow");
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        u32::from(self.e[i])
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| u32::from(x)).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { e }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial { e })
    }

    pub fn with_exp(&self, i: usize, k: u32) -> Self {
        let mut m = *self;
        m.e[i] = u16::try_from(k).expect("exponent overflow");
        m
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }
}

impl Ord for Monomial {
    // Total degree first, then the highest-indexed variable is most significant.
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.e.iter().rev().cmp(o.e.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// Variable names for printing. The standard ring is `x1, x2, h, z, a1..an`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const H: usize = 2;
pub const Z: usize = 3;

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        assert!(names.len() <= MAX_VARS);
        Vars { names: names.iter().map(|s| s.to_string()).collect() }
    }

    /// `x1, x2, h`.
    pub fn xh() -> Self {
        Self::new(&["x1", "x2", "h"])
    }

    /// `x1, x2, h, z, a1, ..., an`.
    pub fn standard(n: usize) -> Self {
        let mut names: Vec<String> = ["x1", "x2", "h", "z"].iter().map(|s| s.to_string()).collect();
        names.extend((1..=n).map(|i| format!("a{i}")));
        assert!(names.len() <= MAX_VARS, "too many weights for the standard ring");
        Vars { names }
    }

    /// Index of the weight variable `a_m` (1-based `m`) in the standard ring.
    pub fn alpha(m: usize) -> usize {
        3 + m
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

#[derive(Clone)]
pub struct SparsePoly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Ring> SparsePoly<F> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(F::one(), nvars)
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars);
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(i, 1), F::one());
        p
    }

    pub fn term(m: Monomial, c: F, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Largest term under the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (*m, v.mul_ref(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SparsePoly { nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.mul(mono), v.mul_ref(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SparsePoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at a full point.
    pub fn eval(&self, pt: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            debug_assert!((pt.len()..MAX_VARS).all(|i| m.exp(i) == 0), "point too short");
            let mut t = c.clone();
            for (i, x) in pt.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitute the constant `val` for variable `v`; the arity is kept.
    pub fn subst(&self, v: usize, val: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.exp(v) {
                t = t.mul_ref(val);
            }
            out.add_term(m.with_exp(v, 0), t);
        }
        out
    }

    /// Substitute a polynomial for variable `v`.
    pub fn subst_poly(&self, v: usize, val: &Self) -> Self {
        let by_power = self.collect_var(v);
        let mut out = Self::zero(self.nvars);
        let mut pw = Self::one(self.nvars);
        let mut cur = 0;
        for (k, c) in by_power {
            while cur < k {
                pw = &pw * val;
                cur += 1;
            }
            out = &out + &(&c * &pw);
        }
        out
    }

    /// Group by powers of variable `v`: `self = sum_k v^k * c_k`.
    pub fn collect_var(&self, v: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(v))
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Permute variables: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.exp(i);
            }
            (Monomial::from_exps(&e), c.clone())
        });
        Self::from_terms(self.nvars, terms)
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let nv = self.nvars.max(a.max(b) + 1);
        let mut perm: Vec<usize> = (0..nv).collect();
        perm.swap(a, b);
        self.extend_vars(nv).permute(&perm)
    }

    /// Embed into a ring with more variables (new ones appended).
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        SparsePoly { nvars, terms: self.terms.clone() }
    }

    pub fn map_coeffs<G: Ring>(&self, f: impl Fn(&F) -> G) -> SparsePoly<G> {
        SparsePoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Homogeneous component of total degree `k` in the variables `vs`.
    pub fn part_of_degree(&self, vs: &[usize], k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vs.iter().map(|&v| m.exp(v)).sum::<u32>() == k)
            .map(|(m, c)| (*m, c.clone()));
        Self::from_terms(self.nvars, terms)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }
}

impl<F: Field> SparsePoly<F> {
    /// Multivariate division returning `(quotient, remainder)` with respect to
    /// the leading term of `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (lm, lc) = d.leading().expect("division by zero polynomial");
        let (lm, lc) = (*lm, lc.clone());
        let mut quo = Self::zero(self.nvars);
        let mut rem = Self::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = c.div_ref(&lc);
                    p = &p - &d.mul_monomial(&qm, &qc);
                    quo.add_term(qm, qc);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        (quo, rem)
    }

    /// `self / d` if the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut quo = Self::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c.div_ref(&lc);
            p = &p - &d.mul_monomial(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }
}

impl SparsePoly<Q> {
    /// Canonical string: terms in descending order, `var^exp` joined by `*`.
    /// Non-integral coefficients are cleared into a `(num)/(den)` form.
    pub fn to_canonical(&self, vars: &Vars) -> String {
        let l = crate::scalar::denom_lcm(self.terms.values());
        if l == num_bigint::BigInt::one() {
            self.int_string(vars)
        } else {
            let scaled = self.scale(&Q::from_integer(l.clone()));
            format!("({})/({})", scaled.int_string(vars), l)
        }
    }

    fn int_string(&self, vars: &Vars) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mono = mono_string(m, self.nvars, vars);
            if mono.is_empty() {
                out.push_str(&q_str(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&q_str(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn mono_string(m: &Monomial, nvars: usize, vars: &Vars) -> String {
    let mut parts = Vec::new();
    for i in (0..nvars).rev() {
        let e = m.exp(i);
        if e == 1 {
            parts.push(vars.name(i).to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    parts.join("*")
}

// Arity is bookkeeping for printing and evaluation; values compare by terms.
impl<F: Ring> PartialEq for SparsePoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<F: Ring> fmt::Debug for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

impl<F: Ring> Add for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn add(self, o: &SparsePoly<F>) -> SparsePoly<F> {
        let mut out = self.clone();
        out.nvars = self.nvars.max(o.nvars);
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<F: Ring> Sub for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn sub(self, o: &SparsePoly<F>) -> SparsePoly<F> {
        let mut out = self.clone();
        out.nvars = self.nvars.max(o.nvars);
        for (m, c) in &o.terms {
            out.add_term(*m, c.neg_ref());
        }
        out
    }
}

impl<F: Ring> Mul for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn mul(self, o: &SparsePoly<F>) -> SparsePoly<F> {
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparsePoly { nvars: self.nvars.max(o.nvars), terms: acc }
    }
}

impl<F: Ring> Neg for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn neg(self) -> SparsePoly<F> {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Ring> $tr for SparsePoly<F> {
            type Output = SparsePoly<F>;
            fn $method(self, o: SparsePoly<F>) -> SparsePoly<F> {
                (&self).$method(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Ring> Neg for SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn neg(self) -> SparsePoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qr};

    type P = SparsePoly<Q>;

    fn x(i: usize) -> P {
        P::var(i, 3)
    }

    #[test]
    fn grlex_orders_by_degree_then_high_variable() {
        let a = Monomial::from_exps(&[2, 0, 0]);
        let b = Monomial::from_exps(&[0, 0, 1]);
        let c = Monomial::from_exps(&[0, 1, 1]);
        assert!(b < a);
        assert!(a < c);
        assert!(Monomial::from_exps(&[1, 1, 0]) < Monomial::from_exps(&[0, 2, 0]));
    }

    #[test]
    fn difference_of_squares_divides() {
        let f = &x(0).pow(2) - &x(1).pow(2);
        let g = &x(0) - &x(1);
        assert_eq!(f.div_exact(&g), Some(&x(0) + &x(1)));
        let (qq, r) = (&f + &x(2)).div_rem(&g);
        assert_eq!(&(&qq * &g) + &r, &f + &x(2));
        assert!(!r.is_zero());
        assert_eq!((&f + &x(2)).div_exact(&g), None);
    }

    #[test]
    fn substitution_and_collection() {
        let f = &(&x(0) * &x(2)) + &x(2).pow(2);
        assert_eq!(f.subst(2, &q(2)), &x(0).scale(&q(2)) + &P::constant(q(4), 3));
        let g = f.subst_poly(0, &x(1));
        assert_eq!(g, &(&x(1) * &x(2)) + &x(2).pow(2));
        let by = f.collect_var(2);
        assert_eq!(by[&1], x(0));
        assert_eq!(by[&2], P::one(3));
    }

    #[test]
    fn canonical_string_form() {
        let vars = Vars::xh();
        let f = &(&x(0).pow(2).scale(&q(3)) - &x(2)) + &P::constant(q(1), 3);
        assert_eq!(f.to_canonical(&vars), "3*x1^2-h+1");
        let g = x(1).scale(&qr(1, 2));
        assert_eq!(g.to_canonical(&vars), "(x2)/(2)");
        assert_eq!(P::zero(3).to_canonical(&vars), "0");
        let m = &x(0) * &x(2);
        assert_eq!(m.to_canonical(&vars), "h*x1");
    }

    #[test]
    fn swap_is_involutive() {
        let f = &(&x(0).pow(3) * &x(1)) + &x(2);
        assert_eq!(f.swap_vars(0, 1).swap_vars(0, 1), f);
        assert_ne!(f.swap_vars(0, 1), f);
    }
}
