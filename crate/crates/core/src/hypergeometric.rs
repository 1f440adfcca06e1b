//! Explicit hypergeometric series: the two-variable series `A`, their
//! specializations `K`, the bar transform to `Y`, the closed forms at `alpha = 0`,
//! the normalization `I`, recursion coefficients and fixed-point values.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::frat::FRat;
use crate::algebra::linrat::LinRat;
use crate::algebra::poly::{H, X1, X2};
use crate::algebra::ratfunc::Poly;
use crate::algebra::series::QSeries;
use crate::algebra::unipoly::UniPoly;
use crate::algebra::xexpand::expand_series_in_x;
use crate::error::{Error, Result};
use crate::scalar::{q, Q};

/// The two families: `l = 1..=N` in the numerator products (dot) or `l = 0..N` (ddot).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Dot,
    Ddot,
}

impl Kind {
    pub fn l_range(self, top: u32) -> std::ops::Range<u32> {
        match self {
            Kind::Dot => 1..top + 1,
            Kind::Ddot => 0..top,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Dot => "dot",
            Kind::Ddot => "ddot",
        }
    }
}

/// Degrees of the hypersurfaces cutting out the complete intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CISpec {
    pub a: Vec<u32>,
}

impl CISpec {
    pub fn new(a: Vec<u32>) -> Result<Self> {
        if a.contains(&0) {
            return Err(Error::Invalid("degrees must be positive".into()));
        }
        Ok(CISpec { a })
    }

    pub fn ell(&self) -> usize {
        self.a.len()
    }

    /// `|a|`.
    pub fn sum(&self) -> u32 {
        self.a.iter().sum()
    }

    /// `<a>`.
    pub fn prod(&self) -> u32 {
        self.a.iter().product()
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if self.sum() as usize > n {
            return Err(Error::Invalid(format!("|a| = {} exceeds n = {n}", self.sum())));
        }
        Ok(())
    }

    /// `eta = <a> (x1 + x2)^ell`.
    pub fn eta(&self, nv: usize) -> Poly {
        let s = &Poly::var(X1, nv) + &Poly::var(X2, nv);
        s.pow(self.ell() as u32).scale(&q(self.prod() as i64))
    }
}

/// Rows `(a_{r;1}, a_{r;2})` and the two weight lists.
#[derive(Clone, Debug, PartialEq)]
pub struct AMatrixSpec {
    pub rows: Vec<(u32, u32)>,
    pub alpha1: Vec<Poly>,
    pub alpha2: Vec<Poly>,
}

impl AMatrixSpec {
    /// Rows `(a_r, a_r)` and equal weight lists.
    pub fn for_ci(a: &CISpec, alpha: &[Poly]) -> Self {
        AMatrixSpec {
            rows: a.a.iter().map(|&r| (r, r)).collect(),
            alpha1: alpha.to_vec(),
            alpha2: alpha.to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.alpha1.len()
    }

    fn nvars(&self) -> usize {
        self.alpha1.iter().chain(&self.alpha2).map(Poly::nvars).max().unwrap_or(0).max(3)
    }

    /// `sum a_{r,i}`.
    pub fn total(&self) -> u32 {
        self.rows.iter().map(|(a, b)| a + b).sum()
    }
}

/// Constant weights as polynomials.
pub fn const_alpha(alpha: &[Q]) -> Vec<Poly> {
    alpha.iter().map(|a| Poly::constant(a.clone(), 3)).collect()
}

/// `alpha = 0`.
pub fn zero_alpha(n: usize) -> Vec<Poly> {
    vec![Poly::zero(3); n]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    A(Kind),
    K(Kind),
    Y(Kind),
    YClosed(Kind),
}

#[derive(Clone, Debug)]
pub struct HyperSeries {
    pub kind: SeriesKind,
    pub n: usize,
    pub payload: QSeries<FRat>,
}

/// `prod_m (x - alpha_m + l h) - prod_m (x - alpha_m)`.
pub fn hyper_den_factor(x: &Poly, alpha: &[Poly], l: u32, nv: usize) -> Poly {
    let lh = Poly::var(H, nv).scale(&q(l as i64));
    let mut shifted = Poly::one(nv);
    let mut base = Poly::one(nv);
    for a in alpha {
        let xa = x - a;
        shifted = &shifted * &(&xa + &lh);
        base = &base * &xa;
    }
    &shifted - &base
}

fn numerator_factor(c1: u32, c2: u32, l: u32, nv: usize) -> Poly {
    let x1 = Poly::var(X1, nv).scale(&q(c1 as i64));
    let x2 = Poly::var(X2, nv).scale(&q(c2 as i64));
    &(&x1 + &x2) + &Poly::var(H, nv).scale(&q(l as i64))
}

/// The `q1^d1 q2^d2` coefficient of the two-variable series.
pub fn a_coeff(kind: Kind, spec: &AMatrixSpec, d1: u32, d2: u32) -> Result<FRat> {
    let nv = spec.nvars();
    let mut num = Poly::one(nv);
    for &(r1, r2) in &spec.rows {
        for l in kind.l_range(r1 * d1 + r2 * d2) {
            num = &num * &numerator_factor(r1, r2, l, nv);
        }
    }
    let mut den = Vec::new();
    let (x1, x2) = (Poly::var(X1, nv), Poly::var(X2, nv));
    for l in 1..=d1 {
        den.push((hyper_den_factor(&x1, &spec.alpha1, l, nv), 1));
    }
    for l in 1..=d2 {
        den.push((hyper_den_factor(&x2, &spec.alpha2, l, nv), 1));
    }
    FRat::new(num, den)
}

pub fn build_a(kind: Kind, spec: &AMatrixSpec, qdeg: u32) -> Result<HyperSeries> {
    let mut s = QSeries::new_two(qdeg);
    for t in 0..=qdeg {
        for d1 in 0..=t {
            s.set((d1, t - d1, 0), a_coeff(kind, spec, d1, t - d1)?);
        }
    }
    Ok(HyperSeries { kind: SeriesKind::A(kind), n: spec.n(), payload: s })
}

/// `K`: the two-variable series with `a_{r,i} = a_r` and both weight lists equal to `alpha`.
pub fn specialize_to_k(kind: Kind, a: &CISpec, alpha: &[Poly], qdeg: u32) -> Result<HyperSeries> {
    let mut s = build_a(kind, &AMatrixSpec::for_ci(a, alpha), qdeg)?;
    s.kind = SeriesKind::K(kind);
    Ok(s)
}

/// `F|_{q1=q2=-q} + h (q1 d/dq1 - q2 d/dq2) F|_{q1=q2=-q} / (x1 - x2)`.
pub fn bar_transform(f: &QSeries<FRat>) -> Result<QSeries<FRat>> {
    if !f.is_two_q() {
        return Err(Error::Invalid("bar transform needs a series in q1, q2".into()));
    }
    let nv = f.iter().map(|(_, c)| c.num().nvars()).max().unwrap_or(3).max(3);
    let diff = &Poly::var(X1, nv) - &Poly::var(X2, nv);
    let h = Poly::var(H, nv);
    let mut out = QSeries::new(f.qdeg());
    for d in 0..=f.qdeg() {
        let mut plain = FRat::zero();
        let mut deriv = FRat::zero();
        for d1 in 0..=d {
            let c = f.get((d1, d - d1, 0));
            plain = &plain + &c;
            let w = d1 as i64 - (d - d1) as i64;
            if w != 0 {
                deriv = &deriv + &c.scale(&q(w));
            }
        }
        let deriv = deriv.symmetrize_den(X1, X2);
        if deriv.num().swap_vars(X1, X2) != -deriv.num() {
            return Err(Error::NotSymmetric);
        }
        let deriv = deriv
            .div_poly_exact(&diff)
            .map_err(|_| Error::NotDivisible(format!("derivative term at q^{d} by x1 - x2")))?
            .mul_poly(&h);
        let mut c = &plain + &deriv;
        if d % 2 == 1 {
            c = -c;
        }
        out.set((d, 0, 0), c);
    }
    Ok(out)
}

/// The equivariant `Y` as the bar transform of `K`.
pub fn build_y(kind: Kind, a: &CISpec, alpha: &[Poly], qdeg: u32) -> Result<HyperSeries> {
    let k = specialize_to_k(kind, a, alpha, qdeg)?;
    Ok(HyperSeries { kind: SeriesKind::Y(kind), n: k.n, payload: bar_transform(&k.payload)? })
}

/// One summand `K_{d1 d2}` at `alpha = 0`, from the closed form.
fn closed_k(kind: Kind, n: usize, a: &CISpec, d1: u32, d2: u32) -> Result<FRat> {
    let nv = 3;
    let d = d1 + d2;
    let mut num = Poly::one(nv);
    for &ak in &a.a {
        for l in kind.l_range(ak * d) {
            num = &num * &numerator_factor(ak, ak, l, nv);
        }
    }
    let mut den = Vec::new();
    for (x, dd) in [(X1, d1), (X2, d2)] {
        let xv = Poly::var(x, nv);
        for l in 1..=dd {
            let shifted = &xv + &Poly::var(H, nv).scale(&q(l as i64));
            den.push((&shifted.pow(n as u32) - &xv.pow(n as u32), 1));
        }
    }
    FRat::new(num, den)
}

/// The closed forms at `alpha = 0`; the summands for `(d1, d2)` and `(d2, d1)` are
/// combined before dividing by `x1 - x2`.
pub fn build_y_closed(kind: Kind, n: usize, a: &CISpec, qdeg: u32) -> Result<HyperSeries> {
    a.check_n(n)?;
    let nv = 3;
    let diff = &Poly::var(X1, nv) - &Poly::var(X2, nv);
    let h = Poly::var(H, nv);
    let mut s = QSeries::new(qdeg);
    for d in 0..=qdeg {
        let mut c = FRat::zero();
        for d1 in 0..=d {
            let d2 = d - d1;
            if d1 < d2 {
                continue;
            }
            if d1 == d2 {
                c = &c + &closed_k(kind, n, a, d1, d2)?;
                continue;
            }
            let w = h.scale(&q((d1 - d2) as i64));
            let pair = &closed_k(kind, n, a, d1, d2)?.mul_poly(&(&diff + &w))
                + &closed_k(kind, n, a, d2, d1)?.mul_poly(&(&diff - &w));
            c = &c + &pair.symmetrize_den(X1, X2).div_poly_exact(&diff)?;
        }
        if d % 2 == 1 {
            c = -c;
        }
        s.set((d, 0, 0), c);
    }
    Ok(HyperSeries { kind: SeriesKind::YClosed(kind), n, payload: s })
}

/// `I(q)`: one unless `kind` is dot and `|a| = n`, where the `q^d` coefficient is the
/// constant term of the `x`-expansion of the closed form at `h = 1`.
pub fn normalization_i(kind: Kind, n: usize, a: &CISpec, qdeg: u32) -> Result<QSeries<Q>> {
    a.check_n(n)?;
    if kind == Kind::Ddot || (a.sum() as usize) < n {
        return Ok(QSeries::constant(Q::one(), qdeg));
    }
    let y = build_y_closed(kind, n, a, qdeg)?;
    let mut out = QSeries::new(qdeg);
    for d in 0..=qdeg {
        let ex = expand_series_in_x(&y.payload.at(d).to_ratfunc(), 0, 1)?;
        // Degree zero in (x, h): the constant term is a pure h^0 coefficient.
        let c = match ex.get(&(0, 0)) {
            Some(l) => {
                if l.terms().any(|(e, v)| *e != 0 && !v.is_zero()) {
                    return Err(Error::CheckFailed(format!("q^{d} constant term is not h-free")));
                }
                l.coeff(0)?
            }
            None => Q::zero(),
        };
        out.set((d, 0, 0), c);
    }
    Ok(out)
}

/// True when `f` is a quotient of homogeneous polynomials of the given total degree
/// difference.
pub fn is_homogeneous_of_degree(f: &FRat, deg: i64) -> bool {
    if f.num().is_zero() {
        return true;
    }
    if !f.num().is_homogeneous() || f.factors().iter().any(|(g, _)| !g.is_homogeneous()) {
        return false;
    }
    let dd: i64 = f.factors().iter().map(|(g, m)| g.total_degree() as i64 * *m as i64).sum();
    f.num().total_degree() as i64 - dd == deg
}

// ---------------------------------------------------------------------------
// Recursion coefficients

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    C,
    FrakC,
    ScrC,
}

fn nonzero(v: Q, what: &str) -> Result<Q> {
    if v.is_zero() {
        return Err(Error::NonGeneric(what.into()));
    }
    Ok(v)
}

/// `frak c_{ij}^{ik}(d)` with the `(l, m) = (d, k)` factor omitted from the denominator.
pub fn frak_c(kind: Kind, a: &CISpec, alpha: &[Q], i: usize, j: usize, k: usize, d: u32) -> Result<Q> {
    let dq = q(d as i64);
    let step = (&alpha[k] - &alpha[j]) / &dq;
    let mut num = Q::one();
    for &ar in &a.a {
        let base = (&alpha[i] + &alpha[j]) * q(ar as i64);
        for l in kind.l_range(ar * d) {
            num *= &base + &step * q(l as i64);
        }
    }
    let mut den = dq.clone();
    for l in 1..=d {
        for (m, am) in alpha.iter().enumerate() {
            if (l, m) == (d, k) {
                continue;
            }
            den *= nonzero(&alpha[j] - am + &step * q(l as i64), "recursion denominator")?;
        }
    }
    Ok(num / den)
}

/// `C_{ij}^{ik}(d) = (-1)^d (a_i - a_k)/(a_i - a_j) frak c_{ij}^{ik}(d)`.
pub fn c_coeff(kind: Kind, a: &CISpec, alpha: &[Q], i: usize, j: usize, k: usize, d: u32) -> Result<Q> {
    let r = (&alpha[i] - &alpha[k]) / nonzero(&alpha[i] - &alpha[j], "equal weights")?;
    let s = if d % 2 == 1 { -r } else { r };
    Ok(s * frak_c(kind, a, alpha, i, j, k, d)?)
}

/// Two-variable coefficient at the point `(i1, i2)`, recursing in `slot`.
pub fn scr_c(
    kind: Kind,
    rows: &[(u32, u32)],
    alpha1: &[Q],
    alpha2: &[Q],
    (i1, i2): (usize, usize),
    k: usize,
    slot: Slot,
    d: u32,
) -> Result<Q> {
    let (al, is) = match slot {
        Slot::First => (alpha1, i1),
        Slot::Second => (alpha2, i2),
    };
    let dq = q(d as i64);
    let step = (&al[k] - &al[is]) / &dq;
    let mut num = Q::one();
    for &(r1, r2) in rows {
        let base = &alpha1[i1] * q(r1 as i64) + &alpha2[i2] * q(r2 as i64);
        let rs = if slot == Slot::First { r1 } else { r2 };
        for l in kind.l_range(rs * d) {
            num *= &base + &step * q(l as i64);
        }
    }
    let mut den = dq.clone();
    for l in 1..=d {
        for (m, am) in al.iter().enumerate() {
            if (l, m) == (d, k) {
                continue;
            }
            den *= nonzero(&al[is] - am + &step * q(l as i64), "recursion denominator")?;
        }
    }
    Ok(num / den)
}

/// Key `(slot, i, j, k, d)`; single-variable tables use `Slot::First` and the pair `(i, j)`,
/// two-variable tables use the point `(i1, i2)` in place of `(i, j)`.
pub type CoeffKey = (Slot, usize, usize, usize, u32);

#[derive(Clone, Debug)]
pub struct RecursionCoeffs {
    pub kind: Kind,
    pub flavor: Flavor,
    pub entries: BTreeMap<CoeffKey, Q>,
}

impl RecursionCoeffs {
    /// `C` or `frak c` for every ordered pair, `k` outside the pair, `1 <= d <= qdeg`.
    pub fn single(kind: Kind, flavor: Flavor, a: &CISpec, alpha: &[Q], qdeg: u32) -> Result<Self> {
        let n = alpha.len();
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in (0..n).filter(|&k| k != i && k != j) {
                    for d in 1..=qdeg {
                        let v = match flavor {
                            Flavor::C => c_coeff(kind, a, alpha, i, j, k, d)?,
                            Flavor::FrakC => frak_c(kind, a, alpha, i, j, k, d)?,
                            Flavor::ScrC => {
                                return Err(Error::Invalid("two-variable flavor in a single table".into()))
                            }
                        };
                        entries.insert((Slot::First, i, j, k, d), v);
                    }
                }
            }
        }
        Ok(RecursionCoeffs { kind, flavor, entries })
    }

    /// The two-variable table at every point `(i1, i2)`.
    pub fn double(kind: Kind, rows: &[(u32, u32)], alpha1: &[Q], alpha2: &[Q], qdeg: u32) -> Result<Self> {
        let n = alpha1.len();
        let mut entries = BTreeMap::new();
        for i1 in 0..n {
            for i2 in 0..n {
                for slot in [Slot::First, Slot::Second] {
                    let is = if slot == Slot::First { i1 } else { i2 };
                    for k in (0..n).filter(|&k| k != is) {
                        for d in 1..=qdeg {
                            let v = scr_c(kind, rows, alpha1, alpha2, (i1, i2), k, slot, d)?;
                            entries.insert((slot, i1, i2, k, d), v);
                        }
                    }
                }
            }
        }
        Ok(RecursionCoeffs { kind, flavor: Flavor::ScrC, entries })
    }

    pub fn get(&self, key: CoeffKey) -> Q {
        self.entries.get(&key).cloned().unwrap_or_else(Q::zero)
    }
}

// ---------------------------------------------------------------------------
// Values at torus fixed points

/// Single-`q` series restricted to the fixed points `(alpha_i, alpha_j)`, `i != j`.
#[derive(Clone, Debug)]
pub struct FixedPointSeries {
    pub alpha: Vec<Q>,
    pub qdeg: u32,
    /// `values[(i, j)][d]`.
    pub values: BTreeMap<(usize, usize), Vec<LinRat<Q>>>,
}

impl FixedPointSeries {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn at(&self, i: usize, j: usize, d: u32) -> LinRat<Q> {
        self.values
            .get(&(i, j))
            .and_then(|v| v.get(d as usize))
            .cloned()
            .unwrap_or_else(LinRat::zero)
    }

    pub fn map(&self, f: impl Fn((usize, usize), u32, &LinRat<Q>) -> LinRat<Q>) -> Self {
        let values = self
            .values
            .iter()
            .map(|(&p, v)| (p, v.iter().enumerate().map(|(d, c)| f(p, d as u32, c)).collect()))
            .collect();
        FixedPointSeries { alpha: self.alpha.clone(), qdeg: self.qdeg, values }
    }
}

/// Two-variable series at the points `(alpha1_{i1}, alpha2_{i2})`.
#[derive(Clone, Debug)]
pub struct FixedPointSeries2 {
    pub alpha1: Vec<Q>,
    pub alpha2: Vec<Q>,
    pub qdeg: u32,
    pub values: BTreeMap<(usize, usize), BTreeMap<(u32, u32), LinRat<Q>>>,
}

impl FixedPointSeries2 {
    pub fn at(&self, i1: usize, i2: usize, d1: u32, d2: u32) -> LinRat<Q> {
        self.values
            .get(&(i1, i2))
            .and_then(|v| v.get(&(d1, d2)))
            .cloned()
            .unwrap_or_else(LinRat::zero)
    }
}

/// `prod_{l<=dd} (prod_m (x - a_m + l h) - prod_m (x - a_m))` at `x = a_i`, where the
/// second product vanishes: roots `(a_m - a_i)/l` and a scalar `prod l^n`.
fn den_at_point(alpha: &[Q], i: usize, dd: u32, poles: &mut Vec<(Q, u32)>, scalar: &mut Q) {
    for l in 1..=dd {
        let lq = q(l as i64);
        for am in alpha {
            poles.push(((am - &alpha[i]) / &lq, 1));
            *scalar *= &lq;
        }
    }
}

/// The two-variable coefficient at `x1 = alpha1_{i1}`, `x2 = alpha2_{i2}`.
#[allow(clippy::too_many_arguments)]
pub fn a_at_point(
    kind: Kind,
    rows: &[(u32, u32)],
    alpha1: &[Q],
    alpha2: &[Q],
    i1: usize,
    i2: usize,
    d1: u32,
    d2: u32,
) -> LinRat<Q> {
    let mut num = UniPoly::one();
    for &(r1, r2) in rows {
        let base = &alpha1[i1] * q(r1 as i64) + &alpha2[i2] * q(r2 as i64);
        for l in kind.l_range(r1 * d1 + r2 * d2) {
            num = &num * &UniPoly::from_coeffs(vec![base.clone(), q(l as i64)]);
        }
    }
    let mut poles = Vec::new();
    let mut scalar = Q::one();
    den_at_point(alpha1, i1, d1, &mut poles, &mut scalar);
    den_at_point(alpha2, i2, d2, &mut poles, &mut scalar);
    LinRat::new(num.scale(&(Q::one() / scalar)), poles)
}

pub fn k_at_point(kind: Kind, a: &CISpec, alpha: &[Q], i: usize, j: usize, d1: u32, d2: u32) -> LinRat<Q> {
    let rows: Vec<(u32, u32)> = a.a.iter().map(|&r| (r, r)).collect();
    a_at_point(kind, &rows, alpha, alpha, i, j, d1, d2)
}

/// Sign flip of the `(d1, d - d1)` summand of the degree-`d` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub d: u32,
    pub d1: u32,
}

/// The bar transform evaluated at `(alpha_i, alpha_j)`:
/// `(-1)^d sum (1 + (d1 - d2) h / (alpha_i - alpha_j)) K_{d1 d2}`.
pub fn bar_at_point(
    alpha: &[Q],
    i: usize,
    j: usize,
    d: u32,
    mut summand: impl FnMut(u32, u32) -> LinRat<Q>,
    mutation: Option<Mutation>,
) -> LinRat<Q> {
    let inv = Q::one() / (&alpha[i] - &alpha[j]);
    let mut acc = LinRat::zero();
    for d1 in 0..=d {
        let d2 = d - d1;
        let w = &inv * q(d1 as i64 - d2 as i64);
        let mut t = summand(d1, d2).mul_poly(&UniPoly::from_coeffs(vec![Q::one(), w]));
        if mutation == Some(Mutation { d, d1 }) {
            t = t.neg();
        }
        acc = acc.add(&t);
    }
    if d % 2 == 1 {
        acc.neg()
    } else {
        acc
    }
}

/// `Y` at every ordered pair of fixed points, optionally with one summand sign-flipped.
pub fn y_at_fixed_points(
    kind: Kind,
    a: &CISpec,
    alpha: &[Q],
    qdeg: u32,
    mutation: Option<Mutation>,
) -> FixedPointSeries {
    let n = alpha.len();
    let mut values = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = (0..=qdeg)
                .map(|d| bar_at_point(alpha, i, j, d, |d1, d2| k_at_point(kind, a, alpha, i, j, d1, d2), mutation))
                .collect();
            values.insert((i, j), v);
        }
    }
    FixedPointSeries { alpha: alpha.to_vec(), qdeg, values }
}

/// The two-variable series at every point `(i1, i2)` through total degree `qdeg`.
pub fn a_at_fixed_points(
    kind: Kind,
    rows: &[(u32, u32)],
    alpha1: &[Q],
    alpha2: &[Q],
    qdeg: u32,
) -> FixedPointSeries2 {
    let n = alpha1.len();
    let mut values = BTreeMap::new();
    for i1 in 0..n {
        for i2 in 0..n {
            let mut m = BTreeMap::new();
            for t in 0..=qdeg {
                for d1 in 0..=t {
                    m.insert((d1, t - d1), a_at_point(kind, rows, alpha1, alpha2, i1, i2, d1, t - d1));
                }
            }
            values.insert((i1, i2), m);
        }
    }
    FixedPointSeries2 { alpha1: alpha1.to_vec(), alpha2: alpha2.to_vec(), qdeg, values }
}

/// Second weight family used for two-variable checks: `11^m + 3`.
pub fn default_alpha2(n: usize) -> Vec<Q> {
    (1..=n as u32).map(|m| Q::from_integer(num_bigint::BigInt::from(11).pow(m)) + q(3)).collect()
}
