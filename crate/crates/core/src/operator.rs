//! Differential operators on the two-variable series and the classes built from them.
//!
//! At `alpha = 0` every series is homogeneous in `(x, h)`, so its `x`-expansion is
//! read off at `h = 1` and reduced to classes keyed by `(q-degree, h-power)`.
//! The equivariant side works with values at the fixed points for concrete weights.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::frat::FRat;
use crate::algebra::linalg::{series_identity, series_mat_inverse, series_mat_mul, Matrix, SeriesMatrix};
use crate::algebra::linrat::LinRat;
use crate::algebra::poly::{Monomial, H, MAX_VARS, X1, X2};
use crate::algebra::ratfunc::Poly;
use crate::algebra::series::QSeries;
use crate::algebra::unipoly::UniPoly;
use crate::cohomology::{diagonal, schur_poly, schur_reduce, unordered_pairs, ClassSolver, CohClass, GrContext, Part};
use crate::error::{Error, Result};
use crate::hypergeometric::{bar_at_point, k_at_point, specialize_to_k, zero_alpha, CISpec, FixedPointSeries, Kind};
use crate::scalar::{q, Q};
#[cfg(test)]
use crate::scalar::qr;

pub type MultiIndex = (u32, u32);

pub fn part_degree(p: Part) -> u32 {
    p.0 + p.1
}

/// All `p` with `|p| <= level`, by level and then by decreasing first entry.
pub fn multi_indices(level: u32) -> Vec<MultiIndex> {
    (0..=level).flat_map(|t| (0..=t).rev().map(move |a| (a, t - a))).collect()
}

fn truncate_x(p: &Poly, m: u32) -> Poly {
    Poly::from_terms(
        p.nvars(),
        p.terms().filter(|(mo, _)| mo.exp(X1) + mo.exp(X2) <= m).map(|(mo, c)| (*mo, c.clone())),
    )
}

/// Taylor polynomial in `x1, x2` of total degree `<= max_deg` at `h = 1`.
pub fn taylor_at_h1(f: &FRat, max_deg: u32) -> Result<Poly> {
    let one = Q::one();
    let mut acc = truncate_x(&f.num().subst(H, &one), max_deg);
    for (g, m) in f.factors() {
        let g1 = g.subst(H, &one);
        let c0 = g1.constant_term();
        if c0.is_zero() {
            return Err(Error::Pole("denominator factor vanishes at x = 0".into()));
        }
        let c0inv = Q::one() / &c0;
        let mu = &Poly::one(g1.nvars()) - &g1.scale(&c0inv);
        let mut inv = Poly::one(g1.nvars());
        let mut pw = Poly::one(g1.nvars());
        for _ in 0..max_deg {
            pw = truncate_x(&(&pw * &mu), max_deg);
            inv = &inv + &pw;
        }
        let inv = inv.scale(&c0inv);
        for _ in 0..*m {
            acc = truncate_x(&(&acc * &inv), max_deg);
        }
    }
    if acc.terms().any(|(mo, _)| (0..MAX_VARS).any(|v| v != X1 && v != X2 && mo.exp(v) != 0)) {
        return Err(Error::Invalid("taylor expansion needs a function of x1, x2, h only".into()));
    }
    Ok(acc)
}

/// Total degree of a quotient of homogeneous polynomials.
pub fn homogeneous_degree(f: &FRat) -> Option<i64> {
    if f.num().is_zero() {
        return Some(0);
    }
    if !f.num().is_homogeneous() || f.factors().iter().any(|(g, _)| !g.is_homogeneous()) {
        return None;
    }
    let dd: i64 = f.factors().iter().map(|(g, m)| g.total_degree() as i64 * *m as i64).sum();
    Some(f.num().total_degree() as i64 - dd)
}

// ---------------------------------------------------------------------------
// Class-valued series

/// Series in `q` and `h^+-1` with coefficients in `H*(Gr)`: `(d, e) -> class`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSeries {
    pub dim: usize,
    pub qdeg: u32,
    pub terms: BTreeMap<(u32, i64), CohClass>,
}

impl ClassSeries {
    pub fn new(dim: usize, qdeg: u32) -> Self {
        ClassSeries { dim, qdeg, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, d: u32, e: i64, c: &CohClass) {
        if d > self.qdeg || c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(d, e)) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert((d, e), v);
        }
    }

    pub fn get(&self, d: u32, e: i64) -> CohClass {
        self.terms.get(&(d, e)).cloned().unwrap_or(CohClass { coeffs: vec![Q::zero(); self.dim] })
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.qdeg = self.qdeg.min(o.qdeg);
        out.terms.retain(|k, _| k.0 <= out.qdeg);
        for (&(d, e), c) in &o.terms {
            out.add_term(d, e, c);
        }
        out
    }

    /// Multiply by `h^k`.
    pub fn shift_h(&self, k: i64) -> Self {
        ClassSeries {
            dim: self.dim,
            qdeg: self.qdeg,
            terms: self.terms.iter().map(|(&(d, e), c)| ((d, e + k), c.clone())).collect(),
        }
    }

    /// Multiply by a scalar series in `q`.
    pub fn mul_q(&self, s: &QSeries<Q>) -> Self {
        let mut out = ClassSeries::new(self.dim, self.qdeg.min(s.qdeg()));
        for (&(d0, _, _), c) in s.iter() {
            for (&(d, e), v) in &self.terms {
                out.add_term(d0 + d, e, &v.scale(c));
            }
        }
        out
    }
}

/// Classes of a single-`q` series at `alpha = 0`; each coefficient must be homogeneous.
pub fn classes_of(f: &QSeries<FRat>, ctx: &GrContext) -> Result<ClassSeries> {
    let top = ctx.top();
    let mut out = ClassSeries::new(ctx.dim(), f.qdeg());
    for d in 0..=f.qdeg() {
        let c = f.at(d);
        if c.is_zero() {
            continue;
        }
        let deg = homogeneous_degree(&c)
            .ok_or_else(|| Error::Invalid(format!("q^{d} coefficient is not homogeneous")))?;
        let t = taylor_at_h1(&c, top)?;
        for r in 0..=top {
            let part = t.part_of_degree(&[X1, X2], r);
            if part.is_zero() {
                continue;
            }
            out.add_term(d, deg - r as i64, &schur_reduce(&part, ctx)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The operators D^p

/// `D^p = sum_{|p'| <= |p|} c_{p,p'}(q1, q2) h^{|p| - |p'|} (x + h q d/dq)^{p'}`.
#[derive(Clone, Debug)]
pub struct OperatorFamily {
    pub qdeg: u32,
    pub max_level: u32,
    pub normalized: bool,
    pub coeffs: BTreeMap<MultiIndex, BTreeMap<MultiIndex, QSeries<Q>>>,
}

/// `N_{p',r} = sum_d q^d [x^r h^{|p'| - |r|}] (x + d h)^{p'} F_d` over `|p'|, |r| <= level`.
pub fn normalization_matrix(base: &QSeries<FRat>, level: u32) -> Result<SeriesMatrix<Q>> {
    let idx = multi_indices(level);
    let qdeg = base.qdeg();
    let mut m: SeriesMatrix<Q> = vec![vec![QSeries::new_two(qdeg); idx.len()]; idx.len()];
    for (&(d1, d2, _), f) in base.iter() {
        let deg = homogeneous_degree(f).ok_or_else(|| Error::Invalid("base series is not homogeneous".into()))?;
        if deg != 0 {
            continue;
        }
        for (a, &pp) in idx.iter().enumerate() {
            let t = taylor_at_h1(&f.mul_poly(&x_shift(pp, d1, d2)), level)?;
            for (b, &r) in idx.iter().enumerate() {
                let c = t.coeff(&Monomial::from_exps(&[r.0, r.1]));
                m[a][b].add_at((d1, d2, 0), &c);
            }
        }
    }
    Ok(m)
}

/// `(x1 + d1 h)^{p1} (x2 + d2 h)^{p2}`.
fn x_shift(p: MultiIndex, d1: u32, d2: u32) -> Poly {
    let nv = 3;
    let h = Poly::var(H, nv);
    let a = &Poly::var(X1, nv) + &h.scale(&q(d1 as i64));
    let b = &Poly::var(X2, nv) + &h.scale(&q(d2 as i64));
    &a.pow(p.0) * &b.pow(p.1)
}

impl OperatorFamily {
    /// Operators for `base`, a two-variable series at `alpha = 0`. With `normalize`
    /// the coefficients are chosen so that `C^{(r)}_{p,|r|} = delta_{p,r}` for
    /// `|r| <= |p|`; otherwise `D^p = (x + h q d/dq)^p`.
    pub fn new(base: &QSeries<FRat>, max_level: u32, normalize: bool) -> Result<Self> {
        let qdeg = base.qdeg();
        let mut coeffs = BTreeMap::new();
        for level in 0..=max_level {
            let idx = multi_indices(level);
            let inv = if normalize {
                series_mat_inverse(&normalization_matrix(base, level)?, qdeg)?
            } else {
                let mut id = series_identity::<Q>(idx.len(), qdeg);
                for row in id.iter_mut() {
                    for s in row.iter_mut() {
                        *s = s.add(&QSeries::new_two(qdeg));
                    }
                }
                id
            };
            for (a, &p) in idx.iter().enumerate() {
                if p.0 + p.1 != level {
                    continue;
                }
                let row: BTreeMap<MultiIndex, QSeries<Q>> = idx
                    .iter()
                    .zip(&inv[a])
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(&pp, s)| (pp, s.clone()))
                    .collect();
                coeffs.insert(p, row);
            }
        }
        Ok(OperatorFamily { qdeg, max_level, normalized: normalize, coeffs })
    }

    /// For a Dot or Ddot series of `Gr(2, n)` with hypersurface degrees `a`.
    pub fn for_ci(kind: Kind, n: usize, a: &CISpec, qdeg: u32, normalize: bool) -> Result<Self> {
        let base = specialize_to_k(kind, a, &zero_alpha(n), qdeg)?.payload;
        Self::new(&base, 2 * (n as u32 - 2), normalize)
    }

    /// `D^p` alone.
    pub fn single(&self, p: MultiIndex) -> Result<GammaOp> {
        let row = self
            .coeffs
            .get(&p)
            .ok_or_else(|| Error::Invalid(format!("operator index {p:?} exceeds level {}", self.max_level)))?;
        Ok(GammaOp { k: p.0 + p.1, terms: row.clone() })
    }

    /// `gamma(D)` for the Schur class `s_part`: every monomial `x^p` becomes `D^p`.
    pub fn gamma(&self, part: Part) -> Result<GammaOp> {
        let k = part_degree(part);
        let mut terms: BTreeMap<MultiIndex, QSeries<Q>> = BTreeMap::new();
        for (m, c) in schur_poly(part, 3).terms() {
            let op = self.single((m.exp(X1), m.exp(X2)))?;
            for (pp, s) in op.terms {
                let e = terms.entry(pp).or_insert_with(|| QSeries::new_two(self.qdeg));
                *e = e.add(&s.map(|v| v * c));
            }
        }
        terms.retain(|_, s| !s.is_zero());
        Ok(GammaOp { k, terms })
    }
}

/// `sum_{p'} G_{p'}(q1, q2) h^{k - |p'|} (x + h q d/dq)^{p'}`.
#[derive(Clone, Debug)]
pub struct GammaOp {
    pub k: u32,
    pub terms: BTreeMap<MultiIndex, QSeries<Q>>,
}

impl GammaOp {
    pub fn apply(&self, f: &QSeries<FRat>) -> Result<QSeries<FRat>> {
        if !f.is_two_q() {
            return Err(Error::Invalid("operators act on series in q1, q2".into()));
        }
        let qdeg = f.qdeg();
        let h = Poly::var(H, 3);
        let mut out = QSeries::new_two(qdeg);
        for (&pp, g) in &self.terms {
            let hp = h.pow(self.k - pp.0 - pp.1);
            let raw: BTreeMap<(u32, u32), FRat> =
                f.iter().map(|(&(d1, d2, _), c)| ((d1, d2), c.mul_poly(&x_shift(pp, d1, d2)))).collect();
            for (&(e1, e2, _), gc) in g.iter() {
                for (&(d1, d2), r) in &raw {
                    if d1 + d2 + e1 + e2 <= qdeg {
                        out.add_at((d1 + e1, d2 + e2, 0), &r.scale(gc).mul_poly(&hp));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The same operator on values at `x1 = v1`, `x2 = v2`; `f(d1, d2)` is the
    /// coefficient there.
    pub fn apply_at_point(
        &self,
        f: &BTreeMap<(u32, u32), LinRat<Q>>,
        v1: &Q,
        v2: &Q,
        qdeg: u32,
    ) -> BTreeMap<(u32, u32), LinRat<Q>> {
        let mut out: BTreeMap<(u32, u32), LinRat<Q>> = BTreeMap::new();
        for (&pp, g) in &self.terms {
            let hp = UniPoly::monomial(Q::one(), (self.k - pp.0 - pp.1) as usize);
            for (&(d1, d2), c) in f {
                let a = UniPoly::from_coeffs(vec![v1.clone(), q(d1 as i64)]).pow(pp.0);
                let b = UniPoly::from_coeffs(vec![v2.clone(), q(d2 as i64)]).pow(pp.1);
                let raw = c.mul_poly(&(&(&a * &b) * &hp));
                for (&(e1, e2, _), gc) in g.iter() {
                    if d1 + d2 + e1 + e2 <= qdeg {
                        let e = out.entry((d1 + e1, d2 + e2)).or_insert_with(LinRat::zero);
                        *e = e.add(&raw.scale(gc));
                    }
                }
            }
        }
        out
    }
}

/// Failures of `C^{(r)}_{p,|r|} = delta_{p,r}` (`|r| <= |p|`) and of the `q^0` identity
/// `D^p F|_{q=0} = x^p`, as `(p, r, d)`.
pub fn audit_normalization(fam: &OperatorFamily, base: &QSeries<FRat>, max_p: u32) -> Result<Vec<(MultiIndex, MultiIndex, u32)>> {
    let mut bad = Vec::new();
    for p in multi_indices(max_p) {
        let lvl = p.0 + p.1;
        let img = fam.single(p)?.apply(base)?;
        let xp = Poly::from_terms(3, [(Monomial::from_exps(&[p.0, p.1]), Q::one())]);
        if img.get((0, 0, 0)) != FRat::from_poly(xp) {
            bad.push((p, p, 0));
        }
        for (&(d1, d2, _), c) in img.iter() {
            let deg = homogeneous_degree(c).ok_or_else(|| Error::Invalid("image is not homogeneous".into()))?;
            if deg != lvl as i64 {
                continue;
            }
            let t = taylor_at_h1(c, lvl)?;
            for r in multi_indices(lvl) {
                let got = t.coeff(&Monomial::from_exps(&[r.0, r.1]));
                let want = if r == p && d1 + d2 == 0 { Q::one() } else { Q::zero() };
                if got != want {
                    bad.push((p, r, d1 + d2));
                }
            }
        }
    }
    Ok(bad)
}

// ---------------------------------------------------------------------------
// The normalized family on Y and its expansion

/// `C^{(r,j)}_{k,i,s}` for a fixed source `(k, i)`: `(s, target part) -> series in q`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpansion {
    pub source: Part,
    pub qdeg: u32,
    pub table: BTreeMap<(u32, Part), QSeries<Q>>,
}

impl OperatorExpansion {
    pub fn get(&self, s: u32, target: Part) -> QSeries<Q> {
        self.table.get(&(s, target)).cloned().unwrap_or_else(|| QSeries::new(self.qdeg))
    }

    fn add(&mut self, s: u32, target: Part, d: u32, c: &Q) {
        let e = self.table.entry((s, target)).or_insert_with(|| QSeries::new(self.qdeg));
        e.add_at((d, 0, 0), c);
    }

    /// `q^0` table is `delta_{i,j} delta_{k,r} delta_{r,s}`.
    pub fn q0_is_delta(&self) -> bool {
        let k = part_degree(self.source);
        let mut seen = false;
        for (&(s, t), v) in &self.table {
            let c = v.at(0);
            if (s, t) == (k, self.source) {
                seen = c.is_one();
                if !seen {
                    return false;
                }
            } else if !c.is_zero() {
                return false;
            }
        }
        seen
    }
}

/// Read `C^{(r,j)}_{k,i,s}` off the classes of `cal D^{k,i} Y = h^k sum C gamma h^-s`.
pub fn extract_opexp(classes: &ClassSeries, source: Part, ctx: &GrContext) -> Result<OperatorExpansion> {
    let k = part_degree(source) as i64;
    let basis = ctx.basis();
    let mut out = OperatorExpansion { source, qdeg: classes.qdeg, table: BTreeMap::new() };
    for (&(d, e), c) in &classes.terms {
        if e > k {
            return Err(Error::CheckFailed(format!("h^{e} above h^{k} at q^{d} for source {source:?}")));
        }
        for (b, v) in basis.iter().zip(&c.coeffs) {
            if !v.is_zero() {
                out.add((k - e) as u32, *b, d, v);
            }
        }
    }
    Ok(out)
}

/// `Cdot^{(t)}_{k,i;s,j}` for a fixed source `(k, i)`: `(t, (s, j) part) -> series`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCoeffs {
    pub source: Part,
    pub qdeg: u32,
    pub table: BTreeMap<(u32, Part), QSeries<Q>>,
    /// Every equation of the system holds through `q^qdeg` after solving.
    pub residual_zero: bool,
    /// At each level the system matrix is triangular with unit diagonal in `s`
    /// without solving, as the rearranged form of the equations presumes.
    pub unitriangular: bool,
}

impl StructureCoeffs {
    pub fn get(&self, t: u32, u: Part) -> QSeries<Q> {
        self.table.get(&(t, u)).cloned().unwrap_or_else(|| QSeries::new(self.qdeg))
    }

    /// `Cdot^{(0)}_{k,i;s,j} = delta_{k,s} delta_{i,j}` exactly.
    pub fn level_zero_is_delta(&self) -> bool {
        self.table.iter().filter(|((t, _), _)| *t == 0).all(|((_, u), v)| {
            if *u == self.source {
                v.iter().all(|(k, c)| *k == (0, 0, 0) && c.is_one()) && !v.is_zero()
            } else {
                v.is_zero()
            }
        }) && self.table.contains_key(&(0, self.source))
    }
}

fn parts_up_to(ctx: &GrContext, m: u32) -> Vec<Part> {
    (0..=m).flat_map(|s| ctx.basis_of_degree(s)).collect()
}

/// Solve `sum_{t<=r} sum_{s<=k-t} Cdot^{(t)}_{s,j} C^{(r1,j1)}_{s,j,r+r1-t} = delta` level
/// by level in `r`; each level is a system over `Q[[q]]` whose `q^0` part is the identity.
pub fn solve_structure_coeffs(
    opexp: &BTreeMap<Part, OperatorExpansion>,
    source: Part,
    ctx: &GrContext,
    qdeg: u32,
) -> Result<StructureCoeffs> {
    let k = part_degree(source);
    let cget = |u: Part, s: u32, tgt: Part| -> QSeries<Q> {
        opexp.get(&u).map_or_else(|| QSeries::new(qdeg), |o| o.get(s, tgt))
    };
    let mut sol: BTreeMap<(u32, Part), QSeries<Q>> = BTreeMap::new();
    let mut unitri = true;
    for r in 0..=k {
        let idx = parts_up_to(ctx, k - r);
        let m: SeriesMatrix<Q> = idx
            .iter()
            .map(|&e| idx.iter().map(|&u| cget(u, part_degree(e), e)).collect())
            .collect();
        for (a, &e) in idx.iter().enumerate() {
            for (b, &u) in idx.iter().enumerate() {
                let s = &m[a][b];
                let ok = match part_degree(u).cmp(&part_degree(e)) {
                    std::cmp::Ordering::Greater => s.is_zero(),
                    std::cmp::Ordering::Equal => {
                        s.iter().all(|(kk, c)| *kk == (0, 0, 0) && (a == b) == c.is_one()) && (a != b || !s.is_zero())
                    }
                    std::cmp::Ordering::Less => true,
                };
                unitri &= ok;
            }
        }
        let rhs: Vec<QSeries<Q>> = idx
            .iter()
            .map(|&e| {
                let mut b = if r == 0 && e == source { QSeries::constant(Q::one(), qdeg) } else { QSeries::new(qdeg) };
                for t in 0..r {
                    for u in parts_up_to(ctx, k - t) {
                        let x = sol.get(&(t, u)).cloned().unwrap_or_else(|| QSeries::new(qdeg));
                        b = b.sub(&x.mul(&cget(u, r + part_degree(e) - t, e)));
                    }
                }
                b
            })
            .collect();
        let inv = series_mat_inverse(&m, qdeg)?;
        let col: SeriesMatrix<Q> = rhs.into_iter().map(|b| vec![b]).collect();
        let x = series_mat_mul(&inv, &col, qdeg);
        for (u, v) in idx.iter().zip(x) {
            let v = v.into_iter().next().expect("column");
            if !v.is_zero() {
                sol.insert((r, *u), v);
            }
        }
    }
    let mut residual_zero = true;
    for r in 0..=k {
        for e in parts_up_to(ctx, k - r) {
            let mut acc = QSeries::new(qdeg);
            for t in 0..=r {
                for u in parts_up_to(ctx, k - t) {
                    if let Some(x) = sol.get(&(t, u)) {
                        acc = acc.add(&x.mul(&cget(u, r + part_degree(e) - t, e)));
                    }
                }
            }
            if r == 0 && e == source {
                acc = acc.sub(&QSeries::constant(Q::one(), qdeg));
            }
            residual_zero &= acc.is_zero();
        }
    }
    Ok(StructureCoeffs { source, qdeg, table: sol, residual_zero, unitriangular: unitri })
}

// ---------------------------------------------------------------------------
// The full pipeline at alpha = 0

#[derive(Clone, Debug)]
pub struct CalD {
    pub k: u32,
    pub jbar: SeriesMatrix<Q>,
    pub cbar: SeriesMatrix<Q>,
    /// `J cbar = I` and `cbar J = I` through `q^qdeg`.
    pub certificate: bool,
}

/// `J_k`: row `j` is the `x`-degree-`k`, `h^0` part of `bar D^{k,j} Y` on the
/// degree-`k` basis.
pub fn build_cal_d(bar_classes: &BTreeMap<Part, ClassSeries>, k: u32, ctx: &GrContext, qdeg: u32) -> Result<CalD> {
    let parts = ctx.basis_of_degree(k);
    let basis = ctx.basis();
    let pos: Vec<usize> = parts.iter().map(|p| basis.iter().position(|b| b == p).expect("basis")).collect();
    let mut j: SeriesMatrix<Q> = vec![vec![QSeries::new(qdeg); parts.len()]; parts.len()];
    for (a, p) in parts.iter().enumerate() {
        let cls = bar_classes.get(p).ok_or_else(|| Error::Invalid(format!("missing {p:?}")))?;
        for (&(d, e), c) in &cls.terms {
            if e != 0 {
                continue;
            }
            for (b, &ix) in pos.iter().enumerate() {
                j[a][b].add_at((d, 0, 0), &c.coeffs[ix]);
            }
        }
    }
    let cbar = series_mat_inverse(&j, qdeg)?;
    let id = |m: &SeriesMatrix<Q>| crate::algebra::linalg::is_series_identity(m);
    let certificate = id(&series_mat_mul(&j, &cbar, qdeg)) && id(&series_mat_mul(&cbar, &j, qdeg));
    Ok(CalD { k, jbar: j, cbar, certificate })
}

/// Everything for one series (Dot or Ddot) at `alpha = 0`.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub kind: Kind,
    pub n: usize,
    pub a: CISpec,
    pub qdeg: u32,
    pub ctx: GrContext,
    pub family: OperatorFamily,
    pub bar_d: BTreeMap<Part, QSeries<FRat>>,
    pub bar_classes: BTreeMap<Part, ClassSeries>,
    pub cal_d: BTreeMap<u32, CalD>,
    pub cal_classes: BTreeMap<Part, ClassSeries>,
    pub opexp: BTreeMap<Part, OperatorExpansion>,
    pub structure: BTreeMap<Part, StructureCoeffs>,
    pub y_gamma: BTreeMap<Part, ClassSeries>,
}

/// `bar D^{k,j} Y`: `gamma(D)` on `K`, then the bar transform.
pub fn build_bar_d(fam: &OperatorFamily, part: Part, k_series: &QSeries<FRat>) -> Result<QSeries<FRat>> {
    crate::hypergeometric::bar_transform(&fam.gamma(part)?.apply(k_series)?)
}

/// `Y_gamma = cal D^{k,j} Y + sum_{t>=1} sum_{s<=k-t} Cdot^{(t)}_{k,j;s,i} h^{k-t-s} cal D^{s,i} Y`.
pub fn assemble_y_gamma(
    cal_classes: &BTreeMap<Part, ClassSeries>,
    sc: &StructureCoeffs,
    ctx: &GrContext,
) -> Result<ClassSeries> {
    let src = sc.source;
    let k = part_degree(src);
    let get = |p: &Part| cal_classes.get(p).ok_or_else(|| Error::Invalid(format!("missing {p:?}")));
    let mut out = get(&src)?.clone();
    for t in 1..=k {
        for u in parts_up_to(ctx, k - t) {
            let c = sc.get(t, u);
            if c.is_zero() {
                continue;
            }
            let shift = (k - t - part_degree(u)) as i64;
            out = out.add(&get(&u)?.mul_q(&c).shift_h(shift));
        }
    }
    Ok(out)
}

impl Pipeline {
    pub fn build(kind: Kind, n: usize, a: &CISpec, qdeg: u32, normalize: bool) -> Result<Self> {
        a.check_n(n)?;
        let ctx = GrContext::new(n)?;
        let kser = specialize_to_k(kind, a, &zero_alpha(n), qdeg)?.payload;
        let family = OperatorFamily::new(&kser, ctx.top(), normalize)?;
        let mut bar_d = BTreeMap::new();
        let mut bar_classes = BTreeMap::new();
        for p in ctx.basis() {
            let b = build_bar_d(&family, p, &kser)?;
            bar_classes.insert(p, classes_of(&b, &ctx)?);
            bar_d.insert(p, b);
        }
        let mut cal_d = BTreeMap::new();
        let mut cal_classes = BTreeMap::new();
        for k in 0..=ctx.top() {
            let cd = build_cal_d(&bar_classes, k, &ctx, qdeg)?;
            let parts = ctx.basis_of_degree(k);
            for (i, p) in parts.iter().enumerate() {
                let mut acc = ClassSeries::new(ctx.dim(), qdeg);
                for (j, pj) in parts.iter().enumerate() {
                    acc = acc.add(&bar_classes[pj].mul_q(&cd.cbar[i][j]));
                }
                cal_classes.insert(*p, acc);
            }
            cal_d.insert(k, cd);
        }
        let mut opexp = BTreeMap::new();
        for (p, c) in &cal_classes {
            opexp.insert(*p, extract_opexp(c, *p, &ctx)?);
        }
        let mut structure = BTreeMap::new();
        let mut y_gamma = BTreeMap::new();
        for p in ctx.basis() {
            let sc = solve_structure_coeffs(&opexp, p, &ctx, qdeg)?;
            y_gamma.insert(p, assemble_y_gamma(&cal_classes, &sc, &ctx)?);
            structure.insert(p, sc);
        }
        Ok(Pipeline {
            kind,
            n,
            a: a.clone(),
            qdeg,
            ctx,
            family,
            bar_d,
            bar_classes,
            cal_d,
            cal_classes,
            opexp,
            structure,
            y_gamma,
        })
    }

    /// `(|a| - n) d`: the `(x, h)` degree of the `q^d` coefficient of `Y`.
    pub fn degree_shift(&self, d: u32) -> i64 {
        (self.a.sum() as i64 - self.n as i64) * d as i64
    }

    /// Every opexp entry at `q^d` with `s != r + (n - |a|) d` vanishes.
    pub fn opexp_homogeneous(&self) -> bool {
        self.opexp.values().all(|o| {
            o.table.iter().all(|(&(s, t), v)| {
                v.iter().all(|(&(d, _, _), _)| s as i64 == part_degree(t) as i64 - self.degree_shift(d))
            })
        })
    }
}

// ---------------------------------------------------------------------------
// Orthogonality and the double J-function

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub pass: bool,
    /// `(d, e)` where `sum Ydot(h) (x) Yddot(-h)` differs from the diagonal.
    pub offending: Vec<(u32, i64)>,
}

fn tensor_add(acc: &mut Matrix<Q>, a: &CohClass, b: &CohClass, s: &Q) {
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                acc[i][j] += x * y * s;
            }
        }
    }
}

/// `sum_{k,j} Ydot_{gamma^k_j}(h) (x) Yddot_{gamma^{top-k}_j}(-h)` against `[Delta]`.
pub fn orthogonality(
    ydot: &BTreeMap<Part, ClassSeries>,
    yddot: &BTreeMap<Part, ClassSeries>,
    ctx: &GrContext,
    qdeg: u32,
) -> Result<OrthogonalityReport> {
    let dim = ctx.dim();
    let mut sums: BTreeMap<(u32, i64), Matrix<Q>> = BTreeMap::new();
    for p in ctx.basis() {
        let (Some(a), Some(b)) = (ydot.get(&p), yddot.get(&ctx.complement(p))) else {
            return Err(Error::Invalid(format!("missing class series for {p:?}")));
        };
        for (&(d1, e1), x) in &a.terms {
            for (&(d2, e2), y) in &b.terms {
                if d1 + d2 > qdeg {
                    continue;
                }
                let sign = if e2 % 2 == 0 { Q::one() } else { -Q::one() };
                let m = sums.entry((d1 + d2, e1 + e2)).or_insert_with(|| vec![vec![Q::zero(); dim]; dim]);
                tensor_add(m, x, y, &sign);
            }
        }
    }
    let delta = diagonal(ctx)?.tensor;
    let zero = vec![vec![Q::zero(); dim]; dim];
    let mut offending = Vec::new();
    if sums.get(&(0, 0)).unwrap_or(&zero) != &delta {
        offending.push((0, 0));
    }
    for (&key, m) in &sums {
        if key != (0, 0) && *m != zero {
            offending.push(key);
        }
    }
    Ok(OrthogonalityReport { pass: offending.is_empty(), offending })
}

/// Numerator of the double J-function: `(d, e1, e2) -> tensor` with
/// `Z = N(h1, h2) / (h1 + h2)`.
#[derive(Clone, Debug)]
pub struct DoubleJ {
    pub qdeg: u32,
    pub numerator: BTreeMap<(u32, i64, i64), Matrix<Q>>,
}

impl DoubleJ {
    /// The `q^0` numerator is `[Delta]` in bidegree `(0, 0)`.
    pub fn leading_is_diagonal(&self, ctx: &GrContext) -> Result<bool> {
        let delta = diagonal(ctx)?.tensor;
        let zero = vec![vec![Q::zero(); ctx.dim()]; ctx.dim()];
        Ok(self
            .numerator
            .iter()
            .filter(|(k, _)| k.0 == 0)
            .all(|(k, m)| if (k.1, k.2) == (0, 0) { *m == delta } else { *m == zero })
            && self.numerator.contains_key(&(0, 0, 0)))
    }

    /// Degrees `d` where `N(h, -h)` is not `delta_{d,0} [Delta]`.
    pub fn antidiagonal_failures(&self, ctx: &GrContext) -> Result<Vec<u32>> {
        let dim = ctx.dim();
        let delta = diagonal(ctx)?.tensor;
        let mut coll: BTreeMap<(u32, i64), Matrix<Q>> = BTreeMap::new();
        for (&(d, e1, e2), m) in &self.numerator {
            let s = if e2 % 2 == 0 { Q::one() } else { -Q::one() };
            let acc = coll.entry((d, e1 + e2)).or_insert_with(|| vec![vec![Q::zero(); dim]; dim]);
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    acc[i][j] += v * &s;
                }
            }
        }
        let zero = vec![vec![Q::zero(); dim]; dim];
        let mut bad: Vec<u32> = coll
            .iter()
            .filter(|(k, m)| if **k == (0, 0) { **m != delta } else { **m != zero })
            .map(|(k, _)| k.0)
            .collect();
        if !coll.contains_key(&(0, 0)) {
            bad.push(0);
        }
        bad.dedup();
        Ok(bad)
    }
}

pub fn assemble_double_j(dot: &Pipeline, ddot: &Pipeline) -> Result<DoubleJ> {
    let ctx = &dot.ctx;
    let qdeg = dot.qdeg.min(ddot.qdeg);
    let dim = ctx.dim();
    let mut numerator: BTreeMap<(u32, i64, i64), Matrix<Q>> = BTreeMap::new();
    for p in ctx.basis() {
        let a = &dot.y_gamma[&p];
        let b = &ddot.y_gamma[&ctx.complement(p)];
        for (&(d1, e1), x) in &a.terms {
            for (&(d2, e2), y) in &b.terms {
                if d1 + d2 <= qdeg {
                    let m = numerator.entry((d1 + d2, e1, e2)).or_insert_with(|| vec![vec![Q::zero(); dim]; dim]);
                    tensor_add(m, x, y, &Q::one());
                }
            }
        }
    }
    numerator.retain(|_, m| m.iter().any(|r| r.iter().any(|v| !v.is_zero())));
    Ok(DoubleJ { qdeg, numerator })
}

// ---------------------------------------------------------------------------
// Equivariant assembly for concrete weights

/// `cal D`, structure coefficients and `Y_gamma` at the fixed points. The operator
/// coefficients and `J_k^-1` are those of the `alpha = 0` pipeline.
#[derive(Clone, Debug)]
pub struct EquivariantPipeline {
    pub alpha: Vec<Q>,
    pub ctx: GrContext,
    pub cal_d: BTreeMap<Part, FixedPointSeries>,
    pub opexp: BTreeMap<Part, OperatorExpansion>,
    pub structure: BTreeMap<Part, StructureCoeffs>,
    pub y_gamma: BTreeMap<Part, FixedPointSeries>,
}

fn conv_lin(c: &QSeries<Q>, v: &[LinRat<Q>], qdeg: u32) -> Vec<LinRat<Q>> {
    let mut out = vec![LinRat::zero(); qdeg as usize + 1];
    for (&(e, _, _), s) in c.iter() {
        for (d, x) in v.iter().enumerate() {
            let t = e as usize + d;
            if t <= qdeg as usize {
                out[t] = out[t].add(&x.scale(s));
            }
        }
    }
    out
}

/// Classes of the `h^e` Laurent coefficients, `e_min <= e <= e_max`, of a symmetric
/// series at the fixed points.
pub fn classes_at_points(
    f: &FixedPointSeries,
    solver: &ClassSolver,
    e_min: i64,
    e_max: i64,
    dim: usize,
) -> Result<ClassSeries> {
    let n = f.n();
    let mut out = ClassSeries::new(dim, f.qdeg);
    let depth = 1 - e_min;
    for d in 0..=f.qdeg {
        let mut lau = Vec::new();
        for (i, j) in unordered_pairs(n) {
            let v = f.at(i, j, d);
            if !v.same_value(&f.at(j, i, d)) {
                return Err(Error::NotSymmetric);
            }
            let l = v.to_laurent(depth)?;
            if l.top().is_some_and(|t| t > e_max) {
                return Err(Error::CheckFailed(format!("h^{} above h^{e_max} at q^{d}", l.top().unwrap_or(0))));
            }
            lau.push(l);
        }
        for e in e_min..=e_max {
            let vals: Vec<Q> = lau.iter().map(|l| l.coeff(e)).collect::<Result<_>>()?;
            out.add_term(d, e, &solver.class_of(&vals));
        }
    }
    Ok(out)
}

impl EquivariantPipeline {
    pub fn build(zero: &Pipeline, alpha: &[Q]) -> Result<Self> {
        let n = zero.n;
        let ctx = GrContext::with_alpha(n, alpha.to_vec())?;
        ctx.check_generic(zero.qdeg)?;
        let solver = ClassSolver::new(&ctx)?;
        let qdeg = zero.qdeg;
        let top = ctx.top() as i64;
        let mut kvals: BTreeMap<(usize, usize), BTreeMap<(u32, u32), LinRat<Q>>> = BTreeMap::new();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let mut m = BTreeMap::new();
                for t in 0..=qdeg {
                    for d1 in 0..=t {
                        m.insert((d1, t - d1), k_at_point(zero.kind, &zero.a, alpha, i, j, d1, t - d1));
                    }
                }
                kvals.insert((i, j), m);
            }
        }
        let mut bar: BTreeMap<Part, FixedPointSeries> = BTreeMap::new();
        for p in ctx.basis() {
            let g = zero.family.gamma(p)?;
            let mut values = BTreeMap::new();
            for (&(i, j), kv) in &kvals {
                let gk = g.apply_at_point(kv, &alpha[i], &alpha[j], qdeg);
                let v: Vec<LinRat<Q>> = (0..=qdeg)
                    .map(|d| {
                        bar_at_point(
                            alpha,
                            i,
                            j,
                            d,
                            |d1, d2| gk.get(&(d1, d2)).cloned().unwrap_or_else(LinRat::zero),
                            None,
                        )
                    })
                    .collect();
                values.insert((i, j), v);
            }
            bar.insert(p, FixedPointSeries { alpha: alpha.to_vec(), qdeg, values });
        }
        let mut cal_d = BTreeMap::new();
        for k in 0..=ctx.top() {
            let parts = ctx.basis_of_degree(k);
            let cbar = &zero.cal_d[&k].cbar;
            for (a, p) in parts.iter().enumerate() {
                let mut values = BTreeMap::new();
                for &(i, j) in kvals.keys() {
                    let mut acc = vec![LinRat::zero(); qdeg as usize + 1];
                    for (b, pb) in parts.iter().enumerate() {
                        let v = &bar[pb].values[&(i, j)];
                        for (x, y) in acc.iter_mut().zip(conv_lin(&cbar[a][b], v, qdeg)) {
                            *x = x.add(&y);
                        }
                    }
                    values.insert((i, j), acc);
                }
                cal_d.insert(*p, FixedPointSeries { alpha: alpha.to_vec(), qdeg, values });
            }
        }
        let mut opexp = BTreeMap::new();
        for (p, f) in &cal_d {
            let cls = classes_at_points(f, &solver, -top, part_degree(*p) as i64, ctx.dim())?;
            opexp.insert(*p, extract_opexp(&cls, *p, &ctx)?);
        }
        let mut structure = BTreeMap::new();
        let mut y_gamma = BTreeMap::new();
        for p in ctx.basis() {
            let sc = solve_structure_coeffs(&opexp, p, &ctx, qdeg)?;
            let k = part_degree(p);
            let mut values = BTreeMap::new();
            for &(i, j) in kvals.keys() {
                let mut acc = cal_d[&p].values[&(i, j)].clone();
                for t in 1..=k {
                    for u in parts_up_to(&ctx, k - t) {
                        let c = sc.get(t, u);
                        if c.is_zero() {
                            continue;
                        }
                        let hp = UniPoly::monomial(Q::one(), (k - t - part_degree(u)) as usize);
                        let v: Vec<LinRat<Q>> = cal_d[&u].values[&(i, j)].iter().map(|x| x.mul_poly(&hp)).collect();
                        for (x, y) in acc.iter_mut().zip(conv_lin(&c, &v, qdeg)) {
                            *x = x.add(&y);
                        }
                    }
                }
                values.insert((i, j), acc);
            }
            y_gamma.insert(p, FixedPointSeries { alpha: alpha.to_vec(), qdeg, values });
            structure.insert(p, sc);
        }
        Ok(EquivariantPipeline { alpha: alpha.to_vec(), ctx, cal_d, opexp, structure, y_gamma })
    }

    /// Entries of `Y_gamma` whose coefficient has weight degree zero, as classes;
    /// these must agree with the `alpha = 0` pipeline.
    pub fn y_gamma_weight_free(&self, zero: &Pipeline, p: Part) -> Result<ClassSeries> {
        let solver = ClassSolver::new(&self.ctx)?;
        let k = part_degree(p) as i64;
        let top = self.ctx.top() as i64;
        let basis = self.ctx.basis();
        let e_min = (0..=zero.qdeg).map(|d| k + zero.degree_shift(d) - top).min().unwrap_or(0);
        let e_max = k;
        let full = classes_at_points(&self.y_gamma[&p], &solver, e_min.min(0), e_max, self.ctx.dim())?;
        let mut out = ClassSeries::new(self.ctx.dim(), zero.qdeg);
        for (&(d, e), c) in &full.terms {
            let mut kept = c.clone();
            for (b, v) in basis.iter().zip(kept.coeffs.iter_mut()) {
                if k + zero.degree_shift(d) - part_degree(*b) as i64 - e != 0 {
                    *v = Q::zero();
                }
            }
            out.add_term(d, e, &kept);
        }
        Ok(out)
    }
}

/// Entries of an equivariant opexp table with weight degree zero and `s <= s_max`
/// agree with the `alpha = 0` table. The equivariant `h`-expansion is infinite, so
/// only the extracted window is compared.
pub fn opexp_weight_free_agrees(
    eq: &OperatorExpansion,
    zero: &OperatorExpansion,
    s_max: u32,
    shift: impl Fn(u32) -> i64,
) -> bool {
    let keys: std::collections::BTreeSet<_> = eq.table.keys().chain(zero.table.keys()).copied().collect();
    keys.into_iter().filter(|k| k.0 <= s_max).all(|(s, t)| {
        let (a, b) = (eq.get(s, t), zero.get(s, t));
        (0..=eq.qdeg.min(zero.qdeg)).all(|d| {
            if s as i64 != part_degree(t) as i64 - shift(d) {
                return b.at(d).is_zero();
            }
            a.at(d) == b.at(d)
        })
    })
}
