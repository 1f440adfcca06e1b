//! Checks of recursivity and of polynomiality of the weighted fixed-point pairing,
//! plus the residue bookkeeping behind the polynomiality argument.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::frat::FRat;
use crate::algebra::linrat::LinRat;
use crate::algebra::poly::{H, X1, X2};
use crate::algebra::ratfunc::Poly;
use crate::algebra::series::QSeries;
use crate::algebra::unipoly::UniPoly;
use crate::algebra::urat::URat;
use crate::cohomology::{euler_at, restrict_at};
use crate::error::{Error, Result};
use crate::hypergeometric::{FixedPointSeries, FixedPointSeries2, RecursionCoeffs, Slot};
use crate::residue::{residue_at, residue_sum_check, Splitting};
use crate::scalar::{factorial, q, Q};

#[derive(Clone, Debug)]
pub struct RecursivityEntry {
    /// `(i, j)`, or the point `(i1, i2)` in two-variable mode.
    pub pair: (usize, usize),
    /// `(d, 0)`, or `(d1, d2)` in two-variable mode.
    pub degree: (u32, u32),
    pub remainder: LinRat<Q>,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct RecursivityReport {
    pub entries: Vec<RecursivityEntry>,
}

impl RecursivityReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RecursivityEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn finish_entry(pair: (usize, usize), degree: (u32, u32), f: Result<LinRat<Q>>) -> RecursivityEntry {
    match f {
        Ok(r) => RecursivityEntry { pair, degree, pass: r.is_laurent_polynomial(), remainder: r, error: None },
        Err(e) => RecursivityEntry { pair, degree, remainder: LinRat::zero(), pass: false, error: Some(e.to_string()) },
    }
}

/// Subtract every prescribed pole term from each coefficient and test that only a
/// pole at `h = 0` remains.
pub fn check_recursive(f: &FixedPointSeries, c: &RecursionCoeffs) -> RecursivityReport {
    let a = &f.alpha;
    let n = f.n();
    let mut rep = RecursivityReport::default();
    for (&(i, j), _) in &f.values {
        for ds in 1..=f.qdeg {
            let run = || -> Result<LinRat<Q>> {
                let mut r = f.at(i, j, ds);
                for d in 1..=ds {
                    let dq = q(d as i64);
                    for k in (0..n).filter(|&k| k != i && k != j) {
                        let z = (&a[k] - &a[j]) / &dq;
                        let v = f.at(i, k, ds - d).eval(&z)?;
                        r = r.sub(&LinRat::simple_pole(c.get((Slot::First, i, j, k, d)) * v, z));
                        let z = (&a[k] - &a[i]) / &dq;
                        let v = f.at(k, j, ds - d).eval(&z)?;
                        r = r.sub(&LinRat::simple_pole(c.get((Slot::First, j, i, k, d)) * v, z));
                    }
                }
                Ok(r)
            };
            rep.entries.push(finish_entry((i, j), (ds, 0), run()));
        }
    }
    rep
}

/// Two-variable mode: slot one carries `q1^d`, slot two `q2^d`.
pub fn check_recursive_double(f: &FixedPointSeries2, c: &RecursionCoeffs) -> RecursivityReport {
    let n = f.alpha1.len();
    let mut rep = RecursivityReport::default();
    for (&(i1, i2), coeffs) in &f.values {
        for (&(d1, d2), _) in coeffs {
            if d1 + d2 == 0 {
                continue;
            }
            let run = || -> Result<LinRat<Q>> {
                let mut r = f.at(i1, i2, d1, d2);
                for d in 1..=d2 {
                    for k in (0..n).filter(|&k| k != i2) {
                        let z = (&f.alpha2[k] - &f.alpha2[i2]) / q(d as i64);
                        let v = f.at(i1, k, d1, d2 - d).eval(&z)?;
                        r = r.sub(&LinRat::simple_pole(c.get((Slot::Second, i1, i2, k, d)) * v, z));
                    }
                }
                for d in 1..=d1 {
                    for k in (0..n).filter(|&k| k != i1) {
                        let z = (&f.alpha1[k] - &f.alpha1[i1]) / q(d as i64);
                        let v = f.at(k, i2, d1 - d, d2).eval(&z)?;
                        r = r.sub(&LinRat::simple_pole(c.get((Slot::First, i1, i2, k, d)) * v, z));
                    }
                }
                Ok(r)
            };
            rep.entries.push(finish_entry((i1, i2), (d1, d2), run()));
        }
    }
    rep
}

/// `Phi` coefficients keyed by `(z-power, q-degree)`.
#[derive(Clone, Debug)]
pub struct PhiSeries {
    pub eta: Poly,
    pub zdeg: u32,
    pub qdeg: u32,
    pub coeffs: BTreeMap<(u32, u32), LinRat<Q>>,
}

/// `(1/2) sum_{i != j} eta(a_i, a_j) e^{(a_i + a_j) z} / e_ij * F(h, q e^{hz}) F'(-h, q)`.
pub fn build_phi(f: &FixedPointSeries, g: &FixedPointSeries, eta: &Poly, zdeg: u32) -> Result<PhiSeries> {
    let a = &f.alpha;
    if g.alpha != *a {
        return Err(Error::Invalid("series restricted at different weights".into()));
    }
    let qdeg = f.qdeg.min(g.qdeg);
    let mut coeffs: BTreeMap<(u32, u32), LinRat<Q>> = BTreeMap::new();
    for (&(i, j), _) in &f.values {
        let w = restrict_at(eta, i, j, a);
        if w.is_zero() {
            return Err(Error::Invalid(format!("eta vanishes at the pair ({i}, {j})")));
        }
        let pre = w / euler_at(i, j, a) / q(2);
        let gm: Vec<LinRat<Q>> = (0..=qdeg).map(|d| g.at(i, j, d).negate_var()).collect();
        for d in 0..=qdeg {
            for d1 in 0..=d {
                let prod = f.at(i, j, d1).mul(&gm[(d - d1) as usize]).scale(&pre);
                // e^{(a_i + a_j + d1 h) z}
                let lin = UniPoly::from_coeffs(vec![&a[i] + &a[j], q(d1 as i64)]);
                let mut pw = UniPoly::one();
                for m in 0..=zdeg {
                    let t = prod.mul_poly(&pw).scale(&(Q::one() / factorial(m)));
                    let e = coeffs.entry((m, d)).or_insert_with(LinRat::zero);
                    *e = e.add(&t);
                    pw = &pw * &lin;
                }
            }
        }
    }
    Ok(PhiSeries { eta: eta.clone(), zdeg, qdeg, coeffs })
}

/// True when every coefficient is a polynomial in `h`; otherwise the offending keys.
pub fn check_mpc(phi: &PhiSeries) -> (bool, Vec<((u32, u32), LinRat<Q>)>) {
    let bad: Vec<_> = phi
        .coeffs
        .iter()
        .filter(|(_, v)| !v.is_polynomial())
        .map(|(k, v)| (*k, v.clone()))
        .collect();
    (bad.is_empty(), bad)
}

#[derive(Clone, Debug)]
pub struct UniquenessAudit {
    pub f_recursive: bool,
    pub g_recursive: bool,
    pub mpc: bool,
    pub q0_nonzero: bool,
}

impl UniquenessAudit {
    pub fn all_hold(&self) -> bool {
        self.f_recursive && self.g_recursive && self.mpc && self.q0_nonzero
    }
}

/// The hypotheses under which agreement modulo `h^-1` forces equality.
pub fn audit_uniqueness_hypotheses(
    f: &FixedPointSeries,
    cf: &RecursionCoeffs,
    g: &FixedPointSeries,
    cg: &RecursionCoeffs,
    eta: &Poly,
    zdeg: u32,
) -> Result<UniquenessAudit> {
    let phi = build_phi(f, g, eta, zdeg)?;
    Ok(UniquenessAudit {
        f_recursive: check_recursive(f, cf).all_pass(),
        g_recursive: check_recursive(g, cg).all_pass(),
        mpc: check_mpc(&phi).0,
        q0_nonzero: f.values.keys().all(|&(i, j)| !f.at(i, j, 0).is_zero()),
    })
}

/// Positive-degree coefficients with a nonzero `h^0` or `h^-1` term at some fixed point.
pub fn fano_vanishing(f: &FixedPointSeries) -> Result<Vec<((usize, usize), u32)>> {
    let mut bad = Vec::new();
    for (&(i, j), v) in &f.values {
        for (d, c) in v.iter().enumerate().skip(1) {
            let l = c.to_laurent(2)?;
            if !l.coeff(0)?.is_zero() || !l.coeff(-1)?.is_zero() {
                bad.push(((i, j), d as u32));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug)]
pub struct ResidueInternalEntry {
    pub m: u32,
    pub d: u32,
    pub hbar: Q,
    /// `(1/2) sum_{i != j} Res Res` equals the `Phi` coefficient at `h = hbar`.
    pub matches_phi: bool,
    /// Every slice sums to zero over all its residues, in both variables.
    pub residue_theorem: bool,
    /// The residue at `0` of every slice vanishes.
    pub zero_residue_vanishes: bool,
}

fn uni_poly_in(p: &Poly, v: usize) -> UniPoly<Q> {
    FRat::from_poly(p.clone()).to_urat(v).expect("univariate").num().clone()
}

/// Rebuild `Phi` from the integrand by iterated residues at `h = hbar` and check the
/// residue theorem on each one-variable slice.
#[allow(clippy::too_many_arguments)]
pub fn residue_internal(
    y: &QSeries<FRat>,
    zser: &QSeries<FRat>,
    eta: &Poly,
    alpha: &[Q],
    phi: &PhiSeries,
    hbar: &Q,
) -> Result<Vec<ResidueInternalEntry>> {
    let n = alpha.len();
    let nv = 3;
    let (x1, x2) = (Poly::var(X1, nv), Poly::var(X2, nv));
    let ysub: Vec<FRat> = (0..=phi.qdeg).map(|d| y.at(d).subst(H, hbar)).collect::<Result<_>>()?;
    let zsub: Vec<FRat> = (0..=phi.qdeg).map(|d| zser.at(d).subst(H, &-hbar)).collect::<Result<_>>()?;
    let diff = &x1 - &x2;
    let core = FRat::from_poly(&(-&(&diff * &diff)) * &eta.extend_vars(nv.max(eta.nvars())));
    let mut out = Vec::new();
    for d in 0..=phi.qdeg {
        for m in 0..=phi.zdeg {
            let mut p = FRat::zero();
            for d1 in 0..=d {
                let lin = &(&x1 + &x2) + &Poly::constant(hbar * q(d1 as i64), nv);
                let e = FRat::from_poly(lin.pow(m).scale(&(Q::one() / factorial(m))));
                p = &p + &(&(&ysub[d1 as usize] * &zsub[(d - d1) as usize]) * &e);
            }
            let p = &p * &core;
            let mut total = Q::zero();
            let mut theorem = true;
            let mut zero_ok = true;
            for (fixed, free) in [(X1, X2), (X2, X1)] {
                for i in 0..n {
                    let slice = p.subst(fixed, &alpha[i])?.to_urat(free)?;
                    let mut scal = Q::one();
                    let mut den = UniPoly::one();
                    for (k, ak) in alpha.iter().enumerate() {
                        den = den.mul_linear(ak);
                        if k != i {
                            scal *= &alpha[i] - ak;
                        }
                    }
                    let phi_i = slice.mul(&URat::new(UniPoly::constant(Q::one() / scal), den)?);
                    if fixed == X1 {
                        for (j, aj) in alpha.iter().enumerate() {
                            if j != i {
                                total += residue_at(&phi_i, aj)?;
                            }
                        }
                    }
                    zero_ok &= residue_at(&phi_i, &Q::zero())?.is_zero();
                    let mut split = Splitting { points: alpha.to_vec(), groups: Vec::new() };
                    split.points.push(Q::zero());
                    for l in 1..=d {
                        for c in [hbar.clone(), -hbar] {
                            let r = uni_poly_in(&crate::hypergeometric::hyper_den_factor(
                                &Poly::var(X1, nv),
                                &crate::hypergeometric::const_alpha(alpha),
                                l,
                                nv,
                            )
                            .subst(H, &c), X1);
                            let g = r.gcd(phi_i.den());
                            if g.degree().unwrap_or(0) > 0 && !split.groups.contains(&g) {
                                split.groups.push(g);
                            }
                        }
                    }
                    theorem &= residue_sum_check(&phi_i, &split)?.0;
                }
            }
            let want = phi.coeffs.get(&(m, d)).map_or(Ok(Q::zero()), |v| v.eval(hbar))?;
            out.push(ResidueInternalEntry {
                m,
                d,
                hbar: hbar.clone(),
                matches_phi: total / q(2) == want,
                residue_theorem: theorem,
                zero_residue_vanishes: zero_ok,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::default_alpha;
    use crate::hypergeometric::{
        a_at_fixed_points, build_y, const_alpha, default_alpha2, y_at_fixed_points, CISpec, Flavor, Kind, Mutation,
    };

    fn ci(a: &[u32]) -> CISpec {
        CISpec::new(a.to_vec()).unwrap()
    }

    #[test]
    fn y_is_recursive() {
        for (n, a) in [(3usize, vec![]), (3, vec![1]), (3, vec![1, 1, 1])] {
            let al = default_alpha(n);
            let a = ci(&a);
            for kind in [Kind::Dot, Kind::Ddot] {
                let f = y_at_fixed_points(kind, &a, &al, 2, None);
                let c = RecursionCoeffs::single(kind, Flavor::C, &a, &al, 2).unwrap();
                assert!(check_recursive(&f, &c).all_pass(), "{n} {a:?} {kind:?}");
            }
        }
    }

    #[test]
    fn two_variable_series_is_recursive() {
        let (a1, a2) = (default_alpha(3), default_alpha2(3));
        for rows in [vec![], vec![(1, 1)], vec![(2, 1)], vec![(1, 0), (0, 2)]] {
            for kind in [Kind::Dot, Kind::Ddot] {
                let f = a_at_fixed_points(kind, &rows, &a1, &a2, 2);
                let c = RecursionCoeffs::double(kind, &rows, &a1, &a2, 2).unwrap();
                assert!(check_recursive_double(&f, &c).all_pass(), "{rows:?} {kind:?}");
            }
        }
    }

    #[test]
    fn constructed_counterexample_fails() {
        let al = default_alpha(3);
        let mut values = BTreeMap::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let pole = LinRat::simple_pole(q(1), &al[2] - &al[1]);
                    values.insert((i, j), vec![LinRat::one(), pole]);
                }
            }
        }
        let f = FixedPointSeries { alpha: al.clone(), qdeg: 1, values };
        let c = RecursionCoeffs { kind: Kind::Dot, flavor: Flavor::C, entries: BTreeMap::new() };
        let rep = check_recursive(&f, &c);
        assert!(!rep.all_pass());
        assert!(rep.failures().all(|e| e.degree == (1, 0) && !e.remainder.nonzero_poles().is_empty()));
    }

    #[test]
    fn trivial_phi_has_no_h() {
        let al = default_alpha(3);
        let mut values = BTreeMap::new();
        for (i, j) in crate::cohomology::ordered_pairs(3) {
            values.insert((i, j), vec![LinRat::one()]);
        }
        let one = FixedPointSeries { alpha: al.clone(), qdeg: 0, values };
        let phi = build_phi(&one, &one, &Poly::one(3), 2).unwrap();
        for ((m, _), v) in &phi.coeffs {
            assert!(v.numerator().degree().unwrap_or(0) == 0 && v.is_polynomial());
            // (1/2) sum (a_i + a_j)^m / m! / e_ij
            let mut want = Q::zero();
            for (i, j) in crate::cohomology::ordered_pairs(3) {
                want += crate::scalar::pow_q(&(&al[i] + &al[j]), *m) / factorial(*m) / euler_at(i, j, &al);
            }
            assert_eq!(v.eval(&q(0)).unwrap(), want / q(2));
        }
    }

    #[test]
    fn spc_and_mpc_hold() {
        let n = 3;
        let al = default_alpha(n);
        let a = ci(&[1]);
        let yd = y_at_fixed_points(Kind::Dot, &a, &al, 2, None);
        let ydd = y_at_fixed_points(Kind::Ddot, &a, &al, 2, None);
        let phi = build_phi(&yd, &yd, &a.eta(3), 2).unwrap();
        assert!(check_mpc(&phi).0);
        let phi = build_phi(&yd, &ydd, &Poly::one(3), 2).unwrap();
        assert!(check_mpc(&phi).0);
    }

    #[test]
    fn perturbation_breaks_mpc() {
        let al = default_alpha(3);
        let a = ci(&[1]);
        let yd = y_at_fixed_points(Kind::Dot, &a, &al, 2, None);
        let mut bad = yd.clone();
        let v = bad.values.get_mut(&(0, 1)).unwrap();
        v[1] = v[1].add(&LinRat::new(UniPoly::one(), vec![(Q::zero(), 1)]));
        let (ok, offending) = check_mpc(&build_phi(&yd, &bad, &a.eta(3), 1).unwrap());
        assert!(!ok);
        assert!(offending.iter().any(|(k, _)| k.1 == 1));
    }

    #[test]
    fn eta_vanishing_is_rejected() {
        let al = vec![q(1), q(-1), q(5)];
        let f = y_at_fixed_points(Kind::Dot, &ci(&[]), &al, 0, None);
        let eta = &Poly::var(X1, 3) + &Poly::var(X2, 3);
        assert!(build_phi(&f, &f, &eta, 0).is_err());
    }

    #[test]
    fn audit_reports_each_hypothesis() {
        let al = default_alpha(3);
        let a = ci(&[1]);
        let yd = y_at_fixed_points(Kind::Dot, &a, &al, 2, None);
        let ydd = y_at_fixed_points(Kind::Ddot, &a, &al, 2, None);
        let cd = RecursionCoeffs::single(Kind::Dot, Flavor::C, &a, &al, 2).unwrap();
        let cdd = RecursionCoeffs::single(Kind::Ddot, Flavor::C, &a, &al, 2).unwrap();
        let audit = audit_uniqueness_hypotheses(&yd, &cd, &ydd, &cdd, &Poly::one(3), 2).unwrap();
        assert!(audit.all_hold());
        let mut z = yd.clone();
        z.values.get_mut(&(0, 1)).unwrap()[0] = LinRat::zero();
        let audit = audit_uniqueness_hypotheses(&z, &cd, &ydd, &cdd, &Poly::one(3), 2).unwrap();
        assert!(!audit.q0_nonzero);
    }

    #[test]
    fn mutation_is_caught() {
        let al = default_alpha(3);
        let a = ci(&[]);
        let m = y_at_fixed_points(Kind::Dot, &a, &al, 2, Some(Mutation { d: 2, d1: 1 }));
        let c = RecursionCoeffs::single(Kind::Dot, Flavor::C, &a, &al, 2).unwrap();
        let rec = check_recursive(&m, &c).all_pass();
        let mpc = check_mpc(&build_phi(&m, &m, &Poly::one(3), 2).unwrap()).0;
        assert!(!(rec && mpc));
    }

    #[test]
    fn fano_case_vanishes_mod_h_minus_two() {
        let al = default_alpha(4);
        let f = y_at_fixed_points(Kind::Dot, &ci(&[]), &al, 2, None);
        assert!(fano_vanishing(&f).unwrap().is_empty());
        let f = y_at_fixed_points(Kind::Dot, &ci(&[1, 1, 1, 1]), &al, 1, None);
        assert!(!fano_vanishing(&f).unwrap().is_empty());
    }

    #[test]
    fn residues_rebuild_phi() {
        let n = 3;
        let al = default_alpha(n);
        let a = ci(&[1]);
        let y = build_y(Kind::Dot, &a, &const_alpha(&al), 1).unwrap().payload;
        let z = build_y(Kind::Ddot, &a, &const_alpha(&al), 1).unwrap().payload;
        let yd = y_at_fixed_points(Kind::Dot, &a, &al, 1, None);
        let ydd = y_at_fixed_points(Kind::Ddot, &a, &al, 1, None);
        let phi = build_phi(&yd, &ydd, &Poly::one(3), 1).unwrap();
        for e in residue_internal(&y, &z, &Poly::one(3), &al, &phi, &q(5)).unwrap() {
            assert!(e.matches_phi && e.residue_theorem && e.zero_residue_vanishes, "{e:?}");
        }
    }
}
