//! Residues of univariate rational functions on the Riemann sphere.

use crate::algebra::unipoly::UniPoly;
use crate::algebra::urat::URat;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Where a residue was taken.
#[derive(Clone, Debug, PartialEq)]
pub enum PoleLocation<F: Field> {
    Point(F),
    Infinity,
    /// Sum over all roots of an irreducible-or-not factor with no roots in the base field.
    RootsOf(UniPoly<F>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueReport<F: Field> {
    pub pole_location: PoleLocation<F>,
    pub order: u32,
    pub residue: F,
}

/// Coefficient of `(z - z0)^-1` in the expansion of `f` at `z0`.
pub fn residue_at<F: Field>(f: &URat<F>, z0: &F) -> Result<F> {
    let m = f.pole_order(z0);
    if m == 0 {
        return Ok(F::zero());
    }
    // z -> z + z0, then f = N(z) / (z^m D(z)) with D(0) != 0.
    let num = f.num().shift(z0);
    let den = f.den().shift(z0);
    let rest = UniPoly::from_coeffs(den.coeffs()[m as usize..].to_vec());
    let inv = rest
        .series_inverse(m as usize)
        .ok_or_else(|| Error::Invalid("non-isolated singularity".into()))?;
    Ok((&num.truncate(m as usize) * &inv).coeff(m as usize - 1))
}

/// `-Res_{w=0} w^-2 f(1/w)`.
pub fn residue_at_infinity<F: Field>(f: &URat<F>) -> F {
    if f.is_zero() {
        return F::zero();
    }
    let dn = f.num().degree().unwrap_or(0);
    let dd = f.den().degree().unwrap_or(0);
    // f = z^(dn-dd) * rev(num)(w) / rev(den)(w) with w = 1/z; only the z^-1 term matters.
    if dn + 1 < dd {
        return F::zero();
    }
    let k = dn + 1 - dd;
    let rn = UniPoly::from_coeffs(f.num().coeffs().iter().rev().cloned().collect());
    let rd = UniPoly::from_coeffs(f.den().coeffs().iter().rev().cloned().collect());
    let inv = rd.series_inverse(k + 1).expect("monic reversed denominator");
    (&rn * &inv).coeff(k).neg_ref()
}

/// Sum of the residues of `f` at all roots of `r`, where `r^m` exactly divides the
/// denominator and the cofactor is prime to `r`.
pub fn grouped_residue<F: Field>(f: &URat<F>, r: &UniPoly<F>, m: u32) -> Result<F> {
    let rm = r.pow(m);
    let (w, rem) = f.den().div_rem(&rm);
    if !rem.is_zero() {
        return Err(Error::NotDivisible("pole factor".into()));
    }
    let (g, s, _) = w.ext_gcd(&rm);
    if g.degree() != Some(0) {
        return Err(Error::UnsupportedPole("pole factor shares roots with the cofactor".into()));
    }
    // Partial fraction piece A / r^m with A = num * w^-1 mod r^m.
    let a = (f.num() * &s).div_rem(&rm).1;
    let top = rm.degree().unwrap_or(0);
    if top == 0 {
        return Ok(F::zero());
    }
    Ok(a.coeff(top - 1).div_ref(&rm.lead()))
}

/// How the denominator of `f` splits: explicit points plus factors whose roots are
/// summed as a group.
#[derive(Clone, Debug, Default)]
pub struct Splitting<F: Field> {
    pub points: Vec<F>,
    pub groups: Vec<UniPoly<F>>,
}

/// Every residue of `f` and whether they sum to zero.
pub fn residue_sum_check<F: Field>(
    f: &URat<F>,
    split: &Splitting<F>,
) -> Result<(bool, Vec<ResidueReport<F>>)> {
    let mut left = f.den().clone();
    let mut reports = Vec::new();
    let mut seen: Vec<F> = Vec::new();
    for p in &split.points {
        if seen.contains(p) {
            continue;
        }
        seen.push(p.clone());
        let m = f.pole_order(p);
        for _ in 0..m {
            left = left.div_linear(p).0;
        }
        if m > 0 {
            reports.push(ResidueReport {
                pole_location: PoleLocation::Point(p.clone()),
                order: m,
                residue: residue_at(f, p)?,
            });
        }
    }
    for r in &split.groups {
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut m = 0;
        loop {
            let (qt, rem) = left.div_rem(r);
            if !rem.is_zero() {
                break;
            }
            left = qt;
            m += 1;
        }
        if m > 0 {
            reports.push(ResidueReport {
                pole_location: PoleLocation::RootsOf(r.monic()),
                order: m,
                residue: grouped_residue(f, r, m)?,
            });
        }
    }
    if left.degree().unwrap_or(0) > 0 {
        return Err(Error::UnsupportedPole(format!("unsplit denominator factor {left:?}")));
    }
    reports.push(ResidueReport {
        pole_location: PoleLocation::Infinity,
        order: 1,
        residue: residue_at_infinity(f),
    });
    let total = reports.iter().fold(F::zero(), |acc, r| acc.add_ref(&r.residue));
    Ok((total.is_zero(), reports))
}
