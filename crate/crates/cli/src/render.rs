//! Canonical strings and JSON fragments. Every number is an exact string.

use serde_json::{json, Value};

use qgr_core::algebra::poly::Vars;
use qgr_core::algebra::xexpand::expand_series_in_x;
use qgr_core::cohomology::{CohClass, GrContext, Part};
use qgr_core::operator::ClassSeries;
use qgr_core::scalar::q_str;
use qgr_core::{FRat, LinRat, Monomial, Poly, QSeries, RatFunc, Result, UniPoly, Q};

pub fn part_str(p: Part) -> String {
    format!("s({},{})", p.0, p.1)
}

pub fn frat_str(f: &FRat, vars: &Vars) -> String {
    f.to_ratfunc().to_canonical(vars)
}

fn uni_in_h(p: &UniPoly<Q>) -> Poly {
    Poly::from_terms(3, p.coeffs().iter().enumerate().map(|(e, c)| (Monomial::from_exps(&[0, 0, e as u32]), c.clone())))
}

/// A rational function of `h` as `num` or `(num)/(den)`.
pub fn linrat_str(f: &LinRat<Q>) -> String {
    RatFunc::new(uni_in_h(f.numerator()), uni_in_h(&f.denominator()))
        .expect("nonzero denominator")
        .to_canonical(&Vars::xh())
}

pub fn class_str(c: &CohClass, ctx: &GrContext) -> String {
    c.to_poly(ctx, 3).to_canonical(&Vars::xh())
}

pub fn matrix(m: &[Vec<Q>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(q_str).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn scalar_series(s: &QSeries<Q>) -> Value {
    json!((0..=s.qdeg()).map(|d| json!({"q": d, "value": q_str(&s.at(d))})).collect::<Vec<_>>())
}

pub fn frat_series(s: &QSeries<FRat>, vars: &Vars) -> Value {
    let rows: Vec<Value> = if s.is_two_q() {
        s.iter().map(|(&(d1, d2, _), c)| json!({"q1": d1, "q2": d2, "value": frat_str(c, vars)})).collect()
    } else {
        (0..=s.qdeg()).map(|d| json!({"q": d, "value": frat_str(&s.at(d), vars)})).collect()
    };
    json!(rows)
}

/// `x`-expansion of each `q`-coefficient: `(q, x-exponents, h-power) -> coefficient`.
pub fn expanded_series(s: &QSeries<FRat>, max_x: u32, depth: i64) -> Result<Value> {
    let mut rows = Vec::new();
    for d in 0..=s.qdeg() {
        let ex = expand_series_in_x(&s.at(d).to_ratfunc(), max_x, depth)?;
        for (&(a, b), l) in &ex {
            for (e, c) in l.terms() {
                rows.push(json!({"q": d, "x": [a, b], "h": e, "coeff": q_str(c)}));
            }
        }
    }
    Ok(json!(rows))
}

pub fn class_series(s: &ClassSeries, ctx: &GrContext) -> Value {
    json!(s
        .terms
        .iter()
        .map(|(&(d, e), c)| json!({"q": d, "h": e, "value": class_str(c, ctx)}))
        .collect::<Vec<_>>())
}

/// Substitute the weights `a1..an` of the standard ring.
pub fn at_weights(p: &Poly, w: &[Q]) -> Poly {
    w.iter().enumerate().fold(p.clone(), |acc, (m, v)| acc.subst(Vars::alpha(m + 1), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgr_core::scalar::q;

    #[test]
    fn linrat_strings() {
        let f = LinRat::simple_pole(q(2), q(3));
        assert_eq!(linrat_str(&f), "(2)/(h-3)");
        assert_eq!(linrat_str(&LinRat::constant(q(5))), "5");
    }
}
