use proptest::prelude::*;

use qgr_core::algebra::laurent::Laurent;
use qgr_core::algebra::xexpand::{expand_series_in_x, resum};
use qgr_core::cohomology::{ab_integrate, schur_poly, schur_reduce, GrContext};
use qgr_core::residue::{residue_at, residue_sum_check, Splitting};
use qgr_core::scalar::{q, qr};
use qgr_core::{Monomial, Poly, RatFunc, UniPoly, URat, Q};

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

/// Random polynomial in `x1, x2, h` of total degree at most 2.
fn poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small(), 10).prop_map(|c| {
        let mut exps = Vec::new();
        for t in 0..=2u32 {
            for a in 0..=t {
                for b in 0..=t - a {
                    exps.push([a, b, t - a - b]);
                }
            }
        }
        Poly::from_terms(3, exps.iter().zip(c).map(|(e, v)| (Monomial::from_exps(e), q(v))))
    })
}

/// `c h + e + a x1 + b x2` with `(c, e) != (0, 0)`.
fn unit_factor() -> impl Strategy<Value = Poly> {
    (1i64..=3, small(), small(), small()).prop_map(|(c, e, a, b)| {
        Poly::from_terms(
            3,
            [
                (Monomial::from_exps(&[0, 0, 1]), q(c)),
                (Monomial::from_exps(&[0, 0, 0]), q(e)),
                (Monomial::from_exps(&[1, 0, 0]), q(a)),
                (Monomial::from_exps(&[0, 1, 0]), q(b)),
            ],
        )
    })
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly3(), prop::collection::vec(unit_factor(), 1..=2)).prop_map(|(n, fs)| {
        let d = fs.iter().fold(Poly::one(3), |acc, f| &acc * f);
        RatFunc::new(n, d).unwrap()
    })
}

fn uni(c: &[i64]) -> UniPoly<Q> {
    UniPoly::from_coeffs(c.iter().map(|&x| q(x)).collect())
}

/// Random symmetric polynomial in `x1, x2` as a combination of Schur polynomials.
fn symmetric(max_part: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small(), ((max_part + 1) * (max_part + 2) / 2) as usize).prop_map(move |c| {
        let mut acc = Poly::zero(3);
        let mut it = c.into_iter();
        for a in 0..=max_part {
            for b in 0..=a {
                acc = &acc + &schur_poly((a, b), 3).scale(&q(it.next().unwrap()));
            }
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFunc::constant(q(0)));
    }

    #[test]
    fn x_expansion_resums(f in ratfunc()) {
        let (m, depth) = (3, 4);
        let s = expand_series_in_x(&f, m, depth).unwrap();
        let back = resum(&s, depth).unwrap();
        let diff = expand_series_in_x(&(&f - &back), m, depth).unwrap();
        for l in diff.values() {
            prop_assert!(l.terms().all(|(e, c)| *e < 1 - depth || c == &q(0)));
        }
    }

    #[test]
    fn laurent_expansion_is_multiplicative(
        n1 in prop::collection::vec(small(), 1..4),
        n2 in prop::collection::vec(small(), 1..4),
        r1 in small(),
        r2 in small(),
    ) {
        let depth = 6;
        let d1 = uni(&[r1, 1]).mul_linear(&q(r2));
        let d2 = uni(&[r2, 2, 1]);
        let (a, b) = (uni(&n1), uni(&n2));
        let la = Laurent::from_rational(&a, &d1, depth).unwrap();
        let lb = Laurent::from_rational(&b, &d2, depth).unwrap();
        let lab = Laurent::from_rational(&(&a * &b), &(&d1 * &d2), depth).unwrap();
        let prod = la.mul(&lb);
        let common = prod.valid_from().max(lab.valid_from());
        for e in common..=prod.top().unwrap_or(0).max(lab.top().unwrap_or(0)) {
            prop_assert_eq!(prod.coeff(e).unwrap(), lab.coeff(e).unwrap());
        }
    }

    #[test]
    fn schur_reduce_is_a_ring_map(n in 3usize..=5, a in symmetric(3), b in symmetric(3)) {
        let ctx = GrContext::new(n).unwrap();
        let ra = schur_reduce(&a, &ctx).unwrap().to_poly(&ctx, 3);
        let rb = schur_reduce(&b, &ctx).unwrap().to_poly(&ctx, 3);
        prop_assert_eq!(
            schur_reduce(&(&a * &b), &ctx).unwrap(),
            schur_reduce(&(&ra * &rb), &ctx).unwrap()
        );
    }

    #[test]
    fn ab_integral_ignores_the_weights(
        n in 3usize..=5,
        c in prop::collection::vec(small(), 10),
        s1 in 1i64..50,
        s2 in 1i64..50,
    ) {
        let top = 2 * (n as u32 - 2);
        let parts: Vec<(u32, u32)> = (0..=top / 2).map(|b| (top - b, b)).collect();
        let eta = parts
            .iter()
            .zip(&c)
            .fold(Poly::zero(3), |acc, (p, v)| &acc + &schur_poly(*p, 3).scale(&q(*v)));
        let alpha = |s: i64| -> Vec<Q> { (1..=n as i64).map(|m| q(s * m * m + m * 13 + 1)).collect() };
        let c1 = GrContext::with_alpha(n, alpha(s1)).unwrap();
        let c2 = GrContext::with_alpha(n, alpha(s2 + 100)).unwrap();
        prop_assert_eq!(ab_integrate(&eta, &c1).unwrap(), ab_integrate(&eta, &c2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residues_with_prescribed_poles_sum_to_zero(
        poles in prop::collection::btree_set(-6i64..=6, 1..=4),
        mults in prop::collection::vec(1u32..=3, 4),
        num in prop::collection::vec(small(), 1..=8),
    ) {
        let pts: Vec<Q> = poles.iter().map(|&p| qr(p, 2)).collect();
        let den = pts
            .iter()
            .zip(&mults)
            .fold(UniPoly::one(), |acc, (p, m)| &acc * &UniPoly::linear(p).pow(*m));
        let f = URat::new(uni(&num), den).unwrap();
        let (ok, _) = residue_sum_check(&f, &Splitting { points: pts.clone(), groups: vec![] }).unwrap();
        prop_assert!(ok);
        for (p, m) in pts.iter().zip(&mults) {
            if *m == 1 && f.pole_order(p) == 1 {
                let want = f.num().eval(p) / f.den().derivative().eval(p);
                prop_assert_eq!(residue_at(&f, p).unwrap(), want);
            }
        }
    }
}
