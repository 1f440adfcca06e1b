//! The subcommands. Each returns its payload and whether every requested check held.

use serde_json::{json, Value};

use qgr_core::algebra::poly::Vars;
use qgr_core::cohomology::{
    diagonal, equivariant_diagonal, localization_data, pairing_matrix, schur_poly, CohClass, GrContext, Part,
};
use qgr_core::hypergeometric::{
    a_at_fixed_points, build_y, build_y_closed, const_alpha, default_alpha2, normalization_i, specialize_to_k,
    y_at_fixed_points, zero_alpha, Flavor, Kind, Mutation, RecursionCoeffs,
};
use qgr_core::operator::{assemble_double_j, audit_normalization, orthogonality, Pipeline};
use qgr_core::scalar::{q, q_str};
use qgr_core::verifier::{
    build_phi, check_mpc, check_recursive, check_recursive_double, fano_vanishing, residue_internal,
};
use qgr_core::{FRat, Poly, QSeries, Q};

use crate::config::RunConfig;
use crate::render::{
    at_weights, class_series, class_str, expanded_series, frat_series, linrat_str, matrix, part_str,
    scalar_series,
};
use crate::Failure;

pub type Outcome = Result<(Value, bool), Failure>;

fn vars_for(cfg: &RunConfig) -> Vars {
    if cfg.weights().is_some() {
        Vars::standard(cfg.n)
    } else {
        Vars::xh()
    }
}

fn alpha_polys(cfg: &RunConfig) -> Vec<Poly> {
    match cfg.weights() {
        Some(w) => const_alpha(&w),
        None => zero_alpha(cfg.n),
    }
}

fn kind_of(name: &str) -> Kind {
    if name.contains("ddot") {
        Kind::Ddot
    } else {
        Kind::Dot
    }
}

fn select_parts(ctx: &GrContext, k: Option<u32>, j: Option<usize>) -> Result<Vec<Part>, Failure> {
    match (k, j) {
        (None, None) => Ok(ctx.basis()),
        (Some(k), j) => {
            let parts = ctx.basis_of_degree(k);
            match j {
                None => Ok(parts),
                Some(j) => parts
                    .get(j)
                    .map(|p| vec![*p])
                    .ok_or_else(|| Failure::Usage(format!("no basis class with k = {k}, j = {j}"))),
            }
        }
        (None, Some(_)) => Err(Failure::Usage("--j needs --k".into())),
    }
}

pub fn series(cfg: &RunConfig, kind: &str, k: Option<u32>, j: Option<usize>, expand: bool, dual: bool) -> Outcome {
    let vars = vars_for(cfg);
    let max_x = 2 * (cfg.n as u32 - 2);
    let emit = |s: &QSeries<FRat>| -> Result<Value, Failure> {
        if expand {
            Ok(expanded_series(s, max_x, cfg.depth)?)
        } else {
            Ok(frat_series(s, &vars))
        }
    };
    let kd = kind_of(kind);
    match kind {
        "dot-closed" | "ddot-closed" => {
            let s = build_y_closed(kd, cfg.n, &cfg.a, cfg.qdeg)?.payload;
            Ok((emit(&s)?, true))
        }
        "dot" | "ddot" => {
            let y = build_y(kd, &cfg.a, &alpha_polys(cfg), cfg.qdeg)?.payload;
            if !dual {
                return Ok((emit(&y)?, true));
            }
            if cfg.weights().is_some() {
                return Err(Failure::Usage("--dual compares against the closed form at alpha = 0".into()));
            }
            let c = build_y_closed(kd, cfg.n, &cfg.a, cfg.qdeg)?.payload;
            let equal = y == c;
            Ok((json!({"bar_transform": emit(&y)?, "closed": emit(&c)?, "equal": equal}), equal))
        }
        "k" | "k-ddot" => {
            let s = specialize_to_k(kd, &cfg.a, &alpha_polys(cfg), cfg.qdeg)?.payload;
            Ok((frat_series(&s, &vars), true))
        }
        "i-normalization" | "i-normalization-ddot" => {
            Ok((scalar_series(&normalization_i(kd, cfg.n, &cfg.a, cfg.qdeg)?), true))
        }
        "z" | "z-ddot" => {
            let y = build_y_closed(kd, cfg.n, &cfg.a, cfg.qdeg)?.payload;
            let inv = normalization_i(kd, cfg.n, &cfg.a, cfg.qdeg)?.inverse()?;
            let z = y.mul(&inv.map_into(|c| FRat::constant(c.clone())));
            Ok((emit(&z)?, true))
        }
        "y-gamma" | "y-gamma-ddot" => y_gamma(cfg, kd, k, j),
        other => Err(Failure::Usage(format!("unknown series kind {other:?}"))),
    }
}

pub fn y_gamma(cfg: &RunConfig, kind: Kind, k: Option<u32>, j: Option<usize>) -> Outcome {
    let p = Pipeline::build(kind, cfg.n, &cfg.a, cfg.qdeg, true)?;
    let parts = select_parts(&p.ctx, k, j)?;
    let out: Vec<Value> = parts
        .iter()
        .map(|part| {
            json!({
                "class": part_str(*part),
                "gamma": schur_poly(*part, 3).to_canonical(&Vars::xh()),
                "series": class_series(&p.y_gamma[part], &p.ctx),
            })
        })
        .collect();
    Ok((json!(out), true))
}

pub fn double_j(cfg: &RunConfig) -> Outcome {
    let d = Pipeline::build(Kind::Dot, cfg.n, &cfg.a, cfg.qdeg, true)?;
    let dd = Pipeline::build(Kind::Ddot, cfg.n, &cfg.a, cfg.qdeg, true)?;
    let ctx = &d.ctx;
    let basis = ctx.basis();
    let j = assemble_double_j(&d, &dd)?;
    let rows: Vec<Value> = j
        .numerator
        .iter()
        .map(|(&(q, e1, e2), m)| {
            let mut terms = Vec::new();
            for (a, row) in m.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    if *v != Q::from_integer(0.into()) {
                        terms.push(json!({"left": part_str(basis[a]), "right": part_str(basis[b]), "coeff": q_str(v)}));
                    }
                }
            }
            json!({"q": q, "h1": e1, "h2": e2, "terms": terms})
        })
        .collect();
    let lead = j.leading_is_diagonal(ctx)?;
    let anti = j.antidiagonal_failures(ctx)?;
    let orth = orthogonality(&d.y_gamma, &dd.y_gamma, ctx, cfg.qdeg)?;
    let ok = lead && anti.is_empty() && orth.pass;
    Ok((
        json!({
            "numerator": rows,
            "denominator": "h1+h2",
            "checks": {
                "leading_is_diagonal": lead,
                "antidiagonal_failures": anti,
                "orthogonality_offending": orth.offending.iter().map(|(q, e)| json!({"q": q, "h": e})).collect::<Vec<_>>(),
            },
        }),
        ok,
    ))
}

pub fn cohomology(cfg: &RunConfig, equivariant: bool) -> Outcome {
    let ctx = if equivariant { cfg.context()? } else { GrContext::new(cfg.n)? };
    let vars = Vars::standard(cfg.n);
    let basis: Vec<Value> = ctx
        .basis()
        .iter()
        .map(|p| json!({"class": part_str(*p), "poly": schur_poly(*p, 3).to_canonical(&Vars::xh())}))
        .collect();
    let mut out = json!({
        "basis": basis,
        "pairing": matrix(&pairing_matrix(&ctx)?),
        "diagonal": matrix(&diagonal(&ctx)?.tensor),
    });
    if equivariant {
        let w = ctx.alpha_or_err()?.to_vec();
        let fixed: Vec<Value> = localization_data(&ctx)
            .iter()
            .map(|f| {
                json!({
                    "pair": [f.pair.0 + 1, f.pair.1 + 1],
                    "phi": at_weights(&f.phi, &w).to_canonical(&vars),
                    "euler_normal": at_weights(&f.euler_normal, &w).to_canonical(&vars),
                    "det_euler": at_weights(&f.det_euler, &w).to_canonical(&vars),
                })
            })
            .collect();
        out["fixed_points"] = json!(fixed);
        out["equivariant_diagonal"] = matrix(&equivariant_diagonal(&ctx)?.tensor);
    }
    Ok((out, true))
}

// ---------------------------------------------------------------------------
// verify

pub const SUITES: [&str; 6] = ["recursivity", "mpc", "operator-norms", "fano-vanishing", "orthogonality", "residue-internal"];

struct Checks(Vec<Value>);

impl Checks {
    fn push(&mut self, name: &str, case: String, pass: bool, detail: Value) {
        self.0.push(json!({"check": name, "case": case, "pass": pass, "detail": detail}));
    }

    fn all_pass(&self) -> bool {
        self.0.iter().all(|c| c["pass"] == json!(true))
    }
}

pub fn verify(cfg: &RunConfig, suite: &str, mutation: Option<Mutation>) -> Outcome {
    let suites: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Failure::Usage(format!("unknown suite {suite:?}")));
    };
    let ctx = cfg.context()?;
    let w = ctx.alpha_or_err()?.to_vec();
    let mut checks = Checks(Vec::new());
    for s in suites {
        match s {
            "recursivity" => recursivity(cfg, &w, mutation, &mut checks)?,
            "mpc" => mpc(cfg, &w, mutation, &mut checks)?,
            "operator-norms" => operator_norms(cfg, &mut checks)?,
            "fano-vanishing" => fano(cfg, &w, mutation, &mut checks)?,
            "orthogonality" => orth(cfg, &mut checks)?,
            "residue-internal" => residues(cfg, &w, &mut checks)?,
            _ => unreachable!(),
        }
    }
    let ok = checks.all_pass();
    Ok((json!(checks.0), ok))
}

/// `mutation` flips one summand of the Dot series only.
fn recursivity(cfg: &RunConfig, w: &[Q], mutation: Option<Mutation>, out: &mut Checks) -> Result<(), Failure> {
    for kind in [Kind::Dot, Kind::Ddot] {
        let m = if kind == Kind::Dot { mutation } else { None };
        let f = y_at_fixed_points(kind, &cfg.a, w, cfg.qdeg, m);
        let c = RecursionCoeffs::single(kind, Flavor::C, &cfg.a, w, cfg.qdeg)?;
        let r = check_recursive(&f, &c);
        let bad: Vec<Value> = r
            .failures()
            .map(|e| {
                json!({
                    "pair": [e.pair.0 + 1, e.pair.1 + 1],
                    "degree": [e.degree.0, e.degree.1],
                    "remainder": linrat_str(&e.remainder),
                    "error": e.error,
                })
            })
            .collect();
        out.push("recursivity", format!("Y {}", kind.name()), r.all_pass(), json!(bad));
        let rows: Vec<(u32, u32)> = cfg.a.a.iter().map(|&r| (r, r)).collect();
        let w2 = default_alpha2(cfg.n);
        let f2 = a_at_fixed_points(kind, &rows, w, &w2, cfg.qdeg);
        let c2 = RecursionCoeffs::double(kind, &rows, w, &w2, cfg.qdeg)?;
        let r2 = check_recursive_double(&f2, &c2);
        let bad2: Vec<Value> =
            r2.failures().map(|e| json!({"degree": [e.degree.0, e.degree.1], "remainder": linrat_str(&e.remainder)})).collect();
        out.push("recursivity", format!("A {} two-variable", kind.name()), r2.all_pass(), json!(bad2));
    }
    Ok(())
}

fn mpc_detail(bad: &[((u32, u32), qgr_core::LinRat<Q>)]) -> Value {
    json!(bad.iter().map(|((m, d), v)| json!({"z": m, "q": d, "coefficient": linrat_str(v)})).collect::<Vec<_>>())
}

fn mpc(cfg: &RunConfig, w: &[Q], mutation: Option<Mutation>, out: &mut Checks) -> Result<(), Failure> {
    let yd = y_at_fixed_points(Kind::Dot, &cfg.a, w, cfg.qdeg, mutation);
    let ydd = y_at_fixed_points(Kind::Ddot, &cfg.a, w, cfg.qdeg, None);
    let (ok, bad) = check_mpc(&build_phi(&yd, &yd, &cfg.a.eta(3), cfg.zdeg)?);
    out.push("mpc", "self pairing of Y dot, eta = <a>(x1+x2)^l".into(), ok, mpc_detail(&bad));
    let (ok, bad) = check_mpc(&build_phi(&yd, &ydd, &Poly::one(3), cfg.zdeg)?);
    out.push("mpc", "Y dot with Y ddot, eta = 1".into(), ok, mpc_detail(&bad));
    Ok(())
}

fn operator_norms(cfg: &RunConfig, out: &mut Checks) -> Result<(), Failure> {
    for kind in [Kind::Dot, Kind::Ddot] {
        let p = Pipeline::build(kind, cfg.n, &cfg.a, cfg.qdeg, true)?;
        let base = specialize_to_k(kind, &cfg.a, &zero_alpha(cfg.n), cfg.qdeg)?.payload;
        let bad = audit_normalization(&p.family, &base, 2.min(p.ctx.top()))?;
        let detail: Vec<Value> =
            bad.iter().map(|(pp, r, d)| json!({"p": [pp.0, pp.1], "r": [r.0, r.1], "q": d})).collect();
        out.push("operator-norms", format!("normalization {}", kind.name()), bad.is_empty(), json!(detail));
        let certs: Vec<u32> = p.cal_d.iter().filter(|(_, c)| !c.certificate).map(|(k, _)| *k).collect();
        out.push("operator-norms", format!("J inverse {}", kind.name()), certs.is_empty(), json!(certs));
        let q0: Vec<String> = p.opexp.iter().filter(|(_, o)| !o.q0_is_delta()).map(|(k, _)| part_str(*k)).collect();
        out.push("operator-norms", format!("q^0 expansion table {}", kind.name()), q0.is_empty(), json!(q0));
        out.push("operator-norms", format!("homogeneity {}", kind.name()), p.opexp_homogeneous(), Value::Null);
        for sc in p.structure.values() {
            let ok = sc.level_zero_is_delta() && sc.residual_zero && sc.unitriangular;
            out.push(
                "operator-norms",
                format!("structure coefficients {} {}", kind.name(), part_str(sc.source)),
                ok,
                json!({"level_zero_delta": sc.level_zero_is_delta(), "residual_zero": sc.residual_zero, "unitriangular": sc.unitriangular}),
            );
        }
    }
    Ok(())
}

fn fano(cfg: &RunConfig, w: &[Q], mutation: Option<Mutation>, out: &mut Checks) -> Result<(), Failure> {
    if cfg.a.sum() as usize + 2 > cfg.n {
        out.push("fano-vanishing", "not applicable: |a| > n - 2".into(), true, Value::Null);
        return Ok(());
    }
    let f = y_at_fixed_points(Kind::Dot, &cfg.a, w, cfg.qdeg, mutation);
    let bad = fano_vanishing(&f)?;
    let detail: Vec<Value> = bad.iter().map(|((i, j), d)| json!({"pair": [i + 1, j + 1], "q": d})).collect();
    out.push("fano-vanishing", "Y dot = 1 mod h^-2".into(), bad.is_empty(), json!(detail));
    Ok(())
}

fn orth(cfg: &RunConfig, out: &mut Checks) -> Result<(), Failure> {
    let d = Pipeline::build(Kind::Dot, cfg.n, &cfg.a, cfg.qdeg, true)?;
    let dd = Pipeline::build(Kind::Ddot, cfg.n, &cfg.a, cfg.qdeg, true)?;
    let r = orthogonality(&d.y_gamma, &dd.y_gamma, &d.ctx, cfg.qdeg)?;
    let detail: Vec<Value> = r.offending.iter().map(|(q, e)| json!({"q": q, "h": e})).collect();
    out.push("orthogonality", "sum Y_gamma(h) (x) Y_gamma^c(-h) = [Delta]".into(), r.pass, json!(detail));
    let j = assemble_double_j(&d, &dd)?;
    out.push("orthogonality", "double J leading term".into(), j.leading_is_diagonal(&d.ctx)?, Value::Null);
    let anti = j.antidiagonal_failures(&d.ctx)?;
    out.push("orthogonality", "double J numerator at h2 = -h1".into(), anti.is_empty(), json!(anti));
    let leading: Vec<String> = d
        .y_gamma
        .iter()
        .filter(|(p, y)| y.get(0, 0) != CohClass::basis_element(&d.ctx, **p))
        .map(|(p, y)| format!("{}: {}", part_str(*p), class_str(&y.get(0, 0), &d.ctx)))
        .collect();
    out.push("orthogonality", "q^0 of Y_gamma is gamma".into(), leading.is_empty(), json!(leading));
    Ok(())
}

fn residues(cfg: &RunConfig, w: &[Q], out: &mut Checks) -> Result<(), Failure> {
    let hbar = q(5);
    let ca = const_alpha(w);
    let y = build_y(Kind::Dot, &cfg.a, &ca, cfg.qdeg)?.payload;
    let z = build_y(Kind::Ddot, &cfg.a, &ca, cfg.qdeg)?.payload;
    let yd = y_at_fixed_points(Kind::Dot, &cfg.a, w, cfg.qdeg, None);
    let ydd = y_at_fixed_points(Kind::Ddot, &cfg.a, w, cfg.qdeg, None);
    let phi = build_phi(&yd, &ydd, &Poly::one(3), cfg.zdeg)?;
    for e in residue_internal(&y, &z, &Poly::one(3), w, &phi, &hbar)? {
        let ok = e.matches_phi && e.residue_theorem && e.zero_residue_vanishes;
        out.push(
            "residue-internal",
            format!("z^{} q^{} at h = {}", e.m, e.d, q_str(&e.hbar)),
            ok,
            json!({"matches_phi": e.matches_phi, "residue_theorem": e.residue_theorem, "zero_residue_vanishes": e.zero_residue_vanishes}),
        );
    }
    Ok(())
}
