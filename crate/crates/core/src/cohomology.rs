//! Cohomology of `Gr(2, n)`: two-row Schur basis, Poincare pairing, diagonal classes,
//! torus fixed points and Atiyah-Bott integration.

use crate::algebra::linalg::{bareiss_solve, identity, inverse, mat_mul, transpose, Matrix};
use crate::algebra::poly::{Monomial, Vars, X1, X2};
use crate::algebra::ratfunc::Poly;
use crate::error::{Error, Result};
use crate::scalar::{pow_q, q, Q};
use num_traits::{One, Zero};

/// A partition `(l1, l2)` with `l1 >= l2 >= 0`.
pub type Part = (u32, u32);

/// `n` together with optional concrete torus weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GrContext {
    n: usize,
    alpha: Option<Vec<Q>>,
}

impl GrContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid(format!("need n >= 3, got {n}")));
        }
        Ok(GrContext { n, alpha: None })
    }

    pub fn with_alpha(n: usize, alpha: Vec<Q>) -> Result<Self> {
        let mut ctx = Self::new(n)?;
        if alpha.len() != n {
            return Err(Error::Invalid(format!("expected {n} weights, got {}", alpha.len())));
        }
        for i in 0..n {
            for j in 0..i {
                if alpha[i] == alpha[j] {
                    return Err(Error::NonGeneric(format!("repeated weight at positions {j}, {i}")));
                }
            }
        }
        ctx.alpha = Some(alpha);
        Ok(ctx)
    }

    /// Weights `7, 49, 343, ...`.
    pub fn with_default_alpha(n: usize) -> Result<Self> {
        Self::with_alpha(n, default_alpha(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Option<&[Q]> {
        self.alpha.as_deref()
    }

    pub fn alpha_or_err(&self) -> Result<&[Q]> {
        self.alpha().ok_or_else(|| Error::Invalid("concrete weights required".into()))
    }

    /// Complex dimension `2(n-2)`.
    pub fn top(&self) -> u32 {
        2 * (self.n as u32 - 2)
    }

    /// All box partitions, by degree and then by decreasing first part.
    pub fn basis(&self) -> Vec<Part> {
        (0..=self.top()).flat_map(|k| self.basis_of_degree(k)).collect()
    }

    /// `gamma^k_j` is the `j`-th entry.
    pub fn basis_of_degree(&self, k: u32) -> Vec<Part> {
        let w = self.n as u32 - 2;
        (0..=k.min(w))
            .rev()
            .map(|l1| (l1, k - l1))
            .filter(|&(l1, l2)| l2 <= l1)
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn index_of(&self, p: Part) -> Option<usize> {
        self.basis().iter().position(|&b| b == p)
    }

    /// Position of `gamma^k_j` in [`Self::basis`].
    pub fn index_kj(&self, k: u32, j: usize) -> usize {
        self.index_of(self.basis_of_degree(k)[j]).expect("box partition")
    }

    pub fn complement(&self, p: Part) -> Part {
        let w = self.n as u32 - 2;
        (w - p.1, w - p.0)
    }

    /// Every weight combination `a_j - a_m + (l/d)(a_k - a_j)` with `(l, m) != (d, k)`
    /// and `l <= d <= qdeg` must be nonzero.
    pub fn check_generic(&self, qdeg: u32) -> Result<()> {
        let a = self.alpha_or_err()?;
        let n = self.n;
        for d in 1..=qdeg as i64 {
            for j in 0..n {
                for k in 0..n {
                    if k == j {
                        continue;
                    }
                    for l in 1..=d {
                        for m in 0..n {
                            if (l, m) == (d, k) {
                                continue;
                            }
                            let v = &a[j] - &a[m] + (&a[k] - &a[j]) * Q::new(l.into(), d.into());
                            if v.is_zero() {
                                return Err(Error::NonGeneric(format!(
                                    "weight combination vanishes at j={j} k={k} m={m} l={l} d={d}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn default_alpha(n: usize) -> Vec<Q> {
    (1..=n as u32).map(|m| pow_q(&q(7), m)).collect()
}

/// Unordered fixed points `{i, j}`, `i < j`, in lexicographic order.
pub fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Ordered fixed points `(i, j)`, `i != j`.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// Complete homogeneous polynomial `h_m(x1, x2)` in a ring of `nv` variables.
pub fn h_poly(m: i64, nv: usize) -> Poly {
    if m < 0 {
        return Poly::zero(nv);
    }
    let m = m as u32;
    let mut p = Poly::zero(nv);
    for a in 0..=m {
        p.add_term(Monomial::var(X1, a).mul(&Monomial::var(X2, m - a)), Q::one());
    }
    p
}

/// `s_(a,b) = h_a h_b - h_(a+1) h_(b-1)`.
pub fn schur_poly(p: Part, nv: usize) -> Poly {
    let (a, b) = (p.0 as i64, p.1 as i64);
    &(&h_poly(a, nv) * &h_poly(b, nv)) - &(&h_poly(a + 1, nv) * &h_poly(b - 1, nv))
}

/// Expansion of a symmetric polynomial in `x1, x2` over two-row Schur polynomials,
/// coefficients in the remaining variables.
pub fn schur_expand(p: &Poly) -> Result<Vec<(Part, Poly)>> {
    if p.swap_vars(X1, X2) != *p {
        return Err(Error::NotSymmetric);
    }
    let nv = p.nvars().max(2);
    // Coefficient of x1^a x2^b as a polynomial in the other variables.
    let mut rest = p.clone();
    let mut out = Vec::new();
    loop {
        // Largest x1-exponent among the remaining terms, ties broken by x-degree.
        let lead = rest
            .terms()
            .map(|(m, _)| (m.exp(X1) + m.exp(X2), m.exp(X1), m.exp(X2)))
            .filter(|&(_, a, b)| a >= b)
            .max_by_key(|&(t, a, _)| (t, a));
        let Some((_, a, b)) = lead else {
            break;
        };
        let mut coeff = Poly::zero(nv);
        for (m, c) in rest.terms() {
            if m.exp(X1) == a && m.exp(X2) == b {
                coeff.add_term(m.with_exp(X1, 0).with_exp(X2, 0), c.clone());
            }
        }
        let s = schur_poly((a, b), nv);
        rest = &rest - &(&s * &coeff);
        out.push(((a, b), coeff));
    }
    if !rest.is_zero() {
        return Err(Error::NotSymmetric);
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// A class in the Schur basis of [`GrContext::basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    pub coeffs: Vec<Q>,
}

impl CohClass {
    pub fn zero(ctx: &GrContext) -> Self {
        CohClass { coeffs: vec![Q::zero(); ctx.dim()] }
    }

    pub fn basis_element(ctx: &GrContext, p: Part) -> Self {
        let mut c = Self::zero(ctx);
        c.coeffs[ctx.index_of(p).expect("box partition")] = Q::one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        CohClass { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        CohClass { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// The class as a polynomial in `x1, x2`.
    pub fn to_poly(&self, ctx: &GrContext, nv: usize) -> Poly {
        let mut p = Poly::zero(nv);
        for (c, b) in self.coeffs.iter().zip(ctx.basis()) {
            if !c.is_zero() {
                p = &p + &schur_poly(b, nv).scale(c);
            }
        }
        p
    }
}

/// Class of a symmetric polynomial with rational coefficients in `H*(Gr(2, n))`.
pub fn schur_reduce(p: &Poly, ctx: &GrContext) -> Result<CohClass> {
    let mut out = CohClass::zero(ctx);
    let w = ctx.n as u32 - 2;
    for (part, c) in schur_expand(p)? {
        if !c.is_constant() {
            return Err(Error::Invalid("schur_reduce expects rational coefficients".into()));
        }
        if part.0 > w {
            continue;
        }
        out.coeffs[ctx.index_of(part).expect("box partition")] = c.constant_term();
    }
    Ok(out)
}

/// `int_Gr a b`: only complementary pairs of basis classes contribute, each with 1.
pub fn pairing(a: &CohClass, b: &CohClass, ctx: &GrContext) -> Q {
    let basis = ctx.basis();
    let mut acc = Q::zero();
    for (i, p) in basis.iter().enumerate() {
        if a.coeffs[i].is_zero() {
            continue;
        }
        let j = ctx.index_of(ctx.complement(*p)).expect("complement in box");
        acc += &a.coeffs[i] * &b.coeffs[j];
    }
    acc
}

/// Pairing matrix computed from products of Schur polynomials and reduction.
pub fn pairing_matrix(ctx: &GrContext) -> Result<Matrix<Q>> {
    let basis = ctx.basis();
    let top = ctx.basis_of_degree(ctx.top())[0];
    let mut m = vec![vec![Q::zero(); basis.len()]; basis.len()];
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let prod = &schur_poly(*a, 2) * &schur_poly(*b, 2);
            let c = schur_reduce(&prod, ctx)?;
            m[i][j] = c.coeffs[ctx.index_of(top).expect("point class")].clone();
        }
    }
    Ok(m)
}

/// Tensor `sum g[a][b] s_a (x) s_b` over the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalClass {
    pub tensor: Matrix<Q>,
    pub equivariant: bool,
}

/// `sum_l s_l (x) s_(l^c)`, obtained as the inverse of the pairing matrix.
pub fn diagonal(ctx: &GrContext) -> Result<DiagonalClass> {
    let g = pairing_matrix(ctx)?;
    Ok(DiagonalClass { tensor: inverse(&g)?, equivariant: false })
}

/// Fixed point `p_ij` with its dual class and weights, symbolic in `a1..an`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointData {
    pub pair: (usize, usize),
    /// `prod_(k != i,j) (x1 - a_k) prod_(l != i,j) (x2 - a_l)`.
    pub phi: Poly,
    /// `e(T Gr)` at the point.
    pub euler_normal: Poly,
    /// `a_i + a_j`.
    pub det_euler: Poly,
}

fn avar(m: usize, nv: usize) -> Poly {
    Poly::var(Vars::alpha(m + 1), nv)
}

/// Symbolic fixed-point data in the ring `x1, x2, h, z, a1..an`.
pub fn localization_data(ctx: &GrContext) -> Vec<FixedPointData> {
    let n = ctx.n;
    let nv = Vars::standard(n).len();
    ordered_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let mut phi = Poly::one(nv);
            let mut e = Poly::one(nv);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                phi = &phi * &(&Poly::var(X1, nv) - &avar(k, nv));
                phi = &phi * &(&Poly::var(X2, nv) - &avar(k, nv));
                e = &e * &(&avar(i, nv) - &avar(k, nv));
                e = &e * &(&avar(j, nv) - &avar(k, nv));
            }
            FixedPointData {
                pair: (i, j),
                phi,
                euler_normal: e,
                det_euler: &avar(i, nv) + &avar(j, nv),
            }
        })
        .collect()
}

/// Euler class of the tangent space at `p_ij` for concrete weights.
pub fn euler_at(i: usize, j: usize, a: &[Q]) -> Q {
    let mut e = Q::one();
    for (k, ak) in a.iter().enumerate() {
        if k != i && k != j {
            e *= (&a[i] - ak) * (&a[j] - ak);
        }
    }
    e
}

/// `eta(x1 = a_i, x2 = a_j)` with symbolic weights.
pub fn restrict_fixed_point(eta: &Poly, i: usize, j: usize, n: usize) -> Poly {
    let nv = eta.nvars().max(Vars::standard(n).len());
    let e = eta.extend_vars(nv);
    e.subst_poly(X1, &avar(i, nv)).subst_poly(X2, &avar(j, nv))
}

/// `eta(a_i, a_j)` for concrete weights; other variables must be absent.
pub fn restrict_at(eta: &Poly, i: usize, j: usize, a: &[Q]) -> Q {
    let mut pt = vec![Q::zero(); eta.nvars().max(2)];
    pt[X1] = a[i].clone();
    pt[X2] = a[j].clone();
    for (m, c) in a.iter().enumerate() {
        let v = Vars::alpha(m + 1);
        if v < pt.len() {
            pt[v] = c.clone();
        }
    }
    eta.eval(&pt)
}

/// `(1/2) sum_(i != j) eta(a_i, a_j) / e(T Gr)|_(p_ij)`.
pub fn ab_integrate(eta: &Poly, ctx: &GrContext) -> Result<Q> {
    let a = ctx.alpha_or_err()?;
    let mut acc = Q::zero();
    for (i, j) in ordered_pairs(ctx.n) {
        acc += restrict_at(eta, i, j, a) / euler_at(i, j, a);
    }
    Ok(acc / q(2))
}

/// `S[pair][b] = s_b(a_i, a_j)` over unordered pairs and the basis.
pub fn restriction_matrix(ctx: &GrContext) -> Result<Matrix<Q>> {
    let a = ctx.alpha_or_err()?;
    let basis = ctx.basis();
    Ok(unordered_pairs(ctx.n)
        .into_iter()
        .map(|(i, j)| basis.iter().map(|b| restrict_at(&schur_poly(*b, 2), i, j, a)).collect())
        .collect())
}

/// Recovers classes from their values at the unordered fixed points.
#[derive(Clone, Debug)]
pub struct ClassSolver {
    s_inv: Matrix<Q>,
}

impl ClassSolver {
    pub fn new(ctx: &GrContext) -> Result<Self> {
        let s = restriction_matrix(ctx)?;
        let s_inv = inverse(&s).map_err(|_| Error::NonGeneric("restriction matrix is singular".into()))?;
        Ok(ClassSolver { s_inv })
    }

    /// `values[p]` is the restriction to the `p`-th unordered pair.
    pub fn class_of(&self, values: &[Q]) -> CohClass {
        let coeffs = self
            .s_inv
            .iter()
            .map(|row| row.iter().zip(values).fold(Q::zero(), |acc, (x, v)| acc + x * v))
            .collect();
        CohClass { coeffs }
    }
}

/// `g = S^-1 E S^-T` for concrete weights.
pub fn equivariant_diagonal(ctx: &GrContext) -> Result<DiagonalClass> {
    let a = ctx.alpha_or_err()?;
    let s = restriction_matrix(ctx)?;
    let s_inv = inverse(&s).map_err(|_| Error::NonGeneric("restriction matrix is singular".into()))?;
    let pairs = unordered_pairs(ctx.n);
    let mut e: Matrix<Q> = identity(pairs.len());
    for (p, &(i, j)) in pairs.iter().enumerate() {
        e[p][p] = euler_at(i, j, a);
    }
    let g = mat_mul(&mat_mul(&s_inv, &e), &transpose(&s_inv));
    Ok(DiagonalClass { tensor: g, equivariant: true })
}

/// Symbolic `g` over `Q[a1..an]` in the standard ring: `adj(S) E adj(S)^T / det(S)^2`.
pub fn equivariant_diagonal_symbolic(ctx: &GrContext) -> Result<Matrix<Poly>> {
    let n = ctx.n;
    if n > 4 {
        return Err(Error::Invalid("symbolic diagonal is limited to n <= 4".into()));
    }
    let nv = Vars::standard(n).len();
    let basis = ctx.basis();
    let pairs = unordered_pairs(n);
    let s: Matrix<Poly> = pairs
        .iter()
        .map(|&(i, j)| basis.iter().map(|b| restrict_fixed_point(&schur_poly(*b, nv), i, j, n)).collect())
        .collect();
    let id: Matrix<Poly> = (0..pairs.len())
        .map(|r| (0..pairs.len()).map(|c| if r == c { Poly::one(nv) } else { Poly::zero(nv) }).collect())
        .collect();
    let (det, adj) = bareiss_solve(&s, &id)?;
    let data = localization_data(ctx);
    let e_of = |i: usize, j: usize| {
        data.iter().find(|f| f.pair == (i, j)).expect("fixed point").euler_normal.clone()
    };
    let det2 = &det * &det;
    let m = basis.len();
    let mut g = vec![vec![Poly::zero(nv); m]; m];
    for (r, row) in g.iter_mut().enumerate() {
        for (c, out) in row.iter_mut().enumerate() {
            let mut acc = Poly::zero(nv);
            for (p, &(i, j)) in pairs.iter().enumerate() {
                acc = &acc + &(&(&adj[r][p] * &adj[c][p]) * &e_of(i, j));
            }
            *out = acc
                .div_exact(&det2)
                .ok_or_else(|| Error::NotDivisible("diagonal coefficient".into()))?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i, 2)
    }

    #[test]
    fn basis_sizes_and_order() {
        let c3 = GrContext::new(3).unwrap();
        assert_eq!(c3.basis(), vec![(0, 0), (1, 0), (1, 1)]);
        let c4 = GrContext::new(4).unwrap();
        assert_eq!(c4.basis().len(), 6);
        assert_eq!(c4.basis_of_degree(2), vec![(2, 0), (1, 1)]);
        // gamma^k_j pairs with gamma^(top-k)_j
        for k in 0..=c4.top() {
            for (j, p) in c4.basis_of_degree(k).into_iter().enumerate() {
                assert_eq!(c4.basis_of_degree(c4.top() - k)[j], c4.complement(p));
            }
        }
    }

    #[test]
    fn jacobi_trudi_matches_bialternant() {
        // s_(a,b)(x1, x2) = (x1 x2)^b h_(a-b)
        for a in 0..5u32 {
            for b in 0..=a {
                let direct = &(&x(0) * &x(1)).pow(b) * &h_poly((a - b) as i64, 2);
                assert_eq!(schur_poly((a, b), 2), direct);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let c3 = GrContext::new(3).unwrap();
        let h2 = h_poly(2, 2);
        assert!(schur_reduce(&h2, &c3).unwrap().is_zero());
        let sq = (&x(0) + &x(1)).pow(2);
        assert_eq!(schur_reduce(&sq, &c3).unwrap(), CohClass::basis_element(&c3, (1, 1)));
        assert_eq!(schur_reduce(&Poly::one(2), &c3).unwrap(), CohClass::basis_element(&c3, (0, 0)));
        assert_eq!(schur_reduce(&x(0), &c3), Err(Error::NotSymmetric));
    }

    #[test]
    fn diagonal_for_n3() {
        let c3 = GrContext::new(3).unwrap();
        let d = diagonal(&c3).unwrap();
        let anti = vec![
            vec![q(0), q(0), q(1)],
            vec![q(0), q(1), q(0)],
            vec![q(1), q(0), q(0)],
        ];
        assert_eq!(d.tensor, anti);
    }

    #[test]
    fn fixed_point_data_n3() {
        let c3 = GrContext::new(3).unwrap();
        let data = localization_data(&c3);
        let nv = Vars::standard(3).len();
        let f12 = data.iter().find(|f| f.pair == (0, 1)).unwrap();
        let x1 = Poly::var(X1, nv);
        let x2 = Poly::var(X2, nv);
        let a = |m| avar(m, nv);
        assert_eq!(f12.phi, &(&x1 - &a(2)) * &(&x2 - &a(2)));
        assert_eq!(f12.euler_normal, &(&a(0) - &a(2)) * &(&a(1) - &a(2)));
        assert_eq!(f12.det_euler, &a(0) + &a(1));
        // phi_12 restricts to the Euler class at p_12 and to zero at p_13
        assert_eq!(restrict_fixed_point(&f12.phi, 0, 1, 3), f12.euler_normal);
        assert!(restrict_fixed_point(&f12.phi, 0, 2, 3).is_zero());
    }

    #[test]
    fn localization_integrals() {
        let ctx = GrContext::with_default_alpha(3).unwrap();
        let data = localization_data(&ctx);
        assert_eq!(ab_integrate(&data[0].phi, &ctx).unwrap(), q(1));
        assert_eq!(ab_integrate(&Poly::one(2), &ctx).unwrap(), q(0));
    }

    #[test]
    fn genericity_guard() {
        let bad = GrContext::with_alpha(3, vec![q(0), q(1), q(2)]).unwrap();
        // a_1 - a_0 + (1/2)(a_2 - a_1) ... vanishes for equally spaced weights
        assert!(bad.check_generic(2).is_err());
        assert!(GrContext::with_default_alpha(4).unwrap().check_generic(3).is_ok());
        assert!(GrContext::with_alpha(3, vec![q(1), q(1), q(2)]).is_err());
    }

    #[test]
    fn symbolic_diagonal_specializes() {
        let ctx = GrContext::with_default_alpha(3).unwrap();
        let g = equivariant_diagonal_symbolic(&ctx).unwrap();
        let num = equivariant_diagonal(&ctx).unwrap();
        let a = ctx.alpha().unwrap();
        let nv = Vars::standard(3).len();
        let mut pt = vec![q(0); nv];
        for m in 0..3 {
            pt[Vars::alpha(m + 1)] = a[m].clone();
        }
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(g[r][c].eval(&pt), num.tensor[r][c]);
            }
        }
        // alpha -> 0 recovers the ordinary diagonal
        let zero = vec![q(0); nv];
        let d = diagonal(&ctx).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(g[r][c].eval(&zero), d.tensor[r][c]);
            }
        }
    }
}
