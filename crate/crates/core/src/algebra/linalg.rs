//! Dense exact linear algebra: fields, polynomial rings, and truncated power series.

use crate::algebra::poly::SparsePoly;
use crate::algebra::series::QSeries;
use crate::error::{Error, Result};
use crate::scalar::{Field, Q};

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(F::zero(), |acc, (x, brow)| acc.add_ref(&x.mul_ref(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Clone>(a: &Matrix<F>) -> Matrix<F> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Solve `A X = B` by Gauss-Jordan elimination.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::Singular)?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv();
        for v in aug[col].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        let prow = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(prow.iter()) {
                *v = v.sub_ref(&f.mul_ref(p));
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..n + m].to_vec()).collect())
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    solve(a, &identity(a.len()))
}

/// Fraction-free solve over `Q[vars]`: returns `(det A, det A * A^-1 B)`.
pub fn bareiss_solve(
    a: &Matrix<SparsePoly<Q>>,
    b: &Matrix<SparsePoly<Q>>,
) -> Result<(SparsePoly<Q>, Matrix<SparsePoly<Q>>)> {
    let n = a.len();
    let nv = a.iter().flatten().map(SparsePoly::nvars).max().unwrap_or(0);
    let m = b.first().map_or(0, Vec::len);
    let mut u: Matrix<SparsePoly<Q>> = a
        .iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    let mut sign = false;
    let mut prev = SparsePoly::one(nv);
    for k in 0..n {
        let piv = (k..n).find(|&r| !u[r][k].is_zero()).ok_or(Error::Singular)?;
        if piv != k {
            u.swap(k, piv);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n + m {
                let t = &(&u[i][j] * &u[k][k]) - &(&u[i][k] * &u[k][j]);
                u[i][j] = t
                    .div_exact(&prev)
                    .ok_or_else(|| Error::NotDivisible("bareiss step".into()))?;
            }
            u[i][k] = SparsePoly::zero(nv);
        }
        prev = u[k][k].clone();
    }
    let det = u[n - 1][n - 1].clone();
    // Back substitution for det * x.
    let mut x: Matrix<SparsePoly<Q>> = vec![vec![SparsePoly::zero(nv); m]; n];
    for c in 0..m {
        for i in (0..n).rev() {
            let mut acc = &det * &u[i][n + c];
            for j in i + 1..n {
                acc = &acc - &(&u[i][j] * &x[j][c]);
            }
            x[i][c] = acc
                .div_exact(&u[i][i])
                .ok_or_else(|| Error::NotDivisible("back substitution".into()))?;
        }
    }
    let det = if sign { -&det } else { det };
    if sign {
        for row in x.iter_mut() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    Ok((det, x))
}

pub type SeriesMatrix<C> = Vec<Vec<QSeries<C>>>;

pub fn series_mat_mul<C: Field>(a: &SeriesMatrix<C>, b: &SeriesMatrix<C>, qdeg: u32) -> SeriesMatrix<C> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(QSeries::new(qdeg), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn series_identity<C: Field>(n: usize, qdeg: u32) -> SeriesMatrix<C> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { QSeries::constant(C::one(), qdeg) } else { QSeries::new(qdeg) })
                .collect()
        })
        .collect()
}

/// Inverse of `I + N` with `N = O(q)` by the Neumann iteration `X <- I - N X`.
pub fn series_mat_inverse<C: Field>(a: &SeriesMatrix<C>, qdeg: u32) -> Result<SeriesMatrix<C>> {
    let n = a.len();
    let id: SeriesMatrix<C> = series_identity(n, qdeg);
    for (i, row) in a.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let want = if i == j { C::one() } else { C::zero() };
            if s.at(0) != want {
                return Err(Error::CheckFailed("q^0 part of matrix is not the identity".into()));
            }
        }
    }
    let nmat: SeriesMatrix<C> = a
        .iter()
        .zip(id.iter())
        .map(|(ra, ri)| ra.iter().zip(ri.iter()).map(|(x, y)| x.sub(y)).collect())
        .collect();
    let mut x = id.clone();
    for _ in 0..qdeg {
        let nx = series_mat_mul(&nmat, &x, qdeg);
        x = id
            .iter()
            .zip(nx.iter())
            .map(|(ri, rn)| ri.iter().zip(rn.iter()).map(|(p, t)| p.sub(t)).collect())
            .collect();
    }
    Ok(x)
}

pub fn is_series_identity<C: Field>(a: &SeriesMatrix<C>) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, s)| {
            let off_const = s.iter().all(|(k, _)| *k == (0, 0, 0));
            off_const && if i == j { s.at(0).is_one() } else { s.is_zero() }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn rational_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_err());
        assert_eq!(mat_mul(&a, &inv), identity(2));
    }

    #[test]
    fn bareiss_matches_adjugate() {
        // [[a, 1], [1, b]] over Q[a, b]: det = ab - 1, adj = [[b, -1], [-1, a]].
        let a = SparsePoly::<Q>::var(0, 2);
        let b = SparsePoly::<Q>::var(1, 2);
        let one = SparsePoly::<Q>::one(2);
        let m = vec![vec![a.clone(), one.clone()], vec![one.clone(), b.clone()]];
        let id = vec![vec![one.clone(), SparsePoly::zero(2)], vec![SparsePoly::zero(2), one.clone()]];
        let (det, adj) = bareiss_solve(&m, &id).unwrap();
        assert_eq!(det, &(&a * &b) - &one);
        assert_eq!(adj, vec![vec![b.clone(), -&one], vec![-&one, a.clone()]]);
    }

    #[test]
    fn neumann_inverse_certificate() {
        let mut m: SeriesMatrix<Q> = series_identity(2, 3);
        m[0][1].set((1, 0, 0), q(1));
        m[1][0].set((2, 0, 0), q(3));
        m[1][1].set((1, 0, 0), q(-2));
        let inv = series_mat_inverse(&m, 3).unwrap();
        assert!(is_series_identity(&series_mat_mul(&m, &inv, 3)));
        assert!(is_series_identity(&series_mat_mul(&inv, &m, 3)));
    }
}
