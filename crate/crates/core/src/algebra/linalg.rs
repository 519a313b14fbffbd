//! Exact Gaussian elimination over the field backends (Q, F_p).

use super::matrix::Matrix;
use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Reduced row echelon form with the pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn ensure_field(ring: Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("field elimination over {ring}")))
    }
}

pub fn rref(a: &Matrix) -> Result<Echelon> {
    ensure_field(a.ring())?;
    let (m, n) = a.shape();
    let mut rows = a.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse()?;
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..n {
                let v = &rows[i][j] - &(&factor * &rows[r][j]);
                rows[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { reduced: Matrix::from_rows(a.ring(), n, rows)?, pivots })
}

pub fn rank(a: &Matrix) -> Result<usize> {
    Ok(rref(a)?.rank())
}

/// Basis of `{ x : A x = 0 }` as the columns of the returned matrix.
pub fn kernel(a: &Matrix) -> Result<Matrix> {
    let e = rref(a)?;
    let n = a.cols();
    let ring = a.ring();
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(ring, n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, Scalar::one(ring));
        for (row, &p) in e.pivots.iter().enumerate() {
            basis.set(p, k, -e.reduced.get(row, f));
        }
    }
    Ok(basis)
}

/// Solves `A X = B` for a particular `X`; [`Error::NoSolution`] when the
/// system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.ring().ensure_same(b.ring())?;
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!("solve: {} rows vs {} rows", a.rows(), b.rows())));
    }
    let n = a.cols();
    let aug = a.hstack(b)?;
    let e = rref(&aug)?;
    if e.pivots.iter().any(|&p| p >= n) {
        return Err(Error::NoSolution);
    }
    let mut x = Matrix::zeros(a.ring(), n, b.cols());
    for (row, &p) in e.pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, e.reduced.get(row, n + j).clone());
        }
    }
    Ok(x)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let id = Matrix::identity(a.ring(), a.rows());
    match solve(a, &id) {
        Ok(x) if rank(a)? == a.rows() => Ok(x),
        Ok(_) | Err(Error::NoSolution) => Err(Error::Singular(a.to_string())),
        Err(e) => Err(e),
    }
}

pub fn det(a: &Matrix) -> Result<Scalar> {
    ensure_field(a.ring())?;
    if !a.is_square() {
        return Err(Error::Shape("determinant of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut rows = a.to_rows();
    let mut d = Scalar::one(a.ring());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Ok(Scalar::zero(a.ring()));
        };
        if p != c {
            rows.swap(p, c);
            d = -d;
        }
        d = &d * &rows[c][c];
        let inv = rows[c][c].inverse()?;
        for i in c + 1..n {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for j in c..n {
                let v = &rows[i][j] - &(&f * &rows[c][j]);
                rows[i][j] = v;
            }
        }
    }
    Ok(d)
}
