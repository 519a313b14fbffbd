use std::fmt;

use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense matrix over a backend ring. Acts on column vectors: a map
/// `R^cols -> R^rows`. Empty shapes (`0 x n`, `n x 0`) are legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix { ring, rows, cols, data: vec![Scalar::zero(ring); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(ring);
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                debug_assert_eq!(x.ring(), ring);
                data.push(x);
            }
        }
        Matrix { ring, rows, cols, data }
    }

    /// Builds a matrix from rows; all entries must lie in `ring` and all rows
    /// must have `cols` entries.
    pub fn from_rows(ring: Ring, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for x in row {
                ring.ensure_same(x.ring())?;
                data.push(x);
            }
        }
        Ok(Matrix { ring, rows: nrows, cols, data })
    }

    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(ring, rows.len(), cols, |i, j| Scalar::from_i64(ring, rows[i][j]))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        debug_assert_eq!(x.ring(), self.ring);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(other.ring)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| -x)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(other.ring)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = Scalar::zero(self.ring);
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if *b == zero {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| c * x)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Applies an entrywise map into another ring.
    pub fn map_into(&self, ring: Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose under the ring involution: the dual map `s*`.
    pub fn star_transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).involute())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(other.ring)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        Ok(Matrix::from_fn(self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(other.ring)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        Ok(Matrix::from_fn(self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    /// `[[a, b], [c, d]]` from four blocks with compatible shapes.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        let ring = a.ring;
        Matrix::block(
            a,
            &Matrix::zeros(ring, a.rows, b.cols),
            &Matrix::zeros(ring, b.rows, a.cols),
            b,
        )
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.ring, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    /// Kronecker product `self ⊗ other` over a commutative ring.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(other.ring)?;
        let (r2, c2) = other.shape();
        Ok(Matrix::from_fn(self.ring, self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        }))
    }

    /// Entrywise augmentation of a free-algebra matrix.
    pub fn augment(&self) -> Result<Matrix> {
        let base = Scalar::base_field_of(self.ring)
            .ok_or_else(|| Error::Unsupported(format!("augmentation on {}", self.ring)))?;
        self.map_into(base.ring(), Scalar::augment)
    }

    /// Image under `Z -> Q` (or identity on fields).
    pub fn to_fraction_field(&self) -> Result<Matrix> {
        self.map_into(self.ring.fraction_field()?, Scalar::to_fraction_field)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
