//! Integer matrices, Smith normal form and lattices in `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> IntMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_matrix(m: &Matrix) -> Result<IntMatrix> {
        if m.ring() != Ring::Integers {
            return Err(Error::Unsupported(format!("integer matrix over {}", m.ring())));
        }
        Ok(IntMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            m.get(i, j).as_bigint().expect("integer entry").clone()
        }))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(Ring::Integers, self.rows, self.cols, |i, j| Scalar::Int(self[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in integer product");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> IntMatrix {
        IntMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn hstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        IntMatrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                o[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[source * self.cols + j] * c;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + source] * c;
            self.data[i * self.cols + target] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `U·A·V = S` with the inverses of the transforms.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Invariant factors that are not units: the torsion of `coker(A)`.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|d| !d.is_one()).collect()
    }
}

/// Smith normal form by repeated smallest-pivot elimination.
///
/// The pivot at each stage is the nonzero entry of least absolute value in
/// the trailing block, ties going to the lowest (row, column) index; pivots
/// are normalized positive.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut rank = 0;

    for k in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, u_inv, s, v, v_inv, rank };
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let mut dirty = false;
            for i in k + 1..m {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, k)] / &s[(k, k)]);
                s.add_row(i, k, &q);
                u.add_row(i, k, &q);
                u_inv.add_col(k, i, &-&q);
                dirty |= !s[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(k, j)] / &s[(k, k)]);
                s.add_col(j, k, &q);
                v.add_col(j, k, &q);
                v_inv.add_row(k, j, &-&q);
                dirty |= !s[(k, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..m).find(|&i| {
                (k + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(k, k)]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(k, i, &one);
                    u.add_row(k, i, &one);
                    u_inv.add_col(i, k, &-&one);
                }
                None => break,
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        rank += 1;
    }
    Smith { u, u_inv, s, v, v_inv, rank }
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith(a), a.cols, b)
}

fn solve_with(snf: &Smith, ncols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = snf.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); ncols];
    for (i, yi) in y.iter().enumerate() {
        if i < snf.rank {
            let d = &snf.s[(i, i)];
            if !yi.is_multiple_of(d) {
                return None;
            }
            z[i] = yi / d;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// A subgroup of `Z^dim`, stored by a basis (columns) and its Smith form.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    basis: IntMatrix,
    snf: Smith,
}

impl Lattice {
    /// The span of the columns of `gens`.
    pub fn span(gens: &IntMatrix) -> Lattice {
        let snf = smith(gens);
        let dim = gens.rows;
        let cols: Vec<Vec<BigInt>> = (0..snf.rank)
            .map(|i| {
                let d = &snf.s[(i, i)];
                snf.u_inv.column(i).into_iter().map(|x| x * d).collect()
            })
            .collect();
        let basis = IntMatrix::from_columns(dim, &cols);
        let snf = smith(&basis);
        Lattice { dim, basis, snf }
    }

    pub fn zero(dim: usize) -> Lattice {
        Lattice::span(&IntMatrix::zeros(dim, 0))
    }

    pub fn full(dim: usize) -> Lattice {
        Lattice::span(&IntMatrix::identity(dim))
    }

    /// `{ x : A x = 0 }`.
    pub fn kernel(a: &IntMatrix) -> Lattice {
        let snf = smith(a);
        let cols: Vec<Vec<BigInt>> = (snf.rank..a.cols).map(|j| snf.v.column(j)).collect();
        Lattice::span(&IntMatrix::from_columns(a.cols, &cols))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        solve_with(&self.snf, self.basis.cols, v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.basis.cols).all(|j| self.contains(&other.basis.column(j)))
    }

    pub fn same_as(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::span(&self.basis.hstack(&other.basis))
    }

    /// `A(L)` for `A: Z^dim -> Z^m`.
    pub fn image(&self, a: &IntMatrix) -> Lattice {
        Lattice::span(&a.mul(&self.basis))
    }

    /// `{ x in Z^n : A x in self }` for `A: Z^n -> Z^dim`.
    pub fn preimage(&self, a: &IntMatrix) -> Lattice {
        let n = a.cols;
        let neg_basis = IntMatrix::from_fn(self.dim, self.basis.cols, |i, j| -&self.basis[(i, j)]);
        let k = Lattice::kernel(&a.hstack(&neg_basis));
        let top = IntMatrix::from_fn(n, k.basis.cols, |i, j| k.basis[(i, j)].clone());
        Lattice::span(&top)
    }

    /// `L ∩ M` as the preimage of `M` under the inclusion of `L`.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let coords = other.preimage(&self.basis);
        Lattice::span(&self.basis.mul(&coords.basis))
    }

    /// Index of `self` inside `Z^dim`; `None` when not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.dim {
            return None;
        }
        Some(self.snf.invariant_factors().iter().product())
    }

    /// Index of `self` in a full-rank-relative sense: `[sup : self]` when
    /// `self ⊆ sup` and both have the same rank.
    pub fn index_in(&self, sup: &Lattice) -> Option<BigInt> {
        if !sup.contains_lattice(self) || sup.rank() != self.rank() {
            return None;
        }
        // coordinates of self in the basis of sup
        let coords = self.preimage_coordinates(sup);
        Some(coords.det().abs())
    }

    fn preimage_coordinates(&self, sup: &Lattice) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.basis.cols)
            .map(|j| solve_with(&sup.snf, sup.basis.cols, &self.basis.column(j)).expect("contained"))
            .collect();
        IntMatrix::from_columns(sup.basis.cols, &cols)
    }
}
