//! Exact scalar and matrix arithmetic over the backend rings.

mod freepoly;
mod intmat;
pub mod linalg;
mod matrix;
mod parse;
mod ring;
mod scalar;

pub use freepoly::{FreePoly, Word};
pub use intmat::{smith, solve_integer, IntMatrix, Lattice, Smith};
pub use matrix::Matrix;
pub use parse::parse_element;
pub use ring::{BaseField, Ring};
pub use scalar::{Fp, Scalar};

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Involute,
}

/// Dispatches a scalar operation; binary operations need `b`.
pub fn scalar_op(op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
    let rhs = || b.ok_or_else(|| Error::invalid("operands", "binary operation needs two operands"));
    match op {
        ScalarOp::Add => a.checked_add(rhs()?),
        ScalarOp::Mul => a.checked_mul(rhs()?),
        ScalarOp::Neg => Ok(-a),
        ScalarOp::Involute => Ok(a.involute()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOp {
    Add,
    Mul,
    StarTranspose,
}

pub fn mat_op(op: MatrixOp, a: &Matrix, b: Option<&Matrix>) -> Result<Matrix> {
    let rhs = || b.ok_or_else(|| Error::invalid("operands", "binary operation needs two operands"));
    match op {
        MatrixOp::Add => a.add(rhs()?),
        MatrixOp::Mul => a.mul(rhs()?),
        MatrixOp::StarTranspose => Ok(a.star_transpose()),
    }
}

/// `U·A·V = S` over Z, returned as matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
    pub invariant_factors: Vec<BigInt>,
}

pub fn smith_normal_form(a: &Matrix) -> Result<SmithNormalForm> {
    let f = smith(&IntMatrix::from_matrix(a)?);
    Ok(SmithNormalForm {
        u: f.u.to_matrix(),
        s: f.s.to_matrix(),
        v: f.v.to_matrix(),
        invariant_factors: f.invariant_factors(),
    })
}

/// Solution of `A x = b` over a field together with the kernel and rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSolution {
    pub x: Matrix,
    pub kernel: Matrix,
    pub rank: usize,
}

pub fn solve_field(a: &Matrix, b: &Matrix) -> Result<FieldSolution> {
    let x = linalg::solve(a, b)?;
    Ok(FieldSolution { x, kernel: linalg::kernel(a)?, rank: linalg::rank(a)? })
}
