//! Cohn triples `(f, s, g)` standing for `f s⁻¹ g ∈ σ⁻¹R`.

use std::fmt;

use super::linrep::LinearRepresentation;
use super::ore::OreFraction;
use super::sigma::{sigma_validate, SigmaSet, SigmaVerdict};
use crate::algebra::{linalg, FreePoly, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

/// `f: 1×n`, `s: n×n`, `g: n×1`. The size-0 triple is the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohnTriple {
    sigma: SigmaSet,
    f: Matrix,
    s: Matrix,
    g: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleOp {
    Add,
    Mul,
    Neg,
}

impl CohnTriple {
    /// Checks shapes and that `s` is σ-invertible.
    pub fn new(sigma: &SigmaSet, f: Matrix, s: Matrix, g: Matrix) -> Result<CohnTriple> {
        let t = CohnTriple::new_unchecked(sigma, f, s, g)?;
        if let SigmaVerdict::Rejected(reason) = sigma_validate(sigma, &t.s)? {
            return Err(Error::SigmaRejected(reason));
        }
        Ok(t)
    }

    /// Checks shapes and rings only; `s` is not validated against σ.
    pub fn new_unchecked(sigma: &SigmaSet, f: Matrix, s: Matrix, g: Matrix) -> Result<CohnTriple> {
        let ring = sigma.ring();
        for m in [&f, &s, &g] {
            ring.ensure_same(m.ring())?;
        }
        let n = s.rows();
        if !s.is_square() || f.shape() != (1, n) || g.shape() != (n, 1) {
            return Err(Error::Shape(format!(
                "triple shapes f {:?}, s {:?}, g {:?}",
                f.shape(),
                s.shape(),
                g.shape()
            )));
        }
        Ok(CohnTriple { sigma: sigma.clone(), f, s, g })
    }

    pub fn zero(sigma: &SigmaSet) -> CohnTriple {
        let ring = sigma.ring();
        CohnTriple {
            sigma: sigma.clone(),
            f: Matrix::zeros(ring, 1, 0),
            s: Matrix::zeros(ring, 0, 0),
            g: Matrix::zeros(ring, 0, 1),
        }
    }

    /// `(r, 1, 1)`; zero maps to the size-0 triple.
    pub fn from_scalar(sigma: &SigmaSet, r: Scalar) -> Result<CohnTriple> {
        let ring = sigma.ring();
        ring.ensure_same(r.ring())?;
        if r.is_zero() {
            return Ok(CohnTriple::zero(sigma));
        }
        let one = Matrix::identity(ring, 1);
        let f = Matrix::from_rows(ring, 1, vec![vec![r]])?;
        Ok(CohnTriple { sigma: sigma.clone(), f, s: one.clone(), g: one })
    }

    pub fn one(sigma: &SigmaSet) -> CohnTriple {
        CohnTriple::from_scalar(sigma, Scalar::one(sigma.ring())).expect("unit triple")
    }

    pub fn sigma(&self) -> &SigmaSet {
        &self.sigma
    }

    pub fn ring(&self) -> Ring {
        self.sigma.ring()
    }

    pub fn size(&self) -> usize {
        self.s.rows()
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    fn ensure_compatible(&self, other: &CohnTriple) -> Result<()> {
        self.ring().ensure_same(other.ring())?;
        if self.sigma != other.sigma {
            return Err(Error::SigmaMismatch);
        }
        Ok(())
    }

    /// `[f f']·diag(s, s')⁻¹·[g; g']`
    pub fn add(&self, other: &CohnTriple) -> Result<CohnTriple> {
        self.ensure_compatible(other)?;
        Ok(CohnTriple {
            sigma: self.sigma.clone(),
            f: self.f.hstack(&other.f)?,
            s: Matrix::block_diag(&self.s, &other.s)?,
            g: self.g.vstack(&other.g)?,
        })
    }

    /// `[f 0]·[[s, -g f'], [0, s']]⁻¹·[0; g']`
    pub fn mul(&self, other: &CohnTriple) -> Result<CohnTriple> {
        self.ensure_compatible(other)?;
        if self.size() == 0 || other.size() == 0 {
            return Ok(CohnTriple::zero(&self.sigma));
        }
        let ring = self.ring();
        let (n, m) = (self.size(), other.size());
        let off = self.g.mul(&other.f)?.neg();
        Ok(CohnTriple {
            sigma: self.sigma.clone(),
            f: self.f.hstack(&Matrix::zeros(ring, 1, m))?,
            s: Matrix::block(&self.s, &off, &Matrix::zeros(ring, m, n), &other.s)?,
            g: Matrix::zeros(ring, n, 1).vstack(&other.g)?,
        })
    }

    pub fn neg(&self) -> CohnTriple {
        CohnTriple { sigma: self.sigma.clone(), f: self.f.neg(), s: self.s.clone(), g: self.g.clone() }
    }

    pub fn sub(&self, other: &CohnTriple) -> Result<CohnTriple> {
        self.add(&other.neg())
    }

    /// `f·s⁻¹·g` as an Ore fraction, by an exact solve over the fraction field.
    pub fn eval_ore(&self) -> Result<OreFraction> {
        if !self.sigma.is_ore() {
            return Err(Error::Unsupported(format!("Ore evaluation over {}", self.ring())));
        }
        if self.size() == 0 {
            return OreFraction::from_scalar(&self.sigma, Scalar::zero(self.ring()));
        }
        let s = self.s.to_fraction_field()?;
        let g = self.g.to_fraction_field()?;
        let f = self.f.to_fraction_field()?;
        let y = match linalg::inverse(&s) {
            Ok(inv) => inv.mul(&g)?,
            Err(Error::Singular(_)) => {
                return Err(Error::Singular(format!("s = {} is not invertible over the fraction field", self.s)))
            }
            Err(e) => return Err(e),
        };
        let value = f.mul(&y)?.get(0, 0).clone();
        match value {
            Scalar::Rat(q) => OreFraction::from_rational(&self.sigma, &q),
            other => OreFraction::from_scalar(&self.sigma, other),
        }
    }

    /// Linear representation of the rational series `f·s⁻¹·g` (free algebra).
    pub fn to_linrep(&self) -> Result<LinearRepresentation> {
        LinearRepresentation::from_triple(self)
    }

    /// `s⁻¹ ≡ (Σ_{m ≤ len} Aᵐ)·ε(s)⁻¹` modulo words longer than `len`, where
    /// `A = I − ε(s)⁻¹·s` has no constant terms (free algebra only).
    pub fn truncated_inverse(&self, len: usize) -> Result<Matrix> {
        truncated_inverse(&self.sigma, &self.s, len)
    }
}

/// Decomposes an augmentation-invertible `s` as `ε(s)·(I − A)`.
/// Returns `(ε(s)⁻¹ embedded as constants, A)`.
pub(crate) fn split_augmentation(sigma: &SigmaSet, s: &Matrix) -> Result<(Matrix, Matrix)> {
    let ring = sigma.ring();
    let constant_inverse = match sigma_validate(sigma, s)? {
        SigmaVerdict::Augmented { constant_inverse } => constant_inverse,
        SigmaVerdict::Rejected(reason) => return Err(Error::SigmaRejected(reason)),
        SigmaVerdict::UnitDeterminant(_) => {
            return Err(Error::Unsupported(format!("series expansion over {ring}")))
        }
    };
    let einv = embed_constants(ring, &constant_inverse)?;
    let a = Matrix::identity(ring, s.rows()).sub(&einv.mul(s)?)?;
    Ok((einv, a))
}

/// Embeds a base-field matrix as constants of the free algebra `ring`.
pub(crate) fn embed_constants(ring: Ring, m: &Matrix) -> Result<Matrix> {
    let Ring::FreeAlgebra { base, num_vars } = ring else {
        return Err(Error::Unsupported(format!("constant embedding into {ring}")));
    };
    m.map_into(ring, |c| Ok(Scalar::Free(FreePoly::constant(base, num_vars, c.clone()))))
}

pub fn truncated_inverse(sigma: &SigmaSet, s: &Matrix, len: usize) -> Result<Matrix> {
    let (einv, a) = split_augmentation(sigma, s)?;
    let ring = sigma.ring();
    let n = s.rows();
    // Horner: S = I + A(I + A(...))
    let mut acc = Matrix::identity(ring, n);
    for _ in 0..len {
        acc = Matrix::identity(ring, n).add(&mul_truncated(&a, &acc, len)?)?;
    }
    mul_truncated(&acc, &einv, len)
}

pub(crate) fn mul_truncated(a: &Matrix, b: &Matrix, len: usize) -> Result<Matrix> {
    let ring = a.ring();
    if a.cols() != b.rows() {
        return Err(Error::Shape("truncated product".into()));
    }
    Ok(Matrix::from_fn(ring, a.rows(), b.cols(), |i, j| {
        let mut sum = Scalar::zero(ring);
        for k in 0..a.cols() {
            let (Some(x), Some(y)) = (a.get(i, k).as_free(), b.get(k, j).as_free()) else {
                unreachable!("free algebra entries")
            };
            sum = &sum + &Scalar::Free(x.mul_truncated(y, len));
        }
        sum
    }))
}

pub fn triple_op(op: TripleOp, a: &CohnTriple, b: Option<&CohnTriple>) -> Result<CohnTriple> {
    let rhs = || b.ok_or_else(|| Error::invalid("operands", "binary operation needs two operands"));
    match op {
        TripleOp::Add => a.add(rhs()?),
        TripleOp::Mul => a.mul(rhs()?),
        TripleOp::Neg => Ok(a.neg()),
    }
}

/// Decides `a = b` in σ⁻¹R: by Ore evaluation on commutative backends and
/// by zeroness of the series of `a − b` on the free algebra.
pub fn triple_eq(a: &CohnTriple, b: &CohnTriple) -> Result<bool> {
    a.ensure_compatible(b)?;
    if a.sigma.is_ore() {
        return Ok(a.eval_ore()? == b.eval_ore()?);
    }
    match a.ring() {
        Ring::FreeAlgebra { .. } => Ok(a.sub(b)?.to_linrep()?.zero_test()?.is_zero),
        r => Err(Error::Unsupported(format!("triple equality over {r}"))),
    }
}

impl fmt::Display for CohnTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.f, self.s, self.g)
    }
}
