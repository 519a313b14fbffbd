use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::algebra::{linalg, IntMatrix, Matrix, Ring, Scalar};
use crate::error::{Error, Result};

/// The set σ of morphisms being inverted.
///
/// * `Central`: the multiplicative set generated by central elements of a
///   commutative backend. A square matrix becomes invertible over σ⁻¹R
///   exactly when its determinant does.
/// * `NonZero`: every nonzero element (Z ↦ Q; identity on fields).
/// * `Matrices`: a list of square matrices. Over a commutative backend this
///   is the localization at their determinants. Over a free algebra the list
///   is ignored and σ is every matrix whose augmentation is invertible over
///   the base field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigmaSet {
    Central { ring: Ring, generators: Vec<Scalar> },
    NonZero { ring: Ring },
    Matrices { ring: Ring, matrices: Vec<Matrix> },
}

/// Outcome of [`sigma_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaVerdict {
    /// Commutative backends: the determinant, a unit of σ⁻¹R.
    UnitDeterminant(Scalar),
    /// Free algebra: inverse of the augmented (constant) matrix over k.
    Augmented { constant_inverse: Matrix },
    Rejected(String),
}

impl SigmaVerdict {
    pub fn is_accepted(&self) -> bool {
        !matches!(self, SigmaVerdict::Rejected(_))
    }
}

impl SigmaSet {
    pub fn central(ring: Ring, generators: Vec<Scalar>) -> Result<SigmaSet> {
        if !ring.is_commutative() {
            return Err(Error::Unsupported(
                "central multiplicative sets over a free algebra; use the augmentation set".into(),
            ));
        }
        let mut gens = Vec::new();
        for g in generators {
            ring.ensure_same(g.ring())?;
            if g.is_zero() {
                return Err(Error::invalid("sigma", "0 cannot be inverted"));
            }
            let g = match g {
                Scalar::Int(n) => Scalar::Int(n.abs()),
                other => other,
            };
            if !g.is_one() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        gens.sort_by_key(|g| g.to_string());
        Ok(SigmaSet::Central { ring, generators: gens })
    }

    pub fn nonzero(ring: Ring) -> Result<SigmaSet> {
        if !ring.is_commutative() {
            return Err(Error::Unsupported("Z∖{0}-style localization of a free algebra".into()));
        }
        Ok(SigmaSet::NonZero { ring })
    }

    /// Every augmentation-invertible matrix over a free algebra.
    pub fn augmentation(ring: Ring) -> Result<SigmaSet> {
        if ring.is_commutative() {
            return Err(Error::Unsupported(format!("augmentation set over {ring}")));
        }
        Ok(SigmaSet::Matrices { ring, matrices: Vec::new() })
    }

    pub fn matrices(ring: Ring, matrices: Vec<Matrix>) -> Result<SigmaSet> {
        for m in &matrices {
            ring.ensure_same(m.ring())?;
            if !m.is_square() {
                return Err(Error::Shape("sigma matrices must be square".into()));
            }
        }
        if !ring.is_commutative() {
            return Ok(SigmaSet::Matrices { ring, matrices: Vec::new() });
        }
        Ok(SigmaSet::Matrices { ring, matrices })
    }

    pub fn ring(&self) -> Ring {
        match self {
            SigmaSet::Central { ring, .. } | SigmaSet::NonZero { ring } | SigmaSet::Matrices { ring, .. } => *ring,
        }
    }

    /// σ⁻¹R is an Ore localization at central elements (commutative backend).
    pub fn is_ore(&self) -> bool {
        self.ring().is_commutative()
    }

    /// σ⁻¹R is a field.
    pub fn localizes_to_field(&self) -> bool {
        let ring = self.ring();
        ring.is_field() || (ring == Ring::Integers && matches!(self, SigmaSet::NonZero { .. }))
    }

    /// Central denominators whose inversion defines σ⁻¹R on a commutative
    /// backend (`None` for `NonZero`).
    pub(crate) fn central_generators(&self) -> Result<Option<Vec<Scalar>>> {
        match self {
            SigmaSet::Central { generators, .. } => Ok(Some(generators.clone())),
            SigmaSet::NonZero { .. } => Ok(None),
            SigmaSet::Matrices { ring, matrices } if ring.is_commutative() => {
                let dets = matrices.iter().map(det_commutative).collect::<Result<Vec<_>>>()?;
                if dets.iter().any(Scalar::is_zero) {
                    return Err(Error::invalid("sigma", "a listed matrix has determinant 0"));
                }
                Ok(Some(dets))
            }
            SigmaSet::Matrices { .. } => Err(Error::Unsupported("central generators of a free algebra".into())),
        }
    }

    /// The associate of a nonzero integer `d` in Z[1/S] with every σ-unit
    /// factor removed (1 when σ⁻¹Z = Q). Invariant factors of a matrix over
    /// Z become those of its localization after this map.
    pub fn unit_free_part(&self, d: &BigInt) -> Result<BigInt> {
        if self.ring() != Ring::Integers {
            return Err(Error::Unsupported(format!("integer associates over {}", self.ring())));
        }
        let Some(gens) = self.central_generators()? else {
            return Ok(BigInt::one());
        };
        let product: BigInt = gens.iter().map(|g| g.as_bigint().expect("integer").abs()).product();
        let mut rest = d.abs();
        loop {
            let g = rest.gcd(&product);
            if g.is_one() {
                return Ok(rest);
            }
            rest /= g;
        }
    }

    /// Whether `d` becomes a unit in σ⁻¹R (commutative backends).
    pub fn inverts(&self, d: &Scalar) -> Result<bool> {
        let ring = self.ring();
        ring.ensure_same(d.ring())?;
        if d.is_zero() {
            return Ok(false);
        }
        match ring {
            Ring::Rationals | Ring::PrimeField(_) => Ok(true),
            Ring::Integers => Ok(self.unit_free_part(d.as_bigint().expect("integer"))?.is_one()),
            r => Err(Error::Unsupported(format!("central denominators over {r}"))),
        }
    }
}

pub(crate) fn det_commutative(m: &Matrix) -> Result<Scalar> {
    match m.ring() {
        Ring::Integers => Ok(Scalar::Int(IntMatrix::from_matrix(m)?.det())),
        r if r.is_field() => linalg::det(m),
        r => Err(Error::Unsupported(format!("determinant over {r}"))),
    }
}

/// Decides whether `s` is inverted by σ⁻¹R.
pub fn sigma_validate(sigma: &SigmaSet, s: &Matrix) -> Result<SigmaVerdict> {
    sigma.ring().ensure_same(s.ring())?;
    if !s.is_square() {
        return Err(Error::Shape(format!("sigma_validate on a {}x{} matrix", s.rows(), s.cols())));
    }
    if sigma.is_ore() {
        let det = det_commutative(s)?;
        return Ok(if sigma.inverts(&det)? {
            SigmaVerdict::UnitDeterminant(det)
        } else {
            SigmaVerdict::Rejected(format!("determinant {det} is not a unit of the localization"))
        });
    }
    let constant = s.augment()?;
    match linalg::inverse(&constant) {
        Ok(inv) => Ok(SigmaVerdict::Augmented { constant_inverse: inv }),
        Err(Error::Singular(_)) => Ok(SigmaVerdict::Rejected(format!("augmentation {constant} is singular"))),
        Err(e) => Err(e),
    }
}
