//! Exact scalars over the supported backends.
//!
//! Every [`Scalar`] is kept in canonical form, so structural equality is
//! mathematical equality: integers as [`BigInt`], rationals reduced with a
//! positive denominator, residues in `[0, p)`, free-algebra elements as sparse
//! word maps without zero coefficients.
//!
//! The `std::ops` impls on `&Scalar` panic on a ring mismatch; use the
//! `checked_*` methods at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::freepoly::{FreePoly, Word};
use super::ring::{BaseField, Ring};
use crate::error::{Error, Result};

/// Residue modulo a prime `p`, always in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i128, p: u64) -> Fp {
        Fp { value: value.rem_euclid(p as i128) as u64, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    fn add(self, o: Fp) -> Fp {
        Fp { value: (self.value + o.value) % self.p, p: self.p }
    }

    fn mul(self, o: Fp) -> Fp {
        Fp { value: ((self.value as u128 * o.value as u128) % self.p as u128) as u64, p: self.p }
    }

    fn neg(self) -> Fp {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }

    fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // Fermat
        let mut result = Fp { value: 1, p: self.p };
        let mut base = self;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        Some(result)
    }

    fn from_bigint(n: &BigInt, p: u64) -> Fp {
        let r = n.mod_floor(&BigInt::from(p));
        Fp { value: r.to_u64().expect("residue fits"), p }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod(Fp),
    Free(FreePoly),
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod(x) => Ring::PrimeField(x.p),
            Scalar::Free(f) => Ring::FreeAlgebra { base: f.base(), num_vars: f.num_vars() },
        }
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, n: i64) -> Scalar {
        Scalar::from_bigint(ring, &BigInt::from(n))
    }

    pub fn from_bigint(ring: Ring, n: &BigInt) -> Scalar {
        match ring {
            Ring::Integers => Scalar::Int(n.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            Ring::PrimeField(p) => Scalar::Mod(Fp::from_bigint(n, p)),
            Ring::FreeAlgebra { base, num_vars } => Scalar::Free(FreePoly::constant(
                base,
                num_vars,
                Scalar::from_bigint(base.ring(), n),
            )),
        }
    }

    /// Maps a rational number into `ring`; fails when the denominator is not
    /// invertible there (e.g. `1/2` over Z or over F2).
    pub fn from_rational(ring: Ring, q: &BigRational) -> Result<Scalar> {
        if q.denom().is_one() {
            return Ok(Scalar::from_bigint(ring, q.numer()));
        }
        match ring {
            Ring::Integers => Err(Error::NonUnit(q.denom().to_string())),
            Ring::Rationals => Ok(Scalar::Rat(q.clone())),
            Ring::PrimeField(_) | Ring::FreeAlgebra { .. } => {
                let num = Scalar::from_bigint(ring, q.numer());
                let den = Scalar::from_bigint(ring, q.denom()).inverse()?;
                Ok(&num * &den)
            }
        }
    }

    /// The generator `x_{index+1}` of a free algebra.
    pub fn variable(ring: Ring, index: usize) -> Result<Scalar> {
        match ring {
            Ring::FreeAlgebra { base, num_vars } if index < num_vars => Ok(Scalar::Free(
                FreePoly::monomial(base, num_vars, Word::letter(index), Scalar::one(base.ring())),
            )),
            Ring::FreeAlgebra { num_vars, .. } => Err(Error::invalid(
                "variable",
                format!("x{} outside x1..x{}", index + 1, num_vars),
            )),
            r => Err(Error::Unsupported(format!("variables in {r}"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(x) => x.value == 0,
            Scalar::Free(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.ring())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.ring().ensure_same(other.ring())?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.ring().ensure_same(other.ring())?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.ring().ensure_same(other.ring())?;
        Ok(self * other)
    }

    /// The ring involution: identity on commutative backends, word reversal
    /// on the free algebra.
    pub fn involute(&self) -> Scalar {
        match self {
            Scalar::Free(f) => Scalar::Free(f.reversed()),
            other => other.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        let non_unit = || Error::NonUnit(self.to_string());
        match self {
            Scalar::Int(n) => {
                if n.is_one() || *n == -BigInt::one() {
                    Ok(self.clone())
                } else {
                    Err(non_unit())
                }
            }
            Scalar::Rat(q) => {
                if q.is_zero() {
                    Err(non_unit())
                } else {
                    Ok(Scalar::Rat(q.recip()))
                }
            }
            Scalar::Mod(x) => x.inverse().map(Scalar::Mod).ok_or_else(non_unit),
            Scalar::Free(f) => match f.degree() {
                Some(0) => {
                    let c = f.constant_term().inverse()?;
                    Ok(Scalar::Free(FreePoly::constant(f.base(), f.num_vars(), c)))
                }
                _ => Err(non_unit()),
            },
        }
    }

    /// Constant term of a free-algebra element, as a base-field scalar.
    pub fn augment(&self) -> Result<Scalar> {
        match self {
            Scalar::Free(f) => Ok(f.constant_term()),
            other => Err(Error::Unsupported(format!("augmentation on {}", other.ring()))),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreePoly> {
        match self {
            Scalar::Free(f) => Some(f),
            _ => None,
        }
    }

    /// Integers and rationals as a rational number.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(n) => Some(BigRational::from_integer(n.clone())),
            Scalar::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Image of a commutative-backend scalar in its fraction field.
    pub fn to_fraction_field(&self) -> Result<Scalar> {
        match self {
            Scalar::Int(n) => Ok(Scalar::Rat(BigRational::from_integer(n.clone()))),
            Scalar::Rat(_) | Scalar::Mod(_) => Ok(self.clone()),
            Scalar::Free(_) => Err(Error::Unsupported("fraction field of a free algebra".into())),
        }
    }

    /// Sign and magnitude for display: only ordered backends report a sign.
    pub(crate) fn sign_split(&self) -> (bool, Scalar) {
        match self {
            Scalar::Int(n) if n.is_negative() => (true, Scalar::Int(-n)),
            Scalar::Rat(q) if q.is_negative() => (true, Scalar::Rat(-q)),
            other => (false, other.clone()),
        }
    }

    pub fn base_field_of(ring: Ring) -> Option<BaseField> {
        match ring {
            Ring::FreeAlgebra { base, .. } => Some(base),
            _ => None,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.p == b.p => Scalar::Mod(a.add(*b)),
            (Scalar::Free(a), Scalar::Free(b)) if same_free(a, b) => Scalar::Free(a.add(b)),
            _ => panic!("ring mismatch: {} + {}", self.ring(), o.ring()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.p == b.p => Scalar::Mod(a.mul(*b)),
            (Scalar::Free(a), Scalar::Free(b)) if same_free(a, b) => Scalar::Free(a.mul(b)),
            _ => panic!("ring mismatch: {} * {}", self.ring(), o.ring()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(a.neg()),
            Scalar::Free(a) => Scalar::Free(a.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn same_free(a: &FreePoly, b: &FreePoly) -> bool {
    a.base() == b.base() && a.num_vars() == b.num_vars()
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Mod(x) => write!(f, "{}", x.value),
            Scalar::Free(p) => write!(f, "{p}"),
        }
    }
}
