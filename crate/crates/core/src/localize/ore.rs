use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::sigma::SigmaSet;
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

/// A fraction `r/s` in an Ore localization of a commutative backend.
///
/// Over Z the fraction is reduced with a positive denominator; over fields
/// the denominator is absorbed and stored as 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OreFraction {
    sigma: SigmaSet,
    num: Scalar,
    den: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreOp {
    Add,
    Mul,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OreResult {
    Fraction(OreFraction),
    Bool(bool),
}

impl OreFraction {
    pub fn new(sigma: &SigmaSet, num: Scalar, den: Scalar) -> Result<OreFraction> {
        if !sigma.is_ore() {
            return Err(Error::Unsupported("Ore fractions need a commutative backend".into()));
        }
        let ring = sigma.ring();
        ring.ensure_same(num.ring())?;
        ring.ensure_same(den.ring())?;
        if !sigma.inverts(&den)? {
            return Err(Error::SigmaRejected(format!("denominator {den} is not in sigma")));
        }
        Ok(Self::normalized(sigma.clone(), num, den))
    }

    pub fn from_scalar(sigma: &SigmaSet, r: Scalar) -> Result<OreFraction> {
        let one = Scalar::one(sigma.ring());
        OreFraction::new(sigma, r, one)
    }

    /// Builds the fraction from a rational number (Z backend) or a field
    /// element, checking the reduced denominator against σ.
    pub fn from_rational(sigma: &SigmaSet, q: &BigRational) -> Result<OreFraction> {
        match sigma.ring() {
            Ring::Integers => OreFraction::new(
                sigma,
                Scalar::Int(q.numer().clone()),
                Scalar::Int(q.denom().clone()),
            ),
            r => OreFraction::from_scalar(sigma, Scalar::from_rational(r, q)?),
        }
    }

    fn normalized(sigma: SigmaSet, num: Scalar, den: Scalar) -> OreFraction {
        match (&num, &den) {
            (Scalar::Int(n), Scalar::Int(d)) => {
                let g = n.gcd(d);
                let (mut n, mut d) = (n / &g, d / &g);
                if d.is_negative() {
                    n = -n;
                    d = -d;
                }
                OreFraction { sigma, num: Scalar::Int(n), den: Scalar::Int(d) }
            }
            _ => {
                let ring = num.ring();
                let value = &num * &den.inverse().expect("field denominator is a unit");
                OreFraction { sigma, num: value, den: Scalar::one(ring) }
            }
        }
    }

    pub fn sigma(&self) -> &SigmaSet {
        &self.sigma
    }

    pub fn numerator(&self) -> &Scalar {
        &self.num
    }

    pub fn denominator(&self) -> &Scalar {
        &self.den
    }

    fn ensure_compatible(&self, other: &OreFraction) -> Result<()> {
        self.sigma.ring().ensure_same(other.sigma.ring())?;
        if self.sigma != other.sigma {
            return Err(Error::SigmaMismatch);
        }
        Ok(())
    }

    /// `a/s + b/t = (at + bs)/st`
    pub fn add(&self, other: &OreFraction) -> Result<OreFraction> {
        self.ensure_compatible(other)?;
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(Self::normalized(self.sigma.clone(), num, &self.den * &other.den))
    }

    /// `(a/s)(b/t) = ab/st`
    pub fn mul(&self, other: &OreFraction) -> Result<OreFraction> {
        self.ensure_compatible(other)?;
        Ok(Self::normalized(self.sigma.clone(), &self.num * &other.num, &self.den * &other.den))
    }

    pub fn neg(&self) -> OreFraction {
        OreFraction { sigma: self.sigma.clone(), num: -&self.num, den: self.den.clone() }
    }

    /// Decides `r/s ~ q/t`: over a commutative domain this is `rt = qs`.
    pub fn equivalent(&self, other: &OreFraction) -> Result<bool> {
        self.ensure_compatible(other)?;
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    /// Value in the fraction field (Q for Z, the field itself otherwise).
    pub fn to_field(&self) -> Scalar {
        match (&self.num, &self.den) {
            (Scalar::Int(n), Scalar::Int(d)) => Scalar::Rat(BigRational::new(n.clone(), d.clone())),
            _ => self.num.clone(),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.to_field().to_rational()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
}

pub fn ore_op(op: OreOp, a: &OreFraction, b: &OreFraction) -> Result<OreResult> {
    Ok(match op {
        OreOp::Add => OreResult::Fraction(a.add(b)?),
        OreOp::Mul => OreResult::Fraction(a.mul(b)?),
        OreOp::Eq => OreResult::Bool(a.equivalent(b)?),
    })
}

/// `q - floor(q)`, the representative of `q` in `[0, 1)`.
pub fn fractional_part(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.floor().to_integer())
}

pub(crate) fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

impl fmt::Display for OreFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
