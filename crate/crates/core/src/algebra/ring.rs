use std::fmt;

use crate::error::{Error, Result};

/// Coefficient field of a free algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    PrimeField(u64),
}

impl BaseField {
    pub fn ring(self) -> Ring {
        match self {
            BaseField::Rationals => Ring::Rationals,
            BaseField::PrimeField(p) => Ring::PrimeField(p),
        }
    }
}

/// The backend rings supported throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
    /// The free associative algebra `k<x1..xμ>`.
    FreeAlgebra { base: BaseField, num_vars: usize },
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::invalid("ring", format!("{p} is not prime")));
        }
        // residues are multiplied as u128, keep p within u64 comfortably
        if p > u32::MAX as u64 {
            return Err(Error::invalid("ring", format!("prime {p} too large")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn free_algebra(base: BaseField, num_vars: usize) -> Result<Ring> {
        if num_vars == 0 {
            return Err(Error::invalid("ring", "free algebra needs at least one variable"));
        }
        if let BaseField::PrimeField(p) = base {
            Ring::prime_field(p)?;
        }
        Ok(Ring::FreeAlgebra { base, num_vars })
    }

    /// Re-checks the invariants of a descriptor built by hand.
    pub fn validate(self) -> Result<Ring> {
        match self {
            Ring::PrimeField(p) => Ring::prime_field(p),
            Ring::FreeAlgebra { base, num_vars } => Ring::free_algebra(base, num_vars),
            r => Ok(r),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    pub fn is_commutative(self) -> bool {
        !matches!(self, Ring::FreeAlgebra { .. })
    }

    pub fn ensure_same(self, other: Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }

    /// The field of fractions used for exact solves over commutative backends.
    pub fn fraction_field(self) -> Result<Ring> {
        match self {
            Ring::Integers | Ring::Rationals => Ok(Ring::Rationals),
            Ring::PrimeField(p) => Ok(Ring::PrimeField(p)),
            r => Err(Error::Unsupported(format!("no fraction field for {r}"))),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
            Ring::FreeAlgebra { base, num_vars } => write!(f, "{base}<x1..x{num_vars}>"),
        }
    }
}
