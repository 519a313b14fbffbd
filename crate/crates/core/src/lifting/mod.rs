//! Lifting complexes over σ⁻¹R back to R.
//!
//! * Ore backends: clear denominators differential by differential.
//! * Shortening: splice extra summands `X`, `Y` onto degrees 0 and −1 and
//!   drop degree 1 (cochain degrees −1..n become homological 1..−n).
//! * Length-3 complexes: the Toda bracket obstruction lives in a quotient of
//!   `Tor_2`, which vanishes over hereditary backends.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Matrix, Ring, Scalar};
use crate::complexes::{
    betti_equal, clear_denominators, homology, is_quasi_iso, localize_complex, localized_homology, tor,
    ChainComplex, ChainMap, Coefficients, GroupDescription, LocalComplex, TorModule,
};
use crate::error::{Error, Result};
use crate::localize::SigmaSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftStatus {
    Verified,
    Unverified(String),
}

impl LiftStatus {
    pub fn is_verified(&self) -> bool {
        matches!(self, LiftStatus::Verified)
    }
}

/// How the lifted complex relates to the input after localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `σ⁻¹C → D` is multiplication by `units[i]` in degree `lo + i`;
    /// `factors[i]` is the denominator cleared from `d_{lo+i+1}`.
    Scaling { factors: Vec<BigInt>, units: Vec<BigInt> },
    /// Summands spliced in by [`shorten_left`].
    Shortening { x: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftResult {
    pub lifted: ChainComplex,
    pub witness: Witness,
    pub status: LiftStatus,
}

/// `d'_i = c_i·d_i` with `c_i` the lcm of the denominators of `d_i`.
/// Scaling degree `lo + i` by `e_i` (`e_0 = 1`, `e_{i+1} = c_i e_i`) is an
/// isomorphism `σ⁻¹C ≅ D` since `d_i e_{i+1} = e_i d'_i`.
pub fn lift_by_clearing(d: &LocalComplex) -> Result<LiftResult> {
    let LocalComplex::Ore { sigma, complex } = d else {
        return Err(Error::Unsupported("clearing denominators needs an Ore localization".into()));
    };
    if sigma.ring() != Ring::Integers {
        // fields: the complex already lives over R
        return Ok(LiftResult {
            lifted: complex.clone(),
            witness: Witness::Scaling {
                factors: vec![BigInt::one(); complex.diffs().len()],
                units: vec![BigInt::one(); complex.ranks().len()],
            },
            status: LiftStatus::Verified,
        });
    }
    let (lifted, factors) = clear_denominators(complex)?;
    let mut units = vec![BigInt::one()];
    for c in &factors {
        let next = units.last().expect("nonempty") * c;
        units.push(next);
    }
    units.truncate(complex.ranks().len());
    let status = if sigma.localizes_to_field() {
        if verify_lift(&lifted, d, None)? {
            LiftStatus::Verified
        } else {
            LiftStatus::Unverified("Betti numbers differ".into())
        }
    } else if check_scaling(complex, &lifted, &units)? {
        LiftStatus::Verified
    } else {
        LiftStatus::Unverified("scaling units do not intertwine the differentials".into())
    };
    Ok(LiftResult { lifted, witness: Witness::Scaling { factors, units }, status })
}

/// `d_i · e_{i+1} = e_i · d'_i` as matrices over Q.
pub fn check_scaling(d: &ChainComplex, lifted: &ChainComplex, units: &[BigInt]) -> Result<bool> {
    for (i, (di, li)) in d.diffs().iter().zip(lifted.diffs()).enumerate() {
        let e = |k: usize| Scalar::Rat(BigRational::from_integer(units[k].clone()));
        let left = di.scale(&e(i + 1));
        let right = li.to_fraction_field()?.scale(&e(i));
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `σ⁻¹C` is equivalent to `D`: via `phi: σ⁻¹C → D` when given,
/// otherwise by Betti numbers (σ⁻¹R must be a field).
pub fn verify_lift(c: &ChainComplex, d: &LocalComplex, phi: Option<&ChainMap>) -> Result<bool> {
    let sigma = d.sigma();
    if let Some(phi) = phi {
        let LocalComplex::Ore { complex, .. } = localize_complex(c, sigma)? else {
            return Err(Error::Unsupported("quasi-isomorphism test over a free algebra".into()));
        };
        if phi.source() != &complex || Some(phi.target()) != d.as_ore() {
            return Err(Error::invalid("chain map", "phi must map the localized lift to D"));
        }
        return is_quasi_iso(phi);
    }
    if !sigma.localizes_to_field() {
        return Err(Error::Unsupported("Betti comparison needs a field localization; supply phi".into()));
    }
    Ok(betti_equal(&localized_homology(c, sigma)?, &d.homology()?))
}

/// Zero differentials with ranks equal to the Betti numbers of `d`.
pub fn minimal_model_field(d: &ChainComplex) -> Result<ChainComplex> {
    if !d.ring().is_field() {
        return Err(Error::Unsupported(format!("minimal models over {}", d.ring())));
    }
    let h = homology(d)?;
    let ranks: Vec<usize> = h.groups.iter().map(|(_, g)| g.free_rank).collect();
    let ring = d.ring();
    let diffs = ranks.windows(2).map(|w| Matrix::zeros(ring, w[0], w[1])).collect();
    ChainComplex::new(ring, d.lo(), ranks, diffs)
}

/// Extra data `X`, `Y`, `r: X → Y`, `g: C_0 → Y` for [`shorten_left`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortenData {
    pub x: usize,
    pub y: usize,
    pub r: Matrix,
    pub g: Matrix,
}

/// `B_0 = C_0 ⊕ X`, `B_{−1} = C_{−1} ⊕ Y`, `d^B_0 = [[d_0, 0], [g, r]]`,
/// `d^B_{−1} = [d_{−1}, 0]`, degrees below −1 copied and degree 1 dropped.
/// `C` must vanish above degree 1 (cochain degree −1).
pub fn shorten_left(c: &ChainComplex, data: &ShortenData, sigma: &SigmaSet) -> Result<LiftResult> {
    let ring = c.ring();
    ring.ensure_same(sigma.ring())?;
    let Some((lo, hi)) = c.support() else {
        return Err(Error::invalid("complex", "empty complex"));
    };
    if hi > 1 {
        return Err(Error::invalid("complex", format!("support must end at degree 1, found {hi}")));
    }
    let (c0, cm1) = (c.rank(0), c.rank(-1));
    // with y = 0 the width of g is not recorded anywhere
    let g = if data.y == 0 && data.g.rows() == 0 { Matrix::zeros(ring, 0, c0) } else { data.g.clone() };
    if data.r.shape() != (data.y, data.x) || g.shape() != (data.y, c0) {
        return Err(Error::Shape(format!(
            "r is {:?} and g is {:?}; expected ({}, {}) and ({}, {})",
            data.r.shape(),
            data.g.shape(),
            data.y,
            data.x,
            data.y,
            c0
        )));
    }
    let bottom = lo.min(-1);
    let rank = |n: i64| match n {
        0 => c0 + data.x,
        -1 => cm1 + data.y,
        n => c.rank(n),
    };
    let ranks: Vec<usize> = (bottom..=0).map(rank).collect();
    let diffs = (bottom + 1..=0)
        .map(|n| match n {
            0 => Matrix::block(&c.d(0), &Matrix::zeros(ring, cm1, data.x), &g, &data.r),
            -1 => c.d(-1).hstack(&Matrix::zeros(ring, c.rank(-2), data.y)),
            n => Ok(c.d(n)),
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = ChainComplex::new(ring, bottom, ranks, diffs)?;
    let status = if !sigma.localizes_to_field() {
        LiftStatus::Unverified("verification needs a field localization".into())
    } else {
        let hb = localized_homology(&lifted, sigma)?;
        let hc = localized_homology(c, sigma)?;
        if betti_equal(&hb, &hc) {
            LiftStatus::Verified
        } else {
            LiftStatus::Unverified(format!(
                "localized Betti numbers differ: B has {:?}, C has {:?}",
                hb.betti(),
                hc.betti()
            ))
        }
    };
    Ok(LiftResult { lifted, witness: Witness::Shortening { x: data.x, y: data.y }, status })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassStatus {
    Zero(String),
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    /// `Tor_2(σ⁻¹(x⁰)*, σ⁻¹x³)`; the obstruction group is a quotient of it.
    pub target_group: GroupDescription,
    pub class_status: ClassStatus,
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.class_status {
            ClassStatus::Zero(why) => write!(f, "target {}; theta = 0 ({why})", self.target_group),
            ClassStatus::Unsupported(why) => write!(f, "target {}; theta unsupported ({why})", self.target_group),
        }
    }
}

/// The Toda bracket obstruction of a length-3 complex `x⁰ → x¹ → x² → x³`.
pub fn toda_obstruction(d: &LocalComplex) -> Result<ObstructionReport> {
    d.validate()?;
    let ranks = d.ranks();
    if ranks.len() != 4 {
        return Err(Error::Length { expected: 3, actual: ranks.len().saturating_sub(1) });
    }
    let sigma = d.sigma();
    let ring = sigma.ring();
    match ring {
        Ring::Integers => {
            // Tor_2 of free σ⁻¹Z-modules, additive in each argument
            let t = tor(&TorModule::Localized(sigma.clone()), &TorModule::Localized(sigma.clone()), 2)?;
            let unit = &t[2];
            let target = GroupDescription {
                free_rank: unit.free_rank * ranks[0] * ranks[3],
                torsion: Vec::new(),
                coefficients: unit.coefficients.clone(),
            };
            Ok(certify(target, "Z is hereditary: Tor_2 vanishes"))
        }
        r if r.is_field() => Ok(certify(
            GroupDescription::zero(Coefficients::Localized(sigma.clone())),
            "every module over a field is projective",
        )),
        Ring::FreeAlgebra { .. } => Ok(certify(
            GroupDescription::zero(Coefficients::Localized(sigma.clone())),
            "free algebras over a field are hereditary: Tor_2 vanishes",
        )),
        r => Ok(ObstructionReport {
            target_group: GroupDescription::zero(Coefficients::Ring(r)),
            class_status: ClassStatus::Unsupported(format!("no global dimension bound for {r}")),
        }),
    }
}

fn certify(target: GroupDescription, reason: &str) -> ObstructionReport {
    if target.is_zero() {
        ObstructionReport { target_group: target, class_status: ClassStatus::Zero(reason.into()) }
    } else {
        ObstructionReport {
            target_group: target,
            class_status: ClassStatus::Unsupported("nonzero target group".into()),
        }
    }
}

/// `D` as a complex over the fraction field with `σ = Z∖{0}`.
pub fn rational_complex(lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<LocalComplex> {
    let c = ChainComplex::new(Ring::Rationals, lo, ranks, diffs)?;
    LocalComplex::ore(&SigmaSet::nonzero(Ring::Integers)?, c)
}
