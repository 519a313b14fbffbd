use num_bigint::BigInt;
use num_rational::BigRational;

use super::chain::ChainComplex;
use super::homology::{localized_homology, HomologyResult};
use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::localize::{lcm_of_denominators, triple_eq, CohnTriple, OreFraction, SigmaSet};

/// A matrix with entries in σ⁻¹R given as Cohn triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CohnTriple>,
}

impl TripleMatrix {
    pub fn from_matrix(sigma: &SigmaSet, m: &Matrix) -> Result<TripleMatrix> {
        let entries = m.entries().map(|x| CohnTriple::from_scalar(sigma, x.clone())).collect::<Result<_>>()?;
        Ok(TripleMatrix { rows: m.rows(), cols: m.cols(), entries })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &CohnTriple {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, other: &TripleMatrix, sigma: &SigmaSet) -> Result<TripleMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("triple matrix product".into()));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CohnTriple::zero(sigma);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(TripleMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn is_zero(&self, sigma: &SigmaSet) -> Result<bool> {
        let zero = CohnTriple::zero(sigma);
        for e in &self.entries {
            if !triple_eq(e, &zero)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `σ⁻¹C`. On commutative backends the differentials are stored over the
/// fraction field with every entry in σ⁻¹R; on the free algebra entries are
/// Cohn triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalComplex {
    Ore { sigma: SigmaSet, complex: ChainComplex },
    Cohn { sigma: SigmaSet, lo: i64, ranks: Vec<usize>, diffs: Vec<TripleMatrix> },
}

impl LocalComplex {
    /// Wraps a complex over the fraction field, checking that every entry
    /// lies in σ⁻¹R.
    pub fn ore(sigma: &SigmaSet, complex: ChainComplex) -> Result<LocalComplex> {
        if !sigma.is_ore() {
            return Err(Error::Unsupported(format!("Ore localization of {}", sigma.ring())));
        }
        complex.ring().ensure_same(sigma.ring().fraction_field()?)?;
        for d in complex.diffs() {
            for x in d.entries() {
                match x.to_rational() {
                    Some(q) if sigma.ring() == Ring::Integers => {
                        OreFraction::from_rational(sigma, &q)?;
                    }
                    _ => {}
                }
            }
        }
        complex.validate()?;
        Ok(LocalComplex::Ore { sigma: sigma.clone(), complex })
    }

    pub fn sigma(&self) -> &SigmaSet {
        match self {
            LocalComplex::Ore { sigma, .. } | LocalComplex::Cohn { sigma, .. } => sigma,
        }
    }

    pub fn ranks(&self) -> &[usize] {
        match self {
            LocalComplex::Ore { complex, .. } => complex.ranks(),
            LocalComplex::Cohn { ranks, .. } => ranks,
        }
    }

    pub fn lo(&self) -> i64 {
        match self {
            LocalComplex::Ore { complex, .. } => complex.lo(),
            LocalComplex::Cohn { lo, .. } => *lo,
        }
    }

    pub fn as_ore(&self) -> Option<&ChainComplex> {
        match self {
            LocalComplex::Ore { complex, .. } => Some(complex),
            LocalComplex::Cohn { .. } => None,
        }
    }

    /// `d² = 0`, decided entrywise by triple equality on the free algebra.
    pub fn validate(&self) -> Result<()> {
        match self {
            LocalComplex::Ore { complex, .. } => complex.validate(),
            LocalComplex::Cohn { sigma, lo, diffs, .. } => {
                for i in 1..diffs.len() {
                    if !diffs[i - 1].mul(&diffs[i], sigma)?.is_zero(sigma)? {
                        return Err(Error::D2Nonzero(lo + i as i64));
                    }
                }
                Ok(())
            }
        }
    }

    /// Homology over σ⁻¹R (commutative backends).
    pub fn homology(&self) -> Result<HomologyResult> {
        match self {
            LocalComplex::Ore { sigma, complex } => match sigma.ring() {
                Ring::Integers => localized_homology(&clear_denominators(complex)?.0, sigma),
                _ => localized_homology(complex, sigma),
            },
            LocalComplex::Cohn { sigma, .. } => {
                Err(Error::Unsupported(format!("homology over a localization of {}", sigma.ring())))
            }
        }
    }
}

/// `r ↦ r/1` on every differential.
pub fn localize_complex(c: &ChainComplex, sigma: &SigmaSet) -> Result<LocalComplex> {
    c.ring().ensure_same(sigma.ring())?;
    if sigma.is_ore() {
        let field = c.ring().fraction_field()?;
        let complex = c.map_ring(field, Scalar::to_fraction_field)?;
        return Ok(LocalComplex::Ore { sigma: sigma.clone(), complex });
    }
    let diffs = c.diffs().iter().map(|d| TripleMatrix::from_matrix(sigma, d)).collect::<Result<_>>()?;
    Ok(LocalComplex::Cohn { sigma: sigma.clone(), lo: c.lo(), ranks: c.ranks().to_vec(), diffs })
}

/// Multiplies each differential of a complex over Q by the lcm `c_i` of its
/// entries' denominators. Returns the integral complex and the `c_i`
/// (indexed like `diffs`).
pub fn clear_denominators(c: &ChainComplex) -> Result<(ChainComplex, Vec<BigInt>)> {
    if c.ring() != Ring::Rationals {
        return Err(Error::Unsupported(format!("clearing denominators over {}", c.ring())));
    }
    let mut factors = Vec::new();
    let mut diffs = Vec::new();
    for d in c.diffs() {
        let qs: Vec<BigRational> = d.entries().map(|x| x.to_rational().expect("rational")).collect();
        let l = lcm_of_denominators(&qs);
        let lq = BigRational::from_integer(l.clone());
        diffs.push(d.map_into(Ring::Integers, |x| {
            Scalar::from_rational(Ring::Integers, &(x.to_rational().expect("rational") * &lq))
        })?);
        factors.push(l);
    }
    Ok((ChainComplex::new(Ring::Integers, c.lo(), c.ranks().to_vec(), diffs)?, factors))
}
