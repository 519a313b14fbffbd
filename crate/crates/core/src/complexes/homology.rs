use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::chain::ChainComplex;
use crate::algebra::{linalg, smith, IntMatrix, Matrix, Ring};
use crate::error::{Error, Result};
use crate::localize::SigmaSet;

/// The ring a homology group is a module over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficients {
    Ring(Ring),
    Localized(SigmaSet),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Ring(r) => write!(f, "{r}"),
            Coefficients::Localized(SigmaSet::NonZero { ring: Ring::Integers }) => write!(f, "Q"),
            Coefficients::Localized(SigmaSet::Central { ring: Ring::Integers, generators }) => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "Z[1/{}]", gens.join(","))
            }
            Coefficients::Localized(s) => write!(f, "sigma^-1 {}", s.ring()),
        }
    }
}

/// A finitely generated module over a PID or field: `free_rank` copies of
/// the coefficient ring plus cyclic torsion summands (a divisibility chain,
/// each entry > 1). Over a field `torsion` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescription {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub coefficients: Coefficients,
}

impl GroupDescription {
    pub fn zero(coefficients: Coefficients) -> GroupDescription {
        GroupDescription { free_rank: 0, torsion: Vec::new(), coefficients }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of a finite group (`None` when there is a free part).
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(self.coefficients.to_string()),
            r => parts.push(format!("{}^{r}", self.coefficients)),
        }
        for t in &self.torsion {
            parts.push(format!("{}/{t}", self.coefficients));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    /// One entry per degree of the complex's support, ascending.
    pub groups: Vec<(i64, GroupDescription)>,
}

impl HomologyResult {
    pub fn get(&self, n: i64) -> Option<&GroupDescription> {
        self.groups.iter().find(|(d, _)| *d == n).map(|(_, g)| g)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(|(_, g)| g.is_zero())
    }

    pub fn betti(&self) -> Vec<(i64, usize)> {
        self.groups.iter().map(|(n, g)| (*n, g.free_rank)).collect()
    }
}

/// Rank and invariant factors (> 1) of an integer matrix.
fn integer_data(d: &Matrix) -> Result<(usize, Vec<BigInt>)> {
    let f = smith(&IntMatrix::from_matrix(d)?);
    Ok((f.rank, f.invariant_factors()))
}

/// `H_n = ker d_n / im d_{n+1}` in every degree of the support.
pub fn homology(c: &ChainComplex) -> Result<HomologyResult> {
    match c.ring() {
        Ring::Integers => integral_homology(c, |t| Ok(t.clone()), Coefficients::Ring(Ring::Integers)),
        r if r.is_field() => field_homology(c, Coefficients::Ring(r)),
        r => Err(Error::Unsupported(format!("homology over {r}"))),
    }
}

fn field_homology(c: &ChainComplex, coefficients: Coefficients) -> Result<HomologyResult> {
    let ranks: Vec<usize> = c.degrees().map(|n| linalg::rank(&c.d(n))).collect::<Result<_>>()?;
    let rank_of = |n: i64| -> usize {
        let i = n - c.lo();
        if i >= 0 && (i as usize) < ranks.len() {
            ranks[i as usize]
        } else {
            0
        }
    };
    let groups = c
        .degrees()
        .map(|n| {
            let free_rank = c.rank(n) - rank_of(n) - rank_of(n + 1);
            (n, GroupDescription { free_rank, torsion: Vec::new(), coefficients: coefficients.clone() })
        })
        .collect();
    Ok(HomologyResult { groups })
}

/// Integral homology with torsion coefficients passed through `reduce`
/// (identity over Z, unit stripping over Z[1/S]).
fn integral_homology(
    c: &ChainComplex,
    reduce: impl Fn(&BigInt) -> Result<BigInt>,
    coefficients: Coefficients,
) -> Result<HomologyResult> {
    let data: Vec<(usize, Vec<BigInt>)> = c.degrees().map(|n| integer_data(&c.d(n))).collect::<Result<_>>()?;
    let at = |n: i64| -> (usize, &[BigInt]) {
        let i = n - c.lo();
        if i >= 0 && (i as usize) < data.len() {
            (data[i as usize].0, &data[i as usize].1)
        } else {
            (0, &[])
        }
    };
    let mut groups = Vec::new();
    for n in c.degrees() {
        let (rank_out, _) = at(n);
        let (rank_in, factors) = at(n + 1);
        let mut torsion = Vec::new();
        for t in factors {
            let t = reduce(t)?;
            if !t.is_one() {
                torsion.push(t);
            }
        }
        let free_rank = c.rank(n) - rank_out - rank_in;
        groups.push((n, GroupDescription { free_rank, torsion, coefficients: coefficients.clone() }));
    }
    Ok(HomologyResult { groups })
}

/// Homology of `σ⁻¹C` for a complex `C` over a commutative backend.
///
/// Over Z the Smith form of each differential is also a Smith form over
/// the PID Z[1/S]; factors that become units drop out.
pub fn localized_homology(c: &ChainComplex, sigma: &SigmaSet) -> Result<HomologyResult> {
    c.ring().ensure_same(sigma.ring())?;
    let coefficients = Coefficients::Localized(sigma.clone());
    match c.ring() {
        Ring::Integers if sigma.localizes_to_field() => {
            field_homology(&c.map_ring(Ring::Rationals, |x| x.to_fraction_field())?, coefficients)
        }
        Ring::Integers => integral_homology(c, |t| sigma.unit_free_part(t), coefficients),
        r if r.is_field() => field_homology(c, coefficients),
        r => Err(Error::Unsupported(format!("localized homology over {r}"))),
    }
}

/// Betti numbers in every degree of the union of supports (zeros padded),
/// used to compare complexes over a field.
pub(crate) fn betti_equal(a: &HomologyResult, b: &HomologyResult) -> bool {
    let nonzero = |h: &HomologyResult| -> Vec<(i64, usize)> {
        h.groups.iter().filter(|(_, g)| g.free_rank > 0).map(|(n, g)| (*n, g.free_rank)).collect()
    };
    nonzero(a) == nonzero(b)
}
