use std::fmt;

use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};

/// A bounded chain complex of finitely generated free modules, indexed
/// homologically: `d_n: C_n → C_{n−1}`.
///
/// `ranks[i]` is the rank in degree `lo + i` and `diffs[i]` is
/// `d_{lo+i+1}`, a `ranks[i] × ranks[i+1]` matrix acting on columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds and validates a complex (shapes and `d² = 0`).
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        let c = ChainComplex::with_shapes(ring, lo, ranks, diffs)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks shapes only.
    pub fn with_shapes(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        let expected = ranks.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(Error::Length { expected, actual: diffs.len() });
        }
        for (i, d) in diffs.iter().enumerate() {
            ring.ensure_same(d.ring())?;
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(Error::Shape(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        Ok(ChainComplex { ring, lo, ranks, diffs })
    }

    pub fn zero(ring: Ring) -> ChainComplex {
        ChainComplex { ring, lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// A single free module of rank `rank` in degree `deg`.
    pub fn concentrated(ring: Ring, deg: i64, rank: usize) -> ChainComplex {
        ChainComplex { ring, lo: deg, ranks: vec![rank], diffs: Vec::new() }
    }

    /// `0 → R^cols --d--> R^rows → 0` with the target in degree `lo`.
    pub fn two_term(lo: i64, d: Matrix) -> ChainComplex {
        ChainComplex { ring: d.ring(), lo, ranks: vec![d.rows(), d.cols()], diffs: vec![d] }
    }

    /// Builds a complex on `[lo, hi]` from a function giving `d_n`.
    pub fn from_fn(
        ring: Ring,
        lo: i64,
        ranks: Vec<usize>,
        mut d: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainComplex> {
        let diffs = (1..ranks.len()).map(|i| d(lo + i as i64)).collect();
        ChainComplex::new(ring, lo, ranks, diffs)
    }

    /// `Err(D2Nonzero(n))` for the first `n` with `d_n d_{n+1} ≠ 0`.
    pub fn validate(&self) -> Result<()> {
        for i in 1..self.diffs.len() {
            if !self.diffs[i - 1].mul(&self.diffs[i])?.is_zero() {
                return Err(Error::D2Nonzero(self.lo + i as i64));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(lo, hi)` of the stored degrees, `None` for the empty complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.ranks.is_empty()).then(|| (self.lo, self.lo + self.ranks.len() as i64 - 1))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn diffs(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> + ExactSizeIterator {
        let lo = self.lo;
        (0..self.ranks.len()).map(move |i| lo + i as i64)
    }

    pub fn rank(&self, n: i64) -> usize {
        let i = n - self.lo;
        if i < 0 {
            return 0;
        }
        self.ranks.get(i as usize).copied().unwrap_or(0)
    }

    /// `d_n`, the zero matrix outside the stored range.
    pub fn d(&self, n: i64) -> Matrix {
        let i = n - self.lo - 1;
        if i >= 0 && (i as usize) < self.diffs.len() {
            return self.diffs[i as usize].clone();
        }
        Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| sign(n) * self.rank(n) as i64).sum()
    }

    /// The complex restricted to (or padded out to) `[lo, hi]`.
    pub fn on_range(&self, lo: i64, hi: i64) -> ChainComplex {
        if hi < lo {
            return ChainComplex::zero(self.ring);
        }
        let ranks = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo + 1..=hi).map(|n| self.d(n)).collect();
        ChainComplex { ring: self.ring, lo, ranks, diffs }
    }

    /// Drops zero modules at both ends.
    pub fn trimmed(&self) -> ChainComplex {
        let first = self.ranks.iter().position(|&r| r > 0);
        let last = self.ranks.iter().rposition(|&r| r > 0);
        match (first, last) {
            (Some(a), Some(b)) => self.on_range(self.lo + a as i64, self.lo + b as i64),
            _ => ChainComplex::zero(self.ring),
        }
    }

    /// Entrywise image under a ring map.
    pub fn map_ring(&self, ring: Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<ChainComplex> {
        let diffs = self.diffs.iter().map(|d| d.map_into(ring, &f)).collect::<Result<_>>()?;
        Ok(ChainComplex { ring, lo: self.lo, ranks: self.ranks.clone(), diffs })
    }
}

pub(crate) fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn union(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
        (x, None) | (None, x) => x,
    }
}

pub fn validate_complex(c: &ChainComplex) -> Result<()> {
    c.validate()
}

/// A chain map `f: C → D`, one matrix `f_n: C_n → D_n` per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    lo: i64,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// `components[i]` is `f_{lo+i}`; degrees outside the list are zero.
    /// Fails with `NotChainMap(n)` when `d f_n ≠ f_{n−1} d`.
    pub fn new(source: ChainComplex, target: ChainComplex, lo: i64, components: Vec<Matrix>) -> Result<ChainMap> {
        source.ring().ensure_same(target.ring())?;
        for (i, f) in components.iter().enumerate() {
            let n = lo + i as i64;
            source.ring().ensure_same(f.ring())?;
            if f.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::Shape(format!(
                    "f_{n} is {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        let map = ChainMap { source, target, lo, components };
        map.check_commutes()?;
        Ok(map)
    }

    /// Components over the union of the supports of source and target.
    pub fn from_fn(source: ChainComplex, target: ChainComplex, mut f: impl FnMut(i64) -> Matrix) -> Result<ChainMap> {
        match union(source.support(), target.support()) {
            None => ChainMap::new(source, target, 0, Vec::new()),
            Some((lo, hi)) => {
                let comps = (lo..=hi).map(&mut f).collect();
                ChainMap::new(source, target, lo, comps)
            }
        }
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = c.degrees().map(|n| Matrix::identity(c.ring(), c.rank(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), lo: c.lo(), components: comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), lo: 0, components: Vec::new() }
    }

    fn check_commutes(&self) -> Result<()> {
        let Some((lo, hi)) = union(self.source.support(), self.target.support()) else {
            return Ok(());
        };
        for n in lo..=hi + 1 {
            let left = self.target.d(n).mul(&self.component(n))?;
            let right = self.component(n - 1).mul(&self.source.d(n))?;
            if left != right {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.components.len() {
            return self.components[i as usize].clone();
        }
        Matrix::zeros(self.source.ring(), self.target.rank(n), self.source.rank(n))
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap> {
        if after.source != self.target {
            return Err(Error::invalid("chain map", "composition of non-matching maps"));
        }
        ChainMap::from_fn(self.source.clone(), after.target.clone(), |n| {
            after.component(n).mul(&self.component(n)).expect("shapes")
        })
    }
}

/// `cone(f)_n = C_{n−1} ⊕ D_n` with `d = [[−d_C, 0], [f, d_D]]`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    let (c, d) = (f.source(), f.target());
    let shifted = c.support().map(|(a, b)| (a + 1, b + 1));
    let ring = c.ring();
    let Some((lo, hi)) = union(shifted, d.support()) else {
        return Ok(ChainComplex::zero(ring));
    };
    let ranks = (lo..=hi).map(|n| c.rank(n - 1) + d.rank(n)).collect();
    ChainComplex::from_fn(ring, lo, ranks, |n| {
        Matrix::block(&c.d(n - 1).neg(), &Matrix::zeros(ring, c.rank(n - 2), d.rank(n)), &f.component(n - 1), &d.d(n))
            .expect("cone blocks")
    })
}

/// Degrees raised by `k`, differential multiplied by `(−1)^k`.
pub fn shift(c: &ChainComplex, k: i64) -> ChainComplex {
    let s = Scalar::from_i64(c.ring(), sign(k));
    ChainComplex {
        ring: c.ring(),
        lo: c.lo() + k,
        ranks: c.ranks().to_vec(),
        diffs: c.diffs().iter().map(|d| d.scale(&s)).collect(),
    }
}

impl fmt::Display for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, n) in self.degrees().enumerate().rev() {
            write!(f, "{}^{} [{}]", self.ring, self.ranks[i], n)?;
            if i > 0 {
                write!(f, " --{}--> ", self.diffs[i - 1])?;
            }
        }
        Ok(())
    }
}
