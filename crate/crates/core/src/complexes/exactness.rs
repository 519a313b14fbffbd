//! Exactness of `H_n(C) → H_n(D) → H_n(cone f) → H_{n−1}(C)` over Z,
//! checked on cycle and boundary lattices.

use super::chain::{cone, union, ChainComplex, ChainMap};
use crate::algebra::{IntMatrix, Lattice, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spot {
    /// At `H_n(D)`.
    Target,
    /// At `H_n(cone f)`.
    Cone,
    /// At `H_{n−1}(C)`.
    Source,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub degree: i64,
    pub spot: Spot,
    /// image ⊆ kernel
    pub composite_zero: bool,
    /// image = kernel
    pub exact: bool,
}

fn int(m: &crate::algebra::Matrix) -> Result<IntMatrix> {
    IntMatrix::from_matrix(m)
}

fn cycles(c: &ChainComplex, n: i64) -> Result<Lattice> {
    Ok(Lattice::kernel(&int(&c.d(n))?))
}

fn boundaries(c: &ChainComplex, n: i64) -> Result<Lattice> {
    Ok(Lattice::span(&int(&c.d(n + 1))?))
}

fn check(degree: i64, spot: Spot, image: Lattice, kernel: Lattice) -> SpotCheck {
    SpotCheck { degree, spot, composite_zero: kernel.contains_lattice(&image), exact: image.same_as(&kernel) }
}

/// Every spot of the long exact sequence of `f` in the degrees where any of
/// the three complexes is nonzero.
pub fn les_checks(f: &ChainMap) -> Result<Vec<SpotCheck>> {
    let (c, d) = (f.source(), f.target());
    if c.ring() != Ring::Integers {
        return Err(Error::Unsupported(format!("lattice exactness over {}", c.ring())));
    }
    let k = cone(f)?;
    let Some((lo, hi)) = union(union(c.support(), d.support()), k.support()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for n in lo..=hi + 1 {
        let (rc, rd) = (c.rank(n - 1), d.rank(n));
        // j: D_n → cone_n, y ↦ (0, y); p: cone_n → C_{n−1}, (x, y) ↦ x
        let j = IntMatrix::from_fn(rc + rd, rd, |a, b| if a == rc + b { 1.into() } else { 0.into() });
        let p = IntMatrix::from_fn(rc, rc + rd, |a, b| if a == b { 1.into() } else { 0.into() });
        let fn_ = int(&f.component(n))?;
        let fn1 = int(&f.component(n - 1))?;

        let zd = cycles(d, n)?;
        let image = cycles(c, n)?.image(&fn_).sum(&boundaries(d, n)?);
        let kernel = zd.intersect(&boundaries(&k, n)?.preimage(&j));
        out.push(check(n, Spot::Target, image, kernel));

        let zk = cycles(&k, n)?;
        let image = zd.image(&j).sum(&boundaries(&k, n)?);
        let kernel = zk.intersect(&boundaries(c, n - 1)?.preimage(&p));
        out.push(check(n, Spot::Cone, image, kernel));

        let image = zk.image(&p).sum(&boundaries(c, n - 1)?);
        let kernel = cycles(c, n - 1)?.intersect(&boundaries(d, n - 1)?.preimage(&fn1));
        out.push(check(n, Spot::Source, image, kernel));
    }
    Ok(out)
}

pub fn les_is_exact(f: &ChainMap) -> Result<bool> {
    Ok(les_checks(f)?.iter().all(|s| s.composite_zero && s.exact))
}
