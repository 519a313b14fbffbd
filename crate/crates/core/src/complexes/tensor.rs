use num_bigint::BigInt;

use super::chain::{sign, ChainComplex};
use super::homology::{homology, localized_homology, Coefficients, GroupDescription};
use crate::algebra::{linalg, IntMatrix, Lattice, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::localize::SigmaSet;

/// `M = coker(relations: R^r → R^generators)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Ring,
    generators: usize,
    relations: Matrix,
}

impl ModulePresentation {
    pub fn new(ring: Ring, generators: usize, relations: Matrix) -> Result<ModulePresentation> {
        ring.ensure_same(relations.ring())?;
        if relations.rows() != generators {
            return Err(Error::Shape(format!(
                "relations have {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(ModulePresentation { ring, generators, relations })
    }

    /// `Z/a_1 ⊕ … ⊕ Z/a_k` (a zero entry gives a free summand).
    pub fn cyclic_sum(orders: &[i64]) -> ModulePresentation {
        let k = orders.len();
        let rel = Matrix::from_fn(Ring::Integers, k, k, |i, j| {
            Scalar::from_i64(Ring::Integers, if i == j { orders[i] } else { 0 })
        });
        ModulePresentation { ring: Ring::Integers, generators: k, relations: rel }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// A length-one free resolution `0 → F_1 → F_0` in degrees 1, 0 whose
    /// differential is injective. Over Z, `F_1` is a basis of the relation
    /// lattice; over a field, of the column space.
    pub fn resolution(&self) -> Result<ChainComplex> {
        match self.ring {
            Ring::Integers => {
                let basis = Lattice::span(&IntMatrix::from_matrix(&self.relations)?).basis().to_matrix();
                let basis = if basis.rows() == self.generators {
                    basis
                } else {
                    Matrix::zeros(Ring::Integers, self.generators, 0)
                };
                Ok(ChainComplex::two_term(0, basis))
            }
            r if r.is_field() => {
                let e = linalg::rref(&self.relations.transpose())?;
                let rank = e.rank();
                let basis = e.reduced.submatrix(0..rank, 0..self.generators).transpose();
                Ok(ChainComplex::two_term(0, basis))
            }
            r => Err(Error::Unsupported(format!("resolutions over {r}"))),
        }
    }

    /// The module itself as a group description.
    pub fn describe(&self) -> Result<GroupDescription> {
        let h = homology(&self.resolution()?)?;
        Ok(h.get(0).cloned().unwrap_or_else(|| GroupDescription::zero(Coefficients::Ring(self.ring))))
    }
}

/// Offsets of the summands `C_p ⊗ D_q` (`p` ascending) inside
/// `(C ⊗ D)_n`: entries `(p, q, offset, size)`.
pub fn tensor_layout(c: &ChainComplex, d: &ChainComplex, n: i64) -> Vec<(i64, i64, usize, usize)> {
    let mut out = Vec::new();
    let (Some((clo, chi)), Some(_)) = (c.support(), d.support()) else {
        return out;
    };
    let mut offset = 0;
    for p in clo..=chi {
        let q = n - p;
        let size = c.rank(p) * d.rank(q);
        if size > 0 {
            out.push((p, q, offset, size));
            offset += size;
        }
    }
    out
}

/// `(C ⊗ D)_n = ⊕_{p+q=n} C_p ⊗ D_q` with
/// `d(x ⊗ y) = dx ⊗ y + (−1)^p x ⊗ dy`. The basis of `C_p ⊗ D_q` is
/// `e_i ⊗ f_j ↦ i·rank D_q + j`.
pub fn tensor_product(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    c.ring().ensure_same(d.ring())?;
    let ring = c.ring();
    if !ring.is_commutative() {
        return Err(Error::Unsupported(format!("tensor products over {ring}")));
    }
    let (Some((clo, chi)), Some((dlo, dhi))) = (c.support(), d.support()) else {
        return Ok(ChainComplex::zero(ring));
    };
    let (lo, hi) = (clo + dlo, chi + dhi);
    let rank = |n: i64| tensor_layout(c, d, n).iter().map(|t| t.3).sum::<usize>();
    let ranks = (lo..=hi).map(rank).collect();
    ChainComplex::from_fn(ring, lo, ranks, |n| {
        let mut m = Matrix::zeros(ring, rank(n - 1), rank(n));
        let target = tensor_layout(c, d, n - 1);
        let find = |p: i64| target.iter().find(|t| t.0 == p).map(|t| t.2);
        for (p, q, col, _) in tensor_layout(c, d, n) {
            let mut place = |row: usize, block: Matrix| {
                for i in 0..block.rows() {
                    for j in 0..block.cols() {
                        m.set(row + i, col + j, block.get(i, j).clone());
                    }
                }
            };
            if let Some(row) = find(p - 1) {
                place(row, c.d(p).kronecker(&Matrix::identity(ring, d.rank(q))).expect("kron"));
            }
            if let Some(row) = find(p) {
                let s = Scalar::from_i64(ring, sign(p));
                place(row, Matrix::identity(ring, c.rank(p)).kronecker(&d.d(q)).expect("kron").scale(&s));
            }
        }
        m
    })
}

/// An argument of Tor: a finitely presented module or a localization σ⁻¹R
/// of the ring itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorModule {
    Presented(ModulePresentation),
    Localized(SigmaSet),
}

impl TorModule {
    fn ring(&self) -> Ring {
        match self {
            TorModule::Presented(m) => m.ring(),
            TorModule::Localized(s) => s.ring(),
        }
    }
}

/// `Tor_i(M, N)` for `i = 0..=max_i`.
///
/// Over Z, both presented arguments are resolved in length one and
/// `Tor_i = H_i(P ⊗ Q)`; the total complex lives in degrees 0..2 so
/// `Tor_i = 0` for `i ≥ 2`. Against σ⁻¹Z, `Tor_i(M, σ⁻¹Z) = H_i(σ⁻¹P)`,
/// computed over the PID σ⁻¹Z. Two localizations have
/// `Tor_i = 0` for `i ≥ 1` since each is a filtered colimit of copies of Z.
/// Over a field every `Tor_i`, `i ≥ 1`, vanishes.
pub fn tor(m: &TorModule, n: &TorModule, max_i: usize) -> Result<Vec<GroupDescription>> {
    let ring = m.ring();
    ring.ensure_same(n.ring())?;
    if !ring.is_commutative() {
        return Err(Error::Unsupported(format!("Tor over {ring}")));
    }
    let pad = |mut groups: Vec<GroupDescription>, coeffs: Coefficients| {
        groups.resize(max_i + 1, GroupDescription::zero(coeffs));
        groups.truncate(max_i + 1);
        groups
    };
    match (m, n) {
        (TorModule::Presented(a), TorModule::Presented(b)) if ring.is_field() => {
            let da = a.describe()?.free_rank;
            let db = b.describe()?.free_rank;
            let coeffs = Coefficients::Ring(ring);
            let t0 = GroupDescription { free_rank: da * db, torsion: Vec::new(), coefficients: coeffs.clone() };
            Ok(pad(vec![t0], coeffs))
        }
        (TorModule::Presented(a), TorModule::Presented(b)) => {
            let total = tensor_product(&a.resolution()?, &b.resolution()?)?;
            let h = homology(&total)?;
            let coeffs = Coefficients::Ring(ring);
            let groups = (0..=max_i as i64)
                .map(|i| h.get(i).cloned().unwrap_or_else(|| GroupDescription::zero(coeffs.clone())))
                .collect();
            Ok(groups)
        }
        (TorModule::Presented(a), TorModule::Localized(s)) | (TorModule::Localized(s), TorModule::Presented(a)) => {
            let h = localized_homology(&a.resolution()?, s)?;
            let coeffs = Coefficients::Localized(s.clone());
            let groups = (0..=max_i as i64)
                .map(|i| h.get(i).cloned().unwrap_or_else(|| GroupDescription::zero(coeffs.clone())))
                .collect();
            Ok(groups)
        }
        (TorModule::Localized(s), TorModule::Localized(t)) => {
            let joint = join_localizations(s, t)?;
            let coeffs = Coefficients::Localized(joint);
            let t0 = GroupDescription { free_rank: 1, torsion: Vec::new(), coefficients: coeffs.clone() };
            Ok(pad(vec![t0], coeffs))
        }
    }
}

/// `σ⁻¹R ⊗ τ⁻¹R = (σ ∪ τ)⁻¹R` for central σ, τ.
fn join_localizations(s: &SigmaSet, t: &SigmaSet) -> Result<SigmaSet> {
    if s.localizes_to_field() {
        return Ok(s.clone());
    }
    if t.localizes_to_field() {
        return Ok(t.clone());
    }
    let mut gens = s.central_generators()?.unwrap_or_default();
    gens.extend(t.central_generators()?.unwrap_or_default());
    SigmaSet::central(s.ring(), gens)
}

/// `|Tor_1^Z(M, N)|` for finite presented modules.
pub fn tor1_order(m: &ModulePresentation, n: &ModulePresentation) -> Result<Option<BigInt>> {
    let t = tor(&TorModule::Presented(m.clone()), &TorModule::Presented(n.clone()), 1)?;
    Ok(t[1].order())
}
