//! Bounded chain complexes of finitely generated free modules.
//!
//! Indexing is homological (`d_n: C_n → C_{n−1}`). Cochain complexes are
//! encoded by negating degrees: cochain degree `k` lives in degree `−k`.

mod chain;
pub mod exactness;
mod homology;
mod local;
mod tensor;

pub use chain::{cone, shift, validate_complex, ChainComplex, ChainMap};
pub use homology::{homology, localized_homology, Coefficients, GroupDescription, HomologyResult};
pub use local::{clear_denominators, localize_complex, LocalComplex, TripleMatrix};
pub use tensor::{tensor_layout, tensor_product, tor, tor1_order, ModulePresentation, TorModule};

pub(crate) use chain::sign;
pub(crate) use homology::betti_equal;

use crate::error::{Error, Result};

/// `f` induces an isomorphism on homology, i.e. `cone(f)` is acyclic.
/// Over Z this is integral acyclicity.
pub fn is_quasi_iso(f: &ChainMap) -> Result<bool> {
    let ring = f.source().ring();
    if !ring.is_commutative() {
        return Err(Error::Unsupported(format!("quasi-isomorphism test over {ring}")));
    }
    Ok(homology(&cone(f)?)?.is_acyclic())
}
