//! Localizations σ⁻¹R: Ore fractions on commutative backends and Cohn
//! triples in general, with equality decided through linear representations
//! on the free algebra.

mod linrep;
mod ore;
mod sigma;
mod triple;

pub use linrep::{linrep_coefficient, LinearRepresentation, ZeroTest};
pub use ore::{fractional_part, ore_op, OreFraction, OreOp, OreResult};
pub use sigma::{sigma_validate, SigmaSet, SigmaVerdict};
pub use triple::{triple_eq, triple_op, truncated_inverse, CohnTriple, TripleOp};

pub(crate) use ore::lcm_of_denominators;
