//! Exact computations in noncommutative (Cohn) localizations.
//!
//! * [`algebra`]: scalars and matrices over Z, Q, F_p and free algebras,
//!   Smith normal form, exact elimination.
//! * [`localize`]: Ore fractions, Cohn triples `f s^-1 g`, and rational
//!   noncommutative series as linear representations.
//! * [`complexes`]: bounded chain complexes of free modules, cones,
//!   homology, tensor products and Tor.
//! * [`lifting`]: lifting localized complexes back to the ring, complex
//!   shortening and the length-3 Toda obstruction.
//! * [`ltheory`]: Q-groups, symmetric structures, torsion duals, linking
//!   forms and Witt triviality.
//! * [`cli`]: the JSON document format and command dispatcher.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod lifting;
pub mod localize;
pub mod ltheory;

pub use error::{Error, Result};
