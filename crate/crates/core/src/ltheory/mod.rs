//! Symmetric and quadratic structures, Q-groups, and torsion L-theory over Z
//! (linking forms on finite abelian groups).

mod linking;
mod qgroups;

pub use linking::{
    boundary_linking_form, double_dual_check, extension_iv, hom_order, hom_tor_orders, linking_nonsingular,
    linking_pairing, torsion_dual, witt_metabolic_test, Extension, ExtensionCertificate, LinkingForm, NormalForm,
    TorsionPresentation, WITT_BOUND,
};
pub use qgroups::{
    dual_complex, is_poincare, phi0_map, q_group, symmetrize, Epsilon, PoincareMode, QuadraticStructure, Side,
    Structure, SymmetricStructure,
};
