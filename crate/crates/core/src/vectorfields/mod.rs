//! Superdifferential operators with polynomial coefficients and the
//! vectorial Lie algebras built from them.

mod adjoint;
mod density;
mod diffop;
mod domain;
mod formulas;
mod generic;
mod hamiltonian;
mod spec;

pub use adjoint::{
    ad_power, adjoint_degree_scan, adjoint_identity_check, n_commutator, sampled_adjoint, AdjointItem, AdjointKind,
};
pub use density::{divergence, lambda_density_action};
pub use diffop::{Deriv, DiffOp};
pub use domain::SuperDomain;
pub use formulas::{
    adjoint_antisymmetrizer, kcomm_first_order, row_product, subcritical_eval, vect6_formula, vect6_terms,
    wronskian, DetTerm, GenericFieldFamily, Subcritical,
};
pub use generic::{
    algebra_basis, classify, coordinate_monomial, coordinate_names, critical_scan, exponent_vectors,
    generic_odd_derivation, sample_fields, spec_domain, CriticalItem, CriticalScan, GenericDerivation,
};
pub use hamiltonian::{h5_determinant, h5_generating, hamiltonian_field, poisson, H5_ROWS};
pub use spec::{VectorialFamily, VectorialSpec, VECTORIAL_GRAMMAR};
