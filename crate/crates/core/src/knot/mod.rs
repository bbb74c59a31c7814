//! Knot diagrams of folded ribbons and their Alexander polynomials.

mod alexander;
mod certify;
mod diagram;
mod polynomial;

pub use alexander::{
    alexander_matrix, alexander_polynomial, alexander_with_deletion, determinant_invariant,
    torus_alexander,
};
pub use certify::{
    certify, certify_family, expected_alexander, seven_four_alexander, verify_knot_type,
    Certification,
};
pub use diagram::{extract_diagram, Crossing, GaussEntry, KnotDiagram, DEFAULT_PERTURBATION};
pub use polynomial::{determinant, LaurentPolynomial};
