use num_bigint::BigInt;
use num_traits::Signed;

use super::alexander::{alexander_polynomial, torus_alexander};
use super::diagram::{extract_diagram, KnotDiagram, DEFAULT_PERTURBATION};
use super::polynomial::LaurentPolynomial;
use crate::constructions::{FamilyId, FamilyTag, TorusKnotParams};
use crate::error::Result;
use crate::formulas::{crossing_number, family_crossing_number};
use crate::layout::layout;
use crate::program::FoldProgram;

/// Outcome of comparing a ribbon's diagram with an expected knot.
#[derive(Clone, Debug, PartialEq)]
pub struct Certification {
    pub diagram: KnotDiagram,
    pub alexander: LaurentPolynomial,
    pub reference: LaurentPolynomial,
    /// `|Δ(−1)|` of the extracted diagram.
    pub determinant: BigInt,
    /// Crossing number of the expected knot; no diagram can have fewer crossings.
    pub crossing_bound: u64,
}

impl Certification {
    pub fn crossings(&self) -> usize {
        self.diagram.crossing_count()
    }

    pub fn polynomial_matches(&self) -> bool {
        self.alexander == self.reference
    }

    pub fn bound_holds(&self) -> bool {
        self.crossings() as u64 >= self.crossing_bound
    }

    pub fn passed(&self) -> bool {
        self.polynomial_matches() && self.bound_holds()
    }
}

/// Extracts the diagram of a closed program and compares its Alexander
/// polynomial with `reference` (normalized on entry).
pub fn certify(
    program: &FoldProgram,
    reference: &LaurentPolynomial,
    crossing_bound: u64,
) -> Result<Certification> {
    let folded = layout(program)?;
    let diagram = extract_diagram(&folded, DEFAULT_PERTURBATION)?;
    let alexander = alexander_polynomial(&diagram)?;
    let determinant = alexander.evaluate(-1)?.abs();
    Ok(Certification {
        diagram,
        alexander,
        reference: reference.normalized(),
        determinant,
        crossing_bound,
    })
}

/// Certifies that a closed program ties the `(p, q)` torus knot.
pub fn verify_knot_type(program: &FoldProgram, expected: TorusKnotParams) -> Result<Certification> {
    let reference = torus_alexander(expected.p, expected.q)?;
    let bound = crossing_number(expected.p as u64, expected.q as u64)?;
    certify(program, &reference, bound)
}

/// Alexander polynomial of the 7₄ knot.
pub fn seven_four_alexander() -> LaurentPolynomial {
    LaurentPolynomial::from_coefficients(&[4, -7, 4])
}

/// The normalized Alexander polynomial a family's ribbon should have.
pub fn expected_alexander(family: &FamilyId) -> Result<LaurentPolynomial> {
    match family.knot() {
        Some(k) => torus_alexander(k.p, k.q),
        None if family.tag == FamilyTag::Rect74 => Ok(seven_four_alexander()),
        None => Err(crate::error::Error::Parameter(format!(
            "{family} does not name a knot"
        ))),
    }
}

/// Certifies a program against the knot its family claims.
pub fn certify_family(program: &FoldProgram, family: &FamilyId) -> Result<Certification> {
    certify(
        program,
        &expected_alexander(family)?,
        family_crossing_number(family)?,
    )
}
