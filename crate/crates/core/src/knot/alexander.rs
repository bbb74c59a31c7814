use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::diagram::KnotDiagram;
use super::polynomial::{determinant, LaurentPolynomial};
use crate::error::{Error, Result};

/// The crossing-by-arc Alexander matrix of a diagram.
pub fn alexander_matrix(diagram: &KnotDiagram) -> Vec<Vec<LaurentPolynomial>> {
    let n = diagram.crossing_count();
    let one_minus_t = LaurentPolynomial::from_coefficients(&[1, -1]);
    let t = LaurentPolynomial::monomial(1, 1);
    let minus_one = LaurentPolynomial::monomial(-1, 0);
    let mut m = vec![vec![LaurentPolynomial::zero(); diagram.arcs]; n];
    for c in &diagram.crossings {
        let row = &mut m[c.id];
        row[c.over_arc] = &row[c.over_arc] + &one_minus_t;
        let (incoming, outgoing) = if c.sign > 0 {
            (&t, &minus_one)
        } else {
            (&minus_one, &t)
        };
        row[c.under_in_arc] = &row[c.under_in_arc] + incoming;
        row[c.under_out_arc] = &row[c.under_out_arc] + outgoing;
    }
    m
}

/// Normalized Alexander polynomial, deleting the given row and column of the
/// Alexander matrix.
pub fn alexander_with_deletion(
    diagram: &KnotDiagram,
    row: usize,
    column: usize,
) -> Result<LaurentPolynomial> {
    let n = diagram.crossing_count();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    if row >= n || column >= diagram.arcs {
        return Err(Error::InvalidInput(format!(
            "cannot delete row {row} and column {column} of a {n}-crossing matrix"
        )));
    }
    let minor: Vec<Vec<LaurentPolynomial>> = alexander_matrix(diagram)
        .into_iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, cells)| {
            cells
                .into_iter()
                .enumerate()
                .filter(|&(c, _)| c != column)
                .map(|(_, p)| p)
                .collect()
        })
        .collect();
    let det = determinant(&minor)?;
    if det.is_zero() {
        return Err(Error::InvalidDiagram(
            "Alexander minor vanishes; the code is not a knot diagram".into(),
        ));
    }
    Ok(det.normalized())
}

pub fn alexander_polynomial(diagram: &KnotDiagram) -> Result<LaurentPolynomial> {
    alexander_with_deletion(diagram, 0, 0)
}

/// `|Δ(−1)|`.
pub fn determinant_invariant(diagram: &KnotDiagram) -> Result<BigInt> {
    Ok(alexander_polynomial(diagram)?.evaluate(-1)?.abs())
}

/// Alexander polynomial of the `(p, q)` torus knot,
/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`.
pub fn torus_alexander(p: u32, q: u32) -> Result<LaurentPolynomial> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!(
            "({p}, {q}) is not a torus knot"
        )));
    }
    let t_pow_minus_one =
        |k: u32| &LaurentPolynomial::monomial(1, k as i64) - &LaurentPolynomial::one();
    let numerator = &t_pow_minus_one(p * q) * &t_pow_minus_one(1);
    let denominator = &t_pow_minus_one(p) * &t_pow_minus_one(q);
    Ok(numerator.exact_div(&denominator)?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::diagram::GaussEntry;

    fn poly(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coefficients(c)
    }

    fn code(signed: &[i64], signs: &[i8]) -> KnotDiagram {
        let gauss = signed
            .iter()
            .map(|&k| {
                let crossing = k.unsigned_abs() as usize - 1;
                GaussEntry {
                    crossing,
                    over: k > 0,
                    sign: signs[crossing],
                }
            })
            .collect();
        KnotDiagram::from_gauss(gauss).unwrap()
    }

    #[test]
    fn torus_references() {
        assert_eq!(torus_alexander(3, 2).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(
            torus_alexander(7, 2).unwrap(),
            poly(&[1, -1, 1, -1, 1, -1, 1])
        );
        assert_eq!(torus_alexander(5, 1).unwrap(), poly(&[1]));
        assert_eq!(
            torus_alexander(4, 3).unwrap(),
            poly(&[1, -1, 0, 1, 0, -1, 1])
        );
        assert!(torus_alexander(4, 2).is_err());
    }

    #[test]
    fn trefoil_and_figure_eight_codes() {
        let trefoil = code(&[1, -2, 3, -1, 2, -3], &[1, 1, 1]);
        assert_eq!(alexander_polynomial(&trefoil).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(determinant_invariant(&trefoil).unwrap(), BigInt::from(3));
        let mirror = code(&[1, -2, 3, -1, 2, -3], &[-1, -1, -1]);
        assert_eq!(alexander_polynomial(&mirror).unwrap(), poly(&[1, -1, 1]));
        let figure_eight = code(&[1, -2, 3, -4, 2, -1, 4, -3], &[-1, -1, 1, 1]);
        assert_eq!(
            alexander_polynomial(&figure_eight).unwrap(),
            poly(&[-1, 3, -1]).normalized()
        );
    }

    #[test]
    fn every_deletion_agrees() {
        let figure_eight = code(&[1, -2, 3, -4, 2, -1, 4, -3], &[-1, -1, 1, 1]);
        let reference = alexander_polynomial(&figure_eight).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(
                    alexander_with_deletion(&figure_eight, r, c).unwrap(),
                    reference
                );
            }
        }
    }
}
