use num_bigint::BigInt;
use ribbon_core::constructions::*;
use ribbon_core::knot::*;
use ribbon_core::{layout, Error, Presentation};

fn poly(c: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::from_coefficients(c)
}

/// Every construction certified by the suite, with the knot it claims.
fn certified_builds() -> Vec<(FamilyId, ribbon_core::FoldProgram)> {
    let mut out = Vec::new();
    let mut add = |tag, k: Option<u32>| {
        let id = FamilyId::new(tag, k).unwrap();
        out.push((id, build(&id, Presentation::Closed, None).unwrap()));
    };
    for q in 2..=5 {
        add(FamilyTag::OddWrap, Some(q));
    }
    for p in [7, 9, 11] {
        add(FamilyTag::StarPolygon, Some(p));
    }
    for q in 2..=4 {
        add(FamilyTag::Pinwheel, Some(q));
    }
    for q in [3, 5] {
        add(FamilyTag::EvenWrapPlus2, Some(q));
        add(FamilyTag::EvenWrapPlus4, Some(q));
    }
    add(FamilyTag::Short52, None);
    add(FamilyTag::Short72, None);
    out
}

#[test]
fn constructions_tie_their_torus_knots() {
    for (id, program) in certified_builds() {
        let cert =
            verify_knot_type(&program, id.knot().unwrap()).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert!(cert.polynomial_matches(), "{id}: got {}", cert.alexander);
        assert!(
            cert.bound_holds(),
            "{id}: only {} crossings",
            cert.crossings()
        );
    }
}

#[test]
fn wrong_expectation_fails_certification() {
    let program = build_odd_wrap(3, Presentation::Closed).unwrap();
    let cert = verify_knot_type(&program, TorusKnotParams::new(5, 2).unwrap()).unwrap();
    assert!(!cert.passed());
}

/// Rolfsen-table PD code of 7₄: `X(a, b, c, d)` lists edges counterclockwise
/// from the incoming under-edge.
const SEVEN_FOUR_PD: [[usize; 4]; 7] = [
    [13, 7, 0, 6],
    [5, 1, 6, 0],
    [1, 11, 2, 10],
    [9, 3, 10, 2],
    [3, 9, 4, 8],
    [11, 5, 12, 4],
    [7, 13, 8, 12],
];

fn diagram_from_pd(pd: &[[usize; 4]]) -> KnotDiagram {
    let edges = 2 * pd.len();
    let next = |e: usize| (e + 1) % edges;
    let signs: Vec<i8> = pd
        .iter()
        .map(|&[_, b, _, d]| if b == next(d) { 1 } else { -1 })
        .collect();
    let mut gauss = Vec::new();
    for e in 0..edges {
        for (id, &[a, b, _, d]) in pd.iter().enumerate() {
            let over = (b == e && d == next(e)) || (d == e && b == next(e));
            if a == e || over {
                gauss.push(GaussEntry {
                    crossing: id,
                    over,
                    sign: signs[id],
                });
            }
        }
    }
    // Crossing ids must be numbered by first appearance for a canonical code.
    KnotDiagram::from_gauss(gauss).unwrap()
}

#[test]
fn seven_four_matches_the_knot_table() {
    let oracle = alexander_polynomial(&diagram_from_pd(&SEVEN_FOUR_PD)).unwrap();
    assert_eq!(oracle, poly(&[4, -7, 4]));
    assert_eq!(seven_four_alexander(), oracle);

    let folded = layout(&build_74().unwrap()).unwrap();
    let diagram = extract_diagram(&folded, DEFAULT_PERTURBATION).unwrap();
    assert_eq!(alexander_polynomial(&diagram).unwrap(), oracle);
    assert_eq!(determinant_invariant(&diagram).unwrap(), BigInt::from(15));
    assert!(diagram.crossing_count() >= 7);
}

#[test]
fn gauss_codes_are_valid() {
    for (id, program) in certified_builds() {
        let diagram = extract_diagram(&layout(&program).unwrap(), DEFAULT_PERTURBATION).unwrap();
        let n = diagram.crossing_count();
        assert_eq!(diagram.gauss.len(), 2 * n, "{id}");
        for c in 0..n {
            let visits: Vec<_> = diagram.gauss.iter().filter(|e| e.crossing == c).collect();
            assert_eq!(visits.len(), 2, "{id}: crossing {c}");
            assert_ne!(visits[0].over, visits[1].over, "{id}: crossing {c}");
            assert_eq!(visits[0].sign, visits[1].sign, "{id}: crossing {c}");
        }
        // Ids are numbered in order of first appearance.
        let mut next = 0;
        for e in &diagram.gauss {
            assert!(e.crossing <= next, "{id}");
            if e.crossing == next {
                next += 1;
            }
        }
    }
}

#[test]
fn alexander_polynomials_are_symmetric_with_unit_value_at_one() {
    for (id, program) in certified_builds() {
        let diagram = extract_diagram(&layout(&program).unwrap(), DEFAULT_PERTURBATION).unwrap();
        let a = alexander_polynomial(&diagram).unwrap();
        assert!(a.is_palindromic(), "{id}: {a}");
        assert_eq!(a.evaluate(1).unwrap(), BigInt::from(1), "{id}");
    }
}

#[test]
fn deleted_row_and_column_do_not_matter() {
    let mut diagrams = vec![diagram_from_pd(&SEVEN_FOUR_PD)];
    for (_, program) in certified_builds() {
        let d = extract_diagram(&layout(&program).unwrap(), DEFAULT_PERTURBATION).unwrap();
        if d.crossing_count() <= 10 {
            diagrams.push(d);
        }
    }
    assert!(diagrams.len() >= 5);
    for d in &diagrams {
        let n = d.crossing_count();
        let reference = alexander_with_deletion(d, 0, 0).unwrap();
        for r in 0..n {
            for c in 0..n {
                assert_eq!(
                    alexander_with_deletion(d, r, c).unwrap(),
                    reference,
                    "row {r} column {c}"
                );
            }
        }
    }
}

#[test]
fn diagrams_are_stable_under_smaller_perturbations() {
    for (id, program) in certified_builds() {
        let folded = layout(&program).unwrap();
        let reference = extract_diagram(&folded, DEFAULT_PERTURBATION).unwrap();
        for perturbation in [DEFAULT_PERTURBATION / 4.0, DEFAULT_PERTURBATION / 16.0] {
            let d = extract_diagram(&folded, perturbation).unwrap();
            if id.tag.is_parametric() {
                assert_eq!(d.gauss, reference.gauss, "{id} at {perturbation}");
            } else {
                // The retraced runs sit ε apart, so once the layer offset is
                // much smaller than ε the diagram may change, but not the knot.
                let expected = alexander_polynomial(&reference).unwrap();
                assert_eq!(
                    alexander_polynomial(&d).unwrap(),
                    expected,
                    "{id} at {perturbation}"
                );
            }
        }
    }
    for q in 2..=6 {
        let folded = layout(&build_odd_wrap(q, Presentation::Closed).unwrap()).unwrap();
        let a = extract_diagram(&folded, DEFAULT_PERTURBATION).unwrap();
        let b = extract_diagram(&folded, DEFAULT_PERTURBATION / 2.0).unwrap();
        assert_eq!(a.gauss, b.gauss);
    }
}

#[test]
fn short_presentations_certify_across_epsilon() {
    for epsilon in [1e-4, 1e-3, 1e-2] {
        let p52 = build_short_52(epsilon).unwrap();
        assert!(verify_knot_type(&p52, TorusKnotParams::new(5, 2).unwrap())
            .unwrap()
            .passed());
        let p72 = build_short_72(epsilon).unwrap();
        assert!(verify_knot_type(&p72, TorusKnotParams::new(7, 2).unwrap())
            .unwrap()
            .passed());
    }
}

#[test]
fn open_strips_have_no_diagram() {
    let folded = layout(&build_odd_wrap(3, Presentation::Truncated).unwrap()).unwrap();
    assert!(matches!(
        extract_diagram(&folded, DEFAULT_PERTURBATION),
        Err(Error::NotApplicable(_))
    ));
}

#[test]
fn coincident_equal_layers_are_rejected() {
    // Lifting the triple-run panels of the short (5,2) ribbon onto one layer
    // makes them coincide.
    let mut program = build_short_52(1e-3).unwrap();
    for c in &mut program.creases {
        c.layer_shift = 0;
    }
    let folded = layout(&program).unwrap();
    assert!(matches!(
        extract_diagram(&folded, DEFAULT_PERTURBATION),
        Err(Error::DegenerateDiagram(_) | Error::Layering(_))
    ));
}

#[test]
fn determinants_of_torus_families() {
    let star = layout(&build_star_polygon(7).unwrap()).unwrap();
    assert_eq!(
        determinant_invariant(&extract_diagram(&star, DEFAULT_PERTURBATION).unwrap()).unwrap(),
        BigInt::from(7)
    );
    let trefoil = layout(&build_odd_wrap(2, Presentation::Closed).unwrap()).unwrap();
    let d = extract_diagram(&trefoil, DEFAULT_PERTURBATION).unwrap();
    assert!(d.crossing_count() >= 3);
    assert_eq!(determinant_invariant(&d).unwrap(), BigInt::from(3));
    assert_eq!(alexander_polynomial(&d).unwrap(), poly(&[1, -1, 1]));
}
