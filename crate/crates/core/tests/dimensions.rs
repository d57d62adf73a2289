use kempe_core::exactfield::FieldSpec;
use kempe_core::graphalg::ValenceVector;
use kempe_core::invring::{graded_dimension, graded_dimension_with, linear_relation_space, Mode, SymPower, SPANNING_CAP};

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn unit_weight_dimensions_are_catalan() {
    for (n, expected) in [(2, 1), (4, 2), (6, 5), (8, 14), (10, 42), (12, 132)] {
        assert_eq!(graded_dimension(n, &ValenceVector::uniform(n, 1), Q).unwrap(), expected, "n = {n}");
    }
}

#[test]
fn five_points() {
    assert_eq!(graded_dimension(5, &ValenceVector::uniform(5, 1), Q).unwrap(), 0);
    assert_eq!(graded_dimension(5, &ValenceVector::uniform(5, 2), Q).unwrap(), 6);
}

#[test]
fn exact_coordinates_agree_with_certificate() {
    let cases = [
        (6, ValenceVector::uniform(6, 1)),
        (6, ValenceVector::uniform(6, 2)),
        (5, ValenceVector(vec![2, 2, 2, 1, 1])),
        (8, ValenceVector::uniform(8, 1)),
    ];
    for (n, v) in cases {
        let certified = graded_dimension(n, &v, Q).unwrap();
        for mode in [Mode::FullCoefficients, Mode::SampledEvaluations] {
            assert_eq!(graded_dimension_with(n, &v, Q, Some(mode), 7, SPANNING_CAP).unwrap(), certified, "{v} {mode:?}");
        }
    }
}

#[test]
fn small_characteristic_recomputes_rank() {
    for p in [2, 3, 5] {
        let f = FieldSpec::prime(p).unwrap();
        assert_eq!(graded_dimension(8, &ValenceVector::uniform(8, 1), f).unwrap(), 14, "p = {p}");
    }
}

#[test]
fn eight_point_degree_two() {
    assert_eq!(graded_dimension(8, &ValenceVector::uniform(8, 2), Q).unwrap(), 91);
    assert_eq!(SymPower::new(8, &ValenceVector::uniform(8, 1), 2).dim(), 105);
}

#[test]
fn cross_ratio_line() {
    let rels = linear_relation_space(4, &ValenceVector::uniform(4, 1), Q).unwrap();
    assert_eq!(rels.len(), 1);
    let coeffs: Vec<String> = rels[0].terms().values().map(|c| c.to_string()).collect();
    assert_eq!(coeffs.len(), 3);
    assert!(coeffs.iter().all(|c| c == "1" || c == "-1"));
}

#[test]
fn unrealizable_valences_are_zero() {
    assert_eq!(graded_dimension(3, &ValenceVector(vec![1, 1, 1]), Q).unwrap(), 0);
    assert_eq!(graded_dimension(3, &ValenceVector(vec![4, 1, 1]), Q).unwrap(), 0);
}
