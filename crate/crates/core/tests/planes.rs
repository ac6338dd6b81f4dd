use planeform::corpus::FIXTURES;
use planeform::form::Strategy;
use planeform::plane::find_isomorphism;
use planeform::{
    build_field_plane, canonical_fano_form, check_axioms, develop, discover_structure,
    form_from_difference_set, DifferenceSet, ProjectivePlane,
};

#[test]
fn developed_planes_match_field_planes() {
    for (q, residues) in [
        (2i64, vec![0, 1, 3]),
        (3, vec![0, 1, 3, 9]),
        (4, vec![3, 6, 7, 12, 14]),
    ] {
        let n = (q * q + q + 1) as usize;
        let developed = develop(&DifferenceSet::new(n, residues).unwrap()).unwrap();
        let field = build_field_plane(q).unwrap();
        let map = find_isomorphism(&developed, &field).expect("planes of order <= 4 are unique");
        let mut image = map.clone();
        image.sort();
        assert_eq!(image, (0..n).collect::<Vec<_>>());
    }
}

#[test]
fn form_structures_are_planes() {
    let d = DifferenceSet::new(13, [0, 1, 3, 9]).unwrap();
    for strategy in [Strategy::AnchorGrouped, Strategy::TranslationOrder] {
        let form = form_from_difference_set(&d, strategy).unwrap();
        let plane = ProjectivePlane::verify(form.structure()).unwrap();
        assert_eq!(plane.order(), 3);
    }
    let fano = ProjectivePlane::verify(canonical_fano_form().structure()).unwrap();
    assert_eq!(fano.line_through(0, 1).unwrap(), 0);
}

#[test]
fn corpus_discovery_recovers_fano() {
    let fano = canonical_fano_form().structure();
    for fixture in FIXTURES.iter().filter(|f| f.number != 4) {
        let found = discover_structure(&fixture.poem(), 0.6).unwrap();
        assert!(found.axiom_report.all_ok(), "poem {}", fixture.number);
        let induced = planeform::IncidenceStructure::from_document(found.induced).unwrap();
        assert!(find_isomorphism(&induced, &fano).is_some());
    }
}

#[test]
fn enjambed_poem_does_not_close_up() {
    let found = discover_structure(&FIXTURES[1].poem(), 0.6).unwrap();
    assert_eq!(found.clusters.len(), 8);
    let report =
        check_axioms(&planeform::IncidenceStructure::from_document(found.induced).unwrap());
    assert!(!report.axiom1_ok && !report.axiom2_ok && report.axiom3_ok);
}
