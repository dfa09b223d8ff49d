//! Whole-catalog template searches: the twelve underlying sphere complexes
//! carry exactly the 31 classes, relabeling does not disturb the search, and
//! doubly-nudged decorations fail the overlap condition.

use std::collections::BTreeSet;
use sturm::catalog::{build_case, cases};
use sturm::complex::{
    enumerate_templates, skeleta_isomorphic, validate_template, CellComplex2, ComplexBuilder,
    ComplexKind, SearchOptions, TemplateData,
};
use sturm::enumerate::{census, CensusFilter};
use sturm::perm::Permutation;

#[test]
fn twelve_complexes_carry_exactly_the_31_classes() {
    // distinct underlying sphere complexes of the census cases
    let mut complexes: Vec<CellComplex2> = Vec::new();
    for case in cases() {
        let t = build_case(case.case_id).unwrap();
        let known = complexes.iter().any(|c| {
            c.face_count() == t.complex.face_count()
                && sorted_face_sizes(c) == sorted_face_sizes(&t.complex)
                && skeleta_isomorphic(c, &t.complex)
        });
        if !known {
            complexes.push(t.complex.clone());
        }
    }
    assert_eq!(complexes.len(), 12, "underlying regular sphere complexes");

    let mut union: BTreeSet<Permutation> = BTreeSet::new();
    for c in &complexes {
        let search = enumerate_templates(c, &SearchOptions::default()).unwrap();
        assert!(!search.capped);
        union.extend(search.classes.into_iter().map(|cl| cl.canonical));
    }
    let expected: BTreeSet<Permutation> = (7..=13)
        .step_by(2)
        .flat_map(|n| {
            census(n, CensusFilter::Ball3)
                .unwrap()
                .representatives
                .into_iter()
                .map(|r| r.canonical)
        })
        .collect();
    assert_eq!(union, expected);
}

fn sorted_face_sizes(c: &CellComplex2) -> Vec<usize> {
    let mut sizes: Vec<usize> = c.faces.iter().map(|f| f.boundary.len()).collect();
    sizes.sort();
    sizes
}

#[test]
fn search_is_stable_under_relabeling() {
    let t = build_case("6.5/7").unwrap();
    let base = enumerate_templates(&t.complex, &SearchOptions::default()).unwrap();
    // rebuild the same complex with scrambled identifiers and vertex order
    let c = &t.complex;
    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    let vname = |v: usize| format!("x{}", (v * 7 + 3) % 97);
    let mut order: Vec<usize> = (0..c.vertex_count()).collect();
    order.reverse();
    for &v in &order {
        b.vertex(&vname(v)).unwrap();
    }
    for (e, edge) in c.edges.iter().enumerate() {
        b.edge(&format!("k{}", e), &vname(edge.tail), &vname(edge.head))
            .unwrap();
    }
    for (f, face) in c.faces.iter().enumerate() {
        let boundary: Vec<(String, bool)> = face
            .boundary
            .iter()
            .map(|&(e, fwd)| (format!("k{}", e), fwd))
            .collect();
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, x)| (s.as_str(), *x)).collect();
        b.face(&format!("g{}", f), &refs).unwrap();
    }
    let scrambled = b.finish().unwrap();
    let again = enumerate_templates(&scrambled, &SearchOptions::default()).unwrap();
    let keys = |s: &sturm::complex::TemplateSearch| -> BTreeSet<Permutation> {
        s.classes.iter().map(|cl| cl.canonical.clone()).collect()
    };
    assert_eq!(keys(&base), keys(&again));
}

/// Nudging interior paths of both hemispheres onto the same meridian sink
/// violates the anchor-face overlap, exactly as the census derivation rules
/// it out.
#[test]
fn doubly_nudged_decoration_fails_the_overlap() {
    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    for v in ["N", "S", "v"] {
        b.vertex(v).unwrap();
    }
    b.edge("p1", "N", "v").unwrap();
    b.edge("p2", "v", "S").unwrap();
    b.edge("q", "N", "S").unwrap();
    b.edge("s", "N", "v").unwrap(); // western interior path, nudged tail
    b.edge("r", "v", "S").unwrap(); // eastern interior path, nudged head
    b.face("g1", &[("p1", true), ("s", false)]).unwrap();
    b.face("g2", &[("s", true), ("p2", true), ("q", false)])
        .unwrap();
    b.face("f1", &[("q", true), ("r", false), ("p1", false)])
        .unwrap();
    b.face("f2", &[("r", true), ("p2", false)]).unwrap();
    let complex = b.finish().unwrap();
    let data = TemplateData {
        north: complex.vertex_idx("N").unwrap(),
        south: complex.vertex_idx("S").unwrap(),
        meridian_we: vec![
            complex.edge_idx("p1").unwrap(),
            complex.edge_idx("p2").unwrap(),
        ],
        meridian_ew: vec![complex.edge_idx("q").unwrap()],
        west: [
            complex.face_idx("g1").unwrap(),
            complex.face_idx("g2").unwrap(),
        ]
        .into_iter()
        .collect(),
        east: [
            complex.face_idx("f1").unwrap(),
            complex.face_idx("f2").unwrap(),
        ]
        .into_iter()
        .collect(),
        center: "O".into(),
    };
    let t = sturm::complex::ThreeCellTemplate { complex, data };
    let check = validate_template(&t);
    assert!(!check.valid);
    assert!(
        check
            .violations
            .iter()
            .any(|v| v.contains("overlap")),
        "violations: {:?}",
        check.violations
    );
}
