//! The five Platonic sphere complexes, their template censuses, and the
//! pole/meridian feasibility scan for the two largest solids.

use crate::complex::{
    enumerate_templates, CellComplex2, ComplexBuilder, ComplexError, ComplexKind, SearchOptions,
    TemplateSearch, ThreeCellTemplate,
};
use crate::dual::sphere_dual;
use std::collections::BTreeMap;

/// Builds an oriented sphere complex from vertex coordinates and face vertex
/// cycles; each cycle is reordered nothing, only checked.
fn sphere_from_cycles(
    names: &[&str],
    faces: &[Vec<usize>],
    edge_of: impl Fn(usize, usize) -> (usize, usize),
) -> Result<CellComplex2, ComplexError> {
    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    for v in names {
        b.vertex(v)?;
    }
    let mut edge_ids: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for cycle in faces {
        for w in 0..cycle.len() {
            let (a, z) = (cycle[w], cycle[(w + 1) % cycle.len()]);
            let key = edge_of(a, z);
            if !edge_ids.contains_key(&key) {
                let id = format!("e{}.{}", names[key.0], names[key.1]);
                b.edge(&id, names[key.0], names[key.1])?;
                edge_ids.insert(key, id);
            }
        }
    }
    for (i, cycle) in faces.iter().enumerate() {
        let mut boundary: Vec<(String, bool)> = Vec::new();
        for w in 0..cycle.len() {
            let (a, z) = (cycle[w], cycle[(w + 1) % cycle.len()]);
            let key = edge_of(a, z);
            boundary.push((edge_ids[&key].clone(), key == (a, z)));
        }
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, f)| (s.as_str(), *f)).collect();
        b.face(&format!("f{}", i + 1), &refs)?;
    }
    b.finish()
}

fn canon(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

pub fn tetrahedron() -> CellComplex2 {
    sphere_from_cycles(
        &["1", "2", "3", "4"],
        &[
            vec![0, 1, 2],
            vec![1, 0, 3],
            vec![2, 3, 0],
            vec![3, 2, 1],
        ],
        canon,
    )
    .expect("tetrahedron is valid")
}

pub fn octahedron() -> CellComplex2 {
    // apex 1, equator 2..5, bottom 6
    sphere_from_cycles(
        &["1", "2", "3", "4", "5", "6"],
        &[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ],
        canon,
    )
    .expect("octahedron is valid")
}

pub fn cube() -> CellComplex2 {
    // top 1..4 over bottom 5..8
    sphere_from_cycles(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &[
            vec![0, 1, 2, 3],
            vec![4, 7, 6, 5],
            vec![0, 4, 5, 1],
            vec![1, 5, 6, 2],
            vec![2, 6, 7, 3],
            vec![3, 7, 4, 0],
        ],
        canon,
    )
    .expect("cube is valid")
}

/// Icosahedron from the golden-rectangle coordinates, faces oriented
/// outward.
pub fn icosahedron() -> CellComplex2 {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut coords: Vec<[f64; 3]> = Vec::new();
    for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
        coords.push([0.0, a, b]);
        coords.push([a, b, 0.0]);
        coords.push([b, 0.0, a]);
    }
    let names: Vec<String> = (1..=12).map(|i| i.to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    // edges join vertices at squared distance 4
    let close = |i: usize, j: usize| -> bool {
        let d: f64 = (0..3).map(|k| (coords[i][k] - coords[j][k]).powi(2)).sum();
        (d - 4.0).abs() < 1e-6
    };
    let mut faces = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if close(i, j) && close(j, k) && close(i, k) {
                    // orient the triangle so its normal points outward
                    let u = [
                        coords[j][0] - coords[i][0],
                        coords[j][1] - coords[i][1],
                        coords[j][2] - coords[i][2],
                    ];
                    let v = [
                        coords[k][0] - coords[j][0],
                        coords[k][1] - coords[j][1],
                        coords[k][2] - coords[j][2],
                    ];
                    let normal = [
                        u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0],
                    ];
                    let center = [
                        coords[i][0] + coords[j][0] + coords[k][0],
                        coords[i][1] + coords[j][1] + coords[k][1],
                        coords[i][2] + coords[j][2] + coords[k][2],
                    ];
                    let dot: f64 = (0..3).map(|m| normal[m] * center[m]).sum();
                    if dot > 0.0 {
                        faces.push(vec![i, j, k]);
                    } else {
                        faces.push(vec![i, k, j]);
                    }
                }
            }
        }
    }
    sphere_from_cycles(&name_refs, &faces, canon).expect("icosahedron is valid")
}

/// Dodecahedron as the dual of the icosahedron.
pub fn dodecahedron() -> CellComplex2 {
    sphere_dual(&icosahedron()).expect("dual of a sphere is a sphere")
}

/// All five, keyed by their usual single-letter names.
pub fn by_name(name: &str) -> Option<CellComplex2> {
    match name {
        "tetrahedron" | "T" => Some(tetrahedron()),
        "octahedron" | "O" => Some(octahedron()),
        "cube" | "hexahedron" | "H" => Some(cube()),
        "dodecahedron" | "D" => Some(dodecahedron()),
        "icosahedron" | "I" => Some(icosahedron()),
        _ => None,
    }
}

/// Full template census of one of the small solids.
pub fn platonic_census(c: &CellComplex2) -> Result<TemplateSearch, ComplexError> {
    enumerate_templates(c, &SearchOptions::default())
}

/// Feasibility scan: which `(pole distance, smaller hemisphere face count)`
/// pairs admit a valid template, taking one completion per configuration.
pub fn feasibility_scan(
    c: &CellComplex2,
    node_cap: u64,
) -> Result<TemplateSearch, ComplexError> {
    enumerate_templates(
        c,
        &SearchOptions {
            node_cap,
            first_per_config: true,
        },
    )
}

/// Deterministic sample template on a sphere with the given pole distance
/// and smaller-hemisphere face count: the first class found by the scan.
pub fn sample_template(
    c: &CellComplex2,
    delta: usize,
    eta: usize,
    node_cap: u64,
) -> Result<Option<ThreeCellTemplate>, ComplexError> {
    let scan = feasibility_scan(c, node_cap)?;
    Ok(scan
        .classes
        .into_iter()
        .find(|cl| cl.delta == delta && cl.eta == eta)
        .map(|cl| cl.representative))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::skeleta_isomorphic;

    #[test]
    fn solids_have_the_right_cell_counts() {
        let t = tetrahedron();
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (4, 6, 4));
        let o = octahedron();
        assert_eq!((o.vertex_count(), o.edge_count(), o.face_count()), (6, 12, 8));
        let h = cube();
        assert_eq!((h.vertex_count(), h.edge_count(), h.face_count()), (8, 12, 6));
        let i = icosahedron();
        assert_eq!(
            (i.vertex_count(), i.edge_count(), i.face_count()),
            (12, 30, 20)
        );
        let d = dodecahedron();
        assert_eq!(
            (d.vertex_count(), d.edge_count(), d.face_count()),
            (20, 30, 12)
        );
    }

    #[test]
    fn standard_dualities() {
        assert!(skeleta_isomorphic(
            &sphere_dual(&tetrahedron()).unwrap(),
            &tetrahedron()
        ));
        assert!(skeleta_isomorphic(&sphere_dual(&cube()).unwrap(), &octahedron()));
        assert!(skeleta_isomorphic(
            &sphere_dual(&octahedron()).unwrap(),
            &cube()
        ));
        assert!(skeleta_isomorphic(
            &sphere_dual(&dodecahedron()).unwrap(),
            &icosahedron()
        ));
    }

    #[test]
    fn tetrahedron_census_has_two_classes() {
        let census = platonic_census(&tetrahedron()).unwrap();
        assert!(!census.capped);
        assert_eq!(census.classes.len(), 2);
        for class in &census.classes {
            assert_eq!(class.delta, 1);
        }
        let etas: Vec<usize> = census.classes.iter().map(|c| c.eta).collect();
        assert!(etas.contains(&1) && etas.contains(&2));
    }
}
