//! Closed-form families and constructors: gon and striped disks, eye disks,
//! parallel-path spheres, face lifts, meander suspension and pitchfork
//! surgery, and the double-spiral / simplex / hypercube meander families.

use crate::complex::{
    check_bipolar, classify_disk, validate_template, CellComplex2, ComplexBuilder, ComplexError,
    ComplexKind, TemplateData, ThreeCellTemplate,
};
use crate::enumerate::trace;
use crate::meander::{self, is_sturm};
use crate::perm::Permutation;
use std::fmt;

#[derive(Debug, Clone)]
pub enum GeneratorError {
    Complex(ComplexError),
    IncompatibleBoundaries(String),
    DiskRole(String),
    BadParameter(String),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::Complex(e) => write!(f, "{}", e),
            GeneratorError::IncompatibleBoundaries(s) => {
                write!(f, "incompatible disk boundaries: {}", s)
            }
            GeneratorError::DiskRole(s) => write!(f, "{}", s),
            GeneratorError::BadParameter(s) => write!(f, "{}", s),
        }
    }
}

impl std::error::Error for GeneratorError {}

impl From<ComplexError> for GeneratorError {
    fn from(e: ComplexError) -> Self {
        GeneratorError::Complex(e)
    }
}

// ---------------------------------------------------------------------------
// disks

/// Disk of `paths.len()` parallel pole-to-pole directed paths with
/// `paths[i]` edges each, and a face between consecutive paths.
///
/// `path_disk(&[m, n])` is the single-face `(m, n)`-gon; `path_disk(&[1; m+1])`
/// is the `m`-striped disk.
pub fn path_disk(paths: &[usize]) -> Result<CellComplex2, GeneratorError> {
    if paths.len() < 2 || paths.iter().any(|&k| k == 0) {
        return Err(GeneratorError::BadParameter(
            "need at least two nonempty paths".into(),
        ));
    }
    let mut b = ComplexBuilder::new(ComplexKind::Disk);
    b.vertex("N")?;
    b.vertex("S")?;
    let mut edge_ids: Vec<Vec<String>> = Vec::new();
    for (i, &k) in paths.iter().enumerate() {
        let mut ids = Vec::new();
        let mut prev = "N".to_string();
        for j in 1..=k {
            let next = if j == k {
                "S".to_string()
            } else {
                let v = format!("v{}.{}", i, j);
                b.vertex(&v)?;
                v
            };
            let id = format!("p{}.{}", i, j);
            b.edge(&id, &prev, &next)?;
            ids.push(id);
            prev = next;
        }
        edge_ids.push(ids);
    }
    for i in 0..paths.len() - 1 {
        let mut boundary: Vec<(&str, bool)> = Vec::new();
        for id in &edge_ids[i] {
            boundary.push((id, true));
        }
        for id in edge_ids[i + 1].iter().rev() {
            boundary.push((id, false));
        }
        b.face(&format!("f{}", i), &boundary)?;
    }
    let mut outer: Vec<(&str, bool)> = Vec::new();
    for id in edge_ids.last().unwrap() {
        outer.push((id, true));
    }
    for id in edge_ids[0].iter().rev() {
        outer.push((id, false));
    }
    b.outer(&outer)?;
    Ok(b.finish()?)
}

/// Single-face disk with `m` boundary edges on one side of the poles and `n`
/// on the other.
pub fn gon_disk(m: usize, n: usize) -> Result<CellComplex2, GeneratorError> {
    path_disk(&[m, n])
}

/// `m` two-gon stripes separated by interior pole-to-pole edges.
pub fn striped_disk(m: usize) -> Result<CellComplex2, GeneratorError> {
    path_disk(&vec![1; m + 1])
}

/// Placement of the third face of an eye disk relative to the poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EyeVariant {
    /// Eye interior to the disk, away from poles and meridians.
    Detached,
    /// Degenerate: the eye closure meets the boundary in the North pole.
    AtNorth,
    /// Degenerate: the eye closure meets the boundary in the South pole.
    AtSouth,
}

/// Three-face EastWest disk whose middle face (the eye) avoids both
/// boundary paths.
pub fn eye_disk(variant: EyeVariant) -> Result<CellComplex2, GeneratorError> {
    let mut b = ComplexBuilder::new(ComplexKind::Disk);
    b.vertex("N")?;
    b.vertex("S")?;
    b.edge("b0", "N", "S")?;
    b.edge("b1", "N", "S")?;
    match variant {
        EyeVariant::Detached => {
            b.vertex("a")?;
            b.vertex("c")?;
            b.edge("d1", "N", "a")?;
            b.edge("d2", "c", "S")?;
            b.edge("l", "a", "c")?;
            b.edge("r", "a", "c")?;
            b.face(
                "f0",
                &[("b0", true), ("d2", false), ("l", false), ("d1", false)],
            )?;
            b.face("eye", &[("l", true), ("r", false)])?;
            b.face(
                "f1",
                &[("d1", true), ("r", true), ("d2", true), ("b1", false)],
            )?;
        }
        EyeVariant::AtSouth => {
            b.vertex("c")?;
            b.edge("e1", "N", "c")?;
            b.edge("e2", "c", "S")?;
            b.edge("e3", "c", "S")?;
            b.face("f0", &[("b0", true), ("e2", false), ("e1", false)])?;
            b.face("eye", &[("e2", true), ("e3", false)])?;
            b.face("f1", &[("e1", true), ("e3", true), ("b1", false)])?;
        }
        EyeVariant::AtNorth => {
            b.vertex("c")?;
            b.edge("e1", "N", "c")?;
            b.edge("e2", "N", "c")?;
            b.edge("e3", "c", "S")?;
            b.face("f0", &[("b0", true), ("e3", false), ("e1", false)])?;
            b.face("eye", &[("e1", true), ("e2", false)])?;
            b.face("f1", &[("e2", true), ("e3", true), ("b1", false)])?;
        }
    }
    b.outer(&[("b1", true), ("b0", false)])?;
    Ok(b.finish()?)
}

// ---------------------------------------------------------------------------
// parallel-path spheres

/// Where a pole-to-pole path begins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStart {
    North,
    /// Nudged: the path emanates from interior sink `sink` (1-based) of the
    /// path with the given index, which must be a meridian.
    Sink { path: usize, sink: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct PathSpec {
    pub edges: usize,
    pub start: PathStart,
}

impl PathSpec {
    pub fn plain(edges: usize) -> Self {
        PathSpec {
            edges,
            start: PathStart::North,
        }
    }

    pub fn nudged(edges: usize, meridian: usize, sink: usize) -> Self {
        PathSpec {
            edges,
            start: PathStart::Sink {
                path: meridian,
                sink,
            },
        }
    }
}

/// Sphere of cyclically arranged pole-to-pole paths: `paths[0]` is the `WE`
/// meridian, `paths[ew_pos]` the `EW` meridian; faces lie between cyclically
/// consecutive paths, the Western ones before `ew_pos`. Nudged paths must
/// come last in the cyclic order.
///
/// Every multi-striped, suspended, pitchforked and nudged 3-ball complex is
/// an instance of this layout.
pub fn parallel_sphere(
    paths: &[PathSpec],
    ew_pos: usize,
) -> Result<ThreeCellTemplate, GeneratorError> {
    let k = paths.len();
    if k < 2 || ew_pos == 0 || ew_pos >= k {
        return Err(GeneratorError::BadParameter("bad path layout".into()));
    }
    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    b.vertex("N")?;
    b.vertex("S")?;
    let sink_name = |i: usize, j: usize| format!("v{}.{}", i, j);
    for (i, spec) in paths.iter().enumerate() {
        for j in 1..spec.edges {
            b.vertex(&sink_name(i, j))?;
        }
    }
    let start_name = |spec: &PathSpec| -> String {
        match spec.start {
            PathStart::North => "N".into(),
            PathStart::Sink { path, sink } => sink_name(path, sink),
        }
    };
    let mut edge_ids: Vec<Vec<String>> = Vec::new();
    for (i, spec) in paths.iter().enumerate() {
        let mut ids = Vec::new();
        let mut prev = start_name(spec);
        for j in 1..=spec.edges {
            let next = if j == spec.edges {
                "S".to_string()
            } else {
                sink_name(i, j)
            };
            let id = format!("p{}.{}", i, j);
            b.edge(&id, &prev, &next)?;
            ids.push(id);
            prev = next;
        }
        edge_ids.push(ids);
    }
    for i in 0..k {
        let next = (i + 1) % k;
        let mut boundary: Vec<(String, bool)> = Vec::new();
        for id in &edge_ids[i] {
            boundary.push((id.clone(), true));
        }
        // climb the next path back up, stopping early when this path is
        // nudged onto it
        let stop = match paths[i].start {
            PathStart::Sink { path, sink } if path == next => sink,
            _ => 0,
        };
        for id in edge_ids[next].iter().skip(stop).rev() {
            boundary.push((id.clone(), false));
        }
        // connector along the meridian between the two start vertices
        match (paths[next].start, paths[i].start) {
            (PathStart::North, PathStart::North) => {}
            (PathStart::North, PathStart::Sink { path, sink: _ }) if path == next => {}
            (PathStart::Sink { path, sink }, PathStart::North) => {
                for id in edge_ids[path][..sink].iter().rev() {
                    boundary.push((id.clone(), false));
                }
            }
            (
                PathStart::Sink { path: m1, sink: s1 },
                PathStart::Sink { path: m2, sink: s2 },
            ) if m1 == m2 && s1 >= s2 => {
                for id in edge_ids[m1][s2..s1].iter().rev() {
                    boundary.push((id.clone(), false));
                }
            }
            _ => {
                return Err(GeneratorError::BadParameter(
                    "unsupported nudge layout".into(),
                ))
            }
        }
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, f)| (s.as_str(), *f)).collect();
        b.face(&format!("f{}", i), &refs)?;
    }
    let complex = b.finish()?;
    let eidx = |id: &String| complex.edge_idx(id).unwrap();
    let data = TemplateData {
        north: complex.vertex_idx("N").unwrap(),
        south: complex.vertex_idx("S").unwrap(),
        meridian_we: edge_ids[0].iter().map(eidx).collect(),
        meridian_ew: edge_ids[ew_pos].iter().map(eidx).collect(),
        west: (0..ew_pos)
            .map(|i| complex.face_idx(&format!("f{}", i)).unwrap())
            .collect(),
        east: (ew_pos..k)
            .map(|i| complex.face_idx(&format!("f{}", i)).unwrap())
            .collect(),
        center: "O".to_string(),
    };
    let t = ThreeCellTemplate { complex, data };
    let check = validate_template(&t);
    if !check.valid {
        return Err(GeneratorError::Complex(ComplexError::BadTemplate(
            check.violations.join("; "),
        )));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// face lifts

/// Reflection of a disk: every circuit reverses, arc roles swap.
fn mirrored(c: &CellComplex2) -> CellComplex2 {
    let reverse = |circuit: &[(usize, bool)]| -> Vec<(usize, bool)> {
        circuit.iter().rev().map(|&(e, fwd)| (e, !fwd)).collect()
    };
    let mut out = c.clone();
    for f in &mut out.faces {
        f.boundary = reverse(&f.boundary);
    }
    if let Some(outer) = &c.outer {
        out.outer = Some(reverse(outer));
    }
    out
}

/// Splits a disk's outer boundary into its two directed pole-to-pole paths,
/// each as a list of edge indices in North-to-South order.
fn boundary_paths(c: &CellComplex2) -> Result<(Vec<usize>, Vec<usize>), GeneratorError> {
    let poles = check_bipolar(c)?;
    let outer = c
        .outer
        .as_ref()
        .ok_or_else(|| GeneratorError::Complex(ComplexError::MissingOuter))?;
    let verts = c.circuit_vertices(outer);
    let k = verts.len();
    let npos = verts
        .iter()
        .position(|&v| v == poles.north)
        .ok_or_else(|| GeneratorError::Complex(ComplexError::PolesNotOnBoundary))?;
    let spos = verts
        .iter()
        .position(|&v| v == poles.south)
        .ok_or_else(|| GeneratorError::Complex(ComplexError::PolesNotOnBoundary))?;
    let mut arcs = Vec::new();
    for (from, to) in [(npos, spos), (spos, npos)] {
        let mut edges = Vec::new();
        let mut w = from;
        while w != to {
            edges.push(outer[w].0);
            w = (w + 1) % k;
        }
        if from == spos {
            edges.reverse();
        }
        arcs.push(edges);
    }
    Ok((arcs[0].clone(), arcs[1].clone()))
}

/// Welds a Western(-capable) disk and an Eastern(-capable) disk along their
/// mirrored boundaries into a 3-cell template.
///
/// At least one side must be EastWest; the shared boundary becomes the
/// meridian pair, the Western disk keeping its planar orientation and the
/// Eastern one entering through the mirror.
pub fn lift(
    west: &CellComplex2,
    east: &CellComplex2,
) -> Result<ThreeCellTemplate, GeneratorError> {
    let wc = classify_disk(west)?;
    let ec = classify_disk(east)?;
    if !wc.western {
        return Err(GeneratorError::DiskRole(
            "west argument is not a Western disk".into(),
        ));
    }
    if !ec.eastern {
        return Err(GeneratorError::DiskRole(
            "east argument is not an Eastern disk".into(),
        ));
    }
    if !wc.eastwest() && !ec.eastwest() {
        return Err(GeneratorError::DiskRole(
            "at least one side must be EastWest".into(),
        ));
    }
    let (wa, wb) = boundary_paths(west)?;
    let (ea, eb) = boundary_paths(east)?;
    // the weld identifies the arcs used forward by the interior faces of
    // both sides; if only the crossed pairing matches, the Eastern disk
    // enters through its mirror image
    let east_owned: CellComplex2;
    let (east, east_first, east_second) = if wa.len() == ea.len() && wb.len() == eb.len() {
        (east, ea, eb)
    } else if wa.len() == eb.len() && wb.len() == ea.len() {
        east_owned = mirrored(east);
        let (ma, mb) = boundary_paths(&east_owned)?;
        debug_assert_eq!(ma.len(), wa.len());
        (&east_owned, ma, mb)
    } else {
        return Err(GeneratorError::IncompatibleBoundaries(format!(
            "west sides {}/{}, east sides {}/{}",
            wa.len(),
            wb.len(),
            ea.len(),
            eb.len()
        )));
    };

    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    b.vertex("N")?;
    b.vertex("S")?;

    // meridian vertices and edges, WE from the first pair, EW from the second
    let mut meridian_ids: Vec<Vec<String>> = Vec::new();
    for (name, path) in [("we", &wa), ("ew", &wb)] {
        let mut ids = Vec::new();
        let mut prev = "N".to_string();
        for (j, _) in path.iter().enumerate() {
            let next = if j + 1 == path.len() {
                "S".to_string()
            } else {
                let v = format!("{}{}", name, j + 1);
                b.vertex(&v)?;
                v
            };
            let id = format!("{}.e{}", name, j + 1);
            b.edge(&id, &prev, &next)?;
            ids.push(id);
            prev = next;
        }
        meridian_ids.push(ids);
    }

    // vertex/edge translation tables per side
    let west_poles = check_bipolar(west)?;
    let east_poles = check_bipolar(east)?;
    let translate = |c: &CellComplex2,
                     poles: crate::complex::BipolarOrientation,
                     paths: (&[usize], &[usize]),
                     prefix: &str,
                     b: &mut ComplexBuilder|
     -> Result<(Vec<String>, Vec<String>), GeneratorError> {
        // vertex map
        let mut vmap: Vec<Option<String>> = vec![None; c.vertex_count()];
        vmap[poles.north] = Some("N".into());
        vmap[poles.south] = Some("S".into());
        for (name, path) in [("we", paths.0), ("ew", paths.1)] {
            let mut at = poles.north;
            for (j, &e) in path.iter().enumerate() {
                let edge = &c.edges[e];
                at = if edge.tail == at { edge.head } else { edge.tail };
                if j + 1 < path.len() {
                    vmap[at] = Some(format!("{}{}", name, j + 1));
                }
            }
        }
        for v in 0..c.vertex_count() {
            if vmap[v].is_none() {
                let name = format!("{}.{}", prefix, c.vertex_ids[v]);
                b.vertex(&name)?;
                vmap[v] = Some(name);
            }
        }
        // edge map
        let mut emap: Vec<Option<String>> = vec![None; c.edge_count()];
        for (ids, path) in [(0usize, paths.0), (1, paths.1)] {
            for (j, &e) in path.iter().enumerate() {
                emap[e] = Some(format!(
                    "{}.e{}",
                    if ids == 0 { "we" } else { "ew" },
                    j + 1
                ));
            }
        }
        for e in 0..c.edge_count() {
            if emap[e].is_none() {
                let name = format!("{}.{}", prefix, c.edges[e].id);
                let t = vmap[c.edges[e].tail].clone().unwrap();
                let h = vmap[c.edges[e].head].clone().unwrap();
                b.edge(&name, &t, &h)?;
                emap[e] = Some(name);
            }
        }
        Ok((
            vmap.into_iter().map(Option::unwrap).collect(),
            emap.into_iter().map(Option::unwrap).collect(),
        ))
    };

    let (_wv, wemap) = translate(
        west,
        west_poles,
        (&wa, &wb),
        "W",
        &mut b,
    )?;
    let (_ev, eemap) = translate(
        east,
        east_poles,
        (&east_first, &east_second),
        "E",
        &mut b,
    )?;

    // the Western disk is glued through the boundary mirror, so its circuits
    // reverse; the Eastern disk keeps its planar orientation
    let mut west_faces = Vec::new();
    for f in &west.faces {
        let boundary: Vec<(String, bool)> = f
            .boundary
            .iter()
            .rev()
            .map(|&(e, fwd)| (wemap[e].clone(), !fwd))
            .collect();
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, x)| (s.as_str(), *x)).collect();
        let id = format!("W.{}", f.id);
        b.face(&id, &refs)?;
        west_faces.push(id);
    }
    let mut east_faces = Vec::new();
    for f in &east.faces {
        let boundary: Vec<(String, bool)> = f
            .boundary
            .iter()
            .map(|&(e, fwd)| (eemap[e].clone(), fwd))
            .collect();
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, x)| (s.as_str(), *x)).collect();
        let id = format!("E.{}", f.id);
        b.face(&id, &refs)?;
        east_faces.push(id);
    }

    let complex = b.finish()?;
    let data = TemplateData {
        north: complex.vertex_idx("N").unwrap(),
        south: complex.vertex_idx("S").unwrap(),
        meridian_we: meridian_ids[0]
            .iter()
            .map(|id| complex.edge_idx(id).unwrap())
            .collect(),
        meridian_ew: meridian_ids[1]
            .iter()
            .map(|id| complex.edge_idx(id).unwrap())
            .collect(),
        west: west_faces
            .iter()
            .map(|id| complex.face_idx(id).unwrap())
            .collect(),
        east: east_faces
            .iter()
            .map(|id| complex.face_idx(id).unwrap())
            .collect(),
        center: "O".into(),
    };
    let t = ThreeCellTemplate { complex, data };
    let check = validate_template(&t);
    if !check.valid {
        return Err(GeneratorError::Complex(ComplexError::BadTemplate(
            check.violations.join("; "),
        )));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// meander families

fn trace_arcs(n: usize, upper: &[(usize, usize)], lower: &[(usize, usize)]) -> Permutation {
    trace(n, upper, lower).expect("arc family traces to a permutation")
}

/// Double-spiral meander with `2m+1` crossings: `m` nested upper arcs over
/// the whole axis, lower arcs shifted one slot right.
pub fn ci_meander(m: usize) -> Permutation {
    assert!(m >= 1);
    let n = 2 * m + 1;
    let upper: Vec<(usize, usize)> = (1..=m).map(|j| (j, 2 * m + 1 - j)).collect();
    let lower: Vec<(usize, usize)> = (1..=m).map(|j| (j + 1, 2 * m + 2 - j)).collect();
    let p = trace_arcs(n, &upper, &lower);
    debug_assert!(is_sturm(&p).sturm);
    p
}

/// Contiguous nests of the given sizes, placed left to right from `start`.
fn nest_blocks(start: usize, sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    let mut t = start;
    for &s in sizes {
        for i in 0..s {
            arcs.push((t + i, t + 2 * s - 1 - i));
        }
        t += 2 * s;
    }
    arcs
}

/// Simplex family: one upper nest of `2^m - 1` arcs against lower nests of
/// sizes `1, 2, ..., 2^(m-1)`.
pub fn simplex_meander(m: usize) -> Permutation {
    assert!(m >= 1);
    let n = (1usize << (m + 1)) - 1;
    let upper: Vec<(usize, usize)> = (1..=(n - 1) / 2).map(|j| (j, n - j)).collect();
    let sizes: Vec<usize> = (0..m).map(|i| 1usize << i).collect();
    let lower = nest_blocks(2, &sizes);
    let p = trace_arcs(n, &upper, &lower);
    debug_assert!(is_sturm(&p).sturm);
    p
}

/// Hypercube family: lower nests `1, 3, ..., 3^(m-1)` from the second
/// crossing, upper nests reversed from the first.
pub fn hypercube_meander(m: usize) -> Permutation {
    assert!(m >= 1);
    let n = 3usize.pow(m as u32);
    let up_sizes: Vec<usize> = (0..m).rev().map(|i| 3usize.pow(i as u32)).collect();
    let low_sizes: Vec<usize> = (0..m).map(|i| 3usize.pow(i as u32)).collect();
    let upper = nest_blocks(1, &up_sizes);
    let lower = nest_blocks(2, &low_sizes);
    let p = trace_arcs(n, &upper, &lower);
    debug_assert!(is_sturm(&p).sturm);
    p
}

/// Unstable double-cone suspension of a meander: the picture rotates by half
/// a turn and gains one overarching polar arc on each side.
pub fn suspend(p: &Permutation) -> Permutation {
    let n = p.size();
    let d = meander::build_meander(p);
    let rot = |(a, b): (usize, usize)| -> (usize, usize) {
        let (x, y) = (n + 2 - a, n + 2 - b);
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let mut upper: Vec<(usize, usize)> = d.lower_arcs.iter().copied().map(rot).collect();
    upper.push((1, n + 1));
    let mut lower: Vec<(usize, usize)> = d.upper_arcs.iter().copied().map(rot).collect();
    lower.push((2, n + 2));
    trace_arcs(n + 2, &upper, &lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::pitchfork_insert;
    use crate::meander::morse_numbers;
    use crate::perm::TrivialAction;
    use crate::szs::{sigma_of, zs_pair, Flavor};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn gon_disks_are_eastwest() {
        for (m, n) in [(1, 1), (2, 1), (2, 3), (3, 2)] {
            let g = gon_disk(m, n).unwrap();
            assert_eq!(g.vertex_count(), m + n);
            assert_eq!(g.edge_count(), m + n);
            assert_eq!(g.face_count(), 1);
            assert!(classify_disk(&g).unwrap().eastwest());
        }
    }

    #[test]
    fn gon_cell_counts() {
        // the (1,1)-gon is the planar double-spiral attractor: 5 cells
        let g = gon_disk(1, 1).unwrap();
        assert_eq!(g.vertex_count() + g.edge_count() + g.face_count(), 5);
        let sigma = zs_pair(&g, Flavor::Zs).unwrap().sigma();
        assert_eq!(sigma, p("1 4 3 2 5"));

        let g = gon_disk(2, 1).unwrap();
        assert_eq!(g.vertex_count() + g.edge_count() + g.face_count(), 7);
        let sigma = zs_pair(&g, Flavor::Zs).unwrap().sigma();
        assert_eq!(morse_numbers(&sigma).unwrap().counts, vec![3, 3, 1]);
    }

    #[test]
    fn striped_and_eye_disks_are_eastwest() {
        for m in 1..=4 {
            assert!(classify_disk(&striped_disk(m).unwrap()).unwrap().eastwest());
        }
        for v in [EyeVariant::Detached, EyeVariant::AtNorth, EyeVariant::AtSouth] {
            assert!(classify_disk(&eye_disk(v).unwrap()).unwrap().eastwest());
        }
    }

    #[test]
    fn ci_meander_small_values() {
        assert_eq!(ci_meander(1), p("1 2 3"));
        assert_eq!(ci_meander(2), p("1 4 3 2 5"));
        assert_eq!(ci_meander(3), p("1 6 3 4 5 2 7"));
    }

    #[test]
    fn ci_meander_counts_and_isotropy() {
        for m in 1..=6 {
            let q = ci_meander(m);
            let counts = morse_numbers(&q).unwrap().counts;
            let mut expect = vec![2; m];
            expect.push(1);
            assert_eq!(counts, expect);
            for g in TrivialAction::ALL {
                assert_eq!(q.act(g), q, "CI^{} must have full isotropy", m);
            }
        }
    }

    #[test]
    fn ci_meander_is_iterated_suspension() {
        let mut q = Permutation::identity(1);
        for m in 1..=6 {
            q = suspend(&q);
            assert_eq!(q, ci_meander(m));
        }
    }

    #[test]
    fn simplex_meander_small_values() {
        assert_eq!(simplex_meander(1), p("1 2 3"));
        assert_eq!(simplex_meander(2), p("1 4 5 6 3 2 7"));
        let s3 = simplex_meander(3);
        assert_eq!(s3.size(), 15);
        assert!(is_sturm(&s3).sturm);
        let counts = morse_numbers(&s3).unwrap().counts;
        assert_eq!(counts[3], 1);
        assert_eq!(counts.len(), 4);
        // solid tetrahedron cell counts
        assert_eq!(counts, vec![4, 6, 4, 1]);
    }

    #[test]
    fn hypercube_meander_small_values() {
        assert_eq!(hypercube_meander(1), p("1 2 3"));
        assert_eq!(hypercube_meander(2), p("1 6 7 8 5 2 3 4 9"));
        let h3 = hypercube_meander(3);
        assert_eq!(h3.size(), 27);
        assert!(is_sturm(&h3).sturm);
        assert_eq!(morse_numbers(&h3).unwrap().counts, vec![8, 12, 6, 1]);
    }

    #[test]
    fn hypercube_square_counts() {
        assert_eq!(
            morse_numbers(&hypercube_meander(2)).unwrap().counts,
            vec![4, 4, 1]
        );
    }

    #[test]
    fn minimal_face_lift_is_the_three_ball_spiral() {
        let t = lift(&gon_disk(1, 1).unwrap(), &gon_disk(1, 1).unwrap()).unwrap();
        assert_eq!(sigma_of(&t).unwrap(), p("1 6 3 4 5 2 7"));
    }

    #[test]
    fn striped_lifts_match_meander_suspension() {
        for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let t = lift(&striped_disk(n).unwrap(), &striped_disk(m).unwrap()).unwrap();
            let lifted = sigma_of(&t).unwrap();
            let gon_sigma = zs_pair(&gon_disk(m, n).unwrap(), Flavor::Zs)
                .unwrap()
                .sigma();
            let suspended = suspend(&gon_sigma);
            assert!(is_sturm(&suspended).sturm);
            assert_eq!(
                lifted.canonical(),
                suspended.canonical(),
                "suspension identity fails at ({}, {})",
                m,
                n
            );
        }
    }

    #[test]
    fn gon_lifts_match_meander_pitchfork() {
        for (m, n) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            let t = lift(&gon_disk(n, m).unwrap(), &gon_disk(m, n).unwrap()).unwrap();
            let lifted = sigma_of(&t).unwrap();
            let gon_sigma = zs_pair(&gon_disk(m, n).unwrap(), Flavor::Zs)
                .unwrap()
                .sigma();
            // the face center is the unique Morse-2 equilibrium
            let center = morse_numbers(&gon_sigma)
                .unwrap()
                .values
                .iter()
                .position(|&v| v == 2)
                .unwrap()
                + 1;
            let forked = pitchfork_insert(&gon_sigma, center);
            assert_eq!(
                lifted.canonical(),
                forked.canonical(),
                "pitchfork identity fails at ({}, {})",
                m,
                n
            );
        }
    }

    #[test]
    fn eye_lift_variants_are_inequivalent() {
        let a = lift(&gon_disk(1, 1).unwrap(), &eye_disk(EyeVariant::AtSouth).unwrap()).unwrap();
        let b = lift(&gon_disk(1, 1).unwrap(), &eye_disk(EyeVariant::AtNorth).unwrap()).unwrap();
        let sa = sigma_of(&a).unwrap();
        let sb = sigma_of(&b).unwrap();
        assert_ne!(sa.canonical(), sb.canonical());
    }

    #[test]
    fn parallel_sphere_reproduces_the_golden_permutation() {
        // one Western face, two Eastern stripes
        let t = parallel_sphere(
            &[PathSpec::plain(1), PathSpec::plain(1), PathSpec::plain(1)],
            1,
        )
        .unwrap();
        assert_eq!(sigma_of(&t).unwrap(), p("1 8 3 4 7 6 5 2 9"));
    }

    #[test]
    fn parallel_sphere_nudged_case() {
        // Western (2,1)-gon, Eastern 2-gon pair with the interior path nudged
        // onto the meridian sink
        let t = parallel_sphere(
            &[
                PathSpec::plain(2),
                PathSpec::plain(1),
                PathSpec::nudged(1, 0, 1),
            ],
            1,
        )
        .unwrap();
        let sigma = sigma_of(&t).unwrap();
        assert_eq!(sigma.size(), 11);
        assert_eq!(morse_numbers(&sigma).unwrap().counts, vec![3, 4, 3, 1]);
    }

    #[test]
    fn suspension_raises_all_morse_numbers() {
        for s in ["1 4 3 2 5", "1 8 3 4 7 6 5 2 9"] {
            let q = p(s);
            let before = morse_numbers(&q).unwrap().counts;
            let after = morse_numbers(&suspend(&q)).unwrap().counts;
            let mut expect = vec![2];
            expect.extend(before);
            assert_eq!(after, expect);
        }
    }
}
