//! Regular cell complexes of disks and 2-spheres with embeddings given by
//! face circuits, bipolar orientations, disk classification, and 3-cell
//! template validation.
//!
//! The embedding is combinatorial-map style: every face carries its boundary
//! circuit as a cyclic sequence of directed edge uses, counterclockwise when
//! viewed from outside the sphere (or from the standard side of the plane).
//! A disk is stored as a sphere with one distinguished outer circuit, which
//! runs clockwise around the disk in the planar picture.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    Sphere,
    Disk,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// One directed use of an edge inside a face circuit.
pub type EdgeUse = (usize, bool);

#[derive(Clone, Debug)]
pub struct Face {
    pub id: String,
    pub boundary: Vec<EdgeUse>,
}

#[derive(Clone, Debug)]
pub struct CellComplex2 {
    pub kind: ComplexKind,
    pub vertex_ids: Vec<String>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Boundary circuit of a disk; `None` for spheres.
    pub outer: Option<Vec<EdgeUse>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    UnknownId(String),
    DuplicateId(String),
    DanglingEdge(String),
    NonSimpleCircuit(String),
    BrokenCircuit(String),
    EdgeUseCount(String),
    EulerMismatch { expected: i64, found: i64 },
    InconsistentRotation(String),
    Disconnected,
    NotBipolar(String),
    PolesNotOnBoundary,
    MissingOuter,
    BadTemplate(String),
    Json(String),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ComplexError::*;
        match self {
            UnknownId(s) => write!(f, "unknown id {:?}", s),
            DuplicateId(s) => write!(f, "duplicate id {:?}", s),
            DanglingEdge(s) => write!(f, "edge {:?} has an invalid endpoint", s),
            NonSimpleCircuit(s) => write!(f, "face {:?} repeats a vertex or edge", s),
            BrokenCircuit(s) => write!(f, "face {:?} boundary is not a closed walk", s),
            EdgeUseCount(s) => write!(f, "edge {:?} is not used by exactly two circuits", s),
            EulerMismatch { expected, found } => {
                write!(f, "Euler characteristic {} (expected {})", found, expected)
            }
            InconsistentRotation(s) => write!(f, "inconsistent rotation system at vertex {:?}", s),
            Disconnected => write!(f, "complex is not connected"),
            NotBipolar(s) => write!(f, "orientation is not bipolar: {}", s),
            PolesNotOnBoundary => write!(f, "poles must lie on the outer boundary"),
            MissingOuter => write!(f, "disk complex requires an outer circuit"),
            BadTemplate(s) => write!(f, "invalid template: {}", s),
            Json(s) => write!(f, "malformed complex file: {}", s),
        }
    }
}

impl std::error::Error for ComplexError {}

/// Incremental construction helper used by generators and decoders.
pub struct ComplexBuilder {
    kind: ComplexKind,
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    faces: Vec<Face>,
    face_ids: HashSet<String>,
    outer: Option<Vec<EdgeUse>>,
}

impl ComplexBuilder {
    pub fn new(kind: ComplexKind) -> Self {
        ComplexBuilder {
            kind,
            vertex_ids: Vec::new(),
            vertex_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            faces: Vec::new(),
            face_ids: HashSet::new(),
            outer: None,
        }
    }

    pub fn vertex(&mut self, id: &str) -> Result<usize, ComplexError> {
        if self.vertex_index.contains_key(id) {
            return Err(ComplexError::DuplicateId(id.to_string()));
        }
        let idx = self.vertex_ids.len();
        self.vertex_ids.push(id.to_string());
        self.vertex_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn edge(&mut self, id: &str, tail: &str, head: &str) -> Result<usize, ComplexError> {
        if self.edge_index.contains_key(id) || self.vertex_index.contains_key(id) {
            return Err(ComplexError::DuplicateId(id.to_string()));
        }
        let t = *self
            .vertex_index
            .get(tail)
            .ok_or_else(|| ComplexError::UnknownId(tail.to_string()))?;
        let h = *self
            .vertex_index
            .get(head)
            .ok_or_else(|| ComplexError::UnknownId(head.to_string()))?;
        let idx = self.edges.len();
        self.edges.push(Edge {
            id: id.to_string(),
            tail: t,
            head: h,
        });
        self.edge_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    /// Boundary given as signed edge ids, `+` meaning tail-to-head.
    pub fn face(&mut self, id: &str, boundary: &[(&str, bool)]) -> Result<usize, ComplexError> {
        let circuit = self.resolve(boundary)?;
        if !self.face_ids.insert(id.to_string()) {
            return Err(ComplexError::DuplicateId(id.to_string()));
        }
        let idx = self.faces.len();
        self.faces.push(Face {
            id: id.to_string(),
            boundary: circuit,
        });
        Ok(idx)
    }

    pub fn outer(&mut self, boundary: &[(&str, bool)]) -> Result<(), ComplexError> {
        self.outer = Some(self.resolve(boundary)?);
        Ok(())
    }

    fn resolve(&self, boundary: &[(&str, bool)]) -> Result<Vec<EdgeUse>, ComplexError> {
        boundary
            .iter()
            .map(|(id, fwd)| {
                self.edge_index
                    .get(*id)
                    .map(|&e| (e, *fwd))
                    .ok_or_else(|| ComplexError::UnknownId(id.to_string()))
            })
            .collect()
    }

    pub fn finish(self) -> Result<CellComplex2, ComplexError> {
        let c = CellComplex2 {
            kind: self.kind,
            vertex_ids: self.vertex_ids,
            edges: self.edges,
            faces: self.faces,
            outer: self.outer,
        };
        c.validate()?;
        Ok(c)
    }
}

impl CellComplex2 {
    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_idx(&self, id: &str) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn edge_idx(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn face_idx(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    /// Endpoints of a directed edge use.
    fn use_ends(&self, (e, fwd): EdgeUse) -> (usize, usize) {
        let edge = &self.edges[e];
        if fwd {
            (edge.tail, edge.head)
        } else {
            (edge.head, edge.tail)
        }
    }

    /// Vertex sequence along a circuit (one entry per edge use).
    pub fn circuit_vertices(&self, circuit: &[EdgeUse]) -> Vec<usize> {
        circuit.iter().map(|&u| self.use_ends(u).0).collect()
    }

    /// All circuits, with the outer one appended for disks.
    fn all_circuits(&self) -> Vec<(&str, &[EdgeUse])> {
        let mut out: Vec<(&str, &[EdgeUse])> = self
            .faces
            .iter()
            .map(|f| (f.id.as_str(), f.boundary.as_slice()))
            .collect();
        if let Some(outer) = &self.outer {
            out.push(("<outer>", outer.as_slice()));
        }
        out
    }

    /// Checks all regular-complex invariants: simple closed face circuits,
    /// every edge used exactly twice with opposite directions, the Euler
    /// characteristic, a consistent rotation system, and connectivity.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for edge in &self.edges {
            if edge.tail >= self.vertex_count() || edge.head >= self.vertex_count() {
                return Err(ComplexError::DanglingEdge(edge.id.clone()));
            }
        }
        if self.kind == ComplexKind::Disk && self.outer.is_none() && !self.edges.is_empty() {
            return Err(ComplexError::MissingOuter);
        }
        if self.kind == ComplexKind::Sphere && self.outer.is_some() {
            return Err(ComplexError::Json("sphere carries an outer circuit".into()));
        }

        // one-vertex disk: a single 0-cell, nothing else to check
        if self.edges.is_empty() {
            return if self.kind == ComplexKind::Disk
                && self.vertex_count() == 1
                && self.faces.is_empty()
            {
                Ok(())
            } else {
                Err(ComplexError::Disconnected)
            };
        }

        let circuits = self.all_circuits();
        let mut uses: Vec<[usize; 2]> = vec![[0, 0]; self.edge_count()];
        for (id, circuit) in &circuits {
            if circuit.is_empty() {
                return Err(ComplexError::BrokenCircuit(id.to_string()));
            }
            let mut seen_v = HashSet::new();
            let mut seen_e = HashSet::new();
            for w in 0..circuit.len() {
                let (from, _to) = self.use_ends(circuit[w]);
                let (_pf, pt) = self.use_ends(circuit[(w + circuit.len() - 1) % circuit.len()]);
                if pt != from {
                    return Err(ComplexError::BrokenCircuit(id.to_string()));
                }
                if !seen_v.insert(from) || !seen_e.insert(circuit[w].0) {
                    return Err(ComplexError::NonSimpleCircuit(id.to_string()));
                }
                uses[circuit[w].0][circuit[w].1 as usize] += 1;
            }
        }
        for (e, u) in uses.iter().enumerate() {
            if u[0] != 1 || u[1] != 1 {
                return Err(ComplexError::EdgeUseCount(self.edges[e].id.clone()));
            }
        }

        // Euler characteristic of the closed surface, outer face included
        let f_all = circuits.len() as i64;
        let euler = self.vertex_count() as i64 - self.edge_count() as i64 + f_all;
        if euler != 2 {
            let expected = if self.kind == ComplexKind::Disk { 1 } else { 2 };
            return Err(ComplexError::EulerMismatch {
                expected,
                found: euler - if self.kind == ComplexKind::Disk { 1 } else { 0 },
            });
        }

        self.check_rotation_system()?;
        self.check_connected()?;
        Ok(())
    }

    /// The corners of the face circuits must close into a single cycle around
    /// every vertex.
    fn check_rotation_system(&self) -> Result<(), ComplexError> {
        // at vertex v: corner (incoming edge use) -> (outgoing edge use)
        let mut next_at: Vec<HashMap<(usize, bool), (usize, bool)>> =
            vec![HashMap::new(); self.vertex_count()];
        for (_, circuit) in self.all_circuits() {
            for w in 0..circuit.len() {
                let cur = circuit[w];
                let nxt = circuit[(w + 1) % circuit.len()];
                let (_, v) = self.use_ends(cur);
                if next_at[v].insert(cur, nxt).is_some() {
                    return Err(ComplexError::InconsistentRotation(
                        self.vertex_ids[v].clone(),
                    ));
                }
            }
        }
        for (v, corners) in next_at.iter().enumerate() {
            if corners.is_empty() {
                return Err(ComplexError::Disconnected);
            }
            // walk the link: from an incoming use, the face corner gives the
            // outgoing use; reversing it gives the next incoming use
            let start = *corners.keys().min().unwrap();
            let mut cur = start;
            let mut steps = 0usize;
            loop {
                let out = corners[&cur];
                cur = (out.0, !out.1);
                steps += 1;
                if cur == start {
                    break;
                }
                if steps > corners.len() {
                    return Err(ComplexError::InconsistentRotation(
                        self.vertex_ids[v].clone(),
                    ));
                }
            }
            if steps != corners.len() {
                return Err(ComplexError::InconsistentRotation(
                    self.vertex_ids[v].clone(),
                ));
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(ComplexError::Disconnected)
        }
    }

    /// Face traversing the edge forward (its left side in the embedding).
    pub fn left_face(&self, e: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.boundary.contains(&(e, true)))
    }

    /// Face traversing the edge backward (its right side).
    pub fn right_face(&self, e: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.boundary.contains(&(e, false)))
    }

    /// Vertices lying on the outer boundary of a disk.
    pub fn outer_vertices(&self) -> BTreeSet<usize> {
        match &self.outer {
            Some(outer) => self.circuit_vertices(outer).into_iter().collect(),
            None => BTreeSet::new(),
        }
    }

    pub fn outer_edges(&self) -> BTreeSet<usize> {
        match &self.outer {
            Some(outer) => outer.iter().map(|&(e, _)| e).collect(),
            None => BTreeSet::new(),
        }
    }
}

/// Poles of an acyclic edge orientation with one source and one sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BipolarOrientation {
    pub north: usize,
    pub south: usize,
}

/// Verifies that the stored edge directions are acyclic with a unique source
/// and a unique sink; for disks both poles must lie on the outer boundary.
pub fn check_bipolar(c: &CellComplex2) -> Result<BipolarOrientation, ComplexError> {
    let n = c.vertex_count();
    if c.edges.is_empty() {
        return if n == 1 {
            Ok(BipolarOrientation { north: 0, south: 0 })
        } else {
            Err(ComplexError::NotBipolar("no edges".into()))
        };
    }
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for e in &c.edges {
        outdeg[e.tail] += 1;
        indeg[e.head] += 1;
    }
    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0).collect();
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(ComplexError::NotBipolar(format!(
            "{} sources, {} sinks",
            sources.len(),
            sinks.len()
        )));
    }
    // Kahn topological sort detects directed cycles
    let mut deg = indeg.clone();
    let mut queue = VecDeque::from([sources[0]]);
    let mut visited = 0usize;
    let mut out_adj = vec![Vec::new(); n];
    for e in &c.edges {
        out_adj[e.tail].push(e.head);
    }
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for &w in &out_adj[v] {
            deg[w] -= 1;
            if deg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if visited != n {
        return Err(ComplexError::NotBipolar("directed cycle".into()));
    }
    if c.kind == ComplexKind::Disk {
        let boundary = c.outer_vertices();
        if !boundary.contains(&sources[0]) || !boundary.contains(&sinks[0]) {
            return Err(ComplexError::PolesNotOnBoundary);
        }
    }
    Ok(BipolarOrientation {
        north: sources[0],
        south: sinks[0],
    })
}

/// Eastern/Western classification of a bipolar disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiskClass {
    pub eastern: bool,
    pub western: bool,
}

impl DiskClass {
    pub fn eastwest(&self) -> bool {
        self.eastern && self.western
    }
}

/// Classifies a bipolar disk: Eastern when every interior edge with an
/// endpoint on the boundary (other than the South pole) leaves that vertex,
/// Western when every such edge (other than at North) enters it.
///
/// Also cross-checks the EastWest case against the single-face-boundary-path
/// characterization and reports a mismatch as an internal error.
pub fn classify_disk(c: &CellComplex2) -> Result<DiskClass, ComplexError> {
    let poles = check_bipolar(c)?;
    let boundary_v = c.outer_vertices();
    let boundary_e = c.outer_edges();
    let mut eastern = true;
    let mut western = true;
    for (idx, e) in c.edges.iter().enumerate() {
        if boundary_e.contains(&idx) {
            continue;
        }
        for &(v, outgoing) in &[(e.tail, true), (e.head, false)] {
            if !boundary_v.contains(&v) {
                continue;
            }
            if v != poles.south && !outgoing {
                eastern = false;
            }
            if v != poles.north && outgoing {
                western = false;
            }
        }
    }
    let class = DiskClass { eastern, western };
    if class.eastwest() != eastwest_by_boundary_paths(c, poles) {
        return Err(ComplexError::BadTemplate(
            "EastWest check disagrees with the boundary-path criterion".into(),
        ));
    }
    Ok(class)
}

/// Every pole-to-pole boundary path lies inside one face boundary.
fn eastwest_by_boundary_paths(c: &CellComplex2, poles: BipolarOrientation) -> bool {
    if c.edges.is_empty() {
        return true;
    }
    let outer = c.outer.as_ref().expect("disk validated");
    // split the outer circuit at the two poles
    let verts = c.circuit_vertices(outer);
    let k = verts.len();
    let npos = verts.iter().position(|&v| v == poles.north);
    let spos = verts.iter().position(|&v| v == poles.south);
    let (Some(npos), Some(spos)) = (npos, spos) else {
        return false;
    };
    if poles.north == poles.south {
        return true;
    }
    let mut paths: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    let mut w = npos;
    while w != spos {
        paths[0].push(outer[w].0);
        w = (w + 1) % k;
    }
    while w != npos {
        paths[1].push(outer[w].0);
        w = (w + 1) % k;
    }
    paths.into_iter().all(|path| {
        c.faces.iter().any(|f| {
            let ids: HashSet<usize> = f.boundary.iter().map(|&(e, _)| e).collect();
            path.iter().all(|e| ids.contains(e))
        })
    })
}

/// Decoration turning a sphere complex into a 3-cell template.
#[derive(Clone, Debug)]
pub struct TemplateData {
    pub north: usize,
    pub south: usize,
    /// Edge indices of the two meridian paths, in order from North to South.
    pub meridian_we: Vec<usize>,
    pub meridian_ew: Vec<usize>,
    /// Face indices of the hemispheres.
    pub west: BTreeSet<usize>,
    pub east: BTreeSet<usize>,
    /// Identifier of the 3-cell barycenter.
    pub center: String,
}

#[derive(Clone, Debug)]
pub struct ThreeCellTemplate {
    pub complex: CellComplex2,
    pub data: TemplateData,
}

/// The four meridian-overlap anchor faces of a valid template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnchorFaces {
    /// Face in the West containing the first edge of `WE`.
    pub ne: usize,
    /// Face in the East containing the last edge of `WE`.
    pub sw: usize,
    /// Face in the West containing the first edge of `EW`.
    pub nw: usize,
    /// Face in the East containing the last edge of `EW`.
    pub se: usize,
}

#[derive(Clone, Debug)]
pub struct TemplateValidation {
    pub valid: bool,
    pub anchors: Option<AnchorFaces>,
    pub violations: Vec<String>,
}

impl ThreeCellTemplate {
    /// Face adjacent to the given edge inside the given hemisphere.
    fn hemisphere_face_at(&self, e: usize, hemi: &BTreeSet<usize>) -> Option<usize> {
        let l = self.complex.left_face(e);
        let r = self.complex.right_face(e);
        match (l, r) {
            (Some(l), _) if hemi.contains(&l) => Some(l),
            (_, Some(r)) if hemi.contains(&r) => Some(r),
            _ => None,
        }
    }

    pub fn anchor_faces(&self) -> Result<AnchorFaces, ComplexError> {
        let d = &self.data;
        let first_we = *d.meridian_we.first().ok_or_else(|| {
            ComplexError::BadTemplate("empty WE meridian".into())
        })?;
        let last_we = *d.meridian_we.last().unwrap();
        let first_ew = *d.meridian_ew.first().ok_or_else(|| {
            ComplexError::BadTemplate("empty EW meridian".into())
        })?;
        let last_ew = *d.meridian_ew.last().unwrap();
        let ne = self
            .hemisphere_face_at(first_we, &d.west)
            .ok_or_else(|| ComplexError::BadTemplate("no West face at first WE edge".into()))?;
        let sw = self
            .hemisphere_face_at(last_we, &d.east)
            .ok_or_else(|| ComplexError::BadTemplate("no East face at last WE edge".into()))?;
        let nw = self
            .hemisphere_face_at(first_ew, &d.west)
            .ok_or_else(|| ComplexError::BadTemplate("no West face at first EW edge".into()))?;
        let se = self
            .hemisphere_face_at(last_ew, &d.east)
            .ok_or_else(|| ComplexError::BadTemplate("no East face at last EW edge".into()))?;
        Ok(AnchorFaces { ne, sw, nw, se })
    }

    /// Set of meridian edges (both paths).
    pub fn meridian_edges(&self) -> BTreeSet<usize> {
        self.data
            .meridian_we
            .iter()
            .chain(self.data.meridian_ew.iter())
            .copied()
            .collect()
    }

    /// Vertices on a meridian path, poles included.
    pub fn meridian_vertices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &e in self.data.meridian_we.iter().chain(self.data.meridian_ew.iter()) {
            out.insert(self.complex.edges[e].tail);
            out.insert(self.complex.edges[e].head);
        }
        out
    }

    /// The same template with the two meridian labels exchanged; this is the
    /// inversion image and settles the handedness of search-found
    /// decorations.
    pub fn swapped_meridians(&self) -> ThreeCellTemplate {
        let mut data = self.data.clone();
        std::mem::swap(&mut data.meridian_we, &mut data.meridian_ew);
        ThreeCellTemplate {
            complex: self.complex.clone(),
            data,
        }
    }

    fn reversed_circuits(c: &CellComplex2) -> CellComplex2 {
        let mut out = c.clone();
        for f in &mut out.faces {
            f.boundary = f
                .boundary
                .iter()
                .rev()
                .map(|&(e, fwd)| (e, !fwd))
                .collect();
        }
        out
    }

    /// Image under the flip action: sphere orientation and all edges
    /// reverse, poles, meridian labels and hemispheres swap.
    pub fn kappa(&self) -> ThreeCellTemplate {
        let mut complex = Self::reversed_circuits(&self.complex);
        for e in 0..complex.edge_count() {
            complex.flip_edge(e);
        }
        let d = &self.data;
        let rev = |p: &[usize]| p.iter().rev().copied().collect::<Vec<usize>>();
        let data = TemplateData {
            north: d.south,
            south: d.north,
            meridian_we: rev(&d.meridian_ew),
            meridian_ew: rev(&d.meridian_we),
            west: d.east.clone(),
            east: d.west.clone(),
            center: d.center.clone(),
        };
        ThreeCellTemplate { complex, data }
    }

    /// Image under the reversal action: sphere orientation reverses and the
    /// meridian labels swap; poles, edges, and hemispheres stay.
    pub fn rho(&self) -> ThreeCellTemplate {
        let complex = Self::reversed_circuits(&self.complex);
        let mut data = self.data.clone();
        std::mem::swap(&mut data.meridian_we, &mut data.meridian_ew);
        ThreeCellTemplate { complex, data }
    }

    /// Hemisphere containing an edge, if it is not a meridian edge.
    pub fn edge_hemisphere(&self, e: usize) -> Option<Hemisphere> {
        if self.meridian_edges().contains(&e) {
            return None;
        }
        let l = self.complex.left_face(e)?;
        if self.data.west.contains(&l) {
            Some(Hemisphere::West)
        } else {
            Some(Hemisphere::East)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hemisphere {
    West,
    East,
}

fn path_ok(c: &CellComplex2, edges: &[usize], from: usize, to: usize) -> Result<Vec<usize>, String> {
    let mut at = from;
    let mut verts = vec![at];
    for &e in edges {
        let edge = &c.edges[e];
        if edge.tail != at {
            return Err(format!(
                "edge {} does not continue the path at {}",
                edge.id, c.vertex_ids[at]
            ));
        }
        at = edge.head;
        verts.push(at);
    }
    if at != to {
        return Err("path does not end at the South pole".into());
    }
    let unique: HashSet<usize> = verts.iter().copied().collect();
    if unique.len() != verts.len() {
        return Err("meridian path repeats a vertex".into());
    }
    Ok(verts)
}

/// Checks the four 3-cell-template conditions, reporting each violation.
pub fn validate_template(t: &ThreeCellTemplate) -> TemplateValidation {
    let mut violations = Vec::new();
    let c = &t.complex;
    let d = &t.data;

    if c.kind != ComplexKind::Sphere {
        violations.push("template complex must be a sphere".to_string());
    }
    if let Err(e) = c.validate() {
        violations.push(format!("complex invalid: {}", e));
    }

    // (ii) bipolar orientation with the declared poles
    match check_bipolar(c) {
        Ok(poles) => {
            if poles.north != d.north || poles.south != d.south {
                violations.push("declared poles disagree with the orientation".to_string());
            }
        }
        Err(e) => violations.push(format!("{}", e)),
    }

    // (ii) meridians: disjoint directed pole-to-pole paths
    let we_path = path_ok(c, &d.meridian_we, d.north, d.south);
    let ew_path = path_ok(c, &d.meridian_ew, d.north, d.south);
    match (&we_path, &ew_path) {
        (Ok(wv), Ok(ev)) => {
            let interior_w: HashSet<usize> = wv[1..wv.len() - 1].iter().copied().collect();
            let interior_e: HashSet<usize> = ev[1..ev.len() - 1].iter().copied().collect();
            if interior_w.intersection(&interior_e).count() > 0 {
                violations.push("meridians share an interior vertex".to_string());
            }
        }
        (Err(e), _) => violations.push(format!("WE meridian: {}", e)),
        (_, Err(e)) => violations.push(format!("EW meridian: {}", e)),
    }

    // (ii) hemispheres: the two face components cut by the meridian circle
    let meridian_edges = t.meridian_edges();
    let mut comp = vec![usize::MAX; c.face_count()];
    let mut ncomp = 0;
    for f in 0..c.face_count() {
        if comp[f] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([f]);
        comp[f] = ncomp;
        while let Some(g) = queue.pop_front() {
            for &(e, _) in &c.faces[g].boundary {
                if meridian_edges.contains(&e) {
                    continue;
                }
                for nb in [c.left_face(e), c.right_face(e)].into_iter().flatten() {
                    if comp[nb] == usize::MAX {
                        comp[nb] = ncomp;
                        queue.push_back(nb);
                    }
                }
            }
        }
        ncomp += 1;
    }
    if ncomp != 2 {
        violations.push(format!(
            "meridians split the faces into {} components (need 2)",
            ncomp
        ));
    } else {
        let west_comps: HashSet<usize> = d.west.iter().map(|&f| comp[f]).collect();
        let east_comps: HashSet<usize> = d.east.iter().map(|&f| comp[f]).collect();
        let all_faces = d.west.len() + d.east.len() == c.face_count();
        if !all_faces || west_comps.len() != 1 || east_comps.len() != 1 || west_comps == east_comps
        {
            violations.push("hemisphere face sets do not match the meridian split".to_string());
        }
    }

    // (iii) non-meridian edges at meridian vertices point toward the meridian
    // in the West and away from it in the East
    let meridian_v = t.meridian_vertices();
    for (idx, e) in c.edges.iter().enumerate() {
        let Some(h) = t.edge_hemisphere(idx) else {
            continue;
        };
        for &(v, outgoing) in &[(e.tail, true), (e.head, false)] {
            if !meridian_v.contains(&v) || v == d.north || v == d.south {
                continue;
            }
            match h {
                Hemisphere::West if outgoing => violations.push(format!(
                    "western edge {} leaves meridian vertex {}",
                    e.id, c.vertex_ids[v]
                )),
                Hemisphere::East if !outgoing => violations.push(format!(
                    "eastern edge {} enters meridian vertex {}",
                    e.id, c.vertex_ids[v]
                )),
                _ => {}
            }
        }
    }

    // (iv) overlap of the anchor faces along their meridians
    let anchors = match t.anchor_faces() {
        Ok(a) => {
            let shares = |f: usize, g: usize, meridian: &[usize]| {
                let fb: HashSet<usize> = c.faces[f].boundary.iter().map(|&(e, _)| e).collect();
                let gb: HashSet<usize> = c.faces[g].boundary.iter().map(|&(e, _)| e).collect();
                meridian
                    .iter()
                    .any(|e| fb.contains(e) && gb.contains(e))
            };
            if !shares(a.ne, a.sw, &d.meridian_we) {
                violations.push("NE and SW do not overlap on the WE meridian".to_string());
            }
            if !shares(a.nw, a.se, &d.meridian_ew) {
                violations.push("NW and SE do not overlap on the EW meridian".to_string());
            }
            Some(a)
        }
        Err(e) => {
            violations.push(format!("{}", e));
            None
        }
    };

    TemplateValidation {
        valid: violations.is_empty(),
        anchors,
        violations,
    }
}

impl CellComplex2 {
    /// Reverses one edge, updating every circuit use so that `+` keeps
    /// meaning tail-to-head.
    pub fn flip_edge(&mut self, e: usize) {
        let edge = &mut self.edges[e];
        std::mem::swap(&mut edge.tail, &mut edge.head);
        for f in &mut self.faces {
            for u in &mut f.boundary {
                if u.0 == e {
                    u.1 = !u.1;
                }
            }
        }
        if let Some(outer) = &mut self.outer {
            for u in outer {
                if u.0 == e {
                    u.1 = !u.1;
                }
            }
        }
    }
}

/// Automorphisms of the complex: vertex bijections that map face circuits to
/// face circuits, as cycles up to rotation, either all preserving or all
/// reversing the orientation.
///
/// On skeletons that are not 3-connected, plain graph automorphisms can
/// shuffle parallel pole-to-pole paths in ways no embedding supports, so the
/// face filter matters.
pub fn complex_automorphisms(c: &CellComplex2) -> Vec<Vec<usize>> {
    let undirected: Vec<(usize, usize)> = c
        .edges
        .iter()
        .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
        .collect();
    let face_cycles: Vec<Vec<usize>> = c
        .faces
        .iter()
        .map(|f| c.circuit_vertices(&f.boundary))
        .collect();
    let normalize = |cycle: &[usize]| -> Vec<usize> {
        // least rotation of the cycle
        let k = cycle.len();
        let mut best: Option<Vec<usize>> = None;
        for s in 0..k {
            let rot: Vec<usize> = (0..k).map(|i| cycle[(s + i) % k]).collect();
            if best.as_ref().map(|b| rot < *b).unwrap_or(true) {
                best = Some(rot);
            }
        }
        best.unwrap()
    };
    let keys: HashSet<Vec<usize>> = face_cycles.iter().map(|cy| normalize(cy)).collect();
    let keys_rev: HashSet<Vec<usize>> = face_cycles
        .iter()
        .map(|cy| {
            let mut r = cy.clone();
            r.reverse();
            normalize(&r)
        })
        .collect();
    graph_automorphisms(c.vertex_count(), &undirected)
        .into_iter()
        .filter(|phi| {
            let mapped: Vec<Vec<usize>> = face_cycles
                .iter()
                .map(|cy| normalize(&cy.iter().map(|&v| phi[v]).collect::<Vec<_>>()))
                .collect();
            mapped.iter().all(|m| keys.contains(m)) || mapped.iter().all(|m| keys_rev.contains(m))
        })
        .collect()
}

/// Undirected automorphisms of a small graph, as vertex mappings.
pub fn graph_automorphisms(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let deg: Vec<usize> = adj.iter().map(|s| s.len()).collect();
    let mut out = Vec::new();
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        n: usize,
        deg: &[usize],
        adj: &[BTreeSet<usize>],
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(mapping.clone());
            return;
        }
        for w in 0..n {
            if used[w] || deg[v] != deg[w] {
                continue;
            }
            let ok = adj[v].iter().all(|&u| {
                mapping[u] == usize::MAX || adj[w].contains(&mapping[u])
            }) && (0..v).all(|u| adj[v].contains(&u) == adj[w].contains(&mapping[u]));
            if !ok {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            go(v + 1, n, deg, adj, mapping, used, out);
            mapping[v] = usize::MAX;
            used[w] = false;
        }
    }
    go(0, n, &deg, &adj, &mut mapping, &mut used, &mut out);
    out
}

// ---------------------------------------------------------------------------
// template enumeration

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Budget on completion-search nodes; exceeding it aborts with `capped`.
    pub node_cap: u64,
    /// Stop after the first valid orientation per pole/meridian/hemisphere
    /// configuration (enough for feasibility maps, not for class censuses).
    pub first_per_config: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_cap: 50_000_000,
            first_per_config: false,
        }
    }
}

/// One trivial-equivalence class of templates on a fixed sphere complex.
#[derive(Clone, Debug)]
pub struct TemplateClass {
    pub canonical: crate::perm::Permutation,
    pub sigma: crate::perm::Permutation,
    pub representative: ThreeCellTemplate,
    pub delta: usize,
    /// Face count of the smaller hemisphere.
    pub eta: usize,
}

#[derive(Clone, Debug)]
pub struct TemplateSearch {
    pub classes: Vec<TemplateClass>,
    /// `(delta, eta)` combinations realized by some valid template.
    pub feasible: BTreeSet<(usize, usize)>,
    pub capped: bool,
    pub configs: u64,
}

struct Completer<'a> {
    c: &'a CellComplex2,
    north: usize,
    south: usize,
    free: Vec<usize>,
    // direction per edge: 0 undecided, 1 as stored, 2 reversed
    decided: Vec<u8>,
    undecided_at: Vec<usize>,
    nodes: &'a mut u64,
    cap: u64,
    capped: bool,
    stop_after_first: bool,
    found: Vec<Vec<u8>>,
}

impl<'a> Completer<'a> {
    /// Directed endpoints of edge `e` under the current assignment.
    fn ends(&self, e: usize) -> (usize, usize) {
        let edge = &self.c.edges[e];
        if self.decided[e] == 2 {
            (edge.head, edge.tail)
        } else {
            (edge.tail, edge.head)
        }
    }

    fn has_cycle_or_bad_pole(&self) -> bool {
        // directed cycle among decided edges, or a decided edge into the
        // North pole / out of the South pole
        let n = self.c.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in 0..self.c.edge_count() {
            if self.decided[e] == 0 {
                continue;
            }
            let (t, h) = self.ends(e);
            if h == self.north || t == self.south {
                return true;
            }
            adj[t].push(h);
        }
        // iterative coloring
        let mut color = vec![0u8; n];
        for s in 0..n {
            if color[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            color[s] = 1;
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if *i < adj[v].len() {
                    let w = adj[v][*i];
                    *i += 1;
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        false
    }

    fn saturated_vertex_fails(&self) -> bool {
        for v in 0..self.c.vertex_count() {
            if self.undecided_at[v] > 0 {
                continue;
            }
            let mut indeg = 0;
            let mut outdeg = 0;
            for e in 0..self.c.edge_count() {
                if self.decided[e] == 0 {
                    continue;
                }
                let (t, h) = self.ends(e);
                if t == v {
                    outdeg += 1;
                }
                if h == v {
                    indeg += 1;
                }
            }
            if (indeg == 0 && v != self.north) || (outdeg == 0 && v != self.south) {
                return true;
            }
        }
        false
    }

    fn run(&mut self, idx: usize) {
        if self.capped || (self.stop_after_first && !self.found.is_empty()) {
            return;
        }
        *self.nodes += 1;
        if *self.nodes > self.cap {
            self.capped = true;
            return;
        }
        if self.has_cycle_or_bad_pole() || self.saturated_vertex_fails() {
            return;
        }
        if idx == self.free.len() {
            self.found.push(self.decided.clone());
            return;
        }
        let e = self.free[idx];
        let edge_ends = (self.c.edges[e].tail, self.c.edges[e].head);
        for dir in [1u8, 2u8] {
            self.decided[e] = dir;
            self.undecided_at[edge_ends.0] -= 1;
            self.undecided_at[edge_ends.1] -= 1;
            self.run(idx + 1);
            self.undecided_at[edge_ends.0] += 1;
            self.undecided_at[edge_ends.1] += 1;
            self.decided[e] = 0;
        }
    }
}

/// Simple paths between two vertices in the undirected 1-skeleton, each as a
/// list of edge indices.
fn simple_paths(c: &CellComplex2, from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); c.vertex_count()];
    for (e, edge) in c.edges.iter().enumerate() {
        incident[edge.tail].push((e, edge.head));
        incident[edge.head].push((e, edge.tail));
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; c.vertex_count()];
    let mut path = Vec::new();
    fn go(
        v: usize,
        to: usize,
        incident: &[Vec<(usize, usize)>],
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == to {
            out.push(path.clone());
            return;
        }
        on_path[v] = true;
        for &(e, w) in &incident[v] {
            if on_path[w] {
                continue;
            }
            path.push(e);
            go(w, to, incident, on_path, path, out);
            path.pop();
        }
        on_path[v] = false;
    }
    go(from, to, &incident, &mut on_path, &mut path, &mut out);
    out
}

fn path_interior(c: &CellComplex2, path: &[usize], from: usize) -> Vec<usize> {
    let mut at = from;
    let mut interior = Vec::new();
    for (i, &e) in path.iter().enumerate() {
        let edge = &c.edges[e];
        at = if edge.tail == at { edge.head } else { edge.tail };
        if i + 1 < path.len() {
            interior.push(at);
        }
    }
    interior
}

/// Exhaustively enumerates the 3-cell templates carried by a sphere complex,
/// up to complex automorphism composed with trivial equivalence.
///
/// The search runs poles (one per automorphism orbit), meridian path pairs,
/// hemisphere assignments, and bipolar completions of the edge directions
/// forced near the meridians; classes are keyed by the canonical form of the
/// induced permutation.
pub fn enumerate_templates(
    sphere: &CellComplex2,
    opts: &SearchOptions,
) -> Result<TemplateSearch, ComplexError> {
    sphere.validate()?;
    if sphere.kind != ComplexKind::Sphere {
        return Err(ComplexError::BadTemplate("need a sphere complex".into()));
    }
    let autos = complex_automorphisms(sphere);
    // one ordered pole pair per automorphism orbit
    let mut pole_reps: Vec<(usize, usize)> = Vec::new();
    let mut seen_pairs: HashSet<(usize, usize)> = HashSet::new();
    for n in 0..sphere.vertex_count() {
        for s in 0..sphere.vertex_count() {
            if n == s || seen_pairs.contains(&(n, s)) {
                continue;
            }
            pole_reps.push((n, s));
            for a in &autos {
                seen_pairs.insert((a[n], a[s]));
            }
        }
    }

    let mut nodes: u64 = 0;
    let mut configs: u64 = 0;
    let mut capped = false;
    let mut classes: BTreeMap<crate::perm::Permutation, TemplateClass> = BTreeMap::new();
    let mut feasible = BTreeSet::new();

    for &(north, south) in &pole_reps {
        let paths = simple_paths(sphere, north, south);
        for i in 0..paths.len() {
            let int_i: HashSet<usize> = path_interior(sphere, &paths[i], north).into_iter().collect();
            let set_i: HashSet<usize> = paths[i].iter().copied().collect();
            for j in i + 1..paths.len() {
                let int_j = path_interior(sphere, &paths[j], north);
                if int_j.iter().any(|v| int_i.contains(v)) {
                    continue;
                }
                if paths[j].iter().any(|e| set_i.contains(e)) {
                    continue;
                }
                // split faces along the meridian circle
                let circle: HashSet<usize> =
                    paths[i].iter().chain(paths[j].iter()).copied().collect();
                let mut comp = vec![usize::MAX; sphere.face_count()];
                let mut ncomp = 0;
                for f in 0..sphere.face_count() {
                    if comp[f] != usize::MAX {
                        continue;
                    }
                    let mut queue = VecDeque::from([f]);
                    comp[f] = ncomp;
                    while let Some(g) = queue.pop_front() {
                        for &(e, _) in &sphere.faces[g].boundary {
                            if circle.contains(&e) {
                                continue;
                            }
                            for nb in [sphere.left_face(e), sphere.right_face(e)]
                                .into_iter()
                                .flatten()
                            {
                                if comp[nb] == usize::MAX {
                                    comp[nb] = ncomp;
                                    queue.push_back(nb);
                                }
                            }
                        }
                    }
                    ncomp += 1;
                }
                if ncomp != 2 {
                    continue;
                }
                for west_comp in 0..2 {
                    configs += 1;
                    let outcome = try_config(
                        sphere,
                        north,
                        south,
                        &paths[i],
                        &paths[j],
                        &comp,
                        west_comp,
                        opts,
                        &mut nodes,
                    );
                    match outcome {
                        ConfigOutcome::Capped => {
                            capped = true;
                        }
                        ConfigOutcome::Templates(ts) => {
                            for t in ts {
                                // a search decoration can carry the mirror
                                // handedness; its meridian swap is the same
                                // class and matches the calibrated chirality
                                let (t, sigma) = match crate::szs::sigma_of(&t) {
                                    Ok(s) => (t, s),
                                    Err(_) => {
                                        let swapped = t.swapped_meridians();
                                        match crate::szs::sigma_of(&swapped) {
                                            Ok(s) => (swapped, s),
                                            Err(e) => {
                                                return Err(ComplexError::BadTemplate(format!(
                                                "template admits no Sturm permutation: {}",
                                                e
                                            )))
                                            }
                                        }
                                    }
                                };
                                let canonical = sigma.canonical();
                                let delta = pole_distance(sphere, north, south);
                                let eta = t.data.west.len().min(t.data.east.len());
                                feasible.insert((delta, eta));
                                classes.entry(canonical.clone()).or_insert(TemplateClass {
                                    canonical,
                                    sigma,
                                    representative: t,
                                    delta,
                                    eta,
                                });
                            }
                        }
                        ConfigOutcome::Infeasible => {}
                    }
                    if capped {
                        break;
                    }
                }
                if capped {
                    break;
                }
            }
            if capped {
                break;
            }
        }
        if capped {
            break;
        }
    }
    Ok(TemplateSearch {
        classes: classes.into_values().collect(),
        feasible,
        capped,
        configs,
    })
}

fn pole_distance(c: &CellComplex2, from: usize, to: usize) -> usize {
    let mut dist = vec![usize::MAX; c.vertex_count()];
    dist[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        for e in &c.edges {
            for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                if a == v && dist[b] == usize::MAX {
                    dist[b] = dist[v] + 1;
                    q.push_back(b);
                }
            }
        }
    }
    dist[to]
}

enum ConfigOutcome {
    Templates(Vec<ThreeCellTemplate>),
    Infeasible,
    Capped,
}

#[allow(clippy::too_many_arguments)]
fn try_config(
    sphere: &CellComplex2,
    north: usize,
    south: usize,
    we_path: &[usize],
    ew_path: &[usize],
    comp: &[usize],
    west_comp: usize,
    opts: &SearchOptions,
    nodes: &mut u64,
) -> ConfigOutcome {
    let mut c = sphere.clone();
    // orient the meridians along their paths
    let mut forced: Vec<u8> = vec![0; c.edge_count()];
    for path in [we_path, ew_path] {
        let mut at = north;
        for &e in path {
            let edge = &c.edges[e];
            let next = if edge.tail == at {
                edge.head
            } else {
                edge.tail
            };
            if edge.tail != at {
                c.flip_edge(e);
            }
            forced[e] = 1;
            at = next;
        }
    }
    let circle_v: HashSet<usize> = {
        let mut s = HashSet::new();
        for &e in we_path.iter().chain(ew_path.iter()) {
            s.insert(c.edges[e].tail);
            s.insert(c.edges[e].head);
        }
        s
    };
    let west: BTreeSet<usize> = (0..c.face_count())
        .filter(|&f| comp[f] == west_comp)
        .collect();
    let east: BTreeSet<usize> = (0..c.face_count())
        .filter(|&f| comp[f] != west_comp)
        .collect();

    // forced directions: edges at the poles, and the meridian-vertex rule
    // per hemisphere
    for e in 0..c.edge_count() {
        if forced[e] == 1 {
            continue;
        }
        let own_face = c.left_face(e).expect("sphere");
        let in_west = west.contains(&own_face);
        let (tail, head) = (c.edges[e].tail, c.edges[e].head);
        let mut want: Option<usize> = None; // desired head
        for v in [tail, head] {
            let desired_head = if v == north {
                Some(if v == tail { head } else { tail }) // away from North
            } else if v == south {
                Some(v) // into South
            } else if circle_v.contains(&v) {
                if in_west {
                    Some(v)
                } else {
                    Some(if v == tail { head } else { tail })
                }
            } else {
                None
            };
            if let Some(h) = desired_head {
                match want {
                    None => want = Some(h),
                    Some(prev) if prev != h => return ConfigOutcome::Infeasible,
                    _ => {}
                }
            }
        }
        if let Some(h) = want {
            if c.edges[e].head != h {
                c.flip_edge(e);
            }
            forced[e] = 1;
        }
    }

    // overlap precheck: the anchor faces must share meridian edges
    let data = TemplateData {
        north,
        south,
        meridian_we: we_path.to_vec(),
        meridian_ew: ew_path.to_vec(),
        west: west.clone(),
        east: east.clone(),
        center: "O".into(),
    };
    let probe = ThreeCellTemplate {
        complex: c.clone(),
        data: data.clone(),
    };
    let Ok(anchors) = probe.anchor_faces() else {
        return ConfigOutcome::Infeasible;
    };
    let shares = |f: usize, g: usize, meridian: &[usize]| {
        let fb: HashSet<usize> = c.faces[f].boundary.iter().map(|&(e, _)| e).collect();
        let gb: HashSet<usize> = c.faces[g].boundary.iter().map(|&(e, _)| e).collect();
        meridian.iter().any(|e| fb.contains(e) && gb.contains(e))
    };
    if !shares(anchors.ne, anchors.sw, we_path) || !shares(anchors.nw, anchors.se, ew_path) {
        return ConfigOutcome::Infeasible;
    }

    // complete the remaining directions to bipolar orientations
    let free: Vec<usize> = (0..c.edge_count()).filter(|&e| forced[e] == 0).collect();
    let mut undecided_at = vec![0usize; c.vertex_count()];
    for &e in &free {
        undecided_at[c.edges[e].tail] += 1;
        undecided_at[c.edges[e].head] += 1;
    }
    let mut completer = Completer {
        c: &c,
        north,
        south,
        free: free.clone(),
        decided: (0..c.edge_count())
            .map(|e| if forced[e] == 1 { 1 } else { 0 })
            .collect(),
        undecided_at,
        nodes,
        cap: opts.node_cap,
        capped: false,
        stop_after_first: opts.first_per_config,
        found: Vec::new(),
    };
    completer.run(0);
    if completer.capped {
        return ConfigOutcome::Capped;
    }
    let found = std::mem::take(&mut completer.found);
    let mut out = Vec::new();
    for assignment in found {
        let mut oriented = c.clone();
        for &e in &free {
            if assignment[e] == 2 {
                oriented.flip_edge(e);
            }
        }
        let t = ThreeCellTemplate {
            complex: oriented,
            data: data.clone(),
        };
        let check = validate_template(&t);
        if check.valid {
            out.push(t);
        }
    }
    if out.is_empty() {
        ConfigOutcome::Infeasible
    } else {
        ConfigOutcome::Templates(out)
    }
}

// ---------------------------------------------------------------------------
// file format

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    id: String,
    tail: String,
    head: String,
}

#[derive(Serialize, Deserialize)]
struct FaceFile {
    id: String,
    boundary: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct TemplateFile {
    north: String,
    south: String,
    #[serde(rename = "meridianWE")]
    meridian_we: Vec<String>,
    #[serde(rename = "meridianEW")]
    meridian_ew: Vec<String>,
    west: Vec<String>,
    east: Vec<String>,
    center: String,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    kind: String,
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
    faces: Vec<FaceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outer: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    template: Option<TemplateFile>,
}

fn sign_to_bool(s: &str) -> Result<bool, ComplexError> {
    match s {
        "+" => Ok(true),
        "-" | "\u{2212}" => Ok(false),
        other => Err(ComplexError::Json(format!("bad sign {:?}", other))),
    }
}

/// Decodes and validates a complex (and optional template decoration) from
/// the JSON interchange format.
pub fn decode_complex(text: &str) -> Result<(CellComplex2, Option<TemplateData>), ComplexError> {
    let file: ComplexFile =
        serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
    let kind = match file.kind.as_str() {
        "sphere" => ComplexKind::Sphere,
        "disk" => ComplexKind::Disk,
        other => return Err(ComplexError::Json(format!("bad kind {:?}", other))),
    };
    let mut b = ComplexBuilder::new(kind);
    for v in &file.vertices {
        b.vertex(v)?;
    }
    for e in &file.edges {
        b.edge(&e.id, &e.tail, &e.head)?;
    }
    for f in &file.faces {
        let boundary: Vec<(&str, bool)> = f
            .boundary
            .iter()
            .map(|(id, s)| Ok((id.as_str(), sign_to_bool(s)?)))
            .collect::<Result<_, ComplexError>>()?;
        b.face(&f.id, &boundary)?;
    }
    if let Some(outer) = &file.outer {
        let boundary: Vec<(&str, bool)> = outer
            .iter()
            .map(|(id, s)| Ok((id.as_str(), sign_to_bool(s)?)))
            .collect::<Result<_, ComplexError>>()?;
        b.outer(&boundary)?;
    }
    let complex = b.finish()?;
    let template = match file.template {
        None => None,
        Some(t) => {
            let vid = |id: &str| {
                complex
                    .vertex_idx(id)
                    .ok_or_else(|| ComplexError::UnknownId(id.to_string()))
            };
            let eid = |id: &str| {
                complex
                    .edge_idx(id)
                    .ok_or_else(|| ComplexError::UnknownId(id.to_string()))
            };
            let fid = |id: &str| {
                complex
                    .face_idx(id)
                    .ok_or_else(|| ComplexError::UnknownId(id.to_string()))
            };
            Some(TemplateData {
                north: vid(&t.north)?,
                south: vid(&t.south)?,
                meridian_we: t
                    .meridian_we
                    .iter()
                    .map(|s| eid(s))
                    .collect::<Result<_, _>>()?,
                meridian_ew: t
                    .meridian_ew
                    .iter()
                    .map(|s| eid(s))
                    .collect::<Result<_, _>>()?,
                west: t.west.iter().map(|s| fid(s)).collect::<Result<_, _>>()?,
                east: t.east.iter().map(|s| fid(s)).collect::<Result<_, _>>()?,
                center: t.center,
            })
        }
    };
    Ok((complex, template))
}

/// Encodes a complex and optional template decoration as JSON.
pub fn encode_complex(c: &CellComplex2, template: Option<&TemplateData>) -> String {
    let sign = |fwd: bool| if fwd { "+" } else { "-" }.to_string();
    let file = ComplexFile {
        kind: match c.kind {
            ComplexKind::Sphere => "sphere".into(),
            ComplexKind::Disk => "disk".into(),
        },
        vertices: c.vertex_ids.clone(),
        edges: c
            .edges
            .iter()
            .map(|e| EdgeFile {
                id: e.id.clone(),
                tail: c.vertex_ids[e.tail].clone(),
                head: c.vertex_ids[e.head].clone(),
            })
            .collect(),
        faces: c
            .faces
            .iter()
            .map(|f| FaceFile {
                id: f.id.clone(),
                boundary: f
                    .boundary
                    .iter()
                    .map(|&(e, fwd)| (c.edges[e].id.clone(), sign(fwd)))
                    .collect(),
            })
            .collect(),
        outer: c.outer.as_ref().map(|outer| {
            outer
                .iter()
                .map(|&(e, fwd)| (c.edges[e].id.clone(), sign(fwd)))
                .collect()
        }),
        template: template.map(|t| TemplateFile {
            north: c.vertex_ids[t.north].clone(),
            south: c.vertex_ids[t.south].clone(),
            meridian_we: t.meridian_we.iter().map(|&e| c.edges[e].id.clone()).collect(),
            meridian_ew: t.meridian_ew.iter().map(|&e| c.edges[e].id.clone()).collect(),
            west: t.west.iter().map(|&f| c.faces[f].id.clone()).collect(),
            east: t.east.iter().map(|&f| c.faces[f].id.clone()).collect(),
            center: t.center.clone(),
        }),
    };
    serde_json::to_string_pretty(&file).expect("complex serializes")
}

/// Isomorphism test for the directed 1-skeletons of two complexes, used by
/// duality checks on small fixtures.
pub fn skeleta_isomorphic(a: &CellComplex2, b: &CellComplex2) -> bool {
    graphs_isomorphic(
        a.vertex_count(),
        &a.edges.iter().map(|e| (e.tail, e.head)).collect::<Vec<_>>(),
        b.vertex_count(),
        &b.edges.iter().map(|e| (e.tail, e.head)).collect::<Vec<_>>(),
        false,
    )
}

/// Backtracking isomorphism on small graphs; `directed` controls whether arc
/// directions must be preserved.
pub fn graphs_isomorphic(
    na: usize,
    ea: &[(usize, usize)],
    nb: usize,
    eb: &[(usize, usize)],
    directed: bool,
) -> bool {
    if na != nb || ea.len() != eb.len() {
        return false;
    }
    let key = |n: usize, es: &[(usize, usize)]| -> Vec<(usize, usize)> {
        let mut deg = vec![(0usize, 0usize); n];
        for &(t, h) in es {
            deg[t].0 += 1;
            deg[h].1 += 1;
        }
        if !directed {
            deg = deg.iter().map(|&(o, i)| (o + i, 0)).collect();
        }
        deg
    };
    let da = key(na, ea);
    let mut dsa = da.clone();
    dsa.sort();
    let db = key(nb, eb);
    let mut dsb = db.clone();
    dsb.sort();
    if dsa != dsb {
        return false;
    }
    let adj = |n: usize, es: &[(usize, usize)]| -> Vec<BTreeSet<(usize, bool)>> {
        let mut m = vec![BTreeSet::new(); n];
        for &(t, h) in es {
            m[t].insert((h, true));
            m[h].insert((t, false));
        }
        m
    };
    let aa = adj(na, ea);
    let ab = adj(nb, eb);
    let mut mapping = vec![usize::MAX; na];
    let mut used = vec![false; nb];
    fn assign(
        v: usize,
        na: usize,
        da: &[(usize, usize)],
        db: &[(usize, usize)],
        aa: &[BTreeSet<(usize, bool)>],
        ab: &[BTreeSet<(usize, bool)>],
        directed: bool,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == na {
            return true;
        }
        for w in 0..db.len() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            let consistent = aa[v].iter().all(|&(u, fwd)| {
                if mapping[u] == usize::MAX {
                    true
                } else if directed {
                    ab[w].contains(&(mapping[u], fwd))
                } else {
                    ab[w].contains(&(mapping[u], true)) || ab[w].contains(&(mapping[u], false))
                }
            });
            if !consistent {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if assign(v + 1, na, da, db, aa, ab, directed, mapping, used) {
                return true;
            }
            mapping[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    assign(0, na, &da, &db, &aa, &ab, directed, &mut mapping, &mut used)
}

// Index maps for reporting.
impl ThreeCellTemplate {
    pub fn describe(&self) -> BTreeMap<String, String> {
        let c = &self.complex;
        let d = &self.data;
        let mut m = BTreeMap::new();
        m.insert("north".into(), c.vertex_ids[d.north].clone());
        m.insert("south".into(), c.vertex_ids[d.south].clone());
        m.insert(
            "meridianWE".into(),
            d.meridian_we
                .iter()
                .map(|&e| c.edges[e].id.clone())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert(
            "meridianEW".into(),
            d.meridian_ew
                .iter()
                .map(|&e| c.edges[e].id.clone())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert(
            "west".into(),
            d.west
                .iter()
                .map(|&f| c.faces[f].id.clone())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert(
            "east".into(),
            d.east
                .iter()
                .map(|&f| c.faces[f].id.clone())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert("center".into(), d.center.clone());
        m
    }
}
