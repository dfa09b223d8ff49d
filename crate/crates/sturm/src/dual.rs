//! Duals of 2-sphere complexes and the polar-circle anatomy of template
//! duals: cores, meridian duals, bridges, and the associated report battery.

use crate::complex::{
    CellComplex2, ComplexBuilder, ComplexError, ComplexKind, ThreeCellTemplate,
};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

#[derive(Debug, Clone)]
pub enum DualError {
    Complex(ComplexError),
    NotASphere,
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::Complex(e) => write!(f, "{}", e),
            DualError::NotASphere => write!(f, "duality needs a sphere complex"),
        }
    }
}

impl std::error::Error for DualError {}

impl From<ComplexError> for DualError {
    fn from(e: ComplexError) -> Self {
        DualError::Complex(e)
    }
}

/// Walks the link of every vertex: returns, per vertex, the incident edges in
/// rotation order together with the face spanning each corner.
///
/// `rotation[v]` lists `(edge, face)` pairs: the face lies between this edge
/// and the next one around `v`.
fn vertex_rotations(c: &CellComplex2) -> Vec<Vec<(usize, usize)>> {
    // incoming use -> (outgoing use, face)
    let mut next_at: Vec<HashMap<(usize, bool), ((usize, bool), usize)>> =
        vec![HashMap::new(); c.vertex_count()];
    for (fi, f) in c.faces.iter().enumerate() {
        let k = f.boundary.len();
        for w in 0..k {
            let cur = f.boundary[w];
            let nxt = f.boundary[(w + 1) % k];
            let arrive = {
                let e = &c.edges[cur.0];
                if cur.1 {
                    e.head
                } else {
                    e.tail
                }
            };
            next_at[arrive].insert(cur, (nxt, fi));
        }
    }
    let mut out = Vec::with_capacity(c.vertex_count());
    for v in 0..c.vertex_count() {
        let corners = &next_at[v];
        let mut order = Vec::new();
        if corners.is_empty() {
            out.push(order);
            continue;
        }
        let start = *corners.keys().min().unwrap();
        let mut cur = start;
        loop {
            let (outgoing, face) = corners[&cur];
            order.push((outgoing.0, face));
            cur = (outgoing.0, !outgoing.1);
            if cur == start {
                break;
            }
        }
        out.push(order);
    }
    out
}

/// Graph dual of a sphere complex: dual vertices are the primal faces, dual
/// edges cross the primal ones, dual faces sit at the primal vertices.
///
/// The dual of `e` is directed so that it crosses `e` from its left to its
/// right, facing along `e`.
pub fn sphere_dual(c: &CellComplex2) -> Result<CellComplex2, DualError> {
    if c.kind != ComplexKind::Sphere {
        return Err(DualError::NotASphere);
    }
    c.validate()?;
    let mut b = ComplexBuilder::new(ComplexKind::Sphere);
    for f in &c.faces {
        b.vertex(&f.id)?;
    }
    // the dual of e crosses it from the side of its backward user to the
    // side of its forward user
    for ei in 0..c.edge_count() {
        let to = c.left_face(ei).expect("sphere edge has a forward user");
        let from = c.right_face(ei).expect("sphere edge has a backward user");
        b.edge(
            &dual_edge_id(&c.edges[ei].id),
            &c.faces[from].id,
            &c.faces[to].id,
        )?;
    }
    let rotations = vertex_rotations(c);
    for (v, order) in rotations.iter().enumerate() {
        // the corner walk crosses each edge from the face spanning it
        let mut boundary: Vec<(String, bool)> = Vec::new();
        for &(edge, face) in order {
            let fwd = c.right_face(edge) == Some(face);
            boundary.push((dual_edge_id(&c.edges[edge].id), fwd));
        }
        let refs: Vec<(&str, bool)> = boundary.iter().map(|(s, f)| (s.as_str(), *f)).collect();
        b.face(&format!("{}*", c.vertex_ids[v]), &refs)?;
    }
    Ok(b.finish()?)
}

fn dual_edge_id(id: &str) -> String {
    format!("{}*", id)
}

/// Dual of a template's boundary sphere, with its parts classified.
#[derive(Clone, Debug)]
pub struct DualComplex {
    pub dual: CellComplex2,
    /// Dual face indices of the primal poles.
    pub n_star: usize,
    pub s_star: usize,
    /// Dual vertex indices (primal anchor faces).
    pub w_minus_0: usize,
    pub w_minus_1: usize,
    pub w_plus_0: usize,
    pub w_plus_1: usize,
    /// Core pieces: dual vertices and edges of each open hemisphere.
    pub west_core_vertices: BTreeSet<usize>,
    pub west_core_edges: BTreeSet<usize>,
    pub west_core_faces: BTreeSet<usize>,
    pub east_core_vertices: BTreeSet<usize>,
    pub east_core_edges: BTreeSet<usize>,
    pub east_core_faces: BTreeSet<usize>,
    /// Dual edges of the meridian edges.
    pub we_dual_edges: BTreeSet<usize>,
    pub ew_dual_edges: BTreeSet<usize>,
    /// Dual faces of non-polar meridian sinks.
    pub we_dual_faces: BTreeSet<usize>,
    pub ew_dual_faces: BTreeSet<usize>,
    /// Single dual edges joining the polar circles, by direction.
    pub bridges_we: Vec<usize>,
    pub bridges_ew: Vec<usize>,
    /// Edge distance of the primal poles in the primal 1-skeleton.
    pub delta: usize,
    pub eta_west: usize,
    pub eta_east: usize,
}

/// Builds the dual and classifies polar faces, cores, meridian duals and
/// bridges.
pub fn dualize(t: &ThreeCellTemplate) -> Result<DualComplex, DualError> {
    let c = &t.complex;
    let dual = sphere_dual(c)?;
    let d = &t.data;
    let anchors = t
        .anchor_faces()
        .map_err(DualError::Complex)?;
    let dv = |f: usize| dual.vertex_idx(&c.faces[f].id).unwrap();
    let de = |e: usize| dual.edge_idx(&dual_edge_id(&c.edges[e].id)).unwrap();
    let df = |v: usize| dual.face_idx(&format!("{}*", c.vertex_ids[v])).unwrap();

    let meridian_edges = t.meridian_edges();
    let meridian_vertices = t.meridian_vertices();

    let mut west_core_vertices = BTreeSet::new();
    let mut east_core_vertices = BTreeSet::new();
    for f in 0..c.face_count() {
        if d.west.contains(&f) {
            west_core_vertices.insert(dv(f));
        } else {
            east_core_vertices.insert(dv(f));
        }
    }
    let mut west_core_edges = BTreeSet::new();
    let mut east_core_edges = BTreeSet::new();
    let mut we_dual_edges = BTreeSet::new();
    let mut ew_dual_edges = BTreeSet::new();
    for e in 0..c.edge_count() {
        if d.meridian_we.contains(&e) {
            we_dual_edges.insert(de(e));
        } else if d.meridian_ew.contains(&e) {
            ew_dual_edges.insert(de(e));
        } else {
            let l = c.left_face(e).unwrap();
            if d.west.contains(&l) {
                west_core_edges.insert(de(e));
            } else {
                east_core_edges.insert(de(e));
            }
        }
    }
    let mut west_core_faces = BTreeSet::new();
    let mut east_core_faces = BTreeSet::new();
    let mut we_dual_faces = BTreeSet::new();
    let mut ew_dual_faces = BTreeSet::new();
    let we_verts: BTreeSet<usize> = {
        let mut s = BTreeSet::new();
        for &e in &d.meridian_we {
            s.insert(c.edges[e].tail);
            s.insert(c.edges[e].head);
        }
        s
    };
    for v in 0..c.vertex_count() {
        if v == d.north || v == d.south {
            continue;
        }
        if meridian_vertices.contains(&v) {
            if we_verts.contains(&v) {
                we_dual_faces.insert(df(v));
            } else {
                ew_dual_faces.insert(df(v));
            }
        } else {
            // interior sink: west iff all incident faces are western
            let on_west = (0..c.edge_count()).any(|e| {
                (c.edges[e].tail == v || c.edges[e].head == v)
                    && !meridian_edges.contains(&e)
                    && d.west.contains(&c.left_face(e).unwrap())
            });
            if on_west {
                west_core_faces.insert(df(v));
            } else {
                east_core_faces.insert(df(v));
            }
        }
    }

    // bridges: meridian duals running from one core's South pole to the
    // other core's North pole
    let n_star = df(d.north);
    let s_star = df(d.south);
    let (w_minus_0, w_minus_1, w_plus_0, w_plus_1) = (
        dv(anchors.ne),
        dv(anchors.nw),
        dv(anchors.se),
        dv(anchors.sw),
    );
    let bridges_we: Vec<usize> = we_dual_edges
        .iter()
        .copied()
        .filter(|&e| dual.edges[e].tail == w_plus_1 && dual.edges[e].head == w_minus_0)
        .collect();
    let bridges_ew: Vec<usize> = ew_dual_edges
        .iter()
        .copied()
        .filter(|&e| dual.edges[e].tail == w_minus_1 && dual.edges[e].head == w_plus_0)
        .collect();

    // primal pole distance
    let delta = {
        let mut dist = vec![usize::MAX; c.vertex_count()];
        dist[d.north] = 0;
        let mut q = VecDeque::from([d.north]);
        while let Some(v) = q.pop_front() {
            for e in &c.edges {
                for (a, b2) in [(e.tail, e.head), (e.head, e.tail)] {
                    if a == v && dist[b2] == usize::MAX {
                        dist[b2] = dist[v] + 1;
                        q.push_back(b2);
                    }
                }
            }
        }
        dist[d.south]
    };

    Ok(DualComplex {
        dual,
        n_star,
        s_star,
        w_minus_0,
        w_minus_1,
        w_plus_0,
        w_plus_1,
        west_core_vertices,
        west_core_edges,
        west_core_faces,
        east_core_vertices,
        east_core_edges,
        east_core_faces,
        we_dual_edges,
        ew_dual_edges,
        we_dual_faces,
        ew_dual_faces,
        bridges_we,
        bridges_ew,
        delta,
        eta_west: d.west.len(),
        eta_east: d.east.len(),
    })
}

/// Outcome of the polar-anatomy battery on a dual complex.
#[derive(Clone, Debug)]
pub struct DualReport {
    pub clauses: BTreeMap<String, bool>,
    pub delta: usize,
    pub eta_west: usize,
    pub eta_east: usize,
    pub n_circle_len: usize,
    pub s_circle_len: usize,
    pub north_segment_len: Option<usize>,
    pub south_segment_len: Option<usize>,
}

impl DualReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.values().all(|&v| v)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|(_, &v)| !v)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Directed path from `from` to `to` along the boundary circuit of `face`,
/// using only forward edge uses; `None` when the walk leaves the circle or
/// runs against it.
fn circle_segment(
    dual: &CellComplex2,
    face: usize,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let circuit = &dual.faces[face].boundary;
    // the polar circles are directed cycles; walk edge directions regardless
    // of the circuit's own sense
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(e, _) in circuit {
        next.insert(dual.edges[e].tail, e);
    }
    let mut at = from;
    let mut path = Vec::new();
    for _ in 0..=circuit.len() {
        if at == to {
            return Some(path);
        }
        let &e = next.get(&at)?;
        path.push(e);
        at = dual.edges[e].head;
    }
    None
}

fn is_directed_cycle(dual: &CellComplex2, face: usize) -> Option<bool> {
    // returns the common sense of the boundary uses, if they agree
    let circuit = &dual.faces[face].boundary;
    let senses: BTreeSet<bool> = circuit.iter().map(|&(_, fwd)| fwd).collect();
    if senses.len() == 1 {
        Some(senses.into_iter().next().unwrap())
    } else {
        None
    }
}

/// Evaluates the characterization battery of a template dual: the
/// decomposition, polar-circle orientations and segments, meridian pre-dual
/// paths, bridges, plus the derived quantities (pole distance, core sizes,
/// the four-cycle, and segment-length bounds).
pub fn check_dual(t: &ThreeCellTemplate, dc: &DualComplex) -> DualReport {
    let dual = &dc.dual;
    let mut clauses = BTreeMap::new();

    // (i) the pieces partition the dual complex
    let mut vertex_cover: Vec<usize> = vec![0; dual.vertex_count()];
    for &v in dc.west_core_vertices.iter().chain(&dc.east_core_vertices) {
        vertex_cover[v] += 1;
    }
    let mut edge_cover = vec![0; dual.edge_count()];
    for &e in dc
        .west_core_edges
        .iter()
        .chain(&dc.east_core_edges)
        .chain(&dc.we_dual_edges)
        .chain(&dc.ew_dual_edges)
    {
        edge_cover[e] += 1;
    }
    let mut face_cover = vec![0; dual.face_count()];
    for &f in dc
        .west_core_faces
        .iter()
        .chain(&dc.east_core_faces)
        .chain(&dc.we_dual_faces)
        .chain(&dc.ew_dual_faces)
        .chain([dc.n_star, dc.s_star].iter())
    {
        face_cover[f] += 1;
    }
    clauses.insert(
        "i.decomposition".into(),
        vertex_cover.iter().all(|&k| k == 1)
            && edge_cover.iter().all(|&k| k == 1)
            && face_cover.iter().all(|&k| k == 1),
    );

    // (i)(b) cores are bipolar with the anchor duals as poles
    let core_ok = |vertices: &BTreeSet<usize>,
                   edges: &BTreeSet<usize>,
                   faces: &BTreeSet<usize>,
                   north: usize,
                   south: usize|
     -> bool {
        if vertices.len() == 1 {
            return edges.is_empty() && north == south;
        }
        let mut indeg: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        let mut outdeg = indeg.clone();
        for &e in edges {
            let (t_, h) = (dual.edges[e].tail, dual.edges[e].head);
            if !vertices.contains(&t_) || !vertices.contains(&h) {
                return false;
            }
            *outdeg.get_mut(&t_).unwrap() += 1;
            *indeg.get_mut(&h).unwrap() += 1;
        }
        let sources: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| indeg[v] == 0)
            .collect();
        let sinks: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| outdeg[v] == 0)
            .collect();
        // contractibility via the Euler count, with interior sinks as faces
        let euler = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
        sources == vec![north] && sinks == vec![south] && euler == 1
    };
    clauses.insert(
        "i.west_core_sturm".into(),
        core_ok(
            &dc.west_core_vertices,
            &dc.west_core_edges,
            &dc.west_core_faces,
            dc.w_minus_0,
            dc.w_minus_1,
        ),
    );
    clauses.insert(
        "i.east_core_sturm".into(),
        core_ok(
            &dc.east_core_vertices,
            &dc.east_core_edges,
            &dc.east_core_faces,
            dc.w_plus_0,
            dc.w_plus_1,
        ),
    );

    // (ii) polar circles are directed cycles of opposite senses, with
    // disjoint directed polar segments
    let n_cycle = is_directed_cycle(dual, dc.n_star);
    let s_cycle = is_directed_cycle(dual, dc.s_star);
    clauses.insert(
        "ii.polar_circle_orientations".into(),
        matches!((n_cycle, s_cycle), (Some(a), Some(b)) if a != b),
    );
    let north_segment = circle_segment(dual, dc.n_star, dc.w_minus_0, dc.w_minus_1);
    let south_segment = circle_segment(dual, dc.s_star, dc.w_plus_0, dc.w_plus_1);
    let segments_disjoint = match (&north_segment, &south_segment) {
        (Some(a), Some(b)) => {
            let sa: BTreeSet<usize> = a.iter().copied().collect();
            b.iter().all(|e| !sa.contains(e))
        }
        _ => false,
    };
    clauses.insert(
        "ii.polar_segments".into(),
        north_segment.is_some() && south_segment.is_some() && segments_disjoint,
    );

    // (iii) pre-duals of the meridian dual edges recover the meridian paths
    let c = &t.complex;
    let pre_we: BTreeSet<usize> = t.data.meridian_we.iter().copied().collect();
    let we_predual: BTreeSet<usize> = dc
        .we_dual_edges
        .iter()
        .map(|&de_idx| {
            let id = dual.edges[de_idx].id.trim_end_matches('*');
            c.edge_idx(id).unwrap()
        })
        .collect();
    let pre_ew: BTreeSet<usize> = t.data.meridian_ew.iter().copied().collect();
    let ew_predual: BTreeSet<usize> = dc
        .ew_dual_edges
        .iter()
        .map(|&de_idx| {
            let id = dual.edges[de_idx].id.trim_end_matches('*');
            c.edge_idx(id).unwrap()
        })
        .collect();
    clauses.insert(
        "iii.meridian_preduals".into(),
        we_predual == pre_we && ew_predual == pre_ew,
    );

    // (iv) at least one single-edge bridge in each direction
    let we_bridge_ok = !dc.bridges_we.is_empty();
    let ew_bridge_ok = !dc.bridges_ew.is_empty();
    clauses.insert("iv.bridges".into(), we_bridge_ok && ew_bridge_ok);

    // corollary quantities
    clauses.insert("cor.delta_positive".into(), dc.delta >= 1);
    let n_len = dual.faces[dc.n_star].boundary.len();
    let s_len = dual.faces[dc.s_star].boundary.len();
    let (nseg_len, sseg_len) = (
        north_segment.as_ref().map(|p| p.len()),
        south_segment.as_ref().map(|p| p.len()),
    );
    clauses.insert(
        "cor.segment_bounds".into(),
        matches!((nseg_len, sseg_len), (Some(a), Some(b)) if a + 2 <= n_len && b + 2 <= s_len),
    );
    // the directed four-cycle through the segments and bridges
    clauses.insert(
        "cor.four_cycle".into(),
        north_segment.is_some() && south_segment.is_some() && we_bridge_ok && ew_bridge_ok,
    );
    // circles share an edge iff the poles are adjacent
    let n_edges: BTreeSet<usize> = dual.faces[dc.n_star].boundary.iter().map(|&(e, _)| e).collect();
    let s_edges: BTreeSet<usize> = dual.faces[dc.s_star].boundary.iter().map(|&(e, _)| e).collect();
    let share = n_edges.intersection(&s_edges).count() > 0;
    clauses.insert("cor.shared_edge_iff_adjacent".into(), share == (dc.delta == 1));
    // singleton cores pin the coinciding poles
    clauses.insert(
        "cor.singleton_west".into(),
        (dc.w_minus_0 == dc.w_minus_1) == (dc.west_core_vertices.len() == 1),
    );
    clauses.insert(
        "cor.singleton_east".into(),
        (dc.w_plus_0 == dc.w_plus_1) == (dc.east_core_vertices.len() == 1),
    );

    DualReport {
        clauses,
        delta: dc.delta,
        eta_west: dc.eta_west,
        eta_east: dc.eta_east,
        n_circle_len: n_len,
        s_circle_len: s_len,
        north_segment_len: nseg_len,
        south_segment_len: sseg_len,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::skeleta_isomorphic;
    use crate::generators::{parallel_sphere, PathSpec};

    #[test]
    fn dual_of_the_golden_template_passes_the_battery() {
        let t = parallel_sphere(
            &[PathSpec::plain(1), PathSpec::plain(1), PathSpec::plain(1)],
            1,
        )
        .unwrap();
        let dc = dualize(&t).unwrap();
        let report = check_dual(&t, &dc);
        assert!(report.all_pass(), "failures: {:?}", report.failures());
        assert_eq!(report.delta, 1);
        assert_eq!(report.eta_west, 1);
        assert_eq!(report.eta_east, 2);
    }

    #[test]
    fn dual_swaps_cell_counts() {
        let t = parallel_sphere(
            &[PathSpec::plain(2), PathSpec::plain(1), PathSpec::plain(1)],
            1,
        )
        .unwrap();
        let d = sphere_dual(&t.complex).unwrap();
        assert_eq!(d.vertex_count(), t.complex.face_count());
        assert_eq!(d.edge_count(), t.complex.edge_count());
        assert_eq!(d.face_count(), t.complex.vertex_count());
        // double dual restores the original skeleton
        let dd = sphere_dual(&d).unwrap();
        assert!(skeleta_isomorphic(&dd, &t.complex));
    }
}
