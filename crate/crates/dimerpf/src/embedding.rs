//! Planar graphs as rotation systems, with exact rational coordinates.
//!
//! A graph is stored as vertices (optionally positioned), weighted edges and
//! a rotation system: the counterclockwise cyclic order of neighbors around
//! each vertex.  Faces are traced with the standard rule: after traversing
//! the directed side `(u, v)`, the walk continues along `(v, w)` where `w`
//! is the *clockwise* successor of `u` in the rotation at `v`.  With that
//! rule every bounded face is traced counterclockwise and the unbounded face
//! clockwise, and the face of side `(u, v)` lies to the left of the segment
//! `u -> v`.
//!
//! Disconnected graphs are supported through a *plane face* layer: the
//! unbounded trace face of a nested component is merged with the bounded
//! face of the surrounding component that geometrically hosts it, so queries
//! such as "which vertices does this circuit enclose" see the true plane
//! regions.  Recovering the hosting face requires coordinates, which is why
//! rotation-only construction accepts connected graphs only.

use crate::error::{Error, Result};
use crate::scalar::Rational;
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type VertexId = u32;
/// Unordered edge, stored as `(min, max)`.
pub type EdgeKey = (VertexId, VertexId);
pub type Point = (Rational, Rational);

/// Normalize an unordered vertex pair into an [`EdgeKey`].
pub fn edge_key(u: VertexId, v: VertexId) -> EdgeKey {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Sentinel plane-face id for the unbounded region.
pub const OUTER_PLANE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub pos: Option<Point>,
    /// Monomer weight of the vertex.
    pub monomer: Rational,
    /// Fugacity-exempt vertices contribute their monomer weight without a
    /// factor of the monomer fugacity (used by parity padding).
    pub fugacity_exempt: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    /// Dimer weight of the edge.
    pub dimer: Rational,
}

/// One traced face: the cyclic sequence of directed sides visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub sides: Vec<(VertexId, VertexId)>,
}

impl Face {
    /// Vertex sequence of the walk (tail of each side).
    pub fn walk(&self) -> Vec<VertexId> {
        self.sides.iter().map(|&(u, _)| u).collect()
    }
}

#[derive(Debug, Clone)]
pub struct PlanarGraph {
    vertices: BTreeMap<VertexId, VertexData>,
    edges: BTreeMap<EdgeKey, EdgeData>,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    faces: Vec<Face>,
    side_face: BTreeMap<(VertexId, VertexId), usize>,
    /// Traced face index -> plane face id (own index for bounded faces,
    /// host face index or [`OUTER_PLANE`] for unbounded trace faces).
    plane: Vec<usize>,
    /// Host plane face of each isolated (degree-zero) vertex.
    isolated_host: BTreeMap<VertexId, usize>,
    components: Vec<BTreeSet<VertexId>>,
    /// Per component: its unbounded trace face (None for isolated vertices).
    component_outer_trace: Vec<Option<usize>>,
}

// ---------------------------------------------------------------------------
// exact geometric predicates
// ---------------------------------------------------------------------------

fn sub(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &Point, b: &Point) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Sign of the signed area of the triangle `a, b, c`.
fn orient_sign(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = cross(&sub(b, a), &sub(c, a));
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// `true` when `p` lies strictly inside the open segment `a..b`.
fn strictly_between(a: &Point, b: &Point, p: &Point) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    let d = sub(b, a);
    let t = sub(p, a);
    // projection parameter in (0, 1) <=> 0 < t.d < d.d
    let dot = &t.0 * &d.0 + &t.1 * &d.1;
    let len2 = &d.0 * &d.0 + &d.1 * &d.1;
    dot.is_positive() && dot < len2
}

/// `true` when the closed segments properly cross (intersection point in the
/// interior of both).  Contacts at endpoints are handled separately.
fn segments_properly_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Total order on nonzero directions, counterclockwise from the positive
/// x-axis.
fn angle_order(d1: &Point, d2: &Point) -> std::cmp::Ordering {
    fn half(d: &Point) -> u8 {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
            0
        } else {
            1
        }
    }
    let (h1, h2) = (half(d1), half(d2));
    if h1 != h2 {
        return h1.cmp(&h2);
    }
    let c = cross(d1, d2);
    if c.is_positive() {
        std::cmp::Ordering::Less
    } else if c.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

impl PlanarGraph {
    /// Build a graph from straight-line coordinates.  Edges must not cross
    /// or overlap anywhere except shared endpoints; rotations are computed
    /// from the exact angular order of neighbors.
    pub fn from_coordinates(
        vertices: &[(VertexId, Point, Rational)],
        edges: &[(VertexId, VertexId, Rational)],
    ) -> Result<Self> {
        let mut vmap: BTreeMap<VertexId, VertexData> = BTreeMap::new();
        for (id, pos, monomer) in vertices {
            let prev = vmap.insert(
                *id,
                VertexData {
                    pos: Some(pos.clone()),
                    monomer: monomer.clone(),
                    fugacity_exempt: false,
                },
            );
            if prev.is_some() {
                return Err(Error::InvalidInput(format!("vertex id {id} listed twice")));
            }
        }
        // distinct positions
        {
            let mut seen: BTreeMap<(String, String), VertexId> = BTreeMap::new();
            for (id, d) in &vmap {
                let p = d.pos.as_ref().unwrap();
                let key = (p.0.to_string(), p.1.to_string());
                if let Some(other) = seen.insert(key, *id) {
                    return Err(Error::CrossingEdges(format!(
                        "vertices {other} and {id} occupy the same point"
                    )));
                }
            }
        }
        let mut emap: BTreeMap<EdgeKey, EdgeData> = BTreeMap::new();
        for (u, v, dimer) in edges {
            if u == v {
                return Err(Error::SelfLoop(*u));
            }
            for w in [u, v] {
                if !vmap.contains_key(w) {
                    return Err(Error::UnknownVertex(*w));
                }
            }
            let key = edge_key(*u, *v);
            if emap
                .insert(
                    key,
                    EdgeData {
                        dimer: dimer.clone(),
                    },
                )
                .is_some()
            {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
        }
        let pos = |v: VertexId| vmap[&v].pos.clone().unwrap();
        // no vertex in the interior of an edge
        for (&(a, b), _) in &emap {
            let (pa, pb) = (pos(a), pos(b));
            for (&w, wd) in &vmap {
                if w != a && w != b && strictly_between(&pa, &pb, wd.pos.as_ref().unwrap()) {
                    return Err(Error::CrossingEdges(format!(
                        "vertex {w} lies on edge {{{a}, {b}}}"
                    )));
                }
            }
        }
        // no proper crossings between edges with four distinct endpoints
        let keys: Vec<EdgeKey> = emap.keys().copied().collect();
        for (i, &(a, b)) in keys.iter().enumerate() {
            for &(c, d) in &keys[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if segments_properly_cross(&pos(a), &pos(b), &pos(c), &pos(d)) {
                    return Err(Error::CrossingEdges(format!(
                        "edges {{{a}, {b}}} and {{{c}, {d}}} cross"
                    )));
                }
            }
        }
        // rotations by exact angle
        let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &v in vmap.keys() {
            rotation.insert(v, Vec::new());
        }
        for &(u, v) in emap.keys() {
            rotation.get_mut(&u).unwrap().push(v);
            rotation.get_mut(&v).unwrap().push(u);
        }
        for (&v, neigh) in rotation.iter_mut() {
            let pv = vmap[&v].pos.clone().unwrap();
            neigh.sort_by(|&a, &b| {
                let da = sub(vmap[&a].pos.as_ref().unwrap(), &pv);
                let db = sub(vmap[&b].pos.as_ref().unwrap(), &pv);
                angle_order(&da, &db)
            });
        }
        let mut g = PlanarGraph {
            vertices: vmap,
            edges: emap,
            rotation,
            faces: Vec::new(),
            side_face: BTreeMap::new(),
            plane: Vec::new(),
            isolated_host: BTreeMap::new(),
            components: Vec::new(),
            component_outer_trace: Vec::new(),
        };
        g.trace_and_assign_with_coordinates()?;
        Ok(g)
    }

    /// Build a graph from an explicit rotation system.  The graph must be
    /// connected (nesting of separate components cannot be recovered without
    /// coordinates); `outer_side` picks the unbounded face as the trace face
    /// containing that directed side, and may be omitted only for edgeless
    /// graphs.
    pub fn from_parts(
        vertices: &[(VertexId, Rational)],
        edges: &[(VertexId, VertexId, Rational)],
        rotation: &BTreeMap<VertexId, Vec<VertexId>>,
        outer_side: Option<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vmap: BTreeMap<VertexId, VertexData> = BTreeMap::new();
        for (id, monomer) in vertices {
            let prev = vmap.insert(
                *id,
                VertexData {
                    pos: None,
                    monomer: monomer.clone(),
                    fugacity_exempt: false,
                },
            );
            if prev.is_some() {
                return Err(Error::InvalidInput(format!("vertex id {id} listed twice")));
            }
        }
        let mut emap: BTreeMap<EdgeKey, EdgeData> = BTreeMap::new();
        for (u, v, dimer) in edges {
            if u == v {
                return Err(Error::SelfLoop(*u));
            }
            for w in [u, v] {
                if !vmap.contains_key(w) {
                    return Err(Error::UnknownVertex(*w));
                }
            }
            if emap
                .insert(
                    edge_key(*u, *v),
                    EdgeData {
                        dimer: dimer.clone(),
                    },
                )
                .is_some()
            {
                let k = edge_key(*u, *v);
                return Err(Error::DuplicateEdge(k.0, k.1));
            }
        }
        // validate the rotation lists against the edge set
        for (&v, neigh) in rotation {
            if !vmap.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
            let mut expected: BTreeSet<VertexId> = BTreeSet::new();
            for &(a, b) in emap.keys() {
                if a == v {
                    expected.insert(b);
                } else if b == v {
                    expected.insert(a);
                }
            }
            let got: BTreeSet<VertexId> = neigh.iter().copied().collect();
            if got.len() != neigh.len() || got != expected {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} does not list each neighbor exactly once"
                )));
            }
        }
        for &v in vmap.keys() {
            if !rotation.contains_key(&v) {
                return Err(Error::InvalidRotation(format!("no rotation for vertex {v}")));
            }
        }
        let mut g = PlanarGraph {
            vertices: vmap,
            edges: emap,
            rotation: rotation.clone(),
            faces: Vec::new(),
            side_face: BTreeMap::new(),
            plane: Vec::new(),
            isolated_host: BTreeMap::new(),
            components: Vec::new(),
            component_outer_trace: Vec::new(),
        };
        g.compute_components();
        if g.components.len() > 1 {
            return Err(Error::InvalidRotation(
                "disconnected graphs require coordinates".into(),
            ));
        }
        g.trace_faces();
        // Euler check: V - E + F = 2 for a connected rotation system with at
        // least one edge describing a sphere embedding.
        if !g.edges.is_empty() {
            let euler =
                g.vertices.len() as i64 - g.edges.len() as i64 + g.faces.len() as i64;
            if euler != 2 {
                return Err(Error::InvalidRotation(format!(
                    "V - E + F = {euler}, expected 2: not a planar rotation system"
                )));
            }
        }
        // plane assignment: chosen outer face, everything else bounded
        let outer_face = match (outer_side, g.edges.is_empty()) {
            (_, true) => None,
            (None, false) => {
                return Err(Error::InvalidRotation(
                    "an outer side must be chosen for graphs with edges".into(),
                ))
            }
            (Some((u, v)), false) => match g.side_face.get(&(u, v)) {
                Some(&f) => Some(f),
                None => {
                    return Err(Error::InvalidRotation(format!(
                        "outer side ({u}, {v}) is not a directed side of the graph"
                    )))
                }
            },
        };
        g.plane = (0..g.faces.len()).collect();
        if let Some(f) = outer_face {
            g.plane[f] = OUTER_PLANE;
        }
        g.component_outer_trace = vec![outer_face];
        for &v in g.vertices.keys() {
            if g.rotation[&v].is_empty() {
                g.isolated_host.insert(v, OUTER_PLANE);
            }
        }
        Ok(g)
    }

    /// The graph after deleting a set of edges, preserving weights, fugacity
    /// exemptions and the embedding.
    pub fn remove_edges(&self, drop: &BTreeSet<EdgeKey>) -> Result<Self> {
        for &(u, v) in drop {
            if !self.has_edge(u, v) {
                return Err(Error::InvalidInput(format!(
                    "cannot remove missing edge {{{u}, {v}}}"
                )));
            }
        }
        self.rebuild_without(&BTreeSet::new(), drop)
    }

    /// The graph after deleting a set of vertices together with all their
    /// incident edges.
    pub fn remove_vertices(&self, drop: &BTreeSet<VertexId>) -> Result<Self> {
        for &v in drop {
            if !self.vertices.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let dead_edges = self
            .edges
            .keys()
            .copied()
            .filter(|&(u, v)| drop.contains(&u) || drop.contains(&v))
            .collect();
        self.rebuild_without(drop, &dead_edges)
    }

    /// Rebuild the graph with the given vertices and edges deleted.  With
    /// coordinates the plane drawing is reused; otherwise the rotation lists
    /// are filtered and the unbounded face is carried over through a side of
    /// the old outer walk that survives the deletion.
    fn rebuild_without(
        &self,
        dead_vertices: &BTreeSet<VertexId>,
        dead_edges: &BTreeSet<EdgeKey>,
    ) -> Result<Self> {
        let edges: Vec<(VertexId, VertexId, Rational)> = self
            .edges
            .iter()
            .filter(|(k, _)| !dead_edges.contains(k))
            .map(|(&(u, v), d)| (u, v, d.dimer.clone()))
            .collect();
        let mut out = if self.has_coordinates() {
            let verts: Vec<(VertexId, Point, Rational)> = self
                .vertices
                .iter()
                .filter(|(v, _)| !dead_vertices.contains(v))
                .map(|(&v, d)| (v, d.pos.clone().unwrap(), d.monomer.clone()))
                .collect();
            Self::from_coordinates(&verts, &edges)?
        } else {
            let verts: Vec<(VertexId, Rational)> = self
                .vertices
                .iter()
                .filter(|(v, _)| !dead_vertices.contains(v))
                .map(|(&v, d)| (v, d.monomer.clone()))
                .collect();
            let rotation: BTreeMap<VertexId, Vec<VertexId>> = self
                .rotation
                .iter()
                .filter(|(v, _)| !dead_vertices.contains(v))
                .map(|(&v, neigh)| {
                    let kept: Vec<VertexId> = neigh
                        .iter()
                        .copied()
                        .filter(|&n| {
                            !dead_vertices.contains(&n)
                                && !dead_edges.contains(&edge_key(v, n))
                        })
                        .collect();
                    (v, kept)
                })
                .collect();
            let outer_side = if edges.is_empty() {
                None
            } else {
                let walk = self.outer_walk()?;
                let n = walk.len();
                let side = (0..n)
                    .map(|i| (walk[i], walk[(i + 1) % n]))
                    .find(|&(u, v)| {
                        !dead_vertices.contains(&u)
                            && !dead_vertices.contains(&v)
                            && !dead_edges.contains(&edge_key(u, v))
                    });
                match side {
                    Some(s) => Some(s),
                    None => {
                        return Err(Error::InvalidInput(
                            "deletion removed every side of the outer walk; \
                             coordinates are needed to resolve the embedding"
                                .into(),
                        ))
                    }
                }
            };
            Self::from_parts(&verts, &edges, &rotation, outer_side)?
        };
        for (&v, d) in &self.vertices {
            if d.fugacity_exempt && !dead_vertices.contains(&v) {
                out.set_fugacity_exempt(v);
            }
        }
        Ok(out)
    }

    fn compute_components(&mut self) {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut comps = Vec::new();
        for &v in self.vertices.keys() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(w) = queue.pop_front() {
                comp.insert(w);
                for &n in &self.rotation[&w] {
                    if seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            comps.push(comp);
        }
        self.components = comps;
    }

    fn trace_faces(&mut self) {
        self.faces.clear();
        self.side_face.clear();
        let mut pending: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for &(u, v) in self.edges.keys() {
            pending.insert((u, v));
            pending.insert((v, u));
        }
        while let Some(&start) = pending.iter().next() {
            let mut sides = Vec::new();
            let mut cur = start;
            loop {
                pending.remove(&cur);
                sides.push(cur);
                let (u, v) = cur;
                let rot = &self.rotation[&v];
                let idx = rot.iter().position(|&n| n == u).expect("side endpoint");
                // clockwise successor of u in the rotation at v
                let w = rot[(idx + rot.len() - 1) % rot.len()];
                cur = (v, w);
                if cur == start {
                    break;
                }
            }
            let fidx = self.faces.len();
            for &s in &sides {
                self.side_face.insert(s, fidx);
            }
            self.faces.push(Face { sides });
        }
    }

    /// Trace faces and assign plane ids using coordinates: identify each
    /// component's unbounded trace face by the bottom-left rule, then merge
    /// it into the bounded face (of another component) hosting the
    /// component, or into the outer plane.
    fn trace_and_assign_with_coordinates(&mut self) -> Result<()> {
        self.compute_components();
        self.trace_faces();
        // Euler check per component: V - E + F = 2, faces counted per
        // component (every traced face belongs to exactly one component).
        {
            let mut comp_of_vertex: BTreeMap<VertexId, usize> = BTreeMap::new();
            for (ci, comp) in self.components.iter().enumerate() {
                for &v in comp {
                    comp_of_vertex.insert(v, ci);
                }
            }
            let mut faces_per_comp = vec![0i64; self.components.len()];
            for f in &self.faces {
                let ci = comp_of_vertex[&f.sides[0].0];
                faces_per_comp[ci] += 1;
            }
            for (ci, comp) in self.components.iter().enumerate() {
                let e = self
                    .edges
                    .keys()
                    .filter(|&&(a, _)| comp.contains(&a))
                    .count() as i64;
                if e == 0 {
                    continue;
                }
                let euler = comp.len() as i64 - e + faces_per_comp[ci];
                debug_assert_eq!(euler, 2, "straight-line embedding must satisfy Euler");
                if euler != 2 {
                    return Err(Error::InvalidRotation(format!(
                        "component {ci}: V - E + F = {euler}"
                    )));
                }
            }
        }
        // find each component's unbounded trace face
        let mut outer_traces: Vec<Option<usize>> = Vec::new();
        for comp in &self.components {
            let with_edges: Vec<VertexId> = comp
                .iter()
                .copied()
                .filter(|v| !self.rotation[v].is_empty())
                .collect();
            if with_edges.is_empty() {
                outer_traces.push(None);
                continue;
            }
            // bottom-left vertex of the component
            let v0 = *with_edges
                .iter()
                .min_by(|a, b| {
                    let pa = self.vertices[a].pos.as_ref().unwrap();
                    let pb = self.vertices[b].pos.as_ref().unwrap();
                    (&pa.1, &pa.0).cmp(&(&pb.1, &pb.0))
                })
                .unwrap();
            let p0 = self.vertices[&v0].pos.clone().unwrap();
            // neighbor with the largest angle; all directions lie in the
            // closed upper half plane with the west ray excluded
            let u_max = self.rotation[&v0]
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    let da = sub(self.vertices[&a].pos.as_ref().unwrap(), &p0);
                    let db = sub(self.vertices[&b].pos.as_ref().unwrap(), &p0);
                    angle_order(&da, &db)
                })
                .unwrap();
            outer_traces.push(Some(self.side_face[&(v0, u_max)]));
        }
        self.component_outer_trace = outer_traces.clone();
        // plane ids: bounded faces own themselves; unbounded traces merge
        // into their geometric host
        self.plane = (0..self.faces.len()).collect();
        let bounded: Vec<usize> = (0..self.faces.len())
            .filter(|f| !outer_traces.contains(&Some(*f)))
            .collect();
        for (ci, comp) in self.components.iter().enumerate() {
            // representative point of the component
            let v0 = *comp.iter().next().unwrap();
            let p = self.vertices[&v0].pos.clone().unwrap();
            let host = self.innermost_containing_face(&p, &bounded, comp)?;
            match outer_traces[ci] {
                Some(f) => self.plane[f] = host,
                None => {
                    self.isolated_host.insert(v0, host);
                }
            }
        }
        Ok(())
    }

    /// Among `candidates` (bounded trace faces not belonging to `exclude`),
    /// the smallest-area face strictly containing `p`, or [`OUTER_PLANE`].
    fn innermost_containing_face(
        &self,
        p: &Point,
        candidates: &[usize],
        exclude: &BTreeSet<VertexId>,
    ) -> Result<usize> {
        let mut best: Option<(Rational, usize)> = None;
        for &f in candidates {
            if exclude.contains(&self.faces[f].sides[0].0) {
                continue;
            }
            if self.face_contains_point(f, p) {
                let area = self.face_area_twice_abs(f);
                match &best {
                    Some((a, _)) if *a <= area => {}
                    _ => best = Some((area, f)),
                }
            }
        }
        Ok(best.map_or(OUTER_PLANE, |(_, f)| f))
    }

    /// Crossing-parity point-in-region test against a traced face walk.
    /// The point must not lie on the walk itself.
    fn face_contains_point(&self, face: usize, p: &Point) -> bool {
        let mut crossings = 0u32;
        for &(a, b) in &self.faces[face].sides {
            let pa = self.vertices[&a].pos.as_ref().unwrap();
            let pb = self.vertices[&b].pos.as_ref().unwrap();
            let (y1, y2) = (&pa.1, &pb.1);
            if (y1 > &p.1) == (y2 > &p.1) {
                continue;
            }
            // x coordinate where the segment meets the horizontal through p
            let t = (&p.1 - y1) / (y2 - y1);
            let x = &pa.0 + t * (&pb.0 - &pa.0);
            if x > p.0 {
                crossings += 1;
            }
        }
        crossings % 2 == 1
    }

    /// Twice the absolute enclosed area of a traced face walk.
    fn face_area_twice_abs(&self, face: usize) -> Rational {
        let mut acc = Rational::zero();
        for &(a, b) in &self.faces[face].sides {
            let pa = self.vertices[&a].pos.as_ref().unwrap();
            let pb = self.vertices[&b].pos.as_ref().unwrap();
            acc += cross(pa, pb);
        }
        acc.abs()
    }

    // -----------------------------------------------------------------------
    // accessors
    // -----------------------------------------------------------------------

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertex(&self, v: VertexId) -> Result<&VertexData> {
        self.vertices.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn monomer_weight(&self, v: VertexId) -> Rational {
        self.vertices[&v].monomer.clone()
    }

    pub fn set_monomer_weight(&mut self, v: VertexId, w: Rational) -> Result<()> {
        self.vertices
            .get_mut(&v)
            .ok_or(Error::UnknownVertex(v))?
            .monomer = w;
        Ok(())
    }

    pub fn is_fugacity_exempt(&self, v: VertexId) -> bool {
        self.vertices[&v].fugacity_exempt
    }

    pub(crate) fn set_fugacity_exempt(&mut self, v: VertexId) {
        self.vertices.get_mut(&v).unwrap().fugacity_exempt = true;
    }

    pub fn position(&self, v: VertexId) -> Option<Point> {
        self.vertices.get(&v).and_then(|d| d.pos.clone())
    }

    pub fn has_coordinates(&self) -> bool {
        self.vertices.values().all(|d| d.pos.is_some())
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        self.edges.keys().copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains_key(&edge_key(u, v))
    }

    pub fn dimer_weight(&self, u: VertexId, v: VertexId) -> Rational {
        self.edges[&edge_key(u, v)].dimer.clone()
    }

    pub fn set_dimer_weight(&mut self, u: VertexId, v: VertexId, w: Rational) -> Result<()> {
        self.edges
            .get_mut(&edge_key(u, v))
            .ok_or_else(|| Error::InvalidInput(format!("no edge {{{u}, {v}}}")))?
            .dimer = w;
        Ok(())
    }

    /// Neighbors of `v` in counterclockwise rotation order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[&v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[&v].len()
    }

    pub fn rotation_system(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn components(&self) -> &[BTreeSet<VertexId>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Plane face id of the traced face containing the directed side.
    pub fn side_plane(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.side_face
            .get(&(u, v))
            .map(|&f| self.plane[f])
            .ok_or_else(|| Error::InvalidInput(format!("({u}, {v}) is not a side")))
    }

    /// Traced face index containing the directed side.
    pub fn side_trace_face(&self, u: VertexId, v: VertexId) -> Result<usize> {
        self.side_face
            .get(&(u, v))
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("({u}, {v}) is not a side")))
    }

    pub fn plane_of_face(&self, face: usize) -> usize {
        self.plane[face]
    }

    /// All plane face ids of the graph, outer excluded.
    pub fn bounded_plane_ids(&self) -> BTreeSet<usize> {
        (0..self.faces.len())
            .filter(|&f| self.plane[f] == f)
            .collect()
    }

    /// The unbounded trace face of a connected graph with edges.
    pub fn outer_trace_face(&self) -> Result<usize> {
        if self.components.len() != 1 {
            return Err(Error::InvalidInput(
                "outer walk of a disconnected graph is ambiguous".into(),
            ));
        }
        self.component_outer_trace[0]
            .ok_or_else(|| Error::InvalidInput("graph has no edges".into()))
    }

    /// Outer trace face of component `ci`, if it has edges.
    pub fn component_outer_trace(&self, ci: usize) -> Option<usize> {
        self.component_outer_trace[ci]
    }

    /// Host plane face of an isolated vertex.
    pub fn isolated_host(&self, v: VertexId) -> Option<usize> {
        self.isolated_host.get(&v).copied()
    }

    // -----------------------------------------------------------------------
    // boundary queries
    // -----------------------------------------------------------------------

    /// Vertices and edges incident to the unbounded plane region.
    pub fn boundary_subgraph(&self) -> (BTreeSet<VertexId>, BTreeSet<EdgeKey>) {
        let mut verts = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for (f, face) in self.faces.iter().enumerate() {
            if self.plane[f] != OUTER_PLANE {
                continue;
            }
            for &(u, v) in &face.sides {
                verts.insert(u);
                verts.insert(v);
                edges.insert(edge_key(u, v));
            }
        }
        for (&v, &host) in &self.isolated_host {
            if host == OUTER_PLANE {
                verts.insert(v);
            }
        }
        (verts, edges)
    }

    /// The outer face walk of a connected graph, as a vertex sequence
    /// starting from the smallest boundary vertex (trace order, which runs
    /// clockwise around the graph).
    pub fn outer_walk(&self) -> Result<Vec<VertexId>> {
        let f = self.outer_trace_face()?;
        let walk = self.faces[f].walk();
        let start = walk
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
            .unwrap();
        Ok(walk[start..].iter().chain(&walk[..start]).copied().collect())
    }

    // -----------------------------------------------------------------------
    // plane face adjacency and circuit enclosure
    // -----------------------------------------------------------------------

    /// For every edge, the plane faces on its two sides.
    fn edge_plane_sides(&self) -> BTreeMap<EdgeKey, (usize, usize)> {
        let mut out = BTreeMap::new();
        for &(u, v) in self.edges.keys() {
            let p1 = self.plane[self.side_face[&(u, v)]];
            let p2 = self.plane[self.side_face[&(v, u)]];
            out.insert((u, v), (p1, p2));
        }
        out
    }

    /// Plane faces reachable from the outer plane without crossing any edge
    /// in `blocked`.
    pub fn planes_outside(&self, blocked: &BTreeSet<EdgeKey>) -> BTreeSet<usize> {
        let sides = self.edge_plane_sides();
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (e, &(p1, p2)) in &sides {
            if blocked.contains(e) {
                continue;
            }
            adj.entry(p1).or_default().insert(p2);
            adj.entry(p2).or_default().insert(p1);
        }
        let mut seen = BTreeSet::from([OUTER_PLANE]);
        let mut queue = VecDeque::from([OUTER_PLANE]);
        while let Some(p) = queue.pop_front() {
            if let Some(next) = adj.get(&p) {
                for &q in next {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    /// All plane face ids (bounded ones plus the outer sentinel).
    pub fn all_plane_ids(&self) -> BTreeSet<usize> {
        let mut s = self.bounded_plane_ids();
        s.insert(OUTER_PLANE);
        s
    }
}

// ---------------------------------------------------------------------------
// circuits
// ---------------------------------------------------------------------------

/// A simple cycle of at least three vertices, stored in canonical form:
/// counterclockwise traversal starting from the smallest vertex id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    verts: Vec<VertexId>,
}

fn rotate_to_min(mut seq: Vec<VertexId>) -> Vec<VertexId> {
    let min_pos = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap();
    seq.rotate_left(min_pos);
    seq
}

impl Circuit {
    /// Validate that `seq` is a simple cycle of `g` and canonicalize it to
    /// counterclockwise orientation starting at its smallest vertex.
    pub fn new(g: &PlanarGraph, seq: &[VertexId]) -> Result<Circuit> {
        if seq.len() < 3 {
            return Err(Error::NotACircuit(format!(
                "length {} is below 3",
                seq.len()
            )));
        }
        let set: BTreeSet<VertexId> = seq.iter().copied().collect();
        if set.len() != seq.len() {
            return Err(Error::NotACircuit("repeated vertex".into()));
        }
        for i in 0..seq.len() {
            let (u, v) = (seq[i], seq[(i + 1) % seq.len()]);
            if !g.contains_vertex(u) {
                return Err(Error::UnknownVertex(u));
            }
            if !g.has_edge(u, v) {
                return Err(Error::NotACircuit(format!("missing edge {{{u}, {v}}}")));
            }
        }
        let mut c = Circuit {
            verts: rotate_to_min(seq.to_vec()),
        };
        if !c.is_ccw(g)? {
            c.verts[1..].reverse();
        }
        Ok(c)
    }

    /// Canonicalized sequence without graph validation (used by merging,
    /// where the inputs are already canonical circuits).
    fn from_sequence(seq: Vec<VertexId>) -> Circuit {
        Circuit {
            verts: rotate_to_min(seq),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.contains(&v)
    }

    /// Undirected edge set of the circuit.
    pub fn edge_set(&self) -> BTreeSet<EdgeKey> {
        (0..self.verts.len())
            .map(|i| edge_key(self.verts[i], self.verts[(i + 1) % self.verts.len()]))
            .collect()
    }

    /// Consecutive traversal pairs `(v_i, v_{i+1})`, wrapping around.
    pub fn traversal_pairs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.verts.len())
            .map(|i| (self.verts[i], self.verts[(i + 1) % self.verts.len()]))
            .collect()
    }

    /// Plane faces strictly inside the circuit.
    pub fn inside_planes(&self, g: &PlanarGraph) -> BTreeSet<usize> {
        let outside = g.planes_outside(&self.edge_set());
        g.all_plane_ids()
            .into_iter()
            .filter(|p| !outside.contains(p))
            .collect()
    }

    /// `true` when the stored traversal runs counterclockwise (faces to the
    /// left of each side are inside the circuit).
    fn is_ccw(&self, g: &PlanarGraph) -> Result<bool> {
        let outside = g.planes_outside(&self.edge_set());
        let mut left_in = 0usize;
        let mut left_out = 0usize;
        for (u, v) in self.traversal_pairs() {
            let p = g.side_plane(u, v)?;
            if outside.contains(&p) {
                left_out += 1;
            } else {
                left_in += 1;
            }
        }
        if left_in > 0 && left_out > 0 {
            return Err(Error::NotACircuit(
                "inconsistent sides: sequence is not a circuit of the embedding".into(),
            ));
        }
        Ok(left_in > 0)
    }

    /// Vertices strictly enclosed by the circuit: vertices off the circuit
    /// all of whose incident plane faces are inside (isolated vertices count
    /// through their host face).  Nested components inside the circuit are
    /// included.
    pub fn enclosed_vertices(&self, g: &PlanarGraph) -> BTreeSet<VertexId> {
        let inside = self.inside_planes(g);
        let mut out = BTreeSet::new();
        for v in g.vertex_ids() {
            if self.contains(v) {
                continue;
            }
            let enclosed = if g.degree(v) == 0 {
                g.isolated_host(v)
                    .map(|h| inside.contains(&h))
                    .unwrap_or(false)
            } else {
                g.neighbors(v).iter().all(|&n| {
                    let p = g.side_plane(v, n).expect("side of an edge");
                    inside.contains(&p)
                })
            };
            if enclosed {
                out.insert(v);
            }
        }
        out
    }
}

/// Number of vertices strictly enclosed by a circuit.
pub fn enclosed_vertex_count(g: &PlanarGraph, c: &Circuit) -> usize {
    c.enclosed_vertices(g).len()
}

// ---------------------------------------------------------------------------
// orientations and circuit goodness
// ---------------------------------------------------------------------------

/// A (partial) orientation: each directed edge stored as `(tail, head)`,
/// meaning `tail` dominates `head`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientation {
    directed: BTreeMap<EdgeKey, (VertexId, VertexId)>,
}

impl Orientation {
    pub fn new() -> Self {
        Orientation::default()
    }

    /// Direct the edge `{tail, head}` from `tail` to `head`.
    pub fn direct(&mut self, tail: VertexId, head: VertexId) {
        self.directed.insert(edge_key(tail, head), (tail, head));
    }

    pub fn is_directed(&self, u: VertexId, v: VertexId) -> bool {
        self.directed.contains_key(&edge_key(u, v))
    }

    /// The `(tail, head)` pair of a directed edge.
    pub fn direction(&self, u: VertexId, v: VertexId) -> Option<(VertexId, VertexId)> {
        self.directed.get(&edge_key(u, v)).copied()
    }

    /// `true` when the edge is directed from `tail` toward `head`.
    pub fn dominates(&self, tail: VertexId, head: VertexId) -> Result<bool> {
        match self.directed.get(&edge_key(tail, head)) {
            None => {
                let k = edge_key(tail, head);
                Err(Error::UndirectedEdgeInCircuit(k.0, k.1))
            }
            Some(&(t, _)) => Ok(t == tail),
        }
    }

    pub fn len(&self) -> usize {
        self.directed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directed.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.directed.values().copied()
    }
}

/// Count of backwards edges along the circuit traversal: the pair
/// `(v_i, v_{i+1})` is backwards when the edge is directed from `v_{i+1}`
/// to `v_i`.
pub fn backwards_edge_count(c: &Circuit, o: &Orientation) -> Result<usize> {
    let mut n = 0;
    for (u, v) in c.traversal_pairs() {
        if !o.dominates(u, v)? {
            n += 1;
        }
    }
    Ok(n)
}

/// A circuit is *good* when its backwards edges plus its enclosed
/// vertices are odd in total.  Circuits are stored counterclockwise, so
/// the backwards count is the one taken against counterclockwise
/// traversal.
pub fn circuit_is_good(g: &PlanarGraph, o: &Orientation, c: &Circuit) -> Result<bool> {
    let backwards = backwards_edge_count(c, o)?;
    let enclosed = enclosed_vertex_count(g, c);
    Ok((backwards + enclosed) % 2 == 1)
}

// ---------------------------------------------------------------------------
// merging circuits
// ---------------------------------------------------------------------------

/// Merge two circuits that share exactly one maximal string, traversed in
/// opposite directions.  The result walks around the union with the shared
/// string removed.
pub fn merge_circuits(c1: &Circuit, c2: &Circuit) -> Result<Circuit> {
    let e1 = c1.edge_set();
    let e2 = c2.edge_set();
    let shared: Vec<EdgeKey> = e1.intersection(&e2).copied().collect();
    if shared.is_empty() {
        return Err(Error::NotMergeable("no shared edges".into()));
    }
    let shared_set: BTreeSet<EdgeKey> = shared.iter().copied().collect();
    // The shared edges must be contiguous along c1.
    let n1 = c1.len();
    let flags: Vec<bool> = (0..n1)
        .map(|i| {
            shared_set.contains(&edge_key(
                c1.verts[i],
                c1.verts[(i + 1) % n1],
            ))
        })
        .collect();
    let runs = count_cyclic_runs(&flags);
    if runs != 1 {
        return Err(Error::NotMergeable(format!(
            "shared edges form {runs} strings along the first circuit"
        )));
    }
    // Rotate c1 so the shared string is a prefix v_1 .. v_{nu+1}.
    let start = (0..n1)
        .find(|&i| flags[i] && !flags[(i + n1 - 1) % n1])
        .ok_or_else(|| Error::NotMergeable("shared string covers the whole circuit".into()))?;
    let rot1: Vec<VertexId> = (0..n1).map(|k| c1.verts[(start + k) % n1]).collect();
    let nu = shared.len(); // number of shared edges
    let string: Vec<VertexId> = rot1[..=nu].to_vec();
    // The string must also be contiguous in c2 and reversed there.
    let n2 = c2.len();
    let flags2: Vec<bool> = (0..n2)
        .map(|i| {
            shared_set.contains(&edge_key(
                c2.verts[i],
                c2.verts[(i + 1) % n2],
            ))
        })
        .collect();
    if count_cyclic_runs(&flags2) != 1 {
        return Err(Error::NotMergeable(
            "shared edges are not contiguous along the second circuit".into(),
        ));
    }
    let start2 = (0..n2)
        .find(|&i| flags2[i] && !flags2[(i + n2 - 1) % n2])
        .ok_or_else(|| Error::NotMergeable("shared string covers the whole circuit".into()))?;
    let rot2: Vec<VertexId> = (0..n2).map(|k| c2.verts[(start2 + k) % n2]).collect();
    let string2: Vec<VertexId> = rot2[..=nu].to_vec();
    let mut reversed = string.clone();
    reversed.reverse();
    if string2 != reversed {
        return Err(Error::NotMergeable(
            "shared string is traversed in the same direction by both circuits".into(),
        ));
    }
    // result: (v_{nu+1}, a_1.., a_p, v_1, b_1.., b_q)
    let mut seq: Vec<VertexId> = Vec::with_capacity(n1 + n2 - 2 * nu);
    seq.push(rot1[nu]); // v_{nu+1}
    seq.extend_from_slice(&rot1[nu + 1..]); // a_1 .. a_p
    seq.push(rot1[0]); // v_1
    seq.extend_from_slice(&rot2[nu + 1..]); // b_1 .. b_q
    let set: BTreeSet<VertexId> = seq.iter().copied().collect();
    if set.len() != seq.len() {
        return Err(Error::NotMergeable(
            "circuits touch outside the shared string".into(),
        ));
    }
    if seq.len() < 3 {
        return Err(Error::NotMergeable("merged walk is shorter than 3".into()));
    }
    Ok(Circuit::from_sequence(seq))
}

/// Number of maximal runs of `true` in a cyclic boolean sequence.
fn count_cyclic_runs(flags: &[bool]) -> usize {
    let n = flags.len();
    if flags.iter().all(|&f| f) {
        return 1;
    }
    (0..n)
        .filter(|&i| flags[i] && !flags[(i + n - 1) % n])
        .count()
}

// ---------------------------------------------------------------------------
// cycle enumeration
// ---------------------------------------------------------------------------

/// Maximum vertex count for exhaustive cycle enumeration.
pub const MAX_CYCLE_ENUM_VERTICES: usize = 16;

/// Every simple cycle of the graph (length at least 3), as canonical
/// circuits in sorted order.
pub fn enumerate_simple_cycles(g: &PlanarGraph) -> Result<Vec<Circuit>> {
    if g.num_vertices() > MAX_CYCLE_ENUM_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the cycle enumeration cap {MAX_CYCLE_ENUM_VERTICES}",
            g.num_vertices()
        )));
    }
    let mut found: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let verts: Vec<VertexId> = g.vertex_ids().collect();
    for &root in &verts {
        // cycles whose smallest vertex is `root`
        let mut path = vec![root];
        let mut on_path: BTreeSet<VertexId> = BTreeSet::from([root]);
        dfs_cycles(g, root, root, &mut path, &mut on_path, &mut found);
    }
    let mut out = Vec::new();
    for seq in found {
        out.push(Circuit::new(g, &seq)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn dfs_cycles(
    g: &PlanarGraph,
    root: VertexId,
    cur: VertexId,
    path: &mut Vec<VertexId>,
    on_path: &mut BTreeSet<VertexId>,
    found: &mut BTreeSet<Vec<VertexId>>,
) {
    let mut neigh: Vec<VertexId> = g.neighbors(cur).to_vec();
    neigh.sort_unstable();
    for n in neigh {
        if n == root && path.len() >= 3 {
            // canonical undirected signature: min-first rotation, then the
            // lexicographically smaller of the two directions
            let a = rotate_to_min(path.clone());
            let mut rev = path.clone();
            rev.reverse();
            let b = rotate_to_min(rev);
            found.insert(a.min(b));
        }
        if n > root && !on_path.contains(&n) {
            path.push(n);
            on_path.insert(n);
            dfs_cycles(g, root, n, path, on_path, found);
            path.pop();
            on_path.remove(&n);
        }
    }
}
