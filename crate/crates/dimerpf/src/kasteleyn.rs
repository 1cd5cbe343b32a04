//! Kasteleyn orientations, boundary labelings, and the auxiliary ring graph.
//!
//! A circuit in a plane graph is *good* under an orientation when the
//! number of its edges directed against a counterclockwise traversal plus
//! the number of vertices it encloses is odd.  An orientation is a
//! *Kasteleyn orientation* when every circuit is good; then all signed
//! covering contributions share one sign and the partition function drops
//! out of a Pfaffian.
//!
//! [`orient_kasteleyn`] builds such an orientation region by region.  The
//! trace face bounding each region from outside must end with a number of
//! sides directed against its walk whose parity is opposite to the count
//! of vertices nested anywhere inside the region (detached components and
//! isolated vertices, however deep); summing these parities over the
//! interior of any circuit shows that they force every circuit good.  The
//! still undirected edges link constrained faces into a forest that
//! reserves a private edge for each face; assigning reserved edges
//! leaves-first satisfies every face or, when prescribed directions pin
//! down a face that comes out even, fails with
//! [`Error::BadPartialOrientation`].
//!
//! [`direct_and_label`] prepares an enclosed graph for the Pfaffian
//! formula: boundary vertices are labeled counterclockwise and directed
//! along the circuit, interior vertices follow in ascending order, and the
//! labeling is adjusted so every boundary covering carries positive sign.
//!
//! [`build_auxiliary`] surrounds the boundary with a ring of auxiliary
//! vertices so that boundary coverings of the base graph correspond
//! two-to-one to perfect matchings of the ring graph ([`lift_covering`],
//! [`project_covering`]), giving an independent route to the partition
//! function.

use crate::embedding::{
    circuit_is_good, edge_key, enumerate_simple_cycles, Circuit, EdgeKey, Orientation,
    PlanarGraph, VertexId, OUTER_PLANE,
};
use crate::error::{Error, Result};
use crate::oracle::Covering;
use crate::reduce::EnclosedGraph;
use crate::scalar::rat_i;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

// ---------------------------------------------------------------------------
// orientation construction
// ---------------------------------------------------------------------------

/// Build a Kasteleyn orientation of a plane graph.
pub fn orient_kasteleyn(g: &PlanarGraph) -> Result<Orientation> {
    orient_kasteleyn_with_preset(g, &Orientation::new())
}

/// Forest node standing in for every unconstrained trace face.
const SINK: usize = usize::MAX;

/// Build a Kasteleyn orientation extending prescribed edge directions.
///
/// Each bounded region constrains the trace face bounding it from
/// outside: the sides directed against the walk plus all vertices nested
/// inside the region (detached components and isolated vertices, however
/// deep) must total odd.  Outer traces — of whole components as well as
/// of components nested inside a region — stay free, since a nested
/// component's outer parity is already determined by its own faces.  A
/// spanning forest of the face adjacency over undirected edges reserves a
/// private edge per constrained face, assigned leaves-first; all other
/// undirected edges (including bridges, whose two walk occurrences
/// cancel) run low to high.  Fails with [`Error::BadPartialOrientation`]
/// when prescribed directions pin a face at even parity.
pub fn orient_kasteleyn_with_preset(
    g: &PlanarGraph,
    preset: &Orientation,
) -> Result<Orientation> {
    for (t, h) in preset.iter() {
        if !g.has_edge(t, h) {
            return Err(Error::InvalidInput(format!(
                "prescribed direction on missing edge {{{t}, {h}}}"
            )));
        }
    }
    let mut o = preset.clone();
    let nested = nested_content(g);
    let node = |f: usize| -> usize {
        if g.plane_of_face(f) == f {
            f
        } else {
            SINK
        }
    };
    let mut links: BTreeMap<usize, Vec<(EdgeKey, usize)>> = BTreeMap::new();
    for (u, v) in g.edge_ids() {
        if o.is_directed(u, v) {
            continue;
        }
        let f1 = node(g.side_trace_face(u, v)?);
        let f2 = node(g.side_trace_face(v, u)?);
        if f1 == f2 {
            continue;
        }
        let e = edge_key(u, v);
        links.entry(f1).or_default().push((e, f2));
        links.entry(f2).or_default().push((e, f1));
    }
    // Forest by breadth-first search, unbounded regions first: faces in
    // their trees borrow parity freedom from the unconstrained outside,
    // while trees rooted at a face keep that face for a final check.
    let mut parent: BTreeMap<usize, EdgeKey> = BTreeMap::new();
    let mut order: Vec<usize> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    let mut tree: BTreeSet<EdgeKey> = BTreeSet::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let bounded = (0..g.faces().len()).filter(|&f| node(f) != SINK);
    for s in std::iter::once(SINK).chain(bounded) {
        if !seen.insert(s) {
            continue;
        }
        if s != SINK {
            roots.push(s);
        }
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let Some(nbrs) = links.get(&x) else { continue };
            for &(e, y) in nbrs {
                if seen.insert(y) {
                    parent.insert(y, e);
                    tree.insert(e);
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    for (u, v) in g.edge_ids() {
        let e = edge_key(u, v);
        if !o.is_directed(u, v) && !tree.contains(&e) {
            o.direct(e.0, e.1);
        }
    }
    // private edges children-first, so every other side is already fixed
    for &f in order.iter().rev() {
        let (a, b) = parent[&f];
        o.direct(a, b);
        if !face_is_good(g, &o, f, &nested)? {
            o.direct(b, a);
        }
    }
    for &f in &roots {
        if !face_is_good(g, &o, f, &nested)? {
            return Err(Error::BadPartialOrientation(format!(
                "prescribed directions leave the face through {:?} bad",
                g.faces()[f].walk()
            )));
        }
    }
    Ok(o)
}

/// Vertices nested inside each bounded region, keyed by its trace face:
/// every detached component and isolated vertex counts toward its host
/// region and toward every region enclosing that one.
fn nested_content(g: &PlanarGraph) -> BTreeMap<usize, usize> {
    let comp_of: BTreeMap<VertexId, usize> = g
        .components()
        .iter()
        .enumerate()
        .flat_map(|(ci, vs)| vs.iter().map(move |&v| (v, ci)))
        .collect();
    let host_of = |ci: usize| -> usize {
        match g.component_outer_trace(ci) {
            Some(t) => g.plane_of_face(t),
            None => {
                let &v = g.components()[ci].iter().next().expect("nonempty component");
                g.isolated_host(v).unwrap_or(OUTER_PLANE)
            }
        }
    };
    let mut content: BTreeMap<usize, usize> = BTreeMap::new();
    for ci in 0..g.components().len() {
        let n = g.components()[ci].len();
        let mut r = host_of(ci);
        while r != OUTER_PLANE {
            *content.entry(r).or_insert(0) += n;
            let (u, _) = g.faces()[r].sides[0];
            r = host_of(comp_of[&u]);
        }
    }
    content
}

/// `true` when the face's sides directed against its walk, plus the
/// vertices nested anywhere inside its region, are odd in total.
fn face_is_good(
    g: &PlanarGraph,
    o: &Orientation,
    f: usize,
    nested: &BTreeMap<usize, usize>,
) -> Result<bool> {
    let mut against = 0usize;
    for &(u, v) in &g.faces()[f].sides {
        if o.dominates(v, u)? {
            against += 1;
        }
    }
    let hosted = nested.get(&f).copied().unwrap_or(0);
    Ok((against + hosted) % 2 == 1)
}

/// Check every simple cycle for goodness, returning the bad ones.
/// Refuses graphs beyond the cycle-enumeration cap.
pub fn verify_kasteleyn(g: &PlanarGraph, o: &Orientation) -> Result<Vec<Circuit>> {
    let mut bad = Vec::new();
    for c in enumerate_simple_cycles(g)? {
        if !circuit_is_good(g, o, &c)? {
            bad.push(c);
        }
    }
    Ok(bad)
}

// ---------------------------------------------------------------------------
// boundary labeling and covering signs
// ---------------------------------------------------------------------------

/// A bijection between vertices and 1-based labels in which boundary
/// vertices take the first labels in counterclockwise circuit order.
#[derive(Debug, Clone)]
pub struct Labeling {
    to_label: BTreeMap<VertexId, usize>,
    from_label: Vec<VertexId>,
    boundary_len: usize,
}

impl Labeling {
    /// Label an enclosed graph: boundary counterclockwise from its
    /// smallest vertex, then interior vertices ascending.
    pub fn for_enclosed(eg: &EnclosedGraph) -> Labeling {
        let mut from_label: Vec<VertexId> = eg.boundary().vertices().to_vec();
        from_label.extend(eg.interior_vertices());
        let to_label = from_label
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i + 1))
            .collect();
        Labeling {
            to_label,
            from_label,
            boundary_len: eg.boundary_len(),
        }
    }

    pub fn label(&self, v: VertexId) -> Result<usize> {
        self.to_label
            .get(&v)
            .copied()
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn vertex(&self, label: usize) -> Result<VertexId> {
        if label == 0 || label > self.from_label.len() {
            return Err(Error::IndexOutOfRange(label, self.from_label.len()));
        }
        Ok(self.from_label[label - 1])
    }

    pub fn len(&self) -> usize {
        self.from_label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.from_label.is_empty()
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary_len
    }

    pub fn is_boundary_label(&self, label: usize) -> bool {
        (1..=self.boundary_len).contains(&label)
    }

    fn swap(&mut self, l1: usize, l2: usize) {
        let v1 = self.from_label[l1 - 1];
        let v2 = self.from_label[l2 - 1];
        self.from_label.swap(l1 - 1, l2 - 1);
        self.to_label.insert(v1, l2);
        self.to_label.insert(v2, l1);
    }
}

/// Sign of a set of directed pairs: order pairs by their smaller label,
/// flatten tail-head, and count inversions against ascending order.
fn pair_sequence_sign(pairs: &[(usize, usize)]) -> i32 {
    let mut sorted = pairs.to_vec();
    sorted.sort_by_key(|&(a, b)| a.min(b));
    let seq: Vec<usize> = sorted.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of a boundary covering: each dimer contributes its dominant
/// endpoint's label before the submissive one; monomer labels are omitted.
pub fn covering_sign(o: &Orientation, lab: &Labeling, cov: &Covering) -> Result<i32> {
    let mut pairs = Vec::with_capacity(cov.dimers.len());
    for &(u, v) in &cov.dimers {
        let (t, h) = o
            .direction(u, v)
            .ok_or(Error::UndirectedEdgeInCircuit(u, v))?;
        pairs.push((lab.label(t)?, lab.label(h)?));
    }
    Ok(pair_sequence_sign(&pairs))
}

/// Find one covering with monomers only on the boundary, if any exists.
pub fn find_bmd_covering(eg: &EnclosedGraph) -> Option<Covering> {
    let g = eg.graph();
    let verts: Vec<VertexId> = g.vertex_ids().collect();
    let mut covered = BTreeSet::new();
    let mut monomers = BTreeSet::new();
    let mut dimers = BTreeSet::new();
    fn rec(
        g: &PlanarGraph,
        eg: &EnclosedGraph,
        verts: &[VertexId],
        covered: &mut BTreeSet<VertexId>,
        monomers: &mut BTreeSet<VertexId>,
        dimers: &mut BTreeSet<EdgeKey>,
    ) -> bool {
        let Some(&v) = verts.iter().find(|x| !covered.contains(x)) else {
            return true;
        };
        covered.insert(v);
        if !eg.is_interior(v) {
            monomers.insert(v);
            if rec(g, eg, verts, covered, monomers, dimers) {
                return true;
            }
            monomers.remove(&v);
        }
        let mut nbrs: Vec<VertexId> = g.neighbors(v).to_vec();
        nbrs.sort_unstable();
        for w in nbrs {
            if !covered.contains(&w) {
                covered.insert(w);
                dimers.insert(edge_key(v, w));
                if rec(g, eg, verts, covered, monomers, dimers) {
                    return true;
                }
                covered.remove(&w);
                dimers.remove(&edge_key(v, w));
            }
        }
        covered.remove(&v);
        false
    }
    if rec(g, eg, &verts, &mut covered, &mut monomers, &mut dimers) {
        Some(Covering { monomers, dimers })
    } else {
        None
    }
}

/// Orient and label an enclosed graph for the Pfaffian formula: boundary
/// directed along its counterclockwise order with the closing edge
/// reversed, interior extended admissibly, and labels normalized so all
/// boundary coverings have positive sign.
pub fn direct_and_label(eg: &EnclosedGraph) -> Result<(Orientation, Labeling)> {
    let mut lab = Labeling::for_enclosed(eg);
    let b = lab.boundary_len();
    let mut preset = Orientation::new();
    for i in 1..b {
        preset.direct(lab.vertex(i)?, lab.vertex(i + 1)?);
    }
    preset.direct(lab.vertex(1)?, lab.vertex(b)?);
    let o = orient_kasteleyn_with_preset(eg.graph(), &preset)?;
    if let Some(cov) = find_bmd_covering(eg) {
        if covering_sign(&o, &lab, &cov)? < 0 {
            let n = lab.len();
            if n - b < 2 {
                return Err(Error::InvalidInput(
                    "internal error: negative covering sign without interior labels".into(),
                ));
            }
            lab.swap(n, n - 1);
            debug_assert_eq!(covering_sign(&o, &lab, &cov)?, 1);
        }
    }
    Ok((o, lab))
}

// ---------------------------------------------------------------------------
// auxiliary ring graph
// ---------------------------------------------------------------------------

/// The base graph surrounded by a ring of auxiliary vertices, one per
/// boundary vertex, with directions chosen so its perfect matchings count
/// boundary coverings of the base twice each.
#[derive(Debug, Clone)]
pub struct AuxiliaryGamma {
    graph: PlanarGraph,
    orientation: Orientation,
    labels: Vec<VertexId>,
    ring: Vec<VertexId>,
    base_len: usize,
}

impl AuxiliaryGamma {
    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// Label order of the ring graph: base labels first, ring labels after.
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn ring_ids(&self) -> &[VertexId] {
        &self.ring
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn ring_len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_ring(&self, v: VertexId) -> bool {
        self.ring.binary_search(&v).is_ok()
    }

    /// Labeling of the ring graph in its label order, the ring taking the
    /// role of the boundary.
    pub fn labeling(&self) -> Labeling {
        let to_label = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i + 1))
            .collect();
        Labeling {
            to_label,
            from_label: self.labels.clone(),
            boundary_len: self.ring.len(),
        }
    }
}

/// Build the auxiliary ring graph of an enclosed graph.
///
/// Ring vertex `j` sits outside the boundary between boundary labels `j`
/// and `j + 1`; boundary label `j` connects to ring vertices `j` and
/// `j - 1` (cyclically).  Ring edges carry weight one and run from lower
/// to higher ring label, with the closing edge reversed; connectors carry
/// the boundary vertex's monomer weight and point away from odd labels
/// and toward even ones, except that the closing connector at label 1
/// points inward.
pub fn build_auxiliary(
    eg: &EnclosedGraph,
    o: &Orientation,
    lab: &Labeling,
) -> Result<AuxiliaryGamma> {
    let g = eg.graph();
    let n = g.num_vertices();
    let b = eg.boundary_len();
    let max_id = g.vertex_ids().max().unwrap();
    let ring: Vec<VertexId> = (1..=b as u32).map(|j| max_id + j).collect();
    // cyclic accessors: index 0 wraps to b, index b + 1 wraps to 1
    let rj = |j: usize| -> VertexId { ring[(j + b - 1) % b] };
    let bd = |j: usize| -> Result<VertexId> { lab.vertex(1 + (j + b - 1) % b) };

    let mut verts: Vec<(VertexId, crate::scalar::Rational)> = g
        .vertex_ids()
        .map(|v| (v, g.monomer_weight(v)))
        .collect();
    verts.extend((1..=b).map(|j| (rj(j), rat_i(0))));
    let mut edges: Vec<(VertexId, VertexId, crate::scalar::Rational)> = g
        .edge_ids()
        .map(|(u, v)| (u, v, g.dimer_weight(u, v)))
        .collect();
    for j in 1..=b {
        edges.push((rj(j), rj(j + 1), rat_i(1)));
        let w = g.monomer_weight(bd(j)?);
        edges.push((bd(j)?, rj(j), w.clone()));
        edges.push((bd(j)?, rj(j - 1), w));
    }
    let mut rot = g.rotation_system().clone();
    for j in 1..=b {
        rot.insert(rj(j), vec![rj(j + 1), bd(j + 1)?, bd(j)?, rj(j - 1)]);
    }
    for j in 1..=b {
        let pred = bd(j - 1)?;
        let r = rot.get_mut(&bd(j)?).unwrap();
        let i = r.iter().position(|&x| x == pred).unwrap();
        r.insert(i + 1, rj(j - 1));
        r.insert(i + 2, rj(j));
    }
    let mut gamma = PlanarGraph::from_parts(&verts, &edges, &rot, Some((rj(1), rj(b))))?;
    for v in g.vertex_ids() {
        if g.is_fugacity_exempt(v) {
            gamma.set_fugacity_exempt(v);
        }
    }

    let mut go = o.clone();
    for j in 1..b {
        go.direct(rj(j), rj(j + 1));
    }
    go.direct(rj(1), rj(b));
    for j in 1..=b {
        if j == 1 {
            go.direct(bd(1)?, rj(1));
            go.direct(rj(b), bd(1)?);
        } else if j % 2 == 1 {
            go.direct(bd(j)?, rj(j));
            go.direct(bd(j)?, rj(j - 1));
        } else {
            go.direct(rj(j), bd(j)?);
            go.direct(rj(j - 1), bd(j)?);
        }
    }

    let mut labels: Vec<VertexId> = (1..=n).map(|i| lab.vertex(i)).collect::<Result<_>>()?;
    labels.extend(ring.iter().copied());
    Ok(AuxiliaryGamma {
        graph: gamma,
        orientation: go,
        labels,
        ring,
        base_len: n,
    })
}

/// Lift a boundary covering of the base graph to a perfect matching of
/// the ring graph.  The two lifts (`barred` false and true) are the two
/// preimages of the covering.
pub fn lift_covering(
    aux: &AuxiliaryGamma,
    lab: &Labeling,
    cov: &Covering,
    barred: bool,
) -> Result<Covering> {
    let b = aux.ring_len();
    let rj = |j: usize| -> VertexId { aux.ring[(j + b - 1) % b] };
    let mut mlabels = BTreeSet::new();
    for &m in &cov.monomers {
        let l = lab.label(m)?;
        if !lab.is_boundary_label(l) {
            return Err(Error::NonzeroInteriorMonomer(m));
        }
        mlabels.insert(l);
    }
    let mut dimers = cov.dimers.clone();
    let shift = usize::from(barred);
    let mut p = 0usize;
    for j in 1..=b {
        let q = j + p + shift;
        if mlabels.contains(&j) {
            let target = if q % 2 == 1 { rj(j) } else { rj(j + b - 1) };
            dimers.insert(edge_key(lab.vertex(j)?, target));
            p += 1;
        } else if q % 2 == 0 {
            dimers.insert(edge_key(rj(j), rj(j + b - 1)));
        }
    }
    Ok(Covering {
        monomers: BTreeSet::new(),
        dimers,
    })
}

/// Project a perfect matching of the ring graph back to a boundary
/// covering of the base: base vertices matched into the ring become
/// monomers, ring-ring dimers are dropped.
pub fn project_covering(aux: &AuxiliaryGamma, matching: &Covering) -> Covering {
    let mut monomers = BTreeSet::new();
    let mut dimers = BTreeSet::new();
    for &(u, v) in &matching.dimers {
        match (aux.is_ring(u), aux.is_ring(v)) {
            (false, false) => {
                dimers.insert((u, v));
            }
            (false, true) => {
                monomers.insert(u);
            }
            (true, false) => {
                monomers.insert(v);
            }
            (true, true) => {}
        }
    }
    Covering { monomers, dimers }
}
