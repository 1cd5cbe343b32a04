//! Full monomer-dimer partition functions over the whole vertex set.
//!
//! The boundary theory in [`crate::partition`] prices monomers on the outer
//! face only.  This module removes that restriction in two exact ways:
//!
//! * **Skeleton decomposition** ([`full_partition_skeleton`]): split the edge
//!   set into a skeleton `s` whose vertices all lie on its unbounded face,
//!   plus a removed set `R`.  Summing boundary partition functions of `s`
//!   minus the vertices covered by each partial matching of `R`, weighted by
//!   the matched dimer weights, reproduces the unrestricted partition
//!   function.  [`build_skeleton_rectangle`] cuts a rectangular grid into
//!   such a skeleton with slits, giving `2^(|R|)` Pfaffian evaluations.
//! * **Cycle splitting** ([`full_partition_inout`]): given a Hamiltonian
//!   cycle, evaluate the Pfaffians of the subgraph inside the cycle and of
//!   the subgraph outside it (re-embedded with the cycle's former interior
//!   as the unbounded face) over per-site and per-bond generating variables,
//!   and read the partition function off the product term by term.
//!
//! The same Pfaffian product yields a coefficientwise upper bound
//! ([`InOutSplit::upper_bound`]) after substituting square roots of the
//! weights, and a single Pfaffian under an arbitrary orientation yields a
//! matching lower bound ([`lower_bound_poly`]); together they sandwich the
//! true configuration counts for every monomer placement.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{One, Signed, Zero};
use rayon::prelude::*;

use crate::embedding::{
    edge_key, Circuit, EdgeKey, Orientation, PlanarGraph, Point, VertexId,
};
use crate::error::{Error, Result};
use crate::kasteleyn::direct_and_label;
use crate::partition::{InteriorPolicy, PfaffianContext, FUGACITY_VAR};
use crate::pfaffian::{pf_combinatorial, SkewPolyMatrix};
use crate::poly::{coefficient_sqrt, PolyRing, SparsePoly};
use crate::reduce::{build_boundary_circuit, to_enclosed};
use crate::scalar::{rat_i, Rational};

/// Size cap for the backtracking Hamiltonian cycle search.
pub const MAX_HAMILTONIAN_VERTICES: usize = 12;
/// Size cap for the cycle-splitting method, whose Pfaffians are expanded
/// combinatorially over multivariate entries.
pub const MAX_INOUT_VERTICES: usize = 10;
/// Size cap for the lower-bound Pfaffian, expanded the same way.
pub const MAX_LOWER_BOUND_VERTICES: usize = 12;

fn z_ring() -> Arc<PolyRing> {
    PolyRing::univariate(FUGACITY_VAR)
}

// ---------------------------------------------------------------------------
// Skeletons
// ---------------------------------------------------------------------------

/// A split of a graph into a planar skeleton whose vertices all lie on the
/// unbounded face, plus a removed edge set.  The removed edges only enter
/// the decomposition through their endpoints and weights, so they may even
/// cross each other in the drawing; the skeleton itself must embed cleanly.
#[derive(Debug, Clone)]
pub struct Skeleton {
    skeleton: PlanarGraph,
    removed: Vec<(VertexId, VertexId, Rational)>,
    host: Option<PlanarGraph>,
}

impl Skeleton {
    /// Split an embedded graph by a list of edges to remove.
    pub fn from_graph(g: &PlanarGraph, removed: &[EdgeKey]) -> Result<Self> {
        let mut keys = BTreeSet::new();
        let mut rem = Vec::new();
        for &(u, v) in removed {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidSkeleton(format!(
                    "removed edge {{{u}, {v}}} is not an edge of the graph"
                )));
            }
            let k = edge_key(u, v);
            if !keys.insert(k) {
                return Err(Error::InvalidSkeleton(format!(
                    "removed edge {{{u}, {v}}} listed twice"
                )));
            }
            rem.push((k.0, k.1, g.dimer_weight(u, v)));
        }
        let skeleton = g.remove_edges(&keys)?;
        let out = Skeleton {
            skeleton,
            removed: rem,
            host: Some(g.clone()),
        };
        out.validate()?;
        Ok(out)
    }

    /// Assemble a skeleton and an explicit removed edge list.  The implied
    /// host graph is the union of the two and need not be planar.
    pub fn from_parts(
        skeleton: PlanarGraph,
        removed: Vec<(VertexId, VertexId, Rational)>,
    ) -> Result<Self> {
        let mut keys = BTreeSet::new();
        for (u, v, _) in &removed {
            if u == v {
                return Err(Error::SelfLoop(*u));
            }
            for w in [u, v] {
                if !skeleton.contains_vertex(*w) {
                    return Err(Error::UnknownVertex(*w));
                }
            }
            if skeleton.has_edge(*u, *v) {
                return Err(Error::InvalidSkeleton(format!(
                    "removed edge {{{u}, {v}}} is still an edge of the skeleton"
                )));
            }
            if !keys.insert(edge_key(*u, *v)) {
                return Err(Error::InvalidSkeleton(format!(
                    "removed edge {{{u}, {v}}} listed twice"
                )));
            }
        }
        let out = Skeleton {
            skeleton,
            removed,
            host: None,
        };
        out.validate()?;
        Ok(out)
    }

    /// Every skeleton vertex must be exposed on the unbounded face, so that
    /// each decomposition piece stays within the boundary theory.
    fn validate(&self) -> Result<()> {
        let (exposed, _) = self.skeleton.boundary_subgraph();
        for v in self.skeleton.vertex_ids() {
            if self.skeleton.degree(v) > 0 && !exposed.contains(&v) {
                return Err(Error::InvalidSkeleton(format!(
                    "vertex {v} is not on the outer face of the skeleton"
                )));
            }
        }
        Ok(())
    }

    pub fn skeleton(&self) -> &PlanarGraph {
        &self.skeleton
    }

    pub fn removed(&self) -> &[(VertexId, VertexId, Rational)] {
        &self.removed
    }

    /// The original embedded graph, when the skeleton was split from one.
    pub fn host(&self) -> Option<&PlanarGraph> {
        self.host.as_ref()
    }
}

/// Unit-weight rectangular grid, ids row-major from 1, integer coordinates.
fn unit_rectangle(columns: usize, rows: usize) -> Result<PlanarGraph> {
    let id = |x: usize, y: usize| (y * columns + x + 1) as VertexId;
    let mut verts: Vec<(VertexId, Point, Rational)> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId, Rational)> = Vec::new();
    for y in 0..rows {
        for x in 0..columns {
            verts.push((id(x, y), (rat_i(x as i64), rat_i(y as i64)), rat_i(1)));
            if x + 1 < columns {
                edges.push((id(x, y), id(x + 1, y), rat_i(1)));
            }
            if y + 1 < rows {
                edges.push((id(x, y), id(x, y + 1), rat_i(1)));
            }
        }
    }
    PlanarGraph::from_coordinates(&verts, &edges)
}

/// Cut a `columns x rows` grid into a comb-shaped skeleton: between every
/// consecutive pair of non-border columns, remove the connecting rungs from
/// the border row up to (but excluding) the last two rows.  Each slit opens
/// into the unbounded face, so all grid vertices end up on the outer face of
/// the skeleton, and the removed rungs are pairwise vertex-disjoint.  When
/// the column count is odd the roles of columns and rows are swapped.
pub fn build_skeleton_rectangle(columns: usize, rows: usize) -> Result<Skeleton> {
    if columns == 0 || rows == 0 {
        return Err(Error::BadDimensions(columns, rows, "empty rectangle".into()));
    }
    if (columns * rows) % 2 != 0 {
        return Err(Error::BadDimensions(
            columns,
            rows,
            "the vertex count must be even".into(),
        ));
    }
    let host = unit_rectangle(columns, rows)?;
    let id = |x: usize, y: usize| (y * columns + x + 1) as VertexId;
    let mut removed: Vec<EdgeKey> = Vec::new();
    if columns % 2 == 0 {
        if rows >= 3 {
            for k in 1..=(columns.saturating_sub(2)) / 2 {
                for y in 0..rows - 2 {
                    removed.push(edge_key(id(2 * k - 1, y), id(2 * k, y)));
                }
            }
        }
    } else if columns >= 3 {
        // odd column count: the row count is even, slit along rows instead
        for k in 1..=(rows.saturating_sub(2)) / 2 {
            for x in 0..columns - 2 {
                removed.push(edge_key(id(x, 2 * k - 1), id(x, 2 * k)));
            }
        }
    }
    debug_assert_eq!(
        removed.len(),
        columns.saturating_sub(2) * rows.saturating_sub(2) / 2
    );
    Skeleton::from_graph(&host, &removed)
}

/// Outcome of a skeleton decomposition: the partition function and the
/// number of decomposition terms, each of which costs one boundary-partition
/// Pfaffian evaluation.
#[derive(Debug, Clone)]
pub struct SkeletonRun {
    pub polynomial: SparsePoly,
    pub pfaffian_terms: usize,
}

/// All subsets of the removed edges that form partial matchings, as index
/// lists into the removed slice.
fn disjoint_subsets(edges: &[(VertexId, VertexId, Rational)]) -> Vec<Vec<usize>> {
    fn recurse(
        edges: &[(VertexId, VertexId, Rational)],
        next: usize,
        current: &mut Vec<usize>,
        used: &mut BTreeSet<VertexId>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if next == edges.len() {
            out.push(current.clone());
            return;
        }
        recurse(edges, next + 1, current, used, out);
        let (u, v, _) = &edges[next];
        if !used.contains(u) && !used.contains(v) {
            used.insert(*u);
            used.insert(*v);
            current.push(next);
            recurse(edges, next + 1, current, used, out);
            current.pop();
            used.remove(u);
            used.remove(v);
        }
    }
    let mut out = Vec::new();
    recurse(edges, 0, &mut Vec::new(), &mut BTreeSet::new(), &mut out);
    out
}

/// Boundary partition function of one decomposition piece, with the graphs
/// too small for the Pfaffian pipeline handled directly.
fn piece_partition(g: &PlanarGraph) -> Result<SparsePoly> {
    let ring = z_ring();
    match g.num_vertices() {
        0 => Ok(SparsePoly::one(&ring)),
        1 => {
            let v = g.vertex_ids().next().unwrap();
            let hu = if g.is_fugacity_exempt(v) { 0 } else { 2 };
            Ok(SparsePoly::monomial(&ring, 0, hu, g.monomer_weight(v)))
        }
        _ => PfaffianContext::new(g, InteriorPolicy::Reject)?.partition(),
    }
}

/// Unrestricted monomer-dimer partition function through a skeleton: sum,
/// over partial matchings of the removed edges, the matched dimer weights
/// times the boundary partition function of the skeleton minus the matched
/// vertices.  Terms are evaluated in parallel.
pub fn full_partition_skeleton(sk: &Skeleton) -> Result<SkeletonRun> {
    let matchings = disjoint_subsets(sk.removed());
    let pieces: Result<Vec<SparsePoly>> = matchings
        .par_iter()
        .map(|mu| {
            let mut covered: BTreeSet<VertexId> = BTreeSet::new();
            let mut weight = Rational::one();
            for &i in mu {
                let (u, v, d) = &sk.removed()[i];
                covered.insert(*u);
                covered.insert(*v);
                weight = &weight * d;
            }
            let piece = if covered.len() == sk.skeleton().num_vertices() {
                SparsePoly::one(&z_ring())
            } else {
                piece_partition(&sk.skeleton().remove_vertices(&covered)?)?
            };
            Ok(piece.scale(&weight))
        })
        .collect();
    let mut total = SparsePoly::zero(&z_ring());
    for p in pieces? {
        total = total.add(&p);
    }
    Ok(SkeletonRun {
        polynomial: total,
        pfaffian_terms: matchings.len(),
    })
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles
// ---------------------------------------------------------------------------

/// A cycle through every vertex, possibly on a zero-weight augmentation of
/// the original graph.
#[derive(Debug, Clone)]
pub struct HamiltonianCycle {
    /// The graph the cycle lives in: the input graph, or the input plus
    /// zero-weight closing edges along its outer walk.
    pub graph: PlanarGraph,
    pub cycle: Circuit,
    /// Whether closing edges were added.
    pub augmented: bool,
}

fn extend_path(
    g: &PlanarGraph,
    n: usize,
    path: &mut Vec<VertexId>,
    used: &mut BTreeSet<VertexId>,
) -> bool {
    if path.len() == n {
        return g.has_edge(path[n - 1], path[0]);
    }
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if used.insert(w) {
            path.push(w);
            if extend_path(g, n, path, used) {
                return true;
            }
            path.pop();
            used.remove(&w);
        }
    }
    false
}

fn hamiltonian_search(g: &PlanarGraph) -> Option<Vec<VertexId>> {
    let n = g.num_vertices();
    let start = g.vertex_ids().next()?;
    if g.vertex_ids().any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut path = vec![start];
    let mut used = BTreeSet::from([start]);
    if extend_path(g, n, &mut path, &mut used) {
        Some(path)
    } else {
        None
    }
}

/// Find a Hamiltonian cycle by backtracking.  When none exists but every
/// vertex appears exactly once on the outer walk, close the walk with
/// zero-weight edges instead, which leaves every partition function
/// unchanged; the result is flagged as augmented.
pub fn find_hamiltonian_cycle(g: &PlanarGraph) -> Result<HamiltonianCycle> {
    let n = g.num_vertices();
    if n > MAX_HAMILTONIAN_VERTICES {
        return Err(Error::TooLarge(format!(
            "Hamiltonian search on {n} vertices exceeds the limit of {MAX_HAMILTONIAN_VERTICES}"
        )));
    }
    if n < 3 {
        return Err(Error::NotHamiltonian(format!(
            "{n} vertices cannot form a cycle"
        )));
    }
    if let Some(seq) = hamiltonian_search(g) {
        let cycle = Circuit::new(g, &seq)?;
        return Ok(HamiltonianCycle {
            graph: g.clone(),
            cycle,
            augmented: false,
        });
    }
    let (closed, cycle, augmentations) = build_boundary_circuit(g)?;
    if cycle.len() != n {
        return Err(Error::NotHamiltonian(
            "no Hamiltonian cycle exists and the outer walk does not visit \
             every vertex exactly once"
                .into(),
        ));
    }
    Ok(HamiltonianCycle {
        graph: closed,
        cycle,
        augmented: !augmentations.is_empty(),
    })
}

// ---------------------------------------------------------------------------
// Cycle splitting
// ---------------------------------------------------------------------------

/// A graph split along a Hamiltonian cycle into the subgraph inside the
/// cycle and the subgraph outside it, with one generating variable per site
/// and per bond shared between the two Pfaffian factors.
#[derive(Debug, Clone)]
pub struct InOutSplit {
    graph: PlanarGraph,
    ring: Arc<PolyRing>,
    lambda: BTreeMap<VertexId, usize>,
    delta: BTreeMap<EdgeKey, usize>,
    cycle_edges: BTreeSet<EdgeKey>,
    inside: PlanarGraph,
    outside: PlanarGraph,
}

/// The subgraph on the cycle-plus-outside edges, re-embedded so that the
/// cycle's former interior becomes the unbounded face: rotation lists are
/// reversed (a mirror image), which turns the former outside chords into
/// interior chords of the same cycle.
fn inverted_restriction(
    g: &PlanarGraph,
    inside_keys: &BTreeSet<EdgeKey>,
    cycle: &Circuit,
) -> Result<PlanarGraph> {
    let verts: Vec<(VertexId, Rational)> =
        g.vertex_ids().map(|v| (v, g.monomer_weight(v))).collect();
    let edges: Vec<(VertexId, VertexId, Rational)> = g
        .edge_ids()
        .filter(|k| !inside_keys.contains(k))
        .map(|(u, v)| (u, v, g.dimer_weight(u, v)))
        .collect();
    let rotation: BTreeMap<VertexId, Vec<VertexId>> = g
        .rotation_system()
        .iter()
        .map(|(&v, neigh)| {
            let kept: Vec<VertexId> = neigh
                .iter()
                .rev()
                .copied()
                .filter(|&w| !inside_keys.contains(&edge_key(v, w)))
                .collect();
            (v, kept)
        })
        .collect();
    // In the mirrored rotation system the cycle's former interior face is
    // the face on the left of the reversed first side.
    let (c0, c1) = (cycle.vertices()[0], cycle.vertices()[1]);
    let mut out = PlanarGraph::from_parts(&verts, &edges, &rotation, Some((c1, c0)))?;
    for v in g.vertex_ids() {
        if g.is_fugacity_exempt(v) {
            out.set_fugacity_exempt(v);
        }
    }
    Ok(out)
}

impl InOutSplit {
    pub fn new(g: &PlanarGraph, cycle: &Circuit) -> Result<Self> {
        let n = g.num_vertices();
        if cycle.len() != n {
            return Err(Error::NotHamiltonian(format!(
                "the cycle visits {} of {} vertices",
                cycle.len(),
                n
            )));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidInput(
                "cycle splitting needs an even vertex count".into(),
            ));
        }
        if n > MAX_INOUT_VERTICES {
            return Err(Error::TooLarge(format!(
                "cycle splitting on {n} vertices exceeds the limit of {MAX_INOUT_VERTICES}"
            )));
        }
        for (u, v) in cycle.traversal_pairs() {
            if !g.has_edge(u, v) {
                return Err(Error::NotACircuit(format!(
                    "cycle edge {{{u}, {v}}} is not in the graph"
                )));
            }
        }
        let cycle_edges = cycle.edge_set();
        let inside_planes = cycle.inside_planes(g);
        let mut inside_keys: BTreeSet<EdgeKey> = BTreeSet::new();
        let mut outside_keys: BTreeSet<EdgeKey> = BTreeSet::new();
        for (u, v) in g.edge_ids() {
            let k = edge_key(u, v);
            if cycle_edges.contains(&k) {
                continue;
            }
            let fwd = inside_planes.contains(&g.side_plane(u, v)?);
            let bwd = inside_planes.contains(&g.side_plane(v, u)?);
            debug_assert_eq!(fwd, bwd, "chord {{{u}, {v}}} straddles the cycle");
            if fwd && bwd {
                inside_keys.insert(k);
            } else {
                outside_keys.insert(k);
            }
        }
        let inside = g.remove_edges(&outside_keys)?;
        let outside = inverted_restriction(g, &inside_keys, cycle)?;

        let mut names: Vec<String> = Vec::new();
        let mut caps: Vec<Option<i32>> = Vec::new();
        let mut lambda = BTreeMap::new();
        let mut delta = BTreeMap::new();
        for v in g.vertex_ids() {
            lambda.insert(v, names.len());
            names.push(format!("s{v}"));
            caps.push(Some(4));
        }
        for (u, v) in g.edge_ids() {
            let k = edge_key(u, v);
            delta.insert(k, names.len());
            names.push(format!("b{u}_{v}"));
            caps.push(Some(if cycle_edges.contains(&k) { 4 } else { 2 }));
        }
        let ring = PolyRing::with_caps(names, caps);
        Ok(InOutSplit {
            graph: g.clone(),
            ring,
            lambda,
            delta,
            cycle_edges,
            inside,
            outside,
        })
    }

    pub fn inside_graph(&self) -> &PlanarGraph {
        &self.inside
    }

    pub fn outside_graph(&self) -> &PlanarGraph {
        &self.outside
    }

    /// The skew matrix of one half, over the shared generating variables:
    /// directed bond variables off the diagonal band, alternating-sign site
    /// products everywhere.
    fn symbolic_matrix(&self, h: &PlanarGraph) -> Result<SkewPolyMatrix> {
        let eg = to_enclosed(h)?;
        if eg.total_len() != self.graph.num_vertices()
            || eg.boundary_len() != eg.total_len()
        {
            return Err(Error::InvalidInput(
                "internal: a cycle restriction needed augmentation".into(),
            ));
        }
        let (orientation, labeling) = direct_and_label(&eg)?;
        let n = labeling.len();
        let mut m = SkewPolyMatrix::zeros(n, &self.ring);
        for i in 1..=n {
            let vi = labeling.vertex(i)?;
            for j in i + 1..=n {
                let vj = labeling.vertex(j)?;
                let mut entry = SparsePoly::zero(&self.ring);
                if eg.graph().has_edge(vi, vj) {
                    let var = self.delta[&edge_key(vi, vj)];
                    let sign = if orientation.dominates(vi, vj)? { 1 } else { -1 };
                    entry = entry.add(&SparsePoly::monomial(&self.ring, var, 2, rat_i(sign)));
                }
                let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
                let mut exps = vec![0; self.ring.num_vars()];
                exps[self.lambda[&vi]] = 2;
                exps[self.lambda[&vj]] = 2;
                entry = entry.add(&SparsePoly::from_term(&self.ring, exps, rat_i(sign)));
                m.set(i - 1, j - 1, entry);
            }
        }
        Ok(m)
    }

    /// Product of the inside and outside Pfaffians over the generating
    /// variables.  Every monomer-dimer configuration of the original graph
    /// is recoverable from this product's terms.
    pub fn pfaffian_product(&self) -> Result<SparsePoly> {
        let inside = pf_combinatorial(&self.symbolic_matrix(&self.inside)?)?;
        let outside = pf_combinatorial(&self.symbolic_matrix(&self.outside)?)?;
        Ok(inside.mul(&outside))
    }

    /// The unrestricted partition function, extracted from the Pfaffian
    /// product.  A term contributes exactly when its bond exponents identify
    /// a set of matched edges (squared for cycle bonds, linear for chords)
    /// and each site exponent is exhausted by its incident matched chords
    /// plus an optional monomer; the contribution is the corresponding
    /// product of weights, with one fugacity power per monomer.
    pub fn full_partition(&self) -> Result<SparsePoly> {
        let t = self.pfaffian_product()?;
        let ring = z_ring();
        let mut out = SparsePoly::zero(&ring);
        'term: for (exps, coeff) in t.terms() {
            let mut factor = coeff.clone();
            let mut chord_load: BTreeMap<VertexId, i32> = BTreeMap::new();
            for (&(u, v), &var) in &self.delta {
                let hu = exps[var];
                if hu == 0 {
                    continue;
                }
                if self.cycle_edges.contains(&edge_key(u, v)) {
                    if hu != 4 {
                        continue 'term;
                    }
                    factor = &factor * &self.graph.dimer_weight(u, v);
                } else if hu == 2 {
                    factor = &factor * &self.graph.dimer_weight(u, v);
                    *chord_load.entry(u).or_insert(0) += 1;
                    *chord_load.entry(v).or_insert(0) += 1;
                } else {
                    continue 'term;
                }
            }
            let mut monomer_units = 0;
            for (&v, &var) in &self.lambda {
                let residual = exps[var] / 2 - chord_load.get(&v).copied().unwrap_or(0);
                match residual {
                    0 => {}
                    2 => {
                        factor = &factor * &self.graph.monomer_weight(v);
                        if !self.graph.is_fugacity_exempt(v) {
                            monomer_units += 2;
                        }
                    }
                    _ => continue 'term,
                }
            }
            if !factor.is_zero() {
                out = out.add(&SparsePoly::monomial(&ring, 0, monomer_units, factor));
            }
        }
        Ok(out)
    }

    /// Coefficientwise upper bound on the partition function: substitute
    /// each cycle bond by the square root of its weight and each chord bond
    /// by its root divided by the two incident site variables.  The result
    /// is a Laurent polynomial in the site variables, each standing for the
    /// square root of its monomer weight; its coefficient at the squared
    /// sites of a monomer set dominates that set's matching weight.
    pub fn upper_bound(&self) -> Result<SparsePoly> {
        for v in self.graph.vertex_ids() {
            if !self.graph.monomer_weight(v).is_positive() {
                return Err(Error::NonpositiveMonomerWeight(v));
            }
        }
        let mut t = self.pfaffian_product()?;
        for (&(u, v), &var) in &self.delta {
            let root = coefficient_sqrt(&self.graph.dimer_weight(u, v))?;
            let mut repl = vec![0; self.ring.num_vars()];
            if !self.cycle_edges.contains(&edge_key(u, v)) {
                repl[self.lambda[&u]] = -2;
                repl[self.lambda[&v]] = -2;
            }
            t = t.substitute_monomial(var, &root, &repl)?;
        }
        Ok(t)
    }

    /// Coefficient of the upper bound at the squared site variables of a
    /// monomer set.
    pub fn bound_subset_coefficient(
        &self,
        bound: &SparsePoly,
        subset: &BTreeSet<VertexId>,
    ) -> Result<Rational> {
        let mut exps = vec![0; self.ring.num_vars()];
        for &v in subset {
            let var = self.lambda.get(&v).ok_or(Error::UnknownVertex(v))?;
            exps[*var] = 4;
        }
        Ok(bound.coefficient(&exps))
    }
}

/// Unrestricted partition function by cycle splitting.  The cycle must be
/// Hamiltonian in `g`; use [`find_hamiltonian_cycle`] to produce one (with
/// zero-weight augmentation where necessary).
pub fn full_partition_inout(g: &PlanarGraph, cycle: &Circuit) -> Result<SparsePoly> {
    InOutSplit::new(g, cycle)?.full_partition()
}

/// Coefficientwise upper bound on the partition function; see
/// [`InOutSplit::upper_bound`].
pub fn upper_bound_poly(g: &PlanarGraph, cycle: &Circuit) -> Result<SparsePoly> {
    InOutSplit::new(g, cycle)?.upper_bound()
}

// ---------------------------------------------------------------------------
// Lower bound
// ---------------------------------------------------------------------------

/// A Pfaffian evaluated under an arbitrary orientation and site order, kept
/// as a polynomial with one variable per site.  The coefficient at a site
/// subset is a signed sum over the matchings leaving exactly that subset
/// uncovered, so its absolute value never exceeds the true count.
#[derive(Debug, Clone)]
pub struct LowerBound {
    ring: Arc<PolyRing>,
    lambda: BTreeMap<VertexId, usize>,
    polynomial: SparsePoly,
}

impl LowerBound {
    pub fn polynomial(&self) -> &SparsePoly {
        &self.polynomial
    }

    /// The signed coefficient at a monomer subset.
    pub fn subset_coefficient(&self, subset: &BTreeSet<VertexId>) -> Result<Rational> {
        let mut exps = vec![0; self.ring.num_vars()];
        for &v in subset {
            let var = self.lambda.get(&v).ok_or(Error::UnknownVertex(v))?;
            exps[*var] = 2;
        }
        Ok(self.polynomial.coefficient(&exps))
    }
}

/// Pfaffian lower bound under any edge orientation and any site order.  All
/// dimer weights must be non-negative for the bound to mean anything; with
/// the admissible orientation and boundary order of the Pfaffian pipeline
/// the coefficients become exact.
pub fn lower_bound_poly(
    g: &PlanarGraph,
    orientation: &Orientation,
    order: &[VertexId],
) -> Result<LowerBound> {
    let n = g.num_vertices();
    if n > MAX_LOWER_BOUND_VERTICES {
        return Err(Error::TooLarge(format!(
            "lower-bound Pfaffian on {n} vertices exceeds the limit of {MAX_LOWER_BOUND_VERTICES}"
        )));
    }
    let vset: BTreeSet<VertexId> = g.vertex_ids().collect();
    let oset: BTreeSet<VertexId> = order.iter().copied().collect();
    if oset.len() != order.len() || oset != vset {
        return Err(Error::InvalidInput(
            "the site order must list every vertex exactly once".into(),
        ));
    }
    for (u, v) in g.edge_ids() {
        if g.dimer_weight(u, v).is_negative() {
            return Err(Error::NegativeDimerWeight(u, v));
        }
        if !orientation.is_directed(u, v) {
            return Err(Error::InvalidInput(format!(
                "the orientation leaves edge {{{u}, {v}}} undirected"
            )));
        }
    }
    let names: Vec<String> = order.iter().map(|v| format!("s{v}")).collect();
    let caps = vec![Some(2); names.len()];
    let ring = PolyRing::with_caps(names, caps);
    let lambda: BTreeMap<VertexId, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = SkewPolyMatrix::zeros(n, &ring);
    for i in 0..n {
        let vi = order[i];
        for j in i + 1..n {
            let vj = order[j];
            let mut entry = SparsePoly::zero(&ring);
            if g.has_edge(vi, vj) {
                let d = g.dimer_weight(vi, vj);
                let signed = if orientation.dominates(vi, vj)? { d } else { -d };
                entry = entry.add(&SparsePoly::constant(&ring, signed));
            }
            // alternating sign over the 1-based positions i+1, j+1
            let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
            let mut exps = vec![0; ring.num_vars()];
            exps[lambda[&vi]] = 2;
            exps[lambda[&vj]] = 2;
            entry = entry.add(&SparsePoly::from_term(&ring, exps, rat_i(sign)));
            m.set(i, j, entry);
        }
    }
    let polynomial = pf_combinatorial(&m)?;
    Ok(LowerBound {
        ring,
        lambda,
        polynomial,
    })
}
