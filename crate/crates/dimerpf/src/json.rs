//! JSON ingestion and emission for the command-line surface.
//!
//! Graphs arrive as `{"vertices": [...], "edges": [...]}` with optional
//! float positions (converted to exact rationals) and rational-string
//! weights.  Graphs without full coordinates must carry a `rotation` table
//! and an `outer_face` side instead.  Polynomials are emitted as a single
//! object keyed by exponent strings in descending order, with exact
//! rational coefficient strings; no floats appear anywhere in polynomial
//! output.  Errors are rendered as structured objects naming the error
//! kind, for the CLI to print on stderr.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::embedding::{PlanarGraph, VertexId};
use crate::error::{Error, Result};
use crate::fullmd::Skeleton;
use crate::poly::{PolyRing, SparsePoly};
use crate::scalar::{format_rational, parse_rational, rational_from_f64, Rational};

#[derive(Debug, Serialize, Deserialize)]
struct VertexJson {
    id: VertexId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pos: Option<(f64, f64)>,
    #[serde(default = "one_string")]
    monomer: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeJson {
    u: VertexId,
    v: VertexId,
    #[serde(default = "one_string")]
    dimer: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<String, Vec<VertexId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_face: Option<(VertexId, VertexId)>,
}

fn one_string() -> String {
    "1".into()
}

fn bad_json(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed JSON: {e}"))
}

/// Parse a graph from its JSON document.  When every vertex has a `pos`
/// the embedding is computed geometrically; otherwise the document must
/// supply a `rotation` table (counterclockwise neighbor lists) and, unless
/// the graph has no edges, an `outer_face` side `[u, v]` whose left face is
/// unbounded.
pub fn graph_from_json_str(s: &str) -> Result<PlanarGraph> {
    let doc: GraphJson = serde_json::from_str(s).map_err(bad_json)?;
    graph_from_doc(&doc)
}

fn graph_from_doc(doc: &GraphJson) -> Result<PlanarGraph> {
    let all_positioned =
        !doc.vertices.is_empty() && doc.vertices.iter().all(|v| v.pos.is_some());
    let edges: Result<Vec<(VertexId, VertexId, Rational)>> = doc
        .edges
        .iter()
        .map(|e| Ok((e.u, e.v, parse_rational(&e.dimer)?)))
        .collect();
    let edges = edges?;
    if all_positioned {
        let verts: Result<Vec<(VertexId, (Rational, Rational), Rational)>> = doc
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = v.pos.unwrap();
                Ok((
                    v.id,
                    (rational_from_f64(x)?, rational_from_f64(y)?),
                    parse_rational(&v.monomer)?,
                ))
            })
            .collect();
        return PlanarGraph::from_coordinates(&verts?, &edges);
    }
    let rotation = doc.rotation.as_ref().ok_or_else(|| {
        Error::InvalidInput(
            "graphs without full coordinates need a rotation table".into(),
        )
    })?;
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for (k, neighbors) in rotation {
        let id: VertexId = k.parse().map_err(|_| {
            Error::InvalidInput(format!("rotation key {k:?} is not a vertex id"))
        })?;
        rot.insert(id, neighbors.clone());
    }
    let verts: Result<Vec<(VertexId, Rational)>> = doc
        .vertices
        .iter()
        .map(|v| Ok((v.id, parse_rational(&v.monomer)?)))
        .collect();
    PlanarGraph::from_parts(&verts?, &edges, &rot, doc.outer_face)
}

/// Serialize a graph to its JSON document.  Coordinate-backed graphs emit
/// positions; combinatorial graphs emit their rotation table and an outer
/// side.  Output is deterministic: vertices and edges in ascending order.
pub fn graph_to_json_string(g: &PlanarGraph) -> Result<String> {
    let mut vertices = Vec::new();
    for v in g.vertex_ids() {
        let pos = match g.position(v) {
            Some((x, y)) => Some((
                x.to_f64().ok_or_else(|| {
                    Error::InvalidInput(format!("position of {v} overflows a float"))
                })?,
                y.to_f64().ok_or_else(|| {
                    Error::InvalidInput(format!("position of {v} overflows a float"))
                })?,
            )),
            None => None,
        };
        vertices.push(VertexJson {
            id: v,
            pos,
            monomer: format_rational(&g.monomer_weight(v)),
        });
    }
    let edges = g
        .edge_ids()
        .map(|(u, v)| EdgeJson {
            u,
            v,
            dimer: format_rational(&g.dimer_weight(u, v)),
        })
        .collect();
    let (rotation, outer_face) = if g.has_coordinates() {
        (None, None)
    } else {
        let rot = g
            .rotation_system()
            .iter()
            .map(|(v, n)| (v.to_string(), n.clone()))
            .collect();
        let outer = if g.num_edges() > 0 {
            let walk = g.outer_walk()?;
            Some((walk[0], walk[1]))
        } else {
            None
        };
        (Some(rot), outer)
    };
    let doc = GraphJson {
        vertices,
        edges,
        rotation,
        outer_face,
    };
    serde_json::to_string(&doc).map_err(bad_json)
}

/// Render a univariate polynomial as `{"polynomial":{"4":"1","2":"4",...}}`
/// with keys in descending exponent order (half exponents as `"3/2"`).
pub fn polynomial_to_json(p: &SparsePoly) -> Result<String> {
    let pairs = p.exponent_map()?;
    let body: Vec<String> = pairs
        .iter()
        .map(|(e, c)| format!("\"{e}\":\"{c}\""))
        .collect();
    Ok(format!("{{\"polynomial\":{{{}}}}}", body.join(",")))
}

/// Parse a polynomial document produced by [`polynomial_to_json`] (or a
/// bare exponent-to-coefficient object) into the given univariate ring.
pub fn polynomial_from_json_str(s: &str, ring: &Arc<PolyRing>) -> Result<SparsePoly> {
    let doc: serde_json::Value = serde_json::from_str(s).map_err(bad_json)?;
    let obj = doc
        .get("polynomial")
        .unwrap_or(&doc)
        .as_object()
        .ok_or_else(|| Error::InvalidInput("expected a polynomial object".into()))?;
    let mut entries = Vec::new();
    for (e, c) in obj {
        let c = c
            .as_str()
            .ok_or_else(|| {
                Error::InvalidInput(format!("coefficient of {e:?} is not a string"))
            })?
            .to_string();
        entries.push((e.clone(), c));
    }
    SparsePoly::from_exponent_map(ring, &entries)
}

#[derive(Debug, Deserialize)]
struct RemovedEdgeJson {
    u: VertexId,
    v: VertexId,
    #[serde(default = "one_string")]
    dimer: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RemovedJson {
    Pair(VertexId, VertexId),
    Weighted(RemovedEdgeJson),
}

#[derive(Debug, Deserialize)]
struct SkeletonJson {
    #[serde(default)]
    graph: Option<GraphJson>,
    #[serde(default)]
    skeleton: Option<GraphJson>,
    #[serde(default)]
    removed: Vec<RemovedJson>,
}

/// Parse a skeleton description.  Two layouts are accepted:
/// `{"graph": ..., "removed": [[u,v], ...]}` splits an embedded host graph
/// (removed-edge weights come from the host), while
/// `{"skeleton": ..., "removed": [{"u":..,"v":..,"dimer":".."}, ...]}`
/// assembles a skeleton and an explicit removed list.
pub fn skeleton_from_json_str(s: &str) -> Result<Skeleton> {
    let doc: SkeletonJson = serde_json::from_str(s).map_err(bad_json)?;
    match (&doc.graph, &doc.skeleton) {
        (Some(host), None) => {
            let g = graph_from_doc(host)?;
            let removed: Vec<(VertexId, VertexId)> = doc
                .removed
                .iter()
                .map(|r| match r {
                    RemovedJson::Pair(u, v) => (*u, *v),
                    RemovedJson::Weighted(w) => (w.u, w.v),
                })
                .collect();
            Skeleton::from_graph(&g, &removed)
        }
        (None, Some(sk)) => {
            let g = graph_from_doc(sk)?;
            let removed: Result<Vec<(VertexId, VertexId, Rational)>> = doc
                .removed
                .iter()
                .map(|r| match r {
                    RemovedJson::Pair(u, v) => Ok((*u, *v, Rational::from_integer(1.into()))),
                    RemovedJson::Weighted(w) => Ok((w.u, w.v, parse_rational(&w.dimer)?)),
                })
                .collect();
            Skeleton::from_parts(g, removed?)
        }
        _ => Err(Error::InvalidInput(
            "a skeleton document needs exactly one of \"graph\" or \"skeleton\"".into(),
        )),
    }
}

/// The stable name of an error variant, used in structured error output.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CrossingEdges(_) => "CrossingEdges",
        Error::DuplicateEdge(_, _) => "DuplicateEdge",
        Error::SelfLoop(_) => "SelfLoop",
        Error::InvalidRotation(_) => "InvalidRotation",
        Error::UnknownVertex(_) => "UnknownVertex",
        Error::NotACircuit(_) => "NotACircuit",
        Error::NotMergeable(_) => "NotMergeable",
        Error::TooLarge(_) => "TooLarge",
        Error::BoundaryAlreadyEven => "BoundaryAlreadyEven",
        Error::BadPartialOrientation(_) => "BadPartialOrientation",
        Error::UndirectedEdgeInCircuit(_, _) => "UndirectedEdgeInCircuit",
        Error::NoCoveringExists => "NoCoveringExists",
        Error::OddDimension(_) => "OddDimension",
        Error::OddSubsetSize(_) => "OddSubsetSize",
        Error::IndexOutOfRange(_, _) => "IndexOutOfRange",
        Error::SingularMatrix => "SingularMatrix",
        Error::BadPolynomial(_) => "BadPolynomial",
        Error::NonzeroInteriorMonomer(_) => "NonzeroInteriorMonomer",
        Error::IndexOffBoundary(_) => "IndexOffBoundary",
        Error::NoPerfectMatching => "NoPerfectMatching",
        Error::BadDimensions(_, _, _) => "BadDimensions",
        Error::InvalidSkeleton(_) => "InvalidSkeleton",
        Error::NotHamiltonian(_) => "NotHamiltonian",
        Error::NonpositiveMonomerWeight(_) => "NonpositiveMonomerWeight",
        Error::IrrationalSquareRoot(_) => "IrrationalSquareRoot",
        Error::NegativeDimerWeight(_, _) => "NegativeDimerWeight",
        Error::InvalidInput(_) => "InvalidInput",
    }
}

/// Structured error object for stderr:
/// `{"error":{"kind":"InvalidInput","message":"..."}}`.
pub fn error_to_json(e: &Error) -> String {
    let obj = serde_json::json!({
        "error": {
            "kind": error_kind(e),
            "message": e.to_string(),
        }
    });
    obj.to_string()
}
