//! Deterministic verification corpus: small structured graph families
//! (paths, cycles, chorded cycles, stars, grids, wheels) plus seeded random
//! Delaunay triangulations, with exact weight variants.  Every generator is
//! a pure function of its parameters, so the corpus is byte-identical
//! across runs and platforms.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{PlanarGraph, Point, VertexId};
use crate::error::Result;
use crate::scalar::{rat, rat_i, Rational};

/// A named corpus graph.
pub struct CorpusEntry {
    pub name: String,
    pub graph: PlanarGraph,
}

fn build(
    name: String,
    verts: &[(VertexId, Point)],
    edges: &[(VertexId, VertexId)],
) -> Result<CorpusEntry> {
    let vw: Vec<(VertexId, Point, Rational)> = verts
        .iter()
        .map(|(v, p)| (*v, p.clone(), rat_i(1)))
        .collect();
    let ew: Vec<(VertexId, VertexId, Rational)> =
        edges.iter().map(|&(u, v)| (u, v, rat_i(1))).collect();
    Ok(CorpusEntry {
        name,
        graph: PlanarGraph::from_coordinates(&vw, &ew)?,
    })
}

/// `n` of the twelve rational points on the unit circle, spread evenly by
/// angle and listed counterclockwise from (1, 0).  Requires `n <= 12`.
fn circle_points(n: usize) -> Vec<Point> {
    let twelve: [(Rational, Rational); 12] = [
        (rat(1, 1), rat(0, 1)),
        (rat(4, 5), rat(3, 5)),
        (rat(3, 5), rat(4, 5)),
        (rat(0, 1), rat(1, 1)),
        (rat(-3, 5), rat(4, 5)),
        (rat(-4, 5), rat(3, 5)),
        (rat(-1, 1), rat(0, 1)),
        (rat(-4, 5), rat(-3, 5)),
        (rat(-3, 5), rat(-4, 5)),
        (rat(0, 1), rat(-1, 1)),
        (rat(3, 5), rat(-4, 5)),
        (rat(4, 5), rat(-3, 5)),
    ];
    assert!(n <= 12);
    (0..n).map(|k| twelve[12 * k / n].clone()).collect()
}

/// Path on `n` vertices along the x-axis.
pub fn path(n: usize) -> Result<CorpusEntry> {
    let verts: Vec<(VertexId, Point)> = (0..n)
        .map(|i| (i as VertexId + 1, (rat_i(i as i64), rat_i(0))))
        .collect();
    let edges: Vec<(VertexId, VertexId)> =
        (1..n as VertexId).map(|i| (i, i + 1)).collect();
    build(format!("path-{n}"), &verts, &edges)
}

/// Cycle on `n <= 12` vertices placed on the rational circle.
pub fn cycle(n: usize) -> Result<CorpusEntry> {
    let verts: Vec<(VertexId, Point)> = circle_points(n)
        .into_iter()
        .enumerate()
        .map(|(i, p)| (i as VertexId + 1, p))
        .collect();
    let edges: Vec<(VertexId, VertexId)> = (1..=n as VertexId)
        .map(|i| (i, i % n as VertexId + 1))
        .collect();
    build(format!("cycle-{n}"), &verts, &edges)
}

/// Cycle on `n` vertices with the single chord {1, k}.
pub fn chorded_cycle(n: usize, k: VertexId) -> Result<CorpusEntry> {
    let mut entry = cycle(n)?;
    entry.name = format!("cycle-{n}-chord-{k}");
    let verts: Vec<(VertexId, Point, Rational)> = entry
        .graph
        .vertex_ids()
        .map(|v| (v, entry.graph.position(v).unwrap().clone(), rat_i(1)))
        .collect();
    let mut edges: Vec<(VertexId, VertexId, Rational)> = entry
        .graph
        .edge_ids()
        .map(|(u, v)| (u, v, rat_i(1)))
        .collect();
    edges.push((1, k, rat_i(1)));
    entry.graph = PlanarGraph::from_coordinates(&verts, &edges)?;
    Ok(entry)
}

/// Star: hub 1 at the origin, `n - 1` leaves on the circle.
pub fn star(n: usize) -> Result<CorpusEntry> {
    let mut verts: Vec<(VertexId, Point)> = vec![(1, (rat_i(0), rat_i(0)))];
    verts.extend(
        circle_points(n - 1)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (i as VertexId + 2, p)),
    );
    let edges: Vec<(VertexId, VertexId)> =
        (2..=n as VertexId).map(|leaf| (1, leaf)).collect();
    build(format!("star-{n}"), &verts, &edges)
}

/// Wheel: hub 1 at the origin joined to a rim cycle of `n - 1` vertices.
pub fn wheel(n: usize) -> Result<CorpusEntry> {
    let rim = n - 1;
    let mut verts: Vec<(VertexId, Point)> = vec![(1, (rat_i(0), rat_i(0)))];
    verts.extend(
        circle_points(rim)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (i as VertexId + 2, p)),
    );
    let mut edges: Vec<(VertexId, VertexId)> =
        (2..=n as VertexId).map(|v| (1, v)).collect();
    for i in 0..rim {
        edges.push((i as VertexId + 2, ((i + 1) % rim) as VertexId + 2));
    }
    build(format!("wheel-{n}"), &verts, &edges)
}

/// Unit-weight grid, ids row-major from 1.
pub fn grid(columns: usize, rows: usize) -> Result<CorpusEntry> {
    let id = |x: usize, y: usize| (y * columns + x + 1) as VertexId;
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    for y in 0..rows {
        for x in 0..columns {
            verts.push((id(x, y), (rat_i(x as i64), rat_i(y as i64))));
            if x + 1 < columns {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < rows {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    build(format!("grid-{columns}x{rows}"), &verts, &edges)
}

// ---------------------------------------------------------------------------
// Exact Delaunay triangulations
// ---------------------------------------------------------------------------

fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

/// Positive when `d` lies strictly inside the circumcircle of the
/// counterclockwise triangle `(a, b, c)`.
fn in_circumcircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Rational {
    let lift = |p: &Point| {
        let dx = &p.0 - &d.0;
        let dy = &p.1 - &d.1;
        let m = &dx * &dx + &dy * &dy;
        (dx, dy, m)
    };
    let (ax, ay, am) = lift(a);
    let (bx, by, bm) = lift(b);
    let (cx, cy, cm) = lift(c);
    &ax * (&by * &cm - &bm * &cy) - &ay * (&bx * &cm - &bm * &cx)
        + &am * (&bx * &cy - &by * &cx)
}

/// Sample `n` integer points in general position (no duplicates, no three
/// collinear, no four cocircular) from a seeded generator.
fn general_position_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < n {
        let p: Point = (
            rat_i(rng.gen_range(0..=40)),
            rat_i(rng.gen_range(0..=40)),
        );
        if pts.contains(&p) {
            continue;
        }
        let collinear = pts
            .iter()
            .enumerate()
            .any(|(i, a)| pts[i + 1..].iter().any(|b| orient(a, b, &p).is_zero()));
        if collinear {
            continue;
        }
        let mut cocircular = false;
        'triples: for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                    let (a, b) = if orient(a, b, c).is_positive() {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    if in_circumcircle(a, b, c, &p).is_zero() {
                        cocircular = true;
                        break 'triples;
                    }
                }
            }
        }
        if !cocircular {
            pts.push(p);
        }
    }
    pts
}

/// Delaunay edges of points in general position, by the empty-circumcircle
/// definition: a triangle belongs to the triangulation exactly when no
/// other point lies inside its circumcircle.
fn delaunay_edges(pts: &[Point]) -> BTreeSet<(usize, usize)> {
    let n = pts.len();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&pts[i], &pts[j], &pts[k]);
                let (p, q) = if orient(a, b, c).is_positive() {
                    (a, b)
                } else {
                    (b, a)
                };
                let empty = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .all(|m| !in_circumcircle(p, q, c, &pts[m]).is_positive());
                if empty {
                    edges.insert((i, j));
                    edges.insert((i, k));
                    edges.insert((j, k));
                }
            }
        }
    }
    edges
}

/// A seeded random Delaunay triangulation on `n` integer points.
pub fn delaunay(seed: u64, n: usize) -> Result<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = general_position_points(&mut rng, n);
    let verts: Vec<(VertexId, Point)> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (i as VertexId + 1, p.clone()))
        .collect();
    let edges: Vec<(VertexId, VertexId)> = delaunay_edges(&pts)
        .into_iter()
        .map(|(i, j)| (i as VertexId + 1, j as VertexId + 1))
        .collect();
    build(format!("delaunay-{seed}"), &verts, &edges)
}

/// The 25 seeded Delaunay graphs of the verification sweep, 7 points each.
pub fn delaunay_corpus() -> Result<Vec<CorpusEntry>> {
    (0..25).map(|k| delaunay(1000 + k, 7)).collect()
}

/// The structured families of the verification sweep: paths and cycles up
/// to 8 vertices, chorded cycles, stars, wheels, and grids up to 3x4.
pub fn structured_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(path(n)?);
    }
    for n in 3..=8 {
        out.push(cycle(n)?);
    }
    for (n, k) in [(4, 3), (5, 3), (6, 4), (7, 4), (8, 5), (8, 4)] {
        out.push(chorded_cycle(n, k)?);
    }
    for n in 4..=8 {
        out.push(star(n)?);
    }
    for n in 4..=8 {
        out.push(wheel(n)?);
    }
    for (c, r) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (4, 3), (3, 4)] {
        out.push(grid(c, r)?);
    }
    Ok(out)
}

/// The whole corpus: structured families plus the Delaunay set.
pub fn full_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = structured_corpus()?;
    out.extend(delaunay_corpus()?);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Weight variants
// ---------------------------------------------------------------------------

/// The weight patterns of the verification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPattern {
    /// Every weight 1.
    Unit,
    /// The first edge gets dimer weight 0.
    OneEdgeZero,
    /// Weights cycle through 1, 1/2, 2 over edges and vertices.
    Mixed,
}

impl WeightPattern {
    pub const ALL: [WeightPattern; 3] =
        [WeightPattern::Unit, WeightPattern::OneEdgeZero, WeightPattern::Mixed];

    pub fn name(&self) -> &'static str {
        match self {
            WeightPattern::Unit => "unit",
            WeightPattern::OneEdgeZero => "one-edge-zero",
            WeightPattern::Mixed => "mixed",
        }
    }
}

/// A copy of the graph reweighted by the pattern.
pub fn apply_pattern(g: &PlanarGraph, pattern: WeightPattern) -> Result<PlanarGraph> {
    let mut out = g.clone();
    match pattern {
        WeightPattern::Unit => {}
        WeightPattern::OneEdgeZero => {
            let first = out.edge_ids().next();
            if let Some((u, v)) = first {
                out.set_dimer_weight(u, v, rat_i(0))?;
            }
        }
        WeightPattern::Mixed => {
            let steps = [rat_i(1), rat(1, 2), rat_i(2)];
            let edges: Vec<_> = out.edge_ids().collect();
            for (i, (u, v)) in edges.into_iter().enumerate() {
                out.set_dimer_weight(u, v, steps[i % 3].clone())?;
            }
            let verts: Vec<_> = out.vertex_ids().collect();
            for (i, v) in verts.into_iter().enumerate() {
                out.set_monomer_weight(v, steps[(i + 1) % 3].clone())?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::max_vertices;

    #[test]
    fn structured_families_build_and_stay_small() {
        let corpus = structured_corpus().unwrap();
        assert!(corpus.len() >= 35);
        let mut names = BTreeSet::new();
        for e in &corpus {
            assert!(names.insert(e.name.clone()), "duplicate name {}", e.name);
            assert!(e.graph.num_vertices() <= max_vertices());
            assert!(e.graph.is_connected());
        }
    }

    #[test]
    fn delaunay_graphs_are_deterministic_triangulations() {
        let corpus = delaunay_corpus().unwrap();
        assert_eq!(corpus.len(), 25);
        for e in &corpus {
            assert_eq!(e.graph.num_vertices(), 7);
            assert!(e.graph.is_connected(), "{} disconnected", e.name);
            // Euler: a triangulation of n points with h hull points has
            // 3n - 3 - h edges; bounds for n = 7, h in 3..=7
            let m = e.graph.num_edges();
            assert!((11..=18).contains(&m), "{}: {} edges", e.name, m);
        }
        // determinism: regeneration is identical
        let again = delaunay_corpus().unwrap();
        for (a, b) in corpus.iter().zip(again.iter()) {
            let ea: Vec<_> = a.graph.edge_ids().collect();
            let eb: Vec<_> = b.graph.edge_ids().collect();
            assert_eq!(ea, eb, "{}", a.name);
        }
    }

    #[test]
    fn weight_patterns_modify_weights_as_described() {
        let g = grid(3, 2).unwrap().graph;
        let unit = apply_pattern(&g, WeightPattern::Unit).unwrap();
        assert_eq!(unit.dimer_weight(1, 2), rat_i(1));

        let zeroed = apply_pattern(&g, WeightPattern::OneEdgeZero).unwrap();
        let first = zeroed.edge_ids().next().unwrap();
        assert_eq!(zeroed.dimer_weight(first.0, first.1), rat_i(0));

        let mixed = apply_pattern(&g, WeightPattern::Mixed).unwrap();
        let weights: BTreeSet<Rational> =
            mixed.edge_ids().map(|(u, v)| mixed.dimer_weight(u, v)).collect();
        assert_eq!(weights.len(), 3);
    }
}
