//! Stored reference data: skew matrices whose Pfaffians are known
//! closed-form partition functions, the graphs they describe, and the
//! reference polynomials for the rectangle decompositions and the unit
//! square.  [`replay`] re-derives everything and diffs against the stored
//! expectations, so a regression anywhere in the Pfaffian pipeline shows up
//! as a named fixture failure.
//!
//! All matrices use unit dimer weights and one monomer pair-weight variable
//! `x` per site pair (a monomer contributes the square root of `x`), so
//! entries are linear in `x` and Pfaffians are plain polynomials in `x`.

use std::sync::Arc;

use crate::embedding::PlanarGraph;
use crate::error::{Error, Result};
use crate::fullmd::{build_skeleton_rectangle, full_partition_skeleton};
use crate::oracle::{enumerate_partition, MonomerRegion};
use crate::partition::{boundary_partition, InteriorPolicy, PfaffianContext, FUGACITY_VAR};
use crate::pfaffian::{pf_univariate, SkewPolyMatrix};
use crate::poly::{PolyRing, SparsePoly};
use crate::scalar::{rat_i, Rational};

/// Variable name for the pair fugacity (`x` = square of the per-monomer
/// fugacity `z`).
pub const PAIR_VAR: &str = "x";

pub fn x_ring() -> Arc<PolyRing> {
    PolyRing::univariate(PAIR_VAR)
}

/// A skew matrix stored as its strict upper triangle, row by row, entries
/// linear in the pair variable, together with the expected Pfaffian.
pub struct MatrixFixture {
    pub name: &'static str,
    /// `rows[i]` holds the entries `(i+1, j)` for `j = i+2 ..= n`, using the
    /// tokens `0`, `1`, `-1`, `x`, `-x`, `1+x`, `1-x`, `-1-x`.
    pub rows: &'static [&'static [&'static str]],
    /// Expected Pfaffian, as (exponent in half units of `x`, coefficient).
    pub expected: &'static [(i32, i64)],
}

/// Eight sites on a ring with chords {2,7}, {3,5} and {3,7} drawn inside.
const OCTAGON_THREE_CHORDS: MatrixFixture = MatrixFixture {
    name: "octagon-three-chords",
    rows: &[
        &["1+x", "-x", "x", "-x", "x", "-x", "1+x"],
        &["1+x", "-x", "x", "-x", "1+x", "-x"],
        &["1+x", "1-x", "x", "1-x", "x"],
        &["1+x", "-x", "x", "-x"],
        &["1+x", "-x", "x"],
        &["1+x", "-x"],
        &["1+x"],
    ],
    expected: &[(8, 1), (6, 11), (4, 33), (2, 28), (0, 3)],
};

/// Eight sites on a ring with chords {2,5} and {5,8}: the L-shape.
const L_SHAPE: MatrixFixture = MatrixFixture {
    name: "l-shape",
    rows: &[
        &["1+x", "-x", "x", "-x", "x", "-x", "1+x"],
        &["1+x", "-x", "1+x", "-x", "x", "-x"],
        &["1+x", "-x", "x", "-x", "x"],
        &["1+x", "-x", "x", "-x"],
        &["1+x", "-x", "1+x"],
        &["1+x", "-x"],
        &["1+x"],
    ],
    expected: &[(8, 1), (6, 10), (4, 28), (2, 24), (0, 4)],
};

/// The 4x4 grid: twelve boundary sites followed by the four interior sites,
/// which carry no monomer terms.
const GRID_4X4: MatrixFixture = MatrixFixture {
    name: "four-by-four-grid",
    rows: &[
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "-x", "1+x", "0", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "-x", "1", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "0", "0", "1", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "0", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "0", "0", "1", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "0", "0", "0", "-1"],
        &["1+x", "-x", "x", "-x", "x", "0", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "0", "0", "0", "-1"],
        &["1+x", "-x", "x", "0", "-1", "0", "0"],
        &["1+x", "-x", "0", "0", "0", "0"],
        &["1+x", "0", "-1", "0", "0"],
        &["-1", "0", "0", "0"],
        &["1", "-1", "0"],
        &["0", "1"],
        &["1"],
    ],
    expected: &[(12, 2), (10, 40), (8, 256), (6, 680), (4, 776), (2, 336), (0, 36)],
};

/// A ten-site graph with interior sites, padded to sixteen by its closing
/// augmentation; the tail rows carry constants only.
const ENCLOSED_WEB: MatrixFixture = MatrixFixture {
    name: "enclosed-web",
    rows: &[
        &["1+x", "-x", "x", "-x", "x", "-x", "1+x", "0", "0", "0", "0", "1", "0", "0", "-1"],
        &["1+x", "-x", "x", "-x", "x", "-x", "0", "0", "0", "0", "0", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "0", "0", "0", "0", "0", "0", "-1", "0"],
        &["1+x", "1-x", "x", "-1-x", "0", "1", "0", "1", "0", "-1", "0", "0"],
        &["1+x", "-x", "x", "0", "0", "0", "0", "0", "0", "0", "0"],
        &["1+x", "-x", "1", "0", "0", "0", "0", "0", "0", "0"],
        &["1+x", "1", "0", "-1", "0", "0", "0", "0", "0"],
        &["0", "-1", "-1", "0", "-1", "0", "0", "0"],
        &["0", "1", "1", "0", "0", "0", "0"],
        &["0", "0", "0", "0", "0", "0"],
        &["1", "0", "0", "0", "0"],
        &["0", "0", "0", "0"],
        &["1", "0", "0"],
        &["1", "-1"],
        &["0"],
    ],
    expected: &[(4, 22), (2, 40), (0, 4)],
};

/// A thirteen-site branched graph whose outer walk revisits its cut
/// vertices, closed and padded to sixteen sites.
const BRANCHED_BOUNDARY: MatrixFixture = MatrixFixture {
    name: "branched-boundary",
    rows: &[
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "-1-x", "1", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "-x", "x", "-x", "x", "-x", "1+x", "1", "0", "0"],
        &["1+x", "-x", "x", "-x", "1+x", "-x", "x", "1-x", "1+x", "-x", "0", "1", "0"],
        &["1+x", "1-x", "1+x", "-x", "x", "-x", "x", "-x", "x", "0", "0", "0"],
        &["x", "-x", "x", "-x", "x", "-x", "x", "-x", "0", "0", "0"],
        &["x", "-x", "x", "-x", "x", "-x", "x", "0", "0", "0"],
        &["x", "-x", "x", "-x", "x", "-x", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "x", "0", "0", "0"],
        &["1+x", "-x", "x", "-x", "0", "1", "0"],
        &["1+x", "-x", "x", "0", "1", "0"],
        &["1+x", "-x", "0", "0", "-1"],
        &["x", "0", "0", "0"],
        &["1", "0", "0"],
        &["0", "0"],
        &["1"],
    ],
    expected: &[(12, 3), (10, 47), (8, 222), (6, 389), (4, 234), (2, 27)],
};

pub const MATRIX_FIXTURES: &[&MatrixFixture] = &[
    &OCTAGON_THREE_CHORDS,
    &L_SHAPE,
    &GRID_4X4,
    &ENCLOSED_WEB,
    &BRANCHED_BOUNDARY,
];

fn parse_entry(ring: &Arc<PolyRing>, token: &str) -> Result<SparsePoly> {
    let (constant, linear) = match token {
        "0" => (0, 0),
        "1" => (1, 0),
        "-1" => (-1, 0),
        "x" => (0, 1),
        "-x" => (0, -1),
        "1+x" => (1, 1),
        "1-x" => (1, -1),
        "-1-x" => (-1, -1),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown matrix entry token {other:?}"
            )))
        }
    };
    Ok(SparsePoly::monomial(ring, 0, 0, rat_i(constant))
        .add(&SparsePoly::monomial(ring, 0, 2, rat_i(linear))))
}

impl MatrixFixture {
    pub fn size(&self) -> usize {
        self.rows.len() + 1
    }

    /// The stored matrix over the pair-variable ring.
    pub fn matrix(&self) -> Result<SkewPolyMatrix> {
        let ring = x_ring();
        let n = self.size();
        let mut m = SkewPolyMatrix::zeros(n, &ring);
        for (i0, row) in self.rows.iter().enumerate() {
            if row.len() != n - i0 - 1 {
                return Err(Error::InvalidInput(format!(
                    "fixture {} row {} has {} entries, expected {}",
                    self.name,
                    i0 + 1,
                    row.len(),
                    n - i0 - 1
                )));
            }
            for (k, token) in row.iter().enumerate() {
                m.set(i0, i0 + 1 + k, parse_entry(&ring, token)?);
            }
        }
        Ok(m)
    }

    /// The stored expected Pfaffian.
    pub fn expected_pf(&self) -> SparsePoly {
        poly_from_pairs(&x_ring(), self.expected)
    }

    /// Pfaffian of the stored matrix, by evaluation and interpolation.
    pub fn computed_pf(&self) -> Result<SparsePoly> {
        pf_univariate(&self.matrix()?, Some(self.size() as i32))
    }
}

fn poly_from_pairs(ring: &Arc<PolyRing>, pairs: &[(i32, i64)]) -> SparsePoly {
    let mut p = SparsePoly::zero(ring);
    for &(hu, c) in pairs {
        p = p.add(&SparsePoly::monomial(ring, 0, hu, rat_i(c)));
    }
    p
}

fn unit_verts(pts: &[(u32, (i64, i64))]) -> Vec<(u32, (Rational, Rational), Rational)> {
    pts.iter()
        .map(|&(v, (x, y))| (v, (rat_i(x), rat_i(y)), rat_i(1)))
        .collect()
}

fn unit_edges(pairs: &[(u32, u32)]) -> Vec<(u32, u32, Rational)> {
    pairs.iter().map(|&(u, v)| (u, v, rat_i(1))).collect()
}

/// Convex octagon, sites numbered counterclockwise.
fn octagon(chords: &[(u32, u32)]) -> Result<PlanarGraph> {
    let verts = unit_verts(&[
        (1, (0, 0)),
        (2, (2, -1)),
        (3, (4, 0)),
        (4, (5, 2)),
        (5, (4, 4)),
        (6, (2, 5)),
        (7, (0, 4)),
        (8, (-1, 2)),
    ]);
    let mut edges: Vec<(u32, u32)> = (1..=8).map(|i| (i, i % 8 + 1)).collect();
    edges.extend_from_slice(chords);
    PlanarGraph::from_coordinates(&verts, &unit_edges(&edges))
}

/// The graph behind [`OCTAGON_THREE_CHORDS`].
pub fn octagon_three_chords_graph() -> Result<PlanarGraph> {
    octagon(&[(2, 7), (3, 5), (3, 7)])
}

/// The graph behind [`L_SHAPE`].
pub fn l_shape_graph() -> Result<PlanarGraph> {
    octagon(&[(2, 5), (5, 8)])
}

/// Unit-weight grid, ids row-major from 1.
pub fn unit_grid(columns: usize, rows: usize) -> Result<PlanarGraph> {
    let id = |x: usize, y: usize| (y * columns + x + 1) as u32;
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    for y in 0..rows {
        for x in 0..columns {
            verts.push((id(x, y), (x as i64, y as i64)));
            if x + 1 < columns {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < rows {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    PlanarGraph::from_coordinates(&unit_verts(&verts), &unit_edges(&edges))
}

/// The graph behind [`BRANCHED_BOUNDARY`]: a hexagonal block with a
/// three-pronged antenna and a pendant path, every site on the outer face.
pub fn branched_boundary_graph() -> Result<PlanarGraph> {
    PlanarGraph::from_coordinates(
        &unit_verts(&[
            (1, (0, 0)),
            (2, (0, 3)),
            (3, (3, 3)),
            (4, (3, 6)),
            (5, (2, 8)),
            (6, (3, 8)),
            (7, (4, 8)),
            (8, (5, 4)),
            (9, (7, 4)),
            (10, (8, 2)),
            (11, (7, 0)),
            (12, (5, 0)),
            (13, (-2, -2)),
        ]),
        &unit_edges(&[
            (1, 2),
            (1, 13),
            (2, 3),
            (2, 13),
            (3, 4),
            (3, 8),
            (3, 12),
            (4, 5),
            (4, 6),
            (4, 7),
            (8, 9),
            (9, 10),
            (10, 11),
            (11, 12),
        ]),
    )
}

/// Unit square partition function: z^4 + 4 z^2 + 2 in the per-monomer
/// fugacity.
pub fn unit_square_reference() -> SparsePoly {
    poly_from_pairs(&PolyRing::univariate(FUGACITY_VAR), &[(8, 1), (4, 4), (0, 2)])
}

/// The unit square itself.
pub fn unit_square_graph() -> Result<PlanarGraph> {
    PlanarGraph::from_coordinates(
        &unit_verts(&[(1, (0, 0)), (2, (1, 0)), (3, (1, 1)), (4, (0, 1))]),
        &unit_edges(&[(1, 2), (2, 3), (3, 4), (4, 1)]),
    )
}

/// Full partition function of the 4x3 unit rectangle, in the pair variable.
pub fn rectangle_4x3_reference() -> SparsePoly {
    poly_from_pairs(
        &x_ring(),
        &[(12, 1), (10, 17), (8, 102), (6, 267), (4, 302), (2, 123), (0, 11)],
    )
}

/// Full partition function of the 6x6 unit rectangle, in the pair variable.
pub fn rectangle_6x6_reference() -> SparsePoly {
    poly_from_pairs(
        &x_ring(),
        &[
            (36, 1),
            (34, 60),
            (32, 1622),
            (30, 26172),
            (28, 281514),
            (26, 2135356),
            (24, 11785382),
            (22, 48145820),
            (20, 146702793),
            (18, 333518324),
            (16, 562203148),
            (14, 693650988),
            (12, 613605045),
            (10, 377446076),
            (8, 154396898),
            (6, 39277112),
            (4, 5580152),
            (2, 363536),
            (0, 6728),
        ],
    )
}

/// Boundary partition function of [`branched_boundary_graph`], in the pair
/// variable (half powers: the site count is odd).
pub fn branched_boundary_reference() -> SparsePoly {
    poly_from_pairs(&x_ring(), BRANCHED_PIPELINE_EXPECTED)
}

const BRANCHED_PIPELINE_EXPECTED: &[(i32, i64)] =
    &[(13, 1), (11, 14), (9, 69), (7, 147), (5, 126), (3, 27)];

/// One replayed fixture: what ran, whether it matched, and the diff text
/// when it did not.
#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn diff(name: &str, got: &SparsePoly, want: &SparsePoly, out: &mut Vec<FixtureOutcome>) {
    let passed = got == want;
    out.push(FixtureOutcome {
        name: name.to_string(),
        passed,
        detail: if passed {
            String::new()
        } else {
            format!("expected {want}, got {got}")
        },
    });
}

/// Replay every stored fixture.  The slow set adds the 6x6 rectangle
/// decomposition (256 Pfaffian evaluations).
pub fn replay(include_slow: bool) -> Result<Vec<FixtureOutcome>> {
    let mut out = Vec::new();
    for f in MATRIX_FIXTURES {
        diff(f.name, &f.computed_pf()?, &f.expected_pf(), &mut out);
    }

    let square = unit_square_graph()?;
    let ctx = PfaffianContext::new(&square, InteriorPolicy::Reject)?;
    diff(
        "unit-square-direct",
        &ctx.partition()?,
        &unit_square_reference(),
        &mut out,
    );
    diff(
        "unit-square-bijection",
        &ctx.partition_bijection()?,
        &unit_square_reference(),
        &mut out,
    );

    let xr = x_ring();
    for (name, graph, fixture) in [
        (
            "octagon-three-chords-pipeline",
            octagon_three_chords_graph()?,
            &OCTAGON_THREE_CHORDS,
        ),
        ("l-shape-pipeline", l_shape_graph()?, &L_SHAPE),
    ] {
        let z = boundary_partition(&graph, InteriorPolicy::Reject)?;
        diff(name, &z.halve_variable(&xr)?, &fixture.expected_pf(), &mut out);
    }
    let z = boundary_partition(&unit_grid(4, 4)?, InteriorPolicy::Zero)?;
    diff(
        "four-by-four-grid-pipeline",
        &z.halve_variable(&xr)?,
        &GRID_4X4.expected_pf(),
        &mut out,
    );
    let z = boundary_partition(&branched_boundary_graph()?, InteriorPolicy::Reject)?;
    diff(
        "branched-boundary-pipeline",
        &z.halve_variable(&xr)?,
        &branched_boundary_reference(),
        &mut out,
    );

    let run = full_partition_skeleton(&build_skeleton_rectangle(4, 3)?)?;
    diff(
        "rectangle-4x3-skeleton",
        &run.polynomial.halve_variable(&xr)?,
        &rectangle_4x3_reference(),
        &mut out,
    );
    if run.pfaffian_terms != 2 {
        out.push(FixtureOutcome {
            name: "rectangle-4x3-term-count".into(),
            passed: false,
            detail: format!("expected 2 decomposition terms, got {}", run.pfaffian_terms),
        });
    }
    if include_slow {
        let run = full_partition_skeleton(&build_skeleton_rectangle(6, 6)?)?;
        diff(
            "rectangle-6x6-skeleton",
            &run.polynomial.halve_variable(&xr)?,
            &rectangle_6x6_reference(),
            &mut out,
        );
        if run.pfaffian_terms != 256 {
            out.push(FixtureOutcome {
                name: "rectangle-6x6-term-count".into(),
                passed: false,
                detail: format!(
                    "expected 256 decomposition terms, got {}",
                    run.pfaffian_terms
                ),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_matrices_have_the_stored_pfaffians() {
        for f in MATRIX_FIXTURES {
            assert_eq!(f.computed_pf().unwrap(), f.expected_pf(), "{}", f.name);
        }
    }

    #[test]
    fn fixture_graphs_agree_with_matrices_and_oracle() {
        let xr = x_ring();
        for (g, f) in [
            (octagon_three_chords_graph().unwrap(), &OCTAGON_THREE_CHORDS),
            (l_shape_graph().unwrap(), &L_SHAPE),
        ] {
            let z = boundary_partition(&g, InteriorPolicy::Reject).unwrap();
            assert_eq!(z.halve_variable(&xr).unwrap(), f.expected_pf(), "{}", f.name);
            let oracle = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
            assert_eq!(z, oracle, "{} oracle", f.name);
        }

        let g = unit_grid(4, 4).unwrap();
        let z = boundary_partition(&g, InteriorPolicy::Zero).unwrap();
        assert_eq!(z.halve_variable(&xr).unwrap(), GRID_4X4.expected_pf());
        let oracle = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        assert_eq!(z, oracle);
    }

    #[test]
    fn branched_graph_matches_its_stored_polynomial_and_oracle() {
        let g = branched_boundary_graph().unwrap();
        let z = boundary_partition(&g, InteriorPolicy::Reject).unwrap();
        let oracle = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        assert_eq!(z, oracle);
        assert_eq!(
            z.halve_variable(&x_ring()).unwrap(),
            branched_boundary_reference()
        );
    }

    #[test]
    fn replay_passes_the_fast_set() {
        let outcomes = replay(false).unwrap();
        assert!(outcomes.len() >= 11);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn rectangle_references_match_the_oracle_form() {
        // the 4x3 rectangle reference agrees with the independent count
        let run = full_partition_skeleton(&build_skeleton_rectangle(4, 3).unwrap()).unwrap();
        let oracle = enumerate_partition(&unit_grid(4, 3).unwrap(), &MonomerRegion::All).unwrap();
        assert_eq!(run.polynomial, oracle);
        assert_eq!(
            run.polynomial.halve_variable(&x_ring()).unwrap(),
            rectangle_4x3_reference()
        );
    }
}
