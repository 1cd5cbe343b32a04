//! Definition-level reference computations by exhaustive enumeration.
//!
//! Everything here works straight from the definition of a monomer-dimer
//! covering: partition the vertex set into monomers and dimer pairs, weight
//! each covering by the product of its monomer and dimer weights times the
//! monomer fugacity, and sum.  No orientations, signs, or Pfaffians are
//! involved, which makes this module the independent yardstick the fast
//! paths are tested against.  Enumeration is exponential, so graphs are
//! capped at [`max_vertices`] vertices.

use crate::embedding::{edge_key, EdgeKey, PlanarGraph, VertexId};
use crate::error::{Error, Result};
use crate::poly::{PolyRing, SparsePoly};
use crate::scalar::{rat_i, Rational};
use num::Zero;
use std::collections::BTreeSet;

/// Default vertex cap for exhaustive enumeration.
pub const MAX_ORACLE_VERTICES_DEFAULT: usize = 16;

/// Vertex cap for enumeration; override with the `DIMERPF_MAX_ORACLE`
/// environment variable.
pub fn max_vertices() -> usize {
    std::env::var("DIMERPF_MAX_ORACLE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(MAX_ORACLE_VERTICES_DEFAULT)
}

/// Where monomers may sit during enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomerRegion {
    /// Monomers anywhere.
    All,
    /// Monomers only on vertices incident to the unbounded plane region.
    Boundary,
    /// Monomers only on the given vertices.
    Explicit(BTreeSet<VertexId>),
    /// The monomer set must be exactly the given vertices.
    Fixed(BTreeSet<VertexId>),
}

/// One monomer-dimer covering: a partition of the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Covering {
    pub monomers: BTreeSet<VertexId>,
    pub dimers: BTreeSet<EdgeKey>,
}

impl Covering {
    /// Product of dimer weights and monomer weights, plus the power of the
    /// fugacity (number of monomers on fugacity-charged vertices).
    pub fn weight(&self, g: &PlanarGraph) -> (Rational, usize) {
        let mut w = rat_i(1);
        let mut power = 0usize;
        for &v in &self.monomers {
            w *= g.monomer_weight(v);
            if !g.is_fugacity_exempt(v) {
                power += 1;
            }
        }
        for &(u, v) in &self.dimers {
            w *= g.dimer_weight(u, v);
        }
        (w, power)
    }
}

fn check_cap(g: &PlanarGraph) -> Result<()> {
    let cap = max_vertices();
    if g.num_vertices() > cap {
        return Err(Error::TooLarge(format!(
            "{} vertices exceeds the enumeration cap {cap}",
            g.num_vertices()
        )));
    }
    Ok(())
}

/// Visit every covering compatible with the region.
fn visit_coverings(
    g: &PlanarGraph,
    region: &MonomerRegion,
    f: &mut impl FnMut(&BTreeSet<VertexId>, &BTreeSet<EdgeKey>),
) -> Result<()> {
    check_cap(g)?;
    let monomer_ok: Box<dyn Fn(VertexId) -> bool> = match region {
        MonomerRegion::All => Box::new(|_| true),
        MonomerRegion::Boundary => {
            let (bv, _) = g.boundary_subgraph();
            Box::new(move |v| bv.contains(&v))
        }
        MonomerRegion::Explicit(s) | MonomerRegion::Fixed(s) => {
            let s = s.clone();
            Box::new(move |v| s.contains(&v))
        }
    };
    let forced = matches!(region, MonomerRegion::Fixed(_));
    if let MonomerRegion::Explicit(s) | MonomerRegion::Fixed(s) = region {
        for &v in s {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
    }
    let mut uncovered: BTreeSet<VertexId> = g.vertex_ids().collect();
    let mut monomers = BTreeSet::new();
    let mut dimers = BTreeSet::new();
    rec(
        g,
        &monomer_ok,
        forced,
        &mut uncovered,
        &mut monomers,
        &mut dimers,
        f,
    );
    return Ok(());

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &PlanarGraph,
        monomer_ok: &dyn Fn(VertexId) -> bool,
        forced: bool,
        uncovered: &mut BTreeSet<VertexId>,
        monomers: &mut BTreeSet<VertexId>,
        dimers: &mut BTreeSet<EdgeKey>,
        f: &mut impl FnMut(&BTreeSet<VertexId>, &BTreeSet<EdgeKey>),
    ) {
        let v = match uncovered.iter().next() {
            None => {
                f(monomers, dimers);
                return;
            }
            Some(&v) => v,
        };
        uncovered.remove(&v);
        let allowed = monomer_ok(v);
        if allowed {
            monomers.insert(v);
            rec(g, monomer_ok, forced, uncovered, monomers, dimers, f);
            monomers.remove(&v);
        }
        // under a Fixed region an allowed vertex must be a monomer, so it
        // can neither take a dimer itself nor serve as a dimer partner
        if !(forced && allowed) {
            let partners: Vec<VertexId> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&n| uncovered.contains(&n) && !(forced && monomer_ok(n)))
                .collect();
            for n in partners {
                uncovered.remove(&n);
                dimers.insert(edge_key(v, n));
                rec(g, monomer_ok, forced, uncovered, monomers, dimers, f);
                dimers.remove(&edge_key(v, n));
                uncovered.insert(n);
            }
        }
        uncovered.insert(v);
    }
}

/// Every covering compatible with the region, in sorted order.
pub fn enumerate_coverings(g: &PlanarGraph, region: &MonomerRegion) -> Result<Vec<Covering>> {
    let mut out = Vec::new();
    visit_coverings(g, region, &mut |m, d| {
        out.push(Covering {
            monomers: m.clone(),
            dimers: d.clone(),
        });
    })?;
    out.sort();
    Ok(out)
}

/// The partition function as a polynomial in the fugacity variable `z`:
/// the coefficient of `z^k` sums the weights of all coverings with `k`
/// fugacity-charged monomers.
pub fn enumerate_partition(g: &PlanarGraph, region: &MonomerRegion) -> Result<SparsePoly> {
    let ring = PolyRing::univariate("z");
    let mut acc = SparsePoly::zero(&ring);
    visit_coverings(g, region, &mut |m, d| {
        let c = Covering {
            monomers: m.clone(),
            dimers: d.clone(),
        };
        let (w, power) = c.weight(g);
        acc = acc.add(&SparsePoly::monomial(&ring, 0, 2 * power as i32, w));
    })?;
    Ok(acc)
}

/// Number of coverings whose monomer set is exactly `fixed`.
pub fn count_fixed_monomers(g: &PlanarGraph, fixed: &BTreeSet<VertexId>) -> Result<usize> {
    let mut n = 0usize;
    visit_coverings(g, &MonomerRegion::Fixed(fixed.clone()), &mut |m, _| {
        debug_assert_eq!(m, fixed);
        n += 1;
    })?;
    Ok(n)
}

/// Weighted sum over perfect matchings of the graph with `excluded`
/// vertices deleted: the product of dimer weights, summed over all ways to
/// cover every remaining vertex by dimers.
pub fn perfect_matching_sum(
    g: &PlanarGraph,
    excluded: &BTreeSet<VertexId>,
) -> Result<Rational> {
    check_cap(g)?;
    for &v in excluded {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let mut remaining: BTreeSet<VertexId> =
        g.vertex_ids().filter(|v| !excluded.contains(v)).collect();
    return Ok(rec(g, &mut remaining));

    fn rec(g: &PlanarGraph, remaining: &mut BTreeSet<VertexId>) -> Rational {
        let v = match remaining.iter().next() {
            None => return rat_i(1),
            Some(&v) => v,
        };
        remaining.remove(&v);
        let partners: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|n| remaining.contains(n))
            .collect();
        let mut acc = Rational::zero();
        for n in partners {
            remaining.remove(&n);
            acc += g.dimer_weight(v, n) * rec(g, remaining);
            remaining.insert(n);
        }
        remaining.insert(v);
        acc
    }
}

/// Finite-fugacity correlation of a set of sites: the weighted fraction of
/// coverings with monomers in `region` whose monomer set contains all the
/// sites, both sides evaluated at fugacity `z`.
pub fn fugacity_correlation(
    g: &PlanarGraph,
    region: &MonomerRegion,
    sites: &[VertexId],
    z: &Rational,
) -> Result<Rational> {
    for &v in sites {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let site_set: BTreeSet<VertexId> = sites.iter().copied().collect();
    let mut total = Rational::zero();
    let mut matched = Rational::zero();
    visit_coverings(g, region, &mut |m, d| {
        let c = Covering {
            monomers: m.clone(),
            dimers: d.clone(),
        };
        let (w, power) = c.weight(g);
        let w = w * num::pow::pow(z.clone(), power);
        if site_set.is_subset(m) {
            matched += &w;
        }
        total += w;
    })?;
    if total.is_zero() {
        return Err(Error::NoCoveringExists);
    }
    Ok(matched / total)
}

/// Zero-fugacity correlation of a set of sites: the perfect-matching sum of
/// the graph with the sites deleted, divided by the full perfect-matching
/// sum.
pub fn matching_correlation(g: &PlanarGraph, sites: &[VertexId]) -> Result<Rational> {
    let excluded: BTreeSet<VertexId> = sites.iter().copied().collect();
    if excluded.len() != sites.len() {
        return Err(Error::InvalidInput("repeated correlation site".into()));
    }
    let denom = perfect_matching_sum(g, &BTreeSet::new())?;
    if denom.is_zero() {
        return Err(Error::NoPerfectMatching);
    }
    Ok(perfect_matching_sum(g, &excluded)? / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::testutil::{grid, polygon, square, square_with_diagonal};

    fn zpoly(pairs: &[(i32, i64)]) -> SparsePoly {
        let ring = PolyRing::univariate("z");
        let mut acc = SparsePoly::zero(&ring);
        for &(k, c) in pairs {
            acc = acc.add(&SparsePoly::monomial(&ring, 0, 2 * k, rat_i(c)));
        }
        acc
    }

    #[test]
    fn square_boundary_partition() {
        let g = square();
        let p = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        assert_eq!(p, zpoly(&[(4, 1), (2, 4), (0, 2)]));
        // every vertex is on the boundary, so the regions agree
        let q = enumerate_partition(&g, &MonomerRegion::All).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn diagonal_square_partition_and_counts() {
        let g = square_with_diagonal();
        let p = enumerate_partition(&g, &MonomerRegion::All).unwrap();
        assert_eq!(p, zpoly(&[(4, 1), (2, 5), (0, 2)]));
        let coverings = enumerate_coverings(&g, &MonomerRegion::All).unwrap();
        assert_eq!(coverings.len(), 8);
    }

    #[test]
    fn weighted_square_partition() {
        let mut g = square();
        g.set_dimer_weight(1, 2, rat_i(3)).unwrap();
        g.set_monomer_weight(3, rat_i(2)).unwrap();
        let p = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        assert_eq!(p, zpoly(&[(4, 2), (2, 10), (0, 4)]));
    }

    #[test]
    fn interior_vertex_blocks_high_powers() {
        let g = grid(3, 3);
        let p = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        // the center vertex is never a monomer: no z^9, and since a
        // covering of the other 8 with the center dimer-covered uses an odd
        // number of monomers, only odd powers appear
        let map = p.exponent_map().unwrap();
        for (e, _) in &map {
            let k: i32 = e.parse().unwrap();
            assert!(k % 2 == 1 && k <= 7, "unexpected power {k}");
        }
        // 3 x 3 has no perfect matching and no all-monomer boundary covering
        assert!(perfect_matching_sum(&g, &BTreeSet::new())
            .unwrap()
            .is_zero());
        let all = enumerate_partition(&g, &MonomerRegion::All).unwrap();
        assert_ne!(p, all);
    }

    #[test]
    fn fixed_region_counts() {
        let g = square();
        assert_eq!(
            count_fixed_monomers(&g, &BTreeSet::from([1, 2])).unwrap(),
            1
        );
        assert_eq!(
            count_fixed_monomers(&g, &BTreeSet::from([1, 3])).unwrap(),
            0
        );
        assert_eq!(count_fixed_monomers(&g, &BTreeSet::new()).unwrap(), 2);
        let coverings =
            enumerate_coverings(&g, &MonomerRegion::Fixed(BTreeSet::from([1, 2]))).unwrap();
        assert_eq!(coverings.len(), 1);
        assert_eq!(coverings[0].monomers, BTreeSet::from([1, 2]));
        assert_eq!(coverings[0].dimers, BTreeSet::from([(3, 4)]));
    }

    #[test]
    fn matching_sums_and_correlations() {
        let mut g = square();
        g.set_dimer_weight(1, 2, rat_i(3)).unwrap();
        g.set_dimer_weight(3, 4, rat_i(5)).unwrap();
        // matchings: {12, 34} and {23, 41}
        assert_eq!(
            perfect_matching_sum(&g, &BTreeSet::new()).unwrap(),
            rat_i(16)
        );
        assert_eq!(
            perfect_matching_sum(&g, &BTreeSet::from([1, 2])).unwrap(),
            rat_i(5)
        );
        assert_eq!(
            perfect_matching_sum(&g, &BTreeSet::from([1, 3])).unwrap(),
            rat_i(0)
        );
        assert_eq!(
            matching_correlation(&g, &[1, 2]).unwrap(),
            rat(5, 16)
        );
    }

    #[test]
    fn fugacity_correlations_on_diagonal_square() {
        let g = square_with_diagonal();
        let one = rat_i(1);
        let all = MonomerRegion::All;
        assert_eq!(fugacity_correlation(&g, &all, &[], &one).unwrap(), rat_i(1));
        assert_eq!(
            fugacity_correlation(&g, &all, &[1], &one).unwrap(),
            rat(3, 8)
        );
        assert_eq!(
            fugacity_correlation(&g, &all, &[1, 3], &one).unwrap(),
            rat(1, 8)
        );
        assert_eq!(
            fugacity_correlation(&g, &all, &[1, 2], &one).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            fugacity_correlation(&g, &all, &[1, 2, 3, 4], &one).unwrap(),
            rat(1, 8)
        );
    }

    #[test]
    fn polygon_partitions() {
        // hexagon: monomer-dimer coverings of a 6-cycle
        let g = polygon(6);
        let p = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        // z^6 + 6 z^4 + 9 z^2 + 2: Lucas-style count for cycles
        assert_eq!(p, zpoly(&[(6, 1), (4, 6), (2, 9), (0, 2)]));
    }

    #[test]
    fn oracle_cap_enforced() {
        let g = grid(6, 3);
        assert!(matches!(
            enumerate_partition(&g, &MonomerRegion::All),
            Err(Error::TooLarge(_))
        ));
    }
}
