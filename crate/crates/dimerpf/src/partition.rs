//! Boundary monomer-dimer partition functions and monomer correlations,
//! computed exactly through Pfaffians.
//!
//! [`PfaffianContext`] reduces an input graph to enclosed form, builds an
//! admissible orientation with a normalized boundary labeling, and exposes:
//!
//! * [`PfaffianContext::partition`] — the boundary partition function as a
//!   polynomial in the monomer fugacity `z`, as the Pfaffian of the matrix
//!   combining signed dimer weights with the rank-style monomer terms;
//! * [`PfaffianContext::partition_bijection`] — the same polynomial from
//!   the auxiliary ring graph, whose perfect matchings count boundary
//!   coverings twice each;
//! * matching correlations at zero fugacity (sub-Pfaffian ratios, with the
//!   pairwise-Pfaffian reconstruction as a cross-check) and finite-fugacity
//!   site correlations via inclusion-exclusion over zeroed weights.
//!
//! All arithmetic is exact over the rationals.

use crate::embedding::{Orientation, PlanarGraph, VertexId};
use crate::error::{Error, Result};
use crate::kasteleyn::{
    build_auxiliary, covering_sign, direct_and_label, find_bmd_covering, lift_covering,
    AuxiliaryGamma, Labeling,
};
use crate::pfaffian::{
    pf_exact, pf_univariate, skew_inverse, sub_pfaffian, SkewPolyMatrix, SkewRationalMatrix,
};
use crate::poly::{PolyRing, SparsePoly};
use crate::reduce::{to_enclosed, EnclosedGraph};
use crate::scalar::{rat, rat_i, Rational};
use num::{One, Zero};
use std::collections::BTreeSet;

/// Name of the fugacity variable in returned polynomials.
pub const FUGACITY_VAR: &str = "z";

/// How to treat nonzero monomer weights on interior vertices, which the
/// boundary theory does not allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InteriorPolicy {
    /// Fail with [`Error::NonzeroInteriorMonomer`].
    #[default]
    Reject,
    /// Silently set interior monomer weights to zero.
    Zero,
}

/// An enclosed graph prepared for Pfaffian evaluation: admissibly
/// oriented, boundary-labeled, and sign-normalized.
#[derive(Debug, Clone)]
pub struct PfaffianContext {
    eg: EnclosedGraph,
    orientation: Orientation,
    labeling: Labeling,
}

impl PfaffianContext {
    pub fn new(g: &PlanarGraph, policy: InteriorPolicy) -> Result<Self> {
        let mut eg = to_enclosed(g)?;
        match policy {
            InteriorPolicy::Reject => {
                for v in eg.interior_vertices() {
                    if !eg.graph().monomer_weight(v).is_zero() {
                        return Err(Error::NonzeroInteriorMonomer(v));
                    }
                }
            }
            InteriorPolicy::Zero => eg.set_interior_monomers_zero()?,
        }
        let (orientation, labeling) = direct_and_label(&eg)?;
        Ok(PfaffianContext {
            eg,
            orientation,
            labeling,
        })
    }

    pub fn enclosed(&self) -> &EnclosedGraph {
        &self.eg
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    fn z_ring() -> std::sync::Arc<PolyRing> {
        PolyRing::univariate(FUGACITY_VAR)
    }

    /// Number of boundary vertices whose monomers carry a fugacity factor
    /// and a nonzero weight: the degree bound of the partition function.
    fn fugacity_degree(&self) -> i32 {
        let g = self.eg.graph();
        self.eg
            .boundary()
            .vertices()
            .iter()
            .filter(|&&v| !g.is_fugacity_exempt(v) && !g.monomer_weight(v).is_zero())
            .count() as i32
    }

    /// The full skew matrix: signed dimer weights plus the alternating
    /// monomer products `-(-1)^{i+j} l_i l_j z^{s_i+s_j}`, where `s` is
    /// zero for fugacity-exempt vertices and one otherwise.
    pub fn matrix(&self) -> Result<SkewPolyMatrix> {
        let ring = Self::z_ring();
        let g = self.eg.graph();
        let n = self.labeling.len();
        let mut m = SkewPolyMatrix::zeros(n, &ring);
        for i in 1..=n {
            let vi = self.labeling.vertex(i)?;
            let li = g.monomer_weight(vi);
            let si = i32::from(!g.is_fugacity_exempt(vi));
            for j in i + 1..=n {
                let vj = self.labeling.vertex(j)?;
                let mut entry = SparsePoly::zero(&ring);
                if g.has_edge(vi, vj) {
                    let d = g.dimer_weight(vi, vj);
                    let signed = if self.orientation.dominates(vi, vj)? {
                        d
                    } else {
                        -d
                    };
                    entry = entry.add(&SparsePoly::constant(&ring, signed));
                }
                let lj = g.monomer_weight(vj);
                if !li.is_zero() && !lj.is_zero() {
                    let sj = i32::from(!g.is_fugacity_exempt(vj));
                    let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
                    let c = &li * &lj * rat_i(sign);
                    entry = entry.add(&SparsePoly::monomial(&ring, 0, 2 * (si + sj), c));
                }
                m.set(i - 1, j - 1, entry);
            }
        }
        Ok(m)
    }

    /// The zero-fugacity matrix: signed dimer weights only.
    pub fn matching_matrix(&self) -> Result<SkewRationalMatrix> {
        let g = self.eg.graph();
        let n = self.labeling.len();
        let mut m = SkewRationalMatrix::zeros(n);
        for i in 1..=n {
            let vi = self.labeling.vertex(i)?;
            for j in i + 1..=n {
                let vj = self.labeling.vertex(j)?;
                if g.has_edge(vi, vj) {
                    let d = g.dimer_weight(vi, vj);
                    let signed = if self.orientation.dominates(vi, vj)? {
                        d
                    } else {
                        -d
                    };
                    m.set(i - 1, j - 1, signed);
                }
            }
        }
        Ok(m)
    }

    /// The matrix evaluated at a numeric fugacity, with the monomer
    /// weights of `zeroed` vertices forced to zero.
    fn numeric_matrix(
        &self,
        z: &Rational,
        zeroed: &BTreeSet<VertexId>,
    ) -> Result<SkewRationalMatrix> {
        let g = self.eg.graph();
        let n = self.labeling.len();
        let weight_at = |v: VertexId| -> Rational {
            if zeroed.contains(&v) {
                return Rational::zero();
            }
            let w = g.monomer_weight(v);
            if g.is_fugacity_exempt(v) {
                w
            } else {
                w * z
            }
        };
        let mut m = SkewRationalMatrix::zeros(n);
        for i in 1..=n {
            let vi = self.labeling.vertex(i)?;
            let wi = weight_at(vi);
            for j in i + 1..=n {
                let vj = self.labeling.vertex(j)?;
                let mut val = Rational::zero();
                if g.has_edge(vi, vj) {
                    let d = g.dimer_weight(vi, vj);
                    val += if self.orientation.dominates(vi, vj)? {
                        d
                    } else {
                        -d
                    };
                }
                let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
                val += &wi * weight_at(vj) * rat_i(sign);
                m.set(i - 1, j - 1, val);
            }
        }
        Ok(m)
    }

    /// Boundary partition function in the fugacity variable.
    pub fn partition(&self) -> Result<SparsePoly> {
        let m = self.matrix()?;
        pf_univariate(&m, Some(2 * self.fugacity_degree()))
    }

    /// Prepare the auxiliary ring graph for this context.
    pub fn auxiliary(&self) -> Result<AuxiliaryGamma> {
        build_auxiliary(&self.eg, &self.orientation, &self.labeling)
    }

    /// Skew matrix of the auxiliary ring graph: base dimer entries, ring
    /// entries of weight one, and connector entries carrying the boundary
    /// monomer weight with one fugacity factor (none when exempt).
    pub fn ring_matrix(&self, aux: &AuxiliaryGamma) -> Result<SkewPolyMatrix> {
        let ring = Self::z_ring();
        let gamma = aux.graph();
        let labels = aux.labels();
        let n = labels.len();
        let mut m = SkewPolyMatrix::zeros(n, &ring);
        for i in 0..n {
            let vi = labels[i];
            for j in i + 1..n {
                let vj = labels[j];
                if !gamma.has_edge(vi, vj) {
                    continue;
                }
                let w = gamma.dimer_weight(vi, vj);
                let signed = if aux.orientation().dominates(vi, vj)? {
                    w
                } else {
                    -w
                };
                let hu = match (aux.is_ring(vi), aux.is_ring(vj)) {
                    (false, true) if !gamma.is_fugacity_exempt(vi) => 2,
                    (true, false) if !gamma.is_fugacity_exempt(vj) => 2,
                    _ => 0,
                };
                m.set(i, j, SparsePoly::monomial(&ring, 0, hu, signed));
            }
        }
        Ok(m)
    }

    /// Boundary partition function through the ring graph: half the
    /// Pfaffian of its matching matrix, sign-fixed by one lifted covering.
    pub fn partition_bijection(&self) -> Result<SparsePoly> {
        let aux = self.auxiliary()?;
        let m = self.ring_matrix(&aux)?;
        let pf = pf_univariate(&m, Some(2 * self.fugacity_degree()))?;
        let sigma = match find_bmd_covering(&self.eg) {
            Some(cov) => {
                let lifted = lift_covering(&aux, &self.labeling, &cov, false)?;
                covering_sign(aux.orientation(), &aux.labeling(), &lifted)?
            }
            None => 1,
        };
        Ok(pf.scale(&rat(sigma.into(), 2)))
    }

    /// Validate correlation indices: distinct boundary labels, returned
    /// sorted ascending.
    fn validate_labels(&self, indices: &[usize]) -> Result<Vec<usize>> {
        let mut labels = Vec::with_capacity(indices.len());
        let mut seen = BTreeSet::new();
        for &l in indices {
            if !self.labeling.is_boundary_label(l) {
                return Err(Error::IndexOffBoundary(l));
            }
            if !seen.insert(l) {
                return Err(Error::InvalidInput(format!("index {l} listed twice")));
            }
            labels.push(l);
        }
        labels.sort_unstable();
        Ok(labels)
    }

    /// Zero-fugacity monomer correlation of an even number of boundary
    /// labels: the weighted fraction of perfect matchings that remain
    /// after deleting those vertices, as a sub-Pfaffian ratio.
    pub fn matching_correlation(&self, indices: &[usize]) -> Result<Rational> {
        let labels = self.validate_labels(indices)?;
        if labels.len() % 2 == 1 {
            return Err(Error::OddSubsetSize(labels.len()));
        }
        let a = self.matching_matrix()?;
        let denom = pf_exact(&a)?;
        if denom.is_zero() {
            return Err(Error::NoPerfectMatching);
        }
        let removed: Vec<usize> = labels.iter().map(|l| l - 1).collect();
        Ok(sub_pfaffian(&a, &removed)? / denom)
    }

    /// The same correlation rebuilt from pairwise values through the
    /// inverse matrix: the Pfaffian of `(-1)^{i+j} (a^{-1})_{ij}`
    /// restricted to the given labels, whose upper entries are exactly
    /// the pairwise correlations.
    pub fn wick_correlation(&self, indices: &[usize]) -> Result<Rational> {
        let labels = self.validate_labels(indices)?;
        if labels.len() % 2 == 1 {
            return Err(Error::OddSubsetSize(labels.len()));
        }
        let a = self.matching_matrix()?;
        if pf_exact(&a)?.is_zero() {
            return Err(Error::NoPerfectMatching);
        }
        let inv = skew_inverse(&a)?;
        let k = labels.len();
        let mut w = SkewRationalMatrix::zeros(k);
        for p in 0..k {
            for q in p + 1..k {
                let (i, j) = (labels[p], labels[q]);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                w.set(p, q, inv.get(i - 1, j - 1) * rat_i(sign));
            }
        }
        pf_exact(&w)
    }

    /// Pairwise zero-fugacity correlations of the given labels, as a
    /// matrix in input order.
    pub fn pair_correlation_matrix(&self, indices: &[usize]) -> Result<Vec<Vec<Rational>>> {
        let n = indices.len();
        let mut out = vec![vec![Rational::zero(); n]; n];
        for p in 0..n {
            for q in p + 1..n {
                let v = self.matching_correlation(&[indices[p], indices[q]])?;
                out[p][q] = v.clone();
                out[q][p] = v;
            }
        }
        Ok(out)
    }

    /// Finite-fugacity correlation of boundary labels: the weighted
    /// fraction of boundary coverings whose monomer set contains all the
    /// labeled vertices, computed by inclusion-exclusion over Pfaffians
    /// with individual monomer weights zeroed.  Odd counts are allowed.
    pub fn fugacity_correlation(&self, indices: &[usize], z: &Rational) -> Result<Rational> {
        let labels = self.validate_labels(indices)?;
        let denom = pf_exact(&self.numeric_matrix(z, &BTreeSet::new())?)?;
        if denom.is_zero() {
            return Err(Error::NoCoveringExists);
        }
        let vertices: Vec<VertexId> = labels
            .iter()
            .map(|&l| self.labeling.vertex(l))
            .collect::<Result<_>>()?;
        let k = vertices.len();
        let mut num = Rational::zero();
        for mask in 0..(1u32 << k) {
            let zeroed: BTreeSet<VertexId> = (0..k)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| vertices[b])
                .collect();
            let term = pf_exact(&self.numeric_matrix(z, &zeroed)?)?;
            if zeroed.len() % 2 == 0 {
                num += term;
            } else {
                num -= term;
            }
        }
        Ok(num / denom)
    }
}

/// Convenience wrapper: the boundary partition function of a graph.
pub fn boundary_partition(g: &PlanarGraph, policy: InteriorPolicy) -> Result<SparsePoly> {
    PfaffianContext::new(g, policy)?.partition()
}

/// Check that the two Pfaffian routes and (for small graphs) the direct
/// enumeration agree; used by the self-check command.
pub fn cross_check_partition(
    g: &PlanarGraph,
    policy: InteriorPolicy,
    against_oracle: bool,
) -> Result<SparsePoly> {
    let ctx = PfaffianContext::new(g, policy)?;
    let pf = ctx.partition()?;
    let bij = ctx.partition_bijection()?;
    if pf != bij {
        return Err(Error::InvalidInput(format!(
            "partition mismatch between methods: {} vs {}",
            pf.render(),
            bij.render()
        )));
    }
    if against_oracle {
        let oracle = crate::oracle::enumerate_partition(
            ctx.enclosed().graph(),
            &crate::oracle::MonomerRegion::Boundary,
        )?;
        if pf != oracle {
            return Err(Error::InvalidInput(format!(
                "partition mismatch against enumeration: {} vs {}",
                pf.render(),
                oracle.render()
            )));
        }
    }
    Ok(pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        enumerate_partition, fugacity_correlation, matching_correlation, MonomerRegion,
    };
    use crate::testutil::{grid, polygon, square, square_with_diagonal, unit_edges, unit_verts};

    fn zpoly(terms: &[(i32, i64)]) -> SparsePoly {
        let ring = PolyRing::univariate(FUGACITY_VAR);
        let mut p = SparsePoly::zero(&ring);
        for &(hu, c) in terms {
            p = p.add(&SparsePoly::monomial(&ring, 0, hu, rat_i(c)));
        }
        p
    }

    #[test]
    fn square_partition_both_methods() {
        let ctx = PfaffianContext::new(&square(), InteriorPolicy::Reject).unwrap();
        let expect = zpoly(&[(8, 1), (4, 4), (0, 2)]);
        assert_eq!(ctx.partition().unwrap(), expect);
        assert_eq!(ctx.partition_bijection().unwrap(), expect);
    }

    #[test]
    fn partition_matches_enumeration_after_reduction() {
        let path = PlanarGraph::from_coordinates(
            &unit_verts(&[(1, (0, 0)), (2, (1, 0)), (3, (2, 0))]),
            &unit_edges(&[(1, 2), (2, 3)]),
        )
        .unwrap();
        let two_segments = PlanarGraph::from_coordinates(
            &unit_verts(&[(1, (0, 0)), (2, (1, 0)), (3, (0, 2)), (4, (1, 2))]),
            &unit_edges(&[(1, 2), (3, 4)]),
        )
        .unwrap();
        let single_edge = PlanarGraph::from_coordinates(
            &unit_verts(&[(1, (0, 0)), (2, (1, 0))]),
            &unit_edges(&[(1, 2)]),
        )
        .unwrap();
        let bowtie = PlanarGraph::from_coordinates(
            &unit_verts(&[
                (1, (0, 0)),
                (2, (2, 0)),
                (3, (1, 1)),
                (4, (2, 2)),
                (5, (0, 2)),
            ]),
            &unit_edges(&[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)]),
        )
        .unwrap();
        for g in [
            path,
            two_segments,
            single_edge,
            bowtie,
            square(),
            square_with_diagonal(),
            polygon(5),
            polygon(6),
            grid(3, 3),
            grid(4, 3),
        ] {
            let expect = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
            let ctx = PfaffianContext::new(&g, InteriorPolicy::Zero).unwrap();
            assert_eq!(ctx.partition().unwrap(), expect, "pfaffian route");
            assert_eq!(ctx.partition_bijection().unwrap(), expect, "ring route");
        }
    }

    #[test]
    fn weighted_and_negative_weights_match_enumeration() {
        let mut g = square();
        g.set_dimer_weight(1, 2, rat(3, 2)).unwrap();
        g.set_dimer_weight(3, 4, rat_i(-2)).unwrap();
        g.set_monomer_weight(3, rat_i(2)).unwrap();
        g.set_monomer_weight(4, rat(1, 3)).unwrap();
        let expect = enumerate_partition(&g, &MonomerRegion::Boundary).unwrap();
        let ctx = PfaffianContext::new(&g, InteriorPolicy::Reject).unwrap();
        assert_eq!(ctx.partition().unwrap(), expect);
        assert_eq!(ctx.partition_bijection().unwrap(), expect);
    }

    #[test]
    fn interior_policy_is_enforced() {
        let mut g = grid(3, 4);
        g.set_monomer_weight(5, rat_i(1)).unwrap();
        let err = PfaffianContext::new(&g, InteriorPolicy::Reject).unwrap_err();
        assert!(matches!(err, Error::NonzeroInteriorMonomer(5)));
        let ctx = PfaffianContext::new(&g, InteriorPolicy::Zero).unwrap();
        let mut zeroed = g.clone();
        zeroed.set_monomer_weight(5, rat_i(0)).unwrap();
        let expect = enumerate_partition(&zeroed, &MonomerRegion::Boundary).unwrap();
        assert_eq!(ctx.partition().unwrap(), expect);
    }

    #[test]
    fn matching_correlations_match_enumeration() {
        for g in [square(), grid(4, 3)] {
            let ctx = PfaffianContext::new(&g, InteriorPolicy::Zero).unwrap();
            let base = ctx.enclosed().graph().clone();
            let b = ctx.labeling().boundary_len();
            assert_eq!(ctx.matching_correlation(&[]).unwrap(), rat_i(1));
            for i in 1..=b {
                for j in i + 1..=b {
                    let sites = [
                        ctx.labeling().vertex(i).unwrap(),
                        ctx.labeling().vertex(j).unwrap(),
                    ];
                    let expect = matching_correlation(&base, &sites).unwrap();
                    assert_eq!(
                        ctx.matching_correlation(&[i, j]).unwrap(),
                        expect,
                        "labels {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn pairwise_reconstruction_agrees_on_quadruples() {
        let ctx = PfaffianContext::new(&grid(4, 3), InteriorPolicy::Zero).unwrap();
        let n = ctx.labeling().boundary_len();
        let mut checked = 0;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let labels = [a, b, c, d];
                        let direct = ctx.matching_correlation(&labels).unwrap();
                        let rebuilt = ctx.wick_correlation(&labels).unwrap();
                        assert_eq!(direct, rebuilt, "labels {labels:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn bad_index_sets_are_rejected() {
        let ctx = PfaffianContext::new(&grid(3, 3), InteriorPolicy::Zero).unwrap();
        assert!(matches!(
            ctx.matching_correlation(&[1]),
            Err(Error::OddSubsetSize(1))
        ));
        assert!(matches!(
            ctx.wick_correlation(&[1, 2, 3]),
            Err(Error::OddSubsetSize(3))
        ));
        assert!(matches!(
            ctx.matching_correlation(&[1, 1]),
            Err(Error::InvalidInput(_))
        ));
        // the first interior label sits just past the boundary range
        let first_interior = ctx.labeling().boundary_len() + 1;
        assert!(ctx.labeling().len() >= first_interior);
        assert!(matches!(
            ctx.matching_correlation(&[1, first_interior]),
            Err(Error::IndexOffBoundary(_))
        ));
        assert!(matches!(
            ctx.fugacity_correlation(&[42], &rat_i(1)),
            Err(Error::IndexOffBoundary(42))
        ));
    }

    #[test]
    fn no_perfect_matching_is_reported() {
        // a path reduces to a triangle with a pad; every perfect matching
        // uses a weight-zero edge, so the matching sum vanishes
        let path = PlanarGraph::from_coordinates(
            &unit_verts(&[(1, (0, 0)), (2, (1, 0)), (3, (2, 0))]),
            &unit_edges(&[(1, 2), (2, 3)]),
        )
        .unwrap();
        let ctx = PfaffianContext::new(&path, InteriorPolicy::Reject).unwrap();
        assert!(matches!(
            ctx.matching_correlation(&[1, 2]),
            Err(Error::NoPerfectMatching)
        ));
    }

    #[test]
    fn fugacity_correlations_match_enumeration() {
        let g = square_with_diagonal();
        let ctx = PfaffianContext::new(&g, InteriorPolicy::Reject).unwrap();
        let one = rat_i(1);
        assert_eq!(ctx.fugacity_correlation(&[], &one).unwrap(), rat_i(1));
        assert_eq!(ctx.fugacity_correlation(&[1], &one).unwrap(), rat(3, 8));
        assert_eq!(ctx.fugacity_correlation(&[1, 3], &one).unwrap(), rat(1, 8));
        assert_eq!(ctx.fugacity_correlation(&[1, 2], &one).unwrap(), rat(1, 4));
        assert_eq!(
            ctx.fugacity_correlation(&[1, 2, 3, 4], &one).unwrap(),
            rat(1, 8)
        );
        // a graph with interior: compare against boundary-region enumeration
        let g = grid(4, 3);
        let ctx = PfaffianContext::new(&g, InteriorPolicy::Zero).unwrap();
        let base = ctx.enclosed().graph().clone();
        let z = rat(2, 3);
        for labels in [vec![1], vec![1, 4], vec![2, 3], vec![1, 2, 4, 9]] {
            let sites: Vec<VertexId> = labels
                .iter()
                .map(|&l| ctx.labeling().vertex(l).unwrap())
                .collect();
            let expect =
                fugacity_correlation(&base, &MonomerRegion::Boundary, &sites, &z).unwrap();
            assert_eq!(
                ctx.fugacity_correlation(&labels, &z).unwrap(),
                expect,
                "labels {labels:?}"
            );
        }
    }

    #[test]
    fn finite_fugacity_breaks_the_pairwise_reconstruction() {
        // at close packing the four-point correlation equals the Pfaffian
        // of its pairwise matrix; away from close packing it does not
        let ctx = PfaffianContext::new(&square_with_diagonal(), InteriorPolicy::Reject).unwrap();
        let one = rat_i(1);
        let labels = [1, 2, 3, 4];
        let pairs = |z: &Rational| -> SkewRationalMatrix {
            let mut w = SkewRationalMatrix::zeros(4);
            for p in 0..4 {
                for q in p + 1..4 {
                    let v = ctx
                        .fugacity_correlation(&[labels[p], labels[q]], z)
                        .unwrap();
                    w.set(p, q, v);
                }
            }
            w
        };
        let four = ctx.fugacity_correlation(&labels, &one).unwrap();
        assert_eq!(four, rat(1, 8));
        let rebuilt = pf_exact(&pairs(&one)).unwrap();
        assert_eq!(rebuilt, rat(3, 32));
        assert_ne!(four, rebuilt);
    }

    #[test]
    fn cross_check_passes_on_small_graphs() {
        for g in [square(), polygon(6), grid(3, 3)] {
            cross_check_partition(&g, InteriorPolicy::Zero, true).unwrap();
        }
    }
}
