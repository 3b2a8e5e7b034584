//! The K-theory pipeline: from a commuting adjacency pair to
//! `K_0 = K_1 = tors(coker(1 - M_a^T, 1 - M_b^T)) + Z^(r0 + r1)` and the
//! order of the identity class, plus the closed-form values for complete
//! bipartite graphs and the comparison between the two.

use crate::adjacency::{
    build_pair, check_commute, check_no_sources, check_symmetric, check_uce,
    check_unambiguous_factorization, AdjacencyError, AdjacencyMatrix, SystemKind,
};
use crate::graph::BipartiteGraph;
use crate::group::FgAbelianGroup;
use crate::linalg::{block_right, cokernel, element_order_in_cokernel, IntMatrix, Order};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KTheoryError {
    #[error("2-rank axiom check failed: {check}")]
    AxiomFailed { check: &'static str },
    #[error(transparent)]
    Adjacency(#[from] AdjacencyError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredictError {
    #[error("closed forms apply to complete bipartite graphs only")]
    NotComplete,
    #[error("closed forms need alpha, beta >= 2, got ({alpha}, {beta})")]
    SideTooSmall { alpha: u32, beta: u32 },
}

/// Computed K-theory of a 2-rank graph given by an adjacency pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryResult {
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    /// Order of the all-ones class in the transposed-block cokernel.
    pub identity_order: Order,
    /// `coker(1 - M_a^T, 1 - M_b^T)`.
    pub cokernel: FgAbelianGroup,
    /// `coker(1 - M_a, 1 - M_b)`; for symmetric pairs it coincides with
    /// `cokernel`, and the two are computed independently on purpose.
    pub cokernel_untransposed: FgAbelianGroup,
}

/// `(1 - M_a^T | 1 - M_b^T)` or its untransposed sibling, over the integers.
fn evans_block(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix, transpose: bool) -> IntMatrix {
    let n = m1.dim();
    let part = |m: &AdjacencyMatrix| {
        IntMatrix::from_fn(n, n, |i, j| {
            let e = if transpose { m.entry(j, i) } else { m.entry(i, j) };
            BigInt::from(i64::from(i == j) - i64::from(e))
        })
    };
    block_right(&part(m1), &part(m2))
}

/// K-groups and identity order for the 2-rank graph with vertex matrices
/// `(m1, m2)`.
///
/// Refuses inputs that fail the no-sources or commutation checks, since the
/// cokernel formula assumes a row-finite 2-graph with no sources. `K_1` is
/// computed from the untransposed block rather than copied from `K_0`, so
/// their equality is evidence rather than an assumption.
pub fn compute_k(
    m1: &AdjacencyMatrix,
    m2: &AdjacencyMatrix,
) -> Result<KTheoryResult, KTheoryError> {
    if !check_no_sources(m1, m2) {
        return Err(KTheoryError::AxiomFailed { check: "no_sources" });
    }
    if !check_commute(m1, m2)? {
        return Err(KTheoryError::AxiomFailed { check: "commute" });
    }
    let block_t = evans_block(m1, m2, true);
    let block = evans_block(m1, m2, false);
    let coker_t = cokernel(&block_t);
    let coker = cokernel(&block);
    let free = FgAbelianGroup::free(coker_t.free_rank() + coker.free_rank());
    let ones = vec![BigInt::from(1); m1.dim()];
    Ok(KTheoryResult {
        k0: coker_t.torsion().direct_sum(&free),
        k1: coker.torsion().direct_sum(&free),
        identity_order: element_order_in_cokernel(&block_t, &ones),
        cokernel: coker_t,
        cokernel_untransposed: coker,
    })
}

/// Closed-form K-group and identity-class order for a complete bipartite
/// graph, where stated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub kind: SystemKind,
    pub k_group: FgAbelianGroup,
    /// `None` when no closed form is stated (alpha or beta below 3).
    pub identity_order: Option<u64>,
}

fn repeat(modulus: u64, count: u64) -> impl Iterator<Item = u64> {
    std::iter::repeat(modulus).take(count as usize)
}

/// Pointed tile K-group for `kappa(a+2, b+2)`, `a <= b`.
fn pointed_tile_k(a: u64, b: u64) -> FgAbelianGroup {
    if a == 0 && b == 0 {
        return FgAbelianGroup::free(8);
    }
    if a <= 1 {
        // (Z/b)^2 + Z^{4(b+1)}
        let moduli = if b >= 2 { vec![b, b] } else { vec![] };
        return FgAbelianGroup::from_summands(moduli, (4 * (b + 1)) as usize).unwrap();
    }
    let g = a.gcd(&b);
    let l = a / g * b;
    let mut moduli: Vec<u64> = repeat(a, b - a).collect();
    if g == 1 {
        moduli.extend(repeat(a * b, a + 1));
    } else {
        moduli.extend(repeat(l, a + 1));
        moduli.extend(repeat(g, a + 2));
    }
    FgAbelianGroup::from_summands(moduli, (2 * (a + 1) * (b + 1)) as usize).unwrap()
}

/// Unpointed tile K-group for `kappa(a+2, b+2)`, `a <= b`; t-independent, so
/// it also covers unpointed 2t-gon systems.
fn unpointed_tile_k(a: u64, b: u64) -> FgAbelianGroup {
    if a == 0 && b == 0 {
        return FgAbelianGroup::free(2);
    }
    let mut moduli: Vec<u64>;
    if a == 0 {
        moduli = repeat(2, b).collect();
        moduli.push(2 * b);
    } else {
        moduli = repeat(2, (a + 1) * (b + 1) - 1).collect();
        moduli.push(2 * a.gcd(&b));
    }
    FgAbelianGroup::from_summands(moduli, 0).unwrap()
}

/// Opposite-orientation (star) K-group for `kappa(a+2, b+2)`, any `t >= 1`.
fn star_k(a: u64, b: u64, t: u64) -> FgAbelianGroup {
    if a == 0 && b == 0 {
        return FgAbelianGroup::free((4 * t) as usize);
    }
    let g = a.gcd(&b);
    let rank = (2 * t * (a + 1) * (b + 1)) as usize;
    if g <= 1 {
        FgAbelianGroup::free(rank)
    } else {
        FgAbelianGroup::from_summands(repeat(g, t), rank).unwrap()
    }
}

/// The closed-form prediction for a complete bipartite graph. The theorems
/// take `alpha <= beta`, so the sides are swapped internally when needed.
pub fn predict(g: &BipartiteGraph, kind: SystemKind) -> Result<Prediction, PredictError> {
    if !g.is_complete() {
        return Err(PredictError::NotComplete);
    }
    let lo = g.alpha().min(g.beta());
    let hi = g.alpha().max(g.beta());
    if lo < 2 {
        return Err(PredictError::SideTooSmall {
            alpha: g.alpha(),
            beta: g.beta(),
        });
    }
    let a = u64::from(lo) - 2;
    let b = u64::from(hi) - 2;
    let k_group = match kind {
        SystemKind::PointedTile => pointed_tile_k(a, b),
        SystemKind::PointedReflect { t } => pointed_tile_k(a, b).power(t as usize / 2),
        SystemKind::UnpointedTile | SystemKind::UnpointedPolygon { .. } => unpointed_tile_k(a, b),
        SystemKind::PointedStar { t } => star_k(a, b, u64::from(t)),
    };
    let identity_order = if lo >= 3 {
        let g0 = a.gcd(&b);
        Some(if kind.is_pointed() {
            g0
        } else if g0 % 2 == 0 {
            g0 / 2
        } else {
            g0
        })
    } else {
        None
    };
    Ok(Prediction {
        kind,
        k_group,
        identity_order,
    })
}

/// Outcomes of the five structural checks on an adjacency pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomChecks {
    pub symmetric: bool,
    pub commute: bool,
    pub uce: bool,
    pub no_sources: bool,
    pub factorization: bool,
}

impl AxiomChecks {
    pub fn run(m1: &AdjacencyMatrix, m2: &AdjacencyMatrix) -> Result<Self, AdjacencyError> {
        Ok(AxiomChecks {
            symmetric: check_symmetric(m1) && check_symmetric(m2),
            commute: check_commute(m1, m2)?,
            uce: check_uce(m1, m2)?,
            no_sources: check_no_sources(m1, m2),
            factorization: check_unambiguous_factorization(m1, m2)?,
        })
    }

    pub fn all_pass(&self) -> bool {
        self.symmetric && self.commute && self.uce && self.no_sources && self.factorization
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphInfo {
    pub alpha: u32,
    pub beta: u32,
    pub edges: usize,
    pub complete: bool,
}

impl GraphInfo {
    pub fn of(g: &BipartiteGraph) -> Self {
        GraphInfo {
            alpha: g.alpha(),
            beta: g.beta(),
            edges: g.edge_count(),
            complete: g.is_complete(),
        }
    }
}

/// Everything one run produces: check outcomes, the computed K-group, the
/// prediction when one is stated, and the match verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub graph: GraphInfo,
    pub kind: &'static str,
    pub t: u32,
    pub checks: AxiomChecks,
    /// Computed `K_0` (equal to `K_1` for all systems built here).
    pub computed: FgAbelianGroup,
    pub predicted: Option<FgAbelianGroup>,
    pub identity_order_computed: Order,
    pub identity_order_predicted: Option<u64>,
    #[serde(rename = "match")]
    pub matched: bool,
}

/// Build, check, compute and compare in one sweep cell.
///
/// A missing prediction (non-complete graph, sides below 2, identity order
/// outside its stated range) leaves the corresponding comparison vacuous; a
/// mismatch is a report entry, not an error.
pub fn verify(g: &BipartiteGraph, kind: SystemKind) -> Result<VerificationReport, KTheoryError> {
    let (m1, m2) = build_pair(g, kind)?;
    let checks = AxiomChecks::run(&m1, &m2)?;
    let kt = compute_k(&m1, &m2)?;
    let prediction = predict(g, kind).ok();
    let (predicted, identity_order_predicted) = match prediction {
        Some(p) => (Some(p.k_group), p.identity_order),
        None => (None, None),
    };
    let group_ok = predicted.as_ref().map_or(true, |p| *p == kt.k0);
    let order_ok = identity_order_predicted
        .map_or(true, |p| kt.identity_order == Order::finite_u64(p));
    Ok(VerificationReport {
        graph: GraphInfo::of(g),
        kind: kind.cli_name(),
        t: kind.t(),
        checks,
        computed: kt.k0,
        predicted,
        identity_order_computed: kt.identity_order,
        identity_order_predicted,
        matched: group_ok && order_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kappa(a: u32, b: u32) -> BipartiteGraph {
        BipartiteGraph::complete(a, b).unwrap()
    }

    fn group(moduli: &[u64], rank: usize) -> FgAbelianGroup {
        FgAbelianGroup::from_summands(moduli.iter().copied(), rank).unwrap()
    }

    fn compute(g: &BipartiteGraph, kind: SystemKind) -> KTheoryResult {
        let (m1, m2) = build_pair(g, kind).unwrap();
        compute_k(&m1, &m2).unwrap()
    }

    #[test]
    fn pointed_2_2_is_z8_with_free_identity() {
        let kt = compute(&kappa(2, 2), SystemKind::PointedTile);
        assert_eq!(kt.k0, FgAbelianGroup::free(8));
        assert_eq!(kt.k1, FgAbelianGroup::free(8));
        assert_eq!(kt.cokernel, FgAbelianGroup::free(4));
        assert_eq!(kt.identity_order, Order::Infinite);
    }

    #[test]
    fn pointed_4_5() {
        let kt = compute(&kappa(4, 5), SystemKind::PointedTile);
        assert_eq!(kt.k0, group(&[2, 6, 6, 6], 24));
        assert_eq!(kt.k0, kt.k1);
        // gcd(2, 3) = 1: the identity class vanishes
        assert_eq!(kt.identity_order, Order::finite_u64(1));
    }

    #[test]
    fn unpointed_3_3() {
        let kt = compute(&kappa(3, 3), SystemKind::UnpointedTile);
        assert_eq!(kt.k0, group(&[2, 2, 2, 2], 0));
    }

    #[test]
    fn identity_orders_follow_the_all_ones_class() {
        // the all-ones vector is (alpha * beta) times the sum of the base
        // forms, so its order is g / gcd(g, 4), not g itself; kappa(5,5) has
        // odd g and the two agree, kappa(4,6) has g = 2 and they differ
        let kt = compute(&kappa(5, 5), SystemKind::PointedTile);
        assert_eq!(kt.identity_order, Order::finite_u64(3));
        let kt = compute(&kappa(4, 6), SystemKind::PointedTile);
        assert_eq!(kt.identity_order, Order::finite_u64(1));
        let r = verify(&kappa(4, 6), SystemKind::PointedTile).unwrap();
        assert_eq!(r.identity_order_predicted, Some(2));
        assert!(!r.matched, "stated order g disagrees with the all-ones class");
        // unpointed systems sum every generator once and the stated parity
        // rule holds on the nose
        let kt = compute(&kappa(6, 6), SystemKind::UnpointedTile);
        assert_eq!(kt.identity_order, Order::finite_u64(2));
        let r = verify(&kappa(6, 6), SystemKind::UnpointedTile).unwrap();
        assert!(r.matched);
    }

    #[test]
    fn k0_is_cokernel_plus_free_rank() {
        for (g, kind) in [
            (kappa(2, 2), SystemKind::PointedTile),
            (kappa(3, 4), SystemKind::UnpointedTile),
            (kappa(2, 3), SystemKind::PointedStar { t: 2 }),
        ] {
            let kt = compute(&g, kind);
            let expect = kt
                .cokernel
                .direct_sum(&FgAbelianGroup::free(kt.cokernel.free_rank()));
            assert_eq!(kt.k0, expect);
            assert_eq!(kt.cokernel, kt.cokernel_untransposed);
        }
    }

    #[test]
    fn compute_refuses_sources() {
        let path = BipartiteGraph::parse("bipartite 2 1\n1 1\n2 1\n").unwrap();
        let (m1, m2) = build_pair(&path, SystemKind::PointedTile).unwrap();
        assert_eq!(
            compute_k(&m1, &m2),
            Err(KTheoryError::AxiomFailed { check: "no_sources" })
        );
    }

    #[test]
    fn predict_pointed_cases() {
        // case (ii) with a = 0: (Z/1)^2 + Z^8
        let p = predict(&kappa(2, 3), SystemKind::PointedTile).unwrap();
        assert_eq!(p.k_group, FgAbelianGroup::free(8));
        assert_eq!(p.identity_order, None);
        // case (iii), coprime
        let p = predict(&kappa(4, 5), SystemKind::PointedTile).unwrap();
        assert_eq!(p.k_group, group(&[2, 6, 6, 6], 24));
        assert_eq!(p.identity_order, Some(1));
        // case (iv), not coprime: l = 4, g = 2
        let p = predict(&kappa(4, 6), SystemKind::PointedTile).unwrap();
        assert_eq!(p.k_group, group(&[2, 2, 4, 4, 4, 2, 2, 2, 2], 30));
        assert_eq!(p.identity_order, Some(2));
        // swapped sides give the same value
        assert_eq!(
            predict(&kappa(6, 4), SystemKind::PointedTile).unwrap().k_group,
            p.k_group
        );
    }

    #[test]
    fn predict_unpointed_cases() {
        let p = predict(&kappa(2, 2), SystemKind::UnpointedTile).unwrap();
        assert_eq!(p.k_group, FgAbelianGroup::free(2));
        let p = predict(&kappa(2, 4), SystemKind::UnpointedTile).unwrap();
        assert_eq!(p.k_group, group(&[2, 2, 4], 0));
        // parity rule for the identity class
        let p = predict(&kappa(4, 6), SystemKind::UnpointedTile).unwrap();
        assert_eq!(p.identity_order, Some(1));
        let p = predict(&kappa(5, 8), SystemKind::UnpointedPolygon { t: 3 }).unwrap();
        assert_eq!(p.identity_order, Some(3));
    }

    #[test]
    fn predict_star_cases() {
        let p = predict(&kappa(2, 2), SystemKind::PointedStar { t: 1 }).unwrap();
        assert_eq!(p.k_group, FgAbelianGroup::free(4));
        let p = predict(&kappa(4, 6), SystemKind::PointedStar { t: 3 }).unwrap();
        assert_eq!(p.k_group, group(&[2, 2, 2], 90));
        assert_eq!(p.identity_order, Some(2));
    }

    #[test]
    fn predict_rejects_out_of_scope() {
        let hexagon =
            BipartiteGraph::parse("bipartite 3 3\n1 1\n1 2\n2 2\n2 3\n3 3\n3 1\n").unwrap();
        assert!(!hexagon.is_complete());
        assert_eq!(
            predict(&hexagon, SystemKind::PointedTile),
            Err(PredictError::NotComplete)
        );
        assert_eq!(
            predict(&kappa(1, 4), SystemKind::PointedTile),
            Err(PredictError::SideTooSmall { alpha: 1, beta: 4 })
        );
        // kappa(2,1) is complete but below the theorem range
        let path = BipartiteGraph::parse("bipartite 2 1\n1 1\n2 1\n").unwrap();
        assert_eq!(
            predict(&path, SystemKind::PointedTile),
            Err(PredictError::SideTooSmall { alpha: 2, beta: 1 })
        );
    }

    #[test]
    fn verify_matches() {
        let r = verify(&kappa(2, 2), SystemKind::UnpointedTile).unwrap();
        assert!(r.matched);
        assert!(r.checks.all_pass());
        assert_eq!(r.computed, FgAbelianGroup::free(2));
        assert_eq!(r.predicted, Some(FgAbelianGroup::free(2)));

        let r = verify(&kappa(2, 4), SystemKind::UnpointedTile).unwrap();
        assert!(r.matched);
        assert_eq!(r.computed, group(&[2, 2, 4], 0));

        let r = verify(&kappa(2, 2), SystemKind::PointedReflect { t: 6 }).unwrap();
        assert!(r.matched);
        assert_eq!(r.computed, FgAbelianGroup::free(24));
    }

    #[test]
    fn verify_report_json_shape() {
        let r = verify(&kappa(2, 2), SystemKind::PointedTile).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["kind"], "pointed-tile");
        assert_eq!(j["t"], 2);
        assert_eq!(j["checks"]["uce"], true);
        assert_eq!(j["computed"]["free_rank"], 8);
        assert_eq!(j["identity_order_computed"], "infinite");
        assert_eq!(j["identity_order_predicted"], serde_json::Value::Null);
        assert_eq!(j["match"], true);
    }
}
