//! Structural and polynomial identities of a split.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{swap_move_diagrams, MurasugiSplit, SplitContext, Summand};
use crate::dimer::{
    default_segment, enumerate_matchings, graph_sum, matching_weight, state_sum_with, FcGraph, Tally,
};
use crate::error::{Error, Result};
use crate::laurent::{is_noncanceling_sum, LaurentPoly, Monomial};
use crate::linkdiag::{CircleType, Corner, CrossingId, RegionId, Side};

/// `G_{L,i}` minus its flock edges against the union of the summand graphs.
pub fn verify_flock_deletion(ctx: &SplitContext) -> Result<bool> {
    let reduced = ctx.graph.without_edges(&ctx.split.flock_corners());
    let prime = ctx.split.prime.graph_in_l(ctx.diagram, &ctx.rule)?;
    let double = ctx.split.double.graph_in_l(ctx.diagram, &ctx.rule)?;
    Ok(reduced.same_structure(&prime.disjoint_union(&double)))
}

fn side_vertices(ctx: &SplitContext, side: Side) -> (BTreeSet<CrossingId>, BTreeSet<RegionId>) {
    let s = &ctx.split;
    let l = s.length;
    let black = s.crossings_on(ctx.diagram, side);
    let (own, far) = match side {
        Side::Prime => (&s.r_prime, &s.r_double),
        Side::DoublePrime => (&s.r_double, &s.r_prime),
    };
    // Bridge regions that move to the other summand: r'_1..r'_{l-1} leave
    // the R' part, r''_2..r''_l leave the R'' part.
    let (own_moving, far_moving): (Vec<RegionId>, Vec<RegionId>) = match side {
        Side::Prime => (own[..l - 1].to_vec(), far[1..].to_vec()),
        Side::DoublePrime => (own[1..].to_vec(), far[..l - 1].to_vec()),
    };
    let mut white: BTreeSet<RegionId> = s.sides.regions_on(side).into_iter().collect();
    for r in own_moving {
        white.remove(&r);
    }
    white.extend(far_moving);
    (black, white)
}

/// The two pieces left after deleting every non-flock edge at a bridge
/// region: the first carries the `R'` crossings, the second the `R''` ones.
pub fn build_tilde_graphs(ctx: &SplitContext) -> Result<(FcGraph, FcGraph)> {
    let s = &ctx.split;
    if s.length < 2 {
        return Err(Error::Length { required: 2, found: s.length });
    }
    let flock = s.flock_corners();
    let bridges = s.bridge_regions();
    let drop: BTreeSet<Corner> = ctx
        .graph
        .edges
        .iter()
        .filter(|e| bridges.contains(&e.white) && !flock.contains(&e.corner()))
        .map(|e| e.corner())
        .collect();
    let pruned = ctx.graph.without_edges(&drop);
    let (b1, w1) = side_vertices(ctx, Side::Prime);
    let (b2, w2) = side_vertices(ctx, Side::DoublePrime);
    let g1 = pruned.induced(&b1, &w1);
    let g2 = pruned.induced(&b2, &w2);
    if g1.edges.len() + g2.edges.len() != pruned.edges.len()
        || g1.black.len() + g2.black.len() != pruned.black.len()
        || g1.white.len() + g2.white.len() != pruned.white.len()
    {
        return Err(Error::Internal("pruned graph does not fall apart into the two expected pieces".into()));
    }
    Ok((g1, g2))
}

/// The swap-move diagrams' truncated graphs, translated into `L`, against
/// the subgraph construction.
pub fn verify_swap_graphs(ctx: &SplitContext, tilde: &(FcGraph, FcGraph), swaps: &(Summand, Summand)) -> Result<bool> {
    let a = swaps.0.graph_in_l(ctx.diagram, &ctx.rule)?;
    let b = swaps.1.graph_in_l(ctx.diagram, &ctx.rule)?;
    Ok(a.same_structure(&tilde.0) && b.same_structure(&tilde.1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandStructure {
    pub flock_weights_one: bool,
    pub circle_is_t1_in_summands: bool,
    pub other_t2_circles_distributed: bool,
    /// `None` when `L` is not alternating.
    pub summands_alternating: Option<bool>,
    pub tilde_alternating: Option<bool>,
    pub tilde_t2_counts_match: Option<bool>,
}

impl SummandStructure {
    pub fn holds(&self) -> bool {
        self.flock_weights_one
            && self.circle_is_t1_in_summands
            && self.other_t2_circles_distributed
            && self.summands_alternating != Some(false)
            && self.tilde_alternating != Some(false)
            && self.tilde_t2_counts_match != Some(false)
    }
}

/// Flock weights, the fate of `C` and the other circles, and preservation
/// of alternation. `swaps` is given when the length is at least 2.
pub fn verify_tilde_structure(ctx: &SplitContext, swaps: Option<&(Summand, Summand)>) -> Result<SummandStructure> {
    let s = &ctx.split;
    let flock = s.flock_corners();
    let flock_weights_one = ctx
        .graph
        .edges
        .iter()
        .filter(|e| flock.contains(&e.corner()))
        .all(|e| e.weight == Monomial::ONE)
        && ctx.graph.edges.iter().filter(|e| flock.contains(&e.corner())).count() == flock.len();

    let t1_in = |m: &Summand| -> Result<bool> {
        let id = m.circle.ok_or_else(|| Error::Internal("summand lost the splitting circle".into()))?;
        Ok(m.diagram.circle_type(m.diagram.circle(id)?) == CircleType::T1)
    };
    let circle_is_t1_in_summands = t1_in(&s.prime)? && t1_in(&s.double)?;
    let t2 = |m: &Summand| m.diagram.t2_circles().len();
    let other_t2_circles_distributed = t2(&s.prime) + t2(&s.double) + 1 == ctx.diagram.t2_circles().len();

    let alternating = ctx.diagram.is_alternating();
    let summands_alternating =
        alternating.then(|| s.prime.diagram.is_alternating() && s.double.diagram.is_alternating());
    let (tilde_alternating, tilde_t2_counts_match) = match swaps {
        Some((a, b)) => (
            alternating.then(|| a.diagram.is_alternating() && b.diagram.is_alternating()),
            Some(t2(a) == t2(&s.prime) && t2(b) == t2(&s.double)),
        ),
        None => (None, None),
    };
    Ok(SummandStructure {
        flock_weights_one,
        circle_is_t1_in_summands,
        other_t2_circles_distributed,
        summands_alternating,
        tilde_alternating,
        tilde_t2_counts_match,
    })
}

pub(super) fn flock_counts(s: &MurasugiSplit, g: &FcGraph, edges: &[usize]) -> (usize, usize, Vec<usize>) {
    let by_corner: BTreeMap<Corner, (usize, Side)> = s.flock.iter().map(|f| (f.corner, (f.number, f.side))).collect();
    let mut prime = 0;
    let mut double = 0;
    let mut used = Vec::new();
    for &k in edges {
        if let Some(&(number, side)) = by_corner.get(&g.edges[k].corner()) {
            used.push(number);
            match side {
                Side::Prime => prime += 1,
                Side::DoublePrime => double += 1,
            }
        }
    }
    used.sort_unstable();
    (prime, double, used)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlockParity {
    pub holds: bool,
    /// Total flock edges used, mapped to the number of matchings.
    pub histogram: BTreeMap<usize, u64>,
}

/// Every matching uses as many flock edges at `r'` regions as at `r''`
/// regions.
pub fn flock_parity_check(ctx: &SplitContext) -> Result<FlockParity> {
    let mut histogram = BTreeMap::new();
    let mut holds = true;
    enumerate_matchings(&ctx.graph, &ctx.caps, |edges| {
        let (p, d, _) = flock_counts(&ctx.split, &ctx.graph, edges);
        holds &= p == d;
        *histogram.entry(p + d).or_insert(0u64) += 1;
        Ok(())
    })?;
    Ok(FlockParity { holds, histogram })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub length: usize,
    /// Matchings using no flock edge.
    pub p0: LaurentPoly,
    /// Matchings using all `2(l-1)` flock edge slots.
    pub pmax: LaurentPoly,
    pub remainder: LaurentPoly,
    /// The full state sum at the chosen segment.
    pub delta: LaurentPoly,
    /// State sum recomputed from the default segment.
    pub delta_check: LaurentPoly,
    pub delta_prime: LaurentPoly,
    pub delta_double: LaurentPoly,
    pub delta_tilde_prime: LaurentPoly,
    pub delta_tilde_double: LaurentPoly,
    pub parity: FlockParity,
    pub p0_is_summand_product: bool,
    pub pmax_is_tilde_product: bool,
    pub strata_sum_to_delta: bool,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.parity.holds && self.p0_is_summand_product && self.pmax_is_tilde_product && self.strata_sum_to_delta
    }
}

pub(super) fn summand_sum(ctx: &SplitContext, m: &Summand) -> Result<LaurentPoly> {
    state_sum_with(&m.diagram, m.segment, &ctx.rule, &ctx.caps)
}

/// Splits the state sum of `G_{L,i}` into flock strata and compares each
/// extreme stratum with the product computed from the summands.
pub fn decompose_state_sum(ctx: &SplitContext) -> Result<Decomposition> {
    let s = &ctx.split;
    if s.length < 2 {
        return Err(Error::Length { required: 2, found: s.length });
    }
    let top = 2 * (s.length - 1);
    let (mut p0, mut pmax, mut rest) = (Tally::default(), Tally::default(), Tally::default());
    let mut histogram = BTreeMap::new();
    let mut holds = true;
    enumerate_matchings(&ctx.graph, &ctx.caps, |edges| {
        let (p, d, _) = flock_counts(s, &ctx.graph, edges);
        holds &= p == d;
        *histogram.entry(p + d).or_insert(0u64) += 1;
        let w = matching_weight(&ctx.graph, edges);
        match p + d {
            0 => p0.add(w),
            k if k == top => pmax.add(w),
            _ => rest.add(w),
        }
        Ok(())
    })?;
    let (p0, pmax, remainder) = (p0.to_poly(), pmax.to_poly(), rest.to_poly());
    let delta = &(&p0 + &pmax) + &remainder;
    let delta_check = state_sum_with(ctx.diagram, default_segment(ctx.diagram)?, &ctx.rule, &ctx.caps)?;
    let delta_prime = summand_sum(ctx, &s.prime)?;
    let delta_double = summand_sum(ctx, &s.double)?;
    let tilde = build_tilde_graphs(ctx)?;
    let delta_tilde_prime = graph_sum(&tilde.0, &ctx.caps)?;
    let delta_tilde_double = graph_sum(&tilde.1, &ctx.caps)?;
    Ok(Decomposition {
        length: s.length,
        p0_is_summand_product: p0 == &delta_prime * &delta_double,
        pmax_is_tilde_product: pmax == &delta_tilde_prime * &delta_tilde_double,
        strata_sum_to_delta: delta == delta_check,
        p0,
        pmax,
        remainder,
        delta,
        delta_check,
        delta_prime,
        delta_double,
        delta_tilde_prime,
        delta_tilde_double,
        parity: FlockParity { holds, histogram },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductIdentity {
    pub delta: LaurentPoly,
    pub delta_prime: LaurentPoly,
    pub delta_double: LaurentPoly,
    pub holds: bool,
}

/// For a length-1 circle the state sum is the product of the summands'.
pub fn verify_length1(ctx: &SplitContext) -> Result<ProductIdentity> {
    let s = &ctx.split;
    if s.length != 1 {
        return Err(Error::Length { required: 1, found: s.length });
    }
    let delta = graph_sum(&ctx.graph, &ctx.caps)?;
    let delta_prime = summand_sum(ctx, &s.prime)?;
    let delta_double = summand_sum(ctx, &s.double)?;
    let holds = delta == &delta_prime * &delta_double;
    Ok(ProductIdentity { delta, delta_prime, delta_double, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncancelingReport {
    /// False when `L` is not alternating: the verdicts are then informative
    /// only.
    pub hypothesis_met: bool,
    pub strata_noncanceling: bool,
    pub lower_bound: LaurentPoly,
    pub dominates: bool,
    /// Some coefficient exceeds the bound.
    pub strict: bool,
}

impl NoncancelingReport {
    pub fn holds(&self) -> bool {
        self.strata_noncanceling && self.dominates
    }
}

/// `|Delta_L| >= |Delta_L'||Delta_L''| + |Delta_~L'||Delta_~L''|` with the
/// second product only for length at least 2, and the strata of the
/// state sum never cancel each other.
pub fn verify_noncanceling(ctx: &SplitContext) -> Result<NoncancelingReport> {
    let (abs_delta, strata, bound) = if ctx.split.length == 1 {
        let p = verify_length1(ctx)?;
        let bound = &p.delta_prime.abs_poly() * &p.delta_double.abs_poly();
        (p.delta.abs_poly(), vec![p.delta], bound)
    } else {
        let dc = decompose_state_sum(ctx)?;
        let bound = &(&dc.delta_prime.abs_poly() * &dc.delta_double.abs_poly())
            + &(&dc.delta_tilde_prime.abs_poly() * &dc.delta_tilde_double.abs_poly());
        (dc.delta.abs_poly(), vec![dc.p0, dc.pmax, dc.remainder], bound)
    };
    let dominates = abs_delta.dominates(&bound);
    Ok(NoncancelingReport {
        hypothesis_met: ctx.diagram.is_alternating(),
        strata_noncanceling: is_noncanceling_sum(&strata),
        strict: dominates && abs_delta != bound,
        lower_bound: bound,
        dominates,
    })
}

/// `Delta_L` and `Delta_L' Delta_L''` have the same support.
pub fn verify_support(ctx: &SplitContext) -> Result<bool> {
    let delta = graph_sum(&ctx.graph, &ctx.caps)?;
    let product = &summand_sum(ctx, &ctx.split.prime)? * &summand_sum(ctx, &ctx.split.double)?;
    Ok(delta.support() == product.support())
}

/// Convenience wrapper used by the report layer.
pub fn swaps_for(ctx: &SplitContext) -> Result<Option<(Summand, Summand)>> {
    if ctx.split.length < 2 {
        Ok(None)
    } else {
        swap_move_diagrams(&ctx.split).map(Some)
    }
}
