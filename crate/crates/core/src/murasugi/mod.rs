//! Diagrammatic Murasugi sums along type 2 Seifert circles.
//!
//! Cutting a diagram `L` along a T2 circle `C` yields two summands. `L'`
//! keeps the crossings on the side `R'` and smooths the crossings of `C` that
//! belong to `R''`; `L''` is the mirror construction. Walking along `C` from
//! a segment that joins the two sides, the crossings of `C` fall into
//! alternating runs `X_1, Y_1, ..., X_l, Y_l` (runs `X` in `R'`). The regions
//! touched by the turn corners of those runs, `r''_j` for `X_j` and `r'_j`
//! for `Y_j`, carry the flock edges of the truncated graph.

mod certify;
mod checks;
mod explore;
mod summand;

pub use certify::{certify_trapezoid, CertificateNode, TrapezoidCertificate};
pub use checks::{
    build_tilde_graphs, decompose_state_sum, flock_parity_check, verify_flock_deletion, verify_length1,
    swaps_for, verify_noncanceling, verify_support, verify_swap_graphs, verify_tilde_structure, Decomposition,
    FlockParity, NoncancelingReport, ProductIdentity, SummandStructure,
};
pub use explore::{
    explore_flock_subsets, explore_tree, remainder_observation, FlockRow, FlockTable, RemainderReport, TreeLevel, TreeNode,
};
pub use summand::Summand;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dimer::{truncated_graph, Caps, FcGraph, WeightRule};
use crate::error::{Error, Result};
use crate::linkdiag::{CircleType, Corner, CrossingId, EdgeId, LinkDiagram, RegionId, SeifertCircle, Side, SideMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlockEdge {
    /// 1-based position in the trace along `C`.
    pub number: usize,
    pub corner: Corner,
    pub region: RegionId,
    /// Side of `C` the region lies on.
    pub side: Side,
}

#[derive(Clone, Debug, Serialize)]
pub struct MurasugiSplit {
    pub circle: SeifertCircle,
    pub length: usize,
    #[serde(skip)]
    pub sides: SideMap,
    pub chosen_segment: EdgeId,
    /// Whether the trace from the chosen segment follows the orientation of
    /// `C`.
    pub forward: bool,
    pub trace: Vec<CrossingId>,
    pub x_groups: Vec<Vec<CrossingId>>,
    pub y_groups: Vec<Vec<CrossingId>>,
    /// Turn corner of `C` at each of its crossings.
    pub turns: BTreeMap<CrossingId, Corner>,
    /// `r'_1 .. r'_l`.
    pub r_prime: Vec<RegionId>,
    /// `r''_1 .. r''_l`.
    pub r_double: Vec<RegionId>,
    pub flock: Vec<FlockEdge>,
    #[serde(skip)]
    pub prime: Summand,
    #[serde(skip)]
    pub double: Summand,
}

impl MurasugiSplit {
    pub fn flock_corners(&self) -> BTreeSet<Corner> {
        self.flock.iter().map(|f| f.corner).collect()
    }

    pub fn bridge_regions(&self) -> BTreeSet<RegionId> {
        self.r_prime.iter().chain(&self.r_double).copied().collect()
    }

    pub fn summand(&self, side: Side) -> &Summand {
        match side {
            Side::Prime => &self.prime,
            Side::DoublePrime => &self.double,
        }
    }

    /// `G_{L,i}` for the chosen segment.
    pub fn graph(&self, d: &LinkDiagram, rule: &WeightRule) -> Result<FcGraph> {
        truncated_graph(d, self.chosen_segment, rule)
    }

    pub fn crossings_on(&self, d: &LinkDiagram, side: Side) -> BTreeSet<CrossingId> {
        (0..d.crossing_count())
            .filter(|&x| d.crossing_side(&self.sides, x).ok() == Some(side))
            .collect()
    }
}

/// Splits `d` along one of its T2 circles.
pub fn split_along(d: &LinkDiagram, c: &SeifertCircle) -> Result<MurasugiSplit> {
    if d.circle_type(c) != CircleType::T2 {
        return Err(Error::Precondition(format!("circle {} is not of type 2", c.id)));
    }
    let distinct: BTreeSet<CrossingId> = c.crossings_on.iter().copied().collect();
    if distinct.len() != c.crossings_on.len() {
        return Err(Error::Internal(format!("circle {} visits a crossing twice", c.id)));
    }
    let sides = d.side_classification(c)?;
    let side_of = |x: CrossingId| d.crossing_side(&sides, x);
    let length = d.t2_length(c)?;
    if length == 0 {
        return Err(Error::LengthZero(c.id));
    }
    if !d.is_connected() {
        return Err(Error::Precondition("the diagram must be connected".into()));
    }

    let n = c.segments.len();
    let tail_of = |k: usize| c.crossings_on[(k + n - 1) % n];
    let mut chosen: Option<(usize, EdgeId)> = None;
    for (k, &e) in c.segments.iter().enumerate() {
        if side_of(tail_of(k))? != side_of(c.crossings_on[k])? && chosen.is_none_or(|(_, best)| e < best) {
            chosen = Some((k, e));
        }
    }
    let (k0, chosen_segment) =
        chosen.ok_or_else(|| Error::Internal("positive length but no mixed segment".into()))?;
    let forward = side_of(c.crossings_on[k0])? == Side::Prime;
    let trace: Vec<CrossingId> = if forward {
        (0..n).map(|s| c.crossings_on[(k0 + s) % n]).collect()
    } else {
        (0..n).map(|s| c.crossings_on[(k0 + 2 * n - 1 - s) % n]).collect()
    };

    let mut runs: Vec<(Side, Vec<CrossingId>)> = Vec::new();
    for &x in &trace {
        let s = side_of(x)?;
        match runs.last_mut() {
            Some((side, run)) if *side == s => run.push(x),
            _ => runs.push((s, vec![x])),
        }
    }
    if runs.len() != 2 * length || runs[0].0 != Side::Prime {
        return Err(Error::Internal(format!(
            "trace along circle {} has {} runs, expected {}",
            c.id,
            runs.len(),
            2 * length
        )));
    }
    let x_groups: Vec<Vec<CrossingId>> = runs.iter().step_by(2).map(|(_, r)| r.clone()).collect();
    let y_groups: Vec<Vec<CrossingId>> = runs.iter().skip(1).step_by(2).map(|(_, r)| r.clone()).collect();

    let turns: BTreeMap<CrossingId, Corner> = c
        .crossings_on
        .iter()
        .zip(&c.turns)
        .map(|(&x, &t)| (x, t))
        .collect();
    let bridge = |group: &[CrossingId], want: Side| -> Result<RegionId> {
        let regions: BTreeSet<RegionId> = group.iter().map(|x| d.region_of(turns[x])).collect();
        match (regions.len(), regions.iter().next()) {
            (1, Some(&r)) if sides.region_side[r] == want => Ok(r),
            _ => Err(Error::Internal(format!(
                "turn corners of group {group:?} do not share one region on the expected side"
            ))),
        }
    };
    let r_double = x_groups.iter().map(|g| bridge(g, Side::DoublePrime)).collect::<Result<Vec<_>>>()?;
    let r_prime = y_groups.iter().map(|g| bridge(g, Side::Prime)).collect::<Result<Vec<_>>>()?;

    let [a, b] = d.edge_regions(chosen_segment).expect("segment of the diagram");
    let absent: BTreeSet<RegionId> = [a, b].into();
    let expected: BTreeSet<RegionId> = [r_double[0], r_prime[length - 1]].into();
    if absent != expected {
        return Err(Error::Internal(format!(
            "regions beside segment {chosen_segment} are {absent:?}, expected {expected:?}"
        )));
    }

    let mut flock = Vec::new();
    let mut group_of: BTreeMap<CrossingId, (Side, usize)> = BTreeMap::new();
    for (j, g) in x_groups.iter().enumerate() {
        for &x in g {
            group_of.insert(x, (Side::Prime, j));
        }
    }
    for (j, g) in y_groups.iter().enumerate() {
        for &y in g {
            group_of.insert(y, (Side::DoublePrime, j));
        }
    }
    for &x in &trace {
        let (s, j) = group_of[&x];
        let is_flock = match s {
            Side::Prime => j >= 1,
            Side::DoublePrime => j + 1 < length,
        };
        if is_flock {
            let region = match s {
                Side::Prime => r_double[j],
                Side::DoublePrime => r_prime[j],
            };
            flock.push(FlockEdge { number: flock.len() + 1, corner: turns[&x], region, side: s.other() });
        }
    }

    let keep = |want: Side| -> Result<BTreeSet<CrossingId>> {
        let mut out = BTreeSet::new();
        for x in 0..d.crossing_count() {
            if side_of(x)? == want {
                out.insert(x);
            }
        }
        Ok(out)
    };
    let prime = Summand::build(d, &keep(Side::Prime)?, chosen_segment, format!("{}-prime", d.name()))?;
    let double = Summand::build(d, &keep(Side::DoublePrime)?, chosen_segment, format!("{}-double", d.name()))?;

    Ok(MurasugiSplit {
        circle: c.clone(),
        length,
        sides,
        chosen_segment,
        forward,
        trace,
        x_groups,
        y_groups,
        turns,
        r_prime,
        r_double,
        flock,
        prime,
        double,
    })
}

/// Splits along the lowest-id T2 circle, or the given one.
pub fn split(d: &LinkDiagram, circle: Option<usize>) -> Result<MurasugiSplit> {
    let c = match circle {
        Some(id) => d.circle(id)?.clone(),
        None => d
            .t2_circles()
            .first()
            .map(|c| (*c).clone())
            .ok_or_else(|| Error::Precondition("diagram is special: it has no type 2 Seifert circle".into()))?,
    };
    split_along(d, &c)
}

/// Swap-move diagrams `L~'` and `L~''` with their distinguished segments.
pub fn swap_move_diagrams(s: &MurasugiSplit) -> Result<(Summand, Summand)> {
    if s.length < 2 {
        return Err(Error::Length { required: 2, found: s.length });
    }
    let prime = s.prime.swap_groups(&s.x_groups, 0, "tilde")?;
    let double = s.double.swap_groups(&s.y_groups, s.length - 1, "tilde")?;
    Ok((prime, double))
}

/// Everything computed once per split and reused by the checks.
pub struct SplitContext<'a> {
    pub diagram: &'a LinkDiagram,
    pub split: MurasugiSplit,
    pub rule: WeightRule,
    pub caps: Caps,
    pub graph: FcGraph,
}

impl<'a> SplitContext<'a> {
    pub fn new(d: &'a LinkDiagram, split: MurasugiSplit, rule: WeightRule, caps: Caps) -> Result<Self> {
        let graph = split.graph(d, &rule)?;
        Ok(SplitContext { diagram: d, split, rule, caps, graph })
    }
}
