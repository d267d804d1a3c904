//! Weighted face-crossing incidence graphs and their perfect matchings.
//!
//! Black vertices are crossings and white vertices are regions. There is one
//! edge for every quadrant of every crossing, so a crossing that touches the
//! same region twice gets two parallel edges with their own weights. Deleting
//! the two regions on either side of a distinguished segment leaves a graph
//! whose weighted perfect-matching sum is the symmetrized Alexander
//! polynomial.

mod enumerate;
pub mod oracle;

pub use enumerate::{enumerate_matchings, graph_sum, matching_weight, matchings, Caps, Matching, Tally};
pub use oracle::determinant_oracle;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::linkdiag::{Corner, CrossingId, EdgeId, LinkDiagram, QuadrantKind, RegionId};

/// Quadrant weights by crossing sign. The default is the standard rule;
/// other values exist so that verification suites can be shown to fail on a
/// wrong table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRule {
    pub positive_outgoing: Monomial,
    pub positive_incoming: Monomial,
    pub negative_outgoing: Monomial,
    pub negative_incoming: Monomial,
    pub side: Monomial,
}

impl Default for WeightRule {
    fn default() -> Self {
        WeightRule {
            positive_outgoing: Monomial::new(1, 1),
            positive_incoming: Monomial::new(-1, -1),
            negative_outgoing: Monomial::new(1, -1),
            negative_incoming: Monomial::new(-1, 1),
            side: Monomial::ONE,
        }
    }
}

impl WeightRule {
    /// The standard table with the two incoming weights exchanged between
    /// signs.
    pub fn corrupted() -> Self {
        let w = WeightRule::default();
        WeightRule {
            positive_incoming: w.negative_incoming,
            negative_incoming: w.positive_incoming,
            ..w
        }
    }

    pub fn weight(&self, sign: i8, kind: QuadrantKind) -> Monomial {
        match (kind, sign > 0) {
            (QuadrantKind::Side, _) => self.side,
            (QuadrantKind::Outgoing, true) => self.positive_outgoing,
            (QuadrantKind::Outgoing, false) => self.negative_outgoing,
            (QuadrantKind::Incoming, true) => self.positive_incoming,
            (QuadrantKind::Incoming, false) => self.negative_incoming,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FcEdge {
    pub black: CrossingId,
    pub quadrant: u8,
    pub white: RegionId,
    pub weight: Monomial,
}

impl FcEdge {
    pub fn corner(&self) -> Corner {
        Corner::new(self.black, self.quadrant)
    }
}

/// A bipartite crossing/region graph. Vertex ids are those of the diagram it
/// came from, which need not be contiguous once vertices are removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FcGraph {
    pub black: Vec<CrossingId>,
    pub white: Vec<RegionId>,
    pub edges: Vec<FcEdge>,
    pub absent: Vec<RegionId>,
    pub distinguished_segment: Option<EdgeId>,
}

impl FcGraph {
    pub fn new(black: Vec<CrossingId>, white: Vec<RegionId>, edges: Vec<FcEdge>) -> Self {
        let mut g = FcGraph { black, white, edges, absent: Vec::new(), distinguished_segment: None };
        g.normalize();
        g
    }

    fn normalize(&mut self) {
        self.black.sort_unstable();
        self.black.dedup();
        self.white.sort_unstable();
        self.white.dedup();
        self.edges.sort();
    }

    pub fn edges_at_black(&self, b: CrossingId) -> impl Iterator<Item = &FcEdge> + '_ {
        self.edges.iter().filter(move |e| e.black == b)
    }

    pub fn edges_at_white(&self, w: RegionId) -> impl Iterator<Item = &FcEdge> + '_ {
        self.edges.iter().filter(move |e| e.white == w)
    }

    /// Drops every edge in `remove` (compared by crossing and quadrant).
    pub fn without_edges(&self, remove: &BTreeSet<Corner>) -> FcGraph {
        FcGraph {
            edges: self
                .edges
                .iter()
                .filter(|e| !remove.contains(&e.corner()))
                .copied()
                .collect(),
            ..self.clone()
        }
    }

    /// The subgraph induced on the given vertices.
    pub fn induced(&self, black: &BTreeSet<CrossingId>, white: &BTreeSet<RegionId>) -> FcGraph {
        FcGraph {
            black: self.black.iter().filter(|b| black.contains(b)).copied().collect(),
            white: self.white.iter().filter(|w| white.contains(w)).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| black.contains(&e.black) && white.contains(&e.white))
                .copied()
                .collect(),
            ..self.clone()
        }
    }

    /// Renames vertices and quadrants. Every vertex and edge of `self` must be
    /// covered by the maps.
    pub fn relabel(
        &self,
        crossing: &BTreeMap<CrossingId, CrossingId>,
        region: &BTreeMap<RegionId, RegionId>,
        corner: impl Fn(Corner) -> Corner,
    ) -> Result<FcGraph> {
        let look = |m: &BTreeMap<usize, usize>, k: usize, what: &str| {
            m.get(&k)
                .copied()
                .ok_or_else(|| Error::Internal(format!("no image for {what} {k}")))
        };
        let black = self
            .black
            .iter()
            .map(|&b| look(crossing, b, "crossing"))
            .collect::<Result<Vec<_>>>()?;
        let white = self
            .white
            .iter()
            .map(|&w| look(region, w, "region"))
            .collect::<Result<Vec<_>>>()?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let c = corner(e.corner());
            edges.push(FcEdge {
                black: c.crossing,
                quadrant: c.quadrant,
                white: look(region, e.white, "region")?,
                weight: e.weight,
            });
        }
        let mut g = FcGraph {
            black,
            white,
            edges,
            // Absent regions may have no single image; they are kept only
            // when they do.
            absent: self.absent.iter().filter_map(|w| region.get(w).copied()).collect(),
            distinguished_segment: self.distinguished_segment,
        };
        g.normalize();
        Ok(g)
    }

    /// Union of two graphs on disjoint vertex sets.
    pub fn disjoint_union(&self, other: &FcGraph) -> FcGraph {
        let mut g = FcGraph {
            black: self.black.iter().chain(&other.black).copied().collect(),
            white: self.white.iter().chain(&other.white).copied().collect(),
            edges: self.edges.iter().chain(&other.edges).copied().collect(),
            absent: self.absent.iter().chain(&other.absent).copied().collect(),
            distinguished_segment: None,
        };
        g.normalize();
        g.absent.sort_unstable();
        g
    }

    /// Same vertices and the same weighted edges.
    pub fn same_structure(&self, other: &FcGraph) -> bool {
        self.black == other.black && self.white == other.white && self.edges == other.edges
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graphs always serialize")
    }
}

/// The untruncated incidence graph, every edge carrying weight 1.
pub fn build_fc_graph(d: &LinkDiagram) -> FcGraph {
    let mut edges = Vec::with_capacity(4 * d.crossing_count());
    for c in 0..d.crossing_count() {
        for q in 0..4u8 {
            let corner = Corner::new(c, q);
            edges.push(FcEdge { black: c, quadrant: q, white: d.region_of(corner), weight: Monomial::ONE });
        }
    }
    FcGraph::new(
        (0..d.crossing_count()).collect(),
        (0..d.regions().len()).collect(),
        edges,
    )
}

/// Deletes the two regions on either side of segment `i`.
pub fn truncate(d: &LinkDiagram, g: &FcGraph, i: EdgeId) -> Result<FcGraph> {
    let [left, right] = d
        .edge_regions(i)
        .ok_or_else(|| Error::Precondition(format!("segment {i} does not exist")))?;
    if left == right {
        return Err(Error::Degenerate(i));
    }
    let keep: BTreeSet<RegionId> = g.white.iter().copied().filter(|&w| w != left && w != right).collect();
    let black: BTreeSet<CrossingId> = g.black.iter().copied().collect();
    let mut t = g.induced(&black, &keep);
    t.absent = vec![left.min(right), left.max(right)];
    t.distinguished_segment = Some(i);
    Ok(t)
}

pub fn assign_weights(d: &LinkDiagram, g: &FcGraph) -> FcGraph {
    assign_weights_with(d, g, &WeightRule::default())
}

pub fn assign_weights_with(d: &LinkDiagram, g: &FcGraph, rule: &WeightRule) -> FcGraph {
    let mut out = g.clone();
    for e in out.edges.iter_mut() {
        let corner = e.corner();
        e.weight = rule.weight(d.crossing_sign(e.black), d.quadrant_kind(corner));
    }
    out.edges.sort();
    out
}

/// Weighted graph `G_{L,i}`.
pub fn truncated_graph(d: &LinkDiagram, i: EdgeId, rule: &WeightRule) -> Result<FcGraph> {
    let g = assign_weights_with(d, &build_fc_graph(d), rule);
    truncate(d, &g, i)
}

/// Smallest segment id whose two sides are different regions.
pub fn default_segment(d: &LinkDiagram) -> Result<EdgeId> {
    d.edge_ids()
        .into_iter()
        .find(|&e| d.edge_regions(e).is_some_and(|[l, r]| l != r))
        .ok_or_else(|| Error::Validation("every segment has the same region on both sides".into()))
}

pub fn state_sum(d: &LinkDiagram, i: EdgeId) -> Result<LaurentPoly> {
    state_sum_with(d, i, &WeightRule::default(), &Caps::from_env())
}

pub fn state_sum_with(d: &LinkDiagram, i: EdgeId, rule: &WeightRule, caps: &Caps) -> Result<LaurentPoly> {
    caps.check_crossings(d.crossing_count())?;
    graph_sum(&truncated_graph(d, i, rule)?, caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentResult {
    pub segment: EdgeId,
    pub polynomial: Option<LaurentPoly>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentIndependence {
    pub consistent: bool,
    pub results: Vec<SegmentResult>,
}

/// Computes the state sum from every segment. Segments with the same region
/// on both sides are skipped and listed as such.
pub fn segment_independence_check(d: &LinkDiagram, rule: &WeightRule, caps: &Caps) -> Result<SegmentIndependence> {
    let mut results = Vec::new();
    let mut first: Option<LaurentPoly> = None;
    let mut consistent = true;
    for e in d.edge_ids() {
        match state_sum_with(d, e, rule, caps) {
            Ok(p) => {
                match &first {
                    None => first = Some(p.clone()),
                    Some(f) => consistent &= *f == p,
                }
                results.push(SegmentResult { segment: e, polynomial: Some(p), skipped: None });
            }
            Err(Error::Degenerate(_)) => results.push(SegmentResult {
                segment: e,
                polynomial: None,
                skipped: Some("same region on both sides".into()),
            }),
            Err(err) => return Err(err),
        }
    }
    Ok(SegmentIndependence { consistent: consistent && first.is_some(), results })
}

/// Shape facts expected of a connected alternating diagram. Matchings of
/// equal degree never disagree in sign, so `|Delta_L|` counts them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingStructure {
    pub polynomial: LaurentPoly,
    pub sign_coherent: bool,
    pub palindromic: bool,
    pub saturated: bool,
    /// Width of the support in whole powers of `t`.
    pub span: Option<i64>,
    /// Crossings minus Seifert circles plus one.
    pub expected_span: i64,
}

impl AlternatingStructure {
    pub fn holds(&self) -> bool {
        self.sign_coherent && self.palindromic && self.saturated && self.span == Some(self.expected_span)
    }
}

pub fn alternating_structure(d: &LinkDiagram, rule: &WeightRule, caps: &Caps) -> Result<AlternatingStructure> {
    caps.check_crossings(d.crossing_count())?;
    let g = truncated_graph(d, default_segment(d)?, rule)?;
    let mut signs: BTreeMap<i64, i8> = BTreeMap::new();
    let mut sign_coherent = true;
    let mut tally = Tally::default();
    enumerate_matchings(&g, caps, |edges| {
        let w = matching_weight(&g, edges);
        tally.add(w);
        sign_coherent &= *signs.entry(w.exp2).or_insert(w.sign()) == w.sign();
        Ok(())
    })?;
    let polynomial = tally.to_poly();
    Ok(AlternatingStructure {
        sign_coherent,
        palindromic: polynomial.is_palindromic_abs(),
        saturated: polynomial.has_saturated_support(),
        span: polynomial.span().map(|h| h.doubled() / 2),
        expected_span: d.crossing_count() as i64 - d.seifert_circles().len() as i64 + 1,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn vertex_counts() {
        let g = build_fc_graph(&fixtures::whitehead());
        assert_eq!((g.black.len(), g.white.len()), (5, 7));
        let g = build_fc_graph(&fixtures::unknot1());
        assert_eq!((g.black.len(), g.white.len()), (1, 3));
        let g = build_fc_graph(&fixtures::hopf());
        assert_eq!((g.black.len(), g.white.len()), (2, 4));
    }

    #[test]
    fn truncation_balances_connected_diagrams() {
        for d in fixtures::all().into_iter().filter(|d| d.is_connected()) {
            let g = build_fc_graph(&d);
            for e in d.edge_ids() {
                match truncate(&d, &g, e) {
                    Ok(t) => {
                        assert_eq!(t.black.len(), t.white.len(), "{} segment {e}", d.name());
                        assert_eq!(t.absent.len(), 2);
                    }
                    Err(Error::Degenerate(s)) => assert_eq!(s, e),
                    Err(other) => panic!("{other}"),
                }
            }
        }
    }

    #[test]
    fn kink_segment_is_degenerate_only_when_sides_coincide() {
        // In the one-crossing diagram each loop separates its inside from the
        // outside, so both segments are usable.
        let u = fixtures::unknot1();
        for e in u.edge_ids() {
            assert!(truncate(&u, &build_fc_graph(&u), e).is_ok());
        }
        assert!(matches!(
            truncate(&u, &build_fc_graph(&u), 99),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn weights_follow_quadrant_rule() {
        let h = fixtures::hopf();
        let g = assign_weights(&h, &build_fc_graph(&h));
        let allowed = [
            Monomial::ONE,
            Monomial::new(1, 1),
            Monomial::new(-1, -1),
            Monomial::new(1, -1),
            Monomial::new(-1, 1),
        ];
        assert!(g.edges.iter().all(|e| allowed.contains(&e.weight)));
        for e in &g.edges {
            let expect = match h.quadrant_kind(e.corner()) {
                QuadrantKind::Outgoing => Monomial::new(1, 1),
                QuadrantKind::Incoming => Monomial::new(-1, -1),
                QuadrantKind::Side => Monomial::ONE,
            };
            assert_eq!(e.weight, expect);
        }
        let m = h.mirror();
        let g = assign_weights(&m, &build_fc_graph(&m));
        for e in &g.edges {
            if m.quadrant_kind(e.corner()) == QuadrantKind::Incoming {
                assert_eq!(e.weight, Monomial::new(-1, 1));
            }
        }
    }

    #[test]
    fn small_state_sums() {
        let u = fixtures::unknot1();
        let p = state_sum(&u, 1).unwrap();
        assert_eq!(p.abs_poly(), LaurentPoly::one());
        let t = fixtures::trefoil();
        let p = state_sum(&t, 1).unwrap();
        assert!(p == poly(&[(-2, 1), (0, -1), (2, 1)]) || p == poly(&[(-2, -1), (0, 1), (2, -1)]), "{p}");
        let h = fixtures::hopf();
        assert_eq!(state_sum(&h, 1).unwrap().abs_poly(), poly(&[(-1, 1), (1, 1)]));
        let f = fixtures::fig8();
        assert_eq!(state_sum(&f, 1).unwrap().abs_poly(), poly(&[(-2, 1), (0, 3), (2, 1)]));
    }

    #[test]
    fn split_diagram_sums_to_zero() {
        for d in [fixtures::split_kinks(), fixtures::split_trefoils()] {
            for e in d.edge_ids() {
                match state_sum(&d, e) {
                    Ok(p) => assert!(p.is_zero(), "{} {e}: {p}", d.name()),
                    Err(Error::Degenerate(_)) => {}
                    Err(other) => panic!("{other}"),
                }
            }
        }
    }

    #[test]
    fn independent_of_segment() {
        for d in [fixtures::trefoil(), fixtures::hopf(), fixtures::fig8(), fixtures::whitehead()] {
            let r = segment_independence_check(&d, &WeightRule::default(), &Caps::default()).unwrap();
            assert!(r.consistent, "{}", d.name());
            assert_eq!(r.results.len(), d.edge_ids().len());
        }
    }

    #[test]
    fn corrupted_rule_breaks_independence_or_symmetry() {
        let d = fixtures::fig8();
        let rule = WeightRule::corrupted();
        let r = segment_independence_check(&d, &rule, &Caps::default()).unwrap();
        let p = state_sum_with(&d, 1, &rule, &Caps::default()).unwrap();
        assert!(!r.consistent || !p.is_centered() || p != state_sum(&d, 1).unwrap());
    }

    #[test]
    fn graph_json_has_weights_as_pairs() {
        let g = truncated_graph(&fixtures::hopf(), 1, &WeightRule::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        let w = &v["edges"][0]["weight"];
        assert!(w.is_array() && w.as_array().unwrap().len() == 2);
    }

    #[test]
    fn alternating_fixtures_have_coherent_signs() {
        for d in [fixtures::trefoil(), fixtures::hopf(), fixtures::fig8(), fixtures::whitehead(), fixtures::l1()] {
            let a = alternating_structure(&d, &WeightRule::default(), &Caps::default()).unwrap();
            assert!(a.holds(), "{}: {a:?}", d.name());
        }
        let n = alternating_structure(&fixtures::fig8_nonalternating(), &WeightRule::default(), &Caps::default()).unwrap();
        assert!(!n.sign_coherent);
    }
}
