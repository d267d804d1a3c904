use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Corner, CrossingId, DartRef, EdgeId, LinkDiagram, RegionId};
use crate::error::{Error, Result};

/// A Seifert circle: the segments visited by one loop of the oriented
/// smoothing, in orientation order starting from the smallest edge id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertCircle {
    pub id: usize,
    pub segments: Vec<EdgeId>,
    /// `crossings_on[k]` is where the circle turns from `segments[k]` into
    /// `segments[k + 1]`.
    pub crossings_on: Vec<CrossingId>,
    /// The quadrant the circle wraps around at each turn.
    pub turns: Vec<Corner>,
}

impl SeifertCircle {
    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.segments.iter().copied().collect()
    }

    pub fn passes_through(&self, c: CrossingId) -> bool {
        self.crossings_on.contains(&c)
    }

    pub fn turn_at(&self, c: CrossingId) -> Option<Corner> {
        self.crossings_on
            .iter()
            .position(|&x| x == c)
            .map(|k| self.turns[k])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircleType {
    T1,
    T2,
}

/// The two sides of a Seifert circle on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "R'")]
    Prime,
    #[serde(rename = "R''")]
    DoublePrime,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Prime => Side::DoublePrime,
            Side::DoublePrime => Side::Prime,
        }
    }
}

/// Side of every region with respect to one circle. Region 0 is always on
/// `R'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideMap {
    pub circle: usize,
    pub region_side: Vec<Side>,
}

impl SideMap {
    pub fn regions_on(&self, side: Side) -> Vec<RegionId> {
        (0..self.region_side.len())
            .filter(|&r| self.region_side[r] == side)
            .collect()
    }
}

pub(super) fn trace_circles(d: &LinkDiagram) -> Vec<SeifertCircle> {
    let mut seen = BTreeSet::new();
    let mut circles = Vec::new();
    for start in d.edge_ids() {
        if seen.contains(&start) {
            continue;
        }
        let mut segments = Vec::new();
        let mut crossings_on = Vec::new();
        let mut turns = Vec::new();
        let mut e = start;
        loop {
            seen.insert(e);
            segments.push(e);
            let head = d.segments[&e].head;
            let out = d.smoothing_partner(head);
            crossings_on.push(head.crossing);
            turns.push(turn_corner(head, out));
            e = d.dart(out).edge;
            if e == start {
                break;
            }
        }
        circles.push(SeifertCircle { id: circles.len(), segments, crossings_on, turns });
    }
    circles
}

fn turn_corner(incoming: DartRef, outgoing: DartRef) -> Corner {
    if (incoming.position + 1) % 4 == outgoing.position {
        Corner::new(incoming.crossing, incoming.position)
    } else {
        Corner::new(incoming.crossing, outgoing.position)
    }
}

impl LinkDiagram {
    pub fn circle(&self, id: usize) -> Result<&SeifertCircle> {
        self.circles
            .get(id)
            .ok_or_else(|| Error::Precondition(format!("no Seifert circle {id}")))
    }

    /// T1 iff some region's boundary is exactly the circle's segments.
    pub fn circle_type(&self, c: &SeifertCircle) -> CircleType {
        let edges = c.edge_set();
        if self.regions().iter().any(|r| r.boundary_edges() == edges) {
            CircleType::T1
        } else {
            CircleType::T2
        }
    }

    pub fn t2_circles(&self) -> Vec<&SeifertCircle> {
        self.circles
            .iter()
            .filter(|c| self.circle_type(c) == CircleType::T2)
            .collect()
    }

    pub fn is_special(&self) -> bool {
        self.t2_circles().is_empty()
    }

    /// Two-colors the regions: neighbours across a segment of `c` differ,
    /// neighbours across any other segment agree.
    pub fn side_classification(&self, c: &SeifertCircle) -> Result<SideMap> {
        let on_circle = c.edge_set();
        let n = self.regions().len();
        let mut adj: Vec<Vec<(RegionId, bool)>> = vec![Vec::new(); n];
        for e in self.edge_ids() {
            let [l, r] = self.edge_regions[&e];
            let flip = on_circle.contains(&e);
            adj[l].push((r, flip));
            adj[r].push((l, flip));
        }
        let mut side: Vec<Option<Side>> = vec![None; n];
        side[0] = Some(Side::Prime);
        let mut stack = vec![0];
        while let Some(r) = stack.pop() {
            let s = side[r].expect("pushed regions are colored");
            for &(m, flip) in &adj[r] {
                let want = if flip { s.other() } else { s };
                match side[m] {
                    None => {
                        side[m] = Some(want);
                        stack.push(m);
                    }
                    Some(have) if have != want => {
                        return Err(Error::Internal(format!(
                            "circle {} does not separate the regions consistently",
                            c.id
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let region_side = side
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::Internal("region not reached while coloring".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SideMap { circle: c.id, region_side })
    }

    /// Side holding at least two (in practice three) of the crossing's four
    /// quadrants.
    pub fn crossing_side(&self, sides: &SideMap, x: CrossingId) -> Result<Side> {
        let prime = self
            .corner_regions(x)
            .iter()
            .filter(|&&r| sides.region_side[r] == Side::Prime)
            .count();
        match prime {
            2 => Err(Error::Ambiguity(x)),
            p if p > 2 => Ok(Side::Prime),
            _ => Ok(Side::DoublePrime),
        }
    }

    pub fn belongs_to(&self, c: &SeifertCircle, x: CrossingId) -> Result<Side> {
        if !c.passes_through(x) {
            return Err(Error::Precondition(format!(
                "crossing {x} is not on circle {}",
                c.id
            )));
        }
        let sides = self.side_classification(c)?;
        self.crossing_side(&sides, x)
    }

    /// Half the number of the circle's segments whose end crossings lie on
    /// opposite sides.
    pub fn t2_length(&self, c: &SeifertCircle) -> Result<usize> {
        let sides = self.side_classification(c)?;
        let mut mixed = 0;
        for &e in &c.segments {
            let s = self.segments[&e];
            if self.crossing_side(&sides, s.tail.crossing)? != self.crossing_side(&sides, s.head.crossing)? {
                mixed += 1;
            }
        }
        Ok(mixed / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn circle_counts() {
        assert_eq!(fixtures::hopf().seifert_circles().len(), 2);
        assert_eq!(fixtures::trefoil().seifert_circles().len(), 2);
        assert_eq!(fixtures::unknot1().seifert_circles().len(), 2);
        assert_eq!(fixtures::fig8().seifert_circles().len(), 3);
    }

    #[test]
    fn circles_partition_edges_head_to_tail() {
        for d in fixtures::all() {
            let mut all = Vec::new();
            for c in d.seifert_circles() {
                for k in 0..c.segments.len() {
                    let e = c.segments[k];
                    let f = c.segments[(k + 1) % c.segments.len()];
                    assert_eq!(d.segment(e).unwrap().head.crossing, d.segment(f).unwrap().tail.crossing);
                }
                all.extend(c.segments.iter().copied());
            }
            all.sort_unstable();
            assert_eq!(all, d.edge_ids(), "{}", d.name());
        }
    }

    #[test]
    fn circle_types() {
        let t = fixtures::trefoil();
        assert!(t.seifert_circles().iter().all(|c| t.circle_type(c) == CircleType::T1));
        let h = fixtures::hopf();
        assert!(h.seifert_circles().iter().all(|c| h.circle_type(c) == CircleType::T1));
        let f = fixtures::fig8();
        let t2 = f.t2_circles();
        assert_eq!(t2.len(), 1);
        assert_eq!(t2[0].crossings_on.len(), 4);
    }

    #[test]
    fn sides_of_t2_circle() {
        let f = fixtures::fig8();
        let c = f.t2_circles()[0].clone();
        let sides = f.side_classification(&c).unwrap();
        assert!(!sides.regions_on(Side::Prime).is_empty());
        assert!(!sides.regions_on(Side::DoublePrime).is_empty());
        let groups: Vec<Side> = c
            .crossings_on
            .iter()
            .map(|&x| f.belongs_to(&c, x).unwrap())
            .collect();
        assert_eq!(groups.iter().filter(|&&s| s == Side::Prime).count(), 2);
        assert_eq!(f.t2_length(&c).unwrap(), 2);
    }

    #[test]
    fn t1_circle_side_is_its_region() {
        let t = fixtures::trefoil();
        for c in t.seifert_circles() {
            let sides = t.side_classification(c).unwrap();
            let edges = c.edge_set();
            let bounded = t.regions().iter().find(|r| r.boundary_edges() == edges).unwrap();
            let own = sides.region_side[bounded.id];
            assert_eq!(sides.regions_on(own), vec![bounded.id]);
            assert_eq!(t.t2_length(c).unwrap(), 0);
        }
    }

    #[test]
    fn crossing_not_on_circle_is_rejected() {
        let f = fixtures::fig8();
        let t2 = f.t2_circles()[0].clone();
        let other = f.seifert_circles().iter().find(|c| c.id != t2.id).unwrap();
        let off = (0..f.crossing_count()).find(|&x| !other.passes_through(x)).unwrap();
        assert!(matches!(f.belongs_to(other, off), Err(Error::Precondition(_))));
    }

    #[test]
    fn length_symmetric_under_relabeling() {
        // Mirroring keeps the regions but the count must not depend on which
        // side was called R'.
        for d in [fixtures::fig8(), fixtures::l3(), fixtures::whitehead()] {
            for c in d.t2_circles() {
                let sides = d.side_classification(c).unwrap();
                let flipped = SideMap {
                    circle: c.id,
                    region_side: sides.region_side.iter().map(|s| s.other()).collect(),
                };
                let count = |m: &SideMap| {
                    c.segments
                        .iter()
                        .filter(|&&e| {
                            let s = d.segment(e).unwrap();
                            d.crossing_side(m, s.tail.crossing).unwrap()
                                != d.crossing_side(m, s.head.crossing).unwrap()
                        })
                        .count()
                };
                assert_eq!(count(&sides), count(&flipped));
            }
        }
    }

    #[test]
    fn l3_circle_has_length_three() {
        let d = fixtures::l3();
        let t2 = d.t2_circles();
        assert_eq!(t2.len(), 1);
        assert_eq!(d.t2_length(t2[0]).unwrap(), 3);
    }

    #[test]
    fn split_diagram_has_length_zero_circle() {
        let d = fixtures::split_trefoils();
        let lengths: Vec<usize> = d.t2_circles().iter().map(|c| d.t2_length(c).unwrap()).collect();
        assert!(!lengths.is_empty());
        assert!(lengths.iter().all(|&l| l == 0));
    }
}
