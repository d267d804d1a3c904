//! Oriented link diagrams as 4-regular combinatorial maps.
//!
//! Every crossing lists its four darts (half-edges) counterclockwise.
//! Positions `0,2` carry one strand and `1,3` the other. Quadrant `k` of a
//! crossing is the corner swept counterclockwise from dart `k` to dart
//! `k + 1`.
//!
//! Regions are orbits of the corner permutation `(c, k) -> alpha(c, k + 1)`,
//! where `alpha` sends a dart to the opposite end of its segment. Walking out
//! along dart `k + 1` keeps quadrant `k` on the right, so every region is
//! traversed with its interior on the right-hand side.

mod build;
mod seifert;

pub use build::{closed_braid, disjoint_union, from_pd};
pub use seifert::{CircleType, SeifertCircle, Side, SideMap};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type EdgeId = u32;
pub type CrossingId = usize;
pub type RegionId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flipped(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub dir: Direction,
    pub strand: Strand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DartRef {
    pub crossing: CrossingId,
    pub position: u8,
}

/// Quadrant between darts `quadrant` and `quadrant + 1` of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: CrossingId,
    pub quadrant: u8,
}

impl Corner {
    pub fn new(crossing: CrossingId, quadrant: u8) -> Self {
        Corner { crossing, quadrant: quadrant % 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadrantKind {
    /// Between the two outgoing darts.
    Outgoing,
    /// Between the two incoming darts.
    Incoming,
    Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub edge: EdgeId,
    pub tail: DartRef,
    pub head: DartRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: RegionId,
    pub corners: Vec<Corner>,
    /// Segment incidences in traversal order, each with the side of the
    /// segment (relative to its orientation) on which the region lies.
    pub boundary: Vec<(EdgeId, SegmentSide)>,
}

impl Region {
    pub fn boundary_edges(&self) -> BTreeSet<EdgeId> {
        self.boundary.iter().map(|(e, _)| *e).collect()
    }
}

/// Wire form of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    #[serde(default)]
    pub name: String,
    pub crossings: Vec<CrossingDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingDoc {
    pub darts: Vec<Dart>,
}

#[derive(Clone, Debug)]
pub struct LinkDiagram {
    name: String,
    crossings: Vec<[Dart; 4]>,
    segments: BTreeMap<EdgeId, Segment>,
    components: Vec<Vec<CrossingId>>,
    regions: Vec<Region>,
    corner_region: Vec<[RegionId; 4]>,
    /// `[left, right]` region of each segment.
    edge_regions: BTreeMap<EdgeId, [RegionId; 2]>,
    circles: Vec<SeifertCircle>,
    edge_circle: BTreeMap<EdgeId, usize>,
}

pub fn parse(input: &str) -> Result<LinkDiagram> {
    LinkDiagram::parse(input)
}

impl LinkDiagram {
    pub fn parse(input: &str) -> Result<Self> {
        let doc: DiagramDoc = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn from_doc(doc: DiagramDoc) -> Result<Self> {
        let mut crossings = Vec::with_capacity(doc.crossings.len());
        for (c, x) in doc.crossings.into_iter().enumerate() {
            let darts: [Dart; 4] = x.darts.try_into().map_err(|v: Vec<Dart>| {
                Error::Validation(format!("crossing {c} has {} darts, expected 4", v.len()))
            })?;
            crossings.push(darts);
        }
        Self::new(doc.name, crossings)
    }

    pub fn new(name: impl Into<String>, crossings: Vec<[Dart; 4]>) -> Result<Self> {
        let name = name.into();
        if crossings.is_empty() {
            return Err(Error::Validation("diagram has no crossings".into()));
        }
        for (c, darts) in crossings.iter().enumerate() {
            validate_crossing(c, darts)?;
        }
        let segments = collect_segments(&crossings)?;
        let components = connected_components(&crossings, &segments);
        let (regions, corner_region, edge_regions) = trace_regions(&crossings, &segments, &components)?;
        let mut d = LinkDiagram {
            name,
            crossings,
            segments,
            components,
            regions,
            corner_region,
            edge_regions,
            circles: Vec::new(),
            edge_circle: BTreeMap::new(),
        };
        d.circles = seifert::trace_circles(&d);
        d.edge_circle = d
            .circles
            .iter()
            .flat_map(|c| c.segments.iter().map(move |&e| (e, c.id)))
            .collect();
        Ok(d)
    }

    pub fn to_doc(&self) -> DiagramDoc {
        DiagramDoc {
            name: self.name.clone(),
            crossings: self
                .crossings
                .iter()
                .map(|d| CrossingDoc { darts: d.to_vec() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("diagram documents always serialize")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[Dart; 4]] {
        &self.crossings
    }

    pub fn dart(&self, r: DartRef) -> Dart {
        self.crossings[r.crossing][r.position as usize]
    }

    pub fn segments(&self) -> impl Iterator<Item = &Segment> + '_ {
        self.segments.values()
    }

    pub fn segment(&self, e: EdgeId) -> Option<&Segment> {
        self.segments.get(&e)
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.segments.keys().copied().collect()
    }

    pub fn components(&self) -> &[Vec<CrossingId>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of(&self, corner: Corner) -> RegionId {
        self.corner_region[corner.crossing][corner.quadrant as usize]
    }

    pub fn corner_regions(&self, c: CrossingId) -> [RegionId; 4] {
        self.corner_region[c]
    }

    /// `[left, right]` regions of a segment, relative to its orientation.
    pub fn edge_regions(&self, e: EdgeId) -> Option<[RegionId; 2]> {
        self.edge_regions.get(&e).copied()
    }

    pub fn quadrant_kind(&self, corner: Corner) -> QuadrantKind {
        let darts = &self.crossings[corner.crossing];
        let a = darts[corner.quadrant as usize].dir;
        let b = darts[(corner.quadrant as usize + 1) % 4].dir;
        match (a, b) {
            (Direction::Out, Direction::Out) => QuadrantKind::Outgoing,
            (Direction::In, Direction::In) => QuadrantKind::Incoming,
            _ => QuadrantKind::Side,
        }
    }

    /// `+1` when the under strand leaves one slot counterclockwise of the
    /// over strand, `-1` otherwise.
    pub fn crossing_sign(&self, c: CrossingId) -> i8 {
        let darts = &self.crossings[c];
        let out_pos = |s: Strand| {
            (0..4)
                .find(|&p| darts[p].strand == s && darts[p].dir == Direction::Out)
                .expect("validated crossing has an outgoing dart per strand")
        };
        if out_pos(Strand::Under) == (out_pos(Strand::Over) + 1) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count()).map(|c| self.crossing_sign(c) as i64).sum()
    }

    /// Every segment leaves one crossing on one strand role and reaches the
    /// next on the other.
    pub fn is_alternating(&self) -> bool {
        self.segments
            .values()
            .all(|s| self.dart(s.tail).strand != self.dart(s.head).strand)
    }

    /// The outgoing dart paired with an incoming one by the oriented
    /// smoothing: the adjacent slot on the other strand that points out.
    pub fn smoothing_partner(&self, incoming: DartRef) -> DartRef {
        let darts = &self.crossings[incoming.crossing];
        let p = incoming.position as usize;
        let next = (p + 1) % 4;
        let prev = (p + 3) % 4;
        let q = if darts[next].dir == Direction::Out { next } else { prev };
        DartRef { crossing: incoming.crossing, position: q as u8 }
    }

    pub fn seifert_circles(&self) -> &[SeifertCircle] {
        &self.circles
    }

    pub fn circle_of_edge(&self, e: EdgeId) -> Option<usize> {
        self.edge_circle.get(&e).copied()
    }

    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|darts| darts.map(|d| Dart { strand: d.strand.flipped(), ..d }))
            .collect();
        LinkDiagram::new(format!("{}-mirror", self.name), crossings)
            .expect("mirroring preserves validity")
    }

    /// Exchanges over and under at one crossing.
    pub fn flip_crossing(&self, c: CrossingId) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        for d in crossings[c].iter_mut() {
            d.strand = d.strand.flipped();
        }
        LinkDiagram::new(self.name.clone(), crossings).expect("flipping preserves validity")
    }
}

fn validate_crossing(c: CrossingId, darts: &[Dart; 4]) -> Result<()> {
    for d in darts {
        if d.edge == 0 {
            return Err(Error::Validation(format!("crossing {c}: edge ids must be positive")));
        }
    }
    for p in 0..2 {
        let (a, b) = (darts[p], darts[p + 2]);
        if a.strand != b.strand {
            return Err(Error::Validation(format!(
                "crossing {c}: positions {p} and {} must carry the same strand",
                p + 2
            )));
        }
        if a.dir == b.dir {
            return Err(Error::Validation(format!(
                "crossing {c}: positions {p} and {} must be one in and one out",
                p + 2
            )));
        }
    }
    if darts[0].strand == darts[1].strand {
        return Err(Error::Validation(format!(
            "crossing {c}: needs one over strand and one under strand"
        )));
    }
    Ok(())
}

fn collect_segments(crossings: &[[Dart; 4]]) -> Result<BTreeMap<EdgeId, Segment>> {
    let mut tails: BTreeMap<EdgeId, Vec<DartRef>> = BTreeMap::new();
    let mut heads: BTreeMap<EdgeId, Vec<DartRef>> = BTreeMap::new();
    for (c, darts) in crossings.iter().enumerate() {
        for (p, d) in darts.iter().enumerate() {
            let r = DartRef { crossing: c, position: p as u8 };
            match d.dir {
                Direction::Out => tails.entry(d.edge).or_default().push(r),
                Direction::In => heads.entry(d.edge).or_default().push(r),
            }
        }
    }
    let ids: BTreeSet<EdgeId> = tails.keys().chain(heads.keys()).copied().collect();
    let mut segments = BTreeMap::new();
    for e in ids {
        let t = tails.get(&e).map_or(&[][..], |v| v.as_slice());
        let h = heads.get(&e).map_or(&[][..], |v| v.as_slice());
        if t.len() + h.len() != 2 {
            return Err(Error::Validation(format!(
                "edge {e} appears {} times, expected 2",
                t.len() + h.len()
            )));
        }
        if t.len() != 1 {
            return Err(Error::Validation(format!(
                "edge {e} must leave one crossing and enter another (found {} out, {} in)",
                t.len(),
                h.len()
            )));
        }
        segments.insert(e, Segment { edge: e, tail: t[0], head: h[0] });
    }
    Ok(segments)
}

fn connected_components(
    crossings: &[[Dart; 4]],
    segments: &BTreeMap<EdgeId, Segment>,
) -> Vec<Vec<CrossingId>> {
    let n = crossings.len();
    let mut adj = vec![Vec::new(); n];
    for s in segments.values() {
        adj[s.tail.crossing].push(s.head.crossing);
        adj[s.head.crossing].push(s.tail.crossing);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &m in &adj[comp[k]] {
                if !seen[m] {
                    seen[m] = true;
                    comp.push(m);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

type RegionData = (Vec<Region>, Vec<[RegionId; 4]>, BTreeMap<EdgeId, [RegionId; 2]>);

/// Faces of the map. A split diagram is embedded with its pieces side by
/// side: from each piece the face with the most corners (lowest corner
/// first on ties) is fused into one shared region.
fn trace_regions(
    crossings: &[[Dart; 4]],
    segments: &BTreeMap<EdgeId, Segment>,
    components: &[Vec<CrossingId>],
) -> Result<RegionData> {
    let n = crossings.len();
    let other_end = |r: DartRef| -> DartRef {
        let d = crossings[r.crossing][r.position as usize];
        let s = &segments[&d.edge];
        if s.tail == r {
            s.head
        } else {
            s.tail
        }
    };
    let next_corner = |c: Corner| -> Corner {
        let r = other_end(DartRef { crossing: c.crossing, position: (c.quadrant + 1) % 4 });
        Corner::new(r.crossing, r.position)
    };

    let mut orbit_of = vec![[usize::MAX; 4]; n];
    let mut orbits: Vec<Vec<Corner>> = Vec::new();
    for c in 0..n {
        for q in 0..4u8 {
            if orbit_of[c][q as usize] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = Vec::new();
            let mut cur = Corner::new(c, q);
            while orbit_of[cur.crossing][cur.quadrant as usize] == usize::MAX {
                orbit_of[cur.crossing][cur.quadrant as usize] = id;
                orbit.push(cur);
                cur = next_corner(cur);
            }
            orbits.push(orbit);
        }
    }

    let mut comp_of = vec![0usize; n];
    for (k, comp) in components.iter().enumerate() {
        for &c in comp {
            comp_of[c] = k;
        }
    }
    let mut per_comp: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for (id, orbit) in orbits.iter().enumerate() {
        per_comp[comp_of[orbit[0].crossing]].push(id);
    }
    for (k, faces) in per_comp.iter().enumerate() {
        let v = components[k].len();
        if faces.len() != v + 2 {
            return Err(Error::Validation(format!(
                "not planar: component with {v} crossings has {} faces, expected {}",
                faces.len(),
                v + 2
            )));
        }
    }

    // Group orbits into regions.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    if components.len() == 1 {
        groups = (0..orbits.len()).map(|o| vec![o]).collect();
    } else {
        let mut shared = Vec::new();
        for faces in &per_comp {
            let best = faces
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    orbits[a]
                        .len()
                        .cmp(&orbits[b].len())
                        .then_with(|| orbits[b].iter().min().cmp(&orbits[a].iter().min()))
                })
                .expect("every component has faces");
            shared.push(best);
        }
        for o in 0..orbits.len() {
            if !shared.contains(&o) {
                groups.push(vec![o]);
            }
        }
        groups.push(shared);
    }
    for g in groups.iter_mut() {
        g.sort_by_key(|&o| orbits[o].iter().min().copied());
    }
    groups.sort_by_key(|g| orbits[g[0]].iter().min().copied());

    let mut corner_region = vec![[0usize; 4]; n];
    let mut edge_regions: BTreeMap<EdgeId, [RegionId; 2]> = BTreeMap::new();
    let mut regions = Vec::with_capacity(groups.len());
    for (rid, g) in groups.iter().enumerate() {
        let mut corners = Vec::new();
        let mut boundary = Vec::new();
        for &o in g {
            let orbit = &orbits[o];
            let start = orbit
                .iter()
                .enumerate()
                .min_by_key(|(_, c)| **c)
                .map(|(k, _)| k)
                .unwrap_or(0);
            for k in 0..orbit.len() {
                let corner = orbit[(start + k) % orbit.len()];
                corner_region[corner.crossing][corner.quadrant as usize] = rid;
                corners.push(corner);
                let leaving = crossings[corner.crossing][((corner.quadrant + 1) % 4) as usize];
                let side = match leaving.dir {
                    Direction::Out => SegmentSide::Right,
                    Direction::In => SegmentSide::Left,
                };
                let slot = edge_regions.entry(leaving.edge).or_insert([usize::MAX; 2]);
                match side {
                    SegmentSide::Left => slot[0] = rid,
                    SegmentSide::Right => slot[1] = rid,
                }
                boundary.push((leaving.edge, side));
            }
        }
        regions.push(Region { id: rid, corners, boundary });
    }
    debug_assert!(edge_regions.values().all(|s| s[0] != usize::MAX && s[1] != usize::MAX));
    Ok((regions, corner_region, edge_regions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn euler_counts() {
        let u = fixtures::unknot1();
        assert_eq!((u.crossing_count(), u.edge_ids().len(), u.regions().len()), (1, 2, 3));
        let h = fixtures::hopf();
        assert_eq!((h.crossing_count(), h.edge_ids().len(), h.regions().len()), (2, 4, 4));
        assert_eq!(fixtures::trefoil().regions().len(), 5);
        assert_eq!(fixtures::whitehead().regions().len(), 7);
    }

    #[test]
    fn every_segment_has_two_incidences() {
        for d in fixtures::all() {
            let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for r in d.regions() {
                for (e, _) in &r.boundary {
                    *count.entry(*e).or_default() += 1;
                }
            }
            assert!(count.values().all(|&k| k == 2), "{}", d.name());
            assert_eq!(count.len(), d.edge_ids().len());
        }
    }

    #[test]
    fn rejects_edge_listed_three_times() {
        let json = r#"{"name":"bad","crossings":[
            {"darts":[{"edge":5,"dir":"in","strand":"under"},{"edge":5,"dir":"out","strand":"over"},
                      {"edge":5,"dir":"out","strand":"under"},{"edge":2,"dir":"in","strand":"over"}]}]}"#;
        assert!(matches!(LinkDiagram::parse(json), Err(Error::Validation(_))));
    }

    #[test]
    fn rejects_bad_slots_and_json() {
        let json = r#"{"crossings":[
            {"darts":[{"edge":1,"dir":"in","strand":"under"},{"edge":2,"dir":"in","strand":"under"},
                      {"edge":2,"dir":"out","strand":"over"},{"edge":1,"dir":"out","strand":"over"}]}]}"#;
        assert!(matches!(LinkDiagram::parse(json), Err(Error::Validation(_))));
        assert!(matches!(LinkDiagram::parse("{not json"), Err(Error::Parse(_))));
        assert!(matches!(
            LinkDiagram::parse(r#"{"crossings":[{"darts":[]}]}"#),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn rejects_nonplanar_rotation() {
        // Reversing the cyclic order at one crossing of the trefoil keeps the
        // strand pairing but the rotation system no longer embeds in the
        // sphere.
        let t = fixtures::trefoil();
        let mut crossings = t.crossings().to_vec();
        crossings[0].swap(1, 3);
        assert!(matches!(LinkDiagram::new("x", crossings), Err(Error::Validation(_))));
    }

    #[test]
    fn doc_round_trip() {
        let d = fixtures::fig8();
        let back = LinkDiagram::parse(&d.to_json()).unwrap();
        assert_eq!(back.to_doc(), d.to_doc());
    }

    #[test]
    fn crossing_signs() {
        let h = fixtures::hopf();
        assert_eq!([h.crossing_sign(0), h.crossing_sign(1)], [1, 1]);
        let m = h.mirror();
        assert_eq!([m.crossing_sign(0), m.crossing_sign(1)], [-1, -1]);
        assert_eq!(fixtures::unknot1().crossing_sign(0), 1);
    }

    #[test]
    fn alternating() {
        assert!(fixtures::trefoil().is_alternating());
        assert!(fixtures::hopf().is_alternating());
        assert!(!fixtures::trefoil().flip_crossing(0).is_alternating());
        assert!(fixtures::fig8().is_alternating());
        assert!(fixtures::l3().is_alternating());
    }

    #[test]
    fn split_diagram_shares_one_region() {
        let d = fixtures::split_trefoils();
        assert_eq!(d.components().len(), 2);
        // 5 + 5 faces with one pair fused
        assert_eq!(d.regions().len(), 9);
    }
}
