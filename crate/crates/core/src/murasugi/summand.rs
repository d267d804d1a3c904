use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dimer::{truncated_graph, FcGraph, WeightRule};
use crate::error::{Error, Result};
use crate::linkdiag::{Corner, CrossingId, Dart, DartRef, Direction, EdgeId, LinkDiagram, RegionId};

/// A diagram derived from `L` together with the correspondence that carries
/// its crossings and regions back into `L`.
#[derive(Clone, Debug, Serialize)]
pub struct Summand {
    #[serde(skip)]
    pub diagram: LinkDiagram,
    /// Distinguished segment of the summand.
    pub segment: EdgeId,
    /// `crossing_map[k]` is the crossing of `L` that crossing `k` came from.
    pub crossing_map: Vec<CrossingId>,
    /// For each segment of the summand, the segments of `L` it runs along.
    pub edge_paths: BTreeMap<EdgeId, Vec<EdgeId>>,
    /// Seifert circle of the summand that the splitting circle became.
    pub circle: Option<usize>,
}

impl Summand {
    /// Keeps `keep` and smooths everything else, following smoothed crossings
    /// until the next kept one. Each new segment is named after the first
    /// segment of `L` on its path.
    pub(super) fn build(d: &LinkDiagram, keep: &BTreeSet<CrossingId>, i: EdgeId, name: String) -> Result<Summand> {
        let kept: Vec<CrossingId> = keep.iter().copied().collect();
        let mut relabel: BTreeMap<DartRef, EdgeId> = BTreeMap::new();
        let mut edge_paths = BTreeMap::new();
        let limit = d.edge_ids().len() + 1;
        for &x in &kept {
            for p in 0..4u8 {
                let dart = d.crossings()[x][p as usize];
                if dart.dir != Direction::Out {
                    continue;
                }
                let first = dart.edge;
                let mut path = vec![first];
                let mut e = first;
                loop {
                    let head = d.segment(e).expect("edge of the diagram").head;
                    if keep.contains(&head.crossing) {
                        relabel.insert(head, first);
                        break;
                    }
                    e = d.dart(d.smoothing_partner(head)).edge;
                    path.push(e);
                    if path.len() > limit {
                        return Err(Error::Internal("smoothing path does not return to a kept crossing".into()));
                    }
                }
                edge_paths.insert(first, path);
            }
        }
        let crossings: Vec<[Dart; 4]> = kept
            .iter()
            .map(|&x| {
                let mut darts = d.crossings()[x];
                for (p, dart) in darts.iter_mut().enumerate() {
                    if dart.dir == Direction::In {
                        dart.edge = relabel[&DartRef { crossing: x, position: p as u8 }];
                    }
                }
                darts
            })
            .collect();
        let diagram = LinkDiagram::new(name, crossings)?;
        let segment = edge_paths
            .iter()
            .find(|(_, path)| path.contains(&i))
            .map(|(&e, _)| e)
            .ok_or_else(|| Error::Internal(format!("segment {i} is not on any summand path")))?;
        let circle = diagram.circle_of_edge(segment);
        Ok(Summand { diagram, segment, crossing_map: kept, edge_paths, circle })
    }

    pub fn crossing_in_l(&self, k: CrossingId) -> CrossingId {
        self.crossing_map[k]
    }

    pub fn crossing_index(&self) -> BTreeMap<CrossingId, CrossingId> {
        self.crossing_map.iter().enumerate().map(|(k, &x)| (x, k)).collect()
    }

    pub fn corner_in_l(&self, c: Corner) -> Corner {
        Corner::new(self.crossing_map[c.crossing], c.quadrant)
    }

    /// Regions of `L` met by the corners of each summand region.
    pub fn region_images(&self, l: &LinkDiagram) -> Vec<BTreeSet<RegionId>> {
        self.diagram
            .regions()
            .iter()
            .map(|r| r.corners.iter().map(|&c| l.region_of(self.corner_in_l(c))).collect())
            .collect()
    }

    /// Truncated graph of the summand written in the vertex names of `L`.
    /// Every present region must correspond to exactly one region of `L`.
    pub fn graph_in_l(&self, l: &LinkDiagram, rule: &WeightRule) -> Result<FcGraph> {
        let g = truncated_graph(&self.diagram, self.segment, rule)?;
        let images = self.region_images(l);
        let mut region = BTreeMap::new();
        for &w in &g.white {
            let img = &images[w];
            if img.len() != 1 {
                return Err(Error::Internal(format!(
                    "present region {w} of {} covers regions {img:?} of the original diagram",
                    self.diagram.name()
                )));
            }
            region.insert(w, *img.iter().next().expect("one image"));
        }
        let crossing: BTreeMap<CrossingId, CrossingId> =
            self.crossing_map.iter().enumerate().map(|(k, &x)| (k, x)).collect();
        g.relabel(&crossing, &region, |c| self.corner_in_l(c))
    }

    /// Closes each group of crossings of the summand's circle into its own
    /// loop: the incoming circle dart of the group's first crossing is fed by
    /// the outgoing circle segment of its last crossing. The new
    /// distinguished segment is the one that closes group `mark`.
    pub(super) fn swap_groups(&self, groups: &[Vec<CrossingId>], mark: usize, suffix: &str) -> Result<Summand> {
        let cid = self
            .circle
            .ok_or_else(|| Error::Internal("summand has no image of the splitting circle".into()))?;
        let d = &self.diagram;
        let circle = d.circle(cid)?;
        let index = self.crossing_index();
        let mut c_in: BTreeMap<CrossingId, DartRef> = BTreeMap::new();
        let mut c_out: BTreeMap<CrossingId, DartRef> = BTreeMap::new();
        for &e in &circle.segments {
            let s = d.segment(e).expect("circle segment");
            c_out.insert(s.tail.crossing, s.tail);
            c_in.insert(s.head.crossing, s.head);
        }
        let mut crossings = d.crossings().to_vec();
        let mut marked = None;
        for (j, group) in groups.iter().enumerate() {
            let members: BTreeSet<CrossingId> = group
                .iter()
                .map(|x| {
                    index
                        .get(x)
                        .copied()
                        .ok_or_else(|| Error::Internal(format!("crossing {x} is not in the summand")))
                })
                .collect::<Result<_>>()?;
            let pred = |k: CrossingId| {
                let e = d.dart(c_in[&k]).edge;
                d.segment(e).expect("segment").tail.crossing
            };
            let succ = |k: CrossingId| {
                let e = d.dart(c_out[&k]).edge;
                d.segment(e).expect("segment").head.crossing
            };
            let first = members.iter().copied().find(|&k| !members.contains(&pred(k)));
            let last = members.iter().copied().find(|&k| !members.contains(&succ(k)));
            let (Some(first), Some(last)) = (first, last) else {
                return Err(Error::Internal(format!("group {j} is not a proper arc of the circle")));
            };
            let label = d.dart(c_out[&last]).edge;
            let r = c_in[&first];
            crossings[r.crossing][r.position as usize].edge = label;
            if j == mark {
                marked = Some(label);
            }
        }
        let diagram = LinkDiagram::new(format!("{}-{suffix}", d.name()), crossings)?;
        let segment = marked.ok_or_else(|| Error::Internal("marked group missing".into()))?;
        Ok(Summand {
            circle: None,
            edge_paths: BTreeMap::new(),
            crossing_map: self.crossing_map.clone(),
            segment,
            diagram,
        })
    }
}
