//! Constructors for common diagram families.

use std::collections::BTreeMap;

use super::{Dart, Direction, EdgeId, LinkDiagram, Strand};
use crate::error::{Error, Result};

fn dart(edge: EdgeId, dir: Direction, strand: Strand) -> Dart {
    Dart { edge, dir, strand }
}

/// Closure of a braid word on `strands` strands. Letter `k > 0` is the
/// generator crossing positions `k` and `k + 1` positively, `-k` its
/// inverse. Strands run upward and each crossing lists its darts
/// counterclockwise from the lower-left one.
///
/// Every generator must occur, otherwise the closure would contain a
/// crossingless loop.
pub fn closed_braid(name: impl Into<String>, strands: usize, word: &[i32]) -> Result<LinkDiagram> {
    if strands < 2 {
        return Err(Error::Validation("a braid needs at least two strands".into()));
    }
    let mut used = vec![false; strands - 1];
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if g == 0 || k >= strands {
            return Err(Error::Validation(format!(
                "generator {g} is out of range for {strands} strands"
            )));
        }
        used[k - 1] = true;
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(Error::Validation(format!(
            "generator {} never occurs, so the closure has a free loop",
            k + 1
        )));
    }

    let mut next_id: EdgeId = strands as EdgeId + 1;
    let mut current: Vec<EdgeId> = (1..=strands as EdgeId).collect();
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let k = g.unsigned_abs() as usize - 1;
        let (sw, se) = (current[k], current[k + 1]);
        let (ne, nw) = (next_id, next_id + 1);
        next_id += 2;
        let (a, b) = if g > 0 {
            (Strand::Over, Strand::Under)
        } else {
            (Strand::Under, Strand::Over)
        };
        crossings.push([
            dart(sw, Direction::In, a),
            dart(se, Direction::In, b),
            dart(ne, Direction::Out, a),
            dart(nw, Direction::Out, b),
        ]);
        current[k] = nw;
        current[k + 1] = ne;
    }

    // Glue the top of each position back onto its bottom.
    let glue: BTreeMap<EdgeId, EdgeId> = current
        .iter()
        .enumerate()
        .map(|(p, &top)| (top, p as EdgeId + 1))
        .collect();
    let mut renumber: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for darts in crossings.iter_mut() {
        for d in darts.iter_mut() {
            let glued = glue.get(&d.edge).copied().unwrap_or(d.edge);
            let fresh = renumber.len() as EdgeId + 1;
            d.edge = *renumber.entry(glued).or_insert(fresh);
        }
    }
    LinkDiagram::new(name, crossings)
}

/// Places two diagrams side by side. Edge ids of `b` are shifted past those
/// of `a`.
pub fn disjoint_union(name: impl Into<String>, a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    let shift = a.edge_ids().last().copied().unwrap_or(0);
    let mut crossings = a.crossings().to_vec();
    crossings.extend(
        b.crossings()
            .iter()
            .map(|darts| darts.map(|d| Dart { edge: d.edge + shift, ..d })),
    );
    LinkDiagram::new(name, crossings)
}

/// Reads planar-diagram notation for knots, e.g. `X[1,4,2,5] X[3,6,4,1]
/// X[5,2,6,3]`. Each `X[i,j,k,l]` starts at the incoming under edge and
/// goes counterclockwise; edge labels increase along the orientation.
pub fn from_pd(name: impl Into<String>, code: &str) -> Result<LinkDiagram> {
    let mut quads: Vec<[EdgeId; 4]> = Vec::new();
    let mut rest = code.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| Error::Parse(format!("expected X[ at {rest:?}")))?;
        let end = body
            .find(']')
            .ok_or_else(|| Error::Parse("unterminated X[".into()))?;
        let nums: Vec<EdgeId> = body[..end]
            .split(',')
            .map(|s| s.trim().parse::<EdgeId>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        let quad: [EdgeId; 4] = nums
            .try_into()
            .map_err(|_| Error::Parse("each X[...] needs four labels".into()))?;
        quads.push(quad);
        rest = body[end + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    if quads.is_empty() {
        return Err(Error::Parse("no crossings in PD code".into()));
    }
    let n = 2 * quads.len() as EdgeId;
    let succ = |a: EdgeId| a % n + 1;
    let crossings = quads
        .iter()
        .map(|&[i, j, k, l]| {
            let (dj, dl) = if succ(j) == l {
                (Direction::In, Direction::Out)
            } else {
                (Direction::Out, Direction::In)
            };
            [
                dart(i, Direction::In, Strand::Under),
                dart(j, dj, Strand::Over),
                dart(k, Direction::Out, Strand::Under),
                dart(l, dl, Strand::Over),
            ]
        })
        .collect();
    LinkDiagram::new(name, crossings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_rejects_missing_generator() {
        assert!(closed_braid("x", 3, &[1, 1]).is_err());
        assert!(closed_braid("x", 2, &[2]).is_err());
        assert!(closed_braid("x", 2, &[0]).is_err());
    }

    #[test]
    fn braid_edges_are_compact() {
        let d = closed_braid("t", 2, &[1, 1, 1]).unwrap();
        assert_eq!(d.edge_ids(), (1..=6).collect::<Vec<_>>());
        assert_eq!(d.writhe(), 3);
        let m = closed_braid("t", 2, &[-1, -1, -1]).unwrap();
        assert_eq!(m.writhe(), -3);
    }

    #[test]
    fn pd_trefoil() {
        let d = from_pd("3_1", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.regions().len(), 5);
        assert!(d.is_alternating());
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn pd_figure_eight() {
        let d = from_pd("4_1", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        assert_eq!(d.regions().len(), 6);
        assert!(d.is_alternating());
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn pd_rejects_garbage() {
        assert!(matches!(from_pd("x", "Y[1,2]"), Err(Error::Parse(_))));
        assert!(matches!(from_pd("x", "X[1,2,3]"), Err(Error::Parse(_))));
        assert!(matches!(from_pd("x", ""), Err(Error::Parse(_))));
    }

    #[test]
    fn union_shifts_edges() {
        let t = closed_braid("t", 2, &[1, 1, 1]).unwrap();
        let u = disjoint_union("tt", &t, &t).unwrap();
        assert_eq!(u.edge_ids().len(), 12);
        assert_eq!(u.components().len(), 2);
    }
}
