use std::collections::BTreeMap;

use serde::Serialize;

use super::{FcEdge, FcGraph};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};

pub const DEFAULT_MAX_MATCHINGS: u64 = 10_000_000;
pub const DEFAULT_MAX_CROSSINGS: usize = 24;

/// Limits on enumeration work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_matchings: u64,
    pub max_crossings: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_matchings: DEFAULT_MAX_MATCHINGS, max_crossings: DEFAULT_MAX_CROSSINGS }
    }
}

impl Caps {
    /// Defaults overridden by `ALEXDIMER_MAX_MATCHINGS` and
    /// `ALEXDIMER_MAX_CROSSINGS` when they parse.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = std::env::var("ALEXDIMER_MAX_MATCHINGS").ok().and_then(|s| s.parse().ok()) {
            caps.max_matchings = v;
        }
        if let Some(v) = std::env::var("ALEXDIMER_MAX_CROSSINGS").ok().and_then(|s| s.parse().ok()) {
            caps.max_crossings = v;
        }
        caps
    }

    pub fn check_crossings(&self, n: usize) -> Result<()> {
        if n > self.max_crossings {
            Err(Error::ResourceCap(format!(
                "{n} crossings exceeds the limit of {}",
                self.max_crossings
            )))
        } else {
            Ok(())
        }
    }
}

/// A perfect matching: indices into the graph's edge list, one per black
/// vertex in increasing black order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub weight: Monomial,
}

impl Matching {
    pub fn edge_refs<'g>(&self, g: &'g FcGraph) -> impl Iterator<Item = &'g FcEdge> + 'g {
        let idx = self.edges.clone();
        idx.into_iter().map(move |k| &g.edges[k])
    }
}

struct Search {
    /// Edge indices at each black slot, ordered by (white id, quadrant).
    at_black: Vec<Vec<usize>>,
    at_white: Vec<Vec<usize>>,
    black_slot: Vec<usize>,
    white_slot: Vec<usize>,
    cap: u64,
    found: u64,
}

#[derive(Clone)]
struct State {
    black_edge: Vec<Option<usize>>,
    white_used: Vec<bool>,
}

impl Search {
    fn new(g: &FcGraph, cap: u64) -> Self {
        let bindex: BTreeMap<usize, usize> = g.black.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let windex: BTreeMap<usize, usize> = g.white.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let mut at_black = vec![Vec::new(); g.black.len()];
        let mut at_white = vec![Vec::new(); g.white.len()];
        let mut black_slot = vec![usize::MAX; g.edges.len()];
        let mut white_slot = vec![usize::MAX; g.edges.len()];
        for (k, e) in g.edges.iter().enumerate() {
            if let (Some(&b), Some(&w)) = (bindex.get(&e.black), windex.get(&e.white)) {
                at_black[b].push(k);
                at_white[w].push(k);
                black_slot[k] = b;
                white_slot[k] = w;
            }
        }
        for list in at_black.iter_mut() {
            list.sort_by_key(|&k| (g.edges[k].white, g.edges[k].quadrant));
        }
        Search { at_black, at_white, black_slot, white_slot, cap, found: 0 }
    }

    fn take(&self, s: &mut State, k: usize) {
        s.black_edge[self.black_slot[k]] = Some(k);
        s.white_used[self.white_slot[k]] = true;
    }

    fn free_black(&self, s: &State, b: usize) -> impl Iterator<Item = usize> + '_ {
        let used = s.white_used.clone();
        self.at_black[b].iter().copied().filter(move |&k| !used[self.white_slot[k]])
    }

    /// Matches every vertex with a single remaining option. Returns false
    /// when some vertex has none.
    fn propagate(&self, s: &mut State) -> bool {
        loop {
            let mut changed = false;
            for b in 0..self.at_black.len() {
                if s.black_edge[b].is_some() {
                    continue;
                }
                let mut free = self.at_black[b].iter().copied().filter(|&k| !s.white_used[self.white_slot[k]]);
                match (free.next(), free.next()) {
                    (None, _) => return false,
                    (Some(k), None) => {
                        self.take(s, k);
                        changed = true;
                    }
                    _ => {}
                }
            }
            for w in 0..self.at_white.len() {
                if s.white_used[w] {
                    continue;
                }
                let mut free = self.at_white[w].iter().copied().filter(|&k| s.black_edge[self.black_slot[k]].is_none());
                match (free.next(), free.next()) {
                    (None, _) => return false,
                    (Some(k), None) => {
                        self.take(s, k);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, mut s: State, visit: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if !self.propagate(&mut s) {
            return Ok(());
        }
        let Some(b) = s.black_edge.iter().position(Option::is_none) else {
            self.found += 1;
            if self.found > self.cap {
                return Err(Error::ResourceCap(format!(
                    "more than {} perfect matchings",
                    self.cap
                )));
            }
            let edges: Vec<usize> = s.black_edge.iter().map(|e| e.expect("all matched")).collect();
            return visit(&edges);
        };
        let options: Vec<usize> = self.free_black(&s, b).collect();
        for k in options {
            let mut next = s.clone();
            self.take(&mut next, k);
            self.run(next, visit)?;
        }
        Ok(())
    }
}

/// Calls `visit` once per perfect matching with its edge indices, in a
/// fixed order: branch on the lowest unmatched black vertex, trying its
/// edges by white id and then quadrant.
pub fn enumerate_matchings(
    g: &FcGraph,
    caps: &Caps,
    mut visit: impl FnMut(&[usize]) -> Result<()>,
) -> Result<u64> {
    caps.check_crossings(g.black.len())?;
    if g.black.len() != g.white.len() {
        return Ok(0);
    }
    let mut search = Search::new(g, caps.max_matchings);
    let state = State { black_edge: vec![None; g.black.len()], white_used: vec![false; g.white.len()] };
    search.run(state, &mut visit)?;
    Ok(search.found)
}

pub fn matching_weight(g: &FcGraph, edges: &[usize]) -> Monomial {
    edges.iter().fold(Monomial::ONE, |acc, &k| acc * g.edges[k].weight)
}

pub fn matchings(g: &FcGraph, caps: &Caps) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    enumerate_matchings(g, caps, |edges| {
        out.push(Matching { edges: edges.to_vec(), weight: matching_weight(g, edges) });
        Ok(())
    })?;
    Ok(out)
}

/// Accumulates signed monomials with machine-integer counts.
#[derive(Default, Clone, Debug)]
pub struct Tally(BTreeMap<i64, i64>);

impl Tally {
    pub fn add(&mut self, m: Monomial) {
        *self.0.entry(m.exp2).or_default() += i64::from(m.sign());
    }

    pub fn add_abs(&mut self, m: Monomial) {
        *self.0.entry(m.exp2).or_default() += 1;
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().map(|(&e, &c)| (e, c)))
    }
}

/// Sum of matching weights.
pub fn graph_sum(g: &FcGraph, caps: &Caps) -> Result<LaurentPoly> {
    let mut tally = Tally::default();
    enumerate_matchings(g, caps, |edges| {
        tally.add(matching_weight(g, edges));
        Ok(())
    })?;
    Ok(tally.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::{build_fc_graph, truncated_graph, WeightRule};
    use crate::fixtures;

    fn brute_force(g: &FcGraph) -> Vec<Vec<usize>> {
        // Every choice of one edge per black vertex, kept when whites are
        // distinct.
        let per_black: Vec<Vec<usize>> = g
            .black
            .iter()
            .map(|&b| (0..g.edges.len()).filter(|&k| g.edges[k].black == b && g.white.contains(&g.edges[k].white)).collect())
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; per_black.len()];
        if per_black.iter().any(Vec::is_empty) || g.black.len() != g.white.len() {
            return out;
        }
        loop {
            let chosen: Vec<usize> = pick.iter().enumerate().map(|(b, &i)| per_black[b][i]).collect();
            let mut whites: Vec<usize> = chosen.iter().map(|&k| g.edges[k].white).collect();
            whites.sort_unstable();
            whites.dedup();
            if whites.len() == chosen.len() {
                out.push(chosen);
            }
            let mut pos = 0;
            loop {
                if pos == pick.len() {
                    return out;
                }
                pick[pos] += 1;
                if pick[pos] < per_black[pos].len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn hopf_has_two_matchings() {
        let g = truncated_graph(&fixtures::hopf(), 1, &WeightRule::default()).unwrap();
        assert_eq!(matchings(&g, &Caps::default()).unwrap().len(), 2);
    }

    #[test]
    fn unknot_has_one_matching() {
        let g = truncated_graph(&fixtures::unknot1(), 1, &WeightRule::default()).unwrap();
        assert_eq!(matchings(&g, &Caps::default()).unwrap().len(), 1);
    }

    #[test]
    fn unbalanced_graph_has_none() {
        let d = fixtures::split_kinks();
        let g = build_fc_graph(&d);
        assert_eq!(enumerate_matchings(&g, &Caps::default(), |_| Ok(())).unwrap(), 0);
    }

    #[test]
    fn agrees_with_brute_force() {
        for d in fixtures::all() {
            if d.crossing_count() > 8 {
                continue;
            }
            for e in d.edge_ids() {
                let Ok(g) = truncated_graph(&d, e, &WeightRule::default()) else { continue };
                let mut fast: Vec<Vec<usize>> = matchings(&g, &Caps::default()).unwrap().into_iter().map(|m| m.edges).collect();
                let mut slow = brute_force(&g);
                fast.sort();
                slow.sort();
                assert_eq!(fast, slow, "{} segment {e}", d.name());
            }
        }
    }

    #[test]
    fn order_is_deterministic() {
        let g = truncated_graph(&fixtures::whitehead(), 1, &WeightRule::default()).unwrap();
        let a = matchings(&g, &Caps::default()).unwrap();
        let b = matchings(&g, &Caps::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn caps_are_enforced() {
        let g = truncated_graph(&fixtures::fig8(), 1, &WeightRule::default()).unwrap();
        let tight = Caps { max_matchings: 1, ..Caps::default() };
        assert!(matches!(graph_sum(&g, &tight), Err(Error::ResourceCap(_))));
        let few = Caps { max_crossings: 2, ..Caps::default() };
        assert!(matches!(graph_sum(&g, &few), Err(Error::ResourceCap(_))));
    }
}
