//! Partitions of the state sum by flock-edge usage, for circles where the
//! two-term identity no longer accounts for every matching.

use std::collections::BTreeMap;

use serde::Serialize;

use super::checks::{decompose_state_sum, flock_counts};
use super::SplitContext;
use crate::dimer::{enumerate_matchings, matching_weight, Tally};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlockRow {
    /// Flock edge numbers used, ascending.
    pub key: Vec<usize>,
    pub matchings: u64,
    /// Sum of `|wt(M)|` over the row.
    pub polynomial: LaurentPoly,
    pub centered: bool,
    pub trapezoidal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlockTable {
    pub length: usize,
    pub flock_edges: usize,
    pub rows: Vec<FlockRow>,
    /// `|wt|` sums over the 0-flock and the full-flock strata.
    pub p0_abs: LaurentPoly,
    pub pmax_abs: LaurentPoly,
    pub abs_delta: LaurentPoly,
    /// Rows plus the two extreme strata give `|Delta_L|`.
    pub conserved: bool,
}

/// One row per flock-edge subset used by some matching outside the two
/// extreme strata.
pub fn explore_flock_subsets(ctx: &SplitContext) -> Result<FlockTable> {
    let s = &ctx.split;
    if s.length < 3 {
        return Err(Error::Length { required: 3, found: s.length });
    }
    let top = 2 * (s.length - 1);
    let mut rows: BTreeMap<Vec<usize>, (u64, Tally)> = BTreeMap::new();
    let (mut p0, mut pmax, mut all) = (Tally::default(), Tally::default(), Tally::default());
    enumerate_matchings(&ctx.graph, &ctx.caps, |edges| {
        let (p, d, used) = flock_counts(s, &ctx.graph, edges);
        let w = matching_weight(&ctx.graph, edges);
        all.add(w);
        match p + d {
            0 => p0.add_abs(w),
            k if k == top => pmax.add_abs(w),
            _ => {
                let row = rows.entry(used).or_default();
                row.0 += 1;
                row.1.add_abs(w);
            }
        }
        Ok(())
    })?;
    let rows: Vec<FlockRow> = rows
        .into_iter()
        .map(|(key, (matchings, tally))| {
            let polynomial = tally.to_poly();
            FlockRow {
                key,
                matchings,
                centered: polynomial.is_centered(),
                trapezoidal: polynomial.coefficient_sequence().is_trapezoidal(),
                polynomial,
            }
        })
        .collect();
    let abs_delta = all.to_poly().abs_poly();
    let (p0_abs, pmax_abs) = (p0.to_poly(), pmax.to_poly());
    let total = rows.iter().fold(&p0_abs + &pmax_abs, |acc, r| &acc + &r.polynomial);
    Ok(FlockTable {
        length: s.length,
        flock_edges: s.flock.len(),
        conserved: total == abs_delta,
        rows,
        p0_abs,
        pmax_abs,
        abs_delta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    /// `1` at position `k` when flock edge `k + 1` is used.
    pub key: String,
    pub matchings: u64,
    pub polynomial: LaurentPoly,
    pub centered: bool,
    pub trapezoidal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeLevel {
    pub level: usize,
    pub nodes: Vec<TreeNode>,
    pub delta: LaurentPoly,
    pub conserved: bool,
}

/// Groups matchings by which of the first `level` flock edges they use.
/// Only patterns that occur are listed.
pub fn explore_tree(ctx: &SplitContext, level: usize) -> Result<TreeLevel> {
    let s = &ctx.split;
    if s.length < 2 {
        return Err(Error::Length { required: 2, found: s.length });
    }
    if level > s.flock.len() {
        return Err(Error::Precondition(format!(
            "level {level} exceeds the {} flock edges",
            s.flock.len()
        )));
    }
    let mut nodes: BTreeMap<String, (u64, Tally)> = BTreeMap::new();
    let mut all = Tally::default();
    enumerate_matchings(&ctx.graph, &ctx.caps, |edges| {
        let (_, _, used) = flock_counts(s, &ctx.graph, edges);
        let key: String = (1..=level).map(|k| if used.contains(&k) { '1' } else { '0' }).collect();
        let w = matching_weight(&ctx.graph, edges);
        all.add(w);
        let node = nodes.entry(key).or_default();
        node.0 += 1;
        node.1.add(w);
        Ok(())
    })?;
    let nodes: Vec<TreeNode> = nodes
        .into_iter()
        .map(|(key, (matchings, tally))| {
            let polynomial = tally.to_poly();
            TreeNode {
                key,
                matchings,
                centered: polynomial.is_centered(),
                trapezoidal: polynomial.abs_poly().coefficient_sequence().is_trapezoidal(),
                polynomial,
            }
        })
        .collect();
    let delta = all.to_poly();
    let total: LaurentPoly = nodes.iter().map(|n| n.polynomial.clone()).sum();
    Ok(TreeLevel { level, conserved: total == delta, nodes, delta })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemainderReport {
    pub hypothesis_met: bool,
    pub polynomial: LaurentPoly,
    pub centered: bool,
    pub trapezoidal: bool,
}

/// `|Delta_L| - |Delta_L'||Delta_L''| - |Delta_~L'||Delta_~L''|`, reported
/// with its shape verdicts. Nothing here is asserted.
pub fn remainder_observation(ctx: &SplitContext) -> Result<RemainderReport> {
    let dc = decompose_state_sum(ctx)?;
    let polynomial = &(&dc.delta.abs_poly() - &(&dc.delta_prime.abs_poly() * &dc.delta_double.abs_poly()))
        - &(&dc.delta_tilde_prime.abs_poly() * &dc.delta_tilde_double.abs_poly());
    Ok(RemainderReport {
        hypothesis_met: ctx.diagram.is_alternating(),
        centered: polynomial.is_centered(),
        trapezoidal: polynomial.coefficient_sequence().is_trapezoidal(),
        polynomial,
    })
}
