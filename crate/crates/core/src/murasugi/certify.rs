use serde::Serialize;

use super::{split_along, swap_move_diagrams};
use crate::dimer::{default_segment, state_sum_with, Caps, WeightRule};
use crate::error::{Error, Result};
use crate::laurent::{CoeffSeq, LaurentPoly};
use crate::linkdiag::{EdgeId, LinkDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateNode {
    pub diagram: String,
    pub crossings: usize,
    pub segment: EdgeId,
    /// Circle split at this node; `None` at a special alternating leaf.
    pub circle: Option<usize>,
    pub length: Option<usize>,
    pub polynomial: LaurentPoly,
    pub abs_sequence: CoeffSeq,
    pub trapezoidal: bool,
    pub centered: bool,
    /// Whether the polynomial equals the one rebuilt from the children.
    pub recombination: Option<bool>,
    /// `L'`, `L''`, then `L~'`, `L~''` when the length is 2.
    pub children: Vec<CertificateNode>,
}

impl CertificateNode {
    fn ok(&self) -> bool {
        self.trapezoidal
            && self.centered
            && self.recombination != Some(false)
            && self.children.iter().all(CertificateNode::ok)
    }

    pub fn count(&self) -> (usize, usize) {
        if self.children.is_empty() {
            return (1, 1);
        }
        self.children.iter().fold((1, 0), |(n, l), c| {
            let (cn, cl) = c.count();
            (n + cn, l + cl)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrapezoidCertificate {
    pub verdict: bool,
    pub nodes: usize,
    pub leaves: usize,
    pub root: CertificateNode,
}

fn check_hypothesis(d: &LinkDiagram) -> Result<()> {
    if !d.is_alternating() {
        return Err(Error::Hypothesis(format!("{} is not alternating", d.name())));
    }
    for c in d.t2_circles() {
        let l = d.t2_length(c)?;
        if l >= 3 {
            return Err(Error::Hypothesis(format!(
                "circle {} of {} has length {l}; use the explorer instead",
                c.id,
                d.name()
            )));
        }
    }
    Ok(())
}

fn node(d: &LinkDiagram, segment: EdgeId, rule: &WeightRule, caps: &Caps) -> Result<CertificateNode> {
    check_hypothesis(d)?;
    let polynomial = state_sum_with(d, segment, rule, caps)?;
    let abs_sequence = polynomial.abs_poly().coefficient_sequence();
    let mut n = CertificateNode {
        diagram: d.name().to_string(),
        crossings: d.crossing_count(),
        segment,
        circle: None,
        length: None,
        trapezoidal: abs_sequence.is_trapezoidal(),
        centered: polynomial.is_centered(),
        abs_sequence,
        polynomial,
        recombination: None,
        children: Vec::new(),
    };
    let Some(c) = d.t2_circles().first().map(|c| (*c).clone()) else {
        return Ok(n);
    };
    let length = d.t2_length(&c)?;
    n.circle = Some(c.id);
    n.length = Some(length);
    if length == 0 {
        n.recombination = Some(n.polynomial.is_zero());
        return Ok(n);
    }
    let s = split_along(d, &c)?;
    let a = node(&s.prime.diagram, s.prime.segment, rule, caps)?;
    let b = node(&s.double.diagram, s.double.segment, rule, caps)?;
    let mut rebuilt = &a.polynomial * &b.polynomial;
    n.children = vec![a, b];
    if length == 2 {
        let (ta, tb) = swap_move_diagrams(&s)?;
        let ta = node(&ta.diagram, ta.segment, rule, caps)?;
        let tb = node(&tb.diagram, tb.segment, rule, caps)?;
        rebuilt = &rebuilt + &(&ta.polynomial * &tb.polynomial);
        n.children.push(ta);
        n.children.push(tb);
    }
    n.recombination = Some(rebuilt == n.polynomial);
    Ok(n)
}

/// Recursively decomposes an alternating diagram whose T2 circles all have
/// length at most 2, checking at every node that the absolute coefficients
/// are trapezoidal and that the node's polynomial is rebuilt exactly from
/// its children.
pub fn certify_trapezoid(d: &LinkDiagram, rule: &WeightRule, caps: &Caps) -> Result<TrapezoidCertificate> {
    check_hypothesis(d)?;
    let root = node(d, default_segment(d)?, rule, caps)?;
    let (nodes, leaves) = root.count();
    Ok(TrapezoidCertificate { verdict: root.ok(), nodes, leaves, root })
}
