//! Independent check of the state sum through Alexander's crossing/region
//! matrix.
//!
//! Each crossing contributes a row whose entries are `t, -t, 1, -1` placed in
//! its four corners according to where they sit relative to the under
//! strand. Deleting the columns of two adjacent regions and taking the
//! determinant gives the Alexander polynomial up to a unit. The determinant
//! is taken over `Z[t]` with fraction-free elimination and its own dense
//! polynomial type, so nothing here leans on the state-sum machinery.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linkdiag::{Direction, EdgeId, LinkDiagram, Strand};

/// Dense polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<BigInt>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: i64) -> Self {
        Poly(vec![BigInt::from(c)]).trimmed()
    }

    fn t_times(c: i64) -> Self {
        Poly(vec![BigInt::zero(), BigInt::from(c)]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (k, c) in self.0.iter().enumerate() {
            v[k] += c;
        }
        for (k, c) in o.0.iter().enumerate() {
            v[k] += c;
        }
        Poly(v).trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly(v).trimmed()
    }

    /// Exact quotient; fails if `d` does not divide `self` in `Z[t]`.
    fn div_exact(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::Internal("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let mut rem = self.0.clone();
        let dl = d.0.len();
        if rem.len() < dl {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        let lead = d.0.last().expect("nonzero divisor");
        let mut q = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(Error::Internal("inexact polynomial division".into()));
            }
            let c = top / lead;
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(Poly(q).trimmed())
    }
}

/// Bareiss elimination. Row swaps track the sign.
fn determinant(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(Poly::constant(1));
    }
    let mut negate = false;
    let mut prev = Poly::constant(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Corner labels, listed for the corners behind-left, behind-right,
/// ahead-right and ahead-left of the under strand, each coded as
/// `(constant, coefficient of t)`.
const LABELS: [(i64, i64); 4] = [(1, 0), (0, -1), (0, 1), (-1, 0)];

fn label(l: (i64, i64)) -> Poly {
    Poly::constant(l.0).add(&Poly::t_times(l.1))
}

fn alexander_matrix(d: &LinkDiagram, labels: &[(i64, i64); 4]) -> Vec<Vec<Poly>> {
    let regions = d.regions().len();
    let mut rows = Vec::with_capacity(d.crossing_count());
    for (c, darts) in d.crossings().iter().enumerate() {
        let p_in = (0..4)
            .find(|&p| darts[p].strand == Strand::Under && darts[p].dir == Direction::In)
            .expect("validated crossing has an incoming under dart");
        let mut row = vec![Poly::zero(); regions];
        let corners = d.corner_regions(c);
        for (slot, offset) in [3usize, 0, 1, 2].into_iter().enumerate() {
            let q = (p_in + offset) % 4;
            let r = corners[q];
            row[r] = row[r].add(&label(labels[slot]));
        }
        rows.push(row);
    }
    rows
}

fn determinant_with(d: &LinkDiagram, i: EdgeId, labels: &[(i64, i64); 4]) -> Result<LaurentPoly> {
    let [left, right] = d
        .edge_regions(i)
        .ok_or_else(|| Error::Precondition(format!("segment {i} does not exist")))?;
    if left == right {
        return Err(Error::Degenerate(i));
    }
    let full = alexander_matrix(d, labels);
    let kept: Vec<usize> = (0..d.regions().len()).filter(|&r| r != left && r != right).collect();
    if kept.len() != d.crossing_count() {
        return Ok(LaurentPoly::zero());
    }
    let m: Vec<Vec<Poly>> = full
        .into_iter()
        .map(|row| kept.iter().map(|&r| row[r].clone()).collect())
        .collect();
    let det = determinant(m)?;
    Ok(LaurentPoly::from_terms(
        det.0.iter().enumerate().map(|(k, c)| (2 * k as i64, c.clone())),
    ))
}

/// The Alexander polynomial of `d` up to a unit `±t^(m/2)`, normalized with
/// lowest exponent 0 and positive top coefficient.
pub fn determinant_oracle(d: &LinkDiagram, i: EdgeId) -> Result<LaurentPoly> {
    Ok(determinant_with(d, i, &LABELS)?.normalize_unit())
}
