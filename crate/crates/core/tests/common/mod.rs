//! Polynomial strategies shared by the property suites.

#![allow(dead_code)]

use alexdimer::laurent::{CoeffSeq, LaurentPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Arbitrary polynomial whose doubled exponents share one parity.
pub fn poly() -> impl Strategy<Value = LaurentPoly> {
    (any::<bool>(), prop::collection::vec((-6i64..=6, -30i64..=30), 0..8)).prop_map(|(odd, terms)| {
        LaurentPoly::from_terms(terms.into_iter().map(|(k, c)| (2 * k + i64::from(odd), c)))
    })
}

/// Two polynomials that never disagree in sign at a shared exponent: a
/// sign is drawn per exponent and both take magnitudes under it.
pub fn noncanceling_pair() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    prop::collection::vec((any::<bool>(), 0i64..=20, 0i64..=20), 1..10).prop_map(|rows| {
        let mut f = LaurentPoly::zero();
        let mut g = LaurentPoly::zero();
        for (k, (neg, a, b)) in rows.into_iter().enumerate() {
            let s = if neg { -1 } else { 1 };
            let e = 2 * (k as i64 - 4);
            f.add_term(e, BigInt::from(s * a));
            g.add_term(e, BigInt::from(s * b));
        }
        (f, g)
    })
}

/// Nonnegative magnitudes, optionally with the sign alternating by
/// exponent, times an overall sign. Two such factors built with the same
/// alternation choice have a non-canceling product.
fn signed_pattern(alternate: bool) -> impl Strategy<Value = LaurentPoly> {
    (any::<bool>(), -4i64..=4, prop::collection::vec(0i64..=15, 1..8)).prop_map(move |(neg, low, mags)| {
        let overall = if neg { -1 } else { 1 };
        LaurentPoly::from_terms(mags.into_iter().enumerate().map(|(k, a)| {
            let e = low + k as i64;
            let alt = if alternate && e.rem_euclid(2) == 1 { -1 } else { 1 };
            (2 * e, overall * alt * a)
        }))
    })
}

pub fn noncanceling_factors() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    any::<bool>().prop_flat_map(|alt| (signed_pattern(alt), signed_pattern(alt)))
}

fn increasing(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    (1i64..=5, prop::collection::vec(1i64..=6, 0..max_len)).prop_map(|(start, steps)| {
        let mut v = vec![start];
        for s in steps {
            let last = *v.last().unwrap();
            v.push(last + s);
        }
        v
    })
}

/// A positive trapezoidal sequence: strict rise, plateau, strict fall.
pub fn trapezoid() -> impl Strategy<Value = CoeffSeq> {
    (any::<bool>(), increasing(4), any::<bool>(), increasing(4), 1usize..=3, 1i64..=4).prop_map(
        |(use_left, left, use_right, right, plateau, bump)| {
            let left = if use_left { left } else { Vec::new() };
            let right = if use_right { right } else { Vec::new() };
            let top = left.iter().chain(&right).max().copied().unwrap_or(0) + bump;
            let mut seq = left;
            seq.extend(std::iter::repeat_n(top, plateau));
            seq.extend(right.into_iter().rev());
            CoeffSeq::from_ints(&seq)
        },
    )
}

/// A centered polynomial with nonnegative trapezoidal coefficients.
pub fn centered_trapezoid() -> impl Strategy<Value = LaurentPoly> {
    (increasing(4), any::<bool>(), 1usize..=3, 1i64..=4).prop_map(|(left, use_left, plateau, bump)| {
        let left = if use_left { left } else { Vec::new() };
        let top = left.last().copied().unwrap_or(0) + bump;
        let mut seq = left.clone();
        seq.extend(std::iter::repeat_n(top, plateau));
        seq.extend(left.into_iter().rev());
        centered_from(&seq)
    })
}

/// Places `seq` on whole steps of `t` symmetrically about zero.
pub fn centered_from(seq: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(-(seq.len() as i64 - 1), seq)
}

pub fn seq_poly(seq: &CoeffSeq) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &seq.0)
}

/// A symmetric or, when `anti`, antisymmetric polynomial.
pub fn centered_with(anti: bool) -> impl Strategy<Value = LaurentPoly> {
    (any::<bool>(), prop::collection::vec((1i64..=6, -20i64..=20), 0..5)).prop_map(move |(odd, terms)| {
        let s = if anti { -1 } else { 1 };
        let mut f = LaurentPoly::zero();
        for (k, c) in terms {
            let e = 2 * k + i64::from(odd);
            f.add_term(e, BigInt::from(c));
            f.add_term(-e, BigInt::from(s * c));
        }
        f
    })
}
