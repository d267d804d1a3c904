//! Exact Laurent polynomials in `t^(1/2)`.
//!
//! Exponents are stored doubled, so `t^(3/2)` lives at key `3` and `t^(-1)`
//! at key `-2`. Coefficients are arbitrary precision and zero coefficients
//! are never stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// A half-integer exponent, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A signed monomial `±t^(k/2)`. Edge weights of the face-crossing graph are
/// monomials, and so is the weight of every perfect matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub negative: bool,
    pub exp2: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { negative: false, exp2: 0 };

    pub fn new(sign: i8, exp2: i64) -> Self {
        Monomial { negative: sign < 0, exp2 }
    }

    pub fn sign(self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn abs(self) -> Self {
        Monomial { negative: false, exp2: self.exp2 }
    }

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign(), self.exp2)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial {
            negative: self.negative != rhs.negative,
            exp2: self.exp2 + rhs.exp2,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

// Serialized as the pair (sign, doubled_exponent).
impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.sign(), self.exp2).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (sign, exp2) = <(i8, i64)>::deserialize(d)?;
        if sign != 1 && sign != -1 {
            return Err(de::Error::custom("monomial sign must be 1 or -1"));
        }
        Ok(Monomial::new(sign, exp2))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp2: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp2, coeff.into());
        p
    }

    /// Builds a polynomial from `(doubled_exponent, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients listed from the lowest exponent `low_exp2` upwards, one
    /// per whole power of `t`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(low_exp2: i64, coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (low_exp2 + 2 * k as i64, c.clone())),
        )
    }

    pub fn add_term(&mut self, exp2: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp2).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp2);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp2: i64) -> BigInt {
        self.coeffs.get(&exp2).cloned().unwrap_or_default()
    }

    pub fn min_exp2(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp2(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree span `max - min` in whole powers of `t` (as a half-integer).
    pub fn span(&self) -> Option<HalfInt> {
        Some(HalfInt(self.max_exp2()? - self.min_exp2()?))
    }

    pub fn support(&self) -> BTreeSet<HalfInt> {
        self.coeffs.keys().map(|&e| HalfInt(e)).collect()
    }

    pub fn abs_poly(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.abs())).collect(),
        }
    }

    /// `f(t^-1)`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    /// Multiplication by `t^(exp2/2)`.
    pub fn shift(&self, exp2: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e + exp2, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c * k)))
    }

    pub fn is_centered(&self) -> bool {
        let r = self.reflect();
        r == *self || r == -self.clone()
    }

    pub fn is_symmetric(&self) -> bool {
        self.reflect() == *self
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.reflect() == -self.clone()
    }

    /// True iff all stored exponents lie in `Z` or all lie in `Z + 1/2`.
    pub fn has_uniform_parity(&self) -> bool {
        let mut parities = self.coeffs.keys().map(|e| e.rem_euclid(2));
        match parities.next() {
            None => true,
            Some(p) => parities.all(|q| q == p),
        }
    }

    /// The coefficient sequence over the saturated exponent range, interior
    /// zeros included. Steps are whole powers of `t` when the exponents have
    /// uniform parity and half powers otherwise.
    pub fn coefficient_sequence(&self) -> CoeffSeq {
        let (Some(lo), Some(hi)) = (self.min_exp2(), self.max_exp2()) else {
            return CoeffSeq::default();
        };
        let step = if self.has_uniform_parity() { 2 } else { 1 };
        CoeffSeq(
            (lo..=hi)
                .step_by(step)
                .map(|e| self.coeff(e))
                .collect(),
        )
    }

    pub fn is_palindromic_abs(&self) -> bool {
        self.abs_poly().coefficient_sequence().is_palindromic()
    }

    /// True iff the support is every lattice point between the extreme
    /// exponents.
    pub fn has_saturated_support(&self) -> bool {
        self.coefficient_sequence().0.iter().all(|c| !c.is_zero())
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &LaurentPoly) -> bool {
        let keys: BTreeSet<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter().all(|e| self.coeff(e) >= other.coeff(e))
    }

    /// Representative of the class `{±t^(m/2) f}`: lowest exponent moved to 0
    /// and the top coefficient made positive.
    pub fn normalize_unit(&self) -> Self {
        let Some(lo) = self.min_exp2() else {
            return Self::zero();
        };
        let shifted = self.shift(-lo);
        let top_negative = shifted
            .coeffs
            .values()
            .next_back()
            .is_some_and(|c| c.is_negative());
        if top_negative {
            -shifted
        } else {
            shifted
        }
    }

    pub fn equal_up_to_unit(&self, other: &LaurentPoly) -> bool {
        self.normalize_unit() == other.normalize_unit()
    }

    /// Value at `t = 1`, i.e. the plain coefficient sum.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = match (*e, e % 2 == 0) {
                (0, _) => String::new(),
                (2, _) => "t".to_string(),
                (e, true) if e > 0 => format!("t^{}", e / 2),
                (e, true) => format!("t^({})", e / 2),
                (e, false) => format!("t^({e}/2)"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

// JSON form: `[[doubled_exponent, coefficient], ...]` sorted by exponent.
// Coefficients outside the i64 range are written as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of [doubled_exponent, coefficient] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((e, c)) = seq.next_element::<(i64, CoeffRepr)>()? {
                    let c = match c {
                        CoeffRepr::Small(v) => BigInt::from(v),
                        CoeffRepr::Big(s) => s.parse().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        d.deserialize_seq(PolyVisitor)
    }
}

/// Coefficients read from the lowest to the highest exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffSeq(pub Vec<BigInt>);

impl CoeffSeq {
    pub fn from_ints(values: &[i64]) -> Self {
        CoeffSeq(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `a_0 < ... < a_k = ... = a_m > ... > a_n` for some `k <= m`. The
    /// empty sequence passes.
    pub fn is_trapezoidal(&self) -> bool {
        let a = &self.0;
        let n = a.len();
        let mut i = 0;
        while i + 1 < n && a[i] < a[i + 1] {
            i += 1;
        }
        while i + 1 < n && a[i] == a[i + 1] {
            i += 1;
        }
        while i + 1 < n && a[i] > a[i + 1] {
            i += 1;
        }
        i + 1 >= n
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn add(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f + g
}

pub fn mul(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f * g
}

pub fn abs_poly(f: &LaurentPoly) -> LaurentPoly {
    f.abs_poly()
}

pub fn support(f: &LaurentPoly) -> BTreeSet<HalfInt> {
    f.support()
}

pub fn is_centered(f: &LaurentPoly) -> bool {
    f.is_centered()
}

pub fn is_palindromic_abs(f: &LaurentPoly) -> bool {
    f.is_palindromic_abs()
}

pub fn is_trapezoidal(s: &CoeffSeq) -> bool {
    s.is_trapezoidal()
}

/// Every exponent receives coefficients of one sign only across `fs`.
pub fn is_noncanceling_sum(fs: &[LaurentPoly]) -> bool {
    let mut seen: BTreeMap<i64, bool> = BTreeMap::new();
    for f in fs {
        for (e, c) in f.terms() {
            let negative = c.is_negative();
            if *seen.entry(e).or_insert(negative) != negative {
                return false;
            }
        }
    }
    true
}

/// Every exponent `i` of `fg` collects partial products `a_j b_k`
/// (`j + k = i`) of one sign only.
pub fn is_noncanceling_product(f: &LaurentPoly, g: &LaurentPoly) -> bool {
    let mut seen: BTreeMap<i64, bool> = BTreeMap::new();
    for (ea, ca) in f.terms() {
        for (eb, cb) in g.terms() {
            let negative = ca.is_negative() != cb.is_negative();
            if *seen.entry(ea + eb).or_insert(negative) != negative {
                return false;
            }
        }
    }
    true
}

/// Shape verdicts for a coefficient sequence, with a flag when the sequence
/// cannot be the absolute coefficient sequence of an Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub sequence: CoeffSeq,
    pub trapezoidal: bool,
    pub palindromic: bool,
    pub flags: Vec<String>,
}

pub fn shape_report(seq: &CoeffSeq) -> ShapeReport {
    let trapezoidal = seq.is_trapezoidal();
    let palindromic = seq.is_palindromic();
    let mut flags = Vec::new();
    if !palindromic {
        let n = seq.len();
        let mismatches: Vec<String> = (0..n / 2)
            .filter(|&k| seq.0[k] != seq.0[n - 1 - k])
            .map(|k| format!("a_{k}={} vs a_{}={}", seq.0[k], n - 1 - k, seq.0[n - 1 - k]))
            .collect();
        flags.push(format!(
            "not palindromic ({}); absolute Alexander coefficients are always palindromic, so this \
             sequence is inconsistent as a link polynomial",
            mismatches.join(", ")
        ));
    }
    ShapeReport { sequence: seq.clone(), trapezoidal, palindromic, flags }
}
