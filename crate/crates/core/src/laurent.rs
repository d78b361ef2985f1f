//! Exact arithmetic in `Z[v, v^-1]` and in `Z[q]`.
//!
//! [`LaurentPoly`] carries every coefficient produced by the engine. It is
//! stored densely as a lowest exponent plus a coefficient vector, trimmed so
//! that both end coefficients are nonzero. [`IntPoly`] is a polynomial in
//! `q = v^2`; it is what Hall polynomials and Kazhdan–Lusztig polynomials are
//! natively expressed in, and it is kept apart from `LaurentPoly` so that the
//! two variable conventions never get mixed by accident.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("need at least {needed} samples for degree bound {bound}, got {got}")]
    TooFewSamples {
        needed: usize,
        bound: usize,
        got: usize,
    },
    #[error("sample point q = {0} appears twice")]
    DuplicateSample(i64),
    #[error("samples need degree {degree}, above the bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("interpolated coefficient of q^{0} is not an integer")]
    NonIntegral(usize),
    #[error("cannot substitute v^2 = q into a polynomial with an odd exponent ({0})")]
    OddExponent(i64),
    #[error("malformed coefficient string {0:?}")]
    BadCoefficient(String),
}

/// A single coefficient: machine word while it fits, promoted on overflow.
#[derive(Clone, Debug)]
enum Coef {
    Small(i64),
    Big(Box<BigInt>),
}

impl Coef {
    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(s) => Coef::Small(s),
            None => Coef::Big(Box::new(b)),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Coef::Small(s) => BigInt::from(*s),
            Coef::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coef::Small(0))
    }

    fn is_negative(&self) -> bool {
        match self {
            Coef::Small(s) => *s < 0,
            Coef::Big(b) => b.is_negative(),
        }
    }

    fn add(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Coef::Small(c);
            }
        }
        Coef::from_big(self.to_big() + o.to_big())
    }

    fn sub(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Coef::Small(c);
            }
        }
        Coef::from_big(self.to_big() - o.to_big())
    }

    fn mul(&self, o: &Coef) -> Coef {
        if let (Coef::Small(a), Coef::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Coef::Small(c);
            }
        }
        Coef::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Coef {
        match self {
            Coef::Small(s) => match s.checked_neg() {
                Some(n) => Coef::Small(n),
                None => Coef::from_big(-BigInt::from(*s)),
            },
            Coef::Big(b) => Coef::from_big(-(**b).clone()),
        }
    }
}

// Coefficients are kept normalized (`Big` only outside the `i64` range), so
// structural equality is numeric equality.
impl PartialEq for Coef {
    fn eq(&self, o: &Coef) -> bool {
        match (self, o) {
            (Coef::Small(a), Coef::Small(b)) => a == b,
            (Coef::Big(a), Coef::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coef {}

impl std::hash::Hash for Coef {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Coef::Small(s) => s.hash(h),
            Coef::Big(b) => b.hash(h),
        }
    }
}

impl Ord for Coef {
    fn cmp(&self, o: &Coef) -> Ordering {
        match (self, o) {
            (Coef::Small(a), Coef::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Coef {
    fn partial_cmp(&self, o: &Coef) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// An element of `Z[v, v^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Coef>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::v_pow(0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_dense(exp, vec![Coef::from_big(c.into())])
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        LaurentPoly {
            low: exp,
            coeffs: vec![Coef::Small(1)],
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    fn from_dense(low: i64, coeffs: Vec<Coef>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Coef::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0] == Coef::Small(1)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `v^exp`.
    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs
            .get(idx as usize)
            .map(Coef::to_big)
            .unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c.to_big()))
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// The involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentPoly { low: -hi, coeffs }
            }
        }
    }

    /// True iff every coefficient is nonnegative, i.e. the element lies in `N[v, v^-1]`.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let c = Coef::from_big(c.clone());
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x.mul(&c)).collect())
    }

    /// True iff the polynomial lies in `v^-1 Z[v^-1]`.
    pub fn in_negative_part(&self) -> bool {
        self.max_exp().is_none_or(|e| e < 0)
    }

    /// The part of the polynomial with strictly negative exponents.
    pub fn negative_part(&self) -> Self {
        if self.low >= 0 {
            return Self::zero();
        }
        let keep = ((-self.low) as usize).min(self.coeffs.len());
        Self::from_dense(self.low, self.coeffs[..keep].to_vec())
    }

    /// True iff every exponent is even, i.e. the element lies in `Z[v^2, v^-2]`.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Evaluates an element of `Z[v^2, v^-2]` at `v^2 = q`, returning `None`
    /// when the result is not an integer or an odd power of `v` occurs.
    pub fn eval_at_q(&self, q: i64) -> Option<BigInt> {
        let mut acc = BigRational::zero();
        let qr = BigRational::from_integer(BigInt::from(q));
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            let k = (e / 2) as i32;
            acc += BigRational::from_integer(c) * num_traits::pow::Pow::pow(&qr, k);
        }
        acc.is_integer().then(|| acc.to_integer())
    }

    /// Evaluation at a nonzero integer value of `v`, as an exact rational.
    pub fn eval_rational(&self, v: i64) -> BigRational {
        let vr = BigRational::from_integer(BigInt::from(v));
        self.terms()
            .map(|(e, c)| BigRational::from_integer(c) * num_traits::pow::Pow::pow(&vr, e as i32))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    fn add_scaled(&mut self, other: &LaurentPoly, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { -other } else { other.clone() };
            return;
        }
        let lo = self.low.min(other.low);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        if lo < self.low {
            let pad = (self.low - lo) as usize;
            let mut v = vec![Coef::Small(0); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        let len = (hi - lo + 1) as usize;
        self.coeffs.resize(len, Coef::Small(0));
        let off = (other.low - self.low) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + k];
            *slot = if negate { slot.sub(c) } else { slot.add(c) };
        }
        self.trim();
    }

    /// `self += c * other`, the workhorse of every linear-combination loop.
    pub fn add_mul(&mut self, c: &LaurentPoly, other: &LaurentPoly) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if c.coeffs.len() == 1 && c.coeffs[0] == Coef::Small(1) {
            let shifted = LaurentPoly {
                low: other.low + c.low,
                coeffs: other.coeffs.clone(),
            };
            self.add_scaled(&shifted, false);
        } else {
            *self += &(c * other);
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{mag}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order (by exponent range, then coefficients); only
/// used to make sorted output deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, true);
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(Coef::neg).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![Coef::Small(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, out)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(LaurentError::BadCoefficient(c.clone())))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * q^deg`.
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> BigInt {
        self.coeffs.get(deg).cloned().unwrap_or_default()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Substitutes `q = v^2`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut dense = Vec::with_capacity(2 * self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                dense.push(Coef::Small(0));
            }
            dense.push(Coef::from_big(c.clone()));
        }
        LaurentPoly::from_dense(0, dense)
    }

    /// Inverse of [`IntPoly::to_laurent`] on `Z[v^2]`.
    pub fn from_laurent(p: &LaurentPoly) -> Result<Self, LaurentError> {
        let mut coeffs = Vec::new();
        for (e, c) in p.terms() {
            if e < 0 || e % 2 != 0 {
                return Err(LaurentError::OddExponent(e));
            }
            let k = (e / 2) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] = c;
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// The unique polynomial of degree at most `degree_bound` through the
    /// given `(q, value)` samples; all samples must be consistent with it and
    /// its coefficients must be integers.
    pub fn interpolate(
        samples: &[(i64, BigInt)],
        degree_bound: usize,
    ) -> Result<Self, LaurentError> {
        if samples.len() < degree_bound + 1 {
            return Err(LaurentError::TooFewSamples {
                needed: degree_bound + 1,
                bound: degree_bound,
                got: samples.len(),
            });
        }
        for (i, (qi, _)) in samples.iter().enumerate() {
            if samples[..i].iter().any(|(qj, _)| qj == qi) {
                return Err(LaurentError::DuplicateSample(*qi));
            }
        }
        // Newton divided differences over Q.
        let xs: Vec<BigRational> = samples
            .iter()
            .map(|(q, _)| BigRational::from_integer(BigInt::from(*q)))
            .collect();
        let mut table: Vec<BigRational> = samples
            .iter()
            .map(|(_, y)| BigRational::from_integer(y.clone()))
            .collect();
        let m = samples.len();
        for level in 1..m {
            for i in (level..m).rev() {
                let num = &table[i] - &table[i - 1];
                let den = &xs[i] - &xs[i - level];
                table[i] = num / den;
            }
        }
        // Expand the Newton form into monomial coefficients.
        let mut poly: Vec<BigRational> = vec![BigRational::zero(); m];
        for i in (0..m).rev() {
            // poly = poly * (x - xs[i]) + table[i]
            let mut next = vec![BigRational::zero(); m];
            for k in 0..m {
                if poly[k].is_zero() {
                    continue;
                }
                if k + 1 < m {
                    next[k + 1] += &poly[k];
                }
                next[k] -= &poly[k] * &xs[i];
            }
            next[0] += &table[i];
            poly = next;
        }
        while poly.last().is_some_and(Zero::is_zero) {
            poly.pop();
        }
        if let Some(degree) = poly.len().checked_sub(1) {
            if degree > degree_bound {
                return Err(LaurentError::DegreeExceeded {
                    degree,
                    bound: degree_bound,
                });
            }
        }
        let mut coeffs = Vec::with_capacity(poly.len());
        for (k, c) in poly.into_iter().enumerate() {
            if !c.is_integer() {
                return Err(LaurentError::NonIntegral(k));
            }
            coeffs.push(c.to_integer());
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(LaurentError::BadCoefficient(c.clone())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn multiplication_examples() {
        let a = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &a, lp(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&a * &LaurentPoly::one(), a);
        let b = lp(&[(2, 1), (0, -1)]);
        let c = lp(&[(2, 1), (0, 1)]);
        assert_eq!(&b * &c, lp(&[(4, 1), (0, -1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(2, 1), (-1, 3)]).bar(), lp(&[(-2, 1), (1, 3)]));
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
        let sym = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn nonnegativity() {
        assert!(lp(&[(1, 1), (-1, 1)]).is_nonneg());
        assert!(!lp(&[(2, 1), (0, -1)]).is_nonneg());
        assert!(LaurentPoly::zero().is_nonneg());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(lp(&[(2, 1), (0, 2), (-2, 1)]).to_string(), "v^2 + 2 + v^-2");
        assert_eq!(lp(&[(-1, -3)]).to_string(), "-3v^-1");
    }

    #[test]
    fn interpolation_examples() {
        let s = |pts: &[(i64, i64)]| -> Vec<(i64, BigInt)> {
            pts.iter().map(|&(q, c)| (q, BigInt::from(c))).collect()
        };
        assert_eq!(
            IntPoly::interpolate(&s(&[(2, 3), (3, 4), (5, 6)]), 2).unwrap(),
            IntPoly::from_i64s(&[1, 1])
        );
        assert_eq!(
            IntPoly::interpolate(&s(&[(2, 1), (3, 1)]), 1).unwrap(),
            IntPoly::one()
        );
        assert!(matches!(
            IntPoly::interpolate(&s(&[(2, 2), (3, 3)]), 0),
            Err(LaurentError::DegreeExceeded { .. })
        ));
        assert!(matches!(
            IntPoly::interpolate(&s(&[(2, 2)]), 1),
            Err(LaurentError::TooFewSamples { .. })
        ));
        assert!(matches!(
            IntPoly::interpolate(&s(&[(2, 0), (4, 1)]), 1),
            Err(LaurentError::NonIntegral(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            IntPoly::from_i64s(&[1, 1]).to_laurent(),
            lp(&[(2, 1), (0, 1)])
        );
        assert_eq!(IntPoly::one().to_laurent(), LaurentPoly::one());
        assert_eq!(IntPoly::monomial(1, 2).to_laurent(), LaurentPoly::v_pow(4));
        let p = IntPoly::from_i64s(&[3, 0, -2]);
        assert_eq!(IntPoly::from_laurent(&p.to_laurent()).unwrap(), p);
    }

    #[test]
    fn json_layout() {
        let p = lp(&[(-2, 1), (0, 2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"[[-2,"1"],[0,"2"]]"#);
        let back: LaurentPoly = serde_json::from_str(r#"[[0,"2"],[-2,"1"]]"#).unwrap();
        assert_eq!(back, p);
        let q = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"["1","1"]"#);
        let big: LaurentPoly =
            serde_json::from_str(r#"[[3,"123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(big.coeff(3).to_string(), "123456789012345678901234567890");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -20i64..20), 0..8).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn interpolation_reproduces_samples(coeffs in prop::collection::vec(-9i64..9, 1..5)) {
            let p = IntPoly::from_i64s(&coeffs);
            let bound = coeffs.len() - 1;
            let samples: Vec<(i64, BigInt)> =
                (0..=bound as i64).map(|k| (k + 2, p.eval_i64(k + 2))).collect();
            let back = IntPoly::interpolate(&samples, bound).unwrap();
            for (q, y) in &samples {
                prop_assert_eq!(&back.eval_i64(*q), y);
            }
            prop_assert_eq!(back, p);
        }
    }
}
