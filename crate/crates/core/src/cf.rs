//! Continued-fraction words, the `D(a)` matrix calculus, convergents, the
//! convergence certificate and exact evaluation of periodic expansions.
//!
//! A word `[c1, ..., cn]` is encoded by `M = D(c1) D(c2) ... D(cn)` with
//! `D(a) = [[a, 1], [1, 0]]`. A periodic expansion with pre-period `y` and
//! period `x` is encoded by its conjugated period matrix
//! `E = M([y.., x.., 0, -y_N, .., -y_1, 0])` (or `M(x)` without pre-period);
//! its value is a fixed point of the Mobius action of `E`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{squarefree_decompose, Surd};
use crate::error::{Error, Result};

/// Minimal commutative-ring surface needed by [`Mat2`].
///
/// `zero_like`/`one_like` build constants in the same ring as `self`, which
/// matters for rings whose elements carry a level (see the tower module).
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl RingElem for BigInt {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
}

/// A 2x2 matrix `[[e11, e12], [e21, e22]]` over a commutative ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mat2<T> {
    pub e11: T,
    pub e12: T,
    pub e21: T,
    pub e22: T,
}

impl<T: RingElem> Mat2<T> {
    pub fn new(e11: T, e12: T, e21: T, e22: T) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn identity(one: &T) -> Self {
        let zero = one.zero_like();
        Mat2::new(one.clone(), zero.clone(), zero, one.clone())
    }

    /// `D(a) = [[a, 1], [1, 0]]`.
    pub fn d(a: &T) -> Self {
        Mat2::new(a.clone(), a.one_like(), a.one_like(), a.zero_like())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            e11: self.e11.mul(&rhs.e11).add(&self.e12.mul(&rhs.e21)),
            e12: self.e11.mul(&rhs.e12).add(&self.e12.mul(&rhs.e22)),
            e21: self.e21.mul(&rhs.e11).add(&self.e22.mul(&rhs.e21)),
            e22: self.e21.mul(&rhs.e12).add(&self.e22.mul(&rhs.e22)),
        }
    }

    /// `D(c1) ... D(cn)`; the empty word gives the identity built from `one`.
    pub fn word(terms: &[T], one: &T) -> Self {
        terms
            .iter()
            .fold(Mat2::identity(one), |acc, c| acc.mul(&Mat2::d(c)))
    }

    pub fn det(&self) -> T {
        self.e11.mul(&self.e22).sub(&self.e12.mul(&self.e21))
    }

    pub fn trace(&self) -> T {
        self.e11.add(&self.e22)
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        let one = self.e11.one_like();
        let zero = one.zero_like();
        if self.e12 != zero || self.e21 != zero || self.e11 != self.e22 {
            return false;
        }
        self.e11 == one || self.e11 == one.neg()
    }
}

/// The word of the conjugated period matrix: `y ++ x ++ [0] ++ -rev(y) ++ [0]`,
/// or just `x` when there is no pre-period.
pub fn conjugated_word<T: RingElem>(preperiod: &[T], period: &[T]) -> Vec<T> {
    if preperiod.is_empty() {
        return period.to_vec();
    }
    let zero = period[0].zero_like();
    let mut w = Vec::with_capacity(2 * preperiod.len() + period.len() + 2);
    w.extend_from_slice(preperiod);
    w.extend_from_slice(period);
    w.push(zero.clone());
    w.extend(preperiod.iter().rev().map(RingElem::neg));
    w.push(zero);
    w
}

/// Convergents `(p_n, q_n)` of a term stream, starting at index 0 with
/// `(p_0, q_0) = (a_0, 1)` from the seeds `(p_-1, q_-1) = (1, 0)`.
pub fn convergents_of<T: RingElem>(terms: impl IntoIterator<Item = T>) -> Vec<(T, T)> {
    let mut iter = terms.into_iter();
    let Some(a0) = iter.next() else {
        return Vec::new();
    };
    let mut prev = (a0.one_like(), a0.zero_like());
    let mut cur = (a0.clone(), a0.one_like());
    let mut out = vec![cur.clone()];
    for a in iter {
        let next = (a.mul(&cur.0).add(&prev.0), a.mul(&cur.1).add(&prev.1));
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// A finite word `[c1, ..., cn]` of integer partial quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FiniteCf {
    #[serde(serialize_with = "crate::serial::bigints")]
    pub terms: Vec<BigInt>,
}

impl FiniteCf {
    pub fn new(terms: Vec<BigInt>) -> Self {
        FiniteCf { terms }
    }

    pub fn from_i64(terms: &[i64]) -> Self {
        FiniteCf::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `M([c1, ..., cn]) = D(c1) ... D(cn)`.
pub fn word_matrix(cf: &FiniteCf) -> Mat2<BigInt> {
    Mat2::word(&cf.terms, &BigInt::one())
}

/// A periodic integer continued fraction `[y_1, .., y_N; (x_1, .., x_l)]`.
///
/// Zero and negative partial quotients are allowed; the period is non-empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pcf {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl Pcf {
    /// Panics if `period` is empty.
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Pcf {
        assert!(!period.is_empty(), "a periodic continued fraction needs a non-empty period");
        Pcf { preperiod, period }
    }

    pub fn try_new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Pcf> {
        if period.is_empty() {
            return Err(Error::UnsupportedPeriod(0));
        }
        Ok(Pcf { preperiod, period })
    }

    pub fn from_i64(preperiod: &[i64], period: &[i64]) -> Pcf {
        let big = |v: &[i64]| v.iter().map(|&t| BigInt::from(t)).collect();
        Pcf::new(big(preperiod), big(period))
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// The infinite stream of partial quotients.
    pub fn terms(&self) -> impl Iterator<Item = &BigInt> + '_ {
        self.preperiod.iter().chain(self.period.iter().cycle())
    }

    /// False when the period word is a repetition of a strictly shorter word.
    pub fn is_primitive_period(&self) -> bool {
        let l = self.period.len();
        (1..l)
            .filter(|d| l.is_multiple_of(*d))
            .all(|d| (0..l).any(|i| self.period[i] != self.period[i % d]))
    }
}

impl fmt::Display for Pcf {
    /// `[y1, y2; (x1, x2, x3)]`, parentheses marking the period.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        if self.preperiod.is_empty() {
            write!(f, "[({})]", join(&self.period))
        } else {
            write!(f, "[{}; ({})]", join(&self.preperiod), join(&self.period))
        }
    }
}

/// The conjugated period matrix `E(P)`.
pub fn pcf_matrix(p: &Pcf) -> Mat2<BigInt> {
    Mat2::word(&conjugated_word(&p.preperiod, &p.period), &BigInt::one())
}

/// Convergents with indices `0..=upto` of the unrolled term stream.
pub fn convergents(p: &Pcf, upto: usize) -> Vec<(BigInt, BigInt)> {
    convergents_of(p.terms().take(upto + 1).cloned())
}

/// First `n` partial quotients.
pub fn unroll(p: &Pcf, n: usize) -> FiniteCf {
    FiniteCf::new(p.terms().take(n).cloned().collect())
}

/// Witness for one cyclic shift of the period in condition (2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftWitness {
    pub shift: usize,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub m21: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub m22: BigInt,
    pub holds: bool,
}

/// The three-condition convergence certificate with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    #[serde(serialize_with = "crate::serial::mat2")]
    pub e: Mat2<BigInt>,
    /// `E != +-I`.
    pub cond1: bool,
    pub shifts: Vec<ShiftWitness>,
    /// Every cyclic shift has `M21 != 0` or `|M22| <= 1`.
    pub cond2: bool,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub signed_trace_squared: BigInt,
    /// `(-1)^l Tr(E)^2 < 0` or `(-1)^l Tr(E)^2 >= 4`.
    pub cond3: bool,
    pub converges: bool,
}

pub fn convergence_check(p: &Pcf) -> ConvergenceReport {
    let e = pcf_matrix(p);
    let cond1 = !e.is_plus_minus_identity();

    let l = p.period.len();
    let shifts: Vec<ShiftWitness> = (0..l)
        .map(|j| {
            let rotated: Vec<BigInt> = (0..l).map(|i| p.period[(j + i) % l].clone()).collect();
            let m = Mat2::word(&rotated, &BigInt::one());
            let holds = !m.e21.is_zero() || m.e22.abs() <= BigInt::one();
            ShiftWitness { shift: j, m21: m.e21, m22: m.e22, holds }
        })
        .collect();
    let cond2 = shifts.iter().all(|w| w.holds);

    let tr = e.trace();
    let mut signed = &tr * &tr;
    if l % 2 == 1 {
        signed = -signed;
    }
    let cond3 = signed.is_negative() || signed >= BigInt::from(4);

    ConvergenceReport {
        e,
        cond1,
        shifts,
        cond2,
        signed_trace_squared: signed,
        cond3,
        converges: cond1 && cond2 && cond3,
    }
}

/// The eigenvalue of `m` with absolute value at least one.
///
/// Writes `Tr^2 - 4 det = k^2 m'`, forms `(Tr +- k sqrt(m'))/2` and picks the
/// root with `lambda^2 >= 1` by an exact sign test.
pub fn dominant_eigenvalue(m: &Mat2<BigInt>) -> Result<Surd> {
    let tr = m.trace();
    let disc = &tr * &tr - BigInt::from(4) * m.det();
    if disc.is_negative() {
        return Err(Error::EllipticMatrix(disc.to_string()));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let tr_half = Surd::rational(BigRational::from_integer(tr)).scale(&half);
    if disc.is_zero() {
        return Ok(tr_half);
    }
    let (k, core) = squarefree_decompose(&disc)?;
    let radical = Surd::new(BigRational::zero(), BigRational::from_integer(k), core)?.scale(&half);
    let plus = tr_half.add(&radical)?;
    let minus = tr_half.sub(&radical)?;
    let exceeds_one = |x: &Surd| -> Result<bool> {
        Ok(x.mul(x)?.sub(&Surd::one())?.sign() >= 0)
    };
    if exceeds_one(&plus)? {
        Ok(plus)
    } else {
        Ok(minus)
    }
}

/// Exact value of a convergent periodic expansion:
/// `(lambda_+ - E22) / E21`.
pub fn pcf_value(p: &Pcf) -> Result<Surd> {
    let report = convergence_check(p);
    if !report.converges {
        return Err(Error::NotConvergent);
    }
    value_from_matrix(&report.e)
}

/// The fixed-point formula applied to an already computed `E`.
pub fn value_from_matrix(e: &Mat2<BigInt>) -> Result<Surd> {
    if e.e21.is_zero() {
        return Err(Error::VanishingE21);
    }
    let lambda = dominant_eigenvalue(e)?;
    let num = lambda.sub(&Surd::integer(e.e22.clone()))?;
    Ok(num.scale(&BigRational::new(BigInt::one(), e.e21.clone())))
}
