use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cf::RingElem;
use crate::error::{Error, Result};

type Poly = Vec<BigInt>;

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// `p(q(x))` by Horner's rule.
fn poly_compose(p: &[BigInt], q: &[BigInt]) -> Poly {
    p.iter().rev().fold(Vec::new(), |acc, c| poly_add(&poly_mul(&acc, q), std::slice::from_ref(c)))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn ints(v: &[i64]) -> Poly {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Coefficients (constant term first) of the monic minimal polynomial of
/// `X_n`, of degree `2^n`.
pub fn minimal_poly(n: u32) -> Vec<BigInt> {
    let shift = ints(&[-2, 0, 1]);
    (0..n).fold(ints(&[0, 1]), |mu, _| poly_compose(&mu, &shift))
}

/// `C_k` with `C_k(2cos(theta)) = 2cos(k theta)`: `C_0 = 2`, `C_1 = x`,
/// `C_{k+1} = x C_k - C_{k-1}`.
pub fn cos_poly(k: u32) -> Vec<BigInt> {
    let x = ints(&[0, 1]);
    let (mut prev, mut cur) = (ints(&[2]), x.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = poly_add(&poly_mul(&x, &cur), &prev.iter().map(|c| -c).collect::<Vec<_>>());
        prev = std::mem::replace(&mut cur, trim(next));
    }
    cur
}

/// An element of `Z[X_n]`: `coords[i]` is the coefficient of `X_n^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElem {
    level: u32,
    coords: Vec<BigInt>,
}

fn dim(level: u32) -> usize {
    1usize << level
}

fn reduce(level: u32, mut p: Poly) -> Vec<BigInt> {
    let d = dim(level);
    if p.len() > d {
        let mu = minimal_poly(level);
        for i in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[i]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in mu.iter().enumerate().take(d) {
                p[i - d + j] -= &c * mj;
            }
        }
    }
    p.resize(d, BigInt::zero());
    p
}

impl TowerElem {
    /// Reduces an arbitrary integer polynomial in `X_n`.
    pub fn from_poly(level: u32, poly: Vec<BigInt>) -> TowerElem {
        TowerElem { level, coords: reduce(level, poly) }
    }

    pub fn from_i64(level: u32, coords: &[i64]) -> TowerElem {
        TowerElem::from_poly(level, ints(coords))
    }

    pub fn integer(level: u32, c: impl Into<BigInt>) -> TowerElem {
        TowerElem::from_poly(level, vec![c.into()])
    }

    pub fn zero(level: u32) -> TowerElem {
        TowerElem::integer(level, 0)
    }

    pub fn one(level: u32) -> TowerElem {
        TowerElem::integer(level, 1)
    }

    /// `X_n` itself (`X_0 = 0`).
    pub fn generator(level: u32) -> TowerElem {
        TowerElem::from_i64(level, &[0, 1])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_level(&self, other: &TowerElem) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TowerElem) -> Result<TowerElem> {
        self.same_level(other)?;
        Ok(TowerElem::from_poly(self.level, poly_add(&self.coords, &other.coords)))
    }

    pub fn try_sub(&self, other: &TowerElem) -> Result<TowerElem> {
        self.try_add(&other.negated())
    }

    pub fn try_mul(&self, other: &TowerElem) -> Result<TowerElem> {
        self.same_level(other)?;
        Ok(TowerElem::from_poly(self.level, poly_mul(&self.coords, &other.coords)))
    }

    pub fn negated(&self) -> TowerElem {
        TowerElem { level: self.level, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> TowerElem {
        TowerElem { level: self.level, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// The same number in `Z[X_{n+1}]`, via `X_n = X_{n+1}^2 - 2`.
    pub fn embed_up(&self) -> TowerElem {
        let up = self.level + 1;
        TowerElem::from_poly(up, poly_compose(&self.coords, &ints(&[-2, 0, 1])))
    }

    /// Repeated [`TowerElem::embed_up`]; errors when `level` is below the current one.
    pub fn embed_to(&self, level: u32) -> Result<TowerElem> {
        if level < self.level {
            return Err(Error::LevelMismatch(self.level, level));
        }
        let mut x = self.clone();
        while x.level < level {
            x = x.embed_up();
        }
        Ok(x)
    }

    /// The unique `(a, b)` over `Z[X_{n-1}]` with `x = a + X_n b`.
    ///
    /// Even coordinates give `a`, odd ones `b`, each read as a polynomial in
    /// `X_n^2 = 2 + X_{n-1}`.
    pub fn split(&self) -> Result<(TowerElem, TowerElem)> {
        if self.level == 0 {
            return Err(Error::NoParentLevel(0));
        }
        let down = self.level - 1;
        let y = ints(&[2, 1]);
        let part = |offset: usize| {
            let c: Poly = self.coords.iter().skip(offset).step_by(2).cloned().collect();
            TowerElem::from_poly(down, poly_compose(&c, &y))
        };
        Ok((part(0), part(1)))
    }

    /// `tau_n`: `X_n -> -X_n`.
    pub fn conjugate(&self) -> TowerElem {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        TowerElem { level: self.level, coords }
    }

    /// `N_{n/n-1}(x) = x tau_n(x) = a^2 - (2 + X_{n-1}) b^2`.
    pub fn relative_norm(&self) -> Result<TowerElem> {
        let (a, b) = self.split()?;
        let y = TowerElem::from_i64(a.level, &[2, 1]);
        a.try_mul(&a)?.try_sub(&y.try_mul(&b)?.try_mul(&b)?)
    }

    /// Exact quotient `self / u` in `Z[X_n]`.
    ///
    /// Solves the multiplication-by-`u` system over the rationals and
    /// rejects non-integral solutions.
    pub fn unit_divide(&self, u: &TowerElem) -> Result<TowerElem> {
        self.same_level(u)?;
        let d = dim(self.level);
        // Column j holds u * X^j.
        let mut cols = Vec::with_capacity(d);
        let mut cur = u.clone();
        let x = TowerElem::generator(self.level);
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = cur.try_mul(&x)?;
        }
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..d).map(|j| BigRational::from_integer(cols[j][i].clone())).collect();
                row.push(BigRational::from_integer(self.coords[i].clone()));
                row
            })
            .collect();
        for c in 0..d {
            let pivot = (c..d).find(|&r| !rows[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            rows.swap(c, pivot);
            let inv = rows[c][c].recip();
            for v in rows[c].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == c || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        let q: Vec<BigRational> = rows.into_iter().map(|r| r[d].clone()).collect();
        if let Some(bad) = q.iter().find(|v| !v.is_integer()) {
            return Err(Error::NonIntegralQuotient(format!("({self}) / ({u}) has coordinate {bad}")));
        }
        Ok(TowerElem { level: self.level, coords: q.into_iter().map(|v| v.to_integer()).collect() })
    }

    /// `p(self)` for an integer polynomial `p`.
    pub fn eval_poly(&self, p: &[BigInt]) -> TowerElem {
        p.iter().rev().fold(TowerElem::zero(self.level), |acc, c| {
            acc.mul(self).add(&TowerElem::integer(self.level, c.clone()))
        })
    }
}

/// The unit `eta_n = 1 + sum_{k=1}^{2^n - 1} C_k(X_n)`.
pub fn eta(n: u32) -> TowerElem {
    let x = TowerElem::generator(n);
    let mut sum = TowerElem::one(n);
    let (mut prev, mut cur) = (TowerElem::integer(n, 2), x.clone());
    for _ in 1..dim(n) {
        sum = sum.add(&cur);
        let next = x.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    sum
}

/// Ring operations panic on mismatched levels; use the `try_` methods to
/// get an error instead.
impl RingElem for TowerElem {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("tower levels must match")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("tower levels must match")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("tower levels must match")
    }
    fn zero_like(&self) -> Self {
        TowerElem::zero(self.level)
    }
    fn one_like(&self) -> Self {
        TowerElem::one(self.level)
    }
    fn neg(&self) -> Self {
        self.negated()
    }
}

impl fmt::Display for TowerElem {
    /// Ascending powers, e.g. `3 - 2*X1` or `-1 - 2*X2 + X2^2 + X2^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => format!("X{}", self.level),
                _ => format!("X{}^{i}", self.level),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&var)?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for TowerElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coords<'a>(&'a [BigInt]);
        impl Serialize for Coords<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::serial::bigints(self.0, s)
            }
        }
        let mut st = s.serialize_struct("TowerElem", 3)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("coords", &Coords(&self.coords))?;
        st.serialize_field("expr", &self.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(level: u32, c: &[i64]) -> TowerElem {
        TowerElem::from_i64(level, c)
    }

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(minimal_poly(0), ints(&[0, 1]));
        assert_eq!(minimal_poly(1), ints(&[-2, 0, 1]));
        assert_eq!(minimal_poly(2), ints(&[2, 0, -4, 0, 1]));
        for n in 0..=5 {
            let x = TowerElem::generator(n);
            assert!(x.eval_poly(&minimal_poly(n)).is_zero());
        }
    }

    #[test]
    fn mul_examples() {
        let x1 = TowerElem::generator(1);
        assert_eq!(x1.mul(&x1), e(1, &[2, 0]));
        let y = e(2, &[1, 1]);
        assert_eq!(y.mul(&y), e(2, &[1, 2, 1, 0]));
        assert_eq!(y.mul(&TowerElem::one(2)), y);
        assert_eq!(e(1, &[1]).try_mul(&e(2, &[1])), Err(Error::LevelMismatch(1, 2)));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(TowerElem::generator(1).embed_up(), e(2, &[-2, 0, 1, 0]));
        assert_eq!(TowerElem::integer(0, 7).embed_up(), e(1, &[7, 0]));
    }

    #[test]
    fn split_examples() {
        let (a, b) = eta(2).split().unwrap();
        assert_eq!(a, eta(1));
        assert_eq!(b, TowerElem::generator(1));
        let (a, b) = TowerElem::generator(3).split().unwrap();
        assert_eq!((a, b), (TowerElem::zero(2), TowerElem::one(2)));
        let c = e(2, &[5, -1]).embed_up();
        assert_eq!(c.split().unwrap(), (e(2, &[5, -1]), TowerElem::zero(2)));
        assert_eq!(TowerElem::one(0).split(), Err(Error::NoParentLevel(0)));
    }

    #[test]
    fn cos_poly_examples() {
        assert_eq!(cos_poly(1), ints(&[0, 1]));
        assert_eq!(cos_poly(2), ints(&[-2, 0, 1]));
        assert_eq!(cos_poly(3), ints(&[0, -3, 0, 1]));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(0), TowerElem::one(0));
        assert_eq!(eta(1), e(1, &[1, 1]));
        assert_eq!(eta(2), e(2, &[-1, -2, 1, 1]));
        let x = TowerElem::generator(3);
        let by_poly = (1..8).fold(TowerElem::one(3), |acc, k| acc.add(&x.eval_poly(&cos_poly(k))));
        assert_eq!(eta(3), by_poly);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(eta(1).relative_norm().unwrap(), TowerElem::integer(0, -1));
        assert_eq!(eta(2).relative_norm().unwrap(), TowerElem::integer(1, -1));
        for n in 1..=4 {
            let x = TowerElem::generator(n);
            assert_eq!(x.relative_norm().unwrap(), e(n - 1, &[-2, -1]));
        }
    }

    #[test]
    fn divide_examples() {
        assert_eq!(e(1, &[1, 2]).unit_divide(&eta(1)).unwrap(), e(1, &[3, -1]));
        assert_eq!(e(1, &[-1, 1]).unit_divide(&eta(1)).unwrap(), e(1, &[3, -2]));
        assert_eq!(e(2, &[4, 1, 0, 3]).unit_divide(&TowerElem::one(2)).unwrap(), e(2, &[4, 1, 0, 3]));
        assert!(matches!(e(1, &[1, 0]).unit_divide(&e(1, &[2, 0])), Err(Error::NonIntegralQuotient(_))));
        assert_eq!(e(1, &[1, 0]).unit_divide(&TowerElem::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(eta(2).to_string(), "-1 - 2*X2 + X2^2 + X2^3");
        assert_eq!(e(1, &[3, -2]).to_string(), "3 - 2*X1");
        assert_eq!(TowerElem::zero(2).to_string(), "0");
        assert_eq!(e(1, &[0, -1]).to_string(), "-X1");
    }
}
