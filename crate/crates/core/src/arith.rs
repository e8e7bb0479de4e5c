//! Integer, rational and quadratic-surd arithmetic.
//!
//! Everything here is exact. A [`Surd`] is `a + b*sqrt(m)` with rational `a`,
//! `b` and a squarefree radicand `m`; signs and comparisons are decided by
//! rational arithmetic on `a^2` and `b^2 m`, never by floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `floor(sqrt(n))` for a non-negative integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.to_string()));
    }
    Ok(n.sqrt())
}

/// `floor(sqrt(n))` for machine integers.
pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

/// Returns the exact square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

/// Writes `n = k^2 * m'` with `m'` squarefree.
///
/// Trial division; the loop stops as soon as the unfactored remainder is a
/// perfect square or smaller than the square of the next trial divisor.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n.is_negative() {
        return Err(Error::NegativeInput(n.to_string()));
    }
    let mut rest = n.clone();
    let mut k = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    loop {
        if rest.is_one() {
            break;
        }
        if let Some(r) = exact_sqrt(&rest) {
            k *= r;
            break;
        }
        if &p * &p > rest {
            core *= &rest;
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            core *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    Ok((k, core))
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// An element `a + b*sqrt(m)` of a real quadratic field.
///
/// Invariants: `m >= 1` is squarefree; if `b == 0` then `m == 1`, and if
/// `m == 1` then `b == 0`. Rationals (`b == 0`) combine with any radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    m: BigInt,
}

impl Surd {
    pub fn new(a: BigRational, b: BigRational, m: BigInt) -> Result<Surd> {
        if !m.is_positive() {
            return Err(Error::NegativeInput(m.to_string()));
        }
        let (k, core) = squarefree_decompose(&m)?;
        let b = b * rat(k);
        Ok(Surd::normalized(a, b, core))
    }

    fn normalized(a: BigRational, b: BigRational, m: BigInt) -> Surd {
        if b.is_zero() {
            Surd { a, b, m: BigInt::one() }
        } else if m.is_one() {
            Surd { a: a + b, b: BigRational::zero(), m }
        } else {
            Surd { a, b, m }
        }
    }

    pub fn rational(a: BigRational) -> Surd {
        Surd::normalized(a, BigRational::zero(), BigInt::one())
    }

    pub fn integer(a: impl Into<BigInt>) -> Surd {
        Surd::rational(rat(a))
    }

    pub fn zero() -> Surd {
        Surd::integer(0)
    }

    pub fn one() -> Surd {
        Surd::integer(1)
    }

    /// `sqrt(n)` for `n >= 0`, normalized so that e.g. `sqrt(18) = 3*sqrt(2)`.
    pub fn sqrt(n: &BigInt) -> Result<Surd> {
        if n.is_negative() {
            return Err(Error::NegativeInput(n.to_string()));
        }
        if n.is_zero() {
            return Ok(Surd::zero());
        }
        Surd::new(BigRational::zero(), BigRational::one(), n.clone())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Surd) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.m.clone()),
            (_, true) => Ok(self.m.clone()),
            _ if self.m == other.m => Ok(self.m.clone()),
            _ => Err(Error::RadicandMismatch(
                self.m.to_string(),
                other.m.to_string(),
            )),
        }
    }

    pub fn add(&self, other: &Surd) -> Result<Surd> {
        let m = self.common_radicand(other)?;
        Ok(Surd::normalized(&self.a + &other.a, &self.b + &other.b, m))
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd> {
        let m = self.common_radicand(other)?;
        Ok(Surd::normalized(&self.a - &other.a, &self.b - &other.b, m))
    }

    pub fn mul(&self, other: &Surd) -> Result<Surd> {
        let m = self.common_radicand(other)?;
        let mr = rat(m.clone());
        let a = &self.a * &other.a + &self.b * &other.b * mr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Surd::normalized(a, b, m))
    }

    pub fn scale(&self, q: &BigRational) -> Surd {
        Surd::normalized(&self.a * q, &self.b * q, self.m.clone())
    }

    pub fn conj(&self) -> Surd {
        Surd::normalized(self.a.clone(), -self.b.clone(), self.m.clone())
    }

    /// `a^2 - m b^2`, which equals `x * conj(x)`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.m.clone())
    }

    pub fn inv(&self) -> Result<Surd> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn div(&self, other: &Surd) -> Result<Surd> {
        self.mul(&other.inv()?)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * rat(self.m.clone());
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Surd {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two surds over a common radicand.
    pub fn cmp_exact(&self, other: &Surd) -> Result<Ordering> {
        Ok(match self.sub(other)?.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| -> f64 {
            let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        let m: f64 = self.m.to_string().parse().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * m.sqrt()
    }
}

fn rational_sign(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl std::ops::Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::normalized(-self.a, -self.b, self.m)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    /// Renders as `a`, `b*sqrt(m)`, `sqrt(m)` or `a + b*sqrt(m)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let radical = if self.b.abs().is_one() {
            format!("sqrt({})", self.m)
        } else {
            format!("{}*sqrt({})", fmt_rational(&self.b.abs()), self.m)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{radical}"),
            (true, true) => write!(f, "-{radical}"),
            (false, false) => write!(f, "{} + {radical}", fmt_rational(&self.a)),
            (false, true) => write!(f, "{} - {radical}", fmt_rational(&self.a)),
        }
    }
}
