use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::elem::TowerElem;
use crate::error::{Error, Result};

/// Extra fractional bits carried inside [`numeric_embed`].
const GUARD_BITS: u32 = 64;

/// A binary fixed-point real `v / 2^bits`.
///
/// Products and quotients round toward negative infinity; every operation
/// takes its precision from the left operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    v: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn from_int(n: impl Into<BigInt>, bits: u32) -> Fixed {
        Fixed { v: n.into() << bits, bits }
    }

    pub fn zero(bits: u32) -> Fixed {
        Fixed { v: BigInt::zero(), bits }
    }

    /// `10^-digits`, rounded down.
    pub fn ten_pow_neg(digits: u32, bits: u32) -> Fixed {
        Fixed { v: (BigInt::from(1) << bits) / BigInt::from(10).pow(digits), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn aligned(&self, other: &Fixed) -> BigInt {
        match other.bits.cmp(&self.bits) {
            Ordering::Equal => other.v.clone(),
            Ordering::Less => &other.v << (self.bits - other.bits),
            Ordering::Greater => &other.v >> (other.bits - self.bits),
        }
    }

    pub fn with_bits(&self, bits: u32) -> Fixed {
        Fixed::zero(bits).add(self)
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        Fixed { v: &self.v + self.aligned(other), bits: self.bits }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        Fixed { v: &self.v - self.aligned(other), bits: self.bits }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        Fixed { v: (&self.v * self.aligned(other)) >> self.bits, bits: self.bits }
    }

    pub fn div(&self, other: &Fixed) -> Result<Fixed> {
        let d = self.aligned(other);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fixed { v: num_integer::Integer::div_floor(&(&self.v << self.bits), &d), bits: self.bits })
    }

    pub fn scale(&self, k: &BigInt) -> Fixed {
        Fixed { v: &self.v * k, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { v: -&self.v, bits: self.bits }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { v: self.v.abs(), bits: self.bits }
    }

    pub fn signum(&self) -> i8 {
        match self.v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn cmp_value(&self, other: &Fixed) -> Ordering {
        self.v.cmp(&self.aligned(other))
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> Result<Fixed> {
        if self.v.is_negative() {
            return Err(Error::NegativeInput(self.to_string()));
        }
        Ok(Fixed { v: (&self.v << self.bits).sqrt(), bits: self.bits })
    }

    pub fn to_f64(&self) -> f64 {
        let drop = self.bits.saturating_sub(60);
        let v = (&self.v >> drop).to_f64().unwrap_or(f64::NAN);
        v / 2f64.powi((self.bits - drop) as i32)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = (self.v.abs() * BigInt::from(10).pow(digits)) >> self.bits;
        let s = format!("{:0>width$}", scaled.to_string(), width = digits as usize + 1);
        let (int, frac) = s.split_at(s.len() - digits as usize);
        let sign = if self.v.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

/// `2cos(k pi / 2^j)`, by `g(j, k)^2 = 2 + g(j-1, k)` with the sign of the
/// cosine read off `k mod 2^(j+1)`.
fn two_cos(j: u32, k: u64, bits: u32) -> Fixed {
    match j {
        0 => Fixed::from_int(if k.is_multiple_of(2) { 2 } else { -2 }, bits),
        1 => Fixed::from_int([2, 0, -2, 0][(k % 4) as usize], bits),
        _ => {
            let r = k % (1u64 << (j + 1));
            let q = 1u64 << (j - 1);
            let sign = if r < q || r > 3 * q {
                1
            } else if r == q || r == 3 * q {
                return Fixed::zero(bits);
            } else {
                -1
            };
            let inner = Fixed::from_int(2, bits).add(&two_cos(j - 1, k, bits));
            let root = inner.sqrt().expect("2 + 2cos is non-negative");
            if sign > 0 {
                root
            } else {
                root.neg()
            }
        }
    }
}

fn check_embedding(level: u32, k: u64) -> Result<()> {
    if k.is_multiple_of(2) || k >= (1u64 << (level + 1)) {
        return Err(Error::BadEmbedding { k, level });
    }
    Ok(())
}

/// `sigma_k(X_n) = 2cos(k pi / 2^(n+1))` for odd `1 <= k < 2^(n+1)`.
pub fn embedding_value(level: u32, k: u64, bits: u32) -> Result<Fixed> {
    check_embedding(level, k)?;
    Ok(two_cos(level + 1, k, bits + GUARD_BITS).with_bits(bits))
}

/// Evaluates `x` at `X_n -> 2cos(k pi / 2^(n+1))`.
pub fn numeric_embed(x: &TowerElem, k: u64, bits: u32) -> Result<Fixed> {
    check_embedding(x.level(), k)?;
    let work = bits + GUARD_BITS;
    let root = two_cos(x.level() + 1, k, work);
    let value = x
        .coords()
        .iter()
        .rev()
        .fold(Fixed::zero(work), |acc, c| acc.mul(&root).add(&Fixed::from_int(c.clone(), work)));
    Ok(value.with_bits(bits))
}
