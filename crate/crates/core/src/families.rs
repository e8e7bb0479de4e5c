//! The parametric radicand families and their closed-form expansions.
//!
//! ```text
//! M1(t)    = t^2 + 1
//! M2(s,t)  = s^2 t^2 + t
//! M2P(s,t) = s^2 t^2 + 2t
//! M3(s,t)  = 16 t^2 s^4 + 8 t s^3 + (8 t^2 + 1) s^2 + 6 t s + t^2 + 1
//!          = (4s^2+1)^2 t^2 + 2s(4s^2+3) t + s^2 + 1
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{is_square_u64, isqrt_u64};
use crate::cf::Pcf;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyId {
    M1,
    M2,
    M2P,
    M3,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [FamilyId::M1, FamilyId::M2, FamilyId::M2P, FamilyId::M3];

    /// Period length of the family's pre-period-one expansions.
    pub fn period_len(self) -> usize {
        match self {
            FamilyId::M1 => 1,
            FamilyId::M2 | FamilyId::M2P => 2,
            FamilyId::M3 => 3,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyId::M1 => "M1",
            FamilyId::M2 => "M2",
            FamilyId::M2P => "M2P",
            FamilyId::M3 => "M3",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "M1" => Ok(FamilyId::M1),
            "M2" => Ok(FamilyId::M2),
            "M2P" | "M2'" | "M2PRIME" => Ok(FamilyId::M2P),
            "M3" => Ok(FamilyId::M3),
            _ => Err(format!("unknown family `{s}` (expected M1, M2, M2P or M3)")),
        }
    }
}

fn eval_i128(fam: FamilyId, s: i128, t: i128) -> i128 {
    match fam {
        FamilyId::M1 => t * t + 1,
        FamilyId::M2 => s * s * t * t + t,
        FamilyId::M2P => s * s * t * t + 2 * t,
        FamilyId::M3 => {
            16 * t * t * s.pow(4) + 8 * t * s.pow(3) + (8 * t * t + 1) * s * s + 6 * t * s + t * t + 1
        }
    }
}

/// Exact family value; `M1` ignores `s`.
pub fn family_eval(fam: FamilyId, s: i64, t: i64) -> BigInt {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    let one = BigInt::from(1);
    match fam {
        FamilyId::M1 => &t * &t + one,
        FamilyId::M2 => &s * &s * &t * &t + t,
        FamilyId::M2P => &s * &s * &t * &t + 2 * t,
        FamilyId::M3 => {
            let k = BigInt::from(4) * &s * &s + &one;
            &k * &k * &t * &t + 2 * &s * (BigInt::from(4) * &s * &s + 3) * &t + &s * &s + one
        }
    }
}

/// Integer roots of `a x^2 + b x + c = 0` (with `a > 0`).
fn integer_roots(a: i128, b: i128, c: i128) -> Vec<i128> {
    let disc = b * b - 4 * a * c;
    if disc < 0 {
        return Vec::new();
    }
    let r = isqrt_u128(disc as u128) as i128;
    if r * r != disc {
        return Vec::new();
    }
    [-b + r, -b - r]
        .into_iter()
        .filter(|num| num % (2 * a) == 0)
        .map(|num| num / (2 * a))
        .collect()
}

fn isqrt_u128(n: u128) -> u128 {
    num_integer::Roots::sqrt(&n)
}

fn pm(r: i128) -> Vec<i128> {
    if r == 0 {
        vec![0]
    } else {
        vec![r, -r]
    }
}

/// All `(s, t)` with `family_eval(fam, s, t) == m`, sorted; `M1` reports `s = 0`.
///
/// Sweep bounds: `M2` needs `s^2 <= m + 1`, `M2P` needs `s^2 <= m + 2` (from
/// `s^2 t^2 = m - t` resp. `m - 2t` with `|t| >= 1`). For `M3` the case
/// `t = 0` is `m = s^2 + 1`; for `t != 0` and `s != 0` one has
/// `M3 >= 8 s^4`, so `|s| <= isqrt(isqrt(16m)) + 2` is ample.
pub fn family_witnesses(m: u64, fam: FamilyId) -> Vec<(i64, i64)> {
    let mut out: BTreeSet<(i128, i128)> = BTreeSet::new();
    if m == 0 {
        return Vec::new();
    }
    let mi = m as i128;
    let square_root_of = |n: i128| -> Option<i128> {
        (n >= 0 && is_square_u64(n as u64)).then(|| isqrt_u64(n as u64) as i128)
    };
    match fam {
        FamilyId::M1 => {
            if let Some(r) = square_root_of(mi - 1) {
                out.extend(pm(r).into_iter().map(|t| (0, t)));
            }
        }
        FamilyId::M2 => {
            out.insert((0, mi));
            let bound = isqrt_u64(m) as i128 + 1;
            for s in 1..=bound {
                for t in integer_roots(s * s, 1, -mi) {
                    out.extend([(s, t), (-s, t)]);
                }
            }
        }
        FamilyId::M2P => {
            if mi % 2 == 0 {
                out.insert((0, mi / 2));
            }
            let bound = isqrt_u64(m) as i128 + 2;
            for s in 1..=bound {
                for t in integer_roots(s * s, 2, -mi) {
                    out.extend([(s, t), (-s, t)]);
                }
            }
        }
        FamilyId::M3 => {
            if let Some(r) = square_root_of(mi - 1) {
                for v in pm(r) {
                    out.insert((0, v));
                    out.insert((v, 0));
                }
            }
            let bound = isqrt_u64(isqrt_u64(16 * m)) as i128 + 2;
            for s in (-bound..=bound).filter(|&s| s != 0) {
                let k = 4 * s * s + 1;
                for t in integer_roots(k * k, 2 * s * (4 * s * s + 3), s * s + 1 - mi) {
                    if t != 0 {
                        out.insert((s, t));
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(|&(s, t)| eval_i128(fam, s, t) == mi));
    out.into_iter().map(|(s, t)| (s as i64, t as i64)).collect()
}

/// Which closed form an expansion comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionForm {
    /// The generic form of the family.
    General,
    /// `[t-2; (1, -2, 2t-1)]` for `M3(0, t)`.
    ZeroSFirst,
    /// `[t-1; (2, -1, 2t+1)]` for `M3(0, t)`.
    ZeroSSecond,
    /// `[2+5u; (-2, 3, 3+10u)]` for `M3(+-1, t)`, `u = s t`.
    UnitSFirst,
    /// `[1+5u; (3, -2, 3+10u)]` for `M3(+-1, t)`, `u = s t`.
    UnitSSecond,
}

/// One closed-form expansion `sign * sqrt(m) = pcf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyExpansion {
    pub form: ExpansionForm,
    pub sign: i8,
    pub pcf: Pcf,
    /// False when the period word repeats a shorter word (e.g. `M3(s, 0)`).
    pub minimal_period: bool,
}

impl FamilyExpansion {
    fn new(form: ExpansionForm, sign: i8, pre: i64, period: &[i64]) -> Self {
        let pcf = Pcf::from_i64(&[pre], period);
        let minimal_period = pcf.is_primitive_period();
        FamilyExpansion { form, sign, pcf, minimal_period }
    }
}

fn sgn(x: i64) -> i8 {
    x.signum() as i8
}

fn positive_value(fam: FamilyId, s: i64, t: i64) -> Result<BigInt> {
    let m = family_eval(fam, s, t);
    if m <= BigInt::ZERO {
        return Err(Error::NonPositiveFamilyValue(m.to_string()));
    }
    Ok(m)
}

/// The pre-period-one expansions of `+-sqrt(family_eval(fam, s, t))`.
///
/// `M3` returns the general form whenever `s != 0` (flagged non-minimal at
/// `t = 0`), the two `s = 0` forms when `s = 0`, and additionally the two
/// `|s| = 1` forms when `|s| = 1`. Signs are `sgn(t)` for `M1`/`M3`,
/// `sgn(st)` for `M2`/`M2P`; at `t = 0` the general `M3` form has sign
/// `sgn(s)`, and the `|s| = 1` forms use `u = s t` (sign `sgn(u)`, or `+`).
pub fn family_picf(fam: FamilyId, s: i64, t: i64) -> Result<Vec<FamilyExpansion>> {
    positive_value(fam, s, t)?;
    let degenerate = |what: &str| Err(Error::DegenerateParameters(format!("{fam}({s}, {t}): {what}")));
    use ExpansionForm::*;
    match fam {
        FamilyId::M1 => {
            if t == 0 {
                return degenerate("t = 0");
            }
            Ok(vec![FamilyExpansion::new(General, sgn(t), t, &[2 * t])])
        }
        FamilyId::M2 | FamilyId::M2P => {
            if s == 0 || t == 0 {
                return degenerate("s and t must be non-zero");
            }
            let first = if fam == FamilyId::M2 { 2 * s } else { s };
            Ok(vec![FamilyExpansion::new(General, sgn(s * t), s * t, &[first, 2 * s * t])])
        }
        FamilyId::M3 => {
            if s == 0 && t == 0 {
                return degenerate("(s, t) = (0, 0)");
            }
            let mut out = Vec::new();
            if s != 0 {
                let y = s + (4 * s * s + 1) * t;
                let sign = if t != 0 { sgn(t) } else { sgn(s) };
                out.push(FamilyExpansion::new(General, sign, y, &[2 * s, 2 * s, 2 * y]));
            } else {
                out.push(FamilyExpansion::new(ZeroSFirst, sgn(t), t - 2, &[1, -2, 2 * t - 1]));
                out.push(FamilyExpansion::new(ZeroSSecond, sgn(t), t - 1, &[2, -1, 2 * t + 1]));
            }
            if s.abs() == 1 {
                let u = s * t;
                let sign = if u != 0 { sgn(u) } else { 1 };
                out.push(FamilyExpansion::new(UnitSFirst, sign, 2 + 5 * u, &[-2, 3, 3 + 10 * u]));
                out.push(FamilyExpansion::new(UnitSSecond, sign, 1 + 5 * u, &[3, -2, 3 + 10 * u]));
            }
            Ok(out)
        }
    }
}

/// The regular expansion of `+sqrt(m)` for the negative-parameter ranges:
///
/// - `M2`, `t < 0`: `[-st-1; (1, 2s-2, 1, 2(-st-1))]` for `s >= 2`,
///   `[-t-1; (2, -2t-2)]` for `s = 1, t != -1`.
/// - `M2P`, `t < 0`: `[-st-1; (1, s-2, 1, 2(-st-1))]` for `s >= 3`,
///   `[-2t-1; (2, 2(-2t-1))]` for `s = 2`, `[-t-2; (1, 2(-t-2))]` for
///   `s = 1, t != -1, -2`.
/// - `M3`, `t > 0, s < 0`: `[y-1; (1, -2s-1, -2s-1, 1, 2(y-1))]`,
///   `y = s + (4s^2+1)t`.
pub fn family_rpcf(fam: FamilyId, s: i64, t: i64) -> Result<Pcf> {
    let out_of_range = || Err(Error::OutOfRange(format!("{fam}({s}, {t}) has no regular closed form")));
    match fam {
        FamilyId::M1 => out_of_range(),
        FamilyId::M2 => {
            if t >= 0 || s < 1 {
                return out_of_range();
            }
            positive_value(fam, s, t)?;
            if s >= 2 {
                let h = -s * t - 1;
                Ok(Pcf::from_i64(&[h], &[1, 2 * s - 2, 1, 2 * h]))
            } else {
                Ok(Pcf::from_i64(&[-t - 1], &[2, -2 * t - 2]))
            }
        }
        FamilyId::M2P => {
            if t >= 0 || s < 1 {
                return out_of_range();
            }
            positive_value(fam, s, t)?;
            match s {
                1 if t == -2 => Err(Error::NonPositiveFamilyValue("0".into())),
                1 => Ok(Pcf::from_i64(&[-t - 2], &[1, 2 * (-t - 2)])),
                2 => Ok(Pcf::from_i64(&[-2 * t - 1], &[2, 2 * (-2 * t - 1)])),
                _ => {
                    let h = -s * t - 1;
                    Ok(Pcf::from_i64(&[h], &[1, s - 2, 1, 2 * h]))
                }
            }
        }
        FamilyId::M3 => {
            if t <= 0 || s >= 0 {
                return out_of_range();
            }
            let y = s + (4 * s * s + 1) * t;
            Ok(Pcf::from_i64(&[y - 1], &[1, -2 * s - 1, -2 * s - 1, 1, 2 * (y - 1)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Surd;
    use crate::cf::pcf_value;

    #[test]
    fn eval_examples() {
        assert_eq!(family_eval(FamilyId::M3, 1, 1), BigInt::from(41));
        assert_eq!(family_eval(FamilyId::M2, 2, 1), BigInt::from(5));
        assert_eq!(family_eval(FamilyId::M1, 123, 0), BigInt::from(1));
        for s in -6..=6 {
            for t in -6..=6 {
                for fam in FamilyId::ALL {
                    assert_eq!(family_eval(fam, s, t), BigInt::from(eval_i128(fam, s as i128, t as i128)));
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(family_witnesses(5, FamilyId::M1), vec![(0, -2), (0, 2)]);
        assert_eq!(family_witnesses(5, FamilyId::M3), vec![(-2, 0), (0, -2), (0, 2), (2, 0)]);
        assert_eq!(family_witnesses(7, FamilyId::M2), vec![(0, 7)]);
        assert!(family_witnesses(7, FamilyId::M2).iter().all(|&(s, _)| s == 0));
        assert_eq!(family_witnesses(101, FamilyId::M3).len(), 4);
    }

    #[test]
    fn picf_examples() {
        let e = family_picf(FamilyId::M3, 1, 1).unwrap();
        assert_eq!(e[0].pcf, Pcf::from_i64(&[6], &[2, 2, 12]));
        assert_eq!(e[0].sign, 1);

        let e = family_picf(FamilyId::M3, 0, 2).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].pcf, Pcf::from_i64(&[0], &[1, -2, 3]));
        assert_eq!(e[1].pcf, Pcf::from_i64(&[1], &[2, -1, 5]));
        assert!(e.iter().all(|x| x.sign == 1));

        let e = family_picf(FamilyId::M1, 0, -2).unwrap();
        assert_eq!((e[0].sign, &e[0].pcf), (-1, &Pcf::from_i64(&[-2], &[-4])));

        let e = family_picf(FamilyId::M3, 2, 0).unwrap();
        assert_eq!(e[0].pcf, Pcf::from_i64(&[2], &[4, 4, 4]));
        assert!(!e[0].minimal_period);
    }

    #[test]
    fn picf_rejections() {
        assert!(matches!(family_picf(FamilyId::M2, 1, -1), Err(Error::NonPositiveFamilyValue(_))));
        assert!(matches!(family_picf(FamilyId::M2P, 1, -1), Err(Error::NonPositiveFamilyValue(_))));
        assert!(matches!(family_picf(FamilyId::M2P, -1, -2), Err(Error::NonPositiveFamilyValue(_))));
        assert!(matches!(family_picf(FamilyId::M2, 0, 3), Err(Error::DegenerateParameters(_))));
        assert!(matches!(family_picf(FamilyId::M3, 0, 0), Err(Error::DegenerateParameters(_))));
        assert!(matches!(family_picf(FamilyId::M1, 0, 0), Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn rpcf_examples() {
        assert_eq!(family_rpcf(FamilyId::M2, 3, -2).unwrap(), Pcf::from_i64(&[5], &[1, 4, 1, 10]));
        assert_eq!(family_rpcf(FamilyId::M2P, 1, -3).unwrap(), Pcf::from_i64(&[1], &[1, 2]));
        assert_eq!(family_rpcf(FamilyId::M3, -1, 1).unwrap(), Pcf::from_i64(&[3], &[1, 1, 1, 1, 6]));
        assert!(matches!(family_rpcf(FamilyId::M2, 3, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(family_rpcf(FamilyId::M3, 1, 1), Err(Error::OutOfRange(_))));
        assert!(family_rpcf(FamilyId::M2P, 1, -2).is_err());
        assert!(family_rpcf(FamilyId::M2, 1, -1).is_err());
    }

    #[test]
    fn special_forms_evaluate_with_stated_sign() {
        for s in [-1i64, 0, 1] {
            for t in -4..=4i64 {
                let Ok(exps) = family_picf(FamilyId::M3, s, t) else { continue };
                let root = Surd::sqrt(&family_eval(FamilyId::M3, s, t)).unwrap();
                for e in exps {
                    let v = pcf_value(&e.pcf).unwrap();
                    let want = if e.sign < 0 { -root.clone() } else { root.clone() };
                    assert_eq!(v, want, "s={s} t={t} {:?}", e.form);
                }
            }
        }
    }
}
