//! Non-degenerate integer points on the `(1, l)` PCF varieties of `sqrt(m)`
//! for `l = 1, 2, 3`.
//!
//! A point `(b1; a1, .., al)` lies on the variety when the conjugated period
//! matrix `E` of `[b1; (a1, .., al)]` satisfies `E11 = E22` and
//! `E12 = m * E21`, i.e. `E` fixes `sqrt(m)` under the Mobius action.
//!
//! Two independent routes are provided: [`enumerate_points`] builds the set
//! from the closed-form parametric families, [`brute_force_points`] searches
//! a coordinate box using the expanded polynomial equations directly.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_square_u64;
use crate::cf::{pcf_matrix, Pcf};
use crate::error::{Error, Result};
use crate::families::{family_witnesses, FamilyId};

/// A candidate `(b1; a1, .., al)`; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VarietyPoint {
    pub b1: i64,
    pub a: Vec<i64>,
}

impl VarietyPoint {
    pub fn new(b1: i64, a: Vec<i64>) -> Self {
        VarietyPoint { b1, a }
    }

    pub fn period_len(&self) -> usize {
        self.a.len()
    }

    /// Every periodic coordinate is non-zero.
    pub fn is_non_degenerate(&self) -> bool {
        self.a.iter().all(|&x| x != 0)
    }

    pub fn negated(&self) -> VarietyPoint {
        VarietyPoint::new(-self.b1, self.a.iter().map(|x| -x).collect())
    }

    pub fn to_pcf(&self) -> Pcf {
        Pcf::from_i64(&[self.b1], &self.a)
    }
}

impl fmt::Display for VarietyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.b1)?;
        for x in &self.a {
            write!(f, ", {x}")?;
        }
        write!(f, ")")
    }
}

fn check_period(l: usize) -> Result<()> {
    if (1..=3).contains(&l) {
        Ok(())
    } else {
        Err(Error::UnsupportedPeriod(l))
    }
}

/// `(E11 - E22, E12 - m*E21)`; both vanish exactly on the variety.
pub fn variety_residuals(m: u64, pt: &VarietyPoint) -> Result<(BigInt, BigInt)> {
    check_period(pt.period_len())?;
    let e = pcf_matrix(&pt.to_pcf());
    Ok((&e.e11 - &e.e22, &e.e12 - BigInt::from(m) * &e.e21))
}

pub fn is_on_variety(m: u64, pt: &VarietyPoint) -> Result<bool> {
    let (r1, r2) = variety_residuals(m, pt)?;
    Ok(r1 == BigInt::ZERO && r2 == BigInt::ZERO)
}

fn check_radicand(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::NegativeInput(m.to_string()));
    }
    if is_square_u64(m) {
        return Err(Error::SquareInput(m.to_string()));
    }
    Ok(())
}

fn canonical(points: impl IntoIterator<Item = VarietyPoint>) -> Vec<VarietyPoint> {
    let set: BTreeSet<VarietyPoint> = points
        .into_iter()
        .filter(VarietyPoint::is_non_degenerate)
        .flat_map(|p| {
            let n = p.negated();
            [p, n]
        })
        .collect();
    set.into_iter().collect()
}

/// Closed-form list of the non-degenerate integer points, sorted.
///
/// - `l = 1`: `(t; 2t)` for `m = t^2 + 1`.
/// - `l = 2`: `(st; 2s, 2st)` for `m = s^2 t^2 + t` and `(st; s, 2st)` for
///   `m = s^2 t^2 + 2t`, with `s, t != 0`.
/// - `l = 3`: `(y; 2s, 2s, 2y)` with `y = s + (4s^2 + 1)t`, `s != 0`, any `t`;
///   `(t-2; 1, -2, 2t-1)` and `(t-1; 2, -1, 2t+1)` for `m = t^2 + 1`,
///   `t != 0`; `(2+5t; -2, 3, 3+10t)` and `(1+5t; 3, -2, 3+10t)` for
///   `m = 25t^2 + 14t + 2`.
///
/// Every orbit is closed under negation.
pub fn enumerate_points(m: u64, l: usize) -> Result<Vec<VarietyPoint>> {
    check_radicand(m)?;
    check_period(l)?;
    let mut pts = Vec::new();
    match l {
        1 => {
            for (_, t) in family_witnesses(m, FamilyId::M1) {
                if t != 0 {
                    pts.push(VarietyPoint::new(t, vec![2 * t]));
                }
            }
        }
        2 => {
            for (s, t) in family_witnesses(m, FamilyId::M2) {
                if s != 0 && t != 0 {
                    pts.push(VarietyPoint::new(s * t, vec![2 * s, 2 * s * t]));
                }
            }
            for (s, t) in family_witnesses(m, FamilyId::M2P) {
                if s != 0 && t != 0 {
                    pts.push(VarietyPoint::new(s * t, vec![s, 2 * s * t]));
                }
            }
        }
        _ => {
            for (s, t) in family_witnesses(m, FamilyId::M3) {
                if s != 0 {
                    let y = s + (4 * s * s + 1) * t;
                    pts.push(VarietyPoint::new(y, vec![2 * s, 2 * s, 2 * y]));
                } else if t != 0 {
                    pts.push(VarietyPoint::new(t - 2, vec![1, -2, 2 * t - 1]));
                    pts.push(VarietyPoint::new(t - 1, vec![2, -1, 2 * t + 1]));
                }
                // m3(-1, t) = m3(1, -t): both land on the same special orbit.
                if s.abs() == 1 {
                    let u = s * t;
                    pts.push(VarietyPoint::new(2 + 5 * u, vec![-2, 3, 3 + 10 * u]));
                    pts.push(VarietyPoint::new(1 + 5 * u, vec![3, -2, 3 + 10 * u]));
                }
            }
        }
    }
    Ok(canonical(pts))
}

/// Exhaustive search of `[-bound, bound]^(1+l)` for non-degenerate points.
///
/// Uses the expanded polynomial systems rather than the matrix route of
/// [`variety_residuals`]. For `l = 3` the first equation is linear in `a3`
/// and is solved exactly; the outer `a1` axis is split across rayon workers.
pub fn brute_force_points(m: u64, l: usize, bound: u64) -> Result<Vec<VarietyPoint>> {
    check_period(l)?;
    let m = m as i128;
    let b = bound as i64;
    let range = move || -b..=b;
    let nonzero = move || range().filter(|&x| x != 0);

    let found: Vec<VarietyPoint> = match l {
        1 => range()
            .flat_map(|y| nonzero().map(move |x1| (y, x1)))
            .filter(|&(y, x1)| {
                let (y, x1) = (y as i128, x1 as i128);
                x1 - 2 * y == 0 && y * y - x1 * y - 1 == -m
            })
            .map(|(y, x1)| VarietyPoint::new(y, vec![x1]))
            .collect(),
        2 => nonzero()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|x1| {
                range().flat_map(move |y| nonzero().map(move |x2| (y, x1, x2)))
            })
            .filter(|&(y, x1, x2)| {
                let (y, x1, x2) = (y as i128, x1 as i128, x2 as i128);
                x1 * x2 - 2 * y * x1 == 0 && y * y * x1 - y * x1 * x2 - x2 == -m * x1
            })
            .map(|(y, x1, x2)| VarietyPoint::new(y, vec![x1, x2]))
            .collect(),
        _ => nonzero()
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|x1| {
                nonzero().flat_map(move |x2| {
                    let (a1, a2) = (x1 as i128, x2 as i128);
                    let den = a1 * a2 + 1;
                    let shift = if den != 0 && (a2 - a1) % den == 0 {
                        Some((a2 - a1) / den)
                    } else {
                        None
                    };
                    shift
                        .into_iter()
                        .flat_map(move |c| range().map(move |y| (y, x1, x2, 2 * y as i128 + c)))
                })
            })
            .filter(|&(y, x1, x2, x3)| {
                if x3 == 0 || x3.abs() > b as i128 {
                    return false;
                }
                let (y, x1, x2) = (y as i128, x1 as i128, x2 as i128);
                let eq1 = 2 * y * x2 * x1 + 2 * y - x3 * x2 * x1 + x2 - x1 - x3;
                let lhs = m * (x2 * x1 + 1);
                let rhs = y * (x3 * x2 * x1 + x1 + x3 - x2) - y * y * (x2 * x1 + 1) + x3 * x2 + 1;
                eq1 == 0 && lhs == rhs
            })
            .map(|(y, x1, x2, x3)| VarietyPoint::new(y, vec![x1, x2, x3 as i64]))
            .collect(),
    };
    let set: BTreeSet<VarietyPoint> = found.into_iter().collect();
    Ok(set.into_iter().collect())
}

/// The box half-width used to validate [`enumerate_points`]: `3*isqrt(m) + 10`.
pub fn default_brute_bound(m: u64) -> u64 {
    3 * crate::arith::isqrt_u64(m) + 10
}
