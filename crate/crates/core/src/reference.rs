//! Closed forms for the family orbits exactly as they are usually stated:
//! conjugated period matrices, cyclic-shift `M21` entries, signed squared
//! traces and dominant eigenvalues, as polynomials in `(s, t)`.
//!
//! They are kept verbatim, misprints included, so that the exact values
//! computed by [`crate::cf`] can be compared against them; [`Orbit::point`]
//! gives the point each form belongs to.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::Surd;
use crate::cf::Mat2;
use crate::error::Result;
use crate::families::{family_eval, FamilyId};
use crate::variety::VarietyPoint;

/// The eight closed-form orbits of period length 1, 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orbit {
    /// `(t; 2t)`.
    P1,
    /// `(st; 2s, 2st)`.
    P2,
    /// `(st; s, 2st)`.
    P2Prime,
    /// `(y; 2s, 2s, 2y)`, `y = s + (4s^2+1)t`.
    P3,
    /// `(t-2; 1, -2, 2t-1)`.
    Q,
    /// `(t-1; 2, -1, 2t+1)`.
    R,
    /// `(2+5t; -2, 3, 3+10t)`.
    O,
    /// `(1+5t; 3, -2, 3+10t)`.
    L,
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Orbit::P1 => "P(l=1)",
            Orbit::P2 => "P(l=2)",
            Orbit::P2Prime => "P'(l=2)",
            Orbit::P3 => "P(l=3)",
            Orbit::Q => "Q",
            Orbit::R => "R",
            Orbit::O => "O",
            Orbit::L => "L",
        };
        f.write_str(s)
    }
}

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

impl Orbit {
    pub const ALL: [Orbit; 8] =
        [Orbit::P1, Orbit::P2, Orbit::P2Prime, Orbit::P3, Orbit::Q, Orbit::R, Orbit::O, Orbit::L];

    /// Whether the orbit depends on `s` (the others use `t` only).
    pub fn uses_s(self) -> bool {
        matches!(self, Orbit::P2 | Orbit::P2Prime | Orbit::P3)
    }

    pub fn point(self, s: i64, t: i64) -> VarietyPoint {
        let y = s + (4 * s * s + 1) * t;
        let (b1, a) = match self {
            Orbit::P1 => (t, vec![2 * t]),
            Orbit::P2 => (s * t, vec![2 * s, 2 * s * t]),
            Orbit::P2Prime => (s * t, vec![s, 2 * s * t]),
            Orbit::P3 => (y, vec![2 * s, 2 * s, 2 * y]),
            Orbit::Q => (t - 2, vec![1, -2, 2 * t - 1]),
            Orbit::R => (t - 1, vec![2, -1, 2 * t + 1]),
            Orbit::O => (2 + 5 * t, vec![-2, 3, 3 + 10 * t]),
            Orbit::L => (1 + 5 * t, vec![3, -2, 3 + 10 * t]),
        };
        VarietyPoint::new(b1, a)
    }

    /// The radicand whose square root the orbit expands.
    pub fn radicand(self, s: i64, t: i64) -> BigInt {
        match self {
            Orbit::P1 => family_eval(FamilyId::M1, 0, t),
            Orbit::P2 => family_eval(FamilyId::M2, s, t),
            Orbit::P2Prime => family_eval(FamilyId::M2P, s, t),
            Orbit::P3 => family_eval(FamilyId::M3, s, t),
            Orbit::Q | Orbit::R => family_eval(FamilyId::M3, 0, t),
            Orbit::O | Orbit::L => family_eval(FamilyId::M3, 1, t),
        }
    }

    /// The parameter range on which the orbit is a non-degenerate expansion.
    pub fn in_domain(self, s: i64, t: i64) -> bool {
        let positive = self.radicand(s, t) > BigInt::ZERO;
        positive
            && match self {
                Orbit::P1 | Orbit::Q | Orbit::R => t != 0,
                Orbit::P2 | Orbit::P2Prime => s != 0 && t != 0,
                Orbit::P3 => s != 0,
                Orbit::O | Orbit::L => true,
            }
    }

    /// `E` of the orbit point, as stated.
    pub fn stated_matrix(self, s: i64, t: i64) -> Mat2<BigInt> {
        let (s, t) = (b(s), b(t));
        let m = |e11: BigInt, e12: BigInt, e21: BigInt, e22: BigInt| Mat2 { e11, e12, e21, e22 };
        match self {
            Orbit::P1 => m(t.clone(), &t * &t + 1, b(1), t),
            Orbit::P2 => {
                let d: BigInt = b(2) * &s * &s * &t + 1;
                m(d.clone(), b(2) * s.pow(3) * &t * &t + b(2) * &s * &t, b(2) * &s, d)
            }
            Orbit::P2Prime => {
                let d: BigInt = &s * &s * &t + 1;
                m(d.clone(), s.pow(3) * &t * &t + b(2) * &s * &t, s.clone(), d)
            }
            Orbit::P3 => {
                let m3: BigInt = (b(4) * &s * &s + b(1)).pow(2) * &t * &t
                    + b(2) * &s * (b(4) * &s * &s + 3) * &t
                    + &s * &s
                    + 1;
                let e11 = b(16) * &t * s.pow(4) + b(4) * s.pow(3) + b(8) * &t * s.pow(2) + b(3) * &s + &t;
                // The lower-right entry carries 8ts^3 where 8ts^2 is meant.
                let e22 = b(16) * &t * s.pow(4) + b(4) * s.pow(3) + b(8) * &t * s.pow(3) + b(3) * &s + &t;
                m(e11, (b(4) * &s * &s + 1) * m3, b(4) * &s * &s + 1, e22)
            }
            Orbit::Q | Orbit::R => m(-&t, -&t * &t - 1, b(-1), -t),
            Orbit::O | Orbit::L => {
                let d: BigInt = b(-25) * &t - 7;
                m(d.clone(), b(-125) * &t * &t - b(70) * &t - 10, b(-5), d)
            }
        }
    }

    /// `M21` of the cyclic shifts `j = 0, .., l-1` of the period, as stated.
    pub fn stated_shift_m21(self, s: i64, t: i64) -> Vec<BigInt> {
        let v = |xs: &[i64]| xs.iter().map(|&x| b(x)).collect();
        match self {
            Orbit::P1 => v(&[1]),
            Orbit::P2 => v(&[2 * s * t, 2 * s]),
            Orbit::P2Prime => v(&[2 * s * t, s]),
            Orbit::P3 => {
                let (sb, tb) = (b(s), b(t));
                let w: BigInt = b(16) * &tb * sb.pow(3) + b(4) * &sb * &sb + b(4) * &tb * &sb + 1;
                vec![w.clone(), w, b(4) * &sb * &sb + 1]
            }
            Orbit::Q => v(&[-4 * t + 3, 2 * t, -1]),
            Orbit::R => v(&[-2 * t, 4 * t + 3, -1]),
            Orbit::O => v(&[30 * t + 10, -20 * t - 5, -5]),
            Orbit::L => v(&[-20 * t - 5, 30 * t + 10, -5]),
        }
    }

    /// `(-1)^l Tr(E)^2`, as stated.
    pub fn stated_signed_trace_squared(self, s: i64, t: i64) -> BigInt {
        let (sb, tb) = (b(s), b(t));
        match self {
            Orbit::P1 => -(b(2) * tb).pow(2),
            Orbit::P2 => (b(4) * &sb * &sb * &tb + b(2)).pow(2),
            Orbit::P2Prime => (b(2) * &sb * &sb * &tb + b(2)).pow(2),
            Orbit::P3 => -(b(32) * &tb * sb.pow(4) + b(8) * sb.pow(3) + b(16) * &tb * &sb * &sb + b(6) * &sb + b(2) * &tb)
                .pow(2),
            Orbit::Q | Orbit::R => -(b(-2) * tb).pow(2),
            Orbit::O | Orbit::L => -(b(-50) * tb - b(14)).pow(2),
        }
    }

    /// The dominant eigenvalue `lambda_+` of `E`, as stated.
    pub fn stated_eigenvalue(self, s: i64, t: i64) -> Result<Surd> {
        let root = Surd::sqrt(&self.radicand(s, t))?;
        let lin = |a: BigInt, c: BigInt| -> Result<Surd> {
            Surd::integer(a).add(&root.scale(&BigRational::from_integer(c)))
        };
        let (sb, tb) = (b(s), b(t));
        match self {
            Orbit::P1 => lin(tb, b(sgn(t))),
            Orbit::P2 => lin(b(2) * &sb * &sb * &tb + 1, b(sgn(s * t) * 2 * s)),
            Orbit::P2Prime => lin(&sb * &sb * &tb, b(sgn(s * t) * s)),
            Orbit::P3 => {
                let x3 = b(16) * &tb * sb.pow(4) + b(4) * sb.pow(3) + b(8) * &tb * &sb * &sb + b(3) * &sb + &tb;
                lin(x3, b(sgn(t) * (4 * s * s + 1)))
            }
            Orbit::Q | Orbit::R => lin(-tb, b(-sgn(t))),
            Orbit::O | Orbit::L => lin(b(-25) * tb - 7, b(-sgn(t))),
        }
    }
}
