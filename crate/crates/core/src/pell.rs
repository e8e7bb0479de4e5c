//! Regular expansions of `sqrt(m)`, fundamental units of `Z[sqrt(m)]` and
//! the convergent checks for the family expansions.
//!
//! A unit `x + y sqrt(m)` is fundamental when `(|x|, |y|)` is the generator
//! `(p_{l-1}, q_{l-1})` read off the regular expansion of minimal period `l`;
//! this covers the four classes `+-eps^(+-1)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{is_square_u64, isqrt_u64};
use crate::cf::{convergents, Pcf};
use crate::error::{Error, Result};
use crate::families::{family_eval, family_picf, ExpansionForm, FamilyId};

/// `x^2 - m y^2 = norm` with `norm = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "crate::serial::bigint")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub y: BigInt,
    pub norm: i8,
}

impl PellSolution {
    /// Builds the solution if `(x, y)` is a unit of `Z[sqrt(m)]`.
    pub fn new(m: u64, x: BigInt, y: BigInt) -> Result<PellSolution> {
        let n = &x * &x - BigInt::from(m) * &y * &y;
        let norm = if n.is_one() {
            1
        } else if n == -BigInt::one() {
            -1
        } else {
            return Err(Error::NotAUnit { m, x: x.to_string(), y: y.to_string(), norm: n.to_string() });
        };
        Ok(PellSolution { x, y, norm })
    }
}

fn non_square(m: u64) -> Result<()> {
    if is_square_u64(m) {
        return Err(Error::SquareInput(m.to_string()));
    }
    Ok(())
}

/// The regular expansion `[a0; (a1, .., al)]` with minimal period.
///
/// Classical `(P, Q)` recurrence: `P_{k+1} = a_k Q_k - P_k`,
/// `Q_{k+1} = (m - P_{k+1}^2) / Q_k`, `a_k = floor((a0 + P_k) / Q_k)`; the
/// states from `k = 1` on are purely periodic, so the period closes at the
/// first return to `(P_1, Q_1)`.
pub fn sqrt_rcf(m: u64) -> Result<Pcf> {
    non_square(m)?;
    let m = m as u128;
    let a0 = isqrt_u64(m as u64) as u128;
    let step = |p: u128, q: u128, a: u128| {
        let p2 = a * q - p;
        let q2 = (m - p2 * p2) / q;
        (p2, q2, (a0 + p2) / q2)
    };
    let first = step(0, 1, a0);
    let mut state = first;
    let mut period = Vec::new();
    loop {
        period.push(BigInt::from(state.2));
        state = step(state.0, state.1, state.2);
        if (state.0, state.1) == (first.0, first.1) {
            break;
        }
    }
    Ok(Pcf::new(vec![BigInt::from(a0)], period))
}

pub fn fundamental_solution(m: u64) -> Result<PellSolution> {
    let rcf = sqrt_rcf(m)?;
    let l = rcf.period().len();
    let (p, q) = convergents(&rcf, l - 1).pop().expect("at least one convergent");
    PellSolution::new(m, p, q)
}

/// True iff `x + y sqrt(m)` is one of `+-eps^(+-1)`; errors when it is not a unit.
pub fn is_fundamental(m: u64, x: &BigInt, y: &BigInt) -> Result<bool> {
    PellSolution::new(m, x.clone(), y.clone())?;
    let f = fundamental_solution(m)?;
    Ok(x.abs() == f.x && y.abs() == f.y)
}

/// The `k >= 0` with `|x| + |y| sqrt(m) = eps^k`, for a unit `(x, y)`.
pub fn unit_exponent(m: u64, x: &BigInt, y: &BigInt) -> Result<u32> {
    PellSolution::new(m, x.clone(), y.clone())?;
    let f = fundamental_solution(m)?;
    let mb = BigInt::from(m);
    let (tx, ty) = (x.abs(), y.abs());
    let (mut cx, mut cy) = (BigInt::one(), BigInt::zero());
    let mut k = 0;
    while cx < tx || cy < ty {
        let nx = &cx * &f.x + &mb * &cy * &f.y;
        let ny = &cx * &f.y + &cy * &f.x;
        cx = nx;
        cy = ny;
        k += 1;
    }
    if cx == tx && cy == ty {
        Ok(k)
    } else {
        Err(Error::Verification(format!("unit ({x}, {y}) is not a power of the generator")))
    }
}

/// `(p_index, q_index)` of `p` as a solution for `m`.
pub fn convergent_solution(p: &Pcf, index: usize, m: u64) -> Result<PellSolution> {
    let (x, y) = convergents(p, index).pop().expect("at least one convergent");
    PellSolution::new(m, x, y)
}

/// The explicit family solutions:
/// `M1: (t, 1)`, `M2: (2s^2 t + 1, 2s)`, `M2P: (s^2 t + 1, s)`,
/// `M3: (16ts^4 + 4s^3 + 8ts^2 + 3s + t, 4s^2 + 1)`.
pub fn family_solution(fam: FamilyId, s: i64, t: i64) -> (BigInt, BigInt) {
    let (s, t) = (BigInt::from(s), BigInt::from(t));
    let one = BigInt::one();
    match fam {
        FamilyId::M1 => (t, one),
        FamilyId::M2 => (BigInt::from(2) * &s * &s * &t + one, BigInt::from(2) * s),
        FamilyId::M2P => (&s * &s * &t + one, s),
        FamilyId::M3 => {
            let s2 = &s * &s;
            let x = BigInt::from(16) * &t * &s2 * &s2
                + BigInt::from(4) * &s2 * &s
                + BigInt::from(8) * &t * &s2
                + BigInt::from(3) * &s
                + &t;
            (x, BigInt::from(4) * s2 + one)
        }
    }
}

/// The convergent check of one family expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentCheck {
    pub form: ExpansionForm,
    pub pcf: Pcf,
    pub index: usize,
    /// `None` when the convergent is not a unit.
    pub solution: Option<PellSolution>,
    pub fundamental: bool,
    /// `k` with `|x| + |y| sqrt(m) = eps^k`.
    pub exponent: Option<u32>,
}

fn check_convergent(m: u64, form: ExpansionForm, pcf: &Pcf, index: usize) -> Result<ConvergentCheck> {
    let (solution, fundamental, exponent) = match convergent_solution(pcf, index, m) {
        Ok(sol) => {
            let k = unit_exponent(m, &sol.x, &sol.y)?;
            (Some(sol), k == 1, Some(k))
        }
        Err(Error::NotAUnit { .. }) => (None, false, None),
        Err(e) => return Err(e),
    };
    Ok(ConvergentCheck { form, pcf: pcf.clone(), index, solution, fundamental, exponent })
}

/// Agreement of the observed convergent data with the published claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyPellReport {
    pub family: FamilyId,
    pub s: i64,
    pub t: i64,
    pub m: u64,
    pub fundamental: PellSolution,
    /// The `(l-1)`th convergent of every closed-form expansion.
    pub checks: Vec<ConvergentCheck>,
    /// The `0`th convergent, reported for `M2`.
    pub zeroth: Option<ConvergentCheck>,
    /// Whether the fundamental unit comes from the `(l-1)`th convergent
    /// according to the claim; `None` outside its hypotheses.
    pub predicted: Option<bool>,
    pub observed: bool,
    pub agrees: Option<bool>,
    /// The explicit family solution and whether it is claimed fundamental.
    pub family_solution: PellSolution,
    pub family_solution_predicted: Option<bool>,
    pub family_solution_fundamental: bool,
    pub family_solution_agrees: Option<bool>,
    pub erratum_candidate: Option<String>,
}

/// Claim: for non-zero `s, t`, `M2` fails to give the fundamental unit at
/// the 1st convergent exactly when `|s| >= 2, t = -1`; `M2P` (1st) and `M3`
/// (2nd) always give it; `M1` gives `(t, 1)` at the 0th. The family
/// solutions are claimed fundamental for non-zero `s, t` (`t != -1` for
/// `M2`) and, for `M3`, for every `(s, t)` except `(+-1, 0), (0, 0)`.
pub fn check_family_pell(fam: FamilyId, s: i64, t: i64) -> Result<FamilyPellReport> {
    let expansions = family_picf(fam, s, t)?;
    let mbig = family_eval(fam, s, t);
    let m: u64 = mbig
        .try_into()
        .map_err(|_| Error::OutOfRange(format!("{fam}({s}, {t}) does not fit in 64 bits")))?;
    non_square(m)?;
    let fundamental = fundamental_solution(m)?;
    let l = fam.period_len();

    let checks = expansions
        .iter()
        .map(|e| check_convergent(m, e.form, &e.pcf, l - 1))
        .collect::<Result<Vec<_>>>()?;
    let zeroth = match fam {
        FamilyId::M2 => Some(check_convergent(m, expansions[0].form, &expansions[0].pcf, 0)?),
        _ => None,
    };
    let observed = checks.iter().all(|c| c.fundamental);

    let nonzero = s != 0 && t != 0;
    let predicted = match fam {
        FamilyId::M1 => Some(true),
        FamilyId::M2 => nonzero.then_some(!(s.abs() >= 2 && t == -1)),
        FamilyId::M2P | FamilyId::M3 => nonzero.then_some(true),
    };
    let agrees = predicted.map(|p| p == observed);

    let (fx, fy) = family_solution(fam, s, t);
    let family_solution = PellSolution::new(m, fx, fy)?;
    let fs_exp = unit_exponent(m, &family_solution.x, &family_solution.y)?;
    let family_solution_fundamental = fs_exp == 1;
    let family_solution_predicted = match fam {
        FamilyId::M1 => Some(true),
        FamilyId::M2 => (nonzero && t != -1).then_some(true),
        FamilyId::M2P => nonzero.then_some(true),
        FamilyId::M3 => (!matches!((s, t), (1, 0) | (-1, 0) | (0, 0))).then_some(true),
    };
    let family_solution_agrees = family_solution_predicted.map(|p| p == family_solution_fundamental);

    let mut notes = Vec::new();
    if agrees == Some(false) {
        let bad: Vec<String> = checks
            .iter()
            .filter(|c| c.fundamental != predicted.unwrap_or(true))
            .map(|c| match (&c.solution, c.exponent) {
                (Some(sol), Some(k)) => format!("convergent {} of {} is ({}, {}) = eps^{k}", c.index, c.pcf, sol.x, sol.y),
                _ => format!("convergent {} of {} is not a unit", c.index, c.pcf),
            })
            .collect();
        let period = sqrt_rcf(m)?.period().len();
        notes.push(format!(
            "claimed {} at convergent {}, observed otherwise: {}; sqrt({m}) has regular period {period}",
            if predicted == Some(true) { "fundamental" } else { "not fundamental" },
            l - 1,
            bad.join("; ")
        ));
    }
    if family_solution_agrees == Some(false) {
        notes.push(format!(
            "family solution ({}, {}) = eps^{fs_exp} is claimed fundamental; eps = {} + {}*sqrt({m})",
            family_solution.x, family_solution.y, fundamental.x, fundamental.y
        ));
    }
    let erratum_candidate = (!notes.is_empty()).then(|| notes.join(" | "));

    Ok(FamilyPellReport {
        family: fam,
        s,
        t,
        m,
        fundamental,
        checks,
        zeroth,
        predicted,
        observed,
        agrees,
        family_solution,
        family_solution_predicted,
        family_solution_fundamental,
        family_solution_agrees,
        erratum_candidate,
    })
}
