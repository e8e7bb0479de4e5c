//! One function per subcommand. Each returns its result document and the
//! erratum candidates it found; verification failures come back as
//! [`Error::Verification`].

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{squarefree_decompose, Surd};
use crate::cf::{convergence_check, dominant_eigenvalue, unroll, value_from_matrix, ConvergenceReport, Mat2, Pcf};
use crate::error::{Error, Result};
use crate::families::{family_eval, family_picf, family_rpcf, ExpansionForm, FamilyId};
use crate::pell::{check_family_pell, fundamental_solution, sqrt_rcf, FamilyPellReport, PellSolution};
use crate::reference::Orbit;
use crate::tower::{verify_tower, TowerReport};
use crate::variety::{brute_force_points, enumerate_points, VarietyPoint};

pub type Outcome<T> = Result<(T, Vec<String>)>;

fn radicand_surd(m: u64) -> Result<Surd> {
    Surd::sqrt(&BigInt::from(m))
}

#[derive(Serialize)]
pub struct ExpandResult {
    pub m: u64,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub square_factor: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub squarefree_part: BigInt,
    pub rcf: Pcf,
    pub period_length: usize,
}

pub fn expand(m: u64) -> Outcome<ExpandResult> {
    let rcf = sqrt_rcf(m)?;
    let (k, core) = squarefree_decompose(&BigInt::from(m))?;
    let period_length = rcf.period().len();
    Ok((ExpandResult { m, square_factor: k, squarefree_part: core, rcf, period_length }, vec![]))
}

#[derive(Serialize)]
pub struct PicfEntry {
    pub point: String,
    pub pcf: Pcf,
    pub convergence: ConvergenceReport,
    pub lambda_plus: Option<Surd>,
    pub value: Option<Surd>,
    pub sign: Option<i8>,
}

#[derive(Serialize)]
pub struct PicfResult {
    pub m: u64,
    pub period: usize,
    pub count: usize,
    pub points: Vec<PicfEntry>,
}

pub fn picf(m: u64, l: usize) -> Outcome<PicfResult> {
    let root = radicand_surd(m)?;
    let mut points = Vec::new();
    for pt in enumerate_points(m, l)? {
        let pcf = pt.to_pcf();
        let convergence = convergence_check(&pcf);
        let (lambda_plus, value, sign) = if convergence.converges {
            let lambda = dominant_eigenvalue(&convergence.e)?;
            let value = value_from_matrix(&convergence.e)?;
            let sign = if value == root {
                1
            } else if value == -root.clone() {
                -1
            } else {
                return Err(Error::Verification(format!("{pcf} evaluates to {value}, not +-sqrt({m})")));
            };
            (Some(lambda), Some(value), Some(sign))
        } else {
            (None, None, None)
        };
        points.push(PicfEntry { point: pt.to_string(), pcf, convergence, lambda_plus, value, sign });
    }
    Ok((PicfResult { m, period: l, count: points.len(), points }, vec![]))
}

#[derive(Serialize)]
pub struct BruteForce {
    pub bound: u64,
    pub points: Vec<String>,
}

#[derive(Serialize)]
pub struct VarietyResult {
    pub m: u64,
    pub period: usize,
    pub closed_form: Vec<String>,
    pub brute_force: Option<BruteForce>,
    pub equal: Option<bool>,
}

fn names(pts: &[VarietyPoint]) -> Vec<String> {
    pts.iter().map(ToString::to_string).collect()
}

pub fn variety(m: u64, l: usize, brute: Option<u64>) -> Outcome<VarietyResult> {
    let closed = enumerate_points(m, l)?;
    let (brute_force, equal) = match brute {
        Some(bound) => {
            let found = brute_force_points(m, l, bound)?;
            let equal = found == closed;
            (Some(BruteForce { bound, points: names(&found) }), Some(equal))
        }
        None => (None, None),
    };
    let result = VarietyResult { m, period: l, closed_form: names(&closed), brute_force, equal };
    if result.equal == Some(false) {
        return Err(Error::Verification(format!(
            "closed form {:?} differs from brute force {:?}",
            result.closed_form,
            result.brute_force.as_ref().map(|b| &b.points)
        )));
    }
    Ok((result, vec![]))
}

#[derive(Serialize)]
pub struct PellResult {
    pub m: u64,
    pub rcf: Pcf,
    pub period_length: usize,
    pub fundamental: PellSolution,
}

pub fn pell(m: u64) -> Outcome<PellResult> {
    let rcf = sqrt_rcf(m)?;
    let fundamental = fundamental_solution(m)?;
    Ok((PellResult { m, period_length: rcf.period().len(), rcf, fundamental }, vec![]))
}

#[derive(Serialize)]
pub struct StatedForms {
    pub orbit: String,
    pub lambda_plus: Surd,
    pub lambda_plus_matches: bool,
    #[serde(serialize_with = "crate::serial::mat2")]
    pub e: Mat2<BigInt>,
    pub e_matches: bool,
}

#[derive(Serialize)]
pub struct FamilyEntry {
    pub form: ExpansionForm,
    pub sign: i8,
    pub pcf: Pcf,
    pub minimal_period: bool,
    pub converges: bool,
    pub lambda_plus: Option<Surd>,
    pub value: Option<Surd>,
    pub stated: Option<StatedForms>,
}

#[derive(Serialize)]
pub struct FamilyResult {
    pub family: FamilyId,
    pub s: i64,
    pub t: i64,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub m: BigInt,
    pub square: bool,
    pub expansions: Vec<FamilyEntry>,
    pub rpcf: Option<Pcf>,
    pub rpcf_note: Option<String>,
    pub pell: Option<FamilyPellReport>,
    pub pell_note: Option<String>,
    pub verdict: Option<String>,
}

/// The orbit and its parameters for a family expansion, when the stated
/// closed forms cover it.
fn stated_orbit(fam: FamilyId, form: ExpansionForm, s: i64, t: i64) -> Option<(Orbit, i64, i64)> {
    let (orbit, os, ot) = match (fam, form) {
        (FamilyId::M1, _) => (Orbit::P1, 0, t),
        (FamilyId::M2, _) => (Orbit::P2, s, t),
        (FamilyId::M2P, _) => (Orbit::P2Prime, s, t),
        (FamilyId::M3, ExpansionForm::General) => (Orbit::P3, s, t),
        (FamilyId::M3, ExpansionForm::ZeroSFirst) => (Orbit::Q, 0, t),
        (FamilyId::M3, ExpansionForm::ZeroSSecond) => (Orbit::R, 0, t),
        (FamilyId::M3, ExpansionForm::UnitSFirst) => (Orbit::O, 1, s * t),
        (FamilyId::M3, ExpansionForm::UnitSSecond) => (Orbit::L, 1, s * t),
    };
    let applies = orbit.in_domain(os, ot) && !(orbit == Orbit::P3 && ot == 0);
    applies.then_some((orbit, os, ot))
}

fn ordinal(i: usize) -> String {
    match i {
        1 => "1st".into(),
        2 => "2nd".into(),
        3 => "3rd".into(),
        _ => format!("{i}th"),
    }
}

fn pell_verdict(fam: FamilyId, report: &FamilyPellReport) -> String {
    let at = |ok: bool| if ok { "fundamental at" } else { "fundamental NOT at" };
    let mut v = format!("{} {} convergent", at(report.observed), ordinal(fam.period_len() - 1));
    if let Some(z) = &report.zeroth {
        v.push_str(&format!("; {} {} convergent", at(z.fundamental), ordinal(0)));
    }
    v
}

pub fn family(fam: FamilyId, s: i64, t: i64) -> Outcome<FamilyResult> {
    let m = family_eval(fam, s, t);
    let expansions = family_picf(fam, s, t)?;
    let root = Surd::sqrt(&m)?;
    let square = root.is_rational();
    let mut errata = Vec::new();

    let mut entries = Vec::new();
    for exp in expansions {
        let report = convergence_check(&exp.pcf);
        let (lambda_plus, value) = if report.converges {
            let lambda = dominant_eigenvalue(&report.e)?;
            let value = value_from_matrix(&report.e)?;
            let expected = if exp.sign < 0 { -root.clone() } else { root.clone() };
            if value != expected {
                return Err(Error::Verification(format!(
                    "{} evaluates to {value}, expected {expected}",
                    exp.pcf
                )));
            }
            (Some(lambda), Some(value))
        } else {
            (None, None)
        };
        let stated = match (stated_orbit(fam, exp.form, s, t), &lambda_plus) {
            (Some((orbit, os, ot)), Some(lambda)) => {
                let stated_lambda = orbit.stated_eigenvalue(os, ot)?;
                let e = orbit.stated_matrix(os, ot);
                let lambda_plus_matches = &stated_lambda == lambda;
                let e_matches = e == report.e;
                if !lambda_plus_matches {
                    errata.push(format!(
                        "{orbit}: stated lambda_+ = {stated_lambda}, computed {lambda}"
                    ));
                }
                if !e_matches {
                    errata.push(format!(
                        "{orbit}: stated E = [[{}, {}], [{}, {}]], computed [[{}, {}], [{}, {}]]",
                        e.e11, e.e12, e.e21, e.e22, report.e.e11, report.e.e12, report.e.e21, report.e.e22
                    ));
                }
                Some(StatedForms { orbit: orbit.to_string(), lambda_plus: stated_lambda, lambda_plus_matches, e, e_matches })
            }
            _ => None,
        };
        entries.push(FamilyEntry {
            form: exp.form,
            sign: exp.sign,
            pcf: exp.pcf,
            minimal_period: exp.minimal_period,
            converges: report.converges,
            lambda_plus,
            value,
            stated,
        });
    }

    let (rpcf, rpcf_note) = match family_rpcf(fam, s, t) {
        Ok(p) => {
            let mu: Option<u64> = m.clone().try_into().ok();
            match mu.map(sqrt_rcf) {
                Some(Ok(expected)) if unroll(&expected, 40) != unroll(&p, 40) => errata.push(format!(
                    "closed-form regular expansion {p} differs from the computed {expected}"
                )),
                _ => {}
            }
            (Some(p), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };

    let (pell, pell_note) = if square {
        (None, Some(format!("{m} is a perfect square")))
    } else {
        match check_family_pell(fam, s, t) {
            Ok(r) => (Some(r), None),
            Err(e) if e.is_verification() => return Err(e),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    if let Some(note) = pell.as_ref().and_then(|r| r.erratum_candidate.clone()) {
        errata.push(note);
    }
    let verdict = pell.as_ref().map(|r| pell_verdict(fam, r));

    let result = FamilyResult {
        family: fam,
        s,
        t,
        m,
        square,
        expansions: entries,
        rpcf,
        rpcf_note,
        pell,
        pell_note,
        verdict,
    };
    Ok((result, errata))
}

pub fn tower(n: u32, bits: u32, iters: usize) -> Result<TowerReport> {
    if n == 0 {
        return Err(Error::OutOfRange("tower level must be at least 1".into()));
    }
    if n > 12 || bits == 0 || bits > 1 << 16 || iters > 1 << 20 {
        return Err(Error::OutOfRange(format!("n = {n}, precision = {bits}, iterations = {iters}")));
    }
    let report = verify_tower(n, bits, iters)?;
    Ok(report)
}

pub fn tower_failure(report: &TowerReport) -> Option<String> {
    if report.ok {
        return None;
    }
    let worst = report
        .embeddings
        .iter()
        .filter(|e| !e.within_tolerance)
        .map(|e| format!("k={} deviation {}", e.k, e.deviation))
        .collect::<Vec<_>>();
    Some(if report.exact_ok {
        format!("numeric check outside tolerance {}: {}", report.tolerance, worst.join(", "))
    } else {
        "exact tower identities failed".into()
    })
}
