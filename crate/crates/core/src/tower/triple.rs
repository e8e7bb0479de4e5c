use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use super::elem::{eta, TowerElem};
use super::real::{embedding_value, numeric_embed, Fixed};
use crate::cf::{Mat2, RingElem};
use crate::error::{Error, Result};

/// Decimal places used when rendering numeric fields.
const SHOWN_DIGITS: u32 = 30;
/// Numeric agreement required of each embedding: `10^-10`.
pub const TOLERANCE_DIGITS: u32 = 10;

/// The purely periodic expansion `X_n = [(x1, x2, x3)]` over `Z[X_{n-1}]`:
///
/// ```text
/// x1 = ((eta_n - eta_{n-1}) X_n - 1) / eta_{n-1}
/// x2 = eta_{n-1}
/// x3 = ((eta_n - eta_{n-1}) / X_n - 1) / eta_{n-1}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerTriple {
    pub n: u32,
    pub x1: TowerElem,
    pub x2: TowerElem,
    pub x3: TowerElem,
}

impl TowerTriple {
    pub fn terms(&self) -> [&TowerElem; 3] {
        [&self.x1, &self.x2, &self.x3]
    }
}

fn check_level(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("the tower expansion needs n >= 1".into()));
    }
    Ok(())
}

/// Builds the triple with exact divisions; an inexact step is an error.
///
/// The division by `X_n` goes through [`TowerElem::split`]: the even part
/// of `eta_n - eta_{n-1}` must vanish.
pub fn tower_triple(n: u32) -> Result<TowerTriple> {
    check_level(n)?;
    let prev = eta(n - 1);
    let diff = eta(n).try_sub(&prev.embed_up())?;
    let (even, b) = diff.split()?;
    if !even.is_zero() {
        return Err(Error::Verification(format!("eta_{n} - eta_{} is not divisible by X_{n}: even part {even}", n - 1)));
    }
    let one = TowerElem::one(n - 1);
    // (eta_n - eta_{n-1}) X_n = X_n^2 b = (2 + X_{n-1}) b.
    let x_sq = TowerElem::from_i64(n - 1, &[2, 1]);
    let x1 = x_sq.try_mul(&b)?.try_sub(&one)?.unit_divide(&prev)?;
    let x3 = b.try_sub(&one)?.unit_divide(&prev)?;
    Ok(TowerTriple { n, x1, x2: prev, x3 })
}

/// Numeric check of one real embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCheck {
    pub k: u64,
    pub sigma_x: String,
    pub sigma_eta: String,
    /// `|sigma(eta_n)| > 1`.
    pub eta_exceeds_one: bool,
    /// `+1` when the limit should be `sigma(X_n)`, `-1` for `-sigma(X_n)`.
    pub expected_sign: i8,
    pub limit: String,
    pub deviation: String,
    pub within_tolerance: bool,
    /// Number of terms after which every later convergent stayed within tolerance.
    pub settled_after: Option<usize>,
}

/// Exact and numeric verification of the tower expansion at level `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub n: u32,
    pub triple: TowerTriple,
    pub eta: TowerElem,
    pub eta_prev: TowerElem,
    /// `E21 X^2 + (E22 - E11) X - E12` with `E = M([x1, x2, x3])`.
    pub fixed_point_residual: TowerElem,
    pub relative_norm_eta: TowerElem,
    /// `p2 = x1 x2 x3 + x1 + x3`, `q2 = x2 x3 + 1`.
    pub p2: TowerElem,
    pub q2: TowerElem,
    /// `p2 + X_n q2`, which must equal `eta_n`.
    pub p2_plus_x_q2: TowerElem,
    /// `x2 - x1 x2 x3 - x1 - x3`.
    pub system_residual_1: TowerElem,
    /// `x1 x2 + 1 - X_n^2 (x2 x3 + 1)`.
    pub system_residual_2: TowerElem,
    /// `x2^2 - X_n^2 (x2 x3 + 1)^2`, which must be `-1`.
    pub norm_form: TowerElem,
    pub exact_ok: bool,
    pub precision_bits: u32,
    pub iterations: usize,
    pub tolerance: String,
    pub embeddings: Vec<EmbeddingCheck>,
    pub numeric_ok: bool,
    pub ok: bool,
}

fn numeric_limit(terms: &[Fixed; 3], iters: usize, expected: &Fixed, tol: &Fixed) -> Result<(Fixed, Option<usize>)> {
    let bits = expected.bits();
    let (mut p_prev, mut q_prev) = (Fixed::from_int(1, bits), Fixed::zero(bits));
    let (mut p, mut q) = (terms[0].clone(), Fixed::from_int(1, bits));
    let mut settled = None;
    let mut last = p.div(&q)?;
    for i in 1..=iters {
        let value = if q.signum() == 0 { None } else { Some(p.div(&q)?) };
        let good = value
            .as_ref()
            .is_some_and(|v| v.sub(expected).abs().cmp_value(tol) == Ordering::Less);
        match (good, settled) {
            (true, None) => settled = Some(i),
            (false, _) => settled = None,
            _ => {}
        }
        if let Some(v) = value {
            last = v;
        }
        if i == iters {
            break;
        }
        let a = &terms[i % 3];
        let np = a.mul(&p).add(&p_prev);
        let nq = a.mul(&q).add(&q_prev);
        p_prev = std::mem::replace(&mut p, np);
        q_prev = std::mem::replace(&mut q, nq);
    }
    Ok((last, settled))
}

/// Runs every exact identity and, for each odd `k < 2^(n+1)`, iterates
/// `iters` convergents of `[(sigma(x1), sigma(x2), sigma(x3))]` at `bits`
/// fractional bits; the limit must be within `10^-10` of `+sigma(X_n)` when
/// `|sigma(eta_n)| > 1` and of `-sigma(X_n)` otherwise.
pub fn verify_tower(n: u32, bits: u32, iters: usize) -> Result<TowerReport> {
    check_level(n)?;
    if iters == 0 || bits == 0 {
        return Err(Error::OutOfRange("precision and iteration count must be positive".into()));
    }
    let triple = tower_triple(n)?;
    let up: Vec<TowerElem> = triple.terms().iter().map(|x| x.embed_up()).collect();
    let (x1, x2, x3) = (&up[0], &up[1], &up[2]);
    let x = TowerElem::generator(n);
    let x_sq = x.mul(&x);
    let one = TowerElem::one(n);
    let eta_n = eta(n);
    let eta_prev = eta(n - 1);

    let e = Mat2::word(&up, &one);
    let fixed_point_residual = e.e21.mul(&x_sq).add(&e.e22.sub(&e.e11).mul(&x)).sub(&e.e12);
    let relative_norm_eta = eta_n.relative_norm()?;
    let p2 = x1.mul(x2).mul(x3).add(x1).add(x3);
    let q2 = x2.mul(x3).add(&one);
    let p2_plus_x_q2 = p2.add(&x.mul(&q2));
    let system_residual_1 = x2.sub(&x1.mul(x2).mul(x3)).sub(x1).sub(x3);
    let system_residual_2 = x1.mul(x2).add(&one).sub(&x_sq.mul(&q2));
    let norm_form = x2.mul(x2).sub(&x_sq.mul(&q2).mul(&q2));
    let minus_one = TowerElem::integer(n, -1);
    let exact_ok = fixed_point_residual.is_zero()
        && relative_norm_eta == TowerElem::integer(n - 1, -1)
        && p2_plus_x_q2 == eta_n
        && system_residual_1.is_zero()
        && system_residual_2.is_zero()
        && norm_form == minus_one;

    let tol = Fixed::ten_pow_neg(TOLERANCE_DIGITS, bits);
    let one_f = Fixed::from_int(1, bits);
    let embeddings = (1..(1u64 << (n + 1)))
        .step_by(2)
        .map(|k| {
            let sx = embedding_value(n, k, bits)?;
            let se = numeric_embed(&eta_n, k, bits)?;
            let terms = [
                numeric_embed(x1, k, bits)?,
                numeric_embed(x2, k, bits)?,
                numeric_embed(x3, k, bits)?,
            ];
            let eta_exceeds_one = se.abs().cmp_value(&one_f) == Ordering::Greater;
            let expected = if eta_exceeds_one { sx.clone() } else { sx.neg() };
            let (limit, settled_after) = numeric_limit(&terms, iters, &expected, &tol)?;
            let dev = limit.sub(&expected).abs();
            Ok(EmbeddingCheck {
                k,
                sigma_x: sx.to_decimal(SHOWN_DIGITS),
                sigma_eta: se.to_decimal(SHOWN_DIGITS),
                eta_exceeds_one,
                expected_sign: if eta_exceeds_one { 1 } else { -1 },
                limit: limit.to_decimal(SHOWN_DIGITS),
                deviation: scientific(&dev),
                within_tolerance: dev.cmp_value(&tol) == Ordering::Less,
                settled_after,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let numeric_ok = embeddings.iter().all(|c| c.within_tolerance);

    Ok(TowerReport {
        n,
        triple,
        eta: eta_n,
        eta_prev,
        fixed_point_residual,
        relative_norm_eta,
        p2,
        q2,
        p2_plus_x_q2,
        system_residual_1,
        system_residual_2,
        norm_form,
        exact_ok,
        precision_bits: bits,
        iterations: iters,
        tolerance: format!("1e-{TOLERANCE_DIGITS}"),
        embeddings,
        numeric_ok,
        ok: exact_ok && numeric_ok,
    })
}

/// `d.dddde-N` rendering of a small non-negative fixed-point value.
fn scientific(v: &Fixed) -> String {
    if v.signum() == 0 {
        return "0".into();
    }
    let ten = BigInt::from(10);
    let mut exp = 0i32;
    let mut scaled = v.clone();
    let one = Fixed::from_int(1, v.bits());
    let ten_f = Fixed::from_int(10, v.bits());
    while scaled.cmp_value(&one) == Ordering::Less {
        scaled = scaled.scale(&ten);
        exp -= 1;
        if scaled.signum() == 0 {
            return "0".into();
        }
    }
    while scaled.cmp_value(&ten_f) != Ordering::Less {
        scaled = scaled.div(&ten_f).expect("ten is non-zero");
        exp += 1;
    }
    format!("{}e{exp}", scaled.to_decimal(4))
}
