//! Floor and ceiling decisions for `alpha n^c + beta` and its inverse
//! `((k - beta)/alpha)^(1/c)`.
//!
//! Binary64 is tried first. If the value lands within a guard band of an
//! integer the decision is redone with 256-bit software floats (about 77
//! significant digits); a value still within `1e-30` of an integer is
//! reported as ambiguous rather than guessed.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode};

use super::SequenceParams;
use crate::error::{Error, Result};

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;
const TIE_EPS: f64 = 1e-30;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn guard_band(value: f64, log_mag: f64) -> f64 {
    1e-9 + value.abs() * (1.0 + log_mag.abs()) * 16.0 * f64::EPSILON
}

fn bf(v: f64) -> BigFloat {
    BigFloat::from_f64(v, PREC)
}

fn bi(v: i64) -> BigFloat {
    BigFloat::from_i64(v, PREC)
}

// Sign of (value - n0) where value is given in high precision; None when the
// gap is below the tie threshold.
fn side(value: &BigFloat, n0: i64) -> Option<i8> {
    let d = value.sub(&bi(n0), PREC, RM);
    if d.abs().cmp(&bf(TIE_EPS)) == Some(-1) {
        return None;
    }
    Some(if d.is_negative() { -1 } else { 1 })
}

/// `(ceil(u), u)` for `u = ((k - beta)/alpha)^gamma`, clamped to `(0, 0.0)`
/// when `k - beta <= 0`.
pub(crate) fn inverse_point(k: i64, p: &SequenceParams) -> Result<(i64, f64)> {
    // exact for k near beta (Sterbenz), so the sign test is reliable
    let t = k as f64 - p.beta;
    if t <= 0.0 {
        return Ok((0, 0.0));
    }
    let base = t / p.alpha;
    let u = base.powf(p.gamma);
    let n0 = u.round();
    if (u - n0).abs() > guard_band(u, base.ln()) {
        return Ok((u.ceil() as i64, u));
    }
    let n0 = n0 as i64;
    if n0 == 0 {
        return Ok((1, u));
    }
    let exact_base = bi(k).sub(&bf(p.beta), PREC, RM).div(&bf(p.alpha), PREC, RM);
    if n0 == 1 && exact_base.cmp(&bi(1)) == Some(0) {
        // 1^gamma = 1 exactly: n = 1 hits k on the nose
        return Ok((1, u));
    }
    let gamma = bi(1).div(&bf(p.c), PREC, RM);
    let hp = CONSTS.with(|cc| exact_base.pow(&gamma, PREC, RM, &mut cc.borrow_mut()));
    match side(&hp, n0) {
        None => Err(Error::Ambiguous { value: k.max(0) as u64 }),
        Some(s) if s < 0 => Ok((n0, u)),
        Some(_) => Ok((n0 + 1, u)),
    }
}

/// `floor(alpha n^c + beta)`.
pub(crate) fn floor_forward(n: u64, p: &SequenceParams) -> Result<i64> {
    let nf = n as f64;
    let power = p.alpha * nf.powf(p.c);
    let v = power + p.beta;
    let n0 = v.round();
    let band = guard_band(power, p.c * nf.ln()) + p.beta.abs() * 4.0 * f64::EPSILON;
    if (v - n0).abs() > band {
        return Ok(v.floor() as i64);
    }
    let n0 = n0 as i64;
    let hp = if n == 1 {
        bf(p.alpha).add(&bf(p.beta), PREC, RM)
    } else {
        let pw = CONSTS.with(|cc| BigFloat::from_u64(n, PREC).pow(&bf(p.c), PREC, RM, &mut cc.borrow_mut()));
        pw.mul(&bf(p.alpha), PREC, RM).add(&bf(p.beta), PREC, RM)
    };
    if n == 1 && hp.cmp(&bi(n0)) == Some(0) {
        return Ok(n0);
    }
    match side(&hp, n0) {
        None => Err(Error::Ambiguous { value: n }),
        Some(s) if s < 0 => Ok(n0 - 1),
        Some(_) => Ok(n0),
    }
}
