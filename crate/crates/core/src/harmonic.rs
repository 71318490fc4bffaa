//! Sawtooth function and Vaaler's trigonometric approximation to it.
//!
//! For `H >= 1` the approximant is
//! `psi*(t) = sum_{0<|h|<=H} a_h e(ht)` with `a_h = -(2 pi i h)^-1 J(h/(H+1))`,
//! `J(u) = pi u (1-|u|) cot(pi u) + |u|`, and the error majorant is the
//! scaled Fejér kernel `sum_{|h|<=H} b_h e(ht)`,
//! `b_h = (1 - |h|/(H+1)) / (2H+2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `{t} - 1/2`, with `psi(k) = -1/2` at integers.
#[inline]
pub fn sawtooth(t: f64) -> f64 {
    t - t.floor() - 0.5
}

/// `e(t) = exp(2 pi i t)` after reducing `t` modulo 1.
#[inline]
pub fn e(t: f64) -> Complex64 {
    let r = t - t.round();
    let (s, c) = (2.0 * PI * r).sin_cos();
    Complex64::new(c, s)
}

fn kernel_hat(u: f64) -> f64 {
    let a = u.abs();
    PI * a * (1.0 - a) / (PI * a).tan() + a
}

#[derive(Debug, Clone, PartialEq)]
pub struct VaalerApproximation {
    order: usize,
    // a[h-1] = a_h for h = 1..=H; a_{-h} is the conjugate.
    a: Vec<Complex64>,
    // b[h] = b_h for h = 0..=H; b_{-h} = b_h.
    b: Vec<f64>,
}

pub fn vaaler_coefficients(order: usize) -> Result<VaalerApproximation> {
    if order == 0 {
        return Err(Error::ZeroArgument);
    }
    let hp1 = (order + 1) as f64;
    let a = (1..=order)
        .map(|h| {
            let hf = h as f64;
            // -(2 pi i h)^-1 = i / (2 pi h)
            Complex64::new(0.0, kernel_hat(hf / hp1) / (2.0 * PI * hf))
        })
        .collect();
    let b = (0..=order).map(|h| (1.0 - h as f64 / hp1) / (2.0 * hp1)).collect();
    Ok(VaalerApproximation { order, a, b })
}

impl VaalerApproximation {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `a_h` for `0 < |h| <= H`.
    pub fn a(&self, h: i64) -> Option<Complex64> {
        let k = h.unsigned_abs() as usize;
        if k == 0 || k > self.order {
            return None;
        }
        Some(if h > 0 { self.a[k - 1] } else { self.a[k - 1].conj() })
    }

    /// `b_h` for `|h| <= H`.
    pub fn b(&self, h: i64) -> Option<f64> {
        self.b.get(h.unsigned_abs() as usize).copied()
    }

    /// The trigonometric approximant `sum a_h e(ht)` (real by symmetry).
    pub fn approximant(&self, t: f64) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(k, a)| 2.0 * (a * e((k + 1) as f64 * t)).re)
            .sum()
    }

    /// The majorant `sum b_h e(ht)` as a complex number; the imaginary
    /// part vanishes up to rounding.
    pub fn majorant_complex(&self, t: f64) -> Complex64 {
        let mut z = Complex64::new(self.b[0], 0.0);
        for (h, &bh) in self.b.iter().enumerate().skip(1) {
            z += bh * e(h as f64 * t) + bh * e(-(h as f64) * t);
        }
        z
    }
}

/// Evaluates both sides of `|psi(t) - sum a_h e(th)| <= sum b_h e(th)`.
pub fn vaaler_check(approx: &VaalerApproximation, t: f64) -> (f64, f64) {
    let lhs = (sawtooth(t) - approx.approximant(t)).abs();
    (lhs, approx.majorant_complex(t).re)
}
