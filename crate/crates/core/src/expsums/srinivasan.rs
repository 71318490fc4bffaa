//! Choosing `H` to balance sums of increasing and decreasing monomials.

use serde::Serialize;

use crate::error::{invalid, Result};

/// `L(H) = sum A_i H^(a_i) + sum B_j H^(-b_j)` on `[h1, h2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBound {
    growth: Vec<(f64, f64)>,
    decay: Vec<(f64, f64)>,
    h1: f64,
    h2: f64,
}

impl MonomialBound {
    pub fn new(growth: Vec<(f64, f64)>, decay: Vec<(f64, f64)>, h1: f64, h2: f64) -> Result<Self> {
        if growth.is_empty() || decay.is_empty() {
            return Err(invalid("both term lists must be non-empty"));
        }
        let positive = |v: &f64| *v > 0.0 && v.is_finite();
        if !growth.iter().chain(&decay).all(|(c, e)| positive(c) && positive(e)) {
            return Err(invalid("coefficients and exponents must be positive"));
        }
        if !(positive(&h1) && h1 <= h2 && h2.is_finite()) {
            return Err(invalid(format!("need 0 < H1 <= H2, got [{h1}, {h2}]")));
        }
        Ok(Self { growth, decay, h1, h2 })
    }

    pub fn eval(&self, h: f64) -> f64 {
        let g: f64 = self.growth.iter().map(|(a, e)| a * h.powf(*e)).sum();
        let d: f64 = self.decay.iter().map(|(b, e)| b * h.powf(-e)).sum();
        g + d
    }

    /// `sum A_i H1^(a_i) + sum B_j H2^(-b_j) + sum_ij (A_i^(b_j) B_j^(a_i))^(1/(a_i+b_j))`.
    pub fn closed_bound(&self) -> f64 {
        let g: f64 = self.growth.iter().map(|(a, e)| a * self.h1.powf(*e)).sum();
        let d: f64 = self.decay.iter().map(|(b, e)| b * self.h2.powf(-e)).sum();
        let mut cross = 0.0;
        for (a, ae) in &self.growth {
            for (b, be) in &self.decay {
                cross += ((be * a.ln() + ae * b.ln()) / (ae + be)).exp();
            }
        }
        g + d + cross
    }

    pub fn term_count(&self) -> usize {
        self.growth.len() + self.decay.len()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.h1, self.h2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub h_opt: f64,
    pub value: f64,
    pub closed_bound: f64,
}

/// Golden-section search on `ln H` (where `L` is convex), polished on a small grid.
pub fn srinivasan_optimize(mb: &MonomialBound) -> Result<Optimum> {
    let f = |s: f64| mb.eval(s.exp());
    let (mut lo, mut hi) = (mb.h1.ln(), mb.h2.ln());
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let mut best = (0.5 * (lo + hi)).clamp(mb.h1.ln(), mb.h2.ln());
    let mut best_val = f(best);
    let width = (hi - lo).max(1e-12);
    let candidates = (0..=32)
        .map(|i| lo - width + 3.0 * width * i as f64 / 32.0)
        .chain([mb.h1.ln(), mb.h2.ln()]);
    for s in candidates {
        let s = s.clamp(mb.h1.ln(), mb.h2.ln());
        let v = f(s);
        if v < best_val {
            best = s;
            best_val = v;
        }
    }
    let h_opt = best.exp().clamp(mb.h1, mb.h2);
    Ok(Optimum { h_opt, value: mb.eval(h_opt), closed_bound: mb.closed_bound() })
}
