//! Weighted one-dimensional exponential sums and the derivative tests.

use num_complex::Complex64;
use rayon::prelude::*;

use super::dd;
use crate::arith::ArithmeticTables;
use crate::error::{invalid, Error, Result};
use crate::harmonic::e;
use crate::sequence::SequenceParams;
use crate::sum::ComplexSum;

const CHUNK: u64 = 1 << 13;
const DD_THRESHOLD: u64 = 1 << 30;

/// `theta' n^gamma + xi n` modulo 1, centred in `[-1/2, 1/2)`.
///
/// The products are formed with error-free transformations; for `n > 2^30`
/// the power itself is evaluated in double-double.
#[inline]
pub fn reduced_phase(theta: f64, gamma: f64, xi: f64, n: u64) -> f64 {
    let power = if n > DD_THRESHOLD { dd::pow(n, gamma) } else { dd::Dd::from_f64((n as f64).powf(gamma)) };
    let a = dd::centered_frac(power.mul_f64(theta));
    let b = dd::centered_frac(dd::two_prod(xi, n as f64));
    let t = a + b;
    t - t.round()
}

/// Phase `theta' n^gamma + xi n` over the integers in `(a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpec {
    pub theta: f64,
    pub gamma: f64,
    pub xi: f64,
    pub a: u64,
    pub b: u64,
}

impl PhaseSpec {
    pub fn new(theta: f64, gamma: f64, xi: f64, a: u64, b: u64) -> Result<Self> {
        if !(theta.is_finite() && xi.is_finite()) {
            return Err(invalid("phase coefficients must be finite"));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(invalid(format!("gamma must lie in (0, 1), got {gamma}")));
        }
        if a >= b {
            return Err(Error::RangeOrder { lo: a, hi: b });
        }
        Ok(Self { theta, gamma, xi, a, b })
    }

    /// `b <= 2a` with `a >= 1`.
    pub fn is_dyadic(&self) -> bool {
        self.a >= 1 && self.b <= 2 * self.a
    }

    pub fn len(&self) -> u64 {
        self.b - self.a
    }

    pub fn is_empty(&self) -> bool {
        self.a == self.b
    }

    /// `|gamma (gamma-1) theta'| a^(gamma-2)`.
    pub fn lambda2(&self) -> f64 {
        let g = self.gamma;
        (g * (g - 1.0) * self.theta).abs() * (self.a as f64).powf(g - 2.0)
    }

    /// `|gamma (gamma-1) (gamma-2) theta'| a^(gamma-3)`.
    pub fn lambda3(&self) -> f64 {
        let g = self.gamma;
        (g * (g - 1.0) * (g - 2.0) * self.theta).abs() * (self.a as f64).powf(g - 3.0)
    }
}

#[derive(Clone, Copy)]
pub enum Weight<'a> {
    Unit,
    Log,
    VonMangoldt(&'a ArithmeticTables),
    Custom(&'a (dyn Fn(u64) -> f64 + Sync)),
}

impl Weight<'_> {
    fn at(&self, n: u64) -> Result<f64> {
        Ok(match self {
            Weight::Unit => 1.0,
            Weight::Log => (n as f64).ln(),
            Weight::VonMangoldt(t) => t.von_mangoldt(n)?,
            Weight::Custom(f) => f(n),
        })
    }
}

/// `sum_{a < n <= b} w(n) e(theta' n^gamma + xi n)`.
pub fn phase_sum(spec: &PhaseSpec, weight: Weight<'_>) -> Result<Complex64> {
    let chunks: Vec<(u64, u64)> = (spec.a..spec.b)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK).min(spec.b)))
        .collect();
    let parts: Vec<Result<ComplexSum>> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = ComplexSum::new();
            for n in lo + 1..=hi {
                let w = weight.at(n)?;
                if w != 0.0 {
                    acc.add(w * e(reduced_phase(spec.theta, spec.gamma, spec.xi, n)));
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = ComplexSum::new();
    for p in parts {
        total.merge(&p?);
    }
    Ok(total.value())
}

/// `sum_{1<=h<=H} |sum_{x/2 < n <= x} Lambda(n) e(theta h n^gamma + xi n)|`.
pub fn weighted_lambda_sum(x: f64, h_max: u64, theta: f64, gamma: f64, xi: f64, tables: &ArithmeticTables) -> Result<f64> {
    if !(x >= 4.0) || h_max == 0 {
        return Err(invalid("weighted lambda sum needs x >= 4 and H >= 1"));
    }
    let (a, b) = ((x / 2.0).floor() as u64, x.floor() as u64);
    tables.require_prefix(b)?;
    let terms: Vec<Result<f64>> = (1..=h_max)
        .into_par_iter()
        .map(|h| {
            let spec = PhaseSpec::new(theta * h as f64, gamma, xi, a, b)?;
            Ok(phase_sum(&spec, Weight::VonMangoldt(tables))?.norm())
        })
        .collect();
    let mut acc = crate::sum::NeumaierSum::new();
    for t in terms {
        acc.add(t?);
    }
    Ok(acc.value())
}

/// [`weighted_lambda_sum`] with `theta` and `gamma` taken from the sequence.
pub fn weighted_lambda_sum_for(x: f64, h_max: u64, params: &SequenceParams, xi: f64, tables: &ArithmeticTables) -> Result<f64> {
    weighted_lambda_sum(x, h_max, params.theta(), params.gamma(), xi, tables)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    Second,
    Third,
}

/// `a lambda^(1/2) + lambda^(-1/2)`.
pub fn second_derivative_bound(a: f64, lambda: f64) -> f64 {
    a * lambda.sqrt() + 1.0 / lambda.sqrt()
}

/// `a lambda^(1/6) + lambda^(-1/3)`.
pub fn third_derivative_bound(a: f64, lambda: f64) -> f64 {
    a * lambda.powf(1.0 / 6.0) + lambda.powf(-1.0 / 3.0)
}

pub fn derivative_test_bound(spec: &PhaseSpec, order: DerivativeOrder) -> Result<f64> {
    if !spec.is_dyadic() {
        return Err(invalid(format!("range ({}, {}] is not dyadic", spec.a, spec.b)));
    }
    let a = spec.a as f64;
    let (lambda, bound): (f64, fn(f64, f64) -> f64) = match order {
        DerivativeOrder::Second => (spec.lambda2(), second_derivative_bound),
        DerivativeOrder::Third => (spec.lambda3(), third_derivative_bound),
    };
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid("derivative scale lambda must be positive"));
    }
    Ok(bound(a, lambda))
}
