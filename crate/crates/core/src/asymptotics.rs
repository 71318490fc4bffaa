//! Main terms of the prime-counting asymptotics and the decomposition
//! `pi_gps = Sigma_1 + Sigma_2 + O(x^(gamma-1))`.
//!
//! Integrals against the prime-counting step function are evaluated exactly:
//! `int_2^x u^(gamma-2) pi(u; q, a) du = sum_{p <= x} (x^(gamma-1) - p^(gamma-1)) / (gamma - 1)`.

use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ArithmeticTables;
use crate::error::{Error, Result};
use crate::sequence::{gps_count, prime_blocks, sawtooth_difference, ResidueClass, SequenceParams};
use crate::sum::{merge_in_order, NeumaierSum};

const ROUTE_TOL: f64 = 1e-9;

/// Exponent `7 gamma / 13 + 11 / 26` of the error term.
pub fn error_exponent(gamma: f64) -> f64 {
    7.0 * gamma / 13.0 + 11.0 / 26.0
}

// Sum of f(p) over primes p <= x in the class, in deterministic block order.
fn prime_sum<F>(x: f64, rc: &ResidueClass, tables: &ArithmeticTables, f: F) -> Result<f64>
where
    F: Fn(u64) -> f64 + Sync,
{
    let (_, blocks) = prime_blocks(x, tables)?;
    let parts: Vec<NeumaierSum> = blocks
        .par_iter()
        .map(|&(a, b)| tables.primes_between(a, b).filter(|&p| rc.contains(p)).map(&f).collect())
        .collect();
    Ok(merge_in_order(&parts))
}

fn try_prime_sum<F>(x: f64, rc: &ResidueClass, tables: &ArithmeticTables, f: F) -> Result<f64>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    let (_, blocks) = prime_blocks(x, tables)?;
    let parts: Vec<Result<NeumaierSum>> = blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut s = NeumaierSum::new();
            for p in tables.primes_between(a, b).filter(|&p| rc.contains(p)) {
                s.add(f(p)?);
            }
            Ok(s)
        })
        .collect();
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(merge_in_order(&parts))
}

// (x^(g-1) - p^(g-1)) / (g-1) without cancellation.
fn step_integral(x: f64, p: f64, g: f64) -> f64 {
    let e = g - 1.0;
    p.powf(e) * (e * (x / p).ln()).exp_m1() / e
}

/// `Sigma_1(x) = theta gamma sum p^(gamma-1)`.
pub fn sigma1(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    let g = params.gamma();
    let s = prime_sum(x, rc, tables, |p| (p as f64).powf(g - 1.0))?;
    Ok(params.theta() * g * s)
}

/// Partial-summation form
/// `theta gamma x^(gamma-1) pi(x) - theta gamma (gamma-1) int_2^x u^(gamma-2) pi(u) du`.
pub fn sigma1_integral_form(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    weighted_partial_summation(x, params, rc, tables, |_| 1.0)
}

fn weighted_partial_summation<W>(
    x: f64,
    params: &SequenceParams,
    rc: &ResidueClass,
    tables: &ArithmeticTables,
    w: W,
) -> Result<f64>
where
    W: Fn(u64) -> f64 + Sync,
{
    let g = params.gamma();
    let count = prime_sum(x, rc, tables, &w)?;
    let integral = prime_sum(x, rc, tables, |p| w(p) * step_integral(x, p as f64, g))?;
    let tg = params.theta() * g;
    Ok(tg * x.powf(g - 1.0) * count - tg * (g - 1.0) * integral)
}

/// `Sigma_2(x) = sum (psi(-theta(p+1-beta)^gamma) - psi(-theta(p-beta)^gamma))`.
pub fn sigma2(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    try_prime_sum(x, rc, tables, |p| sawtooth_difference(p, params))
}

/// `J(x)`: the sawtooth differences weighted by `log p` over primes.
pub fn script_j(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    try_prime_sum(x, rc, tables, |p| Ok((p as f64).ln() * sawtooth_difference(p, params)?))
}

/// `H(x)`: the same sum weighted by `Lambda(n)` over all prime powers `n <= x`.
pub fn script_h(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    let xi = crate::sequence::floor_x(x)?;
    let primes_part = script_j(x, params, rc, tables)?;
    let mut tail = NeumaierSum::new();
    for p in tables.primes_between(1, crate::arith::integer_root(xi, 2)) {
        let lp = (p as f64).ln();
        let mut n = p * p;
        loop {
            if rc.contains(n) {
                tail.add(lp * sawtooth_difference(n, params)?);
            }
            match n.checked_mul(p) {
                Some(m) if m <= xi => n = m,
                _ => break,
            }
        }
    }
    Ok(primes_part + tail.value())
}

/// Main term `alpha^-gamma gamma x^(gamma-1) pi(x) + alpha^-gamma gamma (1-gamma) int_2^x u^(gamma-2) pi(u) du`.
///
/// Both the integral route and the direct sum `theta gamma sum p^(gamma-1)`
/// are evaluated; a relative disagreement above `1e-9` is an error.
pub fn main_term_pi(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    main_term(x, params, rc, tables, |_| 1.0)
}

/// Main term with `log p` weights (the `vartheta` version).
pub fn main_term_theta(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    main_term(x, params, rc, tables, |p| (p as f64).ln())
}

fn main_term<W>(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables, w: W) -> Result<f64>
where
    W: Fn(u64) -> f64 + Sync,
{
    params.require_theorem()?;
    rc.require_coprime()?;
    let g = params.gamma();
    let integral_route = weighted_partial_summation(x, params, rc, tables, &w)?;
    let direct = params.theta() * g * prime_sum(x, rc, tables, |p| w(p) * (p as f64).powf(g - 1.0))?;
    let scale = direct.abs().max(integral_route.abs()).max(f64::MIN_POSITIVE);
    if (direct - integral_route).abs() > ROUTE_TOL * scale {
        return Err(Error::RouteMismatch { first: integral_route, second: direct });
    }
    Ok(integral_route)
}

/// `x^gamma / (alpha^gamma log x)` and `(pi_gps - estimate) / (x^gamma / log^2 x)`.
pub fn corollary_density(x: f64, params: &SequenceParams, tables: &ArithmeticTables) -> Result<(f64, f64)> {
    if x < 3.0 {
        return Err(crate::error::invalid("corollary density needs x >= 3"));
    }
    let g = params.gamma();
    let lx = x.ln();
    let estimate = x.powf(g) / (params.alpha().powf(g) * lx);
    let count = gps_count(x, params, &ResidueClass::all(), tables)?;
    let rel = (count.count as f64 - estimate) / (x.powf(g) / (lx * lx));
    Ok((estimate, rel))
}

/// The admissibility threshold `gamma > 11/12`, verified as the fixed point
/// of `gamma -> 7 gamma / 13 + 11 / 26`.
pub fn admissible_gamma_threshold_exact() -> Ratio<i64> {
    let g = Ratio::new(11, 12);
    debug_assert_eq!(Ratio::new(7, 13) * g + Ratio::new(11, 26), g);
    g
}

pub fn admissible_gamma_threshold() -> f64 {
    let g = admissible_gamma_threshold_exact();
    *g.numer() as f64 / *g.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub x: f64,
    pub pi_gps: u64,
    pub main_term: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub residual: f64,
    pub normalized_residual: f64,
    pub epsilon_slack: f64,
    /// Primes whose membership could not be decided (excluded from `pi_gps`).
    pub ambiguous: Vec<u64>,
}

pub const COUNT_CSV_HEADER: &str = "x,pi_gps,sigma1,sigma2,main_term,residual,normalized_residual";

pub fn count_report(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<CountReport> {
    let count = gps_count(x, params, rc, tables)?;
    let s1 = sigma1(x, params, rc, tables)?;
    let s2 = sigma2(x, params, rc, tables)?;
    let main = main_term_pi(x, params, rc, tables)?;
    let residual = count.count as f64 - main;
    Ok(CountReport {
        x,
        pi_gps: count.count,
        main_term: main,
        sigma1: s1,
        sigma2: s2,
        residual,
        normalized_residual: residual / x.powf(error_exponent(params.gamma())),
        epsilon_slack: 0.0,
        ambiguous: count.ambiguous,
    })
}

/// Reals with 17 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl CountReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            format_real(self.x),
            self.pi_gps,
            format_real(self.sigma1),
            format_real(self.sigma2),
            format_real(self.main_term),
            format_real(self.residual),
            format_real(self.normalized_residual)
        )
    }
}

pub fn reports_to_csv(reports: &[CountReport]) -> String {
    let mut s = String::new();
    writeln!(s, "{COUNT_CSV_HEADER}").unwrap();
    for r in reports {
        writeln!(s, "{}", r.csv_row()).unwrap();
    }
    s
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
