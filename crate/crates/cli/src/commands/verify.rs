use gpsprimes::arith::build_tables;
use gpsprimes::expsums::hb_lambda;
use gpsprimes::harmonic::{vaaler_check, vaaler_coefficients};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{real, to_json};
use crate::args::{Format, HbArgs, VaalerArgs};
use crate::error::validation;
use crate::{CliError, Outcome};

/// Slack allowed on the majorant inequality.
pub const VAALER_TOL: f64 = 1e-12;
pub const HB_TOL: f64 = 1e-9;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct VaalerReport {
    pub order: usize,
    pub samples: u64,
    pub violations: u64,
    /// Largest `lhs - rhs` seen; negative when the majorant always wins.
    pub max_excess: f64,
    /// `|a_h| <= 1/|h|` and `b_h <= 1/H` for every coefficient.
    pub coefficient_bounds_hold: bool,
}

pub fn vaaler_reports(orders: &[usize], samples: u64, seed: u64) -> Result<Vec<VaalerReport>, CliError> {
    if samples == 0 || orders.is_empty() {
        return Err(validation("need at least one order and one sample"));
    }
    let mut out = Vec::new();
    for &order in orders {
        let approx = vaaler_coefficients(order)?;
        let h = order as i64;
        let bounds = (1..=h).all(|k| approx.a(k).unwrap().norm() <= 1.0 / k as f64 && approx.a(-k).unwrap().norm() <= 1.0 / k as f64)
            && (0..=h).all(|k| approx.b(k).unwrap() <= 1.0 / order as f64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ order as u64);
        let points: Vec<f64> = (0..samples).map(|_| rng.gen::<f64>()).collect();
        let parts: Vec<(u64, f64)> = points
            .par_chunks(CHUNK)
            .map(|chunk| {
                chunk.iter().fold((0u64, f64::NEG_INFINITY), |(v, m), &t| {
                    let (lhs, rhs) = vaaler_check(&approx, t);
                    let excess = lhs - rhs;
                    (v + u64::from(excess > VAALER_TOL), m.max(excess))
                })
            })
            .collect();
        let (violations, max_excess) = parts.into_iter().fold((0, f64::NEG_INFINITY), |(v, m), (a, b)| (v + a, m.max(b)));
        out.push(VaalerReport { order, samples, violations, max_excess, coefficient_bounds_hold: bounds });
    }
    Ok(out)
}

pub fn vaaler(args: &VaalerArgs, seed: u64, fmt: Format) -> Result<Outcome, CliError> {
    let reports = vaaler_reports(&args.orders, args.samples, seed)?;
    let body = match fmt {
        Format::Json => to_json(&reports)?,
        Format::Csv => {
            let mut s = String::from("order,samples,violations,max_excess,coefficient_bounds_hold\n");
            for r in &reports {
                s.push_str(&format!("{},{},{},{},{}\n", r.order, r.samples, r.violations, real(r.max_excess), r.coefficient_bounds_hold));
            }
            s
        }
    };
    Ok(Outcome::new(body))
}

#[derive(Debug, Clone, Serialize)]
pub struct HbReport {
    pub n_max: u64,
    pub k: u32,
    pub z: u64,
    pub max_abs_error: f64,
    pub worst_n: u64,
    pub passed: bool,
}

/// Smallest `z` with `2 z^k >= n_max`.
pub fn default_z(n_max: u64, k: u32) -> u64 {
    let mut z = ((n_max as f64 / 2.0).powf(1.0 / k as f64).ceil() as u64).max(1);
    while z > 1 && 2 * (z - 1).pow(k) >= n_max {
        z -= 1;
    }
    while 2 * z.pow(k) < n_max {
        z += 1;
    }
    z
}

pub fn hb_report(n_max: u64, k: u32, z: Option<u64>) -> Result<HbReport, CliError> {
    if n_max == 0 || n_max > 1_000_000 {
        return Err(validation(format!("n-max must lie in [1, 1e6], got {n_max}")));
    }
    if k == 0 || k > 6 {
        return Err(validation(format!("k must lie in [1, 6], got {k}")));
    }
    let z = z.unwrap_or_else(|| default_z(n_max, k));
    let tables = build_tables(1, n_max.max(2), true)?;
    let errors: Vec<Result<(u64, f64), CliError>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let v = hb_lambda(n, k, z, &tables)?;
            Ok((n, (v - tables.von_mangoldt(n)?).abs()))
        })
        .collect();
    let (mut worst_n, mut max_abs_error) = (1, 0.0);
    for r in errors {
        let (n, err) = r?;
        if err > max_abs_error {
            worst_n = n;
            max_abs_error = err;
        }
    }
    Ok(HbReport { n_max, k, z, max_abs_error, worst_n, passed: max_abs_error <= HB_TOL })
}

pub fn heath_brown(args: &HbArgs, fmt: Format) -> Result<Outcome, CliError> {
    let r = hb_report(args.n_max, args.k, args.z)?;
    let body = match fmt {
        Format::Json => to_json(&r)?,
        Format::Csv => format!(
            "n_max,k,z,max_abs_error,worst_n,passed\n{},{},{},{},{},{}\n",
            r.n_max,
            r.k,
            r.z,
            real(r.max_abs_error),
            r.worst_n,
            r.passed
        ),
    };
    Ok(Outcome::new(body))
}
