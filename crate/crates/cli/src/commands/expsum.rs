use gpsprimes::expsums::{
    grid_to_csv, type_i_sum, type_ii_sum, BilinearPhase, BilinearSumSpec, Coefficients, GridRow,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::to_json;
use crate::args::{CoefficientChoice, ExpsumArgs, Format, SumType};
use crate::error::validation;
use crate::{CliError, Outcome};

const MAX_X: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    TypeI,
    TypeII,
}

/// `(shape, K, L)` with `KL` close to `x`, spread across each admissible `K` window.
pub fn grid_shapes(x: f64, kind: SumType) -> Vec<(Shape, u64, u64)> {
    let mut out = Vec::new();
    let mut push = |shape, k: u64| {
        let l = (x / k as f64).round() as u64;
        if k >= 1 && l >= 2 && !out.contains(&(shape, k, l)) {
            out.push((shape, k, l));
        }
    };
    if kind != SumType::Type2 {
        for e in [0.2, 0.3, 0.4, 0.5] {
            push(Shape::TypeI, x.powf(e).floor() as u64);
        }
    }
    if kind != SumType::Type1 {
        push(Shape::TypeII, x.sqrt().ceil() as u64);
        for e in [0.6, 0.7, 0.76] {
            push(Shape::TypeII, x.powf(e).floor() as u64);
        }
    }
    out
}

fn coefficients(choice: CoefficientChoice, start: u64, len: u64, bounded: bool, rng: &mut ChaCha8Rng) -> Result<Coefficients, CliError> {
    Ok(match (choice, bounded) {
        (CoefficientChoice::Unit, _) | (_, false) => Coefficients::unit(len),
        (CoefficientChoice::Mobius, true) => Coefficients::mobius(start, len)?,
        (CoefficientChoice::Random, true) => {
            Coefficients::bounded((0..len).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect())
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapedRow {
    pub shape: Shape,
    #[serde(flatten)]
    pub row: GridRow,
}

pub fn grid(args: &ExpsumArgs, seed: u64) -> Result<Vec<ShapedRow>, CliError> {
    if let Some(bad) = args.x.iter().find(|&&x| !(16.0..=MAX_X).contains(&x)) {
        return Err(validation(format!("x must lie in [16, {MAX_X}], got {bad}")));
    }
    if args.h.is_empty() || args.h.contains(&0) {
        return Err(validation("H values must be positive"));
    }
    if !(args.c > 1.0 && args.alpha > 0.0) {
        return Err(validation(format!("need c > 1 and alpha > 0, got c = {}, alpha = {}", args.c, args.alpha)));
    }
    let gamma = 1.0 / args.c;
    let phase = BilinearPhase::new(args.alpha.powf(-gamma), gamma, args.xi)?;
    let mut rows = Vec::new();
    for (xi, &x) in args.x.iter().enumerate() {
        for (si, (shape, k, l)) in grid_shapes(x, args.kind).into_iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((xi as u64) << 32) ^ si as u64);
            let a = coefficients(args.coeffs, k, k, true, &mut rng)?;
            let b = coefficients(args.coeffs, l, l, shape == Shape::TypeII, &mut rng)?;
            for &h in &args.h {
                let spec = BilinearSumSpec::new(k, l, h, 1, a.clone(), b.clone())?;
                let est = match shape {
                    Shape::TypeI => type_i_sum(&spec, x, &phase)?,
                    Shape::TypeII => type_ii_sum(&spec, x, &phase)?,
                };
                rows.push(ShapedRow { shape, row: GridRow::new(x, &spec, est) });
            }
        }
    }
    Ok(rows)
}

pub fn run(args: &ExpsumArgs, seed: u64, fmt: Format) -> Result<Outcome, CliError> {
    let rows = grid(args, seed)?;
    let body = match fmt {
        Format::Csv => grid_to_csv(&rows.iter().map(|r| r.row).collect::<Vec<_>>()),
        Format::Json => to_json(&rows)?,
    };
    Ok(Outcome::new(body))
}
