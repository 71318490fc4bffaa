use gpsprimes::expsums::{srinivasan_optimize, MonomialBound, Optimum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{real, to_json};
use crate::args::{Format, OptimizeArgs};
use crate::error::validation;
use crate::{CliError, Outcome};

const GRID_POINTS: usize = 4000;

#[derive(Debug, Clone, Serialize)]
pub struct RandomCase {
    pub index: usize,
    pub terms: usize,
    pub h_opt: f64,
    pub value: f64,
    pub closed_bound: f64,
    pub grid_min: f64,
}

impl RandomCase {
    /// `value / grid_min - 1`.
    pub fn excess(&self) -> f64 {
        self.value / self.grid_min - 1.0
    }
}

/// Minimum of `L` over a log-spaced grid on `[H1, H2]`.
pub fn grid_min(mb: &MonomialBound) -> f64 {
    let (h1, h2) = mb.range();
    (0..=GRID_POINTS)
        .map(|i| mb.eval((h1.ln() + (h2 / h1).ln() * i as f64 / GRID_POINTS as f64).exp()))
        .fold(f64::INFINITY, f64::min)
}

pub fn random_instance(rng: &mut ChaCha8Rng) -> MonomialBound {
    let terms = |rng: &mut ChaCha8Rng| -> Vec<(f64, f64)> {
        (0..rng.gen_range(1..=3)).map(|_| (10f64.powf(rng.gen_range(-1.0..3.0)), rng.gen_range(0.1..3.0))).collect()
    };
    let growth = terms(rng);
    let decay = terms(rng);
    let h1 = 10f64.powf(rng.gen_range(0.0..2.0));
    let h2 = h1 * 10f64.powf(rng.gen_range(0.0..4.0));
    MonomialBound::new(growth, decay, h1, h2).expect("generated instance is valid")
}

pub fn random_cases(count: usize, seed: u64) -> Result<Vec<RandomCase>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<MonomialBound> = (0..count).map(|_| random_instance(&mut rng)).collect();
    instances
        .par_iter()
        .enumerate()
        .map(|(index, mb)| {
            let o = srinivasan_optimize(mb)?;
            Ok(RandomCase {
                index,
                terms: mb.term_count(),
                h_opt: o.h_opt,
                value: o.value,
                closed_bound: o.closed_bound,
                grid_min: grid_min(mb),
            })
        })
        .collect()
}

pub fn run(args: &OptimizeArgs, seed: u64, fmt: Format) -> Result<Outcome, CliError> {
    if let Some(count) = args.random {
        if count == 0 || count > 1_000_000 {
            return Err(validation(format!("random count must lie in [1, 1e6], got {count}")));
        }
        let cases = random_cases(count, seed)?;
        let body = match fmt {
            Format::Json => to_json(&cases)?,
            Format::Csv => {
                let mut s = String::from("index,terms,h_opt,value,closed_bound,grid_min\n");
                for c in &cases {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        c.index,
                        c.terms,
                        real(c.h_opt),
                        real(c.value),
                        real(c.closed_bound),
                        real(c.grid_min)
                    ));
                }
                s
            }
        };
        return Ok(Outcome::new(body));
    }
    let h2 = args.h2.ok_or_else(|| validation("--h2 is required unless --random is given"))?;
    let mb = MonomialBound::new(args.growth.clone(), args.decay.clone(), args.h1, h2)?;
    let o: Optimum = srinivasan_optimize(&mb)?;
    let body = match fmt {
        Format::Json => to_json(&o)?,
        Format::Csv => format!("h_opt,value,closed_bound\n{},{},{}\n", real(o.h_opt), real(o.value), real(o.closed_bound)),
    };
    Ok(Outcome::new(body))
}
