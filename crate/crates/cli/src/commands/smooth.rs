use gpsprimes::arith::build_tables;
use gpsprimes::carmichael::smooth_shifted_prime_count;
use serde::Serialize;

use super::{real, to_json};
use crate::args::{Format, SmoothArgs};
use crate::error::validation;
use crate::{CliError, Outcome};

const MAX_X: f64 = 1e8;

#[derive(Debug, Serialize)]
struct Row {
    x: f64,
    y: f64,
    count: u64,
}

pub fn run(args: &SmoothArgs, fmt: Format) -> Result<Outcome, CliError> {
    if let Some(bad) = args.x.iter().find(|&&x| !(2.0..=MAX_X).contains(&x)) {
        return Err(validation(format!("x must lie in [2, {MAX_X}], got {bad}")));
    }
    if let Some(bad) = args.y.iter().find(|&&y| y < 2.0) {
        return Err(validation(format!("y must be at least 2, got {bad}")));
    }
    let max_x = args.x.iter().cloned().fold(2.0, f64::max);
    let tables = build_tables(1, max_x.floor() as u64, true)?;
    let mut rows = Vec::new();
    for &x in &args.x {
        for &y in &args.y {
            rows.push(Row { x, y, count: smooth_shifted_prime_count(x, y, &tables)? });
        }
    }
    let body = match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("x,y,count\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", real(r.x), real(r.y), r.count));
            }
            s
        }
    };
    Ok(Outcome::new(body))
}
