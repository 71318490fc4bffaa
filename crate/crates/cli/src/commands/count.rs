use gpsprimes::asymptotics::{count_report, reports_to_csv, sigma1, sigma2, CountReport};
use gpsprimes::sequence::{gps_count, ResidueClass, SequenceParams};

use super::to_json;
use crate::args::{CountArgs, Format};
use crate::error::validation;
use crate::{cache, CliError, Outcome};

pub fn run(args: &CountArgs, fmt: Format) -> Result<Outcome, CliError> {
    let s = &args.seq;
    let params = if args.raw {
        SequenceParams::new(s.alpha, s.beta, s.c)?
    } else {
        SequenceParams::theorem(s.alpha, s.beta, s.c)?
    };
    let rc = ResidueClass::new(args.q, args.a)?;
    if !args.raw && !rc.is_coprime() {
        return Err(validation(format!("gcd(q, a) must be 1, got q = {}, a = {}", args.q, args.a)));
    }
    if let Some(bad) = args.x.iter().find(|&&x| x < 3.0 || x > 1e10) {
        return Err(validation(format!("x must lie in [3, 1e10], got {bad}")));
    }
    let max_x = args.x.iter().cloned().fold(0.0, f64::max);
    let tables = cache::prime_tables(max_x.floor() as u64)?;
    let mut reports = Vec::with_capacity(args.x.len());
    for &x in &args.x {
        let report = if args.raw {
            let count = gps_count(x, &params, &rc, &tables)?;
            CountReport {
                x,
                pi_gps: count.count,
                main_term: f64::NAN,
                sigma1: sigma1(x, &params, &rc, &tables)?,
                sigma2: sigma2(x, &params, &rc, &tables)?,
                residual: f64::NAN,
                normalized_residual: f64::NAN,
                epsilon_slack: 0.0,
                ambiguous: count.ambiguous,
            }
        } else {
            count_report(x, &params, &rc, &tables)?
        };
        reports.push(report);
    }
    let mut ambiguous: Vec<u64> = reports.iter().flat_map(|r| r.ambiguous.iter().copied()).collect();
    ambiguous.sort_unstable();
    ambiguous.dedup();
    let body = match fmt {
        Format::Csv => reports_to_csv(&reports),
        Format::Json => to_json(&reports)?,
    };
    Ok(Outcome { body, ambiguous })
}
