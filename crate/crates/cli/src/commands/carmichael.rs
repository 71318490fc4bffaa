use gpsprimes::arith::factorize;
use gpsprimes::carmichael::{enumerate_carmichael, gps_carmichael_search, CarmichaelRecord};
use gpsprimes::sequence::SequenceParams;

use super::to_json;
use crate::args::{CarmichaelArgs, Format};
use crate::error::validation;
use crate::{CliError, Outcome};

const MAX_LIMIT: u64 = 1_000_000_000;

fn csv(records: &[CarmichaelRecord]) -> String {
    let join = |v: Vec<String>| v.join(";");
    let mut s = String::from("n,factors,memberships,ambiguous\n");
    for r in records {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            join(r.factors.iter().map(u64::to_string).collect()),
            join(r.memberships.iter().map(bool::to_string).collect()),
            join(r.ambiguous.iter().map(u64::to_string).collect())
        ));
    }
    s
}

pub fn run(args: &CarmichaelArgs, fmt: Format) -> Result<Outcome, CliError> {
    if args.limit > MAX_LIMIT {
        return Err(validation(format!("limit must not exceed {MAX_LIMIT}, got {}", args.limit)));
    }
    let (records, ambiguous) = match args.c {
        Some(c) => {
            let params = SequenceParams::new(args.alpha, args.beta, c)?;
            let out = gps_carmichael_search(args.limit, &params)?;
            let ambiguous = out.undecided.iter().flat_map(|r| r.ambiguous.iter().copied()).collect();
            let mut all = out.hits;
            all.extend(out.undecided);
            all.sort_by_key(|r| r.n);
            (all, ambiguous)
        }
        None => {
            let records = enumerate_carmichael(args.limit)?
                .into_iter()
                .map(|n| {
                    let factors: Vec<u64> = factorize(n)?.into_iter().map(|(p, _)| p).collect();
                    let memberships = vec![true; factors.len()];
                    Ok(CarmichaelRecord { n, factors, memberships, ambiguous: Vec::new() })
                })
                .collect::<Result<Vec<_>, gpsprimes::Error>>()?;
            (records, Vec::new())
        }
    };
    let body = match fmt {
        Format::Json => to_json(&records)?,
        Format::Csv => csv(&records),
    };
    Ok(Outcome { body, ambiguous })
}
