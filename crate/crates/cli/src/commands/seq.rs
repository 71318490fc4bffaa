use gpsprimes::arith::is_prime_u64;
use gpsprimes::sequence::{preimage_count, SequenceParams};
use gpsprimes::Error;
use rayon::prelude::*;
use serde::Serialize;

use super::to_json;
use crate::args::{Format, SeqArgs};
use crate::error::validation;
use crate::{CliError, Outcome};

const MAX_SPAN: u64 = 100_000_000;

#[derive(Debug, Serialize)]
struct Row {
    m: u64,
    preimages: Option<u64>,
    prime: bool,
    ambiguous: bool,
}

pub fn run(args: &SeqArgs, fmt: Format) -> Result<Outcome, CliError> {
    let s = &args.seq;
    let params = SequenceParams::new(s.alpha, s.beta, s.c)?;
    if args.from == 0 || args.from > args.to {
        return Err(validation(format!("need 1 <= from <= to, got [{}, {}]", args.from, args.to)));
    }
    if args.to - args.from >= MAX_SPAN {
        return Err(validation(format!("range longer than {MAX_SPAN}")));
    }
    let rows: Vec<Result<Option<Row>, CliError>> = (args.from..=args.to)
        .into_par_iter()
        .map(|m| {
            let prime = is_prime_u64(m);
            if args.primes_only && !prime {
                return Ok(None);
            }
            match preimage_count(m, &params) {
                Ok(0) => Ok(None),
                Ok(k) => Ok(Some(Row { m, preimages: Some(k), prime, ambiguous: false })),
                Err(Error::Ambiguous { .. }) => Ok(Some(Row { m, preimages: None, prime, ambiguous: true })),
                Err(e) => Err(e.into()),
            }
        })
        .collect();
    let rows: Vec<Row> = rows.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect();
    let ambiguous = rows.iter().filter(|r| r.ambiguous).map(|r| r.m).collect();
    let body = match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("m,preimages,prime,ambiguous\n");
            for r in &rows {
                let k = r.preimages.map(|k| k.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", r.m, k, r.prime, r.ambiguous));
            }
            s
        }
    };
    Ok(Outcome { body, ambiguous })
}
