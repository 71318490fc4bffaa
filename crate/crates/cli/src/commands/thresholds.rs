use gpsprimes::asymptotics::admissible_gamma_threshold_exact;
use gpsprimes::carmichael::{
    b_ceiling, carmichael_count_exponent, gamma_threshold_for_e, gamma_threshold_for_e_exact, CarmichaelParams,
};
use num_rational::Ratio;
use serde::Serialize;

use super::{real, to_json};
use crate::args::{Format, ThresholdArgs};
use crate::error::validation;
use crate::{CliError, Outcome};

/// Published rational threshold at `E = 0.7039`.
pub const PAPER_FRACTION: (i64, i64) = (18746, 19137);

#[derive(Debug, Serialize)]
pub struct ThresholdReport {
    pub admissible_gamma: String,
    pub admissible_gamma_value: f64,
    pub theorem_c_bound: String,
    pub lemma_gamma_threshold: String,
    pub lemma_c_bound: String,
    pub e: f64,
    pub gamma_threshold: f64,
    pub c_threshold: f64,
    pub paper_fraction: String,
    pub paper_fraction_value: f64,
    pub paper_fraction_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_exponent: Option<f64>,
}

fn ratio_string(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn value(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn report(args: &ThresholdArgs) -> Result<ThresholdReport, CliError> {
    let admissible = admissible_gamma_threshold_exact();
    let lemma = gamma_threshold_for_e_exact(Ratio::from_integer(1))?;
    let gamma_threshold = gamma_threshold_for_e(args.e)?;
    let paper = Ratio::new(PAPER_FRACTION.0, PAPER_FRACTION.1);
    let count_exponent = match (args.b, args.b1) {
        (Some(b), Some(b1)) => {
            let gamma = args.gamma.ok_or_else(|| validation("--gamma is required with --B and --B1"))?;
            let cp = CarmichaelParams::new(args.e, b, b1, gamma).map_err(|e| {
                validation(format!("{e}; admissible B lies below {}", b_ceiling(gamma)))
            })?;
            Some(carmichael_count_exponent(&cp))
        }
        (None, None) => None,
        _ => return Err(validation("--B and --B1 must be given together")),
    };
    Ok(ThresholdReport {
        admissible_gamma: ratio_string(admissible),
        admissible_gamma_value: value(admissible),
        theorem_c_bound: ratio_string(admissible.recip()),
        lemma_gamma_threshold: ratio_string(lemma),
        lemma_c_bound: ratio_string(lemma.recip()),
        e: args.e,
        gamma_threshold,
        c_threshold: 1.0 / gamma_threshold,
        paper_fraction: ratio_string(paper),
        paper_fraction_value: value(paper),
        paper_fraction_gap: value(paper) - gamma_threshold,
        count_exponent,
    })
}

pub fn run(args: &ThresholdArgs, fmt: Format) -> Result<Outcome, CliError> {
    let r = report(args)?;
    let body = match fmt {
        Format::Json => to_json(&r)?,
        Format::Csv => {
            let mut s = String::from("key,value\n");
            let rows = [
                ("admissible_gamma", r.admissible_gamma.clone()),
                ("theorem_c_bound", r.theorem_c_bound.clone()),
                ("lemma_gamma_threshold", r.lemma_gamma_threshold.clone()),
                ("lemma_c_bound", r.lemma_c_bound.clone()),
                ("e", real(r.e)),
                ("gamma_threshold", real(r.gamma_threshold)),
                ("c_threshold", real(r.c_threshold)),
                ("paper_fraction", r.paper_fraction.clone()),
                ("paper_fraction_gap", real(r.paper_fraction_gap)),
            ];
            for (k, v) in rows {
                s.push_str(&format!("{k},{v}\n"));
            }
            if let Some(x) = r.count_exponent {
                s.push_str(&format!("count_exponent,{}\n", real(x)));
            }
            s
        }
    };
    Ok(Outcome::new(body))
}
