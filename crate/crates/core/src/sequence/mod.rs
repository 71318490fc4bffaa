//! Generalized Piatetski-Shapiro sequences `floor(alpha n^c + beta)`:
//! membership, preimage counts and prime counts in residue classes.
//!
//! The number of `n >= 1` with `floor(alpha n^c + beta) = m` equals
//! `ceil(theta (m+1-beta)^gamma) - ceil(theta (m-beta)^gamma)` whenever
//! `m - beta > 0`, with `gamma = 1/c` and `theta = alpha^-gamma`.

mod precise;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ArithmeticTables;
use crate::error::{invalid, Error, Result};
use crate::sum::NeumaierSum;

pub(crate) use precise::{floor_forward, inverse_point};

/// Exponent window `c < 12/11` in which the counting theorem applies.
pub const THEOREM_C_BOUND: f64 = 12.0 / 11.0;

const BLOCK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceParams {
    alpha: f64,
    beta: f64,
    c: f64,
    gamma: f64,
    theta: f64,
    theorem_mode: bool,
}

impl SequenceParams {
    /// Raw mode: any `alpha > 0` and `c > 1`.
    pub fn new(alpha: f64, beta: f64, c: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(invalid(format!("alpha must be positive and finite, got {alpha}")));
        }
        if !beta.is_finite() {
            return Err(invalid(format!("beta must be finite, got {beta}")));
        }
        if !(c.is_finite() && c > 1.0) {
            return Err(invalid(format!("c must exceed 1, got {c}")));
        }
        let gamma = 1.0 / c;
        Ok(Self { alpha, beta, c, gamma, theta: alpha.powf(-gamma), theorem_mode: false })
    }

    /// Theorem mode: `alpha >= 1` and `1 < c < 12/11`.
    pub fn theorem(alpha: f64, beta: f64, c: f64) -> Result<Self> {
        let mut p = Self::new(alpha, beta, c)?;
        if alpha < 1.0 {
            return Err(invalid(format!("theorem mode requires alpha >= 1, got {alpha}")));
        }
        if c >= THEOREM_C_BOUND {
            return Err(invalid(format!("theorem mode requires c < 12/11, got {c}")));
        }
        p.theorem_mode = true;
        Ok(p)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn is_theorem_mode(&self) -> bool {
        self.theorem_mode
    }

    pub(crate) fn require_theorem(&self) -> Result<()> {
        if self.theorem_mode {
            Ok(())
        } else {
            Err(invalid("operation requires theorem-mode parameters"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    q: u64,
    a: u64,
}

impl ResidueClass {
    pub fn new(q: u64, a: u64) -> Result<Self> {
        if q == 0 {
            return Err(invalid("modulus q must be at least 1"));
        }
        if a >= q {
            return Err(invalid(format!("residue a = {a} must be below q = {q}")));
        }
        Ok(Self { q, a })
    }

    /// All integers (`q = 1`).
    pub fn all() -> Self {
        Self { q: 1, a: 0 }
    }

    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn is_coprime(&self) -> bool {
        num_integer::gcd(self.a, self.q) == 1
    }

    pub(crate) fn require_coprime(&self) -> Result<()> {
        if self.is_coprime() {
            Ok(())
        } else {
            Err(Error::NonCoprime { q: self.q, a: self.a })
        }
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n % self.q == self.a
    }
}

/// `#{n >= 1 : floor(alpha n^c + beta) = m}`.
pub fn preimage_count(m: u64, params: &SequenceParams) -> Result<u64> {
    if m == 0 {
        return Err(invalid("preimage_count needs m >= 1"));
    }
    if (m as f64) <= params.beta + 1.0 {
        // the inverse-power formula needs m - beta > 0; walk n upward instead
        let mut count = 0;
        for n in 1u64.. {
            let f = floor_forward(n, params)?;
            if f > m as i64 {
                break;
            }
            if f == m as i64 {
                count += 1;
            }
        }
        return Ok(count);
    }
    let (lo, _) = inverse_point(m as i64, params)?;
    let (hi, _) = inverse_point(m as i64 + 1, params)?;
    Ok((hi - lo).max(0) as u64)
}

pub fn is_member(m: u64, params: &SequenceParams) -> Result<bool> {
    Ok(preimage_count(m, params)? >= 1)
}

/// `floor(alpha n^c + beta)` for `n >= 1`.
pub fn sequence_value(n: u64, params: &SequenceParams) -> Result<i64> {
    if n == 0 {
        return Err(invalid("sequence index starts at 1"));
    }
    floor_forward(n, params)
}

/// `psi(-theta (m+1-beta)^gamma) - psi(-theta (m-beta)^gamma)`, with both
/// ceilings decided exactly so the value equals `count - (v - u)`.
pub fn sawtooth_difference(m: u64, params: &SequenceParams) -> Result<f64> {
    let (cu, u) = inverse_point(m as i64, params)?;
    let (cv, v) = inverse_point(m as i64 + 1, params)?;
    let t = m as f64 - params.beta;
    let delta = if t > 0.0 {
        u * (params.gamma * (1.0 / t).ln_1p()).exp_m1()
    } else {
        v - u
    };
    Ok((cv - cu) as f64 - delta)
}

pub(crate) fn floor_x(x: f64) -> Result<u64> {
    if !(x.is_finite() && x >= 2.0) {
        return Err(invalid(format!("x must be finite and at least 2, got {x}")));
    }
    Ok(x.floor() as u64)
}

/// Word-aligned prime blocks covering `(1, x]`, checked against the table.
pub(crate) fn prime_blocks(x: f64, tables: &ArithmeticTables) -> Result<(u64, Vec<(u64, u64)>)> {
    let xi = floor_x(x)?;
    tables.require_prefix(xi)?;
    Ok((xi, tables.blocks(1, xi, BLOCK)))
}

/// `pi(x; q, a)`.
pub fn pi_ap(x: f64, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<u64> {
    let (_, blocks) = prime_blocks(x, tables)?;
    Ok(blocks
        .par_iter()
        .map(|&(a, b)| tables.primes_between(a, b).filter(|&p| rc.contains(p)).count() as u64)
        .sum())
}

/// `theta(x; q, a) = sum log p`.
pub fn theta_ap(x: f64, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<f64> {
    let (_, blocks) = prime_blocks(x, tables)?;
    let parts: Vec<NeumaierSum> = blocks
        .par_iter()
        .map(|&(a, b)| tables.primes_between(a, b).filter(|&p| rc.contains(p)).map(|p| (p as f64).ln()).collect())
        .collect();
    Ok(crate::sum::merge_in_order(&parts))
}

/// Member-prime tally; primes whose membership could not be decided are
/// listed in `ambiguous` and excluded from `count`/`theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GpsCount {
    pub count: u64,
    pub theta: f64,
    pub ambiguous: Vec<u64>,
}

#[derive(Default)]
struct Partial {
    count: u64,
    theta: NeumaierSum,
    ambiguous: Vec<u64>,
}

/// Counts and log-weights of primes `p <= x`, `p = a (mod q)`, lying in the sequence.
pub fn gps_count(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<GpsCount> {
    let (_, blocks) = prime_blocks(x, tables)?;
    let parts: Vec<Result<Partial>> = blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut acc = Partial::default();
            for p in tables.primes_between(a, b).filter(|&p| rc.contains(p)) {
                match is_member(p, params) {
                    Ok(true) => {
                        acc.count += 1;
                        acc.theta.add((p as f64).ln());
                    }
                    Ok(false) => {}
                    Err(Error::Ambiguous { .. }) => acc.ambiguous.push(p),
                    Err(e) => return Err(e),
                }
            }
            Ok(acc)
        })
        .collect();
    let mut out = GpsCount { count: 0, theta: 0.0, ambiguous: Vec::new() };
    let mut theta = NeumaierSum::new();
    for part in parts {
        let part = part?;
        out.count += part.count;
        theta.merge(&part.theta);
        out.ambiguous.extend(part.ambiguous);
    }
    out.theta = theta.value();
    Ok(out)
}

/// `pi_{alpha,beta,c}(x; q, a)`; ambiguous primes are not counted (see [`gps_count`]).
pub fn pi_gps(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<GpsCount> {
    gps_count(x, params, rc, tables)
}

/// `theta_{alpha,beta,c}(x; q, a)`, returned in the `theta` field.
pub fn theta_gps(x: f64, params: &SequenceParams, rc: &ResidueClass, tables: &ArithmeticTables) -> Result<GpsCount> {
    gps_count(x, params, rc, tables)
}
