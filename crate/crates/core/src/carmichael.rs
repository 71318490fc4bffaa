//! Carmichael numbers: Korselt's criterion, sieved enumeration, searches
//! restricted to sequence primes, smooth shifted primes and the exponent algebra.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, ArithmeticTables};
use crate::error::{invalid, Error, Result};
use crate::sequence::{is_member, SequenceParams};

/// Largest `limit` accepted by [`enumerate_carmichael`].
pub const ENUMERATION_LIMIT: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 18;

fn factors_of(n: u64, tables: Option<&ArithmeticTables>) -> Result<Vec<(u64, u32)>> {
    match tables {
        Some(t) if t.has_factors() && t.covers(n) => t.factorize(n),
        _ => factorize(n),
    }
}

/// Korselt: `n` composite, squarefree, and `p - 1 | n - 1` for every `p | n`.
pub fn korselt_test(n: u64, tables: Option<&ArithmeticTables>) -> Result<bool> {
    if n < 2 {
        return Err(Error::ZeroArgument);
    }
    let f = factors_of(n, tables)?;
    if f.len() < 2 || f.iter().any(|&(_, e)| e > 1) {
        return Ok(false);
    }
    Ok(f.iter().all(|&(p, _)| (n - 1) % (p - 1) == 0))
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            for m in (i * i..=n).step_by(i) {
                composite[m] = true;
            }
        }
    }
    out
}

/// Korselt sieve over the odd numbers in `[lo, hi)`.
fn sieve_segment(lo: u64, hi: u64, primes: &[u64]) -> Vec<u64> {
    let len = (hi - lo) as usize;
    let mut residual: Vec<u64> = (lo..hi).collect();
    let mut alive = vec![true; len];
    let mut count = vec![0u8; len];
    for &p in primes.iter().skip(1) {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        // odd multiples only
        let first = if first % 2 == 0 { first + p } else { first };
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            if alive[i] {
                if (m / p) % p == 0 || (m - 1) % (p - 1) != 0 {
                    alive[i] = false;
                } else {
                    residual[i] /= p;
                    count[i] += 1;
                }
            }
            m += 2 * p;
        }
    }
    let mut out = Vec::new();
    for i in 0..len {
        let n = lo + i as u64;
        if n % 2 == 0 || n < 3 || !alive[i] {
            continue;
        }
        let mut k = count[i];
        let r = residual[i];
        if r > 1 {
            if (n - 1) % (r - 1) != 0 {
                continue;
            }
            k += 1;
        }
        if k >= 2 {
            out.push(n);
        }
    }
    out
}

/// All Carmichael numbers `<= limit`, ascending.
pub fn enumerate_carmichael(limit: u64) -> Result<Vec<u64>> {
    if limit > ENUMERATION_LIMIT {
        return Err(invalid(format!("limit {limit} exceeds {ENUMERATION_LIMIT}")));
    }
    if limit < 561 {
        return Ok(Vec::new());
    }
    let primes = small_primes((limit as f64).sqrt() as u64 + 1);
    let end = limit + 1;
    let segments: Vec<(u64, u64)> = (0..end).step_by(SEGMENT as usize).map(|s| (s, (s + SEGMENT).min(end))).collect();
    let parts: Vec<Vec<u64>> = segments.par_iter().map(|&(lo, hi)| sieve_segment(lo, hi, &primes)).collect();
    Ok(parts.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarmichaelRecord {
    pub n: u64,
    pub factors: Vec<u64>,
    pub memberships: Vec<bool>,
    pub ambiguous: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SearchOutcome {
    /// Every prime factor is a confirmed member.
    pub hits: Vec<CarmichaelRecord>,
    /// No factor is a confirmed non-member but some membership could not be decided.
    pub undecided: Vec<CarmichaelRecord>,
}

/// Carmichael numbers `<= limit` built only from primes in the sequence.
pub fn gps_carmichael_search(limit: u64, params: &SequenceParams) -> Result<SearchOutcome> {
    let all = enumerate_carmichael(limit)?;
    let records: Vec<Result<Option<CarmichaelRecord>>> = all
        .par_iter()
        .map(|&n| {
            let factors: Vec<u64> = factorize(n)?.into_iter().map(|(p, _)| p).collect();
            let mut memberships = Vec::with_capacity(factors.len());
            let mut ambiguous = Vec::new();
            for &p in &factors {
                match is_member(p, params) {
                    Ok(m) => memberships.push(m),
                    Err(Error::Ambiguous { .. }) => {
                        memberships.push(false);
                        ambiguous.push(p);
                    }
                    Err(e) => return Err(e),
                }
            }
            let rejected = factors.iter().zip(&memberships).any(|(p, m)| !m && !ambiguous.contains(p));
            Ok((!rejected).then_some(CarmichaelRecord { n, factors, memberships, ambiguous }))
        })
        .collect();
    let mut out = SearchOutcome::default();
    for r in records {
        if let Some(rec) = r? {
            if rec.ambiguous.is_empty() {
                out.hits.push(rec);
            } else {
                out.undecided.push(rec);
            }
        }
    }
    Ok(out)
}

fn largest_prime_factor(n: u64, tables: &ArithmeticTables) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    Ok(factors_of(n, Some(tables))?.last().map(|&(p, _)| p).unwrap_or(1))
}

/// `#{p <= x : P^+(p - 1) <= y}`, where `P^+(1) = 1`.
pub fn smooth_shifted_prime_count(x: f64, y: f64, tables: &ArithmeticTables) -> Result<u64> {
    if !(y >= 2.0 && x >= 2.0) {
        return Err(invalid(format!("need x >= 2 and y >= 2, got x = {x}, y = {y}")));
    }
    let xi = x.floor() as u64;
    tables.require_prefix(xi)?;
    let yi = y.floor() as u64;
    let blocks = tables.blocks(1, xi, 1 << 16);
    let counts: Vec<Result<u64>> = blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut c = 0;
            for p in tables.primes_between(a, b) {
                if largest_prime_factor(p - 1, tables)? <= yi {
                    c += 1;
                }
            }
            Ok(c)
        })
        .collect();
    counts.into_iter().sum()
}

/// Parameters of the Carmichael counting lemma: `0 < B1 < B < -11/26 + 6 gamma / 13`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarmichaelParams {
    e: f64,
    b: f64,
    b1: f64,
    gamma: f64,
}

/// `-11/26 + 6 gamma / 13`.
pub fn b_ceiling(gamma: f64) -> f64 {
    -11.0 / 26.0 + 6.0 * gamma / 13.0
}

impl CarmichaelParams {
    pub fn new(e: f64, b: f64, b1: f64, gamma: f64) -> Result<Self> {
        if !(e > 0.0 && e < 1.0) {
            return Err(invalid(format!("E must lie in (0, 1), got {e}")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(invalid(format!("gamma must lie in (0, 1], got {gamma}")));
        }
        let ceiling = b_ceiling(gamma);
        if !(b1 > 0.0 && b1 < b && b < ceiling) {
            return Err(invalid(format!("need 0 < B1 < B < {ceiling}, got B1 = {b1}, B = {b}")));
        }
        Ok(Self { e, b, b1, gamma })
    }

    pub fn e(&self) -> f64 {
        self.e
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn b1(&self) -> f64 {
        self.b1
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `E B + (1 - B + B1)(gamma - 1)` without any admissibility check.
pub fn lemma_exponent(e: f64, b: f64, b1: f64, gamma: f64) -> f64 {
    e * b + (1.0 - b + b1) * (gamma - 1.0)
}

/// Exponent of the Carmichael count, `epsilon` excluded.
pub fn carmichael_count_exponent(cp: &CarmichaelParams) -> f64 {
    lemma_exponent(cp.e, cp.b, cp.b1, cp.gamma)
}

/// `(26 + 11E) / (26 + 12E)`, the `gamma` at which the limiting exponent vanishes.
pub fn gamma_threshold_for_e(e: f64) -> Result<f64> {
    if !(e > 0.0 && e <= 1.0) {
        return Err(invalid(format!("E must lie in (0, 1], got {e}")));
    }
    Ok((26.0 + 11.0 * e) / (26.0 + 12.0 * e))
}

pub fn gamma_threshold_for_e_exact(e: Ratio<i64>) -> Result<Ratio<i64>> {
    if !(e > Ratio::from_integer(0) && e <= Ratio::from_integer(1)) {
        return Err(invalid(format!("E must lie in (0, 1], got {e}")));
    }
    Ok((Ratio::from_integer(26) + e * 11) / (Ratio::from_integer(26) + e * 12))
}

/// Exponent with `B = B1` pushed to the ceiling: `E (-11/26 + 6 gamma / 13) + gamma - 1`.
pub fn boundary_exponent_exact(e: Ratio<i64>, gamma: Ratio<i64>) -> Ratio<i64> {
    let ceiling = Ratio::new(-11, 26) + gamma * Ratio::new(6, 13);
    e * ceiling + gamma - Ratio::from_integer(1)
}
