//! Segmented sieve of Eratosthenes over a half-open window `(lo, hi]`.
//!
//! The window is cut into fixed-length segments (a multiple of 64 integers) that
//! are sieved independently in parallel and concatenated in order, so the
//! resulting bitmap does not depend on the worker count. Optionally each
//! segment also records the least prime factor of every composite.

use rayon::prelude::*;

use super::factor;
use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 20;

/// Primality bitmap (and optional least-prime-factor table) over `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticTables {
    lo: u64,
    hi: u64,
    // bit i <-> n = lo + 1 + i
    bits: Vec<u64>,
    // 0 marks a prime (its own least factor)
    lpf: Option<Vec<u32>>,
}

/// Sieve `(lo, hi]` with the default segment length.
pub fn build_tables(lo: u64, hi: u64, with_factors: bool) -> Result<ArithmeticTables> {
    build_tables_segmented(lo, hi, with_factors, DEFAULT_SEGMENT_LEN)
}

pub fn build_tables_segmented(
    lo: u64,
    hi: u64,
    with_factors: bool,
    segment_len: u64,
) -> Result<ArithmeticTables> {
    if segment_len == 0 {
        return Err(Error::ZeroSegment);
    }
    if lo < 1 || lo >= hi {
        return Err(Error::RangeOrder { lo, hi });
    }
    let seg = segment_len.div_ceil(64) * 64;
    let base = small_primes(factor::integer_root(hi, 2));
    let total = hi - lo;
    let nseg = total.div_ceil(seg);
    let parts: Vec<(Vec<u64>, Option<Vec<u32>>)> = (0..nseg)
        .into_par_iter()
        .map(|k| {
            let start = lo + 1 + k * seg;
            let end = (start + seg).min(hi + 1);
            sieve_segment(start, end, &base, with_factors)
        })
        .collect();
    let mut bits = Vec::with_capacity(total.div_ceil(64) as usize);
    let mut lpf = with_factors.then(|| Vec::with_capacity(total as usize));
    for (b, l) in parts {
        bits.extend_from_slice(&b);
        if let (Some(all), Some(l)) = (lpf.as_mut(), l) {
            all.extend_from_slice(&l);
        }
    }
    Ok(ArithmeticTables { lo, hi, bits, lpf })
}

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

// Sieves [start, end).
fn sieve_segment(start: u64, end: u64, base: &[u64], with_factors: bool) -> (Vec<u64>, Option<Vec<u32>>) {
    let len = (end - start) as usize;
    let mut prime = vec![true; len];
    let mut lpf = with_factors.then(|| vec![0u32; len]);
    for n in start..end.min(2) {
        prime[(n - start) as usize] = false;
    }
    for &p in base {
        if p * p >= end {
            break;
        }
        let first = (p * p).max(start.div_ceil(p) * p);
        let mut m = first;
        while m < end {
            let i = (m - start) as usize;
            prime[i] = false;
            if let Some(l) = lpf.as_mut() {
                if l[i] == 0 {
                    l[i] = p as u32;
                }
            }
            m += p;
        }
    }
    let mut words = vec![0u64; len.div_ceil(64)];
    for (i, &is_p) in prime.iter().enumerate() {
        if is_p {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    (words, lpf)
}

impl ArithmeticTables {
    /// Rebuild from a raw bitmap (e.g. a cached sieve); the bitmap length is checked.
    pub fn from_bitmap(lo: u64, hi: u64, bits: Vec<u64>) -> Result<Self> {
        if lo < 1 || lo >= hi {
            return Err(Error::RangeOrder { lo, hi });
        }
        if bits.len() as u64 != (hi - lo).div_ceil(64) {
            return Err(crate::error::invalid("bitmap length does not match range"));
        }
        Ok(Self { lo, hi, bits, lpf: None })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn bitmap(&self) -> &[u64] {
        &self.bits
    }

    pub fn has_factors(&self) -> bool {
        self.lpf.is_some()
    }

    pub fn covers(&self, n: u64) -> bool {
        n > self.lo && n <= self.hi
    }

    fn check(&self, n: u64) -> Result<usize> {
        if self.covers(n) {
            Ok((n - self.lo - 1) as usize)
        } else {
            Err(Error::CoverageGap { n, lo: self.lo, hi: self.hi })
        }
    }

    /// Errors unless the table starts at or below 1 and reaches `x`.
    pub fn require_prefix(&self, x: u64) -> Result<()> {
        if self.lo > 1 {
            return Err(Error::CoverageGap { n: 2, lo: self.lo, hi: self.hi });
        }
        if x > self.hi {
            return Err(Error::CoverageGap { n: x, lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    #[inline]
    fn bit(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        let i = self.check(n)?;
        Ok(self.bit(i))
    }

    pub fn least_prime_factor(&self, n: u64) -> Result<u64> {
        let i = self.check(n)?;
        let lpf = self.lpf.as_ref().ok_or(Error::MissingFactors)?;
        Ok(match lpf[i] {
            0 => n,
            p => p as u64,
        })
    }

    /// Factorization through the least-prime-factor table when `n` is covered,
    /// otherwise through Pollard-rho.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if self.lpf.is_none() || !self.covers(n) {
            return factor::factorize(n);
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = if self.covers(m) { self.least_prime_factor(m)? } else { factor::factorize(m)?[0].0 };
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(out)
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(mobius_from(&self.factorize(n)?))
    }

    /// `log p` when `n = p^k`, else 0. Needs only the primality bitmap.
    pub fn von_mangoldt(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        if n == 1 {
            return Ok(0.0);
        }
        if let Some(lpf) = &self.lpf {
            let i = self.check(n)?;
            let p = match lpf[i] {
                0 => return Ok((n as f64).ln()),
                p => p as u64,
            };
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return Ok(if m == 1 { (p as f64).ln() } else { 0.0 });
        }
        if self.is_prime(n)? {
            return Ok((n as f64).ln());
        }
        for k in 2..64 {
            let r = factor::integer_root(n, k);
            if r < 2 {
                break;
            }
            if r.pow(k) == n {
                let prime = if self.covers(r) { self.is_prime(r)? } else { factor::is_prime_u64(r) };
                if prime {
                    return Ok((r as f64).ln());
                }
            }
        }
        Ok(0.0)
    }

    /// Ascending primes in `(lo, hi]`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes_in_words(0, self.bits.len())
    }

    /// Primes in `(a, b]`, clipped to the table.
    pub fn primes_between(&self, a: u64, b: u64) -> impl Iterator<Item = u64> + '_ {
        let a = a.max(self.lo);
        let b = b.min(self.hi);
        let (w0, w1) = if a >= b {
            (0, 0)
        } else {
            let i0 = (a - self.lo) as usize;
            let i1 = (b - self.lo - 1) as usize;
            (i0 / 64, i1 / 64 + 1)
        };
        self.primes_in_words(w0, w1).filter(move |&p| p > a && p <= b)
    }

    fn primes_in_words(&self, w0: usize, w1: usize) -> impl Iterator<Item = u64> + '_ {
        let base = self.lo + 1;
        self.bits[w0..w1].iter().enumerate().flat_map(move |(k, &w)| {
            let off = base + 64 * (w0 + k) as u64;
            BitIter(w).map(move |b| off + b as u64)
        })
    }

    /// Word-aligned blocks of at most `block` integers covering `(a, b]`, for
    /// deterministic parallel reductions over primes.
    pub fn blocks(&self, a: u64, b: u64, block: u64) -> Vec<(u64, u64)> {
        let a = a.max(self.lo);
        let b = b.min(self.hi);
        let block = block.div_ceil(64).max(1) * 64;
        let mut out = Vec::new();
        let mut s = a;
        while s < b {
            let e = (s + block).min(b);
            out.push((s, e));
            s = e;
        }
        out
    }

    pub fn prime_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;
    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let t = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(t)
    }
}

pub(crate) fn mobius_from(f: &[(u64, u32)]) -> i8 {
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
