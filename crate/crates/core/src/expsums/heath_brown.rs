//! Heath-Brown's identity for `Lambda(n)`, evaluated by enumerating ordered factorizations.

use crate::arith::{factorize, ArithmeticTables};
use crate::error::{invalid, Result};
use crate::sum::NeumaierSum;

/// One ordered factorization `n = n_1 ... n_{2j}` with `n_{j+1}, ..., n_{2j} <= z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbTerm {
    pub j: u32,
    pub sign: i8,
    pub binomial: u64,
    pub factors: Vec<u64>,
}

impl HbTerm {
    /// `sign * C(k, j) * log n_1 * mu(n_{j+1}) ... mu(n_{2j})`.
    fn contribution(&self, mu: &[i8]) -> f64 {
        let j = self.j as usize;
        let m: i64 = self.factors[j..].iter().map(|&d| mu[d as usize] as i64).product();
        self.sign as f64 * self.binomial as f64 * m as f64 * (self.factors[0] as f64).ln()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HbDecomposition {
    pub n: u64,
    pub k_order: u32,
    pub z: u64,
    pub terms: Vec<HbTerm>,
    mu: Vec<i8>,
}

impl HbDecomposition {
    pub fn value(&self) -> f64 {
        self.terms.iter().map(|t| t.contribution(&self.mu)).collect::<NeumaierSum>().value()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn check(n: u64, k_order: u32, z: u64) -> Result<()> {
    if n == 0 || k_order == 0 || z == 0 {
        return Err(invalid("n, k and z must be positive"));
    }
    let limit = (z as f64).powi(k_order as i32) * 2.0;
    if n as f64 > limit {
        return Err(invalid(format!("identity needs n <= 2 z^k, got n = {n}, z = {z}, k = {k_order}")));
    }
    Ok(())
}

fn mobius_table(z: u64, tables: &ArithmeticTables) -> Result<Vec<i8>> {
    let mut mu = vec![0i8; z as usize + 1];
    for (d, slot) in mu.iter_mut().enumerate().skip(1) {
        let d = d as u64;
        *slot = if tables.has_factors() && tables.covers(d) { tables.mobius(d)? } else { crate::arith::mobius(d)? };
    }
    Ok(mu)
}

fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let base = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..base {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

struct Walker<'a> {
    divs: &'a [u64],
    mu: &'a [i8],
    z: u64,
}

impl Walker<'_> {
    /// Fills `slots` from the back: the constrained positions first, then the
    /// free ones, leaving position 0 for the cofactor.
    fn walk(&self, rest: u64, pos: usize, j: usize, slots: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
        if pos == 0 {
            slots[0] = rest;
            emit(slots);
            return;
        }
        let constrained = pos >= j;
        for &d in self.divs {
            if d > rest {
                break;
            }
            if rest % d != 0 || (constrained && (d > self.z || self.mu[d as usize] == 0)) {
                continue;
            }
            slots[pos] = d;
            self.walk(rest / d, pos - 1, j, slots, emit);
        }
    }
}

/// Lists every ordered factorization with a nonzero contribution.
pub fn hb_decompose(n: u64, k_order: u32, z: u64, tables: &ArithmeticTables) -> Result<HbDecomposition> {
    check(n, k_order, z)?;
    let mu = mobius_table(z, tables)?;
    let divs = divisors(n)?;
    let walker = Walker { divs: &divs, mu: &mu, z };
    let mut terms = Vec::new();
    for j in 1..=k_order as usize {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let binom = binomial(k_order as u64, j as u64);
        let mut slots = vec![0u64; 2 * j];
        walker.walk(n, 2 * j - 1, j, &mut slots, &mut |f| {
            if f[0] > 1 {
                terms.push(HbTerm { j: j as u32, sign, binomial: binom, factors: f.to_vec() });
            }
        });
    }
    Ok(HbDecomposition { n, k_order, z, terms, mu })
}

/// Right-hand side of Heath-Brown's identity at `n`; equals `Lambda(n)` when `n <= 2 z^k`.
pub fn hb_lambda(n: u64, k_order: u32, z: u64, tables: &ArithmeticTables) -> Result<f64> {
    check(n, k_order, z)?;
    let mu = mobius_table(z, tables)?;
    let divs = divisors(n)?;
    let walker = Walker { divs: &divs, mu: &mu, z };
    let mut acc = NeumaierSum::new();
    for j in 1..=k_order as usize {
        let weight = binomial(k_order as u64, j as u64) as f64 * if j % 2 == 1 { 1.0 } else { -1.0 };
        let mut slots = vec![0u64; 2 * j];
        walker.walk(n, 2 * j - 1, j, &mut slots, &mut |f| {
            if f[0] > 1 {
                let m: i64 = f[j..].iter().map(|&d| mu[d as usize] as i64).product();
                acc.add(weight * m as f64 * (f[0] as f64).ln());
            }
        });
    }
    Ok(acc.value())
}
