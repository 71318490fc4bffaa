//! Double-double helpers for reducing `theta n^gamma + xi n` modulo 1.

use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

// ln 2 split into a double-double
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    pub fn from_f64(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let p = two_prod(self.hi, b);
        quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q = self.hi / b;
        let p = two_prod(q, b);
        let r = ((self.hi - p.hi) - p.lo + self.lo) / b;
        quick_two_sum(q, r)
    }

    fn scale_pow2(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }
}

pub(crate) fn exp(x: Dd) -> Dd {
    let k = (x.hi / LN_2).round();
    let ln2 = Dd { hi: LN_2, lo: LN2_LO };
    let r = x.add(ln2.mul_f64(-k));
    // exp(r) = exp(r / 512)^512
    let r = r.scale_pow2(-9);
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    for i in 1..=12 {
        term = term.mul(r).div_f64(i as f64);
        sum = sum.add(term);
    }
    for _ in 0..9 {
        sum = sum.mul(sum);
    }
    sum.scale_pow2(k as i32)
}

/// `ln n` refined by one Newton step on `exp(y) = n`.
pub(crate) fn ln(n: f64) -> Dd {
    let y = Dd::from_f64(n.ln());
    let e = exp(Dd { hi: -y.hi, lo: -y.lo });
    let corr = e.mul_f64(n).add(Dd::from_f64(-1.0));
    y.add(corr)
}

/// `n^gamma` in double-double.
pub(crate) fn pow(n: u64, gamma: f64) -> Dd {
    exp(ln(n as f64).mul_f64(gamma))
}

/// Fractional part of a double-double, in `[-1/2, 1/2)` up to rounding.
pub(crate) fn centered_frac(v: Dd) -> f64 {
    let h = v.hi - v.hi.round();
    let t = h + v.lo;
    t - t.round()
}
