#![allow(dead_code)]

/// Brute-force membership: is `m = floor(alpha n^c + beta)` for some `n >= 1`?
/// Returns `None` when a candidate lands within `1e-9` of an integer.
pub fn member_by_enumeration(m: u64, alpha: f64, beta: f64, c: f64) -> Option<bool> {
    let guess = ((m as f64 - beta).max(0.0) / alpha).powf(1.0 / c).floor() as i64;
    let mut found = false;
    for n in (guess - 2).max(1)..=guess + 2 {
        let v = alpha * (n as f64).powf(c) + beta;
        if v != v.round() && (v - v.round()).abs() < 1e-9 {
            return None;
        }
        if v.floor() as i64 == m as i64 {
            found = true;
        }
    }
    Some(found)
}

pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn naive_von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while n % p != 0 {
        p += 1;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}
