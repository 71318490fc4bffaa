//! Classification of six-fold dyadic boxes into Type I / Type II shapes.

use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case")]
pub enum FactorizationCase {
    /// Some `N_j >= x^(1/2)`: `l = n_j`, `k` the rest.
    TypeI { j: usize, k: f64, l: f64 },
    /// Some `x^(6/25) <= N_j < x^(1/2)`: `l = n_j`, `k` the rest.
    TypeIIDirect { j: usize, k: f64, l: f64 },
    /// Every `N_j < x^(6/25)`: after sorting in decreasing order the first `r`
    /// factors form `l`. `order` maps sorted positions to original indices.
    TypeIIGrouped { r: usize, order: [usize; 6], k: f64, l: f64 },
}

/// Indices in the returned data are 1-based, matching `N_1, ..., N_6`.
/// When several `N_j` qualify the smallest index wins.
pub fn classify_factorization(n: [f64; 6], x: f64) -> Result<FactorizationCase> {
    if !(x > 1.0) || n.iter().any(|v| !(*v >= 1.0) || !v.is_finite()) {
        return Err(invalid("ranges must be >= 1 and x > 1"));
    }
    let prod: f64 = n.iter().product();
    if prod < x / 4.0 || prod > 4.0 * x {
        return Err(invalid(format!("N_1 ... N_6 = {prod} is not within a factor 4 of x = {x}")));
    }
    let cap = (2.0 * x).cbrt();
    if n[3..].iter().any(|&v| v > cap) {
        return Err(invalid("N_4, N_5, N_6 must not exceed (2x)^(1/3)"));
    }
    let half = x.sqrt();
    let low = x.powf(6.0 / 25.0);
    let split = |j: usize| (prod / n[j], n[j]);
    if let Some(j) = (0..6).find(|&j| n[j] >= half) {
        let (k, l) = split(j);
        return Ok(FactorizationCase::TypeI { j: j + 1, k, l });
    }
    if let Some(j) = (0..6).find(|&j| n[j] >= low) {
        let (k, l) = split(j);
        return Ok(FactorizationCase::TypeIIDirect { j: j + 1, k, l });
    }
    let mut order = [0usize, 1, 2, 3, 4, 5];
    order.sort_by(|&a, &b| n[b].total_cmp(&n[a]).then(a.cmp(&b)));
    let mut l = 1.0;
    for (pos, &idx) in order.iter().enumerate() {
        l *= n[idx];
        if l >= low {
            return Ok(FactorizationCase::TypeIIGrouped { r: pos + 1, order: order.map(|i| i + 1), k: prod / l, l });
        }
    }
    Err(invalid("product never reaches x^(6/25)"))
}
