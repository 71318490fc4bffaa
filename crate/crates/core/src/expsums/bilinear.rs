//! Type I / Type II bilinear sums and the Weyl shift inequality.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::phase::reduced_phase;
use crate::error::{invalid, Result};
use crate::harmonic::e;
use crate::sum::{ComplexSum, NeumaierSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    Unit,
    Log,
    Bounded,
}

/// Coefficients over `K < k <= 2K`, stored from `k = K + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    kind: CoefficientKind,
    values: Vec<f64>,
}

impl Coefficients {
    pub fn unit(len: u64) -> Self {
        Self { kind: CoefficientKind::Unit, values: vec![1.0; len as usize] }
    }

    /// `log k` for `start < k <= start + len`.
    pub fn log(start: u64, len: u64) -> Self {
        let values = (start + 1..=start + len).map(|k| (k as f64).ln()).collect();
        Self { kind: CoefficientKind::Log, values }
    }

    /// `mu(k)` for `start < k <= start + len`.
    pub fn mobius(start: u64, len: u64) -> Result<Self> {
        let values = (start + 1..=start + len)
            .map(|k| crate::arith::mobius(k).map(f64::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind: CoefficientKind::Bounded, values })
    }

    pub fn bounded(values: Vec<f64>) -> Self {
        Self { kind: CoefficientKind::Bounded, values }
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `sum_{k~K} sum_{l~L} a_k b_l e(phase(k l))` summed in `|.|` over `0 < |h| <= H`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearSumSpec {
    k: u64,
    l: u64,
    h: u64,
    q: u64,
    a: Coefficients,
    b: Coefficients,
}

impl BilinearSumSpec {
    /// `q` is the Weyl shift budget; it must satisfy `1 <= q < l`.
    pub fn new(k: u64, l: u64, h: u64, q: u64, a: Coefficients, b: Coefficients) -> Result<Self> {
        if k == 0 || l == 0 || h == 0 {
            return Err(invalid("K, L and H must be positive"));
        }
        if a.len() as u64 != k || b.len() as u64 != l {
            return Err(invalid("coefficient families must have lengths K and L"));
        }
        if q == 0 || q >= l {
            return Err(invalid(format!("shift budget Q = {q} must satisfy 1 <= Q < L = {l}")));
        }
        Ok(Self { k, l, h, q, a, b })
    }

    /// Unit coefficients on both sides.
    pub fn unit(k: u64, l: u64, h: u64, q: u64) -> Result<Self> {
        Self::new(k, l, h, q, Coefficients::unit(k), Coefficients::unit(l))
    }

    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn l(&self) -> u64 {
        self.l
    }
    pub fn h(&self) -> u64 {
        self.h
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn a(&self) -> &Coefficients {
        &self.a
    }
    pub fn b(&self) -> &Coefficients {
        &self.b
    }
}

/// Phase `theta h t^gamma + xi t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearPhase {
    pub theta: f64,
    pub gamma: f64,
    pub xi: f64,
}

impl BilinearPhase {
    pub fn new(theta: f64, gamma: f64, xi: f64) -> Result<Self> {
        if !(theta.is_finite() && xi.is_finite() && gamma > 0.0 && gamma < 1.0) {
            return Err(invalid("bilinear phase needs finite theta, xi and gamma in (0, 1)"));
        }
        Ok(Self { theta, gamma, xi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumEstimate {
    pub value: f64,
    pub lemma_bound: f64,
}

impl SumEstimate {
    pub fn ratio(&self) -> f64 {
        self.value / self.lemma_bound
    }
}

fn inner(spec: &BilinearSumSpec, phase: &BilinearPhase, h: i64) -> Complex64 {
    let theta = phase.theta * h as f64;
    let rows: Vec<ComplexSum> = (0..spec.k)
        .into_par_iter()
        .map(|i| {
            let k = spec.k + 1 + i;
            let ak = spec.a.values[i as usize];
            let mut row = ComplexSum::new();
            if ak != 0.0 {
                for (j, bl) in spec.b.values.iter().enumerate() {
                    if *bl != 0.0 {
                        let n = k * (spec.l + 1 + j as u64);
                        row.add(ak * bl * e(reduced_phase(theta, phase.gamma, phase.xi, n)));
                    }
                }
            }
            row
        })
        .collect();
    let mut total = ComplexSum::new();
    for r in &rows {
        total.merge(r);
    }
    total.value()
}

/// `sum_{0<|h|<=H} |sum_k sum_l a_k b_l e(theta h (k l)^gamma + xi k l)|`.
pub fn bilinear_value(spec: &BilinearSumSpec, phase: &BilinearPhase) -> f64 {
    let hs: Vec<i64> = (1..=spec.h as i64).flat_map(|h| [h, -h]).collect();
    hs.iter().map(|&h| inner(spec, phase, h).norm()).collect::<NeumaierSum>().value()
}

pub fn type_i_bound(x: f64, h: f64, gamma: f64) -> f64 {
    h.powf(7.0 / 6.0) * x.powf(gamma / 6.0 + 0.75) + h.powf(2.0 / 3.0) * x.powf(1.0 - gamma / 3.0)
}

pub fn type_ii_bound(x: f64, h: f64, gamma: f64) -> f64 {
    h.powf(1.25) * x.powf(gamma / 4.0 + 0.625)
        + h.powf(0.75) * x.powf(1.0 - gamma / 4.0)
        + h * x.powf(22.0 / 25.0)
        + h.powf(7.0 / 6.0) * x.powf(gamma / 6.0 + 0.75)
}

fn check_product(spec: &BilinearSumSpec, x: f64) -> Result<()> {
    let kl = spec.k as f64 * spec.l as f64;
    if !(x > 1.0 && kl >= x / 4.0 && kl <= 4.0 * x) {
        return Err(invalid(format!("KL = {kl} is not within a factor 4 of x = {x}")));
    }
    Ok(())
}

pub fn type_i_sum(spec: &BilinearSumSpec, x: f64, phase: &BilinearPhase) -> Result<SumEstimate> {
    check_product(spec, x)?;
    if spec.b.kind == CoefficientKind::Bounded {
        return Err(invalid("Type I sums need unit or log coefficients b_l"));
    }
    if spec.k as f64 > x.sqrt() {
        return Err(invalid(format!("Type I needs K <= x^(1/2), got K = {}", spec.k)));
    }
    Ok(SumEstimate {
        value: bilinear_value(spec, phase),
        lemma_bound: type_i_bound(x, spec.h as f64, phase.gamma),
    })
}

pub fn type_ii_sum(spec: &BilinearSumSpec, x: f64, phase: &BilinearPhase) -> Result<SumEstimate> {
    check_product(spec, x)?;
    let k = spec.k as f64;
    if k < x.sqrt() || k > x.powf(19.0 / 25.0) {
        return Err(invalid(format!("Type II needs x^(1/2) <= K <= x^(19/25), got K = {}", spec.k)));
    }
    Ok(SumEstimate {
        value: bilinear_value(spec, phase),
        lemma_bound: type_ii_bound(x, spec.h as f64, phase.gamma),
    })
}

/// Squared inner sum for a single `h` against the shifted majorant
/// `K^2 L^2 / Q + (K L / Q) sum_l sum_{0<|q|<=Q} |S(q; l)|`.
pub fn weyl_van_der_corput_check(spec: &BilinearSumSpec, phase: &BilinearPhase, h: i64) -> Result<(f64, f64)> {
    if h == 0 {
        return Err(invalid("h must be nonzero"));
    }
    let lhs = inner(spec, phase, h).norm_sqr();
    let (kk, ll, qq) = (spec.k as f64, spec.l as f64, spec.q as f64);
    let th = phase.theta * h as f64;
    let g = phase.gamma;
    let shifts: Vec<i64> = (1..=spec.q as i64).flat_map(|q| [q, -q]).collect();
    let rows: Vec<NeumaierSum> = (spec.l + 1..=2 * spec.l)
        .into_par_iter()
        .map(|l| {
            let lf = l as f64;
            let mut acc = NeumaierSum::new();
            for &q in &shifts {
                // l^g - (l+q)^g without cancellation
                let diff = -lf.powf(g) * (g * (q as f64 / lf).ln_1p()).exp_m1();
                let coeff = th * diff;
                let lin = -phase.xi * q as f64;
                let mut s = ComplexSum::new();
                for k in spec.k + 1..=2 * spec.k {
                    let kf = k as f64;
                    let t = coeff * kf.powf(g) + lin * kf;
                    s.add(e(t - t.round()));
                }
                acc.add(s.value().norm());
            }
            acc
        })
        .collect();
    let mut total = NeumaierSum::new();
    for r in &rows {
        total.merge(r);
    }
    let rhs = kk * kk * ll * ll / qq + kk * ll / qq * total.value();
    Ok((lhs, rhs))
}

/// One row of a bilinear grid report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridRow {
    pub x: f64,
    pub k: u64,
    pub l: u64,
    pub h: u64,
    pub value: f64,
    pub lemma_bound: f64,
    pub ratio: f64,
}

impl GridRow {
    pub fn new(x: f64, spec: &BilinearSumSpec, est: SumEstimate) -> Self {
        Self { x, k: spec.k, l: spec.l, h: spec.h, value: est.value, lemma_bound: est.lemma_bound, ratio: est.ratio() }
    }
}

pub const GRID_CSV_HEADER: &str = "x,K,L,H,value,lemma_bound,ratio";

pub fn grid_to_csv(rows: &[GridRow]) -> String {
    let mut out = String::from(GRID_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            crate::asymptotics::format_real(r.x),
            r.k,
            r.l,
            r.h,
            crate::asymptotics::format_real(r.value),
            crate::asymptotics::format_real(r.lemma_bound),
            crate::asymptotics::format_real(r.ratio)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(spec: &BilinearSumSpec, phase: &BilinearPhase) -> f64 {
        let mut total = 0.0;
        for h in 1..=spec.h as i64 {
            for s in [h, -h] {
                let mut z = Complex64::new(0.0, 0.0);
                for (j, bl) in spec.b.values.iter().enumerate() {
                    for (i, ak) in spec.a.values.iter().enumerate() {
                        let n = ((spec.k + 1 + i as u64) * (spec.l + 1 + j as u64)) as f64;
                        let t = phase.theta * s as f64 * n.powf(phase.gamma) + phase.xi * n;
                        z += ak * bl * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t.fract());
                    }
                }
                total += z.norm();
            }
        }
        total
    }

    #[test]
    fn constant_phase_gives_2kl() {
        let ph = BilinearPhase::new(0.0, 0.95, 0.0).unwrap();
        let s = BilinearSumSpec::unit(30, 333, 1, 5).unwrap();
        let est = type_i_sum(&s, 1e4, &ph).unwrap();
        assert!((est.value - 2.0 * 30.0 * 333.0).abs() < 1e-8);
        let s = BilinearSumSpec::unit(200, 50, 1, 5).unwrap();
        let est = type_ii_sum(&s, 1e4, &ph).unwrap();
        assert!((est.value - 2.0 * 200.0 * 50.0).abs() < 1e-8);
    }

    #[test]
    fn shape_gates() {
        let ph = BilinearPhase::new(0.5, 0.95, 0.0).unwrap();
        let s = BilinearSumSpec::unit(200, 50, 1, 5).unwrap();
        assert!(type_i_sum(&s, 1e4, &ph).is_err());
        let s = BilinearSumSpec::unit(30, 333, 1, 5).unwrap();
        assert!(type_ii_sum(&s, 1e4, &ph).is_err());
        let m = Coefficients::mobius(333, 333).unwrap();
        let s = BilinearSumSpec::new(30, 333, 1, 5, Coefficients::unit(30), m).unwrap();
        assert!(type_i_sum(&s, 1e4, &ph).is_err());
        assert!(BilinearSumSpec::unit(10, 10, 1, 10).is_err());
        assert!(BilinearSumSpec::unit(10, 10, 1, 0).is_err());
    }

    #[test]
    fn matches_naive_loop() {
        let ph = BilinearPhase::new(0.93, 1.0 / 1.05, 0.3).unwrap();
        let a = Coefficients::mobius(30, 30).unwrap();
        let s = BilinearSumSpec::new(30, 333, 3, 5, a, Coefficients::log(333, 333)).unwrap();
        let fast = bilinear_value(&s, &ph);
        assert!((fast - naive(&s, &ph)).abs() < 1e-7 * fast.max(1.0));
    }

    #[test]
    fn bound_grows_with_h() {
        assert!(type_ii_bound(1e4, 4.0, 0.95) > type_ii_bound(1e4, 2.0, 0.95));
        assert!(type_i_bound(1e4, 4.0, 0.95) > type_i_bound(1e4, 2.0, 0.95));
    }

    #[test]
    fn weyl_constant_phase() {
        let ph = BilinearPhase::new(0.0, 0.9, 0.0).unwrap();
        let s = BilinearSumSpec::unit(20, 30, 1, 4).unwrap();
        let (lhs, rhs) = weyl_van_der_corput_check(&s, &ph, 1).unwrap();
        assert!((lhs - 360_000.0).abs() < 1e-6);
        // |S(q; l)| = K for every shift
        let expect = 360_000.0 / 4.0 + 600.0 / 4.0 * (30.0 * 8.0 * 20.0);
        assert!((rhs - expect).abs() < 1e-6 * expect);
    }

    #[test]
    fn csv_header_and_rows() {
        let s = BilinearSumSpec::unit(2, 3, 1, 1).unwrap();
        let row = GridRow::new(6.0, &s, SumEstimate { value: 1.0, lemma_bound: 2.0 });
        let csv = grid_to_csv(&[row]);
        assert!(csv.starts_with("x,K,L,H,value,lemma_bound,ratio\n"));
        assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 7);
    }
}
