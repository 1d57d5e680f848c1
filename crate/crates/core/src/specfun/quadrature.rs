//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! Semi-infinite and infinite ranges are mapped onto finite ones
//! (`x = a + t/(1−t)`, `x = t/(1−t²)`) before subdivision. Subintervals are
//! refined in order of decreasing error estimate; ties keep insertion order, so
//! results are reproducible bit for bit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn relative(tol: f64) -> Self {
        QuadOptions {
            abs_tol: 0.0,
            rel_tol: tol,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn with_budget(mut self, max_evaluations: usize) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// `∫_a^b f(x) dx` to absolute tolerance `tol`. Either bound may be infinite.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with(f, a, b, QuadOptions::absolute(tol))
}

pub fn integrate_with<F>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(opts.abs_tol > 0.0 || opts.rel_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: opts.abs_tol.max(opts.rel_tol),
            reason: "tolerance must be positive",
        });
    }
    if a.is_nan() || b.is_nan() {
        return Err(Error::InvalidParameter {
            name: "bounds",
            value: f64::NAN,
            reason: "integration bounds must not be NaN",
        });
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let r = integrate_with(f, b, a, opts)?;
        return Ok(QuadratureResult { value: -r.value, ..r });
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => adaptive(&f, a, b, opts),
        (true, false) => adaptive(
            &|t: f64| {
                let u = 1.0 - t;
                f(a + t / u) / (u * u)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, true) => adaptive(
            &|t: f64| {
                let u = 1.0 - t;
                f(b - t / u) / (u * u)
            },
            0.0,
            1.0,
            opts,
        ),
        (false, false) => adaptive(
            &|t: f64| {
                let u = 1.0 - t * t;
                f(t / u) * (1.0 + t * t) / (u * u)
            },
            -1.0,
            1.0,
            opts,
        ),
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    order: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.order.cmp(&self.order))
    }
}

fn adaptive<F>(f: &F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let mut evaluations = 0usize;
    let mut order = 0usize;
    let first = gk21(f, a, b);
    evaluations += 21;

    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: first.0,
        error: first.1,
        order,
    });
    let mut total = first.0;
    let mut total_err = first.1;

    loop {
        if total_err <= opts.target(total) {
            break;
        }
        if evaluations + 42 > opts.max_evaluations {
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_estimate: total_err,
                tolerance: opts.target(total),
                evaluations,
            });
        }
        let worst = heap.pop().expect("segment heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution; nothing left to refine.
            return Err(Error::QuadratureNonConvergence {
                estimate: total,
                error_estimate: total_err,
                tolerance: opts.target(total),
                evaluations,
            });
        }
        let left = gk21(f, worst.a, mid);
        let right = gk21(f, mid, worst.b);
        evaluations += 42;

        total += left.0 + right.0 - worst.value;
        total_err += left.1 + right.1 - worst.error;
        order += 1;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: left.0,
            error: left.1,
            order,
        });
        order += 1;
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: right.0,
            error: right.1,
            order,
        });

        // The running sums drift by rounding; resum from the segments now and then.
        if order % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }

    let mut segments = heap.into_vec();
    segments.sort_by_key(|s| s.order);
    let value = segments.iter().map(|s| s.value).sum();
    let error_estimate = segments.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// One 21-point Kronrod panel: (estimate, error).
fn gk21<F>(f: &F, a: f64, b: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = ((res_k - res_g) * half).abs();
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    (res_k * half, rescale_error(err, res_abs, res_asc))
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_on_unit_interval() {
        let r = integrate(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert!(r.error_estimate <= 1e-12);
    }

    #[test]
    fn decaying_exponential_on_half_line() {
        let r = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn beta_function_on_real_line() {
        // ∫(1+χ²)^{-5/2} dχ = B(1/2, 2) = 4/3
        let r = integrate(|x: f64| (1.0 + x * x).powf(-2.5), f64::NEG_INFINITY, f64::INFINITY, 1e-12)
            .unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let r = integrate(|x| x * x, 1.0, 0.0, 1e-12).unwrap();
        assert!((r.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r = integrate_with(|x: f64| x.powf(-0.5), 0.0, 1.0, QuadOptions::relative(1e-10)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports_partial_estimate() {
        let err = integrate_with(
            |x: f64| (1.0 / x).sin() / x,
            1e-8,
            1.0,
            QuadOptions::absolute(1e-14).with_budget(500),
        )
        .unwrap_err();
        match err {
            Error::QuadratureNonConvergence { evaluations, estimate, .. } => {
                assert!(evaluations <= 500);
                assert!(estimate.is_finite());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
