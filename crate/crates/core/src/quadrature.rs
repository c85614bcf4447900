//! Quadrature for complex-valued integrands.
//!
//! * [`integrate_finite`]: globally adaptive Gauss-Kronrod (10/21 point) on a
//!   finite interval. The error estimate is `|K21 - G10|` summed over the
//!   active subintervals.
//! * [`integrate_oscillatory_infinite`]: whole-line integrals of slowly
//!   decaying oscillatory integrands. The line is cut into cells of half the
//!   hinted period, mirrored about zero, and the partial sums over the cell
//!   pairs are accelerated.
//! * [`integrate_between_zeros`]: half-line integrals whose oscillation
//!   follows a known phase; cells run between consecutive zeros supplied by
//!   the caller.
//!
//! Two accelerators run side by side on every partial-sum sequence: Wynn's
//! epsilon algorithm (exact on sums of geometric tails, hence good for
//! oscillating cell contributions) and polynomial extrapolation in `1/L`
//! over a geometric subsequence of cut-off points (good for monotone
//! algebraic tails, where epsilon is slow). Each is run at two sequence
//! lengths; the one whose two results agree better wins and that
//! disagreement is reported as the acceleration residual.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value, error estimate and work counter of one quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl QuadratureResult {
    fn scaled(self, s: Complex64) -> Self {
        Self {
            value: self.value * s,
            error_estimate: self.error_estimate * s.norm(),
            ..self
        }
    }

    /// Sum of two independent results.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            n_evals: self.n_evals + other.n_evals,
            converged: self.converged && other.converged,
        }
    }

    /// Multiply the value (and error) by a constant factor.
    pub fn times(self, s: Complex64) -> Self {
        self.scaled(s)
    }
}

/// Stopping rule and budget for [`integrate_finite_with`]. Converged means
/// `error <= max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl FiniteConfig {
    pub const DEFAULT_SUBDIVISIONS: usize = 2000;

    pub fn new(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            max_subdivisions: Self::DEFAULT_SUBDIVISIONS,
        }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Budgets for the infinite-interval engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryConfig {
    /// Cells summed before the first acceleration attempt.
    pub initial_cells: usize,
    /// The cell count doubles until this cap.
    pub max_cells: usize,
    pub max_subdivisions_per_cell: usize,
}

impl Default for OscillatoryConfig {
    fn default() -> Self {
        Self {
            initial_cells: 64,
            max_cells: 1024,
            max_subdivisions_per_cell: FiniteConfig::DEFAULT_SUBDIVISIONS,
        }
    }
}

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

const GK_POINTS: usize = 21;

fn gauss_kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).norm())
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `integral_a^b f`, converged when the error estimate is at most
/// `max(tol, tol |value|)`.
pub fn integrate_finite<F: FnMut(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> QuadratureResult {
    integrate_finite_with(f, a, b, &FiniteConfig::new(tol))
}

pub fn integrate_finite_with<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    cfg: &FiniteConfig,
) -> QuadratureResult {
    if a == b {
        return QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            n_evals: 0,
            converged: true,
        };
    }
    let (value, error) = gauss_kronrod(&mut f, a, b);
    let mut n_evals = GK_POINTS;
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut stuck = false;

    while total_err > cfg.target(total) && heap.len() < cfg.max_subdivisions.max(1) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            heap.push(worst);
            stuck = true;
            break;
        }
        let (v1, e1) = gauss_kronrod(&mut f, worst.a, mid);
        let (v2, e2) = gauss_kronrod(&mut f, mid, worst.b);
        n_evals += 2 * GK_POINTS;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // resum to shed the drift of the running totals
    let (mut value, mut error_estimate) = (Complex64::new(0.0, 0.0), 0.0);
    for p in heap.iter() {
        value += p.value;
        error_estimate += p.error;
    }
    QuadratureResult {
        value,
        error_estimate,
        n_evals,
        converged: !stuck && error_estimate <= cfg.target(value),
    }
}

/// Whole-line integral of an eventually oscillatory `f` whose envelope
/// decays at least like `1/|x|`; `period_hint` is the asymptotic period.
pub fn integrate_oscillatory_infinite<F: FnMut(f64) -> Complex64>(
    f: F,
    period_hint: f64,
    tol: f64,
) -> QuadratureResult {
    integrate_oscillatory_infinite_with(f, period_hint, tol, &OscillatoryConfig::default())
}

pub fn integrate_oscillatory_infinite_with<F: FnMut(f64) -> Complex64>(
    mut f: F,
    period_hint: f64,
    tol: f64,
    cfg: &OscillatoryConfig,
) -> QuadratureResult {
    let h = 0.5 * period_hint;
    let cell_cfg = cell_config(tol, cfg);
    let mut cell = |k: usize| {
        let lo = k as f64 * h;
        let hi = (k + 1) as f64 * h;
        let right = integrate_finite_with(&mut f, lo, hi, &cell_cfg);
        let left = integrate_finite_with(&mut f, -hi, -lo, &cell_cfg);
        (right.combine(left), hi)
    };
    accelerate_cells(&mut cell, tol, cfg)
}

/// `integral_start^inf f` with the cut points `zero(0) < zero(1) < ...`
/// (all beyond `start`) placed at consecutive zeros of the integrand's
/// oscillating factor. The first cell is `[start, zero(0)]`.
pub fn integrate_between_zeros<F, Z>(
    mut f: F,
    start: f64,
    mut zero: Z,
    tol: f64,
    cfg: &OscillatoryConfig,
) -> QuadratureResult
where
    F: FnMut(f64) -> Complex64,
    Z: FnMut(usize) -> f64,
{
    let cell_cfg = cell_config(tol, cfg);
    let mut cell = |k: usize| {
        let lo = if k == 0 { start } else { zero(k - 1) };
        let hi = zero(k);
        (integrate_finite_with(&mut f, lo, hi, &cell_cfg), hi)
    };
    accelerate_cells(&mut cell, tol, cfg)
}

fn cell_config(tol: f64, cfg: &OscillatoryConfig) -> FiniteConfig {
    FiniteConfig {
        abs_tol: (tol * 1e-3).max(1e-16),
        rel_tol: 1e-13,
        max_subdivisions: cfg.max_subdivisions_per_cell,
    }
}

fn accelerate_cells<C>(cell: &mut C, tol: f64, cfg: &OscillatoryConfig) -> QuadratureResult
where
    C: FnMut(usize) -> (QuadratureResult, f64),
{
    let mut partial: Vec<Complex64> = Vec::new();
    let mut ends: Vec<f64> = Vec::new();
    let mut cell_err = 0.0;
    let mut n_evals = 0;
    let mut cells_ok = true;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut target = cfg.initial_cells.max(16);
    let mut best = (Complex64::new(f64::NAN, f64::NAN), f64::INFINITY);

    loop {
        while partial.len() < target {
            let (r, end) = cell(partial.len());
            sum += r.value;
            cell_err += r.error_estimate;
            n_evals += r.n_evals;
            cells_ok &= r.converged;
            partial.push(sum);
            ends.push(end);
        }
        let (value, residual) = accelerated_estimate(&partial, &ends);
        if residual < best.1 || best.0.re.is_nan() {
            best = (value, residual);
        }
        let goal = tol.max(tol * best.0.norm());
        if best.1 <= goal || target >= cfg.max_cells {
            return QuadratureResult {
                value: best.0,
                error_estimate: best.1 + cell_err,
                n_evals,
                converged: cells_ok && best.1 <= goal,
            };
        }
        target = (target * 2).min(cfg.max_cells);
    }
}

/// Best of the two accelerators, with the disagreement between runs on the
/// full sequence and on its first three quarters as the residual.
fn accelerated_estimate(partial: &[Complex64], ends: &[f64]) -> (Complex64, f64) {
    let n = partial.len();
    let m = (3 * n) / 4;
    let mut candidates = vec![{
        let a = wynn_epsilon(partial);
        let b = wynn_epsilon(&partial[..m]);
        (a, (a - b).norm())
    }];
    if let (Some(a), Some(b)) = (
        tail_extrapolation(partial, ends),
        tail_extrapolation(&partial[..m], &ends[..m]),
    ) {
        candidates.push((a, (a - b).norm()));
    }
    candidates
        .into_iter()
        .filter(|(v, r)| v.re.is_finite() && v.im.is_finite() && r.is_finite())
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap_or((partial[n - 1], f64::INFINITY))
}

/// Wynn's epsilon algorithm. Returns the even-column entry whose distance to
/// its predecessor in the same column is smallest.
pub(crate) fn wynn_epsilon(s: &[Complex64]) -> Complex64 {
    let n = s.len();
    let mut best = s[n - 1];
    if n < 3 {
        return best;
    }
    let mut best_err = (s[n - 1] - s[n - 2]).norm();
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut cur = s.to_vec();
    let mut column = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() <= 1e-15 * cur[i + 1].norm().max(f64::MIN_POSITIVE) {
                // the column has converged to working precision
                if column % 2 == 0 {
                    return cur[i + 1];
                }
                return best;
            }
            next.push(prev[i + 1] + d.inv());
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 && cur.len() >= 2 {
            let k = cur.len();
            let err = (cur[k - 1] - cur[k - 2]).norm();
            if err < best_err {
                best_err = err;
                best = cur[k - 1];
            }
        }
    }
    best
}

const EXTRAPOLATION_DEGREE: usize = 8;
const EXTRAPOLATION_RATIO: f64 = 1.25;

/// Polynomial extrapolation of the partial sums to `1/L -> 0` through a
/// geometric subsequence of cut-off points `L`, all of the same parity so
/// that alternating tails become smooth.
pub(crate) fn tail_extrapolation(partial: &[Complex64], ends: &[f64]) -> Option<Complex64> {
    let n = partial.len();
    let mut idx: Vec<usize> = Vec::with_capacity(EXTRAPOLATION_DEGREE + 1);
    for j in 0..=EXTRAPOLATION_DEGREE {
        let k = (n as f64 / EXTRAPOLATION_RATIO.powi(j as i32)).round() as usize;
        let mut i = k.checked_sub(1)?;
        if (n - 1 - i) % 2 == 1 {
            i = i.checked_sub(1)?;
        }
        if idx.last().is_some_and(|&last| i >= last) {
            return None;
        }
        idx.push(i);
    }
    let xs: Vec<f64> = idx.iter().map(|&i| ends[i].recip()).collect();
    let mut p: Vec<Complex64> = idx.iter().map(|&i| partial[i]).collect();
    // Neville at x = 0
    let m = xs.len();
    for level in 1..m {
        for i in 0..m - level {
            let (xa, xb) = (xs[i], xs[i + level]);
            p[i] = (p[i] * (-xb) + p[i + 1] * xa) / (xa - xb);
        }
    }
    Some(p[0])
}

/// Closed form of `integral J_0(a w) exp(i b w) exp(-eps |w|) dw` over the
/// whole line: `2 Re[1 / sqrt(a^2 + (eps - i b)^2)]`.
pub fn regularized_j0_fourier(a: f64, b: f64, eps: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter {
            what: "a",
            value: a,
        });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter {
            what: "eps",
            value: eps,
        });
    }
    if !b.is_finite() {
        return Err(Error::InvalidParameter {
            what: "b",
            value: b,
        });
    }
    let s = Complex64::new(eps, -b);
    let w = Complex64::new(a * a, 0.0) + s * s;
    Ok(2.0 * w.sqrt().inv().re)
}
