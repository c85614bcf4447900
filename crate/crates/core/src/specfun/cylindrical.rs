use std::f64::consts::PI;

use super::dd::Dd;

/// Below this argument the ascending series is summed in double-double;
/// above it the Hankel expansion's smallest term is below `e^{-2x}`.
const SERIES_LIMIT: f64 = 25.0;

/// Cylindrical Bessel function `J_0(x)`, even in `x`.
///
/// Absolute accuracy is close to one ulp of the envelope for all finite `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x.is_nan() {
        return f64::NAN;
    }
    if x < SERIES_LIMIT {
        series(x)
    } else {
        hankel(x)
    }
}

/// `sum_k (-x^2/4)^k / (k!)^2`, accumulated in double-double so that the
/// cancellation between terms of size `~e^x / x` costs nothing visible.
fn series(x: f64) -> f64 {
    let q = Dd::square(x).scale(0.25);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut k = 1.0_f64;
    loop {
        term = term.mul(q).div_f64(k * k).neg();
        sum = sum.add(term);
        if k * k > q.hi && term.hi.abs() < 1e-34 {
            break;
        }
        k += 1.0;
    }
    sum.to_f64()
}

/// `J_0(x) = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]` with the
/// asymptotic series for `P` and `Q` truncated at their smallest term.
fn hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    // c_m = prod_{j<=m} (-(2j-1)^2) / (m! 8^m); t_m = c_m / x^m
    let mut t = 1.0_f64;
    let mut last = f64::INFINITY;
    for m in 1..200 {
        let mf = m as f64;
        let odd = 2.0 * mf - 1.0;
        t *= -(odd * odd) / (8.0 * mf * x);
        if t.abs() >= last || t.abs() < 1e-18 {
            break;
        }
        last = t.abs();
        // P = sum (-1)^k t_{2k}, Q = sum (-1)^k t_{2k+1}
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    let (s, c) = x.sin_cos();
    // cos(x - pi/4) = (c + s)/sqrt2, sin(x - pi/4) = (s - c)/sqrt2
    (p * (c + s) - q * (s - c)) / (PI * x).sqrt()
}
