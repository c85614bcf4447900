use super::{RealSequence, UNDERFLOW_FLOOR};

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Spherical Bessel function `j_n(x)`.
///
/// Defined for `x >= 0`; negative arguments are mapped through the parity
/// `j_n(-x) = (-1)^n j_n(x)`.
pub fn spherical_jn(n: usize, x: f64) -> f64 {
    spherical_jn_signed(n, x)
}

pub(crate) fn spherical_jn_signed(n: usize, x: f64) -> f64 {
    let v = spherical_jn_sequence(n, x.abs())[n];
    if x < 0.0 && n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `j_0(x) ..= j_{n_max}(x)` for `x >= 0`.
///
/// Upward recurrence from the closed forms of `j_0`, `j_1` when
/// `x >= n_max`; otherwise Miller's downward recurrence started above
/// `n_max`, normalised against whichever of `j_0`, `j_1` is larger. Entries
/// that fall below [`UNDERFLOW_FLOOR`] are set to zero and recorded in
/// [`RealSequence::first_flushed`].
pub fn spherical_jn_sequence(n_max: usize, x: f64) -> RealSequence {
    let x = x.abs();
    let mut values = vec![0.0; n_max + 1];
    if x.is_nan() {
        values.fill(f64::NAN);
        return RealSequence::new(values, None);
    }
    if x == 0.0 {
        values[0] = 1.0;
        return RealSequence::new(values, None);
    }
    if x >= n_max as f64 {
        upward(&mut values, x);
        return RealSequence::new(values, None);
    }
    let first_flushed = miller(&mut values, x);
    RealSequence::new(values, first_flushed)
}

fn j0_closed(x: f64) -> f64 {
    x.sin() / x
}

fn j1_closed(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    (s / x - c) / x
}

fn upward(out: &mut [f64], x: f64) {
    out[0] = j0_closed(x);
    if out.len() == 1 {
        return;
    }
    out[1] = j1_closed(x);
    for k in 1..out.len() - 1 {
        out[k + 1] = (2 * k + 1) as f64 / x * out[k] - out[k - 1];
    }
}

/// Start index for the downward recurrence. The margin covers the
/// transition zone around `n ~ x` plus enough decay that the dominant
/// solution's contamination is below double precision at `n_max`.
fn miller_start(n_max: usize, x: f64) -> usize {
    let top = (n_max as f64).max(x);
    n_max + 20 + (40.0 * top).sqrt().ceil() as usize
}

fn miller(out: &mut [f64], x: f64) -> Option<usize> {
    let n_max = out.len() - 1;
    let start = miller_start(n_max, x);
    let mut next = 0.0_f64; // f_{k+1}
    let mut cur = 1e-30_f64; // f_k, k = start
    for k in (1..=start).rev() {
        // f_{k-1} = (2k+1)/x f_k - f_{k+1}
        let prev = (2 * k + 1) as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if k - 1 <= n_max {
            out[k - 1] = cur;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            next *= RESCALE_BY;
            for v in out.iter_mut().skip(k - 1) {
                *v *= RESCALE_BY;
            }
        }
    }
    let scale = if x < 1.0 || out.len() == 1 {
        j0_closed(x) / out[0]
    } else {
        let (j0, j1) = (j0_closed(x), j1_closed(x));
        if j0.abs() >= j1.abs() {
            j0 / out[0]
        } else {
            j1 / out[1]
        }
    };
    for v in out.iter_mut() {
        *v *= scale;
        if v.abs() < UNDERFLOW_FLOOR {
            *v = 0.0;
        }
    }
    // start of the trailing run of flushed entries
    let kept = out.iter().rposition(|&v| v != 0.0).map_or(0, |k| k + 1);
    (kept <= n_max).then_some(kept)
}
