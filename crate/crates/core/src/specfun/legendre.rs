use super::RealSequence;
use crate::error::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

/// Clamp `x` onto `[-1, 1]`, tolerating roundoff up to `1e-12` beyond the
/// endpoints.
pub(crate) fn clamp_unit(what: &'static str, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain { what, value: x });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Fill `out[k] = P_k(x)` for `k < out.len()`. `x` must already be in
/// `[-1, 1]`.
pub(crate) fn legendre_fill(out: &mut [f64], x: f64) {
    let Some(first) = out.first_mut() else {
        return;
    };
    *first = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = x;
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

/// Legendre polynomial `P_n(x)`.
pub fn legendre_p(n: usize, x: f64) -> Result<f64> {
    let x = clamp_unit("x", x)?;
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `P_0(x) ..= P_{n_max}(x)` from one pass of the recurrence; entry `k` is
/// bit-identical to `legendre_p(k, x)`.
pub fn legendre_p_sequence(n_max: usize, x: f64) -> Result<RealSequence> {
    let x = clamp_unit("x", x)?;
    let mut values = vec![0.0; n_max + 1];
    legendre_fill(&mut values, x);
    Ok(RealSequence::new(values, None))
}
