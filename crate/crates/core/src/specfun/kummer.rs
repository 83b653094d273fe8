//! Kummer's confluent hypergeometric function M(a, b, z) by direct series.

use crate::error::{Error, Result};

/// Hard cap on series terms. The largest admissible |z| = 900 needs about
/// z + sqrt(75 z) terms to push the tail below 1e-16 relative.
const MAX_TERMS: usize = 4000;

/// Series convergence target for the relative term size.
const TERM_EPS: f64 = 1e-16;

/// M(a, b, z) = sum_k (a)_k/(b)_k z^k/k!, for |z| <= 900.
///
/// Negative z is routed through the Kummer transformation
/// M(a,b,z) = e^z M(b-a, b, -z) so the summed series has no long-range
/// cancellation. Terms are accumulated with Neumaier compensation.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain(format!(
            "kummer_m pole: b = {b} is a nonpositive integer"
        )));
    }
    if !(z.abs() <= 900.0) {
        return Err(Error::Domain(format!(
            "kummer_m series regime is |z| <= 900, got {z}"
        )));
    }
    if z < 0.0 {
        return Ok(z.exp() * series(b - a, b, -z)?);
    }
    series(a, b, z)
}

fn series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64; // Neumaier compensation
    let mut term = 1.0_f64;
    let mut small_streak = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * z / (kf + 1.0);
        if term == 0.0 {
            // (a)_k truncated: the series is a polynomial.
            break;
        }
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if term.abs() <= TERM_EPS * sum.abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum + comp);
            }
        } else {
            small_streak = 0;
        }
    }
    if small_streak > 0 || term == 0.0 {
        return Ok(sum + comp);
    }
    Err(Error::Accuracy {
        message: format!("kummer_m({a}, {b}, {z}) hit the {MAX_TERMS}-term cap"),
        partial: sum + comp,
    })
}
