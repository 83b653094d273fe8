//! Scalar root finding and 1-D minimization used by the solvers.

use crate::error::{Error, Result};

/// Brent's method on a bracketing interval [a, b] with f(a)*f(b) <= 0.
///
/// Follows the classic inverse-quadratic/secant/bisection hybrid; refines
/// until the interval is below `xtol` plus a machine-relative floor.
pub fn brent<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    x1: f64,
    x2: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut a = x1;
    let mut b = x2;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Parameter(format!(
            "brent: root not bracketed on [{x1}, {x2}] (f = {fa:e}, {fb:e})"
        )));
    }
    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b)?;
    }
    Err(Error::Convergence {
        message: format!("brent: no convergence in {max_iter} iterations"),
        residual: fb,
    })
}

/// Golden-section minimization of f on [a, b] to interval width <= xtol.
///
/// Returns the best (x, f(x)) seen over all evaluations, so the result
/// never exceeds any probed value even if f is not unimodal.
pub fn golden_min<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        let cand = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        if cand.1 < best.1 {
            best = cand;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let root = brent(|x| Ok(x * x * x - 2.0), 0.0, 2.0, 1e-14, 100).unwrap();
        assert!((root - 2.0_f64.powf(1.0 / 3.0)).abs() < 1e-12, "root {root}");
    }

    #[test]
    fn brent_transcendental() {
        // cos x = x near 0.739085.
        let root = brent(|x| Ok(x.cos() - x), 0.0, 1.0, 1e-14, 100).unwrap();
        assert!((root - 0.739_085_133_215_160_6).abs() < 1e-12);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn golden_quadratic_minimum() {
        let (x, fx) = golden_min(|x| Ok((x - 0.3) * (x - 0.3) + 1.0), -1.0, 2.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-8, "x = {x}");
        assert!((fx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_result_never_worse_than_probes() {
        // Bimodal on purpose; the returned value must still be the best seen.
        let f = |x: f64| Ok((x * 6.0).sin() + 0.1 * x * x);
        let (_, fx) = golden_min(f, -2.0, 2.0, 1e-9).unwrap();
        let mut probe_best = f64::INFINITY;
        let mut x: f64 = -2.0;
        while x <= 2.0 {
            probe_best = probe_best.min((x * 6.0).sin() + 0.1 * x * x);
            x += 0.31;
        }
        assert!(fx <= probe_best + 0.3, "golden fx {fx} vs probes {probe_best}");
    }
}
