//! Lowest eigenpairs of symmetric tridiagonal matrices by Sturm-sequence
//! bisection, scalable to dimension 10^7 + 1.
//!
//! Bisection beats faster iterations here on purpose: each sign count is
//! O(n), sixty-odd counts pin one eigenvalue, and the count is monotone
//! even when the lowest pair is exponentially close.

use crate::error::{Error, Result};
use crate::hamiltonian::TridiagonalMatrix;

/// One eigenvalue, optionally with a unit-norm eigenvector.
///
/// When the vector is present the solver guarantees
/// ||T v - lambda v||_inf <= RESIDUAL_FACTOR * eps * ||T||_gershgorin.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Option<Vec<f64>>,
}

/// Residual bound factor declared by [`eigenvector`].
pub const RESIDUAL_FACTOR: f64 = 1e4;

fn pivot_guard(t: &TridiagonalMatrix) -> f64 {
    // Small enough to never mask a genuine pivot, large enough that
    // b^2/guard cannot overflow.
    let bmax = t.offdiag.iter().fold(0.0_f64, |m, &b| m.max(b.abs()));
    f64::MIN_POSITIVE.max(bmax * bmax * f64::MIN_POSITIVE / f64::EPSILON)
}

/// Number of eigenvalues of T strictly below sigma (LDL^T sign count).
pub fn sturm_count(t: &TridiagonalMatrix, sigma: f64) -> usize {
    sturm_count_guarded(t, sigma, pivot_guard(t))
}

fn sturm_count_guarded(t: &TridiagonalMatrix, sigma: f64, guard: f64) -> usize {
    let mut count = 0usize;
    let mut d = t.diag[0] - sigma;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..t.dim() {
        let safe = if d.abs() < guard {
            if d < 0.0 {
                -guard
            } else {
                guard
            }
        } else {
            d
        };
        let b = t.offdiag[i - 1];
        d = (t.diag[i] - sigma) - b * b / safe;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Default bisection tolerance: a machine-relative floor on the spectral
/// scale, never below 1e-13.
pub fn default_abs_tol(t: &TridiagonalMatrix) -> f64 {
    let (lo, hi) = t.gershgorin();
    let scale = lo.abs().max(hi.abs()).max(1.0);
    (4.0 * f64::EPSILON * scale).max(1e-13)
}

/// k-th smallest eigenvalue (k = 1-based) bracketed to width <= abs_tol.
fn bisect_kth(t: &TridiagonalMatrix, k: usize, abs_tol: f64, guard: f64) -> f64 {
    let (glo, ghi) = t.gershgorin();
    let mut lo = glo - abs_tol;
    let mut hi = ghi + abs_tol;
    for _ in 0..256 {
        if hi - lo <= abs_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval below representable resolution
        }
        if sturm_count_guarded(t, mid, guard) >= k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The two smallest eigenvalues (lambda0 <= lambda1).
pub fn lowest_two(t: &TridiagonalMatrix, abs_tol: f64) -> Result<(f64, f64)> {
    if !(abs_tol > 0.0) {
        return Err(Error::Parameter(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    if t.dim() < 2 {
        return Err(Error::Parameter("lowest_two needs dimension >= 2".into()));
    }
    let guard = pivot_guard(t);
    let l0 = bisect_kth(t, 1, abs_tol, guard);
    let l1 = bisect_kth(t, 2, abs_tol, guard);
    Ok((l0.min(l1), l0.max(l1)))
}

/// Unit-norm eigenvector for an eigenvalue estimate, by inverse iteration
/// with the shifted safeguarded LDL^T factorization. The sign is fixed so
/// the largest-magnitude component is positive.
pub fn eigenvector(t: &TridiagonalMatrix, lambda: f64) -> Result<Vec<f64>> {
    let n = t.dim();
    let guard = pivot_guard(t).max(f64::EPSILON * default_abs_tol(t));
    // Factor T - lambda I = L D L^T once.
    let mut d = vec![0.0_f64; n];
    let mut l = vec![0.0_f64; n.saturating_sub(1)];
    d[0] = t.diag[0] - lambda;
    for i in 1..n {
        let prev = if d[i - 1].abs() < guard {
            guard.copysign(d[i - 1])
        } else {
            d[i - 1]
        };
        d[i - 1] = prev;
        l[i - 1] = t.offdiag[i - 1] / prev;
        d[i] = (t.diag[i] - lambda) - l[i - 1] * t.offdiag[i - 1];
    }
    if d[n - 1].abs() < guard {
        d[n - 1] = guard.copysign(d[n - 1]);
    }

    let (glo, ghi) = t.gershgorin();
    let norm_t = glo.abs().max(ghi.abs()).max(1.0);
    let target = RESIDUAL_FACTOR * f64::EPSILON * norm_t;

    // All-ones start: guaranteed overlap with the nodeless ground state.
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut residual = f64::INFINITY;
    for _ in 0..8 {
        // Solve L D L^T w = v in place.
        let mut w = v.clone();
        for i in 1..n {
            let carry = l[i - 1] * w[i - 1];
            w[i] -= carry;
        }
        for i in 0..n {
            w[i] /= d[i];
        }
        for i in (0..n - 1).rev() {
            let carry = l[i] * w[i + 1];
            w[i] -= carry;
        }
        let norm = w.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Convergence {
                message: "inverse iteration produced a non-finite iterate".into(),
                residual,
            });
        }
        for a in &mut w {
            *a /= norm;
        }
        let hv = t.matvec(&w);
        residual = hv
            .iter()
            .zip(&w)
            .map(|(h, x)| (h - lambda * x).abs())
            .fold(0.0_f64, f64::max);
        v = w;
        if residual <= target {
            // Sign convention: largest-magnitude component positive.
            let mut idx = 0;
            for (i, a) in v.iter().enumerate() {
                if a.abs() > v[idx].abs() {
                    idx = i;
                }
            }
            if v[idx] < 0.0 {
                for a in &mut v {
                    *a = -*a;
                }
            }
            return Ok(v);
        }
    }
    Err(Error::Convergence {
        message: format!("inverse iteration at lambda = {lambda} did not reach {target:e}"),
        residual,
    })
}
