//! The interpolating Hamiltonian H(s) = (1-s) H0 + s H1 in two forms:
//! the (n+1)-dimensional symmetric-subspace tridiagonal matrix used for
//! production runs, and the dense 2^n-dimensional matrix kept as a
//! small-n oracle. Also the closed-form unperturbed quantities: the gap
//! delta(s) and the barrier-free ground state.

use serde::Serialize;

use crate::barrier::{barrier_value, BarrierSpec};
use crate::error::{Error, Result};
use crate::specfun::ln_binomial;

/// Symmetric tridiagonal matrix stored as diagonal plus off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalMatrix {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Parameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(TridiagonalMatrix { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin bounds (lo, hi) containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// y = T x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        debug_assert_eq!(x.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * x[i + 1];
            }
            y[i] = acc;
        }
        y
    }
}

/// Dense symmetric matrix in row-major storage (oracle use only).
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// y = A x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }
}

/// H_sym(s): diag\[h\] = (1-s) n/2 + s (h + b(h)),
/// offdiag\[h\] = -(1-s)/2 sqrt((h+1)(n-h)).
pub fn build_symmetric(n: u64, s: f64, spec: &BarrierSpec) -> Result<TridiagonalMatrix> {
    if n < 1 {
        return Err(Error::Parameter("n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Parameter(format!("s must lie in [0,1], got {s}")));
    }
    spec.validate()?;
    let nf = n as f64;
    let dim = (n + 1) as usize;
    let mut diag = Vec::with_capacity(dim);
    let mut offdiag = Vec::with_capacity(dim - 1);
    let field = (1.0 - s) * nf / 2.0;
    for h in 0..=n {
        let b = spec.profile(n, h as f64);
        diag.push(field + s * (h as f64 + b));
        if h < n {
            let hf = h as f64;
            offdiag.push(-(1.0 - s) / 2.0 * ((hf + 1.0) * (nf - hf)).sqrt());
        }
    }
    TridiagonalMatrix::new(diag, offdiag)
}

/// Largest n accepted by the dense oracle (16384^2 doubles).
pub const FULL_ORACLE_MAX_N: u64 = 14;

/// Full 2^n Hamiltonian (1-s) sum_i (H0)_i + s sum_x f(x)|x><x| in the
/// computational basis, with (H0)_i = [[1,-1],[-1,1]]/2 on qubit i.
pub fn build_full(n: u64, s: f64, spec: &BarrierSpec) -> Result<DenseMatrix> {
    if n < 1 {
        return Err(Error::Parameter("n must be >= 1".into()));
    }
    if n > FULL_ORACLE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "dense oracle capped at n = {FULL_ORACLE_MAX_N}, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Parameter(format!("s must lie in [0,1], got {s}")));
    }
    spec.validate()?;
    let dim = 1usize << n;
    let mut data = vec![0.0; dim * dim];
    let hop = -(1.0 - s) / 2.0;
    let field = (1.0 - s) * n as f64 / 2.0;
    for x in 0..dim {
        let h = (x as u64).count_ones() as u64;
        let f = h as f64 + barrier_value(spec, n, h)?;
        data[x * dim + x] = field + s * f;
        for i in 0..n {
            let y = x ^ (1usize << i);
            data[x * dim + y] = hop;
        }
    }
    Ok(DenseMatrix { dim, data })
}

/// Unperturbed gap delta(s) = sqrt(1 - 2s + 2s^2), exact for the
/// barrier-free Hamiltonian at every n.
pub fn unperturbed_gap(s: f64) -> f64 {
    (1.0 - 2.0 * s + 2.0 * s * s).sqrt()
}

/// Barrier-free ground state of H_sym: component h proportional to
/// sqrt(C(n,h)) (s+delta)^(n-h) (1-s)^h, returned with unit norm.
///
/// Amplitudes are accumulated in log space and exponentiated after
/// subtracting the maximum: the central binomial alone overflows doubles
/// near n = 1030.
pub fn unperturbed_ground_state(n: u64, s: f64) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::Parameter("n must be >= 1".into()));
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Parameter(format!("s must lie in [0,1), got {s}")));
    }
    let delta = unperturbed_gap(s);
    let ln_up = (s + delta).ln();
    let ln_down = (1.0 - s).ln();
    let dim = (n + 1) as usize;
    let mut logs = Vec::with_capacity(dim);
    let mut max = f64::NEG_INFINITY;
    for h in 0..=n {
        let l = 0.5 * ln_binomial(n, h) + (n - h) as f64 * ln_up + h as f64 * ln_down;
        max = max.max(l);
        logs.push(l);
    }
    let mut v: Vec<f64> = logs.into_iter().map(|l| (l - max).exp()).collect();
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    Ok(v)
}
