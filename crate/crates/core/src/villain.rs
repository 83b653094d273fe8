//! Discrete spin operators and the exact shift-operator reconstruction of
//! j_x, plus the semiclassical potential and its zero-point constant.
//!
//! All operators act on the 2J+1 states |q>, q = m/J for m = -J..J, and
//! are banded with bandwidth one. The reconstruction identity writes the
//! raising/lowering content of j_x through the shift operators P and M
//! and their exact expansion P, M = I +- eps A + (eps^2/2) B in the
//! discrete derivative operators; no continuum limit is taken, so the
//! identity holds to rounding.

use crate::barrier::BarrierSpec;
use crate::error::{Error, Result};
use crate::hamiltonian::TridiagonalMatrix;

/// Square matrix with sub-, main, and super-diagonal storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Banded {
    pub dim: usize,
    /// sub\[i\] is the (i+1, i) entry.
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    /// sup\[i\] is the (i, i+1) entry.
    pub sup: Vec<f64>,
}

impl Banded {
    pub fn zeros(dim: usize) -> Self {
        Banded {
            dim,
            sub: vec![0.0; dim - 1],
            diag: vec![0.0; dim],
            sup: vec![0.0; dim - 1],
        }
    }

    /// self + scale * other.
    pub fn add_scaled(&self, other: &Banded, scale: f64) -> Banded {
        let mut out = self.clone();
        for i in 0..self.dim - 1 {
            out.sub[i] += scale * other.sub[i];
            out.sup[i] += scale * other.sup[i];
        }
        for i in 0..self.dim {
            out.diag[i] += scale * other.diag[i];
        }
        out
    }

    /// Left-multiplies by a diagonal matrix: diag(d) * self.
    pub fn scale_rows(&self, d: &[f64]) -> Banded {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.diag[i] *= d[i];
        }
        for i in 0..self.dim - 1 {
            out.sub[i] *= d[i + 1];
            out.sup[i] *= d[i];
        }
        out
    }

    /// Right-multiplies by a diagonal matrix: self * diag(d).
    pub fn scale_cols(&self, d: &[f64]) -> Banded {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.diag[i] *= d[i];
        }
        for i in 0..self.dim - 1 {
            out.sub[i] *= d[i];
            out.sup[i] *= d[i + 1];
        }
        out
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Banded) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            m = m.max((self.diag[i] - other.diag[i]).abs());
        }
        for i in 0..self.dim - 1 {
            m = m.max((self.sub[i] - other.sub[i]).abs());
            m = m.max((self.sup[i] - other.sup[i]).abs());
        }
        m
    }

    /// Conversion for symmetric operators; rejects asymmetry beyond tol.
    pub fn to_tridiagonal(&self, tol: f64) -> Result<TridiagonalMatrix> {
        for i in 0..self.dim - 1 {
            if (self.sub[i] - self.sup[i]).abs() > tol {
                return Err(Error::Parameter(format!(
                    "operator not symmetric at band position {i}"
                )));
            }
        }
        TridiagonalMatrix::new(self.diag.clone(), self.sub.clone())
    }
}

/// The scaled spin operators for one J.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    /// Total spin J = n/2 (stored doubled to stay integral).
    pub two_j: u64,
    pub epsilon: f64,
    pub dim: usize,
    /// Eigenvalues q = m/J of j_z, ascending (index 0 is m = -J).
    pub q: Vec<f64>,
    pub jz: Banded,
    pub jx: Banded,
    /// Raising shift P = sum |q+eps><q|.
    pub p_shift: Banded,
    /// Lowering shift M = sum |q-eps><q|.
    pub m_shift: Banded,
    /// Symmetric discrete first derivative A = (P - M)/(2 eps).
    pub a_op: Banded,
    /// Discrete second derivative B = (P - 2 I + M)/eps^2.
    pub b_op: Banded,
}

/// Builds the scaled operators for half-integer J >= 1/2 (pass 2J).
pub fn build_spin_ops(two_j: u64) -> Result<SpinOperators> {
    if two_j == 0 {
        return Err(Error::Parameter("2J must be >= 1".into()));
    }
    let j = two_j as f64 / 2.0;
    let epsilon = 1.0 / j;
    let dim = (two_j + 1) as usize;

    // Division keeps the endpoints exactly +-1.
    let q: Vec<f64> = (0..dim).map(|i| (i as f64 - j) / j).collect();

    let mut jz = Banded::zeros(dim);
    jz.diag.clone_from(&q);

    // j_x = eps/2 (J_+ + J_-) in the m-ladder basis:
    // <m+1| j_x |m> = (eps/2) sqrt((J-m)(J+m+1)).
    let mut jx = Banded::zeros(dim);
    for i in 0..dim - 1 {
        let m = i as f64 - j;
        let elem = 0.5 * epsilon * ((j - m) * (j + m + 1.0)).sqrt();
        jx.sub[i] = elem;
        jx.sup[i] = elem;
    }

    let mut p_shift = Banded::zeros(dim);
    for i in 0..dim - 1 {
        p_shift.sub[i] = 1.0;
    }
    let mut m_shift = Banded::zeros(dim);
    for i in 0..dim - 1 {
        m_shift.sup[i] = 1.0;
    }

    let mut a_op = Banded::zeros(dim);
    let mut b_op = Banded::zeros(dim);
    for i in 0..dim - 1 {
        a_op.sub[i] = 0.5 / epsilon;
        a_op.sup[i] = -0.5 / epsilon;
        b_op.sub[i] = 1.0 / (epsilon * epsilon);
        b_op.sup[i] = 1.0 / (epsilon * epsilon);
    }
    for i in 0..dim {
        b_op.diag[i] = -2.0 / (epsilon * epsilon);
    }

    Ok(SpinOperators {
        two_j,
        epsilon,
        dim,
        q,
        jz,
        jx,
        p_shift,
        m_shift,
        a_op,
        b_op,
    })
}

/// Rebuilds j_x from the shift-operator form with P and M substituted by
/// I +- eps A + (eps^2/2) B, and returns the maximum absolute entry-wise
/// deviation from the ladder-built j_x. The identity is exact; the
/// deviation is pure rounding.
pub fn verify_jx_identity(two_j: u64) -> Result<f64> {
    let ops = build_spin_ops(two_j)?;
    let eps = ops.epsilon;

    let mut identity = Banded::zeros(ops.dim);
    for i in 0..ops.dim {
        identity.diag[i] = 1.0;
    }
    // P, M reconstructed from the derivative operators.
    let p_rec = identity
        .add_scaled(&ops.a_op, eps)
        .add_scaled(&ops.b_op, 0.5 * eps * eps);
    let m_rec = identity
        .add_scaled(&ops.a_op, -eps)
        .add_scaled(&ops.b_op, 0.5 * eps * eps);

    // Raising/lowering amplitudes evaluated at the source site q:
    // j_+ = P sqrt((1-q)(1+q+eps)), j_- = M sqrt((1+q)(1-q+eps)).
    let g_plus: Vec<f64> = ops
        .q
        .iter()
        .map(|&qv| ((1.0 - qv) * (1.0 + qv + eps)).sqrt())
        .collect();
    let g_minus: Vec<f64> = ops
        .q
        .iter()
        .map(|&qv| ((1.0 + qv) * (1.0 - qv + eps)).sqrt())
        .collect();

    let rebuilt = p_rec
        .scale_cols(&g_plus)
        .add_scaled(&m_rec.scale_cols(&g_minus), 1.0);
    let mut half = rebuilt;
    for v in half
        .diag
        .iter_mut()
        .chain(half.sub.iter_mut())
        .chain(half.sup.iter_mut())
    {
        *v *= 0.5;
    }
    Ok(half.max_abs_diff(&ops.jx))
}

/// Zero-point constant of the semiclassical potential at s*:
/// (sqrt(3)-1)(24 + 12 eps)/24, the sign fixed by requiring the
/// potential minimum at q = -1/2 to vanish.
pub fn delta_constant(epsilon: f64) -> f64 {
    (3.0_f64.sqrt() - 1.0) * (24.0 + 12.0 * epsilon) / 24.0
}

/// Semiclassical potential sample.
#[derive(Debug, Clone, Copy)]
pub struct PotentialSample {
    pub value: f64,
    /// False when s differs from s* and the zero-point constant was
    /// dropped (its closed form is specific to s*).
    pub delta_applied: bool,
}

/// Diagonal part of the continuum Schroedinger operator:
/// s q + s r(q) + Delta - (1-s)(sqrt(1-q^2) + eps/(2 sqrt(1-q^2))).
pub fn semiclassical_potential(
    s: f64,
    q: f64,
    epsilon: f64,
    spec: &BarrierSpec,
) -> Result<PotentialSample> {
    if !(q.abs() < 1.0) {
        return Err(Error::Domain(format!("q must lie in (-1, 1), got {q}")));
    }
    let s_star = 0.5 * (3.0_f64.sqrt() - 1.0);
    let delta_applied = (s - s_star).abs() <= 1e-12;
    let delta = if delta_applied { delta_constant(epsilon) } else { 0.0 };
    // r(q) = eps b(J(q+1)) evaluated on the continuous profile.
    let r = if spec.is_zero() || epsilon == 0.0 {
        0.0
    } else {
        let n = 2.0 / epsilon;
        let h = (q + 1.0) / epsilon;
        epsilon * spec.profile(n.round() as u64, h)
    };
    let root = (1.0 - q * q).sqrt();
    let value = s * q + s * r + delta - (1.0 - s) * (root + epsilon / (2.0 * root));
    Ok(PotentialSample { value, delta_applied })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::{default_abs_tol, lowest_two};
    use crate::hamiltonian::build_symmetric;

    fn s_star() -> f64 {
        0.5 * (3.0_f64.sqrt() - 1.0)
    }

    #[test]
    fn spin_one_jx_spectrum() {
        // J=1: eps=1, jx = J_x with eigenvalues {-1, 0, 1}.
        let ops = build_spin_ops(2).unwrap();
        let t = ops.jx.to_tridiagonal(0.0).unwrap();
        let (l0, l1) = lowest_two(&t, 1e-13).unwrap();
        assert!((l0 + 1.0).abs() < 1e-12);
        assert!(l1.abs() < 1e-12);
        for &e in &ops.jx.diag {
            assert_eq!(e, 0.0);
        }
    }

    #[test]
    fn spin_half_jz() {
        let ops = build_spin_ops(1).unwrap();
        assert_eq!(ops.q, vec![-1.0, 1.0]);
        assert_eq!(ops.jz.diag, vec![-1.0, 1.0]);
    }

    fn to_dense(b: &Banded) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; b.dim]; b.dim];
        for i in 0..b.dim {
            m[i][i] = b.diag[i];
        }
        for i in 0..b.dim - 1 {
            m[i + 1][i] = b.sub[i];
            m[i][i + 1] = b.sup[i];
        }
        m
    }

    fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let n = a.len();
        let mut c = vec![vec![0.0; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    #[test]
    fn shift_products_are_truncated_identities() {
        // P M = I minus the projector onto the first basis state (q = -1),
        // M P = I minus the projector onto the last (q = +1).
        let ops = build_spin_ops(10).unwrap();
        let p = to_dense(&ops.p_shift);
        let m = to_dense(&ops.m_shift);
        let pm = matmul(&p, &m);
        let mp = matmul(&m, &p);
        for i in 0..ops.dim {
            for j in 0..ops.dim {
                let expect_pm = if i == j && i != 0 { 1.0 } else { 0.0 };
                let expect_mp = if i == j && i != ops.dim - 1 { 1.0 } else { 0.0 };
                assert_eq!(pm[i][j], expect_pm, "PM at ({i},{j})");
                assert_eq!(mp[i][j], expect_mp, "MP at ({i},{j})");
            }
        }
    }

    #[test]
    fn derivative_operator_relations_exact() {
        let ops = build_spin_ops(20).unwrap();
        let eps = ops.epsilon;
        // eps A = (P - M)/2 and eps^2 B = P - 2I + M, entry-wise.
        for i in 0..ops.dim - 1 {
            assert_eq!(eps * ops.a_op.sub[i], 0.5);
            assert_eq!(eps * ops.a_op.sup[i], -0.5);
            assert_eq!(eps * eps * ops.b_op.sub[i], 1.0);
            assert_eq!(eps * eps * ops.b_op.sup[i], 1.0);
        }
        for i in 0..ops.dim {
            assert_eq!(eps * eps * ops.b_op.diag[i], -2.0);
        }
    }

    #[test]
    fn jx_identity_exact_small_j() {
        for two_j in [10u64, 100, 1000] {
            let dev = verify_jx_identity(two_j).unwrap();
            assert!(dev <= 1e-13, "2J = {two_j}: deviation {dev:e}");
        }
    }

    #[test]
    fn delta_constant_values() {
        assert!((delta_constant(0.0) - (3.0_f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((delta_constant(0.0) - 0.7320508).abs() < 1e-7);
        assert!((delta_constant(0.1) - (3.0_f64.sqrt() - 1.0) * 1.05).abs() < 1e-15);
        assert!((delta_constant(0.1) - 0.7686534).abs() < 1e-7);
    }

    #[test]
    fn potential_vanishes_at_minimum() {
        for eps in [0.0, 1e-2, 1e-4] {
            let p = semiclassical_potential(s_star(), -0.5, eps, &BarrierSpec::zero()).unwrap();
            assert!(p.delta_applied);
            assert!(p.value.abs() <= 1e-14, "potential at q=-1/2, eps={eps}: {:e}", p.value);
        }
    }

    #[test]
    fn potential_quadratic_coefficient() {
        // Second difference around q = -1/2 extracts (2/3)(sqrt(3)-1),
        // which equals the kinetic prefactor (3/8)(sqrt(3)-1) times
        // omega^2 = 16/9.
        let f = |x: f64| {
            semiclassical_potential(s_star(), -0.5 + x, 0.0, &BarrierSpec::zero())
                .unwrap()
                .value
        };
        let h = 1e-3;
        let second = (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h))
            / (12.0 * h * h);
        let coeff = 0.5 * second;
        let expected = 2.0 / 3.0 * (3.0_f64.sqrt() - 1.0);
        assert!(
            (coeff - expected).abs() < 1e-8,
            "x^2 coefficient {coeff} vs {expected}"
        );
        assert!((coeff - 0.4880338).abs() < 1e-6);
        // Bridge to the model constants.
        let kinetic = 3.0 / 8.0 * (3.0_f64.sqrt() - 1.0);
        assert!((coeff / kinetic - 16.0 / 9.0).abs() < 1e-8, "omega^2 bridge");
        assert!((1.0 / kinetic - 8.0 / (3.0 * (3.0_f64.sqrt() - 1.0))).abs() < 1e-12);
    }

    #[test]
    fn potential_away_from_minimum() {
        // s*, q=0, eps=0: s*·0 - (1-s*) + (sqrt(3)-1).
        let p = semiclassical_potential(s_star(), 0.0, 0.0, &BarrierSpec::zero()).unwrap();
        let expected = (3.0_f64.sqrt() - 1.0) - (3.0 - 3.0_f64.sqrt()) / 2.0;
        assert!((p.value - expected).abs() < 1e-15);
        assert!((p.value - 0.0980762).abs() < 1e-7);
    }

    #[test]
    fn potential_off_critical_flags_delta() {
        let p = semiclassical_potential(0.5, 0.2, 1e-3, &BarrierSpec::zero()).unwrap();
        assert!(!p.delta_applied);
    }

    #[test]
    fn potential_domain() {
        assert!(semiclassical_potential(0.5, 1.0, 0.0, &BarrierSpec::zero()).is_err());
        assert!(semiclassical_potential(0.5, -1.2, 0.0, &BarrierSpec::zero()).is_err());
    }

    #[test]
    fn spin_hamiltonian_matches_scaled_h_sym() {
        // -(1-s) jx + s jz + s r(jz) + Delta has eigenvalues
        // eps (lambda_sym + shift) with shift = (Delta - 1)/eps.
        let spec = BarrierSpec::rectangular(0.3, 0.3);
        for (n, s) in [(40u64, 0.37), (200u64, s_star())] {
            let ops = build_spin_ops(n).unwrap();
            let eps = ops.epsilon;
            let delta = delta_constant(eps);
            let mut diag = Vec::with_capacity(ops.dim);
            for (i, &qv) in ops.q.iter().enumerate() {
                let b = spec.profile(n, i as f64);
                diag.push(s * qv + s * eps * b + delta);
            }
            let mut off = Vec::with_capacity(ops.dim - 1);
            for i in 0..ops.dim - 1 {
                off.push(-(1.0 - s) * ops.jx.sub[i]);
            }
            let spin = TridiagonalMatrix::new(diag, off).unwrap();
            let sym = build_symmetric(n, s, &spec).unwrap();
            let (a0, a1) = lowest_two(&spin, default_abs_tol(&spin).min(1e-13)).unwrap();
            let (b0, b1) = lowest_two(&sym, default_abs_tol(&sym)).unwrap();
            let shift = (delta - 1.0) / eps;
            assert!(
                (a0 - eps * (b0 + shift)).abs() <= 1e-10,
                "n={n}: ground {a0} vs {}",
                eps * (b0 + shift)
            );
            assert!(
                (a1 - eps * (b1 + shift)).abs() <= 1e-10,
                "n={n}: excited {a1} vs {}",
                eps * (b1 + shift)
            );
        }
    }
}
