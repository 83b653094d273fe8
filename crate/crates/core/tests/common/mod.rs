//! Shared independent oracles for the integration suites.
//!
//! Nothing here calls into the library's special-function or matching
//! code: the well is solved by marching the ODE directly, and the dense
//! spectra come from Lanczos plus nalgebra.

// Each suite uses its own subset of the oracles.
#![allow(dead_code)]

use gaplab_core::hamiltonian::DenseMatrix;

pub const OMEGA: f64 = 4.0 / 3.0;

pub fn c_const() -> f64 {
    8.0 / (3.0 * (3.0_f64.sqrt() - 1.0))
}

/// Taylor-series step for u'' = (p0 + p1 t + p2 t^2) u from (u, u') at
/// the expansion point to distance h.
fn taylor_step(p0: f64, p1: f64, p2: f64, u: f64, up: f64, h: f64) -> (f64, f64) {
    const ORDER: usize = 90;
    let mut c = [0.0_f64; ORDER + 2];
    c[0] = u;
    c[1] = up;
    for k in 0..ORDER {
        let mut rhs = p0 * c[k];
        if k >= 1 {
            rhs += p1 * c[k - 1];
        }
        if k >= 2 {
            rhs += p2 * c[k - 2];
        }
        c[k + 2] = rhs / ((k + 1) as f64 * (k + 2) as f64);
    }
    let mut value = 0.0;
    let mut deriv = 0.0;
    let mut hk = 1.0;
    for (k, &ck) in c.iter().enumerate() {
        value += ck * hk;
        if k + 1 < c.len() {
            deriv += c[k + 1] * (k + 1) as f64 * hk;
        }
        hk *= h;
    }
    (value, deriv)
}

/// Matching function of the quadratic-well model at x = 0 for one model
/// energy: integrates u'' = (omega^2 x^2 - eps c E)/eps^2 u inward from
/// WKB tail data, crosses the step analytically, and returns u'(0) for
/// even parity or u(0) for odd, normalized by |u(a)|.
pub fn shoot(eps: f64, a: f64, v0: f64, ce: f64, even: bool) -> Option<f64> {
    let ec_e = eps * ce;
    let k2 = (v0 - ec_e) / (eps * eps);
    if k2 <= 0.0 {
        return None;
    }
    let x_turn = ec_e.sqrt() / OMEGA;
    let x_start = (4.0 * x_turn)
        .max(3.0 * a)
        .max(x_turn + 8.0 * (eps / (2.0 * OMEGA)).sqrt());

    let q = |x: f64| (OMEGA * OMEGA * x * x - ec_e) / (eps * eps);
    let qs = q(x_start);
    let qp = 2.0 * OMEGA * OMEGA * x_start / (eps * eps);
    let mut u = 1.0;
    let mut up = -qs.sqrt() - qp / (4.0 * qs);

    // March the harmonic region [a, x_start] inward. Step short enough
    // that sqrt(q) h stays ~2 for fast Taylor convergence.
    let mut x = x_start;
    while x > a {
        let local = q(x).abs().sqrt().max(1.0);
        let h = -(2.0 / local).min(x - a);
        let p0 = q(x);
        let p1 = 2.0 * OMEGA * OMEGA * x / (eps * eps);
        let p2 = OMEGA * OMEGA / (eps * eps);
        let (nu, nup) = taylor_step(p0, p1, p2, u, up, h);
        u = nu;
        up = nup;
        x += h;
        // Keep magnitudes near unity; the matching function is scale-free.
        let m = u.abs().max(up.abs() * eps);
        if m > 1e100 {
            u /= m;
            up /= m;
        }
    }

    // Constant-potential interior: transfer (u, u') from a to 0.
    let k = k2.sqrt();
    let (ch, sh) = ((k * a).cosh(), (k * a).sinh());
    let u0 = ch * u - sh / k * up;
    let up0 = -k * sh * u + ch * up;
    let scale = u.abs().max(1e-300);
    Some(if even { up0 / scale } else { u0 / scale })
}

/// Lowest model level of one parity by scanning c E and bisecting the
/// sign change of the shooting mismatch.
pub fn shoot_lowest_level(eps: f64, a: f64, v0: f64, even: bool) -> Option<f64> {
    let c = c_const();
    let lo = 0.05 * OMEGA;
    let hi = 5.0 * OMEGA;
    let n = 1200;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..n {
        let ce = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let Some(f) = shoot(eps, a, v0, ce, even) else { break };
        if let Some((ce0, f0)) = prev {
            if f0 == 0.0 {
                return Some(ce0 / c);
            }
            if f0.signum() != f.signum() {
                // Plain bisection; the mismatch is cheap and smooth.
                let (mut x0, mut x1, mut g0) = (ce0, ce, f0);
                for _ in 0..200 {
                    let mid = 0.5 * (x0 + x1);
                    let gm = shoot(eps, a, v0, mid, even)?;
                    if gm == 0.0 || x1 - x0 < 1e-14 * mid {
                        return Some(mid / c);
                    }
                    if gm.signum() == g0.signum() {
                        x0 = mid;
                        g0 = gm;
                    } else {
                        x1 = mid;
                    }
                }
                return Some(0.5 * (x0 + x1) / c);
            }
        }
        prev = Some((ce, f));
    }
    None
}

/// Model gap (odd minus even lowest level) by shooting.
pub fn shoot_gap(eps: f64, a: f64, v0: f64) -> Option<f64> {
    let even = shoot_lowest_level(eps, a, v0, true)?;
    let odd = shoot_lowest_level(eps, a, v0, false)?;
    Some(odd - even)
}

/// Two lowest eigenvalues of a dense symmetric matrix by Lanczos with
/// full reorthogonalization; the small Krylov tridiagonal goes through
/// nalgebra's dense symmetric eigensolver.
pub fn dense_lowest_two(m: &DenseMatrix, iters: usize) -> (f64, f64) {
    let n = m.dim;
    let steps = iters.min(n);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let mut alphas = Vec::with_capacity(steps);
    let mut betas: Vec<f64> = Vec::with_capacity(steps);

    let mut v = vec![0.0_f64; n];
    // Deterministic start with overlap on everything.
    for (i, x) in v.iter_mut().enumerate() {
        *x = 1.0 + (i as f64 * 0.618_033_988_749_894_8).sin();
    }
    normalize(&mut v);

    for j in 0..steps {
        let mut w = m.matvec(&v);
        let alpha: f64 = dot(&w, &v);
        alphas.push(alpha);
        for i in 0..n {
            w[i] -= alpha * v[i];
        }
        if j > 0 {
            let beta_prev = betas[j - 1];
            let prev = &basis[j - 1];
            for i in 0..n {
                w[i] -= beta_prev * prev[i];
            }
        }
        // Full reorthogonalization, twice.
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for i in 0..n {
                    w[i] -= c * b[i];
                }
            }
            let c = dot(&w, &v);
            for i in 0..n {
                w[i] -= c * v[i];
            }
        }
        basis.push(v.clone());
        let beta = dot(&w, &w).sqrt();
        if j + 1 == steps || beta < 1e-13 {
            break;
        }
        betas.push(beta);
        for i in 0..n {
            w[i] /= beta;
        }
        v = w;
    }

    let k = alphas.len();
    let mut t = nalgebra::DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let mut eig: Vec<f64> = t.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    (eig[0], eig[1])
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let n = dot(v, v).sqrt();
    for x in v {
        *x /= n;
    }
}

/// Restriction of a dense 2^n operator to the permutation-symmetric
/// (Dicke) sector, built directly from dense matvecs on the normalized
/// Hamming-class indicator vectors. The projector depends only on the
/// permutation group, so this is an independent route to the symmetric
/// block of the full Hamiltonian.
pub fn hamming_symmetric_block(m: &DenseMatrix, n_qubits: u64) -> Vec<Vec<f64>> {
    let dim = m.dim;
    assert_eq!(dim, 1usize << n_qubits);
    let classes = n_qubits as usize + 1;
    let mut class_size = vec![0usize; classes];
    for x in 0..dim {
        class_size[(x as u64).count_ones() as usize] += 1;
    }
    let mut block = vec![vec![0.0; classes]; classes];
    for h in 0..classes {
        let norm = (class_size[h] as f64).sqrt();
        let mut v = vec![0.0; dim];
        for (x, slot) in v.iter_mut().enumerate() {
            if (x as u64).count_ones() as usize == h {
                *slot = 1.0 / norm;
            }
        }
        let hv = m.matvec(&v);
        for (x, &val) in hv.iter().enumerate() {
            let hp = (x as u64).count_ones() as usize;
            block[hp][h] += val / (class_size[hp] as f64).sqrt();
        }
    }
    block
}

/// Lowest two eigenvalues of a small dense symmetric matrix (nalgebra).
pub fn small_dense_lowest_two(block: &[Vec<f64>]) -> (f64, f64) {
    let k = block.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = block[i][j];
        }
    }
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    (eig[0], eig[1])
}
