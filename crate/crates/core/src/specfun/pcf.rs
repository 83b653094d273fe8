//! Parabolic cylinder function D_nu(z) and its z-derivative.
//!
//! D_nu solves the Weber equation D'' + (nu + 1/2 - z^2/4) D = 0 and is
//! the solution decaying as z -> +infinity. Three evaluation branches
//! cover the working box nu in [-1, 6], z in [-30, 30]:
//!
//! * z <= 2 (all of z < 0 included): the Kummer-series representation.
//!   For z < 0 the growing parts of the two series reinforce, and for
//!   0 <= z <= 2 their cancellation costs at most e^(z^2/2) ~ 7 in
//!   relative precision, so the direct combination is accurate there.
//! * z >= 9.5: the large-z asymptotic series, which terminates for
//!   integer nu and reaches ~1e-18 relative otherwise.
//! * 2 < z < 9.5: Taylor-series marching of the Weber equation inward
//!   from asymptotic seed values at z = 9.5. Inward is the stable
//!   direction: the wanted solution grows as z decreases while the
//!   contaminating solution decays.
//!
//! The naive series combination is useless in the middle zone — the two
//! Kummer pieces agree to e^(z^2/2) ~ 1e20 at z = 10 and the difference
//! drowns in rounding — which is why the marching branch exists.

use crate::error::{Error, Result};
use crate::specfun::gamma::recip_gamma;
use crate::specfun::kummer::kummer_m;

/// Supported order range.
pub const PCF_NU_MIN: f64 = -1.0;
pub const PCF_NU_MAX: f64 = 6.0;
/// Supported |z| range.
pub const PCF_Z_MAX: f64 = 30.0;

const SERIES_CUT: f64 = 2.0;
const ASYM_CUT: f64 = 9.5;
const MARCH_STEP: f64 = 0.5;
const TAYLOR_ORDER: usize = 80;

/// Value and z-derivative of D_nu at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfValue {
    pub value: f64,
    pub derivative: f64,
}

/// D_nu(z) and D'_nu(z) for nu in [-1, 6], z in [-30, 30].
pub fn pcf_d(nu: f64, z: f64) -> Result<PcfValue> {
    if !(PCF_NU_MIN..=PCF_NU_MAX).contains(&nu) {
        return Err(Error::Domain(format!(
            "pcf_d order {nu} outside [{PCF_NU_MIN}, {PCF_NU_MAX}]"
        )));
    }
    if !(-PCF_Z_MAX..=PCF_Z_MAX).contains(&z) {
        return Err(Error::Domain(format!(
            "pcf_d argument {z} outside [-{PCF_Z_MAX}, {PCF_Z_MAX}]"
        )));
    }
    if z <= SERIES_CUT {
        series_pair(nu, z)
    } else if z >= ASYM_CUT {
        Ok(asym_pair(nu, z))
    } else {
        Ok(march_from_asymptotic(nu, z))
    }
}

/// Kummer-series representation (DLMF 12.4.1 rewritten for D_nu):
/// D = 2^(nu/2) e^(-z^2/4) [P M(-nu/2, 1/2, w) - Q z M((1-nu)/2, 3/2, w)]
/// with w = z^2/2, P = sqrt(pi)/Gamma((1-nu)/2), Q = sqrt(2 pi)/Gamma(-nu/2).
fn series_pair(nu: f64, z: f64) -> Result<PcfValue> {
    let w = 0.5 * z * z;
    let a1 = -0.5 * nu;
    let a2 = 0.5 * (1.0 - nu);

    let m1 = kummer_m(a1, 0.5, w)?;
    let m1s = kummer_m(a1 + 1.0, 1.5, w)?; // dM1/dw = (a1/b1) M(a1+1, 3/2, w)
    let m2 = kummer_m(a2, 1.5, w)?;
    let m2s = kummer_m(a2 + 1.0, 2.5, w)?; // dM2/dw = (a2/b2) M(a2+1, 5/2, w)

    let p = std::f64::consts::PI.sqrt() * recip_gamma(a2);
    let q = (2.0 * std::f64::consts::PI).sqrt() * recip_gamma(a1);

    let gauss = (-0.25 * z * z).exp();
    let y1 = gauss * m1;
    let y2 = gauss * z * m2;
    // d/dz of the pieces; dw/dz = z.
    let y1p = gauss * z * (-0.5 * m1 + (a1 / 0.5) * m1s);
    let y2p = gauss * ((1.0 - 0.5 * z * z) * m2 + z * z * (a2 / 1.5) * m2s);

    let scale = (0.5 * nu).exp2();
    Ok(PcfValue {
        value: scale * (p * y1 - q * y2),
        derivative: scale * (p * y1p - q * y2p),
    })
}

/// Large-z expansion D_nu(z) ~ e^(-z^2/4) z^nu sum_s t_s with
/// t_{s+1} = -t_s (nu-2s)(nu-2s-1) / (2(s+1) z^2). Terminates for
/// integer nu; otherwise truncated at the smallest term.
fn asym_value(nu: f64, z: f64) -> f64 {
    let z2 = z * z;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for s in 0..60 {
        let sf = s as f64;
        let next = -term * (nu - 2.0 * sf) * (nu - 2.0 * sf - 1.0) / (2.0 * (sf + 1.0) * z2);
        if next == 0.0 || next.abs() >= term.abs() {
            break;
        }
        sum += next;
        term = next;
        if next.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    (-0.25 * z2).exp() * z.powf(nu) * sum
}

fn asym_pair(nu: f64, z: f64) -> PcfValue {
    let value = asym_value(nu, z);
    // D'_nu = (z/2) D_nu - D_{nu+1}, exact.
    let derivative = 0.5 * z * value - asym_value(nu + 1.0, z);
    PcfValue { value, derivative }
}

/// One Taylor step of the Weber system from (f, f') at z0 to z0 + h.
/// The coefficient q(z) = z^2/4 - nu - 1/2 is quadratic, so the Taylor
/// coefficients obey a short recurrence.
fn taylor_step(nu: f64, z0: f64, f: f64, fp: f64, h: f64) -> (f64, f64) {
    let q0 = 0.25 * z0 * z0 - nu - 0.5;
    let q1 = 0.5 * z0;
    let q2 = 0.25;

    let mut c = [0.0_f64; TAYLOR_ORDER + 2];
    c[0] = f;
    c[1] = fp;
    for k in 0..TAYLOR_ORDER {
        let mut rhs = q0 * c[k];
        if k >= 1 {
            rhs += q1 * c[k - 1];
        }
        if k >= 2 {
            rhs += q2 * c[k - 2];
        }
        c[k + 2] = rhs / ((k + 1) as f64 * (k + 2) as f64);
    }

    let mut value = 0.0_f64;
    let mut deriv = 0.0_f64;
    let mut hk = 1.0_f64;
    let scale = f.abs().max(fp.abs() * h.abs()).max(f64::MIN_POSITIVE);
    for (k, &ck) in c.iter().enumerate() {
        value += ck * hk;
        if k + 1 < c.len() {
            deriv += c[k + 1] * (k + 1) as f64 * hk;
        }
        let contrib = (ck * hk).abs();
        hk *= h;
        if k > 8 && contrib <= 1e-18 * scale {
            break;
        }
    }
    (value, deriv)
}

fn march_from_asymptotic(nu: f64, z_target: f64) -> PcfValue {
    let seed = asym_pair(nu, ASYM_CUT);
    let mut z = ASYM_CUT;
    let mut f = seed.value;
    let mut fp = seed.derivative;
    while z > z_target {
        let h = if z - z_target > MARCH_STEP {
            -MARCH_STEP
        } else {
            z_target - z
        };
        let (nf, nfp) = taylor_step(nu, z, f, fp, h);
        f = nf;
        fp = nfp;
        z += h;
        if h != -MARCH_STEP {
            break;
        }
    }
    PcfValue { value: f, derivative: fp }
}
