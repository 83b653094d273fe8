//! Continuum quadratic-well-plus-step-barrier model: transcendental level
//! matching, model gap, closed-form asymptotics, region classification,
//! and piecewise wavefunction assembly.
//!
//! The model solves psi'' = eps^-2 [V(x) - eps c E] psi with
//! V = eps^(1-beta) on |x| < a and omega^2 x^2 outside, omega = 4/3,
//! c = 8/(3(sqrt(3)-1)), a = eps^(1-alpha)/2. Outside the step the
//! solutions are parabolic cylinder functions D_nu(+-sqrt(2 omega/eps) x)
//! with nu = cE/(2 omega) - 1/2; inside they are cosh/sinh of k x with
//! k = sqrt(eps^(-1-beta) - eps^-1 c E). Matching value and slope at
//! x = +-a yields one transcendental equation per parity.

use serde::Serialize;

use crate::barrier::BarrierSpec;
use crate::error::{Error, Result};
use crate::roots::brent;
use crate::specfun::{pcf_d, PCF_Z_MAX};

/// Kinetic normalization of the quadratic well.
pub const OMEGA: f64 = 4.0 / 3.0;

/// Energy normalization c = 8 / (3 (sqrt(3) - 1)).
pub fn c_const() -> f64 {
    8.0 / (3.0 * (3.0_f64.sqrt() - 1.0))
}

/// Wavefunction parity about x = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Continuum-model constants for one (spec, epsilon) pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelParams {
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
    pub omega: f64,
    pub c: f64,
    /// Step half-width a.
    pub a: f64,
    /// Step height (the 4/3-normalized barrier term).
    pub barrier_height: f64,
}

impl ModelParams {
    /// Maps a barrier spec at epsilon = 2/n onto the model constants:
    /// a = width_scale eps^(1-alpha)/2 and height (4/3) height_scale
    /// eps^(1-beta), or the explicit override taken verbatim.
    ///
    /// The model's omega and c assume the barrier centered at h = n/4;
    /// other centers would need different constants and are rejected.
    pub fn from_spec(spec: &BarrierSpec, epsilon: f64) -> Result<Self> {
        spec.validate()?;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Parameter(format!(
                "epsilon must lie in (0,1), got {epsilon}"
            )));
        }
        if spec.explicit_override.is_none() && (spec.center_fraction - 0.25).abs() > 1e-12 {
            return Err(Error::Parameter(format!(
                "continuum constants assume center_fraction 1/4, got {}",
                spec.center_fraction
            )));
        }
        let (a, barrier_height) = match spec.explicit_override {
            Some((half_width, height)) => (half_width, height),
            None if spec.is_zero() => (0.0, 0.0),
            None => (
                0.5 * spec.width_scale * epsilon.powf(1.0 - spec.alpha),
                4.0 / 3.0 * spec.height_scale * epsilon.powf(1.0 - spec.beta),
            ),
        };
        Ok(ModelParams {
            epsilon,
            alpha: spec.alpha,
            beta: spec.beta,
            omega: OMEGA,
            c: c_const(),
            a,
            barrier_height,
        })
    }

    /// Model constants for exponents (alpha, beta) at given epsilon with
    /// default scales.
    pub fn from_exponents(alpha: f64, beta: f64, epsilon: f64) -> Result<Self> {
        Self::from_spec(&BarrierSpec::rectangular(alpha, beta), epsilon)
    }

    /// True when the step degenerates and the well is purely harmonic.
    pub fn is_harmonic(&self) -> bool {
        self.a == 0.0 || self.barrier_height == 0.0
    }

    /// Matching argument Z = sqrt(2 omega / eps) a of the outer pieces.
    pub fn matching_z(&self) -> f64 {
        (2.0 * self.omega / self.epsilon).sqrt() * self.a
    }

    fn nu(&self, energy: f64) -> f64 {
        self.c * energy / (2.0 * self.omega) - 0.5
    }

    /// Interior decay rate k(E); None when the level reaches the step top.
    fn k(&self, energy: f64) -> Option<f64> {
        let k2 = self.barrier_height / (self.epsilon * self.epsilon)
            - self.c * energy / self.epsilon;
        if k2 > 0.0 {
            Some(k2.sqrt())
        } else {
            None
        }
    }
}

/// Solved lowest level pair of the model.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ModelLevels {
    pub e_even: f64,
    pub e_odd: f64,
    pub nu_even: f64,
    pub nu_odd: f64,
    pub k_even: f64,
    pub k_odd: f64,
    pub gap: f64,
    /// Even root closest to the unperturbed first excited level 3 omega/c
    /// when it differs from the lowest even root (diagnostic for strong
    /// barriers).
    pub e_even_near_excited: Option<f64>,
}

/// Overflow-safe residual of the level-matching condition, both sides
/// divided by e^(k a):
/// R(E) = k D_nu(Z) (1 -+ e^(-2ka)) - sqrt(2 omega/eps) D'_nu(Z) (1 +- e^(-2ka)),
/// upper signs for Even (cosh interior), lower for Odd (sinh interior).
pub fn transcendental_residual(params: &ModelParams, energy: f64, parity: Parity) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    let k = params.k(energy).ok_or_else(|| {
        Error::Domain(format!(
            "level c E = {} reaches the step top {}; matching form invalid",
            params.c * energy,
            params.barrier_height / params.epsilon
        ))
    })?;
    let z = params.matching_z();
    let nu = params.nu(energy);
    let pcf = pcf_d(nu, z)?;
    let damp = (-2.0 * k * params.a).exp();
    let slope_scale = (2.0 * params.omega / params.epsilon).sqrt();
    Ok(match parity {
        Parity::Even => {
            k * pcf.value * (1.0 - damp) - slope_scale * pcf.derivative * (1.0 + damp)
        }
        Parity::Odd => {
            k * pcf.value * (1.0 + damp) - slope_scale * pcf.derivative * (1.0 - damp)
        }
    })
}

/// Scan window in c E units and grid density used by [`solve_levels`].
const SCAN_LO_CE: f64 = 0.05 * OMEGA;
const SCAN_HI_CE: f64 = 5.0 * OMEGA;
const SCAN_POINTS: usize = 400;

fn lowest_roots(params: &ModelParams, parity: Parity) -> Result<Vec<f64>> {
    let mut grid = Vec::with_capacity(SCAN_POINTS);
    for i in 0..SCAN_POINTS {
        let ce = SCAN_LO_CE + (SCAN_HI_CE - SCAN_LO_CE) * i as f64 / (SCAN_POINTS - 1) as f64;
        let energy = ce / params.c;
        // Truncate the scan where the level reaches the step top.
        if params.k(energy).is_none() {
            break;
        }
        let r = transcendental_residual(params, energy, parity)?;
        grid.push((energy, r));
    }
    if grid.len() < 2 {
        return Err(Error::Domain(
            "barrier lower than the whole scan window; matching form invalid".into(),
        ));
    }
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let ((e0, r0), (e1, r1)) = (w[0], w[1]);
        if r0 == 0.0 {
            roots.push(e0);
            continue;
        }
        if r0.signum() != r1.signum() {
            let root = brent(
                |e| transcendental_residual(params, e, parity),
                e0,
                e1,
                1e-13 * e1.abs(),
                200,
            )?;
            roots.push(root);
        }
    }
    if roots.is_empty() {
        return Err(Error::NoBracket {
            message: format!("no {parity:?} level in c E window ({SCAN_LO_CE}, {SCAN_HI_CE})"),
            grid,
        });
    }
    Ok(roots)
}

/// Solves the matching condition for the lowest even and odd levels.
///
/// With a = 0 or zero step height the well is exactly harmonic and the
/// levels are omega/c and 3 omega/c (the matching equation degenerates
/// there, so they are returned directly).
pub fn solve_levels(params: &ModelParams) -> Result<ModelLevels> {
    if params.is_harmonic() {
        let e_even = params.omega / params.c;
        let e_odd = 3.0 * params.omega / params.c;
        return Ok(ModelLevels {
            e_even,
            e_odd,
            nu_even: 0.0,
            nu_odd: 1.0,
            k_even: f64::NAN,
            k_odd: f64::NAN,
            gap: e_odd - e_even,
            e_even_near_excited: None,
        });
    }
    let even_roots = lowest_roots(params, Parity::Even)?;
    let odd_roots = lowest_roots(params, Parity::Odd)?;
    let e_even = even_roots[0];
    let e_odd = odd_roots[0];
    let excited = 3.0 * params.omega / params.c;
    let near = even_roots
        .iter()
        .copied()
        .min_by(|x, y| (x - excited).abs().total_cmp(&(y - excited).abs()))
        .filter(|&e| e != e_even);
    Ok(ModelLevels {
        e_even,
        e_odd,
        nu_even: params.nu(e_even),
        nu_odd: params.nu(e_odd),
        k_even: params.k(e_even).unwrap_or(f64::NAN),
        k_odd: params.k(e_odd).unwrap_or(f64::NAN),
        gap: e_odd - e_even,
        e_even_near_excited: near,
    })
}

/// Scaling regions of the (alpha, beta) diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Constant,
    Polynomial,
    Exponential,
}

/// Region classification with the predicted n-exponents.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionInfo {
    pub region: Region,
    /// Power of n in the gap law: 1/2 - alpha - beta in the polynomial
    /// region, -beta/2 (the prefactor) in the exponential region.
    pub exponent: Option<f64>,
    /// Stretch power (2 alpha + beta - 1)/2 of the exponential region.
    pub stretch_exponent: Option<f64>,
}

/// Classifies barrier exponents: constant gap for alpha+beta <= 1/2,
/// polynomial n^(1/2-alpha-beta) for alpha+beta > 1/2 and
/// 2 alpha + beta <= 1, exponential otherwise.
pub fn classify_region(alpha: f64, beta: f64) -> Result<RegionInfo> {
    if !(alpha >= 0.0 && beta >= 0.0) {
        return Err(Error::Parameter(format!(
            "exponents must be nonnegative, got ({alpha}, {beta})"
        )));
    }
    Ok(if alpha + beta <= 0.5 {
        RegionInfo {
            region: Region::Constant,
            exponent: Some(0.0),
            stretch_exponent: None,
        }
    } else if 2.0 * alpha + beta <= 1.0 {
        RegionInfo {
            region: Region::Polynomial,
            exponent: Some(0.5 - alpha - beta),
            stretch_exponent: None,
        }
    } else {
        RegionInfo {
            region: Region::Exponential,
            exponent: Some(-0.5 * beta),
            stretch_exponent: Some(0.5 * (2.0 * alpha + beta - 1.0)),
        }
    })
}

/// Closed-form leading-order gap:
/// polynomial region  8 omega^(3/2)/(c sqrt(pi)) eps^(alpha+beta-1/2),
/// exponential region 16 omega^(3/2)/(c sqrt(pi)) eps^(beta/2)
///                    exp(-eps^(1/2-alpha-beta/2)).
pub fn asymptotic_gap(params: &ModelParams) -> Result<f64> {
    if !(params.alpha < 0.5) {
        return Err(Error::Domain(format!(
            "asymptotic forms need alpha < 1/2, got {}",
            params.alpha
        )));
    }
    let info = classify_region(params.alpha, params.beta)?;
    let prefactor = 8.0 * params.omega.powf(1.5) / (params.c * std::f64::consts::PI.sqrt());
    match info.region {
        Region::Constant => Err(Error::Domain(format!(
            "({}, {}) lies in the constant region; use the region classifier",
            params.alpha, params.beta
        ))),
        Region::Polynomial => {
            Ok(prefactor * params.epsilon.powf(params.alpha + params.beta - 0.5))
        }
        Region::Exponential => {
            let stretch = params
                .epsilon
                .powf(0.5 - params.alpha - 0.5 * params.beta);
            Ok(2.0 * prefactor * params.epsilon.powf(0.5 * params.beta) * (-stretch).exp())
        }
    }
}

/// Piecewise model eigenfunction sampled on a symmetric grid.
#[derive(Debug, Clone, Serialize)]
pub struct WavefunctionResult {
    pub x_grid: Vec<f64>,
    /// Unit L2 norm with respect to trapezoid quadrature on the grid.
    pub values: Vec<f64>,
    /// Outer-piece amplitude after normalization.
    pub a1: f64,
    /// Interior-piece amplitude after normalization.
    pub a2: f64,
    pub parity: Parity,
}

/// Assembles the three-piece eigenfunction for solved levels: parabolic
/// cylinder tails outside the step, cosh/sinh interior, value-matched at
/// x = +-a and normalized to unit L2 on the grid.
pub fn model_wavefunction(
    params: &ModelParams,
    levels: &ModelLevels,
    parity: Parity,
    x_max: f64,
    points: usize,
) -> Result<WavefunctionResult> {
    if points < 101 || points % 2 == 0 {
        return Err(Error::Parameter(format!(
            "points must be odd and >= 101, got {points}"
        )));
    }
    if !(x_max > params.a) {
        return Err(Error::Parameter(format!(
            "x_max = {x_max} must exceed the step half-width {}",
            params.a
        )));
    }
    let energy = match parity {
        Parity::Even => levels.e_even,
        Parity::Odd => levels.e_odd,
    };
    let nu = params.nu(energy);
    if (nu - match parity {
        Parity::Even => levels.nu_even,
        Parity::Odd => levels.nu_odd,
    })
    .abs()
        > 1e-9
    {
        return Err(Error::Parameter(
            "levels do not belong to these model parameters".into(),
        ));
    }
    let scale = (2.0 * params.omega / params.epsilon).sqrt();
    if scale * x_max > PCF_Z_MAX {
        return Err(Error::Parameter(format!(
            "x_max = {x_max} maps to pcf argument {} beyond {PCF_Z_MAX}; \
             reduce the window",
            scale * x_max
        )));
    }

    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    // Interior amplitude taming: write A2 (e^(kx) +- e^(-kx)) as
    // B (e^(k(x-a)) +- e^(-k(x+a))) with B = A2 e^(ka); both exponents are
    // <= 0 on [0, a], so nothing overflows.
    let (k, b_amp) = if params.is_harmonic() {
        (0.0, 0.0)
    } else {
        let k = params.k(energy).ok_or_else(|| {
            Error::Domain("level reaches the step top; no interior decay".into())
        })?;
        let z = params.matching_z();
        let matched = pcf_d(nu, z)?.value / (1.0 + sign * (-2.0 * k * params.a).exp());
        (k, matched)
    };

    let mut x_grid = Vec::with_capacity(points);
    let mut values = Vec::with_capacity(points);
    let half = (points - 1) / 2;
    for i in 0..points {
        let x = (i as i64 - half as i64) as f64 * x_max / half as f64;
        let v = if x.abs() >= params.a || params.is_harmonic() {
            let outer = pcf_d(nu, scale * x.abs())?.value;
            if x < 0.0 {
                sign * outer
            } else {
                outer
            }
        } else {
            b_amp * ((k * (x - params.a)).exp() + sign * (-k * (x + params.a)).exp())
        };
        x_grid.push(x);
        values.push(v);
    }

    // Trapezoid L2 normalization.
    let dx = x_max / half as f64;
    let mut norm2 = 0.0;
    for (i, v) in values.iter().enumerate() {
        let w = if i == 0 || i + 1 == points { 0.5 } else { 1.0 };
        norm2 += w * v * v * dx;
    }
    let norm = norm2.sqrt();
    for v in &mut values {
        *v /= norm;
    }
    Ok(WavefunctionResult {
        x_grid,
        values,
        a1: 1.0 / norm,
        a2: b_amp * (-k * params.a).exp() / norm,
        parity,
    })
}
