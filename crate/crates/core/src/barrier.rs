//! Barrier cost functions on Hamming weights and their continuum image.
//!
//! The discrete cost is f(h) = h + b(h) where b is a bump of width
//! proportional to (n/2)^alpha and height proportional to (n/2)^beta,
//! centered at h = n/4. The continuum image lives on x = eps*(h - n/4)
//! with eps = 2/n and carries the 4/3 kinetic-normalization factor of the
//! quadratic-well model, so that with the default height scale 3/4 the
//! continuum bump is exactly eps^(1-beta) tall and eps^(1-alpha) wide.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bump profile of the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Rectangular,
    Gaussian,
}

/// Shape and size parameters of the barrier b(h).
///
/// `alpha` controls the width (n/2)^alpha, `beta` the height (n/2)^beta.
/// Builders accept any real exponents; the region classifier and the
/// asymptotic formulas reject exponents outside their regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    pub alpha: f64,
    pub beta: f64,
    pub shape: Shape,
    /// Barrier center as a fraction of n. The quadratic-well constants
    /// assume 1/4.
    pub center_fraction: f64,
    /// Multiplies the height (n/2)^beta. The default 3/4 cancels the 4/3
    /// of the continuum model so the continuum bump height is exactly
    /// eps^(1-beta).
    pub height_scale: f64,
    /// Multiplies the width (n/2)^alpha.
    pub width_scale: f64,
    /// Direct continuum values (half_width_x, height_v), bypassing the
    /// exponent-based mapping in [`continuum_barrier`].
    pub explicit_override: Option<(f64, f64)>,
}

impl BarrierSpec {
    /// Rectangular barrier with the given exponents and default scales.
    pub fn rectangular(alpha: f64, beta: f64) -> Self {
        BarrierSpec {
            alpha,
            beta,
            shape: Shape::Rectangular,
            center_fraction: 0.25,
            height_scale: 0.75,
            width_scale: 1.0,
            explicit_override: None,
        }
    }

    /// Gaussian barrier with the given exponents and default scales.
    pub fn gaussian(alpha: f64, beta: f64) -> Self {
        BarrierSpec {
            shape: Shape::Gaussian,
            ..Self::rectangular(alpha, beta)
        }
    }

    /// Barrier that is identically zero (height scale 0).
    pub fn zero() -> Self {
        BarrierSpec {
            height_scale: 0.0,
            ..Self::rectangular(0.0, 0.0)
        }
    }

    /// Checks the structural invariants shared by all operations.
    pub fn validate(&self) -> Result<()> {
        if !(self.height_scale >= 0.0) {
            return Err(Error::Parameter(format!(
                "height_scale must be >= 0, got {}",
                self.height_scale
            )));
        }
        if !(self.width_scale > 0.0) {
            return Err(Error::Parameter(format!(
                "width_scale must be > 0, got {}",
                self.width_scale
            )));
        }
        if !(self.center_fraction > 0.0 && self.center_fraction < 1.0) {
            return Err(Error::Parameter(format!(
                "center_fraction must lie in (0,1), got {}",
                self.center_fraction
            )));
        }
        if let Some((w, v)) = self.explicit_override {
            if !(w >= 0.0) || !(v >= 0.0) {
                return Err(Error::Parameter(format!(
                    "explicit override must be nonnegative, got ({w}, {v})"
                )));
            }
        }
        Ok(())
    }

    /// True when the barrier vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.height_scale == 0.0
    }

    /// Barrier height h_scale * (n/2)^beta.
    pub fn height(&self, n: u64) -> f64 {
        self.height_scale * (n as f64 / 2.0).powf(self.beta)
    }

    /// Full support width w_scale * (n/2)^alpha (rectangular), or the
    /// Gaussian sigma doubled, in lattice sites.
    pub fn width(&self, n: u64) -> f64 {
        self.width_scale * (n as f64 / 2.0).powf(self.alpha)
    }

    /// Barrier profile at a (possibly fractional) Hamming weight.
    ///
    /// This is the continuous extension used by the continuum map and the
    /// semiclassical potential; [`barrier_value`] restricts it to integer
    /// sites.
    pub fn profile(&self, n: u64, h: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let center = self.center_fraction * n as f64;
        let half_width = 0.5 * self.width(n);
        let height = self.height(n);
        let d = h - center;
        match self.shape {
            // Closed boundary: edge sites are O(1) out of n.
            Shape::Rectangular => {
                if d.abs() <= half_width {
                    height
                } else {
                    0.0
                }
            }
            Shape::Gaussian => height * (-d * d / (2.0 * half_width * half_width)).exp(),
        }
    }
}

/// Barrier energy b(h) at integer Hamming weight h.
///
/// Rectangular: height_scale*(n/2)^beta on |h - c*n| <= width/2, else 0.
/// Gaussian: same height times exp(-(h-c*n)^2 / (2*(width/2)^2)).
pub fn barrier_value(spec: &BarrierSpec, n: u64, h: u64) -> Result<f64> {
    if h > n {
        return Err(Error::Domain(format!(
            "Hamming weight {h} outside [0, {n}]"
        )));
    }
    Ok(spec.profile(n, h as f64))
}

/// Continuum barrier term of the quadratic-well model at position x.
///
/// For the exponent-based mapping this is (4/3)*height_scale*eps^(1-beta)
/// inside |x| < width_scale*eps^(1-alpha)/2 (rectangular; the Gaussian
/// tapers with the mapped sigma). With `explicit_override` set, the pair
/// (half_width_x, height_v) is used verbatim as a step barrier.
pub fn continuum_barrier(spec: &BarrierSpec, epsilon: f64, x: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be > 0, got {epsilon}")));
    }
    if let Some((half_width, height)) = spec.explicit_override {
        return Ok(if x.abs() < half_width { height } else { 0.0 });
    }
    if spec.is_zero() {
        return Ok(0.0);
    }
    let height = 4.0 / 3.0 * spec.height_scale * epsilon.powf(1.0 - spec.beta);
    let half_width = 0.5 * spec.width_scale * epsilon.powf(1.0 - spec.alpha);
    Ok(match spec.shape {
        Shape::Rectangular => {
            if x.abs() < half_width {
                height
            } else {
                0.0
            }
        }
        Shape::Gaussian => height * (-x * x / (2.0 * half_width * half_width)).exp(),
    })
}
