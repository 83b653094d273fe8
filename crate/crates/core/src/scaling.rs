//! n-sweeps of discrete, model, and asymptotic gaps with fitted scaling
//! exponents.

use serde::Serialize;

use crate::barrier::BarrierSpec;
use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::gapscan::{critical_s, gap_at, min_gap};
use crate::model::{asymptotic_gap, classify_region, solve_levels, ModelParams, Region};

/// Which schedule point the discrete gap is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SPolicy {
    /// Gap at s* exactly (the asymptotics are anchored there).
    AtCriticalS,
    /// Full minimum-gap search per n.
    GlobalMin,
}

/// Least-squares fit attached to a study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitResult {
    /// Power of n (slope on ln n for the power law; the imposed -beta/2
    /// prefactor power for the exponential form).
    pub exponent: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
    /// Stretch constant C of the exponential form, when fitted.
    pub stretch_c: Option<f64>,
    /// Imposed stretch power (1 - 2 alpha - beta)/2 of epsilon.
    pub stretch_exponent_used: Option<f64>,
}

/// One row of a scaling study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StudyRow {
    pub n: u64,
    pub epsilon: f64,
    pub gap_discrete: Option<f64>,
    pub gap_model: Option<f64>,
    pub gap_asymptotic: Option<f64>,
    /// Schedule point actually used for the discrete gap.
    pub s_used: Option<f64>,
    /// Set when the discrete solver flagged the gap as precision-limited.
    pub precision_limited: bool,
}

/// An n-sweep with its fit.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingStudy {
    pub spec: BarrierSpec,
    pub s_policy: SPolicy,
    pub rows: Vec<StudyRow>,
    /// Fit over the discrete gaps when present, otherwise the model gaps;
    /// exponential form in the exponential region, power law elsewhere.
    pub fit: Option<FitResult>,
    pub region: Region,
}

/// Geometric n grid rounded to even integers (so eps = 2/n maps onto
/// integer spins), deduplicated.
pub fn geometric_even_grid(n_min: u64, n_max: u64, points: usize) -> Result<Vec<u64>> {
    if n_min < 10 {
        return Err(Error::Parameter(format!("n_min must be >= 10, got {n_min}")));
    }
    if n_max < n_min {
        return Err(Error::Parameter(format!(
            "n_max = {n_max} below n_min = {n_min}"
        )));
    }
    if points < 3 {
        return Err(Error::Parameter(format!("points must be >= 3, got {points}")));
    }
    let ratio = (n_max as f64 / n_min as f64).ln() / (points - 1) as f64;
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let raw = n_min as f64 * (ratio * i as f64).exp();
        let even = 2 * ((raw / 2.0).round() as u64).max(n_min / 2);
        if out.last() != Some(&even) {
            out.push(even);
        }
    }
    Ok(out)
}

/// Runs the sweep. Per-point solver failures are recorded as missing
/// entries; the study fails only when every point is missing.
pub fn run_study(
    spec: &BarrierSpec,
    n_min: u64,
    n_max: u64,
    points: usize,
    s_policy: SPolicy,
    include_discrete: bool,
) -> Result<ScalingStudy> {
    spec.validate()?;
    let grid = geometric_even_grid(n_min, n_max, points)?;
    let region = classify_region(spec.alpha.max(0.0), spec.beta.max(0.0))?;

    let rows: Vec<StudyRow> = map_indexed(grid.len(), |i| {
        let n = grid[i];
        let epsilon = 2.0 / n as f64;
        let (gap_discrete, s_used, precision_limited) = if include_discrete {
            let point = match s_policy {
                SPolicy::AtCriticalS => gap_at(n, critical_s(), spec),
                SPolicy::GlobalMin => min_gap(n, spec, 200, 1e-5),
            };
            match point {
                Ok(p) => (Some(p.gap), Some(p.s), p.precision_flag),
                Err(_) => (None, None, false),
            }
        } else {
            (None, None, false)
        };
        let gap_model = ModelParams::from_spec(spec, epsilon)
            .and_then(|p| solve_levels(&p))
            .map(|l| l.gap)
            .ok();
        let gap_asymptotic = ModelParams::from_spec(spec, epsilon)
            .and_then(|p| asymptotic_gap(&p))
            .ok();
        StudyRow {
            n,
            epsilon,
            gap_discrete,
            gap_model,
            gap_asymptotic,
            s_used,
            precision_limited,
        }
    });

    let primary: Vec<(u64, f64)> = rows
        .iter()
        .filter_map(|r| r.gap_discrete.or(r.gap_model).map(|g| (r.n, g)))
        .collect();
    if primary.is_empty() {
        return Err(Error::Data {
            message: "every study point failed".into(),
            index: 0,
        });
    }
    let ns: Vec<u64> = primary.iter().map(|p| p.0).collect();
    let gs: Vec<f64> = primary.iter().map(|p| p.1).collect();
    let fit = if primary.len() >= 3 {
        match region.region {
            Region::Exponential => fit_exponential(&ns, &gs, spec.alpha, spec.beta).ok(),
            _ => fit_power_law(&ns, &gs).ok(),
        }
    } else {
        None
    };

    Ok(ScalingStudy {
        spec: *spec,
        s_policy,
        rows,
        fit,
        region: region.region,
    })
}

fn check_gaps(gaps: &[f64]) -> Result<()> {
    for (i, &g) in gaps.iter().enumerate() {
        if !(g > 0.0) {
            return Err(Error::Data {
                message: format!("gap {g} not positive"),
                index: i,
            });
        }
    }
    Ok(())
}

/// Least squares on (ln n, ln gap).
pub fn fit_power_law(n_values: &[u64], gaps: &[f64]) -> Result<FitResult> {
    if n_values.len() != gaps.len() || n_values.len() < 3 {
        return Err(Error::Parameter(format!(
            "power-law fit needs >= 3 aligned points, got {} and {}",
            n_values.len(),
            gaps.len()
        )));
    }
    check_gaps(gaps)?;
    let xs: Vec<f64> = n_values.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = gaps.iter().map(|&g| g.ln()).collect();
    let (slope, intercept, r2) = linear_fit(&xs, &ys);
    Ok(FitResult {
        exponent: slope,
        log_prefactor: intercept,
        r_squared: r2,
        stretch_c: None,
        stretch_exponent_used: None,
    })
}

/// Fits ln gap = ln K + (beta/2) ln eps - C eps^((1-2 alpha-beta)/2) with
/// the beta/2 prefactor imposed, linear in (ln K, C). eps = 2/n.
pub fn fit_exponential(
    n_values: &[u64],
    gaps: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<FitResult> {
    if 2.0 * alpha + beta <= 1.0 {
        return Err(Error::Parameter(format!(
            "exponential fit needs 2 alpha + beta > 1, got ({alpha}, {beta})"
        )));
    }
    if n_values.len() != gaps.len() || n_values.len() < 3 {
        return Err(Error::Parameter(format!(
            "exponential fit needs >= 3 aligned points, got {} and {}",
            n_values.len(),
            gaps.len()
        )));
    }
    check_gaps(gaps)?;
    let stretch_power = 0.5 * (1.0 - 2.0 * alpha - beta);
    // Regress y = ln g - (beta/2) ln eps on t = eps^stretch_power:
    // y = ln K - C t.
    let ts: Vec<f64> = n_values
        .iter()
        .map(|&n| (2.0 / n as f64).powf(stretch_power))
        .collect();
    let ys: Vec<f64> = n_values
        .iter()
        .zip(gaps)
        .map(|(&n, &g)| g.ln() - 0.5 * beta * (2.0 / n as f64).ln())
        .collect();
    let (slope, intercept, r2) = linear_fit(&ts, &ys);
    Ok(FitResult {
        exponent: -0.5 * beta,
        log_prefactor: intercept,
        r_squared: r2,
        stretch_c: Some(-slope),
        stretch_exponent_used: Some(stretch_power),
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return (0.0, my, 1.0);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    // Constant data fits exactly; define r^2 = 1 there.
    let r2 = if syy <= f64::MIN_POSITIVE {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    (slope, intercept, r2)
}
