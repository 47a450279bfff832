use serde::Serialize;

use super::{montecarlo, quadrature, IntegrationMethod, QuadratureOptions, RadialModel, VerifyError};
use crate::catalog::ProductSpec;

/// `ln V(T)` with its standard error (zero for quadrature).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub log_volume: f64,
    pub log_stderr: f64,
}

/// Fitted growth rate of `ln V(T)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub radii: Vec<f64>,
    pub log_volumes: Vec<f64>,
    pub log_volume_stderrs: Vec<f64>,
    /// Least-squares slope of `ln V` against `T` over the fit window.
    pub slope: f64,
    pub slope_stderr: f64,
    /// Root-mean-square residual of the fit.
    pub fit_residual: f64,
    /// Number of trailing radii used in the fit.
    pub fit_window: usize,
    pub method: IntegrationMethod,
}

/// `ln` of the frame-normalized volume of the geodesic ball of radius `T`
/// about the origin.
pub fn log_ball_volume(
    target: impl Into<ProductSpec>,
    radius: f64,
    method: IntegrationMethod,
) -> Result<VolumeEstimate, VerifyError> {
    let model = RadialModel::new(&target.into());
    log_volume(&model, radius, method)
}

/// Frame-normalized volume `V(T)`; overflows to infinity for very large
/// balls, where [`log_ball_volume`] stays finite.
pub fn ball_volume(target: impl Into<ProductSpec>, radius: f64, method: IntegrationMethod) -> Result<f64, VerifyError> {
    Ok(log_ball_volume(target, radius, method)?.log_volume.exp())
}

fn log_volume(model: &RadialModel, radius: f64, method: IntegrationMethod) -> Result<VolumeEstimate, VerifyError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(VerifyError::NonPositiveRadius(radius));
    }
    match method {
        IntegrationMethod::Quadrature => Ok(VolumeEstimate {
            log_volume: quadrature::log_volume(model, radius, &QuadratureOptions::default())?,
            log_stderr: 0.0,
        }),
        IntegrationMethod::MonteCarlo { samples, seed } => montecarlo::log_volume(model, radius, samples, seed),
    }
}

/// The default fit uses the top 40% of the radii, and at least 4 of them.
pub fn default_fit_window(len: usize) -> usize {
    ((len as f64 * 0.4).ceil() as usize).max(4).min(len)
}

/// Estimates the entropy as the slope of `ln V(T)` over the last
/// `fit_window` radii (default [`default_fit_window`]).
pub fn growth_entropy(
    target: impl Into<ProductSpec>,
    radii: &[f64],
    method: IntegrationMethod,
    fit_window: Option<usize>,
) -> Result<GrowthEstimate, VerifyError> {
    let window = fit_window.unwrap_or_else(|| default_fit_window(radii.len()));
    if window < 4 || window > radii.len() {
        return Err(VerifyError::FitWindow { window, len: radii.len() });
    }
    if let Some(&bad) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(VerifyError::NonPositiveRadius(bad));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VerifyError::RadiiNotIncreasing);
    }

    let model = RadialModel::new(&target.into());
    let mut log_volumes = Vec::with_capacity(radii.len());
    let mut log_volume_stderrs = Vec::with_capacity(radii.len());
    for &r in radii {
        let v = log_volume(&model, r, method)?;
        log_volumes.push(v.log_volume);
        log_volume_stderrs.push(v.log_stderr);
    }

    let start = radii.len() - window;
    let (slope, slope_stderr, fit_residual) = fit_line(&radii[start..], &log_volumes[start..])?;
    Ok(GrowthEstimate {
        radii: radii.to_vec(),
        log_volumes,
        log_volume_stderrs,
        slope,
        slope_stderr,
        fit_residual,
        fit_window: window,
        method,
    })
}

/// Ordinary least squares; returns the slope, its standard error and the
/// RMS residual.
fn fit_line(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64), VerifyError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx <= 0.0 || x.len() < 2 {
        return Err(VerifyError::FitDegenerate);
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = if x.len() > 2 { (ssr / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok((slope, stderr, (ssr / n).sqrt()))
}
