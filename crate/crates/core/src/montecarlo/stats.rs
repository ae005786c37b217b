use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.5758293035489;

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let x = successes as f64;
    let z2 = z * z;
    let center = (x + z2 / 2.0) / (n + z2);
    let half = z / (n + z2) * (x * (n - x) / n + z2 / 4.0).sqrt();
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Least-squares line through `(ln p, ln rate)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; zero when the points are collinear.
    pub slope_stderr: f64,
    pub used: Vec<f64>,
    /// Physical rates dropped because no failure was observed there.
    pub excluded: Vec<f64>,
}

/// Fits `rate ≈ C·p^slope`. Points with zero rate are excluded and listed;
/// at least three usable points are required.
pub fn fit_scaling(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let (usable, zero): (Vec<_>, Vec<_>) = points.iter().partition(|(_, r)| *r > 0.0);
    for &(p, _) in &usable {
        if p <= 0.0 {
            return invalid(format!("cannot fit a log-log line through p = {p}"));
        }
    }
    if usable.len() < 3 {
        return invalid(format!(
            "need at least 3 points with failures to fit a slope, have {}",
            usable.len()
        ));
    }
    let xs: Vec<f64> = usable.iter().map(|(p, _)| p.ln()).collect();
    let ys: Vec<f64> = usable.iter().map(|(_, r)| r.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("all points share one p value");
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let slope_stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(ScalingFit {
        slope,
        intercept,
        slope_stderr,
        used: usable.iter().map(|(p, _)| *p).collect(),
        excluded: zero.iter().map(|(p, _)| *p).collect(),
    })
}
