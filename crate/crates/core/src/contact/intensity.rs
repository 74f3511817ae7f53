use serde::{Deserialize, Serialize};

use crate::distmodel::Distribution;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Power fit `Delta(h) ~ C |h|^r` on one side of a contact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntensityFit {
    pub r: f64,
    pub c: f64,
    pub stderr: f64,
    /// `r` moved to the nearest multiple of 1/8 when that is within the fit's noise.
    pub r_snapped: f64,
    pub eta: f64,
    /// Number of probe points that survived the rounding-noise filter.
    pub points: usize,
}

pub const FIRST_PROBE: i32 = 3;
pub const LAST_PROBE: i32 = 14;
const NOISE_FLOOR: f64 = 1e-13;
const SNAP_GRID: f64 = 8.0;
const SNAP_MIN_TOL: f64 = 0.05;

/// `Delta(h) = F_G(t0 + h) - t0 - h`, evaluated without cancellation at `t0 = 1`.
pub fn increment(f: &Distribution, g: &Distribution, t0: f64, h: f64) -> f64 {
    let t = t0 + h;
    if t0 >= 1.0 {
        // F_G(1 - s) - 1 + s = s - (1 - F_G(1 - s))
        let s = -h;
        return s - f.sf(g.quantile(1.0 - s));
    }
    f.transform(g, t) - t0 - h
}

/// Least-squares fit of `log |Delta(h)|` on `log h` over `h = eta 2^{-j}`, `j = 3..=14`.
///
/// Probe points whose increment is at the rounding-noise level are dropped;
/// if fewer than three remain the side is reported as locally flat.
pub fn estimate_intensity(f: &Distribution, g: &Distribution, t0: f64, side: Side, eta: f64) -> Result<IntensityFit> {
    if !(eta > 0.0) {
        return Err(Error::range("eta", format!("{eta} must be positive")));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut sign_sum = 0.0;
    for j in FIRST_PROBE..=LAST_PROBE {
        let h = eta * 2f64.powi(-j);
        let t = t0 + side.sign() * h;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::range("eta", format!("probe {t} leaves [0,1] around t0 = {t0}")));
        }
        let delta = increment(f, g, t0, side.sign() * h);
        if delta.is_finite() && delta.abs() > NOISE_FLOOR {
            xs.push(h.ln());
            ys.push(delta.abs().ln());
            sign_sum += delta.signum();
        }
    }
    if xs.len() < 3 {
        return Err(Error::LocallyFlat { t0, side: side.name() });
    }
    let fit = ols(&xs, &ys);
    let c = sign_sum.signum() * fit.intercept.exp();
    Ok(IntensityFit {
        r: fit.slope,
        c,
        stderr: fit.slope_se,
        r_snapped: snap_order(fit.slope, fit.slope_se),
        eta,
        points: xs.len(),
    })
}

/// Nearest multiple of 1/8 when within `max(2 stderr, 0.05)`, otherwise `r` itself.
pub fn snap_order(r: f64, stderr: f64) -> f64 {
    let candidate = (r * SNAP_GRID).round() / SNAP_GRID;
    if (r - candidate).abs() <= (2.0 * stderr).max(SNAP_MIN_TOL) {
        candidate
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
}

pub(crate) fn ols(xs: &[f64], ys: &[f64]) -> LineFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_se = if xs.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { f64::NAN };
    LineFit { slope, intercept, slope_se }
}
