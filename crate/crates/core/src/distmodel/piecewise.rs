use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One piece `offset + slope*t + scale*|t - anchor|^power` of a quantile function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(default)]
    pub offset: f64,
    #[serde(default)]
    pub slope: f64,
    #[serde(default)]
    pub scale: f64,
    #[serde(default)]
    pub anchor: f64,
    #[serde(default = "one")]
    pub power: f64,
}

fn one() -> f64 {
    1.0
}

impl Segment {
    pub fn affine(offset: f64, slope: f64) -> Self {
        Segment {
            offset,
            slope,
            scale: 0.0,
            anchor: 0.0,
            power: 1.0,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let mut v = self.offset + self.slope * t;
        if self.scale != 0.0 {
            v += self.scale * (t - self.anchor).abs().powf(self.power);
        }
        v
    }

    /// Derivative in `t`; infinite at the anchor when `power < 1`.
    pub fn derivative(&self, t: f64) -> f64 {
        if self.scale == 0.0 {
            return self.slope;
        }
        let h = t - self.anchor;
        if h == 0.0 {
            return match self.power {
                p if p > 1.0 => self.slope,
                1.0 => self.slope + self.scale.abs(),
                _ => f64::INFINITY,
            };
        }
        self.slope + self.scale * self.power * h.abs().powf(self.power - 1.0) * h.signum()
    }
}

/// A left-continuous quantile function assembled from [`Segment`]s.
///
/// Segment `i` covers `(b_{i-1}, b_i]` with `b_0 = 0` and `b_k = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseQuantile {
    breakpoints: Vec<f64>,
    segments: Vec<Segment>,
}

const MONOTONE_PROBES: usize = 256;

impl PiecewiseQuantile {
    pub fn new(breakpoints: Vec<f64>, segments: Vec<Segment>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidDistribution(m));
        if segments.len() != breakpoints.len() + 1 {
            return invalid(format!(
                "{} breakpoints need {} segments, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                segments.len()
            ));
        }
        if breakpoints.iter().any(|b| !(*b > 0.0 && *b < 1.0)) {
            return invalid("breakpoints must lie in (0,1)".into());
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("breakpoints must be strictly increasing".into());
        }
        for s in &segments {
            let params = [s.offset, s.slope, s.scale, s.anchor, s.power];
            if params.iter().any(|v| !v.is_finite()) || s.power <= 0.0 {
                return invalid("segment parameters must be finite with power > 0".into());
            }
        }
        let q = PiecewiseQuantile {
            breakpoints,
            segments,
        };
        q.check_monotone()?;
        Ok(q)
    }

    fn bounds(&self, i: usize) -> (f64, f64) {
        let lo = if i == 0 { 0.0 } else { self.breakpoints[i - 1] };
        let hi = self.breakpoints.get(i).copied().unwrap_or(1.0);
        (lo, hi)
    }

    fn check_monotone(&self) -> Result<()> {
        let mut prev_right = f64::NEG_INFINITY;
        for (i, seg) in self.segments.iter().enumerate() {
            let (lo, hi) = self.bounds(i);
            let mut last = seg.value(lo);
            if last < prev_right - 1e-12 * prev_right.abs().max(1.0) {
                return Err(Error::InvalidDistribution(format!(
                    "quantile decreases across breakpoint {lo}"
                )));
            }
            for j in 1..=MONOTONE_PROBES {
                let t = lo + (hi - lo) * j as f64 / MONOTONE_PROBES as f64;
                let v = seg.value(t);
                if v < last - 1e-12 * last.abs().max(1.0) {
                    return Err(Error::InvalidDistribution(format!(
                        "segment {i} decreases near t={t}"
                    )));
                }
                last = v;
            }
            prev_right = last;
        }
        Ok(())
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    fn segment_index(&self, t: f64) -> usize {
        self.breakpoints.partition_point(|&b| b < t)
    }

    pub fn quantile(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        if t == 0.0 {
            return self.segments[0].value(0.0);
        }
        self.segments[self.segment_index(t)].value(t)
    }

    /// `dH/dt` at `t`, using the segment that owns `t`.
    pub fn derivative(&self, t: f64) -> f64 {
        self.segments[self.segment_index(t)].derivative(t)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        invert_quantile(|t| self.quantile(t), x)
    }

    pub fn density(&self, x: f64) -> f64 {
        let lo = self.quantile(0.0);
        let hi = self.quantile(1.0);
        if x < lo || x > hi {
            return 0.0;
        }
        let t = self.cdf(x);
        let d = self.derivative(t);
        if d.is_infinite() {
            0.0
        } else {
            1.0 / d
        }
    }
}

/// Distribution function `sup{t in (0,1): H(t) <= x}` of a quantile function `H`.
///
/// `H` must be nondecreasing; bisection runs to the resolution of `f64`.
pub fn invert_quantile(h: impl Fn(f64) -> f64, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if h(1.0) <= x {
        return 1.0;
    }
    if h(0.0) > x {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
