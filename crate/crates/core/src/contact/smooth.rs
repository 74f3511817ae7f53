use serde::{Deserialize, Serialize};

use crate::distmodel::Distribution;
use crate::error::{Error, Result};

/// Order and leading derivative of `h(t) = F_G(t) - t` at a smooth contact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothContactInfo {
    pub k: usize,
    pub h_derivative: f64,
    pub x0: f64,
    /// True when some density derivative came from finite differences.
    pub numerical: bool,
}

const ANALYTIC_TOL: f64 = 1e-7;
const NUMERIC_TOL: f64 = 1e-4;

/// Density derivatives `f^(j)(x)` for `j = 0..=order`, analytic when available,
/// otherwise right-sided finite differences with one Richardson step.
fn derivatives(d: &Distribution, x: f64, order: usize) -> Result<(Vec<f64>, bool)> {
    if let Some(v) = d.density_derivatives(x, order) {
        return Ok((v, false));
    }
    let f0 = d.density(x)?;
    let scale = x.abs().max(1.0);
    let mut out = vec![f0];
    for j in 1..=order {
        let step = 1e-3 * 4f64.powi(j as i32 - 1) * scale;
        let coarse = forward_difference(d, x, j, step)?;
        let fine = forward_difference(d, x, j, step / 2.0)?;
        out.push(2.0 * fine - coarse);
    }
    Ok((out, true))
}

fn forward_difference(d: &Distribution, x: f64, order: usize, step: f64) -> Result<f64> {
    let mut acc = 0.0;
    let mut binom = 1.0;
    for i in 0..=order {
        let sign = if (order - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * binom * d.density(x + i as f64 * step)?;
        binom = binom * (order - i) as f64 / (i + 1) as f64;
    }
    Ok(acc / step.powi(order as i32))
}

/// Smallest `k <= kmax` with `h^(k)(t0)` away from zero, using
/// `h'(t0) = f/g - 1` and `h^(k)(t0) = (f^(k-1) - g^(k-1)) / f^k` at `x0 = F^{-1}(t0)`.
pub fn smooth_contact_constants(f: &Distribution, g: &Distribution, t0: f64, kmax: usize) -> Result<SmoothContactInfo> {
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::range("t0", format!("{t0} must lie in (0,1)")));
    }
    if kmax == 0 {
        return Err(Error::range("kmax", "must be at least 1"));
    }
    let x0 = f.quantile(t0);
    let order = kmax - 1;
    let (fd, num_f) = derivatives(f, x0, order)?;
    let (gd, num_g) = derivatives(g, x0, order)?;
    let numerical = num_f || num_g;
    let f0 = fd[0];
    if !(f0 > 0.0 && f0.is_finite() && gd[0] > 0.0) {
        return Err(Error::NoDensity(format!("density vanishes or is unbounded at x0 = {x0}")));
    }
    let tol = if numerical { NUMERIC_TOL } else { ANALYTIC_TOL } * f0;
    if (fd[0] - gd[0]).abs() > tol {
        return Ok(SmoothContactInfo { k: 1, h_derivative: f0 / gd[0] - 1.0, x0, numerical });
    }
    for k in 2..=kmax {
        let diff = fd[k - 1] - gd[k - 1];
        if diff.abs() > tol {
            return Ok(SmoothContactInfo { k, h_derivative: diff / f0.powi(k as i32), x0, numerical });
        }
    }
    Err(Error::OrderExceedsKmax(kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distmodel::{PiecewiseQuantile, Segment};

    #[test]
    fn density_ratio_gives_first_order() {
        // Uniform on (1/4, 3/4) meets the uniform law on (0, 1) at t0 = 1/2 with f = 2 g.
        let f = Distribution::PiecewiseQuantile(PiecewiseQuantile::new(vec![], vec![Segment::affine(0.25, 0.5)]).unwrap());
        let info = smooth_contact_constants(&f, &Distribution::Uniform01, 0.5, 3).unwrap();
        assert_eq!(info.k, 1);
        assert!((info.h_derivative - 1.0).abs() < 1e-9);
    }

    #[test]
    fn identical_laws_exceed_kmax() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        assert!(matches!(smooth_contact_constants(&f, &f, 0.5, 4), Err(Error::OrderExceedsKmax(4))));
    }

    #[test]
    fn tangent_example_has_second_order() {
        let g = Distribution::power_tangent(2.0).unwrap();
        let info = smooth_contact_constants(&Distribution::Uniform01, &g, 0.5, 3).unwrap();
        assert_eq!(info.k, 2);
        assert!((info.h_derivative - 2.0).abs() < 1e-3, "{info:?}");
        assert!(info.numerical);
    }

    #[test]
    fn normal_scale_pair_crosses_at_median() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        let g = Distribution::normal(0.0, 2.0).unwrap();
        let info = smooth_contact_constants(&f, &g, 0.5, 3).unwrap();
        assert_eq!(info.k, 1);
        assert!((info.h_derivative - 1.0).abs() < 1e-12);
        assert!(!info.numerical);
    }
}
