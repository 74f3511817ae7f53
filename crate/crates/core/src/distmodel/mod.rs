//! Laws on the real line with left-continuous quantile semantics.
//!
//! Quantiles follow `F^{-1}(t) = inf{x : t <= F(x)}`, cdfs are right-continuous,
//! and both are extended to `t = 0, 1` by one-sided limits.

mod finite;
mod piecewise;
mod spec;
pub mod special;

pub use finite::{CumulativeGrid, FiniteSupport};
pub use piecewise::{invert_quantile, PiecewiseQuantile, Segment};
pub use spec::DistributionSpec;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{open_unit, stream};
use special::{normal_cdf, normal_pdf, normal_pdf_derivatives, normal_quantile, normal_sf, StudentT};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionSpec", into = "DistributionSpec")]
pub enum Distribution {
    Uniform01,
    Normal { mu: f64, sigma: f64 },
    /// Student-t with `nu` degrees of freedom, shifted by `mu`.
    StudentTShift { nu: f64, mu: f64 },
    FiniteSupport(FiniteSupport),
    /// Quantile `1/2 + sgn(t - 1/2)|t - 1/2|^r`.
    PowerCrossQuantile { r: f64 },
    /// Quantile `t + sgn(t - 1/2)|t - 1/2|^r`.
    PowerTangentQuantile { r: f64 },
    /// Sorted sample; the law puts mass `1/n` on each value.
    Empirical(Vec<f64>),
    PiecewiseQuantile(PiecewiseQuantile),
}

fn signed_pow(h: f64, r: f64) -> f64 {
    h.signum() * h.abs().powf(r)
}

impl Distribution {
    pub fn normal(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidDistribution(format!("normal needs finite mu and sigma > 0, got ({mu}, {sigma})")));
        }
        Ok(Distribution::Normal { mu, sigma })
    }

    pub fn student_t_shift(nu: f64, mu: f64) -> Result<Self> {
        if !(nu > 0.0 && nu.is_finite()) || !mu.is_finite() {
            return Err(Error::InvalidDistribution(format!("student-t needs nu > 0 and finite mu, got ({nu}, {mu})")));
        }
        Ok(Distribution::StudentTShift { nu, mu })
    }

    pub fn power_cross(r: f64) -> Result<Self> {
        check_power(r)?;
        Ok(Distribution::PowerCrossQuantile { r })
    }

    pub fn power_tangent(r: f64) -> Result<Self> {
        check_power(r)?;
        Ok(Distribution::PowerTangentQuantile { r })
    }

    /// Empirical law of `values`, sorted internally.
    pub fn empirical(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidDistribution("empirical values must be finite".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(Distribution::Empirical(values))
    }

    pub fn bernoulli(p: BigRational) -> Result<Self> {
        FiniteSupport::bernoulli(p).map(Distribution::FiniteSupport)
    }

    pub fn as_finite(&self) -> Option<&FiniteSupport> {
        match self {
            Distribution::FiniteSupport(f) => Some(f),
            _ => None,
        }
    }

    /// True for laws whose cdf is continuous.
    pub fn is_continuous(&self) -> bool {
        !matches!(self, Distribution::FiniteSupport(_) | Distribution::Empirical(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Distribution::Uniform01 => "uniform01",
            Distribution::Normal { .. } => "normal",
            Distribution::StudentTShift { .. } => "student_t_shift",
            Distribution::FiniteSupport(_) => "finite_support",
            Distribution::PowerCrossQuantile { .. } => "power_cross_quantile",
            Distribution::PowerTangentQuantile { .. } => "power_tangent_quantile",
            Distribution::Empirical(_) => "empirical",
            Distribution::PiecewiseQuantile(_) => "piecewise_quantile",
        }
    }

    pub fn quantile(&self, t: f64) -> f64 {
        if t.is_nan() {
            return f64::NAN;
        }
        let t = t.clamp(0.0, 1.0);
        match self {
            Distribution::Uniform01 => t,
            Distribution::Normal { mu, sigma } => mu + sigma * normal_quantile(t),
            Distribution::StudentTShift { nu, mu } => mu + StudentT::new(*nu).quantile(t),
            Distribution::FiniteSupport(f) => f.quantile(t),
            Distribution::PowerCrossQuantile { r } => 0.5 + signed_pow(t - 0.5, *r),
            Distribution::PowerTangentQuantile { r } => t + signed_pow(t - 0.5, *r),
            Distribution::Empirical(xs) => empirical_quantile_unchecked(xs, t),
            Distribution::PiecewiseQuantile(q) => q.quantile(t),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match self {
            Distribution::Uniform01 => x.clamp(0.0, 1.0),
            Distribution::Normal { mu, sigma } => normal_cdf((x - mu) / sigma),
            Distribution::StudentTShift { nu, mu } => StudentT::new(*nu).cdf(x - mu),
            Distribution::FiniteSupport(f) => f.cdf(x),
            Distribution::PowerCrossQuantile { r } => {
                let half_width = 0.5_f64.powf(*r);
                let h = x - 0.5;
                if h.abs() >= half_width {
                    if h < 0.0 { 0.0 } else { 1.0 }
                } else {
                    0.5 + signed_pow(h, 1.0 / r)
                }
            }
            Distribution::PowerTangentQuantile { .. } => invert_quantile(|t| self.quantile(t), x),
            Distribution::Empirical(xs) => xs.partition_point(|&v| v <= x) as f64 / xs.len() as f64,
            Distribution::PiecewiseQuantile(q) => q.cdf(x),
        }
    }

    /// Upper tail `1 - F(x)`, accurate where `F(x)` is close to 1.
    pub fn sf(&self, x: f64) -> f64 {
        match self {
            Distribution::Normal { mu, sigma } => normal_sf((x - mu) / sigma),
            Distribution::StudentTShift { nu, mu } => StudentT::new(*nu).sf(x - mu),
            _ => 1.0 - self.cdf(x),
        }
    }

    /// Lebesgue density, where the law has one.
    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(match self {
            Distribution::Uniform01 => {
                if (0.0..=1.0).contains(&x) { 1.0 } else { 0.0 }
            }
            Distribution::Normal { mu, sigma } => normal_pdf((x - mu) / sigma) / sigma,
            Distribution::StudentTShift { nu, mu } => StudentT::new(*nu).pdf(x - mu),
            Distribution::PowerCrossQuantile { r } => {
                let h = (x - 0.5).abs();
                if h > 0.5_f64.powf(*r) {
                    0.0
                } else if h == 0.0 && *r > 1.0 {
                    f64::INFINITY
                } else {
                    h.powf(1.0 / r - 1.0) / r
                }
            }
            Distribution::PowerTangentQuantile { r } => {
                if x < self.quantile(0.0) || x > self.quantile(1.0) {
                    0.0
                } else {
                    let t = self.cdf(x);
                    let h = (t - 0.5).abs();
                    let slope = if h == 0.0 {
                        if *r > 1.0 { 1.0 } else if *r == 1.0 { 2.0 } else { f64::INFINITY }
                    } else {
                        1.0 + r * h.powf(r - 1.0)
                    };
                    1.0 / slope
                }
            }
            Distribution::PiecewiseQuantile(q) => q.density(x),
            Distribution::FiniteSupport(_) | Distribution::Empirical(_) => {
                return Err(Error::NoDensity(self.name().into()))
            }
        })
    }

    /// Density derivatives `f^(k)(x)` for `k = 0..=order`, when known in closed form.
    ///
    /// `None` means the caller must fall back to numerical differentiation.
    pub fn density_derivatives(&self, x: f64, order: usize) -> Option<Vec<f64>> {
        match self {
            Distribution::Uniform01 => {
                let mut d = vec![0.0; order + 1];
                d[0] = if (0.0..=1.0).contains(&x) { 1.0 } else { 0.0 };
                Some(d)
            }
            Distribution::Normal { mu, sigma } => {
                let z = (x - mu) / sigma;
                let mut scale = 1.0 / sigma;
                Some(
                    normal_pdf_derivatives(z, order)
                        .into_iter()
                        .map(|v| {
                            let out = v * scale;
                            scale /= sigma;
                            out
                        })
                        .collect(),
                )
            }
            Distribution::StudentTShift { nu, mu } => Some(StudentT::new(*nu).pdf_derivatives(x - mu, order)),
            _ => None,
        }
    }

    /// The composite transform `F_G(t) = F(G^{-1}(t))` with `self = F`.
    pub fn transform(&self, g: &Distribution, t: f64) -> f64 {
        self.cdf(g.quantile(t))
    }

    /// Right limit `F_G(t+)`, approached through levels just above `t`.
    pub fn transform_right(&self, g: &Distribution, t: f64, eps: f64) -> f64 {
        self.transform(g, (t + eps).min(1.0))
    }

    /// Draws `n` values by inverse transform from the stream keyed by `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        self.sample_with(&mut stream(seed, &[]), n)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.quantile(open_unit(rng))).collect()
    }
}

/// `F_G(t)` for two finite laws, in exact arithmetic.
pub fn transform_exact(f: &FiniteSupport, g: &FiniteSupport, t: &BigRational) -> BigRational {
    f.cdf_exact(g.quantile_exact(t))
}

fn check_power(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidDistribution(format!("power must be positive and finite, got {r}")))
    }
}

/// Index `k` (1-based) with `X_(k)` the empirical quantile at level `t`: `k = ceil(n t)`.
pub fn empirical_rank(n: usize, t: f64) -> usize {
    let x = n as f64 * t;
    // A level `i/n` stored in floating point should still map to rank `i`.
    let nearest = x.round();
    let k = if (x - nearest).abs() <= 4.0 * f64::EPSILON * x.max(1.0) { nearest } else { x.ceil() };
    (k.max(0.0) as usize).clamp(1, n)
}

/// `X_(ceil(n t))` of a sample sorted ascending.
pub fn empirical_quantile(sorted: &[f64], t: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(empirical_quantile_unchecked(sorted, t))
}

fn empirical_quantile_unchecked(sorted: &[f64], t: f64) -> f64 {
    sorted[empirical_rank(sorted.len(), t) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn zoo() -> Vec<Distribution> {
        vec![
            Distribution::Uniform01,
            Distribution::normal(1.0, 2.0).unwrap(),
            Distribution::student_t_shift(1.0, 0.5).unwrap(),
            Distribution::student_t_shift(3.0, 0.0).unwrap(),
            Distribution::bernoulli(q(3, 10)).unwrap(),
            Distribution::FiniteSupport(
                FiniteSupport::new(vec![-1.0, 0.5, 2.0], vec![q(1, 4), q(0, 1), q(3, 4)]).unwrap(),
            ),
            Distribution::power_cross(0.5).unwrap(),
            Distribution::power_cross(2.0).unwrap(),
            Distribution::power_tangent(2.0).unwrap(),
            Distribution::empirical(vec![3.0, 1.0, 2.0, 2.0]).unwrap(),
        ]
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(Distribution::Uniform01.quantile(0.3), 0.3);
        let b = Distribution::bernoulli(q(3, 10)).unwrap();
        assert_eq!(b.quantile(0.7), 0.0);
        assert_eq!(b.quantile(0.71), 1.0);
        let pc = Distribution::power_cross(2.0).unwrap();
        assert_relative_eq!(pc.quantile(0.8), 0.5 + 0.09, max_relative = 1e-14);
        assert_relative_eq!(pc.quantile(0.2), 0.5 - 0.09, max_relative = 1e-14);
        assert_eq!(Distribution::normal(0.0, 1.0).unwrap().quantile(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn cdf_examples() {
        assert_eq!(Distribution::Uniform01.cdf(0.7), 0.7);
        let b = Distribution::bernoulli(q(3, 10)).unwrap();
        assert_relative_eq!(b.cdf(0.0), 0.7);
        let pc = Distribution::power_cross(2.0).unwrap();
        assert_relative_eq!(pc.cdf(0.59), 0.5 + 0.3, max_relative = 1e-12);
        assert_eq!(pc.cdf(0.8), 1.0);
    }

    #[test]
    fn empirical_quantile_uses_ceiling_rule() {
        assert_eq!(empirical_quantile(&[5.0], 0.7).unwrap(), 5.0);
        let s = [1.0, 2.0, 3.0];
        assert_eq!(empirical_quantile(&s, 1.0 / 3.0).unwrap(), 1.0);
        assert_eq!(empirical_quantile(&s, 1.0 / 3.0 + 1e-12).unwrap(), 2.0);
        assert_eq!(empirical_quantile(&[1.0, 3.0], 0.5).unwrap(), 1.0);
        assert_eq!(empirical_quantile(&[1.0, 3.0], 0.75).unwrap(), 3.0);
        assert!(empirical_quantile(&[], 0.5).is_err());
        for n in 1..200 {
            for i in 1..=n {
                assert_eq!(empirical_rank(n, i as f64 / n as f64), i);
            }
        }
    }

    #[test]
    fn transform_of_power_tangent_pair() {
        let g = Distribution::power_tangent(2.0).unwrap();
        for &t in &[0.1, 0.4, 0.5, 0.7] {
            let expect = (t + signed_pow(t - 0.5, 2.0)).clamp(0.0, 1.0);
            assert_relative_eq!(Distribution::Uniform01.transform(&g, t), expect, max_relative = 1e-14);
        }
    }

    #[test]
    fn bernoulli_self_transform_fixed_points() {
        let b = FiniteSupport::bernoulli(q(3, 10)).unwrap();
        // Fixed points of F_G on (0,1] are {1-p, 1}.
        let mut fixed = Vec::new();
        for i in 1..=100 {
            let t = q(i, 100);
            if transform_exact(&b, &b, &t) == t {
                fixed.push(t);
            }
        }
        assert_eq!(fixed, vec![q(7, 10), q(1, 1)]);
    }

    #[test]
    fn continuous_self_transform_is_identity() {
        for d in zoo().into_iter().filter(Distribution::is_continuous) {
            for &t in &[0.05, 0.3, 0.5, 0.77, 0.95] {
                assert!((d.transform(&d, t) - t).abs() < 1e-9, "{} at {t}", d.name());
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = Distribution::normal(0.0, 1.0).unwrap();
        assert_eq!(d.sample(50, 9), d.sample(50, 9));
        assert_ne!(d.sample(50, 9), d.sample(50, 10));
        let dirac = Distribution::FiniteSupport(FiniteSupport::dirac(2.5).unwrap());
        assert!(dirac.sample(20, 1).iter().all(|&v| v == 2.5));
        let mean = Distribution::Uniform01.sample(100_000, 4).iter().sum::<f64>() / 1e5;
        assert!((mean - 0.5).abs() < 0.01);
    }

    #[test]
    fn densities_match_cdf_slopes() {
        for d in zoo().into_iter().filter(Distribution::is_continuous) {
            for &t in &[0.2, 0.35, 0.8] {
                let x = d.quantile(t);
                let h = 1e-6 * x.abs().max(1.0);
                let fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
                assert_relative_eq!(d.density(x).unwrap(), fd, max_relative = 1e-4);
            }
        }
        assert!(Distribution::bernoulli(q(1, 2)).unwrap().density(0.0).is_err());
    }

    proptest::proptest! {
        #[test]
        fn galois_duality(idx in 0usize..10, t in 0.001f64..0.999, x in -4.0f64..4.0) {
            let d = &zoo()[idx];
            // t <= F(x)  <=>  F^{-1}(t) <= x, away from rounding at the boundary.
            let fx = d.cdf(x);
            let qt = d.quantile(t);
            if (fx - t).abs() > 1e-9 && (qt - x).abs() > 1e-9 {
                proptest::prop_assert_eq!(t <= fx, qt <= x);
            }
        }

        #[test]
        fn quantile_is_nondecreasing(idx in 0usize..10, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let d = &zoo()[idx];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            proptest::prop_assert!(d.quantile(lo) <= d.quantile(hi));
            proptest::prop_assert!(d.cdf(lo) <= d.cdf(hi));
        }

        #[test]
        fn quantile_of_cdf_is_below(idx in 0usize..10, t in 0.01f64..0.99) {
            let d = &zoo()[idx];
            let x = d.quantile(t);
            proptest::prop_assert!(d.quantile(d.cdf(x)) <= x + 1e-9 * x.abs().max(1.0));
            proptest::prop_assert!(d.cdf(x) >= t - 1e-12);
        }
    }
}
