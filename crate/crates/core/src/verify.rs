//! Monte Carlo harness: scaled index differences, distances to limit-law
//! samples, and log-log regression of the convergence rate.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contact::{find_contacts, ols, DEFAULT_BUDGET};
use crate::distmodel::special::StudentT;
use crate::distmodel::Distribution;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::galton::{empirical_index, empirical_measure_on, localized_with_population, population_index, window_population};
use crate::limitlaws::LimitLawSpec;
use crate::rng::{derive_seed, stream};

/// Stream tag for limit-law reference draws, kept apart from size indices.
const LIMIT_STREAM: u64 = u64::MAX;
const MIN_REPS: usize = 100;
pub const MIN_RATE_SIZES: usize = 4;
/// Required spread of `n + m` across the rate ladder, in decades.
pub const MIN_RATE_DECADES: f64 = 1.0;

pub const DEFAULT_LADDER: [usize; 5] = [250, 500, 1000, 2000, 4000];

pub fn default_sizes() -> Vec<(usize, usize)> {
    DEFAULT_LADDER.iter().map(|&n| (n, n)).collect()
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// Two-sample Kolmogorov-Smirnov distance; tied values are stepped over together.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut best) = (0, 0, 0.0f64);
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(best)
}

/// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
pub fn ks_one_sample(a: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptySample);
    }
    let a = sorted(a);
    let n = a.len() as f64;
    Ok(a.iter().enumerate().fold(0.0f64, |best, (i, &x)| {
        let u = cdf(x);
        best.max((i + 1) as f64 / n - u).max(u - i as f64 / n)
    }))
}

/// Wasserstein-1 distance between two empirical laws, `int_0^1 |A^{-1}(t) - B^{-1}(t)| dt`,
/// computed exactly on the merged grid of both quantile steps.
pub fn wasserstein1(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as u128, b.len() as u128);
    let (mut i, mut j, mut pos, mut total) = (0usize, 0usize, 0u128, 0.0);
    let l = na * nb;
    while pos < l {
        let end = ((i as u128 + 1) * nb).min((j as u128 + 1) * na);
        total += (end - pos) as f64 * (a[i] - b[j]).abs();
        if end == (i as u128 + 1) * nb {
            i += 1;
        }
        if end == (j as u128 + 1) * na {
            j += 1;
        }
        pos = end;
    }
    Ok(total / l as f64)
}

/// Linear-interpolation sample quantile of a sorted slice.
pub fn quantile_sorted(s: &[f64], p: f64) -> f64 {
    let h = (s.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    s[lo] + (h - lo as f64) * (s[hi] - s[lo])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub median: f64,
    pub iqr: f64,
    pub min: f64,
    pub max: f64,
}

impl SampleSummary {
    pub fn of(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::EmptySample);
        }
        let s = sorted(xs);
        let n = s.len() as f64;
        let mean = s.iter().sum::<f64>() / n;
        let variance = if s.len() > 1 { s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        Ok(SampleSummary {
            count: s.len(),
            mean,
            variance,
            median: quantile_sorted(&s, 0.5),
            iqr: quantile_sorted(&s, 0.75) - quantile_sorted(&s, 0.25),
            min: s[0],
            max: s[s.len() - 1],
        })
    }
}

/// Scaling applied to `gamma_hat - gamma`: `(n + m)^s` or `(n m / (n + m))^s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Scaling {
    SumPower { exponent: Fraction },
    Harmonic { exponent: Fraction },
}

impl Scaling {
    pub fn factor(&self, n: usize, m: usize) -> f64 {
        let (n, m) = (n as f64, m as f64);
        match self {
            Scaling::SumPower { exponent } => (n + m).powf(exponent.to_f64()),
            Scaling::Harmonic { exponent } => (n * m / (n + m)).powf(exponent.to_f64()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Statistic {
    /// `gamma(F_n, G_m) - gamma(F, G)`.
    #[default]
    Global,
    /// The deficiency restricted to `(t0 - eta, t0 + eta)`.
    Localized { t0: f64, eta: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    Ks,
    Wasserstein1,
    #[default]
    Both,
}

fn default_reps() -> usize {
    1000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "F")]
    pub f: Distribution,
    #[serde(rename = "G")]
    pub g: Distribution,
    #[serde(default = "default_sizes")]
    pub sizes: Vec<(usize, usize)>,
    #[serde(default = "default_reps")]
    pub reps: usize,
    pub scaling: Scaling,
    #[serde(default)]
    pub statistic: Statistic,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<LimitLawSpec>,
    /// Reference draws from the limit law; defaults to `reps`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_reps: Option<usize>,
    pub seed: u64,
    #[serde(default)]
    pub distance: DistanceKind,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps < MIN_REPS {
            return Err(Error::Config(format!("reps = {} is below the minimum of {MIN_REPS}", self.reps)));
        }
        if self.sizes.is_empty() {
            return Err(Error::Config("no sample sizes given".into()));
        }
        if let Some(&(n, m)) = self.sizes.iter().find(|(n, m)| *n == 0 || *m == 0) {
            return Err(Error::Config(format!("size ({n}, {m}) leaves n/(n+m) outside (0,1)")));
        }
        if let Statistic::Localized { t0, eta } = self.statistic {
            if !(eta > 0.0 && t0 - eta >= 0.0 && t0 + eta <= 1.0) {
                return Err(Error::Config(format!("window ({}, {}) leaves [0,1]", t0 - eta, t0 + eta)));
            }
        }
        if let Some(limit) = &self.limit {
            limit.validate()?;
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        crate::content_hash(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub slope: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    /// `(n + m, IQR)` per size.
    pub points: Vec<(usize, f64)>,
}

/// OLS of `log IQR` on `log(n + m)` with a 95% t-interval for the slope.
pub fn fit_rate(points: &[(usize, f64)]) -> Result<RateEstimate> {
    if points.len() < MIN_RATE_SIZES {
        return Err(Error::Config(format!("rate needs at least {MIN_RATE_SIZES} sizes, got {}", points.len())));
    }
    let lo = points.iter().map(|p| p.0).min().unwrap_or(1) as f64;
    let hi = points.iter().map(|p| p.0).max().unwrap_or(1) as f64;
    if (hi / lo).log10() < MIN_RATE_DECADES {
        return Err(Error::Config(format!(
            "sizes span {:.2} decades of n + m; at least {MIN_RATE_DECADES} needed",
            (hi / lo).log10()
        )));
    }
    if let Some(&(total, _)) = points.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::ExactRegime { total });
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let fit = ols(&xs, &ys);
    let t = StudentT::new((points.len() - 2) as f64).quantile(0.975);
    Ok(RateEstimate {
        slope: fit.slope,
        stderr: fit.slope_se,
        ci95: (fit.slope - t * fit.slope_se, fit.slope + t * fit.slope_se),
        points: points.to_vec(),
    })
}

/// Centering terms, computed once per experiment.
enum Target {
    Global { gamma: f64 },
    Localized { t0: f64, eta: f64, population: f64 },
}

impl Target {
    fn new(f: &Distribution, g: &Distribution, statistic: &Statistic) -> Result<Self> {
        Ok(match *statistic {
            Statistic::Global => Target::Global { gamma: population_index(f, g)?.value },
            Statistic::Localized { t0, eta } => Target::Localized { t0, eta, population: window_population(f, g, t0, eta)? },
        })
    }

    fn centering(&self) -> f64 {
        match *self {
            Target::Global { gamma } => gamma,
            Target::Localized { population, .. } => population,
        }
    }

    fn difference(&self, xs: &[f64], ys: &[f64]) -> Result<f64> {
        match *self {
            Target::Global { gamma } => Ok(empirical_index(xs, ys)?.gamma_hat.to_f64() - gamma),
            Target::Localized { t0, eta, population } => Ok(localized_with_population(xs, ys, t0, eta, population)?.value),
        }
    }
}

/// Unscaled differences for every size; replication `k` at size index `i`
/// draws from the stream keyed by `(seed, i, k)`.
fn simulate(f: &Distribution, g: &Distribution, target: &Target, sizes: &[(usize, usize)], reps: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let jobs: Vec<(usize, usize)> = (0..sizes.len()).flat_map(|i| (0..reps).map(move |k| (i, k))).collect();
    let flat: Vec<f64> = jobs
        .par_iter()
        .map(|&(i, k)| {
            let (n, m) = sizes[i];
            let mut rng = stream(seed, &[i as u64, k as u64]);
            let xs = f.sample_with(&mut rng, n);
            let ys = g.sample_with(&mut rng, m);
            target.difference(&xs, &ys)
        })
        .collect::<Result<_>>()?;
    Ok(flat.chunks(reps).map(<[f64]>::to_vec).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeResult {
    pub n: usize,
    pub m: usize,
    pub scale: f64,
    pub summary: SampleSummary,
    pub raw_iqr: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wasserstein1: Option<f64>,
    /// Scaled draws, kept for CSV export.
    #[serde(skip)]
    pub samples: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub version: String,
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub seed: u64,
    pub limit_seed: Option<u64>,
    pub centering: f64,
    pub sizes: Vec<SizeResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_summary: Option<SampleSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_hash: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<RateEstimate>,
    /// Why no rate was fitted, when it was not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_note: Option<String>,
    /// Distance at the largest size is at most the distance at the smallest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_shrinks: Option<bool>,
    #[serde(skip)]
    pub limit_samples: Vec<f64>,
}

/// Wall-clock timing, reported separately so reports stay reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub simulate_seconds: f64,
    pub limit_seconds: f64,
}

pub fn run_convergence_experiment(cfg: &ExperimentConfig) -> Result<(ExperimentReport, Timing)> {
    cfg.validate()?;
    let target = Target::new(&cfg.f, &cfg.g, &cfg.statistic)?;
    let clock = Instant::now();
    let raw = simulate(&cfg.f, &cfg.g, &target, &cfg.sizes, cfg.reps, cfg.seed)?;
    let simulate_time = clock.elapsed();

    let clock = Instant::now();
    let limit_seed = cfg.limit.as_ref().map(|_| derive_seed(cfg.seed, &[LIMIT_STREAM]));
    let limit_samples = match (&cfg.limit, limit_seed) {
        (Some(spec), Some(s)) => spec.sample(cfg.limit_reps.unwrap_or(cfg.reps), s)?,
        _ => Vec::new(),
    };
    let limit_time = clock.elapsed();

    let want_ks = matches!(cfg.distance, DistanceKind::Ks | DistanceKind::Both);
    let want_w1 = matches!(cfg.distance, DistanceKind::Wasserstein1 | DistanceKind::Both);
    let mut sizes = Vec::with_capacity(raw.len());
    let mut rate_points = Vec::with_capacity(raw.len());
    for (&(n, m), diffs) in cfg.sizes.iter().zip(&raw) {
        let scale = cfg.scaling.factor(n, m);
        let samples: Vec<f64> = diffs.iter().map(|d| d * scale).collect();
        let raw_iqr = SampleSummary::of(diffs)?.iqr;
        rate_points.push((n + m, raw_iqr));
        let has_limit = !limit_samples.is_empty();
        sizes.push(SizeResult {
            n,
            m,
            scale,
            summary: SampleSummary::of(&samples)?,
            raw_iqr,
            ks: (has_limit && want_ks).then(|| ks_two_sample(&samples, &limit_samples)).transpose()?,
            wasserstein1: (has_limit && want_w1).then(|| wasserstein1(&samples, &limit_samples)).transpose()?,
            samples,
        });
    }
    let (rate, rate_note) = match fit_rate(&rate_points) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let distance_shrinks = match (sizes.first(), sizes.last()) {
        (Some(a), Some(b)) if sizes.len() > 1 => a.ks.zip(b.ks).or(a.wasserstein1.zip(b.wasserstein1)).map(|(x, y)| y <= x),
        _ => None,
    };
    let report = ExperimentReport {
        version: crate::VERSION.to_string(),
        config: cfg.clone(),
        config_hash: cfg.hash(),
        seed: cfg.seed,
        limit_seed,
        centering: target.centering(),
        sizes,
        limit_summary: if limit_samples.is_empty() { None } else { Some(SampleSummary::of(&limit_samples)?) },
        limit_hash: cfg.limit.as_ref().map(LimitLawSpec::hash),
        rate,
        rate_note,
        distance_shrinks,
        limit_samples,
    };
    let secs = Duration::as_secs_f64;
    Ok((report, Timing { simulate_seconds: secs(&simulate_time), limit_seconds: secs(&limit_time) }))
}

/// Slope of `log IQR(gamma_hat - gamma)` against `log(n + m)`.
pub fn estimate_rate(f: &Distribution, g: &Distribution, sizes: &[(usize, usize)], reps: usize, seed: u64) -> Result<RateEstimate> {
    let target = Target::new(f, g, &Statistic::Global)?;
    let raw = simulate(f, g, &target, sizes, reps, seed)?;
    let points = sizes
        .iter()
        .zip(&raw)
        .map(|(&(n, m), d)| Ok((n + m, SampleSummary::of(d)?.iqr)))
        .collect::<Result<Vec<_>>>()?;
    fit_rate(&points)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub n: usize,
    pub m: usize,
    /// Intervals of the fixed-point set `{t : F_G(t) = t}` of positive length.
    pub contact_set: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    pub max_abs: f64,
    pub median: f64,
    pub q90: f64,
}

/// `gamma(F_n, G_m) - gamma(F, G) - |{F_n^{-1} > G_m^{-1}} ∩ contact set|` per replication.
///
/// For two finite laws the fixed-point set of `F_G` is finite, so only the
/// first two terms remain; otherwise the set is taken from the contact scan.
pub fn decomposition_residual(f: &Distribution, g: &Distribution, n: usize, m: usize, reps: usize, seed: u64) -> Result<ResidualSample> {
    if n == 0 || m == 0 || reps == 0 {
        return Err(Error::range("sizes", format!("n = {n}, m = {m}, reps = {reps} must be positive")));
    }
    let contact_set = if f.as_finite().is_some() && g.as_finite().is_some() {
        Vec::new()
    } else {
        find_contacts(f, g, DEFAULT_BUDGET)?.flat_segments
    };
    let gamma = population_index(f, g)?.value;
    let residuals: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, &[k]);
            let xs = sorted(&f.sample_with(&mut rng, n));
            let ys = sorted(&g.sample_with(&mut rng, m));
            let hat = empirical_index(&xs, &ys)?.gamma_hat.to_f64();
            Ok(hat - gamma - empirical_measure_on(&xs, &ys, &contact_set))
        })
        .collect::<Result<_>>()?;
    let mut abs: Vec<f64> = residuals.iter().map(|r| r.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let s = sorted(&residuals);
    Ok(ResidualSample {
        n,
        m,
        contact_set,
        max_abs: abs.last().copied().unwrap_or(0.0),
        median: quantile_sorted(&s, 0.5),
        q90: quantile_sorted(&s, 0.9),
        residuals,
    })
}

/// Whether `values` never increase by more than `slack` from one entry to the next.
pub fn non_increasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1].partial_cmp(&(w[0] + slack)) != Some(Ordering::Greater))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn ks_examples() {
        assert_eq!(ks_two_sample(&[0.0], &[1.0]).unwrap(), 1.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), 0.0);
        // Ties across samples move both CDFs at once.
        assert_eq!(ks_two_sample(&[1.0, 1.0], &[1.0, 2.0]).unwrap(), 0.5);
        assert!(ks_two_sample(&[], &[1.0]).is_err());
        assert!((ks_one_sample(&[0.5], |x| x).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn wasserstein_examples() {
        assert_eq!(wasserstein1(&[0.0], &[1.0]).unwrap(), 1.0);
        assert_eq!(wasserstein1(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), 0.0);
        // [0, 3] against [1]: half the mass moves 1, half moves 2.
        assert_eq!(wasserstein1(&[0.0, 3.0], &[1.0]).unwrap(), 1.5);
        assert!(wasserstein1(&[0.0], &[]).is_err());
    }

    #[test]
    fn uniform_samples_are_close() {
        let u = Distribution::Uniform01;
        let d = ks_two_sample(&u.sample(10_000, 1), &u.sample(10_000, 2)).unwrap();
        assert!(d <= 1.36 * (2.0f64 / 10_000.0).sqrt(), "{d}");
    }

    #[test]
    fn rate_fit_recovers_power_law() {
        let pts: Vec<(usize, f64)> = [500, 1000, 2000, 4000, 8000].iter().map(|&s| (s, 3.0 * (s as f64).powf(-0.25))).collect();
        let r = fit_rate(&pts).unwrap();
        assert!((r.slope + 0.25).abs() < 1e-12);
        assert!(fit_rate(&pts[..3]).is_err());
        let flat: Vec<(usize, f64)> = pts.iter().map(|&(s, _)| (s, 0.0)).collect();
        assert!(matches!(fit_rate(&flat), Err(Error::ExactRegime { .. })));
    }

    #[test]
    fn residual_vanishes_for_equal_continuous_laws() {
        let f = Distribution::normal(0.0, 1.0).unwrap();
        let r = decomposition_residual(&f, &f, 37, 53, 200, 4).unwrap();
        assert_eq!(r.contact_set, vec![(0.0, 1.0)]);
        assert!(r.residuals.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn residual_vanishes_for_disjoint_supports() {
        let f = Distribution::Uniform01;
        let g = Distribution::normal(10.0, 0.1).unwrap();
        for (a, b) in [(&f, &g), (&g, &f)] {
            let r = decomposition_residual(a, b, 20, 30, 100, 5).unwrap();
            assert!(r.residuals.iter().all(|&x| x == 0.0), "{r:?}");
        }
    }

    fn config(limit: Option<LimitLawSpec>) -> ExperimentConfig {
        ExperimentConfig {
            f: Distribution::Uniform01,
            g: Distribution::Uniform01,
            sizes: vec![(20, 20), (80, 80)],
            reps: 200,
            scaling: Scaling::SumPower { exponent: Fraction(BigRational::from_integer(0.into())) },
            statistic: Statistic::Global,
            limit,
            limit_reps: Some(400),
            seed: 11,
            distance: DistanceKind::Both,
        }
    }

    #[test]
    fn experiment_is_reproducible() {
        let limit = LimitLawSpec::OccupationOnSet { set: vec![(0.0, 1.0)], grid: 1024 };
        let cfg = config(Some(limit));
        let (a, _) = run_convergence_experiment(&cfg).unwrap();
        let (b, _) = run_convergence_experiment(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.sizes[0].samples, b.sizes[0].samples);
        assert!(a.rate.is_none() && a.rate_note.is_some());
        for s in &a.sizes {
            assert!((0.0..=1.0).contains(&s.ks.unwrap()));
        }
    }

    #[test]
    fn config_round_trip_and_validation() {
        let cfg = config(None);
        let json = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(cfg, back);
        assert_eq!(cfg.hash(), back.hash());
        let mut few = cfg.clone();
        few.reps = 10;
        assert!(few.validate().is_err());
    }

    #[test]
    fn strict_dominance_collapses_to_zero() {
        let mut cfg = config(None);
        cfg.g = Distribution::normal(5.0, 0.1).unwrap();
        cfg.scaling = Scaling::SumPower { exponent: Fraction(BigRational::new(1.into(), 2.into())) };
        let (r, _) = run_convergence_experiment(&cfg).unwrap();
        assert!(r.sizes.iter().all(|s| s.samples.iter().all(|&x| x == 0.0)));
    }
}
