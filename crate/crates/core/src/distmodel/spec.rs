use serde::{Deserialize, Serialize};

use super::{Distribution, FiniteSupport, PiecewiseQuantile, Segment};
use crate::error::Error;
use crate::fraction::Fraction;

/// JSON form of a [`Distribution`], tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    Uniform01 {},
    Normal {
        #[serde(default)]
        mu: f64,
        #[serde(default = "unit")]
        sigma: f64,
    },
    StudentTShift {
        nu: f64,
        #[serde(default)]
        mu: f64,
    },
    FiniteSupport {
        atoms: Vec<f64>,
        probs: Vec<Fraction>,
    },
    /// Shorthand for a law on `{0, 1}` with `P(X = 1) = p`.
    Bernoulli { p: Fraction },
    PowerCrossQuantile { r: f64 },
    PowerTangentQuantile { r: f64 },
    Empirical { values: Vec<f64> },
    PiecewiseQuantile {
        #[serde(default)]
        breakpoints: Vec<f64>,
        segments: Vec<Segment>,
    },
}

fn unit() -> f64 {
    1.0
}

impl TryFrom<DistributionSpec> for Distribution {
    type Error = Error;

    fn try_from(spec: DistributionSpec) -> Result<Self, Error> {
        match spec {
            DistributionSpec::Uniform01 {} => Ok(Distribution::Uniform01),
            DistributionSpec::Normal { mu, sigma } => Distribution::normal(mu, sigma),
            DistributionSpec::StudentTShift { nu, mu } => Distribution::student_t_shift(nu, mu),
            DistributionSpec::FiniteSupport { atoms, probs } => {
                FiniteSupport::new(atoms, probs.into_iter().map(|p| p.0).collect()).map(Distribution::FiniteSupport)
            }
            DistributionSpec::Bernoulli { p } => Distribution::bernoulli(p.0),
            DistributionSpec::PowerCrossQuantile { r } => Distribution::power_cross(r),
            DistributionSpec::PowerTangentQuantile { r } => Distribution::power_tangent(r),
            DistributionSpec::Empirical { values } => Distribution::empirical(values),
            DistributionSpec::PiecewiseQuantile { breakpoints, segments } => {
                PiecewiseQuantile::new(breakpoints, segments).map(Distribution::PiecewiseQuantile)
            }
        }
    }
}

impl From<Distribution> for DistributionSpec {
    fn from(d: Distribution) -> Self {
        match d {
            Distribution::Uniform01 => DistributionSpec::Uniform01 {},
            Distribution::Normal { mu, sigma } => DistributionSpec::Normal { mu, sigma },
            Distribution::StudentTShift { nu, mu } => DistributionSpec::StudentTShift { nu, mu },
            Distribution::FiniteSupport(f) => DistributionSpec::FiniteSupport {
                atoms: f.atoms().to_vec(),
                probs: f.probs().iter().cloned().map(Fraction).collect(),
            },
            Distribution::PowerCrossQuantile { r } => DistributionSpec::PowerCrossQuantile { r },
            Distribution::PowerTangentQuantile { r } => DistributionSpec::PowerTangentQuantile { r },
            Distribution::Empirical(values) => DistributionSpec::Empirical { values },
            Distribution::PiecewiseQuantile(q) => DistributionSpec::PiecewiseQuantile {
                breakpoints: q.breakpoints().to_vec(),
                segments: q.segments().to_vec(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let cases = [
            r#"{"kind":"uniform01"}"#,
            r#"{"kind":"normal","mu":0,"sigma":2}"#,
            r#"{"kind":"student_t_shift","nu":1,"mu":1}"#,
            r#"{"kind":"finite_support","atoms":[0,1,2],"probs":["1/8","3/8","1/2"]}"#,
            r#"{"kind":"bernoulli","p":"3/10"}"#,
            r#"{"kind":"power_cross_quantile","r":0.5}"#,
            r#"{"kind":"power_tangent_quantile","r":2}"#,
            r#"{"kind":"empirical","values":[3,1,2]}"#,
            r#"{"kind":"piecewise_quantile","breakpoints":[0.5],"segments":[{"slope":1},{"offset":1,"slope":1}]}"#,
        ];
        for c in cases {
            let d: Distribution = serde_json::from_str(c).unwrap_or_else(|e| panic!("{c}: {e}"));
            let again: Distribution = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
            assert_eq!(d, again);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        for c in [
            r#"{"kind":"normal","sigma":0}"#,
            r#"{"kind":"finite_support","atoms":[0,1],"probs":["1/2","1/3"]}"#,
            r#"{"kind":"power_cross_quantile","r":-1}"#,
            r#"{"kind":"empirical","values":[]}"#,
            r#"{"kind":"gamma","shape":2}"#,
            r#"{"kind":"uniform01","extra":1}"#,
        ] {
            assert!(serde_json::from_str::<Distribution>(c).is_err(), "{c}");
        }
    }
}
