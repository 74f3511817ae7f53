use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid fraction {input:?}: {reason}")]
    InvalidFraction { input: String, reason: String },

    #[error("line {line}: {reason}")]
    SampleParse { line: usize, reason: String },

    #[error("empty sample")]
    EmptySample,

    #[error("sample sizes differ ({n} vs {m}); the rank count needs equal sizes")]
    SizeMismatch { n: usize, m: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("scan budget exhausted; unresolved interval ({lo}, {hi})")]
    ScanBudget { lo: f64, hi: f64 },

    #[error("increment vanishes on the probed grid at t0={t0} ({side} side): locally flat")]
    LocallyFlat { t0: f64, side: &'static str },

    #[error("contact order exceeds kmax={0}")]
    OrderExceedsKmax(usize),

    #[error("density not available for {0}")]
    NoDensity(String),

    #[error("horizon rule failed to certify termination: {0}")]
    Horizon(String),

    #[error("exact regime: interquartile range of the differences vanishes at n + m = {total}")]
    ExactRegime { total: usize },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}
