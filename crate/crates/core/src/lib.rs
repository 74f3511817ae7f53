//! Galton's rank order statistic, the stochastic-dominance index
//! `gamma(F, G) = |{t : F^{-1}(t) > G^{-1}(t)}|`, contact analysis between
//! quantile functions, and samplers for the limit laws of the empirical index.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contact;
pub mod distmodel;
pub mod error;
pub mod fraction;
pub mod galton;
pub mod limitlaws;
pub mod oracle;
pub mod rng;
pub mod samplefile;
pub mod verify;

pub use distmodel::Distribution;
pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the compact JSON form of `value`.
pub fn content_hash<T: serde::Serialize + ?Sized>(value: &T) -> String {
    use sha2::{Digest, Sha256};
    let json = serde_json::to_string(value).expect("value serializes to JSON");
    hex::encode(Sha256::digest(json.as_bytes()))
}
