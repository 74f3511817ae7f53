//! Plain-text samples: one decimal value per line.
//!
//! Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};

pub fn parse_sample(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|e| Error::SampleParse {
            line: idx + 1,
            reason: format!("{line:?}: {e}"),
        })?;
        if !v.is_finite() {
            return Err(Error::SampleParse { line: idx + 1, reason: format!("{line:?} is not finite") });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(values)
}

pub fn format_sample(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reports_lines() {
        assert_eq!(parse_sample("1\n\n# note\n 2.5 \n-3e2\n").unwrap(), vec![1.0, 2.5, -300.0]);
        match parse_sample("1\nx\n") {
            Err(Error::SampleParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_sample("inf\n").is_err());
        assert!(matches!(parse_sample("\n# only\n"), Err(Error::EmptySample)));
    }

    #[test]
    fn roundtrip() {
        let v = vec![0.1, -2.0, 1e-300, 123456.789];
        assert_eq!(parse_sample(&format_sample(&v)).unwrap(), v);
    }
}
