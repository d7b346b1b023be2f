//! 17-significant-digit float formatting for text and JSON output.
//!
//! Seventeen significant digits round-trip every `f64` exactly, so reports
//! written by one run parse back bit-identical in the next.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `v` in scientific notation with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Wrapper that serializes as a raw JSON number with 17 significant digits.
/// Non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Json17(pub f64);

impl Serialize for Json17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(sig17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// `#[serde(serialize_with = "numfmt::f64_17")]`
pub fn f64_17<S: Serializer>(v: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    Json17(*v).serialize(serializer)
}

/// `#[serde(serialize_with = "numfmt::opt_f64_17")]`
pub fn opt_f64_17<S: Serializer>(v: &Option<f64>, serializer: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => Json17(*x).serialize(serializer),
        None => serializer.serialize_none(),
    }
}

/// `#[serde(serialize_with = "numfmt::vec_f64_17")]`
pub fn vec_f64_17<S: Serializer>(v: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(v.iter().map(|&x| Json17(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, -0.0] {
            let s = sig17(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn json_numbers() {
        let s = serde_json::to_string(&[Json17(0.5), Json17(f64::NAN)]).unwrap();
        assert_eq!(s, "[5.0000000000000000e-1,null]");
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![Some(0.5), None]);
    }
}
