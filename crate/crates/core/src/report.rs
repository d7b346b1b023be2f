use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Tolerance;
use crate::numfmt::{self, sig17};

/// One evaluated inequality `lhs >= rhs`.
///
/// `satisfied` holds when `gap >= -slack` and `equality` when
/// `|gap| <= slack`, with `slack = tol.slack(lhs, rhs)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub label: Cow<'static, str>,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub lhs: f64,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub rhs: f64,
    #[serde(serialize_with = "numfmt::f64_17")]
    pub gap: f64,
    pub satisfied: bool,
    pub equality: bool,
}

impl BoundReport {
    pub fn new(label: impl Into<Cow<'static, str>>, lhs: f64, rhs: f64, tol: &Tolerance) -> Self {
        let gap = lhs - rhs;
        let slack = tol.slack(lhs, rhs);
        // NaN gaps fail both flags.
        let satisfied = gap >= -slack;
        let equality = gap.abs() <= slack;
        BoundReport {
            label: label.into(),
            lhs,
            rhs,
            gap,
            satisfied,
            equality,
        }
    }

    /// `rhs / lhs`, or `None` when `lhs <= 0`.
    pub fn tightness(&self) -> Option<f64> {
        (self.lhs > 0.0).then(|| self.rhs / self.lhs)
    }

    /// Gap divided by the larger side's magnitude; zero when both sides vanish.
    pub fn relative_gap(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale > 0.0 {
            self.gap / scale
        } else {
            0.0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} lhs={} rhs={} gap={} {}{}",
            self.label,
            sig17(self.lhs),
            sig17(self.rhs),
            sig17(self.gap),
            if self.satisfied { "ok" } else { "VIOLATED" },
            if self.equality { " (equality)" } else { "" },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let tol = Tolerance::default();
        let r = BoundReport::new("t", 1.0, 1.0 + 1e-10, &tol);
        assert!(r.satisfied && r.equality);
        let r = BoundReport::new("t", 1.0, 1.0 + 1e-6, &tol);
        assert!(!r.satisfied && !r.equality);
        let r = BoundReport::new("t", 2.0, 1.0, &tol);
        assert!(r.satisfied && !r.equality);
        assert_eq!(r.gap, 1.0);
        let r = BoundReport::new("t", f64::NAN, 1.0, &tol);
        assert!(!r.satisfied && !r.equality);
    }

    #[test]
    fn json_shape() {
        let r = BoundReport::new("schwarz", 1.0, 0.5, &Tolerance::default());
        let s = r.to_json();
        assert_eq!(
            s,
            r#"{"label":"schwarz","lhs":1.0000000000000000e0,"rhs":5.0000000000000000e-1,"gap":5.0000000000000000e-1,"satisfied":true,"equality":false}"#
        );
        let back: BoundReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
