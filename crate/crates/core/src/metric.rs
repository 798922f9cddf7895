//! Metric results with an explicit definedness status.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Machine-readable cause of an undefined metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// Some actual value is zero under a metric that divides by A_i.
    ZeroActual,
    /// |A_i| + |P_i| = 0 for some term.
    ZeroPair,
    /// Actual values have no spread about their mean.
    ConstantActual,
    /// Mean of the actual values is zero.
    ZeroMeanActual,
    /// Predicted values have no spread about their mean.
    ConstantPredicted,
    /// The series is not declared as ordered.
    UnorderedSeries,
    /// Not enough observations for the metric.
    TooShort,
    /// The one-step naive forecast has zero error.
    ZeroNaiveError,
    /// A ratio has a zero denominator.
    ZeroDenominator,
    /// Chance agreement is total (p_e = 1).
    DegenerateMarginals,
    /// Precision never equals recall along the curve.
    NoCrossing,
    /// Class spreads sum to zero.
    ZeroSpread,
    /// A probability metric was given a score outside [0, 1].
    ScoreOutOfRange,
    /// Arithmetic produced a non-finite value.
    NonFinite,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::ZeroActual => "zero_actual",
            Reason::ZeroPair => "zero_pair",
            Reason::ConstantActual => "constant_actual",
            Reason::ZeroMeanActual => "zero_mean_actual",
            Reason::ConstantPredicted => "constant_predicted",
            Reason::UnorderedSeries => "unordered_series",
            Reason::TooShort => "too_short",
            Reason::ZeroNaiveError => "zero_naive_error",
            Reason::ZeroDenominator => "zero_denominator",
            Reason::DegenerateMarginals => "degenerate_marginals",
            Reason::NoCrossing => "no_crossing",
            Reason::ZeroSpread => "zero_spread",
            Reason::ScoreOutOfRange => "score_out_of_range",
            Reason::NonFinite => "non_finite",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Defined,
    Undefined,
}

/// A metric outcome: either a finite value or an undefined status with a
/// reason. The two states are exclusive by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricValue {
    id: String,
    outcome: std::result::Result<f64, Reason>,
}

impl MetricValue {
    /// A defined value. Non-finite input is demoted to `Reason::NonFinite`.
    pub fn defined(id: impl Into<String>, value: f64) -> Self {
        let outcome = if value.is_finite() {
            Ok(value)
        } else {
            Err(Reason::NonFinite)
        };
        Self {
            id: id.into(),
            outcome,
        }
    }

    pub fn undefined(id: impl Into<String>, reason: Reason) -> Self {
        Self {
            id: id.into(),
            outcome: Err(reason),
        }
    }

    pub(crate) fn from_outcome(
        id: impl Into<String>,
        outcome: std::result::Result<f64, Reason>,
    ) -> Self {
        match outcome {
            Ok(v) => Self::defined(id, v),
            Err(r) => Self::undefined(id, r),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn value(&self) -> Option<f64> {
        self.outcome.ok()
    }

    pub fn reason(&self) -> Option<Reason> {
        self.outcome.err()
    }

    pub fn status(&self) -> Status {
        match self.outcome {
            Ok(_) => Status::Defined,
            Err(_) => Status::Undefined,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.outcome.is_ok()
    }

    /// The value, or an [`Error::Definedness`](crate::Error::Definedness)
    /// naming the metric and reason.
    pub fn require(&self) -> crate::Result<f64> {
        self.outcome
            .map_err(|r| crate::Error::Definedness(format!("{} is undefined ({})", self.id, r)))
    }

    pub fn outcome(&self) -> std::result::Result<f64, Reason> {
        self.outcome
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            Ok(v) => write!(f, "{} = {}", self.id, v),
            Err(r) => write!(f, "{} undefined ({})", self.id, r),
        }
    }
}

/// Ratio helper used throughout: zero denominator yields the given reason.
#[inline]
pub(crate) fn ratio(num: f64, den: f64, reason: Reason) -> std::result::Result<f64, Reason> {
    if den == 0.0 {
        Err(reason)
    } else {
        Ok(num / den)
    }
}
