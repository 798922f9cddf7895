//! Fitness functions for binary classifiers trained on imbalanced data.
//!
//! Inputs are raw real-valued classifier outputs whose sign encodes the
//! predicted class (output > 0 means minority/positive). The caller decides
//! which examples are minority; nothing is inferred from class sizes.

use std::sync::OnceLock;

use crate::dataset::ScoredBinarySet;
use crate::error::{Error, Result};
use crate::metric::{MetricValue, Reason};
use crate::numeric;

/// Target of the scaled sigmoid for minority outputs in FFA.
pub const MINORITY_TARGET: f64 = 0.5;
/// Target of the scaled sigmoid for majority outputs in FFA.
pub const MAJORITY_TARGET: f64 = -0.5;

pub const WMW_FORMULA_NOTE: &str =
    "WMW = sum_{i in minority, j in majority} [P_i > P_j and P_i >= 0] / (N_min * N_maj)";
pub const FFA_FORMULA_NOTE: &str =
    "FFA = (s_min + s_maj)/2, s_c = 1 - sum_i (sig(P_ci) - T_c)^2 / (2 N_c), \
    T_min = 0.5, T_maj = -0.5, sig(x) = 2/(1+exp(-x)) - 1";
pub const FFC_FORMULA_NOTE: &str =
    "FFC = (r + bonus)/2, r = sqrt(sum_c N_c (mu_c - mu)^2) / sqrt(sum_c sum_i (P_ci - mu)^2), \
    bonus = 1 if mu_min > 0 and mu_maj < 0 else 0";
pub const FFD_FORMULA_NOTE: &str = "FFD = |mu_min - mu_maj| / (sigma_min + sigma_maj) * gate, \
    gate = 1 if mu_min > 0 > mu_maj else 0, sigma population form";
pub const DSCORE_FORMULA_NOTE: &str = "D = 2 C1 C2 / (C1 + C2), C1 = mean_maj [P <= 0] |sig(P)|, \
    C2 = mean_min [P > 0] |sig(P)|; D = 0 when C1 + C2 = 0";

/// `2 / (1 + e^{-x}) - 1`, an odd monotone map of the reals onto (−1, 1).
pub fn sig_scaled(x: f64) -> f64 {
    // tanh(x/2) is the same function without cancellation near zero
    (x / 2.0).tanh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassStats {
    pub mean: f64,
    /// Population standard deviation (divides by N_c).
    pub std: f64,
}

fn class_stats(values: &[f64]) -> ClassStats {
    ClassStats {
        mean: numeric::mean(values).unwrap_or(0.0),
        std: numeric::population_std(values).unwrap_or(0.0),
    }
}

/// Classifier outputs split by true class.
#[derive(Debug, Clone)]
pub struct ClassOutputs {
    minority: Vec<f64>,
    majority: Vec<f64>,
    minority_stats: OnceLock<ClassStats>,
    majority_stats: OnceLock<ClassStats>,
}

impl PartialEq for ClassOutputs {
    fn eq(&self, other: &Self) -> bool {
        self.minority == other.minority && self.majority == other.majority
    }
}

impl ClassOutputs {
    pub fn new(minority: Vec<f64>, majority: Vec<f64>) -> Result<Self> {
        if minority.is_empty() || majority.is_empty() {
            return Err(Error::InvalidInput(
                "both minority and majority outputs must be nonempty".into(),
            ));
        }
        if minority.iter().chain(&majority).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "classifier outputs must be finite".into(),
            ));
        }
        Ok(Self {
            minority,
            majority,
            minority_stats: OnceLock::new(),
            majority_stats: OnceLock::new(),
        })
    }

    /// Positive labels become the minority class.
    pub fn from_scored(data: &ScoredBinarySet) -> Result<Self> {
        let (minority, majority): (Vec<_>, Vec<_>) =
            data.iter().partition(|(l, _)| l.is_positive());
        Self::new(
            minority.into_iter().map(|(_, s)| s).collect(),
            majority.into_iter().map(|(_, s)| s).collect(),
        )
    }

    pub fn minority(&self) -> &[f64] {
        &self.minority
    }

    pub fn majority(&self) -> &[f64] {
        &self.majority
    }

    pub fn minority_stats(&self) -> ClassStats {
        *self
            .minority_stats
            .get_or_init(|| class_stats(&self.minority))
    }

    pub fn majority_stats(&self) -> ClassStats {
        *self
            .majority_stats
            .get_or_init(|| class_stats(&self.majority))
    }

    /// Classes exchanged and every output negated.
    pub fn mirrored(&self) -> Self {
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect();
        Self::new(neg(&self.majority), neg(&self.minority))
            .expect("mirror of valid outputs is valid")
    }
}

/// Wilcoxon–Mann–Whitney statistic restricted to non-negative minority
/// outputs.
pub fn wmw(data: &ClassOutputs) -> MetricValue {
    let mut majority = data.majority.clone();
    majority.sort_by(f64::total_cmp);
    // for each minority output count the majority outputs strictly below it
    let hits: u64 = data
        .minority
        .iter()
        .filter(|&&p| p >= 0.0)
        .map(|&p| majority.partition_point(|&q| q < p) as u64)
        .sum();
    let pairs = data.minority.len() as f64 * data.majority.len() as f64;
    MetricValue::defined("WMW", hits as f64 / pairs)
}

fn target_score(values: &[f64], target: f64) -> f64 {
    let sq = numeric::sum(values.iter().map(|&p| (sig_scaled(p) - target).powi(2)));
    1.0 - sq / (2.0 * values.len() as f64)
}

/// Mean over both classes of one minus the halved mean squared distance
/// between scaled outputs and the class target.
pub fn ffa(data: &ClassOutputs) -> MetricValue {
    let s_min = target_score(&data.minority, MINORITY_TARGET);
    let s_maj = target_score(&data.majority, MAJORITY_TARGET);
    MetricValue::defined("FFA", (s_min + s_maj) / 2.0)
}

/// Correlation ratio between class membership and output, averaged with a
/// sign-separation bonus.
pub fn ffc(data: &ClassOutputs) -> MetricValue {
    let pooled: Vec<f64> = data
        .minority
        .iter()
        .chain(&data.majority)
        .copied()
        .collect();
    let mu = numeric::mean(&pooled).unwrap_or(0.0);
    let total = numeric::sum(pooled.iter().map(|p| (p - mu) * (p - mu)));
    if total == 0.0 {
        return MetricValue::undefined("FFC", Reason::ZeroDenominator);
    }
    let (min, maj) = (data.minority_stats(), data.majority_stats());
    let between = data.minority.len() as f64 * (min.mean - mu).powi(2)
        + data.majority.len() as f64 * (maj.mean - mu).powi(2);
    let r = (between.sqrt() / total.sqrt()).min(1.0);
    let bonus = if min.mean > 0.0 && maj.mean < 0.0 {
        1.0
    } else {
        0.0
    };
    MetricValue::defined("FFC", (r + bonus) / 2.0)
}

/// Gap between class means over the summed class spreads, gated on the
/// means lying on the correct sides of zero.
pub fn ffd(data: &ClassOutputs) -> MetricValue {
    let (min, maj) = (data.minority_stats(), data.majority_stats());
    let spread = min.std + maj.std;
    if spread == 0.0 {
        return MetricValue::undefined("FFD", Reason::ZeroSpread);
    }
    let gate = if min.mean > 0.0 && 0.0 > maj.mean {
        1.0
    } else {
        0.0
    };
    MetricValue::defined("FFD", (min.mean - maj.mean).abs() / spread * gate)
}

/// |μ_min − μ_maj|, the shift-invariant numerator of [`ffd`].
pub fn ffd_numerator(data: &ClassOutputs) -> f64 {
    (data.minority_stats().mean - data.majority_stats().mean).abs()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DScore {
    pub value: MetricValue,
    /// Confidence-weighted correctness on the majority class.
    pub c1: f64,
    /// Confidence-weighted correctness on the minority class.
    pub c2: f64,
}

pub fn d_score(data: &ClassOutputs) -> DScore {
    let weighted = |values: &[f64], correct: fn(f64) -> bool| {
        numeric::sum(
            values
                .iter()
                .filter(|&&p| correct(p))
                .map(|&p| sig_scaled(p).abs()),
        ) / values.len() as f64
    };
    let c1 = weighted(&data.majority, |p| p <= 0.0);
    let c2 = weighted(&data.minority, |p| p > 0.0);
    let d = if c1 + c2 == 0.0 {
        0.0
    } else {
        2.0 * c1 * c2 / (c1 + c2)
    };
    DScore {
        value: MetricValue::defined("DSCORE", d),
        c1,
        c2,
    }
}
