//! Confusion-matrix rates, composite scores, probabilistic losses and
//! vector distances for classifiers.
//!
//! Any zero denominator yields an undefined [`MetricValue`] with
//! [`Reason::ZeroDenominator`]; composite metrics propagate undefinedness
//! from their constituents.

use crate::dataset::{ConfusionMatrix2, ConfusionMatrixK, PairedSeries, ScoredBinarySet};
use crate::error::{Error, Result};
use crate::metric::{ratio, MetricValue, Reason};
use crate::numeric;

/// Symmetric clamp applied to probabilities before taking logs.
pub const PROBABILITY_CLAMP: f64 = 1e-15;

type Outcome = std::result::Result<f64, Reason>;

fn frac(num: u64, den: u64) -> Outcome {
    ratio(num as f64, den as f64, Reason::ZeroDenominator)
}

/// The eight basic rates of a 2×2 confusion matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSet {
    pub tpr: MetricValue,
    pub tnr: MetricValue,
    pub ppv: MetricValue,
    pub npv: MetricValue,
    pub fpr: MetricValue,
    pub fnr: MetricValue,
    pub fdr: MetricValue,
    pub for_rate: MetricValue,
}

impl RateSet {
    pub fn iter(&self) -> impl Iterator<Item = &MetricValue> {
        [
            &self.tpr,
            &self.tnr,
            &self.ppv,
            &self.npv,
            &self.fpr,
            &self.fnr,
            &self.fdr,
            &self.for_rate,
        ]
        .into_iter()
    }
}

pub fn rates(m: &ConfusionMatrix2) -> RateSet {
    let (tp, fp, fn_, tn) = (m.tp(), m.fp(), m.fn_(), m.tn());
    RateSet {
        tpr: MetricValue::from_outcome("TPR", frac(tp, tp + fn_)),
        tnr: MetricValue::from_outcome("TNR", frac(tn, tn + fp)),
        ppv: MetricValue::from_outcome("PPV", frac(tp, tp + fp)),
        npv: MetricValue::from_outcome("NPV", frac(tn, tn + fn_)),
        fpr: MetricValue::from_outcome("FPR", frac(fp, fp + tn)),
        fnr: MetricValue::from_outcome("FNR", frac(fn_, fn_ + tp)),
        fdr: MetricValue::from_outcome("FDR", frac(fp, fp + tp)),
        for_rate: MetricValue::from_outcome("FOR", frac(fn_, fn_ + tn)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodRatios {
    pub lr_plus: MetricValue,
    pub lr_minus: MetricValue,
    pub dor: MetricValue,
}

/// LR+ = TPR/FPR, LR− = FNR/TNR, DOR = LR+/LR− = (TP·TN)/(FP·FN).
///
/// Evaluated on integer cross products so the fixtures come out exact.
pub fn likelihood_ratios(m: &ConfusionMatrix2) -> LikelihoodRatios {
    let (tp, fp, fn_, tn) = (
        m.tp() as u128,
        m.fp() as u128,
        m.fn_() as u128,
        m.tn() as u128,
    );
    let (pos, neg) = (tp + fn_, fp + tn);
    let cross = |num: u128, den: u128| -> Outcome {
        if pos == 0 || neg == 0 {
            Err(Reason::ZeroDenominator)
        } else {
            ratio(num as f64, den as f64, Reason::ZeroDenominator)
        }
    };
    let lr_plus = cross(tp * neg, fp * pos);
    let lr_minus = cross(fn_ * neg, tn * pos);
    let dor = match (lr_plus, lr_minus) {
        (Ok(_), Ok(_)) => ratio((tp * tn) as f64, (fp * fn_) as f64, Reason::ZeroDenominator),
        (Err(r), _) | (_, Err(r)) => Err(r),
    };
    LikelihoodRatios {
        lr_plus: MetricValue::from_outcome("LR_PLUS", lr_plus),
        lr_minus: MetricValue::from_outcome("LR_MINUS", lr_minus),
        dor: MetricValue::from_outcome("DOR", dor),
    }
}

/// (TP + TN) / total. Assumes equal misclassification costs.
pub fn accuracy(m: &ConfusionMatrix2) -> MetricValue {
    MetricValue::from_outcome("ACC", frac(m.tp() + m.tn(), m.total()))
}

/// Trace over total of a K-class table.
pub fn accuracy_k(m: &ConfusionMatrixK) -> MetricValue {
    MetricValue::from_outcome("ACC", frac(m.trace(), m.total()))
}

/// Weighted harmonic mean of precision and recall,
/// `(1+β²)·TP / ((1+β²)·TP + β²·FN + FP)`.
pub fn f_beta(m: &ConfusionMatrix2, beta: f64) -> Result<MetricValue> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Usage(format!(
            "beta must be a positive real, got {beta}"
        )));
    }
    let id = if beta == 1.0 {
        "F1".to_string()
    } else if beta == 2.0 {
        "F2".to_string()
    } else {
        format!("F_BETA({beta})")
    };
    if m.tp() == 0 {
        // precision and recall are each zero or undefined
        return Ok(MetricValue::undefined(id, Reason::ZeroDenominator));
    }
    let b2 = beta * beta;
    let tp = m.tp() as f64;
    let num = (1.0 + b2) * tp;
    Ok(MetricValue::defined(
        id,
        num / (num + b2 * m.fn_() as f64 + m.fp() as f64),
    ))
}

/// Matthews correlation coefficient.
pub fn mcc(m: &ConfusionMatrix2) -> MetricValue {
    let (tp, fp, fn_, tn) = (m.tp() as f64, m.fp() as f64, m.fn_() as f64, m.tn() as f64);
    let factors = [tp + fp, tp + fn_, tn + fp, tn + fn_];
    if factors.contains(&0.0) {
        return MetricValue::undefined("MCC", Reason::ZeroDenominator);
    }
    let num = (m.tp() as i128 * m.tn() as i128 - m.fp() as i128 * m.fn_() as i128) as f64;
    let den = factors.iter().product::<f64>().sqrt();
    MetricValue::defined("MCC", (num / den).clamp(-1.0, 1.0))
}

/// Bookmaker informedness (TPR + TNR − 1) and markedness (PPV + NPV − 1).
///
/// Both are evaluated as one integer fraction, e.g. BM =
/// (TP·N + TN·P − P·N) / (P·N), so rational fixtures come out exact.
pub fn informedness_markedness(m: &ConfusionMatrix2) -> (MetricValue, MetricValue) {
    let (tp, fp, fn_, tn) = (
        m.tp() as i128,
        m.fp() as i128,
        m.fn_() as i128,
        m.tn() as i128,
    );
    let combine = |x: i128, dx: i128, y: i128, dy: i128| -> Outcome {
        if dx == 0 || dy == 0 {
            return Err(Reason::ZeroDenominator);
        }
        Ok((x * dy + y * dx - dx * dy) as f64 / (dx * dy) as f64)
    };
    (
        MetricValue::from_outcome("BM", combine(tp, tp + fn_, tn, tn + fp)),
        MetricValue::from_outcome("MK", combine(tp, tp + fp, tn, tn + fn_)),
    )
}

/// `w·TPR + (1−w)·TNR`, with the positive class taken as the minority.
pub fn average_class_accuracy(m: &ConfusionMatrix2, w: f64) -> Result<MetricValue> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::Usage(format!("weight must lie in (0, 1), got {w}")));
    }
    let r = rates(m);
    let outcome = (|| -> Outcome { Ok(w * r.tpr.outcome()? + (1.0 - w) * r.tnr.outcome()?) })();
    Ok(MetricValue::from_outcome("ACA", outcome))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalancedAccuracy {
    pub value: MetricValue,
    /// Classes with no actual instances, excluded from the mean.
    pub excluded_classes: Vec<String>,
}

/// Mean per-class recall over classes that occur in the actual labels.
pub fn balanced_accuracy(m: &ConfusionMatrixK) -> BalancedAccuracy {
    let mut recalls = Vec::with_capacity(m.k());
    let mut excluded_classes = Vec::new();
    for c in 0..m.k() {
        match frac(m.get(c, c), m.row_total(c)) {
            Ok(r) => recalls.push(r),
            Err(_) => excluded_classes.push(m.classes()[c].clone()),
        }
    }
    // the type invariant guarantees at least one nonempty row
    let value = numeric::sum(recalls.iter().copied()) / recalls.len() as f64;
    BalancedAccuracy {
        value: MetricValue::defined("BA", value),
        excluded_classes,
    }
}

/// Cohen's κ = (p_o − p_e) / (1 − p_e), evaluated on integer counts.
pub fn cohen_kappa(m: &ConfusionMatrixK) -> MetricValue {
    let total = m.total() as u128;
    let chance: u128 = (0..m.k())
        .map(|c| m.row_total(c) as u128 * m.column_total(c) as u128)
        .sum();
    let observed = total * m.trace() as u128;
    let den = total * total - chance;
    if den == 0 {
        return MetricValue::undefined("KAPPA", Reason::DegenerateMarginals);
    }
    let num = observed as f64 - chance as f64;
    MetricValue::defined("KAPPA", num / den as f64)
}

/// Fraction of positions where the labels disagree.
pub fn hamming_loss<S: PartialEq>(actual: &[S], predicted: &[S]) -> Result<MetricValue> {
    if actual.len() != predicted.len() {
        return Err(Error::InvalidInput(format!(
            "{} actual labels but {} predicted",
            actual.len(),
            predicted.len()
        )));
    }
    if actual.is_empty() {
        return Err(Error::EmptyInput);
    }
    let right = actual.iter().zip(predicted).filter(|(a, p)| a == p).count();
    // same expression as accuracy, so the complement holds bit for bit
    Ok(MetricValue::defined(
        "HAMMING",
        1.0 - right as f64 / actual.len() as f64,
    ))
}

/// Per-observation class probabilities with the index of the true class.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    rows: Vec<Vec<f64>>,
    true_class: Vec<usize>,
}

impl ProbabilityMatrix {
    pub fn new(rows: Vec<Vec<f64>>, true_class: Vec<usize>) -> Result<Self> {
        if rows.len() != true_class.len() {
            return Err(Error::InvalidInput(format!(
                "{} probability rows but {} true classes",
                rows.len(),
                true_class.len()
            )));
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        let k = rows[0].len();
        if k < 2 {
            return Err(Error::Schema("need at least 2 classes".into()));
        }
        for (i, (row, &c)) in rows.iter().zip(&true_class).enumerate() {
            let bad = |message: String| Error::Data {
                row: i + 1,
                column: "probabilities".into(),
                message,
            };
            if row.len() != k {
                return Err(bad(format!(
                    "expected {k} probabilities, got {}",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                return Err(bad(format!("probability {p} outside [0, 1]")));
            }
            let total = numeric::sum(row.iter().copied());
            if (total - 1.0).abs() > 1e-9 {
                return Err(bad(format!("probabilities sum to {total}")));
            }
            if c >= k {
                return Err(bad(format!("true class {c} out of range for {k} classes")));
            }
        }
        Ok(Self { rows, true_class })
    }

    /// The two-column matrix `[1 − s, s]` induced by binary scores.
    pub fn from_binary(data: &ScoredBinarySet) -> Result<Self> {
        check_probabilities(data)?;
        let rows = data.scores().iter().map(|&s| vec![1.0 - s, s]).collect();
        let true_class = data
            .labels()
            .iter()
            .map(|l| usize::from(l.is_positive()))
            .collect();
        Self::new(rows, true_class)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn true_class_probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows
            .iter()
            .zip(&self.true_class)
            .map(|(row, &c)| row[c])
    }
}

/// −ln p with the symmetric clamp; exactly 0 for p = 1.
fn neg_log(p: f64) -> f64 {
    if p == 1.0 {
        0.0
    } else {
        -p.clamp(PROBABILITY_CLAMP, 1.0 - PROBABILITY_CLAMP).ln()
    }
}

fn check_probabilities(data: &ScoredBinarySet) -> Result<()> {
    match data.first_non_probability() {
        Some(i) => Err(Error::Data {
            row: i + 1,
            column: "score".into(),
            message: format!("score {} is not a probability in [0, 1]", data.scores()[i]),
        }),
        None => Ok(()),
    }
}

/// Mean negative log-likelihood of the true class.
pub fn log_loss(probs: &ProbabilityMatrix) -> MetricValue {
    let total = numeric::sum(probs.true_class_probabilities().map(neg_log));
    MetricValue::defined("LOG_LOSS", total / probs.len() as f64)
}

/// Binary cross-entropy of positive-class probabilities.
pub fn mean_cross_entropy(data: &ScoredBinarySet) -> Result<MetricValue> {
    check_probabilities(data)?;
    let total = numeric::sum(
        data.iter()
            .map(|(label, s)| neg_log(if label.is_positive() { s } else { 1.0 - s })),
    );
    Ok(MetricValue::defined("MXE", total / data.len() as f64))
}

/// Mean squared difference between forecast probability and the 0/1 outcome.
pub fn brier_score(data: &ScoredBinarySet) -> Result<MetricValue> {
    check_probabilities(data)?;
    let total = numeric::sum(data.iter().map(|(label, s)| {
        let e = label.indicator() - s;
        e * e
    }));
    Ok(MetricValue::defined("BRIER", total / data.len() as f64))
}

/// Mean of `max(0, 1 − q·y)` with q = ±1 from the label and y the score.
pub fn hinge_loss(data: &ScoredBinarySet) -> MetricValue {
    let total = numeric::sum(data.iter().map(|(label, y)| {
        let q = if label.is_positive() { 1.0 } else { -1.0 };
        (1.0 - q * y).max(0.0)
    }));
    MetricValue::defined("HINGE", total / data.len() as f64)
}

/// Canberra distance, Σ|A_i − P_i| / (|A_i| + |P_i|).
pub fn canberra(data: &PairedSeries) -> MetricValue {
    let outcome = data
        .pairs()
        .map(|(a, p)| ratio((a - p).abs(), a.abs() + p.abs(), Reason::ZeroDenominator))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(numeric::sum);
    MetricValue::from_outcome("CANBERRA", outcome)
}

/// Wave Hedges distance, Σ|A_i − P_i| / max(A_i, P_i). Intended for
/// non-negative vectors; see [`has_negative_values`].
pub fn wave_hedges(data: &PairedSeries) -> MetricValue {
    let outcome = data
        .pairs()
        .map(|(a, p)| ratio((a - p).abs(), a.max(p), Reason::ZeroDenominator))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(numeric::sum);
    MetricValue::from_outcome("WAVE_HEDGES", outcome)
}

pub fn has_negative_values(data: &PairedSeries) -> bool {
    data.pairs().any(|(a, p)| a < 0.0 || p < 0.0)
}
