//! Threshold-sweep and ranking metrics.
//!
//! Scores are swept in descending order and equal scores form a single
//! threshold step, so a tied positive/negative pair moves the ROC curve
//! diagonally. With that convention the trapezoidal AUC equals the pairwise
//! ranking probability with ties counted as one half.

use crate::dataset::{Label, ScoredBinarySet};
use crate::error::{Error, Result};
use crate::metric::{MetricValue, Reason};
use crate::numeric;

/// Fixed sliding-window length for the calibration error.
pub const CAL_WINDOW: usize = 100;

/// Cumulative (threshold, tp, fp) after each distinct score, descending.
fn sweep(data: &ScoredBinarySet) -> Vec<(f64, u64, u64)> {
    let mut order: Vec<usize> = (0..data.len()).collect();
    let scores = data.scores();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut steps: Vec<(f64, u64, u64)> = Vec::new();
    let (mut tp, mut fp) = (0u64, 0u64);
    for (pos, &i) in order.iter().enumerate() {
        match data.labels()[i] {
            Label::Positive => tp += 1,
            Label::Negative => fp += 1,
        }
        let last_of_group = order
            .get(pos + 1)
            .is_none_or(|&next| scores[next] != scores[i]);
        if last_of_group {
            steps.push((scores[i], tp, fp));
        }
    }
    steps
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Scores `>=` this are predicted positive; `+inf` at the origin.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    points: Vec<RocPoint>,
}

impl RocCurve {
    /// Validates the curve invariants: starts at (0,0), ends at (1,1),
    /// both coordinates in [0,1] and non-decreasing.
    pub fn from_points(points: Vec<RocPoint>) -> Result<Self> {
        let ok_range = points
            .iter()
            .all(|p| (0.0..=1.0).contains(&p.fpr) && (0.0..=1.0).contains(&p.tpr));
        let monotone = points
            .windows(2)
            .all(|w| w[1].fpr >= w[0].fpr && w[1].tpr >= w[0].tpr);
        let ends = matches!(
            (points.first(), points.last()),
            (Some(f), Some(l)) if f.fpr == 0.0 && f.tpr == 0.0 && l.fpr == 1.0 && l.tpr == 1.0
        );
        if points.len() < 2 || !ok_range || !monotone || !ends {
            return Err(Error::InvalidInput("not a valid ROC curve".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }
}

pub fn roc_curve(data: &ScoredBinarySet) -> Result<RocCurve> {
    let (p, n) = (data.positives(), data.negatives());
    if p == 0 || n == 0 {
        return Err(Error::Definedness(format!(
            "ROC needs both classes; got {p} positives and {n} negatives"
        )));
    }
    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: f64::INFINITY,
    }];
    points.extend(sweep(data).into_iter().map(|(threshold, tp, fp)| RocPoint {
        fpr: fp as f64 / n as f64,
        tpr: tp as f64 / p as f64,
        threshold,
    }));
    Ok(RocCurve { points })
}

/// Trapezoidal area under the ROC curve.
pub fn auc(curve: &RocCurve) -> MetricValue {
    let area = numeric::sum(
        curve
            .points
            .windows(2)
            .map(|w| 0.5 * (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr)),
    );
    MetricValue::defined("AUC", area)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub recall: f64,
    pub precision: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrCurve {
    points: Vec<PrPoint>,
}

impl PrCurve {
    /// Validates: coordinates in [0,1], recall non-decreasing and equal to 1
    /// at the final point.
    pub fn from_points(points: Vec<PrPoint>) -> Result<Self> {
        let ok_range = points
            .iter()
            .all(|p| (0.0..=1.0).contains(&p.recall) && (0.0..=1.0).contains(&p.precision));
        let monotone = points.windows(2).all(|w| w[1].recall >= w[0].recall);
        let ends = points.last().is_some_and(|p| p.recall == 1.0);
        if !ok_range || !monotone || !ends {
            return Err(Error::InvalidInput(
                "not a valid precision-recall curve".into(),
            ));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[PrPoint] {
        &self.points
    }
}

/// Precision-recall curve. The leading recall-0 point carries the precision
/// of the highest threshold; nothing is extrapolated.
pub fn pr_curve(data: &ScoredBinarySet) -> Result<PrCurve> {
    let p = data.positives();
    if p == 0 {
        return Err(Error::Definedness(
            "precision-recall needs at least one positive".into(),
        ));
    }
    let steps = sweep(data);
    let precision = |tp: u64, fp: u64| tp as f64 / (tp + fp) as f64;
    let (_, tp0, fp0) = steps[0];
    let mut points = vec![PrPoint {
        recall: 0.0,
        precision: precision(tp0, fp0),
        threshold: f64::INFINITY,
    }];
    points.extend(steps.into_iter().map(|(threshold, tp, fp)| PrPoint {
        recall: tp as f64 / p as f64,
        precision: precision(tp, fp),
        threshold,
    }));
    Ok(PrCurve { points })
}

/// AP = Σ (R_n − R_{n−1}) · P_n over the threshold sweep, with R_0 = 0.
pub fn average_precision(data: &ScoredBinarySet) -> Result<MetricValue> {
    let p = data.positives();
    if p == 0 {
        return Err(Error::Definedness(
            "average precision needs at least one positive".into(),
        ));
    }
    let mut prev_tp = 0u64;
    let mut acc = numeric::CompensatedSum::new();
    for (_, tp, fp) in sweep(data) {
        if tp > prev_tp {
            acc.add((tp - prev_tp) as f64 / p as f64 * (tp as f64 / (tp + fp) as f64));
        }
        prev_tp = tp;
    }
    Ok(MetricValue::defined("AP", acc.total()))
}

/// Value where precision equals recall, by linear interpolation between the
/// first bracketing pair of points along increasing recall.
pub fn break_even_point(curve: &PrCurve) -> MetricValue {
    let gap = |p: &PrPoint| p.precision - p.recall;
    for (i, point) in curve.points.iter().enumerate() {
        let d0 = gap(point);
        if d0 == 0.0 {
            return MetricValue::defined("BEP", point.recall);
        }
        if let Some(next) = curve.points.get(i + 1) {
            let d1 = gap(next);
            if d1 != 0.0 && (d0 < 0.0) != (d1 < 0.0) {
                let t = d0 / (d0 - d1);
                return MetricValue::defined(
                    "BEP",
                    point.recall + t * (next.recall - point.recall),
                );
            }
        }
    }
    MetricValue::undefined("BEP", Reason::NoCrossing)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftReport {
    pub value: MetricValue,
    pub fraction: f64,
    /// Number of observations counted as "above" the threshold.
    pub top_count: usize,
    /// True when the score at the cut is shared with an excluded item, so
    /// input order decided membership.
    pub tie_at_cut: bool,
}

/// Share of all positives inside the top ⌈fraction·n⌉ scores, divided by
/// `fraction`.
pub fn lift(data: &ScoredBinarySet, fraction: f64) -> Result<LiftReport> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Usage(format!(
            "lift fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let n = data.len();
    let top_count = ((fraction * n as f64).ceil() as usize).clamp(1, n);
    let scores = data.scores();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal scores keep input order
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let tie_at_cut = top_count < n && scores[order[top_count - 1]] == scores[order[top_count]];
    let positives = data.positives();
    let value = if positives == 0 {
        MetricValue::undefined("LIFT", Reason::ZeroDenominator)
    } else {
        let hits = order[..top_count]
            .iter()
            .filter(|&&i| data.labels()[i].is_positive())
            .count();
        MetricValue::defined("LIFT", hits as f64 / positives as f64 / fraction)
    };
    Ok(LiftReport {
        value,
        fraction,
        top_count,
        tie_at_cut,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub window_errors: Vec<f64>,
    pub cal: f64,
    pub window_size: usize,
}

/// Sliding-window calibration error: sort ascending by score (ties keep
/// input order), then for every run of 100 consecutive cases take
/// |observed positive rate − mean score| and average over windows.
pub fn calibration_error(data: &ScoredBinarySet) -> Result<CalibrationReport> {
    let n = data.len();
    if n < CAL_WINDOW {
        return Err(Error::TooFewObservations {
            needed: CAL_WINDOW,
            got: n,
        });
    }
    if let Some(i) = data.first_non_probability() {
        return Err(Error::Data {
            row: i + 1,
            column: "score".into(),
            message: format!("score {} is not a probability in [0, 1]", data.scores()[i]),
        });
    }
    let scores = data.scores();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let sorted_scores: Vec<f64> = order.iter().map(|&i| scores[i]).collect();
    let sorted_pos: Vec<u32> = order
        .iter()
        .map(|&i| u32::from(data.labels()[i].is_positive()))
        .collect();

    let window_errors: Vec<f64> = (0..=n - CAL_WINDOW)
        .map(|start| {
            let range = start..start + CAL_WINDOW;
            let observed = sorted_pos[range.clone()].iter().sum::<u32>() as f64 / CAL_WINDOW as f64;
            let predicted = numeric::sum(sorted_scores[range].iter().copied()) / CAL_WINDOW as f64;
            (observed - predicted).abs()
        })
        .collect();
    let cal = numeric::sum(window_errors.iter().copied()) / window_errors.len() as f64;
    Ok(CalibrationReport {
        window_errors,
        cal,
        window_size: CAL_WINDOW,
    })
}
