//! Multi-criteria model validation: the Golbraikh–Tropsha slope criterion,
//! Roy's Rm, the observation/parameter adequacy ratio, a train/validation
//! objective and a min-max reference index across candidate models.
//!
//! Inside these procedures "R²" is the squared Pearson correlation between
//! actual and predicted values.

use std::collections::BTreeSet;

use crate::dataset::PairedSeries;
use crate::error::{Error, Result};
use crate::metric::MetricValue;
use crate::numeric;
use crate::regression::{point_metric, RegressionMetricId};

/// Pass thresholds. The defaults are the conventional values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationThresholds {
    pub slope_low: f64,
    pub slope_high: f64,
    /// |m| and |n| must be strictly below this.
    pub index_max: f64,
    /// Rm must be strictly above this.
    pub rm_min: f64,
}

impl Default for ValidationThresholds {
    fn default() -> Self {
        Self {
            slope_low: 0.85,
            slope_high: 1.15,
            index_max: 0.1,
            rm_min: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TropshaReport {
    pub r2: f64,
    /// Slope of A regressed on P through the origin.
    pub k: f64,
    /// Slope of P regressed on A through the origin.
    pub k_prime: f64,
    pub ro2: f64,
    pub ro2_prime: f64,
    pub m_index: f64,
    pub n_index: f64,
    pub pass_k: bool,
    pub pass_m: bool,
    pub pass_n: bool,
    pub overall_pass: bool,
}

impl TropshaReport {
    pub const FORMULA_NOTE: &'static str = "k = sum(A*P)/sum(P^2); k' = sum(A*P)/sum(A^2); \
        Ro2 = 1 - sum((A - k*P)^2)/sum((A - mean(A))^2); Ro'2 = 1 - sum((P - k'*A)^2)/sum((P - mean(P))^2); \
        m = (R2 - Ro2)/R2; n = (R2 - Ro'2)/R2; R2 = squared Pearson correlation";
}

struct OriginFit {
    r2: f64,
    k: f64,
    k_prime: f64,
    ro2: f64,
    ro2_prime: f64,
}

fn origin_fit(data: &PairedSeries) -> Result<OriginFit> {
    if data.len() < 3 {
        return Err(Error::TooFewObservations {
            needed: 3,
            got: data.len(),
        });
    }
    let r = point_metric(RegressionMetricId::R, data).require()?;
    let a = data.actual();
    let p = data.predicted();
    let sum_ap = numeric::sum(data.pairs().map(|(a, p)| a * p));
    let sum_pp = numeric::sum(p.iter().map(|p| p * p));
    let sum_aa = numeric::sum(a.iter().map(|a| a * a));
    if sum_pp == 0.0 || sum_aa == 0.0 {
        return Err(Error::Definedness(
            "through-origin slope has a zero denominator".into(),
        ));
    }
    let k = sum_ap / sum_pp;
    let k_prime = sum_ap / sum_aa;
    // both sums of squared deviations are nonzero once R is defined
    let ss_a = numeric::sum_sq_dev(a).unwrap_or(0.0);
    let ss_p = numeric::sum_sq_dev(p).unwrap_or(0.0);
    let ro2 = 1.0 - numeric::sum(data.pairs().map(|(a, p)| (a - k * p).powi(2))) / ss_a;
    let ro2_prime = 1.0 - numeric::sum(data.pairs().map(|(a, p)| (p - k_prime * a).powi(2))) / ss_p;
    Ok(OriginFit {
        r2: r * r,
        k,
        k_prime,
        ro2,
        ro2_prime,
    })
}

pub fn tropsha_criteria(data: &PairedSeries) -> Result<TropshaReport> {
    tropsha_criteria_with(data, &ValidationThresholds::default())
}

pub fn tropsha_criteria_with(
    data: &PairedSeries,
    thresholds: &ValidationThresholds,
) -> Result<TropshaReport> {
    let fit = origin_fit(data)?;
    if fit.r2 == 0.0 {
        return Err(Error::Definedness(
            "R2 is zero; m and n indices are undefined".into(),
        ));
    }
    let m_index = (fit.r2 - fit.ro2) / fit.r2;
    let n_index = (fit.r2 - fit.ro2_prime) / fit.r2;
    let in_band = |s: f64| (thresholds.slope_low..=thresholds.slope_high).contains(&s);
    let pass_k = in_band(fit.k) || in_band(fit.k_prime);
    let pass_m = m_index.abs() < thresholds.index_max;
    let pass_n = n_index.abs() < thresholds.index_max;
    Ok(TropshaReport {
        r2: fit.r2,
        k: fit.k,
        k_prime: fit.k_prime,
        ro2: fit.ro2,
        ro2_prime: fit.ro2_prime,
        m_index,
        n_index,
        pass_k,
        pass_m,
        pass_n,
        overall_pass: pass_k && pass_m && pass_n,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmReport {
    pub value: MetricValue,
    pub r2: f64,
    pub ro2: f64,
    pub pass: bool,
}

impl RmReport {
    pub const FORMULA_NOTE: &'static str =
        "Rm = R2 * (1 - sqrt(|R2 - Ro2|)); pass when Rm > 0.5; R2 = squared Pearson correlation";
}

pub fn roy_rm(data: &PairedSeries) -> Result<RmReport> {
    roy_rm_with(data, &ValidationThresholds::default())
}

pub fn roy_rm_with(data: &PairedSeries, thresholds: &ValidationThresholds) -> Result<RmReport> {
    let fit = origin_fit(data)?;
    let rm = fit.r2 * (1.0 - (fit.r2 - fit.ro2).abs().sqrt());
    Ok(RmReport {
        value: MetricValue::defined("Rm", rm),
        r2: fit.r2,
        ro2: fit.ro2,
        pass: rm > thresholds.rm_min,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdequacyVerdict {
    Below,
    Within,
    Above,
}

impl AdequacyVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Below => "below",
            Self::Within => "within",
            Self::Above => "above",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdequacyReport {
    pub ratio: f64,
    pub verdict: AdequacyVerdict,
    /// False only for `Below`.
    pub adequate: bool,
}

/// Observations per model input parameter; 3 to 5 is the recommended band.
pub fn data_adequacy_ratio(observation_count: u64, parameter_count: u64) -> Result<AdequacyReport> {
    if parameter_count == 0 {
        return Err(Error::Usage("parameter count must be at least 1".into()));
    }
    let ratio = observation_count as f64 / parameter_count as f64;
    let verdict = if ratio < 3.0 {
        AdequacyVerdict::Below
    } else if ratio <= 5.0 {
        AdequacyVerdict::Within
    } else {
        AdequacyVerdict::Above
    };
    Ok(AdequacyReport {
        ratio,
        verdict,
        adequate: verdict != AdequacyVerdict::Below,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitSeries {
    pub train: PairedSeries,
    pub validation: PairedSeries,
}

impl SplitSeries {
    pub fn new(train: PairedSeries, validation: PairedSeries) -> Self {
        Self { train, validation }
    }
}

pub const OBJECTIVE_FORMULA_NOTE: &str = "OBJ = ((N_T - N_V)/(N_T + N_V)) * (RMSE_T + MAE_T)/R2_T \
    + (2 N_V/(N_T + N_V)) * (RMSE_V + MAE_V)/R2_V; R2 = squared Pearson correlation; lower is better";

fn split_term(data: &PairedSeries, split: &str) -> Result<f64> {
    let r = point_metric(RegressionMetricId::R, data)
        .require()
        .map_err(|e| Error::Definedness(format!("{split} split: {e}")))?;
    let r2 = r * r;
    if r2 == 0.0 {
        return Err(Error::Definedness(format!("{split} split: R2 is zero")));
    }
    let rmse = point_metric(RegressionMetricId::Rmse, data).require()?;
    let mae = point_metric(RegressionMetricId::Mae, data).require()?;
    Ok((rmse + mae) / r2)
}

/// Train/validation composite objective; lower is better.
pub fn gandomi_objective(data: &SplitSeries) -> Result<MetricValue> {
    let n_t = data.train.len() as f64;
    let n_v = data.validation.len() as f64;
    let train = split_term(&data.train, "train")?;
    let validation = split_term(&data.validation, "validation")?;
    let obj = (n_t - n_v) / (n_t + n_v) * train + 2.0 * n_v / (n_t + n_v) * validation;
    Ok(MetricValue::defined("OBJ", obj))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiRanking {
    pub model_ids: Vec<String>,
    /// Raw (RMSE, MAE, MAPE) per model.
    pub raw: Vec<[f64; 3]>,
    /// Min-max normalized (RMSE, MAE, MAPE) per model.
    pub normalized: Vec<[f64; 3]>,
    pub ri: Vec<f64>,
    /// Model indices ordered by ascending RI (ties by model id).
    pub ranking: Vec<usize>,
    /// Per column: true when every model had the same value.
    pub ties: [bool; 3],
}

impl RiRanking {
    pub const FORMULA_NOTE: &'static str =
        "RI = (RMSE' + MAE' + MAPE')/3 with each metric min-max normalized across models; zero-range columns normalize to 0";

    pub fn ri_of(&self, model_id: &str) -> Option<f64> {
        self.model_ids
            .iter()
            .position(|m| m == model_id)
            .map(|i| self.ri[i])
    }

    pub fn ranked_ids(&self) -> Vec<&str> {
        self.ranking
            .iter()
            .map(|&i| self.model_ids[i].as_str())
            .collect()
    }

    pub fn any_tie(&self) -> bool {
        self.ties.iter().any(|&t| t)
    }
}

/// Reference index over candidate models evaluated on their own series.
pub fn reference_index(models: &[(String, PairedSeries)]) -> Result<RiRanking> {
    if models.len() < 2 {
        return Err(Error::Usage(format!(
            "reference index needs at least 2 models, got {}",
            models.len()
        )));
    }
    let mut rows = Vec::with_capacity(models.len());
    for (id, data) in models {
        let metric = |m: RegressionMetricId| {
            point_metric(m, data)
                .require()
                .map_err(|e| Error::Definedness(format!("model {id:?}: {e}")))
        };
        rows.push((
            id.clone(),
            [
                metric(RegressionMetricId::Rmse)?,
                metric(RegressionMetricId::Mae)?,
                metric(RegressionMetricId::Mape)?,
            ],
        ));
    }
    reference_index_from_metrics(&rows)
}

/// Reference index from precomputed (RMSE, MAE, MAPE) triples.
pub fn reference_index_from_metrics(models: &[(String, [f64; 3])]) -> Result<RiRanking> {
    if models.len() < 2 {
        return Err(Error::Usage(format!(
            "reference index needs at least 2 models, got {}",
            models.len()
        )));
    }
    let distinct: BTreeSet<&str> = models.iter().map(|(id, _)| id.as_str()).collect();
    if distinct.len() != models.len() {
        return Err(Error::Usage("model ids must be unique".into()));
    }
    if let Some((id, _)) = models
        .iter()
        .find(|(_, m)| m.iter().any(|v| !v.is_finite()))
    {
        return Err(Error::Definedness(format!(
            "model {id:?} has a non-finite metric"
        )));
    }

    let mut normalized = vec![[0.0; 3]; models.len()];
    let mut ties = [false; 3];
    for col in 0..3 {
        let (lo, hi) = models
            .iter()
            .map(|(_, m)| m[col])
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        let range = hi - lo;
        ties[col] = range == 0.0;
        for (row, (_, m)) in normalized.iter_mut().zip(models) {
            row[col] = if range == 0.0 {
                0.0
            } else {
                (m[col] - lo) / range
            };
        }
    }
    let ri: Vec<f64> = normalized
        .iter()
        .map(|n| (n[0] + n[1] + n[2]) / 3.0)
        .collect();
    let mut ranking: Vec<usize> = (0..models.len()).collect();
    ranking.sort_by(|&a, &b| {
        ri[a]
            .total_cmp(&ri[b])
            .then_with(|| models[a].0.cmp(&models[b].0))
    });

    Ok(RiRanking {
        model_ids: models.iter().map(|(id, _)| id.clone()).collect(),
        raw: models.iter().map(|(_, m)| *m).collect(),
        normalized,
        ri,
        ranking,
        ties,
    })
}
