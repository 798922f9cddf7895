//! Pointwise and aggregate regression error metrics.
//!
//! Residuals follow `E_i = A_i - P_i` (actual minus predicted) everywhere.
//! Every metric returns a [`MetricValue`]; inputs for which a metric has no
//! meaning (zero actuals under a percentage metric, a constant actual series
//! under a relative metric, ...) produce an undefined status with a
//! [`Reason`], never NaN or infinity.

use std::fmt;
use std::str::FromStr;

use crate::dataset::PairedSeries;
use crate::error::{Error, Result};
use crate::metric::{ratio, MetricValue, Reason};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegressionMetricId {
    Me,
    Mnb,
    Mpe,
    Mae,
    Mape,
    Rae,
    Mare,
    Mrae,
    Gmae,
    Fae,
    Mse,
    Rmse,
    Sse,
    Rse,
    Rrse,
    Grmse,
    Mspe,
    Rmspe,
    Nrmse,
    NrmseSd,
    Nmse,
    R2,
    R,
    Mase,
}

impl RegressionMetricId {
    pub const ALL: [RegressionMetricId; 24] = [
        Self::Me,
        Self::Mnb,
        Self::Mpe,
        Self::Mae,
        Self::Mape,
        Self::Rae,
        Self::Mare,
        Self::Mrae,
        Self::Gmae,
        Self::Fae,
        Self::Mse,
        Self::Rmse,
        Self::Sse,
        Self::Rse,
        Self::Rrse,
        Self::Grmse,
        Self::Mspe,
        Self::Rmspe,
        Self::Nrmse,
        Self::NrmseSd,
        Self::Nmse,
        Self::R2,
        Self::R,
        Self::Mase,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Me => "ME",
            Self::Mnb => "MNB",
            Self::Mpe => "MPE",
            Self::Mae => "MAE",
            Self::Mape => "MAPE",
            Self::Rae => "RAE",
            Self::Mare => "MARE",
            Self::Mrae => "MRAE",
            Self::Gmae => "GMAE",
            Self::Fae => "FAE",
            Self::Mse => "MSE",
            Self::Rmse => "RMSE",
            Self::Sse => "SSE",
            Self::Rse => "RSE",
            Self::Rrse => "RRSE",
            Self::Grmse => "GRMSE",
            Self::Mspe => "MSPE",
            Self::Rmspe => "RMSPE",
            Self::Nrmse => "NRMSE",
            Self::NrmseSd => "NRMSE_SD",
            Self::Nmse => "NMSE",
            Self::R2 => "R2",
            Self::R => "R",
            Self::Mase => "MASE",
        }
    }

    /// The exact formula evaluated for this id.
    pub fn formula_note(&self) -> &'static str {
        match self {
            Self::Me => "ME = (1/n) sum(E_i), E_i = A_i - P_i",
            Self::Mnb => "MNB = (1/n) sum(E_i / A_i)",
            Self::Mpe => "MPE = 100 * (1/n) sum(E_i / A_i)",
            Self::Mae => "MAE = (1/n) sum|E_i|",
            Self::Mape => "MAPE = 100 * (1/n) sum|E_i / A_i|",
            Self::Rae => "RAE = sum|E_i| / sum|A_i - mean(A)|",
            Self::Mare => "MARE = (1/n) sum|E_i / A_i|",
            Self::Mrae => "MRAE = (1/n) sum(|E_i| / |A_i - mean(A)|)",
            Self::Gmae => "GMAE = exp((1/n) sum ln|E_i|); 0 if any E_i = 0",
            Self::Fae => "FAE = (1/n) sum(2|E_i| / (|A_i| + |P_i|))",
            Self::Mse => "MSE = (1/n) sum(E_i^2)",
            Self::Rmse => "RMSE = sqrt(MSE)",
            Self::Sse => "SSE = sum(E_i^2)",
            Self::Rse => "RSE = sum(E_i^2) / sum((A_i - mean(A))^2)",
            Self::Rrse => "RRSE = sqrt(RSE)",
            Self::Grmse => "GRMSE = exp(sum ln(E_i^2) / (2n)); 0 if any E_i = 0",
            Self::Mspe => "MSPE = 100 * (1/n) sum((E_i / A_i)^2)",
            Self::Rmspe => "RMSPE = 100 * sqrt((1/n) sum((E_i / A_i)^2))",
            Self::Nrmse => "NRMSE = RMSE / mean(A)",
            Self::NrmseSd => "NRMSE_SD = RMSE / stdev(A), stdev with n-1 denominator",
            Self::Nmse => "NMSE = MSE / var(A), var with n-1 denominator (single power)",
            Self::R2 => "R2 = 1 - sum(E_i^2) / sum((A_i - mean(A))^2)",
            Self::R => "R = sum((A_i - mean(A))(P_i - mean(P))) / sqrt(sum((A_i - mean(A))^2) sum((P_i - mean(P))^2))",
            Self::Mase => "MASE = MAE / ((1/(n-1)) sum_{i>=2} |A_i - A_{i-1}|); requires ordered series",
        }
    }

    /// Metrics whose undefinedness comes from individual terms and which can
    /// therefore be recomputed over the defined subset.
    pub fn is_per_term(&self) -> bool {
        matches!(
            self,
            Self::Mnb
                | Self::Mpe
                | Self::Mape
                | Self::Mare
                | Self::Mspe
                | Self::Rmspe
                | Self::Fae
                | Self::Mrae
        )
    }
}

impl fmt::Display for RegressionMetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegressionMetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase();
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == wanted)
            .ok_or_else(|| Error::Usage(format!("unknown regression metric {s:?}")))
    }
}

/// Residuals `E_i = A_i - P_i`, in input order.
pub fn residuals(data: &PairedSeries) -> Vec<f64> {
    data.pairs().map(|(a, p)| a - p).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RegressionOptions {
    /// Recompute per-term metrics over the terms that are defined instead of
    /// declaring the whole metric undefined.
    pub skip_undefined_terms: bool,
}

/// Statistics shared by all metrics over one series.
struct Shared<'a> {
    data: &'a PairedSeries,
    errors: Vec<f64>,
    a_mean: f64,
    p_mean: f64,
    /// Σ(A_i − Ā)²
    ss_actual: f64,
    /// Σ(P_i − P̄)²
    ss_predicted: f64,
    /// Σ|A_i − Ā|
    sad_actual: f64,
    sse: f64,
    sae: f64,
}

impl<'a> Shared<'a> {
    fn new(data: &'a PairedSeries) -> Self {
        let errors = residuals(data);
        let a = data.actual();
        let p = data.predicted();
        let a_mean = numeric::mean(a).unwrap_or(0.0);
        let p_mean = numeric::mean(p).unwrap_or(0.0);
        Self {
            data,
            a_mean,
            p_mean,
            ss_actual: numeric::sum(a.iter().map(|x| (x - a_mean) * (x - a_mean))),
            ss_predicted: numeric::sum(p.iter().map(|x| (x - p_mean) * (x - p_mean))),
            sad_actual: numeric::sum(a.iter().map(|x| (x - a_mean).abs())),
            sse: numeric::sum(errors.iter().map(|e| e * e)),
            sae: numeric::sum(errors.iter().map(|e| e.abs())),
            errors,
        }
    }

    fn n(&self) -> f64 {
        self.errors.len() as f64
    }

    fn mse(&self) -> f64 {
        self.sse / self.n()
    }

    fn rmse(&self) -> f64 {
        self.mse().sqrt()
    }

    fn rse(&self) -> std::result::Result<f64, Reason> {
        ratio(self.sse, self.ss_actual, Reason::ConstantActual)
    }

    /// Mean of per-observation terms, honoring the skip option.
    fn term_mean<F>(&self, skip: bool, term: F) -> (std::result::Result<f64, Reason>, usize)
    where
        F: Fn(usize) -> std::result::Result<f64, Reason>,
    {
        let mut acc = numeric::CompensatedSum::new();
        let mut kept = 0usize;
        let mut dropped = 0usize;
        for i in 0..self.errors.len() {
            match term(i) {
                Ok(v) => {
                    acc.add(v);
                    kept += 1;
                }
                Err(reason) if !skip => return (Err(reason), 0),
                Err(_) => dropped += 1,
            }
        }
        if kept == 0 {
            // every term undefined: report the reason of the first one
            return (term(0), dropped);
        }
        (Ok(acc.total() / kept as f64), dropped)
    }

    fn relative_error(&self, i: usize) -> std::result::Result<f64, Reason> {
        ratio(self.errors[i], self.data.actual()[i], Reason::ZeroActual)
    }

    fn log_abs_mean(&self, f: impl Fn(f64) -> f64, divisor: f64) -> f64 {
        if self.errors.contains(&0.0) {
            return 0.0;
        }
        (numeric::sum(self.errors.iter().map(|&e| f(e))) / divisor).exp()
    }

    /// Evaluates one metric; the second field counts skipped terms.
    fn eval(
        &self,
        id: RegressionMetricId,
        opts: RegressionOptions,
    ) -> (std::result::Result<f64, Reason>, usize) {
        use RegressionMetricId as Id;
        let skip = opts.skip_undefined_terms;
        let whole = |v| (v, 0);
        match id {
            Id::Me => whole(Ok(numeric::sum(self.errors.iter().copied()) / self.n())),
            Id::Mnb => self.term_mean(skip, |i| self.relative_error(i)),
            Id::Mpe => {
                let (v, d) = self.term_mean(skip, |i| self.relative_error(i));
                (v.map(|x| 100.0 * x), d)
            }
            Id::Mae => whole(Ok(self.sae / self.n())),
            Id::Mare => self.term_mean(skip, |i| self.relative_error(i).map(f64::abs)),
            Id::Mape => {
                let (v, d) = self.term_mean(skip, |i| self.relative_error(i).map(f64::abs));
                (v.map(|x| 100.0 * x), d)
            }
            Id::Rae => whole(ratio(self.sae, self.sad_actual, Reason::ConstantActual)),
            Id::Mrae => {
                if self.ss_actual == 0.0 {
                    return whole(Err(Reason::ConstantActual));
                }
                self.term_mean(skip, |i| {
                    let dev = (self.data.actual()[i] - self.a_mean).abs();
                    ratio(self.errors[i].abs(), dev, Reason::ConstantActual)
                })
            }
            Id::Gmae => whole(Ok(self.log_abs_mean(|e| e.abs().ln(), self.n()))),
            Id::Grmse => whole(Ok(self.log_abs_mean(|e| (e * e).ln(), 2.0 * self.n()))),
            Id::Fae => self.term_mean(skip, |i| {
                let (a, p) = (self.data.actual()[i], self.data.predicted()[i]);
                ratio(
                    2.0 * self.errors[i].abs(),
                    a.abs() + p.abs(),
                    Reason::ZeroPair,
                )
            }),
            Id::Mse => whole(Ok(self.mse())),
            Id::Rmse => whole(Ok(self.rmse())),
            Id::Sse => whole(Ok(self.sse)),
            Id::Rse => whole(self.rse()),
            Id::Rrse => whole(self.rse().map(f64::sqrt)),
            Id::Mspe => {
                let (v, d) = self.term_mean(skip, |i| self.relative_error(i).map(|r| r * r));
                (v.map(|x| 100.0 * x), d)
            }
            Id::Rmspe => {
                let (v, d) = self.term_mean(skip, |i| self.relative_error(i).map(|r| r * r));
                (v.map(|x| 100.0 * x.sqrt()), d)
            }
            Id::Nrmse => whole(ratio(self.rmse(), self.a_mean, Reason::ZeroMeanActual)),
            Id::NrmseSd => {
                if self.errors.len() < 2 {
                    return whole(Err(Reason::TooShort));
                }
                let sd = (self.ss_actual / (self.n() - 1.0)).sqrt();
                whole(ratio(self.rmse(), sd, Reason::ConstantActual))
            }
            Id::Nmse => {
                if self.errors.len() < 2 {
                    return whole(Err(Reason::TooShort));
                }
                let var = self.ss_actual / (self.n() - 1.0);
                whole(ratio(self.mse(), var, Reason::ConstantActual))
            }
            Id::R2 => whole(self.rse().map(|rse| 1.0 - rse)),
            Id::R => whole(self.correlation()),
            Id::Mase => whole(self.mase()),
        }
    }

    fn correlation(&self) -> std::result::Result<f64, Reason> {
        if self.ss_actual == 0.0 {
            return Err(Reason::ConstantActual);
        }
        if self.ss_predicted == 0.0 {
            return Err(Reason::ConstantPredicted);
        }
        let cov = numeric::sum(
            self.data
                .pairs()
                .map(|(a, p)| (a - self.a_mean) * (p - self.p_mean)),
        );
        // sqrt(x * x) == x exactly, so R is exactly 1 when P == A
        let r = cov / (self.ss_actual * self.ss_predicted).sqrt();
        Ok(r.clamp(-1.0, 1.0))
    }

    fn mase(&self) -> std::result::Result<f64, Reason> {
        if !self.data.is_ordered() {
            return Err(Reason::UnorderedSeries);
        }
        let a = self.data.actual();
        if a.len() < 2 {
            return Err(Reason::TooShort);
        }
        let naive = numeric::sum(a.windows(2).map(|w| (w[1] - w[0]).abs())) / (a.len() - 1) as f64;
        ratio(self.sae / self.n(), naive, Reason::ZeroNaiveError)
    }
}

/// Evaluates one regression metric.
pub fn point_metric(id: RegressionMetricId, data: &PairedSeries) -> MetricValue {
    point_metric_with(id, data, RegressionOptions::default())
}

pub fn point_metric_with(
    id: RegressionMetricId,
    data: &PairedSeries,
    opts: RegressionOptions,
) -> MetricValue {
    let (outcome, _) = Shared::new(data).eval(id, opts);
    MetricValue::from_outcome(id.as_str(), outcome)
}

/// Pearson correlation between actual and predicted.
pub fn correlation(data: &PairedSeries) -> MetricValue {
    point_metric(RegressionMetricId::R, data)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionEntry {
    pub id: RegressionMetricId,
    pub value: MetricValue,
    /// Terms excluded under `skip_undefined_terms`.
    pub dropped_terms: usize,
}

impl RegressionEntry {
    pub fn formula_note(&self) -> &'static str {
        self.id.formula_note()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionReport {
    pub n: usize,
    pub a_mean: f64,
    /// One entry per requested id, in catalog order.
    pub entries: Vec<RegressionEntry>,
}

impl RegressionReport {
    pub fn get(&self, id: RegressionMetricId) -> Option<&MetricValue> {
        self.entries.iter().find(|e| e.id == id).map(|e| &e.value)
    }
}

/// Evaluates a set of metrics with shared statistics computed once.
pub fn regression_report(
    data: &PairedSeries,
    ids: &[RegressionMetricId],
    opts: RegressionOptions,
) -> Result<RegressionReport> {
    if ids.is_empty() {
        return Err(Error::Usage("no regression metrics requested".into()));
    }
    let mut wanted = ids.to_vec();
    wanted.sort();
    wanted.dedup();
    let shared = Shared::new(data);
    let entries = wanted
        .into_iter()
        .map(|id| {
            let (outcome, dropped_terms) = shared.eval(id, opts);
            RegressionEntry {
                id,
                value: MetricValue::from_outcome(id.as_str(), outcome),
                dropped_terms,
            }
        })
        .collect();
    Ok(RegressionReport {
        n: data.len(),
        a_mean: shared.a_mean,
        entries,
    })
}
