//! Performance and error metrics for regression and classification models.
//!
//! Every metric reports an explicit [`MetricValue`]: a finite number or an
//! undefined status carrying a machine-readable [`Reason`]. Inputs are
//! validated at construction, so NaN and infinity never enter a computation.
//!
//! Modules:
//! - [`dataset`]: input types, CSV ingestion, confusion matrices
//! - [`regression`]: residual-based error metrics, R and R²
//! - [`validation`]: multi-criteria model validation procedures
//! - [`classification`]: confusion-matrix rates, probabilistic and distance metrics
//! - [`curves`]: ROC/AUC, precision-recall, lift, calibration error
//! - [`gp_fitness`]: fitness functions for classifiers on imbalanced data

pub mod classification;
pub mod curves;
pub mod dataset;
mod error;
pub mod gp_fitness;
mod metric;
pub mod numeric;
pub mod regression;
pub mod validation;

pub use dataset::{ConfusionMatrix2, ConfusionMatrixK, Label, PairedSeries, ScoredBinarySet};
pub use error::{Error, Result};
pub use metric::{MetricValue, Reason, Status};
