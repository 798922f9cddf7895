//! Input data types, CSV ingestion and confusion-matrix construction.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use crate::error::{Error, Result};

/// Aligned actual/predicted observations for regression metrics.
///
/// `ordered` declares whether index order is a meaningful sequence order;
/// order-dependent metrics (MASE) refuse to run on unordered data.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSeries {
    actual: Vec<f64>,
    predicted: Vec<f64>,
    ordered: bool,
}

impl PairedSeries {
    pub fn new(actual: Vec<f64>, predicted: Vec<f64>, ordered: bool) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::InvalidInput(format!(
                "actual has {} values but predicted has {}",
                actual.len(),
                predicted.len()
            )));
        }
        if actual.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, (a, p)) in actual.iter().zip(&predicted).enumerate() {
            if !a.is_finite() {
                return Err(Error::Data {
                    row: i + 1,
                    column: "actual".into(),
                    message: format!("non-finite value {a}"),
                });
            }
            if !p.is_finite() {
                return Err(Error::Data {
                    row: i + 1,
                    column: "predicted".into(),
                    message: format!("non-finite value {p}"),
                });
            }
        }
        Ok(Self {
            actual,
            predicted,
            ordered,
        })
    }

    pub fn actual(&self) -> &[f64] {
        &self.actual
    }

    pub fn predicted(&self) -> &[f64] {
        &self.predicted
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn len(&self) -> usize {
        self.actual.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.actual
            .iter()
            .copied()
            .zip(self.predicted.iter().copied())
    }

    /// The same observations with actual and predicted exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            actual: self.predicted.clone(),
            predicted: self.actual.clone(),
            ordered: self.ordered,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }

    /// 1.0 for positive, 0.0 for negative.
    pub fn indicator(self) -> f64 {
        if self.is_positive() {
            1.0
        } else {
            0.0
        }
    }
}

impl From<bool> for Label {
    fn from(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }
}

/// Binary ground truth paired with real-valued classifier scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredBinarySet {
    labels: Vec<Label>,
    scores: Vec<f64>,
}

impl ScoredBinarySet {
    pub fn new(labels: Vec<Label>, scores: Vec<f64>) -> Result<Self> {
        if labels.len() != scores.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels but {} scores",
                labels.len(),
                scores.len()
            )));
        }
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = scores.iter().position(|s| !s.is_finite()) {
            return Err(Error::Data {
                row: i + 1,
                column: "score".into(),
                message: format!("non-finite value {}", scores[i]),
            });
        }
        Ok(Self { labels, scores })
    }

    pub fn from_bools(labels: &[bool], scores: Vec<f64>) -> Result<Self> {
        Self::new(labels.iter().map(|&b| Label::from(b)).collect(), scores)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, f64)> + '_ {
        self.labels.iter().copied().zip(self.scores.iter().copied())
    }

    /// Number of positive labels (P).
    pub fn positives(&self) -> usize {
        self.labels.iter().filter(|l| l.is_positive()).count()
    }

    /// Number of negative labels (N).
    pub fn negatives(&self) -> usize {
        self.len() - self.positives()
    }

    /// Same labels with every score mapped through `f`.
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.labels.clone(),
            self.scores.iter().map(|&s| f(s)).collect(),
        )
    }

    /// Row index of the first score outside [0, 1], if any.
    pub fn first_non_probability(&self) -> Option<usize> {
        self.scores.iter().position(|s| !(0.0..=1.0).contains(s))
    }
}

/// Two-class confusion counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConfusionMatrix2 {
    tp: u64,
    fp: u64,
    fn_: u64,
    tn: u64,
}

impl ConfusionMatrix2 {
    pub fn new(tp: u64, fp: u64, fn_: u64, tn: u64) -> Result<Self> {
        if tp + fp + fn_ + tn == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self { tp, fp, fn_, tn })
    }

    /// Direct tally of paired boolean outcomes (true = positive).
    pub fn tally(actual: &[bool], predicted: &[bool]) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::InvalidInput(format!(
                "{} actual labels but {} predicted",
                actual.len(),
                predicted.len()
            )));
        }
        let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
        for (&a, &p) in actual.iter().zip(predicted) {
            match (a, p) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => tn += 1,
            }
        }
        Self::new(tp, fp, fn_, tn)
    }

    pub fn tp(&self) -> u64 {
        self.tp
    }

    pub fn fp(&self) -> u64 {
        self.fp
    }

    pub fn fn_(&self) -> u64 {
        self.fn_
    }

    pub fn tn(&self) -> u64 {
        self.tn
    }

    /// Real positives, TP + FN.
    pub fn positives(&self) -> u64 {
        self.tp + self.fn_
    }

    /// Real negatives, FP + TN.
    pub fn negatives(&self) -> u64 {
        self.fp + self.tn
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// The matrix seen with the class roles exchanged (TP↔TN, FP↔FN).
    pub fn swapped_roles(&self) -> Self {
        Self {
            tp: self.tn,
            fp: self.fn_,
            fn_: self.fp,
            tn: self.tp,
        }
    }

    /// As a K = 2 matrix with classes ["negative", "positive"] in that
    /// lexicographic order.
    pub fn to_k(&self) -> ConfusionMatrixK {
        ConfusionMatrixK {
            classes: vec!["negative".into(), "positive".into()],
            counts: vec![self.tn, self.fp, self.fn_, self.tp],
        }
    }
}

/// K-class count table, rows = actual, columns = predicted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrixK {
    classes: Vec<String>,
    counts: Vec<u64>,
}

impl ConfusionMatrixK {
    pub fn new(classes: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        let k = classes.len();
        if k < 2 {
            return Err(Error::Schema(format!("need at least 2 classes, got {k}")));
        }
        let distinct: BTreeSet<&String> = classes.iter().collect();
        if distinct.len() != k {
            return Err(Error::Schema("duplicate class identifiers".into()));
        }
        if counts.len() != k || counts.iter().any(|row| row.len() != k) {
            return Err(Error::Schema(format!("count table must be {k}x{k}")));
        }
        let flat: Vec<u64> = counts.into_iter().flatten().collect();
        if flat.iter().sum::<u64>() == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self {
            classes,
            counts: flat,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn get(&self, actual: usize, predicted: usize) -> u64 {
        self.counts[actual * self.k() + predicted]
    }

    pub fn row(&self, actual: usize) -> &[u64] {
        let k = self.k();
        &self.counts[actual * k..(actual + 1) * k]
    }

    pub fn row_total(&self, actual: usize) -> u64 {
        self.row(actual).iter().sum()
    }

    pub fn column_total(&self, predicted: usize) -> u64 {
        (0..self.k()).map(|r| self.get(r, predicted)).sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.k()).map(|i| self.get(i, i)).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn class_index(&self, class: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.k()).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Applies `score >= threshold` as the positive prediction rule.
pub fn confusion_from_scores(data: &ScoredBinarySet, threshold: f64) -> ConfusionMatrix2 {
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (label, score) in data.iter() {
        let predicted_positive = score >= threshold;
        match (label.is_positive(), predicted_positive) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fn_ += 1,
            (false, false) => tn += 1,
        }
    }
    ConfusionMatrix2 { tp, fp, fn_, tn }
}

/// Tallies a K-class table over the lexicographically sorted union of
/// observed class ids.
pub fn confusion_from_labels<S: AsRef<str>>(
    actual: &[S],
    predicted: &[S],
) -> Result<ConfusionMatrixK> {
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
    let classes: BTreeSet<&str> = actual.iter().chain(predicted).map(|s| s.as_ref()).collect();
    if classes.len() < 2 {
        return Err(Error::Schema(
            "single-class input: a confusion matrix needs at least 2 classes".into(),
        ));
    }
    let index: BTreeMap<&str, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let k = classes.len();
    let mut counts = vec![0u64; k * k];
    for (a, p) in actual.iter().zip(predicted) {
        counts[index[a.as_ref()] * k + index[p.as_ref()]] += 1;
    }
    Ok(ConfusionMatrixK {
        classes: classes.into_iter().map(String::from).collect(),
        counts,
    })
}

/// One-vs-rest reduction of a K-class table.
pub fn binarize(matrix: &ConfusionMatrixK, positive_class: &str) -> Result<ConfusionMatrix2> {
    let pos = matrix
        .class_index(positive_class)
        .ok_or_else(|| Error::Schema(format!("unknown class {positive_class:?}")))?;
    let tp = matrix.get(pos, pos);
    let fn_ = matrix.row_total(pos) - tp;
    let fp = matrix.column_total(pos) - tp;
    let tn = matrix.total() - tp - fn_ - fp;
    Ok(ConfusionMatrix2 { tp, fp, fn_, tn })
}

/// What to do with rows whose numeric cells fail to parse or are non-finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BadRowPolicy {
    #[default]
    Reject,
    Drop,
}

/// Parsed data plus the number of rows discarded under [`BadRowPolicy::Drop`].
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded<T> {
    pub data: T,
    pub dropped_rows: usize,
}

struct CsvTable {
    headers: Vec<String>,
    records: Vec<csv::StringRecord>,
}

impl CsvTable {
    fn read<R: Read>(source: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(source);
        let headers = reader.headers()?.iter().map(String::from).collect();
        let records = reader
            .records()
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { headers, records })
    }

    fn column(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema(format!("missing column {name:?}")))
    }
}

fn parse_real(text: &str, row: usize, column: &str) -> Result<f64> {
    let value: f64 = text.parse().map_err(|_| Error::Data {
        row,
        column: column.into(),
        message: format!("cannot parse {text:?} as a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Data {
            row,
            column: column.into(),
            message: format!("non-finite value {text:?}"),
        });
    }
    Ok(value)
}

/// Reads a [`PairedSeries`] from CSV, rejecting any bad numeric cell.
pub fn load_paired_csv<R: Read>(
    source: R,
    actual_column: &str,
    predicted_column: &str,
    ordered: bool,
) -> Result<PairedSeries> {
    load_paired_csv_with(
        source,
        actual_column,
        predicted_column,
        ordered,
        BadRowPolicy::Reject,
    )
    .map(|l| l.data)
}

pub fn load_paired_csv_with<R: Read>(
    source: R,
    actual_column: &str,
    predicted_column: &str,
    ordered: bool,
    policy: BadRowPolicy,
) -> Result<Loaded<PairedSeries>> {
    let table = CsvTable::read(source)?;
    let a_idx = table.column(actual_column)?;
    let p_idx = table.column(predicted_column)?;
    let mut actual = Vec::with_capacity(table.records.len());
    let mut predicted = Vec::with_capacity(table.records.len());
    let mut dropped_rows = 0;
    for (i, record) in table.records.iter().enumerate() {
        let row = i + 1;
        let parsed =
            parse_real(record.get(a_idx).unwrap_or(""), row, actual_column).and_then(|a| {
                parse_real(record.get(p_idx).unwrap_or(""), row, predicted_column).map(|p| (a, p))
            });
        match (parsed, policy) {
            (Ok((a, p)), _) => {
                actual.push(a);
                predicted.push(p);
            }
            (Err(_), BadRowPolicy::Drop) => dropped_rows += 1,
            (Err(e), BadRowPolicy::Reject) => return Err(e),
        }
    }
    if actual.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(Loaded {
        data: PairedSeries::new(actual, predicted, ordered)?,
        dropped_rows,
    })
}

/// Reads a [`ScoredBinarySet`] from CSV.
///
/// The label column may hold one or two distinct strings. With two, one of
/// them must equal `positive_label`; a single distinct label is accepted
/// either way (an all-positive or all-negative set).
pub fn load_scored_csv<R: Read>(
    source: R,
    label_column: &str,
    score_column: &str,
    positive_label: &str,
) -> Result<ScoredBinarySet> {
    load_scored_csv_with(
        source,
        label_column,
        score_column,
        positive_label,
        BadRowPolicy::Reject,
    )
    .map(|l| l.data)
}

pub fn load_scored_csv_with<R: Read>(
    source: R,
    label_column: &str,
    score_column: &str,
    positive_label: &str,
    policy: BadRowPolicy,
) -> Result<Loaded<ScoredBinarySet>> {
    let table = CsvTable::read(source)?;
    let l_idx = table.column(label_column)?;
    let s_idx = table.column(score_column)?;

    let distinct: BTreeSet<&str> = table
        .records
        .iter()
        .map(|r| r.get(l_idx).unwrap_or(""))
        .collect();
    if distinct.len() > 2 {
        return Err(Error::Schema(format!(
            "label column {label_column:?} has {} distinct values; expected 2",
            distinct.len()
        )));
    }
    if distinct.len() == 2 && !distinct.contains(positive_label) {
        return Err(Error::Schema(format!(
            "positive label {positive_label:?} not present in column {label_column:?}"
        )));
    }

    let mut labels = Vec::with_capacity(table.records.len());
    let mut scores = Vec::with_capacity(table.records.len());
    let mut dropped_rows = 0;
    for (i, record) in table.records.iter().enumerate() {
        match (
            parse_real(record.get(s_idx).unwrap_or(""), i + 1, score_column),
            policy,
        ) {
            (Ok(s), _) => {
                labels.push(Label::from(record.get(l_idx) == Some(positive_label)));
                scores.push(s);
            }
            (Err(_), BadRowPolicy::Drop) => dropped_rows += 1,
            (Err(e), BadRowPolicy::Reject) => return Err(e),
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(Loaded {
        data: ScoredBinarySet::new(labels, scores)?,
        dropped_rows,
    })
}

/// Reads two text columns as class ids (for K-class tables and Hamming loss).
pub fn load_label_pairs_csv<R: Read>(
    source: R,
    actual_column: &str,
    predicted_column: &str,
) -> Result<(Vec<String>, Vec<String>)> {
    let table = CsvTable::read(source)?;
    let a_idx = table.column(actual_column)?;
    let p_idx = table.column(predicted_column)?;
    if table.records.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(table
        .records
        .iter()
        .map(|r| {
            (
                r.get(a_idx).unwrap_or("").to_string(),
                r.get(p_idx).unwrap_or("").to_string(),
            )
        })
        .unzip())
}
