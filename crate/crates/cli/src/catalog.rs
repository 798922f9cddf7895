//! Metric ids accepted by the `classify` and `regress` commands.

use fitmetrics::regression::RegressionMetricId;

/// Binary classification metrics, in report order.
pub const CLASSIFY_IDS: [(&str, &str); 30] = [
    ("TPR", "TPR = TP/(TP+FN)"),
    ("TNR", "TNR = TN/(TN+FP)"),
    ("PPV", "PPV = TP/(TP+FP)"),
    ("NPV", "NPV = TN/(TN+FN)"),
    ("FPR", "FPR = FP/(FP+TN)"),
    ("FNR", "FNR = FN/(FN+TP)"),
    ("FDR", "FDR = FP/(FP+TP)"),
    ("FOR", "FOR = FN/(FN+TN)"),
    ("LR_PLUS", "LR+ = TPR/FPR"),
    ("LR_MINUS", "LR- = FNR/TNR"),
    ("DOR", "DOR = (TP*TN)/(FP*FN)"),
    ("ACC", "ACC = (TP+TN)/(TP+TN+FP+FN); assumes equal costs"),
    ("F1", "F1 = 2TP/(2TP+FP+FN)"),
    ("F2", "F2 = 5TP/(5TP+4FN+FP)"),
    ("MCC", "MCC = (TP*TN - FP*FN)/sqrt((TP+FP)(TP+FN)(TN+FP)(TN+FN)) (four-factor denominator)"),
    ("BM", "BM = TPR + TNR - 1"),
    ("MK", "MK = PPV + NPV - 1"),
    ("ACA", "ACA = w*TPR + (1-w)*TNR, positive class = minority (weighted per-class recall)"),
    ("BA", "BA = mean per-class recall over classes present in the actual labels"),
    ("KAPPA", "kappa = (p_o - p_e)/(1 - p_e), p_e = sum(row_c * col_c)/total^2"),
    ("HAMMING", "Hamming = fraction of positions where predicted label != actual label"),
    ("HINGE", "hinge = mean(max(0, 1 - q*y)), q = +1 positive / -1 negative, y = score"),
    ("LOG_LOSS", "log loss = -(1/N) sum ln p(true class), p clamped to [1e-15, 1-1e-15], exactly 0 when p = 1"),
    ("MXE", "MXE = -(1/N) sum [y ln s + (1-y) ln(1-s)], same clamp as log loss"),
    ("BRIER", "Brier = (1/N) sum (s_i - y_i)^2"),
    ("WMW", fitmetrics::gp_fitness::WMW_FORMULA_NOTE),
    ("FFA", fitmetrics::gp_fitness::FFA_FORMULA_NOTE),
    ("FFC", fitmetrics::gp_fitness::FFC_FORMULA_NOTE),
    ("FFD", fitmetrics::gp_fitness::FFD_FORMULA_NOTE),
    ("DSCORE", fitmetrics::gp_fitness::DSCORE_FORMULA_NOTE),
];

pub const CANBERRA_NOTE: &str = "CM = sum |A_i - P_i| / (|A_i| + |P_i|)";
pub const WAVE_HEDGES_NOTE: &str =
    "WHD = sum |A_i - P_i| / max(A_i, P_i); inputs assumed non-negative";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RegressId {
    Metric(RegressionMetricId),
    Canberra,
    WaveHedges,
}

impl RegressId {
    pub fn all() -> Vec<RegressId> {
        RegressionMetricId::ALL
            .iter()
            .map(|&id| RegressId::Metric(id))
            .chain([RegressId::Canberra, RegressId::WaveHedges])
            .collect()
    }

    fn parse(text: &str) -> Option<RegressId> {
        match text.to_ascii_uppercase().as_str() {
            "CANBERRA" => Some(RegressId::Canberra),
            "WAVE_HEDGES" => Some(RegressId::WaveHedges),
            other => other.parse().ok().map(RegressId::Metric),
        }
    }
}

/// Splits a `--metrics` list. "all" selects every known id.
fn split_list(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse_regress_ids(list: &str) -> Result<Vec<RegressId>, String> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(RegressId::all());
    }
    let mut ids = split_list(list)
        .into_iter()
        .map(|s| RegressId::parse(s).ok_or_else(|| format!("unknown regression metric {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err("no metrics requested".into());
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

pub fn parse_classify_ids(list: &str) -> Result<Vec<&'static str>, String> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(CLASSIFY_IDS.iter().map(|(id, _)| *id).collect());
    }
    let wanted: Vec<String> = split_list(list)
        .into_iter()
        .map(|s| s.to_ascii_uppercase())
        .collect();
    if wanted.is_empty() {
        return Err("no metrics requested".into());
    }
    if let Some(bad) = wanted
        .iter()
        .find(|w| !CLASSIFY_IDS.iter().any(|(id, _)| id == w))
    {
        return Err(format!("unknown classification metric {bad:?}"));
    }
    Ok(CLASSIFY_IDS
        .iter()
        .map(|(id, _)| *id)
        .filter(|id| wanted.iter().any(|w| w == id))
        .collect())
}

pub fn classify_note(id: &str) -> &'static str {
    CLASSIFY_IDS
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, note)| *note)
        .unwrap_or("")
}
