use std::fs;
use std::path::Path;

use fitmetrics::classification::{self, ProbabilityMatrix};
use fitmetrics::curves;
use fitmetrics::dataset::{self, BadRowPolicy, Loaded};
use fitmetrics::gp_fitness::{self, ClassOutputs};
use fitmetrics::regression::{self, RegressionMetricId, RegressionOptions};
use fitmetrics::validation::{
    self, RiRanking, RmReport, SplitSeries, TropshaReport, ValidationThresholds,
};
use fitmetrics::{MetricValue, PairedSeries, Reason, ScoredBinarySet};
use serde_json::json;

use crate::catalog::{self, RegressId};
use crate::cli::{
    Check, ClassifyArgs, Command, CurveKind, CurvesArgs, RegressArgs, ScoredInputArgs, ValidateArgs,
};
use crate::report::{Counts, MetricEntry, ReportDocument};
use crate::{CliError, Outcome};

pub fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Regress(args) => regress(args),
        Command::Classify(args) => classify(args),
        Command::Curves(args) => curves_cmd(args),
        Command::Validate(args) => validate(args),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn policy(drop_bad_rows: bool) -> BadRowPolicy {
    if drop_bad_rows {
        BadRowPolicy::Drop
    } else {
        BadRowPolicy::Reject
    }
}

fn note_dropped<T>(report: &mut ReportDocument, loaded: &Loaded<T>) {
    if loaded.dropped_rows > 0 {
        report.warnings.push(format!(
            "dropped {} row(s) with bad numeric values",
            loaded.dropped_rows
        ));
    }
}

fn regress(args: RegressArgs) -> Result<Outcome, CliError> {
    let ids = catalog::parse_regress_ids(&args.metrics).map_err(CliError::Usage)?;
    let bytes = read(&args.input)?;
    let loaded = dataset::load_paired_csv_with(
        bytes.as_slice(),
        &args.actual_col,
        &args.predicted_col,
        args.ordered,
        policy(args.drop_bad_rows),
    )?;
    let data = &loaded.data;
    let mut report = ReportDocument::new("regress", &[&bytes]);
    note_dropped(&mut report, &loaded);

    let metric_ids: Vec<RegressionMetricId> = ids
        .iter()
        .filter_map(|id| match id {
            RegressId::Metric(m) => Some(*m),
            _ => None,
        })
        .collect();
    let opts = RegressionOptions {
        skip_undefined_terms: args.skip_undefined_terms,
    };
    let mut a_mean = None;
    if !metric_ids.is_empty() {
        let r = regression::regression_report(data, &metric_ids, opts)?;
        a_mean = Some(r.a_mean);
        for entry in &r.entries {
            if entry.dropped_terms > 0 {
                report.warnings.push(format!(
                    "{}: skipped {} undefined term(s)",
                    entry.id, entry.dropped_terms
                ));
            }
            report
                .metrics
                .push(MetricEntry::new(&entry.value, entry.formula_note()));
        }
    }
    for id in &ids {
        let (value, note) = match id {
            RegressId::Canberra => (classification::canberra(data), catalog::CANBERRA_NOTE),
            RegressId::WaveHedges => (classification::wave_hedges(data), catalog::WAVE_HEDGES_NOTE),
            RegressId::Metric(_) => continue,
        };
        report.metrics.push(MetricEntry::new(&value, note));
    }
    if ids
        .iter()
        .any(|id| matches!(id, RegressId::Canberra | RegressId::WaveHedges))
        && classification::has_negative_values(data)
    {
        report.warnings.push(
            "CANBERRA and WAVE_HEDGES expect non-negative inputs; negative values present".into(),
        );
    }
    report.details = Some(json!({
        "n": data.len(),
        "a_mean": a_mean,
        "ordered": data.is_ordered(),
    }));
    Ok(Outcome {
        report,
        format: args.output.format,
        strict: args.output.strict,
    })
}

fn load_scored(args: &ScoredInputArgs) -> Result<(Vec<u8>, Loaded<ScoredBinarySet>), CliError> {
    let bytes = read(&args.input)?;
    let loaded = dataset::load_scored_csv_with(
        bytes.as_slice(),
        &args.label_col,
        &args.score_col,
        &args.positive,
        policy(args.drop_bad_rows),
    )?;
    Ok((bytes, loaded))
}

fn classify(args: ClassifyArgs) -> Result<Outcome, CliError> {
    let ids = catalog::parse_classify_ids(&args.metrics).map_err(CliError::Usage)?;
    if !(args.aca_weight > 0.0 && args.aca_weight < 1.0) {
        return Err(CliError::Usage(format!(
            "--aca-weight must lie in (0, 1), got {}",
            args.aca_weight
        )));
    }
    if !args.threshold.is_finite() {
        return Err(CliError::Usage("--threshold must be finite".into()));
    }
    let (bytes, loaded) = load_scored(&args.data)?;
    let data = &loaded.data;
    let mut report = ReportDocument::new("classify", &[&bytes]);
    note_dropped(&mut report, &loaded);

    let cm = dataset::confusion_from_scores(data, args.threshold);
    report.confusion = Some(Counts {
        tp: cm.tp(),
        fp: cm.fp(),
        fn_: cm.fn_(),
        tn: cm.tn(),
    });
    let rates = classification::rates(&cm);
    let lr = classification::likelihood_ratios(&cm);
    let (bm, mk) = classification::informedness_markedness(&cm);
    let ba = classification::balanced_accuracy(&cm.to_k());
    let probability_range_ok = data.first_non_probability().is_none();
    let outputs = ClassOutputs::from_scored(data).ok();
    let gp = |f: fn(&ClassOutputs) -> MetricValue, id: &str| match &outputs {
        Some(o) => f(o),
        None => MetricValue::undefined(id, Reason::ZeroDenominator),
    };
    let probabilistic = |id: &str,
                         f: &dyn Fn() -> fitmetrics::Result<MetricValue>|
     -> Result<MetricValue, CliError> {
        if probability_range_ok {
            Ok(f()?)
        } else {
            Ok(MetricValue::undefined(id, Reason::ScoreOutOfRange))
        }
    };

    for id in ids {
        let value = match id {
            "TPR" => rates.tpr.clone(),
            "TNR" => rates.tnr.clone(),
            "PPV" => rates.ppv.clone(),
            "NPV" => rates.npv.clone(),
            "FPR" => rates.fpr.clone(),
            "FNR" => rates.fnr.clone(),
            "FDR" => rates.fdr.clone(),
            "FOR" => rates.for_rate.clone(),
            "LR_PLUS" => lr.lr_plus.clone(),
            "LR_MINUS" => lr.lr_minus.clone(),
            "DOR" => lr.dor.clone(),
            "ACC" => classification::accuracy(&cm),
            "F1" => classification::f_beta(&cm, 1.0)?,
            "F2" => classification::f_beta(&cm, 2.0)?,
            "MCC" => classification::mcc(&cm),
            "BM" => bm.clone(),
            "MK" => mk.clone(),
            "ACA" => classification::average_class_accuracy(&cm, args.aca_weight)?,
            "BA" => {
                for class in &ba.excluded_classes {
                    report.warnings.push(format!(
                        "BA: class {class:?} has no actual instances and was excluded"
                    ));
                }
                ba.value.clone()
            }
            "KAPPA" => classification::cohen_kappa(&cm.to_k()),
            "HAMMING" => {
                let actual: Vec<bool> = data.labels().iter().map(|l| l.is_positive()).collect();
                let predicted: Vec<bool> =
                    data.scores().iter().map(|&s| s >= args.threshold).collect();
                classification::hamming_loss(&actual, &predicted)?
            }
            "HINGE" => classification::hinge_loss(data),
            "LOG_LOSS" => probabilistic("LOG_LOSS", &|| {
                Ok(classification::log_loss(&ProbabilityMatrix::from_binary(
                    data,
                )?))
            })?,
            "MXE" => probabilistic("MXE", &|| classification::mean_cross_entropy(data))?,
            "BRIER" => probabilistic("BRIER", &|| classification::brier_score(data))?,
            "WMW" => gp(gp_fitness::wmw, "WMW"),
            "FFA" => gp(gp_fitness::ffa, "FFA"),
            "FFC" => gp(gp_fitness::ffc, "FFC"),
            "FFD" => gp(gp_fitness::ffd, "FFD"),
            "DSCORE" => gp(|o| gp_fitness::d_score(o).value, "DSCORE"),
            other => unreachable!("unlisted metric id {other}"),
        };
        report
            .metrics
            .push(MetricEntry::with_id(id, &value, catalog::classify_note(id)));
    }
    let wants_probability = report
        .metrics
        .iter()
        .any(|m| m.reason == Some(Reason::ScoreOutOfRange.as_str()));
    if wants_probability {
        report
            .warnings
            .push("scores outside [0, 1]: probability metrics reported as undefined".into());
    }
    report.details = Some(json!({
        "threshold": args.threshold,
        "aca_weight": args.aca_weight,
        "positives": data.positives(),
        "negatives": data.negatives(),
    }));
    Ok(Outcome {
        report,
        format: args.output.format,
        strict: args.output.strict,
    })
}

fn fmt_threshold(t: f64) -> String {
    if t == f64::INFINITY {
        "inf".into()
    } else {
        format!("{t}")
    }
}

fn write_points(path: &Path, rows: &[(f64, f64, f64)]) -> Result<(), CliError> {
    let mut text = String::from("threshold,x,y\n");
    for (t, x, y) in rows {
        text.push_str(&format!("{},{x},{y}\n", fmt_threshold(*t)));
    }
    fs::write(path, text)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

fn curves_cmd(args: CurvesArgs) -> Result<Outcome, CliError> {
    if let Some(f) = args.lift_fraction {
        if !(f > 0.0 && f <= 1.0) {
            return Err(CliError::Usage(format!(
                "--lift-fraction must lie in (0, 1], got {f}"
            )));
        }
    }
    let (bytes, loaded) = load_scored(&args.data)?;
    let data = &loaded.data;
    let mut report = ReportDocument::new("curves", &[&bytes]);
    note_dropped(&mut report, &loaded);

    let rows: Vec<(f64, f64, f64)> = match args.kind {
        CurveKind::Roc => {
            let curve = curves::roc_curve(data)?;
            let area = curves::auc(&curve);
            report.metrics.push(MetricEntry::new(
                &area,
                "AUC = sum 0.5 (FPR_{i+1} - FPR_i)(TPR_{i+1} + TPR_i); tied scores form one diagonal step",
            ));
            curve
                .points()
                .iter()
                .map(|p| (p.threshold, p.fpr, p.tpr))
                .collect()
        }
        CurveKind::Pr => {
            let curve = curves::pr_curve(data)?;
            let ap = curves::average_precision(data)?;
            report.metrics.push(MetricEntry::new(
                &ap,
                "AP = sum_n (R_n - R_{n-1}) P_n over distinct thresholds, R_0 = 0",
            ));
            report.metrics.push(MetricEntry::new(
                &curves::break_even_point(&curve),
                "BEP = first value along increasing recall where precision = recall, linear interpolation",
            ));
            curve
                .points()
                .iter()
                .map(|p| (p.threshold, p.recall, p.precision))
                .collect()
        }
    };

    let mut details = serde_json::Map::new();
    details.insert(
        "kind".into(),
        json!(if args.kind == CurveKind::Roc {
            "roc"
        } else {
            "pr"
        }),
    );
    details.insert("points".into(), json!(rows.len()));

    if let Some(fraction) = args.lift_fraction {
        let l = curves::lift(data, fraction)?;
        if l.tie_at_cut {
            report
                .warnings
                .push("LIFT: tied scores at the cut were split by input order".into());
        }
        report.metrics.push(MetricEntry::new(
            &l.value,
            "LIFT = (positives in top ceil(f*n) / all positives) / f, f = fraction of the whole dataset",
        ));
        details.insert("lift_top_count".into(), json!(l.top_count));
    }
    if args.cal {
        let cal = curves::calibration_error(data).map_err(|e| match e {
            fitmetrics::Error::TooFewObservations { needed, got } => CliError::Data(format!(
                "calibration error needs at least {needed} cases (windows of {needed}), got {got}"
            )),
            other => other.into(),
        })?;
        report.metrics.push(MetricEntry::new(
            &MetricValue::defined("CAL", cal.cal),
            "CAL = mean over sliding windows of 100 (stride 1, ascending score) of |positive rate - mean score|",
        ));
        details.insert("cal_windows".into(), json!(cal.window_errors.len()));
    }
    if let Some(path) = &args.emit_points {
        write_points(path, &rows)?;
    }
    report.details = Some(serde_json::Value::Object(details));
    Ok(Outcome {
        report,
        format: args.output.format,
        strict: args.output.strict,
    })
}

fn load_paired(path: &Path, args: &ValidateArgs) -> Result<(Vec<u8>, PairedSeries), CliError> {
    let bytes = read(path)?;
    let data = dataset::load_paired_csv(
        bytes.as_slice(),
        &args.actual_col,
        &args.predicted_col,
        false,
    )?;
    Ok((bytes, data))
}

fn required<'a, T>(value: &'a Option<T>, flag: &str, check: &str) -> Result<&'a T, CliError> {
    value
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("--check {check} requires {flag}")))
}

fn validate(args: ValidateArgs) -> Result<Outcome, CliError> {
    let thresholds = ValidationThresholds {
        slope_low: args.slope_low,
        slope_high: args.slope_high,
        index_max: args.index_max,
        rm_min: args.rm_min,
    };
    let ordered = thresholds.slope_low <= thresholds.slope_high;
    if !ordered || thresholds.index_max.is_nan() || thresholds.index_max <= 0.0 {
        return Err(CliError::Usage("invalid validation thresholds".into()));
    }

    let report = match args.check {
        Check::Tropsha => {
            let (bytes, data) = load_paired(required(&args.input, "--input", "tropsha")?, &args)?;
            let t = validation::tropsha_criteria_with(&data, &thresholds)?;
            let mut report = ReportDocument::new("validate tropsha", &[&bytes]);
            for (id, v) in [
                ("R2", t.r2),
                ("K", t.k),
                ("K_PRIME", t.k_prime),
                ("RO2", t.ro2),
                ("RO2_PRIME", t.ro2_prime),
                ("M_INDEX", t.m_index),
                ("N_INDEX", t.n_index),
            ] {
                report.metrics.push(MetricEntry::new(
                    &MetricValue::defined(id, v),
                    TropshaReport::FORMULA_NOTE,
                ));
            }
            report.details = Some(json!({
                "pass_k": t.pass_k,
                "pass_m": t.pass_m,
                "pass_n": t.pass_n,
                "overall_pass": t.overall_pass,
                "slope_range": [thresholds.slope_low, thresholds.slope_high],
                "index_max": thresholds.index_max,
            }));
            report
        }
        Check::Rm => {
            let (bytes, data) = load_paired(required(&args.input, "--input", "rm")?, &args)?;
            let rm: RmReport = validation::roy_rm_with(&data, &thresholds)?;
            let mut report = ReportDocument::new("validate rm", &[&bytes]);
            report
                .metrics
                .push(MetricEntry::new(&rm.value, RmReport::FORMULA_NOTE));
            report.details = Some(json!({
                "pass": rm.pass,
                "r2": rm.r2,
                "ro2": rm.ro2,
                "rm_min": thresholds.rm_min,
            }));
            report
        }
        Check::Adequacy => {
            let obs = *required(&args.observations, "--observations", "adequacy")?;
            let params = *required(&args.parameters, "--parameters", "adequacy")?;
            let a = validation::data_adequacy_ratio(obs, params)?;
            let mut report = ReportDocument::new("validate adequacy", &[]);
            report.metrics.push(MetricEntry::new(
                &MetricValue::defined("RATIO", a.ratio),
                "ratio = observations / parameters; below < 3 <= within <= 5 < above",
            ));
            if !a.adequate {
                report.warnings.push(format!(
                    "observation/parameter ratio {} is below 3",
                    a.ratio
                ));
            }
            report.details = Some(json!({
                "verdict": a.verdict.as_str(),
                "adequate": a.adequate,
                "observations": obs,
                "parameters": params,
            }));
            report
        }
        Check::Objective => {
            let (train_bytes, train) =
                load_paired(required(&args.train, "--train", "objective")?, &args)?;
            let (val_bytes, val) = load_paired(
                required(&args.validation, "--validation", "objective")?,
                &args,
            )?;
            let (n_train, n_val) = (train.len(), val.len());
            let obj = validation::gandomi_objective(&SplitSeries::new(train, val))?;
            let mut report = ReportDocument::new("validate objective", &[&train_bytes, &val_bytes]);
            report
                .metrics
                .push(MetricEntry::new(&obj, validation::OBJECTIVE_FORMULA_NOTE));
            report.details = Some(json!({ "n_train": n_train, "n_validation": n_val }));
            report
        }
        Check::Ri => {
            let mut inputs = Vec::new();
            let mut models = Vec::new();
            for model in &args.models {
                let (name, path) = model
                    .split_once('=')
                    .filter(|(n, p)| !n.is_empty() && !p.is_empty())
                    .ok_or_else(|| {
                        CliError::Usage(format!("--model expects NAME=PATH, got {model:?}"))
                    })?;
                let (bytes, data) = load_paired(Path::new(path), &args)?;
                inputs.push(bytes);
                models.push((name.to_string(), data));
            }
            let ri: RiRanking = validation::reference_index(&models)?;
            let refs: Vec<&[u8]> = inputs.iter().map(Vec::as_slice).collect();
            let mut report = ReportDocument::new("validate ri", &refs);
            let mut per_model = serde_json::Map::new();
            for (i, id) in ri.model_ids.iter().enumerate() {
                report.metrics.push(MetricEntry::with_id(
                    format!("RI:{id}"),
                    &MetricValue::defined("RI", ri.ri[i]),
                    RiRanking::FORMULA_NOTE,
                ));
                per_model.insert(
                    id.clone(),
                    json!({
                        "rmse": ri.raw[i][0],
                        "mae": ri.raw[i][1],
                        "mape": ri.raw[i][2],
                        "normalized": ri.normalized[i],
                    }),
                );
            }
            if ri.any_tie() {
                report.warnings.push(
                    "RI: at least one metric is identical across models (normalized to 0)".into(),
                );
            }
            report.details = Some(json!({
                "ranking": ri.ranked_ids(),
                "ties": { "rmse": ri.ties[0], "mae": ri.ties[1], "mape": ri.ties[2] },
                "models": per_model,
            }));
            report
        }
    };
    Ok(Outcome {
        report,
        format: args.output.format,
        strict: args.output.strict,
    })
}
