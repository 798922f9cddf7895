//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p fitmetrics-cli --test acceptance`.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fitmetrics::classification::{
    accuracy, average_class_accuracy, balanced_accuracy, brier_score, cohen_kappa, f_beta,
    hamming_loss, informedness_markedness, likelihood_ratios, log_loss, mcc, mean_cross_entropy,
    rates, ProbabilityMatrix,
};
use fitmetrics::curves::{auc, average_precision, lift, roc_curve};
use fitmetrics::regression::{
    point_metric, regression_report, RegressionMetricId as Id, RegressionOptions,
};
use fitmetrics::validation::{
    gandomi_objective, reference_index, roy_rm, tropsha_criteria, SplitSeries,
};
use fitmetrics::{
    classification, ConfusionMatrix2, Label, MetricValue, PairedSeries, Reason, ScoredBinarySet,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Transform = fn(f64) -> f64;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn val(m: &MetricValue) -> Result<f64, String> {
    m.value()
        .ok_or_else(|| format!("{} undefined ({:?})", m.id(), m.reason()))
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || {
        format!("runtime {spent:?} exceeds {budget:?}")
    })
}

fn random_series(rng: &mut ChaCha8Rng, ordered: bool) -> PairedSeries {
    let n = rng.gen_range(2..=100);
    let a = (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect();
    let p = (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect();
    PairedSeries::new(a, p, ordered).unwrap()
}

fn brute_force_auc(data: &ScoredBinarySet) -> f64 {
    let mut num = 0u64;
    let (mut pos, mut neg) = (0u64, 0u64);
    for (li, si) in data.iter() {
        if !li.is_positive() {
            neg += 1;
            continue;
        }
        pos += 1;
        for (lj, sj) in data.iter() {
            if !lj.is_positive() {
                num += if si > sj {
                    2
                } else if si == sj {
                    1
                } else {
                    0
                };
            }
        }
    }
    num as f64 / (2 * pos * neg) as f64
}

fn random_scored(rng: &mut ChaCha8Rng, max_n: usize, ties: bool) -> ScoredBinarySet {
    loop {
        let n = rng.gen_range(2..=max_n);
        let labels: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
            continue;
        }
        let scores = (0..n)
            .map(|_| {
                if ties {
                    rng.gen_range(0..6) as f64 / 5.0
                } else {
                    rng.gen_range(0.0..1.0)
                }
            })
            .collect();
        return ScoredBinarySet::from_bools(&labels, scores).unwrap();
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tol = 1e-12;
    for case in 0..10_000 {
        let data = random_series(&mut rng, true);
        let r = regression_report(&data, &Id::ALL, RegressionOptions::default())
            .map_err(|e| e.to_string())?;
        let g = |id| val(r.get(id).unwrap());
        let n = data.len() as f64;
        let chains = [
            ("MSE = SSE/n", g(Id::Mse)?, g(Id::Sse)? / n),
            ("RMSE = sqrt(MSE)", g(Id::Rmse)?, g(Id::Mse)?.sqrt()),
            ("R2 = 1 - RSE", g(Id::R2)?, 1.0 - g(Id::Rse)?),
            ("RRSE = sqrt(RSE)", g(Id::Rrse)?, g(Id::Rse)?.sqrt()),
            ("GMAE = GRMSE", g(Id::Gmae)?, g(Id::Grmse)?),
            ("MAPE = 100 MARE", g(Id::Mape)?, 100.0 * g(Id::Mare)?),
            ("MPE = 100 MNB", g(Id::Mpe)?, 100.0 * g(Id::Mnb)?),
        ];
        for (name, lhs, rhs) in chains {
            ensure(rel_close(lhs, rhs, tol), || {
                format!("case {case}: {name}: {lhs} vs {rhs}")
            })?;
        }
    }
    within_budget(start, Duration::from_secs(10))?;
    Ok(format!("10000 series, 7 chains, {:?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let slack = 1.0 + 1e-12;
    for case in 0..10_000 {
        let data = random_series(&mut rng, true);
        let mae = val(&point_metric(Id::Mae, &data))?;
        let rmse = val(&point_metric(Id::Rmse, &data))?;
        let root_n = (data.len() as f64).sqrt();
        ensure(mae <= rmse * slack, || {
            format!("case {case}: MAE {mae} > RMSE {rmse}")
        })?;
        ensure(rmse <= root_n * mae * slack, || {
            format!("case {case}: RMSE {rmse} > sqrt(n) MAE {}", root_n * mae)
        })?;
    }
    Ok("10000 series".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tied = 0;
    for case in 0..1_000 {
        let ties = case % 2 == 0;
        let data = random_scored(&mut rng, 50, ties);
        let mut sorted = data.scores().to_vec();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            tied += 1;
        }
        let got = val(&auc(&roc_curve(&data).map_err(|e| e.to_string())?))?;
        let want = brute_force_auc(&data);
        ensure((got - want).abs() <= 1e-12, || {
            format!("case {case}: AUC {got} vs brute force {want}")
        })?;
    }
    within_budget(start, Duration::from_secs(5))?;
    Ok(format!(
        "1000 sets, {tied} with tied scores, {:?}",
        start.elapsed()
    ))
}

fn criterion_4() -> Check {
    let f1 = PairedSeries::new(vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 2.0, 4.0, 5.0], false).unwrap();
    let reg = |id| val(&point_metric(id, &f1));
    let c1 = ConfusionMatrix2::new(8, 5, 2, 5).unwrap();
    let s1 = ScoredBinarySet::from_bools(
        &[true, true, true, false, false, false],
        vec![0.9, 0.8, 0.4, 0.7, 0.3, 0.2],
    )
    .unwrap();
    let (bm, _) = informedness_markedness(&c1);
    let exact = [
        ("MAE", reg(Id::Mae)?, 0.75),
        ("MSE", reg(Id::Mse)?, 0.75),
        ("SSE", reg(Id::Sse)?, 3.0),
        ("R2", reg(Id::R2)?, 0.4),
        ("ACC", val(&accuracy(&c1))?, 13.0 / 20.0),
        (
            "F1",
            val(&f_beta(&c1, 1.0).map_err(|e| e.to_string())?)?,
            16.0 / 23.0,
        ),
        ("KAPPA", val(&cohen_kappa(&c1.to_k()))?, 0.3),
        ("BM", val(&bm)?, 0.3),
        (
            "AUC",
            val(&auc(&roc_curve(&s1).map_err(|e| e.to_string())?))?,
            8.0 / 9.0,
        ),
        (
            "AP",
            val(&average_precision(&s1).map_err(|e| e.to_string())?)?,
            11.0 / 12.0,
        ),
    ];
    for (name, got, want) in exact {
        ensure(got == want, || format!("{name}: {got} != {want}"))?;
    }
    let irrational = [
        ("R", reg(Id::R)?, 5.5 / 33.75f64.sqrt()),
        ("MCC", val(&mcc(&c1))?, 30.0 / 9100f64.sqrt()),
    ];
    for (name, got, want) in irrational {
        ensure((got - want).abs() <= 1e-9, || {
            format!("{name}: {got} vs {want}")
        })?;
    }
    Ok("10 exact, 2 within 1e-9".into())
}

type SeriesTrigger = fn(&[f64], &[f64], bool) -> bool;
type SeriesCase = (
    &'static str,
    Reason,
    SeriesTrigger,
    (Vec<f64>, Vec<f64>, bool),
);

fn all_equal(x: &[f64]) -> bool {
    x.iter().all(|&v| v == x[0])
}

fn any_zero(a: &[f64], _: &[f64], _: bool) -> bool {
    a.contains(&0.0)
}

fn constant_actual(a: &[f64], _: &[f64], _: bool) -> bool {
    all_equal(a)
}

fn too_short(a: &[f64], _: &[f64], _: bool) -> bool {
    a.len() < 2
}

/// Regression and distance metrics: (id, reason, trigger, minimal fixture).
fn series_catalog() -> Vec<SeriesCase> {
    let zero_actual = (vec![0.0, 1.0], vec![1.0, 1.0], false);
    let flat = (vec![2.0, 2.0], vec![1.0, 3.0], true);
    let single = (vec![1.0], vec![2.0], true);
    let mut rows: Vec<SeriesCase> = Vec::new();
    for id in ["MNB", "MPE", "MAPE", "MARE", "MSPE", "RMSPE"] {
        rows.push((id, Reason::ZeroActual, any_zero, zero_actual.clone()));
    }
    rows.push((
        "FAE",
        Reason::ZeroPair,
        |a, p, _| a.iter().zip(p).any(|(x, y)| *x == 0.0 && *y == 0.0),
        (vec![0.0, 1.0], vec![0.0, 2.0], false),
    ));
    for id in ["RAE", "RSE", "RRSE", "NMSE", "NRMSE_SD", "R2", "R"] {
        rows.push((id, Reason::ConstantActual, constant_actual, flat.clone()));
    }
    rows.push((
        "MRAE",
        Reason::ConstantActual,
        |a, _, _| {
            let mean = a.iter().sum::<f64>() / a.len() as f64;
            a.contains(&mean)
        },
        (vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0], false),
    ));
    rows.push((
        "NRMSE",
        Reason::ZeroMeanActual,
        |a, _, _| a.iter().sum::<f64>() == 0.0,
        (vec![-1.0, 1.0], vec![0.0, 0.5], false),
    ));
    rows.push((
        "R",
        Reason::ConstantPredicted,
        |_, p, _| all_equal(p),
        (vec![1.0, 2.0], vec![3.0, 3.0], false),
    ));
    rows.push((
        "MASE",
        Reason::UnorderedSeries,
        |_, _, ordered| !ordered,
        (vec![1.0, 2.0], vec![1.0, 3.0], false),
    ));
    rows.push(("MASE", Reason::TooShort, too_short, single.clone()));
    rows.push(("MASE", Reason::ZeroNaiveError, constant_actual, flat));
    rows.push(("NMSE", Reason::TooShort, too_short, single.clone()));
    rows.push(("NRMSE_SD", Reason::TooShort, too_short, single));
    rows.push((
        "CANBERRA",
        Reason::ZeroDenominator,
        |a, p, _| a.iter().zip(p).any(|(x, y)| x.abs() + y.abs() == 0.0),
        (vec![0.0, 1.0], vec![0.0, 2.0], false),
    ));
    rows.push((
        "WAVE_HEDGES",
        Reason::ZeroDenominator,
        |a, p, _| a.iter().zip(p).any(|(x, y)| x.max(*y) == 0.0),
        (vec![0.0, 1.0], vec![-1.0, 2.0], false),
    ));
    rows
}

fn series_metrics(data: &PairedSeries) -> Vec<MetricValue> {
    let mut out: Vec<MetricValue> = Id::ALL.iter().map(|&id| point_metric(id, data)).collect();
    out.push(classification::canberra(data));
    out.push(classification::wave_hedges(data));
    out
}

type CountTrigger = fn(u64, u64, u64, u64) -> bool;

/// Confusion-matrix metrics: (id, reason, trigger over tp/fp/fn/tn, minimal fixture).
fn count_catalog() -> Vec<(&'static str, Reason, CountTrigger, [u64; 4])> {
    let z = Reason::ZeroDenominator;
    vec![
        ("TPR", z, |tp, _, fn_, _| tp + fn_ == 0, [0, 1, 0, 1]),
        ("FNR", z, |tp, _, fn_, _| tp + fn_ == 0, [0, 1, 0, 1]),
        ("TNR", z, |_, fp, _, tn| tn + fp == 0, [1, 0, 1, 0]),
        ("FPR", z, |_, fp, _, tn| tn + fp == 0, [1, 0, 1, 0]),
        ("PPV", z, |tp, fp, _, _| tp + fp == 0, [0, 0, 1, 1]),
        ("FDR", z, |tp, fp, _, _| tp + fp == 0, [0, 0, 1, 1]),
        ("NPV", z, |_, _, fn_, tn| tn + fn_ == 0, [1, 1, 0, 0]),
        ("FOR", z, |_, _, fn_, tn| tn + fn_ == 0, [1, 1, 0, 0]),
        (
            "LR_PLUS",
            z,
            |tp, fp, fn_, tn| tp + fn_ == 0 || fp + tn == 0 || fp == 0,
            [1, 0, 1, 1],
        ),
        (
            "LR_MINUS",
            z,
            |tp, fp, fn_, tn| tp + fn_ == 0 || fp + tn == 0 || tn == 0,
            [1, 1, 1, 0],
        ),
        (
            "DOR",
            z,
            |tp, fp, fn_, tn| tp + fn_ == 0 || fp + tn == 0 || fp == 0 || fn_ == 0 || tn == 0,
            [1, 1, 0, 1],
        ),
        ("F1", z, |tp, _, _, _| tp == 0, [0, 1, 1, 1]),
        ("F2", z, |tp, _, _, _| tp == 0, [0, 1, 1, 1]),
        (
            "MCC",
            z,
            |tp, fp, fn_, tn| tp + fp == 0 || tp + fn_ == 0 || tn + fp == 0 || tn + fn_ == 0,
            [1, 1, 0, 0],
        ),
        (
            "BM",
            z,
            |tp, fp, fn_, tn| tp + fn_ == 0 || fp + tn == 0,
            [0, 1, 0, 1],
        ),
        (
            "ACA",
            z,
            |tp, fp, fn_, tn| tp + fn_ == 0 || fp + tn == 0,
            [0, 1, 0, 1],
        ),
        (
            "MK",
            z,
            |tp, fp, fn_, tn| tp + fp == 0 || tn + fn_ == 0,
            [0, 0, 1, 1],
        ),
        (
            "KAPPA",
            Reason::DegenerateMarginals,
            |tp, fp, fn_, tn| {
                let total = tp + fp + fn_ + tn;
                (tp + fn_) * (tp + fp) + (tn + fp) * (tn + fn_) == total * total
            },
            [3, 0, 0, 0],
        ),
    ]
}

fn count_metrics(m: &ConfusionMatrix2) -> Result<Vec<MetricValue>, String> {
    let mut out: Vec<MetricValue> = rates(m).iter().cloned().collect();
    let lr = likelihood_ratios(m);
    out.extend([lr.lr_plus, lr.lr_minus, lr.dor]);
    let (bm, mk) = informedness_markedness(m);
    out.extend([
        accuracy(m),
        f_beta(m, 1.0).map_err(|e| e.to_string())?,
        f_beta(m, 2.0).map_err(|e| e.to_string())?,
        mcc(m),
        bm,
        mk,
        average_class_accuracy(m, 0.5).map_err(|e| e.to_string())?,
        balanced_accuracy(&m.to_k()).value,
        cohen_kappa(&m.to_k()),
    ]);
    Ok(out)
}

fn criterion_5() -> Check {
    let series = series_catalog();
    for (id, reason, trigger, (a, p, ordered)) in &series {
        ensure(trigger(a, p, *ordered), || {
            format!("{id}/{reason}: fixture misses its own trigger")
        })?;
        let data = PairedSeries::new(a.clone(), p.clone(), *ordered).unwrap();
        let m = series_metrics(&data)
            .into_iter()
            .find(|m| m.id() == *id)
            .unwrap();
        ensure(m.reason() == Some(*reason), || {
            format!("{id}: fixture gives {:?}, want {reason}", m.reason())
        })?;
    }
    let counts = count_catalog();
    for (id, reason, trigger, [tp, fp, fn_, tn]) in &counts {
        ensure(trigger(*tp, *fp, *fn_, *tn), || {
            format!("{id}/{reason}: fixture misses its own trigger")
        })?;
        let cm = ConfusionMatrix2::new(*tp, *fp, *fn_, *tn).unwrap();
        let m = count_metrics(&cm)?
            .into_iter()
            .find(|m| m.id() == *id)
            .unwrap();
        ensure(m.reason() == Some(*reason), || {
            format!("{id}: fixture gives {:?}, want {reason}", m.reason())
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut undefined_seen = 0usize;
    for case in 0..10_000 {
        let (a, p, ordered): (Vec<f64>, Vec<f64>, bool) = if case % 2 == 0 {
            let n = rng.gen_range(1..=6);
            let small = |rng: &mut ChaCha8Rng| rng.gen_range(-2i32..=2) as f64;
            (
                (0..n).map(|_| small(&mut rng)).collect(),
                (0..n).map(|_| small(&mut rng)).collect(),
                rng.gen(),
            )
        } else {
            let n = rng.gen_range(2..=100);
            (
                (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect(),
                (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect(),
                rng.gen(),
            )
        };
        let data = PairedSeries::new(a.clone(), p.clone(), ordered).unwrap();
        for m in series_metrics(&data) {
            let Some(reason) = m.reason() else { continue };
            undefined_seen += 1;
            let explained = series.iter().any(|(id, r, trigger, _)| {
                *id == m.id() && *r == reason && trigger(&a, &p, ordered)
            });
            ensure(explained, || {
                format!(
                    "series case {case}: {} reported {reason} without its trigger",
                    m.id()
                )
            })?;
        }

        let c = [(); 4].map(|_| rng.gen_range(0u64..=3));
        if c.iter().sum::<u64>() == 0 {
            continue;
        }
        let cm = ConfusionMatrix2::new(c[0], c[1], c[2], c[3]).unwrap();
        for m in count_metrics(&cm)? {
            let Some(reason) = m.reason() else { continue };
            undefined_seen += 1;
            let explained = counts.iter().any(|(id, r, trigger, _)| {
                *id == m.id() && *r == reason && trigger(c[0], c[1], c[2], c[3])
            });
            ensure(explained, || {
                format!(
                    "count case {case}: {} reported {reason} without its trigger",
                    m.id()
                )
            })?;
        }
    }
    Ok(format!(
        "{} catalog entries triggered; 10000-case sweep, {undefined_seen} undefined results all explained",
        series.len() + counts.len()
    ))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let n = rng.gen_range(3..=50);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect();
        let data = PairedSeries::new(a.clone(), a, false).unwrap();
        let t = tropsha_criteria(&data).map_err(|e| e.to_string())?;
        ensure(t.overall_pass, || {
            format!("case {case}: P == A fails Tropsha")
        })?;
        ensure(t.k == 1.0 && t.k_prime == 1.0, || {
            format!("case {case}: k {} k' {}", t.k, t.k_prime)
        })?;
        ensure(t.m_index == 0.0 && t.n_index == 0.0, || {
            format!("case {case}: m {} n {}", t.m_index, t.n_index)
        })?;
        let rm = roy_rm(&data).map_err(|e| e.to_string())?;
        ensure(val(&rm.value)? == 1.0, || {
            format!("case {case}: Rm {:?}", rm.value)
        })?;
    }

    let actual: Vec<f64> = (1..=20).map(f64::from).collect();
    let mut shuffled = actual.clone();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(20));
    let t = tropsha_criteria(&PairedSeries::new(actual, shuffled, false).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(!t.overall_pass, || "shuffled fixture passes Tropsha".into())?;

    for case in 0..200 {
        let perfect = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(3..=30);
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1e3..=1e3)).collect();
            PairedSeries::new(a.clone(), a, false).unwrap()
        };
        let split = SplitSeries::new(perfect(&mut rng), perfect(&mut rng));
        let obj = val(&gandomi_objective(&split).map_err(|e| e.to_string())?)?;
        ensure(obj == 0.0, || {
            format!("case {case}: OBJ {obj} on a perfect split")
        })?;
    }

    for case in 0..200 {
        let n = rng.gen_range(3..=30);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..=1e3)).collect();
        let e: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.5..=5.0) * if rng.gen() { 1.0 } else { -1.0 })
            .collect();
        let k = rng.gen_range(2..=6);
        let models: Vec<(String, PairedSeries)> = (0..k)
            .map(|j| {
                let p = a
                    .iter()
                    .zip(&e)
                    .map(|(x, d)| x + (j + 1) as f64 * d)
                    .collect();
                (
                    format!("m{j}"),
                    PairedSeries::new(a.clone(), p, false).unwrap(),
                )
            })
            .collect();
        let ri = reference_index(&models).map_err(|e| e.to_string())?;
        let best = ri.ri_of("m0").unwrap();
        let worst = ri.ri_of(&format!("m{}", k - 1)).unwrap();
        ensure(best == 0.0 && worst == 1.0, || {
            format!("case {case}: endpoints {best}, {worst}")
        })?;
    }
    Ok(
        "200 perfect series, shuffled fixture fails, 200 perfect splits, 200 dominance chains"
            .into(),
    )
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..1_000 {
        let data = random_scored(&mut rng, 200, false);
        let indicators: Vec<f64> = data.labels().iter().map(|l| l.indicator()).collect();
        let series = PairedSeries::new(indicators, data.scores().to_vec(), false).unwrap();
        let brier = val(&brier_score(&data).map_err(|e| e.to_string())?)?;
        let mse = val(&point_metric(Id::Mse, &series))?;
        ensure(brier == mse, || {
            format!("case {case}: Brier {brier} != MSE {mse}")
        })?;

        let mxe = val(&mean_cross_entropy(&data).map_err(|e| e.to_string())?)?;
        let ll = val(&log_loss(
            &ProbabilityMatrix::from_binary(&data).map_err(|e| e.to_string())?,
        ))?;
        ensure((mxe - ll).abs() <= 1e-12, || {
            format!("case {case}: MXE {mxe} vs log loss {ll}")
        })?;

        let c = [(); 4].map(|_| rng.gen_range(0u64..=50));
        if c[0] + c[2] > 0 && c[1] + c[3] > 0 {
            let cm = ConfusionMatrix2::new(c[0], c[1], c[2], c[3]).unwrap();
            let aca = val(&average_class_accuracy(&cm, 0.5).map_err(|e| e.to_string())?)?;
            let ba = val(&balanced_accuracy(&cm.to_k()).value)?;
            ensure(aca == ba, || {
                format!("case {case}: ACA(0.5) {aca} != BA {ba}")
            })?;
        }

        let n = rng.gen_range(1..=200);
        let actual: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let predicted: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let h = val(&hamming_loss(&actual, &predicted).map_err(|e| e.to_string())?)?;
        let acc = val(&accuracy(
            &ConfusionMatrix2::tally(&actual, &predicted).map_err(|e| e.to_string())?,
        ))?;
        ensure(h == 1.0 - acc, || {
            format!("case {case}: hamming {h} != 1 - accuracy {}", 1.0 - acc)
        })?;
    }
    Ok("1000 fixtures per identity".into())
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let tol = 1e-10;
    let invariant = [
        Id::Mape,
        Id::Mare,
        Id::Rae,
        Id::Mrae,
        Id::Fae,
        Id::Rse,
        Id::Rrse,
        Id::Nrmse,
        Id::Nmse,
        Id::R2,
        Id::R,
        Id::Mase,
    ];
    for case in 0..1_000 {
        let data = random_series(&mut rng, true);
        let c: f64 = rng.gen_range(0.01..=100.0);
        let scale = |v: &[f64]| v.iter().map(|x| c * x).collect::<Vec<_>>();
        let scaled =
            PairedSeries::new(scale(data.actual()), scale(data.predicted()), true).unwrap();
        let m = |id, d: &PairedSeries| val(&point_metric(id, d));
        for (id, power) in [
            (Id::Mae, 1),
            (Id::Rmse, 1),
            (Id::Me, 1),
            (Id::Mse, 2),
            (Id::Sse, 2),
        ] {
            let want = m(id, &data)? * c.powi(power);
            let got = m(id, &scaled)?;
            ensure(rel_close(got, want, tol), || {
                format!("case {case}: {id} scaled by {c}: {got} vs {want}")
            })?;
        }
        for id in invariant {
            let (before, after) = (m(id, &data)?, m(id, &scaled)?);
            ensure(rel_close(before, after, tol), || {
                format!("case {case}: {id} moved {before} -> {after}")
            })?;
        }

        let r = m(Id::R, &data)?;
        let slope: f64 = rng.gen_range(0.1..=10.0);
        let shift: f64 = rng.gen_range(-100.0..=100.0);
        for sign in [1.0, -1.0] {
            let p = data
                .predicted()
                .iter()
                .map(|x| sign * slope * x + shift)
                .collect();
            let moved = PairedSeries::new(data.actual().to_vec(), p, true).unwrap();
            let got = m(Id::R, &moved)?;
            ensure((got - sign * r).abs() <= tol * r.abs().max(1e-3), || {
                format!(
                    "case {case}: R under affine map (sign {sign}): {got} vs {}",
                    sign * r
                )
            })?;
        }
    }

    let transforms: [(&str, Transform); 3] = [
        ("3x + 1", |x| 3.0 * x + 1.0),
        ("x^3", |x| x * x * x),
        ("exp", f64::exp),
    ];
    for case in 0..1_000 {
        let n = rng.gen_range(2..=50);
        let labels: Vec<bool> = (0..n)
            .map(|i| if i < 2 { i == 0 } else { rng.gen() })
            .collect();
        let scores: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(-64..=64) as f64 / 16.0)
            .collect();
        let data = ScoredBinarySet::from_bools(&labels, scores).unwrap();
        let base = val(&auc(&roc_curve(&data).map_err(|e| e.to_string())?))?;
        for (name, f) in transforms {
            let t = data.map_scores(f).map_err(|e| e.to_string())?;
            let got = val(&auc(&roc_curve(&t).map_err(|e| e.to_string())?))?;
            ensure((got - base).abs() <= tol, || {
                format!("case {case}: AUC under {name}: {got} vs {base}")
            })?;
        }
        let flipped = data.map_scores(|x| -x).map_err(|e| e.to_string())?;
        let got = val(&auc(&roc_curve(&flipped).map_err(|e| e.to_string())?))?;
        ensure((got - (1.0 - base)).abs() <= tol, || {
            format!("case {case}: reversed AUC {got} vs {}", 1.0 - base)
        })?;
    }
    Ok("1000 regression scalings, 1000 affine R maps, 1000 AUC transform sets".into())
}

fn criterion_9() -> Check {
    let start = Instant::now();
    for (name, args) in common::GOLDEN {
        let first = common::run(args);
        let second = common::run(args);
        ensure(first.code == 0, || {
            format!("{name}: exit {} ({})", first.code, first.stderr)
        })?;
        ensure(first.stdout == second.stdout, || {
            format!("{name}: runs differ")
        })?;
        let golden = fs::read_to_string(common::golden_dir().join(format!("{name}.json")))
            .map_err(|e| e.to_string())?;
        ensure(first.stdout == golden, || {
            format!("{name}: differs from golden file")
        })?;
    }
    for (name, args, code) in common::EXIT_CASES {
        let r = common::run(args);
        ensure(r.code == *code, || {
            format!("{name}: exit {} want {code}", r.code)
        })?;
    }
    within_budget(start, Duration::from_secs(5))?;
    Ok(format!(
        "{} golden fixtures, {} exit-code fixtures, {:?}",
        common::GOLDEN.len(),
        common::EXIT_CASES.len(),
        start.elapsed()
    ))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 10_000;
    let labels: Vec<Label> = (0..n).map(|_| Label::from(rng.gen_bool(0.5))).collect();
    let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let data = ScoredBinarySet::new(labels, scores).unwrap();
    let mut lifts = Vec::new();
    for fraction in [0.25, 0.5, 0.75] {
        let l = val(&lift(&data, fraction).map_err(|e| e.to_string())?.value)?;
        ensure((l - 1.0).abs() <= 0.05, || {
            format!("lift at {fraction}: {l}")
        })?;
        lifts.push(format!("{l:.4}"));
    }
    let a = val(&auc(&roc_curve(&data).map_err(|e| e.to_string())?))?;
    ensure((a - 0.5).abs() <= 0.02, || {
        format!("AUC of random scores {a}")
    })?;
    Ok(format!(
        "lift at 0.25/0.5/0.75 = {}, AUC = {a:.4}",
        lifts.join("/")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("identity chains", criterion_1),
        ("MAE <= RMSE <= sqrt(n) MAE", criterion_2),
        ("AUC brute-force oracle", criterion_3),
        ("fixture values", criterion_4),
        ("definedness catalog", criterion_5),
        ("multi-criteria validation", criterion_6),
        ("cross-module identities", criterion_7),
        ("scale and transform invariance", criterion_8),
        ("CLI determinism and exit codes", criterion_9),
        ("statistical sanity", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
