#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary with the fixtures directory as working directory.
pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fitmetrics"))
        .args(args)
        .current_dir(fixtures_dir())
        .output()
        .expect("spawn fitmetrics");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub const GOLDEN: &[(&str, &[&str])] = &[
    (
        "regress_f1_all",
        &[
            "regress",
            "--input",
            "f1.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
        ],
    ),
    (
        "regress_signed_ordered",
        &[
            "regress",
            "--input",
            "signed.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
            "--ordered",
        ],
    ),
    (
        "regress_mape_zero",
        &[
            "regress",
            "--input",
            "mape_zero.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
            "--metrics",
            "MAPE,MAE",
        ],
    ),
    (
        "classify_c1",
        &[
            "classify",
            "--input",
            "c1.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "yes",
        ],
    ),
    (
        "curves_s1_roc",
        &[
            "curves",
            "--kind",
            "roc",
            "--input",
            "s1.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "pos",
        ],
    ),
    (
        "curves_s1_pr_lift",
        &[
            "curves",
            "--kind",
            "pr",
            "--input",
            "s1.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "pos",
            "--lift-fraction",
            "0.5",
        ],
    ),
    (
        "curves_cal200",
        &[
            "curves",
            "--kind",
            "roc",
            "--input",
            "cal200.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "pos",
            "--cal",
        ],
    ),
    (
        "validate_tropsha_perfect",
        &["validate", "--check", "tropsha", "--input", "perfect.csv"],
    ),
    (
        "validate_objective",
        &[
            "validate",
            "--check",
            "objective",
            "--train",
            "train.csv",
            "--validation",
            "validation.csv",
        ],
    ),
    (
        "validate_ri",
        &[
            "validate",
            "--check",
            "ri",
            "--model",
            "a=model_a.csv",
            "--model",
            "b=model_b.csv",
            "--model",
            "c=model_c.csv",
        ],
    ),
];

/// One invocation per exit-code class, with the expected code.
pub const EXIT_CASES: &[(&str, &[&str], i32)] = &[
    (
        "success",
        &[
            "regress",
            "--input",
            "f1.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
        ],
        0,
    ),
    (
        "usage: missing flag",
        &["regress", "--input", "f1.csv", "--actual-col", "a"],
        1,
    ),
    (
        "usage: unknown metric",
        &[
            "regress",
            "--input",
            "f1.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
            "--metrics",
            "NOPE",
        ],
        1,
    ),
    (
        "usage: non-numeric threshold",
        &[
            "classify",
            "--input",
            "c1.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "yes",
            "--threshold",
            "abc",
        ],
        1,
    ),
    (
        "usage: malformed model",
        &[
            "validate",
            "--check",
            "ri",
            "--model",
            "a",
            "--model",
            "b=model_b.csv",
        ],
        1,
    ),
    (
        "schema: missing column",
        &[
            "regress",
            "--input",
            "missing_col.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
        ],
        2,
    ),
    (
        "data: unparseable number",
        &[
            "regress",
            "--input",
            "bad_number.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
        ],
        2,
    ),
    (
        "data: unreadable file",
        &[
            "regress",
            "--input",
            "no_such_file.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
        ],
        2,
    ),
    (
        "data: calibration below window",
        &[
            "curves",
            "--kind",
            "roc",
            "--input",
            "cal50.csv",
            "--label-col",
            "label",
            "--score-col",
            "score",
            "--positive",
            "pos",
            "--cal",
        ],
        2,
    ),
    (
        "undefined under strict",
        &[
            "regress",
            "--input",
            "mape_zero.csv",
            "--actual-col",
            "a",
            "--predicted-col",
            "p",
            "--metrics",
            "MAPE",
            "--strict",
        ],
        3,
    ),
];
