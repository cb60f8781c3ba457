use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cefrlab::cli::{run_cli, CATMAP_ENV, EXIT_DATA, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

const BIN: &str = env!("CARGO_BIN_EXE_cefrlab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove(CATMAP_ENV)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    let argv: Vec<String> = std::iter::once("cefrlab")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    run_cli(&argv)
}

struct Bundle {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Bundle {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        let out = run(&[
            "gen",
            "--out",
            root.join("data").to_str().unwrap(),
            "--docs-per-level",
            "12",
            "--sentences-per-level",
            "12",
            "--seed",
            "5",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        Bundle { _dir: dir, root }
    }

    fn path(&self, name: &str) -> String {
        self.root.join(name).to_str().unwrap().to_string()
    }

    fn data(&self, name: &str) -> String {
        self.path(&format!("data/{name}"))
    }

    /// Corpus, lexicon and category map arguments.
    fn resources(&self) -> Vec<String> {
        vec![
            "--corpus".into(),
            self.data("corpus.conll"),
            "--kelly".into(),
            self.data("kelly.tsv"),
            "--senses".into(),
            self.data("senses.tsv"),
            "--catmap".into(),
            self.data("categories.catmap"),
        ]
    }
}

fn with<'a>(head: &[&'a str], tail: &'a [String]) -> Vec<&'a str> {
    head.iter().copied().chain(tail.iter().map(String::as_str)).collect()
}

fn read(p: impl AsRef<Path>) -> String {
    fs::read_to_string(p).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn gen_writes_bundle_with_provenance() {
    let b = Bundle::new();
    for name in ["corpus.conll", "kelly.tsv", "senses.tsv", "categories.catmap"] {
        let text = read(b.data(name));
        assert!(text.starts_with("# cefrlab gen --out "), "{name}");
    }
    let manifest: serde_json::Value = serde_json::from_str(&read(b.data("manifest.json"))).unwrap();
    assert_eq!(manifest["seed"], 5);
    assert!(manifest["invocation"].as_str().unwrap().starts_with("cefrlab gen"));
}

#[test]
fn validate_and_stats() {
    let b = Bundle::new();
    let corpus = b.data("corpus.conll");
    let out = run(&["validate", &corpus]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(data_lines(&String::from_utf8_lossy(&out.stdout)).is_empty());

    let stats = b.path("stats.tsv");
    assert_eq!(code(&["stats", "--corpus", &corpus, "--out", &stats]), EXIT_OK);
    let text = read(&stats);
    assert!(text.starts_with("# cefrlab stats"));
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 7, "{text}");
    assert!(rows[1].starts_with("A1\t12\t"), "{}", rows[1]);
}

#[test]
fn train_predict_distribution_pipeline() {
    let b = Bundle::new();
    let res = b.resources();

    let features = b.path("features.tsv");
    assert_eq!(code(&with(&["extract", "--out", &features], &res)), EXIT_OK);
    let text = read(&features);
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 61);
    assert_eq!(rows[0].split('\t').count(), 63);

    let model = b.path("models/text.json");
    assert_eq!(code(&with(&["train", "--model", &model], &res)), EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&read(&model)).unwrap();
    assert!(json["training"]["invocation"].as_str().unwrap().starts_with("cefrlab train"));

    let preds = b.path("predictions.tsv");
    let args = with(
        &["predict", "--model", &model, "--level-mode", "zero-out", "--out", &preds],
        &res,
    );
    assert_eq!(code(&args), EXIT_OK);
    let text = read(&preds);
    let rows = data_lines(&text);
    assert_eq!(rows[0], "unit_id\tgold\tpredicted\tp_A1\tp_A2\tp_B1\tp_B2\tp_C1");
    assert_eq!(rows.len(), 61);
    for r in &rows[1..] {
        let p: Vec<f64> = r.split('\t').skip(3).map(|v| v.parse().unwrap()).collect();
        assert_eq!(p.len(), 5);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9, "{r}");
    }

    let sentence_model = b.path("sentence.json");
    let args = with(&["train", "--unit", "sentence", "--model", &sentence_model], &res);
    assert_eq!(code(&args), EXIT_OK);
    let table = b.path("distribution.csv");
    let args = with(&["distribution", "--model", &sentence_model, "--out", &table], &res);
    assert_eq!(code(&args), EXIT_OK);
    let text = read(&table);
    let rows = data_lines(&text);
    assert_eq!(rows[0], "document_level,sentences,A1,A2,B1,B2,C1");
    for r in &rows[1..] {
        let total: f64 = r.split(',').skip(2).map(|v| v.parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-5, "{r}");
    }
}

#[test]
fn cv_on_a_subgroup_is_deterministic() {
    let b = Bundle::new();
    let res = b.resources();
    let first = b.path("cv1");
    let second = b.path("cv2");
    for dir in [&first, &second] {
        let args = with(&["cv", "--group", "Lex", "--k", "4", "--out", dir], &res);
        assert_eq!(code(&args), EXIT_OK);
    }
    let metrics = read(format!("{first}/metrics.tsv"));
    assert!(metrics.lines().any(|l| l == "features\t11"), "{metrics}");
    for name in ["metrics.tsv", "confusion.csv", "predictions.tsv"] {
        let a = read(format!("{first}/{name}"));
        let b = read(format!("{second}/{name}"));
        assert_eq!(data_lines(&a), data_lines(&b), "{name}");
    }
    let predictions = read(format!("{first}/predictions.tsv"));
    assert_eq!(data_lines(&predictions).len(), 61);

    let out = run(&with(&["cv", "--learner", "majority", "--k", "4"], &res));
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("accuracy\t0.2")), "{stdout}");
}

#[test]
fn catmap_from_environment() {
    let b = Bundle::new();
    // a variant map so that the built-in fallback is distinguishable
    let variant = b.path("variant.catmap");
    let text = read(b.data("categories.catmap")).replace("adjective = JJ", "adjective = XX");
    fs::write(&variant, text).unwrap();
    let base = [
        "--corpus",
        &b.data("corpus.conll"),
        "--kelly",
        &b.data("kelly.tsv"),
        "--senses",
        &b.data("senses.tsv"),
    ]
    .map(String::from);
    let explicit = run(&with(&["extract", "--catmap", &variant], &base));
    let from_env = Command::new(BIN)
        .arg("extract")
        .args(&base)
        .env(CATMAP_ENV, &variant)
        .output()
        .unwrap();
    let builtin = run(&with(&["extract"], &base));
    assert!(explicit.status.success() && from_env.status.success() && builtin.status.success());
    let body = |o: &Output| {
        data_lines(&String::from_utf8_lossy(&o.stdout))
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(body(&explicit), body(&from_env));
    assert_ne!(body(&explicit), body(&builtin));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conll");
    fs::write(&bad, "# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\tx\tROOT\t_\n").unwrap();
    let cyclic = dir.path().join("cyclic.conll");
    fs::write(
        &cyclic,
        "# doc_id = d\n# level = A1\n1\ta\ta\tNN\t_\t2\tSS\t_\n2\tb\tb\tVB\t_\t1\tOO\t_\n",
    )
    .unwrap();
    let empty = dir.path().join("empty.conll");
    fs::write(&empty, "").unwrap();

    assert_eq!(code(&["validate", "--no-such-flag"]), EXIT_USAGE);
    assert_eq!(code(&["validate"]), EXIT_USAGE);
    assert_eq!(code(&["cv", "--k", "lots"]), EXIT_USAGE);
    assert_eq!(code(&["--help"]), EXIT_OK);
    assert_eq!(code(&["validate", bad.to_str().unwrap()]), EXIT_DATA);
    assert_eq!(code(&["validate", "/no/such/file.conll"]), EXIT_DATA);
    assert_eq!(run(&["validate", cyclic.to_str().unwrap()]).status.code(), Some(EXIT_INVALID));
    assert_eq!(code(&["validate", empty.to_str().unwrap()]), EXIT_OK);
}

#[test]
fn stats_on_empty_corpus_is_all_zero() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.conll");
    fs::write(&empty, "").unwrap();
    let out = run(&["stats", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows = data_lines(&stdout);
    assert_eq!(rows.len(), 7);
    for r in &rows[1..] {
        assert!(r.split('\t').skip(1).all(|v| v.parse::<f64>().unwrap() == 0.0), "{r}");
    }
}
