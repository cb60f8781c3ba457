//! Cross-validation, confusion matrices and evaluation metrics.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::features::{extract_sentence_features, select_by_names, ExtractionContext};
use crate::level::CefrLabel;
use crate::model::mlr::argmax_lowest;
use crate::model::{train_majority, train_mlr, LearnerSpec, MlrModel, TrainOptions};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_FOLDS: usize = 10;

/// Rows are gold labels, columns predictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    labels: Vec<CefrLabel>,
    counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<CefrLabel>) -> Self {
        let k = labels.len();
        ConfusionMatrix {
            labels,
            counts: vec![vec![0; k]; k],
        }
    }

    pub fn from_counts(labels: Vec<CefrLabel>, counts: Vec<Vec<usize>>) -> Result<Self> {
        let k = labels.len();
        if counts.len() != k || counts.iter().any(|r| r.len() != k) {
            return Err(Error::invalid(format!("confusion matrix must be {k}x{k}")));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("confusion labels must be strictly ascending"));
        }
        Ok(ConfusionMatrix { labels, counts })
    }

    pub fn labels(&self) -> &[CefrLabel] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    pub fn get(&self, gold: CefrLabel, predicted: CefrLabel) -> usize {
        match (self.position(gold), self.position(predicted)) {
            (Some(g), Some(p)) => self.counts[g][p],
            _ => 0,
        }
    }

    fn position(&self, label: CefrLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn add(&mut self, gold: CefrLabel, predicted: CefrLabel) -> Result<()> {
        let g = self
            .position(gold)
            .ok_or_else(|| Error::invalid(format!("label {gold} not in matrix")))?;
        let p = self
            .position(predicted)
            .ok_or_else(|| Error::invalid(format!("label {predicted} not in matrix")))?;
        self.counts[g][p] += 1;
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> usize {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Share of gold-`label` instances predicted as something else.
    pub fn error_rate(&self, label: CefrLabel) -> f64 {
        let Some(i) = self.position(label) else {
            return 0.0;
        };
        let support: usize = self.counts[i].iter().sum();
        if support == 0 {
            0.0
        } else {
            (support - self.counts[i][i]) as f64 / support as f64
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("gold\\predicted");
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.counts) {
            let _ = write!(out, "{l}");
            for c in row {
                let _ = write!(out, ",{c}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassMetrics {
    pub label: CefrLabel,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub n: usize,
    pub accuracy: f64,
    /// Predictions within one level of the gold label count as correct.
    pub adjacent_accuracy: f64,
    pub per_class: Vec<ClassMetrics>,
    /// Support-weighted mean of per-class F.
    pub weighted_f: f64,
    pub macro_f: f64,
    /// Over probability vectors; absent for matrix-only reports.
    pub rmse: Option<f64>,
}

fn safe_div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

pub fn matrix_metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::invalid("confusion matrix is empty"));
    }
    let k = cm.labels.len();
    let mut adjacent = 0;
    for (g, row) in cm.counts.iter().enumerate() {
        for (p, &c) in row.iter().enumerate() {
            if cm.labels[g].ordinal().abs_diff(cm.labels[p].ordinal()) <= 1 {
                adjacent += c;
            }
        }
    }
    let per_class: Vec<ClassMetrics> = (0..k)
        .map(|i| {
            let tp = cm.counts[i][i] as f64;
            let support: usize = cm.counts[i].iter().sum();
            let predicted: usize = cm.counts.iter().map(|r| r[i]).sum();
            let precision = safe_div(tp, predicted as f64);
            let recall = safe_div(tp, support as f64);
            ClassMetrics {
                label: cm.labels[i],
                precision,
                recall,
                f1: safe_div(2.0 * precision * recall, precision + recall),
                support,
            }
        })
        .collect();
    let weighted_f = per_class
        .iter()
        .map(|c| c.f1 * c.support as f64)
        .sum::<f64>()
        / total as f64;
    let macro_f = per_class.iter().map(|c| c.f1).sum::<f64>() / k as f64;
    Ok(MetricsReport {
        n: total,
        accuracy: cm.correct() as f64 / total as f64,
        adjacent_accuracy: adjacent as f64 / total as f64,
        per_class,
        weighted_f,
        macro_f,
        rmse: None,
    })
}

impl MetricsReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("metric\tvalue\n");
        let _ = writeln!(out, "n\t{}", self.n);
        let _ = writeln!(out, "accuracy\t{:.6}", self.accuracy);
        let _ = writeln!(out, "adjacent_accuracy\t{:.6}", self.adjacent_accuracy);
        let _ = writeln!(out, "weighted_f\t{:.6}", self.weighted_f);
        let _ = writeln!(out, "macro_f\t{:.6}", self.macro_f);
        if let Some(r) = self.rmse {
            let _ = writeln!(out, "rmse\t{r:.6}");
        }
        for c in &self.per_class {
            let _ = writeln!(out, "precision_{}\t{:.6}", c.label, c.precision);
            let _ = writeln!(out, "recall_{}\t{:.6}", c.label, c.recall);
            let _ = writeln!(out, "f_{}\t{:.6}", c.label, c.f1);
            let _ = writeln!(out, "support_{}\t{}", c.label, c.support);
        }
        out
    }
}

/// `a + b` as a rounded sum plus its exact rounding error.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Neumaier compensated sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.carry += e;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Root mean squared error between probability vectors and one-hot golds,
/// averaged over all N·K cells.
///
/// Differences and squares are split into exact parts and summed with
/// compensation, so the result is the correctly rounded value for typical
/// inputs (uniform 0.2 over five classes gives exactly 0.4).
pub fn rmse_prob(probabilities: &[Vec<f64>], golds: &[usize]) -> f64 {
    let mut acc = CompensatedSum::default();
    let mut cells = 0usize;
    for (p, &g) in probabilities.iter().zip(golds) {
        for (k, &pk) in p.iter().enumerate() {
            let y = if k == g { 1.0 } else { 0.0 };
            let (d, d_err) = two_sum(pk, -y);
            let sq = d * d;
            acc.add(sq);
            acc.add(d.mul_add(d, -sq));
            acc.add(d_err * (2.0 * d + d_err));
        }
        cells += p.len();
    }
    if cells == 0 {
        0.0
    } else {
        (acc.value() / cells as f64).sqrt()
    }
}

/// Root mean squared error of real-valued predictions.
pub fn rmse(predictions: &[f64], golds: &[f64]) -> f64 {
    let n = predictions.len().min(golds.len());
    if n == 0 {
        return 0.0;
    }
    let sum: f64 = predictions
        .iter()
        .zip(golds)
        .map(|(p, g)| (p - g) * (p - g))
        .sum();
    (sum / n as f64).sqrt()
}

/// Sample Pearson correlation. Zero variance on either side yields 0 with
/// a logged warning.
pub fn pearson(predictions: &[f64], golds: &[f64]) -> Result<f64> {
    if predictions.len() != golds.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} predictions vs {} golds",
            predictions.len(),
            golds.len()
        )));
    }
    let n = predictions.len();
    if n < 2 {
        return Err(Error::invalid("pearson needs at least 2 points"));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mp, mg) = (mean(predictions), mean(golds));
    let mut cov = 0.0;
    let mut vp = 0.0;
    let mut vg = 0.0;
    for (p, g) in predictions.iter().zip(golds) {
        cov += (p - mp) * (g - mg);
        vp += (p - mp) * (p - mp);
        vg += (g - mg) * (g - mg);
    }
    if vp == 0.0 || vg == 0.0 {
        log::warn!("pearson correlation undefined for zero variance; reporting 0");
        return Ok(0.0);
    }
    Ok(cov / (vp.sqrt() * vg.sqrt()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    /// Fold index per instance.
    pub assignment: Vec<usize>,
}

impl FoldPlan {
    /// `(train, test)` instance indices for one fold.
    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        (0..self.assignment.len()).partition(|&i| self.assignment[i] != fold)
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Stratified fold assignment: each class is shuffled with the seeded
/// generator and dealt round-robin, continuing where the previous class
/// stopped so overall fold sizes also stay within one of each other.
pub fn stratified_folds(labels: &[CefrLabel], k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::invalid("need at least 2 folds"));
    }
    if k > labels.len() {
        return Err(Error::invalid(format!(
            "{k} folds requested for {} instances",
            labels.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    let mut offset = 0;
    for class in CefrLabel::LEXICAL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for (j, &i) in members.iter().enumerate() {
            assignment[i] = (offset + j) % k;
        }
        offset += members.len();
    }
    Ok(FoldPlan {
        k,
        seed,
        assignment,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub index: usize,
    pub gold: CefrLabel,
    pub predicted: CefrLabel,
    /// Aligned with [`CvOutcome::labels`].
    pub probabilities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvOutcome {
    pub labels: Vec<CefrLabel>,
    pub confusion: ConfusionMatrix,
    pub report: MetricsReport,
    /// Held-out predictions in instance order.
    pub records: Vec<PredictionRecord>,
    /// Folds whose logistic fit stopped at the iteration cap.
    pub unconverged_folds: usize,
}

/// Train on k − 1 folds, predict the held-out fold, and pool all held-out
/// predictions into one matrix and report.
pub fn cross_validate(
    features: &[Vec<f64>],
    labels: &[CefrLabel],
    spec: &LearnerSpec,
    plan: &FoldPlan,
) -> Result<CvOutcome> {
    cross_validate_with(features, labels, spec, plan, &TrainOptions::default())
}

pub fn cross_validate_with(
    features: &[Vec<f64>],
    labels: &[CefrLabel],
    spec: &LearnerSpec,
    plan: &FoldPlan,
    opts: &TrainOptions,
) -> Result<CvOutcome> {
    if features.len() != labels.len() || plan.assignment.len() != labels.len() {
        return Err(Error::invalid(
            "features, labels and fold plan must cover the same instances",
        ));
    }
    let mut all_labels = labels.to_vec();
    all_labels.sort();
    all_labels.dedup();
    let dim = features.first().map_or(0, Vec::len);
    let names: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();

    let mut slots: Vec<Option<PredictionRecord>> = vec![None; labels.len()];
    let mut unconverged = 0;
    for fold in 0..plan.k {
        let (train, test) = plan.split(fold);
        if test.is_empty() {
            continue;
        }
        let train_y: Vec<CefrLabel> = train.iter().map(|&i| labels[i]).collect();
        let mut distinct = train_y.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::invalid(format!(
                "fold {fold}: training part has fewer than 2 classes"
            )));
        }
        let predict: Box<dyn Fn(&[f64]) -> Result<Vec<f64>>> = match *spec {
            LearnerSpec::Logistic { ridge } => {
                let train_x: Vec<Vec<f64>> = train.iter().map(|&i| features[i].clone()).collect();
                let model = train_mlr(&train_x, &train_y, &names, ridge, opts)?;
                if !model.training.converged {
                    unconverged += 1;
                }
                let positions: Vec<usize> = model
                    .labels
                    .iter()
                    .map(|l| all_labels.binary_search(l).expect("subset of all labels"))
                    .collect();
                let k = all_labels.len();
                Box::new(move |x: &[f64]| {
                    let p = model.predict_proba(x)?;
                    let mut full = vec![0.0; k];
                    for (pos, v) in positions.iter().zip(p) {
                        full[*pos] = v;
                    }
                    Ok(full)
                })
            }
            LearnerSpec::Majority => {
                let m = train_majority(&train_y)?;
                let pos = all_labels.binary_search(&m.label).expect("seen label");
                let k = all_labels.len();
                Box::new(move |_: &[f64]| {
                    let mut p = vec![0.0; k];
                    p[pos] = 1.0;
                    Ok(p)
                })
            }
        };
        for &i in &test {
            let probabilities = predict(&features[i])?;
            let predicted = all_labels[argmax_lowest(&probabilities)];
            slots[i] = Some(PredictionRecord {
                index: i,
                gold: labels[i],
                predicted,
                probabilities,
            });
        }
    }

    let records: Vec<PredictionRecord> = slots
        .into_iter()
        .map(|r| r.ok_or_else(|| Error::invalid("fold plan left an instance unpredicted")))
        .collect::<Result<_>>()?;
    let mut confusion = ConfusionMatrix::new(all_labels.clone());
    for r in &records {
        confusion.add(r.gold, r.predicted)?;
    }
    let mut report = matrix_metrics(&confusion)?;
    let golds: Vec<usize> = records
        .iter()
        .map(|r| all_labels.binary_search(&r.gold).expect("seen label"))
        .collect();
    let probs: Vec<Vec<f64>> = records.iter().map(|r| r.probabilities.clone()).collect();
    report.rmse = Some(rmse_prob(&probs, &golds));
    Ok(CvOutcome {
        labels: all_labels,
        confusion,
        report,
        records,
        unconverged_folds: unconverged,
    })
}

/// Per-instance prediction log: unit id, gold, predicted, probabilities.
pub fn predictions_tsv(outcome: &CvOutcome, ids: &[String]) -> String {
    let mut out = String::from("unit_id\tgold\tpredicted");
    for l in &outcome.labels {
        let _ = write!(out, "\tp_{l}");
    }
    out.push('\n');
    for r in &outcome.records {
        let id = ids.get(r.index).map_or("", String::as_str);
        let _ = write!(out, "{id}\t{}\t{}", r.gold, r.predicted);
        for p in &r.probabilities {
            let _ = write!(out, "\t{p:.6}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryLevel {
    /// A1, A2, B1
    AtMostB1,
    /// B2, C1
    AboveB1,
}

impl BinaryLevel {
    pub fn of(label: CefrLabel) -> Self {
        if label <= CefrLabel::B1 {
            BinaryLevel::AtMostB1
        } else {
            BinaryLevel::AboveB1
        }
    }

    fn index(self) -> usize {
        match self {
            BinaryLevel::AtMostB1 => 0,
            BinaryLevel::AboveB1 => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryCollapse {
    /// `[gold][predicted]`, index 0 = ≤B1, 1 = >B1.
    pub counts: [[usize; 2]; 2],
    pub accuracy: f64,
    pub precision_low: f64,
    pub precision_high: f64,
}

impl BinaryCollapse {
    fn from_counts(counts: [[usize; 2]; 2]) -> Self {
        let total: usize = counts.iter().flatten().sum();
        let col = |j: usize| (counts[0][j] + counts[1][j]) as f64;
        BinaryCollapse {
            counts,
            accuracy: safe_div((counts[0][0] + counts[1][1]) as f64, total as f64),
            precision_low: safe_div(counts[0][0] as f64, col(0)),
            precision_high: safe_div(counts[1][1] as f64, col(1)),
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }
}

/// Collapse a five-level matrix into ≤B1 versus >B1.
pub fn collapse_binary(cm: &ConfusionMatrix) -> BinaryCollapse {
    let mut counts = [[0usize; 2]; 2];
    for (g, row) in cm.counts.iter().enumerate() {
        for (p, &c) in row.iter().enumerate() {
            let gi = BinaryLevel::of(cm.labels[g]).index();
            let pi = BinaryLevel::of(cm.labels[p]).index();
            counts[gi][pi] += c;
        }
    }
    BinaryCollapse::from_counts(counts)
}

/// Collapse `(gold, predicted)` pairs into ≤B1 versus >B1.
pub fn collapse_predictions(pairs: &[(CefrLabel, CefrLabel)]) -> BinaryCollapse {
    let mut counts = [[0usize; 2]; 2];
    for &(g, p) in pairs {
        counts[BinaryLevel::of(g).index()][BinaryLevel::of(p).index()] += 1;
    }
    BinaryCollapse::from_counts(counts)
}

/// Share of sentences predicted at each level, per document level.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    /// Indexed by document level A1..C1, then predicted level A1..C1.
    pub proportions: [[f64; 5]; 5],
    pub sentence_counts: [usize; 5],
}

impl DistributionTable {
    pub fn row(&self, level: CefrLabel) -> [f64; 5] {
        self.proportions[usize::from(level.ordinal() - 1)]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("document_level,sentences");
        for l in CefrLabel::CLASSES {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (i, l) in CefrLabel::CLASSES.iter().enumerate() {
            let _ = write!(out, "{l},{}", self.sentence_counts[i]);
            for p in &self.proportions[i] {
                let _ = write!(out, ",{p:.6}");
            }
            out.push('\n');
        }
        out
    }
}

/// Build the table from `(document level, predicted sentence level)` pairs.
pub fn distribution_from_pairs(
    pairs: impl IntoIterator<Item = (CefrLabel, CefrLabel)>,
) -> Result<DistributionTable> {
    let mut counts = [[0usize; 5]; 5];
    for (doc, pred) in pairs {
        if !doc.is_class() || !pred.is_class() {
            return Err(Error::invalid("levels must be within A1..C1"));
        }
        counts[usize::from(doc.ordinal() - 1)][usize::from(pred.ordinal() - 1)] += 1;
    }
    let mut proportions = [[0.0; 5]; 5];
    let mut sentence_counts = [0; 5];
    for (i, row) in counts.iter().enumerate() {
        let total: usize = row.iter().sum();
        sentence_counts[i] = total;
        if total > 0 {
            for (j, &c) in row.iter().enumerate() {
                proportions[i][j] = c as f64 / total as f64;
            }
        }
    }
    Ok(DistributionTable {
        proportions,
        sentence_counts,
    })
}

/// Classify every sentence of every document with a sentence-level model.
pub fn sentence_distribution(
    model: &MlrModel,
    documents: &[Document],
    ctx: &ExtractionContext<'_>,
) -> Result<DistributionTable> {
    let mut pairs = Vec::new();
    for doc in documents {
        for s in &doc.sentences {
            let v = extract_sentence_features(s, ctx)?;
            let x = select_by_names(&v, &model.feature_names)?;
            pairs.push((doc.level, model.predict_label(&x)?));
        }
    }
    distribution_from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CefrLabel::*;

    #[test]
    fn balanced_stratification() {
        let labels: Vec<CefrLabel> = (0..10).map(|i| if i % 2 == 0 { A1 } else { B2 }).collect();
        let plan = stratified_folds(&labels, 5, 7).unwrap();
        for f in 0..5 {
            let (_, test) = plan.split(f);
            assert_eq!(test.len(), 2);
            assert_eq!(test.iter().filter(|&&i| labels[i] == A1).count(), 1);
        }
        assert_eq!(plan, stratified_folds(&labels, 5, 7).unwrap());
    }

    #[test]
    fn pigeonhole_fold_sizes() {
        let plan = stratified_folds(&[C1; 7], 3, 1).unwrap();
        let mut sizes = plan.fold_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 3]);
    }

    #[test]
    fn too_many_folds() {
        assert!(stratified_folds(&[A1, A2], 3, 0).is_err());
        assert!(stratified_folds(&[A1, A2], 1, 0).is_err());
    }

    #[test]
    fn rmse_fixtures() {
        assert_eq!(rmse_prob(&[vec![1.0, 0.0], vec![0.0, 1.0]], &[0, 1]), 0.0);
        let u5 = vec![vec![0.2; 5]; 3];
        assert_eq!(rmse_prob(&u5, &[0, 3, 4]), 0.4);
        let u2 = vec![vec![0.5; 2]; 4];
        assert_eq!(rmse_prob(&u2, &[0, 1, 1, 0]), 0.5);
    }

    #[test]
    fn pearson_fixtures() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(pearson(&x, &[2.0; 4]).unwrap(), 0.0);
        assert!(pearson(&x, &x[..3]).is_err());
    }

    #[test]
    fn collapse_identity() {
        let counts = (0..5)
            .map(|i| (0..5).map(|j| usize::from(i == j)).collect())
            .collect();
        let cm = ConfusionMatrix::from_counts(CefrLabel::CLASSES.to_vec(), counts).unwrap();
        let b = collapse_binary(&cm);
        assert_eq!(b.counts, [[3, 0], [0, 2]]);
        assert_eq!(b.accuracy, 1.0);
    }

    #[test]
    fn collapse_all_a1_predictions() {
        let pairs: Vec<_> = CefrLabel::CLASSES.iter().map(|&g| (g, A1)).collect();
        let b = collapse_predictions(&pairs);
        assert_eq!(b.counts[0][1] + b.counts[1][1], 0);
        assert_eq!(b.total(), 5);
    }

    #[test]
    fn empty_matrix_has_no_metrics() {
        assert!(matrix_metrics(&ConfusionMatrix::new(vec![A1, A2])).is_err());
    }

    #[test]
    fn distribution_single_b1_doc() {
        let t = distribution_from_pairs(vec![(B1, B1); 4]).unwrap();
        assert_eq!(t.row(B1), [0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(t.row(A1), [0.0; 5]);
    }
}
