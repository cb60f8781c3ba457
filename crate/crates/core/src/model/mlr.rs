//! Ridge-penalized multinomial logistic regression.
//!
//! Inputs are z-scored with a [`Scaler`] fitted on the training data. The
//! objective is the summed negative log-likelihood plus `ridge` times the
//! squared non-intercept weights. The last class's row is pinned to zero,
//! so `K - 1` rows of `D + 1` weights are free.

use serde::{Deserialize, Serialize};

use super::lbfgs::{self, LbfgsOptions};
use super::scaler::Scaler;
use crate::error::{Error, Result};
use crate::level::CefrLabel;

pub const DEFAULT_RIDGE: f64 = 1e-8;
pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy)]
pub struct TrainOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            tolerance: 1e-6,
            max_iterations: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingInfo {
    pub iterations: usize,
    pub converged: bool,
    pub final_nll: f64,
    /// Flags and seed of the producing invocation, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invocation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlrModel {
    pub format_version: u64,
    /// Ascending CEFR order.
    pub labels: Vec<CefrLabel>,
    pub feature_names: Vec<String>,
    pub ridge: f64,
    pub scaler: Scaler,
    /// `K` rows of `D + 1` weights; the last column is the intercept.
    pub weights: Vec<Vec<f64>>,
    pub training: TrainingInfo,
}

/// Standardized training problem with class indices.
pub struct Problem {
    /// Standardized rows.
    pub rows: Vec<Vec<f64>>,
    pub classes: Vec<usize>,
    pub n_classes: usize,
    pub ridge: f64,
}

impl Problem {
    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Number of free parameters: `(K - 1) * (D + 1)`.
    pub fn n_params(&self) -> usize {
        (self.n_classes - 1) * (self.dim() + 1)
    }

    /// Penalized NLL at `params`, writing the gradient into `grad`.
    pub fn objective(&self, params: &[f64], grad: &mut [f64]) -> f64 {
        let d = self.dim();
        let k_free = self.n_classes - 1;
        let stride = d + 1;
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut nll = 0.0;
        let mut scores = vec![0.0; self.n_classes];
        for (x, &y) in self.rows.iter().zip(&self.classes) {
            for (k, s) in scores.iter_mut().enumerate().take(k_free) {
                let w = &params[k * stride..(k + 1) * stride];
                *s = w[d] + w[..d].iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
            }
            scores[k_free] = 0.0;
            let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let z: f64 = scores.iter().map(|s| (s - max).exp()).sum();
            let log_z = max + z.ln();
            nll += log_z - scores[y];
            for k in 0..k_free {
                let p = (scores[k] - log_z).exp();
                let r = p - if k == y { 1.0 } else { 0.0 };
                let g = &mut grad[k * stride..(k + 1) * stride];
                for (gj, xj) in g[..d].iter_mut().zip(x) {
                    *gj += r * xj;
                }
                g[d] += r;
            }
        }
        let mut penalty = 0.0;
        for k in 0..k_free {
            for j in 0..d {
                let w = params[k * stride + j];
                penalty += w * w;
                grad[k * stride + j] += 2.0 * self.ridge * w;
            }
        }
        nll + self.ridge * penalty
    }
}

fn check_rows(x: &[Vec<f64>]) -> Result<usize> {
    let dim = x.first().map_or(0, Vec::len);
    for r in x {
        if r.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                actual: r.len(),
            });
        }
        if r.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite feature value"));
        }
    }
    Ok(dim)
}

pub fn train_mlr(
    x: &[Vec<f64>],
    y: &[CefrLabel],
    feature_names: &[String],
    ridge: f64,
    opts: &TrainOptions,
) -> Result<MlrModel> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "{} feature rows but {} labels",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::invalid("need at least 2 training instances"));
    }
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::invalid("ridge must be a finite non-negative number"));
    }
    let dim = check_rows(x)?;
    if feature_names.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            actual: feature_names.len(),
        });
    }
    let mut labels: Vec<CefrLabel> = y.to_vec();
    labels.sort();
    labels.dedup();
    if labels.len() < 2 {
        return Err(Error::invalid("need at least 2 distinct labels"));
    }

    let scaler = Scaler::fit(x)?;
    let problem = Problem {
        rows: x.iter().map(|r| scaler.transform(r)).collect(),
        classes: y
            .iter()
            .map(|l| labels.binary_search(l).expect("label collected above"))
            .collect(),
        n_classes: labels.len(),
        ridge,
    };
    let result = lbfgs::minimize(
        |p, g| problem.objective(p, g),
        vec![0.0; problem.n_params()],
        &LbfgsOptions {
            tolerance: opts.tolerance,
            max_iterations: opts.max_iterations,
            ..LbfgsOptions::default()
        },
    );
    if !result.converged {
        log::warn!(
            "logistic regression did not converge after {} iterations (gradient sup-norm {:.3e})",
            result.iterations,
            result.gradient_norm
        );
    }

    let stride = dim + 1;
    let mut weights: Vec<Vec<f64>> = result.x.chunks(stride).map(<[f64]>::to_vec).collect();
    weights.push(vec![0.0; stride]);
    Ok(MlrModel {
        format_version: FORMAT_VERSION,
        labels,
        feature_names: feature_names.to_vec(),
        ridge,
        scaler,
        weights,
        training: TrainingInfo {
            iterations: result.iterations,
            converged: result.converged,
            final_nll: result.value,
            invocation: None,
        },
    })
}

/// Index of the largest probability; ties go to the lower level.
pub fn argmax_lowest(p: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in p.iter().enumerate().skip(1) {
        if v > p[best] {
            best = i;
        }
    }
    best
}

impl MlrModel {
    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        let z = self.scaler.transform(x);
        let d = self.dim();
        let scores: Vec<f64> = self
            .weights
            .iter()
            .map(|w| w[d] + w[..d].iter().zip(&z).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        Ok(softmax(&scores))
    }

    pub fn predict_label(&self, x: &[f64]) -> Result<CefrLabel> {
        let p = self.predict_proba(x)?;
        Ok(self.labels[argmax_lowest(&p)])
    }

    /// Frobenius norm of the non-intercept weights.
    pub fn weight_norm(&self) -> f64 {
        let d = self.dim();
        self.weights
            .iter()
            .flat_map(|w| &w[..d])
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if self.labels.is_empty() || self.weights.len() != self.labels.len() {
            return Err(Error::invalid("weight rows do not match labels"));
        }
        if self.weights.iter().any(|w| w.len() != d + 1) {
            return Err(Error::invalid("weight row length is not D + 1"));
        }
        if self.scaler.dim() != d {
            return Err(Error::invalid("scaler dimension does not match features"));
        }
        if self.weights.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite weight"));
        }
        if self.scaler.stds.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::invalid("scaler std must be positive"));
        }
        Ok(())
    }
}

pub fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let z: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / z).collect()
}
