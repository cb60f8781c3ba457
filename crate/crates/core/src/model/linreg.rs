//! Ridge least squares on the ordinal level encoding (A1 = 1 … C1 = 5).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::scaler::Scaler;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinRegModel {
    pub feature_names: Vec<String>,
    pub ridge: f64,
    pub scaler: Scaler,
    /// `D` weights on standardized inputs followed by the intercept.
    pub weights: Vec<f64>,
}

/// Fit `y ≈ w·z + b` on standardized inputs `z`, penalizing `λ‖w‖²`.
///
/// Rank-deficient systems get the minimum-norm solution.
pub fn train_linreg(
    x: &[Vec<f64>],
    y: &[f64],
    feature_names: &[String],
    ridge: f64,
) -> Result<LinRegModel> {
    if x.len() != y.len() {
        return Err(Error::invalid("feature rows and targets differ in length"));
    }
    if x.len() < 2 {
        return Err(Error::invalid("need at least 2 training instances"));
    }
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::invalid("ridge must be a finite non-negative number"));
    }
    if x.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite feature or target value"));
    }
    let scaler = Scaler::fit(x)?;
    let d = scaler.dim();
    if feature_names.len() != d {
        return Err(Error::Dimension {
            expected: d,
            actual: feature_names.len(),
        });
    }
    let n = x.len();
    let design = DMatrix::from_fn(n, d + 1, |i, j| {
        if j == d {
            1.0
        } else {
            (x[i][j] - scaler.means[j]) / scaler.stds[j]
        }
    });
    let target = DVector::from_column_slice(y);
    let mut gram = design.transpose() * &design;
    for j in 0..d {
        gram[(j, j)] += ridge;
    }
    let rhs = design.transpose() * target;
    let solution = gram
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::invalid(format!("least squares solve failed: {e}")))?;
    Ok(LinRegModel {
        feature_names: feature_names.to_vec(),
        ridge,
        scaler,
        weights: solution.iter().copied().collect(),
    })
}

impl LinRegModel {
    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    /// Unclamped real-valued prediction.
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        let z = self.scaler.transform(x);
        let d = self.dim();
        Ok(self.weights[d] + self.weights[..d].iter().zip(&z).map(|(a, b)| a * b).sum::<f64>())
    }

    /// Slopes and intercept on the original (unstandardized) scale.
    pub fn raw_coefficients(&self) -> (Vec<f64>, f64) {
        let d = self.dim();
        let slopes: Vec<f64> = (0..d)
            .map(|j| self.weights[j] / self.scaler.stds[j])
            .collect();
        let intercept = self.weights[d]
            - slopes
                .iter()
                .zip(&self.scaler.means)
                .map(|(s, m)| s * m)
                .sum::<f64>();
        (slopes, intercept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into()]
    }

    #[test]
    fn exact_fit() {
        let x = vec![vec![1.0], vec![2.0], vec![3.0]];
        let m = train_linreg(&x, &[1.0, 2.0, 3.0], &names(), 0.0).unwrap();
        let (slopes, b) = m.raw_coefficients();
        assert!((slopes[0] - 1.0).abs() < 1e-12);
        assert!(b.abs() < 1e-12);
        for (xi, yi) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((m.predict(xi).unwrap() - yi).abs() < 1e-12);
        }
    }

    #[test]
    fn hand_least_squares() {
        let x = vec![vec![0.0], vec![1.0], vec![2.0]];
        let m = train_linreg(&x, &[1.0, 2.0, 2.0], &names(), 0.0).unwrap();
        let (slopes, b) = m.raw_coefficients();
        assert!((slopes[0] - 0.5).abs() < 1e-12);
        assert!((b - 7.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn constant_feature_is_harmless() {
        let x = vec![vec![0.0, 4.0], vec![1.0, 4.0], vec![2.0, 4.0]];
        let m = train_linreg(&x, &[1.0, 2.0, 3.0], &["a".into(), "b".into()], 0.0).unwrap();
        assert!((m.predict(&[1.5, 4.0]).unwrap() - 2.5).abs() < 1e-9);
    }

    #[test]
    fn ridge_shrinks_slope() {
        let x = vec![vec![0.0], vec![1.0], vec![2.0]];
        let y = [1.0, 2.0, 3.0];
        let a = train_linreg(&x, &y, &names(), 0.0).unwrap();
        let b = train_linreg(&x, &y, &names(), 10.0).unwrap();
        assert!(b.weights[0].abs() < a.weights[0].abs());
    }
}
