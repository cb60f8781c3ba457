use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-dimension z-score standardization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    /// Population standard deviations; degenerate dimensions store 1.
    pub stds: Vec<f64>,
}

impl Scaler {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if rows.is_empty() {
            return Err(Error::invalid("cannot fit a scaler on zero rows"));
        }
        let n = rows.len() as f64;
        let mut means = vec![0.0; dim];
        for r in rows {
            if r.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    actual: r.len(),
                });
            }
            for (m, x) in means.iter_mut().zip(r) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);
        let mut stds = vec![0.0; dim];
        for r in rows {
            for ((s, x), m) in stds.iter_mut().zip(r).zip(&means) {
                *s += (x - m) * (x - m);
            }
        }
        for (s, m) in stds.iter_mut().zip(&means) {
            let sd = (*s / n).sqrt();
            // constant columns can leave rounding noise instead of an exact 0
            *s = if sd > 1e-12 * m.abs().max(1.0) { sd } else { 1.0 };
        }
        Ok(Scaler { means, stds })
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }

    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((x, m), s)| (x - m) / s)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardizes_columns() {
        let s = Scaler::fit(&[vec![1.0, 5.0], vec![3.0, 5.0]]).unwrap();
        assert_eq!(s.means, vec![2.0, 5.0]);
        assert_eq!(s.stds, vec![1.0, 1.0]);
        assert_eq!(s.transform(&[3.0, 5.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn constant_column_rounding_noise_is_ignored() {
        // ten copies of 0.1 do not average back to exactly 0.1
        let rows: Vec<Vec<f64>> = vec![vec![0.1]; 10];
        let s = Scaler::fit(&rows).unwrap();
        assert_eq!(s.stds, vec![1.0]);
    }
}
