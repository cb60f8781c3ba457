use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level::CefrLabel;

/// Always predicts the most frequent training label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityModel {
    pub label: CefrLabel,
}

/// Most frequent label; ties go to the lower level.
pub fn train_majority(y: &[CefrLabel]) -> Result<MajorityModel> {
    let mut counts = [0usize; 6];
    for l in y {
        counts[usize::from(l.ordinal() - 1)] += 1;
    }
    let (best, &count) = counts
        .iter()
        .enumerate()
        .rev()
        .max_by_key(|(_, c)| **c)
        .ok_or_else(|| Error::invalid("no labels"))?;
    if count == 0 {
        return Err(Error::invalid("cannot train a majority model on zero labels"));
    }
    Ok(MajorityModel {
        label: CefrLabel::LEXICAL[best],
    })
}
