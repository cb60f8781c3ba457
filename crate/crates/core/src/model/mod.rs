//! Classifiers and regressors, plus the versioned JSON model file.

pub mod lbfgs;
pub mod linreg;
pub mod majority;
pub mod mlr;
pub mod scaler;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub use linreg::{train_linreg, LinRegModel};
pub use majority::{train_majority, MajorityModel};
pub use mlr::{train_mlr, MlrModel, TrainOptions, TrainingInfo, DEFAULT_RIDGE, FORMAT_VERSION};
pub use scaler::Scaler;

use crate::error::{Error, Result};

/// Write a model as pretty-printed JSON. Floats are written in shortest
/// round-trip form, so reloading reproduces every weight exactly.
pub fn save_model<W: Write>(model: &MlrModel, mut sink: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut sink, model)?;
    sink.write_all(b"\n")?;
    Ok(())
}

pub fn load_model<R: Read>(mut source: R) -> Result<MlrModel> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    model_from_str(&text)
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: Option<u64>,
}

pub fn model_from_str(text: &str) -> Result<MlrModel> {
    let probe: VersionProbe = serde_json::from_str(text)?;
    match probe.format_version {
        Some(FORMAT_VERSION) => {}
        Some(found) => {
            return Err(Error::FormatVersion {
                found,
                expected: FORMAT_VERSION,
            })
        }
        None => return Err(Error::invalid("model file lacks format_version")),
    }
    let model: MlrModel = serde_json::from_str(text)?;
    model.validate()?;
    Ok(model)
}

pub fn model_to_string(model: &MlrModel) -> Result<String> {
    let mut buf = Vec::new();
    save_model(model, &mut buf)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Which learner to fit, used by cross-validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LearnerSpec {
    Logistic { ridge: f64 },
    Majority,
}

impl Default for LearnerSpec {
    fn default() -> Self {
        LearnerSpec::Logistic {
            ridge: DEFAULT_RIDGE,
        }
    }
}
