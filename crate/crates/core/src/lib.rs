//! CEFR proficiency level prediction for second-language learning material.
//!
//! The pipeline runs from dependency-annotated input ([`corpus`]) through
//! lexical resources ([`lexicon`]) to a 61-dimensional linguistic feature
//! vector ([`features`]), which feeds a ridge-penalized multinomial logistic
//! regression ([`model`]) evaluated by stratified cross-validation
//! ([`eval`]). [`datagen`] produces synthetic corpora so the whole pipeline
//! can be exercised without restricted data.

pub mod cli;
pub mod corpus;
pub mod datagen;
pub mod error;
pub mod eval;
pub mod features;
pub mod level;
pub mod lexicon;
pub mod model;

pub use error::{Error, Result};
pub use level::CefrLabel;
