use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// CEFR proficiency level.
///
/// Classification uses A1..C1; C2 only occurs on lexicon entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CefrLabel {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl CefrLabel {
    /// The five levels texts and sentences are classified into.
    pub const CLASSES: [CefrLabel; 5] = [
        CefrLabel::A1,
        CefrLabel::A2,
        CefrLabel::B1,
        CefrLabel::B2,
        CefrLabel::C1,
    ];

    /// The extended lexical scale used by word lists.
    pub const LEXICAL: [CefrLabel; 6] = [
        CefrLabel::A1,
        CefrLabel::A2,
        CefrLabel::B1,
        CefrLabel::B2,
        CefrLabel::C1,
        CefrLabel::C2,
    ];

    /// Numeric encoding, A1 = 1 through C2 = 6.
    pub fn ordinal(self) -> u8 {
        match self {
            CefrLabel::A1 => 1,
            CefrLabel::A2 => 2,
            CefrLabel::B1 => 3,
            CefrLabel::B2 => 4,
            CefrLabel::C1 => 5,
            CefrLabel::C2 => 6,
        }
    }

    pub fn from_ordinal(n: u8) -> Option<Self> {
        CefrLabel::LEXICAL.get(usize::from(n).checked_sub(1)?).copied()
    }

    /// True for the labels a text or sentence may carry.
    pub fn is_class(self) -> bool {
        self != CefrLabel::C2
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CefrLabel::A1 => "A1",
            CefrLabel::A2 => "A2",
            CefrLabel::B1 => "B1",
            CefrLabel::B2 => "B2",
            CefrLabel::C1 => "C1",
            CefrLabel::C2 => "C2",
        }
    }

    /// Parse a level that a text or sentence may carry (A1..C1).
    pub fn parse_class(s: &str) -> Option<Self> {
        s.parse::<CefrLabel>().ok().filter(|l| l.is_class())
    }
}

impl fmt::Display for CefrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLevel(pub String);

impl fmt::Display for UnknownLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown CEFR level {:?}", self.0)
    }
}

impl std::error::Error for UnknownLevel {}

impl FromStr for CefrLabel {
    type Err = UnknownLevel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A1" => Ok(CefrLabel::A1),
            "A2" => Ok(CefrLabel::A2),
            "B1" => Ok(CefrLabel::B1),
            "B2" => Ok(CefrLabel::B2),
            "C1" => Ok(CefrLabel::C1),
            "C2" => Ok(CefrLabel::C2),
            other => Err(UnknownLevel(other.to_string())),
        }
    }
}
