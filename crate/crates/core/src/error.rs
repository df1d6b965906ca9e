use alloc::string::String;

use crate::lexicon::Gender;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("embedding dimension must be positive")]
    ZeroDimension,

    #[error("embedding table has no entries")]
    EmptyTable,

    #[error("non-finite value in vector for `{word}`")]
    NonFinite { word: String },

    #[error("zero-norm vector{}", fmt_word(.word))]
    ZeroVector { word: Option<String> },

    #[error("direction is not unit length (norm {norm})")]
    NonUnitDirection { norm: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("lexicon is empty after filtering ({conflicts} conflicting words dropped)")]
    EmptyLexicon { conflicts: usize },

    #[error("lexicon has no {0} entries")]
    MissingClass(Gender),

    #[error("not enough {gender} entries: need {needed}, have {available}")]
    InsufficientEntries {
        gender: Gender,
        needed: usize,
        available: usize,
    },

    #[error("set `{name}` has {size} words, at least {min} required")]
    UndersizedSet { name: String, size: usize, min: usize },

    #[error("word `{word}` appears in both target sets")]
    OverlappingTargets { word: String },

    #[error("word `{word}` from set `{set}` has no embedding")]
    UnresolvedWord { set: String, word: String },

    #[error("target sets differ in size ({x} vs {y})")]
    UnequalTargets { x: usize, y: usize },

    #[error("permutation space is empty")]
    EmptyPartitionSpace,

    #[error("zero variance in {0}")]
    ZeroVariance(String),

    #[error("empty sample: {0}")]
    EmptySample(String),

    #[error("not enough qualifying pairs: found {found}, need {needed}")]
    TooFewPairs { found: usize, needed: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid data: {0}")]
    InvalidData(String),
}

fn fmt_word(word: &Option<String>) -> String {
    match word {
        Some(w) => alloc::format!(" for `{w}`"),
        None => String::new(),
    }
}

impl Error {
    /// True for failures of the numerics (as opposed to bad or missing data).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::ZeroVector { .. }
                | Error::NonUnitDirection { .. }
                | Error::ZeroVariance(_)
                | Error::Degenerate(_)
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
