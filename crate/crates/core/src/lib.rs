//! Identification and removal of grammatical-gender signals in word embeddings.
//!
//! The crate is `no_std` and only needs `alloc`. All file formats, reporting and
//! the command-line front end live in the `ggd` crate; everything here is pure
//! computation over in-memory tables:
//!
//! * [`embeddings`]: the vocabulary-indexed vector table and cosine similarity.
//! * [`lexicon`]: gendered noun lexicons, stimulus sets and evaluation datasets.
//! * [`classifier`]: a linear max-margin classifier trained with stochastic
//!   subgradient descent on the primal hinge objective.
//! * [`disentangle`]: iterative hyperplane extraction and projection.
//! * [`association`]: WEAT / SC-WEAT effect sizes and permutation p-values.
//! * [`evaluations`]: GG-WEAT, single-category sweeps, ValNorm, analogies and
//!   the pairwise-distance gap.
//! * [`synthetic`]: tables with a planted gender direction for ground-truth checks.
#![no_std]

extern crate alloc;

pub mod association;
pub mod classifier;
pub mod disentangle;
pub mod embeddings;
pub mod error;
pub mod evaluations;
pub mod lexicon;
pub mod seed;
pub mod synthetic;
pub(crate) mod vector;

pub use association::{AssociationResult, PMethod, PValueConfig, PValueMode, TestConfig};
pub use classifier::{LinearModel, TrainConfig};
pub use disentangle::{DisentangleConfig, Disentanglement, HyperplaneStack, SamplingMode};
pub use embeddings::{cosine, EmbeddingTable, Lookup, TableBuilder, WordVector};
pub use error::Error;
pub use lexicon::{Gender, GenderLexicon, StimulusSet};

/// Minimum number of words in any WEAT target or attribute set.
pub const MIN_SET_SIZE: usize = 8;
