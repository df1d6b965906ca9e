//! Iterative removal of the grammatical-gender hyperplane.
//!
//! Each iteration draws a balanced sample of gendered nouns, trains the linear
//! classifier, and if its holdout accuracy is still above the stopping
//! threshold, projects the unit decision direction out of every vector in the
//! table:
//!
//! ```text
//! w' = w − ⟨w, d⟩ d
//! ```
//!
//! The accuracy recorded at iteration `k` is measured on embeddings that have
//! already been projected `k` times.

use alloc::string::String;
use alloc::vec::Vec;

use crate::classifier::{self, TrainConfig};
use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::lexicon::{Gender, GenderLexicon};
use crate::seed;
use crate::vector;

/// Largest tolerated deviation of a direction's norm from 1.
pub const UNIT_TOLERANCE: f64 = 1e-6;

/// Consecutive directions with a larger |cos| are reported.
pub const ORTHOGONALITY_WARNING: f64 = 0.1;

/// `vector − ⟨vector, direction⟩ direction`.
pub fn project_out(vector: &[f64], direction: &[f64]) -> Result<Vec<f64>> {
    let mut out = vector.to_vec();
    project_out_in_place(&mut out, direction)?;
    Ok(out)
}

pub fn project_out_in_place(vector: &mut [f64], direction: &[f64]) -> Result<()> {
    check_direction(vector.len(), direction)?;
    project_unchecked(vector, direction);
    Ok(())
}

fn check_direction(dim: usize, direction: &[f64]) -> Result<()> {
    if direction.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: direction.len(),
        });
    }
    let n = vector::norm(direction);
    if (n - 1.0).abs() > UNIT_TOLERANCE || !n.is_finite() {
        return Err(Error::NonUnitDirection { norm: n });
    }
    Ok(())
}

#[inline]
fn project_unchecked(vector: &mut [f64], direction: &[f64]) {
    let c = vector::dot(vector, direction);
    vector::axpy(-c, direction, vector);
}

/// Ordered unit directions removed from a table, with the holdout accuracy of
/// the classifier each one came from.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HyperplaneStack {
    dimension: usize,
    directions: Vec<Vec<f64>>,
    accuracies: Vec<f64>,
}

impl HyperplaneStack {
    pub fn new(dimension: usize) -> Self {
        HyperplaneStack {
            dimension,
            directions: Vec::new(),
            accuracies: Vec::new(),
        }
    }

    /// Appends a direction. It must be unit length within [`UNIT_TOLERANCE`];
    /// it is renormalized exactly before storage.
    pub fn push(&mut self, direction: Vec<f64>, accuracy: f64) -> Result<()> {
        check_direction(self.dimension, &direction)?;
        if !(0.0..=1.0).contains(&accuracy) {
            return Err(Error::InvalidData(alloc::format!("accuracy {accuracy} outside [0, 1]")));
        }
        let unit = vector::normalized(&direction).ok_or(Error::ZeroVector { word: None })?;
        self.directions.push(unit);
        self.accuracies.push(accuracy);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn accuracies(&self) -> &[f64] {
        &self.accuracies
    }

    /// Projects every stacked direction out of `vector`, in order.
    pub fn apply_to(&self, vector: &mut [f64]) -> Result<()> {
        if vector.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: vector.len(),
            });
        }
        for d in &self.directions {
            project_unchecked(vector, d);
        }
        Ok(())
    }
}

/// Replays a stack onto a table.
pub fn apply_stack(mut table: EmbeddingTable, stack: &HyperplaneStack) -> Result<EmbeddingTable> {
    apply_stack_in_place(&mut table, stack)?;
    Ok(table)
}

pub fn apply_stack_in_place(table: &mut EmbeddingTable, stack: &HyperplaneStack) -> Result<()> {
    if table.dimension() != stack.dimension() {
        return Err(Error::DimensionMismatch {
            expected: stack.dimension(),
            found: table.dimension(),
        });
    }
    for d in stack.directions() {
        table.transform_rows(|row| project_unchecked(row, d));
    }
    Ok(())
}

/// Whether each iteration draws a fresh sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SamplingMode {
    /// New balanced sample per iteration, seeded with `seed + iteration`.
    #[default]
    Resample,
    /// One sample drawn with `seed` and reused by every iteration.
    Fixed,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DisentangleConfig {
    /// Cap on the number of projections.
    pub max_iterations: usize,
    pub stop_accuracy: f64,
    pub per_class: usize,
    pub sampling: SamplingMode,
    pub classifier: TrainConfig,
    pub seed: u64,
}

impl Default for DisentangleConfig {
    fn default() -> Self {
        DisentangleConfig {
            max_iterations: 15,
            stop_accuracy: 0.52,
            per_class: 3000,
            sampling: SamplingMode::Resample,
            classifier: TrainConfig::default(),
            seed: 0,
        }
    }
}

impl DisentangleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.5..=1.0).contains(&self.stop_accuracy) {
            return Err(Error::InvalidConfig("stop_accuracy must lie in [0.5, 1]".into()));
        }
        if self.per_class == 0 {
            return Err(Error::InvalidConfig("per_class must be positive".into()));
        }
        self.classifier.validate()
    }
}

/// One classifier fit inside the loop.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationRecord {
    pub iteration: usize,
    pub holdout_accuracy: f64,
    pub train_accuracy: f64,
    pub sample_seed: u64,
    pub classifier_seed: u64,
    pub feminine: usize,
    pub masculine: usize,
    pub weight_norm: f64,
    pub bias: f64,
    /// Whether this iteration's direction was projected out.
    pub projected: bool,
    /// |cos| between this direction and the previous projected one.
    pub cos_with_previous: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disentanglement {
    pub table: EmbeddingTable,
    pub stack: HyperplaneStack,
    pub iterations: Vec<IterationRecord>,
    /// Lexicon words with no row in the table; excluded before sampling.
    pub missing_words: Vec<String>,
    /// Words whose vectors ended up exactly zero.
    pub zero_vectors: Vec<String>,
    /// Iterations whose direction had |cos| > [`ORTHOGONALITY_WARNING`] with the previous.
    pub orthogonality_violations: Vec<usize>,
}

impl Disentanglement {
    /// Holdout accuracy per iteration, in order (one more entry than the
    /// stack when the loop stopped on the threshold).
    pub fn accuracy_series(&self) -> Vec<f64> {
        self.iterations.iter().map(|r| r.holdout_accuracy).collect()
    }

    pub fn final_accuracy(&self) -> f64 {
        self.iterations.last().map(|r| r.holdout_accuracy).unwrap_or(1.0)
    }
}

/// Runs the identify-and-project loop over `table`.
pub fn run(mut table: EmbeddingTable, lexicon: &GenderLexicon, config: &DisentangleConfig) -> Result<Disentanglement> {
    config.validate()?;
    let (lexicon, missing_words) = lexicon.restrict(|w| table.contains(w))?;
    for g in [Gender::Feminine, Gender::Masculine] {
        let available = lexicon.count(g);
        if available < config.per_class {
            return Err(Error::InsufficientEntries {
                gender: g,
                needed: config.per_class,
                available,
            });
        }
    }

    let mut stack = HyperplaneStack::new(table.dimension());
    let mut records = Vec::new();
    let mut violations = Vec::new();
    let fixed = match config.sampling {
        SamplingMode::Fixed => Some(lexicon.balanced_sample(config.per_class, config.seed)?),
        SamplingMode::Resample => None,
    };

    for iteration in 0..=config.max_iterations {
        let sample_seed = match config.sampling {
            SamplingMode::Fixed => config.seed,
            SamplingMode::Resample => config.seed.wrapping_add(iteration as u64),
        };
        let owned;
        let (fem, masc) = match &fixed {
            Some(s) => (&s.0, &s.1),
            None => {
                owned = lexicon.balanced_sample(config.per_class, sample_seed)?;
                (&owned.0, &owned.1)
            }
        };
        // Rows are resolved against the current (already projected) table.
        let rows = |words: &[String]| -> Vec<&[f64]> {
            words.iter().map(|w| table.get(w).expect("restricted to table")).collect()
        };
        let pos = rows(fem);
        let neg = rows(masc);
        let classifier_seed = seed::derive(config.classifier.seed, &alloc::format!("iteration/{iteration}"));
        let train_cfg = TrainConfig {
            seed: classifier_seed,
            ..config.classifier.clone()
        };
        let model = classifier::train(&pos, &neg, &train_cfg)?;

        let mut record = IterationRecord {
            iteration,
            holdout_accuracy: model.holdout_accuracy,
            train_accuracy: model.train_accuracy,
            sample_seed,
            classifier_seed,
            feminine: fem.len(),
            masculine: masc.len(),
            weight_norm: model.weight_norm(),
            bias: model.bias,
            projected: false,
            cos_with_previous: None,
        };

        if model.holdout_accuracy <= config.stop_accuracy || iteration == config.max_iterations {
            records.push(record);
            break;
        }

        let direction = classifier::decision_direction(&model)?;
        if let Some(prev) = stack.directions().last() {
            let c = vector::dot(prev, &direction).abs();
            record.cos_with_previous = Some(c);
            if c > ORTHOGONALITY_WARNING {
                violations.push(iteration);
            }
        }
        table.transform_rows(|row| project_unchecked(row, &direction));
        stack.push(direction, model.holdout_accuracy)?;
        record.projected = true;
        records.push(record);
    }

    let zero_vectors = table.zero_vectors();
    Ok(Disentanglement {
        table,
        stack,
        iterations: records,
        missing_words,
        zero_vectors,
        orthogonality_violations: violations,
    })
}
