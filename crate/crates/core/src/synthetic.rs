//! Synthetic tables with a planted gender direction.
//!
//! Every word vector is
//!
//! ```text
//! base + (sign · α · rate + σ · ε) · g
//! ```
//!
//! where `base` has i.i.d. standard normal components, `g` is a seeded random
//! unit direction, `sign` is +1 for feminine and −1 for masculine words, `rate`
//! is 1 for feminine words and `masculine_rate` for masculine ones, and `ε` is a
//! per-word standard normal jitter on the planted coefficient. The gender-free
//! `base` table is returned alongside as ground truth.
//!
//! The optional secondary signal adds `sign · α₂ · g₂` (with `g₂ ⟂ g`) to a
//! seeded subset of each class. A single hyperplane fit is dominated by the
//! words without it, so removing the secondary signal takes further iterations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::embeddings::{EmbeddingTable, TableBuilder};
use crate::error::{Error, Result};
use crate::lexicon::{Gender, GenderLexicon};
use crate::seed;
use crate::vector;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SecondarySignal {
    pub strength: f64,
    /// Fraction of each class carrying the secondary signal.
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SynthConfig {
    pub dimension: usize,
    pub per_class: usize,
    /// α
    pub signal_strength: f64,
    /// σ
    pub noise_scale: f64,
    /// Planted strength of masculine words relative to feminine ones.
    pub masculine_rate: f64,
    pub secondary: Option<SecondarySignal>,
    /// Extra words with no planted signal and no lexicon entry.
    pub neutral_words: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            dimension: 300,
            per_class: 3000,
            signal_strength: 5.0,
            noise_scale: 0.5,
            masculine_rate: 1.0,
            secondary: None,
            neutral_words: 0,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dimension < 2 {
            return Err(Error::InvalidConfig("dimension must be at least 2".into()));
        }
        if self.per_class < 16 {
            return Err(Error::InvalidConfig("per_class must be at least 16".into()));
        }
        let finite_nonneg = |v: f64| v.is_finite() && v >= 0.0;
        if !finite_nonneg(self.signal_strength) || !finite_nonneg(self.noise_scale) || !finite_nonneg(self.masculine_rate) {
            return Err(Error::InvalidConfig("strength, noise and rate must be finite and non-negative".into()));
        }
        if let Some(s) = &self.secondary {
            if !finite_nonneg(s.strength) || !(0.0..=1.0).contains(&s.coverage) {
                return Err(Error::InvalidConfig("secondary strength ≥ 0 and coverage in [0, 1]".into()));
            }
            if self.dimension < 3 {
                return Err(Error::InvalidConfig("secondary signal needs dimension ≥ 3".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticData {
    pub table: EmbeddingTable,
    pub lexicon: GenderLexicon,
    pub planted: Vec<f64>,
    pub secondary: Option<Vec<f64>>,
    pub base: EmbeddingTable,
}

impl SyntheticData {
    /// Words of one class in generation order.
    pub fn words(&self, gender: Gender) -> Vec<String> {
        self.lexicon.words(gender).map(String::from).collect()
    }
}

pub fn word_name(gender: Option<Gender>, i: usize) -> String {
    match gender {
        Some(Gender::Feminine) => format!("f{i:05}"),
        Some(Gender::Masculine) => format!("m{i:05}"),
        None => format!("n{i:05}"),
    }
}

fn gaussian(rng: &mut seed::Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Generates a synthetic table. Deterministic per seed.
pub fn generate(config: &SynthConfig) -> Result<SyntheticData> {
    config.validate()?;
    let dim = config.dimension;

    let mut dir_rng = seed::labeled_rng(config.seed, "synthetic/direction");
    let planted = vector::normalized(&gaussian(&mut dir_rng, dim)).ok_or(Error::ZeroVector { word: None })?;
    let secondary = match config.secondary {
        None => None,
        Some(_) => {
            let mut v = gaussian(&mut dir_rng, dim);
            let c = vector::dot(&v, &planted);
            vector::axpy(-c, &planted, &mut v);
            Some(vector::normalized(&v).ok_or(Error::ZeroVector { word: None })?)
        }
    };

    let mut covered = [Vec::new(), Vec::new()];
    if let Some(s) = &config.secondary {
        let mut rng = seed::labeled_rng(config.seed, "synthetic/coverage");
        let take = libm::round(s.coverage * config.per_class as f64) as usize;
        for c in covered.iter_mut() {
            let mut flags = alloc::vec![false; config.per_class];
            flags[..take].iter_mut().for_each(|f| *f = true);
            flags.shuffle(&mut rng);
            *c = flags;
        }
    }

    let total = 2 * config.per_class + config.neutral_words;
    let mut table = TableBuilder::with_capacity(dim, total)?;
    let mut base = TableBuilder::with_capacity(dim, total)?;
    let mut rows = Vec::with_capacity(2 * config.per_class);
    let mut base_rng = seed::labeled_rng(config.seed, "synthetic/base");
    let mut jitter_rng = seed::labeled_rng(config.seed, "synthetic/jitter");

    for (class, gender) in [Gender::Feminine, Gender::Masculine].into_iter().enumerate() {
        let (sign, rate) = match gender {
            Gender::Feminine => (1.0, 1.0),
            Gender::Masculine => (-1.0, config.masculine_rate),
        };
        for i in 0..config.per_class {
            let word = word_name(Some(gender), i);
            let b = gaussian(&mut base_rng, dim);
            let eps: f64 = jitter_rng.sample(StandardNormal);
            let mut v = b.clone();
            vector::axpy(sign * config.signal_strength * rate + config.noise_scale * eps, &planted, &mut v);
            if let (Some(s), Some(g2)) = (&config.secondary, &secondary) {
                if covered[class][i] {
                    vector::axpy(sign * s.strength, g2, &mut v);
                }
            }
            base.push(&word, &b)?;
            table.push(&word, &v)?;
            rows.push((word, gender));
        }
    }
    for i in 0..config.neutral_words {
        let word = word_name(None, i);
        let b = gaussian(&mut base_rng, dim);
        base.push(&word, &b)?;
        table.push(&word, &b)?;
    }

    let (lexicon, _) = GenderLexicon::build("synthetic", rows, &[] as &[&str])?;
    Ok(SyntheticData {
        table: table.finish()?,
        lexicon,
        planted,
        secondary,
        base: base.finish()?,
    })
}
