//! Vocabulary-indexed embedding tables.
//!
//! Vectors are kept exactly as loaded (no pre-normalization); cosine
//! similarity normalizes on the fly. Lookup is case-sensitive unless the caller
//! asks for [`Lookup::LowercaseFallback`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::vector;

/// How a surface word is matched against the vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Lookup {
    #[default]
    Exact,
    /// Retry with the lowercased word when the exact form is absent.
    LowercaseFallback,
}

/// A borrowed view of one row of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordVector<'a> {
    pub word: &'a str,
    pub values: &'a [f64],
}

/// Dense word vectors of a fixed dimension, in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    words: Vec<String>,
    values: Vec<f64>,
    index: HashMap<String, usize>,
}

/// Incremental constructor for [`EmbeddingTable`]. Duplicate words keep their
/// first occurrence.
#[derive(Debug, Clone)]
pub struct TableBuilder {
    table: EmbeddingTable,
    duplicates: Vec<String>,
}

impl TableBuilder {
    pub fn new(dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(TableBuilder {
            table: EmbeddingTable {
                dimension,
                words: Vec::new(),
                values: Vec::new(),
                index: HashMap::new(),
            },
            duplicates: Vec::new(),
        })
    }

    pub fn with_capacity(dimension: usize, rows: usize) -> Result<Self> {
        let mut b = Self::new(dimension)?;
        b.table.words.reserve(rows);
        b.table.values.reserve(rows * dimension);
        b.table.index.reserve(rows);
        Ok(b)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.table.index.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.table.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.words.is_empty()
    }

    /// Appends a row. Returns `Ok(false)` if the word was already present.
    pub fn push(&mut self, word: &str, values: &[f64]) -> Result<bool> {
        if values.len() != self.table.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.table.dimension,
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                word: word.to_string(),
            });
        }
        if self.table.index.contains_key(word) {
            self.duplicates.push(word.to_string());
            return Ok(false);
        }
        self.table
            .index
            .insert(word.to_string(), self.table.words.len());
        self.table.words.push(word.to_string());
        self.table.values.extend_from_slice(values);
        Ok(true)
    }

    /// Words that were pushed more than once (later copies ignored).
    pub fn duplicates(&self) -> &[String] {
        &self.duplicates
    }

    pub fn finish(self) -> Result<EmbeddingTable> {
        if self.table.words.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(self.table)
    }
}

impl EmbeddingTable {
    /// Builds a table from `(word, vector)` pairs.
    pub fn from_rows<'a, I, W>(dimension: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, &'a [f64])>,
        W: AsRef<str>,
    {
        let mut b = TableBuilder::new(dimension)?;
        for (w, v) in rows {
            b.push(w.as_ref(), v)?;
        }
        b.finish()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    /// Always false for a constructed table; provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Resolves a word to its row index under the given lookup policy.
    pub fn resolve(&self, word: &str, lookup: Lookup) -> Option<usize> {
        if let Some(i) = self.index_of(word) {
            return Some(i);
        }
        match lookup {
            Lookup::Exact => None,
            Lookup::LowercaseFallback => {
                let lower = word.to_lowercase();
                if lower == word {
                    None
                } else {
                    self.index_of(&lower)
                }
            }
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.values[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.index_of(word).map(|i| self.row(i))
    }

    pub fn vector(&self, word: &str) -> Option<WordVector<'_>> {
        self.index_of(word).map(|i| WordVector {
            word: &self.words[i],
            values: self.row(i),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = WordVector<'_>> + '_ {
        self.words
            .iter()
            .zip(self.values.chunks_exact(self.dimension))
            .map(|(w, v)| WordVector {
                word: w.as_str(),
                values: v,
            })
    }

    /// Applies `f` to every row in place. This is the only mutation path; it
    /// is used by the disentangler's bulk projection.
    pub fn transform_rows<F>(&mut self, mut f: F)
    where
        F: FnMut(&mut [f64]),
    {
        for row in self.values.chunks_exact_mut(self.dimension) {
            f(row);
        }
    }

    /// Cosine similarity between two words of this table.
    pub fn similarity(&self, a: &str, b: &str) -> Option<Result<f64>> {
        let va = self.vector(a)?;
        let vb = self.vector(b)?;
        Some(cosine(va, vb))
    }

    /// Words whose vectors have exactly zero norm.
    pub fn zero_vectors(&self) -> Vec<String> {
        self.iter()
            .filter(|v| v.values.iter().all(|x| *x == 0.0))
            .map(|v| v.word.to_string())
            .collect()
    }

    /// A new table restricted to the given words, in the given order. Words
    /// absent from this table are skipped.
    pub fn subset<'a, I>(&self, words: I) -> Result<EmbeddingTable>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut b = TableBuilder::new(self.dimension)?;
        for w in words {
            if let Some(i) = self.index_of(w) {
                b.push(w, self.row(i))?;
            }
        }
        b.finish()
    }
}

/// Cosine similarity of two word vectors.
///
/// A zero-norm argument is an error rather than a silent zero: after repeated
/// projections it means a word has been annihilated.
pub fn cosine(a: WordVector<'_>, b: WordVector<'_>) -> Result<f64> {
    cosine_slices(a.values, b.values).map_err(|e| match e {
        Error::ZeroVector { .. } => {
            let word = if vector::norm(a.values) == 0.0 { a.word } else { b.word };
            Error::ZeroVector {
                word: Some(word.to_string()),
            }
        }
        other => other,
    })
}

/// Cosine similarity of two raw slices.
pub fn cosine_slices(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let na = vector::norm(a);
    let nb = vector::norm(b);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector { word: None });
    }
    Ok((vector::dot(a, b) / (na * nb)).clamp(-1.0, 1.0))
}
