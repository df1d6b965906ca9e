//! Word-list datasets: gendered noun lexicons, stimulus sets, similarity pairs,
//! valence norms and analogy questions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use hashbrown::{HashMap, HashSet};
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::seed;

/// Binary grammatical gender. Neuter nouns are not represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Gender {
    Feminine,
    Masculine,
}

impl Gender {
    pub fn tag(self) -> &'static str {
        match self {
            Gender::Feminine => "F",
            Gender::Masculine => "M",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Gender> {
        match tag.trim() {
            "F" | "f" | "Fem" | "fem" => Some(Gender::Feminine),
            "M" | "m" | "Masc" | "masc" => Some(Gender::Masculine),
            _ => None,
        }
    }

    pub fn opposite(self) -> Gender {
        match self {
            Gender::Feminine => Gender::Masculine,
            Gender::Masculine => Gender::Feminine,
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gender::Feminine => "feminine",
            Gender::Masculine => "masculine",
        })
    }
}

/// What happened while building a lexicon.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LexiconReport {
    /// Words listed with both genders; dropped entirely.
    pub conflicts: Vec<String>,
    /// Words removed because they appear in the animacy list.
    pub animate_removed: Vec<String>,
    /// Same word and gender listed more than once.
    pub repeated: usize,
    pub feminine: usize,
    pub masculine: usize,
}

/// Inanimate nouns labeled with grammatical gender.
///
/// Invariants: no word carries both genders, no word is in the animacy list it
/// was built against, both classes are non-empty.
#[derive(Debug, Clone, PartialEq)]
pub struct GenderLexicon {
    language: String,
    entries: Vec<(String, Gender)>,
    index: HashMap<String, Gender>,
}

impl GenderLexicon {
    /// Builds a lexicon from raw `(word, gender)` rows, dropping animate words
    /// and words listed with both genders.
    pub fn build<I, S>(language: &str, rows: I, animate: &[S]) -> Result<(Self, LexiconReport)>
    where
        I: IntoIterator<Item = (String, Gender)>,
        S: AsRef<str>,
    {
        let animate: HashSet<&str> = animate.iter().map(|s| s.as_ref()).collect();
        let mut report = LexiconReport::default();

        let mut order: Vec<String> = Vec::new();
        let mut seen: HashMap<String, Option<Gender>> = HashMap::new();
        for (word, gender) in rows {
            if animate.contains(word.as_str()) {
                if !report.animate_removed.contains(&word) {
                    report.animate_removed.push(word);
                }
                continue;
            }
            match seen.get_mut(&word) {
                None => {
                    seen.insert(word.clone(), Some(gender));
                    order.push(word);
                }
                Some(slot) => match *slot {
                    Some(g) if g == gender => report.repeated += 1,
                    Some(_) => {
                        *slot = None;
                        report.conflicts.push(word);
                    }
                    None => {}
                },
            }
        }

        let entries: Vec<(String, Gender)> = order
            .into_iter()
            .filter_map(|w| seen[&w].map(|g| (w, g)))
            .collect();
        report.feminine = entries.iter().filter(|e| e.1 == Gender::Feminine).count();
        report.masculine = entries.len() - report.feminine;

        if entries.is_empty() {
            return Err(Error::EmptyLexicon {
                conflicts: report.conflicts.len(),
            });
        }
        let lex = Self::from_entries(language, entries)?;
        Ok((lex, report))
    }

    fn from_entries(language: &str, entries: Vec<(String, Gender)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLexicon { conflicts: 0 });
        }
        for g in [Gender::Feminine, Gender::Masculine] {
            if !entries.iter().any(|e| e.1 == g) {
                return Err(Error::MissingClass(g));
            }
        }
        let index = entries.iter().cloned().collect();
        Ok(GenderLexicon {
            language: language.to_string(),
            entries,
            index,
        })
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn entries(&self) -> &[(String, Gender)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn gender_of(&self, word: &str) -> Option<Gender> {
        self.index.get(word).copied()
    }

    pub fn words(&self, gender: Gender) -> impl Iterator<Item = &str> + '_ {
        self.entries
            .iter()
            .filter(move |e| e.1 == gender)
            .map(|e| e.0.as_str())
    }

    pub fn count(&self, gender: Gender) -> usize {
        self.words(gender).count()
    }

    /// Keeps only words accepted by `keep`; returns the restricted lexicon and
    /// the rejected words.
    pub fn restrict<F>(&self, mut keep: F) -> Result<(Self, Vec<String>)>
    where
        F: FnMut(&str) -> bool,
    {
        let mut dropped = Vec::new();
        let mut kept = Vec::new();
        for (w, g) in &self.entries {
            if keep(w) {
                kept.push((w.clone(), *g));
            } else {
                dropped.push(w.clone());
            }
        }
        Ok((Self::from_entries(&self.language, kept)?, dropped))
    }

    /// Draws `per_class` words from each class with a seeded shuffle.
    pub fn balanced_sample(&self, per_class: usize, seed_value: u64) -> Result<(Vec<String>, Vec<String>)> {
        if per_class == 0 {
            return Err(Error::InvalidConfig("per_class must be positive".into()));
        }
        let draw = |gender: Gender, label: &str| -> Result<Vec<String>> {
            let mut words: Vec<String> = self.words(gender).map(|w| w.to_string()).collect();
            if words.len() < per_class {
                return Err(Error::InsufficientEntries {
                    gender,
                    needed: per_class,
                    available: words.len(),
                });
            }
            let mut rng = seed::labeled_rng(seed_value, label);
            let (picked, _) = words.partial_shuffle(&mut rng, per_class);
            Ok(picked.to_vec())
        };
        Ok((
            draw(Gender::Feminine, "sample/feminine")?,
            draw(Gender::Masculine, "sample/masculine")?,
        ))
    }
}

/// A named word list standing for a concept in an association test.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StimulusSet {
    pub name: String,
    words: Vec<String>,
    /// Repeated words removed at construction (first occurrence kept).
    pub duplicates: Vec<String>,
}

impl StimulusSet {
    pub fn new<I, S>(name: &str, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        let mut duplicates = Vec::new();
        for w in words {
            let w: String = w.into();
            if out.contains(&w) {
                duplicates.push(w);
            } else {
                out.push(w);
            }
        }
        if out.is_empty() {
            return Err(Error::EmptySample(alloc::format!("stimulus set `{name}`")));
        }
        Ok(StimulusSet {
            name: name.to_string(),
            words: out,
            duplicates,
        })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Below the minimum size for use in a test. Such sets are accepted at
    /// load time and rejected when a test runs.
    pub fn is_undersized(&self, min: usize) -> bool {
        self.words.len() < min
    }
}

/// A rated word pair from a similarity dataset.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimilarityPair {
    pub word_a: String,
    pub word_b: String,
    pub score: f64,
    pub gender_a: Option<Gender>,
    pub gender_b: Option<Gender>,
}

impl SimilarityPair {
    pub fn new(word_a: &str, word_b: &str, score: f64) -> Result<Self> {
        if !score.is_finite() {
            return Err(Error::InvalidData(alloc::format!(
                "non-finite score for pair {word_a}/{word_b}"
            )));
        }
        if word_a == word_b {
            return Err(Error::InvalidData(alloc::format!("pair repeats `{word_a}`")));
        }
        Ok(SimilarityPair {
            word_a: word_a.to_string(),
            word_b: word_b.to_string(),
            score,
            gender_a: None,
            gender_b: None,
        })
    }

    pub fn with_genders(mut self, a: Gender, b: Gender) -> Self {
        self.gender_a = Some(a);
        self.gender_b = Some(b);
        self
    }
}

/// A human pleasantness rating for one word.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValenceNorm {
    pub word: String,
    pub valence: f64,
}

impl ValenceNorm {
    pub fn new(word: &str, valence: f64) -> Result<Self> {
        if !valence.is_finite() {
            return Err(Error::InvalidData(alloc::format!("non-finite valence for `{word}`")));
        }
        Ok(ValenceNorm {
            word: word.to_string(),
            valence,
        })
    }
}

/// `a : b :: c : d`
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnalogyQuestion {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub section: String,
}

impl AnalogyQuestion {
    pub fn new(section: &str, a: &str, b: &str, c: &str, d: &str) -> Result<Self> {
        let slots = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if slots[i] == slots[j] {
                    return Err(Error::InvalidData(alloc::format!(
                        "analogy {a} {b} {c} {d} repeats `{}`",
                        slots[i]
                    )));
                }
            }
        }
        Ok(AnalogyQuestion {
            a: a.to_string(),
            b: b.to_string(),
            c: c.to_string(),
            d: d.to_string(),
            section: section.to_string(),
        })
    }
}
