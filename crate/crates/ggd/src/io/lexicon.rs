//! Gendered-noun lexicons (`word<TAB>F|M`, optionally `N` for neuter, which is
//! dropped) and one-word-per-line animacy lists. Blank lines and lines
//! starting with `#` are ignored in both.

use std::path::Path;

use ggd_core::lexicon::LexiconReport;
use ggd_core::{Gender, GenderLexicon};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct LexiconLoad {
    #[serde(skip)]
    pub lexicon: GenderLexicon,
    pub report: LexiconReport,
    pub neuter_dropped: usize,
}

fn content(line: &str) -> Option<&str> {
    let t = line.trim();
    (!t.is_empty() && !t.starts_with('#')).then_some(t)
}

pub fn parse_nouns(text: &str, path: &Path) -> Result<(Vec<(String, Gender)>, usize)> {
    let mut rows = Vec::new();
    let mut neuter = 0;
    for (lineno, line) in super::lines(text) {
        if content(line).is_none() {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(word), Some(tag), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::format(path, lineno, "expected `word<TAB>F|M`"));
        };
        let word = word.trim();
        if word.is_empty() {
            return Err(Error::format(path, lineno, "empty word"));
        }
        match (Gender::from_tag(tag), tag.trim()) {
            (Some(g), _) => rows.push((word.to_string(), g)),
            (None, "N" | "n") => neuter += 1,
            (None, other) => return Err(Error::format(path, lineno, format!("unknown gender tag `{other}`"))),
        }
    }
    Ok((rows, neuter))
}

pub fn parse_word_list(text: &str) -> Vec<String> {
    super::lines(text).filter_map(|(_, l)| content(l)).map(String::from).collect()
}

/// Loads a lexicon, filtering out animate nouns when an animacy list is given.
/// A nonexistent animacy path is treated as an empty list.
pub fn load(language: &str, nouns: &Path, animacy: Option<&Path>) -> Result<LexiconLoad> {
    let (rows, neuter_dropped) = parse_nouns(&super::read_to_string(nouns)?, nouns)?;
    let animate = match animacy {
        Some(p) if p.exists() => parse_word_list(&super::read_to_string(p)?),
        Some(p) => {
            log::warn!("animacy list {} not found; no words excluded", p.display());
            Vec::new()
        }
        None => Vec::new(),
    };
    let (lexicon, report) =
        GenderLexicon::build(language, rows, &animate).map_err(|e| Error::data(nouns, e.to_string()))?;
    if !report.conflicts.is_empty() {
        log::warn!("{}: {} words listed with both genders dropped", nouns.display(), report.conflicts.len());
    }
    Ok(LexiconLoad {
        lexicon,
        report,
        neuter_dropped,
    })
}
