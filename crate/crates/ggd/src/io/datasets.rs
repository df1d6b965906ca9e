//! Similarity pairs, valence norms and analogy questions.

use std::path::Path;

use ggd_core::lexicon::{AnalogyQuestion, SimilarityPair, ValenceNorm};
use ggd_core::Gender;

use crate::error::{Error, Result};

fn skip(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn number(field: &str, path: &Path, lineno: usize) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::format(path, lineno, format!("`{}` is not a number", field.trim())))
}

/// `word_a<TAB>word_b<TAB>score[<TAB>gender_a<TAB>gender_b]`
pub fn parse_pairs(text: &str, path: &Path) -> Result<Vec<SimilarityPair>> {
    let mut out = Vec::new();
    for (lineno, line) in super::lines(text) {
        if skip(line) {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 3 && f.len() != 5 {
            return Err(Error::format(path, lineno, format!("expected 3 or 5 tab-separated fields, found {}", f.len())));
        }
        let score = number(f[2], path, lineno)?;
        let mut pair =
            SimilarityPair::new(f[0].trim(), f[1].trim(), score).map_err(|e| Error::format(path, lineno, e.to_string()))?;
        if f.len() == 5 {
            let g = |s: &str| {
                Gender::from_tag(s).ok_or_else(|| Error::format(path, lineno, format!("unknown gender tag `{}`", s.trim())))
            };
            pair = pair.with_genders(g(f[3])?, g(f[4])?);
        }
        out.push(pair);
    }
    Ok(out)
}

/// `word<TAB>valence`
pub fn parse_valence(text: &str, path: &Path) -> Result<Vec<ValenceNorm>> {
    let mut out = Vec::new();
    for (lineno, line) in super::lines(text) {
        if skip(line) {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 2 {
            return Err(Error::format(path, lineno, "expected `word<TAB>valence`"));
        }
        let v = number(f[1], path, lineno)?;
        out.push(ValenceNorm::new(f[0].trim(), v).map_err(|e| Error::format(path, lineno, e.to_string()))?);
    }
    Ok(out)
}

/// `: section` headers followed by `a b c d` lines.
pub fn parse_analogies(text: &str, path: &Path) -> Result<Vec<AnalogyQuestion>> {
    let mut out = Vec::new();
    let mut section: Option<String> = None;
    for (lineno, line) in super::lines(text) {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(name) = t.strip_prefix(':') {
            section = Some(name.trim().to_string());
            continue;
        }
        let Some(sec) = &section else {
            return Err(Error::format(path, lineno, "question before any `: section` header"));
        };
        let w: Vec<&str> = t.split_whitespace().collect();
        if w.len() != 4 {
            return Err(Error::format(path, lineno, format!("expected 4 words, found {}", w.len())));
        }
        out.push(AnalogyQuestion::new(sec, w[0], w[1], w[2], w[3]).map_err(|e| Error::format(path, lineno, e.to_string()))?);
    }
    Ok(out)
}

pub fn load_pairs(path: &Path) -> Result<Vec<SimilarityPair>> {
    parse_pairs(&super::read_to_string(path)?, path)
}

pub fn load_valence(path: &Path) -> Result<Vec<ValenceNorm>> {
    parse_valence(&super::read_to_string(path)?, path)
}

pub fn load_analogies(path: &Path) -> Result<Vec<AnalogyQuestion>> {
    parse_analogies(&super::read_to_string(path)?, path)
}
