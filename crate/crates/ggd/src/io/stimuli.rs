//! Stimulus files (TOML).
//!
//! ```toml
//! language = "en"
//!
//! [sets]                      # shared sets, referenced by bare name
//! pleasant = ["caress", "freedom"]
//!
//! [tests.GenS]                # X, Y then A, B
//! targets = ["science", "humanities"]
//! attributes = ["men", "women"]
//!
//! [tests.GenS.sets]           # local sets, known globally as "GenS.science"
//! science = ["astronomy", "math"]
//!
//! [gg]                        # attribute sets for grammatical-gender tests
//! feminine = "GenS.women"
//! masculine = "GenS.men"
//! ```
//!
//! A reference inside a test resolves to the test's own set first, then to a
//! shared or fully qualified name.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ggd_core::{StimulusSet, MIN_SET_SIZE};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    language: String,
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    tests: BTreeMap<String, RawTest>,
    gg: Option<GgAttributes>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTest {
    targets: [String; 2],
    attributes: [String; 2],
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq)]
pub struct GgAttributes {
    pub feminine: String,
    pub masculine: String,
}

/// Fully qualified set names of one test, in X, Y, A, B order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestDef {
    pub x: String,
    pub y: String,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flag {
    Duplicate { set: String, word: String },
    Undersized { set: String, size: usize },
}

#[derive(Debug, Clone)]
pub struct Stimuli {
    pub path: PathBuf,
    pub language: String,
    pub sets: BTreeMap<String, StimulusSet>,
    pub tests: BTreeMap<String, TestDef>,
    pub gg: Option<GgAttributes>,
    /// Problems noticed at load time. Undersized sets are rejected only when a
    /// test uses them.
    pub flags: Vec<Flag>,
}

impl Stimuli {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::data(path, e.to_string()))?;
        let mut sets = BTreeMap::new();
        let mut add = |name: String, words: Vec<String>| -> Result<()> {
            let set = StimulusSet::new(&name, words).map_err(|e| Error::data(path, e.to_string()))?;
            if sets.insert(name.clone(), set).is_some() {
                return Err(Error::data(path, format!("set `{name}` defined twice")));
            }
            Ok(())
        };
        for (name, words) in raw.sets {
            add(name, words)?;
        }
        let mut locals = Vec::new();
        for (test, def) in &raw.tests {
            for (name, words) in &def.sets {
                add(format!("{test}.{name}"), words.clone())?;
            }
            locals.push(test.clone());
        }

        let resolve = |test: &str, reference: &str| -> Result<String> {
            let local = format!("{test}.{reference}");
            if sets.contains_key(&local) {
                Ok(local)
            } else if sets.contains_key(reference) {
                Ok(reference.to_string())
            } else {
                Err(Error::data(path, format!("test `{test}` refers to unknown set `{reference}`")))
            }
        };
        let mut tests = BTreeMap::new();
        for (name, def) in &raw.tests {
            let t = TestDef {
                x: resolve(name, &def.targets[0])?,
                y: resolve(name, &def.targets[1])?,
                a: resolve(name, &def.attributes[0])?,
                b: resolve(name, &def.attributes[1])?,
            };
            tests.insert(name.clone(), t);
        }
        if let Some(gg) = &raw.gg {
            for r in [&gg.feminine, &gg.masculine] {
                if !sets.contains_key(r) {
                    return Err(Error::data(path, format!("gg attributes refer to unknown set `{r}`")));
                }
            }
        }

        let mut flags = Vec::new();
        for (name, set) in &sets {
            for w in &set.duplicates {
                flags.push(Flag::Duplicate {
                    set: name.clone(),
                    word: w.clone(),
                });
            }
            if set.is_undersized(MIN_SET_SIZE) {
                flags.push(Flag::Undersized {
                    set: name.clone(),
                    size: set.len(),
                });
            }
        }
        Ok(Stimuli {
            path: path.to_path_buf(),
            language: raw.language,
            sets,
            tests,
            gg: raw.gg,
            flags,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = Self::parse(&super::read_to_string(path)?, path)?;
        for f in &s.flags {
            match f {
                Flag::Duplicate { set, word } => log::warn!("{}: `{word}` repeated in set `{set}`", path.display()),
                Flag::Undersized { set, size } => {
                    log::info!("{}: set `{set}` has only {size} words", path.display())
                }
            }
        }
        Ok(s)
    }

    pub fn set(&self, name: &str) -> Result<&StimulusSet> {
        self.sets
            .get(name)
            .ok_or_else(|| Error::data(&self.path, format!("no stimulus set named `{name}`")))
    }

    pub fn test(&self, name: &str) -> Result<(&TestDef, [&StimulusSet; 4])> {
        let def = self
            .tests
            .get(name)
            .ok_or_else(|| Error::data(&self.path, format!("no test named `{name}`")))?;
        Ok((def, [self.set(&def.x)?, self.set(&def.y)?, self.set(&def.a)?, self.set(&def.b)?]))
    }

    /// Every word of every set, for loading tables with a vocabulary limit.
    pub fn all_words(&self) -> impl Iterator<Item = &String> {
        self.sets.values().flat_map(|s| s.words())
    }
}
