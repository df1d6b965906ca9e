use std::collections::HashSet;
use std::path::{Path, PathBuf};

use ggd_core::seed;
use ggd_core::{EmbeddingTable, Lookup, PValueConfig, PValueMode, TestConfig};
use serde::Serialize;
use serde_json::Value;

use super::{LexiconArgs, PMode, StimuliArgs, TableArgs, TestArgs};
use crate::error::{Error, Result};
use crate::io::lexicon::LexiconLoad;
use crate::io::stimuli::Stimuli;
use crate::io::{self, vectors, Staged};
use crate::report::{self, RunReport};

/// Environment variable naming the directory with shipped stimuli.
pub const DATA_DIR_VAR: &str = "GGD_DATA_DIR";

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub struct Ctx {
    pub report: RunReport,
    pub staged: Staged,
}

impl Ctx {
    pub fn new(report: RunReport) -> Self {
        Ctx {
            report,
            staged: Staged::new(),
        }
    }

    pub fn input(&mut self, role: &str, path: &Path) -> Result<()> {
        let d = report::digest(role, path)?;
        self.report.inputs.push(d);
        Ok(())
    }

    pub fn warn(&mut self, message: String) {
        log::warn!("{message}");
        self.report.warnings.push(message);
    }

    pub fn finish(mut self, results: Value) -> super::Execution {
        self.report.results = results;
        super::Execution {
            report: self.report,
            staged: self.staged,
        }
    }

    pub fn table<'w, I>(&mut self, role: &str, path: &Path, args: &TableArgs, required: I) -> Result<EmbeddingTable>
    where
        I: IntoIterator<Item = &'w String>,
    {
        self.input(role, path)?;
        let options = vectors::LoadOptions {
            vocab_limit: args.vocab_limit,
            required: required.into_iter().cloned().collect::<HashSet<_>>(),
        };
        let loaded = vectors::load(path, &options)?;
        if !loaded.duplicates.is_empty() {
            self.report
                .warnings
                .push(format!("{}: {} repeated words ignored", path.display(), loaded.duplicates.len()));
        }
        if !loaded.missing_required.is_empty() && args.vocab_limit.is_some() {
            log::info!("{}: {} requested words not in file", path.display(), loaded.missing_required.len());
        }
        Ok(loaded.table)
    }

    pub fn lexicon(&mut self, language: &str, args: &LexiconArgs) -> Result<LexiconLoad> {
        self.input("lexicon", &args.lexicon)?;
        if let Some(a) = &args.animacy {
            if a.exists() {
                self.input("animacy", a)?;
            }
        }
        let l = io::lexicon::load(language, &args.lexicon, args.animacy.as_deref())?;
        if l.neuter_dropped > 0 {
            log::info!("{} neuter nouns ignored", l.neuter_dropped);
        }
        Ok(l)
    }

    pub fn stimuli(&mut self, args: &StimuliArgs) -> Result<Stimuli> {
        let path = match (&args.stimuli, &args.language) {
            (Some(p), _) => p.clone(),
            (None, Some(lang)) => data_dir().join("stimuli").join(format!("{lang}.toml")),
            (None, None) => return Err(Error::Usage("either --stimuli or --language is required".into())),
        };
        self.input("stimuli", &path)?;
        let s = Stimuli::load(&path)?;
        if let Some(lang) = &args.language {
            if &s.language != lang {
                self.warn(format!("stimulus file language `{}` differs from --language {lang}", s.language));
            }
        }
        Ok(s)
    }
}

pub fn lookup(args: &TableArgs) -> Lookup {
    if args.lowercase_fallback {
        Lookup::LowercaseFallback
    } else {
        Lookup::Exact
    }
}

pub fn test_config(args: &TestArgs, table: &TableArgs, base_seed: u64) -> TestConfig {
    TestConfig {
        p_value: PValueConfig {
            mode: match args.p_mode {
                PMode::Auto => PValueMode::Auto,
                PMode::Exact => PValueMode::Exact,
                PMode::MonteCarlo => PValueMode::MonteCarlo,
            },
            exact_limit: args.exact_limit,
            samples: args.samples,
            seed: seed::derive(base_seed, "p-value"),
        },
        min_set_size: args.min_set_size,
        permissive: args.permissive,
        lookup: lookup(table),
    }
}

pub fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

/// Loads the before table and, if given, the after table.
pub fn tables<'w>(
    ctx: &mut Ctx,
    before: &Path,
    after: Option<&Path>,
    args: &TableArgs,
    required: &[&'w String],
) -> Result<(EmbeddingTable, Option<EmbeddingTable>)> {
    let b = ctx.table("before", before, args, required.iter().copied())?;
    let a = match after {
        Some(p) => Some(ctx.table("after", p, args, required.iter().copied())?),
        None => None,
    };
    Ok((b, a))
}

/// `{before, after, delta}` for a pair of measurements of one quantity.
pub fn compared<T: Serialize>(before: &T, after: Option<&T>, value: impl Fn(&T) -> f64) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("before".into(), json(before));
    if let Some(a) = after {
        m.insert("after".into(), json(a));
        m.insert("delta".into(), json(&(value(a) - value(before))));
    }
    Value::Object(m)
}
