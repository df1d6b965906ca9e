//! Whitespace-separated text vectors: a `<count> <dimension>` header, then one
//! `<word> v1 … vD` line per word.

use std::collections::HashSet;
use std::io::{self, BufRead, Write};
use std::path::Path;

use ggd_core::{EmbeddingTable, TableBuilder};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Keep only the first `k` distinct words by file order...
    pub vocab_limit: Option<usize>,
    /// ...plus these wherever they occur.
    pub required: HashSet<String>,
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub table: EmbeddingTable,
    pub header_count: usize,
    /// Repeated words; the first occurrence is kept.
    pub duplicates: Vec<String>,
    /// Required words the file does not contain.
    pub missing_required: Vec<String>,
}

fn parse_header(line: &str, path: &Path) -> Result<(usize, usize)> {
    let mut it = line.split_ascii_whitespace();
    let parsed = match (it.next(), it.next(), it.next()) {
        (Some(c), Some(d), None) => c.parse::<usize>().ok().zip(d.parse::<usize>().ok()),
        _ => None,
    };
    match parsed {
        Some((c, d)) if d > 0 => Ok((c, d)),
        _ => Err(Error::format(path, 1, format!("malformed header `{line}`, expected `<count> <dimension>`"))),
    }
}

/// Reads a vector file. `path` only labels errors.
pub fn read<R: BufRead>(mut reader: R, path: &Path, options: &LoadOptions) -> Result<Loaded> {
    let mut line = String::new();
    let io_err = |e: io::Error| Error::io(path, e);
    if reader.read_line(&mut line).map_err(io_err)? == 0 {
        return Err(Error::format(path, 1, "empty file"));
    }
    let (header_count, dim) = parse_header(line.trim_end_matches(['\n', '\r']), path)?;
    let limit = options.vocab_limit.unwrap_or(usize::MAX);
    let mut builder = TableBuilder::new(dim)?;
    let mut ranked = 0usize;
    let mut values = Vec::with_capacity(dim);
    let mut lineno = 1;
    loop {
        if ranked >= limit && options.required.iter().all(|w| builder.contains(w)) {
            break;
        }
        line.clear();
        if reader.read_line(&mut line).map_err(io_err)? == 0 {
            break;
        }
        lineno += 1;
        let text = line.trim_end_matches(['\n', '\r']);
        let mut tokens = text.split_ascii_whitespace();
        let Some(word) = tokens.next() else {
            continue;
        };
        let by_rank = ranked < limit;
        let wanted = by_rank || (options.required.contains(word) && !builder.contains(word));
        if !wanted {
            let n = tokens.count();
            if n != dim {
                return Err(Error::format(path, lineno, format!("expected {dim} values, found {n}")));
            }
            continue;
        }
        values.clear();
        for tok in tokens {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::format(path, lineno, format!("non-numeric value `{tok}`")))?;
            values.push(v);
        }
        if values.len() != dim {
            return Err(Error::format(path, lineno, format!("expected {dim} values, found {}", values.len())));
        }
        let added = builder
            .push(word, &values)
            .map_err(|e| Error::format(path, lineno, e.to_string()))?;
        if added && by_rank {
            ranked += 1;
        }
    }
    let duplicates = builder.duplicates().to_vec();
    let mut missing_required: Vec<String> = options.required.iter().filter(|w| !builder.contains(w)).cloned().collect();
    missing_required.sort();
    let table = builder.finish().map_err(|_| Error::data(path, "no vectors loaded"))?;
    if options.vocab_limit.is_none() && header_count != table.len() + duplicates.len() {
        log::warn!(
            "{}: header announces {header_count} words, file holds {}",
            path.display(),
            table.len() + duplicates.len()
        );
    }
    Ok(Loaded {
        table,
        header_count,
        duplicates,
        missing_required,
    })
}

pub fn load(path: &Path, options: &LoadOptions) -> Result<Loaded> {
    let loaded = read(super::open(path)?, path, options)?;
    if !loaded.duplicates.is_empty() {
        log::warn!("{}: {} repeated words, first occurrence kept", path.display(), loaded.duplicates.len());
    }
    Ok(loaded)
}

/// Rounds to six significant digits and prints the shortest form that reads
/// back to the rounded value.
pub fn format_value(v: f64) -> String {
    let rounded: f64 = format!("{v:.5e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

pub fn write<W: Write + ?Sized>(table: &EmbeddingTable, out: &mut W) -> io::Result<()> {
    writeln!(out, "{} {}", table.len(), table.dimension())?;
    for wv in table.iter() {
        out.write_all(wv.word.as_bytes())?;
        for &v in wv.values {
            write!(out, " {}", format_value(v))?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}
