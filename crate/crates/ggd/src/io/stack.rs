//! Hyperplane stacks: a text file with a `<iterations> <dimension>` header and
//! one direction per line, plus a JSON sidecar (`<file>.json`) holding the
//! per-iteration accuracies and whatever run metadata the writer adds.
//!
//! Directions are written at full precision so they stay unit length.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use ggd_core::HyperplaneStack;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub dimension: usize,
    pub accuracies: Vec<f64>,
    #[serde(default)]
    pub run: serde_json::Value,
}

pub fn sidecar_path(stack: &Path) -> PathBuf {
    let mut s = stack.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn write_text<W: Write + ?Sized>(stack: &HyperplaneStack, out: &mut W) -> io::Result<()> {
    writeln!(out, "{} {}", stack.len(), stack.dimension())?;
    for d in stack.directions() {
        let line: Vec<String> = d.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn parse(text: &str, sidecar: &Sidecar, path: &Path) -> Result<HyperplaneStack> {
    let mut lines = super::lines(text).filter(|(_, l)| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::format(path, 1, "empty stack file"))?.1;
    let mut h = header.split_ascii_whitespace().map(str::parse::<usize>);
    let (n, dim) = match (h.next(), h.next(), h.next()) {
        (Some(Ok(n)), Some(Ok(d)), None) if d > 0 => (n, d),
        _ => return Err(Error::format(path, 1, "malformed header, expected `<iterations> <dimension>`")),
    };
    if sidecar.dimension != dim || sidecar.accuracies.len() != n {
        return Err(Error::data(path, "stack file and sidecar disagree on shape"));
    }
    let mut stack = HyperplaneStack::new(dim);
    let mut count = 0;
    for (lineno, line) in lines {
        let values: Vec<f64> = line
            .split_ascii_whitespace()
            .map(|t| t.parse().map_err(|_| Error::format(path, lineno, format!("non-numeric value `{t}`"))))
            .collect::<Result<_>>()?;
        if count >= n {
            return Err(Error::format(path, lineno, "more directions than the header announces"));
        }
        stack
            .push(values, sidecar.accuracies[count])
            .map_err(|e| Error::format(path, lineno, e.to_string()))?;
        count += 1;
    }
    if count != n {
        return Err(Error::data(path, format!("header announces {n} directions, found {count}")));
    }
    Ok(stack)
}

pub fn load(path: &Path) -> Result<HyperplaneStack> {
    let side = sidecar_path(path);
    let sidecar: Sidecar =
        serde_json::from_str(&super::read_to_string(&side)?).map_err(|e| Error::data(&side, e.to_string()))?;
    parse(&super::read_to_string(path)?, &sidecar, path)
}
