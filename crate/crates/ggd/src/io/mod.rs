//! File formats and the output staging used to keep failed runs from leaving
//! partial results behind.

pub mod datasets;
pub mod lexicon;
pub mod stack;
pub mod stimuli;
pub mod vectors;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::{Error, Result};

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

pub(crate) fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Iterates over the lines of a text file with 1-based line numbers, a
/// trailing CR stripped.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
}

/// Output files written to temporaries next to their destination and moved
/// into place only by [`Staged::commit`]. Dropping without committing removes
/// the temporaries.
#[derive(Default)]
pub struct Staged {
    files: Vec<(NamedTempFile, PathBuf)>,
}

impl Staged {
    pub fn new() -> Self {
        Staged::default()
    }

    pub fn write<F>(&mut self, dest: &Path, body: F) -> Result<()>
    where
        F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
    {
        let dir = match dest.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let tmp = NamedTempFile::new_in(dir).map_err(|e| Error::io(dest, e))?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            body(&mut w).map_err(|e| Error::io(dest, e))?;
            w.flush().map_err(|e| Error::io(dest, e))?;
        }
        self.files.push((tmp, dest.to_path_buf()));
        Ok(())
    }

    pub fn commit(self) -> Result<()> {
        for (tmp, dest) in self.files {
            tmp.persist(&dest).map_err(|e| Error::io(&dest, e.error))?;
        }
        Ok(())
    }
}
