use serde_json::{json, Value};

use super::common::Ctx;
use super::ReplayArgs;
use crate::error::{Error, Result};
use crate::report::RunReport;

/// First JSON pointer at which two values differ.
fn first_difference(a: &Value, b: &Value, at: &str) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                let here = format!("{at}/{k}");
                match y.get(k) {
                    None => return Some(here),
                    Some(w) => {
                        if let Some(d) = first_difference(v, w, &here) {
                            return Some(d);
                        }
                    }
                }
            }
            y.keys().find(|k| !x.contains_key(*k)).map(|k| format!("{at}/{k}"))
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(at.to_string());
            }
            x.iter()
                .zip(y)
                .enumerate()
                .find_map(|(i, (v, w))| first_difference(v, w, &format!("{at}/{i}")))
        }
        _ => (a != b).then(|| at.to_string()),
    }
}

pub fn replay(a: &ReplayArgs, ctx: &mut Ctx) -> Result<Value> {
    ctx.input("source", &a.source)?;
    let source = RunReport::load(&a.source)?;
    if source.command == "replay" {
        return Err(Error::Usage("cannot replay a replay report".into()));
    }
    let mut cli = super::parse(&source.argv)?;
    let scratch;
    let dir = match &a.out_dir {
        Some(d) => d.clone(),
        None => {
            scratch = tempfile::tempdir().map_err(|e| Error::io(std::path::Path::new("."), e))?;
            scratch.path().to_path_buf()
        }
    };
    let mut copy = cli.command.clone();
    let original_outputs: Vec<std::path::PathBuf> = copy.outputs_mut().into_iter().filter_map(|p| p.clone()).collect();
    super::redirect(&mut cli, &dir);
    let rerun = super::execute(&cli, source.argv.clone())?;
    rerun.staged.commit()?;

    if let Some(at) = first_difference(&source.results, &rerun.report.results, "") {
        return Err(Error::ReplayMismatch(format!("results differ at `{at}`")));
    }
    let changed: Vec<&str> = source
        .inputs
        .iter()
        .zip(&rerun.report.inputs)
        .filter(|(x, y)| x.sha256 != y.sha256)
        .map(|(x, _)| x.role.as_str())
        .collect();
    if !changed.is_empty() {
        ctx.warn(format!("inputs changed since the original run: {changed:?}"));
    }
    let mut outputs = Vec::new();
    for orig in &original_outputs {
        let new = dir.join(orig.file_name().unwrap_or_default());
        let identical = match (std::fs::read(orig), std::fs::read(&new)) {
            (Ok(x), Ok(y)) => Some(x == y),
            _ => None,
        };
        if identical == Some(false) {
            return Err(Error::ReplayMismatch(format!("output {} differs", orig.display())));
        }
        outputs.push(json!({ "path": orig, "replayed": new, "identical": identical }));
    }
    Ok(json!({
        "source": a.source,
        "command": source.command,
        "identical": true,
        "outputs": outputs,
    }))
}
