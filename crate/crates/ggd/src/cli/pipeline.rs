//! Commands that transform or generate tables.

use ggd_core::classifier::{self, TrainConfig};
use ggd_core::disentangle::{self, DisentangleConfig, SamplingMode};
use ggd_core::seed;
use ggd_core::synthetic::{self, SecondarySignal, SynthConfig};
use ggd_core::{EmbeddingTable, Gender};
use serde_json::{json, Value};

use super::common::{json, Ctx};
use super::{ApplyStackArgs, DisentangleArgs, PcaArgs, SynthArgs};
use crate::error::{Error, Result};
use crate::io::{stack, vectors};
use crate::pca;

fn stage_table(ctx: &mut Ctx, path: &std::path::Path, table: EmbeddingTable) -> Result<()> {
    ctx.staged.write(path, move |w| vectors::write(&table, w))
}

pub fn disentangle(a: &DisentangleArgs, ctx: &mut Ctx) -> Result<Value> {
    let lex = ctx.lexicon(&a.language, &a.lexicon)?;
    let required: Vec<&String> = lex.lexicon.entries().iter().map(|e| &e.0).collect();
    let table = ctx.table("embeddings", &a.embeddings, &a.table, required)?;
    let cfg = DisentangleConfig {
        max_iterations: a.iterations,
        stop_accuracy: a.stop_accuracy,
        per_class: a.per_class,
        sampling: if a.fixed_sample {
            SamplingMode::Fixed
        } else {
            SamplingMode::Resample
        },
        classifier: TrainConfig {
            regularization: a.regularization,
            epochs: a.epochs,
            holdout_fraction: a.holdout,
            seed: seed::derive(a.seed, "classifier"),
            ..TrainConfig::default()
        },
        seed: seed::derive(a.seed, "sample"),
    };
    let run = disentangle::run(table, &lex.lexicon, &cfg)?;
    if !run.missing_words.is_empty() {
        ctx.warn(format!("{} lexicon words have no embedding and were not sampled", run.missing_words.len()));
    }
    if !run.zero_vectors.is_empty() {
        ctx.warn(format!("projection annihilated {} vectors: {:?}", run.zero_vectors.len(), run.zero_vectors));
    }
    for &k in &run.orthogonality_violations {
        ctx.warn(format!("direction {k} is not near-orthogonal to its predecessor"));
    }
    let summary = json!({
        "language": a.language,
        "lexicon": lex,
        "config": cfg,
        "accuracy_series": run.accuracy_series(),
        "final_accuracy": run.final_accuracy(),
        "directions": run.stack.len(),
        "iterations": run.iterations,
        "missing_words": run.missing_words.len(),
        "zero_vectors": run.zero_vectors,
        "orthogonality_violations": run.orthogonality_violations,
        "table": { "words": run.table.len(), "dimension": run.table.dimension() },
    });
    if let Some(path) = &a.out_stack {
        let sidecar = stack::Sidecar {
            dimension: run.stack.dimension(),
            accuracies: run.stack.accuracies().to_vec(),
            run: summary.clone(),
        };
        let st = run.stack.clone();
        ctx.staged.write(path, move |w| stack::write_text(&st, w))?;
        let text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
        ctx.staged.write(&stack::sidecar_path(path), move |w| writeln!(w, "{text}"))?;
    }
    if let Some(path) = &a.out_embeddings {
        stage_table(ctx, path, run.table)?;
    }
    Ok(summary)
}

pub fn apply_stack(a: &ApplyStackArgs, ctx: &mut Ctx) -> Result<Value> {
    ctx.input("stack", &a.stack)?;
    let st = stack::load(&a.stack)?;
    let table = ctx.table("embeddings", &a.embeddings, &a.table, [])?;
    let out = disentangle::apply_stack(table, &st)?;
    let zero = out.zero_vectors();
    if !zero.is_empty() {
        ctx.warn(format!("projection annihilated {} vectors", zero.len()));
    }
    let mut worst = 0.0_f64;
    for wv in out.iter() {
        for d in st.directions() {
            if let Ok(c) = ggd_core::embeddings::cosine_slices(wv.values, d) {
                worst = worst.max(c.abs());
            }
        }
    }
    let results = json!({
        "directions": st.len(),
        "words": out.len(),
        "max_abs_cos_with_stack": worst,
        "zero_vectors": zero,
    });
    if let Some(path) = &a.out_embeddings {
        stage_table(ctx, path, out)?;
    }
    Ok(results)
}

pub fn synth(a: &SynthArgs, ctx: &mut Ctx) -> Result<Value> {
    let cfg = SynthConfig {
        dimension: a.dimension,
        per_class: a.per_class,
        signal_strength: a.alpha,
        noise_scale: a.sigma,
        masculine_rate: a.masculine_rate,
        secondary: a.secondary_strength.map(|strength| SecondarySignal {
            strength,
            coverage: a.secondary_coverage,
        }),
        neutral_words: a.neutral_words,
        seed: a.seed,
    };
    let data = synthetic::generate(&cfg)?;
    let results = json!({
        "config": cfg,
        "words": data.table.len(),
        "planted": data.planted,
        "secondary": data.secondary,
    });
    if let Some(path) = &a.out_lexicon {
        let rows: Vec<(String, Gender)> = data.lexicon.entries().to_vec();
        ctx.staged.write(path, move |w| {
            for (word, g) in &rows {
                writeln!(w, "{word}\t{}", g.tag())?;
            }
            Ok(())
        })?;
    }
    if let Some(path) = &a.out_base {
        stage_table(ctx, path, data.base)?;
    }
    let path = a.out_embeddings.as_ref().ok_or_else(|| Error::Usage("--out-embeddings is required".into()))?;
    stage_table(ctx, path, data.table)?;
    Ok(results)
}

pub fn pca_coords(a: &PcaArgs, ctx: &mut Ctx) -> Result<Value> {
    let lex = ctx.lexicon(&a.language, &a.lexicon)?;
    let required: Vec<&String> = lex.lexicon.entries().iter().map(|e| &e.0).collect();
    let table = ctx.table("embeddings", &a.embeddings, &a.table, required)?;
    let lookup = super::common::lookup(&a.table);
    let (pool, _) = lex.lexicon.restrict(|w| table.resolve(w, lookup).is_some())?;
    let sample_seed = seed::derive(a.seed, "pca/sample");
    let (fem, masc) = pool.balanced_sample(a.per_class, sample_seed)?;
    let labeled: Vec<(&String, Gender)> = fem
        .iter()
        .map(|w| (w, Gender::Feminine))
        .chain(masc.iter().map(|w| (w, Gender::Masculine)))
        .collect();
    let rows: Vec<&[f64]> = labeled
        .iter()
        .map(|(w, _)| table.row(table.resolve(w, lookup).expect("restricted to resolvable words")))
        .collect();
    let coords = pca::principal_coordinates(&rows, 2)?;

    let pos: Vec<&[f64]> = coords.iter().zip(&labeled).filter(|(_, l)| l.1 == Gender::Feminine).map(|(c, _)| c.as_slice()).collect();
    let neg: Vec<&[f64]> = coords.iter().zip(&labeled).filter(|(_, l)| l.1 == Gender::Masculine).map(|(c, _)| c.as_slice()).collect();
    let cls_cfg = TrainConfig {
        seed: seed::derive(a.seed, "pca/classifier"),
        ..TrainConfig::default()
    };
    let model = classifier::train(&pos, &neg, &cls_cfg)?;
    let all: Vec<(&[f64], bool)> = pos.iter().map(|c| (*c, true)).chain(neg.iter().map(|c| (*c, false))).collect();
    let separability = classifier::accuracy(&model, &all)?;

    let points: Vec<Value> = labeled
        .iter()
        .zip(&coords)
        .map(|((w, g), c)| json!({ "word": w, "gender": g.tag(), "pc1": c[0], "pc2": c[1] }))
        .collect();
    if let Some(path) = &a.csv {
        let records: Vec<(String, Gender, f64, f64)> =
            labeled.iter().zip(&coords).map(|((w, g), c)| ((*w).clone(), *g, c[0], c[1])).collect();
        ctx.staged.write(path, move |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["word", "gender", "pc1", "pc2"])?;
            for (word, g, x, y) in &records {
                out.write_record([word.clone(), g.tag().to_string(), x.to_string(), y.to_string()])?;
            }
            out.flush()
        })?;
    }
    Ok(json!({
        "language": a.language,
        "sample_seed": sample_seed,
        "sampled": labeled.len(),
        "separability": {
            "holdout_accuracy": model.holdout_accuracy,
            "full_sample_accuracy": separability,
        },
        "points": points,
        "classifier": json(&TrainSummary::from(&model)),
    }))
}

#[derive(serde::Serialize)]
struct TrainSummary {
    weight_norm: f64,
    bias: f64,
    train_accuracy: f64,
    holdout_accuracy: f64,
}

impl From<&classifier::LinearModel> for TrainSummary {
    fn from(m: &classifier::LinearModel) -> Self {
        TrainSummary {
            weight_norm: m.weight_norm(),
            bias: m.bias,
            train_accuracy: m.train_accuracy,
            holdout_accuracy: m.holdout_accuracy,
        }
    }
}
