//! Measurement commands. Each loads its tables once and reports the measured
//! quantity for the before table and, if given, the after table.

use ggd_core::association;
use ggd_core::evaluations::{self, GgTargetConfig, GgWeatSpec, WeakenRule};
use ggd_core::seed;
use ggd_core::{Gender, StimulusSet};
use serde_json::{json, Value};

use super::common::{self, compared, json, test_config, Ctx};
use super::{AnalogyArgs, GgAttributeArgs, GgWeatArgs, PairdistArgs, Rule, ScWeatArgs, SweepArgs, ValnormArgs, WeatArgs};
use crate::error::{Error, Result};
use crate::io::datasets;
use crate::io::stimuli::Stimuli;

fn merge(mut head: Value, tail: Value) -> Value {
    if let (Value::Object(h), Value::Object(t)) = (&mut head, tail) {
        h.extend(t);
    }
    head
}

fn note_missing(ctx: &mut Ctx, outcome: &association::TestOutcome, condition: &str) {
    for s in &outcome.sets {
        if !s.missing.is_empty() {
            ctx.warn(format!("{condition}: set `{}` dropped missing words {:?}", s.name, s.missing));
        }
        if !s.zeroed.is_empty() {
            ctx.warn(format!("{condition}: set `{}` excluded zero vectors {:?}", s.name, s.zeroed));
        }
        if !s.trimmed.is_empty() {
            ctx.warn(format!("{condition}: set `{}` trimmed {:?}", s.name, s.trimmed));
        }
    }
}

pub fn weat(a: &WeatArgs, ctx: &mut Ctx) -> Result<Value> {
    let stim = ctx.stimuli(&a.stimuli)?;
    let names: Vec<String> = if a.tests.is_empty() {
        stim.tests.keys().cloned().collect()
    } else {
        a.tests.clone()
    };
    if names.is_empty() {
        return Err(Error::data(&stim.path, "file defines no tests"));
    }
    let mut required = Vec::new();
    for n in &names {
        let (_, sets) = stim.test(n)?;
        required.extend(sets.iter().flat_map(|s| s.words()));
    }
    let (before, after) = common::tables(ctx, &a.tables.before, a.tables.after.as_deref(), &a.table, &required)?;
    let cfg = test_config(&a.test, &a.table, a.seed);

    let mut out = Vec::new();
    for n in &names {
        let (def, [x, y, sa, sb]) = stim.test(n)?;
        let rb = association::weat(x, y, sa, sb, &before, &cfg)?;
        note_missing(ctx, &rb, "before");
        let ra = match &after {
            Some(t) => {
                let r = association::weat(x, y, sa, sb, t, &cfg)?;
                note_missing(ctx, &r, "after");
                Some(r)
            }
            None => None,
        };
        let head = json!({ "test": n, "sets": def });
        out.push(merge(head, compared(&rb, ra.as_ref(), |o| o.result.effect_size)));
    }
    Ok(json!({ "language": stim.language, "p_seed": cfg.p_value.seed, "tests": out }))
}

pub fn sc_weat(a: &ScWeatArgs, ctx: &mut Ctx) -> Result<Value> {
    let stim = ctx.stimuli(&a.stimuli)?;
    let (sa, sb) = (stim.set(&a.a)?, stim.set(&a.b)?);
    let required: Vec<&String> = a.words.iter().chain(sa.words()).chain(sb.words()).collect();
    let (before, after) = common::tables(ctx, &a.tables.before, a.tables.after.as_deref(), &a.table, &required)?;
    let cfg = test_config(&a.test, &a.table, a.seed);
    let mut out = Vec::new();
    for w in &a.words {
        let rb = association::sc_weat(w, sa, sb, &before, &cfg)?;
        let ra = after.as_ref().map(|t| association::sc_weat(w, sa, sb, t, &cfg)).transpose()?;
        out.push(merge(json!({ "word": w }), compared(&rb, ra.as_ref(), |o| o.result.effect_size)));
    }
    Ok(json!({ "attributes": [a.a, a.b], "p_seed": cfg.p_value.seed, "words": out }))
}

fn gg_attributes<'s>(stim: &'s Stimuli, args: &GgAttributeArgs) -> Result<(&'s StimulusSet, &'s StimulusSet)> {
    let (f, m) = match (&args.feminine_attributes, &args.masculine_attributes, &stim.gg) {
        (Some(f), Some(m), _) => (f.clone(), m.clone()),
        (None, None, Some(gg)) => (gg.feminine.clone(), gg.masculine.clone()),
        (None, None, None) => {
            return Err(Error::data(
                &stim.path,
                "no [gg] attribute sets; pass --feminine-attributes and --masculine-attributes",
            ))
        }
        _ => return Err(Error::Usage("give both --feminine-attributes and --masculine-attributes".into())),
    };
    Ok((stim.set(&f)?, stim.set(&m)?))
}

pub fn gg_weat(a: &GgWeatArgs, ctx: &mut Ctx) -> Result<Value> {
    let stim = ctx.stimuli(&a.stimuli)?;
    let (fa, ma) = gg_attributes(&stim, &a.attributes)?;
    let lex = ctx.lexicon(&stim.language, &a.lexicon)?;
    ctx.input("pairs", &a.pairs)?;
    let pairs = datasets::load_pairs(&a.pairs)?;
    let target_cfg = GgTargetConfig {
        min_score: a.min_score,
        max_per_set: a.max_per_set.unwrap_or(usize::MAX),
        min_set_size: a.test.min_set_size,
    };
    let targets = evaluations::build_gg_targets(&pairs, &lex.lexicon, &target_cfg)?;
    let spec = GgWeatSpec {
        feminine_targets: targets.feminine.clone(),
        masculine_targets: targets.masculine.clone(),
        feminine_attributes: fa.clone(),
        masculine_attributes: ma.clone(),
    };
    let required: Vec<&String> = [&spec.feminine_targets, &spec.masculine_targets, fa, ma]
        .into_iter()
        .flat_map(|s| s.words())
        .collect();
    let (before, after) = common::tables(ctx, &a.tables.before, a.tables.after.as_deref(), &a.table, &required)?;
    let cfg = test_config(&a.test, &a.table, a.seed);
    let rb = evaluations::gg_weat(&spec, &before, &cfg)?;
    note_missing(ctx, &rb, "before");
    let ra = after.as_ref().map(|t| evaluations::gg_weat(&spec, t, &cfg)).transpose()?;
    if let Some(r) = &ra {
        note_missing(ctx, r, "after");
    }
    let head = json!({
        "language": stim.language,
        "attributes": [fa.name, ma.name],
        "min_score": a.min_score,
        "targets": targets,
        "lexicon": lex,
        "p_seed": cfg.p_value.seed,
    });
    Ok(merge(head, compared(&rb, ra.as_ref(), |o| o.result.effect_size)))
}

pub fn valnorm(a: &ValnormArgs, ctx: &mut Ctx) -> Result<Value> {
    let stim = ctx.stimuli(&a.stimuli)?;
    let (p, u) = (stim.set(&a.pleasant)?, stim.set(&a.unpleasant)?);
    ctx.input("norms", &a.norms)?;
    let norms = datasets::load_valence(&a.norms)?;
    let required: Vec<&String> = norms.iter().map(|n| &n.word).chain(p.words()).chain(u.words()).collect();
    let (before, after) = common::tables(ctx, &a.tables.before, a.tables.after.as_deref(), &a.table, &required)?;
    let cfg = test_config(&a.test, &a.table, a.seed);
    let rb = evaluations::valnorm(&norms, p, u, &before, &cfg)?;
    let ra = after.as_ref().map(|t| evaluations::valnorm(&norms, p, u, t, &cfg)).transpose()?;
    Ok(merge(
        json!({ "language": stim.language, "norms": norms.len() }),
        compared(&rb, ra.as_ref(), |r| r.pearson_r),
    ))
}

pub fn analogy(a: &AnalogyArgs, ctx: &mut Ctx) -> Result<Value> {
    ctx.input("questions", &a.questions)?;
    let questions = datasets::load_analogies(&a.questions)?;
    let (before, after) = common::tables(ctx, &a.tables.before, a.tables.after.as_deref(), &a.table, &[])?;
    let lookup = common::lookup(&a.table);
    let run = |t| evaluations::analogy_accuracy(&questions, t, &a.sections, a.candidate_limit, lookup);
    let rb = run(&before)?;
    let ra = after.as_ref().map(run).transpose()?;
    Ok(merge(
        json!({ "questions": questions.len(), "method": "3cosadd" }),
        compared(&rb, ra.as_ref(), |r| r.accuracy),
    ))
}

pub fn pairdist(a: &PairdistArgs, ctx: &mut Ctx) -> Result<Value> {
    let lex = ctx.lexicon(&a.language, &a.lexicon)?;
    ctx.input("pairs", &a.pairs)?;
    ctx.input("english_pairs", &a.english_pairs)?;
    let gendered = datasets::load_pairs(&a.pairs)?;
    let english = datasets::load_pairs(&a.english_pairs)?;
    let g_words: Vec<&String> = gendered.iter().flat_map(|p| [&p.word_a, &p.word_b]).collect();
    let e_words: Vec<&String> = english.iter().flat_map(|p| [&p.word_a, &p.word_b]).collect();
    let raw = ctx.table("raw", &a.raw, &a.table, g_words.iter().copied())?;
    let dis = ctx.table("disentangled", &a.disentangled, &a.table, g_words.iter().copied())?;
    let eng = ctx.table("english", &a.english, &a.table, e_words.iter().copied())?;
    let gap = evaluations::pairwise_gap(&gendered, &english, &lex.lexicon, &raw, &dis, &eng, common::lookup(&a.table))?;
    if gap.reduction.is_none() {
        ctx.warn("gap reduction undefined: raw gap equals English gap".into());
    }
    Ok(json!({ "language": a.language, "lexicon": lex, "gap": gap }))
}

pub fn sweep(a: &SweepArgs, ctx: &mut Ctx) -> Result<Value> {
    let stim = ctx.stimuli(&a.stimuli)?;
    let (fa, ma) = gg_attributes(&stim, &a.attributes)?;
    let lex = ctx.lexicon(&stim.language, &a.lexicon)?;
    let required: Vec<&String> = lex
        .lexicon
        .entries()
        .iter()
        .map(|e| &e.0)
        .chain(fa.words())
        .chain(ma.words())
        .collect();
    let (before, after) = common::tables(ctx, &a.before, Some(&a.after), &a.table, &required)?;
    let after = after.expect("after table loaded");
    let lookup = common::lookup(&a.table);
    let usable = |t: &ggd_core::EmbeddingTable, w: &str| t.resolve(w, lookup).is_some_and(|i| t.row(i).iter().any(|v| *v != 0.0));
    let (pool, dropped) = lex.lexicon.restrict(|w| usable(&before, w) && usable(&after, w))?;
    let sample_seed = seed::derive(a.seed, "sweep/sample");
    let (fem, masc) = pool.balanced_sample(a.per_class, sample_seed)?;
    let cfg = test_config(&a.test, &a.table, a.seed);
    let result = evaluations::sc_gg_sweep(&fem, &masc, fa, ma, &before, &after, &cfg)?;
    let rule = match a.rule {
        Rule::Signed => WeakenRule::Signed,
        Rule::Magnitude => WeakenRule::Magnitude,
    };
    if let Some(path) = &a.csv {
        let records = result.records.clone();
        ctx.staged.write(path, move |w| {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["word", "gender", "d_before", "d_after", "weakened", "weakened_signed", "weakened_magnitude"])?;
            for r in &records {
                out.write_record([
                    r.word.clone(),
                    r.gender.tag().to_string(),
                    r.d_before.to_string(),
                    r.d_after.to_string(),
                    rule.weakened(r.gender, r.d_before, r.d_after).to_string(),
                    r.weakened_signed.to_string(),
                    r.weakened_magnitude.to_string(),
                ])?;
            }
            out.flush()
        })?;
    }
    Ok(json!({
        "language": stim.language,
        "attributes": [fa.name, ma.name],
        "rule": a.rule,
        "weakened_fraction": result.overall.weakened(rule),
        "weakened_fraction_feminine": result.feminine.weakened(rule),
        "weakened_fraction_masculine": result.masculine.weakened(rule),
        "sample_seed": sample_seed,
        "sampled": { Gender::Feminine.to_string(): fem.len(), Gender::Masculine.to_string(): masc.len() },
        "lexicon_unusable": dropped.len(),
        "sweep": json(&result),
    }))
}
