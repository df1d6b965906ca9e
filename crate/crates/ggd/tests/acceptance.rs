//! Acceptance criteria. Prints one PASS / FAIL / SKIP line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Criterion 4 needs downloaded embeddings and datasets; point `GGD_REPRO_DIR`
//! at them (layout in the README). Without it the criterion is skipped.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ggd::io::stimuli::Stimuli;
use ggd::io::{datasets, lexicon as lexicon_io, vectors};
use ggd_core::association::{self, PValueMode};
use ggd_core::disentangle::{self, DisentangleConfig, HyperplaneStack};
use ggd_core::evaluations::{self, GgWeatSpec};
use ggd_core::lexicon::SimilarityPair;
use ggd_core::seed;
use ggd_core::synthetic::{self, SecondarySignal, SynthConfig};
use ggd_core::{cosine, EmbeddingTable, Gender, GenderLexicon, StimulusSet, TestConfig};
use rand::Rng;
use rand_distr::StandardNormal;

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            ok,
            detail: detail.into(),
        });
    }
}

enum Outcome {
    Ran(Checks),
    Skipped(String),
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn gaussian(rng: &mut seed::Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn unit(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

/// A table of `groups` named sets of random vectors, plus the sets.
fn random_sets(rng: &mut seed::Rng, dim: usize, groups: &[(&str, usize)]) -> (EmbeddingTable, Vec<StimulusSet>) {
    let mut rows = Vec::new();
    let mut sets = Vec::new();
    for (name, n) in groups {
        let words: Vec<String> = (0..*n).map(|i| format!("{name}{i}")).collect();
        for w in &words {
            rows.push((w.clone(), gaussian(rng, dim)));
        }
        sets.push(StimulusSet::new(name, words).unwrap());
    }
    let table = EmbeddingTable::from_rows(dim, rows.iter().map(|(w, v)| (w.as_str(), v.as_slice()))).unwrap();
    (table, sets)
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let mut c = Checks::default();
    let mut rng = seed::rng(11);

    let (mut worst_orth, mut worst_idem, mut grew) = (0.0_f64, 0.0_f64, 0usize);
    for _ in 0..500 {
        let w = gaussian(&mut rng, 50);
        let d = unit(&gaussian(&mut rng, 50));
        let p = disentangle::project_out(&w, &d).unwrap();
        let pp = disentangle::project_out(&p, &d).unwrap();
        worst_orth = worst_orth.max(dot(&p, &d).abs());
        worst_idem = worst_idem.max(p.iter().zip(&pp).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        grew += (norm(&p) > norm(&w)) as usize;
    }
    c.check("projection orthogonal to direction (1e-9)", worst_orth <= 1e-9, format!("max |<w',d>| = {worst_orth:.2e}"));
    c.check("projection idempotent (1e-9)", worst_idem <= 1e-9, format!("max deviation = {worst_idem:.2e}"));
    c.check("projection never increases norm", grew == 0, format!("{grew} of 500 grew"));

    let data = synthetic::generate(&SynthConfig {
        dimension: 40,
        per_class: 300,
        seed: 5,
        ..SynthConfig::default()
    })
    .unwrap();
    let cfg = DisentangleConfig {
        per_class: 300,
        ..DisentangleConfig::default()
    };
    let run = disentangle::run(data.table.clone(), &data.lexicon, &cfg).unwrap();
    let mut increases = 0;
    let mut table = data.table.clone();
    for d in run.stack.directions() {
        let before: Vec<f64> = table.iter().map(|w| norm(w.values)).collect();
        let mut st = HyperplaneStack::new(table.dimension());
        st.push(d.clone(), 1.0).unwrap();
        table = disentangle::apply_stack(table, &st).unwrap();
        increases += table.iter().zip(&before).filter(|(w, b)| norm(w.values) > **b).count();
    }
    c.check(
        "norms never increase across iterations",
        increases == 0 && !run.stack.is_empty(),
        format!("{} iterations, {increases} increases", run.stack.len()),
    );
    let same = disentangle::apply_stack(data.table.clone(), &HyperplaneStack::new(40)).unwrap();
    c.check("empty stack is the identity", same == data.table, "");

    let (table, s) = random_sets(&mut rng, 30, &[("x", 8), ("y", 8), ("a", 8), ("b", 8)]);
    let mut tc = TestConfig::default();
    tc.p_value.mode = PValueMode::Exact;
    let d = |x: &StimulusSet, y: &StimulusSet, a: &StimulusSet, b: &StimulusSet, t: &EmbeddingTable| {
        association::weat(x, y, a, b, t, &tc).unwrap().result
    };
    let base = d(&s[0], &s[1], &s[2], &s[3], &table);
    let swap_xy = d(&s[1], &s[0], &s[2], &s[3], &table);
    let swap_ab = d(&s[0], &s[1], &s[3], &s[2], &table);
    c.check(
        "WEAT antisymmetry (exact)",
        swap_xy.effect_size == -base.effect_size
            && swap_ab.effect_size == -base.effect_size
            && swap_xy.statistic == -base.statistic
            && swap_ab.statistic == -base.statistic,
        format!("d = {}, swapped {} / {}", base.effect_size, swap_xy.effect_size, swap_ab.effect_size),
    );
    let mut scaled = table.clone();
    scaled.transform_rows(|r| r.iter_mut().for_each(|v| *v *= 3.7));
    let ds = d(&s[0], &s[1], &s[2], &s[3], &scaled);
    c.check(
        "WEAT effect size invariant under scaling (1e-9)",
        (ds.effect_size - base.effect_size).abs() <= 1e-9,
        format!("|Δd| = {:.2e}", (ds.effect_size - base.effect_size).abs()),
    );

    let mut worst = 0.0_f64;
    for k in 0..5 {
        let mut r = seed::rng(100 + k);
        let (mut t, s) = random_sets(&mut r, 20, &[("x", 8), ("y", 8), ("a", 8), ("b", 8)]);
        // A mild planted association so the p-values are not all extreme.
        let shift = unit(&gaussian(&mut r, 20));
        for w in s[0].words().iter().chain(s[2].words()) {
            let i = t.index_of(w).unwrap();
            t.row_mut(i).iter_mut().zip(&shift).for_each(|(v, u)| *v += 0.3 * u);
        }
        let mut exact = TestConfig::default();
        exact.p_value.mode = PValueMode::Exact;
        let mut mc = TestConfig::default();
        mc.p_value.mode = PValueMode::MonteCarlo;
        mc.p_value.seed = k;
        let pe = association::weat(&s[0], &s[1], &s[2], &s[3], &t, &exact).unwrap().result.p_value;
        let pm = association::weat(&s[0], &s[1], &s[2], &s[3], &t, &mc).unwrap().result.p_value;
        worst = worst.max((pe - pm).abs());
    }
    c.check("exact vs Monte Carlo p within 0.01 (8+8)", worst <= 0.01, format!("max |Δp| = {worst:.4}"));

    let mut rejections = 0;
    let trials = 200;
    for k in 0..trials {
        let mut r = seed::rng(1000 + k);
        let (t, s) = random_sets(&mut r, 10, &[("x", 8), ("y", 8), ("a", 8), ("b", 8)]);
        let mut cfg = TestConfig::default();
        cfg.p_value.mode = PValueMode::Exact;
        let p = association::weat(&s[0], &s[1], &s[2], &s[3], &t, &cfg).unwrap().result.p_value;
        rejections += (p < 0.05) as usize;
    }
    let rate = rejections as f64 / trials as f64;
    c.check(
        "null calibration: 5% ± 3% rejections at α = 0.05",
        (0.02..=0.08).contains(&rate),
        format!("{rejections}/{trials} = {rate:.3}"),
    );
    Outcome::Ran(c)
}

// ---------------------------------------------------------------------------

/// Association oracle on the plane fixture, written in terms of angles:
/// the cosine of two plane vectors is the cosine of their angle difference.
struct PlaneOracle {
    angle: std::collections::HashMap<String, f64>,
}

impl PlaneOracle {
    fn new(table: &EmbeddingTable) -> Self {
        let angle = table.iter().map(|w| (w.word.to_string(), w.values[1].atan2(w.values[0]))).collect();
        PlaneOracle { angle }
    }

    fn cos(&self, a: &str, b: &str) -> f64 {
        (self.angle[a] - self.angle[b]).cos()
    }

    fn s(&self, w: &str, a: &[String], b: &[String]) -> f64 {
        let ma = a.iter().map(|x| self.cos(w, x)).sum::<f64>() / a.len() as f64;
        let mb = b.iter().map(|x| self.cos(w, x)).sum::<f64>() / b.len() as f64;
        ma - mb
    }

    fn pop_sd(v: &[f64]) -> f64 {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
    }

    /// `(d, statistic, exact p)`; p by enumerating all 16-bit masks with
    /// eight bits set.
    fn weat(&self, x: &[String], y: &[String], a: &[String], b: &[String]) -> (f64, f64, f64) {
        let sx: Vec<f64> = x.iter().map(|w| self.s(w, a, b)).collect();
        let sy: Vec<f64> = y.iter().map(|w| self.s(w, a, b)).collect();
        let all: Vec<f64> = sx.iter().chain(&sy).copied().collect();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let d = (mean(&sx) - mean(&sy)) / Self::pop_sd(&all);
        let stat = sx.iter().sum::<f64>() - sy.iter().sum::<f64>();
        let n = all.len();
        let (mut greater, mut total) = (0u64, 0u64);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != n / 2 {
                continue;
            }
            total += 1;
            let t: f64 = (0..n).map(|i| if mask >> i & 1 == 1 { all[i] } else { -all[i] }).sum();
            greater += (t > stat + 1e-12) as u64;
        }
        (d, stat, greater as f64 / total as f64)
    }

    fn sc_weat(&self, w: &str, a: &[String], b: &[String]) -> f64 {
        let cos: Vec<f64> = a.iter().chain(b).map(|x| self.cos(w, x)).collect();
        self.s(w, a, b) / Self::pop_sd(&cos)
    }
}

fn criterion_2() -> Outcome {
    let mut c = Checks::default();
    let table = vectors::load(&data("fixtures/plane.vec"), &Default::default()).unwrap().table;
    let stim = Stimuli::load(&data("fixtures/plane.toml")).unwrap();
    let (_, [x, y, a, b]) = stim.test("Plane").unwrap();
    let oracle = PlaneOracle::new(&table);
    let cfg = TestConfig {
        min_set_size: 5,
        ..TestConfig::default()
    };
    let got = association::weat(x, y, a, b, &table, &cfg).unwrap().result;
    let (d, stat, p) = oracle.weat(x.words(), y.words(), a.words(), b.words());
    c.check(
        "WEAT d matches the angle oracle (1e-9)",
        (got.effect_size - d).abs() <= 1e-9,
        format!("d = {:.12} vs {d:.12}", got.effect_size),
    );
    c.check(
        "WEAT statistic matches the angle oracle (1e-9)",
        (got.statistic - stat).abs() <= 1e-9,
        format!("{:.12} vs {stat:.12}", got.statistic),
    );
    c.check(
        "WEAT exact p matches brute-force enumeration",
        (got.p_value - p).abs() < 1e-15 && matches!(got.p_method, association::PMethod::Exact { partitions: 12870 }),
        format!("{} vs {p}", got.p_value),
    );

    let mut worst = 0.0_f64;
    for w in x.words().iter().chain(y.words()) {
        let got = association::sc_weat(w, a, b, &table, &cfg).unwrap().result.effect_size;
        worst = worst.max((got - oracle.sc_weat(w, a.words(), b.words())).abs());
    }
    c.check("SC-WEAT d matches the angle oracle (1e-9)", worst <= 1e-9, format!("max |Δd| = {worst:.2e}"));

    // Pairwise gap against a plain double loop.
    let mut rng = seed::rng(77);
    let dim = 12;
    let words: Vec<String> = (0..24).map(|i| format!("n{i}")).collect();
    let gender: Vec<Gender> = (0..24).map(|i| if i % 3 == 0 { Gender::Masculine } else { Gender::Feminine }).collect();
    let raw_rows: Vec<Vec<f64>> = words.iter().map(|_| gaussian(&mut rng, dim)).collect();
    let g = unit(&gaussian(&mut rng, dim));
    let dis_rows: Vec<Vec<f64>> = raw_rows
        .iter()
        .map(|r| {
            let k = dot(r, &g);
            r.iter().zip(&g).map(|(v, u)| v - k * u).collect()
        })
        .collect();
    let eng_words: Vec<String> = (0..24).map(|i| format!("e{i}")).collect();
    let eng_rows: Vec<Vec<f64>> = words.iter().map(|_| gaussian(&mut rng, dim)).collect();
    let mk = |ws: &[String], rows: &[Vec<f64>]| {
        EmbeddingTable::from_rows(dim, ws.iter().zip(rows).map(|(w, r)| (w.as_str(), r.as_slice()))).unwrap()
    };
    let (raw, dis, eng) = (mk(&words, &raw_rows), mk(&words, &dis_rows), mk(&eng_words, &eng_rows));
    let mut lex_rows: Vec<(String, Gender)> = words.iter().cloned().zip(gender.iter().copied()).collect();
    lex_rows.push(("ghost".into(), Gender::Feminine));
    let lexicon = GenderLexicon::build("xx", lex_rows, &["n23"]).unwrap().0;
    let mut gendered = Vec::new();
    let mut english = Vec::new();
    for i in 0..24 {
        for j in [(i + 1) % 24, (i + 5) % 24] {
            gendered.push(SimilarityPair::new(&words[i], &words[j], 5.0).unwrap());
            english.push(SimilarityPair::new(&eng_words[i], &eng_words[j], 5.0).unwrap());
        }
    }
    gendered.push(SimilarityPair::new("ghost", "n1", 5.0).unwrap());
    english.push(SimilarityPair::new("e0", "e1", 5.0).unwrap());
    let gap = evaluations::pairwise_gap(&gendered, &english, &lexicon, &raw, &dis, &eng, Default::default()).unwrap();

    let cos = |rows: &[Vec<f64>], i: usize, j: usize| dot(&rows[i], &rows[j]) / (norm(&rows[i]) * norm(&rows[j]));
    let mut sums = [[0.0; 2]; 3];
    let mut counts = [0usize; 2];
    for i in 0..24 {
        for j in [(i + 1) % 24, (i + 5) % 24] {
            if i == 23 || j == 23 {
                continue;
            }
            let k = (gender[i] != gender[j]) as usize;
            counts[k] += 1;
            sums[0][k] += cos(&raw_rows, i, j);
            sums[1][k] += cos(&dis_rows, i, j);
            sums[2][k] += cos(&eng_rows, i, j);
        }
    }
    let l: Vec<f64> = sums.iter().map(|s| s[0] / counts[0] as f64 - s[1] / counts[1] as f64).collect();
    let got = [gap.raw.gap, gap.disentangled.gap, gap.english.gap];
    let worst = got.iter().zip(&l).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    c.check(
        "pairwise gap l-values match a brute-force loop (1e-12)",
        worst <= 1e-12 && gap.n_same == counts[0] && gap.n_diff == counts[1],
        format!("max |Δl| = {worst:.2e}, same/diff = {}/{}", gap.n_same, gap.n_diff),
    );
    let reduction = 1.0 - (l[1] - l[2]) / (l[0] - l[2]);
    c.check(
        "gap reduction matches its definition",
        gap.reduction.is_some_and(|r| (r - reduction).abs() <= 1e-12),
        format!("{:?} vs {reduction}", gap.reduction),
    );
    Outcome::Ran(c)
}

// ---------------------------------------------------------------------------

fn criterion_3() -> Outcome {
    let mut c = Checks::default();
    let data = synthetic::generate(&SynthConfig::default()).unwrap();
    let run = disentangle::run(data.table.clone(), &data.lexicon, &DisentangleConfig::default()).unwrap();
    let acc = run.accuracy_series();
    c.check("iteration-0 accuracy ≥ 0.95", acc[0] >= 0.95, format!("{:.4}", acc[0]));
    c.check(
        "final accuracy ≤ 0.52 within 15 iterations",
        run.final_accuracy() <= 0.52 && run.stack.len() <= 15,
        format!("series {acc:.3?}"),
    );
    let first = dot(&run.stack.directions()[0], &data.planted).abs();
    c.check("first direction |cos| with planted ≥ 0.90", first >= 0.90, format!("{first:.4}"));

    let fem = data.words(Gender::Feminine);
    let masc = data.words(Gender::Masculine);
    let set = |name: &str, w: &[String]| StimulusSet::new(name, w.iter().cloned()).unwrap();
    let spec = GgWeatSpec {
        feminine_targets: set("feminine nouns", &fem[..500]),
        masculine_targets: set("masculine nouns", &masc[..500]),
        feminine_attributes: set("feminine attributes", &fem[500..520]),
        masculine_attributes: set("masculine attributes", &masc[500..520]),
    };
    let mut tc = TestConfig::default();
    tc.p_value.mode = PValueMode::MonteCarlo;
    tc.p_value.samples = 1000;
    let before = evaluations::gg_weat(&spec, &data.table, &tc).unwrap().result.effect_size;
    let after = evaluations::gg_weat(&spec, &run.table, &tc).unwrap().result.effect_size;
    c.check(
        "GG-style WEAT |d| ≤ 0.2 after disentanglement",
        after.abs() <= 0.2,
        format!("d {before:.3} → {after:.3}"),
    );

    let sample: Vec<&String> = fem.iter().step_by(30).chain(masc.iter().step_by(30)).collect();
    let (mut dev, mut n) = (0.0, 0);
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let b = cosine(data.base.vector(sample[i]).unwrap(), data.base.vector(sample[j]).unwrap()).unwrap();
            let a = cosine(run.table.vector(sample[i]).unwrap(), run.table.vector(sample[j]).unwrap()).unwrap();
            dev += (a - b).abs();
            n += 1;
        }
    }
    let mad = dev / n as f64;
    c.check("base cosine structure preserved (MAD ≤ 0.02)", mad <= 0.02, format!("MAD {mad:.4} over {n} pairs"));

    let two = synthetic::generate(&SynthConfig {
        secondary: Some(SecondarySignal {
            strength: 4.0,
            coverage: 0.3,
        }),
        ..SynthConfig::default()
    })
    .unwrap();
    let run2 = disentangle::run(two.table, &two.lexicon, &DisentangleConfig::default()).unwrap();
    let acc2 = run2.accuracy_series();
    c.check(
        "two-direction mode needs ≥ 2 iterations to reach chance",
        run2.stack.len() >= 2 && acc2[1] > 0.52 && run2.final_accuracy() <= 0.52,
        format!("series {acc2:.3?}"),
    );
    Outcome::Ran(c)
}

// ---------------------------------------------------------------------------

fn repro_dir() -> Option<PathBuf> {
    std::env::var_os("GGD_REPRO_DIR").map(PathBuf::from).filter(|p| p.is_dir())
}

fn within(c: &mut Checks, name: &str, got: f64, want: f64, tol: f64) {
    c.check(name, (got - want).abs() <= tol, format!("{got:.3} (target {want} ± {tol})"));
}

fn criterion_4() -> Outcome {
    let Some(dir) = repro_dir() else {
        return Outcome::Skipped("GGD_REPRO_DIR not set".into());
    };
    let mut c = Checks::default();
    let limit = Some(200_000);
    let load = |p: &Path, req: Vec<String>| {
        vectors::load(p, &vectors::LoadOptions {
            vocab_limit: limit,
            required: req.into_iter().collect(),
        })
        .map(|l| l.table)
    };

    let en_vec = dir.join("en.vec");
    if en_vec.exists() {
        let stim = Stimuli::load(&data("stimuli/en.toml")).unwrap();
        let mut req: Vec<String> = stim.all_words().cloned().collect();
        let valence_path = dir.join("en.valence.tsv");
        let norms = datasets::load_valence(&valence_path).ok();
        if let Some(n) = &norms {
            req.extend(n.iter().map(|v| v.word.clone()));
        }
        let table = load(&en_vec, req).unwrap();
        let small = TestConfig {
            min_set_size: 5,
            permissive: true,
            ..TestConfig::default()
        };
        for (test, want, tol) in [("FloI", 1.45, 0.10), ("InsW", 1.54, 0.10), ("GenS", 0.88, 0.10), ("GenC", 1.66, 0.15)] {
            let (_, [x, y, a, b]) = stim.test(test).unwrap();
            match association::weat(x, y, a, b, &table, &small) {
                Ok(o) => within(&mut c, &format!("EN {test} d"), o.result.effect_size, want, tol),
                Err(e) => c.check(&format!("EN {test} d"), false, e.to_string()),
            }
        }
        if let Some(norms) = norms {
            let r = evaluations::valnorm(&norms, stim.set("pleasant").unwrap(), stim.set("unpleasant").unwrap(), &table, &small);
            match r {
                Ok(r) => {
                    within(&mut c, "EN ValNorm r", r.pearson_r, 0.87, 0.05);
                    c.check("EN ValNorm n = 381", r.n_used == 381, format!("n = {}", r.n_used));
                }
                Err(e) => c.check("EN ValNorm", false, e.to_string()),
            }
        }
        let qpath = dir.join("questions-words.txt");
        if let Ok(questions) = datasets::load_analogies(&qpath) {
            let sections = vec!["family".to_string(), "capital-common-countries".to_string()];
            let r = evaluations::analogy_accuracy(&questions, &table, &sections, Some(200_000), Default::default()).unwrap();
            within(&mut c, "EN analogy accuracy", r.accuracy, 0.80, 0.05);
        }
    }

    for lang in ["fr", "de", "it", "pl", "es"] {
        let vec_path = dir.join(format!("{lang}.vec"));
        let nouns = dir.join(format!("{lang}.nouns.tsv"));
        if !vec_path.exists() || !nouns.exists() {
            continue;
        }
        let lex = lexicon_io::load(lang, &nouns, Some(&dir.join(format!("{lang}.animacy.txt")))).unwrap().lexicon;
        let stim = Stimuli::load(&data(&format!("stimuli/{lang}.toml"))).unwrap();
        let mut req: Vec<String> = lex.entries().iter().map(|e| e.0.clone()).collect();
        req.extend(stim.all_words().cloned());
        let pairs = datasets::load_pairs(&dir.join(format!("{lang}.pairs.tsv"))).ok();
        if let Some(p) = &pairs {
            req.extend(p.iter().flat_map(|p| [p.word_a.clone(), p.word_b.clone()]));
        }
        let raw = load(&vec_path, req).unwrap();
        let per_class = lex.count(Gender::Feminine).min(lex.count(Gender::Masculine)).min(3000);
        let run = disentangle::run(raw.clone(), &lex, &DisentangleConfig {
            per_class,
            ..DisentangleConfig::default()
        })
        .unwrap();
        let acc0 = run.accuracy_series()[0];
        c.check(&format!("{lang} iteration-0 accuracy ≥ 0.91"), acc0 >= 0.91, format!("{acc0:.3}"));

        let tc = TestConfig {
            min_set_size: 5,
            permissive: true,
            ..TestConfig::default()
        };
        for test in ["GenS", "GenC"] {
            let (_, [x, y, a, b]) = stim.test(test).unwrap();
            let d0 = association::weat(x, y, a, b, &raw, &tc).map(|o| o.result.effect_size);
            let d1 = association::weat(x, y, a, b, &run.table, &tc).map(|o| o.result.effect_size);
            match (d0, d1) {
                (Ok(d0), Ok(d1)) => c.check(&format!("{lang} {test} Δ > 0"), d1 > d0, format!("{d0:.3} → {d1:.3}")),
                (Err(e), _) | (_, Err(e)) => c.check(&format!("{lang} {test} Δ > 0"), false, e.to_string()),
            }
        }
        let gg = stim.gg.clone().unwrap();
        let (fa, ma) = (stim.set(&gg.feminine).unwrap(), stim.set(&gg.masculine).unwrap());
        if let Some(pairs) = &pairs {
            let targets = evaluations::build_gg_targets(pairs, &lex, &Default::default()).unwrap();
            let spec = GgWeatSpec {
                feminine_targets: targets.feminine,
                masculine_targets: targets.masculine,
                feminine_attributes: fa.clone(),
                masculine_attributes: ma.clone(),
            };
            let d0 = evaluations::gg_weat(&spec, &raw, &tc).unwrap().result.effect_size;
            let d1 = evaluations::gg_weat(&spec, &run.table, &tc).unwrap().result.effect_size;
            c.check(&format!("{lang} GG-WEAT d_init ≥ 1.5"), d0 >= 1.5, format!("{d0:.3}"));
            c.check(&format!("{lang} GG-WEAT Δ < 0"), d1 < d0, format!("{d0:.3} → {d1:.3}"));
        }
        let (pool, _) = lex.restrict(|w| raw.contains(w)).unwrap();
        let n = pool.count(Gender::Feminine).min(pool.count(Gender::Masculine)).min(1000);
        let (f, m) = pool.balanced_sample(n, 7).unwrap();
        let sweep = evaluations::sc_gg_sweep(&f, &m, fa, ma, &raw, &run.table, &tc).unwrap();
        c.check(
            &format!("{lang} SC-GG sweep weakened ≥ 0.85"),
            sweep.overall.weakened_signed >= 0.85,
            format!("{:.3}", sweep.overall.weakened_signed),
        );
        let en_pairs = datasets::load_pairs(&dir.join(format!("{lang}.pairs.en.tsv"))).ok();
        if let (Some(gp), Some(ep)) = (&pairs, en_pairs) {
            if let Ok(en) = load(&en_vec, ep.iter().flat_map(|p| [p.word_a.clone(), p.word_b.clone()]).collect()) {
                match evaluations::pairwise_gap(gp, &ep, &lex, &raw, &run.table, &en, Default::default()) {
                    Ok(g) => c.check(
                        &format!("{lang} pairwise-gap reduction > 0"),
                        g.reduction.is_some_and(|r| r > 0.0),
                        format!("{:?}", g.reduction_percent),
                    ),
                    Err(e) => c.check(&format!("{lang} pairwise-gap reduction > 0"), false, e.to_string()),
                }
            }
        }
    }
    if c.0.is_empty() {
        return Outcome::Skipped(format!("no recognised data files in {}", dir.display()));
    }
    Outcome::Ran(c)
}

// ---------------------------------------------------------------------------

fn ggd(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ggd"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn results_of(path: &Path) -> String {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    serde_json::to_string(&v["results"]).unwrap()
}

fn criterion_5() -> Outcome {
    let mut c = Checks::default();
    let tmp = tempfile::tempdir().unwrap();
    let p = |name: &str| tmp.path().join(name).to_string_lossy().into_owned();

    let synth = [
        "synth", "--dimension", "24", "--per-class", "200", "--seed", "9", "--out-embeddings", &p("syn.vec"),
        "--out-lexicon", &p("syn.tsv"), "--report", &p("synth.json"),
    ];
    let (code, err) = ggd(&synth);
    c.check("synth runs", code == 0, err.trim().to_string());

    let dis = |report: &str| {
        vec![
            "disentangle".to_string(), "--embeddings".into(), p("syn.vec"), "--lexicon".into(), p("syn.tsv"),
            "--per-class".into(), "200".into(), "--seed".into(), "3".into(), "--out-embeddings".into(),
            p("dis.vec"), "--out-stack".into(), p("dis.stack"), "--report".into(), p(report),
        ]
    };
    let run_owned = |args: Vec<String>| ggd(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let (c1, e1) = run_owned(dis("d1.json"));
    let first_table = std::fs::read(p("dis.vec")).unwrap_or_default();
    let (c2, e2) = run_owned(dis("d2.json"));
    let second_table = std::fs::read(p("dis.vec")).unwrap_or_default();
    c.check("disentangle runs twice", c1 == 0 && c2 == 0, format!("{e1}{e2}").trim().to_string());
    if c1 == 0 && c2 == 0 {
        c.check(
            "disentangle results identical across runs",
            results_of(&tmp.path().join("d1.json")) == results_of(&tmp.path().join("d2.json")) && first_table == second_table,
            "",
        );
    }
    let (code, err) = ggd(&["replay", &p("d1.json"), "--out-dir", &p(""), "--report", &p("replay_d.json")]);
    c.check("replay of disentangle reproduces results and outputs", code == 0, err.trim().to_string());

    let plane = data("fixtures/plane.vec").to_string_lossy().into_owned();
    let plane_stim = data("fixtures/plane.toml").to_string_lossy().into_owned();
    let weat = [
        "weat", "--before", &plane, "--after", &p("syn_plane.vec"), "--stimuli", &plane_stim, "--min-set-size", "5",
        "--p-mode", "monte-carlo", "--samples", "5000", "--seed", "4", "--report", &p("w.json"),
    ];
    // The after table is the plane fixture with every vector doubled.
    let t = vectors::load(Path::new(&plane), &Default::default()).unwrap().table;
    let mut doubled = t.clone();
    doubled.transform_rows(|r| r.iter_mut().for_each(|v| *v *= 2.0));
    let mut f = std::fs::File::create(p("syn_plane.vec")).unwrap();
    vectors::write(&doubled, &mut f).unwrap();
    drop(f);
    let (code, err) = ggd(&weat);
    c.check("weat runs", code == 0, err.trim().to_string());
    let (code, err) = ggd(&["replay", &p("w.json"), "--report", &p("replay_w.json")]);
    c.check("replay of weat reproduces results", code == 0, err.trim().to_string());

    let pca = [
        "pca-coords", "--embeddings", &p("syn.vec"), "--lexicon", &p("syn.tsv"), "--per-class", "50", "--seed", "2",
        "--csv", &p("pca.csv"), "--report", &p("pca.json"),
    ];
    let (code, err) = ggd(&pca);
    c.check("pca-coords runs", code == 0, err.trim().to_string());
    let (code, err) = ggd(&["replay", &p("pca.json"), "--out-dir", &p("")]);
    c.check("replay of pca-coords reproduces results", code == 0, err.trim().to_string());
    Outcome::Ran(c)
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 5] = [
        (1, "projection/property suite", Duration::from_secs(10), criterion_1),
        (2, "fixture oracle suite", Duration::from_secs(10), criterion_2),
        (3, "synthetic end-to-end", Duration::from_secs(60), criterion_3),
        (4, "real-embedding reproduction", Duration::MAX, criterion_4),
        (5, "determinism", Duration::MAX, criterion_5),
    ];
    let mut failed = 0;
    for (n, title, budget, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        match outcome {
            Outcome::Skipped(why) => println!("SKIP criterion {n} ({title}): {why}"),
            Outcome::Ran(checks) => {
                let bad: Vec<&Check> = checks.0.iter().filter(|c| !c.ok).collect();
                let slow = elapsed > budget;
                let status = if bad.is_empty() && !slow { "PASS" } else { "FAIL" };
                let timing = if budget == Duration::MAX {
                    format!("{:.1}s", elapsed.as_secs_f64())
                } else {
                    format!("{:.1}s of {}s", elapsed.as_secs_f64(), budget.as_secs())
                };
                println!(
                    "{status} criterion {n} ({title}): {}/{} checks, {timing}",
                    checks.0.len() - bad.len(),
                    checks.0.len()
                );
                for c in &checks.0 {
                    let mark = if c.ok { "ok  " } else { "FAIL" };
                    println!("    {mark} {}{}", c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
                }
                if status == "FAIL" {
                    failed += 1;
                }
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
