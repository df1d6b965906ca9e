//! Evaluation battery run before and after disentanglement.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::association::{self, resolve_set, TestConfig, TestOutcome};
use crate::embeddings::{EmbeddingTable, Lookup};
use crate::error::{Error, Result};
use crate::lexicon::{AnalogyQuestion, Gender, GenderLexicon, SimilarityPair, StimulusSet, ValenceNorm};
use crate::vector;

// ---------------------------------------------------------------------------
// GG-WEAT

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GgTargetConfig {
    /// Pairs scoring below this are ignored.
    pub min_score: f64,
    /// Cap on pairs used (each contributes one word to each target set).
    pub max_per_set: usize,
    pub min_set_size: usize,
}

impl Default for GgTargetConfig {
    fn default() -> Self {
        GgTargetConfig {
            min_score: 6.0,
            max_per_set: usize::MAX,
            min_set_size: crate::MIN_SET_SIZE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GgTargets {
    pub feminine: StimulusSet,
    pub masculine: StimulusSet,
    /// `(feminine word, masculine word, score)` in selection order.
    pub pairs_used: Vec<(String, String, f64)>,
    pub below_threshold: usize,
    pub same_gender: usize,
    /// At least one member absent from the (inanimate-only) lexicon.
    pub not_in_lexicon: usize,
    /// A pair label disagreed with the lexicon.
    pub label_mismatch: usize,
    /// A member was already taken by a higher-ranked pair.
    pub reused_word: usize,
}

fn pair_gender(word: &str, label: Option<Gender>, lexicon: &GenderLexicon) -> core::result::Result<Gender, bool> {
    match (lexicon.gender_of(word), label) {
        (None, _) => Err(false),
        (Some(g), Some(l)) if g != l => Err(true),
        (Some(g), _) => Ok(g),
    }
}

/// Builds GG-WEAT target sets from opposite-gender, high-similarity pairs of
/// inanimate nouns. Pairs are ranked by descending score, then
/// lexicographically; a pair is skipped if either member was already used.
pub fn build_gg_targets(pairs: &[SimilarityPair], lexicon: &GenderLexicon, config: &GgTargetConfig) -> Result<GgTargets> {
    let mut out = GgTargets {
        feminine: StimulusSet::new("gg_feminine", ["_"])?,
        masculine: StimulusSet::new("gg_masculine", ["_"])?,
        pairs_used: Vec::new(),
        below_threshold: 0,
        same_gender: 0,
        not_in_lexicon: 0,
        label_mismatch: 0,
        reused_word: 0,
    };
    let mut candidates: Vec<(&str, &str, f64)> = Vec::new();
    for p in pairs {
        if p.score < config.min_score {
            out.below_threshold += 1;
            continue;
        }
        let ga = pair_gender(&p.word_a, p.gender_a, lexicon);
        let gb = pair_gender(&p.word_b, p.gender_b, lexicon);
        match (ga, gb) {
            (Err(true), _) | (_, Err(true)) => out.label_mismatch += 1,
            (Err(false), _) | (_, Err(false)) => out.not_in_lexicon += 1,
            (Ok(a), Ok(b)) if a == b => out.same_gender += 1,
            (Ok(Gender::Feminine), Ok(_)) => candidates.push((&p.word_a, &p.word_b, p.score)),
            (Ok(_), Ok(_)) => candidates.push((&p.word_b, &p.word_a, p.score)),
        }
    }
    candidates.sort_by(|x, y| {
        y.2.partial_cmp(&x.2)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then_with(|| x.0.cmp(y.0))
            .then_with(|| x.1.cmp(y.1))
    });

    let mut used: HashSet<&str> = HashSet::new();
    let mut fem = Vec::new();
    let mut masc = Vec::new();
    for (f, m, score) in candidates {
        if out.pairs_used.len() >= config.max_per_set {
            break;
        }
        if used.contains(f) || used.contains(m) {
            out.reused_word += 1;
            continue;
        }
        used.insert(f);
        used.insert(m);
        fem.push(f.to_string());
        masc.push(m.to_string());
        out.pairs_used.push((f.to_string(), m.to_string(), score));
    }
    if out.pairs_used.len() < config.min_set_size {
        return Err(Error::TooFewPairs {
            found: out.pairs_used.len(),
            needed: config.min_set_size,
        });
    }
    out.feminine = StimulusSet::new("gg_feminine", fem)?;
    out.masculine = StimulusSet::new("gg_masculine", masc)?;
    Ok(out)
}

/// Targets are grammatically gendered inanimate nouns; attributes are words
/// with semantic gender.
#[derive(Debug, Clone, PartialEq)]
pub struct GgWeatSpec {
    pub feminine_targets: StimulusSet,
    pub masculine_targets: StimulusSet,
    pub feminine_attributes: StimulusSet,
    pub masculine_attributes: StimulusSet,
}

/// WEAT with X = feminine nouns, Y = masculine nouns, A = feminine
/// attributes, B = masculine attributes. `d > 0` means grammatical gender is
/// aligned with semantic gender.
pub fn gg_weat(spec: &GgWeatSpec, table: &EmbeddingTable, config: &TestConfig) -> Result<TestOutcome> {
    association::weat(
        &spec.feminine_targets,
        &spec.masculine_targets,
        &spec.feminine_attributes,
        &spec.masculine_attributes,
        table,
        config,
    )
}

// ---------------------------------------------------------------------------
// Single-category sweep

/// When a word counts as having moved toward gender neutrality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WeakenRule {
    /// `|d_after| < |d_before|` and the move is away from the word's own
    /// gender side (feminine: `d_after < d_before`, masculine: `d_after > d_before`).
    #[default]
    Signed,
    /// `|d_after| < |d_before|` only.
    Magnitude,
}

impl WeakenRule {
    pub fn weakened(self, gender: Gender, before: f64, after: f64) -> bool {
        let shrank = after.abs() < before.abs();
        match self {
            WeakenRule::Magnitude => shrank,
            WeakenRule::Signed => {
                shrank
                    && match gender {
                        Gender::Feminine => after < before,
                        Gender::Masculine => after > before,
                    }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRecord {
    pub word: String,
    pub gender: Gender,
    pub d_before: f64,
    pub d_after: f64,
    pub weakened_signed: bool,
    pub weakened_magnitude: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepSummary {
    pub count: usize,
    pub weakened_signed: f64,
    pub weakened_magnitude: f64,
    pub mean_abs_before: f64,
    pub mean_abs_after: f64,
}

impl SweepSummary {
    fn of<'a, I: Iterator<Item = &'a SweepRecord>>(records: I) -> Self {
        let mut s = SweepSummary::default();
        let (mut ws, mut wm) = (0usize, 0usize);
        for r in records {
            s.count += 1;
            ws += r.weakened_signed as usize;
            wm += r.weakened_magnitude as usize;
            s.mean_abs_before += r.d_before.abs();
            s.mean_abs_after += r.d_after.abs();
        }
        if s.count > 0 {
            let n = s.count as f64;
            s.weakened_signed = ws as f64 / n;
            s.weakened_magnitude = wm as f64 / n;
            s.mean_abs_before /= n;
            s.mean_abs_after /= n;
        }
        s
    }

    pub fn weakened(&self, rule: WeakenRule) -> f64 {
        match rule {
            WeakenRule::Signed => self.weakened_signed,
            WeakenRule::Magnitude => self.weakened_magnitude,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
    pub feminine: SweepSummary,
    pub masculine: SweepSummary,
    pub overall: SweepSummary,
    /// Words skipped because they were missing (permissive mode) or zeroed.
    pub excluded: Vec<String>,
}

fn unit_row(table: &EmbeddingTable, word: &str, config: &TestConfig) -> Result<Option<Vec<f64>>> {
    match table.resolve(word, config.lookup) {
        None if config.permissive => Ok(None),
        None => Err(Error::UnresolvedWord {
            set: "sweep".to_string(),
            word: word.to_string(),
        }),
        Some(i) => Ok(vector::normalized(table.row(i))),
    }
}

/// SC-WEAT effect size of every noun against (feminine, masculine) semantic
/// attributes in both tables. `d > 0` denotes association with semantic
/// femininity.
pub fn sc_gg_sweep(
    feminine: &[String],
    masculine: &[String],
    feminine_attributes: &StimulusSet,
    masculine_attributes: &StimulusSet,
    before: &EmbeddingTable,
    after: &EmbeddingTable,
    config: &TestConfig,
) -> Result<SweepResult> {
    if feminine.is_empty() && masculine.is_empty() {
        return Err(Error::EmptySample("sweep word list".into()));
    }
    let fa_before = resolve_set(feminine_attributes, before, config)?;
    let ma_before = resolve_set(masculine_attributes, before, config)?;
    let fa_after = resolve_set(feminine_attributes, after, config)?;
    let ma_after = resolve_set(masculine_attributes, after, config)?;

    let mut records = Vec::new();
    let mut excluded = Vec::new();
    let words = feminine
        .iter()
        .map(|w| (w, Gender::Feminine))
        .chain(masculine.iter().map(|w| (w, Gender::Masculine)));
    for (word, gender) in words {
        let (Some(wb), Some(wa)) = (unit_row(before, word, config)?, unit_row(after, word, config)?) else {
            excluded.push(word.clone());
            continue;
        };
        let (d_before, _) = association::sc_weat_scores(&wb, &fa_before.vectors, &ma_before.vectors)?;
        let (d_after, _) = association::sc_weat_scores(&wa, &fa_after.vectors, &ma_after.vectors)?;
        records.push(SweepRecord {
            word: word.clone(),
            gender,
            d_before,
            d_after,
            weakened_signed: WeakenRule::Signed.weakened(gender, d_before, d_after),
            weakened_magnitude: WeakenRule::Magnitude.weakened(gender, d_before, d_after),
        });
    }
    if records.is_empty() {
        return Err(Error::EmptySample("no sweep word resolved in both tables".into()));
    }
    Ok(SweepResult {
        feminine: SweepSummary::of(records.iter().filter(|r| r.gender == Gender::Feminine)),
        masculine: SweepSummary::of(records.iter().filter(|r| r.gender == Gender::Masculine)),
        overall: SweepSummary::of(records.iter()),
        records,
        excluded,
    })
}

// ---------------------------------------------------------------------------
// ValNorm

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::EmptySample("correlation needs at least two points".into()));
    }
    let mx = vector::mean(xs);
    let my = vector::mean(ys);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance("first series".into()));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance("second series".into()));
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValNormResult {
    pub pearson_r: f64,
    pub n_used: usize,
    pub dropped: Vec<String>,
    /// `(word, human valence, embedding effect size)` for every used word.
    pub scores: Vec<(String, f64, f64)>,
}

/// Correlates human valence ratings with each word's SC-WEAT effect size
/// against (pleasant, unpleasant).
pub fn valnorm(
    norms: &[ValenceNorm],
    pleasant: &StimulusSet,
    unpleasant: &StimulusSet,
    table: &EmbeddingTable,
    config: &TestConfig,
) -> Result<ValNormResult> {
    let p = resolve_set(pleasant, table, config)?;
    let u = resolve_set(unpleasant, table, config)?;
    let mut dropped = Vec::new();
    let mut scores = Vec::new();
    for n in norms {
        let unit = table
            .resolve(&n.word, config.lookup)
            .and_then(|i| vector::normalized(table.row(i)));
        match unit {
            None => dropped.push(n.word.clone()),
            Some(w) => {
                let (d, _) = association::sc_weat_scores(&w, &p.vectors, &u.vectors)?;
                scores.push((n.word.clone(), n.valence, d));
            }
        }
    }
    if scores.len() < 3 {
        return Err(Error::EmptySample(alloc::format!(
            "only {} valence words resolved, need 3",
            scores.len()
        )));
    }
    let human: Vec<f64> = scores.iter().map(|s| s.1).collect();
    let emb: Vec<f64> = scores.iter().map(|s| s.2).collect();
    Ok(ValNormResult {
        pearson_r: pearson(&human, &emb)?,
        n_used: scores.len(),
        dropped,
        scores,
    })
}

// ---------------------------------------------------------------------------
// Analogies

/// Unit-normalized candidate matrix for 3CosAdd search.
#[derive(Debug, Clone)]
pub struct AnalogyIndex<'t> {
    table: &'t EmbeddingTable,
    units: Vec<f64>,
    valid: Vec<bool>,
    candidates: usize,
    lookup: Lookup,
}

/// Outcome of one question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalogyAnswer {
    /// One of a, b, c is missing or zero.
    Dropped,
    /// Best candidate (None when no candidate is eligible).
    Answered(Option<String>),
}

impl<'t> AnalogyIndex<'t> {
    /// Candidates are the first `candidate_limit` rows (all rows if `None`).
    pub fn new(table: &'t EmbeddingTable, candidate_limit: Option<usize>, lookup: Lookup) -> Self {
        let dim = table.dimension();
        let candidates = candidate_limit.map_or(table.len(), |n| n.min(table.len()));
        let mut units = alloc::vec![0.0; candidates * dim];
        let mut valid = alloc::vec![false; candidates];
        for i in 0..candidates {
            if let Some(u) = vector::normalized(table.row(i)) {
                units[i * dim..(i + 1) * dim].copy_from_slice(&u);
                valid[i] = true;
            }
        }
        AnalogyIndex {
            table,
            units,
            valid,
            candidates,
            lookup,
        }
    }

    fn unit_of(&self, word: &str) -> Option<(usize, Vec<f64>)> {
        let i = self.table.resolve(word, self.lookup)?;
        vector::normalized(self.table.row(i)).map(|u| (i, u))
    }

    /// 3CosAdd: argmax over candidates of cos(v, b − a + c), excluding a, b, c.
    pub fn answer(&self, q: &AnalogyQuestion) -> AnalogyAnswer {
        let (Some((ia, a)), Some((ib, b)), Some((ic, c))) = (self.unit_of(&q.a), self.unit_of(&q.b), self.unit_of(&q.c)) else {
            return AnalogyAnswer::Dropped;
        };
        let target: Vec<f64> = b.iter().zip(&a).zip(&c).map(|((b, a), c)| b - a + c).collect();
        let dim = self.table.dimension();
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.candidates {
            if !self.valid[i] || i == ia || i == ib || i == ic {
                continue;
            }
            // |target| is constant across candidates
            let score = vector::dot(&self.units[i * dim..(i + 1) * dim], &target);
            if best.map_or(true, |(_, s)| score > s) {
                best = Some((i, score));
            }
        }
        AnalogyAnswer::Answered(best.map(|(i, _)| self.table.words()[i].clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SectionScore {
    pub section: String,
    pub correct: usize,
    pub attempted: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnalogyResult {
    pub accuracy: f64,
    pub correct: usize,
    pub attempted: usize,
    pub dropped: usize,
    pub sections: Vec<SectionScore>,
}

/// Questions whose section is in `sections` (all when empty).
pub fn filter_sections<'q>(questions: &'q [AnalogyQuestion], sections: &[String]) -> Vec<&'q AnalogyQuestion> {
    questions
        .iter()
        .filter(|q| sections.is_empty() || sections.iter().any(|s| *s == q.section))
        .collect()
}

/// Aggregates per-question answers (same order as `questions`).
pub fn tally(questions: &[&AnalogyQuestion], answers: &[AnalogyAnswer]) -> Result<AnalogyResult> {
    if questions.is_empty() {
        return Err(Error::EmptySample("no analogy questions after filtering".into()));
    }
    let mut sections: Vec<SectionScore> = Vec::new();
    let (mut correct, mut attempted, mut dropped) = (0, 0, 0);
    for (q, ans) in questions.iter().zip(answers) {
        let AnalogyAnswer::Answered(got) = ans else {
            dropped += 1;
            continue;
        };
        let ok = got.as_deref() == Some(q.d.as_str());
        attempted += 1;
        correct += ok as usize;
        match sections.iter_mut().find(|s| s.section == q.section) {
            Some(s) => {
                s.attempted += 1;
                s.correct += ok as usize;
            }
            None => sections.push(SectionScore {
                section: q.section.clone(),
                correct: ok as usize,
                attempted: 1,
            }),
        }
    }
    if attempted == 0 {
        return Err(Error::EmptySample("every analogy question was dropped".into()));
    }
    Ok(AnalogyResult {
        accuracy: correct as f64 / attempted as f64,
        correct,
        attempted,
        dropped,
        sections,
    })
}

/// 3CosAdd accuracy over the selected sections.
pub fn analogy_accuracy(
    questions: &[AnalogyQuestion],
    table: &EmbeddingTable,
    sections: &[String],
    candidate_limit: Option<usize>,
    lookup: Lookup,
) -> Result<AnalogyResult> {
    let selected = filter_sections(questions, sections);
    let index = AnalogyIndex::new(table, candidate_limit, lookup);
    let answers: Vec<AnalogyAnswer> = selected.iter().map(|q| index.answer(q)).collect();
    tally(&selected, &answers)
}

// ---------------------------------------------------------------------------
// Pairwise distance gap

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapStats {
    pub avg_same: f64,
    pub avg_diff: f64,
    /// `avg_same − avg_diff`
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapReduction {
    pub raw: GapStats,
    pub disentangled: GapStats,
    pub english: GapStats,
    /// `1 − (l'_g − l_e) / (l_g − l_e)`; `None` when `l_g = l_e`.
    pub reduction: Option<f64>,
    pub reduction_percent: Option<f64>,
    pub n_same: usize,
    pub n_diff: usize,
    pub dropped: usize,
}

fn pair_cos(table: &EmbeddingTable, a: &str, b: &str, lookup: Lookup) -> Option<f64> {
    let ua = vector::normalized(table.row(table.resolve(a, lookup)?))?;
    let ub = vector::normalized(table.row(table.resolve(b, lookup)?))?;
    Some(vector::dot(&ua, &ub))
}

fn stats(same: &[f64], diff: &[f64]) -> GapStats {
    let avg_same = vector::mean(same);
    let avg_diff = vector::mean(diff);
    GapStats {
        avg_same,
        avg_diff,
        gap: avg_same - avg_diff,
    }
}

/// How much of the extra similarity between same-gender noun pairs, relative
/// to English translations of the same pairs, disappears after
/// disentanglement.
///
/// `english[i]` must be the translation of `gendered[i]`. A pair is used only
/// when both members are in the inanimate lexicon and every word resolves (with
/// a non-zero vector) in its table.
pub fn pairwise_gap(
    gendered: &[SimilarityPair],
    english: &[SimilarityPair],
    lexicon: &GenderLexicon,
    raw: &EmbeddingTable,
    disentangled: &EmbeddingTable,
    english_table: &EmbeddingTable,
    lookup: Lookup,
) -> Result<GapReduction> {
    if gendered.len() != english.len() {
        return Err(Error::InvalidData(alloc::format!(
            "{} gendered pairs but {} English pairs",
            gendered.len(),
            english.len()
        )));
    }
    let mut same = [Vec::new(), Vec::new(), Vec::new()];
    let mut diff = [Vec::new(), Vec::new(), Vec::new()];
    let mut dropped = 0;
    for (g, e) in gendered.iter().zip(english) {
        let genders = (
            pair_gender(&g.word_a, g.gender_a, lexicon),
            pair_gender(&g.word_b, g.gender_b, lexicon),
        );
        let (Ok(ga), Ok(gb)) = genders else {
            dropped += 1;
            continue;
        };
        let cos = (
            pair_cos(raw, &g.word_a, &g.word_b, lookup),
            pair_cos(disentangled, &g.word_a, &g.word_b, lookup),
            pair_cos(english_table, &e.word_a, &e.word_b, lookup),
        );
        let (Some(r), Some(d), Some(en)) = cos else {
            dropped += 1;
            continue;
        };
        let bucket = if ga == gb { &mut same } else { &mut diff };
        bucket[0].push(r);
        bucket[1].push(d);
        bucket[2].push(en);
    }
    if same[0].is_empty() {
        return Err(Error::EmptySample("no same-gender pairs".into()));
    }
    if diff[0].is_empty() {
        return Err(Error::EmptySample("no different-gender pairs".into()));
    }
    let raw_s = stats(&same[0], &diff[0]);
    let dis_s = stats(&same[1], &diff[1]);
    let eng_s = stats(&same[2], &diff[2]);
    let denom = raw_s.gap - eng_s.gap;
    let reduction = if denom == 0.0 {
        None
    } else {
        Some(1.0 - (dis_s.gap - eng_s.gap) / denom)
    };
    Ok(GapReduction {
        raw: raw_s,
        disentangled: dis_s,
        english: eng_s,
        reduction_percent: reduction.map(|r| 100.0 * r),
        reduction,
        n_same: same[0].len(),
        n_diff: diff[0].len(),
        dropped,
    })
}
