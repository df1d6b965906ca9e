//! WEAT and single-category WEAT.
//!
//! For a word `w` and attribute sets `A`, `B`:
//!
//! ```text
//! s(w, A, B) = mean_{a∈A} cos(w, a) − mean_{b∈B} cos(w, b)
//! ```
//!
//! WEAT's effect size is the difference of mean `s` over targets `X` and `Y`
//! divided by the standard deviation of `s` over `X ∪ Y`; its test statistic is
//! `Σ_X s − Σ_Y s`. SC-WEAT's effect size is `s(w, A, B)` divided by the
//! standard deviation of `cos(w, ·)` over `A ∪ B`.
//!
//! All standard deviations are population standard deviations (divide by n).
//! p-values are one-sided, counting partitions whose statistic is strictly
//! greater than the observed one.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::embeddings::{EmbeddingTable, Lookup};
use crate::error::{Error, Result};
use crate::lexicon::StimulusSet;
use crate::seed;
use crate::vector;
use crate::MIN_SET_SIZE;

/// How a p-value was obtained.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum PMethod {
    Exact { partitions: u64 },
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PValueMode {
    /// Exact when the partition count is within `exact_limit`, else Monte Carlo.
    #[default]
    Auto,
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PValueConfig {
    pub mode: PValueMode,
    pub exact_limit: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for PValueConfig {
    fn default() -> Self {
        PValueConfig {
            mode: PValueMode::Auto,
            exact_limit: 200_000,
            samples: 100_000,
            seed: 0,
        }
    }
}

/// Options shared by every association test.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TestConfig {
    pub p_value: PValueConfig,
    pub min_set_size: usize,
    /// Drop unresolvable words (with a warning) instead of aborting, and trim
    /// the larger target set when sizes differ.
    pub permissive: bool,
    pub lookup: Lookup,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            p_value: PValueConfig::default(),
            min_set_size: MIN_SET_SIZE,
            permissive: false,
            lookup: Lookup::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AssociationResult {
    /// Cohen's d.
    pub effect_size: f64,
    pub statistic: f64,
    pub p_value: f64,
    pub p_method: PMethod,
    /// |X|, |Y|, |A|, |B|. For SC-WEAT, X is the single word and Y is empty.
    pub set_sizes: [usize; 4],
}

/// How one stimulus set was resolved against a table.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SetUsage {
    pub name: String,
    pub requested: usize,
    pub used: Vec<String>,
    pub missing: Vec<String>,
    /// Words whose vectors are exactly zero; never used in cosine tests.
    pub zeroed: Vec<String>,
    /// Dropped to equalize target sizes (permissive mode only).
    pub trimmed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TestOutcome {
    pub result: AssociationResult,
    pub sets: Vec<SetUsage>,
}

/// A stimulus set resolved to unit vectors.
#[derive(Debug, Clone)]
pub struct ResolvedSet {
    pub usage: SetUsage,
    pub vectors: Vec<Vec<f64>>,
}

/// Resolves a stimulus set. Zero vectors are always excluded; missing words
/// abort unless `permissive`. The size floor applies to what remains.
pub fn resolve_set(set: &StimulusSet, table: &EmbeddingTable, config: &TestConfig) -> Result<ResolvedSet> {
    let mut usage = SetUsage {
        name: set.name.clone(),
        requested: set.len(),
        used: Vec::new(),
        missing: Vec::new(),
        zeroed: Vec::new(),
        trimmed: Vec::new(),
    };
    let mut vectors = Vec::new();
    for w in set.words() {
        match table.resolve(w, config.lookup) {
            None if !config.permissive => {
                return Err(Error::UnresolvedWord {
                    set: set.name.clone(),
                    word: w.clone(),
                })
            }
            None => usage.missing.push(w.clone()),
            Some(i) => match vector::normalized(table.row(i)) {
                None => usage.zeroed.push(w.clone()),
                Some(u) => {
                    usage.used.push(w.clone());
                    vectors.push(u);
                }
            },
        }
    }
    if usage.used.len() < config.min_set_size {
        return Err(Error::UndersizedSet {
            name: set.name.clone(),
            size: usage.used.len(),
            min: config.min_set_size,
        });
    }
    Ok(ResolvedSet { usage, vectors })
}

fn unit_or_err(v: &[f64]) -> Result<Vec<f64>> {
    vector::normalized(v).ok_or(Error::ZeroVector { word: None })
}

/// Differential association `s(w, A, B)` on raw vectors.
pub fn s_word(w: &[f64], a: &[&[f64]], b: &[&[f64]]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample("attribute set".into()));
    }
    let w = unit_or_err(w)?;
    let mean_cos = |set: &[&[f64]]| -> Result<f64> {
        let mut total = 0.0;
        for x in set {
            if x.len() != w.len() {
                return Err(Error::DimensionMismatch {
                    expected: w.len(),
                    found: x.len(),
                });
            }
            total += vector::dot(&w, &unit_or_err(x)?);
        }
        Ok(total / set.len() as f64)
    };
    Ok(mean_cos(a)? - mean_cos(b)?)
}

/// `s(w, A, B)` for already-normalized inputs.
fn s_unit(w: &[f64], a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let ma = a.iter().map(|x| vector::dot(w, x)).sum::<f64>() / a.len() as f64;
    let mb = b.iter().map(|x| vector::dot(w, x)).sum::<f64>() / b.len() as f64;
    ma - mb
}

/// Per-word association scores and the derived WEAT quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct WeatScores {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub effect_size: f64,
    pub statistic: f64,
}

fn weat_stat(x: &[f64], y: &[f64]) -> f64 {
    x.iter().sum::<f64>() - y.iter().sum::<f64>()
}

/// WEAT effect size and statistic for unit-normalized sets (no p-value).
pub fn weat_scores(x: &[Vec<f64>], y: &[Vec<f64>], a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<WeatScores> {
    if x.is_empty() || y.is_empty() || a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample("WEAT set".into()));
    }
    let sx: Vec<f64> = x.iter().map(|w| s_unit(w, a, b)).collect();
    let sy: Vec<f64> = y.iter().map(|w| s_unit(w, a, b)).collect();
    let all: Vec<f64> = sx.iter().chain(&sy).copied().collect();
    let sd = vector::canonical_population_std(&all);
    if !(sd > 0.0) {
        return Err(Error::ZeroVariance("s(w, A, B) over X ∪ Y".into()));
    }
    let effect_size = (vector::mean(&sx) - vector::mean(&sy)) / sd;
    let statistic = weat_stat(&sx, &sy);
    Ok(WeatScores {
        x: sx,
        y: sy,
        effect_size,
        statistic,
    })
}

/// SC-WEAT `(effect size, s(w, A, B))` for unit-normalized inputs.
pub fn sc_weat_scores(w: &[f64], a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample("SC-WEAT attribute set".into()));
    }
    let cos: Vec<f64> = a.iter().chain(b).map(|x| vector::dot(w, x)).collect();
    let sd = vector::canonical_population_std(&cos);
    if !(sd > 0.0) {
        return Err(Error::ZeroVariance("cos(w, ·) over A ∪ B".into()));
    }
    let s = s_unit(w, a, b);
    Ok((s / sd, s))
}

/// Number of ways to choose `k` of `n`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// One-sided permutation p-value over all ways of choosing `k` of `n` items as
/// the first group.
///
/// `statistic` receives the indices of the first group (sorted ascending in
/// exact mode). Exact mode returns the fraction of all partitions, the
/// observed one included, whose statistic is strictly greater than
/// `observed`. Monte Carlo mode returns `(count + 1) / (N + 1)`.
pub fn permutation_p<F>(n: usize, k: usize, observed: f64, mut statistic: F, config: &PValueConfig) -> Result<(f64, PMethod)>
where
    F: FnMut(&[usize]) -> f64,
{
    if n == 0 || k == 0 || k >= n {
        return Err(Error::EmptyPartitionSpace);
    }
    let total = binomial(n, k);
    let exact = match config.mode {
        PValueMode::Exact => true,
        PValueMode::MonteCarlo => false,
        PValueMode::Auto => total <= config.exact_limit,
    };
    if exact {
        if total == u64::MAX {
            return Err(Error::InvalidConfig("partition space too large for exact enumeration".into()));
        }
        let mut idx: Vec<usize> = (0..k).collect();
        let mut count = 0u64;
        loop {
            if statistic(&idx) > observed {
                count += 1;
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        Ok((count as f64 / total as f64, PMethod::Exact { partitions: total }))
    } else {
        if config.samples == 0 {
            return Err(Error::InvalidConfig("Monte Carlo sample count must be positive".into()));
        }
        let mut rng = seed::labeled_rng(config.seed, "permutation");
        let mut pool: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        for _ in 0..config.samples {
            let (first, _) = pool.partial_shuffle(&mut rng, k);
            if statistic(first) > observed {
                count += 1;
            }
        }
        Ok((
            (count + 1) as f64 / (config.samples + 1) as f64,
            PMethod::MonteCarlo {
                samples: config.samples,
                seed: config.seed,
            },
        ))
    }
}

/// WEAT p-value for precomputed scores over equal-size partitions of `X ∪ Y`.
pub fn weat_p(scores: &WeatScores, config: &PValueConfig) -> Result<(f64, PMethod)> {
    let all: Vec<f64> = scores.x.iter().chain(&scores.y).copied().collect();
    let total: f64 = all.iter().sum();
    let k = scores.x.len();
    // Σ_{X_i} s − Σ_{Y_i} s = 2 Σ_{X_i} s − Σ s; the same expression evaluates
    // the observed partition so it is never counted as strictly greater.
    let stat = |idx: &[usize]| -> f64 {
        let sub: f64 = idx.iter().map(|&i| all[i]).sum();
        2.0 * sub - total
    };
    let identity: Vec<usize> = (0..k).collect();
    let observed = stat(&identity);
    permutation_p(all.len(), k, observed, stat, config)
}

/// SC-WEAT p-value over partitions of `A ∪ B` into parts of sizes |A|, |B|.
pub fn sc_weat_p(w: &[f64], a: &[Vec<f64>], b: &[Vec<f64>], config: &PValueConfig) -> Result<(f64, PMethod)> {
    let cos: Vec<f64> = a.iter().chain(b).map(|x| vector::dot(w, x)).collect();
    let total: f64 = cos.iter().sum();
    let (ka, kb) = (a.len() as f64, b.len() as f64);
    let stat = |idx: &[usize]| -> f64 {
        let sub: f64 = idx.iter().map(|&i| cos[i]).sum();
        sub / ka - (total - sub) / kb
    };
    let identity: Vec<usize> = (0..a.len()).collect();
    let observed = stat(&identity);
    permutation_p(cos.len(), a.len(), observed, stat, config)
}

fn check_disjoint(x: &ResolvedSet, y: &ResolvedSet) -> Result<()> {
    for w in &x.usage.used {
        if y.usage.used.contains(w) {
            return Err(Error::OverlappingTargets { word: w.clone() });
        }
    }
    Ok(())
}

/// Drops random entries from the larger set until both have the same size.
fn equalize(x: &mut ResolvedSet, y: &mut ResolvedSet, seed_value: u64) {
    let (big, target) = if x.vectors.len() > y.vectors.len() {
        (x, y.vectors.len())
    } else {
        (y, x.vectors.len())
    };
    let mut rng = seed::labeled_rng(seed_value, &alloc::format!("trim/{}", big.usage.name));
    let mut idx: Vec<usize> = (0..big.vectors.len()).collect();
    idx.shuffle(&mut rng);
    let mut keep = idx[..target].to_vec();
    keep.sort_unstable();
    let mut trimmed: Vec<String> = idx[target..].iter().map(|&i| big.usage.used[i].clone()).collect();
    trimmed.sort();
    big.vectors = keep.iter().map(|&i| big.vectors[i].clone()).collect();
    big.usage.used = keep.iter().map(|&i| big.usage.used[i].clone()).collect();
    big.usage.trimmed = trimmed;
}

/// Full WEAT: resolves the four sets, computes the effect size, statistic and
/// permutation p-value.
pub fn weat(
    x: &StimulusSet,
    y: &StimulusSet,
    a: &StimulusSet,
    b: &StimulusSet,
    table: &EmbeddingTable,
    config: &TestConfig,
) -> Result<TestOutcome> {
    let mut rx = resolve_set(x, table, config)?;
    let mut ry = resolve_set(y, table, config)?;
    let ra = resolve_set(a, table, config)?;
    let rb = resolve_set(b, table, config)?;
    check_disjoint(&rx, &ry)?;
    if rx.vectors.len() != ry.vectors.len() {
        if !config.permissive {
            return Err(Error::UnequalTargets {
                x: rx.vectors.len(),
                y: ry.vectors.len(),
            });
        }
        equalize(&mut rx, &mut ry, config.p_value.seed);
    }
    let scores = weat_scores(&rx.vectors, &ry.vectors, &ra.vectors, &rb.vectors)?;
    let (p_value, p_method) = weat_p(&scores, &config.p_value)?;
    Ok(TestOutcome {
        result: AssociationResult {
            effect_size: scores.effect_size,
            statistic: scores.statistic,
            p_value,
            p_method,
            set_sizes: [rx.vectors.len(), ry.vectors.len(), ra.vectors.len(), rb.vectors.len()],
        },
        sets: alloc::vec![rx.usage, ry.usage, ra.usage, rb.usage],
    })
}

/// Full SC-WEAT for one word.
pub fn sc_weat(
    word: &str,
    a: &StimulusSet,
    b: &StimulusSet,
    table: &EmbeddingTable,
    config: &TestConfig,
) -> Result<TestOutcome> {
    let i = table.resolve(word, config.lookup).ok_or_else(|| Error::UnresolvedWord {
        set: "target".to_string(),
        word: word.to_string(),
    })?;
    let w = vector::normalized(table.row(i)).ok_or_else(|| Error::ZeroVector {
        word: Some(word.to_string()),
    })?;
    let ra = resolve_set(a, table, config)?;
    let rb = resolve_set(b, table, config)?;
    let (effect_size, statistic) = sc_weat_scores(&w, &ra.vectors, &rb.vectors)?;
    let (p_value, p_method) = sc_weat_p(&w, &ra.vectors, &rb.vectors, &config.p_value)?;
    let target = SetUsage {
        name: word.to_string(),
        requested: 1,
        used: alloc::vec![table.words()[i].clone()],
        missing: Vec::new(),
        zeroed: Vec::new(),
        trimmed: Vec::new(),
    };
    Ok(TestOutcome {
        result: AssociationResult {
            effect_size,
            statistic,
            p_value,
            p_method,
            set_sizes: [1, 0, ra.vectors.len(), rb.vectors.len()],
        },
        sets: alloc::vec![target, ra.usage, rb.usage],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    #[test]
    fn s_word_examples() {
        let a = [1.0, 0.0];
        let b = [0.0, 1.0];
        assert_eq!(s_word(&[1.0, 0.0], &[&a], &[&b]).unwrap(), 1.0);
        let h = libm::sqrt(0.5);
        assert_abs_diff_eq!(s_word(&[h, h], &[&a], &[&b]).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(s_word(&[0.3, -2.0], &[&a, &b], &[&a, &b]).unwrap(), 0.0);
        assert!(s_word(&[0.0, 0.0], &[&a], &[&b]).is_err());
        assert!(s_word(&[1.0, 0.0], &[&[0.0, 0.0][..]], &[&b]).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(16, 8), 12_870);
        assert_eq!(binomial(18, 9), 48_620);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn combinations_are_enumerated_once() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn strict_count_in_exact_mode() {
        let cfg = PValueConfig::default();
        // 4 choose 2 = 6 partitions; statistic bounded by 5
        let values = [1.0, 2.0, 3.0, 4.0];
        let stat = |idx: &[usize]| idx.iter().map(|&i| values[i]).sum::<f64>();
        let (p, m) = permutation_p(4, 2, 100.0, stat, &cfg).unwrap();
        assert_eq!(p, 0.0);
        assert_eq!(m, PMethod::Exact { partitions: 6 });
        let (p, _) = permutation_p(4, 2, f64::NEG_INFINITY, stat, &cfg).unwrap();
        assert_eq!(p, 1.0);
        // observed = 5 (e.g. {1,4}); strictly greater: {2,4}=6, {3,4}=7, {2,...}
        let (p, _) = permutation_p(4, 2, 5.0, stat, &cfg).unwrap();
        assert_eq!(p, 2.0 / 6.0);
        assert_eq!(permutation_p(4, 0, 0.0, stat, &cfg).unwrap_err(), Error::EmptyPartitionSpace);
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let cfg = PValueConfig {
            mode: PValueMode::MonteCarlo,
            samples: 2000,
            seed: 5,
            ..PValueConfig::default()
        };
        let values: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let stat = |idx: &[usize]| idx.iter().map(|&i| values[i]).sum::<f64>();
        let a = permutation_p(20, 10, 100.0, stat, &cfg).unwrap();
        let b = permutation_p(20, 10, 100.0, stat, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.0 > 0.0 && a.0 <= 1.0);
    }

    fn set(name: &str, words: &[&str]) -> StimulusSet {
        StimulusSet::new(name, words.iter().copied()).unwrap()
    }

    fn table_2d() -> EmbeddingTable {
        let rows: Vec<(String, Vec<f64>)> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.37;
                (alloc::format!("w{i}"), vec![libm::cos(t) * (1.0 + i as f64 * 0.1), libm::sin(t)])
            })
            .collect();
        EmbeddingTable::from_rows(2, rows.iter().map(|(w, v)| (w.as_str(), v.as_slice()))).unwrap()
    }

    fn names(r: core::ops::Range<usize>) -> Vec<String> {
        r.map(|i| alloc::format!("w{i}")).collect()
    }

    fn sset(name: &str, r: core::ops::Range<usize>) -> StimulusSet {
        StimulusSet::new(name, names(r)).unwrap()
    }

    #[test]
    fn weat_swap_antisymmetry() {
        let t = table_2d();
        let cfg = TestConfig::default();
        let (x, y, a, b) = (sset("x", 0..8), sset("y", 8..16), sset("a", 16..24), sset("b", 24..32));
        let base = weat(&x, &y, &a, &b, &t, &cfg).unwrap().result;
        let swapped = weat(&y, &x, &a, &b, &t, &cfg).unwrap().result;
        let flipped = weat(&x, &y, &b, &a, &t, &cfg).unwrap().result;
        assert_eq!(swapped.effect_size, -base.effect_size);
        assert_eq!(flipped.effect_size, -base.effect_size);
        assert_abs_diff_eq!(swapped.statistic, -base.statistic, epsilon = 1e-12);
    }

    #[test]
    fn weat_errors() {
        let t = table_2d();
        let cfg = TestConfig::default();
        let small = sset("small", 0..7);
        let err = weat(&small, &sset("y", 8..16), &sset("a", 16..24), &sset("b", 24..32), &t, &cfg).unwrap_err();
        assert_eq!(err, Error::UndersizedSet { name: "small".into(), size: 7, min: 8 });

        let err = weat(&sset("x", 0..8), &sset("y", 4..12), &sset("a", 16..24), &sset("b", 24..32), &t, &cfg).unwrap_err();
        assert!(matches!(err, Error::OverlappingTargets { .. }));

        let mut words = names(0..8);
        words.push("absent".into());
        let x = StimulusSet::new("x", words).unwrap();
        let err = weat(&x, &sset("y", 8..17), &sset("a", 17..25), &sset("b", 25..33), &t, &cfg).unwrap_err();
        assert_eq!(err, Error::UnresolvedWord { set: "x".into(), word: "absent".into() });

        // permissive: drop the missing word, then sizes 8 vs 9 get trimmed
        let permissive = TestConfig { permissive: true, ..TestConfig::default() };
        let out = weat(&x, &sset("y", 8..17), &sset("a", 17..25), &sset("b", 25..33), &t, &permissive).unwrap();
        assert_eq!(out.sets[0].missing, vec!["absent".to_string()]);
        assert_eq!(out.sets[1].trimmed.len(), 1);
        assert_eq!(out.result.set_sizes, [8, 8, 8, 8]);

        let err = weat(&sset("x", 0..8), &sset("y", 8..17), &sset("a", 17..25), &sset("b", 25..33), &t, &cfg).unwrap_err();
        assert_eq!(err, Error::UnequalTargets { x: 8, y: 9 });
    }

    #[test]
    fn sc_weat_swap_and_identical_attributes() {
        let t = table_2d();
        let cfg = TestConfig::default();
        let (a, b) = (sset("a", 16..24), sset("b", 24..32));
        let ab = sc_weat("w3", &a, &b, &t, &cfg).unwrap().result;
        let ba = sc_weat("w3", &b, &a, &t, &cfg).unwrap().result;
        assert_eq!(ab.effect_size, -ba.effect_size);
        let same = sc_weat("w3", &a, &a, &t, &cfg).unwrap().result;
        assert_eq!(same.effect_size, 0.0);
        assert!(matches!(
            sc_weat("nope", &a, &b, &t, &cfg),
            Err(Error::UnresolvedWord { .. })
        ));
        let _ = set("unused", &["x"]);
    }

    #[test]
    fn zero_variance_is_an_error() {
        let v = vec![vec![1.0, 0.0]; 3];
        assert!(matches!(weat_scores(&v, &v, &v, &v), Err(Error::ZeroVariance(_))));
    }
}
