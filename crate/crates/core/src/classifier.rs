//! Binary linear max-margin classifier.
//!
//! Training minimizes the L2-regularized hinge loss
//!
//! ```text
//! λ/2 ‖w‖² + 1/n Σ max(0, 1 − yᵢ (w·xᵢ + b))
//! ```
//!
//! with Pegasos-style stochastic subgradient steps (step size `1/(λ(t + t₀))`,
//! projection onto the ball of radius `1/√λ`). The intercept is learned as an
//! extra constant feature.
//!
//! Inputs are divided by their root-mean-square norm before optimization and
//! the weights are mapped back afterwards, so the regularization constant means
//! the same thing for any embedding scale and the learned direction does not
//! change when all inputs are scaled by a positive constant.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::seed;
use crate::vector;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrainConfig {
    /// λ in the objective.
    pub regularization: f64,
    pub epochs: usize,
    /// t₀ in the step size `1/(λ(t + t₀))`.
    pub step_offset: f64,
    /// Fraction of each class held out for evaluation.
    pub holdout_fraction: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            regularization: 1e-2,
            epochs: 20,
            step_offset: 0.0,
            holdout_fraction: 0.1,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.regularization > 0.0 && self.regularization.is_finite()) {
            return Err(Error::InvalidConfig("regularization must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be positive".into()));
        }
        if !(self.step_offset >= 0.0 && self.step_offset.is_finite()) {
            return Err(Error::InvalidConfig("step_offset must be non-negative".into()));
        }
        if !(self.holdout_fraction > 0.0 && self.holdout_fraction < 1.0) {
            return Err(Error::InvalidConfig("holdout_fraction must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// A trained separating hyperplane `w·x + b`. Positive side is the positive
/// (feminine) class.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub train_accuracy: f64,
    pub holdout_accuracy: f64,
    pub train_size: usize,
    pub holdout_size: usize,
    /// Hinge objective (in normalized input units) before training and after
    /// every epoch.
    pub objective_trace: Vec<f64>,
    /// Root-mean-square norm the inputs were divided by during optimization.
    pub input_scale: f64,
}

impl LinearModel {
    /// A fixed hyperplane, e.g. for evaluating [`accuracy`] directly.
    pub fn from_parts(weights: Vec<f64>, bias: f64) -> Self {
        LinearModel {
            weights,
            bias,
            train_accuracy: 0.0,
            holdout_accuracy: 0.0,
            train_size: 0,
            holdout_size: 0,
            objective_trace: Vec::new(),
            input_scale: 1.0,
        }
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        vector::dot(&self.weights, x) + self.bias
    }

    /// Ties (decision exactly 0) go to the negative class.
    pub fn predict(&self, x: &[f64]) -> bool {
        self.decision(x) > 0.0
    }

    pub fn weight_norm(&self) -> f64 {
        vector::norm(&self.weights)
    }
}

fn check_dims(dim: usize, xs: &[&[f64]]) -> Result<()> {
    for x in xs {
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.len(),
            });
        }
    }
    Ok(())
}

/// Splits `0..n` into (train, holdout) index lists.
fn split(n: usize, fraction: f64, rng: &mut seed::Rng) -> Result<(Vec<usize>, Vec<usize>)> {
    if n < 2 {
        return Err(Error::Degenerate(alloc::format!(
            "a class with {n} sample(s) cannot be split into train and holdout"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let held = libm::round(n as f64 * fraction).clamp(1.0, (n - 1) as f64) as usize;
    let train = idx.split_off(held);
    Ok((train, idx))
}

/// Trains on `positives` (label +1) and `negatives` (label −1) with a
/// stratified holdout split and reports accuracy on both parts.
pub fn train(positives: &[&[f64]], negatives: &[&[f64]], config: &TrainConfig) -> Result<LinearModel> {
    config.validate()?;
    if positives.is_empty() || negatives.is_empty() {
        return Err(Error::Degenerate("both classes need at least one sample".into()));
    }
    let dim = positives[0].len();
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    check_dims(dim, positives)?;
    check_dims(dim, negatives)?;

    // Both classes are split with the same stream, so equal-size classes hold
    // out the same indices.
    let split_class = |n: usize| split(n, config.holdout_fraction, &mut seed::labeled_rng(config.seed, "classifier/holdout"));
    let (pos_train, pos_hold) = split_class(positives.len())?;
    let (neg_train, neg_hold) = split_class(negatives.len())?;

    let gather = |pos: &[usize], neg: &[usize]| -> Vec<(&[f64], bool)> {
        pos.iter()
            .map(|&i| (positives[i], true))
            .chain(neg.iter().map(|&i| (negatives[i], false)))
            .collect()
    };
    let train_set = gather(&pos_train, &neg_train);
    let holdout_set = gather(&pos_hold, &neg_hold);

    let mut model = fit(&train_set, config)?;
    model.train_accuracy = accuracy(&model, &train_set)?;
    model.holdout_accuracy = accuracy(&model, &holdout_set)?;
    model.train_size = train_set.len();
    model.holdout_size = holdout_set.len();
    Ok(model)
}

/// Runs the optimizer on all of `samples` (no holdout).
pub fn fit(samples: &[(&[f64], bool)], config: &TrainConfig) -> Result<LinearModel> {
    config.validate()?;
    if samples.is_empty() {
        return Err(Error::EmptySample("training set".into()));
    }
    let dim = samples[0].0.len();
    for (x, _) in samples {
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.len(),
            });
        }
    }
    if !samples.iter().any(|s| s.1) || samples.iter().all(|s| s.1) {
        return Err(Error::Degenerate("training set contains a single class".into()));
    }

    let mean_sq = samples.iter().map(|(x, _)| vector::dot(x, x)).sum::<f64>() / samples.len() as f64;
    let scale = libm::sqrt(mean_sq);
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Degenerate("all training vectors are zero".into()));
    }
    let inv = 1.0 / scale;

    // Augmented, scaled copies: [x / scale, 1].
    let aug: Vec<Vec<f64>> = samples
        .iter()
        .map(|(x, _)| {
            let mut v: Vec<f64> = x.iter().map(|a| a * inv).collect();
            v.push(1.0);
            v
        })
        .collect();
    let labels: Vec<f64> = samples.iter().map(|s| if s.1 { 1.0 } else { -1.0 }).collect();
    let sq_norms: Vec<f64> = aug.iter().map(|v| vector::dot(v, v)).collect();

    let lambda = config.regularization;
    let radius_sq = 1.0 / lambda;

    // w = s * v, with ‖v‖² tracked incrementally so each step is O(dim).
    let mut v = vec![0.0; dim + 1];
    let mut s = 1.0f64;
    let mut v_norm_sq = 0.0f64;

    let objective = |v: &[f64], s: f64| -> f64 {
        let w_sq = s * s * vector::dot(v, v);
        let hinge: f64 = aug
            .iter()
            .zip(&labels)
            .map(|(x, y)| {
                let m = y * s * vector::dot(v, x);
                if m < 1.0 {
                    1.0 - m
                } else {
                    0.0
                }
            })
            .sum::<f64>()
            / aug.len() as f64;
        0.5 * lambda * w_sq + hinge
    };

    let mut trace = Vec::with_capacity(config.epochs + 1);
    trace.push(objective(&v, s));

    let mut order: Vec<usize> = (0..aug.len()).collect();
    let mut rng = seed::labeled_rng(config.seed, "classifier/order");
    let mut t = 0u64;
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * (t as f64 + config.step_offset));
            let x = &aug[i];
            let y = labels[i];
            let vx = vector::dot(&v, x);
            let margin = y * s * vx;

            let shrink = 1.0 - eta * lambda;
            if shrink <= 0.0 {
                v.iter_mut().for_each(|a| *a = 0.0);
                s = 1.0;
                v_norm_sq = 0.0;
            } else {
                s *= shrink;
            }

            if margin < 1.0 {
                let alpha = eta * y / s;
                // ‖v + αx‖² = ‖v‖² + 2α v·x + α²‖x‖²; v·x is stale only when v was reset.
                let vx_now = if shrink <= 0.0 { 0.0 } else { vx };
                v_norm_sq += 2.0 * alpha * vx_now + alpha * alpha * sq_norms[i];
                vector::axpy(alpha, x, &mut v);
            }

            let w_norm_sq = s * s * v_norm_sq;
            if w_norm_sq > radius_sq {
                s *= libm::sqrt(radius_sq / w_norm_sq);
            }
            if s < 1e-100 || s > 1e100 {
                v.iter_mut().for_each(|a| *a *= s);
                s = 1.0;
                v_norm_sq = vector::dot(&v, &v);
            }
        }
        // Re-anchor the tracked norm against drift once per epoch.
        v_norm_sq = vector::dot(&v, &v);
        trace.push(objective(&v, s));
    }

    let w: Vec<f64> = v.iter().map(|a| a * s).collect();
    let bias = w[dim];
    let weights: Vec<f64> = w[..dim].iter().map(|a| a * inv).collect();
    if weights.iter().all(|a| *a == 0.0) {
        return Err(Error::Degenerate("classifier converged to a zero weight vector".into()));
    }
    let mut model = LinearModel::from_parts(weights, bias);
    model.objective_trace = trace;
    model.input_scale = scale;
    Ok(model)
}

/// Unit-norm copy of the model weights.
pub fn decision_direction(model: &LinearModel) -> Result<Vec<f64>> {
    vector::normalized(&model.weights).ok_or(Error::ZeroVector { word: None })
}

/// Fraction of samples whose predicted side matches their label.
pub fn accuracy(model: &LinearModel, samples: &[(&[f64], bool)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySample("accuracy evaluation".into()));
    }
    let mut correct = 0usize;
    for (x, label) in samples {
        if x.len() != model.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: model.weights.len(),
                found: x.len(),
            });
        }
        if model.predict(x) == *label {
            correct += 1;
        }
    }
    Ok(correct as f64 / samples.len() as f64)
}
