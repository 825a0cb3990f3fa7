//! Action-agnostic effect model over final states.
//!
//! The model is a plain probability vector over the 18 final cells,
//! updated after every trial by an exponential moving average toward the
//! indicator of the observed final state. The same type stores the target
//! effect distribution; the uniform target recovers the exploration drive,
//! but any valid simplex is accepted. The log-ratio between model and
//! target is the raw quantity the drive and the policy update are built
//! from.

use crate::error::{Error, Result};
use crate::gridworld::{StateId, STATE_COUNT};

/// Floor applied to probabilities before taking logarithms. Inert in
/// ordinary runs: the model probability of a just-observed state is at
/// least eta, and the target is queried where the model is.
pub const PROB_FLOOR: f64 = 1e-12;

/// Per-trial learning rate of the effect model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EffectRate(f64);

impl EffectRate {
    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::NonFinite {
                what: "effect rate",
            });
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParam {
                name: "eta",
                reason: format!("must lie in [0, 1], got {eta}"),
            });
        }
        Ok(EffectRate(eta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A probability distribution over the 18 final states.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectDistribution {
    probs: [f64; STATE_COUNT],
}

impl EffectDistribution {
    /// Validates entries are nonnegative and sum to 1 within 1e-9.
    pub fn new(probs: [f64; STATE_COUNT]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSimplex { sum });
        }
        Ok(EffectDistribution { probs })
    }

    /// The maximum-entropy initial model: every state at 1/18.
    pub fn uniform() -> Self {
        EffectDistribution {
            probs: [1.0 / STATE_COUNT as f64; STATE_COUNT],
        }
    }

    /// All mass on one state.
    pub fn point_mass(state: StateId) -> Self {
        let mut probs = [0.0; STATE_COUNT];
        probs[state.index()] = 1.0;
        EffectDistribution { probs }
    }

    /// Normalized visit counts. Errors when the total is zero.
    pub fn from_counts(counts: &[u64; STATE_COUNT]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidParam {
                name: "counts",
                reason: "total count is zero".into(),
            });
        }
        let mut probs = [0.0; STATE_COUNT];
        for (p, c) in probs.iter_mut().zip(counts) {
            *p = *c as f64 / total as f64;
        }
        Ok(EffectDistribution { probs })
    }

    pub fn prob(&self, state: StateId) -> f64 {
        self.probs[state.index()]
    }

    pub fn probs(&self) -> &[f64; STATE_COUNT] {
        &self.probs
    }

    /// One exponential-moving-average step toward the indicator of the
    /// observed state: (1 - eta) * p + eta * 1{observed}. A convex
    /// combination of simplices, so the result is again a simplex.
    pub fn ema_update(&self, observed: StateId, eta: EffectRate) -> Self {
        let eta = eta.value();
        let mut probs = self.probs.map(|p| (1.0 - eta) * p);
        probs[observed.index()] += eta;
        EffectDistribution { probs }
    }

    /// log p(state) - log target(state), both sides floored at
    /// [`PROB_FLOOR`] so the result is always finite. Positive when the
    /// state is visited more often than the target prescribes.
    pub fn log_ratio(&self, target: &EffectDistribution, state: StateId) -> f64 {
        let p = self.prob(state).max(PROB_FLOOR);
        let q = target.prob(state).max(PROB_FLOOR);
        p.ln() - q.ln()
    }
}
