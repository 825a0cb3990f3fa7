//! Distribution metrics and reward series used in experiment readouts.

use crate::effect_model::PROB_FLOOR;
use crate::learner::TrialRecord;

/// Shannon entropy in nats, with 0 ln 0 = 0.
pub fn entropy(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>()
}

/// KL(p || q) in nats; q is floored at [`PROB_FLOOR`] and zero entries of
/// p contribute nothing.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions must have equal support");
    p.iter()
        .zip(q)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| pi * (pi.ln() - qi.max(PROB_FLOOR).ln()))
        .sum()
}

/// Total variation distance: half the L1 distance, in [0, 1].
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions must have equal support");
    0.5 * p.iter().zip(q).map(|(pi, qi)| (pi - qi).abs()).sum::<f64>()
}

/// Running sum of extrinsic rewards, one entry per trial.
pub fn cumulative_rewards(records: &[TrialRecord]) -> Vec<u64> {
    records
        .iter()
        .scan(0u64, |acc, r| {
            *acc += u64::from(r.extrinsic_reward);
            Some(*acc)
        })
        .collect()
}

/// Index of the first rewarded trial, if any.
pub fn first_success_trial(records: &[TrialRecord]) -> Option<u32> {
    records
        .iter()
        .find(|r| r.extrinsic_reward > 0)
        .map(|r| r.trial)
}
