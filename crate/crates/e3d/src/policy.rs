//! Factorized softmax policy over per-slot action values.
//!
//! The policy is a 4x7 table of action values: one column of four values
//! per move slot, with no state conditioning beyond the single start
//! context. Slot distributions are Boltzmann softmaxes of their column,
//! and a full command is sampled by drawing each slot independently. The
//! epsilon-greedy selection rule used by the baseline lives here too.

use crate::error::{Error, Result};
use crate::gridworld::{Action, ActionSequence, ACTION_COUNT, SEQUENCE_LEN};
use rand::Rng;

/// Softmax inverse temperature; zero erases preferences entirely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseTemperature(f64);

impl InverseTemperature {
    /// Zero inverse temperature: the uniform policy regardless of values.
    pub const ZERO: InverseTemperature = InverseTemperature(0.0);

    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite {
                what: "inverse temperature",
            });
        }
        if beta < 0.0 {
            return Err(Error::InvalidParam {
                name: "beta",
                reason: format!("must be nonnegative, got {beta}"),
            });
        }
        Ok(InverseTemperature(beta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Action probabilities for one move slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlotDistribution {
    probs: [f64; ACTION_COUNT],
}

impl SlotDistribution {
    /// Validates entries are nonnegative and sum to 1 within 1e-12.
    pub fn new(probs: [f64; ACTION_COUNT]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSimplex { sum });
        }
        Ok(SlotDistribution { probs })
    }

    pub fn uniform() -> Self {
        SlotDistribution {
            probs: [1.0 / ACTION_COUNT as f64; ACTION_COUNT],
        }
    }

    pub fn prob(&self, action: Action) -> f64 {
        self.probs[action.index()]
    }

    pub fn probs(&self) -> &[f64; ACTION_COUNT] {
        &self.probs
    }

    /// Draws one action by inverse CDF, consuming exactly one uniform
    /// draw from the stream.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Action {
        let u: f64 = rng.random();
        let mut cdf = 0.0;
        for action in Action::ALL {
            cdf += self.prob(action);
            if u < cdf {
                return action;
            }
        }
        // Rounding can leave the final cdf a hair under 1.
        Action::ALL[ACTION_COUNT - 1]
    }
}

/// Per-slot action values: entry (a, i) scores elementary action `a` at
/// move slot `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTable {
    values: [[f64; SEQUENCE_LEN]; ACTION_COUNT],
}

impl QTable {
    /// The all-zero table every learner starts from.
    pub fn zeros() -> Self {
        QTable {
            values: [[0.0; SEQUENCE_LEN]; ACTION_COUNT],
        }
    }

    pub fn get(&self, action: Action, slot: usize) -> f64 {
        self.values[action.index()][slot]
    }

    pub fn set(&mut self, action: Action, slot: usize, value: f64) {
        self.values[action.index()][slot] = value;
    }

    /// The four action values of one slot, in action index order.
    pub fn slot_values(&self, slot: usize) -> [f64; ACTION_COUNT] {
        [
            self.values[0][slot],
            self.values[1][slot],
            self.values[2][slot],
            self.values[3][slot],
        ]
    }

    /// Softmax distribution of one slot: probabilities proportional to
    /// exp(beta * value), computed with max subtraction so large values
    /// cannot overflow. Non-finite values are a contract violation and
    /// reported as an error rather than clamped.
    pub fn slot_probs(&self, slot: usize, beta: InverseTemperature) -> Result<SlotDistribution> {
        let scaled = self.scaled_slot(slot, beta)?;
        let max = scaled.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
        let exps = scaled.map(|x| (x - max).exp());
        let sum: f64 = exps.iter().sum();
        SlotDistribution::new(exps.map(|e| e / sum))
    }

    /// Draws a full command, one independent softmax draw per slot;
    /// consumes exactly 7 draws from the stream.
    pub fn sample_sequence<R: Rng + ?Sized>(
        &self,
        beta: InverseTemperature,
        rng: &mut R,
    ) -> Result<ActionSequence> {
        let mut moves = [Action::East; SEQUENCE_LEN];
        for (slot, m) in moves.iter_mut().enumerate() {
            *m = self.slot_probs(slot, beta)?.sample(rng);
        }
        Ok(ActionSequence::new(moves))
    }

    /// Log probability of a full command under the factorized softmax,
    /// evaluated through the log-sum-exp form so that near-deterministic
    /// slots yield large negative values instead of minus infinity.
    pub fn seq_log_prob(&self, beta: InverseTemperature, seq: &ActionSequence) -> Result<f64> {
        let mut total = 0.0;
        for (slot, action) in seq.iter().enumerate() {
            let scaled = self.scaled_slot(slot, beta)?;
            let max = scaled.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
            let lse = max + scaled.iter().map(|x| (x - max).exp()).sum::<f64>().ln();
            total += scaled[action.index()] - lse;
        }
        Ok(total)
    }

    /// Per-slot epsilon-greedy selection: with probability epsilon a
    /// uniform action, otherwise the argmax of the slot column with ties
    /// broken uniformly at random. Expects 0 <= epsilon <= 1.
    pub fn egreedy_sample<R: Rng + ?Sized>(&self, epsilon: f64, rng: &mut R) -> ActionSequence {
        debug_assert!((0.0..=1.0).contains(&epsilon));
        let mut moves = [Action::East; SEQUENCE_LEN];
        for (slot, m) in moves.iter_mut().enumerate() {
            let u: f64 = rng.random();
            *m = if u < epsilon {
                Action::ALL[rng.random_range(0..ACTION_COUNT)]
            } else {
                let values = self.slot_values(slot);
                let max = values.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
                let ties: Vec<Action> = Action::ALL
                    .into_iter()
                    .filter(|a| values[a.index()] == max)
                    .collect();
                if ties.len() == 1 {
                    ties[0]
                } else {
                    ties[rng.random_range(0..ties.len())]
                }
            };
        }
        ActionSequence::new(moves)
    }

    fn scaled_slot(&self, slot: usize, beta: InverseTemperature) -> Result<[f64; ACTION_COUNT]> {
        let values = self.slot_values(slot);
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "action value",
            });
        }
        let scaled = values.map(|v| beta.value() * v);
        if scaled.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "beta-scaled action value",
            });
        }
        Ok(scaled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::ACTION_COUNT;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::str::FromStr;

    fn beta(b: f64) -> InverseTemperature {
        InverseTemperature::new(b).unwrap()
    }

    /// Counts how many words the wrapped generator hands out.
    struct CountingRng {
        inner: ChaCha8Rng,
        words: usize,
    }

    impl RngCore for CountingRng {
        fn next_u32(&mut self) -> u32 {
            self.words += 1;
            self.inner.next_u32()
        }
        fn next_u64(&mut self) -> u64 {
            self.words += 1;
            self.inner.next_u64()
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            self.words += 1;
            self.inner.fill_bytes(dest)
        }
    }

    #[test]
    fn zero_column_is_uniform() {
        let q = QTable::zeros();
        let probs = q.slot_probs(0, beta(1.0)).unwrap();
        for a in Action::ALL {
            assert_abs_diff_eq!(probs.prob(a), 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn ln3_column_concentrates_half_the_mass() {
        let mut q = QTable::zeros();
        q.set(Action::East, 2, 3f64.ln());
        let probs = q.slot_probs(2, beta(1.0)).unwrap();
        assert_abs_diff_eq!(probs.prob(Action::East), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(probs.prob(Action::South), 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(probs.prob(Action::West), 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(probs.prob(Action::North), 1.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_beta_erases_preferences() {
        let mut q = QTable::zeros();
        q.set(Action::North, 4, 123.0);
        q.set(Action::West, 4, -55.0);
        let probs = q.slot_probs(4, InverseTemperature::ZERO).unwrap();
        for a in Action::ALL {
            assert_abs_diff_eq!(probs.prob(a), 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn non_finite_values_are_an_error() {
        let mut q = QTable::zeros();
        q.set(Action::East, 0, f64::NAN);
        assert!(q.slot_probs(0, beta(1.0)).is_err());
        q.set(Action::East, 0, f64::INFINITY);
        assert!(q.slot_probs(0, beta(1.0)).is_err());
    }

    #[test]
    fn degenerate_softmax_always_picks_the_spike() {
        let mut q = QTable::zeros();
        q.set(Action::West, 3, 1e6);
        let probs = q.slot_probs(3, beta(1.0)).unwrap();
        assert_eq!(probs.prob(Action::West), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let seq = q.sample_sequence(beta(1.0), &mut rng).unwrap();
            assert_eq!(seq.moves()[3], Action::West);
        }
    }

    #[test]
    fn sampling_is_reproducible_and_consumes_seven_draws() {
        let q = QTable::zeros();
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let s1 = q.sample_sequence(beta(1.0), &mut a).unwrap();
        let s2 = q.sample_sequence(beta(1.0), &mut b).unwrap();
        assert_eq!(s1, s2);

        let mut counting = CountingRng {
            inner: ChaCha8Rng::seed_from_u64(42),
            words: 0,
        };
        q.sample_sequence(beta(1.0), &mut counting).unwrap();
        assert_eq!(counting.words, SEQUENCE_LEN);
    }

    #[test]
    fn zero_table_samples_uniformly() {
        let q = QTable::zeros();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let mut counts = [[0u64; ACTION_COUNT]; SEQUENCE_LEN];
        for _ in 0..n {
            let seq = q.sample_sequence(beta(1.0), &mut rng).unwrap();
            for (slot, a) in seq.iter().enumerate() {
                counts[slot][a.index()] += 1;
            }
        }
        for (slot, row) in counts.iter().enumerate() {
            for (a, c) in row.iter().enumerate() {
                let freq = *c as f64 / n as f64;
                assert!((freq - 0.25).abs() < 0.01, "slot {slot} action {a}: {freq}");
            }
        }
    }

    #[test]
    fn seq_log_prob_of_the_uniform_policy() {
        let q = QTable::zeros();
        let seq = ActionSequence::from_str("SEEESEE").unwrap();
        let lp = q.seq_log_prob(beta(1.0), &seq).unwrap();
        assert_abs_diff_eq!(lp, 7.0 * 0.25f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn seq_log_prob_composes_slot_probabilities() {
        let mut q = QTable::zeros();
        q.set(Action::East, 2, 3f64.ln());
        let seq = ActionSequence::from_str("NNENNNN").unwrap();
        let lp = q.seq_log_prob(beta(1.0), &seq).unwrap();
        assert_abs_diff_eq!(lp, 6.0 * 0.25f64.ln() + 0.5f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn seq_log_probs_normalize_over_all_sequences() {
        let mut q = QTable::zeros();
        q.set(Action::East, 0, 0.7);
        q.set(Action::South, 3, -0.4);
        q.set(Action::North, 6, 1.3);
        let b = beta(1.7);
        let mut total = 0.0;
        for code in 0..ACTION_COUNT.pow(SEQUENCE_LEN as u32) {
            let mut c = code;
            let mut moves = [Action::East; SEQUENCE_LEN];
            for m in moves.iter_mut() {
                *m = Action::ALL[c % ACTION_COUNT];
                c /= ACTION_COUNT;
            }
            total += q
                .seq_log_prob(b, &ActionSequence::new(moves))
                .unwrap()
                .exp();
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn egreedy_zero_epsilon_takes_the_dominant_action() {
        let mut q = QTable::zeros();
        for slot in 0..SEQUENCE_LEN {
            q.set(Action::South, slot, 1.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let seq = q.egreedy_sample(0.0, &mut rng);
            assert!(seq.iter().all(|a| a == Action::South));
        }
    }

    #[test]
    fn egreedy_full_epsilon_matches_the_uniform_policy() {
        let q = QTable::zeros();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let mut counts = [0u64; ACTION_COUNT];
        for _ in 0..n {
            let seq = q.egreedy_sample(1.0, &mut rng);
            counts[seq.moves()[0].index()] += 1;
        }
        for c in counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.25).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn egreedy_breaks_ties_uniformly_on_the_zero_table() {
        let q = QTable::zeros();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 100_000;
        let mut counts = [0u64; ACTION_COUNT];
        for _ in 0..n {
            let seq = q.egreedy_sample(0.0, &mut rng);
            counts[seq.moves()[2].index()] += 1;
        }
        for c in counts {
            let freq = c as f64 / n as f64;
            assert!((freq - 0.25).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn egreedy_argmax_frequency_matches_the_mixture() {
        let mut q = QTable::zeros();
        q.set(Action::West, 5, 2.0);
        let epsilon = 0.1;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 100_000;
        let mut hits = 0u64;
        for _ in 0..n {
            let seq = q.egreedy_sample(epsilon, &mut rng);
            if seq.moves()[5] == Action::West {
                hits += 1;
            }
        }
        let freq = hits as f64 / n as f64;
        let expected = (1.0 - epsilon) + epsilon / 4.0;
        assert!((freq - expected).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn egreedy_is_reproducible() {
        let mut q = QTable::zeros();
        q.set(Action::East, 1, 0.4);
        let mut a = ChaCha8Rng::seed_from_u64(23);
        let mut b = ChaCha8Rng::seed_from_u64(23);
        assert_eq!(q.egreedy_sample(0.3, &mut a), q.egreedy_sample(0.3, &mut b));
    }

    fn arbitrary_qtable() -> impl Strategy<Value = QTable> {
        proptest::collection::vec(-10.0f64..10.0, ACTION_COUNT * SEQUENCE_LEN).prop_map(|vals| {
            let mut q = QTable::zeros();
            for (i, v) in vals.into_iter().enumerate() {
                q.set(Action::ALL[i / SEQUENCE_LEN], i % SEQUENCE_LEN, v);
            }
            q
        })
    }

    proptest! {
        #[test]
        fn slot_probs_is_a_simplex(q in arbitrary_qtable(), b in 0.0f64..1e3, slot in 0usize..SEQUENCE_LEN) {
            let probs = q.slot_probs(slot, beta(b)).unwrap();
            let sum: f64 = probs.probs().iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
            prop_assert!(probs.probs().iter().all(|p| *p >= 0.0));
        }

        #[test]
        fn slot_probs_is_shift_invariant(q in arbitrary_qtable(), shift in -5.0f64..5.0, slot in 0usize..SEQUENCE_LEN) {
            let base = q.slot_probs(slot, beta(1.0)).unwrap();
            let mut shifted = q.clone();
            for a in Action::ALL {
                shifted.set(a, slot, q.get(a, slot) + shift);
            }
            let moved = shifted.slot_probs(slot, beta(1.0)).unwrap();
            for a in Action::ALL {
                prop_assert!((base.prob(a) - moved.prob(a)).abs() <= 1e-12);
            }
        }

        #[test]
        fn raising_a_value_raises_its_probability(q in arbitrary_qtable(), slot in 0usize..SEQUENCE_LEN) {
            let before = q.slot_probs(slot, beta(2.0)).unwrap();
            let mut bumped = q.clone();
            bumped.set(Action::South, slot, q.get(Action::South, slot) + 0.5);
            let after = bumped.slot_probs(slot, beta(2.0)).unwrap();
            prop_assert!(after.prob(Action::South) > before.prob(Action::South));
        }
    }
}
