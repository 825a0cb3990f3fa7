//! Update rules and the per-trial loop.
//!
//! The end-effect exploration update treats the log-ratio between the
//! learned effect model and the target effect distribution as an intrinsic
//! teaching signal: after each trial the model absorbs the observed final
//! state, and every action value along the executed command is nudged by
//!
//! ```text
//! Q(a_i, i) <- (1 - alpha*lambda) Q(a_i, i) + alpha*lambda*r
//!              - (alpha/beta) * (log p(s_n) - log p*(s_n))
//! ```
//!
//! which is the same thing as descending the variational TD-error
//! `lambda*(Q - r) + (1/beta)*(log p - log p*)` at rate alpha. With a
//! uniform target the drive pushes the policy toward effects it rarely
//! produces; a positive reward folds in through the lambda term. The
//! epsilon-greedy baseline shares the table shape but updates only toward
//! the observed reward.

use crate::effect_model::{EffectDistribution, EffectRate};
use crate::error::{Error, Result};
use crate::gridworld::{ActionSequence, StateId, TwoRoomWorld};
use crate::harness::ExperimentConfig;
use crate::policy::{InverseTemperature, QTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Which update rule drives a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Softmax policy trained by the end-effect exploration drive.
    E3d,
    /// Purely random commands, no learning; the reference policy.
    Uniform,
    /// Per-slot argmax with epsilon dithering, trained on reward only.
    EGreedy,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::E3d => "e3d",
            Algorithm::Uniform => "uniform",
            Algorithm::EGreedy => "egreedy",
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e3d" => Ok(Algorithm::E3d),
            "uniform" => Ok(Algorithm::Uniform),
            "egreedy" => Ok(Algorithm::EGreedy),
            other => Err(Error::BadAlgorithm(other.to_string())),
        }
    }
}

/// Whether the environment pays out its reward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// No extrinsic reward; the run is judged on how uniformly it visits
    /// final states.
    Explore,
    /// Reward 1 for finishing on the goal cell.
    Reward,
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Task::Explore => "explore",
            Task::Reward => "reward",
        })
    }
}

impl std::str::FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explore" => Ok(Task::Explore),
            "reward" => Ok(Task::Reward),
            other => Err(Error::BadTask(other.to_string())),
        }
    }
}

/// Hyperparameters of the end-effect exploration update.
#[derive(Clone, Copy, Debug)]
pub struct E3DParams {
    alpha: f64,
    beta: InverseTemperature,
    lambda: f64,
    eta: EffectRate,
}

impl E3DParams {
    /// Validates 0 < alpha <= 1, beta >= 0, lambda >= 0, alpha*lambda <= 1
    /// (so the decay factor stays in [0, 1)), and 0 <= eta <= 1.
    pub fn new(alpha: f64, beta: f64, lambda: f64, eta: f64) -> Result<Self> {
        if !alpha.is_finite() || !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParam {
                name: "alpha",
                reason: format!("must lie in (0, 1], got {alpha}"),
            });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParam {
                name: "lambda",
                reason: format!("must be nonnegative, got {lambda}"),
            });
        }
        if alpha * lambda > 1.0 {
            return Err(Error::InvalidParam {
                name: "lambda",
                reason: format!("alpha*lambda must not exceed 1, got {}", alpha * lambda),
            });
        }
        Ok(E3DParams {
            alpha,
            beta: InverseTemperature::new(beta)?,
            lambda,
            eta: EffectRate::new(eta)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> InverseTemperature {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn eta(&self) -> EffectRate {
        self.eta
    }
}

/// What one trial produced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialRecord {
    pub session: u32,
    pub trial: u32,
    pub sequence: ActionSequence,
    pub final_state: StateId,
    /// 0 or 1.
    pub extrinsic_reward: u32,
    /// -(1/beta) * (log p(s_n) - log p*(s_n)), evaluated after the effect
    /// model update; 0 when beta is zero, where no drive is defined.
    pub intrinsic_drive: f64,
}

/// Variational TD-error: lambda*(Q - R) + (1/beta)*(log p - log p*).
/// Rejects beta = 0, which the drive term divides by.
pub fn variational_td(
    q_value: f64,
    sum_reward: f64,
    p: &EffectDistribution,
    target: &EffectDistribution,
    state: StateId,
    lambda: f64,
    beta: InverseTemperature,
) -> Result<f64> {
    if beta.value() == 0.0 {
        return Err(Error::ZeroBeta);
    }
    Ok(lambda * (q_value - sum_reward) + p.log_ratio(target, state) / beta.value())
}

/// The end-effect exploration update. Expects the effect model `p` to
/// have already absorbed `final_state` this trial; touches exactly the 7
/// visited (action, slot) entries.
pub fn e3d_update(
    q: &QTable,
    seq: &ActionSequence,
    final_state: StateId,
    reward: f64,
    p: &EffectDistribution,
    target: &EffectDistribution,
    params: &E3DParams,
) -> Result<QTable> {
    let beta = params.beta().value();
    if beta == 0.0 {
        return Err(Error::ZeroBeta);
    }
    let alpha = params.alpha();
    let lambda = params.lambda();
    let drive = p.log_ratio(target, final_state);
    let mut next = q.clone();
    for (slot, action) in seq.iter().enumerate() {
        let old = next.get(action, slot);
        let updated =
            (1.0 - alpha * lambda) * old + alpha * lambda * reward - (alpha / beta) * drive;
        next.set(action, slot, updated);
    }
    Ok(next)
}

/// The baseline update: each visited entry moves toward the observed
/// reward at rate alpha. Expects 0 < alpha <= 1.
pub fn egreedy_update(q: &QTable, seq: &ActionSequence, reward: f64, alpha: f64) -> QTable {
    debug_assert!(alpha > 0.0 && alpha <= 1.0);
    let mut next = q.clone();
    for (slot, action) in seq.iter().enumerate() {
        let old = next.get(action, slot);
        next.set(action, slot, old + alpha * (reward - old));
    }
    next
}

/// Everything about a run that stays fixed across trials.
#[derive(Clone, Copy, Debug)]
pub struct TrialSetup<'a> {
    pub world: &'a TwoRoomWorld,
    pub target: &'a EffectDistribution,
    pub params: &'a E3DParams,
    pub algo: Algorithm,
    pub task: Task,
    pub epsilon: f64,
}

impl<'a> TrialSetup<'a> {
    /// The setup a fresh session of `config` runs under.
    pub fn from_config(
        config: &ExperimentConfig,
        world: &'a TwoRoomWorld,
        target: &'a EffectDistribution,
        params: &'a E3DParams,
    ) -> Self {
        TrialSetup {
            world,
            target,
            params,
            algo: config.algo,
            task: config.task,
            epsilon: config.epsilon,
        }
    }
}

/// Runs one trial: samples a command under the algorithm's selection
/// rule, rolls it out, applies the algorithm's updates in order (effect
/// model first, then policy), and reports the trial.
///
/// The uniform baseline never touches the policy but still tracks the
/// effect model so its runs report the same quantities; the epsilon-greedy
/// baseline leaves the effect model untouched.
pub fn run_trial<R: Rng + ?Sized>(
    setup: &TrialSetup<'_>,
    q: &QTable,
    p: &EffectDistribution,
    session: u32,
    trial: u32,
    rng: &mut R,
) -> Result<(QTable, EffectDistribution, TrialRecord)> {
    let sequence = match setup.algo {
        Algorithm::E3d => q.sample_sequence(setup.params.beta(), rng)?,
        Algorithm::Uniform => q.sample_sequence(InverseTemperature::ZERO, rng)?,
        Algorithm::EGreedy => q.egreedy_sample(setup.epsilon, rng),
    };
    let final_state = setup.world.rollout(&sequence);
    let extrinsic_reward = match setup.task {
        Task::Reward => setup.world.reward(final_state),
        Task::Explore => 0,
    };

    let (next_q, next_p) = match setup.algo {
        Algorithm::E3d => {
            let next_p = p.ema_update(final_state, setup.params.eta());
            let next_q = e3d_update(
                q,
                &sequence,
                final_state,
                extrinsic_reward as f64,
                &next_p,
                setup.target,
                setup.params,
            )?;
            (next_q, next_p)
        }
        Algorithm::Uniform => (q.clone(), p.ema_update(final_state, setup.params.eta())),
        Algorithm::EGreedy => (
            egreedy_update(q, &sequence, extrinsic_reward as f64, setup.params.alpha()),
            p.clone(),
        ),
    };

    let beta = setup.params.beta().value();
    let intrinsic_drive = if beta > 0.0 {
        -next_p.log_ratio(setup.target, final_state) / beta
    } else {
        0.0
    };

    let record = TrialRecord {
        session,
        trial,
        sequence,
        final_state,
        extrinsic_reward,
        intrinsic_drive,
    };
    Ok((next_q, next_p, record))
}

/// Runs one full session from fresh state: zero policy table, uniform
/// effect model, uniform target, and a random stream derived solely from
/// (config.seed, session_index).
pub fn run_session(config: &ExperimentConfig, session_index: u32) -> Result<Vec<TrialRecord>> {
    let world = TwoRoomWorld::new();
    let target = EffectDistribution::uniform();
    let params = E3DParams::new(config.alpha, config.beta, config.lambda, config.eta)?;
    let setup = TrialSetup::from_config(config, &world, &target, &params);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(session_index as u64);

    let mut q = QTable::zeros();
    let mut p = EffectDistribution::uniform();
    let mut records = Vec::with_capacity(config.trials as usize);
    for trial in 0..config.trials {
        let (next_q, next_p, record) = run_trial(&setup, &q, &p, session_index, trial, &mut rng)?;
        q = next_q;
        p = next_p;
        records.push(record);
    }
    Ok(records)
}
