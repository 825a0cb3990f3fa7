//! End-effect exploration drive (E3D) for open-loop tabular
//! reinforcement learning.
//!
//! An agent in a small two-room gridworld commits to a compositional
//! command of 7 elementary moves and observes only the final cell. It
//! keeps a running effect model — a probability vector over final cells,
//! updated by exponential moving average — and scores every trial by the
//! log-ratio between that model and a target effect distribution. Driving
//! the factorized softmax policy down this log-ratio pushes the induced
//! effect distribution toward the target; with a uniform target the agent
//! learns to spread its final states evenly, and with an extrinsic reward
//! folded in it finds sparse goals faster than an epsilon-greedy baseline.
//!
//! The crate is organized around the pieces of that loop:
//!
//! * [`gridworld`] — the deterministic environment plus an exact
//!   final-state-distribution oracle for testing.
//! * [`policy`] — the 4x7 action-value table, softmax sampling, and the
//!   epsilon-greedy selection rule.
//! * [`effect_model`] — the effect distribution, its EMA update, and the
//!   log-ratio drive.
//! * [`learner`] — the update rules and the per-trial and per-session
//!   loops.
//! * [`metrics`] — entropy, KL divergence, total variation, and reward
//!   series.
//! * [`harness`] — experiment configuration, orchestration, and file
//!   outputs.
//!
//! Runnable walkthroughs live in the `examples/` directory; the `e3d`
//! binary drives full experiments from the command line.
//!
//! ```
//! use e3d::{run_session, Algorithm, ExperimentConfig, Task};
//!
//! let mut config = ExperimentConfig::new(Task::Explore, Algorithm::E3d);
//! config.trials = 100;
//! let records = run_session(&config, 0).unwrap();
//! assert_eq!(records.len(), 100);
//! ```

pub mod effect_model;
pub mod error;
pub mod gridworld;
pub mod harness;
pub mod learner;
pub mod metrics;
pub mod policy;

pub use effect_model::{EffectDistribution, EffectRate, PROB_FLOOR};
pub use error::{Error, Result};
pub use gridworld::{
    exact_final_distribution, Action, ActionSequence, StateId, TwoRoomWorld, ACTION_COUNT,
    SEQUENCE_LEN, STATE_COUNT,
};
pub use harness::{
    run_experiment, write_oracle, ExperimentConfig, PooledStats, SessionStats, Summary,
};
pub use learner::{
    e3d_update, egreedy_update, run_session, run_trial, variational_td, Algorithm, E3DParams, Task,
    TrialRecord, TrialSetup,
};
pub use policy::{InverseTemperature, QTable, SlotDistribution};
