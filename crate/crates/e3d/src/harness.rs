//! Experiment runner: configuration, multi-session orchestration, summary
//! statistics, and file outputs.
//!
//! A run writes four files into its output directory:
//!
//! * `trials.csv` — one row per trial: session, trial, final state,
//!   reward, intrinsic drive, and the command as a 7-letter string.
//! * `dist.csv` — pooled final-state visit counts and frequencies, one
//!   row per state in id order.
//! * `summary.json` — config echo plus per-session and pooled metrics.
//! * `heatmap.txt` (and `heatmap.svg`) — the visit frequencies laid out
//!   on the 3x6 grid.
//!
//! Outputs are byte-identical across runs with the same configuration.

use crate::effect_model::EffectDistribution;
use crate::error::{Error, Result};
use crate::gridworld::{
    exact_final_distribution, StateId, TwoRoomWorld, SEQUENCE_LEN, STATE_COUNT,
};
use crate::learner::{run_session, Algorithm, Task, TrialRecord};
use crate::metrics;
use crate::policy::SlotDistribution;
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Full description of one experiment; defaults follow the task.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub task: Task,
    pub algo: Algorithm,
    pub trials: u32,
    pub sessions: u32,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
    pub eta: f64,
    pub epsilon: f64,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// Task defaults: 5000 trials, alpha 0.3, lambda 0.03, eta 0.01,
    /// epsilon 0.1; the exploration task runs one session at beta 1, the
    /// reward task ten sessions at beta 100.
    pub fn new(task: Task, algo: Algorithm) -> Self {
        ExperimentConfig {
            task,
            algo,
            trials: 5000,
            sessions: match task {
                Task::Explore => 1,
                Task::Reward => 10,
            },
            seed: 0,
            alpha: 0.3,
            beta: match task {
                Task::Explore => 1.0,
                Task::Reward => 100.0,
            },
            lambda: 0.03,
            eta: 0.01,
            epsilon: 0.1,
            out_dir: PathBuf::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, name: &'static str, reason: String) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParam { name, reason })
            }
        }
        check(self.trials >= 1, "trials", "must be at least 1".into())?;
        check(self.sessions >= 1, "sessions", "must be at least 1".into())?;
        check(
            self.alpha.is_finite() && self.alpha > 0.0 && self.alpha <= 1.0,
            "alpha",
            format!("must lie in (0, 1], got {}", self.alpha),
        )?;
        check(
            self.beta.is_finite() && self.beta >= 0.0,
            "beta",
            format!("must be nonnegative, got {}", self.beta),
        )?;
        check(
            !(self.algo == Algorithm::E3d && self.beta == 0.0),
            "beta",
            "must be positive when algo is e3d".into(),
        )?;
        check(
            self.lambda.is_finite() && self.lambda >= 0.0,
            "lambda",
            format!("must be nonnegative, got {}", self.lambda),
        )?;
        check(
            self.alpha * self.lambda <= 1.0,
            "lambda",
            format!(
                "alpha*lambda must not exceed 1, got {}",
                self.alpha * self.lambda
            ),
        )?;
        check(
            self.eta.is_finite() && (0.0..=1.0).contains(&self.eta),
            "eta",
            format!("must lie in [0, 1], got {}", self.eta),
        )?;
        check(
            self.epsilon.is_finite() && (0.0..=1.0).contains(&self.epsilon),
            "epsilon",
            format!("must lie in [0, 1], got {}", self.epsilon),
        )?;
        Ok(())
    }
}

/// Metrics of one session.
#[derive(Clone, Debug, Serialize)]
pub struct SessionStats {
    pub session: u32,
    pub counts: Vec<u64>,
    pub entropy: f64,
    pub kl_to_uniform: f64,
    pub cumulative_reward_final: u64,
    pub first_success_trial: Option<u32>,
    /// Full running-sum series; recomputable from trials.csv, so the
    /// summary file keeps only the final value.
    #[serde(skip)]
    pub cumulative_rewards: Vec<u64>,
}

/// Metrics pooled over all sessions.
#[derive(Clone, Debug, Serialize)]
pub struct PooledStats {
    pub counts: Vec<u64>,
    pub entropy: f64,
    pub kl_to_uniform: f64,
    pub cumulative_reward_final: u64,
    /// Earliest first-success trial index over the sessions.
    pub first_success_trial: Option<u32>,
    /// Distance between the pooled empirical distribution and the exact
    /// uniform-policy distribution; reported for the uniform baseline.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv_to_oracle: Option<f64>,
}

/// Everything `summary.json` holds.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub config: ExperimentConfig,
    pub sessions: Vec<SessionStats>,
    pub pooled: PooledStats,
}

impl Summary {
    pub fn compute(config: &ExperimentConfig, sessions: &[Vec<TrialRecord>]) -> Summary {
        let uniform = EffectDistribution::uniform();
        let per_state_counts = |records: &[TrialRecord]| {
            let mut counts = [0u64; STATE_COUNT];
            for r in records {
                counts[r.final_state.index()] += 1;
            }
            counts
        };
        let distribution_metrics = |counts: &[u64; STATE_COUNT]| {
            let freq = EffectDistribution::from_counts(counts)
                .map(|d| *d.probs())
                .unwrap_or([0.0; STATE_COUNT]);
            (
                metrics::entropy(&freq),
                metrics::kl_divergence(&freq, uniform.probs()),
            )
        };

        let mut stats = Vec::with_capacity(sessions.len());
        let mut pooled_counts = [0u64; STATE_COUNT];
        for (k, records) in sessions.iter().enumerate() {
            let counts = per_state_counts(records);
            for (total, c) in pooled_counts.iter_mut().zip(&counts) {
                *total += c;
            }
            let (entropy, kl_to_uniform) = distribution_metrics(&counts);
            let series = metrics::cumulative_rewards(records);
            stats.push(SessionStats {
                session: k as u32,
                counts: counts.to_vec(),
                entropy,
                kl_to_uniform,
                cumulative_reward_final: series.last().copied().unwrap_or(0),
                first_success_trial: metrics::first_success_trial(records),
                cumulative_rewards: series,
            });
        }

        let (entropy, kl_to_uniform) = distribution_metrics(&pooled_counts);
        let tv_to_oracle = (config.algo == Algorithm::Uniform).then(|| {
            let world = TwoRoomWorld::new();
            let slots = [SlotDistribution::uniform(); SEQUENCE_LEN];
            let oracle = exact_final_distribution(&world, &slots).expect("uniform slots are valid");
            let freq = EffectDistribution::from_counts(&pooled_counts)
                .map(|d| *d.probs())
                .unwrap_or([0.0; STATE_COUNT]);
            metrics::total_variation(&freq, oracle.probs())
        });
        let pooled = PooledStats {
            counts: pooled_counts.to_vec(),
            entropy,
            kl_to_uniform,
            cumulative_reward_final: stats.iter().map(|s| s.cumulative_reward_final).sum(),
            first_success_trial: stats.iter().filter_map(|s| s.first_success_trial).min(),
            tv_to_oracle,
        };

        Summary {
            config: config.clone(),
            sessions: stats,
            pooled,
        }
    }
}

/// Runs every session of `config`, writes the four output files, and
/// returns the computed summary.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Summary> {
    config.validate()?;
    if config.out_dir.as_os_str().is_empty() {
        return Err(Error::InvalidParam {
            name: "out_dir",
            reason: "must not be empty".into(),
        });
    }
    let sessions: Vec<Vec<TrialRecord>> = (0..config.sessions)
        .map(|k| run_session(config, k))
        .collect::<Result<_>>()?;
    let summary = Summary::compute(config, &sessions);

    fs::create_dir_all(&config.out_dir)?;
    write_trials(&config.out_dir.join("trials.csv"), &sessions)?;
    write_dist(&config.out_dir.join("dist.csv"), &summary)?;
    write_summary(&config.out_dir.join("summary.json"), &summary)?;
    write_heatmap_txt(&config.out_dir.join("heatmap.txt"), &summary)?;
    write_heatmap_svg(&config.out_dir.join("heatmap.svg"), &summary)?;
    Ok(summary)
}

/// Writes the exact final-state distribution of the uniform policy.
pub fn write_oracle(path: &Path) -> Result<()> {
    let world = TwoRoomWorld::new();
    let slots = [SlotDistribution::uniform(); SEQUENCE_LEN];
    let dist = exact_final_distribution(&world, &slots)?;
    let mut out = String::from("state,row,col,probability\n");
    for s in StateId::all() {
        out.push_str(&format!("{},{},{},{}\n", s, s.row(), s.col(), dist.prob(s)));
    }
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_trials(path: &Path, sessions: &[Vec<TrialRecord>]) -> Result<()> {
    let mut file = fs::File::create(path)?;
    writeln!(
        file,
        "session,trial,final_state,reward,intrinsic_drive,sequence"
    )?;
    for records in sessions {
        for r in records {
            writeln!(
                file,
                "{},{},{},{},{},{}",
                r.session,
                r.trial,
                r.final_state,
                r.extrinsic_reward,
                r.intrinsic_drive,
                r.sequence
            )?;
        }
    }
    Ok(())
}

fn write_dist(path: &Path, summary: &Summary) -> Result<()> {
    let total: u64 = summary.pooled.counts.iter().sum();
    let mut file = fs::File::create(path)?;
    writeln!(file, "state,row,col,count,frequency")?;
    for s in StateId::all() {
        let count = summary.pooled.counts[s.index()];
        let frequency = count as f64 / total as f64;
        writeln!(
            file,
            "{},{},{},{},{}",
            s,
            s.row(),
            s.col(),
            count,
            frequency
        )?;
    }
    Ok(())
}

fn write_summary(path: &Path, summary: &Summary) -> Result<()> {
    let json = serde_json::to_string_pretty(summary).expect("summary serializes");
    fs::write(path, json + "\n")?;
    Ok(())
}

fn grid_frequencies(summary: &Summary) -> [[f64; 6]; 3] {
    let total: u64 = summary.pooled.counts.iter().sum();
    let mut grid = [[0.0; 6]; 3];
    for s in StateId::all() {
        grid[s.row()][s.col()] = summary.pooled.counts[s.index()] as f64 / total as f64;
    }
    grid
}

fn write_heatmap_txt(path: &Path, summary: &Summary) -> Result<()> {
    let grid = grid_frequencies(summary);
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> = row.iter().map(|f| format!("{:.2}", f * 100.0)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_heatmap_svg(path: &Path, summary: &Summary) -> Result<()> {
    let grid = grid_frequencies(summary);
    let max = grid
        .iter()
        .flatten()
        .fold(f64::MIN_POSITIVE, |m, v| m.max(*v));
    let cell = 80;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
        6 * cell,
        3 * cell
    );
    for (row, cols) in grid.iter().enumerate() {
        for (col, freq) in cols.iter().enumerate() {
            let shade = (255.0 - 205.0 * (freq / max)).round() as u8;
            svg.push_str(&format!(
                "  <rect x=\"{}\" y=\"{}\" width=\"{cell}\" height=\"{cell}\" \
                 fill=\"rgb({shade},{shade},255)\" stroke=\"#444\"/>\n",
                col * cell,
                row * cell,
            ));
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" \
                 font-family=\"monospace\">{:.2}</text>\n",
                col * cell + cell / 2,
                row * cell + cell / 2 + 5,
                freq * 100.0,
            ));
        }
    }
    // Wall segments between columns 2 and 3, leaving the door open at row 1.
    for row in [0usize, 2] {
        svg.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\" stroke-width=\"6\"/>\n",
            row * cell,
            (row + 1) * cell,
            x = 3 * cell,
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}
