//! Command-line front end: runs experiments and dumps the exact oracle.

use anyhow::Result;
use clap::{Parser, Subcommand};
use e3d::{run_experiment, write_oracle, Algorithm, ExperimentConfig, Task};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "e3d",
    version,
    about = "End-effect exploration drive experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write trials.csv, dist.csv, summary.json,
    /// and heatmaps into the output directory.
    Run {
        /// Task: explore (no reward) or reward (goal pays 1).
        #[arg(long, value_parser = Task::from_str)]
        task: Task,
        /// Algorithm: e3d, uniform, or egreedy.
        #[arg(long, value_parser = Algorithm::from_str)]
        algo: Algorithm,
        /// Trials per session (default 5000).
        #[arg(long)]
        trials: Option<u32>,
        /// Sessions (default: 1 for explore, 10 for reward).
        #[arg(long)]
        sessions: Option<u32>,
        /// Master seed; session k draws from the stream (seed, k).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Policy learning rate (default 0.3).
        #[arg(long)]
        alpha: Option<f64>,
        /// Softmax inverse temperature (default: 1 for explore, 100 for reward).
        #[arg(long)]
        beta: Option<f64>,
        /// Reward-precision weight (default 0.03).
        #[arg(long)]
        lambda: Option<f64>,
        /// Effect-model learning rate (default 0.01).
        #[arg(long)]
        eta: Option<f64>,
        /// Exploration rate of the egreedy baseline (default 0.1).
        #[arg(long)]
        epsilon: Option<f64>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the exact final-state distribution of the uniform policy.
    Oracle {
        /// Output CSV file.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            task,
            algo,
            trials,
            sessions,
            seed,
            alpha,
            beta,
            lambda,
            eta,
            epsilon,
            out,
        } => {
            let mut config = ExperimentConfig::new(task, algo);
            config.seed = seed;
            config.out_dir = out;
            if let Some(v) = trials {
                config.trials = v;
            }
            if let Some(v) = sessions {
                config.sessions = v;
            }
            if let Some(v) = alpha {
                config.alpha = v;
            }
            if let Some(v) = beta {
                config.beta = v;
            }
            if let Some(v) = lambda {
                config.lambda = v;
            }
            if let Some(v) = eta {
                config.eta = v;
            }
            if let Some(v) = epsilon {
                config.epsilon = v;
            }

            let summary = run_experiment(&config)?;
            println!(
                "{} / {}: {} sessions x {} trials -> {}",
                config.task,
                config.algo,
                config.sessions,
                config.trials,
                config.out_dir.display()
            );
            println!(
                "pooled entropy {:.4} nats (max {:.4}), KL to uniform {:.4}",
                summary.pooled.entropy,
                (e3d::STATE_COUNT as f64).ln(),
                summary.pooled.kl_to_uniform
            );
            println!(
                "total reward {}, first success {}",
                summary.pooled.cumulative_reward_final,
                summary
                    .pooled
                    .first_success_trial
                    .map_or("never".to_string(), |t| format!("trial {t}")),
            );
            if let Some(tv) = summary.pooled.tv_to_oracle {
                println!("total variation to the exact oracle {tv:.4}");
            }
        }
        Command::Oracle { out } => {
            write_oracle(&out)?;
            println!("exact uniform-policy distribution -> {}", out.display());
        }
    }
    Ok(())
}
