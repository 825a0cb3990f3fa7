//! Reward task: the goal corner pays 1, everything else pays nothing.
//!
//! Trains the end-effect drive and the epsilon-greedy baseline for 10
//! sessions of 5000 trials each (beta 100, epsilon 0.1) and compares the
//! cumulative reward curves. The drive's systematic exploration finds the
//! goal early in every session; the baseline waits for uniform chance to
//! stumble on it.
//!
//! ```bash
//! cargo run --release -p e3d --example reward
//! ```

use e3d::{metrics, run_session, Algorithm, ExperimentConfig, Task};

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    0.5 * (values[values.len() / 2 - 1] + values[values.len() / 2])
}

fn main() -> e3d::Result<()> {
    let checkpoints = [500u32, 1000, 2000, 3000, 4000, 5000];

    for algo in [Algorithm::E3d, Algorithm::EGreedy] {
        let mut config = ExperimentConfig::new(Task::Reward, algo);
        config.seed = 1;

        let mut finals = Vec::new();
        let mut firsts = Vec::new();
        let mut curves = Vec::new();
        for k in 0..config.sessions {
            let records = run_session(&config, k)?;
            let series = metrics::cumulative_rewards(&records);
            finals.push(*series.last().unwrap() as f64);
            firsts.push(metrics::first_success_trial(&records));
            curves.push(series);
        }

        println!("{algo}: cumulative reward, one row per session");
        println!(
            "    trial:  {}",
            checkpoints.map(|t| format!("{t:>6}")).join(" ")
        );
        for (k, series) in curves.iter().enumerate() {
            let row: Vec<String> = checkpoints
                .iter()
                .map(|t| format!("{:>6}", series[*t as usize - 1]))
                .collect();
            let first = firsts[k].map_or("never".to_string(), |t| t.to_string());
            println!("    s{k:<2}     {} (first success {first})", row.join(" "));
        }
        println!(
            "    median final reward {}, median first success {}\n",
            median(finals),
            median(
                firsts
                    .iter()
                    .map(|f| f.map_or(f64::INFINITY, f64::from))
                    .collect()
            ),
        );
    }
    Ok(())
}
