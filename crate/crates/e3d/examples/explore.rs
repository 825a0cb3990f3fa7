//! Exploration task: no reward, 5000 trials, one session.
//!
//! Runs the uniform policy and the end-effect exploration drive side by
//! side and prints where each one's trials ended up. The uniform policy
//! piles up near the start room; the drive flattens the visit pattern
//! until every cell, goal corner included, is reached.
//!
//! ```bash
//! cargo run --release -p e3d --example explore
//! ```

use e3d::{metrics, run_session, Algorithm, EffectDistribution, ExperimentConfig, StateId, Task};

fn visit_grid(records: &[e3d::TrialRecord]) -> ([u64; 18], [[f64; 6]; 3]) {
    let mut counts = [0u64; 18];
    for r in records {
        counts[r.final_state.index()] += 1;
    }
    let total: u64 = counts.iter().sum();
    let mut grid = [[0.0; 6]; 3];
    for s in StateId::all() {
        grid[s.row()][s.col()] = counts[s.index()] as f64 / total as f64;
    }
    (counts, grid)
}

fn print_grid(grid: &[[f64; 6]; 3]) {
    for row in grid {
        let cells: Vec<String> = row.iter().map(|f| format!("{:5.2}", f * 100.0)).collect();
        println!("    {}", cells.join("  "));
    }
}

fn main() -> e3d::Result<()> {
    let uniform = EffectDistribution::uniform();

    for algo in [Algorithm::Uniform, Algorithm::E3d] {
        let mut config = ExperimentConfig::new(Task::Explore, algo);
        config.seed = 0;
        let records = run_session(&config, 0)?;
        let (counts, grid) = visit_grid(&records);
        let freq = EffectDistribution::from_counts(&counts)?;

        println!(
            "{algo}: final-state visit percentages over {} trials",
            config.trials
        );
        print_grid(&grid);
        println!(
            "    entropy {:.4} of max {:.4}, KL to uniform {:.4}, states covered {}/18\n",
            metrics::entropy(freq.probs()),
            18f64.ln(),
            metrics::kl_divergence(freq.probs(), uniform.probs()),
            counts.iter().filter(|c| **c > 0).count(),
        );
    }
    Ok(())
}
