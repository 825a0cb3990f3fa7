//! Steering the policy with a non-uniform target effect distribution.
//!
//! The drive is not tied to uniform exploration: any target simplex over
//! final states works. Here the target puts 60% of its mass on the goal
//! corner and spreads the rest evenly, and the same update rule turns the
//! policy into a goal-seeking one without any extrinsic reward at all.
//!
//! ```bash
//! cargo run --release -p e3d --example custom_target
//! ```

use e3d::{
    metrics, run_trial, Algorithm, E3DParams, EffectDistribution, QTable, Task, TrialSetup,
    TwoRoomWorld, STATE_COUNT,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> e3d::Result<()> {
    let world = TwoRoomWorld::new();
    let goal = world.goal();

    let mut probs = [0.4 / (STATE_COUNT - 1) as f64; STATE_COUNT];
    probs[goal.index()] = 0.6;
    let target = EffectDistribution::new(probs)?;

    let params = E3DParams::new(0.3, 1.0, 0.03, 0.01)?;
    let setup = TrialSetup {
        world: &world,
        target: &target,
        params: &params,
        algo: Algorithm::E3d,
        task: Task::Explore, // no extrinsic reward; the target does the steering
        epsilon: 0.0,
    };

    let trials = 5000u32;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut q = QTable::zeros();
    let mut p = EffectDistribution::uniform();
    let mut counts = [0u64; STATE_COUNT];
    let mut goal_hits_by_quarter = [0u64; 4];

    for trial in 0..trials {
        let (next_q, next_p, record) = run_trial(&setup, &q, &p, 0, trial, &mut rng)?;
        q = next_q;
        p = next_p;
        counts[record.final_state.index()] += 1;
        if record.final_state == goal {
            goal_hits_by_quarter[(trial / (trials / 4)).min(3) as usize] += 1;
        }
    }

    let empirical = EffectDistribution::from_counts(&counts)?;
    println!("target: 60% on the goal cell, 40% spread over the other 17");
    println!(
        "goal share of trials per quarter: {}",
        goal_hits_by_quarter
            .map(|h| format!("{:.1}%", h as f64 / f64::from(trials / 4) * 100.0))
            .join("  ->  ")
    );
    println!(
        "\nover all {trials} trials the goal took {:.1}% of the visits (uniform policy: 0.05%)",
        empirical.prob(goal) * 100.0
    );
    println!(
        "KL from the empirical effect distribution to the target: {:.4} nats",
        metrics::kl_divergence(empirical.probs(), target.probs()),
    );
    println!(
        "KL from the uniform-start effect model to the target was {:.4} nats",
        metrics::kl_divergence(EffectDistribution::uniform().probs(), target.probs()),
    );
    Ok(())
}
