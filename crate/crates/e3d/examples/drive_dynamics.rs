//! Watching the intrinsic drive at work, trial by trial.
//!
//! Runs a single exploration session through the per-trial API and logs
//! how the drive pushes the policy around: the effect model's entropy
//! climbs toward its maximum while the drive value hovers just below
//! zero — each visit makes its own final state a little more "boring",
//! which is what keeps the policy moving to cells it has neglected.
//!
//! ```bash
//! cargo run --release -p e3d --example drive_dynamics
//! ```

use e3d::{
    metrics, run_trial, Algorithm, E3DParams, EffectDistribution, QTable, Task, TrialSetup,
    TwoRoomWorld,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> e3d::Result<()> {
    let world = TwoRoomWorld::new();
    let target = EffectDistribution::uniform();
    let params = E3DParams::new(0.3, 1.0, 0.03, 0.01)?;
    let setup = TrialSetup {
        world: &world,
        target: &target,
        params: &params,
        algo: Algorithm::E3d,
        task: Task::Explore,
        epsilon: 0.0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut q = QTable::zeros();
    let mut p = EffectDistribution::uniform();
    let mut seen = [false; e3d::STATE_COUNT];

    println!("trial  command  final  drive     model entropy  cells seen");
    for trial in 0..5000u32 {
        let (next_q, next_p, record) = run_trial(&setup, &q, &p, 0, trial, &mut rng)?;
        q = next_q;
        p = next_p;
        seen[record.final_state.index()] = true;

        if trial < 5 || (trial + 1) % 500 == 0 {
            println!(
                "{:>5}  {}  {:>5}  {:>+8.4}  {:>13.4}  {:>10}/18",
                trial,
                record.sequence,
                record.final_state,
                record.intrinsic_drive,
                metrics::entropy(p.probs()),
                seen.iter().filter(|s| **s).count(),
            );
        }
    }

    println!("\nfinal effect model (probability x 100 per cell):");
    for row in 0..3 {
        let cells: Vec<String> = (0..6)
            .map(|col| {
                let s = e3d::StateId::from_row_col(row, col).unwrap();
                format!("{:5.2}", p.prob(s) * 100.0)
            })
            .collect();
        println!("    {}", cells.join("  "));
    }
    Ok(())
}
