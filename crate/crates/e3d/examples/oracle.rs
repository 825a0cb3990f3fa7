//! The exact final-state distribution and why uniform sampling fails.
//!
//! Propagates the occupancy vector through all 7 moves of the uniform
//! policy, prints the exact probability of each final cell, and checks a
//! 200000-rollout simulation against it. The goal corner is reached by
//! only 9 of the 16384 possible commands, which is precisely why a wide
//! exploration policy has to be learned.
//!
//! ```bash
//! cargo run --release -p e3d --example oracle
//! ```

use e3d::{
    exact_final_distribution, metrics, InverseTemperature, QTable, SlotDistribution, StateId,
    TwoRoomWorld, SEQUENCE_LEN, STATE_COUNT,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> e3d::Result<()> {
    let world = TwoRoomWorld::new();
    let slots = [SlotDistribution::uniform(); SEQUENCE_LEN];
    let dist = exact_final_distribution(&world, &slots)?;

    println!("exact final-state probabilities of the uniform policy (x 16384):");
    for row in 0..3 {
        let cells: Vec<String> = (0..6)
            .map(|col| {
                let s = StateId::from_row_col(row, col).unwrap();
                format!("{:>5}", (dist.prob(s) * 16384.0).round() as u64)
            })
            .collect();
        println!("    {}", cells.join(" "));
    }

    let room_a: f64 = StateId::all()
        .filter(|s| world.in_room_a(*s))
        .map(|s| dist.prob(s))
        .sum();
    println!(
        "\nroom A holds {:.1}% of the mass, room B {:.1}%",
        room_a * 100.0,
        (1.0 - room_a) * 100.0
    );
    println!(
        "the goal cell {} is the rarest: {} / 16384 commands reach it (p = {:.3e})",
        world.goal(),
        (dist.prob(world.goal()) * 16384.0).round() as u64,
        dist.prob(world.goal()),
    );

    // Cross-check by simulation.
    let q = QTable::zeros();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = 200_000;
    let mut counts = [0u64; STATE_COUNT];
    for _ in 0..n {
        let seq = q.sample_sequence(InverseTemperature::ZERO, &mut rng)?;
        counts[world.rollout(&seq).index()] += 1;
    }
    let empirical: Vec<f64> = counts.iter().map(|c| *c as f64 / n as f64).collect();
    println!(
        "\n{n} sampled rollouts sit at total variation {:.5} from the exact answer",
        metrics::total_variation(&empirical, dist.probs()),
    );
    Ok(())
}
