// Random ordered combs never give two outcomes with strictly opposite orders.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use procmat::conditioning::no_go_trials;

fn main() -> procmat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = no_go_trials(&mut rng, 200)?;
    println!(
        "{} trials, {} with both outcomes definite, {} violations",
        s.trials, s.both_definite, s.violations
    );
    Ok(())
}
