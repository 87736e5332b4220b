// Outcome probabilities for random instruments on a process.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use procmat::process::random::{random_cptp_choi, random_instrument, random_process};
use procmat::process::{born_rule, w_ocb};
use procmat::tensor::{A_I, A_O, B_I, B_O};

fn main() -> procmat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = w_ocb();
    let ma = random_cptp_choi(&mut rng, A_I, A_O);
    let mb = random_cptp_choi(&mut rng, B_I, B_O);
    println!(
        "W_OCB, two CPTP maps: total probability {:.12}",
        born_rule(&w, &ma, &mb)?
    );

    let w = random_process(&mut rng);
    let alice = random_instrument(&mut rng, A_I, A_O, 2);
    let bob = random_instrument(&mut rng, B_I, B_O, 3);
    let mut total = 0.0;
    for (a, ea) in alice.iter().enumerate() {
        for (b, eb) in bob.iter().enumerate() {
            let p = born_rule(&w, ea, eb)?;
            total += p;
            println!("P({a}, {b}) = {p:.6}");
        }
    }
    println!("sum = {total:.12}");
    Ok(())
}
