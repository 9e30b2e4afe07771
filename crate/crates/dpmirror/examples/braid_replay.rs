//! Replays the braid moves that carry the seed collection through six steps,
//! comparing each step with the reference class lists.

use dpmirror::mutation::{braid_script, replay_script};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let script = braid_script(k);
    println!("seed {:?}", script.seed);
    let replay = replay_script(&script)?;
    for step in &replay.steps {
        println!("{}: {}", step.name, step.classes.display().join(", "));
        println!("  literal mismatches {:?}, corrected {:?}", step.literal_mismatches, step.corrected_mismatches);
    }
    for e in &replay.errata {
        println!("erratum, step {}: {}", e.step, e.description);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}
