//! Writes the branch-point trajectory of a full loop around the origin as CSV.

use dpmirror::report::{emit_trajectories, Params};

pub fn run<W: std::io::Write>(out: W) -> Result<(), Box<dyn std::error::Error>> {
    let params = Params { k: Some(5), s: Some(1e-14), steps: Some(128), ..Default::default() };
    let tr = emit_trajectories(&params, out)?;
    eprintln!("{} rows, permutation {:?}", tr.roots.len(), tr.permutation);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::io::stdout().lock())
}
