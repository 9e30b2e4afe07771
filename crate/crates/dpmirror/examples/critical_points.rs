//! Critical points and values of the Landau–Ginzburg potential, classified
//! by continuation from small `s`.

use dpmirror::lg::{critical_set, LGSpec};

pub fn run(k: usize, s: f64) -> Result<(), Box<dyn std::error::Error>> {
    let spec = LGSpec::new(k, s, 1e-2)?;
    let set = critical_set(&spec, 0.25)?;
    println!("k = {k}, s = {s}: counts (I, II, III) = {:?}", set.counts);
    for p in &set.points {
        println!("  {:?}  y = {:.5}  t = {:.5}", p.class, p.y, p.t);
    }
    let ti = &set.type_i;
    println!(
        "type I |t| radius ((k-2)/k)(1/(k^2 s))^(1/(k-2)) = {:.4}, worst relative error {:.4}",
        ti.radius, ti.max_rel_err
    );
    println!("real positive critical points: {}", set.real_positive);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5, 1e-3)
}
