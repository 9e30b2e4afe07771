//! Hirzebruch–Jung data, the order map and the core schedules of a cyclic
//! quotient singularity `1/n(1, q)`.
//!
//! `cargo run --example cqs_descriptor -- 7 3`

use dpmirror::cqs::{core_schedule, order_map, CQSDescriptor, VERTICAL_ORDER};

pub fn run(n: u64, q: u64) -> Result<(), Box<dyn std::error::Error>> {
    let desc = CQSDescriptor::new(n, q)?;
    println!("{desc}");
    println!("non-special residues: {:?}", desc.non_special());
    for (a, image) in order_map(n, q)? {
        println!("  {a} -> {image}");
    }
    for d in desc.non_special().into_iter().filter(|&d| d > 0) {
        let sched = core_schedule(n, q, d)?;
        let order: Vec<u64> = VERTICAL_ORDER.iter().map(|&i| sched.cores[i].residue).collect();
        println!("d = {d}: t = {}, cores top to bottom {order:?}, duplicates {}", sched.t, sched.has_duplicates());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, q) = match args[..] {
        [n, q] => (n, q),
        _ => (5, 3),
    };
    run(n, q)
}
