//! Seifert form of the left dual of the `L`-collection against the Euler form
//! of the McKay quiver.

use dpmirror::mutation::{l_collection, left_dual, seifert_gram};
use dpmirror::quiver::{euler_gram, mckay_quiver};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let l = l_collection(k)?;
    let dual = left_dual(&l)?;
    println!("L-collection {:?}", l.display());
    println!("left dual    {:?}", dual.display());
    let s = seifert_gram(&dual)?;
    let e = euler_gram(&mckay_quiver(k)?)?;
    println!("Seifert form of the dual:");
    for row in s.to_i64() {
        println!("  {row:?}");
    }
    println!("Euler form of the McKay quiver:");
    for row in e.to_i64() {
        println!("  {row:?}");
    }
    println!("|S| = E: {}, sign-conjugate: {}", s.abs() == e, s.sign_conjugate(&e));
    println!("first row of the L-collection form: {:?}", seifert_gram(&l)?.to_i64()[0]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(7)
}
