//! The intersection lattice of the Milnor fiber and the Floer-dimension table.

use dpmirror::lattice::{cf_table, cf_table_mismatches, class_preset, pair, xk_fiber_basis};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let basis = xk_fiber_basis(k)?;
    println!("basis {:?}", basis.labels);
    for row in &basis.form {
        println!("  {row:?}");
    }
    let p0 = class_preset(&basis, k, "P0")?;
    let b = class_preset(&basis, k, "B")?;
    println!("P0 = {p0}, B = {b}, <P0, B> = {}", pair(&p0, &b)?);
    for entry in cf_table(k) {
        println!("{:<22} expected {}", entry.label, entry.expected);
    }
    println!("mismatches: {}", cf_table_mismatches(k)?.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}
