//! Rescales the generators of the Fukaya-side quiver so that its relations
//! become those of the B-side quiver, and reads off the points.

use dpmirror::quiver::{fukaya_quiver, normalize_constants, relation_mismatches, xk_quiver_symbolic, FukayaForm};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let f = fukaya_quiver(k, FukayaForm::Derived)?;
    let n = normalize_constants(&f)?;
    for (gen, factor) in &n.rescaling {
        if !factor.is_one() {
            println!("{gen:<10} *= {factor}");
        }
    }
    for (i, (a, b)) in n.points.iter().enumerate() {
        println!("point {}: ({a} : {b})", i + 1);
    }
    let bad = relation_mismatches(&n.quiver, &xk_quiver_symbolic(k)?);
    println!("relations differing from the B-side: {bad:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}
