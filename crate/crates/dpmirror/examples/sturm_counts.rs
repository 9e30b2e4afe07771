//! Real roots of `y^k - (y - t0)^2` by Sturm sequences, across the boundary
//! given by the root-count inequality.

use dpmirror::lg::sturm::{sturm_real_roots, t_double, t_double_root_locus};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let (td, locus) = (t_double(k), t_double_root_locus(k));
    println!("k = {k}: inequality boundary {td:.5}, double-root locus {locus:.5}");
    for t0 in [0.5 * locus, 0.99 * locus, 0.5 * (locus + td), 1.01 * td, 2.0 * td] {
        let c = sturm_real_roots(k, t0)?;
        println!("  t0 = {t0:.5}: {} real (numeric {})", c.distinct, c.numeric_real);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in [5, 7, 9] {
        run(k)?;
    }
    Ok(())
}
