//! Samples the gradient norm of the potential on the hypersurface far from
//! the origin.

use dpmirror::lg::{palais_smale_sample, LGSpec};

pub fn run(n: usize) -> Result<(), Box<dyn std::error::Error>> {
    for s in [1e-2, 0.0] {
        let mut spec = LGSpec::new(5, 1e-2, 1e-2)?;
        spec.s = s;
        let ps = palais_smale_sample(&spec, 1e3, n, 0)?;
        println!("s = {s}: min {:.3e} (bound {:.3e}), {} of {n} below", ps.min_value, ps.bound, ps.below_bound);
        println!(
            "  argmin |y| = {:.3e}, |x| = {:.3e}, |z| = {:.3e}",
            ps.argmin.y.norm(),
            ps.argmin.x.norm(),
            ps.argmin.z.norm()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(10_000)
}
