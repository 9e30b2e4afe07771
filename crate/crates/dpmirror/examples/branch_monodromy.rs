//! Branch points of a fiber and their monodromy around the origin.

use dpmirror::lg::branch::{branch_points, full_monodromy, sector_monodromy, MonodromyRegime};
use dpmirror::lg::{LGSpec, C};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let spec = LGSpec::new(k, 1e-4, 1e-2)?;
    let bp = branch_points(&spec, C::new(3.0, 0.0))?;
    println!(
        "t = 3: near zero {:.3e}, twins {:.4} {:.4}",
        bp.roots[bp.near_zero], bp.roots[bp.twins[0]], bp.roots[bp.twins[1]]
    );
    println!("outer radius {:.4} (predicted {:.4})", bp.outer_radius, bp.predicted_outer_radius);

    let reg = MonodromyRegime::default();
    let sec = sector_monodromy(&spec, &reg)?;
    println!("sector 2pi/{}: {:?}, twins swapped {}", k - 2, sec.rotated_permutation, sec.twins_swapped);
    let full = full_monodromy(&spec, &reg)?;
    println!("full loop: {:?}, composed sectors {:?}", full.permutation, full.composed);
    println!("twin half-turns relative to t: {:.3}", full.twin_half_turns);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}
