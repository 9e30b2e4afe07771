//! Lattice points of the Newton polygon and the count of critical points.

use dpmirror::lg::newton_polygon_count;

pub fn run(k_max: usize) -> Result<(), Box<dyn std::error::Error>> {
    for k in (3..=k_max).step_by(2) {
        let c = newton_polygon_count(k);
        println!(
            "k = {k}: interior {}, boundary {}, 2 vol {}, Pick {}",
            c.interior,
            c.boundary,
            c.two_volume,
            c.pick_holds()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(11)
}
