//! Hom dimensions of the path algebra with relations for the `X_{k+1}` quiver.

use dpmirror::quiver::{default_points, hom_dims, xk_quiver, PathSpace};

pub fn run(k: usize) -> Result<(), Box<dyn std::error::Error>> {
    let q = xk_quiver(k, &default_points(k))?;
    let d = hom_dims(&q)?;
    let cols = ["PhiO", "PhiT(-H)", "PhiO(H)", "PhiO_B1"];
    println!("{:<10}{}", "", cols.map(|c| format!("{c:>10}")).join(""));
    for src in [format!("e_{}", k - 2), format!("e_{}", k - 1)] {
        let s = q.vertex_index(&src)?;
        let row: Vec<String> = cols
            .iter()
            .map(|t| Ok(format!("{:>10}", d[s][q.vertex_index(t)?])))
            .collect::<Result<_, dpmirror::quiver::QuiverError>>()?;
        println!("{src:<10}{}", row.join(""));
    }
    let (s, t) = (q.vertex_index(&format!("e_{}", k - 2))?, q.vertex_index("PhiT(-H)")?);
    let space = PathSpace::new(&q, s, t)?;
    println!(
        "e_{} -> PhiT(-H): dim {}, spanned through e_{}: {}, through PhiO: {}",
        k - 2,
        space.dim(),
        k - 1,
        space.span_through(&q, q.vertex_index(&format!("e_{}", k - 1))?),
        space.span_through(&q, q.vertex_index("PhiO")?)
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}
