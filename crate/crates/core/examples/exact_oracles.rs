//! Exact independence and chromatic numbers with checkable certificates.

use simplicial_hoffman::generators::{complete_complex, crosspolytope_boundary};
use simplicial_hoffman::invariants::{chromatic_number, independence_number, OracleConfig};

fn main() -> simplicial_hoffman::Result<()> {
    let cfg = OracleConfig::default();
    for (name, x) in [
        ("K_7^2", complete_complex(7, 2)?),
        ("octahedron", crosspolytope_boundary(2)?),
        ("3-cross-polytope", crosspolytope_boundary(3)?),
    ] {
        let d = x.dim().unwrap();
        for j in 1..=d {
            let (i, set) = independence_number(&x, j, &cfg)?;
            let (chi, coloring) = chromatic_number(&x, j, &cfg)?;
            set.verify(&x, j).expect("independent set certificate");
            coloring.verify(&x, j).expect("coloring certificate");
            println!("{name} j={j}: i = {i} {:?}, chi = {chi}", set.vertex_set);
        }
    }
    Ok(())
}
