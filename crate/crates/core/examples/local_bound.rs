//! Local bound on random pure 2-complexes, with the star maxima it is built from.

use simplicial_hoffman::bounds::local_bound;
use simplicial_hoffman::generators::random_pure;
use simplicial_hoffman::invariants::{independence_number, OracleConfig};

fn main() -> simplicial_hoffman::Result<()> {
    let cfg = OracleConfig::default();
    for seed in 1..=8 {
        let x = random_pure(8, 2, 0.5, seed)?;
        if x.dim() != Some(2) {
            continue;
        }
        let b = local_bound(&x)?;
        let (i, _) = independence_number(&x, 2, &cfg)?;
        println!(
            "seed {seed}: {} triangles, Lambda_1 = {:.4}, i_2 = {i} <= {:.4}",
            x.face_count(2),
            b.input("Lambda_1").unwrap_or(f64::NAN),
            b.i_upper
        );
    }
    Ok(())
}
