//! Complete complexes attain the main bound: i_d = d and chi_d = ceil(n/d).

use simplicial_hoffman::bounds::main_hd_bound;
use simplicial_hoffman::generators::complete_complex;
use simplicial_hoffman::invariants::{chromatic_number, independence_number, OracleConfig};

fn main() -> simplicial_hoffman::Result<()> {
    let cfg = OracleConfig::default();
    for d in 1..=3 {
        for n in d + 2..=8 {
            let x = complete_complex(n, d)?;
            let b = main_hd_bound(&x)?;
            let (i, _) = independence_number(&x, d, &cfg)?;
            let (chi, _) = chromatic_number(&x, d, &cfg)?;
            println!(
                "K_{n}^{d}: i_{d} = {i} <= {:.6}, chi_{d} = {chi} >= {:?}",
                b.i_upper,
                b.chi_lower.value()
            );
        }
    }
    Ok(())
}
