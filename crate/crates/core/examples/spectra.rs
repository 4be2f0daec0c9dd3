//! Upper, lower and full Laplacian spectra of the octahedron surface.

use simplicial_hoffman::cli::format_eigenvalue;
use simplicial_hoffman::generators::crosspolytope_boundary;
use simplicial_hoffman::spectra::{spectrum, star_lambda_max, OperatorKind};

fn main() -> simplicial_hoffman::Result<()> {
    let x = crosspolytope_boundary(2)?;
    println!("f-vector {:?}", x.f_vector());
    for j in 0..=2 {
        for kind in [OperatorKind::Upper, OperatorKind::Lower, OperatorKind::Full] {
            if let Ok(sp) = spectrum(&x, j, kind) {
                let shown: Vec<String> = sp
                    .eigenvalues
                    .iter()
                    .map(|&v| format_eigenvalue(v, sp.lambda_max().unwrap_or(0.0)))
                    .collect();
                println!("j={j} {kind:<5} [{}]", shown.join(", "));
            }
        }
    }
    println!(
        "largest vertex-star lambda^1: {}",
        star_lambda_max(&x, 1, None)?
    );
    Ok(())
}
