//! Parses a labelled complex, prints the full report and the proof diagnostics
//! for a largest independent set.

use simplicial_hoffman::bounds::proof_diagnostics;
use simplicial_hoffman::invariants::{independence_number, OracleConfig};
use simplicial_hoffman::io::ComplexFile;
use simplicial_hoffman::report::{analyze, AnalyzeOptions};

const TETRA_BOUNDARY: &str = "\
# boundary of the tetrahedron
north east west
north east south
north west south
east west south
";

fn main() -> simplicial_hoffman::Result<()> {
    let file = ComplexFile::parse(TETRA_BOUNDARY)?;
    let doc = analyze("tetrahedron", &file, &AnalyzeOptions::default())?;
    print!("{}", doc.render_text());

    let (_, set) = independence_number(&file.complex, 2, &OracleConfig::default())?;
    let diag = proof_diagnostics(&file.complex, &set.vertex_set)?;
    let labels: Vec<&str> = set.vertex_set.iter().map(|&v| file.label(v)).collect();
    println!("independent set {labels:?}");
    for f in &diag.faces {
        println!(
            "  {:?}: {} cofaces leave the set, threshold {:.4}",
            file.face_labels(&f.face),
            f.k_outside,
            f.threshold
        );
    }
    if let Some(s) = &diag.sandwich {
        println!(
            "  crossing edges {} in [{:.4}, {:.4}]",
            s.crossing_edges, s.degree_lower, s.spectral_upper
        );
    }
    println!("diagnostics hold: {}", diag.holds());
    Ok(())
}
