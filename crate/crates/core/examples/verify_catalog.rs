//! Runs every check over the built-in catalog and prints the summary table.

use simplicial_hoffman::catalog::{verify_catalog, Catalog, VerifyOptions};
use simplicial_hoffman::invariants::DEFAULT_SEARCH_CAP;
use simplicial_hoffman::spectra::DEFAULT_TOLERANCE;

fn main() {
    let options = VerifyOptions {
        cap: DEFAULT_SEARCH_CAP,
        tolerance: DEFAULT_TOLERANCE,
        skip_invariants: false,
        jobs: None,
    };
    let summary = verify_catalog(&Catalog::default_catalog(), &options);
    print!("{}", summary.render_table());
    std::process::exit(summary.exit_code());
}
