pub mod bounds;
pub mod catalog;
pub mod chains;
pub mod cli;
pub mod complex;
pub mod error;
pub mod generators;
pub mod invariants;
pub mod io;
pub mod report;
pub mod spectra;

pub use complex::{Face, RegularityProfile, SimplicialComplex};
pub use error::{Error, Result};
