//! Whole-complex analysis: regularity, spectra, exact invariants, every
//! applicable bound and the proof diagnostics, collected in one document.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    applicable_bounds, proof_diagnostics, BoundName, BoundReport, ChiLower, ProofDiagnostics,
};
use crate::complex::RegularityProfile;
use crate::error::{Error, Result};
use crate::invariants::{
    counting_report_from, exact_invariants, CountingReport, ExactInvariants, OracleConfig,
    DEFAULT_SEARCH_CAP,
};
use crate::io::ComplexFile;
use crate::spectra::{spectrum_with_tolerance, with_jobs, OperatorKind, DEFAULT_TOLERANCE};

pub const SCHEMA_VERSION: &str = "simplicial-hoffman/report/v1";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub cap: usize,
    pub tolerance: f64,
    pub skip_invariants: bool,
    pub diagnostics: bool,
    pub jobs: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            cap: DEFAULT_SEARCH_CAP,
            tolerance: DEFAULT_TOLERANCE,
            skip_invariants: false,
            diagnostics: true,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub n: usize,
    pub dim: Option<usize>,
    pub f_vector: Vec<usize>,
    pub regularity: RegularityProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub j: usize,
    pub kind: OperatorKind,
    pub eigenvalues: Vec<f64>,
    pub lambda_max: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedBound {
    pub bound: BoundName,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub source: String,
    /// Vertex labels by id; certificates refer to ids.
    pub labels: Vec<String>,
    pub summary: ComplexSummary,
    /// Maximal faces as label lists; re-parsing them gives back the complex.
    pub maximal_faces: Vec<Vec<String>>,
    pub spectra: Vec<SpectrumSection>,
    pub invariants: Vec<ExactInvariants>,
    pub counting: Option<CountingReport>,
    pub bounds: Vec<BoundReport>,
    pub skipped_bounds: Vec<SkippedBound>,
    pub diagnostics: Option<ProofDiagnostics>,
    /// Parts of the analysis that were not carried out, with the reason.
    pub omissions: Vec<String>,
}

impl ReportDocument {
    pub fn bound(&self, name: BoundName) -> Option<&BoundReport> {
        self.bounds.iter().find(|b| b.bound_name == name)
    }

    pub fn invariant(&self, j: usize) -> Option<&ExactInvariants> {
        self.invariants.iter().find(|r| r.j == j)
    }

    pub fn spectrum(&self, j: usize) -> Option<&SpectrumSection> {
        self.spectra.iter().find(|s| s.j == j)
    }

    /// A bound contradicted by an exact value, or a failed counting or diagnostics check.
    pub fn has_violation(&self) -> bool {
        self.bounds.iter().any(|b| b.holds == Some(false))
            || self.counting.as_ref().is_some_and(|c| !c.holds())
            || self.diagnostics.as_ref().is_some_and(|d| !d.holds())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "complex: {}", self.source);
        let _ = writeln!(
            out,
            "  n = {}, dim = {}, f-vector = {:?}",
            s.n,
            s.dim.map_or("-".into(), |d| d.to_string()),
            s.f_vector
        );
        let r = &s.regularity;
        let _ = writeln!(
            out,
            "  pure = {}, regular = {}, degrees min {:?} max {:?}",
            r.is_pure, r.is_regular, r.degrees_min, r.degrees_max
        );
        for sp in &self.spectra {
            let _ = writeln!(
                out,
                "spectrum {} j={}: lambda_max = {}",
                sp.kind,
                sp.j,
                sp.lambda_max.map_or("-".into(), |v| format!("{v:.12}"))
            );
        }
        for row in &self.invariants {
            let _ = writeln!(
                out,
                "invariants j={}: i = {} {:?}, chi = {}",
                row.j, row.independence, row.independent_set.vertex_set, row.chromatic
            );
        }
        if let Some(c) = &self.counting {
            let _ = writeln!(
                out,
                "counting: chi_1 = {}, chi_d = {}, ceil(chi_1/d) = {}, {}",
                c.lemma.0,
                c.lemma.1,
                c.lemma.2,
                if c.holds() { "ok" } else { "VIOLATED" }
            );
        }
        for b in &self.bounds {
            let chi = match b.chi_lower {
                ChiLower::Finite(v) => format!("{v:.12}"),
                ChiLower::Infinite => "infinite".into(),
            };
            let verdict = match b.holds {
                Some(true) => "holds",
                Some(false) => "VIOLATED",
                None => "unchecked",
            };
            let _ = writeln!(
                out,
                "bound {}: i_{} <= {:.12}, chi_{} >= {} ({verdict})",
                b.bound_name, b.target_dim, b.i_upper, b.target_dim, chi
            );
            if let Some(lit) = b.input("literal_i_upper") {
                let _ = writeln!(out, "  literal variant: i_{} <= {lit:.12}", b.target_dim);
            }
        }
        for sk in &self.skipped_bounds {
            let _ = writeln!(out, "skipped {}: {}", sk.bound, sk.reason);
        }
        if let Some(diag) = &self.diagnostics {
            let _ = writeln!(
                out,
                "diagnostics: {} face records, min margin {}, {}",
                diag.faces.len(),
                diag.min_margin().map_or("-".into(), |m| format!("{m:.12}")),
                if diag.holds() { "ok" } else { "VIOLATED" }
            );
            if let Some(sw) = &diag.sandwich {
                let _ = writeln!(
                    out,
                    "  edges leaving I: {:.12} <= {} <= {:.12}",
                    sw.degree_lower, sw.crossing_edges, sw.spectral_upper
                );
            }
        }
        for o in &self.omissions {
            let _ = writeln!(out, "omitted: {o}");
        }
        out
    }
}

/// Analyzes `input`; an empty complex is an error, everything else yields a
/// (possibly partial) report.
pub fn analyze(
    source: &str,
    input: &ComplexFile,
    options: &AnalyzeOptions,
) -> Result<ReportDocument> {
    let complex = &input.complex;
    let d = complex.dim().ok_or(Error::EmptyComplex)?;
    let summary = ComplexSummary {
        n: complex.vertex_count(),
        dim: Some(d),
        f_vector: complex.f_vector(),
        regularity: complex.regularity_profile(),
    };
    let mut omissions = Vec::new();

    let spectra: Vec<SpectrumSection> = with_jobs(options.jobs, || {
        (0..d)
            .into_par_iter()
            .map(|j| {
                let sp =
                    spectrum_with_tolerance(complex, j, OperatorKind::Upper, options.tolerance)?;
                Ok(SpectrumSection {
                    j,
                    kind: sp.kind,
                    lambda_max: sp.lambda_max(),
                    eigenvalues: sp.eigenvalues,
                })
            })
            .collect::<Result<_>>()
    })?;
    if d == 0 {
        omissions.push("spectra: a 0-dimensional complex has no defined upper Laplacian".into());
    }

    let config = OracleConfig { cap: options.cap };
    let mut invariants = Vec::new();
    if options.skip_invariants {
        omissions.push("invariants: skipped on request".into());
    } else if d == 0 {
        omissions.push("invariants: i_j and chi_j need j >= 1".into());
    } else {
        for j in 1..=d {
            match exact_invariants(complex, j, &config) {
                Ok(row) => invariants.push(row),
                Err(e @ Error::SearchCap { .. }) => {
                    omissions.push(format!("invariants: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
    }
    let counting = if invariants.len() == d && d >= 1 {
        Some(counting_report_from(complex, &invariants, &config)?)
    } else {
        None
    };

    let (mut bounds, skipped) = applicable_bounds(complex, options.jobs);
    let top = invariants.iter().find(|r| r.j == d);
    if let Some(top) = top {
        for b in &mut bounds {
            b.attach_oracles(Some(top.independence), Some(top.chromatic));
        }
    }
    let skipped_bounds = skipped
        .into_iter()
        .map(|(bound, reason)| SkippedBound { bound, reason })
        .collect();

    let diagnostics = match top {
        Some(top) if options.diagnostics && summary.regularity.is_regular => {
            Some(proof_diagnostics(complex, &top.independent_set.vertex_set)?)
        }
        _ => {
            if options.diagnostics {
                omissions.push(if summary.regularity.is_regular {
                    "diagnostics: need a maximum independent set".into()
                } else {
                    "diagnostics: complex is not regular".into()
                });
            }
            None
        }
    };

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION.into(),
        source: source.into(),
        labels: input.labels.clone(),
        summary,
        maximal_faces: input.maximal_face_labels(),
        spectra,
        invariants,
        counting,
        bounds,
        skipped_bounds,
        diagnostics,
        omissions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_complex;

    #[test]
    fn k5_2_report() {
        let input = ComplexFile::from_complex(&complete_complex(5, 2).unwrap());
        let doc = analyze("K_5^2", &input, &AnalyzeOptions::default()).unwrap();
        assert_eq!(doc.schema_version, SCHEMA_VERSION);
        for j in 0..2 {
            assert!((doc.spectrum(j).unwrap().lambda_max.unwrap() - 5.0).abs() < 1e-8);
        }
        assert_eq!(doc.invariant(2).unwrap().independence, 2);
        assert_eq!(doc.bounds.len(), 3);
        for b in &doc.bounds {
            assert!((b.i_upper - 2.0).abs() < 1e-9, "{}", b.bound_name);
            assert_eq!(b.holds, Some(true));
        }
        assert_eq!(doc.skipped_bounds.len(), 1);
        assert_eq!(doc.skipped_bounds[0].bound, BoundName::HoffmanGraph);
        assert!(doc.diagnostics.as_ref().unwrap().holds());
        let back: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn triangle_file_and_faces_round_trip() {
        let input = ComplexFile::parse("a b c\n").unwrap();
        let doc = analyze("triangle", &input, &AnalyzeOptions::default()).unwrap();
        assert_eq!(doc.invariant(1).unwrap().chromatic, 3);
        let text: String = doc
            .maximal_faces
            .iter()
            .map(|f| f.join(" ") + "\n")
            .collect();
        assert_eq!(ComplexFile::parse(&text).unwrap().complex, input.complex);
    }

    #[test]
    fn over_cap_gives_a_partial_report() {
        let input = ComplexFile::from_complex(&complete_complex(6, 2).unwrap());
        let options = AnalyzeOptions {
            cap: 5,
            ..AnalyzeOptions::default()
        };
        let doc = analyze("K_6^2", &input, &options).unwrap();
        assert!(doc.invariants.is_empty());
        assert!(doc.omissions.iter().any(|o| o.contains("cap")));
        assert!(doc.bounds.iter().all(|b| b.holds.is_none()));
    }
}
