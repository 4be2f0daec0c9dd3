//! Catalogs of test complexes and the checks run over each entry.
//!
//! A catalog is a TOML file with one `[[entry]]` table per complex, either a
//! generator or a complex file:
//!
//! ```toml
//! [[entry]]
//! generator = { kind = "complete_complex", n = 5, d = 2 }
//!
//! [[entry]]
//! name = "glued triangles"
//! file = "two_triangles.txt"
//! closure = "strict"
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{applicable_bounds, proof_diagnostics, BoundName, ChiLower};
use crate::chains::{boundary_matrix, coboundary_matrix};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::invariants::{counting_report_from, exact_invariants, OracleConfig, DEFAULT_SEARCH_CAP};
use crate::io::{Closure, ComplexFile};
use crate::spectra::{spectrum_with_tolerance, with_jobs, OperatorKind, DEFAULT_TOLERANCE};

/// Tolerance for eigenvalue comparisons between operators.
pub const SPECTRAL_MATCH_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    #[serde(default, rename = "entry")]
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default)]
    pub closure: Closure,
}

impl CatalogEntry {
    pub fn generator(spec: GeneratorSpec) -> Self {
        CatalogEntry {
            generator: Some(spec),
            ..Self::default()
        }
    }

    pub fn file(path: impl Into<PathBuf>, closure: Closure) -> Self {
        CatalogEntry {
            file: Some(path.into()),
            closure,
            ..Self::default()
        }
    }

    pub fn display_name(&self) -> String {
        match (&self.name, &self.generator, &self.file) {
            (Some(n), _, _) => n.clone(),
            (None, Some(g), _) => g.to_string(),
            (None, None, Some(f)) => f.display().to_string(),
            (None, None, None) => "<empty entry>".into(),
        }
    }

    pub fn load(&self) -> Result<ComplexFile> {
        match (&self.generator, &self.file) {
            (Some(g), None) => Ok(ComplexFile::from_complex(&g.build()?)),
            (None, Some(path)) => ComplexFile::read(path, self.closure),
            _ => Err(Error::Parameter(
                "a catalog entry needs exactly one of `generator` and `file`".into(),
            )),
        }
    }
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let catalog: Catalog = toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map_or(0, |s| text[..s.start].matches('\n').count() + 1),
            message: e.message().to_string(),
        })?;
        for (k, entry) in catalog.entries.iter().enumerate() {
            if entry.generator.is_some() == entry.file.is_some() {
                return Err(Error::Parameter(format!(
                    "catalog entry {} needs exactly one of `generator` and `file`",
                    k + 1
                )));
            }
        }
        Ok(catalog)
    }

    /// Reads a catalog file; relative `file` paths are taken from the catalog's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut catalog = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for entry in &mut catalog.entries {
            if let Some(f) = &mut entry.file {
                if f.is_relative() {
                    *f = base.join(&*f);
                }
            }
        }
        Ok(catalog)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes")
    }

    /// Replaces the seed of the `k`-th randomized entry by `seed + k`.
    pub fn with_seed_override(&self, seed: u64) -> Self {
        let mut out = self.clone();
        let mut k = 0u64;
        for entry in &mut out.entries {
            if let Some(g) = &mut entry.generator {
                if g.seed().is_some() {
                    *g = g.with_seed(seed.wrapping_add(k));
                    k += 1;
                }
            }
        }
        out
    }

    /// Complete complexes `K_n^d` (`d <= 3`, `n <= 8`), cross-polytope
    /// boundaries (`d <= 3`), complete multipartite graphs, cycles, ten
    /// random regular graphs and twenty random pure 2-complexes.
    pub fn default_catalog() -> Self {
        let mut specs = Vec::new();
        for n in 2..=8 {
            for d in 1..=3usize.min(n - 1) {
                specs.push(GeneratorSpec::CompleteComplex { n, d });
            }
        }
        for d in 1..=3 {
            specs.push(GeneratorSpec::CrosspolytopeBoundary { d });
        }
        for parts in [
            vec![2, 2],
            vec![3, 3],
            vec![4, 4],
            vec![2, 2, 2],
            vec![3, 3, 3],
            vec![2, 2, 2, 2],
            vec![1, 2, 3],
            vec![2, 4],
        ] {
            specs.push(GeneratorSpec::CompleteMultipartite { parts });
        }
        for n in 3..=10 {
            specs.push(GeneratorSpec::CycleGraph { n });
        }
        specs.extend(random_regular_specs());
        specs.extend(random_pure_specs());
        Catalog {
            entries: specs.into_iter().map(CatalogEntry::generator).collect(),
        }
    }
}

/// The ten seeded `k`-regular graphs of the default catalog, `n <= 12`.
pub fn random_regular_specs() -> Vec<GeneratorSpec> {
    [
        (6, 3),
        (8, 3),
        (10, 3),
        (12, 3),
        (7, 4),
        (9, 4),
        (11, 4),
        (12, 5),
        (10, 4),
        (12, 4),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, (n, k))| GeneratorSpec::RandomRegularGraph {
        n,
        k,
        seed: 1000 + i as u64,
    })
    .collect()
}

/// The twenty seeded random pure 2-complexes of the default catalog, `n <= 10`.
pub fn random_pure_specs() -> Vec<GeneratorSpec> {
    (0..20u64)
        .map(|i| GeneratorSpec::RandomPure {
            n: 6 + (i % 5) as usize,
            d: 2,
            p: 0.5,
            seed: 1 + i,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub cap: usize,
    pub tolerance: f64,
    pub skip_invariants: bool,
    pub jobs: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_SEARCH_CAP,
            tolerance: DEFAULT_TOLERANCE,
            skip_invariants: false,
            jobs: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    /// Every check ran and passed.
    Passed,
    /// Checks that ran passed; the exact-oracle checks were skipped.
    Partial,
    /// Some check failed.
    Failed,
    /// The entry could not be loaded.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub position: usize,
    pub name: String,
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub regular: Option<bool>,
    pub status: EntryStatus,
    /// e.g. `main-hd i` = i_upper - i_d, `main-hd chi` = χ_d - chi_lower
    pub margins: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub violations: Vec<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub entries: Vec<EntryOutcome>,
}

impl CatalogSummary {
    /// 0 when every check passes, 1 on a violation, 2 when an entry failed to load.
    pub fn exit_code(&self) -> i32 {
        if self.entries.iter().any(|e| e.status == EntryStatus::Error) {
            2
        } else if self.entries.iter().any(|e| e.status == EntryStatus::Failed) {
            1
        } else {
            0
        }
    }

    pub fn count(&self, status: EntryStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>4}  {:<44} {:>3} {:>3} {:>7}  {:<8} {:>14} {:>14}",
            "#", "entry", "n", "dim", "regular", "status", "main-hd i", "min margin"
        );
        for e in &self.entries {
            let opt = |v: Option<usize>| v.map_or("-".into(), |x| x.to_string());
            let main = e
                .margins
                .get("main-hd i")
                .map_or("-".into(), |m| format!("{m:.9}"));
            let min = e
                .margins
                .values()
                .copied()
                .reduce(f64::min)
                .map_or("-".into(), |m| format!("{m:.9}"));
            let _ = writeln!(
                out,
                "{:>4}  {:<44} {:>3} {:>3} {:>7}  {:<8} {:>14} {:>14}",
                e.position + 1,
                truncate(&e.name, 44),
                opt(e.n),
                opt(e.dim),
                e.regular.map_or("-".into(), |r| r.to_string()),
                format!("{:?}", e.status).to_lowercase(),
                main,
                min
            );
            for w in &e.warnings {
                let _ = writeln!(out, "        warning: {w}");
            }
            for v in &e.violations {
                let _ = writeln!(out, "        VIOLATION: {v}");
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "        error: {err}");
            }
        }
        let _ = writeln!(
            out,
            "{} entries: {} passed, {} partial, {} failed, {} errors",
            self.entries.len(),
            self.count(EntryStatus::Passed),
            self.count(EntryStatus::Partial),
            self.count(EntryStatus::Failed),
            self.count(EntryStatus::Error)
        );
        out
    }
}

fn truncate(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        s.chars().take(width - 1).chain(['~']).collect()
    }
}

/// Runs [`check_complex`] on every entry, in parallel, keeping catalog order.
pub fn verify_catalog(catalog: &Catalog, options: &VerifyOptions) -> CatalogSummary {
    let entries = with_jobs(options.jobs, || {
        catalog
            .entries
            .par_iter()
            .enumerate()
            .map(|(position, entry)| {
                let name = entry.display_name();
                match entry.load() {
                    Ok(file) => {
                        let mut outcome = check_complex(&file.complex, options);
                        outcome.position = position;
                        outcome.name = name;
                        outcome
                    }
                    Err(e) => load_failure(position, name, e),
                }
            })
            .collect()
    });
    CatalogSummary { entries }
}

fn load_failure(position: usize, name: String, e: Error) -> EntryOutcome {
    let closure = matches!(e, Error::OpenFace { .. } | Error::NotClosed { .. });
    EntryOutcome {
        position,
        name,
        n: None,
        dim: None,
        regular: None,
        status: if closure {
            EntryStatus::Failed
        } else {
            EntryStatus::Error
        },
        margins: BTreeMap::new(),
        warnings: Vec::new(),
        violations: if closure {
            vec![format!("closure violation: {e}")]
        } else {
            Vec::new()
        },
        error: (!closure).then(|| e.to_string()),
    }
}

/// Every structural, algebraic, spectral and bound check that applies to `complex`.
pub fn check_complex(complex: &SimplicialComplex, options: &VerifyOptions) -> EntryOutcome {
    let mut out = EntryOutcome {
        position: 0,
        name: String::new(),
        n: Some(complex.vertex_count()),
        dim: complex.dim(),
        regular: None,
        status: EntryStatus::Passed,
        margins: BTreeMap::new(),
        warnings: Vec::new(),
        violations: Vec::new(),
        error: None,
    };
    let Some(d) = complex.dim() else {
        out.status = EntryStatus::Error;
        out.error = Some(Error::EmptyComplex.to_string());
        return out;
    };
    if let Err(e) = complex.validate() {
        out.violations.push(format!("structure: {e}"));
    }
    let profile = complex.regularity_profile();
    out.regular = Some(profile.is_regular);

    cochain_checks(complex, d, &mut out.violations);
    let lambdas = spectral_checks(complex, d, options.tolerance, &mut out.violations);

    if let (Some(ks), Some(lambdas)) = (profile.regular_degrees(), &lambdas) {
        for (j, (&k, &lam)) in ks.iter().zip(lambdas).enumerate() {
            let floor = (k + j + 1) as f64;
            out.margins
                .insert(format!("lambda_max_{j} - (k_{j}+{})", j + 1), lam - floor);
            if lam < floor - SPECTRAL_MATCH_TOLERANCE {
                out.violations.push(format!(
                    "lambda_max^{j} = {lam} < k_{j} + {} = {floor}",
                    j + 1
                ));
            }
        }
    }

    let (mut bounds, _) = applicable_bounds(complex, Some(1));
    for b in &bounds {
        if b.bound_name == BoundName::MainHd {
            let (p, q) = (b.input("P").unwrap_or(0.0), b.input("Q").unwrap_or(0.0));
            if p - q <= 0.0 {
                out.violations
                    .push(format!("main-hd: P - Q = {} is not positive", p - q));
            }
        }
    }

    let mut oracle_checked = false;
    if options.skip_invariants {
        out.warnings
            .push("exact invariants skipped on request".into());
    } else if d == 0 {
        // no j-faces with j >= 1
    } else if complex.vertex_count() > options.cap {
        out.warnings.push(format!(
            "{} vertices exceed the oracle cap {}; exact checks skipped",
            complex.vertex_count(),
            options.cap
        ));
    } else {
        let config = OracleConfig { cap: options.cap };
        match (1..=d)
            .map(|j| exact_invariants(complex, j, &config))
            .collect::<Result<Vec<_>>>()
        {
            Err(e @ Error::SearchCap { .. }) => {
                out.warnings.push(format!("exact checks skipped: {e}"))
            }
            Err(e) => out.violations.push(format!("exact invariants: {e}")),
            Ok(table) => {
                oracle_checked = true;
                match counting_report_from(complex, &table, &config) {
                    Ok(report) => out.violations.extend(
                        report
                            .violations
                            .into_iter()
                            .map(|v| format!("counting: {v}")),
                    ),
                    Err(e) => out.violations.push(format!("counting: {e}")),
                }
                let top = &table[d - 1];
                for b in &mut bounds {
                    b.attach_oracles(Some(top.independence), Some(top.chromatic));
                    let name = b.bound_name;
                    out.margins
                        .insert(format!("{name} i"), b.i_upper - top.independence as f64);
                    if let ChiLower::Finite(lo) = b.chi_lower {
                        out.margins
                            .insert(format!("{name} chi"), top.chromatic as f64 - lo);
                    }
                    if let Some(lit) = b.input("literal_i_upper") {
                        let gap = lit - top.independence as f64;
                        out.margins.insert(format!("{name} literal i"), gap);
                    }
                    if b.holds == Some(false) {
                        let mut msg = format!(
                            "{name}: i_{d} = {}, chi_{d} = {} against i_upper = {}, chi_lower = {:?}",
                            top.independence, top.chromatic, b.i_upper, b.chi_lower
                        );
                        if let Some(lit) = b.input("literal_i_upper") {
                            let _ = write!(msg, " (literal variant i_upper = {lit})");
                        }
                        out.violations.push(msg);
                    }
                }
                if profile.is_regular {
                    match proof_diagnostics(complex, &top.independent_set.vertex_set) {
                        Ok(diag) => {
                            if let Some(m) = diag.min_margin() {
                                out.margins.insert("diagnostics threshold".into(), m);
                            }
                            out.violations.extend(
                                diag.violations
                                    .into_iter()
                                    .map(|v| format!("diagnostics: {v}")),
                            );
                        }
                        Err(e) => out.violations.push(format!("diagnostics: {e}")),
                    }
                }
            }
        }
    }

    out.status = if !out.violations.is_empty() {
        EntryStatus::Failed
    } else if oracle_checked || d == 0 {
        EntryStatus::Passed
    } else {
        EntryStatus::Partial
    };
    out
}

fn cochain_checks(complex: &SimplicialComplex, d: usize, violations: &mut Vec<String>) {
    for j in 0..d {
        let (Ok(delta), Ok(partial)) = (coboundary_matrix(complex, j), boundary_matrix(complex, j))
        else {
            violations.push(format!("coboundary at j={j} could not be built"));
            continue;
        };
        if partial.to_dense() != delta.to_dense().transpose() {
            violations.push(format!(
                "boundary at j={j} is not the transpose of the coboundary"
            ));
        }
        if j + 1 < d {
            match coboundary_matrix(complex, j + 1).and_then(|next| next.product(&delta)) {
                Ok(m) if m.iter().all(|&x| x == 0) => {}
                Ok(_) => violations.push(format!("delta_{} * delta_{j} != 0", j + 1)),
                Err(e) => violations.push(format!("delta_{} * delta_{j}: {e}", j + 1)),
            }
        }
    }
}

/// Returns `λ_max^j` for `j < d` when every spectrum could be computed.
fn spectral_checks(
    complex: &SimplicialComplex,
    d: usize,
    tolerance: f64,
    violations: &mut Vec<String>,
) -> Option<Vec<f64>> {
    let mut lambdas = Vec::with_capacity(d);
    let mut ok = true;
    for j in 0..d {
        let upper = match spectrum_with_tolerance(complex, j, OperatorKind::Upper, tolerance) {
            Ok(s) => s,
            Err(e) => {
                violations.push(format!("upper spectrum j={j}: {e}"));
                ok = false;
                continue;
            }
        };
        lambdas.push(upper.lambda_max().unwrap_or(0.0));
        if j + 1 < d {
            match spectrum_with_tolerance(complex, j + 1, OperatorKind::Lower, tolerance) {
                Ok(lower) => {
                    let (a, b) = (upper.nonzero(), lower.nonzero());
                    let scale = upper.lambda_max().unwrap_or(0.0).max(1.0);
                    if a.len() != b.len()
                        || a.iter()
                            .zip(&b)
                            .any(|(x, y)| (x - y).abs() > SPECTRAL_MATCH_TOLERANCE * scale)
                    {
                        violations.push(format!(
                            "nonzero spectra of the upper operator at j={j} and the lower operator at j={} differ",
                            j + 1
                        ));
                    }
                }
                Err(e) => violations.push(format!("lower spectrum j={}: {e}", j + 1)),
            }
        }
    }
    ok.then_some(lambdas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_toml_round_trip() {
        let c = Catalog::default_catalog();
        assert_eq!(Catalog::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = Catalog::parse("[[entry]]\ngenerator = { kind = \"complete_complex\", n = 4 }\n")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let both = "[[entry]]\nfile = \"x\"\ngenerator = { kind = \"cycle_graph\", n = 4 }\n";
        assert!(matches!(Catalog::parse(both), Err(Error::Parameter(_))));
    }

    #[test]
    fn seed_override_touches_only_random_entries() {
        let c = Catalog::default_catalog().with_seed_override(500);
        let seeds: Vec<u64> = c
            .entries
            .iter()
            .filter_map(|e| e.generator.as_ref().and_then(GeneratorSpec::seed))
            .collect();
        assert_eq!(seeds, (500..530).collect::<Vec<_>>());
        assert_eq!(c.entries[0], Catalog::default_catalog().entries[0]);
    }

    #[test]
    fn small_catalog_passes() {
        let c = Catalog::parse(
            "[[entry]]\ngenerator = { kind = \"complete_complex\", n = 5, d = 2 }\n\
             [[entry]]\ngenerator = { kind = \"crosspolytope_boundary\", d = 2 }\n\
             [[entry]]\ngenerator = { kind = \"random_pure\", n = 7, d = 2, p = 0.5, seed = 7 }\n",
        )
        .unwrap();
        let s = verify_catalog(&c, &VerifyOptions::default());
        assert_eq!(s.exit_code(), 0, "{}", s.render_table());
        assert!((s.entries[0].margins["main-hd i"]).abs() < 1e-9);
        // octahedron: i_2 = 4 against 26/36 * 6
        assert!((s.entries[1].margins["main-hd i"] - (26.0 / 6.0 - 4.0)).abs() < 1e-9);
    }

    #[test]
    fn over_cap_entries_are_partial() {
        let c = Catalog {
            entries: vec![CatalogEntry::generator(GeneratorSpec::CompleteComplex {
                n: 6,
                d: 2,
            })],
        };
        let s = verify_catalog(
            &c,
            &VerifyOptions {
                cap: 5,
                ..VerifyOptions::default()
            },
        );
        assert_eq!(s.entries[0].status, EntryStatus::Partial);
        assert_eq!(s.exit_code(), 0);
        assert!(!s.entries[0].warnings.is_empty());
    }
}
