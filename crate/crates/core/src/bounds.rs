//! Hoffman-type spectral bounds on the top independence number and the
//! matching lower bounds on the top chromatic number.
//!
//! Every bound here has the shape
//!
//! ```text
//! i_d(X) <= (P - Q) / P * n,        χ_d(X) >= P / (P - Q)
//! ```
//!
//! where `P` is a product of largest upper-Laplacian eigenvalues and `Q` the
//! degree product `(k_0 + 1)(k_1 + 2)…(k_{d-2} + d - 1) k_{d-1}`.
//! [`proof_diagnostics`] evaluates the intermediate face counts behind the
//! regular-complex bound for a concrete independent set.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::invariants::{chromatic_number, independence_number, OracleConfig};
use crate::spectra::{lambda_max, lambda_max_all, star_lambda_max, star_lambda_max_over};

/// Slack used when comparing a real bound against an integer oracle.
pub const ORACLE_SLACK: f64 = 1e-9;
/// Relative slack for the face-count diagnostics.
pub const DIAGNOSTIC_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundName {
    HoffmanGraph,
    MainHd,
    Local,
    CompleteSkeleton,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::HoffmanGraph => "hoffman-graph",
            BoundName::MainHd => "main-hd",
            BoundName::Local => "local",
            BoundName::CompleteSkeleton => "complete-skeleton",
        })
    }
}

/// The chromatic lower bound; `Infinite` when `P - Q` vanishes or goes negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum ChiLower {
    Finite(f64),
    Infinite,
}

impl ChiLower {
    fn from_products(p: f64, q: f64) -> Self {
        if p - q <= ORACLE_SLACK * p.abs() {
            ChiLower::Infinite
        } else {
            ChiLower::Finite(p / (p - q))
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            ChiLower::Finite(v) => Some(v),
            ChiLower::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub bound_name: BoundName,
    pub n: usize,
    /// The `j` of the bounded `i_j` / `χ_j`; always the top dimension.
    pub target_dim: usize,
    pub i_upper: f64,
    pub chi_lower: ChiLower,
    /// Named inputs: `n`, `lambda_max_j`, `Lambda_j`, `k_j`, `P`, `Q`, …
    pub inputs: BTreeMap<String, f64>,
    pub exact_i: Option<usize>,
    pub exact_chi: Option<usize>,
    pub holds: Option<bool>,
}

impl BoundReport {
    fn from_products(
        bound_name: BoundName,
        n: usize,
        target_dim: usize,
        p: f64,
        q: f64,
        mut inputs: BTreeMap<String, f64>,
    ) -> Self {
        inputs.insert("n".into(), n as f64);
        inputs.insert("P".into(), p);
        inputs.insert("Q".into(), q);
        BoundReport {
            bound_name,
            n,
            target_dim,
            i_upper: (p - q) / p * n as f64,
            chi_lower: ChiLower::from_products(p, q),
            inputs,
            exact_i: None,
            exact_chi: None,
            holds: None,
        }
    }

    pub fn input(&self, name: &str) -> Option<f64> {
        self.inputs.get(name).copied()
    }

    /// Largest integer the bound allows for `i_d`.
    pub fn i_upper_floor(&self) -> i64 {
        (self.i_upper + ORACLE_SLACK).floor() as i64
    }

    /// Smallest integer the bound allows for `χ_d`, `None` when infinite.
    pub fn chi_lower_ceil(&self) -> Option<i64> {
        self.chi_lower
            .value()
            .map(|v| (v - ORACLE_SLACK).ceil() as i64)
    }

    /// Records exact values and whether the bound respects them.
    pub fn attach_oracles(&mut self, exact_i: Option<usize>, exact_chi: Option<usize>) {
        self.exact_i = exact_i;
        self.exact_chi = exact_chi;
        let i_ok = exact_i.map(|i| i as i64 <= self.i_upper_floor());
        let chi_ok = exact_chi.map(|c| match self.chi_lower_ceil() {
            Some(lo) => c as i64 >= lo,
            None => false,
        });
        self.holds = match (i_ok, chi_ok) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(true) && b.unwrap_or(true)),
        };
    }

    /// Computes `i_d` and `χ_d` exactly and attaches them.
    pub fn check_against_oracles(
        &mut self,
        complex: &SimplicialComplex,
        config: &OracleConfig,
    ) -> Result<()> {
        let (i, _) = independence_number(complex, self.target_dim, config)?;
        let (chi, _) = chromatic_number(complex, self.target_dim, config)?;
        self.attach_oracles(Some(i), Some(chi));
        Ok(())
    }

    /// `i_upper - exact_i`, when the oracle is attached.
    pub fn margin(&self) -> Option<f64> {
        self.exact_i.map(|i| self.i_upper - i as f64)
    }
}

/// `(k_0 + 1)(k_1 + 2)…(k_{d-2} + d - 1) · k_{d-1}` for `ks = [k_0, …, k_{d-1}]`.
pub fn degree_product(ks: &[usize]) -> f64 {
    match ks.split_last() {
        None => 1.0,
        Some((&top, rest)) => {
            rest.iter()
                .enumerate()
                .map(|(j, &k)| (k + j + 1) as f64)
                .product::<f64>()
                * top as f64
        }
    }
}

fn top_dim(complex: &SimplicialComplex, bound: &'static str) -> Result<usize> {
    match complex.dim() {
        None => Err(Error::EmptyComplex),
        Some(0) => Err(Error::Dimension(format!("{bound} needs dim >= 1"))),
        Some(d) => Ok(d),
    }
}

fn regular_degrees(complex: &SimplicialComplex, bound: &'static str) -> Result<Vec<usize>> {
    let profile = complex.regularity_profile();
    profile
        .regular_degrees()
        .map(<[usize]>::to_vec)
        .ok_or_else(|| {
            Error::precondition(
                bound,
                format!(
                    "complex is not regular (degree ranges {:?} .. {:?})",
                    profile.degrees_min, profile.degrees_max
                ),
            )
        })
}

fn record(inputs: &mut BTreeMap<String, f64>, prefix: &str, values: impl IntoIterator<Item = f64>) {
    for (j, v) in values.into_iter().enumerate() {
        inputs.insert(format!("{prefix}_{j}"), v);
    }
}

/// The graph bound `i <= (λ_max - k) / λ_max · n` for a `k`-regular graph.
pub fn hoffman_graph_bound(complex: &SimplicialComplex) -> Result<BoundReport> {
    const NAME: &str = "hoffman-graph";
    if top_dim(complex, NAME)? != 1 {
        return Err(Error::precondition(
            NAME,
            "the complex is not a graph (dim != 1)",
        ));
    }
    let ks = regular_degrees(complex, NAME)?;
    let lambda = lambda_max(complex, 0)?;
    let mut inputs = BTreeMap::new();
    record(&mut inputs, "k", ks.iter().map(|&k| k as f64));
    inputs.insert("lambda_max_0".into(), lambda);
    Ok(BoundReport::from_products(
        BoundName::HoffmanGraph,
        complex.vertex_count(),
        1,
        lambda,
        ks[0] as f64,
        inputs,
    ))
}

/// The bound for `(k_0, …, k_{d-1})`-regular complexes with
/// `P = λ_max^0 ⋯ λ_max^{d-1}`. Reduces to [`hoffman_graph_bound`] at `d = 1`.
pub fn main_hd_bound(complex: &SimplicialComplex) -> Result<BoundReport> {
    main_hd_bound_with_jobs(complex, None)
}

pub fn main_hd_bound_with_jobs(
    complex: &SimplicialComplex,
    jobs: Option<usize>,
) -> Result<BoundReport> {
    const NAME: &str = "main-hd";
    let d = top_dim(complex, NAME)?;
    let ks = regular_degrees(complex, NAME)?;
    let lambdas = lambda_max_all(complex, jobs)?;
    let p: f64 = lambdas.iter().product();
    let q = degree_product(&ks);
    let mut inputs = BTreeMap::new();
    record(&mut inputs, "k", ks.iter().map(|&k| k as f64));
    record(&mut inputs, "lambda_max", lambdas.iter().copied());
    Ok(BoundReport::from_products(
        BoundName::MainHd,
        complex.vertex_count(),
        d,
        p,
        q,
        inputs,
    ))
}

/// The star version for pure complexes of dimension `d >= 2`:
/// `P_loc = λ_max^0 · Λ_1 ⋯ Λ_{d-1}` with `Λ_j` the largest `λ_max^j` over
/// stars of `(j-1)`-faces, and `k_j` the minimum `j`-face degree.
///
/// `i_upper` uses `P_loc` in both numerator and denominator. Also recorded
/// in the inputs:
/// - `literal_i_upper` / `literal_chi_lower` (or `literal_chi_degenerate = 1`):
///   the variant whose denominator is `λ_max^0 · Λ_2 ⋯ Λ_{d-1}`;
/// - `Lambda_j_jface` and `jface_i_upper`: `Λ_j` taken over stars of
///   `j`-faces instead, and the resulting `i_upper`. This variant is not
///   sound in general; the octahedron has `jface_i_upper = 3.5 < i_2 = 4`.
pub fn local_bound(complex: &SimplicialComplex) -> Result<BoundReport> {
    local_bound_with_jobs(complex, None)
}

pub fn local_bound_with_jobs(
    complex: &SimplicialComplex,
    jobs: Option<usize>,
) -> Result<BoundReport> {
    const NAME: &str = "local";
    let d = top_dim(complex, NAME)?;
    if d < 2 {
        return Err(Error::precondition(
            NAME,
            "needs dim >= 2; use the graph bound at dim 1",
        ));
    }
    let profile = complex.regularity_profile();
    if !profile.is_pure {
        return Err(Error::precondition(NAME, "complex is not pure"));
    }
    let ks = profile.degrees_min;
    let lambda0 = lambda_max(complex, 0)?;
    let stars: Vec<f64> = (1..d)
        .map(|j| star_lambda_max(complex, j, jobs))
        .collect::<Result<_>>()?;
    let p = lambda0 * stars.iter().product::<f64>();
    let q = degree_product(&ks);
    let n = complex.vertex_count();

    let mut inputs = BTreeMap::new();
    record(&mut inputs, "k", ks.iter().map(|&k| k as f64));
    inputs.insert("lambda_max_0".into(), lambda0);
    for (j, v) in stars.iter().enumerate() {
        inputs.insert(format!("Lambda_{}", j + 1), *v);
    }
    let jface_stars: Vec<f64> = (1..d)
        .map(|j| star_lambda_max_over(complex, j, j, jobs))
        .collect::<Result<_>>()?;
    for (j, v) in jface_stars.iter().enumerate() {
        inputs.insert(format!("Lambda_{}_jface", j + 1), *v);
    }
    let p_jface = lambda0 * jface_stars.iter().product::<f64>();
    inputs.insert("jface_i_upper".into(), (p_jface - q) / p_jface * n as f64);
    let literal_denominator = lambda0 * stars[1..].iter().product::<f64>();
    inputs.insert("literal_denominator".into(), literal_denominator);
    inputs.insert(
        "literal_i_upper".into(),
        (p - q) / literal_denominator * n as f64,
    );
    match ChiLower::from_products(literal_denominator, q) {
        ChiLower::Finite(v) => inputs.insert("literal_chi_lower".into(), v),
        ChiLower::Infinite => inputs.insert("literal_chi_degenerate".into(), 1.0),
    };
    Ok(BoundReport::from_products(
        BoundName::Local,
        n,
        d,
        p,
        q,
        inputs,
    ))
}

/// The bound for complexes with complete `(d-1)`-skeleton whose `(d-1)`-faces
/// all have degree `k_{d-1} >= 1`: `i_d <= (λ_max^{d-1} - k_{d-1}) / λ_max^{d-1} · n`.
///
/// Also confirms that such a complex has `k_j = n - (j+1)` and
/// `λ_max^j = n` for every `j <= d - 2`.
pub fn complete_skeleton_bound(complex: &SimplicialComplex) -> Result<BoundReport> {
    const NAME: &str = "complete-skeleton";
    let d = top_dim(complex, NAME)?;
    let n = complex.vertex_count();
    let expected = binomial(n, d);
    if complex.face_count(d - 1) != expected {
        return Err(Error::precondition(
            NAME,
            format!(
                "(d-1)-skeleton is incomplete: {} of {expected} {}-faces",
                complex.face_count(d - 1),
                d - 1
            ),
        ));
    }
    let top = complex.degrees(d - 1);
    let k = top[0];
    if k == 0 || top.iter().any(|&x| x != k) {
        return Err(Error::precondition(
            NAME,
            "(d-1)-faces do not share one positive degree",
        ));
    }
    let mut inputs = BTreeMap::new();
    for j in 0..d.saturating_sub(1) {
        let want = n - (j + 1);
        if complex.degrees(j).iter().any(|&x| x != want) {
            return Err(Error::Numerical(format!(
                "complete skeleton but some {j}-face degree differs from n - (j+1) = {want}"
            )));
        }
        let lam = lambda_max(complex, j)?;
        if (lam - n as f64).abs() > DIAGNOSTIC_TOLERANCE * n as f64 {
            return Err(Error::Numerical(format!(
                "complete skeleton but lambda_max^{j} = {lam} differs from n = {n}"
            )));
        }
        inputs.insert(format!("k_{j}"), want as f64);
        inputs.insert(format!("lambda_max_{j}"), lam);
    }
    let lam_top = lambda_max(complex, d - 1)?;
    inputs.insert(format!("k_{}", d - 1), k as f64);
    inputs.insert(format!("lambda_max_{}", d - 1), lam_top);
    Ok(BoundReport::from_products(
        BoundName::CompleteSkeleton,
        n,
        d,
        lam_top,
        k as f64,
        inputs,
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Every bound whose preconditions hold, plus the reasons the others were skipped.
pub fn applicable_bounds(
    complex: &SimplicialComplex,
    jobs: Option<usize>,
) -> (Vec<BoundReport>, Vec<(BoundName, String)>) {
    let attempts: [(BoundName, Result<BoundReport>); 4] = [
        (BoundName::HoffmanGraph, hoffman_graph_bound(complex)),
        (BoundName::MainHd, main_hd_bound_with_jobs(complex, jobs)),
        (BoundName::Local, local_bound_with_jobs(complex, jobs)),
        (
            BoundName::CompleteSkeleton,
            complete_skeleton_bound(complex),
        ),
    ];
    let mut ok = Vec::new();
    let mut skipped = Vec::new();
    for (name, r) in attempts {
        match r {
            Ok(report) => ok.push(report),
            Err(e) => skipped.push((name, e.to_string())),
        }
    }
    (ok, skipped)
}

/// Counts for one face `F` lying inside the independent set `I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceDiagnostic {
    pub j: usize,
    pub face: Face,
    /// `k_j^I(F) = |X^{j+1}(F, I)|`
    pub k_inside: usize,
    /// `k_j^C(F) = |X^{j+1}(F, C)|`
    pub k_outside: usize,
    /// `(j+2)`-faces containing `F` whose two remaining vertices split between `I` and `C`
    pub mixed_cofaces: usize,
    /// `(k_j + j + 1)⋯(k_{d-2} + d - 1) k_{d-1} / (λ_max^{j+1} ⋯ λ_max^{d-1})`
    pub threshold: f64,
    pub margin: f64,
}

/// `lower <= |X^1(I, C)| <= upper`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSandwich {
    pub crossing_edges: usize,
    /// `λ_max^0 · (n - i) · i / n`
    pub spectral_upper: f64,
    /// `Q / (λ_max^1 ⋯ λ_max^{d-1}) · i`
    pub degree_lower: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofDiagnostics {
    pub independent_set: Vec<usize>,
    pub degrees: Vec<usize>,
    pub lambda_max: Vec<f64>,
    pub faces: Vec<FaceDiagnostic>,
    pub sandwich: Option<EdgeSandwich>,
    pub violations: Vec<String>,
}

impl ProofDiagnostics {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.faces.iter().map(|f| f.margin).reduce(f64::min)
    }
}

fn within(value: f64, limit: f64) -> bool {
    value <= limit + DIAGNOSTIC_TOLERANCE * limit.abs().max(1.0)
}

/// Evaluates the face counts `k_j^I(F)`, `k_j^C(F)` for every `j`-face `F`
/// inside the `d`-independent set `I` (`j = d-2, …, 0`), checks each
/// `k_j^C(F)` against its spectral threshold, and checks the two-sided
/// bound on the number of edges leaving `I`.
pub fn proof_diagnostics(
    complex: &SimplicialComplex,
    independent: &[usize],
) -> Result<ProofDiagnostics> {
    const NAME: &str = "proof-diagnostics";
    let d = top_dim(complex, NAME)?;
    let ks = regular_degrees(complex, NAME)?;
    let inside = complex.membership(independent);
    let mut set: Vec<usize> = complex.vertices().filter(|&v| inside[v]).collect();
    set.dedup();
    if set.len()
        != independent
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    {
        return Err(Error::precondition(
            NAME,
            "the set contains ids that are not vertices",
        ));
    }
    if let Some(face) = complex.faces_within(d, &set).first() {
        return Err(Error::precondition(
            NAME,
            format!("the set is not {d}-independent: it contains {face}"),
        ));
    }
    let outside: Vec<usize> = complex.vertices().filter(|&v| !inside[v]).collect();
    let lambdas = lambda_max_all(complex, None)?;
    let mut violations = Vec::new();
    let mut faces = Vec::new();

    for j in (0..d.saturating_sub(1)).rev() {
        let numerator: f64 =
            (j..d - 1).map(|l| (ks[l] + l + 1) as f64).product::<f64>() * ks[d - 1] as f64;
        let denominator: f64 = lambdas[j + 1..].iter().product();
        let threshold = numerator / denominator;
        for face in complex.faces_within(j, &set) {
            let k_inside = complex.cofaces_into(&face, &set)?.len();
            let k_outside = complex.cofaces_into(&face, &outside)?.len();
            let mixed_cofaces = complex
                .faces(j + 2)
                .iter()
                .filter(|h| face.is_subset_of(h))
                .filter(|h| {
                    let extra: Vec<usize> = h
                        .vertices()
                        .iter()
                        .copied()
                        .filter(|v| !face.contains_vertex(*v))
                        .collect();
                    inside[extra[0]] != inside[extra[1]]
                })
                .count();
            if k_inside + k_outside != ks[j] {
                violations.push(format!(
                    "{face}: k^I + k^C = {k_inside} + {k_outside} != k_{j} = {}",
                    ks[j]
                ));
            }
            if k_outside == 0 {
                violations.push(format!("{face}: no coface reaches the complement"));
            }
            if mixed_cofaces > k_inside * k_outside {
                violations.push(format!(
                    "{face}: {mixed_cofaces} mixed cofaces exceed k^I * k^C = {}",
                    k_inside * k_outside
                ));
            }
            if j + 2 == d && mixed_cofaces != k_inside * ks[d - 1] {
                violations.push(format!(
                    "{face}: {mixed_cofaces} mixed top faces, expected k^I * k_{} = {}",
                    d - 1,
                    k_inside * ks[d - 1]
                ));
            }
            if !within(threshold, k_outside as f64) {
                violations.push(format!(
                    "{face}: k_{j}^C = {k_outside} below threshold {threshold}"
                ));
            }
            faces.push(FaceDiagnostic {
                j,
                face,
                k_inside,
                k_outside,
                mixed_cofaces,
                threshold,
                margin: k_outside as f64 - threshold,
            });
        }
    }

    let sandwich = (!set.is_empty()).then(|| {
        let n = complex.vertex_count() as f64;
        let i = set.len() as f64;
        let crossing_edges = complex
            .faces(1)
            .iter()
            .filter(|e| inside[e.vertices()[0]] != inside[e.vertices()[1]])
            .count();
        let spectral_upper = lambdas[0] * (n - i) * i / n;
        let degree_lower = degree_product(&ks) / lambdas[1..].iter().product::<f64>() * i;
        EdgeSandwich {
            crossing_edges,
            spectral_upper,
            degree_lower,
        }
    });
    if let Some(s) = &sandwich {
        if !within(s.crossing_edges as f64, s.spectral_upper) {
            violations.push(format!(
                "{} edges leave I, above the spectral bound {}",
                s.crossing_edges, s.spectral_upper
            ));
        }
        if !within(s.degree_lower, s.crossing_edges as f64) {
            violations.push(format!(
                "{} edges leave I, below the degree bound {}",
                s.crossing_edges, s.degree_lower
            ));
        }
    }

    Ok(ProofDiagnostics {
        independent_set: set,
        degrees: ks,
        lambda_max: lambdas,
        faces,
        sandwich,
        violations,
    })
}
