//! Spectra of the upper, lower and full Laplacians.
//!
//! Laplacian matrices are assembled as integer Gram products of coboundary
//! matrices (`Δ_j^+ = δ_jᵀ δ_j`, `Δ_j^- = δ_{j-1} δ_{j-1}ᵀ`) and only then
//! handed to a dense symmetric eigensolver.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{coboundary_matrix, inner_product};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Upper,
    Lower,
    Full,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Upper => "upper",
            OperatorKind::Lower => "lower",
            OperatorKind::Full => "full",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "up" | "+" => Ok(OperatorKind::Upper),
            "lower" | "down" | "-" => Ok(OperatorKind::Lower),
            "full" | "hodge" => Ok(OperatorKind::Full),
            other => Err(Error::Parameter(format!(
                "unknown operator kind {other:?} (expected upper, lower or full)"
            ))),
        }
    }
}

/// Ascending eigenvalues of a Laplacian on `C^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub kind: OperatorKind,
    pub j: usize,
    pub tolerance: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn lambda_max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// Eigenvalues above `tolerance · max(1, λ_max)`.
    pub fn nonzero(&self) -> Vec<f64> {
        let cutoff = self.tolerance * self.lambda_max().unwrap_or(0.0).max(1.0);
        self.eigenvalues
            .iter()
            .copied()
            .filter(|&x| x > cutoff)
            .collect()
    }
}

fn top_dim(complex: &SimplicialComplex) -> Result<usize> {
    complex.dim().ok_or(Error::EmptyComplex)
}

/// `Δ_j^+ = ∂_j δ_j` on `C^j`, for `0 <= j <= dim - 1`.
pub fn upper_laplacian_matrix(complex: &SimplicialComplex, j: usize) -> Result<DMatrix<i64>> {
    Ok(coboundary_matrix(complex, j)?.gram())
}

/// `Δ_j^- = δ_{j-1} ∂_{j-1}` on `C^j`, for `1 <= j <= dim`.
pub fn lower_laplacian_matrix(complex: &SimplicialComplex, j: usize) -> Result<DMatrix<i64>> {
    if j == 0 {
        return Err(Error::Dimension("the lower Laplacian needs j >= 1".into()));
    }
    Ok(coboundary_matrix(complex, j - 1)?.outer_gram())
}

pub fn laplacian_matrix(
    complex: &SimplicialComplex,
    j: usize,
    kind: OperatorKind,
) -> Result<DMatrix<i64>> {
    match kind {
        OperatorKind::Upper => upper_laplacian_matrix(complex, j),
        OperatorKind::Lower => lower_laplacian_matrix(complex, j),
        OperatorKind::Full => {
            let d = top_dim(complex)?;
            if j > d {
                return Err(Error::Dimension(format!(
                    "the full Laplacian needs j <= dim = {d}, got {j}"
                )));
            }
            let size = complex.face_count(j);
            let mut m = DMatrix::zeros(size, size);
            if j < d {
                m += upper_laplacian_matrix(complex, j)?;
            }
            if j >= 1 {
                m += lower_laplacian_matrix(complex, j)?;
            }
            Ok(m)
        }
    }
}

/// Largest absolute entry, floored at 1; the scale for tolerance checks.
pub fn max_norm(m: &DMatrix<i64>) -> f64 {
    m.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0).max(1) as f64
}

/// Full ascending eigenvalue list of a symmetric positive semi-definite
/// integer matrix, with every eigenpair residual and the PSD property
/// checked against `tolerance · max_norm(m)`.
pub fn psd_eigenvalues(m: &DMatrix<i64>, tolerance: f64) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension("eigenvalues need a square matrix".into()));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    if m != &m.transpose() {
        return Err(Error::Numerical("matrix is not symmetric".into()));
    }
    let scale = max_norm(m);
    let a: DMatrix<f64> = m.map(|v| v as f64);
    let eig = SymmetricEigen::new(a.clone());
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        let residual = (&a * v - v * lambda).norm();
        if residual > tolerance * scale {
            return Err(Error::Numerical(format!(
                "eigenpair residual {residual:e} exceeds {:e}",
                tolerance * scale
            )));
        }
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    if values[0] < -tolerance * scale {
        return Err(Error::Numerical(format!(
            "smallest eigenvalue {} is below -{:e}: not positive semi-definite",
            values[0],
            tolerance * scale
        )));
    }
    Ok(values)
}

pub fn spectrum(complex: &SimplicialComplex, j: usize, kind: OperatorKind) -> Result<Spectrum> {
    spectrum_with_tolerance(complex, j, kind, DEFAULT_TOLERANCE)
}

pub fn spectrum_with_tolerance(
    complex: &SimplicialComplex,
    j: usize,
    kind: OperatorKind,
    tolerance: f64,
) -> Result<Spectrum> {
    let m = laplacian_matrix(complex, j, kind)?;
    Ok(Spectrum {
        eigenvalues: psd_eigenvalues(&m, tolerance)?,
        kind,
        j,
        tolerance,
    })
}

/// `λ_max^j`, the largest eigenvalue of `Δ_j^+`.
pub fn lambda_max(complex: &SimplicialComplex, j: usize) -> Result<f64> {
    let s = spectrum(complex, j, OperatorKind::Upper)?;
    s.lambda_max()
        .ok_or_else(|| Error::Dimension(format!("C^{j} is zero-dimensional")))
}

/// Runs `f` on a pool of `jobs` threads, or on rayon's global pool for `None`.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
    }
}

/// `λ_max^j` for every `j = 0..dim-1`, solved concurrently.
pub fn lambda_max_all(complex: &SimplicialComplex, jobs: Option<usize>) -> Result<Vec<f64>> {
    let d = top_dim(complex)?;
    with_jobs(jobs, || {
        (0..d)
            .into_par_iter()
            .map(|j| lambda_max(complex, j))
            .collect()
    })
}

/// `max_{F ∈ X^{j-1}} λ_max^j(St(F))` for `1 <= j <= dim - 1`: the largest
/// `j`-th upper eigenvalue over stars of `(j-1)`-faces.
pub fn star_lambda_max(complex: &SimplicialComplex, j: usize, jobs: Option<usize>) -> Result<f64> {
    if j == 0 {
        return Err(Error::Dimension("star spectra need j >= 1".into()));
    }
    star_lambda_max_over(complex, j - 1, j, jobs)
}

/// `max_{F ∈ X^face_dim} λ_max^j(St(F))`, one eigensolve per star.
pub fn star_lambda_max_over(
    complex: &SimplicialComplex,
    face_dim: usize,
    j: usize,
    jobs: Option<usize>,
) -> Result<f64> {
    let d = top_dim(complex)?;
    if j >= d {
        return Err(Error::Dimension(format!(
            "star spectra need j <= dim - 1 = {}",
            d as isize - 1
        )));
    }
    let values: Vec<f64> = with_jobs(jobs, || {
        complex
            .faces(face_dim)
            .par_iter()
            .map(|f| {
                let star = complex.star(f)?;
                // A star without (j+1)-faces has a zero operator.
                if star.dim().is_some_and(|sd| sd > j) {
                    lambda_max(&star, j)
                } else {
                    Ok(0.0)
                }
            })
            .collect::<Result<_>>()
    })?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// `⟨Δ_j^+ f, f⟩ / ⟨f, f⟩ = ⟨δ_j f, δ_j f⟩ / ⟨f, f⟩`.
pub fn rayleigh_quotient(complex: &SimplicialComplex, j: usize, f: &[f64]) -> Result<f64> {
    let delta = coboundary_matrix(complex, j)?;
    let df = delta.apply_f64(f)?;
    let norm = inner_product(f, f)?;
    if norm == 0.0 {
        return Err(Error::Parameter(
            "Rayleigh quotient of the zero cochain".into(),
        ));
    }
    Ok(inner_product(&df, &df)? / norm)
}
