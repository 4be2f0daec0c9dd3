//! Cochain spaces, coboundary and boundary matrices.
//!
//! A cochain in `C^j` is stored as one value per `j`-face, evaluated on the
//! face's ascending orientation. Incidence matrices are kept in integer
//! arithmetic; floating point only enters in [`crate::spectra`].

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// The canonical ordered basis of `C^j`.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    j: usize,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
}

impl ChainBasis {
    pub fn new(complex: &SimplicialComplex, j: usize) -> Self {
        let faces = complex.faces(j).to_vec();
        let index = faces
            .iter()
            .cloned()
            .enumerate()
            .map(|(p, f)| (f, p))
            .collect();
        ChainBasis { j, faces, index }
    }

    pub fn dim(&self) -> usize {
        self.j
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn position(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Value of the cochain `coords` on the oriented face `oriented`, whose
    /// vertex order may be any permutation of a basis face.
    pub fn evaluate(&self, coords: &[f64], oriented: &[usize]) -> Result<f64> {
        let face = Face::new(oriented.to_vec())?;
        let p = self
            .position(&face)
            .ok_or_else(|| Error::UnknownFace(face.clone()))?;
        Ok(permutation_sign(oriented) as f64 * coords[p])
    }

    /// `⟨f, g⟩` on this basis; both vectors must have one entry per face.
    pub fn inner_product(&self, f: &[f64], g: &[f64]) -> Result<f64> {
        if f.len() != self.len() || g.len() != self.len() {
            return Err(Error::Dimension(format!(
                "C^{} has dimension {}, got vectors of length {} and {}",
                self.j,
                self.len(),
                f.len(),
                g.len()
            )));
        }
        inner_product(f, g)
    }
}

/// `Σ_A f([A]) g([A])` over canonically oriented faces.
pub fn inner_product(f: &[f64], g: &[f64]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::Dimension(format!(
            "cochain lengths differ: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    Ok(f.iter().zip(g).map(|(a, b)| a * b).sum())
}

/// Sign of the permutation sorting `seq` (distinct entries) into ascending order.
pub fn permutation_sign(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for k in i + 1..seq.len() {
            if seq[i] > seq[k] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A sparse `{-1, 0, +1}` matrix stored as row-sorted triplets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i8)>,
}

impl IncidenceMatrix {
    fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i8)>) -> Self {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        IncidenceMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i8)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map(|p| self.entries[p].2)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let entries = self.entries.iter().map(|&(r, c, s)| (c, r, s)).collect();
        Self::new(self.cols, self.rows, entries)
    }

    pub fn row_nnz(&self, row: usize) -> usize {
        self.entries.iter().filter(|e| e.0 == row).count()
    }

    pub fn col_nnz(&self, col: usize) -> usize {
        self.entries.iter().filter(|e| e.1 == col).count()
    }

    pub fn to_dense(&self) -> DMatrix<i64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for &(r, c, s) in &self.entries {
            m[(r, c)] = s as i64;
        }
        m
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x.len())?;
        let mut y = vec![0i64; self.rows];
        for &(r, c, s) in &self.entries {
            y[r] += s as i64 * x[c];
        }
        Ok(y)
    }

    pub fn apply_f64(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        let mut y = vec![0.0; self.rows];
        for &(r, c, s) in &self.entries {
            y[r] += s as f64 * x[c];
        }
        Ok(y)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.cols {
            return Err(Error::Dimension(format!(
                "matrix has {} columns, vector has length {len}",
                self.cols
            )));
        }
        Ok(())
    }

    /// `self · other` in exact integer arithmetic.
    pub fn product(&self, other: &IncidenceMatrix) -> Result<DMatrix<i64>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = DMatrix::zeros(self.rows, other.cols);
        // row pointers into the row-sorted triplets of `other`
        let mut starts = vec![0usize; other.rows + 1];
        for &(r, _, _) in &other.entries {
            starts[r + 1] += 1;
        }
        for r in 0..other.rows {
            starts[r + 1] += starts[r];
        }
        for &(r, k, s) in &self.entries {
            for &(_, c, t) in &other.entries[starts[k]..starts[k + 1]] {
                out[(r, c)] += (s * t) as i64;
            }
        }
        Ok(out)
    }

    /// `selfᵀ · self`, the Gram matrix of the columns.
    pub fn gram(&self) -> DMatrix<i64> {
        self.transpose()
            .product(self)
            .expect("transpose dimensions always agree")
    }

    /// `self · selfᵀ`, the Gram matrix of the rows.
    pub fn outer_gram(&self) -> DMatrix<i64> {
        self.product(&self.transpose())
            .expect("transpose dimensions always agree")
    }
}

fn check_coboundary_dim(complex: &SimplicialComplex, j: usize) -> Result<()> {
    match complex.dim() {
        Some(d) if j < d => Ok(()),
        Some(d) => Err(Error::Dimension(format!(
            "coboundary δ_{j} needs 0 <= j <= dim - 1 = {}",
            d as isize - 1
        ))),
        None => Err(Error::EmptyComplex),
    }
}

/// Matrix of `δ_j : C^j → C^{j+1}`: the row of a `(j+1)`-face has `(-1)^i` in
/// the column of the facet obtained by deleting its `i`-th vertex.
pub fn coboundary_matrix(complex: &SimplicialComplex, j: usize) -> Result<IncidenceMatrix> {
    check_coboundary_dim(complex, j)?;
    let upper = complex.faces(j + 1);
    let mut entries = Vec::with_capacity(upper.len() * (j + 2));
    for (r, face) in upper.iter().enumerate() {
        for (i, sub) in face.facets() {
            let c = complex
                .index_of(&sub)
                .expect("complexes are downward closed");
            entries.push((r, c, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(IncidenceMatrix::new(
        upper.len(),
        complex.face_count(j),
        entries,
    ))
}

/// Matrix of `∂_j : C^{j+1} → C^j`, the adjoint of `δ_j` under the unweighted
/// inner product.
pub fn boundary_matrix(complex: &SimplicialComplex, j: usize) -> Result<IncidenceMatrix> {
    Ok(coboundary_matrix(complex, j)?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, [[0, 1, 2]]).unwrap()
    }

    fn k4_2() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn triangle_vertex_coboundary() {
        let d0 = coboundary_matrix(&triangle(), 0).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (3, 3));
        let dense = d0.to_dense();
        assert_eq!(
            dense.row(0).iter().copied().collect::<Vec<_>>(),
            vec![-1, 1, 0]
        );
        // (δ_0 f)(u,v) = f(v) - f(u)
        assert_eq!(d0.apply(&[5, 7, 11]).unwrap(), vec![2, 6, 4]);
    }

    #[test]
    fn triangle_edge_coboundary_and_boundary() {
        let d1 = coboundary_matrix(&triangle(), 1).unwrap();
        assert_eq!(d1.to_dense(), DMatrix::from_row_slice(1, 3, &[1, -1, 1]));
        let b1 = boundary_matrix(&triangle(), 1).unwrap();
        assert_eq!(b1.to_dense(), DMatrix::from_row_slice(3, 1, &[1, -1, 1]));
    }

    #[test]
    fn k4_2_shapes() {
        let x = k4_2();
        let d1 = coboundary_matrix(&x, 1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (4, 6));
        assert!((0..4).all(|r| d1.row_nnz(r) == 3));
        let b0 = boundary_matrix(&x, 0).unwrap();
        assert_eq!((b0.rows(), b0.cols()), (4, 6));
        assert_eq!(
            b0.to_dense(),
            coboundary_matrix(&x, 0).unwrap().to_dense().transpose()
        );
        for (c, f) in x.faces(1).iter().enumerate() {
            assert_eq!(d1.col_nnz(c), x.degree(f).unwrap());
        }
    }

    #[test]
    fn coboundary_dimension_errors() {
        assert!(matches!(
            coboundary_matrix(&triangle(), 2),
            Err(Error::Dimension(_))
        ));
        let empty = SimplicialComplex::from_facets(2, Vec::<Vec<usize>>::new()).unwrap();
        assert!(matches!(
            coboundary_matrix(&empty, 0),
            Err(Error::EmptyComplex)
        ));
    }

    #[test]
    fn cochain_condition_on_k4_2() {
        let x = k4_2();
        let d0 = coboundary_matrix(&x, 0).unwrap();
        let d1 = coboundary_matrix(&x, 1).unwrap();
        assert!(d1.product(&d0).unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn inner_products() {
        let x = k4_2();
        let basis = ChainBasis::new(&x, 1);
        let ones = vec![1.0; 6];
        assert_eq!(basis.inner_product(&ones, &ones).unwrap(), 6.0);
        let f = [1.0, 2.0, 0.0, 0.0, 0.0, 0.0];
        let g = [0.0, 0.0, 3.0, 4.0, 0.0, 0.0];
        assert_eq!(basis.inner_product(&f, &g).unwrap(), 0.0);
        assert!(basis.inner_product(&ones, &[1.0]).is_err());
        assert!(inner_product(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn hoffman_test_function_norm_on_k33() {
        // I = {0,1,2}, C = {3,4,5}: f = -c on I, i on C, with i = c = 3
        let f = [-3.0, -3.0, -3.0, 3.0, 3.0, 3.0];
        assert_eq!(inner_product(&f, &f).unwrap(), 54.0);
    }

    #[test]
    fn antisymmetric_evaluation() {
        let x = triangle();
        let basis = ChainBasis::new(&x, 1);
        let f = [1.0, 2.0, 3.0];
        assert_eq!(basis.evaluate(&f, &[0, 2]).unwrap(), 2.0);
        assert_eq!(basis.evaluate(&f, &[2, 0]).unwrap(), -2.0);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
    }
}
