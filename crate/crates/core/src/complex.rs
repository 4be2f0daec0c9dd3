//! Finite abstract simplicial complexes over integer vertex ids.
//!
//! A [`SimplicialComplex`] stores its faces grouped by dimension, each group
//! sorted lexicographically. The position of a face inside its group is the
//! coordinate used by the cochain machinery in [`crate::chains`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A face, stored as its strictly increasing vertex sequence.
///
/// The ascending order doubles as the canonical orientation of the face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<usize>);

impl Face {
    /// Builds a face from vertices in any order. Repeated vertices are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedFace(
                vertices,
                "a face needs at least one vertex",
            ));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(vertices, "repeated vertex"));
        }
        Ok(Face(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The codimension-one faces, paired with the position of the deleted vertex.
    /// A vertex has no facets.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut rest = self.0.clone();
            rest.remove(i);
            (i, Face(rest))
        })
    }

    /// `self ∪ {v}`, or `None` when `v` is already a vertex of the face.
    pub fn with_vertex(&self, v: usize) -> Option<Face> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut out = self.0.clone();
                out.insert(pos, v);
                Some(Face(out))
            }
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A downward-closed family of faces on the vertex ids `0..n_vertices`.
///
/// Immutable once built.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    // degrees[j][p]: number of (j+1)-faces containing faces[j][p]
    degrees: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// The downward closure of `facets`, with every id in `0..n_vertices`
    /// present as a vertex.
    ///
    /// An empty facet list yields the empty complex (no faces at all).
    pub fn from_facets<I, F>(n_vertices: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        Self::closure(n_vertices, facets, true)
    }

    /// Like [`from_facets`](Self::from_facets), but vertex ids that appear in
    /// no facet are left out of the complex.
    pub fn from_facets_without_isolated<I, F>(n_vertices: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        Self::closure(n_vertices, facets, false)
    }

    /// Takes `faces` as the complete face list, without closing it.
    ///
    /// Fails with [`Error::NotClosed`] when some face is missing one of its facets.
    pub fn from_faces<I, F>(n_vertices: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut by_dim: Vec<BTreeSet<Face>> = Vec::new();
        for f in faces {
            let face = checked_face(n_vertices, f.as_ref())?;
            let j = face.dim();
            if by_dim.len() <= j {
                by_dim.resize_with(j + 1, BTreeSet::new);
            }
            by_dim[j].insert(face);
        }
        for j in 1..by_dim.len() {
            for face in &by_dim[j] {
                for (_, sub) in face.facets() {
                    if !by_dim[j - 1].contains(&sub) {
                        return Err(Error::NotClosed {
                            face: face.clone(),
                            missing: sub,
                        });
                    }
                }
            }
        }
        Ok(Self::assemble(n_vertices, by_dim))
    }

    fn closure<I, F>(n_vertices: usize, facets: I, keep_isolated: bool) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut by_dim: Vec<BTreeSet<Face>> = Vec::new();
        let mut any = false;
        for f in facets {
            any = true;
            let face = checked_face(n_vertices, f.as_ref())?;
            if by_dim.len() <= face.dim() {
                by_dim.resize_with(face.dim() + 1, BTreeSet::new);
            }
            insert_closure(&mut by_dim, face);
        }
        if !any {
            return Ok(Self::assemble(n_vertices, Vec::new()));
        }
        if keep_isolated {
            by_dim[0].extend((0..n_vertices).map(|v| Face(vec![v])));
        }
        Ok(Self::assemble(n_vertices, by_dim))
    }

    fn assemble(n_vertices: usize, by_dim: Vec<BTreeSet<Face>>) -> Self {
        let mut by_dim = by_dim;
        while by_dim.last().is_some_and(|s| s.is_empty()) {
            by_dim.pop();
        }
        let faces: Vec<Vec<Face>> = by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let index: Vec<HashMap<Face, usize>> = faces
            .iter()
            .map(|fs| {
                fs.iter()
                    .cloned()
                    .enumerate()
                    .map(|(p, f)| (f, p))
                    .collect()
            })
            .collect();
        let mut degrees: Vec<Vec<usize>> = faces.iter().map(|fs| vec![0; fs.len()]).collect();
        for j in 1..faces.len() {
            for face in &faces[j] {
                for (_, sub) in face.facets() {
                    degrees[j - 1][index[j - 1][&sub]] += 1;
                }
            }
        }
        SimplicialComplex {
            n_vertices,
            faces,
            index,
            degrees,
        }
    }

    /// Size of the vertex-id space. Not every id needs to be a vertex.
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Number of 0-faces, i.e. `|X^0|`.
    pub fn vertex_count(&self) -> usize {
        self.face_count(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces(0).iter().map(|f| f.0[0])
    }

    /// Largest face dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// All `j`-faces in canonical (lexicographic) order; empty above the top dimension.
    pub fn faces(&self, j: usize) -> &[Face] {
        self.faces.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, j: usize) -> usize {
        self.faces(j).len()
    }

    /// Face counts `|X^0|, |X^1|, …, |X^d|`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn iter_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    /// Position of `face` in the canonical basis of its dimension.
    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.index.get(face.dim())?.get(face).copied()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index_of(face).is_some()
    }

    /// Number of `(j+1)`-faces containing the `j`-face `face`.
    pub fn degree(&self, face: &Face) -> Result<usize> {
        let p = self
            .index_of(face)
            .ok_or_else(|| Error::UnknownFace(face.clone()))?;
        Ok(self.degrees[face.dim()][p])
    }

    /// Degrees of all `j`-faces, in canonical order.
    pub fn degrees(&self, j: usize) -> &[usize] {
        self.degrees.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Maximal faces, grouped by ascending dimension.
    pub fn maximal_faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (j, fs) in self.faces.iter().enumerate() {
            for (p, f) in fs.iter().enumerate() {
                if self.degrees[j][p] == 0 {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// The closed star of `face`: every face sharing a common coface with it.
    /// The result keeps this complex's vertex-id space.
    pub fn star(&self, face: &Face) -> Result<Self> {
        if !self.contains(face) {
            return Err(Error::UnknownFace(face.clone()));
        }
        let mut by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); self.faces.len()];
        for fs in &self.faces[face.dim()..] {
            for g in fs.iter().filter(|g| face.is_subset_of(g)) {
                if !by_dim[g.dim()].contains(g) {
                    insert_closure(&mut by_dim, g.clone());
                }
            }
        }
        Ok(Self::assemble(self.n_vertices, by_dim))
    }

    /// `X^j(A)`: the `j`-faces with every vertex in `subset`.
    pub fn faces_within(&self, j: usize, subset: &[usize]) -> Vec<Face> {
        let mask = self.membership(subset);
        self.faces(j)
            .iter()
            .filter(|f| f.0.iter().all(|&v| mask[v]))
            .cloned()
            .collect()
    }

    /// `X^{j+1}(F, A)`: faces `F ∪ {v}` of the complex with `v ∈ subset`, `v ∉ F`.
    pub fn cofaces_into(&self, face: &Face, subset: &[usize]) -> Result<Vec<Face>> {
        if !self.contains(face) {
            return Err(Error::UnknownFace(face.clone()));
        }
        let mut vs: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&v| v < self.n_vertices)
            .collect();
        vs.sort_unstable();
        vs.dedup();
        Ok(vs
            .into_iter()
            .filter_map(|v| face.with_vertex(v))
            .filter(|g| self.contains(g))
            .collect())
    }

    pub(crate) fn membership(&self, subset: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n_vertices];
        for &v in subset {
            if v < self.n_vertices {
                mask[v] = true;
            }
        }
        mask
    }

    pub fn regularity_profile(&self) -> RegularityProfile {
        let Some(d) = self.dim() else {
            return RegularityProfile {
                dim: None,
                is_pure: false,
                degrees_min: Vec::new(),
                degrees_max: Vec::new(),
                is_regular: false,
            };
        };
        let degrees_min: Vec<usize> = (0..d)
            .map(|j| self.degrees[j].iter().copied().min().unwrap_or(0))
            .collect();
        let degrees_max: Vec<usize> = (0..d)
            .map(|j| self.degrees[j].iter().copied().max().unwrap_or(0))
            .collect();
        // Every face below the top dimension lies in a face one dimension up,
        // so by induction it reaches a top face.
        let is_pure = degrees_min.iter().all(|&k| k > 0);
        let isolated = self.degrees(0).contains(&0);
        let is_regular = !isolated
            && degrees_min
                .iter()
                .zip(&degrees_max)
                .all(|(lo, hi)| lo == hi && *lo > 0);
        RegularityProfile {
            dim: Some(d),
            is_pure,
            degrees_min,
            degrees_max,
            is_regular,
        }
    }

    /// Re-checks the structural invariants: closure, vertex bounds, canonical order.
    pub fn validate(&self) -> Result<()> {
        for (j, fs) in self.faces.iter().enumerate() {
            if fs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Dimension(format!(
                    "faces of dimension {j} are not in canonical order"
                )));
            }
            for f in fs {
                if f.dim() != j || f.0.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::MalformedFace(
                        f.0.clone(),
                        "stored out of canonical form",
                    ));
                }
                if let Some(&v) = f.0.iter().find(|&&v| v >= self.n_vertices) {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        n_vertices: self.n_vertices,
                    });
                }
                for (_, sub) in f.facets() {
                    if !self.contains(&sub) {
                        return Err(Error::NotClosed {
                            face: f.clone(),
                            missing: sub,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; the vertices of `other` are shifted past this complex's id space.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.n_vertices;
        let len = self.faces.len().max(other.faces.len());
        let mut by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); len];
        for f in self.iter_faces() {
            by_dim[f.dim()].insert(f.clone());
        }
        for f in other.iter_faces() {
            by_dim[f.dim()].insert(Face(f.0.iter().map(|v| v + shift).collect()));
        }
        Self::assemble(self.n_vertices + other.n_vertices, by_dim)
    }
}

fn checked_face(n_vertices: usize, vertices: &[usize]) -> Result<Face> {
    let face = Face::new(vertices.to_vec())?;
    if let Some(&v) = face.0.last().filter(|&&v| v >= n_vertices) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n_vertices,
        });
    }
    Ok(face)
}

fn insert_closure(by_dim: &mut [BTreeSet<Face>], face: Face) {
    let mut stack = vec![face];
    while let Some(f) = stack.pop() {
        let j = f.dim();
        if by_dim[j].contains(&f) {
            continue;
        }
        stack.extend(f.facets().map(|(_, g)| g));
        by_dim[j].insert(f);
    }
}

/// Per-dimension degree extremes of a complex, with purity and regularity flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityProfile {
    pub dim: Option<usize>,
    pub is_pure: bool,
    /// `degrees_min[j]` for `j = 0..d-1`.
    pub degrees_min: Vec<usize>,
    pub degrees_max: Vec<usize>,
    pub is_regular: bool,
}

impl RegularityProfile {
    /// `(k_0, …, k_{d-1})` when the complex is regular.
    pub fn regular_degrees(&self) -> Option<&[usize]> {
        self.is_regular.then_some(self.degrees_min.as_slice())
    }
}
