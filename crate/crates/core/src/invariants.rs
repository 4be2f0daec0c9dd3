//! Exact `j`-independence and `j`-chromatic numbers.
//!
//! Both searches run on the `(j+1)`-uniform hypergraph whose edges are the
//! `j`-faces, with vertex sets packed into `u64` masks. Vertices that lie in
//! no `j`-face never constrain anything; they are put aside before searching,
//! joined to every independent set and given color 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Largest vertex count an exact search will accept.
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetCertificate {
    pub vertex_set: Vec<usize>,
    pub size: usize,
}

impl IndependentSetCertificate {
    pub fn verify(&self, complex: &SimplicialComplex, j: usize) -> std::result::Result<(), String> {
        if self.size != self.vertex_set.len() {
            return Err(format!(
                "size {} but {} vertices listed",
                self.size,
                self.vertex_set.len()
            ));
        }
        match complex.faces_within(j, &self.vertex_set).first() {
            Some(face) => Err(format!(
                "{face} lies inside the claimed {j}-independent set"
            )),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub num_colors: usize,
    /// vertex → color id
    pub assignment: BTreeMap<usize, usize>,
}

impl ColoringCertificate {
    pub fn verify(&self, complex: &SimplicialComplex, j: usize) -> std::result::Result<(), String> {
        for v in complex.vertices() {
            match self.assignment.get(&v) {
                Some(&c) if c < self.num_colors => {}
                Some(&c) => return Err(format!("vertex {v} has color {c} >= {}", self.num_colors)),
                None => return Err(format!("vertex {v} is uncolored")),
            }
        }
        let mut used = vec![false; self.num_colors];
        for &c in self.assignment.values() {
            used[c] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(format!("color {c} is never used"));
        }
        for face in complex.faces(j) {
            let c0 = self.assignment[&face.vertices()[0]];
            if face.vertices().iter().all(|v| self.assignment[v] == c0) {
                return Err(format!("{face} is monochromatic in color {c0}"));
            }
        }
        Ok(())
    }
}

fn check_dim(complex: &SimplicialComplex, j: usize) -> Result<usize> {
    let d = complex.dim().ok_or(Error::EmptyComplex)?;
    if j == 0 || j > d {
        return Err(Error::Dimension(format!(
            "j-independence needs 1 <= j <= dim = {d}, got {j}"
        )));
    }
    Ok(d)
}

/// True when no `j`-face has all of its vertices in `subset`.
pub fn is_independent(complex: &SimplicialComplex, j: usize, subset: &[usize]) -> Result<bool> {
    check_dim(complex, j)?;
    Ok(complex.faces_within(j, subset).is_empty())
}

/// The `j`-faces as a hypergraph on local indices `0..active.len()`.
struct Hypergraph {
    active: Vec<usize>,
    free: Vec<usize>,
    /// `closing[v]`: for each edge whose largest local vertex is `v`, the mask of its other vertices
    closing: Vec<Vec<u64>>,
    /// `touching[v]`: for each edge containing `v`, the mask of its other vertices
    touching: Vec<Vec<u64>>,
}

impl Hypergraph {
    fn build(complex: &SimplicialComplex, j: usize, config: &OracleConfig) -> Result<Self> {
        check_dim(complex, j)?;
        let n = complex.vertex_count();
        if n > config.cap {
            return Err(Error::SearchCap {
                vertices: n,
                cap: config.cap,
            });
        }
        if n > 64 {
            return Err(Error::Parameter(format!(
                "exact search supports at most 64 vertices, got {n}"
            )));
        }
        let mut in_face = vec![false; complex.n_vertices()];
        for face in complex.faces(j) {
            for &v in face.vertices() {
                in_face[v] = true;
            }
        }
        let (active, free): (Vec<usize>, Vec<usize>) =
            complex.vertices().partition(|&v| in_face[v]);
        let mut local = vec![usize::MAX; complex.n_vertices()];
        for (i, &v) in active.iter().enumerate() {
            local[v] = i;
        }
        let mut closing = vec![Vec::new(); active.len()];
        let mut touching = vec![Vec::new(); active.len()];
        for face in complex.faces(j) {
            let ids: Vec<usize> = face.vertices().iter().map(|&v| local[v]).collect();
            let mask: u64 = ids.iter().fold(0, |m, &i| m | 1 << i);
            let last = *ids.iter().max().expect("faces are nonempty");
            closing[last].push(mask & !(1 << last));
            for &i in &ids {
                touching[i].push(mask & !(1 << i));
            }
        }
        Ok(Hypergraph {
            active,
            free,
            closing,
            touching,
        })
    }

    fn len(&self) -> usize {
        self.active.len()
    }

    fn can_add(&self, chosen: u64, v: usize) -> bool {
        self.touching[v].iter().all(|&rest| rest & !chosen != 0)
    }

    fn max_independent(&self) -> u64 {
        let mut best = (0u64, 0usize);
        self.grow(0, 0, 0, &mut best);
        best.0
    }

    fn grow(&self, v: usize, chosen: u64, size: usize, best: &mut (u64, usize)) {
        if size > best.1 {
            *best = (chosen, size);
        }
        if v == self.len() {
            return;
        }
        let choosable = (v..self.len()).filter(|&u| self.can_add(chosen, u)).count();
        if size + choosable <= best.1 {
            return;
        }
        if self.closing[v].iter().all(|&rest| rest & !chosen != 0) {
            self.grow(v + 1, chosen | 1 << v, size + 1, best);
        }
        self.grow(v + 1, chosen, size, best);
    }

    fn color_with(&self, k: usize) -> Option<Vec<usize>> {
        let mut colors = vec![0usize; self.len()];
        let mut classes = vec![0u64; k];
        self.paint(0, 0, k, &mut colors, &mut classes)
            .then_some(colors)
    }

    fn paint(
        &self,
        v: usize,
        used: usize,
        k: usize,
        colors: &mut [usize],
        classes: &mut [u64],
    ) -> bool {
        if v == self.len() {
            return true;
        }
        // colors are introduced in order, so vertex 0 always gets color 0
        for c in 0..k.min(used + 1) {
            if self.closing[v].iter().any(|&rest| rest & !classes[c] == 0) {
                continue;
            }
            colors[v] = c;
            classes[c] |= 1 << v;
            if self.paint(v + 1, used.max(c + 1), k, colors, classes) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
        false
    }
}

/// `i_j(X)`, the size of a largest `j`-independent vertex set, by branch and bound.
pub fn independence_number(
    complex: &SimplicialComplex,
    j: usize,
    config: &OracleConfig,
) -> Result<(usize, IndependentSetCertificate)> {
    let h = Hypergraph::build(complex, j, config)?;
    let mask = h.max_independent();
    let mut vertex_set: Vec<usize> = h.free.clone();
    vertex_set.extend(
        (0..h.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| h.active[i]),
    );
    vertex_set.sort_unstable();
    let size = vertex_set.len();
    Ok((size, IndependentSetCertificate { vertex_set, size }))
}

/// `χ_j(X)`, the fewest colors leaving no `j`-face monochromatic, by iterative
/// deepening over the color count.
pub fn chromatic_number(
    complex: &SimplicialComplex,
    j: usize,
    config: &OracleConfig,
) -> Result<(usize, ColoringCertificate)> {
    let h = Hypergraph::build(complex, j, config)?;
    let mut assignment: BTreeMap<usize, usize> = h.free.iter().map(|&v| (v, 0)).collect();
    let num_colors = if h.len() == 0 {
        usize::from(!h.free.is_empty())
    } else {
        let (k, colors) = (2..=h.len())
            .find_map(|k| h.color_with(k).map(|c| (k, c)))
            .expect("one color per vertex always works");
        assignment.extend(colors.iter().enumerate().map(|(i, &c)| (h.active[i], c)));
        k
    };
    Ok((
        num_colors,
        ColoringCertificate {
            num_colors,
            assignment,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingEntry {
    pub j: usize,
    pub independence: usize,
    pub chromatic: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub n: usize,
    pub dim: usize,
    pub entries: Vec<CountingEntry>,
    /// `(χ_1, χ_d, ⌈χ_1 / d⌉)`
    pub lemma: (usize, usize, usize),
    pub violations: Vec<String>,
}

impl CountingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn entry(&self, j: usize) -> Option<&CountingEntry> {
        self.entries.iter().find(|e| e.j == j)
    }
}

/// Computes `i_l`, `χ_l` for `l ∈ {1, j, d}` and checks `n <= i_l · χ_l`
/// and `χ_d <= ⌈χ_1 / d⌉`. Also re-verifies every certificate.
pub fn check_counting_inequalities(
    complex: &SimplicialComplex,
    j: usize,
    config: &OracleConfig,
) -> Result<CountingReport> {
    let d = check_dim(complex, j)?;
    let mut dims = vec![1, j, d];
    dims.sort_unstable();
    dims.dedup();
    counting_report(complex, &dims, config)
}

/// As [`check_counting_inequalities`], for every `j = 1..=d`.
pub fn check_all_counting_inequalities(
    complex: &SimplicialComplex,
    config: &OracleConfig,
) -> Result<CountingReport> {
    let d = complex.dim().ok_or(Error::EmptyComplex)?;
    let dims: Vec<usize> = (1..=d).collect();
    counting_report(complex, &dims, config)
}

/// `i_j` and `χ_j` with their certificates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactInvariants {
    pub j: usize,
    pub independence: usize,
    pub independent_set: IndependentSetCertificate,
    pub chromatic: usize,
    pub coloring: ColoringCertificate,
}

pub fn exact_invariants(
    complex: &SimplicialComplex,
    j: usize,
    config: &OracleConfig,
) -> Result<ExactInvariants> {
    let (independence, independent_set) = independence_number(complex, j, config)?;
    let (chromatic, coloring) = chromatic_number(complex, j, config)?;
    Ok(ExactInvariants {
        j,
        independence,
        independent_set,
        chromatic,
        coloring,
    })
}

fn counting_report(
    complex: &SimplicialComplex,
    dims: &[usize],
    config: &OracleConfig,
) -> Result<CountingReport> {
    let table: Vec<ExactInvariants> = dims
        .iter()
        .map(|&j| exact_invariants(complex, j, config))
        .collect::<Result<_>>()?;
    counting_report_from(complex, &table, config)
}

/// The counting checks over an already computed table. Dimensions missing
/// from the table that the checks need (`1` and `d`) are computed with `config`.
pub fn counting_report_from(
    complex: &SimplicialComplex,
    table: &[ExactInvariants],
    config: &OracleConfig,
) -> Result<CountingReport> {
    let d = complex.dim().ok_or(Error::EmptyComplex)?;
    if d == 0 {
        return Err(Error::Dimension(
            "counting inequalities need dim >= 1".into(),
        ));
    }
    let n = complex.vertex_count();
    let mut violations = Vec::new();
    let mut entries = Vec::new();
    for row in table {
        let (j, i, chi) = (row.j, row.independence, row.chromatic);
        if let Err(e) = row.independent_set.verify(complex, j) {
            violations.push(format!("independent-set certificate for j={j}: {e}"));
        }
        if let Err(e) = row.coloring.verify(complex, j) {
            violations.push(format!("coloring certificate for j={j}: {e}"));
        }
        if n > i * chi {
            violations.push(format!("n = {n} > i_{j} * chi_{j} = {i} * {chi}"));
        }
        entries.push(CountingEntry {
            j,
            independence: i,
            chromatic: chi,
        });
    }
    for pair in entries.windows(2) {
        if pair[1].j == pair[0].j + 1 {
            if pair[0].independence > pair[1].independence {
                violations.push(format!("i_{} > i_{}", pair[0].j, pair[1].j));
            }
            if pair[0].chromatic < pair[1].chromatic {
                violations.push(format!("chi_{} < chi_{}", pair[0].j, pair[1].j));
            }
        }
    }
    let chi_of = |j: usize, entries: &[CountingEntry]| -> Result<usize> {
        match entries.iter().find(|e| e.j == j) {
            Some(e) => Ok(e.chromatic),
            None => Ok(chromatic_number(complex, j, config)?.0),
        }
    };
    let chi1 = chi_of(1, &entries)?;
    let chid = chi_of(d, &entries)?;
    let ceil = chi1.div_ceil(d);
    if chid > ceil {
        violations.push(format!("chi_{d} = {chid} > ceil(chi_1 / {d}) = {ceil}"));
    }
    Ok(CountingReport {
        n,
        dim: d,
        entries,
        lemma: (chi1, chid, ceil),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
            .collect()
    }

    fn complete(n: usize, d: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, subsets(n, d + 1)).unwrap()
    }

    fn cycle(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, (0..n).map(|v| [v, (v + 1) % n])).unwrap()
    }

    fn k33() -> SimplicialComplex {
        let edges: Vec<[usize; 2]> = (0..3).flat_map(|a| (3..6).map(move |b| [a, b])).collect();
        SimplicialComplex::from_facets(6, edges).unwrap()
    }

    /// Exhaustive oracle over all vertex subsets.
    fn brute_independence(x: &SimplicialComplex, j: usize) -> usize {
        let vs: Vec<usize> = x.vertices().collect();
        (0u32..1 << vs.len())
            .filter(|m| {
                let sub: Vec<usize> = (0..vs.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| vs[i])
                    .collect();
                x.faces_within(j, &sub).is_empty()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    /// Exhaustive oracle over all colorings with `k` colors.
    fn brute_chromatic(x: &SimplicialComplex, j: usize) -> usize {
        let vs: Vec<usize> = x.vertices().collect();
        let n = vs.len();
        (1..=n)
            .find(|&k| {
                let total = k.pow(n as u32);
                (0..total).any(|mut code| {
                    let mut color = vec![0; x.n_vertices()];
                    for &v in &vs {
                        color[v] = code % k;
                        code /= k;
                    }
                    x.faces(j).iter().all(|f| {
                        let c = color[f.vertices()[0]];
                        f.vertices().iter().any(|&v| color[v] != c)
                    })
                })
            })
            .unwrap()
    }

    #[test]
    fn independence_predicate() {
        let x = complete(4, 2);
        assert!(is_independent(&x, 2, &[0, 1]).unwrap());
        assert!(!is_independent(&x, 2, &[0, 1, 2]).unwrap());
        assert!(!is_independent(&x, 1, &[0, 1]).unwrap());
        assert!(is_independent(&x, 3, &[0]).is_err());
        assert!(is_independent(&x, 0, &[0]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let cfg = OracleConfig::default();
        for n in 3..=7 {
            for d in 1..n.min(4) {
                let x = complete(n, d);
                assert_eq!(independence_number(&x, d, &cfg).unwrap().0, d);
                assert_eq!(chromatic_number(&x, d, &cfg).unwrap().0, n.div_ceil(d));
            }
        }
        assert_eq!(independence_number(&cycle(5), 1, &cfg).unwrap().0, 2);
        assert_eq!(chromatic_number(&cycle(5), 1, &cfg).unwrap().0, 3);
        assert_eq!(independence_number(&k33(), 1, &cfg).unwrap().0, 3);
        assert_eq!(chromatic_number(&k33(), 1, &cfg).unwrap().0, 2);
    }

    #[test]
    fn brute_force_agreement_on_small_complexes() {
        let cfg = OracleConfig::default();
        let cases = vec![
            cycle(5),
            cycle(6),
            k33(),
            complete(5, 2),
            SimplicialComplex::from_facets(5, [vec![0, 1, 2], vec![1, 2, 3], vec![3, 4]]).unwrap(),
            SimplicialComplex::from_facets(6, [vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]])
                .unwrap(),
        ];
        for x in &cases {
            for j in 1..=x.dim().unwrap() {
                let (i, cert) = independence_number(x, j, &cfg).unwrap();
                assert_eq!(i, brute_independence(x, j));
                cert.verify(x, j).unwrap();
                let (chi, col) = chromatic_number(x, j, &cfg).unwrap();
                assert_eq!(chi, brute_chromatic(x, j));
                col.verify(x, j).unwrap();
            }
        }
    }

    #[test]
    fn isolated_vertices_join_independent_sets() {
        let x = SimplicialComplex::from_facets(4, [[0, 1]]).unwrap();
        let (i, cert) = independence_number(&x, 1, &OracleConfig::default()).unwrap();
        assert_eq!(i, 3);
        assert!(cert.vertex_set.contains(&2) && cert.vertex_set.contains(&3));
        let (chi, col) = chromatic_number(&x, 1, &OracleConfig::default()).unwrap();
        assert_eq!(chi, 2);
        assert_eq!(col.assignment[&3], 0);
    }

    #[test]
    fn search_cap() {
        let x = cycle(10);
        let err = independence_number(&x, 1, &OracleConfig { cap: 8 }).unwrap_err();
        assert_eq!(
            err,
            Error::SearchCap {
                vertices: 10,
                cap: 8
            }
        );
    }

    #[test]
    fn certificate_verification_catches_bad_witnesses() {
        let x = complete(4, 2);
        let bad = IndependentSetCertificate {
            vertex_set: vec![0, 1, 2],
            size: 3,
        };
        assert!(bad.verify(&x, 2).is_err());
        let mono = ColoringCertificate {
            num_colors: 1,
            assignment: (0..4).map(|v| (v, 0)).collect(),
        };
        assert!(mono.verify(&x, 2).is_err());
    }

    #[test]
    fn counting_inequalities() {
        let cfg = OracleConfig::default();
        let r = check_counting_inequalities(&complete(6, 2), 2, &cfg).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        let e = r.entry(2).unwrap();
        assert_eq!((e.independence, e.chromatic), (2, 3));
        assert_eq!(r.lemma, (6, 3, 3));
        let c5 = check_counting_inequalities(&cycle(5), 1, &cfg).unwrap();
        assert_eq!(
            c5.entry(1).map(|e| (e.independence, e.chromatic)),
            Some((2, 3))
        );
        assert!(c5.holds());
    }
}
