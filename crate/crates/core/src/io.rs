//! The plain-text complex format: one face per line as whitespace-separated
//! vertex labels, `#` comment lines, blank lines ignored.
//!
//! ```text
//! # two triangles glued along b-c
//! a b c
//! b c d
//! ```
//!
//! Labels are arbitrary tokens, numbered densely in order of first appearance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// How the listed faces become a complex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    /// Take the downward closure of the listed faces.
    #[default]
    Downward,
    /// The listed faces must already be closed under taking subsets.
    Strict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFile {
    /// `labels[v]` is the token for vertex id `v`.
    pub labels: Vec<String>,
    pub complex: SimplicialComplex,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, Closure::Downward)
    }

    pub fn parse_with(text: &str, closure: Closure) -> Result<Self> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut faces: Vec<(usize, Vec<usize>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut face = Vec::new();
            let mut seen = BTreeSet::new();
            for token in trimmed.split_whitespace() {
                if !seen.insert(token) {
                    return Err(Error::Parse {
                        line,
                        message: format!("label `{token}` repeated within a face"),
                    });
                }
                let next = labels.len();
                let id = *ids.entry(token).or_insert_with(|| {
                    labels.push(token.to_string());
                    next
                });
                face.push(id);
            }
            faces.push((line, face));
        }
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let n = labels.len();
        let complex = match closure {
            Closure::Downward => SimplicialComplex::from_facets(n, faces.iter().map(|(_, f)| f))?,
            Closure::Strict => {
                match SimplicialComplex::from_faces(n, faces.iter().map(|(_, f)| f)) {
                    Err(Error::NotClosed { face, missing }) => {
                        let line = faces
                            .iter()
                            .find(|(_, f)| Face::new(f.clone()).is_ok_and(|g| g == face))
                            .map_or(0, |(l, _)| *l);
                        let show = |f: &Face| {
                            f.vertices()
                                .iter()
                                .map(|&v| labels[v].as_str())
                                .collect::<Vec<_>>()
                                .join(" ")
                        };
                        return Err(Error::OpenFace {
                            line,
                            face: show(&face),
                            missing: show(&missing),
                        });
                    }
                    other => other?,
                }
            }
        };
        Ok(ComplexFile { labels, complex })
    }

    pub fn read(path: impl AsRef<Path>, closure: Closure) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse_with(&text, closure)
    }

    /// Labels every vertex id by its decimal form.
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            labels: (0..complex.n_vertices()).map(|v| v.to_string()).collect(),
            complex: complex.clone(),
        }
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn face_labels(&self, face: &Face) -> Vec<String> {
        face.vertices()
            .iter()
            .map(|&v| self.labels[v].clone())
            .collect()
    }

    /// The maximal faces, each as a list of labels.
    pub fn maximal_face_labels(&self) -> Vec<Vec<String>> {
        self.complex
            .maximal_faces()
            .iter()
            .map(|f| self.face_labels(f))
            .collect()
    }

    /// Every vertex on its own line in id order, then the maximal faces of
    /// dimension at least one. Parsing the output reproduces the vertex order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.complex.vertices() {
            let _ = writeln!(out, "{}", self.labels[v]);
        }
        for face in self.complex.maximal_faces() {
            if face.dim() >= 1 {
                let _ = writeln!(out, "{}", self.face_labels(&face).join(" "));
            }
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labels_in_first_appearance_order() {
        let f = ComplexFile::parse("# comment\n\n  z y x\n  w y\n").unwrap();
        assert_eq!(f.labels, ["z", "y", "x", "w"]);
        assert_eq!(f.complex.f_vector(), vec![4, 4, 1]);
        assert!(f.complex.contains(&Face::new(vec![1, 3]).unwrap()));
    }

    #[test]
    fn single_triangle() {
        let f = ComplexFile::parse("a b c").unwrap();
        assert_eq!(f.complex.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn rejects_repeats_and_empty_input() {
        assert_eq!(
            ComplexFile::parse("a b\n# x\nc c d\n"),
            Err(Error::Parse {
                line: 3,
                message: "label `c` repeated within a face".into()
            })
        );
        assert_eq!(ComplexFile::parse(""), Err(Error::EmptyComplex));
        assert_eq!(ComplexFile::parse("# only\n\n"), Err(Error::EmptyComplex));
    }

    #[test]
    fn strict_mode_reports_the_open_face() {
        let text = "a\nb\nc\na b\nb c\na b c\n";
        let err = ComplexFile::parse_with(text, Closure::Strict).unwrap_err();
        assert_eq!(
            err,
            Error::OpenFace {
                line: 6,
                face: "a b c".into(),
                missing: "a c".into()
            }
        );
        let closed =
            ComplexFile::parse_with("a\nb\nc\na b\nb c\na c\na b c\n", Closure::Strict).unwrap();
        assert_eq!(closed.complex, ComplexFile::parse("a b c").unwrap().complex);
    }

    #[test]
    fn round_trip_keeps_ids() {
        let x = SimplicialComplex::from_facets(6, [vec![0, 4, 5], vec![1, 2], vec![3]]).unwrap();
        let text = ComplexFile::from_complex(&x).to_text();
        let back = ComplexFile::parse(&text).unwrap();
        assert_eq!(back.complex, x);
        assert_eq!(back.labels, ["0", "1", "2", "3", "4", "5"]);
    }
}
