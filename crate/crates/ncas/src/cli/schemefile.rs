use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FileError};
use crate::matrixkit::ZeroOneMatrix;
use crate::schemes::{scheme_verify, AssociationScheme};

pub const VERSION: &str = "ncas-scheme/1";

/// Where a serialized scheme came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// JSON interchange form of a scheme. Each row of a relation matrix is a list of
/// `[start, length]` runs of ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub version: String,
    pub vertices: usize,
    pub labels: Vec<String>,
    pub relations: Vec<Vec<Vec<[usize; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn runs(m: &ZeroOneMatrix, r: usize) -> Vec<[usize; 2]> {
    let mut out: Vec<[usize; 2]> = Vec::new();
    for c in m.row_ones(r) {
        match out.last_mut() {
            Some(run) if run[0] + run[1] == c => run[1] += 1,
            _ => out.push([c, 1]),
        }
    }
    out
}

impl SchemeFile {
    pub fn from_matrices(mats: &[ZeroOneMatrix], labels: Vec<String>, provenance: Option<Provenance>) -> Self {
        let vertices = mats.first().map_or(0, |m| m.rows());
        let relations = mats.iter().map(|m| (0..m.rows()).map(|r| runs(m, r)).collect()).collect();
        SchemeFile { version: VERSION.into(), vertices, labels, relations, provenance }
    }

    pub fn from_scheme(s: &AssociationScheme, provenance: Option<Provenance>) -> Self {
        Self::from_matrices(s.basis(), s.labels().to_vec(), provenance)
    }

    /// Decodes the basis without checking the scheme axioms.
    pub fn matrices(&self) -> Result<Vec<ZeroOneMatrix>, FileError> {
        if self.version != VERSION {
            return Err(FileError::Version(self.version.clone()));
        }
        if self.labels.len() != self.relations.len() {
            return Err(FileError::Malformed(format!("{} labels for {} relations", self.labels.len(), self.relations.len())));
        }
        let v = self.vertices;
        self.relations
            .iter()
            .enumerate()
            .map(|(l, rows)| {
                if rows.len() != v {
                    return Err(FileError::Malformed(format!("relation {l} has {} rows, expected {v}", rows.len())));
                }
                let mut m = ZeroOneMatrix::zeros(v, v);
                for (r, row) in rows.iter().enumerate() {
                    for &[start, len] in row {
                        if len == 0 || start + len > v {
                            return Err(FileError::Malformed(format!("relation {l} row {r}: run [{start}, {len}] out of range")));
                        }
                        for c in start..start + len {
                            m.set(r, c, true);
                        }
                    }
                }
                Ok(m)
            })
            .collect()
    }

    /// Decodes and re-verifies every axiom.
    pub fn to_scheme(&self) -> Result<AssociationScheme, Error> {
        let mats = self.matrices()?;
        Ok(scheme_verify(mats, Some(self.labels.clone()))?)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }
}
