//! The manifold-description document: a TOML file carrying the topological
//! data one fixture at a time.
//!
//! ```toml
//! name = "T2xS2"
//! b1 = 2
//! b_plus = 1
//! b_minus = 1
//! Q = [[0, 1], [1, 0]]
//! ref_pos = [1, 1]
//!
//! [[t]]
//! i = 1
//! j = 2
//! k = 1
//! value = 1
//! ```
//!
//! Tensor entries are sparse: unlisted slots are zero and antisymmetry is
//! completed automatically. Duplicate slots (including mirrored `(j,i,k)`
//! pairs) and nonzero diagonal entries are parse errors. Classes are not
//! part of the document; they arrive on the command line so one fixture
//! serves many queries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kahler::RationalSurface;
use crate::manifold::{FourManifoldData, QuadTensor, TensorEntryError, TripleTensor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadEntry {
    pub h: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceKey {
    /// `"P2"` or `"BlowupP2"`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

/// The raw document. Field order matters for serialization only: scalar
/// keys first, then the array-of-table keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDocument {
    pub name: String,
    pub b1: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<i64>>,
    pub ref_pos: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<TripleEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub l4: Vec<QuadEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceKey>,
}

/// Anything that prevents turning text into a [`FourManifoldData`].
#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("document is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{0}")]
    Tensor(#[from] TensorEntryError),
    #[error("key surface: unknown kind {0:?} (expected \"P2\" or \"BlowupP2\")")]
    UnknownSurfaceKind(String),
    #[error("key surface: kind \"BlowupP2\" requires r >= 1")]
    MissingBlowupCount,
    #[error("key surface: kind \"P2\" does not take r")]
    UnexpectedBlowupCount,
}

impl ManifoldDocument {
    pub fn parse(text: &str) -> Result<ManifoldDocument, DocumentError> {
        Ok(toml::from_str(text)?)
    }

    /// Assembles the tensors and produces plain manifold data; structural
    /// invariants are checked later by validation.
    pub fn to_data(&self) -> Result<FourManifoldData, DocumentError> {
        let b2 = self.b_plus + self.b_minus;
        let entries: Vec<(usize, usize, usize, i64)> = self
            .t
            .iter()
            .map(|e| (e.i, e.j, e.k, e.value))
            .collect();
        let triple = TripleTensor::from_entries(self.b1, b2, &entries)?;
        let mut quad = QuadTensor::zero();
        for e in &self.l4 {
            quad.insert(self.b1, [e.h, e.i, e.j, e.k], e.value)?;
        }
        Ok(FourManifoldData {
            name: self.name.clone(),
            b1: self.b1,
            b_plus: self.b_plus,
            b_minus: self.b_minus,
            intersection_form: self.q.clone(),
            triple,
            quad,
            ref_pos: self.ref_pos.clone(),
        })
    }

    /// The surface named by the document, if any.
    pub fn surface(&self) -> Result<Option<RationalSurface>, DocumentError> {
        let Some(key) = &self.surface else {
            return Ok(None);
        };
        match key.kind.as_str() {
            "P2" => {
                if key.r.is_some() && key.r != Some(0) {
                    return Err(DocumentError::UnexpectedBlowupCount);
                }
                Ok(Some(RationalSurface::projective_plane()))
            }
            "BlowupP2" => match key.r {
                Some(r) if r >= 1 => Ok(Some(RationalSurface::blown_up_plane(r))),
                _ => Err(DocumentError::MissingBlowupCount),
            },
            other => Err(DocumentError::UnknownSurfaceKind(other.to_string())),
        }
    }

    /// The canonical document for given manifold data: tensors reduced to
    /// their nonzero canonical entries, everything else copied.
    pub fn from_data(data: &FourManifoldData, surface: Option<SurfaceKey>) -> ManifoldDocument {
        ManifoldDocument {
            name: data.name.clone(),
            b1: data.b1,
            b_plus: data.b_plus,
            b_minus: data.b_minus,
            q: data.intersection_form.clone(),
            ref_pos: data.ref_pos.clone(),
            t: data
                .triple
                .canonical_entries()
                .into_iter()
                .map(|(i, j, k, value)| TripleEntry { i, j, k, value })
                .collect(),
            l4: data
                .quad
                .canonical_entries()
                .map(|(ix, value)| QuadEntry {
                    h: ix[0],
                    i: ix[1],
                    j: ix[2],
                    k: ix[3],
                    value: *value,
                })
                .collect(),
            surface,
        }
    }

    /// Canonical TOML rendering; re-parsing it reproduces the same data.
    pub fn render(&self) -> String {
        toml::to_string(self).expect("document serialization cannot fail")
    }
}
