//! JSON document formats.
//!
//! A graph document lists kinded vertices (optionally with Euler
//! characteristics) and edges; a matrix document supplies a degree
//! refinement directly, so published matrices can be used as inputs without
//! reconstructing a graph realizing them. Parsing is strict: unknown keys
//! are rejected, duplicate edge entries sum their multiplicities.

use std::collections::BTreeMap;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::extnat::ExtNat;
use crate::graph::{BipartiteMultigraph, VertexKind};
use crate::pmanifold::{ChiDecoration, PManifold};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::refinement::DegreeRefinement;

#[derive(Debug, Error)]
pub enum DocError {
    /// Malformed JSON or data not matching the document schema; carries the
    /// line/column from the underlying parser.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("document error: {0}")]
    Semantic(String),
    #[error(transparent)]
    Model(#[from] crate::error::Error),
}

impl From<serde_json::Error> for DocError {
    fn from(e: serde_json::Error) -> Self {
        DocError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// `chi` field: a JSON integer or a string rational `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiValue(pub Rational);

impl Serialize for ChiValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use num_traits::{One, ToPrimitive};
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for ChiValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        match raw {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| D::Error::custom(format!("chi must be an integer, got {n}")))?;
                Ok(ChiValue(Rational::from_integer(i.into())))
            }
            serde_json::Value::String(s) => parse_rational(&s)
                .map(ChiValue)
                .map_err(|e| D::Error::custom(e.to_string())),
            other => Err(D::Error::custom(format!(
                "chi must be an integer or a rational string, got {other}"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub kind: KindTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiValue>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum KindTag {
    #[serde(rename = "curve")]
    Curve,
    #[serde(rename = "surface")]
    Surface,
}

impl From<KindTag> for VertexKind {
    fn from(t: KindTag) -> Self {
        match t {
            KindTag::Curve => VertexKind::TwoEnded,
            KindTag::Surface => VertexKind::Fuchsian,
        }
    }
}

impl From<VertexKind> for KindTag {
    fn from(k: VertexKind) -> Self {
        match k {
            VertexKind::TwoEnded => KindTag::Curve,
            VertexKind::Fuchsian => KindTag::Surface,
        }
    }
}

/// Edge entry `[curveId, surfaceId]` or `[curveId, surfaceId, multiplicity]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEntry {
    pub a: String,
    pub b: String,
    pub multiplicity: u64,
}

impl Serialize for EdgeEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.a)?;
        seq.serialize_element(&self.b)?;
        seq.serialize_element(&self.multiplicity)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EdgeEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        if raw.len() != 2 && raw.len() != 3 {
            return Err(D::Error::custom(format!(
                "edge must be [curve, surface] or [curve, surface, multiplicity], got {} elements",
                raw.len()
            )));
        }
        let id = |v: &serde_json::Value| -> Result<String, D::Error> {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| D::Error::custom(format!("edge endpoint must be a string, got {v}")))
        };
        let multiplicity = match raw.get(2) {
            None => 1,
            Some(v) => v.as_u64().filter(|&m| m > 0).ok_or_else(|| {
                D::Error::custom(format!(
                    "edge multiplicity must be a positive integer, got {v}"
                ))
            })?,
        };
        Ok(EdgeEntry {
            a: id(&raw[0])?,
            b: id(&raw[1])?,
            multiplicity,
        })
    }
}

/// A graph document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub name: String,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

/// A matrix document: block kinds (`"T"`/`"F"`) and rows with `"inf"` for
/// infinite entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub name: String,
    pub kinds: Vec<KindLetter>,
    pub rows: Vec<Vec<MatrixEntry>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub enum KindLetter {
    T,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixEntry(pub ExtNat);

impl Serialize for MatrixEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ExtNat::Fin(n) => s.serialize_u64(n),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for MatrixEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        match raw {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|v| MatrixEntry(ExtNat::Fin(v)))
                .ok_or_else(|| {
                    D::Error::custom(format!("matrix entry must be a natural, got {n}"))
                }),
            serde_json::Value::String(s) if s == "inf" => Ok(MatrixEntry(ExtNat::Inf)),
            other => Err(D::Error::custom(format!(
                "matrix entry must be a natural or \"inf\", got {other}"
            ))),
        }
    }
}

/// Either kind of input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Graph(GraphDoc),
    Matrix(MatrixDoc),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Graph(d) => &d.name,
            Document::Matrix(d) => &d.name,
        }
    }
}

/// Parses either document kind, dispatching on the fields present. Syntax
/// and schema errors carry the parser's line/column.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let probe: serde_json::Value = serde_json::from_str(text)?;
    let obj = probe
        .as_object()
        .ok_or_else(|| DocError::Semantic("document must be a JSON object".into()))?;
    if obj.contains_key("rows") || obj.contains_key("kinds") {
        Ok(Document::Matrix(serde_json::from_str(text)?))
    } else {
        Ok(Document::Graph(serde_json::from_str(text)?))
    }
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<BipartiteMultigraph, DocError> {
        Ok(BipartiteMultigraph::new(
            self.vertices
                .iter()
                .map(|v| (v.id.clone(), VertexKind::from(v.kind))),
            self.edges
                .iter()
                .map(|e| (e.a.clone(), e.b.clone(), e.multiplicity))
                .collect::<Vec<_>>(),
        )?)
    }

    /// Rational chi decoration from the vertices that carry one.
    pub fn chi_decoration(&self) -> ChiDecoration {
        let mut deco = ChiDecoration::default();
        for v in &self.vertices {
            if let Some(chi) = &v.chi {
                deco.insert(v.id.clone(), chi.0.clone());
            }
        }
        deco
    }

    /// Builds a P-manifold; every surface vertex must carry an integer chi.
    pub fn to_pmanifold(&self) -> Result<PManifold, DocError> {
        use num_traits::{One, ToPrimitive};
        let graph = self.to_graph()?;
        let mut chi = BTreeMap::new();
        for v in &self.vertices {
            if let Some(c) = &v.chi {
                if !c.0.denom().is_one() {
                    return Err(DocError::Semantic(format!(
                        "vertex `{}` has non-integer chi {}",
                        v.id,
                        format_rational(&c.0)
                    )));
                }
                let n =
                    c.0.numer().to_i64().ok_or_else(|| {
                        DocError::Semantic(format!("chi of `{}` out of range", v.id))
                    })?;
                chi.insert(v.id.clone(), n);
            }
        }
        Ok(PManifold::new(graph, chi)?)
    }

    /// Document for a graph, with chi values attached where given.
    pub fn from_graph(
        name: &str,
        g: &BipartiteMultigraph,
        chi: Option<&ChiDecoration>,
    ) -> GraphDoc {
        GraphDoc {
            name: name.to_string(),
            vertices: g
                .vertices()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    kind: v.kind.into(),
                    chi: chi.and_then(|c| c.get(&v.id)).map(|r| ChiValue(r.clone())),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(a, b, m)| {
                    let (a, b) = if g.kind(a).is_curve() { (a, b) } else { (b, a) };
                    EdgeEntry {
                        a: g.id(a).to_string(),
                        b: g.id(b).to_string(),
                        multiplicity: m,
                    }
                })
                .collect(),
        }
    }

    pub fn from_pmanifold(name: &str, p: &PManifold) -> GraphDoc {
        let deco = ChiDecoration::from(p);
        GraphDoc::from_graph(name, p.graph(), Some(&deco))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }
}

impl MatrixDoc {
    pub fn to_refinement(&self) -> Result<DegreeRefinement, DocError> {
        let kinds = self
            .kinds
            .iter()
            .map(|k| match k {
                KindLetter::T => VertexKind::TwoEnded,
                KindLetter::F => VertexKind::Fuchsian,
            })
            .collect();
        let matrix = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.0).collect())
            .collect();
        Ok(DegreeRefinement::from_matrix(kinds, matrix)?)
    }
}
