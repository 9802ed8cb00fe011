//! The canonical `spg/1` JSON document.
//!
//! Symbols are 0-based, d-sets ascending, the d-sets of a block in
//! lexicographic order, edges `[i, j]` with `i < j` sorted without
//! duplicates. Layer families omit `edges` and carry `"shape": "path"`.
//! The parser rejects documents that are not already canonical.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clf::ConnectedLayerFamily;
use crate::error::SpgError;
use crate::spg::Spg;
use crate::symbols::{DSet, Symbol, SymbolSet};

pub const FORMAT_TAG: &str = "spg/1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("SyntaxError at {location}: {message}")]
    Syntax { location: String, message: String },
    #[error("ValidationError: {0}")]
    Validation(#[from] SpgError),
}

impl IoError {
    pub fn name(&self) -> &'static str {
        match self {
            IoError::Syntax { .. } => "SyntaxError",
            IoError::Validation(_) => "ValidationError",
        }
    }

    fn syntax(location: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Syntax {
            location: location.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpgDocument {
    pub format: String,
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub vertices: Vec<Vec<Vec<Symbol>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apices: Option<[Vec<Symbol>; 2]>,
}

fn raw_blocks(blocks: &[Vec<DSet>]) -> Vec<Vec<Vec<Symbol>>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|a| a.members().to_vec()).collect())
        .collect()
}

impl SpgDocument {
    pub fn from_spg(g: &Spg) -> Self {
        SpgDocument {
            format: FORMAT_TAG.into(),
            n: g.n(),
            d: g.d(),
            labels: g.symbols().labels().map(<[String]>::to_vec),
            vertices: raw_blocks(g.blocks()),
            edges: Some(g.edges().iter().map(|&(u, v)| [u, v]).collect()),
            shape: None,
            apices: g
                .apices()
                .map(|(a, b)| [a.members().to_vec(), b.members().to_vec()]),
        }
    }

    pub fn from_clf(clf: &ConnectedLayerFamily) -> Self {
        SpgDocument {
            format: FORMAT_TAG.into(),
            n: clf.n(),
            d: clf.d(),
            labels: clf.symbols().labels().map(<[String]>::to_vec),
            vertices: raw_blocks(clf.layers()),
            edges: None,
            shape: Some("path".into()),
            apices: None,
        }
    }

    fn check_canonical(&self) -> Result<(), IoError> {
        if self.format != FORMAT_TAG {
            return Err(IoError::syntax(
                "format",
                format!("expected {FORMAT_TAG:?}, found {:?}", self.format),
            ));
        }
        for (i, block) in self.vertices.iter().enumerate() {
            for (j, a) in block.iter().enumerate() {
                if a.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(IoError::syntax(
                        format!("vertices[{i}][{j}]"),
                        format!("d-set {a:?} is not strictly ascending"),
                    ));
                }
            }
            if let Some(j) = block.windows(2).position(|w| w[0] >= w[1]) {
                return Err(IoError::syntax(
                    format!("vertices[{i}][{}]", j + 1),
                    format!(
                        "d-set {:?} does not follow {:?} in lexicographic order",
                        block[j + 1],
                        block[j]
                    ),
                ));
            }
        }
        if let Some(edges) = &self.edges {
            for (k, e) in edges.iter().enumerate() {
                if e[0] >= e[1] {
                    return Err(IoError::syntax(
                        format!("edges[{k}]"),
                        format!("edge {e:?} must list the smaller index first"),
                    ));
                }
            }
            if let Some(k) = edges.windows(2).position(|w| w[0] >= w[1]) {
                return Err(IoError::syntax(
                    format!("edges[{}]", k + 1),
                    format!("edge {:?} is out of order or repeated", edges[k + 1]),
                ));
            }
        }
        match (&self.shape, &self.edges) {
            (None, None) => Err(IoError::syntax(
                "edges",
                "missing (and no \"shape\": \"path\")",
            )),
            (Some(shape), _) if shape != "path" => Err(IoError::syntax(
                "shape",
                format!("unknown shape {shape:?}; only \"path\" is supported"),
            )),
            (Some(_), Some(edges)) => {
                let path: Vec<[usize; 2]> = (1..self.vertices.len()).map(|i| [i - 1, i]).collect();
                if *edges != path {
                    Err(IoError::syntax(
                        "edges",
                        "shape \"path\" requires edges [i, i+1]",
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    fn symbol_set(&self) -> Result<SymbolSet, IoError> {
        Ok(match &self.labels {
            Some(labels) => SymbolSet::with_labels(self.n, labels.clone())?,
            None => SymbolSet::new(self.n),
        })
    }

    fn typed_blocks(&self) -> Vec<Vec<DSet>> {
        self.vertices
            .iter()
            .map(|b| b.iter().map(|a| DSet::from_sorted(a.clone())).collect())
            .collect()
    }

    pub fn to_spg(&self) -> Result<Spg, IoError> {
        self.check_canonical()?;
        let edges: Vec<(usize, usize)> = match &self.edges {
            Some(edges) => edges.iter().map(|e| (e[0], e[1])).collect(),
            None => (1..self.vertices.len()).map(|i| (i - 1, i)).collect(),
        };
        let g = Spg::new(self.symbol_set()?, self.d, self.typed_blocks(), edges)?;
        match &self.apices {
            Some([a, b]) => {
                let a = DSet::new(a.clone())?;
                let b = DSet::new(b.clone())?;
                Ok(g.with_apices(a, b)?)
            }
            None => Ok(g),
        }
    }

    pub fn to_clf(&self) -> Result<ConnectedLayerFamily, IoError> {
        self.check_canonical()?;
        if self.edges.is_some() && self.shape.is_none() {
            return Err(IoError::syntax(
                "shape",
                "a layer family document needs \"shape\": \"path\"",
            ));
        }
        Ok(ConnectedLayerFamily::new(
            self.symbol_set()?,
            self.d,
            self.typed_blocks(),
        )?)
    }

    /// Canonical text: one block per line, trailing newline.
    pub fn to_json_string(&self) -> String {
        let json = |v: &dyn erased::Json| v.json();
        let mut out = String::from("{\n");
        let mut fields: Vec<String> = vec![
            format!("  \"format\": {}", json(&self.format)),
            format!("  \"n\": {}", self.n),
            format!("  \"d\": {}", self.d),
        ];
        if let Some(labels) = &self.labels {
            fields.push(format!("  \"labels\": {}", json(labels)));
        }
        let mut vertices = String::from("  \"vertices\": [");
        for (i, block) in self.vertices.iter().enumerate() {
            vertices.push_str(if i == 0 { "\n    " } else { ",\n    " });
            vertices.push_str(&json(block));
        }
        vertices.push_str(if self.vertices.is_empty() {
            "]"
        } else {
            "\n  ]"
        });
        fields.push(vertices);
        if let Some(edges) = &self.edges {
            fields.push(format!("  \"edges\": {}", json(edges)));
        }
        if let Some(shape) = &self.shape {
            fields.push(format!("  \"shape\": {}", json(shape)));
        }
        if let Some(apices) = &self.apices {
            fields.push(format!("  \"apices\": {}", json(apices)));
        }
        let _ = write!(out, "{}", fields.join(",\n"));
        out.push_str("\n}\n");
        out
    }
}

mod erased {
    pub trait Json {
        fn json(&self) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn json(&self) -> String {
            serde_json::to_string(self).expect("plain data serializes")
        }
    }
}

pub fn parse_document(text: &str) -> Result<SpgDocument, IoError> {
    serde_json::from_str(text).map_err(|e| {
        IoError::syntax(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn parse(text: &str) -> Result<Spg, IoError> {
    parse_document(text)?.to_spg()
}

pub fn parse_clf(text: &str) -> Result<ConnectedLayerFamily, IoError> {
    parse_document(text)?.to_clf()
}

pub fn serialize(g: &Spg) -> String {
    SpgDocument::from_spg(g).to_json_string()
}

pub fn serialize_clf(clf: &ConnectedLayerFamily) -> String {
    SpgDocument::from_clf(clf).to_json_string()
}
