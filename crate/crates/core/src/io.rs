//! Input and output formats for matroids, matrices and graphs.
//!
//! Matroid JSON is a tagged object with one of the kinds `ranktable`, `linear`, `graphic`
//! or `named`. Graph vertices are 0-indexed in JSON and 1-indexed in the text format.
//! Matrices also have a text format whose first line is `gfP m n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FFMatrix;
use crate::graphs::MultiGraph;
use crate::matroid::RankTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Ranktable {
        n: usize,
        ranks: Vec<u8>,
    },
    Linear {
        field: String,
        matrix: Vec<Vec<i64>>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Named {
        name: String,
        #[serde(default)]
        params: serde_json::Value,
    },
}

/// Parsed input: the matroid plus the matrix or graph it came from, if any.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub matroid: RankTable,
    pub matrix: Option<FFMatrix>,
    pub graph: Option<MultiGraph>,
}

/// Parses `gfP` into the prime P.
pub fn parse_field(field: &str) -> Result<u8> {
    field
        .strip_prefix("gf")
        .or_else(|| field.strip_prefix("GF"))
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| Error::Parse(format!("field '{field}' is not of the form gfP")))
}

impl MatroidSpec {
    pub fn load(&self) -> Result<Loaded> {
        match self {
            MatroidSpec::Ranktable { n, ranks } => {
                Ok(Loaded { matroid: RankTable::from_ranks(*n, ranks.clone())?, matrix: None, graph: None })
            }
            MatroidSpec::Linear { field, matrix } => {
                let p = parse_field(field)?;
                let n = matrix.first().map_or(0, |r| r.len());
                let a = FFMatrix::from_rows(p, n, matrix)?;
                Ok(Loaded { matroid: a.vector_matroid()?, matrix: Some(a), graph: None })
            }
            MatroidSpec::Graphic { vertices, edges } => {
                let g = MultiGraph::new(*vertices, edges.iter().map(|e| (e[0], e[1])).collect())?;
                Ok(Loaded { matroid: g.cycle_matroid()?, matrix: None, graph: Some(g) })
            }
            MatroidSpec::Named { name, params } => {
                let graph = crate::graphs::named_graph(name, params).ok();
                let matroid = match &graph {
                    Some(g) => g.cycle_matroid()?,
                    None => RankTable::named(name, params)?,
                };
                let matrix =
                    if name == "fano" { Some(FFMatrix::from_rows(2, 7, &crate::matroid::fano_rows())?) } else { None };
                Ok(Loaded { matroid, matrix, graph })
            }
        }
    }

    pub fn from_table(m: &RankTable) -> Self {
        MatroidSpec::Ranktable { n: m.n(), ranks: m.ranks().to_vec() }
    }

    pub fn from_matrix(a: &FFMatrix) -> Self {
        MatroidSpec::Linear {
            field: format!("gf{}", a.p()),
            matrix: a.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
        }
    }

    pub fn from_graph(g: &MultiGraph) -> Self {
        MatroidSpec::Graphic { vertices: g.vertex_count(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect() }
    }
}

/// Loads JSON, matrix text or graph text, detected from the first token.
pub fn load_str(text: &str) -> Result<Loaded> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let spec: MatroidSpec = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return spec.load();
    }
    if t.starts_with("graph") {
        let g = MultiGraph::parse_text(t)?;
        return Ok(Loaded { matroid: g.cycle_matroid()?, matrix: None, graph: Some(g) });
    }
    if t.starts_with("gf") || t.starts_with("GF") {
        let a = FFMatrix::parse_text(t)?;
        return Ok(Loaded { matroid: a.vector_matroid()?, matrix: Some(a), graph: None });
    }
    Err(Error::Parse("input is neither matroid JSON, matrix text nor graph text".into()))
}

pub fn load_matrix_str(text: &str) -> Result<FFMatrix> {
    load_str(text)?.matrix.ok_or_else(|| Error::input("a matrix input is required"))
}
