//! Flat-file graph formats.
//!
//! * `edgelist`: one `source<TAB>destination` pair per line.
//! * `triples`: one `edge_index<TAB>vertex_id<TAB>sign` incidence entry per
//!   line, sign being `-1` (edge leaves the vertex) or `1` (edge enters it).
//!
//! Both are UTF-8. Blank lines and lines starting with `#` are skipped.
//! Vertex ids are arbitrary tokens, numbered in order of first appearance.

use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::error::Error;
use crate::matrix::{incidence_to_adjacency, AdjacencyMatrix, IncidenceMatrix, VertexDictionary};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Triples,
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::EdgeList => "edgelist",
            InputFormat::Triples => "triples",
        })
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "edgelist" => Ok(InputFormat::EdgeList),
            "triples" => Ok(InputFormat::Triples),
            other => Err(Error::Parameter(format!(
                "format must be `edgelist` or `triples`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Structure(#[from] Error),
}

/// A parsed graph together with its vertex names.
#[derive(Debug, Clone)]
pub struct Graph {
    pub adjacency: AdjacencyMatrix,
    pub vertices: VertexDictionary,
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), ReadError>> {
    reader
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(ReadError::Io(e))),
            Ok(line) => {
                let line = line.strip_suffix('\r').unwrap_or(&line).to_owned();
                if line.trim().is_empty() || line.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, line)))
                }
            }
        })
}

fn fields<const N: usize>(line: usize, text: &str, layout: &str) -> Result<[String; N], ReadError> {
    let parts: Vec<&str> = text.split('\t').collect();
    if parts.len() != N || parts.iter().any(|p| p.is_empty()) {
        return Err(ReadError::Parse {
            line,
            message: format!("expected `{layout}`, got {:?}", text),
        });
    }
    Ok(std::array::from_fn(|i| parts[i].to_owned()))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, ReadError> {
    let mut vertices = VertexDictionary::new();
    let mut edges = Vec::new();
    for item in content_lines(reader) {
        let (line, text) = item?;
        let [src, dst] = fields::<2>(line, &text, "source<TAB>destination")?;
        edges.push((vertices.intern(&src), vertices.intern(&dst), 1));
    }
    let adjacency = AdjacencyMatrix::from_entries(vertices.len(), edges)?;
    Ok(Graph {
        adjacency,
        vertices,
    })
}

pub fn read_triples<R: BufRead>(reader: R) -> Result<Graph, ReadError> {
    let mut vertices = VertexDictionary::new();
    let mut triples = Vec::new();
    let mut n_edges = 0usize;
    for item in content_lines(reader) {
        let (line, text) = item?;
        let [edge, vertex, sign] = fields::<3>(line, &text, "edge_index<TAB>vertex_id<TAB>sign")?;
        let edge: usize = edge.parse().map_err(|_| ReadError::Parse {
            line,
            message: format!("edge index `{edge}` is not a non-negative integer"),
        })?;
        let sign: i64 = sign.parse().map_err(|_| ReadError::Parse {
            line,
            message: format!("sign `{sign}` is not an integer"),
        })?;
        n_edges = n_edges.max(edge + 1);
        triples.push((edge, vertices.intern(&vertex), sign));
    }
    let incidence = IncidenceMatrix::from_triples(n_edges, vertices.len(), triples)?;
    Ok(Graph {
        adjacency: incidence_to_adjacency(&incidence),
        vertices,
    })
}

pub fn read_graph<R: BufRead>(reader: R, format: InputFormat) -> Result<Graph, ReadError> {
    match format {
        InputFormat::EdgeList => read_edge_list(reader),
        InputFormat::Triples => read_triples(reader),
    }
}

/// Writes `v<source>\tv<destination>` for every complete edge of `e`.
pub fn write_edge_list<W: std::io::Write>(e: &IncidenceMatrix, mut out: W) -> std::io::Result<()> {
    for i in 0..e.n_edges() {
        if let (Some(u), Some(v)) = e.edge(i) {
            writeln!(out, "v{u}\tv{v}")?;
        }
    }
    out.flush()
}
