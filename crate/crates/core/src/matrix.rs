//! Sparse incidence and adjacency matrices.
//!
//! An [`IncidenceMatrix`] has one row per edge and one column per vertex. A
//! row holds `-1` at the vertex the edge leaves and `+1` at the vertex it
//! enters. Because every row carries at most one entry of each sign, the
//! matrix is stored row-wise as an optional (tail, head) pair per edge.
//!
//! The adjacency matrix is the product `|E < 0|ᵀ · |E > 0|`: entry `(u, v)`
//! counts the edges whose `-1` sits at `u` and whose `+1` sits at `v`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Sign of a nonzero incidence entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// The edge leaves the vertex (`-1`).
    Out,
    /// The edge enters the vertex (`+1`).
    In,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Out => -1,
            Sign::In => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct EdgeRow {
    tail: Option<u32>,
    head: Option<u32>,
}

/// Signed edge × vertex matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n_vertices: usize,
    rows: Vec<EdgeRow>,
}

impl IncidenceMatrix {
    /// An incidence matrix with no entries.
    pub fn empty(n_edges: usize, n_vertices: usize) -> Self {
        IncidenceMatrix {
            n_vertices,
            rows: vec![EdgeRow::default(); n_edges],
        }
    }

    /// Builds a matrix from `(edge, vertex, value)` triples.
    ///
    /// Values must be exactly `-1` or `+1`. A row may hold at most one entry
    /// of each sign; a self-loop is a row whose two entries share a vertex.
    pub fn from_triples<I>(n_edges: usize, n_vertices: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        if n_vertices > u32::MAX as usize {
            return Err(Error::Parameter(format!(
                "at most {} vertices are supported, got {n_vertices}",
                u32::MAX
            )));
        }
        let mut m = Self::empty(n_edges, n_vertices);
        for (edge, vertex, value) in triples {
            let structural = |reason| Error::Structural {
                edge,
                vertex,
                value,
                reason,
            };
            if edge >= n_edges {
                return Err(structural("edge index out of range"));
            }
            if vertex >= n_vertices {
                return Err(structural("vertex index out of range"));
            }
            let sign = match value {
                -1 => Sign::Out,
                1 => Sign::In,
                _ => return Err(structural("entry magnitude must be exactly 1")),
            };
            let row = &mut m.rows[edge];
            let slot = match sign {
                Sign::Out => &mut row.tail,
                Sign::In => &mut row.head,
            };
            match *slot {
                None => *slot = Some(vertex as u32),
                Some(existing) if existing as usize == vertex => {
                    return Err(structural("duplicate (edge, vertex) entry"))
                }
                Some(_) => {
                    return Err(structural(match sign {
                        Sign::Out => "edge already has a -1 entry",
                        Sign::In => "edge already has a +1 entry",
                    }))
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix holding one complete row per directed `(source, destination)` pair.
    pub fn from_directed_edges<I>(n_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n_vertices > u32::MAX as usize {
            return Err(Error::Parameter(format!(
                "at most {} vertices are supported, got {n_vertices}",
                u32::MAX
            )));
        }
        let mut rows = Vec::new();
        for (edge, (src, dst)) in edges.into_iter().enumerate() {
            for v in [src, dst] {
                if v >= n_vertices {
                    return Err(Error::Structural {
                        edge,
                        vertex: v,
                        value: if v == src { -1 } else { 1 },
                        reason: "vertex index out of range",
                    });
                }
            }
            rows.push(EdgeRow {
                tail: Some(src as u32),
                head: Some(dst as u32),
            });
        }
        Ok(IncidenceMatrix { n_vertices, rows })
    }

    pub fn n_edges(&self) -> usize {
        self.rows.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// The (tail, head) vertices of an edge row.
    pub fn edge(&self, edge: usize) -> (Option<usize>, Option<usize>) {
        let row = self.rows[edge];
        (row.tail.map(|v| v as usize), row.head.map(|v| v as usize))
    }

    /// Nonzero entries in row order, `-1` before `+1` within a row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        self.rows.iter().enumerate().flat_map(|(e, row)| {
            let tail = row.tail.map(|v| (e, v as usize, Sign::Out));
            let head = row.head.map(|v| (e, v as usize, Sign::In));
            tail.into_iter().chain(head)
        })
    }

    pub fn nnz(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.tail.is_some() as usize + r.head.is_some() as usize)
            .sum()
    }

    /// Number of rows holding both a `-1` and a `+1` entry.
    pub fn complete_edges(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.tail.is_some() && r.head.is_some())
            .count()
    }
}

/// Vertex × vertex matrix of directed edge multiplicities. Zero entries are
/// not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n_vertices: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl AdjacencyMatrix {
    pub fn empty(n_vertices: usize) -> Self {
        AdjacencyMatrix {
            n_vertices,
            entries: BTreeMap::new(),
        }
    }

    /// Accumulates `(source, destination, multiplicity)` entries. Zero
    /// multiplicities are skipped.
    pub fn from_entries<I>(n_vertices: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut a = Self::empty(n_vertices);
        for (u, v, k) in entries {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::Parameter(format!(
                    "adjacency entry ({u}, {v}) outside a {n_vertices}-vertex matrix"
                )));
            }
            a.add(u, v, k);
        }
        Ok(a)
    }

    fn add(&mut self, u: usize, v: usize, k: u64) {
        if k > 0 {
            *self.entries.entry((u, v)).or_insert(0) += k;
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.entries.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(u, v), &k)| (u, v, k))
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities, i.e. the number of directed edges.
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// `A = |E < 0|ᵀ · |E > 0|`. Rows missing either sign contribute nothing.
pub fn incidence_to_adjacency(e: &IncidenceMatrix) -> AdjacencyMatrix {
    let mut a = AdjacencyMatrix::empty(e.n_vertices());
    for row in &e.rows {
        if let (Some(u), Some(v)) = (row.tail, row.head) {
            a.add(u as usize, v as usize, 1);
        }
    }
    a
}

/// Maps vertex tokens to dense indices in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexDictionary {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VertexDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `name`, assigning the next free index if unseen.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Builds an adjacency matrix from `(source, destination)` token pairs.
/// Repeated pairs accumulate multiplicity.
pub fn adjacency_from_edge_list<I, S>(pairs: I) -> (AdjacencyMatrix, VertexDictionary)
where
    I: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
{
    let mut dict = VertexDictionary::new();
    let mut edges = Vec::new();
    for (src, dst) in pairs {
        let u = dict.intern(src.as_ref());
        let v = dict.intern(dst.as_ref());
        edges.push((u, v));
    }
    let mut a = AdjacencyMatrix::empty(dict.len());
    for (u, v) in edges {
        a.add(u, v, 1);
    }
    (a, dict)
}
