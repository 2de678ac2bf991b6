//! Finite simple defining graphs, vertex subsets, links and maximal cliques.
//!
//! The vertex order is the declaration order and is total; it drives the
//! ShortLex canonicalization of every normal form downstream, so it is part
//! of the graph's identity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex in the declaration order of its [`DefiningGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Subset of the vertices of a defining graph, as a bitmask.
///
/// Graphs are capped at 64 vertices so that vertex sets are one machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn contains(self, v: VertexId) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1 << v.0;
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Vertices in declaration order.
    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(VertexId(i))
            }
        })
    }

    pub fn from_iter<I: IntoIterator<Item = VertexId>>(vs: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }
}

/// Wire format of a graph file: `vertices` then `edges` as name pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDescription {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// A finite simple graph with a fixed total vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    /// adjacency[v] = bitmask of neighbors of v
    adjacency: Vec<u64>,
}

impl DefiningGraph {
    /// Builds a graph from named vertices and edges, validating simplicity.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<DefiningGraph> {
        if vertices.len() > 64 {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVertex(n.clone()));
            }
        }
        let mut adjacency = vec![0u64; names.len()];
        let index = |n: &str| -> Result<usize> {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::UnknownVertex(n.to_owned()))
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(Error::LoopEdge(a.to_owned()));
            }
            if adjacency[i] >> j & 1 == 1 {
                return Err(Error::DuplicateEdge(a.to_owned(), b.to_owned()));
            }
            adjacency[i] |= 1 << j;
            adjacency[j] |= 1 << i;
        }
        Ok(DefiningGraph { names, adjacency })
    }

    pub fn from_description(d: &GraphDescription) -> Result<DefiningGraph> {
        let edges: Vec<(&str, &str)> = d.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let vertices: Vec<&str> = d.vertices.iter().map(|s| s.as_str()).collect();
        DefiningGraph::new(&vertices, &edges)
    }

    /// Canonical description: edges sorted by vertex order, lesser endpoint first.
    pub fn description(&self) -> GraphDescription {
        let mut edges = Vec::new();
        for i in 0..self.names.len() {
            for j in (i + 1)..self.names.len() {
                if self.adjacent(VertexId(i as u32), VertexId(j as u32)) {
                    edges.push((self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        GraphDescription { vertices: self.names.clone(), edges }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn all_vertices(&self) -> VertexSet {
        if self.names.is_empty() {
            VertexSet::EMPTY
        } else {
            VertexSet(u64::MAX >> (64 - self.names.len()))
        }
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|m| m == name)
            .map(|i| VertexId(i as u32))
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.index()] >> v.0 & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// The link of `v`: its neighbor set. Never contains `v`.
    pub fn link(&self, v: VertexId) -> VertexSet {
        VertexSet(self.adjacency[v.index()])
    }

    pub fn link_of(&self, name: &str) -> Result<VertexSet> {
        Ok(self.link(self.vertex(name)?))
    }

    /// All inclusion-maximal cliques, each sorted by vertex order, the list
    /// sorted lexicographically. Isolated vertices yield singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let all = self.all_vertices();
        self.bron_kerbosch(VertexSet::EMPTY, all, VertexSet::EMPTY, &mut out);
        out.sort_by_key(|s| {
            let mut key: Vec<u32> = s.iter().map(|v| v.0).collect();
            key.sort_unstable();
            key
        });
        out
    }

    fn bron_kerbosch(&self, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let candidates: Vec<VertexId> = p.iter().collect();
        for v in candidates {
            let nv = self.link(v);
            self.bron_kerbosch(
                r.union(VertexSet::from_iter([v])),
                p.intersect(nv),
                x.intersect(nv),
                out,
            );
            p.0 &= !(1 << v.0);
            x.insert(v);
        }
    }

    pub fn set_names(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.name(v).to_owned()).collect()
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.description();
        write!(f, "vertices: {:?}, edges: {:?}", d.vertices, d.edges)
    }
}
