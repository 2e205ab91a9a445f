//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored twice: bitset rows for O(1) pair queries and sorted
//! neighbor lists for iteration. Graphs are immutable once built, so values
//! can be shared freely across threads.

pub mod formats;
pub mod generators;

use crate::bitset::Bitset;
use crate::detection::SubdivisionModel;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

/// Library-wide cap on the vertex count; everything here is desk scale.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph too large: {0} vertices (cap {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list parse error at line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("invalid generator spec: {0}")]
    Spec(String),
    #[error("edge {0}-{1} not present in graph")]
    MissingEdge(usize, usize),
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    rows: Vec<Bitset>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph {
            n,
            rows: vec![Bitset::new(n); n],
            neighbors: vec![Vec::new(); n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, n });
                }
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        g.rebuild_neighbor_lists();
        Ok(g)
    }

    fn rebuild_neighbor_lists(&mut self) {
        for v in 0..self.n {
            self.neighbors[v] = self.rows[v].to_vec();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(|ns| ns.len()).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// Bitset row of `v`'s neighborhood.
    pub fn row(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `vertices` (deduplicated, sorted); returns the
    /// subgraph together with the map from new labels to old ones.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let index: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vs.iter().enumerate() {
            for &w in &self.neighbors[v] {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let g = Graph::from_edges(vs.len(), edges).expect("induced subgraph is valid");
        (g, vs)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, edges).expect("complement is valid")
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }
}

#[derive(Serialize, Deserialize)]
struct GraphData {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphData {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let data = GraphData::deserialize(deserializer)?;
        Graph::from_edges(data.n, data.edges).map_err(D::Error::custom)
    }
}

/// Line graph of `g`: one vertex per edge of `g` (in lexicographic edge
/// order), adjacent when the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut le = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                le.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), le).expect("line graph is valid")
}

/// Subdivides each edge of `g` the requested number of times. Edges absent
/// from `counts` are kept as they are. Original vertices keep their labels;
/// subdivision vertices are appended in lexicographic edge order, walking
/// each path from its smaller endpoint.
pub fn subdivide(
    g: &Graph,
    counts: &BTreeMap<(usize, usize), usize>,
) -> Result<(Graph, SubdivisionModel), GraphError> {
    for &(u, v) in counts.keys() {
        if u >= g.n() || v >= g.n() || !g.adjacent(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
    }
    let edges = g.edges();
    let mut next = g.n();
    let mut new_edges: Vec<(usize, usize)> = Vec::new();
    let mut paths = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let k = counts
            .get(&(u, v))
            .or_else(|| counts.get(&(v, u)))
            .copied()
            .unwrap_or(0);
        let mut path = vec![u];
        for _ in 0..k {
            path.push(next);
            next += 1;
        }
        path.push(v);
        for w in path.windows(2) {
            new_edges.push((w[0], w[1]));
        }
        paths.push(path);
    }
    let host = Graph::from_edges(next, new_edges)?;
    let model = SubdivisionModel {
        pattern: g.clone(),
        branch: (0..g.n()).collect(),
        paths,
    };
    Ok((host, model))
}

/// Subdivides every edge of `g` exactly `k` times.
pub fn subdivide_uniform(g: &Graph, k: usize) -> Result<(Graph, SubdivisionModel), GraphError> {
    let counts = g.edges().into_iter().map(|e| (e, k)).collect();
    subdivide(g, &counts)
}

/// Disjoint union; block `i`'s vertices are relabeled by the offset
/// `sum of earlier block sizes`.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph, GraphError> {
    let n: usize = gs.iter().map(|g| g.n()).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in gs {
        for (u, v) in g.edges() {
            edges.push((u + offset, v + offset));
        }
        offset += g.n();
    }
    Graph::from_edges(n, edges)
}

/// xorshift64* stream; the fixed PRNG behind [`random_graph`] so other
/// implementations can reproduce identical graphs.
///
/// State update: `x ^= x >> 12; x ^= x << 25; x ^= x >> 27`, output
/// `x * 0x2545F4914F6CDD1D`. A zero seed is replaced by `0x9E3779B97F4A7C15`.
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        XorShift64Star {
            state: if seed == 0 { 0x9E3779B97F4A7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in [0, 1) from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Mixes a 64-bit value; used to derive per-sample seeds deterministically.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// G(n, p) sample, reproducible per `(n, edge_probability, seed)`: pairs
/// `(u, v)` with `u < v` are visited in lexicographic order and each consumes
/// one PRNG draw.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<Graph, GraphError> {
    assert!(
        (0.0..=1.0).contains(&edge_probability),
        "edge probability must lie in [0, 1]"
    );
    let mut rng = XorShift64Star::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.next_f64() < edge_probability {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}
