//! Pairwise vertex connectivity (Menger witnesses), k-blocks, and the block
//! number.
//!
//! A k-block is a maximal set of at least k vertices no two of which can be
//! separated by deleting fewer than k vertices. Adjacent pairs cannot be
//! separated by vertex deletion at all, so they are inseparable at every
//! level (kappa is infinite).

use crate::detection::find_clique;
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlocksError {
    #[error("pair connectivity requires two distinct vertices, got {0} twice")]
    IdenticalVertices(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kappa {
    Finite(usize),
    /// Adjacent pairs: no vertex deletion separates an edge.
    Infinite,
}

impl Kappa {
    pub fn at_least(&self, k: usize) -> bool {
        match *self {
            Kappa::Finite(v) => v >= k,
            Kappa::Infinite => true,
        }
    }
}

/// Minimum vertex cut between a pair, with a realizing cut and a maximum
/// family of internally disjoint paths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparatorResult {
    pub kappa: Kappa,
    /// A minimum separator (absent for adjacent pairs).
    pub cut: Option<Vec<usize>>,
    /// `kappa` internally disjoint u-v paths; for adjacent pairs, the edge.
    pub paths: Vec<Vec<usize>>,
}

/// Flow network on the vertex-split digraph: each vertex w becomes an arc
/// w_in -> w_out of capacity 1, each edge xy becomes uncapacitated arcs
/// x_out -> y_in and y_out -> x_in, so every finite cut consists of split
/// arcs only and is a vertex cut.
struct SplitFlow {
    heads: Vec<usize>,
    caps: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

const UNCAPPED: i32 = i32::MAX / 2;

impl SplitFlow {
    fn new(g: &Graph) -> Self {
        let mut net = SplitFlow {
            heads: Vec::new(),
            caps: Vec::new(),
            adj: vec![Vec::new(); 2 * g.n()],
        };
        for w in g.vertices() {
            net.add_arc(2 * w, 2 * w + 1, 1);
        }
        for (x, y) in g.edges() {
            net.add_arc(2 * x + 1, 2 * y, UNCAPPED);
            net.add_arc(2 * y + 1, 2 * x, UNCAPPED);
        }
        net
    }

    fn add_arc(&mut self, a: usize, b: usize, cap: i32) {
        let id = self.heads.len();
        self.heads.push(b);
        self.caps.push(cap);
        self.adj[a].push(id);
        self.heads.push(a);
        self.caps.push(0);
        self.adj[b].push(id + 1);
    }

    /// One BFS augmentation of a single unit; returns false when the sink is
    /// unreachable, leaving the residual reachability in `reached`.
    fn augment(&mut self, source: usize, sink: usize, reached: &mut Vec<bool>) -> bool {
        reached.fill(false);
        reached[source] = true;
        let mut prev_arc = vec![usize::MAX; self.adj.len()];
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            for &id in &self.adj[a] {
                let b = self.heads[id];
                if self.caps[id] > 0 && !reached[b] {
                    reached[b] = true;
                    prev_arc[b] = id;
                    queue.push_back(b);
                }
            }
        }
        if !reached[sink] {
            return false;
        }
        let mut at = sink;
        while at != source {
            let id = prev_arc[at];
            self.caps[id] -= 1;
            self.caps[id ^ 1] += 1;
            at = self.heads[id ^ 1];
        }
        true
    }
}

/// Minimum vertex cut and Menger path family between non-adjacent `u`, `v`
/// (excluding the endpoints themselves); adjacent pairs report infinite
/// connectivity.
pub fn pair_connectivity(g: &Graph, u: usize, v: usize) -> Result<SeparatorResult, BlocksError> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(BlocksError::OutOfRange { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(BlocksError::IdenticalVertices(u));
    }
    if g.adjacent(u, v) {
        return Ok(SeparatorResult {
            kappa: Kappa::Infinite,
            cut: None,
            paths: vec![vec![u, v]],
        });
    }
    let mut net = SplitFlow::new(g);
    let source = 2 * u + 1;
    let sink = 2 * v;
    let mut reached = vec![false; 2 * g.n()];
    let mut kappa = 0;
    while net.augment(source, sink, &mut reached) {
        kappa += 1;
    }
    // Residual reachability marks the cut: split arcs crossing the frontier.
    let cut: Vec<usize> = g
        .vertices()
        .filter(|&w| w != u && w != v && reached[2 * w] && !reached[2 * w + 1])
        .collect();

    // Decompose the flow into vertex paths; the flow on a forward arc is the
    // residual of its reverse arc, consumed as paths are peeled off.
    let mut paths = Vec::with_capacity(kappa);
    for _ in 0..kappa {
        let mut path = vec![u];
        let mut at = source;
        while at != sink {
            let id = *net.adj[at]
                .iter()
                .find(|&&id| id % 2 == 0 && net.caps[id ^ 1] > 0)
                .expect("flow conservation yields an arc with unconsumed flow");
            net.caps[id ^ 1] -= 1;
            at = net.heads[id];
            if at % 2 == 0 && at != sink {
                // Entering w_in; the next hop is the split arc to w_out.
                path.push(at / 2);
            }
        }
        path.push(v);
        paths.push(path);
    }
    Ok(SeparatorResult {
        kappa: Kappa::Finite(kappa),
        cut: Some(cut),
        paths,
    })
}

/// All-pairs kappa values; `None` marks adjacent (or identical) pairs.
pub fn kappa_table(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut table = vec![vec![None; n]; n];
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.adjacent(u, v) {
                let result = pair_connectivity(g, u, v).expect("distinct in-range pair");
                let Kappa::Finite(k) = result.kappa else {
                    unreachable!("non-adjacent pair has finite kappa")
                };
                table[u][v] = Some(k);
                table[v][u] = Some(k);
            }
        }
    }
    table
}

/// Auxiliary inseparability graph at level `k`: vertices of `g`, edges for
/// pairs that are adjacent or have kappa >= k.
fn inseparability_graph(g: &Graph, table: &[Vec<Option<usize>>], k: usize) -> Graph {
    let mut edges = Vec::new();
    for u in g.vertices() {
        for v in (u + 1)..g.n() {
            let inseparable = match table[u][v] {
                None => g.adjacent(u, v),
                Some(kappa) => kappa >= k,
            };
            if inseparable {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(g.n(), edges).expect("aux graph is valid")
}

fn extend_maximal(aux: &Graph, core: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = core.to_vec();
    for w in aux.vertices() {
        if !set.contains(&w) && set.iter().all(|&s| aux.adjacent(s, w)) {
            set.push(w);
        }
    }
    set.sort_unstable();
    set
}

/// Finds a k-block: a clique of size >= k in the inseparability graph,
/// extended to a maximal pairwise-inseparable set.
pub fn exists_k_block(g: &Graph, k: usize) -> Option<Vec<usize>> {
    assert!(k >= 1, "block level must be at least 1");
    if g.n() < k {
        return None;
    }
    if k == 1 {
        // Degenerate level: every single vertex is pairwise inseparable.
        return Some(extend_maximal(&inseparability_graph(g, &kappa_table(g), 1), &[0]));
    }
    let table = kappa_table(g);
    let aux = inseparability_graph(g, &table, k);
    let clique = find_clique(&aux, k)?;
    Some(extend_maximal(&aux, &clique.map))
}

/// Largest k admitting a k-block, with a witness block. Requires n >= 1.
pub fn block_number(g: &Graph) -> (usize, Vec<usize>) {
    assert!(g.n() >= 1, "block number needs at least one vertex");
    let table = kappa_table(g);
    for k in (2..=g.n()).rev() {
        let aux = inseparability_graph(g, &table, k);
        if let Some(clique) = find_clique(&aux, k) {
            return (k, extend_maximal(&aux, &clique.map));
        }
    }
    (1, extend_maximal(&inseparability_graph(g, &table, 1), &[0]))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockReport {
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
    pub block_number: usize,
}

fn bron_kerbosch(
    aux: &Graph,
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut clique = r.clone();
        clique.sort_unstable();
        out.push(clique);
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&c| {
            (
                p.iter().filter(|&&w| aux.adjacent(c, w)).count(),
                std::cmp::Reverse(c),
            )
        })
        .expect("p or x non-empty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&w| !aux.adjacent(pivot, w)).collect();
    for v in candidates {
        let np: Vec<usize> = p.iter().copied().filter(|&w| aux.adjacent(v, w)).collect();
        let nx: Vec<usize> = x.iter().copied().filter(|&w| aux.adjacent(v, w)).collect();
        r.push(v);
        bron_kerbosch(aux, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// All k-blocks (maximal pairwise-inseparable sets of size >= k) at the
/// given level, or at the block number when `k` is `None`.
pub fn block_report(g: &Graph, k: Option<usize>) -> BlockReport {
    let (number, _) = block_number(g);
    let level = k.unwrap_or(number);
    let table = kappa_table(g);
    let aux = inseparability_graph(g, &table, level.max(1));
    let mut cliques = Vec::new();
    bron_kerbosch(&aux, &mut Vec::new(), aux.vertices().collect(), Vec::new(), &mut cliques);
    let mut blocks: Vec<Vec<usize>> = cliques.into_iter().filter(|c| c.len() >= level).collect();
    blocks.sort();
    BlockReport {
        k: level,
        blocks,
        block_number: number,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{generate, GeneratorSpec};

    fn gen(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    /// Brute-force minimum separator size over all subsets of V minus the pair.
    fn brute_kappa(g: &Graph, u: usize, v: usize) -> Option<usize> {
        if g.adjacent(u, v) {
            return None;
        }
        let others: Vec<usize> = g.vertices().filter(|&w| w != u && w != v).collect();
        let mut best = others.len();
        for mask in 0u32..(1 << others.len()) {
            let cut: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &w)| w)
                .collect();
            if cut.len() < best && separates(g, u, v, &cut) {
                best = cut.len();
            }
        }
        Some(best)
    }

    fn separates(g: &Graph, u: usize, v: usize, cut: &[usize]) -> bool {
        let mut blocked = vec![false; g.n()];
        for &c in cut {
            blocked[c] = true;
        }
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(a) = stack.pop() {
            for &b in g.neighbors(a) {
                if !blocked[b] && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        !seen[v]
    }

    #[test]
    fn c6_opposite_vertices() {
        let c6 = gen("cycle:6");
        let r = pair_connectivity(&c6, 0, 3).unwrap();
        assert_eq!(r.kappa, Kappa::Finite(2));
        assert_eq!(r.paths.len(), 2);
        let cut = r.cut.unwrap();
        assert_eq!(cut.len(), 2);
        assert!(separates(&c6, 0, 3, &cut));
    }

    #[test]
    fn k33_same_part() {
        let g = gen("bipartite:3,3");
        let r = pair_connectivity(&g, 0, 1).unwrap();
        assert_eq!(r.kappa, Kappa::Finite(3));
        assert_eq!(r.paths.len(), 3);
    }

    #[test]
    fn adjacent_pairs_are_inseparable() {
        let g = gen("path:3");
        let r = pair_connectivity(&g, 0, 1).unwrap();
        assert_eq!(r.kappa, Kappa::Infinite);
        assert!(r.cut.is_none());
    }

    #[test]
    fn identical_pair_is_an_error() {
        assert_eq!(
            pair_connectivity(&gen("path:3"), 1, 1),
            Err(BlocksError::IdenticalVertices(1))
        );
    }

    #[test]
    fn menger_paths_are_internally_disjoint() {
        for seed in 0..20 {
            let g = crate::graph::random_graph(9, 0.4, seed).unwrap();
            for u in 0..9 {
                for v in (u + 1)..9 {
                    let r = pair_connectivity(&g, u, v).unwrap();
                    if let Kappa::Finite(k) = r.kappa {
                        assert_eq!(Some(k), brute_kappa(&g, u, v), "seed {seed} pair {u},{v}");
                        assert_eq!(r.paths.len(), k);
                        let mut seen = std::collections::HashSet::new();
                        for path in &r.paths {
                            assert_eq!(path[0], u);
                            assert_eq!(*path.last().unwrap(), v);
                            for w in path.windows(2) {
                                assert!(g.adjacent(w[0], w[1]));
                            }
                            for &w in &path[1..path.len() - 1] {
                                assert!(seen.insert(w), "internal vertex {w} reused");
                            }
                        }
                        let cut = r.cut.unwrap();
                        assert_eq!(cut.len(), k);
                        assert!(separates(&g, u, v, &cut));
                    }
                }
            }
        }
    }

    #[test]
    fn k_block_examples() {
        assert_eq!(exists_k_block(&gen("complete:5"), 5), Some(vec![0, 1, 2, 3, 4]));
        // C_6 at level 3: only adjacency edges survive in the aux graph,
        // which is triangle-free.
        assert_eq!(exists_k_block(&gen("cycle:6"), 3), None);
        let p5_block = exists_k_block(&gen("path:5"), 2).unwrap();
        assert_eq!(p5_block.len(), 2);
    }

    #[test]
    fn block_numbers() {
        assert_eq!(block_number(&gen("complete:6")).0, 6);
        assert_eq!(block_number(&gen("tripod:1,2,2")).0, 2);
        for n in 4..=8 {
            let (b, witness) = block_number(&generate(&GeneratorSpec::Cycle(n)).unwrap());
            assert_eq!(b, 2, "C_{n}");
            assert_eq!(witness.len(), n); // at level 2 the whole cycle is one block
        }
        assert_eq!(block_number(&Graph::empty(1).unwrap()).0, 1);
    }

    #[test]
    fn monotonicity_of_blocks() {
        for seed in 0..10 {
            let g = crate::graph::random_graph(8, 0.45, seed).unwrap();
            for k in 2..8 {
                if exists_k_block(&g, k + 1).is_some() {
                    assert!(exists_k_block(&g, k).is_some(), "seed {seed} level {k}");
                }
            }
        }
    }

    #[test]
    fn block_report_shape() {
        let report = block_report(&gen("cycle:5"), None);
        assert_eq!(report.block_number, 2);
        assert_eq!(report.k, 2);
        assert_eq!(report.blocks, vec![vec![0, 1, 2, 3, 4]]);
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["blocks"].is_array());
    }
}
