#![allow(dead_code)]

//! Definitional oracles used by the acceptance and property suites. These
//! deliberately avoid the library's algorithms: tree-width by trying every
//! elimination ordering, separators by trying every vertex subset,
//! recognition by the raw definitions.

use twbound::graph::generators::{generate, GeneratorSpec};
use twbound::graph::{disjoint_union, line_graph, Graph};

pub fn gen(s: &str) -> Graph {
    generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
}

/// Adjacency bitmasks of a graph with at most 64 vertices.
pub fn adjacency_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
        .collect()
}

/// All labeled graphs on n vertices as adjacency masks, one per edge mask.
pub fn graph_from_edge_mask(n: usize, mask: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    adj
}

pub fn masks_to_graph(adj: &[u64]) -> Graph {
    let n = adj.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn mask_graph_connected(adj: &[u64]) -> bool {
    let n = adj.len();
    if n <= 1 {
        return true;
    }
    let mut seen = 1u64;
    loop {
        let mut next = seen;
        let mut bits = seen;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen.count_ones() as usize == n
}

/// Minimum over all elimination orderings of the maximum elimination
/// degree. Exhaustive search with the one sound prune: the running maximum
/// never decreases as an ordering is extended.
pub fn oracle_treewidth(adj: &[u64]) -> i64 {
    let n = adj.len();
    if n == 0 {
        return -1;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut best = n - 1; // attained by complete graphs, never exceeded
    fn rec(adj: &[u64], n: usize, remaining: u64, current: usize, best: &mut usize) {
        if remaining == 0 {
            *best = current;
            return;
        }
        for v in 0..n {
            if remaining >> v & 1 == 0 {
                continue;
            }
            let nb = adj[v] & remaining;
            let deg = nb.count_ones() as usize;
            let new_max = current.max(deg);
            if new_max >= *best {
                continue;
            }
            let mut filled = adj.to_vec();
            let mut bits = nb;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                filled[w] |= nb & !(1 << w);
            }
            rec(&filled, n, remaining & !(1 << v), new_max, best);
        }
    }
    rec(adj, n, full, 0, &mut best);
    best as i64
}

/// Acyclic and every component has at most 3 leaves, straight from the
/// definitions: a component is a tree exactly when its edge count is one
/// below its vertex count, and leaves are its degree-1 vertices.
pub fn oracle_is_tripod(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let degree = |v: usize| {
            g.neighbors(v)
                .iter()
                .filter(|w| comp.binary_search(w).is_ok())
                .count()
        };
        let edges: usize = comp.iter().map(|&v| degree(v)).sum::<usize>() / 2;
        let leaves = comp.iter().filter(|&&v| degree(v) == 1).count();
        edges == comp.len() - 1 && leaves <= 3
    })
}

/// All tripods (forests with at most 3 leaves per component and no isolated
/// vertices) with exactly `edges` edges, built as multisets of path and
/// spider components.
pub fn enumerate_tripods_with_edges(edges: usize) -> Vec<Graph> {
    fn partitions(total: usize, max_part: usize) -> Vec<Vec<usize>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max_part.min(total)).rev() {
            for mut rest in partitions(total - first, first) {
                let mut p = vec![first];
                p.append(&mut rest);
                out.push(p);
            }
        }
        out
    }
    // Component shapes with e edges: the path, and spiders with arm lengths
    // i >= j >= k >= 1 summing to e.
    fn shapes(e: usize) -> Vec<Graph> {
        let mut out = vec![generate(&GeneratorSpec::Path(e + 1)).unwrap()];
        for i in 1..=e {
            for j in 1..=i {
                if i + j >= e {
                    continue;
                }
                let k = e - i - j;
                if k >= 1 && k <= j {
                    out.push(generate(&GeneratorSpec::Tripod(i, j, k)).unwrap());
                }
            }
        }
        out
    }
    let mut result = Vec::new();
    for partition in partitions(edges, edges) {
        let choices: Vec<Vec<Graph>> = partition.iter().map(|&e| shapes(e)).collect();
        let mut stack: Vec<(usize, Vec<Graph>)> = vec![(0, vec![])];
        while let Some((level, acc)) = stack.pop() {
            if level == choices.len() {
                result.push(disjoint_union(&acc).unwrap());
                continue;
            }
            for shape in &choices[level] {
                let mut next = acc.clone();
                next.push(shape.clone());
                stack.push((level + 1, next));
            }
        }
    }
    result
}

/// Line graphs of all tripods with `edges` edges, deduplicated by degree
/// sequence bucket only (callers run isomorphism against the full list).
pub fn line_graphs_of_tripods(edges: usize) -> Vec<Graph> {
    enumerate_tripods_with_edges(edges)
        .iter()
        .map(line_graph)
        .collect()
}

/// Membership in "line graph of some tripod" by enumeration + isomorphism.
pub fn oracle_is_line_of_tripod(g: &Graph, candidates: &[Graph]) -> bool {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    deg.sort_unstable();
    for candidate in candidates {
        if candidate.n() != g.n() || candidate.edge_count() != g.edge_count() {
            continue;
        }
        let mut cdeg: Vec<usize> = candidate.vertices().map(|v| candidate.degree(v)).collect();
        cdeg.sort_unstable();
        if cdeg != deg {
            continue;
        }
        if twbound::detection::is_isomorphic(g, candidate).unwrap() {
            return true;
        }
    }
    false
}

/// Minimum vertex-separator size over every subset of V minus the pair;
/// `None` for adjacent pairs.
pub fn oracle_min_separator(g: &Graph, u: usize, v: usize) -> Option<usize> {
    if g.adjacent(u, v) {
        return None;
    }
    let others: Vec<usize> = g.vertices().filter(|&w| w != u && w != v).collect();
    let mut best = others.len();
    for mask in 0u64..(1 << others.len()) {
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

pub fn separates(g: &Graph, u: usize, v: usize, cut: &[usize]) -> bool {
    let mut blocked = vec![false; g.n()];
    for &c in cut {
        blocked[c] = true;
    }
    if blocked[u] || blocked[v] {
        return false;
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

/// Block number straight from the definition: the largest k such that some
/// vertex set of size >= k is pairwise inseparable below k.
pub fn oracle_block_number(g: &Graph) -> usize {
    let n = g.n();
    assert!(n >= 1 && n <= 16);
    let mut kappa = vec![vec![None; n]; n];
    for u in 0..n {
        for v in (u + 1)..n {
            kappa[u][v] = oracle_min_separator(g, u, v);
            kappa[v][u] = kappa[u][v];
        }
    }
    for k in (1..=n).rev() {
        for mask in 0u32..(1 << n) {
            if (mask.count_ones() as usize) < k {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let ok = members.iter().enumerate().all(|(i, &u)| {
                members[i + 1..]
                    .iter()
                    .all(|&v| kappa[u][v].is_none_or(|c| c >= k))
            });
            if ok {
                return k;
            }
        }
    }
    unreachable!("singletons are 1-blocks");
}

/// Exhaustive induced-embedding existence check over all injective maps.
pub fn oracle_has_induced(pattern: &Graph, host: &Graph) -> bool {
    fn rec(pattern: &Graph, host: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let depth = map.len();
        if depth == pattern.n() {
            return true;
        }
        for cand in host.vertices() {
            if used[cand] {
                continue;
            }
            let ok = (0..depth)
                .all(|q| pattern.adjacent(depth, q) == host.adjacent(cand, map[q]));
            if ok {
                map.push(cand);
                used[cand] = true;
                if rec(pattern, host, map, used) {
                    return true;
                }
                map.pop();
                used[cand] = false;
            }
        }
        false
    }
    if pattern.n() > host.n() {
        return false;
    }
    rec(pattern, host, &mut Vec::new(), &mut vec![false; host.n()])
}
