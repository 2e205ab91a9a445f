//! Tree decompositions: validity and width checking, exact tree-width,
//! tightness, torsos, and the gluing of per-torso decompositions into a
//! decomposition of the whole graph.

use crate::graph::Graph;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashSet;
use thiserror::Error;

/// A tree of bags over host vertices. Nodes are `0..bags.len()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeDecomposition {
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Normalizes bags (sorted, deduplicated).
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { tree_edges, bags }
    }

    pub fn nodes(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one; -1 for the empty decomposition.
    pub fn width(&self) -> i64 {
        self.bags
            .iter()
            .map(|b| b.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes()];
        for &(a, b) in &self.tree_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// DOT export with bag contents as node labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph TD {\n");
        for (i, bag) in self.bags.iter().enumerate() {
            let label: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("  {i} [label=\"{{{}}}\"];\n", label.join(",")));
        }
        for &(a, b) in &self.tree_edges {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TdData {
    nodes: usize,
    tree_edges: Vec<(usize, usize)>,
    bags: Vec<Vec<usize>>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TdData {
            nodes: self.nodes(),
            tree_edges: self.tree_edges.clone(),
            bags: self.bags.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let data = TdData::deserialize(deserializer)?;
        if data.nodes != data.bags.len() {
            return Err(D::Error::custom("node count does not match bag count"));
        }
        Ok(TreeDecomposition::new(data.bags, data.tree_edges))
    }
}

/// The failed decomposition axiom, with a witness.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TdViolation {
    #[error("node graph is not a tree: {0}")]
    NotATree(String),
    #[error("bag {node} contains vertex {vertex} outside the host")]
    BagOutOfRange { node: usize, vertex: usize },
    #[error("vertex {0} is in no bag")]
    UncoveredVertex(usize),
    #[error("edge {0}-{1} is inside no bag")]
    UncoveredEdge(usize, usize),
    #[error("occurrence set of vertex {0} is disconnected")]
    DisconnectedOccurrence(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("invalid tree decomposition: {0}")]
    Invalid(#[from] TdViolation),
    #[error("unknown decomposition node {0}")]
    UnknownNode(usize),
    #[error("component with {0} vertices exceeds the exact solver cap of 64")]
    TooLargeForExact(usize),
    #[error("expected {expected} per-torso decompositions, got {got}")]
    WrongTorsoCount { expected: usize, got: usize },
    #[error("per-torso decomposition at node {node} uses vertex {vertex} outside its bag")]
    ForeignTorsoVertex { node: usize, vertex: usize },
    #[error("per-torso decomposition at node {node} is invalid: {violation}")]
    InvalidTorsoDecomposition { node: usize, violation: TdViolation },
    #[error("per-torso decomposition at node {node} has no bag covering the intersection {z:?}")]
    MissingIntersectionBag { node: usize, z: Vec<usize> },
}

/// Checks the three tree-decomposition axioms.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let nodes = td.nodes();
    if nodes == 0 {
        return if g.n() == 0 {
            Ok(())
        } else {
            Err(TdViolation::UncoveredVertex(0))
        };
    }
    if td.tree_edges.len() + 1 != nodes {
        return Err(TdViolation::NotATree(format!(
            "{} edges for {} nodes",
            td.tree_edges.len(),
            nodes
        )));
    }
    for &(a, b) in &td.tree_edges {
        if a >= nodes || b >= nodes {
            return Err(TdViolation::NotATree(format!("edge {a}-{b} out of range")));
        }
        if a == b {
            return Err(TdViolation::NotATree(format!("self-loop at node {a}")));
        }
    }
    let adj = td.neighbors();
    let mut seen = vec![false; nodes];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(TdViolation::NotATree("node graph is disconnected".into()));
    }

    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(TdViolation::BagOutOfRange { node, vertex: v });
            }
        }
    }
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            occurrences[v].push(node);
        }
    }
    for v in g.vertices() {
        if occurrences[v].is_empty() {
            return Err(TdViolation::UncoveredVertex(v));
        }
    }
    for (u, v) in g.edges() {
        let covered = td
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !covered {
            return Err(TdViolation::UncoveredEdge(u, v));
        }
    }
    for v in g.vertices() {
        let inside: HashSet<usize> = occurrences[v].iter().copied().collect();
        let mut seen = vec![false; nodes];
        let start = occurrences[v][0];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if inside.contains(&y) && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != inside.len() {
            return Err(TdViolation::DisconnectedOccurrence(v));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact tree-width via elimination orderings.
// ---------------------------------------------------------------------------

/// Result of the exact solver. On budget exhaustion the best bounds found so
/// far are reported together with the greedy decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreewidthOutcome {
    Exact {
        width: i64,
        decomposition: TreeDecomposition,
    },
    BudgetExceeded {
        lower: i64,
        upper: i64,
        best: TreeDecomposition,
    },
}

impl TreewidthOutcome {
    pub fn exact(self) -> Option<(i64, TreeDecomposition)> {
        match self {
            TreewidthOutcome::Exact {
                width,
                decomposition,
            } => Some((width, decomposition)),
            _ => None,
        }
    }
}

/// Vertices of `mask`, reachable-through-`through` closure from `v`:
/// the elimination degree set Q.
fn q_mask(adj: &[u64], through: u64, v: usize) -> u64 {
    let mut visited = 1u64 << v;
    let mut reach = adj[v];
    loop {
        let expand = reach & through & !visited;
        if expand == 0 {
            break;
        }
        visited |= expand;
        let mut r = reach;
        let mut bits = expand;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            r |= adj[w];
        }
        reach = r;
    }
    reach & !through & !(1u64 << v)
}

fn degeneracy(adj: &[u64]) -> usize {
    let n = adj.len();
    let mut remaining: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut best = 0;
    for _ in 0..n {
        let (v, d) = (0..n)
            .filter(|&v| remaining >> v & 1 == 1)
            .map(|v| (v, (adj[v] & remaining).count_ones() as usize))
            .min_by_key(|&(v, d)| (d, v))
            .expect("vertices remain");
        best = best.max(d);
        remaining &= !(1 << v);
    }
    best
}

/// Greedy minimum-fill-in elimination ordering; returns (width, ordering).
fn greedy_min_fill(adj: &[u64]) -> (usize, Vec<usize>) {
    let n = adj.len();
    let mut fill_adj = adj.to_vec();
    let mut remaining: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None; // (fill, degree, vertex)
        for v in 0..n {
            if remaining >> v & 1 == 0 {
                continue;
            }
            let nb = fill_adj[v] & remaining;
            let deg = nb.count_ones() as usize;
            let mut fill = 0;
            let mut bits = nb;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                fill += (nb & !fill_adj[w] & !(1u64 << w)).count_ones() as usize;
            }
            let key = (fill / 2, deg, v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let (_, deg, v) = best.expect("vertices remain");
        width = width.max(deg);
        let nb = fill_adj[v] & remaining;
        let mut bits = nb;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            fill_adj[w] |= nb & !(1 << w);
        }
        remaining &= !(1 << v);
        order.push(v);
    }
    (width, order)
}

/// Memo for failed states: dense bitmap for small components, hashing above.
enum FailedSet {
    Dense(Vec<bool>),
    Sparse(HashSet<u64>),
}

impl FailedSet {
    fn new(n: usize) -> Self {
        if n <= 22 {
            FailedSet::Dense(vec![false; 1 << n])
        } else {
            FailedSet::Sparse(HashSet::new())
        }
    }

    fn contains(&self, mask: u64) -> bool {
        match self {
            FailedSet::Dense(v) => v[mask as usize],
            FailedSet::Sparse(s) => s.contains(&mask),
        }
    }

    fn insert(&mut self, mask: u64) {
        match self {
            FailedSet::Dense(v) => v[mask as usize] = true,
            FailedSet::Sparse(s) => {
                s.insert(mask);
            }
        }
    }
}

struct DecideSearch<'a> {
    adj: &'a [u64],
    full: u64,
    k: usize,
    failed: FailedSet,
    budget: &'a mut u64,
}

impl DecideSearch<'_> {
    /// Is there an elimination ordering of the remaining vertices with every
    /// elimination degree at most k? `None` means the budget ran out.
    fn run(&mut self, eliminated: u64, order: &mut Vec<usize>) -> Option<bool> {
        if eliminated == self.full {
            return Some(true);
        }
        if self.failed.contains(eliminated) {
            return Some(false);
        }
        if *self.budget == 0 {
            return None;
        }
        *self.budget -= 1;

        let n = self.adj.len();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for v in 0..n {
            if eliminated >> v & 1 == 1 {
                continue;
            }
            let q = q_mask(self.adj, eliminated, v).count_ones() as usize;
            if q <= self.k {
                candidates.push((q, v));
            }
        }
        candidates.sort_unstable();
        // A vertex with elimination degree <= 1 is simplicial; taking it
        // first never hurts, so branching is unnecessary.
        if candidates.first().is_some_and(|&(q, _)| q <= 1) {
            candidates.truncate(1);
        }
        for (_, v) in candidates {
            order.push(v);
            match self.run(eliminated | 1 << v, order) {
                Some(true) => return Some(true),
                Some(false) => {
                    order.pop();
                }
                None => {
                    order.pop();
                    return None;
                }
            }
        }
        self.failed.insert(eliminated);
        Some(false)
    }
}

/// Bags and tree from an elimination ordering, in local labels.
fn decomposition_from_ordering(adj: &[u64], order: &[usize]) -> (usize, TreeDecomposition) {
    let n = adj.len();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut eliminated = 0u64;
    let mut bags = Vec::with_capacity(n);
    let mut parents: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut width = 0;
    for (i, &v) in order.iter().enumerate() {
        let q = q_mask(adj, eliminated, v);
        width = width.max(q.count_ones() as usize);
        let mut bag = vec![v];
        let mut parent: Option<usize> = None;
        let mut bits = q;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            bag.push(w);
            // Attach below the Q-member eliminated first.
            if parent.is_none_or(|p| position[w] < p) {
                parent = Some(position[w]);
            }
        }
        bag.sort_unstable();
        bags.push(bag);
        parents.push(parent.or(if i + 1 < n { Some(i + 1) } else { None }));
        eliminated |= 1 << v;
    }
    let tree_edges = parents
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|p| (i, p)))
        .collect();
    (width, TreeDecomposition::new(bags, tree_edges))
}

/// Exact tree-width of one connected component in local labels.
fn component_treewidth(adj: &[u64], budget: &mut u64) -> (bool, usize, TreeDecomposition) {
    let n = adj.len();
    let lb = degeneracy(adj);
    let (ub, greedy_order) = greedy_min_fill(adj);
    if lb == ub {
        let (w, td) = decomposition_from_ordering(adj, &greedy_order);
        return (true, w, td);
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    for k in lb..ub {
        let mut search = DecideSearch {
            adj,
            full,
            k,
            failed: FailedSet::new(n),
            budget,
        };
        let mut order = Vec::with_capacity(n);
        match search.run(0, &mut order) {
            Some(true) => {
                let (w, td) = decomposition_from_ordering(adj, &order);
                debug_assert_eq!(w, k);
                return (true, w, td);
            }
            Some(false) => {}
            None => {
                // Every level below k already failed, so k lower-bounds the width.
                let (_, td) = decomposition_from_ordering(adj, &greedy_order);
                return (false, k, td);
            }
        }
    }
    let (w, td) = decomposition_from_ordering(adj, &greedy_order);
    debug_assert_eq!(w, ub);
    (true, w, td)
}

/// Exact tree-width with a witness decomposition, solved per connected
/// component (each component must have at most 64 vertices). The budget
/// counts search-node expansions; exhaustion reports the bounds reached.
pub fn exact_treewidth(g: &Graph, budget: u64) -> Result<TreewidthOutcome, DecompositionError> {
    if g.n() == 0 {
        return Ok(TreewidthOutcome::Exact {
            width: -1,
            decomposition: TreeDecomposition::new(vec![], vec![]),
        });
    }
    let mut remaining = budget;
    let mut all_bags: Vec<Vec<usize>> = Vec::new();
    let mut all_edges: Vec<(usize, usize)> = Vec::new();
    let mut component_roots: Vec<usize> = Vec::new();
    let mut width: i64 = 0;
    let mut exact = true;
    let mut lower: i64 = 0;
    for comp in g.components() {
        if comp.len() > 64 {
            return Err(DecompositionError::TooLargeForExact(comp.len()));
        }
        let (local, back) = g.induced(&comp);
        let adj: Vec<u64> = (0..local.n())
            .map(|v| {
                local
                    .neighbors(v)
                    .iter()
                    .fold(0u64, |acc, &w| acc | 1 << w)
            })
            .collect();
        let (comp_exact, w, td) = component_treewidth(&adj, &mut remaining);
        exact &= comp_exact;
        width = width.max(w as i64);
        lower = lower.max(if comp_exact { w as i64 } else { w as i64 });
        let offset = all_bags.len();
        component_roots.push(offset);
        for bag in &td.bags {
            all_bags.push(bag.iter().map(|&v| back[v]).collect());
        }
        for &(a, b) in &td.tree_edges {
            all_edges.push((a + offset, b + offset));
        }
    }
    // Chain the component trees into one tree.
    for pair in component_roots.windows(2) {
        all_edges.push((pair[0], pair[1]));
    }
    let decomposition = TreeDecomposition::new(all_bags, all_edges);
    if exact {
        Ok(TreewidthOutcome::Exact {
            width,
            decomposition,
        })
    } else {
        let upper = decomposition.width();
        Ok(TreewidthOutcome::BudgetExceeded {
            lower,
            upper,
            best: decomposition,
        })
    }
}

// ---------------------------------------------------------------------------
// Tightness, torsos, gluing.
// ---------------------------------------------------------------------------

/// First tightness failure: separator pair `u`, `v` not connected inside the
/// `side` part while avoiding the rest of the separator.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("separator pair {u},{v} of tree edge {edge:?} not linked inside the side of node {side}")]
pub struct TightnessViolation {
    pub edge: (usize, usize),
    pub u: usize,
    pub v: usize,
    pub side: usize,
}

fn side_union(td: &TreeDecomposition, adj: &[Vec<usize>], from: usize, banned: usize) -> Vec<usize> {
    let mut seen = vec![false; td.nodes()];
    seen[from] = true;
    seen[banned] = true;
    let mut stack = vec![from];
    let mut union: HashSet<usize> = td.bags[from].iter().copied().collect();
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                union.extend(td.bags[y].iter().copied());
                stack.push(y);
            }
        }
    }
    let mut out: Vec<usize> = union.into_iter().collect();
    out.sort_unstable();
    out
}

/// Tightness: for every tree edge xy and every pair in Z_xy, both sides
/// contain a connecting path internally avoiding Z_xy.
pub fn is_tight(g: &Graph, td: &TreeDecomposition) -> Result<Result<(), TightnessViolation>, DecompositionError> {
    validate(g, td)?;
    let adj = td.neighbors();
    for &(x, y) in &td.tree_edges {
        let z: Vec<usize> = td.bags[x]
            .iter()
            .copied()
            .filter(|v| td.bags[y].binary_search(v).is_ok())
            .collect();
        for (i, &u) in z.iter().enumerate() {
            for &v in &z[i + 1..] {
                for (side, from) in [(x, x), (y, y)] {
                    let part = side_union(td, &adj, from, if from == x { y } else { x });
                    let allowed: HashSet<usize> = part
                        .iter()
                        .copied()
                        .filter(|w| *w == u || *w == v || z.binary_search(w).is_err())
                        .collect();
                    let mut seen: HashSet<usize> = [u].into();
                    let mut stack = vec![u];
                    let mut ok = false;
                    while let Some(a) = stack.pop() {
                        if a == v {
                            ok = true;
                            break;
                        }
                        for &b in g.neighbors(a) {
                            if allowed.contains(&b) && seen.insert(b) {
                                stack.push(b);
                            }
                        }
                    }
                    if !ok {
                        return Ok(Err(TightnessViolation {
                            edge: (x, y),
                            u,
                            v,
                            side,
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The torso at a node: the bag's induced graph plus a clique on each
/// intersection with a neighboring bag. `vertices` maps the local labels of
/// `graph` back to host vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsoView {
    pub node: usize,
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

impl TorsoView {
    /// Lifts a decomposition of `self.graph` (local labels) to host labels.
    pub fn lift(&self, local: &TreeDecomposition) -> TreeDecomposition {
        TreeDecomposition::new(
            local
                .bags
                .iter()
                .map(|bag| bag.iter().map(|&v| self.vertices[v]).collect())
                .collect(),
            local.tree_edges.clone(),
        )
    }
}

pub fn torso(g: &Graph, td: &TreeDecomposition, node: usize) -> Result<TorsoView, DecompositionError> {
    validate(g, td)?;
    if node >= td.nodes() {
        return Err(DecompositionError::UnknownNode(node));
    }
    let vertices = td.bags[node].clone();
    let local = |v: usize| vertices.binary_search(&v).expect("bag vertex");
    let mut edges = HashSet::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            if g.adjacent(u, v) {
                edges.insert((local(u), local(v)));
            }
        }
    }
    for &(a, b) in &td.tree_edges {
        let other = if a == node {
            b
        } else if b == node {
            a
        } else {
            continue;
        };
        let shared: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| td.bags[other].binary_search(v).is_ok())
            .collect();
        for (i, &u) in shared.iter().enumerate() {
            for &v in &shared[i + 1..] {
                let (lu, lv) = (local(u), local(v));
                edges.insert((lu.min(lv), lu.max(lv)));
            }
        }
    }
    let graph = Graph::from_edges(vertices.len(), edges).expect("torso is valid");
    Ok(TorsoView {
        node,
        vertices,
        graph,
    })
}

/// Torso degree profile failure: `vertices` in the torso at `node` have
/// degree at least the bound, and there are at least k of them.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("torso at node {node} has {} vertices of degree >= {bound}", vertices.len())]
pub struct TorsoDegreeViolation {
    pub node: usize,
    pub bound: usize,
    pub vertices: Vec<usize>,
}

/// Checks that every torso has fewer than k vertices of torso-degree at
/// least 2(k-1)(k-2).
pub fn check_torso_degree_profile(
    g: &Graph,
    td: &TreeDecomposition,
    k: usize,
) -> Result<Result<(), TorsoDegreeViolation>, DecompositionError> {
    validate(g, td)?;
    let bound = 2 * k.saturating_sub(1) * k.saturating_sub(2);
    for node in 0..td.nodes() {
        let view = torso(g, td, node)?;
        let heavy: Vec<usize> = view
            .graph
            .vertices()
            .filter(|&v| view.graph.degree(v) >= bound)
            .map(|v| view.vertices[v])
            .collect();
        if heavy.len() >= k {
            return Ok(Err(TorsoDegreeViolation {
                node,
                bound,
                vertices: heavy,
            }));
        }
    }
    Ok(Ok(()))
}

/// Combines per-torso decompositions into a decomposition of `g`: for every
/// tree edge xy of `td`, a fresh leaf bag holding the intersection is
/// attached on each side (to the lowest-index bag containing it) and the two
/// fresh leaves are linked. The result has width equal to the maximum
/// per-torso width on valid inputs.
pub fn glue_torso_decompositions(
    g: &Graph,
    td: &TreeDecomposition,
    per_torso: &[TreeDecomposition],
) -> Result<TreeDecomposition, DecompositionError> {
    validate(g, td)?;
    if per_torso.len() != td.nodes() {
        return Err(DecompositionError::WrongTorsoCount {
            expected: td.nodes(),
            got: per_torso.len(),
        });
    }
    if td.nodes() == 0 {
        return Ok(TreeDecomposition::new(vec![], vec![]));
    }
    // Validate each per-torso decomposition against its torso, in host labels.
    let mut normalized: Vec<TreeDecomposition> = Vec::with_capacity(per_torso.len());
    for (node, torso_td) in per_torso.iter().enumerate() {
        let view = torso(g, td, node)?;
        let mut local_bags = Vec::with_capacity(torso_td.bags.len().max(1));
        for bag in &torso_td.bags {
            let mut local = Vec::with_capacity(bag.len());
            for &v in bag {
                match view.vertices.binary_search(&v) {
                    Ok(i) => local.push(i),
                    Err(_) => {
                        return Err(DecompositionError::ForeignTorsoVertex { node, vertex: v })
                    }
                }
            }
            local_bags.push(local);
        }
        let local_td = TreeDecomposition::new(local_bags, torso_td.tree_edges.clone());
        if let Err(violation) = validate(&view.graph, &local_td) {
            return Err(DecompositionError::InvalidTorsoDecomposition { node, violation });
        }
        if torso_td.nodes() == 0 {
            // Empty torso: keep a single empty bag as an attachment target.
            normalized.push(TreeDecomposition::new(vec![vec![]], vec![]));
        } else {
            normalized.push(torso_td.clone());
        }
    }

    let mut offsets = Vec::with_capacity(normalized.len());
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for torso_td in &normalized {
        offsets.push(bags.len());
        let offset = bags.len();
        bags.extend(torso_td.bags.iter().cloned());
        edges.extend(torso_td.tree_edges.iter().map(|&(a, b)| (a + offset, b + offset)));
    }
    for &(x, y) in &td.tree_edges {
        let z: Vec<usize> = td.bags[x]
            .iter()
            .copied()
            .filter(|v| td.bags[y].binary_search(v).is_ok())
            .collect();
        let mut anchors = [0usize; 2];
        for (slot, side) in [x, y].into_iter().enumerate() {
            let found = normalized[side]
                .bags
                .iter()
                .position(|bag| z.iter().all(|v| bag.binary_search(v).is_ok()));
            match found {
                Some(i) => anchors[slot] = offsets[side] + i,
                None => {
                    return Err(DecompositionError::MissingIntersectionBag { node: side, z })
                }
            }
        }
        let fresh_x = bags.len();
        bags.push(z.clone());
        let fresh_y = bags.len();
        bags.push(z);
        edges.push((fresh_x, anchors[0]));
        edges.push((fresh_y, anchors[1]));
        edges.push((fresh_x, fresh_y));
    }
    Ok(TreeDecomposition::new(bags, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{generate, GeneratorSpec};

    fn gen(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    fn tw(g: &Graph) -> i64 {
        match exact_treewidth(g, 1 << 24).unwrap() {
            TreewidthOutcome::Exact { width, .. } => width,
            other => panic!("budget exceeded: {other:?}"),
        }
    }

    #[test]
    fn validate_trivial_and_path() {
        let g = gen("complete:4");
        let td = TreeDecomposition::new(vec![vec![0, 1, 2, 3]], vec![]);
        validate(&g, &td).unwrap();
        assert_eq!(td.width(), 3);

        let p5 = gen("path:5");
        let bags = (0..4).map(|i| vec![i, i + 1]).collect();
        let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2), (2, 3)]);
        validate(&p5, &td).unwrap();
        assert_eq!(td.width(), 1);
    }

    #[test]
    fn validate_rejects_bad_decompositions() {
        let k4 = gen("complete:4");
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert_eq!(validate(&k4, &td), Err(TdViolation::UncoveredEdge(0, 2)));

        let p3 = gen("path:3");
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]);
        assert!(matches!(validate(&p3, &td), Err(TdViolation::NotATree(_))));

        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        let missing = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        validate(&p3, &td).unwrap();
        assert_eq!(validate(&p3, &missing), Err(TdViolation::UncoveredVertex(2)));

        // Occurrence set {0, 2} for vertex 0 is disconnected.
        let g = gen("path:2");
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1], vec![0, 1]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(validate(&g, &td), Err(TdViolation::DisconnectedOccurrence(0)));
    }

    #[test]
    fn treewidth_known_families() {
        assert_eq!(tw(&Graph::empty(0).unwrap()), -1);
        assert_eq!(tw(&Graph::empty(5).unwrap()), 0);
        for n in 1..=8 {
            assert_eq!(tw(&generate(&GeneratorSpec::Complete(n)).unwrap()), n as i64 - 1);
        }
        for a in 1..=5usize {
            for b in 1..=5usize {
                assert_eq!(
                    tw(&generate(&GeneratorSpec::CompleteBipartite(a, b)).unwrap()),
                    a.min(b) as i64
                );
            }
        }
        for n in 3..=9 {
            assert_eq!(tw(&generate(&GeneratorSpec::Cycle(n)).unwrap()), 2);
        }
        assert_eq!(tw(&gen("tripod:3,2,4")), 1);
        assert_eq!(tw(&gen("path:9")), 1);
        assert_eq!(tw(&gen("grid:3,3")), 3);
    }

    #[test]
    fn treewidth_decomposition_is_valid() {
        for seed in 0..30 {
            let g = crate::graph::random_graph(10, 0.35, seed).unwrap();
            let TreewidthOutcome::Exact { width, decomposition } =
                exact_treewidth(&g, 1 << 24).unwrap()
            else {
                panic!("budget")
            };
            validate(&g, &decomposition).unwrap();
            assert_eq!(decomposition.width(), width);
        }
    }

    #[test]
    fn treewidth_budget_exhaustion_reports_bounds() {
        let g = gen("grid:4,4");
        match exact_treewidth(&g, 4).unwrap() {
            TreewidthOutcome::BudgetExceeded { lower, upper, best } => {
                assert!(lower <= upper);
                validate(&g, &best).unwrap();
                assert_eq!(best.width(), upper);
            }
            TreewidthOutcome::Exact { .. } => panic!("expected budget exhaustion"),
        }
    }

    #[test]
    fn treewidth_disconnected() {
        let g = crate::graph::disjoint_union(&[gen("complete:4"), gen("path:3")]).unwrap();
        let TreewidthOutcome::Exact { width, decomposition } = exact_treewidth(&g, 1 << 24).unwrap()
        else {
            panic!("budget")
        };
        assert_eq!(width, 3);
        validate(&g, &decomposition).unwrap();
    }

    #[test]
    fn tightness_examples() {
        let g = gen("complete:3");
        let single = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        assert!(is_tight(&g, &single).unwrap().is_ok());

        let p4 = gen("path:4");
        let bags = (0..3).map(|i| vec![i, i + 1]).collect();
        let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2)]);
        assert!(is_tight(&p4, &td).unwrap().is_ok());

        // C_4 drawn as 0-1-3-2-0 with two overlapping bags stays tight.
        let c4 = Graph::from_edges(4, [(0, 1), (1, 3), (2, 3), (0, 2)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![1, 2, 3]], vec![(0, 1)]);
        assert!(is_tight(&c4, &td).unwrap().is_ok());

        // P_3 covered by two bags sharing both endpoints of the middle: the
        // pair 0,2 has no path on the leaf side avoiding vertex 1.
        let p3 = gen("path:3");
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 2]], vec![(0, 1)]);
        let violation = is_tight(&p3, &td).unwrap().unwrap_err();
        assert_eq!((violation.u, violation.v), (0, 2));
    }

    #[test]
    fn torso_examples() {
        let g = gen("path:4");
        let single = TreeDecomposition::new(vec![(0..4).collect()], vec![]);
        let view = torso(&g, &single, 0).unwrap();
        assert_eq!(view.graph, g);

        // Star decomposition: center bag plus leaf bags turns intersections
        // into cliques.
        let c4 = gen("cycle:4");
        let td = TreeDecomposition::new(
            vec![vec![0, 1, 3], vec![1, 2, 3]],
            vec![(0, 1)],
        );
        validate(&c4, &td).unwrap();
        let view = torso(&c4, &td, 0).unwrap();
        // Induced edges 0-1, 0-3 plus the clique on {1, 3}.
        assert_eq!(view.graph.edge_count(), 3);
        assert!(torso(&c4, &td, 7).is_err());
    }

    #[test]
    fn torso_degree_profile() {
        let k3 = gen("complete:3");
        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        assert!(check_torso_degree_profile(&k3, &td, 3).unwrap().is_ok());

        let k10 = gen("complete:10");
        let td = TreeDecomposition::new(vec![(0..10).collect()], vec![]);
        let violation = check_torso_degree_profile(&k10, &td, 3).unwrap().unwrap_err();
        assert_eq!(violation.vertices.len(), 10);

        let p20 = gen("path:20");
        let bags = (0..19).map(|i| vec![i, i + 1]).collect();
        let edges = (0..18).map(|i| (i, i + 1)).collect();
        let td = TreeDecomposition::new(bags, edges);
        assert!(check_torso_degree_profile(&p20, &td, 3).unwrap().is_ok());
    }

    #[test]
    fn glue_single_bag_is_identity_shaped() {
        let g = gen("cycle:5");
        let td = TreeDecomposition::new(vec![(0..5).collect()], vec![]);
        let inner = exact_treewidth(&g, 1 << 20).unwrap().exact().unwrap().1;
        let glued = glue_torso_decompositions(&g, &td, &[inner.clone()]).unwrap();
        validate(&g, &glued).unwrap();
        assert_eq!(glued.width(), inner.width());
    }

    #[test]
    fn glue_two_bags_on_p4() {
        let g = gen("path:4");
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![2, 3]], vec![(0, 1)]);
        validate(&g, &td).unwrap();
        let mut per = Vec::new();
        for node in 0..2 {
            let view = torso(&g, &td, node).unwrap();
            let local = exact_treewidth(&view.graph, 1 << 20).unwrap().exact().unwrap().1;
            per.push(view.lift(&local));
        }
        let glued = glue_torso_decompositions(&g, &td, &per).unwrap();
        validate(&g, &glued).unwrap();
        assert_eq!(glued.width(), 1);
    }
}
