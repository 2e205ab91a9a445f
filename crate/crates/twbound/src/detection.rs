//! Substructure search and verification: induced embeddings, small-scale
//! isomorphism, cliques, biclique subgraphs, F-freeness, and checking of
//! subdivision models.
//!
//! All searches use fixed deterministic orders (host candidates by descending
//! degree with index tie-break) so witnesses are reproducible across runs.
//! Budgets are counted in backtracking node expansions, never wall time, and
//! `NotFound` is only reported after a search has been exhausted.

use crate::bitset::Bitset;
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetectionError {
    #[error("isomorphism test capped at {cap} vertices, got {n}")]
    SizeCap { n: usize, cap: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    /// Pattern adjacency equals host adjacency restricted to the image.
    Induced,
    /// Pattern edges map to host edges; host may have extra edges.
    Subgraph,
}

/// An injective map from pattern vertices to host vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern_n: usize,
    pub map: Vec<usize>,
    pub mode: EmbeddingMode,
}

impl Embedding {
    /// Checks injectivity and the mode condition against concrete graphs.
    pub fn check(&self, pattern: &Graph, host: &Graph) -> Result<(), String> {
        if self.pattern_n != pattern.n() || self.map.len() != pattern.n() {
            return Err("embedding size does not match pattern".into());
        }
        let mut seen = vec![false; host.n()];
        for &w in &self.map {
            if w >= host.n() {
                return Err(format!("image vertex {w} out of host range"));
            }
            if seen[w] {
                return Err(format!("image vertex {w} used twice"));
            }
            seen[w] = true;
        }
        for u in 0..pattern.n() {
            for v in (u + 1)..pattern.n() {
                let pe = pattern.adjacent(u, v);
                let he = host.adjacent(self.map[u], self.map[v]);
                match self.mode {
                    EmbeddingMode::Induced if pe != he => {
                        return Err(format!("pair ({u},{v}) maps to mismatched adjacency"));
                    }
                    EmbeddingMode::Subgraph if pe && !he => {
                        return Err(format!("pattern edge ({u},{v}) maps to a non-edge"));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Result of a budgeted search. `NotFound` is exact; `BudgetExceeded` means
/// the search was inconclusive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct EmbedSearch<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    mode: EmbeddingMode,
    order: Vec<usize>,
    host_order: Vec<usize>,
    budget: u64,
    spent: u64,
}

impl<'a> EmbedSearch<'a> {
    /// Pattern vertices ordered for pruning: start at the maximum-degree
    /// vertex, then repeatedly take the vertex with the most already-placed
    /// neighbors (ties: higher degree, then lower index).
    fn pattern_order(pattern: &Graph) -> Vec<usize> {
        let n = pattern.n();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            let best = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let anchored = pattern.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (anchored, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("some vertex unplaced");
            placed[best] = true;
            order.push(best);
        }
        order
    }

    fn run(&mut self, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, depth: usize) -> SearchOutcome<Embedding> {
        if depth == self.order.len() {
            return SearchOutcome::Found(Embedding {
                pattern_n: self.pattern.n(),
                map: map.iter().map(|m| m.expect("complete")).collect(),
                mode: self.mode,
            });
        }
        let p = self.order[depth];
        let mut exhausted = true;
        for idx in 0..self.host_order.len() {
            let cand = self.host_order[idx];
            if used[cand] || self.host.degree(cand) < self.pattern.degree(p) {
                continue;
            }
            if self.spent >= self.budget {
                return SearchOutcome::BudgetExceeded;
            }
            self.spent += 1;
            let consistent = self.order[..depth].iter().all(|&q| {
                let w = map[q].expect("mapped");
                let pe = self.pattern.adjacent(p, q);
                let he = self.host.adjacent(cand, w);
                match self.mode {
                    EmbeddingMode::Induced => pe == he,
                    EmbeddingMode::Subgraph => !pe || he,
                }
            });
            if !consistent {
                continue;
            }
            map[p] = Some(cand);
            used[cand] = true;
            match self.run(map, used, depth + 1) {
                SearchOutcome::Found(e) => return SearchOutcome::Found(e),
                SearchOutcome::BudgetExceeded => exhausted = false,
                SearchOutcome::NotFound => {}
            }
            map[p] = None;
            used[cand] = false;
        }
        if exhausted {
            SearchOutcome::NotFound
        } else {
            SearchOutcome::BudgetExceeded
        }
    }
}

/// Backtracking search for an embedding of `pattern` into `host`.
pub fn find_embedding(
    pattern: &Graph,
    host: &Graph,
    mode: EmbeddingMode,
    budget: u64,
) -> SearchOutcome<Embedding> {
    assert!(budget > 0, "budget must be positive");
    if pattern.n() > host.n() {
        return SearchOutcome::NotFound;
    }
    let mut host_order: Vec<usize> = host.vertices().collect();
    host_order.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));
    let mut search = EmbedSearch {
        pattern,
        host,
        mode,
        order: EmbedSearch::pattern_order(pattern),
        host_order,
        budget,
        spent: 0,
    };
    let mut map = vec![None; pattern.n()];
    let mut used = vec![false; host.n()];
    search.run(&mut map, &mut used, 0)
}

/// Searches for `pattern` as an induced subgraph of `host`.
pub fn find_induced(pattern: &Graph, host: &Graph, budget: u64) -> SearchOutcome<Embedding> {
    find_embedding(pattern, host, EmbeddingMode::Induced, budget)
}

pub const ISO_CAP: usize = 12;

/// Isomorphism test for small graphs (n <= 12).
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, DetectionError> {
    let n = a.n().max(b.n());
    if n > ISO_CAP {
        return Err(DetectionError::SizeCap { n, cap: ISO_CAP });
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    // Equal counts make any induced embedding a bijective isomorphism.
    Ok(matches!(
        find_embedding(a, b, EmbeddingMode::Induced, u64::MAX),
        SearchOutcome::Found(_)
    ))
}

/// Greedy coloring of `p`; returns vertices regrouped by color class along
/// with each vertex's 1-based color (an upper bound on the clique size
/// among the first i vertices).
fn color_sort(g: &Graph, p: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in p {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&w| !g.adjacent(v, w)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(p.len());
    let mut colors = Vec::with_capacity(p.len());
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            order.push(v);
            colors.push(ci + 1);
        }
    }
    (order, colors)
}

fn clique_expand(
    g: &Graph,
    current: &mut Vec<usize>,
    p: Vec<usize>,
    best: &mut Vec<usize>,
    stop_at: Option<usize>,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if let Some(t) = stop_at {
        if best.len() >= t {
            return;
        }
    }
    let (order, colors) = color_sort(g, &p);
    for i in (0..order.len()).rev() {
        if current.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next: Vec<usize> = order[..i].iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        clique_expand(g, current, next, best, stop_at);
        current.pop();
        if let Some(t) = stop_at {
            if best.len() >= t {
                return;
            }
        }
    }
}

/// Exact maximum clique (branch and bound with a greedy coloring bound).
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let mut p: Vec<usize> = g.vertices().collect();
    p.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best = Vec::new();
    clique_expand(g, &mut Vec::new(), p, &mut best, None);
    best.sort_unstable();
    best
}

/// Exact maximum independent set, via the complement's maximum clique.
pub fn max_independent_set(g: &Graph) -> Vec<usize> {
    max_clique(&g.complement())
}

/// Searches for a clique of size `k`; exact, no budget.
pub fn find_clique(g: &Graph, k: usize) -> Option<Embedding> {
    assert!(k >= 1, "clique size must be at least 1");
    let mut p: Vec<usize> = g.vertices().collect();
    p.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best = Vec::new();
    clique_expand(g, &mut Vec::new(), p, &mut best, Some(k));
    if best.len() < k {
        return None;
    }
    let mut map = best[..k].to_vec();
    map.sort_unstable();
    Some(Embedding {
        pattern_n: k,
        map,
        mode: EmbeddingMode::Induced,
    })
}

fn biclique_side_b(g: &Graph, cn: &Bitset, t: usize, induced: bool) -> Option<Vec<usize>> {
    if !induced {
        let b: Vec<usize> = cn.iter().take(t).collect();
        return (b.len() == t).then_some(b);
    }
    // Induced mode: B must itself be independent.
    fn pick(g: &Graph, cands: &[usize], start: usize, acc: &mut Vec<usize>, t: usize) -> bool {
        if acc.len() == t {
            return true;
        }
        for (i, &v) in cands.iter().enumerate().skip(start) {
            if acc.iter().all(|&w| !g.adjacent(v, w)) {
                acc.push(v);
                if pick(g, cands, i + 1, acc, t) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let cands = cn.to_vec();
    let mut acc = Vec::new();
    pick(g, &cands, 0, &mut acc, t).then_some(acc)
}

fn biclique_search(
    g: &Graph,
    t: usize,
    induced: bool,
    start: usize,
    a: &mut Vec<usize>,
    cn: &Bitset,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if a.len() == t {
        return biclique_side_b(g, cn, t, induced).map(|b| (a.clone(), b));
    }
    for v in start..g.n() {
        if g.degree(v) < t {
            continue;
        }
        if induced && a.iter().any(|&w| g.adjacent(v, w)) {
            continue;
        }
        let mut next = cn.clone();
        next.intersect_with(g.row(v));
        // A-vertices can never sit in the common neighborhood of A.
        if next.count() < t {
            continue;
        }
        a.push(v);
        if let Some(found) = biclique_search(g, t, induced, v + 1, a, &next) {
            return Some(found);
        }
        a.pop();
    }
    None
}

/// Searches for K_{t,t} in `g`. With `induced = false` (the usual mode) the
/// parts need not be independent, matching "K_{t,t} as a subgraph".
pub fn find_biclique_subgraph(g: &Graph, t: usize, induced: bool) -> Option<Embedding> {
    assert!(t >= 1, "biclique size must be at least 1");
    let mut all = Bitset::new(g.n());
    for v in g.vertices() {
        all.insert(v);
    }
    let (a, b) = biclique_search(g, t, induced, 0, &mut Vec::new(), &all)?;
    let mode = if induced {
        EmbeddingMode::Induced
    } else {
        EmbeddingMode::Subgraph
    };
    let mut map = a;
    map.extend(b);
    Some(Embedding {
        pattern_n: 2 * t,
        map,
        mode,
    })
}

/// Outcome of an F-freeness check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Freeness {
    Free,
    /// Some member of F embeds induced; `member` is its index in F.
    NotFree { member: usize, witness: Embedding },
    BudgetExceeded { member: usize },
}

/// Tests whether `g` contains no member of `forbidden` as an induced
/// subgraph. `budget` applies to each member's search separately.
pub fn is_f_free(g: &Graph, forbidden: &[Graph], budget: u64) -> Freeness {
    for (i, f) in forbidden.iter().enumerate() {
        match find_induced(f, g, budget) {
            SearchOutcome::Found(witness) => {
                return Freeness::NotFree { member: i, witness }
            }
            SearchOutcome::BudgetExceeded => return Freeness::BudgetExceeded { member: i },
            SearchOutcome::NotFound => {}
        }
    }
    Freeness::Free
}

/// A witnessed subdivision: branch vertices for a pattern plus one host path
/// per pattern edge (in lexicographic pattern-edge order), each path listed
/// from the smaller pattern endpoint and including both branch endpoints.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubdivisionModel {
    pub pattern: Graph,
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl SubdivisionModel {
    /// Maximum number of internal vertices over all paths.
    pub fn max_internal(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 2.min(p.len())).max().unwrap_or(0)
    }

    /// True when every path has at least one internal vertex.
    pub fn is_proper(&self) -> bool {
        self.paths.iter().all(|p| p.len() >= 3)
    }

    /// All host vertices used by the model (branch vertices and paths).
    pub fn vertex_set(&self, host_n: usize) -> Bitset {
        let mut s = Bitset::new(host_n);
        for &v in &self.branch {
            s.insert(v);
        }
        for path in &self.paths {
            for &v in path {
                s.insert(v);
            }
        }
        s
    }
}

/// First failed condition of a model check, with the offending vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ModelViolation {
    pub condition: String,
    pub vertices: Vec<usize>,
}

impl std::fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (vertices {:?})", self.condition, self.vertices)
    }
}

/// Checks a subdivision model against its host: real internally disjoint
/// host paths, at most `p` internal vertices each, at least one when
/// `require_proper`, and — when `require_induced` — the model's vertex set
/// induces exactly the union of path edges in the host.
pub fn verify_subdivision_model(
    host: &Graph,
    model: &SubdivisionModel,
    require_induced: bool,
    require_proper: bool,
    p: usize,
) -> Result<(), ModelViolation> {
    let fail = |condition: String, vertices: Vec<usize>| {
        Err(ModelViolation {
            condition,
            vertices,
        })
    };
    let pattern_edges = model.pattern.edges();
    if model.branch.len() != model.pattern.n() {
        return fail("branch map size differs from pattern".into(), vec![]);
    }
    let mut seen = vec![false; host.n()];
    for &v in &model.branch {
        if v >= host.n() {
            return fail(format!("branch vertex {v} outside host"), vec![v]);
        }
        if seen[v] {
            return fail(format!("branch map repeats host vertex {v}"), vec![v]);
        }
        seen[v] = true;
    }
    if model.paths.len() != pattern_edges.len() {
        return fail(
            format!(
                "model has {} paths for {} pattern edges",
                model.paths.len(),
                pattern_edges.len()
            ),
            vec![],
        );
    }
    let branch_set = Bitset::from_iter(host.n(), model.branch.iter().copied());
    let mut internal_seen = Bitset::new(host.n());
    for (i, path) in model.paths.iter().enumerate() {
        let (u, v) = pattern_edges[i];
        if path.len() < 2 {
            return fail(format!("path for pattern edge ({u},{v}) too short"), path.clone());
        }
        if path[0] != model.branch[u] || path[path.len() - 1] != model.branch[v] {
            return fail(
                format!("path for pattern edge ({u},{v}) has wrong endpoints"),
                vec![path[0], path[path.len() - 1]],
            );
        }
        let mut in_path = Bitset::new(host.n());
        for w in path.windows(2) {
            if w[0] >= host.n() || w[1] >= host.n() {
                return fail("path vertex outside host".into(), w.to_vec());
            }
            if !host.adjacent(w[0], w[1]) {
                return fail(
                    format!("path for pattern edge ({u},{v}) uses a non-edge"),
                    w.to_vec(),
                );
            }
        }
        for &w in path {
            if in_path.contains(w) {
                return fail(format!("path for pattern edge ({u},{v}) repeats {w}"), vec![w]);
            }
            in_path.insert(w);
        }
        let internal = &path[1..path.len() - 1];
        if internal.len() > p {
            return fail(
                format!(
                    "path for pattern edge ({u},{v}) has {} internal vertices, cap {p}",
                    internal.len()
                ),
                internal.to_vec(),
            );
        }
        if require_proper && internal.is_empty() {
            return fail(
                format!("path for pattern edge ({u},{v}) has no internal vertex"),
                path.clone(),
            );
        }
        for &w in internal {
            if branch_set.contains(w) {
                return fail(format!("internal vertex {w} is a branch vertex"), vec![w]);
            }
            if internal_seen.contains(w) {
                return fail(format!("internal vertex {w} shared between paths"), vec![w]);
            }
            internal_seen.insert(w);
        }
    }
    if require_induced {
        let mut allowed: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
        for path in &model.paths {
            for w in path.windows(2) {
                allowed.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        let used = model.vertex_set(host.n());
        let members = used.to_vec();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if host.adjacent(x, y) && !allowed.contains(&(x, y)) {
                    return fail(format!("induced check: extra host edge {x}-{y}"), vec![x, y]);
                }
            }
        }
    }
    Ok(())
}
