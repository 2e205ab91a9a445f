//! Constructive extraction procedures: pairwise-linked families to biclique
//! subgraphs, clique subdivisions to biclique subgraphs or induced proper
//! subdivisions of bicliques, and blocks to clique subdivisions.
//!
//! The worst-case thresholds behind these procedures (see [`constants`]) are
//! astronomically large, so every procedure here is opportunistic: it runs
//! the staged construction on whatever input sizes it is given, takes a
//! pigeonhole step whenever some class reaches the needed multiplicity, and
//! reports `Insufficient` with the failing stage otherwise. Every
//! non-`Insufficient` outcome is verified before it is returned.

pub mod constants;

use crate::bitset::Bitset;
use crate::detection::{
    max_clique, max_independent_set, verify_subdivision_model, Embedding, EmbeddingMode,
    SubdivisionModel,
};
use crate::graph::generators::{generate, GeneratorSpec};
use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// One intermediate set family, recorded for auditability.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TraceEntry {
    pub label: String,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtractionOutcome {
    /// A K_{size,size} subgraph witness.
    BicliqueSubgraph { size: usize, embedding: Embedding },
    /// An induced proper subdivision of a biclique.
    InducedSubdivision { model: SubdivisionModel },
    /// A subdivision of a complete graph (subgraph mode).
    KmSubdivision { model: SubdivisionModel },
    /// The staged construction ran out of material.
    Insufficient { stage: String, detail: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExtractionResult {
    pub outcome: ExtractionOutcome,
    pub trace: Vec<TraceEntry>,
}

impl ExtractionResult {
    fn insufficient(stage: &str, detail: String, trace: Vec<TraceEntry>) -> Self {
        ExtractionResult {
            outcome: ExtractionOutcome::Insufficient {
                stage: stage.into(),
                detail,
            },
            trace,
        }
    }
}

fn edge_between(g: &Graph, xs: &[usize], ys: &[usize]) -> bool {
    xs.iter().any(|&x| ys.iter().any(|&y| g.adjacent(x, y)))
}

/// Auxiliary graph with one vertex per set, adjacent when the sets are
/// linked by at least one host edge.
fn linkage_graph(host: &Graph, sets: &[Vec<usize>]) -> Graph {
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if edge_between(host, &sets[i], &sets[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(sets.len(), edges).expect("aux graph is valid")
}

// ---------------------------------------------------------------------------
// Pairwise-linked families => biclique subgraphs.
// ---------------------------------------------------------------------------

/// Extracts a K_{b,b} subgraph from a family of pairwise disjoint vertex
/// sets, each of size at most `a`, with at least one edge between every two.
///
/// Stages: split the family into two halves, fix a collection A from the
/// first half, color the second half by least attachment vertices into A,
/// keep the largest class B, color the attachment vertices U by least
/// common neighbors into B, and read the biclique off the largest class.
pub fn lemma_clique_extract(
    g: &Graph,
    sets: &[Vec<usize>],
    a: usize,
    b: usize,
) -> Result<ExtractionResult, ExtractionError> {
    if a == 0 || b == 0 {
        return Err(ExtractionError::Precondition(
            "parameters a and b must be at least 1".into(),
        ));
    }
    let mut seen = Bitset::new(g.n());
    for (i, set) in sets.iter().enumerate() {
        if set.is_empty() || set.len() > a {
            return Err(ExtractionError::Precondition(format!(
                "set {i} has size {} outside 1..={a}",
                set.len()
            )));
        }
        for &v in set {
            if v >= g.n() {
                return Err(ExtractionError::Precondition(format!(
                    "set {i} contains vertex {v} outside the host"
                )));
            }
            if seen.contains(v) {
                return Err(ExtractionError::Precondition(format!(
                    "sets are not pairwise disjoint at vertex {v}"
                )));
            }
            seen.insert(v);
        }
    }
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if !edge_between(g, &sets[i], &sets[j]) {
                return Err(ExtractionError::Precondition(format!(
                    "sets {i} and {j} have no edge between them"
                )));
            }
        }
    }

    let mut trace = Vec::new();
    if sets.len() < 2 * b {
        return Ok(ExtractionResult::insufficient(
            "family too small",
            format!("need at least 2b = {} sets, got {}", 2 * b, sets.len()),
            trace,
        ));
    }

    // Halve the family, then fix A = the first r sets of the first half.
    let half = sets.len().div_ceil(2);
    let (family_a, family_b) = sets.split_at(half);
    let r = (a as u64)
        .saturating_pow(b as u32)
        .saturating_mul(b as u64 - 1)
        .saturating_add(1);
    let a_count = usize::try_from(r).unwrap_or(usize::MAX).min(family_a.len());
    let collection_a = &family_a[..a_count];
    trace.push(TraceEntry {
        label: "A".into(),
        sets: collection_a.to_vec(),
    });

    // Least attachment vertex of each A-set seen from a set S.
    let attach = |set_s: &[usize], target: &[usize]| -> usize {
        *target
            .iter()
            .find(|&&v| set_s.iter().any(|&s| g.adjacent(s, v)))
            .expect("pairwise linkage guarantees an attachment")
    };
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (color tuple, member indices)
    for (idx, set_s) in family_b.iter().enumerate() {
        let tuple: Vec<usize> = collection_a.iter().map(|t| attach(set_s, t)).collect();
        match classes.iter_mut().find(|(t, _)| *t == tuple) {
            Some((_, members)) => members.push(idx),
            None => classes.push((tuple, vec![idx])),
        }
    }
    let Some((tuple, members)) = classes.iter().max_by_key(|(_, m)| m.len()) else {
        return Ok(ExtractionResult::insufficient(
            "family too small",
            "second half of the family is empty".into(),
            trace,
        ));
    };
    if members.len() < b {
        return Ok(ExtractionResult::insufficient(
            "no attachment class reaches b",
            format!("largest class has {} sets, need {b}", members.len()),
            trace,
        ));
    }
    let collection_b: Vec<Vec<usize>> = members[..b].iter().map(|&i| family_b[i].clone()).collect();
    trace.push(TraceEntry {
        label: "B".into(),
        sets: collection_b.clone(),
    });
    let u: Vec<usize> = tuple.clone();
    trace.push(TraceEntry {
        label: "U".into(),
        sets: vec![u.clone()],
    });

    // Color U by least common neighbors into B.
    let mut u_classes: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (tuple into B, U-vertices)
    for &vertex in &u {
        let tuple: Vec<usize> = collection_b
            .iter()
            .map(|set| {
                set.iter()
                    .copied()
                    .find(|&w| g.adjacent(vertex, w))
                    .expect("attachment vertices see every B-set")
            })
            .collect();
        match u_classes.iter_mut().find(|(t, _)| *t == tuple) {
            Some((_, vs)) => vs.push(vertex),
            None => u_classes.push((tuple, vec![vertex])),
        }
    }
    let (u2, u1_all) = u_classes
        .iter()
        .max_by_key(|(_, vs)| vs.len())
        .expect("U is non-empty");
    if u1_all.len() < b {
        return Ok(ExtractionResult::insufficient(
            "no common-neighbor class of U reaches b",
            format!("largest class has {} vertices, need {b}", u1_all.len()),
            trace,
        ));
    }
    let mut side_1 = u1_all[..b].to_vec();
    let mut side_2 = u2.clone();
    side_1.sort_unstable();
    side_2.sort_unstable();
    trace.push(TraceEntry {
        label: "U_1".into(),
        sets: vec![side_1.clone()],
    });
    trace.push(TraceEntry {
        label: "U_2".into(),
        sets: vec![side_2.clone()],
    });

    let mut map = side_1;
    map.extend(side_2);
    let embedding = Embedding {
        pattern_n: 2 * b,
        map,
        mode: EmbeddingMode::Subgraph,
    };
    let pattern = generate(&GeneratorSpec::CompleteBipartite(b, b)).expect("valid spec");
    embedding
        .check(&pattern, g)
        .map_err(|e| ExtractionError::Precondition(format!("internal verification failed: {e}")))?;
    Ok(ExtractionResult {
        outcome: ExtractionOutcome::BicliqueSubgraph {
            size: b,
            embedding,
        },
        trace,
    })
}

// ---------------------------------------------------------------------------
// Chordless normalization.
// ---------------------------------------------------------------------------

/// Shortcuts a host path along chords to a chordless path with the same
/// endpoints; the result's vertices are a subsequence of the input.
pub fn shortcut_to_chordless(host: &Graph, path: &[usize]) -> Vec<usize> {
    if path.len() <= 2 {
        return path.to_vec();
    }
    let mut out = vec![path[0]];
    let mut at = 0;
    while at + 1 < path.len() {
        // Jump to the farthest later vertex adjacent to the current one.
        let next = (at + 1..path.len())
            .rev()
            .find(|&j| host.adjacent(path[at], path[j]))
            .expect("consecutive path vertices are adjacent");
        out.push(path[next]);
        at = next;
    }
    out
}

/// Replaces every model path by its chordless shortcut, mirroring the
/// "assume without loss of generality that this path is induced" step.
pub fn normalize_model_chordless(host: &Graph, model: &SubdivisionModel) -> SubdivisionModel {
    SubdivisionModel {
        pattern: model.pattern.clone(),
        branch: model.branch.clone(),
        paths: model
            .paths
            .iter()
            .map(|p| shortcut_to_chordless(host, p))
            .collect(),
    }
}

fn path_has_chord(host: &Graph, path: &[usize]) -> bool {
    for i in 0..path.len() {
        for j in (i + 2)..path.len() {
            if host.adjacent(path[i], path[j]) {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Clique subdivisions => biclique subgraph or induced biclique subdivision.
// ---------------------------------------------------------------------------

struct BigCliqueContext<'a> {
    model: &'a SubdivisionModel,
    edge_index: std::collections::HashMap<(usize, usize), usize>,
}

impl BigCliqueContext<'_> {
    /// Host path between two pattern vertices, oriented from `u`.
    fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let idx = self.edge_index[&(u.min(v), u.max(v))];
        let mut p = self.model.paths[idx].clone();
        if u > v {
            p.reverse();
        }
        p
    }

    /// P_{u,v} minus the branch vertex of `u` (host labels).
    fn path_tail(&self, u: usize, v: usize) -> Vec<usize> {
        self.path(u, v)[1..].to_vec()
    }

    /// Internal vertices of P_{u,v} (host labels).
    fn internals(&self, u: usize, v: usize) -> Vec<usize> {
        let p = self.path(u, v);
        p[1..p.len() - 1].to_vec()
    }
}

/// Runs the staged biclique-from-subdivision procedure on a chordless
/// (<= p)-subdivision model of a complete graph: a Ramsey step on the branch
/// vertices, the iterative path-unlinking rounds, and the final assembly of
/// an induced proper subdivision of K_{r,r} — falling back to the linked-set
/// lemma whenever a linked clique of path sets shows up.
pub fn bigclique_extract(
    host: &Graph,
    model: &SubdivisionModel,
    p: usize,
    r: usize,
) -> Result<ExtractionResult, ExtractionError> {
    if p == 0 || r == 0 {
        return Err(ExtractionError::Precondition(
            "parameters p and r must be at least 1".into(),
        ));
    }
    for u in model.pattern.vertices() {
        for v in (u + 1)..model.pattern.n() {
            if !model.pattern.adjacent(u, v) {
                return Err(ExtractionError::Precondition(
                    "model pattern must be a complete graph".into(),
                ));
            }
        }
    }
    if let Err(violation) = verify_subdivision_model(host, model, false, false, p) {
        return Err(ExtractionError::Precondition(format!(
            "model is not a (<= {p})-subdivision: {violation}"
        )));
    }
    for path in &model.paths {
        if path_has_chord(host, path) {
            return Err(ExtractionError::Precondition(
                "model paths must be chordless (see normalize_model_chordless)".into(),
            ));
        }
    }

    let m = model.pattern.n();
    let ctx = BigCliqueContext {
        model,
        edge_index: model
            .pattern
            .edges()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect(),
    };
    let mut trace = vec![TraceEntry {
        label: "branch".into(),
        sets: vec![model.branch.clone()],
    }];

    // Stage 1: Ramsey step on the branch vertices.
    let branch_graph = Graph::from_edges(
        m,
        (0..m).flat_map(|u| {
            ((u + 1)..m)
                .filter(move |&v| host.adjacent(model.branch[u], model.branch[v]))
                .map(move |v| (u, v))
        }),
    )
    .expect("branch graph is valid");
    let clique = max_clique(&branch_graph);
    if clique.len() >= 2 * p {
        let hosts: Vec<usize> = clique[..2 * p].iter().map(|&i| model.branch[i]).collect();
        let mut side_1 = hosts[..p].to_vec();
        let mut side_2 = hosts[p..].to_vec();
        side_1.sort_unstable();
        side_2.sort_unstable();
        trace.push(TraceEntry {
            label: "branch clique".into(),
            sets: vec![hosts.clone()],
        });
        let mut map = side_1;
        map.extend(side_2);
        let embedding = Embedding {
            pattern_n: 2 * p,
            map,
            mode: EmbeddingMode::Subgraph,
        };
        let pattern = generate(&GeneratorSpec::CompleteBipartite(p, p)).expect("valid spec");
        embedding.check(&pattern, host).map_err(|e| {
            ExtractionError::Precondition(format!("internal verification failed: {e}"))
        })?;
        return Ok(ExtractionResult {
            outcome: ExtractionOutcome::BicliqueSubgraph {
                size: p,
                embedding,
            },
            trace,
        });
    }
    let mut independent = max_independent_set(&branch_graph);
    independent.sort_unstable();
    trace.push(TraceEntry {
        label: "independent branch set".into(),
        sets: vec![independent.iter().map(|&i| model.branch[i]).collect()],
    });
    if independent.len() < 2 * r {
        return Ok(ExtractionResult::insufficient(
            "branch set too small",
            format!(
                "independent branch set has {} vertices, need 2r = {}",
                independent.len(),
                2 * r
            ),
            trace,
        ));
    }

    // Stage 2: split the independent set into B (the round vertices) and C.
    let (b_set, c_set) = independent.split_at(r);
    trace.push(TraceEntry {
        label: "B".into(),
        sets: vec![b_set.iter().map(|&i| model.branch[i]).collect()],
    });
    trace.push(TraceEntry {
        label: "C".into(),
        sets: vec![c_set.iter().map(|&i| model.branch[i]).collect()],
    });

    // Stage 3: unlinking rounds; shrink C so that for each u in B the path
    // tails beyond u are pairwise edge-free.
    let mut c_current: Vec<usize> = c_set.to_vec();
    for (round, &u) in b_set.iter().enumerate() {
        let tails: Vec<Vec<usize>> = c_current.iter().map(|&v| ctx.path_tail(u, v)).collect();
        let aux = linkage_graph(host, &tails);
        let linked = max_clique(&aux);
        if linked.len() >= 2 {
            // A linked clique of path tails: try the lemma route.
            let linked_sets: Vec<Vec<usize>> = linked.iter().map(|&i| tails[i].clone()).collect();
            let a_cap = linked_sets.iter().map(Vec::len).max().unwrap_or(1);
            let inner = lemma_clique_extract(host, &linked_sets, a_cap, p)?;
            if let ExtractionOutcome::BicliqueSubgraph { .. } = inner.outcome {
                trace.push(TraceEntry {
                    label: format!("round {round} linked tails"),
                    sets: linked_sets,
                });
                trace.extend(inner.trace.into_iter().map(|mut e| {
                    e.label = format!("round {round} lemma {}", e.label);
                    e
                }));
                return Ok(ExtractionResult {
                    outcome: inner.outcome,
                    trace,
                });
            }
        }
        let keep = max_independent_set(&aux);
        c_current = {
            let mut next: Vec<usize> = keep.iter().map(|&i| c_current[i]).collect();
            next.sort_unstable();
            next
        };
        trace.push(TraceEntry {
            label: format!("C_{}", round + 1),
            sets: vec![c_current.iter().map(|&i| model.branch[i]).collect()],
        });
        if c_current.len() < r {
            return Ok(ExtractionResult::insufficient(
                "unlinking rounds exhausted C",
                format!(
                    "round {}: {} candidates remain, need {r}",
                    round + 1,
                    c_current.len()
                ),
                trace,
            ));
        }
    }

    // Stage 4: final Ramsey step on U = B over the merged path interiors.
    let u_set = b_set;
    let v_set: Vec<usize> = c_current[..r].to_vec();
    trace.push(TraceEntry {
        label: "V".into(),
        sets: vec![v_set.iter().map(|&i| model.branch[i]).collect()],
    });
    let interiors: Vec<Vec<usize>> = u_set
        .iter()
        .map(|&u| {
            v_set
                .iter()
                .flat_map(|&v| ctx.internals(u, v))
                .collect::<Vec<usize>>()
        })
        .collect();
    trace.push(TraceEntry {
        label: "S(u)".into(),
        sets: interiors.clone(),
    });
    // Linkage including the branch endpoint: edges from a branch vertex into
    // another branch vertex's path interiors also break inducedness, so they
    // disqualify the pair for W.
    let closed: Vec<Vec<usize>> = u_set
        .iter()
        .zip(&interiors)
        .map(|(&u, ints)| {
            let mut s = vec![model.branch[u]];
            s.extend(ints.iter().copied());
            s
        })
        .collect();
    let aux_closed = linkage_graph(host, &closed);
    let w = {
        let mut w: Vec<usize> = max_independent_set(&aux_closed)
            .iter()
            .map(|&i| u_set[i])
            .collect();
        w.sort_unstable();
        w
    };
    if w.len() >= r {
        let w_sel = &w[..r];
        trace.push(TraceEntry {
            label: "W".into(),
            sets: vec![w_sel.iter().map(|&i| model.branch[i]).collect()],
        });
        let pattern = generate(&GeneratorSpec::CompleteBipartite(r, r)).expect("valid spec");
        let mut branch: Vec<usize> = w_sel.iter().map(|&i| model.branch[i]).collect();
        branch.extend(v_set.iter().map(|&i| model.branch[i]));
        let mut paths = Vec::with_capacity(r * r);
        for (side_w, &pw) in w_sel.iter().enumerate() {
            let _ = side_w;
            for &pv in &v_set {
                paths.push(ctx.path(pw, pv));
            }
        }
        let assembled = SubdivisionModel {
            pattern,
            branch,
            paths,
        };
        match verify_subdivision_model(host, &assembled, true, true, p) {
            Ok(()) => {
                return Ok(ExtractionResult {
                    outcome: ExtractionOutcome::InducedSubdivision { model: assembled },
                    trace,
                })
            }
            Err(violation) => {
                return Ok(ExtractionResult::insufficient(
                    "final assembly failed verification",
                    violation.to_string(),
                    trace,
                ))
            }
        }
    }

    // No independent W: the interior-linkage clique feeds the lemma.
    let aux_open = linkage_graph(host, &interiors);
    let linked = max_clique(&aux_open);
    if linked.len() >= 2 {
        let linked_sets: Vec<Vec<usize>> = linked.iter().map(|&i| interiors[i].clone()).collect();
        let a_cap = linked_sets.iter().map(Vec::len).max().unwrap_or(1);
        let inner = lemma_clique_extract(host, &linked_sets, a_cap, p)?;
        if let ExtractionOutcome::BicliqueSubgraph { .. } = inner.outcome {
            trace.extend(inner.trace.into_iter().map(|mut e| {
                e.label = format!("final lemma {}", e.label);
                e
            }));
            return Ok(ExtractionResult {
                outcome: inner.outcome,
                trace,
            });
        }
    }
    Ok(ExtractionResult::insufficient(
        "final stage",
        format!("no independent W of size {r} and linked interiors insufficient"),
        trace,
    ))
}

// ---------------------------------------------------------------------------
// Blocks => clique subdivisions.
// ---------------------------------------------------------------------------

/// Extracts a (<= p)-subdivision of K_{m_target} whose branch vertices are
/// the first `m_target` vertices of the block `B`: for every non-adjacent
/// pair, the Menger path family is filtered to short chordless paths
/// avoiding the branch set, and paths are chosen greedily in lexicographic
/// pair order so they meet only at shared endpoints.
///
/// Precondition: every pair of `B` is adjacent or has connectivity at least
/// `m_target - 1` (the level a K_{m_target}-subdivision forces on its branch
/// vertices).
pub fn block_subdivision_extract(
    g: &Graph,
    block: &[usize],
    p: usize,
    m_target: usize,
) -> Result<ExtractionResult, ExtractionError> {
    if m_target < 1 {
        return Err(ExtractionError::Precondition("m_target must be at least 1".into()));
    }
    let mut block_sorted = block.to_vec();
    block_sorted.sort_unstable();
    block_sorted.dedup();
    if block_sorted.len() != block.len() {
        return Err(ExtractionError::Precondition("block repeats vertices".into()));
    }
    for &v in &block_sorted {
        if v >= g.n() {
            return Err(ExtractionError::Precondition(format!(
                "block vertex {v} outside the host"
            )));
        }
    }
    let level = m_target.saturating_sub(1);
    for (i, &u) in block_sorted.iter().enumerate() {
        for &v in &block_sorted[i + 1..] {
            if g.adjacent(u, v) {
                continue;
            }
            let sep = crate::blocks::pair_connectivity(g, u, v).expect("distinct in-range pair");
            if !sep.kappa.at_least(level) {
                return Err(ExtractionError::Precondition(format!(
                    "pair {u},{v} separable below level {level}"
                )));
            }
        }
    }

    let mut trace = vec![TraceEntry {
        label: "block".into(),
        sets: vec![block_sorted.clone()],
    }];
    if block_sorted.len() < m_target {
        return Ok(ExtractionResult::insufficient(
            "block too small",
            format!("block has {} vertices, need {m_target}", block_sorted.len()),
            trace,
        ));
    }
    let branch: Vec<usize> = block_sorted[..m_target].to_vec();
    trace.push(TraceEntry {
        label: "branch".into(),
        sets: vec![branch.clone()],
    });
    let branch_set = Bitset::from_iter(g.n(), branch.iter().copied());

    let mut used_internals = Bitset::new(g.n());
    let mut paths = Vec::new();
    for i in 0..m_target {
        for j in (i + 1)..m_target {
            let (u, v) = (branch[i], branch[j]);
            if g.adjacent(u, v) {
                paths.push(vec![u, v]);
                continue;
            }
            let family = crate::blocks::pair_connectivity(g, u, v)
                .expect("distinct in-range pair")
                .paths;
            let mut candidates: Vec<Vec<usize>> = family
                .iter()
                .map(|path| shortcut_to_chordless(g, path))
                .filter(|path| {
                    let internal = &path[1..path.len() - 1];
                    internal.len() <= p && internal.iter().all(|&w| !branch_set.contains(w))
                })
                .collect();
            candidates.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            let chosen = candidates.into_iter().find(|path| {
                path[1..path.len() - 1]
                    .iter()
                    .all(|&w| !used_internals.contains(w))
            });
            match chosen {
                Some(path) => {
                    for &w in &path[1..path.len() - 1] {
                        used_internals.insert(w);
                    }
                    paths.push(path);
                }
                None => {
                    return Ok(ExtractionResult::insufficient(
                        "no compatible path",
                        format!("pair {u},{v} has no short disjoint chordless path left"),
                        trace,
                    ));
                }
            }
        }
    }

    let pattern = generate(&GeneratorSpec::Complete(m_target)).expect("valid spec");
    let model = SubdivisionModel {
        pattern,
        branch,
        paths,
    };
    verify_subdivision_model(g, &model, false, false, p)
        .map_err(|e| ExtractionError::Precondition(format!("internal verification failed: {e}")))?;
    Ok(ExtractionResult {
        outcome: ExtractionOutcome::KmSubdivision { model },
        trace,
    })
}

// ---------------------------------------------------------------------------
// Long-path probe: three clean prefixes give an induced tripod.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripodProbe {
    /// Three pairwise edge-free prefixes induce an S_p rooted at x.
    InducedTripod { embedding: Embedding },
    /// Prefix pairs with edges between them, fodder for the linked-set lemma.
    LinkedPairs { pairs: Vec<(usize, usize)> },
}

/// Given at least three vertex-disjoint chordless path prefixes of equal
/// length hanging off `x`, either finds three with no edges between them
/// (inducing an S_p together with `x`) or reports which pairs are linked.
pub fn long_path_tripod_probe(
    g: &Graph,
    x: usize,
    prefixes: &[Vec<usize>],
) -> Result<TripodProbe, ExtractionError> {
    if prefixes.len() < 3 {
        return Err(ExtractionError::Precondition(format!(
            "need at least 3 prefixes, got {}",
            prefixes.len()
        )));
    }
    let p = prefixes[0].len();
    if p == 0 {
        return Err(ExtractionError::Precondition("prefixes must be non-empty".into()));
    }
    let mut seen = Bitset::from_iter(g.n(), [x]);
    for (i, prefix) in prefixes.iter().enumerate() {
        if prefix.len() != p {
            return Err(ExtractionError::Precondition(format!(
                "prefix {i} has length {}, expected {p}",
                prefix.len()
            )));
        }
        for &v in prefix {
            if v >= g.n() {
                return Err(ExtractionError::Precondition(format!(
                    "prefix {i} contains vertex {v} outside the host"
                )));
            }
            if seen.contains(v) {
                return Err(ExtractionError::Precondition(format!(
                    "prefixes are not disjoint at vertex {v}"
                )));
            }
            seen.insert(v);
        }
        // The rooted walk x, prefix[0], ..., prefix[p-1] must be chordless.
        let mut walk = vec![x];
        walk.extend(prefix.iter().copied());
        for a in 0..walk.len() {
            for b in (a + 1)..walk.len() {
                let adjacent = g.adjacent(walk[a], walk[b]);
                if (b == a + 1) != adjacent {
                    return Err(ExtractionError::Precondition(format!(
                        "prefix {i} is not a chordless path from {x}"
                    )));
                }
            }
        }
    }

    let mut linked: Vec<(usize, usize)> = Vec::new();
    for i in 0..prefixes.len() {
        for j in (i + 1)..prefixes.len() {
            if edge_between(g, &prefixes[i], &prefixes[j]) {
                linked.push((i, j));
            }
        }
    }
    for a in 0..prefixes.len() {
        for b in (a + 1)..prefixes.len() {
            for c in (b + 1)..prefixes.len() {
                let free = |i: usize, j: usize| !linked.contains(&(i, j));
                if free(a, b) && free(a, c) && free(b, c) {
                    let pattern = generate(&GeneratorSpec::Tripod(p, p, p)).expect("valid spec");
                    let mut map = vec![x];
                    for &arm in &[a, b, c] {
                        map.extend(prefixes[arm].iter().copied());
                    }
                    let embedding = Embedding {
                        pattern_n: pattern.n(),
                        map,
                        mode: EmbeddingMode::Induced,
                    };
                    embedding.check(&pattern, g).map_err(|e| {
                        ExtractionError::Precondition(format!("internal verification failed: {e}"))
                    })?;
                    return Ok(TripodProbe::InducedTripod { embedding });
                }
            }
        }
    }
    Ok(TripodProbe::LinkedPairs { pairs: linked })
}
