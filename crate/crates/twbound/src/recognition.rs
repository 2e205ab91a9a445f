//! Membership tests for the four critical classes: complete graphs, complete
//! bipartite graphs, tripods (forests whose components have at most three
//! leaves), and line graphs of tripods.
//!
//! Degenerate conventions: the empty graph and single vertices count as path
//! components, a bare triangle counts as the arm-less T shape, and the
//! non-strict line-of-tripod test accepts path components (line graphs of
//! tripods with path components are paths). `shapes` is populated by the
//! tripod and line-of-tripod recognizers; the complete and complete-bipartite
//! tests leave it empty.

use crate::graph::generators::{generate, GeneratorSpec};
use crate::graph::{disjoint_union, Graph};
use serde::Serialize;

/// Structural classification of one connected component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ComponentShape {
    /// A path on `len` vertices (including a single vertex).
    Path { len: usize },
    /// S_{i,j,k} with one degree-3 center; arms sorted non-increasing.
    TripodArm3 { arms: [usize; 3] },
    /// T_{i,j,k}: a triangle with three pendant paths; arms sorted
    /// non-increasing, zeros allowed.
    Triangle3Arms { arms: [usize; 3] },
    /// Fails all structural tests above.
    Other,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RecognitionVerdict {
    pub member: bool,
    pub shapes: Vec<ComponentShape>,
    /// First violated condition when `member` is false.
    pub reason: Option<String>,
}

impl RecognitionVerdict {
    fn member(shapes: Vec<ComponentShape>) -> Self {
        RecognitionVerdict {
            member: true,
            shapes,
            reason: None,
        }
    }

    fn reject(shapes: Vec<ComponentShape>, reason: String) -> Self {
        RecognitionVerdict {
            member: false,
            shapes,
            reason: Some(reason),
        }
    }
}

/// Classifies the component of `g` induced on `comp` (a sorted vertex list).
fn component_shape(g: &Graph, comp: &[usize]) -> ComponentShape {
    let in_comp = |v: usize| comp.binary_search(&v).is_ok();
    let deg = |v: usize| g.neighbors(v).iter().filter(|&&w| in_comp(w)).count();
    let n = comp.len();
    let m: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;

    // Walk a pendant path away from `from`, starting at `start`; returns its
    // vertex count, or None if a branching vertex is met.
    let walk_arm = |mut from: usize, mut at: usize| -> Option<usize> {
        let mut len = 1;
        loop {
            let next: Vec<usize> = g
                .neighbors(at)
                .iter()
                .copied()
                .filter(|&w| in_comp(w) && w != from)
                .collect();
            match next.as_slice() {
                [] => return Some(len),
                &[w] => {
                    from = at;
                    at = w;
                    len += 1;
                }
                _ => return None,
            }
        }
    };

    if m + 1 == n {
        // A tree. Leaf count is at most 3 iff max degree <= 3 with at most
        // one degree-3 vertex.
        let centers: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
        match centers.as_slice() {
            [] => ComponentShape::Path { len: n },
            &[c] if deg(c) == 3 => {
                let mut arms = [0usize; 3];
                for (slot, &w) in g
                    .neighbors(c)
                    .iter()
                    .filter(|&&w| in_comp(w))
                    .enumerate()
                    .map(|(i, w)| (i, w))
                {
                    match walk_arm(c, w) {
                        Some(len) => arms[slot] = len,
                        None => return ComponentShape::Other,
                    }
                }
                arms.sort_unstable_by(|a, b| b.cmp(a));
                ComponentShape::TripodArm3 { arms }
            }
            _ => ComponentShape::Other,
        }
    } else if m == n {
        // Unicyclic. Strip leaves to expose the unique cycle.
        let mut local_deg: std::collections::BTreeMap<usize, usize> =
            comp.iter().map(|&v| (v, deg(v))).collect();
        let mut removed: std::collections::BTreeSet<usize> = Default::default();
        loop {
            let leaves: Vec<usize> = local_deg
                .iter()
                .filter(|&(v, &d)| d <= 1 && !removed.contains(v))
                .map(|(&v, _)| v)
                .collect();
            if leaves.is_empty() {
                break;
            }
            for v in leaves {
                removed.insert(v);
                for &w in g.neighbors(v) {
                    if in_comp(w) && !removed.contains(&w) {
                        *local_deg.get_mut(&w).unwrap() -= 1;
                    }
                }
                local_deg.remove(&v);
            }
        }
        let cycle: Vec<usize> = local_deg.keys().copied().collect();
        if cycle.len() != 3 {
            return ComponentShape::Other;
        }
        let mut arms = [0usize; 3];
        for (i, &t) in cycle.iter().enumerate() {
            let pendants: Vec<usize> = g
                .neighbors(t)
                .iter()
                .copied()
                .filter(|w| in_comp(*w) && !cycle.contains(w))
                .collect();
            match pendants.as_slice() {
                [] => arms[i] = 0,
                &[w] => match walk_arm(t, w) {
                    Some(len) => arms[i] = len,
                    None => return ComponentShape::Other,
                },
                _ => return ComponentShape::Other,
            }
        }
        arms.sort_unstable_by(|a, b| b.cmp(a));
        ComponentShape::Triangle3Arms { arms }
    } else {
        ComponentShape::Other
    }
}

fn shapes_of(g: &Graph) -> Vec<(Vec<usize>, ComponentShape)> {
    g.components()
        .into_iter()
        .map(|comp| {
            let shape = component_shape(g, &comp);
            (comp, shape)
        })
        .collect()
}

/// Is `g` a complete graph? K_0 and K_1 count.
pub fn is_complete(g: &Graph) -> RecognitionVerdict {
    for u in g.vertices() {
        for v in (u + 1)..g.n() {
            if !g.adjacent(u, v) {
                return RecognitionVerdict::reject(
                    vec![],
                    format!("vertices {u} and {v} are not adjacent"),
                );
            }
        }
    }
    RecognitionVerdict::member(vec![])
}

/// Is `g` complete bipartite? Both parts must be non-empty once n >= 2, so
/// edgeless graphs on two or more vertices are rejected; K_1 passes as the
/// degenerate K_{1,0}. Decided on the complement: `g` is complete bipartite
/// exactly when the complement is a disjoint union of two cliques.
pub fn is_complete_bipartite(g: &Graph) -> RecognitionVerdict {
    if g.n() <= 1 {
        return RecognitionVerdict::member(vec![]);
    }
    let co = g.complement();
    let parts = co.components();
    for part in &parts {
        for (i, &u) in part.iter().enumerate() {
            for &v in &part[i + 1..] {
                if g.adjacent(u, v) {
                    return RecognitionVerdict::reject(
                        vec![],
                        format!("vertices {u} and {v} must share a part but are adjacent"),
                    );
                }
            }
        }
    }
    match parts.len() {
        2 => RecognitionVerdict::member(vec![]),
        1 => RecognitionVerdict::reject(
            vec![],
            "graph is edgeless; both parts must be non-empty".into(),
        ),
        k => RecognitionVerdict::reject(vec![], format!("graph is complete {k}-partite, not bipartite")),
    }
}

/// Is `g` a tripod (member of the class S): a forest in which every
/// component has at most 3 leaves?
pub fn is_tripod(g: &Graph) -> RecognitionVerdict {
    let classified = shapes_of(g);
    let mut shapes = Vec::with_capacity(classified.len());
    for (comp, shape) in &classified {
        match shape {
            ComponentShape::Path { .. } | ComponentShape::TripodArm3 { .. } => {}
            _ => {
                let in_comp = |v: usize| comp.binary_search(&v).is_ok();
                let m: usize = comp
                    .iter()
                    .map(|&v| g.neighbors(v).iter().filter(|&&w| in_comp(w)).count())
                    .sum::<usize>()
                    / 2;
                let reason = if m >= comp.len() {
                    format!("component containing vertex {} has a cycle", comp[0])
                } else {
                    let leaves = comp
                        .iter()
                        .filter(|&&v| g.neighbors(v).iter().filter(|&&w| in_comp(w)).count() == 1)
                        .count();
                    format!(
                        "component containing vertex {} has {leaves} leaves",
                        comp[0]
                    )
                };
                let shapes = classified.iter().map(|(_, s)| s.clone()).collect();
                return RecognitionVerdict::reject(shapes, reason);
            }
        }
        shapes.push(shape.clone());
    }
    RecognitionVerdict::member(shapes)
}

/// Is `g` the line graph of a tripod (member of the class T)? With
/// `strict = false` every component may be a path or a T shape; with
/// `strict = true` path components are rejected and every component must be
/// a T_{i,j,k}.
pub fn is_line_of_tripod(g: &Graph, strict: bool) -> RecognitionVerdict {
    let classified = shapes_of(g);
    let shapes: Vec<ComponentShape> = classified.iter().map(|(_, s)| s.clone()).collect();
    for (comp, shape) in &classified {
        let ok = match shape {
            ComponentShape::Triangle3Arms { .. } => true,
            ComponentShape::Path { .. } => !strict,
            _ => false,
        };
        if !ok {
            let reason = match shape {
                ComponentShape::Path { .. } => format!(
                    "component containing vertex {} is a path (rejected in strict mode)",
                    comp[0]
                ),
                _ => format!(
                    "component containing vertex {} is not a path or a triangle with three pendant paths",
                    comp[0]
                ),
            };
            return RecognitionVerdict::reject(shapes, reason);
        }
    }
    RecognitionVerdict::member(shapes)
}

/// Rebuilds a graph from reported shapes; `None` if any shape is `Other`.
/// For member verdicts of the tripod and line-of-tripod recognizers the
/// result is isomorphic to the input.
pub fn reconstruct(shapes: &[ComponentShape]) -> Option<Graph> {
    let mut blocks = Vec::with_capacity(shapes.len());
    for shape in shapes {
        let spec = match *shape {
            ComponentShape::Path { len } => GeneratorSpec::Path(len),
            ComponentShape::TripodArm3 { arms: [i, j, k] } => GeneratorSpec::Tripod(i, j, k),
            ComponentShape::Triangle3Arms { arms: [i, j, k] } => GeneratorSpec::LineTripod(i, j, k),
            ComponentShape::Other => return None,
        };
        blocks.push(generate(&spec).expect("shape parameters are valid"));
    }
    Some(disjoint_union(&blocks).expect("union of shapes is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::is_isomorphic;
    use crate::graph::generators::{generate, GeneratorSpec};
    use crate::graph::line_graph;

    fn gen(s: &str) -> Graph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    #[test]
    fn complete_recognizer() {
        assert!(is_complete(&gen("complete:5")).member);
        assert!(is_complete(&gen("complete:1")).member);
        assert!(is_complete(&Graph::empty(0).unwrap()).member);
        let mut edges = gen("complete:5").edges();
        edges.retain(|&e| e != (1, 3));
        let verdict = is_complete(&Graph::from_edges(5, edges).unwrap());
        assert!(!verdict.member);
        assert_eq!(verdict.reason.as_deref(), Some("vertices 1 and 3 are not adjacent"));
    }

    #[test]
    fn complete_bipartite_recognizer() {
        assert!(is_complete_bipartite(&gen("bipartite:3,3")).member);
        assert!(is_complete_bipartite(&gen("bipartite:1,3")).member); // the claw
        assert!(is_complete_bipartite(&gen("complete:2")).member);
        assert!(!is_complete_bipartite(&gen("cycle:5")).member);
        let edgeless = Graph::empty(3).unwrap();
        let verdict = is_complete_bipartite(&edgeless);
        assert!(!verdict.member);
        assert!(verdict.reason.unwrap().contains("edgeless"));
        assert!(is_complete_bipartite(&Graph::empty(1).unwrap()).member);
        assert!(!is_complete_bipartite(&gen("complete:3")).member);
    }

    #[test]
    fn tripod_recognizer() {
        let v = is_tripod(&gen("tripod:2,3,4"));
        assert!(v.member);
        assert_eq!(v.shapes, vec![ComponentShape::TripodArm3 { arms: [4, 3, 2] }]);

        let mix = crate::graph::disjoint_union(&[gen("path:7"), gen("tripod:1,1,1")]).unwrap();
        let v = is_tripod(&mix);
        assert!(v.member);
        assert_eq!(v.shapes.len(), 2);

        let v = is_tripod(&gen("bipartite:1,4"));
        assert!(!v.member);
        assert!(v.reason.unwrap().contains("4 leaves"));

        let v = is_tripod(&gen("cycle:4"));
        assert!(!v.member);
        assert!(v.reason.unwrap().contains("cycle"));
    }

    #[test]
    fn line_tripod_recognizer() {
        assert!(is_line_of_tripod(&gen("linetripod:1,1,1"), false).member);
        assert!(is_line_of_tripod(&gen("linetripod:1,1,1"), true).member);
        assert!(is_line_of_tripod(&gen("linetripod:0,0,0"), true).member); // K_3
        assert!(is_line_of_tripod(&gen("path:5"), false).member);
        assert!(!is_line_of_tripod(&gen("path:5"), true).member);
        assert!(!is_line_of_tripod(&gen("cycle:4"), false).member);
        assert!(!is_line_of_tripod(&gen("tripod:1,1,1"), false).member);
    }

    #[test]
    fn line_graphs_of_small_tripods_are_members() {
        for spec in ["tripod:1,1,1", "tripod:2,2,2", "tripod:3,3,2", "tripod:1,2,3", "path:9"] {
            let l = line_graph(&gen(spec));
            assert!(is_line_of_tripod(&l, false).member, "{spec}");
        }
    }

    #[test]
    fn shapes_reconstruct_members() {
        let inputs = [
            gen("tripod:2,3,4"),
            crate::graph::disjoint_union(&[gen("path:4"), gen("tripod:1,2,1")]).unwrap(),
        ];
        for g in inputs {
            let v = is_tripod(&g);
            assert!(v.member);
            let rebuilt = reconstruct(&v.shapes).unwrap();
            assert!(is_isomorphic(&g, &rebuilt).unwrap());
        }
        let g = crate::graph::disjoint_union(&[gen("linetripod:2,0,1"), gen("path:3")]).unwrap();
        let v = is_line_of_tripod(&g, false);
        assert!(v.member);
        let rebuilt = reconstruct(&v.shapes).unwrap();
        assert!(is_isomorphic(&g, &rebuilt).unwrap());
    }

    #[test]
    fn verdict_json_schema() {
        let v = is_tripod(&gen("tripod:1,1,1"));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["member"], true);
        assert_eq!(json["shapes"][0]["tag"], "tripod_arm3");
        assert!(json["reason"].is_null());
    }
}
