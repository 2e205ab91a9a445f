//! Deterministic generators for the graph families used throughout the
//! library, with a stable text syntax for the CLI (`family:params`).

use super::{disjoint_union, subdivide_uniform, Graph, GraphError};
use std::fmt;
use std::str::FromStr;

/// A graph family plus integer parameters. Every family has a documented
/// canonical labeling so generated graphs are identical across runs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeneratorSpec {
    /// K_n.
    Complete(usize),
    /// K_{a,b}; part labels 0..a and a..a+b.
    CompleteBipartite(usize, usize),
    /// S_{i,j,k}: center 0, then the three arms consecutively.
    Tripod(usize, usize, usize),
    /// T_{i,j,k}: triangle 0,1,2, then pendant paths of lengths i, j, k
    /// hanging from 0, 1, 2 respectively, appended consecutively.
    LineTripod(usize, usize, usize),
    /// k disjoint copies of the inner family, blocks labeled consecutively.
    DisjointCopies(usize, Box<GeneratorSpec>),
    /// Path on n vertices 0-1-...-(n-1).
    Path(usize),
    /// Cycle on n >= 3 vertices.
    Cycle(usize),
    /// h x w grid, row-major labels.
    Grid(usize, usize),
    /// Hexagonal brick wall with k rows of k bricks (k >= 2): start from the
    /// (k+1) x (2k+2) grid, keep all horizontal edges, keep the vertical edge
    /// below (i, j) exactly when i + j is even, then repeatedly delete
    /// degree-<=1 vertices and relabel row-major. Triangle-free,
    /// K_{2,2}-subgraph-free, maximum degree 3.
    Wall(usize),
    /// K_n with every edge subdivided `times` times.
    SubdividedComplete(usize, usize),
    /// K_{a,b} with every edge subdivided `times` times.
    SubdividedBiclique(usize, usize, usize),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GraphError> {
    use GeneratorSpec::*;
    match *spec {
        Complete(n) => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, edges)
        }
        CompleteBipartite(a, b) => {
            let mut edges = Vec::new();
            for u in 0..a {
                for v in a..(a + b) {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(a + b, edges)
        }
        Tripod(i, j, k) => {
            let mut edges = Vec::new();
            let mut next = 1;
            for arm in [i, j, k] {
                let mut prev = 0;
                for _ in 0..arm {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edges(next, edges)
        }
        LineTripod(i, j, k) => {
            let mut edges = vec![(0, 1), (0, 2), (1, 2)];
            let mut next = 3;
            for (root, arm) in [(0, i), (1, j), (2, k)] {
                let mut prev = root;
                for _ in 0..arm {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::from_edges(next, edges)
        }
        DisjointCopies(k, ref inner) => {
            let block = generate(inner)?;
            disjoint_union(&vec![block; k])
        }
        Path(n) => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
        Cycle(n) => {
            if n < 3 {
                return Err(GraphError::Spec(format!("cycle requires n >= 3, got {n}")));
            }
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.push((0, n - 1));
            Graph::from_edges(n, edges)
        }
        Grid(h, w) => {
            let mut edges = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    let v = r * w + c;
                    if c + 1 < w {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < h {
                        edges.push((v, v + w));
                    }
                }
            }
            Graph::from_edges(h * w, edges)
        }
        Wall(k) => {
            if k < 2 {
                return Err(GraphError::Spec(format!("wall requires k >= 2, got {k}")));
            }
            let rows = k + 1;
            let cols = 2 * k + 2;
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows && (r + c) % 2 == 0 {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            // Trim the two degree-1 corners (and anything a trim exposes).
            let mut alive = vec![true; rows * cols];
            loop {
                let mut degree = vec![0usize; rows * cols];
                for &(u, v) in &edges {
                    if alive[u] && alive[v] {
                        degree[u] += 1;
                        degree[v] += 1;
                    }
                }
                let doomed: Vec<usize> = (0..rows * cols)
                    .filter(|&v| alive[v] && degree[v] <= 1)
                    .collect();
                if doomed.is_empty() {
                    break;
                }
                for v in doomed {
                    alive[v] = false;
                }
            }
            let mut relabel = vec![usize::MAX; rows * cols];
            let mut n = 0;
            for (v, &a) in alive.iter().enumerate() {
                if a {
                    relabel[v] = n;
                    n += 1;
                }
            }
            let edges = edges
                .into_iter()
                .filter(|&(u, v)| alive[u] && alive[v])
                .map(|(u, v)| (relabel[u], relabel[v]));
            Graph::from_edges(n, edges)
        }
        SubdividedComplete(n, times) => {
            let base = generate(&Complete(n))?;
            Ok(subdivide_uniform(&base, times)?.0)
        }
        SubdividedBiclique(a, b, times) => {
            let base = generate(&CompleteBipartite(a, b))?;
            Ok(subdivide_uniform(&base, times)?.0)
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        match self {
            Complete(n) => write!(f, "complete:{n}"),
            CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            Tripod(i, j, k) => write!(f, "tripod:{i},{j},{k}"),
            LineTripod(i, j, k) => write!(f, "linetripod:{i},{j},{k}"),
            DisjointCopies(k, inner) => write!(f, "copies:{k}:{inner}"),
            Path(n) => write!(f, "path:{n}"),
            Cycle(n) => write!(f, "cycle:{n}"),
            Grid(h, w) => write!(f, "grid:{h},{w}"),
            Wall(k) => write!(f, "wall:{k}"),
            SubdividedComplete(n, t) => write!(f, "subdivided-complete:{n},{t}"),
            SubdividedBiclique(a, b, t) => write!(f, "subdivided-biclique:{a},{b},{t}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        use GeneratorSpec::*;
        let bad = || GraphError::Spec(format!("cannot parse generator spec {s:?}"));
        let (family, rest) = s.split_once(':').ok_or_else(bad)?;
        if family == "copies" {
            let (count, inner) = rest.split_once(':').ok_or_else(bad)?;
            let k = count.parse().map_err(|_| bad())?;
            return Ok(DisjointCopies(k, Box::new(inner.parse()?)));
        }
        // Parameters split on comma or colon; the colon form keeps specs
        // free of commas inside comma-separated CLI lists.
        let params: Vec<usize> = rest
            .split([',', ':'])
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (family, params.as_slice()) {
            ("complete", &[n]) => Ok(Complete(n)),
            ("bipartite", &[a, b]) => Ok(CompleteBipartite(a, b)),
            ("tripod", &[i, j, k]) => Ok(Tripod(i, j, k)),
            ("linetripod", &[i, j, k]) => Ok(LineTripod(i, j, k)),
            ("path", &[n]) => Ok(Path(n)),
            ("cycle", &[n]) => Ok(Cycle(n)),
            ("grid", &[h, w]) => Ok(Grid(h, w)),
            ("wall", &[k]) => Ok(Wall(k)),
            ("subdivided-complete", &[n, t]) => Ok(SubdividedComplete(n, t)),
            ("subdivided-biclique", &[a, b, t]) => Ok(SubdividedBiclique(a, b, t)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        g.vertices().map(|v| g.degree(v)).collect()
    }

    #[test]
    fn tripod_claw() {
        let g = generate(&GeneratorSpec::Tripod(1, 1, 1)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 3));
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn tripod_structure() {
        for (i, j, k) in [(2, 3, 4), (0, 0, 0), (0, 2, 0), (1, 0, 5)] {
            let g = generate(&GeneratorSpec::Tripod(i, j, k)).unwrap();
            assert_eq!(g.n(), 1 + i + j + k);
            assert_eq!(g.edge_count(), i + j + k); // acyclic and connected
            assert!(g.vertices().all(|v| g.degree(v) <= 3));
            let leaves = g.vertices().filter(|&v| g.degree(v) == 1).count();
            assert!(leaves <= 3);
        }
    }

    #[test]
    fn line_tripod_structure() {
        let t0 = generate(&GeneratorSpec::LineTripod(0, 0, 0)).unwrap();
        assert_eq!((t0.n(), t0.edge_count()), (3, 3)); // bare triangle
        for (i, j, k) in [(1, 1, 1), (2, 0, 3)] {
            let g = generate(&GeneratorSpec::LineTripod(i, j, k)).unwrap();
            assert_eq!(g.n(), 3 + i + j + k);
            assert_eq!(g.edge_count(), g.n()); // unicyclic
            assert!(g.is_connected());
        }
    }

    #[test]
    fn subdivided_complete_counts() {
        let g = generate(&GeneratorSpec::SubdividedComplete(4, 1)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 12));
    }

    #[test]
    fn wall_is_sparse_and_subcubic() {
        for k in 2..=4 {
            let g = generate(&GeneratorSpec::Wall(k)).unwrap();
            assert!(degrees(&g).iter().all(|&d| (2..=3).contains(&d)));
            assert!(g.is_connected());
            // Bipartite grid subgraph: no odd cycles, so triangle-free.
            assert_eq!(g.n(), (k + 1) * (2 * k + 2) - 2);
        }
        assert!(generate(&GeneratorSpec::Wall(1)).is_err());
    }

    #[test]
    fn cycle_requires_three() {
        assert!(generate(&GeneratorSpec::Cycle(2)).is_err());
        let c3 = generate(&GeneratorSpec::Cycle(3)).unwrap();
        assert_eq!(c3.edge_count(), 3);
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in [
            "complete:5",
            "bipartite:3,3",
            "tripod:1,2,3",
            "linetripod:0,0,0",
            "copies:2:tripod:1,1,1",
            "path:7",
            "cycle:6",
            "grid:3,4",
            "wall:3",
            "subdivided-complete:4,1",
            "subdivided-biclique:2,3,1",
        ] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            generate(&spec).unwrap();
        }
        assert!("complete".parse::<GeneratorSpec>().is_err());
        assert!("complete:x".parse::<GeneratorSpec>().is_err());
        assert!("mystery:3".parse::<GeneratorSpec>().is_err());
    }
}
