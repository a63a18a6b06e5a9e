//! Finite simple connected undirected graphs.
//!
//! Vertices are dense indices `0..n`. The particle's configuration space is
//! always one of these graphs; everything downstream (walk sums, Laplacians,
//! classifiers) assumes simplicity and connectivity, so both are enforced at
//! construction.

use crate::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list with arbitrary vertex ids, renumbering
    /// vertices densely `0..n` in order of first appearance.
    pub fn from_edge_list(pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut ids: Vec<usize> = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let mut id = |x: usize| {
                *index_of.entry(x).or_insert_with(|| {
                    ids.push(x);
                    ids.len() - 1
                })
            };
            let (a, b) = (id(u), id(v));
            edges.push((a.min(b), a.max(b)));
        }
        Self::build(ids.len(), edges)
    }

    /// Builds a graph on exactly `n` vertices from edges with ids `< n`,
    /// without any renumbering.
    pub fn with_vertices(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        Self::build(n, edges)
    }

    /// Parses the text graph format: a header line `n m`, then `m` lines
    /// `u v` with `0 <= u, v < n`. `#` starts a comment; blank lines are
    /// ignored. Vertex ids are used as given (no renumbering).
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_field = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::GraphParse {
                    line: lineno + 1,
                    msg: format!("expected a nonnegative integer, got {s:?}"),
                })
            };
            if fields.len() != 2 {
                return Err(Error::GraphParse {
                    line: lineno + 1,
                    msg: format!("expected two fields, got {}", fields.len()),
                });
            }
            let (a, b) = (parse_field(fields[0])?, parse_field(fields[1])?);
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= n || b >= n {
                        return Err(Error::GraphParse {
                            line: lineno + 1,
                            msg: format!("vertex id out of range 0..{n}"),
                        });
                    }
                    if a == b {
                        return Err(Error::LoopEdge(a));
                    }
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        let (n, m) = header.ok_or(Error::GraphParse {
            line: 0,
            msg: "missing `n m` header".into(),
        })?;
        if edges.len() != m {
            return Err(Error::GraphParse {
                line: 0,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Self::build(n, edges)
    }

    fn build(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 || edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let g = Self { adj, edges };
        // connectivity also rules out isolated vertices
        let seen = g.bfs_distances(0);
        if seen.iter().any(|d| d.is_none()) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Canonical text form: `n m` header, then edges sorted ascending.
    /// Parsing this string reproduces the graph bit-exactly.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Breadth-first distances from `source`; every vertex is reachable.
    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        Ok(self
            .bfs_distances(source)
            .into_iter()
            .map(|d| d.expect("graph is connected"))
            .collect())
    }

    /// Shortest-path distance; zero iff `u == v`.
    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    pub fn diameter(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| {
                self.distances_from(v)
                    .expect("valid vertex")
                    .into_iter()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    // ---- standard families used by tests and the verification suites ----

    /// Path on `n >= 2` vertices: `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        assert!(n >= 2, "a path needs at least two vertices");
        Self::build(n, (0..n - 1).map(|i| (i, i + 1)).collect()).expect("valid path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Self::build(n, edges).expect("valid cycle")
    }

    /// Complete graph on `n >= 2` vertices.
    pub fn complete(n: usize) -> Self {
        assert!(n >= 2);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::build(n, edges).expect("valid complete graph")
    }

    /// Star with the center at vertex 0 and `leaves >= 1` leaves.
    pub fn star(leaves: usize) -> Self {
        assert!(leaves >= 1);
        Self::build(leaves + 1, (1..=leaves).map(|v| (0, v)).collect()).expect("valid star")
    }

    /// Spider: paths of the given edge-lengths joined at a common center
    /// (vertex 0). Arm vertices are numbered arm by arm, outward.
    pub fn spider(arms: &[usize]) -> Self {
        assert!(!arms.is_empty() && arms.iter().all(|&len| len >= 1));
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Self::build(next, edges).expect("valid spider")
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_p2() {
        let g = Graph::from_edge_list(&[(0, 1)]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!((g.degree(0), g.degree(1)), (1, 1));
    }

    #[test]
    fn path_degrees() {
        let g = Graph::from_edge_list(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(
            (0..3).map(|v| g.degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
    }

    #[test]
    fn renumbering_preserves_first_appearance_order() {
        let g = Graph::from_edge_list(&[(5, 7), (7, 9)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        // 5 -> 0, 7 -> 1, 9 -> 2
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn invalid_inputs_are_distinct_errors() {
        assert!(matches!(
            Graph::from_edge_list(&[(0, 1), (1, 2), (2, 0), (3, 3)]),
            Err(Error::LoopEdge(3))
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edge_list(&[(0, 1), (2, 3)]),
            Err(Error::Disconnected)
        ));
        assert!(matches!(Graph::from_edge_list(&[]), Err(Error::EmptyEdgeList)));
    }

    #[test]
    fn distances() {
        let p3 = Graph::path(3);
        assert_eq!(p3.distance(0, 2).unwrap(), 2);
        assert_eq!(p3.distance(1, 1).unwrap(), 0);
        let c6 = Graph::cycle(6);
        assert_eq!(c6.distance(0, 3).unwrap(), 3);
        assert_eq!(c6.diameter(), 3);
        assert!(p3.distance(0, 9).is_err());
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let g = Graph::spider(&[2, 3, 3]);
        let text = g.to_file_string();
        let h = Graph::parse(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.to_file_string(), text);
    }

    #[test]
    fn parse_handles_comments_and_errors() {
        let g = Graph::parse("# a path\n3 2\n0 1\n1 2 # last edge\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(matches!(
            Graph::parse("2 1\n0 5\n"),
            Err(Error::GraphParse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("3 2\n0 1\n"),
            Err(Error::GraphParse { .. })
        ));
        assert!(Graph::parse("").is_err());
    }

    #[test]
    fn spider_shape() {
        // three arms of two edges each: center degree 3, wells degree 2
        let g = Graph::spider(&[2, 2, 2]);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.distance(1, 3).unwrap(), 2);
    }
}
