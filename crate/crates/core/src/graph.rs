//! Simple undirected graphs on dense vertex ids and the structural queries
//! the coloring recipes lean on: degrees, girth, threads, easy vertices,
//! induced 5-cycles and thread contraction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("a cycle consists entirely of 2-vertices (through vertex {0})")]
    ThreadCycle(usize),
    #[error("vertex {0} has degree 1")]
    LeafVertex(usize),
    #[error("suppressing threads would create a loop or parallel edge between {0} and {1}")]
    WouldCreateMultiEdge(usize, usize),
}

/// Simple undirected graph. Neighbor lists are kept sorted and the graph is
/// never mutated after construction.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_null(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Neighbors of `v` with degree exactly `d` (`N_d(v)`).
    pub fn neighbors_of_degree(&self, v: usize, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied().filter(move |&u| self.degree(u) == d)
    }

    /// Number of degree-2 neighbors.
    pub fn n2(&self, v: usize) -> usize {
        self.neighbors_of_degree(v, 2).count()
    }

    /// Number of neighbors of degree at least 3.
    pub fn n3_plus(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&u| self.degree(u) >= 3).count()
    }

    /// Induced subgraph on everything except `removed`. Surviving vertices
    /// keep their relative order; the second component maps new ids to old.
    pub fn delete(&self, removed: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = self.vertices().filter(|v| !removed.contains(v)).collect();
        let (g, _) = self.induced(&keep);
        (g, keep)
    }

    /// Induced subgraph on the given (ascending, distinct) vertices. Returns
    /// the subgraph and the old-to-new id map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut new_id = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = Some(i);
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &u in &self.adj[v] {
                if let Some(j) = new_id[u] {
                    adj[i].push(j);
                    if j > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        (Graph { adj, m }, new_id)
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        set.iter()
            .map(|&v| self.adj[v].iter().filter(|&&u| u > v && inside[u]).count())
            .sum()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// Parse the edge-list text format: a header `n m`, then `m` lines `u v`.
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 0,
            reason: "missing header line".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut found = 0;
        for (line, body) in lines {
            let (u, v) = parse_pair(line, body)?;
            for w in [u, v] {
                if w >= n {
                    return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if !adj[u].insert(v) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            adj[v].insert(u);
            found += 1;
        }
        if found != m {
            return Err(ParseError::EdgeCountMismatch { expected: m, found });
        }
        Ok(Graph {
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            m,
        })
    }

    /// Canonical serialization: header, then sorted edges with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Length of a shortest cycle, or `None` for forests. One BFS per root;
    /// a non-tree edge `(a, b)` met from root `r` closes a cycle through `r`
    /// of length at most `dist[a] + dist[b] + 1`, and the minimum over all
    /// roots is exact.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[a] + 1 >= b {
                        break;
                    }
                }
                for &b in &self.adj[a] {
                    if dist[b] == usize::MAX {
                        dist[b] = dist[a] + 1;
                        parent[b] = a;
                        queue.push_back(b);
                    } else if parent[a] != b {
                        let len = dist[a] + dist[b] + 1;
                        best = Some(best.map_or(len, |x| x.min(len)));
                    }
                }
            }
        }
        best
    }

    /// An induced 5-cycle as `[v0, a, b, c, d]` in cycle order, where `v0` is
    /// the least vertex and `a < d`. The lexicographically least such
    /// sequence is returned.
    pub fn find_induced_c5(&self) -> Option<[usize; 5]> {
        for v0 in self.vertices() {
            let big = |x: usize| x > v0;
            for &a in self.adj[v0].iter().filter(|&&a| big(a)) {
                for &b in self.adj[a].iter().filter(|&&b| big(b) && !self.has_edge(b, v0)) {
                    for &c in self.adj[b]
                        .iter()
                        .filter(|&&c| big(c) && c != a && !self.has_edge(c, v0) && !self.has_edge(c, a))
                    {
                        if let Some(&d) = self.adj[c].iter().find(|&&d| {
                            d > a && d != b && self.has_edge(d, v0) && !self.has_edge(d, a) && !self.has_edge(d, b)
                        }) {
                            return Some([v0, a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// A path of `k` degree-2 vertices, starting from the least vertex that
    /// starts one (and then the least first step).
    pub fn find_k_thread(&self, k: usize) -> Option<ThreadWitness> {
        assert!(k >= 1, "thread length must be positive");
        for start in self.vertices().filter(|&v| self.degree(v) == 2) {
            if k == 1 {
                return Some(self.witness(vec![start]));
            }
            for &first in &self.adj[start] {
                if self.degree(first) != 2 {
                    continue;
                }
                let mut path = vec![start, first];
                while path.len() < k {
                    let last = path[path.len() - 1];
                    let prev = path[path.len() - 2];
                    let next = self.other_neighbor(last, prev);
                    if self.degree(next) != 2 || path.contains(&next) {
                        break;
                    }
                    path.push(next);
                }
                if path.len() == k {
                    return Some(self.witness(path));
                }
            }
        }
        None
    }

    fn witness(&self, path: Vec<usize>) -> ThreadWitness {
        let mut attach = Vec::new();
        for &end in [path[0], path[path.len() - 1]].iter() {
            for &u in &self.adj[end] {
                if !path.contains(&u) && !attach.contains(&u) {
                    attach.push(u);
                }
            }
        }
        ThreadWitness { path, endpoints_attach: attach }
    }

    /// For a 2-vertex `v` with neighbor `from`, the other neighbor.
    pub fn other_neighbor(&self, v: usize, from: usize) -> usize {
        debug_assert_eq!(self.degree(v), 2);
        let [a, b] = [self.adj[v][0], self.adj[v][1]];
        if a == from {
            b
        } else {
            a
        }
    }

    /// Easy-vertex classification with the literal definition: only
    /// 3+-vertices can be easy.
    pub fn classify_easy(&self, v: usize) -> EasyInfo {
        EasyInfo {
            is_easy: self.is_easy(v),
            n2: self.n2(v),
            ne: self.adj[v].iter().filter(|&&u| self.is_easy(u)).count(),
        }
    }

    pub fn is_easy(&self, v: usize) -> bool {
        let d = self.degree(v);
        d >= 3 && (d % 2 == 1 || self.n2(v) > 0)
    }

    /// Maximal threads: components of the subgraph induced on 2-vertices
    /// that are paths. Each path is listed end to end, starting from the
    /// end with the smaller id. Cycles made only of 2-vertices are skipped.
    pub fn maximal_threads(&self) -> Vec<Vec<usize>> {
        let is2 = |v: usize| self.degree(v) == 2;
        let inner = |v: usize| self.adj[v].iter().filter(|&&u| is2(u)).count();
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        // paths start at a thread end: a 2-vertex with at most one 2-neighbor
        for v in self.vertices() {
            if seen[v] || !is2(v) || inner(v) == 2 {
                continue;
            }
            let mut path = vec![v];
            seen[v] = true;
            let mut cur = v;
            while let Some(u) = self.adj[cur].iter().copied().find(|&u| is2(u) && !seen[u]) {
                seen[u] = true;
                path.push(u);
                cur = u;
            }
            if path[0] > path[path.len() - 1] {
                path.reverse();
            }
            out.push(path);
        }
        out.sort();
        out
    }

    /// Non-thread vertices adjacent to the ends of a maximal thread.
    pub fn thread_attachments(&self, thread: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for &end in [thread[0], thread[thread.len() - 1]].iter() {
            for &u in &self.adj[end] {
                if self.degree(u) != 2 && !out.contains(&u) {
                    out.push(u);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Each 3+-vertex mapped to the 2-vertices close to it (lying on a
    /// maximal thread with an end adjacent to it). Vertices with no close
    /// 2-vertex are omitted.
    pub fn close_map(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for thread in self.maximal_threads() {
            for sponsor in self.thread_attachments(&thread) {
                if self.degree(sponsor) >= 3 {
                    out.entry(sponsor).or_default().extend(thread.iter().copied());
                }
            }
        }
        out
    }

    /// Suppress every maximal thread into a single edge. Base vertices are
    /// the non-2-vertices in ascending order.
    pub fn contract_threads(&self) -> Result<Contraction, ContractError> {
        if let Some(v) = self.vertices().find(|&v| self.degree(v) == 1) {
            return Err(ContractError::LeafVertex(v));
        }
        let base_vertices: Vec<usize> = self.vertices().filter(|&v| self.degree(v) != 2).collect();
        let mut base_id = vec![usize::MAX; self.n()];
        for (i, &v) in base_vertices.iter().enumerate() {
            base_id[v] = i;
        }
        let threads = self.maximal_threads();
        let covered: usize = threads.iter().map(Vec::len).sum();
        let twos = self.vertices().filter(|&v| self.degree(v) == 2).count();
        if covered != twos {
            let v = self
                .vertices()
                .find(|&v| self.degree(v) == 2 && !threads.iter().any(|t| t.contains(&v)))
                .unwrap_or(0);
            return Err(ContractError::ThreadCycle(v));
        }
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut thread_of_edge = BTreeMap::new();
        let mut push = |a: usize, b: usize, path: Vec<usize>| -> Result<(), ContractError> {
            if a == b || !edges.insert((a.min(b), a.max(b))) {
                return Err(ContractError::WouldCreateMultiEdge(a.min(b), a.max(b)));
            }
            if !path.is_empty() {
                let oriented = if a < b { path } else { path.into_iter().rev().collect() };
                thread_of_edge.insert((a.min(b), a.max(b)), oriented);
            }
            Ok(())
        };
        for (u, v) in self.edges() {
            if self.degree(u) != 2 && self.degree(v) != 2 {
                push(base_id[u], base_id[v], Vec::new())?;
            }
        }
        for thread in threads {
            let first = thread[0];
            let last = thread[thread.len() - 1];
            let before = if thread.len() == 1 {
                self.adj[first][0]
            } else {
                self.other_neighbor(first, thread[1])
            };
            let after = if thread.len() == 1 {
                self.adj[first][1]
            } else {
                self.other_neighbor(last, thread[thread.len() - 2])
            };
            push(base_id[before], base_id[after], thread)?;
        }
        let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
        let base = Graph::from_edges(base_vertices.len(), &edge_list).expect("contracted edges are simple");
        Ok(Contraction { base, base_vertices, thread_of_edge })
    }
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), ParseError> {
    let mut parts = body.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = parts.next().ok_or_else(|| ParseError::Malformed {
            line,
            reason: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| ParseError::Malformed {
            line,
            reason: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if parts.next().is_some() {
        return Err(ParseError::Malformed { line, reason: "trailing tokens".into() });
    }
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadWitness {
    pub path: Vec<usize>,
    pub endpoints_attach: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EasyInfo {
    pub is_easy: bool,
    pub n2: usize,
    pub ne: usize,
}

/// Result of suppressing all threads. `base_vertices[i]` is the host id of
/// base vertex `i`; `thread_of_edge` keys are base edges `(a, b)` with
/// `a < b`, valued by the suppressed path read from the `a` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub base: Graph,
    pub base_vertices: Vec<usize>,
    pub thread_of_edge: BTreeMap<(usize, usize), Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn parse_c5() {
        let g = Graph::parse("5 5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        assert_eq!((g.n(), g.m()), (5, 5));
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn parse_single_vertex() {
        let g = Graph::parse("1 0").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            Graph::parse("3 3\n0 1\n1 2\n0 1"),
            Err(ParseError::DuplicateEdge { line: 4, u: 0, v: 1 })
        ));
        assert!(matches!(Graph::parse("3 1\n1 0\n").map(|g| g.m()), Ok(1)));
        assert!(matches!(
            Graph::parse("3 1\n1 1"),
            Err(ParseError::SelfLoop { vertex: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("3 1\n1 3"),
            Err(ParseError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(Graph::parse("3 1\n1 x"), Err(ParseError::Malformed { .. })));
        assert!(matches!(Graph::parse("# nothing\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(
            Graph::parse("3 2\n0 1"),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn parse_skips_comments_and_round_trips() {
        let g = Graph::parse("# header\n4 3\n# edges\n2 3\n1 0\n\n1 2\n").unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(path(4).girth(), None);
        assert_eq!(k4().girth(), Some(3));
        assert_eq!(Graph::empty(0).girth(), None);
    }

    #[test]
    fn induced_c5_examples() {
        assert_eq!(cycle(5).find_induced_c5(), Some([0, 1, 2, 3, 4]));
        assert_eq!(cycle(6).find_induced_c5(), None);
        // a 5-cycle with a chord is not induced
        let chorded = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert_eq!(chorded.find_induced_c5(), None);
    }

    #[test]
    fn thread_examples() {
        let t = path(6).find_k_thread(4).unwrap();
        assert_eq!(t.path, vec![1, 2, 3, 4]);
        assert_eq!(t.endpoints_attach, vec![0, 5]);
        let t = cycle(5).find_k_thread(2).unwrap();
        assert_eq!(t.path, vec![0, 1]);
        assert!(k4().find_k_thread(1).is_none());
        assert!(path(6).find_k_thread(5).is_none());
    }

    #[test]
    fn easy_examples() {
        for v in 0..4 {
            assert_eq!(k4().classify_easy(v), EasyInfo { is_easy: true, n2: 0, ne: 3 });
        }
        assert!(!cycle(5).classify_easy(0).is_easy);
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.classify_easy(0), EasyInfo { is_easy: false, n2: 0, ne: 0 });
    }

    #[test]
    fn close_map_examples() {
        // a - x - y - b with pendant pairs making a and b 3-vertices
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7)]).unwrap();
        let close = g.close_map();
        let xy: BTreeSet<usize> = [1, 2].into();
        assert_eq!(close.get(&0), Some(&xy));
        assert_eq!(close.get(&3), Some(&xy));
        assert_eq!(close.len(), 2);
        assert!(k4().close_map().is_empty());
        assert!(cycle(5).close_map().is_empty());
    }

    #[test]
    fn maximal_threads_on_cycle_with_hub() {
        // triangle 0-1-2 plus pendant path 2-3-4
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.maximal_threads(), vec![vec![0, 1], vec![3]]);
        assert!(cycle(4).maximal_threads().is_empty());
    }

    #[test]
    fn contract_examples() {
        let c = k4().contract_threads().unwrap();
        assert_eq!(c.base, k4());
        assert!(c.thread_of_edge.is_empty());
        assert!(matches!(cycle(4).contract_threads(), Err(ContractError::ThreadCycle(_))));
        assert!(matches!(path(3).contract_threads(), Err(ContractError::LeafVertex(0))));
        // theta graph with two parallel threads between 0 and 1
        let theta = Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert!(matches!(theta.contract_threads(), Err(ContractError::WouldCreateMultiEdge(0, 1))));
    }

    #[test]
    fn delete_keeps_order() {
        let g = cycle(5);
        let (h, map) = g.delete(&[1].into());
        assert_eq!(map, vec![0, 2, 3, 4]);
        assert_eq!(h.edges(), vec![(0, 3), (1, 2), (2, 3)]);
    }
}
