//! Immutable simple undirected graphs over vertex ids `0..n`.
//!
//! Adjacency is kept twice: sorted neighbour lists for traversal, and one
//! closed-neighbourhood bit row per vertex for the pairwise set algebra that
//! the code checks are built on.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::{self, Read, Write};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    closed: Vec<BitSet>,
    m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    /// Maximum open degree Δ.
    pub delta_max: usize,
    /// Minimum open degree δ.
    pub delta_min: usize,
}

impl Graph {
    /// Builds a graph from unordered pairs. Repeated pairs collapse into one
    /// edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut closed: Vec<BitSet> = (0..n).map(|v| BitSet::from_ids(n, [v])).collect();
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !closed[u].contains(v) {
                closed[u].insert(v);
                closed[v].insert(u);
                m += 1;
            }
        }
        let adj = closed
            .iter()
            .enumerate()
            .map(|(v, row)| row.iter().filter(|&u| u != v).collect())
            .collect();
        Ok(Self { adj, closed, m })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Sorted open neighbourhood N(v).
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.closed[u].contains(v)
    }

    /// N[v] as a bit row. Panics if `v` is out of range.
    #[inline]
    pub fn closed_row(&self, v: Vertex) -> &BitSet {
        &self.closed[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v, self.n()))
        }
    }

    /// N[v] = N(v) ∪ {v}, sorted.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<Vec<Vertex>> {
        self.check(v)?;
        Ok(self.closed[v].to_vec())
    }

    /// N[v] \ N[u]. Not symmetric in its arguments.
    pub fn distinguishing_set(&self, v: Vertex, u: Vertex) -> Result<Vec<Vertex>> {
        self.check(v)?;
        self.check(u)?;
        if v == u {
            return Err(Error::SameVertex(v));
        }
        let mut s = self.closed[v].clone();
        s.difference_with(&self.closed[u]);
        Ok(s.to_vec())
    }

    /// N(i) ∩ N(j), open neighbourhoods, so neither i nor j is included.
    pub fn common_neighbors(&self, i: Vertex, j: Vertex) -> Result<Vec<Vertex>> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::SameVertex(i));
        }
        let mut s = self.closed[i].clone();
        s.intersect_with(&self.closed[j]);
        s.remove(i);
        s.remove(j);
        Ok(s.to_vec())
    }

    /// `#(N(i) ∩ N(j))` without allocating.
    #[inline]
    pub fn common_neighbor_count(&self, i: Vertex, j: Vertex) -> usize {
        let both = self.closed[i].intersection_count(&self.closed[j]);
        // i and j each show up in the closed intersection exactly when adjacent
        if self.has_edge(i, j) {
            both - 2
        } else {
            both
        }
    }

    /// Closed ball of radius two around `v`.
    pub fn ball2(&self, v: Vertex) -> BitSet {
        let mut ball = self.closed[v].clone();
        for &x in &self.adj[v] {
            ball.union_with(&self.closed[x]);
        }
        ball
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degs = self.adj.iter().map(Vec::len);
        DegreeStats {
            delta_max: degs.clone().max().unwrap_or(0),
            delta_min: degs.min().unwrap_or(0),
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == n
    }

    /// Disjoint union of `parts`, relabelled consecutively, plus `extra`
    /// edges given in the new labels.
    pub fn disjoint_union(parts: &[Graph], extra: &[(Vertex, Vertex)]) -> Result<Self> {
        let n = parts.iter().map(Graph::n).sum();
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in parts {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            offset += g.n();
        }
        edges.extend_from_slice(extra);
        Self::from_edges(n, edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .finish()
    }
}

/// Parses the edge-list format:
///
/// ```text
/// # comment lines start with '#'
/// n m
/// u v      (m lines, 0 <= u, v < n, u != v)
/// ```
///
/// Blank lines are ignored. Line numbers in errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let err = |line: usize, message: String| Error::Parse { line, message };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(text.lines().count().max(1), "missing header \"n m\"".into()))?;
    let [n, m] = parse_pair(header).map_err(|e| err(hline, format!("header: {e}")))?;
    if n == 0 {
        return Err(err(hline, "vertex count must be at least 1".into()));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for _ in 0..m {
        let (lno, l) = lines
            .next()
            .ok_or_else(|| err(last_line + 1, format!("expected {m} edge lines, found {}", edges.len())))?;
        last_line = lno;
        let [u, v] = parse_pair(l).map_err(|e| err(lno, e))?;
        if u >= n || v >= n {
            return Err(err(lno, format!("endpoint out of range 0..{n} in \"{l}\"")));
        }
        if u == v {
            return Err(err(lno, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, format!("more than the declared {m} edges")));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: &str) -> std::result::Result<[usize; 2], String> {
    let mut toks = line.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let t = toks.next().ok_or("expected two integers")?;
        t.parse().map_err(|_| format!("not a non-negative integer: \"{t}\""))
    };
    let pair = [next()?, next()?];
    if toks.next().is_some() {
        return Err("expected exactly two integers".into());
    }
    Ok(pair)
}

pub fn read_edge_list<R: Read>(mut reader: R) -> Result<Graph> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
    parse_edge_list(&text)
}

/// Inverse of [`parse_edge_list`]: header then edges `u < v` in
/// lexicographic order, LF terminated.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 10);
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list<W: Write>(g: &Graph, mut writer: W) -> io::Result<()> {
    writer.write_all(serialize_edge_list(g).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use proptest::prelude::*;

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_cycle_and_collapse_duplicates() {
        let g = c4();
        assert_eq!(g.degree_stats(), DegreeStats { delta_max: 2, delta_min: 2 });
        let g = Graph::from_edges(3, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(Error::InvalidEdge(0, 2, 2))));
        assert!(matches!(Graph::empty(0), Err(Error::EmptyGraph)));
    }

    #[test]
    fn closed_neighborhoods() {
        assert_eq!(c4().closed_neighborhood(0).unwrap(), vec![0, 1, 3]);
        assert_eq!(complete(3).unwrap().closed_neighborhood(1).unwrap(), vec![0, 1, 2]);
        assert_eq!(Graph::empty(5).unwrap().closed_neighborhood(2).unwrap(), vec![2]);
        assert!(matches!(c4().closed_neighborhood(4), Err(Error::InvalidVertex(4, 4))));
    }

    #[test]
    fn distinguishing_sets() {
        assert_eq!(c4().distinguishing_set(0, 2).unwrap(), vec![0]);
        let k4 = complete(4).unwrap();
        for v in 0..4 {
            for u in (0..4).filter(|&u| u != v) {
                assert!(k4.distinguishing_set(v, u).unwrap().is_empty());
            }
        }
        assert_eq!(path(3).unwrap().distinguishing_set(0, 2).unwrap(), vec![0]);
        assert!(matches!(c4().distinguishing_set(1, 1), Err(Error::SameVertex(1))));
    }

    #[test]
    fn common_neighbor_sets() {
        assert_eq!(c4().common_neighbors(0, 2).unwrap(), vec![1, 3]);
        assert!(cycle(5).unwrap().common_neighbors(0, 1).unwrap().is_empty());
        assert_eq!(complete(4).unwrap().common_neighbors(0, 1).unwrap(), vec![2, 3]);
        assert_eq!(complete(4).unwrap().common_neighbor_count(0, 1), 2);
        assert!(matches!(c4().common_neighbors(2, 2), Err(Error::SameVertex(2))));
    }

    #[test]
    fn degree_statistics() {
        assert_eq!(cycle(6).unwrap().degree_stats(), DegreeStats { delta_max: 2, delta_min: 2 });
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_stats(), DegreeStats { delta_max: 3, delta_min: 1 });
        assert_eq!(Graph::empty(5).unwrap().degree_stats(), DegreeStats { delta_max: 0, delta_min: 0 });
    }

    #[test]
    fn connectivity() {
        assert!(cycle(7).unwrap().is_connected());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn parse_examples() {
        let g = parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, c4());
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        assert!(matches!(parse_edge_list("2 1\n0 5\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn parse_comments_and_errors() {
        let g = parse_edge_list("# a path\n3 2\n# mid\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3).unwrap());
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1\n1 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("3 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 -1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn serializer_emits_sorted_edges() {
        let g = Graph::from_edges(4, [(3, 0), (2, 1), (1, 0)]).unwrap();
        assert_eq!(serialize_edge_list(&g), "4 3\n0 1\n0 3\n1 2\n");
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..16).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..40).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            let text = serialize_edge_list(&g);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_edge_list(&back), text);
        }

        #[test]
        fn neighbourhood_algebra(g in arb_graph()) {
            for v in 0..g.n() {
                let nv = g.closed_neighborhood(v).unwrap();
                prop_assert_eq!(nv.len(), g.degree(v) + 1);
                prop_assert!(g.neighbors(v).iter().all(|&u| g.neighbors(u).contains(&v) && u != v));
                for u in (0..g.n()).filter(|&u| u != v) {
                    let nu = g.closed_neighborhood(u).unwrap();
                    let dist = g.distinguishing_set(v, u).unwrap();
                    prop_assert!(dist.iter().all(|x| nv.contains(x) && !nu.contains(x)));
                    let shared = nv.iter().filter(|x| nu.contains(x)).count();
                    prop_assert_eq!(shared + dist.len(), nv.len());
                    prop_assert_eq!(g.common_neighbors(v, u).unwrap(), g.common_neighbors(u, v).unwrap());
                    prop_assert_eq!(g.common_neighbors(v, u).unwrap().len(), g.common_neighbor_count(v, u));
                }
            }
        }
    }
}
