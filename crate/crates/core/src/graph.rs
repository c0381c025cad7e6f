//! Finite simple undirected graphs with a memoizing distance oracle.
//!
//! Vertices are the integers `0..n`. Input labels are carried in a side
//! table and only used for reporting.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Opaque vertex id.
pub type Vertex = usize;

/// Distance value used for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

/// Distance rows are memoized only for graphs up to this many vertices.
pub const DEFAULT_DISTANCE_CACHE_CAP: usize = 4096;

/// A row of the distance matrix: `row[v]` is the distance to `v`, or
/// [`UNREACHABLE`].
pub type DistanceRow = Arc<[u32]>;

#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    labels: Vec<String>,
    edge_count: usize,
    rows: Vec<OnceLock<DistanceRow>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.adj.len())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n], None)
    }

    /// Builds a graph from an edge list. Repeated edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj, None))
    }

    fn from_adjacency(mut adj: Vec<Vec<Vertex>>, labels: Option<Vec<String>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let n = adj.len();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let labels = labels.unwrap_or_else(|| (0..n).map(|v| v.to_string()).collect());
        let rows = if n <= DEFAULT_DISTANCE_CACHE_CAP {
            (0..n).map(|_| OnceLock::new()).collect()
        } else {
            Vec::new()
        };
        Graph {
            adj,
            labels,
            edge_count,
            rows,
        }
    }

    /// Replaces the vertex labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.adj.len() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.adj.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Resets every label to the decimal vertex id.
    pub fn with_numeric_labels(mut self) -> Self {
        self.labels = (0..self.adj.len()).map(|v| v.to_string()).collect();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Common neighbors of `u` and `v`, in increasing order.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn bfs_row(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let next = dist[x] + 1;
            for &y in &self.adj[x] {
                if dist[y] == UNREACHABLE {
                    dist[y] = next;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// The full distance row of `source`, memoized for graphs within the
    /// cache cap.
    pub fn distance_row(&self, source: Vertex) -> DistanceRow {
        match self.rows.get(source) {
            Some(cell) => cell.get_or_init(|| self.bfs_row(source).into()).clone(),
            None => self.bfs_row(source).into(),
        }
    }

    /// Shortest-path distance, `None` across components.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let d = self.distance_row(u)[v];
        (d != UNREACHABLE).then_some(d as usize)
    }

    /// Distance for vertices known to be in the same component.
    #[inline]
    pub(crate) fn d(&self, u: Vertex, v: Vertex) -> u32 {
        match self.rows.get(u) {
            Some(cell) => cell.get_or_init(|| self.bfs_row(u).into())[v],
            None => self.bfs_row(u)[v],
        }
    }

    /// Breadth-first distances from `source`; vertices in other components
    /// are absent from the map.
    pub fn distances_from(&self, source: Vertex) -> Result<BTreeMap<Vertex, usize>> {
        self.check_vertex(source)?;
        let row = self.distance_row(source);
        Ok(row
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != UNREACHABLE)
            .map(|(v, &d)| (v, d as usize))
            .collect())
    }

    /// The interval `I(u, v)`: all vertices on shortest `(u, v)`-paths.
    pub fn interval(&self, u: Vertex, v: Vertex) -> Result<BTreeSet<Vertex>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let (ru, rv) = (self.distance_row(u), self.distance_row(v));
        let duv = ru[v];
        if duv == UNREACHABLE {
            return Err(Error::Disconnected(u, v));
        }
        Ok(self
            .vertices()
            .filter(|&x| ru[x] != UNREACHABLE && rv[x] != UNREACHABLE && ru[x] + rv[x] == duv)
            .collect())
    }

    /// The ball `B_r(v)`, in increasing vertex order.
    pub fn ball(&self, v: Vertex, radius: usize) -> Vec<Vertex> {
        let row = self.distance_row(v);
        self.vertices()
            .filter(|&x| row[x] != UNREACHABLE && row[x] as usize <= radius)
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
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

    /// Errors with [`Error::NotConnected`] unless the graph is connected.
    pub fn require_connected(&self) -> Result<()> {
        let components = self.components().len();
        if components <= 1 {
            Ok(())
        } else {
            Err(Error::NotConnected { components })
        }
    }

    /// Whether the vertex set induces a connected subgraph. The empty set is
    /// not connected.
    pub fn is_connected_set(&self, set: &BTreeSet<Vertex>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if set.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == set.len()
    }

    /// The subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::from_adjacency(adj, Some(labels))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter {
                name: "perm",
                value: format!("{perm:?}"),
                reason: "not a permutation of the vertex set",
            });
        }
        let mut adj = vec![Vec::new(); n];
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            adj[perm[v]] = self.adj[v].iter().map(|&w| perm[w]).collect();
            labels[perm[v]] = self.labels[v].clone();
        }
        Ok(Graph::from_adjacency(adj, Some(labels)))
    }

    /// Cartesian product. Vertex `(a, b)` is numbered `a * |other| + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        self.product(other, false)
    }

    /// Strong product. Vertex `(a, b)` is numbered `a * |other| + b`.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        self.product(other, true)
    }

    fn product(&self, other: &Graph, strong: bool) -> Graph {
        let (n1, n2) = (self.vertex_count(), other.vertex_count());
        let id = |a: Vertex, b: Vertex| a * n2 + b;
        let mut adj = vec![Vec::new(); n1 * n2];
        for a in 0..n1 {
            for b in 0..n2 {
                let list = &mut adj[id(a, b)];
                for &b2 in other.neighbors(b) {
                    list.push(id(a, b2));
                }
                for &a2 in self.neighbors(a) {
                    list.push(id(a2, b));
                    if strong {
                        for &b2 in other.neighbors(b) {
                            list.push(id(a2, b2));
                        }
                    }
                }
            }
        }
        let labels = (0..n1)
            .flat_map(|a| (0..n2).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.labels[a], other.labels[b]))
            .collect();
        Graph::from_adjacency(adj, Some(labels))
    }

    /// Disjoint union; vertices of `other` are shifted by
    /// `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Graph::from_adjacency(adj, Some(labels))
    }

    /// Returns a copy with the given edges added.
    pub fn with_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in edges {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph::from_adjacency(adj, Some(self.labels.clone())))
    }

    /// Returns a copy with the given edge removed (no-op if absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut adj = self.adj.clone();
        if u < adj.len() && v < adj.len() {
            adj[u].retain(|&x| x != v);
            adj[v].retain(|&x| x != u);
        }
        Graph::from_adjacency(adj, Some(self.labels.clone()))
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[Vertex]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct GraphRecord {
    vertices: usize,
    labels: Vec<String>,
    edges: Vec<(Vertex, Vertex)>,
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRecord {
            vertices: self.vertex_count(),
            labels: self.labels.clone(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRecord::deserialize(d)?;
        let g = Graph::from_edges(r.vertices, r.edges).map_err(serde::de::Error::custom)?;
        g.with_labels(r.labels).map_err(serde::de::Error::custom)
    }
}
