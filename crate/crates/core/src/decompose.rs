//! Cartesian prime factorization, gated amalgam splitting and the
//! decomposition of bucolic graphs into prime pieces.
//!
//! Products are detected with the transitive closure of the Djokovic-Winkler
//! relation together with the relation between edges at a vertex that span
//! no square. Amalgams are found by testing gated candidate separators.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::hulls::{all_gated_sets, fibers, gated_hull, is_gated, VertexSet};
use crate::iso::{is_isomorphic, is_isomorphism};
use crate::recognition::{is_bridged, is_bucolic, is_two_connected, is_weakly_bridged};

/// Largest graph for which separators are searched exhaustively.
pub const DEFAULT_SEPARATOR_BOUND: usize = 24;
/// Cap on gated sets enumerated in exhaustive mode.
pub const GATED_SET_CAP: usize = 500_000;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// A graph written as a Cartesian product of prime factors.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<Graph>,
    /// `coordinates[v][i]` is the vertex of factor `i` that `v` projects to.
    pub coordinates: Vec<Vec<Vertex>>,
}

/// Cartesian product of `factors`, with the id of `(x1, .., xk)` in mixed
/// radix. The empty product is a single vertex.
pub fn product_of(factors: &[Graph]) -> Graph {
    factors.iter().fold(Graph::empty(1), |acc, f| acc.cartesian_product(f))
}

fn mixed_radix(sizes: &[usize], coords: &[Vertex]) -> Vertex {
    sizes.iter().zip(coords).fold(0, |acc, (&n, &c)| acc * n + c)
}

pub fn cartesian_factorization(g: &Graph) -> Result<Factorization> {
    g.require_connected()?;
    let n = g.vertex_count();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let index = |u: Vertex, v: Vertex| -> usize {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).expect("edge")
    };
    let mut uf = UnionFind::new(edges.len());
    for (i, &(x, y)) in edges.iter().enumerate() {
        for (j, &(u, v)) in edges.iter().enumerate().skip(i + 1) {
            if uf.find(i) == uf.find(j) {
                continue;
            }
            if g.d(x, u) + g.d(y, v) != g.d(x, v) + g.d(y, u) {
                uf.union(i, j);
            }
        }
    }
    for x in g.vertices() {
        let nb = g.neighbors(x);
        for (a, &y) in nb.iter().enumerate() {
            for &z in &nb[a + 1..] {
                if !g.has_edge(y, z) && g.common_neighbors(y, z).len() == 1 {
                    uf.union(index(x, y), index(x, z));
                }
            }
        }
    }
    let mut classes: Vec<usize> = (0..edges.len()).map(|e| uf.find(e)).collect();
    classes.sort_unstable();
    classes.dedup();
    let class_of: Vec<usize> = (0..edges.len()).map(|e| uf.find(e)).collect();

    struct Layer {
        vertices: Vec<Vertex>,
        position: Vec<Vertex>,
    }
    let mut layers = Vec::new();
    for &c in &classes {
        let in_class = |u: Vertex, v: Vertex| class_of[index(u, v)] == c;
        // the layer through vertex 0
        let mut seen = vec![false; n];
        let mut layer = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < layer.len() {
            let x = layer[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !seen[y] && in_class(x, y) {
                    seen[y] = true;
                    layer.push(y);
                }
            }
        }
        layer.sort_unstable();
        // projection: the co-layer of v meets the layer in one vertex
        let mut position = vec![usize::MAX; n];
        for (k, &root) in layer.iter().enumerate() {
            let mut stack = vec![root];
            position[root] = k;
            while let Some(x) = stack.pop() {
                for &y in g.neighbors(x) {
                    if position[y] == usize::MAX && !in_class(x, y) {
                        position[y] = k;
                        stack.push(y);
                    }
                }
            }
        }
        if position.contains(&usize::MAX) {
            return Err(Error::Invariant("product relation gives overlapping layers".into()));
        }
        layers.push(Layer {
            vertices: layer,
            position,
        });
    }
    layers.sort_by_key(|l| std::cmp::Reverse(l.vertices.len()));
    let factors: Vec<Graph> = layers.iter().map(|l| g.induced_subgraph(&l.vertices)).collect();
    let coordinates: Vec<Vec<Vertex>> = g
        .vertices()
        .map(|v| layers.iter().map(|l| l.position[v]).collect())
        .collect();
    let sizes: Vec<usize> = factors.iter().map(Graph::vertex_count).collect();
    let map: Vec<Vertex> = coordinates.iter().map(|c| mixed_radix(&sizes, c)).collect();
    if !is_isomorphism(g, &product_of(&factors), &map) {
        return Err(Error::Invariant("factors do not rebuild the graph".into()));
    }
    Ok(Factorization { factors, coordinates })
}

/// Prime factors with respect to the Cartesian product, largest first.
pub fn cartesian_prime_factorization(g: &Graph) -> Result<Vec<Graph>> {
    Ok(cartesian_factorization(g)?.factors)
}

/// `G = G' ∪ G''` with `G' ∩ G'' = H0`, all three gated and `H0` proper in
/// both halves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GatedSeparator {
    pub separator: VertexSet,
    /// The smaller half `G'` (ties broken lexicographically).
    pub left: VertexSet,
    pub right: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparatorMode {
    /// Exhaustive up to the bound, fiber candidates above it.
    Auto,
    /// Every gated set is a candidate; errors above the bound.
    Exhaustive,
    /// Candidates from hulls of vertices, edges and fiber boundaries only.
    Fibers,
}

/// Gated separators sorted by `|G'|`, then `G'`, then `H0`.
pub fn find_gated_separators(g: &Graph, bound: usize, mode: SeparatorMode) -> Result<Vec<GatedSeparator>> {
    g.require_connected()?;
    let n = g.vertex_count();
    let exhaustive = match mode {
        SeparatorMode::Exhaustive if n > bound => {
            return Err(Error::BoundExceeded {
                what: "vertices for exhaustive separator search",
                bound,
                actual: n,
            })
        }
        SeparatorMode::Exhaustive => true,
        SeparatorMode::Auto => n <= bound,
        SeparatorMode::Fibers => false,
    };
    let candidates = if exhaustive {
        all_gated_sets(g, GATED_SET_CAP)?
    } else {
        fiber_candidates(g)?
    };
    let mut out = Vec::new();
    for h0 in candidates {
        if h0.is_empty() || h0.len() == n {
            continue;
        }
        out.extend(splits_along(g, &h0)?);
    }
    out.sort_by(|a, b| (a.left.len(), &a.left, &a.separator).cmp(&(b.left.len(), &b.left, &b.separator)));
    out.dedup();
    Ok(out)
}

fn fiber_candidates(g: &Graph) -> Result<Vec<VertexSet>> {
    let mut out: BTreeSet<VertexSet> = g.vertices().map(|v| BTreeSet::from([v])).collect();
    let hull = |s: VertexSet| -> Result<Option<VertexSet>> {
        match gated_hull(g, &s) {
            Ok(h) => Ok(Some(h.vertices)),
            Err(Error::Precondition(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    for (u, v) in g.edges() {
        let Some(p) = hull(BTreeSet::from([u, v]))? else {
            continue;
        };
        let part = fibers(g, &p)?;
        let mut seeds: Vec<VertexSet> = part.boundary.values().cloned().collect();
        seeds.extend(part.cross.values().cloned());
        out.insert(p);
        for s in seeds.into_iter().filter(|s| !s.is_empty()) {
            if let Some(h) = hull(s)? {
                out.insert(h);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Splits of `G - H0` into two unions of components whose halves are gated.
fn splits_along(g: &Graph, h0: &VertexSet) -> Result<Vec<GatedSeparator>> {
    let mut comp = vec![usize::MAX; g.vertex_count()];
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    for s in g.vertices() {
        if h0.contains(&s) || comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !h0.contains(&y) && comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            }
        }
        comps.push(members);
    }
    let c = comps.len();
    if c < 2 {
        return Ok(Vec::new());
    }
    let masks: Vec<u64> = if c <= 12 {
        // component 0 always on the first side
        (0..(1u64 << (c - 1)) - 1).map(|k| k << 1 | 1).collect()
    } else {
        (0..c).map(|i| 1u64 << i).collect()
    };
    let mut out = Vec::new();
    for mask in masks {
        let side = |inside: bool| -> VertexSet {
            let mut s = h0.clone();
            for (i, members) in comps.iter().enumerate() {
                if (mask >> i & 1 == 1) == inside {
                    s.extend(members);
                }
            }
            s
        };
        let (a, b) = (side(true), side(false));
        if is_gated(g, &a)? && is_gated(g, &b)? {
            let (left, right) = if (a.len(), &a) <= (b.len(), &b) { (a, b) } else { (b, a) };
            out.push(GatedSeparator {
                separator: h0.clone(),
                left,
                right,
            });
        }
    }
    Ok(out)
}

/// No gated separator: the graph is a Cartesian product of primes.
pub fn is_box(g: &Graph, bound: usize) -> Result<bool> {
    Ok(find_gated_separators(g, bound, SeparatorMode::Auto)?.is_empty())
}

/// A half of a gated amalgam, minus the separator, containing no gated
/// separator of the whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peripheral {
    pub vertices: VertexSet,
    pub separator: VertexSet,
    /// The complementary half `G''`.
    pub rest: VertexSet,
}

/// All peripheral subgraphs, each with the amalgam of smallest `G'`
/// exhibiting it. Boxes have none.
pub fn peripheral_subgraphs(g: &Graph, bound: usize) -> Result<Vec<Peripheral>> {
    let m = is_bucolic(g)?;
    if !m.member {
        return Err(Error::Precondition(format!(
            "graph is not bucolic: {:?}",
            m.certificate.map(|c| c.vertices()).unwrap_or_default()
        )));
    }
    let seps = find_gated_separators(g, bound, SeparatorMode::Auto)?;
    let mut halves: Vec<(VertexSet, &GatedSeparator, &VertexSet)> = Vec::new();
    for s in &seps {
        halves.push((s.left.clone(), s, &s.right));
        halves.push((s.right.clone(), s, &s.left));
    }
    halves.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let mut out: Vec<Peripheral> = Vec::new();
    for (half, s, rest) in halves {
        let u: VertexSet = half.difference(&s.separator).copied().collect();
        if out.iter().any(|p| p.vertices == u) {
            continue;
        }
        if seps.iter().any(|t| t.separator.is_subset(&u)) {
            continue;
        }
        out.push(Peripheral {
            vertices: u,
            separator: s.separator.clone(),
            rest: rest.clone(),
        });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeClass {
    Edge,
    /// 2-connected weakly bridged, not bridged.
    WeaklyBridged,
    /// 2-connected bridged.
    Bridged,
}

impl PrimeClass {
    pub fn name(self) -> &'static str {
        match self {
            PrimeClass::Edge => "edge",
            PrimeClass::WeaklyBridged => "2-connected weakly bridged",
            PrimeClass::Bridged => "2-connected bridged",
        }
    }

    /// Whether `g` passes the recognizer for this tag.
    pub fn accepts(self, g: &Graph) -> Result<bool> {
        Ok(match self {
            PrimeClass::Edge => g.vertex_count() == 2 && g.edge_count() == 1,
            PrimeClass::WeaklyBridged => is_two_connected(g) && is_weakly_bridged(g)?.member,
            PrimeClass::Bridged => is_two_connected(g) && is_bridged(g)?.member,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTree {
    /// The graph this node stands for, labeled as in the input.
    pub graph: Graph,
    pub node: TreeNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeNode {
    Prime {
        class: PrimeClass,
    },
    /// Cartesian product; no factors means a single vertex.
    /// `coordinates[v][i]` is the vertex of factor `i` under node vertex `v`.
    Product {
        factors: Vec<DecompositionTree>,
        coordinates: Vec<Vec<Vertex>>,
    },
    /// Gated amalgam. Vertex `i` of the left child is node vertex
    /// `left_vertices[i]`, likewise on the right; the separator is their
    /// overlap.
    Amalgam {
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
        left_vertices: Vec<Vertex>,
        right_vertices: Vec<Vertex>,
    },
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<&DecompositionTree> {
        match &self.node {
            TreeNode::Prime { .. } => vec![self],
            TreeNode::Product { factors, .. } => factors.iter().flat_map(|f| f.leaves()).collect(),
            TreeNode::Amalgam { left, right, .. } => {
                let mut out = left.leaves();
                out.extend(right.leaves());
                out
            }
        }
    }

    /// Node vertices shared by both halves of an amalgam node.
    pub fn separator(&self) -> Option<Vec<Vertex>> {
        match &self.node {
            TreeNode::Amalgam {
                left_vertices,
                right_vertices,
                ..
            } => Some(
                left_vertices
                    .iter()
                    .copied()
                    .filter(|v| right_vertices.contains(v))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Indented rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let g = &self.graph;
        let size = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
        let names =
            |vs: &mut dyn Iterator<Item = Vertex>| vs.map(|v| g.label(v).to_string()).collect::<Vec<_>>().join(",");
        match &self.node {
            TreeNode::Prime { class } => {
                out.push_str(&format!(
                    "{pad}prime {} ({size}) {{{}}}\n",
                    class.name(),
                    names(&mut g.vertices())
                ));
            }
            TreeNode::Product { factors, .. } if factors.is_empty() => {
                out.push_str(&format!("{pad}vertex {{{}}}\n", g.label(0)));
            }
            TreeNode::Product { factors, .. } => {
                out.push_str(&format!("{pad}product of {} ({size})\n", factors.len()));
                for f in factors {
                    f.render_into(depth + 1, out);
                }
            }
            TreeNode::Amalgam { left, right, .. } => {
                let sep = self.separator().unwrap_or_default();
                out.push_str(&format!(
                    "{pad}amalgam along {{{}}} ({size})\n",
                    names(&mut sep.into_iter())
                ));
                left.render_into(depth + 1, out);
                right.render_into(depth + 1, out);
            }
        }
    }
}

/// Decomposes a bucolic graph into gated amalgams of products of primes.
/// Among separators the one with the smallest half is split off first.
pub fn decompose_bucolic(g: &Graph) -> Result<DecompositionTree> {
    decompose_bucolic_with(g, DEFAULT_SEPARATOR_BOUND)
}

pub fn decompose_bucolic_with(g: &Graph, bound: usize) -> Result<DecompositionTree> {
    g.require_connected()?;
    let m = is_bucolic(g)?;
    if !m.member {
        return Err(Error::Precondition(format!(
            "graph is not bucolic: {:?}",
            m.certificate.map(|c| c.vertices()).unwrap_or_default()
        )));
    }
    decompose_node(g, bound)
}

fn decompose_node(g: &Graph, bound: usize) -> Result<DecompositionTree> {
    if g.vertex_count() == 1 {
        return Ok(DecompositionTree {
            graph: g.clone(),
            node: TreeNode::Product {
                factors: Vec::new(),
                coordinates: vec![Vec::new()],
            },
        });
    }
    if let Some(sep) = find_gated_separators(g, bound, SeparatorMode::Auto)?.into_iter().next() {
        let left: Vec<Vertex> = sep.left.iter().copied().collect();
        let right: Vec<Vertex> = sep.right.iter().copied().collect();
        return Ok(DecompositionTree {
            graph: g.clone(),
            node: TreeNode::Amalgam {
                left: Box::new(decompose_node(&g.induced_subgraph(&left), bound)?),
                right: Box::new(decompose_node(&g.induced_subgraph(&right), bound)?),
                left_vertices: left,
                right_vertices: right,
            },
        });
    }
    let f = cartesian_factorization(g)?;
    if f.factors.len() > 1 {
        let factors = f
            .factors
            .iter()
            .map(|h| decompose_node(h, bound))
            .collect::<Result<_>>()?;
        return Ok(DecompositionTree {
            graph: g.clone(),
            node: TreeNode::Product {
                factors,
                coordinates: f.coordinates,
            },
        });
    }
    let class = if g.vertex_count() == 2 {
        PrimeClass::Edge
    } else if PrimeClass::Bridged.accepts(g)? {
        PrimeClass::Bridged
    } else if PrimeClass::WeaklyBridged.accepts(g)? {
        PrimeClass::WeaklyBridged
    } else {
        return Err(Error::Invariant(format!(
            "prime piece on {} vertices is neither an edge nor 2-connected weakly bridged",
            g.vertex_count()
        )));
    };
    Ok(DecompositionTree {
        graph: g.clone(),
        node: TreeNode::Prime { class },
    })
}

/// Glues `right` onto `left` along the separator pairs `(left id, right
/// id)`. Right-side vertices outside the separator get ids after the left
/// ones, in order. Returns the glued graph and the map of right ids.
pub fn glue(left: &Graph, right: &Graph, separator: &[(Vertex, Vertex)]) -> Result<(Graph, Vec<Vertex>)> {
    let mut map = vec![usize::MAX; right.vertex_count()];
    for &(a, b) in separator {
        left.check_vertex(a)?;
        right.check_vertex(b)?;
        map[b] = a;
    }
    let mut next = left.vertex_count();
    for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let edges = left.edges().chain(right.edges().map(|(a, b)| (map[a], map[b])));
    Ok((Graph::from_edges(next, edges)?, map))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub ok: bool,
    pub diagnostics: Vec<String>,
    /// A separator that failed to be gated, in ids of its node's graph.
    pub offending_separator: Option<Vec<Vertex>>,
}

impl DecompositionCheck {
    fn fail(&mut self, msg: String) {
        self.ok = false;
        self.diagnostics.push(msg);
    }
}

/// Recomposes the tree bottom-up and compares with `g`, re-checking leaf
/// classes and gatedness of every separator and half in the recomposed
/// parent.
pub fn verify_decomposition(tree: &DecompositionTree, g: &Graph) -> DecompositionCheck {
    let mut check = DecompositionCheck {
        ok: true,
        diagnostics: Vec::new(),
        offending_separator: None,
    };
    match recompose(tree, &mut check) {
        Some((h, _)) if is_isomorphic(&h, g) => {}
        Some(_) => check.fail("recomposed graph is not isomorphic to the input".into()),
        None => check.fail("recomposition failed".into()),
    }
    check
}

/// The recomposed graph and the embedding of the node's vertices into it.
fn recompose(tree: &DecompositionTree, check: &mut DecompositionCheck) -> Option<(Graph, Vec<Vertex>)> {
    let g = &tree.graph;
    let (built, embedding) = match &tree.node {
        TreeNode::Prime { class } => {
            match class.accepts(g) {
                Ok(true) => {}
                Ok(false) => check.fail(format!("leaf {:?} fails its tag {}", g.labels(), class.name())),
                Err(e) => check.fail(format!("leaf recognition failed: {e}")),
            }
            (g.clone(), g.vertices().collect())
        }
        TreeNode::Product { factors, coordinates } => {
            let parts: Vec<(Graph, Vec<Vertex>)> =
                factors.iter().map(|f| recompose(f, check)).collect::<Option<_>>()?;
            let graphs: Vec<Graph> = parts.iter().map(|p| p.0.clone()).collect();
            let sizes: Vec<usize> = graphs.iter().map(Graph::vertex_count).collect();
            if coordinates.len() != g.vertex_count()
                || coordinates
                    .iter()
                    .any(|c| c.len() != parts.len() || c.iter().zip(&sizes).any(|(&x, &n)| x >= n))
            {
                check.fail("product coordinates do not fit the factors".into());
                return None;
            }
            let embedding = coordinates
                .iter()
                .map(|c| {
                    let mapped: Vec<Vertex> = c.iter().zip(&parts).map(|(&x, p)| p.1[x]).collect();
                    mixed_radix(&sizes, &mapped)
                })
                .collect();
            (product_of(&graphs), embedding)
        }
        TreeNode::Amalgam {
            left,
            right,
            left_vertices,
            right_vertices,
        } => {
            let (l, lemb) = recompose(left, check)?;
            let (r, remb) = recompose(right, check)?;
            if left_vertices.len() != lemb.len() || right_vertices.len() != remb.len() {
                check.fail("amalgam vertex lists do not match the halves".into());
                return None;
            }
            let pairs: Vec<(Vertex, Vertex)> = left_vertices
                .iter()
                .enumerate()
                .filter_map(|(i, v)| right_vertices.iter().position(|w| w == v).map(|j| (lemb[i], remb[j])))
                .collect();
            let induced_agree = pairs
                .iter()
                .all(|&(a, b)| pairs.iter().all(|&(c, d)| l.has_edge(a, c) == r.has_edge(b, d)));
            if !induced_agree {
                check.fail("separator copies differ between the halves".into());
            }
            let (glued, rmap) = match glue(&l, &r, &pairs) {
                Ok(x) => x,
                Err(e) => {
                    check.fail(format!("cannot glue: {e}"));
                    return None;
                }
            };
            let mut embedding = vec![usize::MAX; g.vertex_count()];
            for (i, &v) in left_vertices.iter().enumerate() {
                embedding[v] = lemb[i];
            }
            for (j, &v) in right_vertices.iter().enumerate() {
                embedding[v] = rmap[remb[j]];
            }
            let sep: VertexSet = pairs.iter().map(|&(a, _)| a).collect();
            let lside: VertexSet = l.vertices().collect();
            let rside: VertexSet = rmap.iter().copied().collect();
            if sep.len() >= lside.len() || sep.len() >= rside.len() {
                check.fail("separator is not proper in both halves".into());
            }
            if !is_gated(&glued, &sep).unwrap_or(false) {
                let inverse: Vec<Vertex> = tree.separator().unwrap_or_default();
                check.fail(format!("separator {inverse:?} is not gated"));
                check.offending_separator.get_or_insert(inverse);
            }
            for (name, side) in [("left", &lside), ("right", &rside)] {
                if !is_gated(&glued, side).unwrap_or(false) {
                    check.fail(format!("{name} half is not gated"));
                }
            }
            (glued, embedding)
        }
    };
    if !is_isomorphism(g, &built, &embedding) {
        check.fail(format!(
            "node on {} vertices does not recompose to its graph",
            g.vertex_count()
        ));
    }
    Some((built, embedding))
}
