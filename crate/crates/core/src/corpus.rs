//! Test corpora: exhaustive small graphs, named fixtures and seeded random
//! families.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::*;
use crate::graph::{Graph, Vertex};
use crate::hulls::is_gated;
use crate::iso::is_isomorphic;
use crate::pattern::PatternKind;
use crate::recognition::{is_bucolic, is_two_connected, is_weakly_bridged};

/// Largest order accepted by [`connected_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per vertex: degree, sorted neighbour degrees, triangles, sorted distances.
type Fingerprint = Vec<(usize, Vec<usize>, usize, Vec<u32>)>;

/// Isomorphism-invariant fingerprint used to bucket candidates.
fn fingerprint(g: &Graph) -> Fingerprint {
    let mut out: Vec<_> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            let triangles = g.edges().filter(|&(a, b)| g.has_edge(v, a) && g.has_edge(v, b)).count();
            let mut row = g.distance_row(v).to_vec();
            row.sort_unstable();
            (g.degree(v), nd, triangles, row)
        })
        .collect();
    out.sort();
    out
}

/// All connected graphs on `n` vertices up to isomorphism. Every connected
/// graph arises from a connected graph on `n - 1` vertices by adding a
/// vertex, since removing a non-cut vertex keeps it connected.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n.to_string(),
            reason: "enumeration supports 1..=8 vertices",
        });
    }
    if n == 1 {
        return Ok(vec![Graph::empty(1)]);
    }
    let smaller = connected_graphs(n - 1)?;
    let mut buckets: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    let mut out: Vec<Graph> = Vec::new();
    for h in &smaller {
        let m = n - 1;
        for mask in 1u32..(1 << m) {
            let new = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| (i, m));
            let g = h.disjoint_union(&Graph::empty(1)).with_edges(new)?;
            let key = fingerprint(&g);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&i| is_isomorphic(&out[i], &g)) {
                continue;
            }
            bucket.push(out.len());
            out.push(g);
        }
    }
    Ok(out.into_iter().map(Graph::with_numeric_labels).collect())
}

/// A random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    random_connected(rng, n, 0.0)
}

/// Random 2-tree: a triangle grown by vertices attached to both ends of an
/// existing edge. These are 2-connected and bridged.
pub fn random_two_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for v in 3..n.max(3) {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    Graph::from_edges(n.max(3), edges).expect("valid edges")
}

/// Glues `b` onto `a` by identifying `b`'s vertices `bs[i]` with `a`'s
/// vertices `as_[i]`.
pub fn glue_along(a: &Graph, b: &Graph, as_: &[Vertex], bs: &[Vertex]) -> Graph {
    let mut map = vec![usize::MAX; b.vertex_count()];
    for (&x, &y) in as_.iter().zip(bs) {
        map[y] = x;
    }
    let mut next = a.vertex_count();
    for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let edges = a.edges().chain(b.edges().map(|(x, y)| (map[x], map[y])));
    Graph::from_edges(next, edges).expect("valid edges")
}

/// A 2-connected weakly bridged piece on at most `max_n` vertices.
pub fn random_weakly_bridged<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    loop {
        let g = match rng.gen_range(0..6) {
            0 => complete(rng.gen_range(3..=4.min(max_n).max(3))).expect("clique"),
            1 if max_n >= 6 => wheel(5).expect("wheel"),
            2 if max_n >= 7 => wheel(6).expect("wheel"),
            3 if max_n >= 4 => {
                let n = rng.gen_range(4..=max_n);
                random_two_tree(rng, n)
            }
            4 if max_n >= 8 => {
                // two 5-wheels sharing a spoke
                let w = wheel(5).expect("wheel");
                glue_along(&w, &w, &[0, 1], &[0, 1])
            }
            5 if max_n >= 7 => {
                // a 5-wheel with a triangle on a rim edge
                glue_along(
                    &wheel(5).expect("wheel"),
                    &complete(3).expect("clique"),
                    &[1, 2],
                    &[0, 1],
                )
            }
            _ => continue,
        };
        if g.vertex_count() <= max_n.max(3)
            && is_two_connected(&g)
            && is_weakly_bridged(&g).map(|m| m.member).unwrap_or(false)
        {
            return g;
        }
    }
}

/// Gated vertex sets of `g` usable as amalgamation sites: single vertices
/// and edges lying in no triangle.
fn glue_sites(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = g.vertices().map(|v| vec![v]).collect();
    for (u, v) in g.edges() {
        if g.common_neighbors(u, v).is_empty() {
            out.push(vec![u, v]);
        }
    }
    out
}

/// Random bucolic graph on at most `max_n` vertices, built from weakly
/// bridged pieces by Cartesian products and gated amalgams.
pub fn random_bucolic<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    assert!(max_n >= 2, "bucolic corpus graphs need room for an edge");
    loop {
        let g = random_bucolic_attempt(rng, max_n, 3);
        if g.vertex_count() <= max_n && is_bucolic(&g).map(|m| m.member).unwrap_or(false) {
            return g;
        }
    }
}

fn random_bucolic_attempt<R: Rng>(rng: &mut R, max_n: usize, depth: usize) -> Graph {
    let choice = if depth == 0 || max_n < 4 {
        0
    } else {
        rng.gen_range(0..4)
    };
    match choice {
        1 => {
            let a_max = rng.gen_range(2..=(max_n / 2).max(2));
            let a = random_bucolic_attempt(rng, a_max, depth - 1);
            let b = random_bucolic_attempt(rng, (max_n / a.vertex_count()).max(2), depth - 1);
            if a.vertex_count() * b.vertex_count() > max_n {
                return a;
            }
            a.cartesian_product(&b).with_numeric_labels()
        }
        2 | 3 => {
            let a = random_bucolic_attempt(rng, max_n.saturating_sub(1).max(2), depth - 1);
            let room = max_n.saturating_sub(a.vertex_count()) + 2;
            if room < 3 {
                return a;
            }
            let b = random_bucolic_attempt(rng, room, depth - 1);
            let sa = glue_sites(&a);
            let sb = glue_sites(&b);
            let pa = sa[rng.gen_range(0..sa.len())].clone();
            let same: Vec<&Vec<Vertex>> = sb.iter().filter(|s| s.len() == pa.len()).collect();
            let Some(pb) = same.choose(rng) else { return a };
            let g = glue_along(&a, &b, &pa, pb);
            if g.vertex_count() > max_n {
                return a;
            }
            g
        }
        _ => {
            if max_n <= 2 || rng.gen_bool(0.25) {
                complete(2).expect("edge")
            } else {
                random_weakly_bridged(rng, max_n)
            }
        }
    }
}

/// Random gated amalgam of two bucolic graphs along a vertex or free edge,
/// with the gatedness of both halves checked.
pub fn random_gated_amalgam<R: Rng>(rng: &mut R, a: &Graph, b: &Graph) -> Option<Graph> {
    let sa = glue_sites(a);
    let pa = sa[rng.gen_range(0..sa.len())].clone();
    let sb: Vec<Vec<Vertex>> = glue_sites(b).into_iter().filter(|s| s.len() == pa.len()).collect();
    let pb = sb.choose(rng)?;
    let g = glue_along(a, b, &pa, pb);
    let left = (0..a.vertex_count()).collect();
    is_gated(&g, &left).ok()?.then_some(g)
}

/// A named corpus graph.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn named(name: impl Into<String>, graph: Graph) -> NamedGraph {
    NamedGraph {
        name: name.into(),
        graph,
    }
}

/// Deterministic fixture families used throughout the tests.
pub fn fixtures() -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for k in 1..=4 {
        out.push(named(format!("hypercube-{k}"), hypercube(k).unwrap()));
    }
    for k in 1..=6 {
        out.push(named(format!("path-{k}"), path(k).unwrap()));
    }
    for k in 3..=7 {
        out.push(named(format!("cycle-{k}"), cycle(k).unwrap()));
        out.push(named(format!("wheel-{k}"), wheel(k).unwrap()));
    }
    for k in 1..=5 {
        out.push(named(format!("complete-{k}"), complete(k).unwrap()));
    }
    for m in 1..=4 {
        for n in m..=4 {
            if m * n > 1 {
                out.push(named(format!("grid-{m}x{n}"), grid(m, n).unwrap()));
            }
        }
    }
    out.push(named("hamming-3-2", hamming(&[3, 2]).unwrap()));
    out.push(named("hamming-3-3", hamming(&[3, 3]).unwrap()));
    out.push(named("hamming-2-2-3", hamming(&[2, 2, 3]).unwrap()));
    out.push(named("almost-wheel-4", almost_wheel(4).unwrap()));
    out.push(named("almost-wheel-5", almost_wheel(5).unwrap()));
    out.push(named("k23", complete_bipartite(2, 3).unwrap()));
    out.push(named("k33", complete_bipartite(3, 3).unwrap()));
    for kind in PatternKind::FIXED {
        out.push(named(
            kind.to_string().to_lowercase().replace(" ", "-"),
            kind.graph().unwrap().clone(),
        ));
    }
    out.push(named("torus-3x3", torus(3, 3).unwrap()));
    out
}

/// Fixtures plus seeded random graphs from every family, all on at most
/// `max_n` vertices.
pub fn standard_corpus(seed: u64, per_family: usize, max_n: usize) -> Vec<NamedGraph> {
    let mut r = rng(seed);
    let mut out: Vec<NamedGraph> = fixtures()
        .into_iter()
        .filter(|g| g.graph.vertex_count() <= max_n)
        .collect();
    for i in 0..per_family {
        let n = r.gen_range(2..=max_n);
        out.push(named(format!("tree-{i}"), random_tree(&mut r, n)));
        let n = r.gen_range(3..=max_n.max(3));
        out.push(named(format!("two-tree-{i}"), random_two_tree(&mut r, n)));
        out.push(named(
            format!("weakly-bridged-{i}"),
            random_weakly_bridged(&mut r, max_n),
        ));
        out.push(named(format!("bucolic-{i}"), random_bucolic(&mut r, max_n)));
        let n = r.gen_range(4..=max_n.max(4));
        out.push(named(format!("random-{i}"), random_connected(&mut r, n, 0.3)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(connected_graphs(9).is_err());
    }

    #[test]
    fn random_families_have_their_properties() {
        let mut r = rng(7);
        for _ in 0..20 {
            let g = random_connected(&mut r, 8, 0.2);
            assert!(g.is_connected());
            let t = random_two_tree(&mut r, 7);
            assert_eq!(t.edge_count(), 2 * 7 - 3);
            let w = random_weakly_bridged(&mut r, 10);
            assert!(is_weakly_bridged(&w).unwrap().member);
            let b = random_bucolic(&mut r, 12);
            assert!(b.vertex_count() <= 12);
            assert!(is_bucolic(&b).unwrap().member);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = standard_corpus(3, 4, 10);
        let b = standard_corpus(3, 4, 10);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.graph == y.graph && x.name == y.name));
    }
}
