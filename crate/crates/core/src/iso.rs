//! Graph isomorphism and automorphism enumeration by refined backtracking.
//!
//! Vertices start out colored by degree and distance profile; colors are
//! refined by neighbor multisets on both graphs jointly. The search maps
//! vertices in breadth-first order and requires distances to all mapped
//! vertices to be preserved.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, UNREACHABLE};

/// Default cap on the number of automorphisms enumerated.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 100_000;

fn joint_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let profile = |x: &Graph, v: Vertex| {
        let mut counts = Vec::new();
        for &d in x.distance_row(v).iter() {
            let d = if d == UNREACHABLE { 0 } else { d as usize + 1 };
            if counts.len() <= d {
                counts.resize(d + 1, 0usize);
            }
            counts[d] += 1;
        }
        (x.degree(v), counts)
    };
    let mut dict = HashMap::new();
    let mut color = |key| {
        let next = dict.len();
        *dict.entry(key).or_insert(next)
    };
    let mut cg: Vec<usize> = g.vertices().map(|v| color(profile(g, v))).collect();
    let mut ch: Vec<usize> = h.vertices().map(|v| color(profile(h, v))).collect();
    loop {
        let before = distinct(&cg, &ch);
        let mut dict = HashMap::new();
        let mut refine = |x: &Graph, c: &[usize]| -> Vec<usize> {
            x.vertices()
                .map(|v| {
                    let mut nb: Vec<usize> = x.neighbors(v).iter().map(|&w| c[w]).collect();
                    nb.sort_unstable();
                    let next = dict.len();
                    *dict.entry((c[v], nb)).or_insert(next)
                })
                .collect()
        };
        let ng = refine(g, &cg);
        let nh = refine(h, &ch);
        cg = ng;
        ch = nh;
        if distinct(&cg, &ch) == before {
            return (cg, ch);
        }
    }
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: Vec<usize>,
    ch: Vec<usize>,
    order: Vec<Vertex>,
    map: Vec<Vertex>,
    used: Vec<bool>,
    cap: Option<usize>,
    first_only: bool,
    found: Vec<Vec<Vertex>>,
}

impl Matcher<'_> {
    fn search(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            if let Some(cap) = self.cap {
                if self.found.len() >= cap {
                    return Err(Error::BudgetExceeded {
                        what: "automorphisms",
                        budget: cap,
                        reached: self.found.len() + 1,
                    });
                }
            }
            self.found.push(self.map.clone());
            return Ok(self.first_only);
        }
        let x = self.order[depth];
        let anchor = self.g.neighbors(x).iter().copied().find(|&a| self.map[a] != usize::MAX);
        let candidates: Vec<Vertex> = match anchor {
            Some(a) => self.h.neighbors(self.map[a]).to_vec(),
            None => self.h.vertices().collect(),
        };
        let gx = self.g.distance_row(x);
        for y in candidates {
            if self.used[y] || self.cg[x] != self.ch[y] {
                continue;
            }
            let hy = self.h.distance_row(y);
            if !self.order[..depth].iter().all(|&a| gx[a] == hy[self.map[a]]) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            let stop = self.search(depth + 1)?;
            self.used[y] = false;
            self.map[x] = usize::MAX;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn bfs_order(g: &Graph, colors: &[usize]) -> Vec<Vertex> {
    let mut freq: HashMap<usize, usize> = HashMap::new();
    for &c in colors {
        *freq.entry(c).or_default() += 1;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut roots: Vec<Vertex> = g.vertices().collect();
    roots.sort_by_key(|&v| (freq[&colors[v]], v));
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

fn matcher<'a>(g: &'a Graph, h: &'a Graph, cap: Option<usize>, first_only: bool) -> Option<Matcher<'a>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = joint_colors(g, h);
    let (mut a, mut b) = (cg.clone(), ch.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let order = bfs_order(g, &cg);
    Some(Matcher {
        g,
        h,
        cg,
        ch,
        order,
        map: vec![usize::MAX; g.vertex_count()],
        used: vec![false; h.vertex_count()],
        cap,
        first_only,
        found: Vec::new(),
    })
}

/// An isomorphism `g -> h` as the list of images, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    let mut m = matcher(g, h, None, true)?;
    m.search(0).expect("uncapped search");
    m.found.pop()
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// Whether `map` is an isomorphism `g -> h`.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[Vertex]) -> bool {
    let n = g.vertex_count();
    if map.len() != n || h.vertex_count() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut seen = vec![false; n];
    if map.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
        return false;
    }
    g.edges().all(|(u, v)| h.has_edge(map[u], map[v]))
}

/// All automorphisms of `g` in search order; errors once more than `cap`
/// are found.
pub fn automorphism_list(g: &Graph, cap: usize) -> Result<Vec<Vec<Vertex>>> {
    let mut m = matcher(g, g, Some(cap), false).expect("a graph matches itself");
    m.search(0)?;
    let mut out = m.found;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_list(&cycle(4).unwrap(), 1000).unwrap().len(), 8);
        assert_eq!(automorphism_list(&path(3).unwrap(), 1000).unwrap().len(), 2);
        assert_eq!(automorphism_list(&hamming(&[3, 2]).unwrap(), 1000).unwrap().len(), 12);
        assert_eq!(automorphism_list(&hypercube(3).unwrap(), 1000).unwrap().len(), 48);
        assert_eq!(automorphism_list(&torus(5, 5).unwrap(), 1000).unwrap().len(), 200);
        assert!(automorphism_list(&complete(6).unwrap(), 100).is_err());
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let g = wheel(6).unwrap();
        let perm = [3, 5, 0, 6, 1, 4, 2];
        let h = g.permuted(&perm).unwrap();
        let iso = isomorphism(&g, &h).unwrap();
        assert!(is_isomorphism(&g, &h, &iso));
        assert!(!is_isomorphic(
            &cycle(6).unwrap(),
            &complete(3).unwrap().disjoint_union(&complete(3).unwrap())
        ));
        assert!(!is_isomorphic(&cycle(6).unwrap(), &path(6).unwrap()));
        assert!(is_isomorphic(
            &complete(2).unwrap().cartesian_product(&complete(2).unwrap()),
            &cycle(4).unwrap()
        ));
    }
}
