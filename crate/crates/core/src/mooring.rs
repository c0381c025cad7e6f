//! Moorings from breadth-first and lexicographic breadth-first search, the
//! combing check, and dismantling orders.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A father map onto `base`: every other vertex points to a neighbor one
/// step closer to `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mooring {
    pub base: Vertex,
    pub father: Vec<Vertex>,
}

impl Mooring {
    /// The first vertex breaking the father invariants, if any.
    pub fn invalid_vertex(&self, g: &Graph) -> Option<Vertex> {
        if self.father.len() != g.vertex_count() || self.base >= g.vertex_count() {
            return Some(self.base);
        }
        let row = g.distance_row(self.base);
        g.vertices().find(|&v| {
            let f = self.father[v];
            if v == self.base {
                return f != v;
            }
            f >= g.vertex_count() || !g.has_edge(v, f) || row[f].checked_add(1) != Some(row[v])
        })
    }

    /// Father iterates from `v` down to the base, inclusive.
    pub fn path(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut x = v;
        while x != self.base && out.len() <= self.father.len() {
            x = self.father[x];
            out.push(x);
        }
        out
    }
}

/// Breadth-first parents with neighbors scanned in id order.
pub fn bfs_mooring(g: &Graph, u: Vertex) -> Result<Mooring> {
    g.check_vertex(u)?;
    g.require_connected()?;
    let mut father = vec![usize::MAX; g.vertex_count()];
    father[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if father[y] == usize::MAX {
                father[y] = x;
                queue.push_back(y);
            }
        }
    }
    Ok(Mooring { base: u, father })
}

/// Lexicographic breadth-first order from `u`. Labels are the decreasing
/// visit stamps of already visited neighbors, compared lexicographically;
/// ties go to the smallest id.
pub fn lexbfs_order(g: &Graph, u: Vertex) -> Result<Vec<Vertex>> {
    g.check_vertex(u)?;
    let n = g.vertex_count();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let next = if step == 0 {
            u
        } else {
            let mut best: Option<Vertex> = None;
            for v in (0..n).filter(|&v| !visited[v]) {
                if best.is_none_or(|b| labels[v] > labels[b]) {
                    best = Some(v);
                }
            }
            best.expect("unvisited vertex")
        };
        visited[next] = true;
        order.push(next);
        for &y in g.neighbors(next) {
            if !visited[y] {
                labels[y].push(n - step);
            }
        }
    }
    Ok(order)
}

/// Each vertex points to its earliest neighbor in lexicographic
/// breadth-first order among those closer to `u`.
pub fn lexbfs_mooring(g: &Graph, u: Vertex) -> Result<Mooring> {
    g.require_connected()?;
    let order = lexbfs_order(g, u)?;
    let mut rank = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let row = g.distance_row(u);
    let father = g
        .vertices()
        .map(|v| {
            if v == u {
                return u;
            }
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| row[w] + 1 == row[v])
                .min_by_key(|&w| rank[w])
                .expect("connected graph has a closer neighbor")
        })
        .collect();
    Ok(Mooring { base: u, father })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CombingCheck {
    Holds,
    /// An edge whose fathers are distinct and nonadjacent.
    Violated {
        edge: (Vertex, Vertex),
    },
    /// The father map breaks the mooring invariants at this vertex.
    InvalidMooring {
        vertex: Vertex,
    },
}

impl CombingCheck {
    pub fn holds(self) -> bool {
        self == CombingCheck::Holds
    }
}

/// For every edge `xy`, the fathers of `x` and `y` coincide or are adjacent.
/// By induction the father paths of `x` and `y` then stay within distance
/// one at equal depth.
pub fn verify_combing(g: &Graph, m: &Mooring) -> CombingCheck {
    if let Some(v) = m.invalid_vertex(g) {
        return CombingCheck::InvalidMooring { vertex: v };
    }
    for (x, y) in g.edges() {
        let (fx, fy) = (m.father[x], m.father[y]);
        if fx != fy && !g.has_edge(fx, fy) {
            return CombingCheck::Violated { edge: (x, y) };
        }
    }
    CombingCheck::Holds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MooringMethod {
    Bfs,
    Lexbfs,
}

pub fn mooring(g: &Graph, u: Vertex, method: MooringMethod) -> Result<Mooring> {
    match method {
        MooringMethod::Bfs => bfs_mooring(g, u),
        MooringMethod::Lexbfs => lexbfs_mooring(g, u),
    }
}

/// Combing check from every basepoint, spread over worker threads.
pub fn combing_sweep(g: &Graph, method: MooringMethod) -> Result<Vec<CombingCheck>> {
    g.require_connected()?;
    let n = g.vertex_count();
    let workers = std::thread::available_parallelism()
        .map_or(1, |w| w.get())
        .min(n.max(1));
    let chunk = n.div_ceil(workers.max(1)).max(1);
    let mut out = vec![CombingCheck::Holds; n];
    std::thread::scope(|s| -> Result<()> {
        let handles: Vec<_> = out
            .chunks_mut(chunk)
            .enumerate()
            .map(|(k, slot)| {
                s.spawn(move || -> Result<()> {
                    for (i, r) in slot.iter_mut().enumerate() {
                        *r = verify_combing(g, &mooring(g, k * chunk + i, method)?);
                    }
                    Ok(())
                })
            })
            .collect();
        for h in handles {
            h.join()
                .map_err(|_| Error::Invariant("combing worker panicked".into()))??;
        }
        Ok(())
    })?;
    Ok(out)
}

/// Removes the smallest-id dominated vertex until one vertex is left.
/// Dominated: its closed neighborhood lies in that of another vertex.
pub fn dismantling_order(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let closed =
        |v: Vertex, w: Vertex, alive: &[bool]| g.neighbors(v).iter().all(|&x| !alive[x] || x == w || g.has_edge(x, w));
    for _ in 1..n {
        let v = (0..n).find(|&v| alive[v] && g.neighbors(v).iter().any(|&w| alive[w] && closed(v, w, &alive)))?;
        alive[v] = false;
        order.push(v);
    }
    order.extend((0..n).filter(|&v| alive[v]));
    Some(order)
}

pub fn is_dismantlable(g: &Graph) -> bool {
    dismantling_order(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn bfs_moorings() {
        let p4 = path(4).unwrap();
        assert_eq!(bfs_mooring(&p4, 0).unwrap().father, vec![0, 0, 1, 2]);
        let k4 = complete(4).unwrap();
        assert_eq!(bfs_mooring(&k4, 2).unwrap().father, vec![2, 2, 2, 2]);
        // K4 with a triangle glued on the edge 0-1
        let g = k4
            .disjoint_union(&Graph::empty(1))
            .with_edges([(0, 4), (1, 4)])
            .unwrap();
        for u in g.vertices() {
            assert!(verify_combing(&g, &bfs_mooring(&g, u).unwrap()).holds());
        }
    }

    #[test]
    fn lexbfs_moorings() {
        let w5 = wheel(5).unwrap();
        let hub = lexbfs_mooring(&w5, 0).unwrap();
        assert!(hub.father.iter().all(|&f| f == 0));
        for u in w5.vertices() {
            let m = lexbfs_mooring(&w5, u).unwrap();
            assert_eq!(m.invalid_vertex(&w5), None);
            assert!(verify_combing(&w5, &m).holds());
        }
        let c4 = cycle(4).unwrap();
        let m = lexbfs_mooring(&c4, 0).unwrap();
        assert_eq!(m.invalid_vertex(&c4), None);
        assert_eq!(lexbfs_order(&c4, 0).unwrap(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn lexbfs_prefers_earlier_neighbors() {
        // 0 - 1, 0 - 2, 1 - 3, 2 - 4, 2 - 3: after 0,1,2 vertex 3 (seen by 1) beats 4
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 4), (2, 3)]).unwrap();
        assert_eq!(lexbfs_order(&g, 0).unwrap(), vec![0, 1, 2, 3, 4]);
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 4), (2, 3)]).unwrap();
        assert_eq!(lexbfs_order(&g, 0).unwrap(), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn adversarial_father_map() {
        let c6 = cycle(6).unwrap();
        let m = Mooring {
            base: 0,
            father: vec![0, 0, 1, 2, 5, 0],
        };
        assert_eq!(verify_combing(&c6, &m), CombingCheck::Violated { edge: (3, 4) });
        let bad = Mooring {
            base: 0,
            father: vec![0, 0, 1, 1, 5, 0],
        };
        assert_eq!(verify_combing(&c6, &bad), CombingCheck::InvalidMooring { vertex: 3 });
    }

    #[test]
    fn sweep_matches_single_runs() {
        let g = grid(3, 3).unwrap();
        let sweep = combing_sweep(&g, MooringMethod::Lexbfs).unwrap();
        for u in g.vertices() {
            assert_eq!(sweep[u], verify_combing(&g, &lexbfs_mooring(&g, u).unwrap()));
        }
    }

    #[test]
    fn dismantling() {
        let tree = Graph::from_edges(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
        assert_eq!(dismantling_order(&tree).unwrap().len(), 6);
        assert!(dismantling_order(&cycle(5).unwrap()).is_none());
        let order = dismantling_order(&wheel(5).unwrap()).unwrap();
        assert_eq!(order[0], 1);
        assert!(!is_dismantlable(&cycle(4).unwrap()));
        assert!(is_dismantlable(&complete(1).unwrap()));
    }
}
