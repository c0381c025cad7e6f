//! Independent oracles. Nothing here calls the library's algorithms; they
//! work from adjacency alone.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use bucolic::Graph;

pub const INF: usize = usize::MAX / 4;

/// All-pairs distances by Floyd–Warshall.
pub fn apsp(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Triangle and quadrangle conditions over every configuration.
pub fn naive_weakly_modular(g: &Graph) -> bool {
    let n = g.vertex_count();
    let d = apsp(g);
    let adj = |a: usize, b: usize| g.has_edge(a, b);
    let lower = |u: usize, v: usize, w: usize, k: usize| (0..n).any(|x| adj(x, v) && adj(x, w) && d[u][x] + 1 == k);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if v == w || d[u][v] != d[u][w] || d[u][v] == 0 || d[u][v] >= INF {
                    continue;
                }
                let k = d[u][v];
                if adj(v, w) && !lower(u, v, w, k) {
                    return false;
                }
                if !adj(v, w) {
                    let has_z = (0..n).any(|z| adj(z, v) && adj(z, w) && d[u][z] == k + 1);
                    if has_z && !lower(u, v, w, k) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether `pattern` occurs as an induced subgraph, by trying every vertex
/// subset and every bijection.
pub fn naive_has_induced(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.vertex_count();
    if k > g.vertex_count() {
        return false;
    }
    let perms = permutations(k);
    subsets(g.vertex_count(), k).into_iter().any(|set| {
        perms
            .iter()
            .any(|p| (0..k).all(|i| (i + 1..k).all(|j| pattern.has_edge(i, j) == g.has_edge(set[p[i]], set[p[j]]))))
    })
}

/// Number of vertex sets inducing a copy of `pattern`.
pub fn naive_induced_count(g: &Graph, pattern: &Graph) -> usize {
    let k = pattern.vertex_count();
    if k > g.vertex_count() {
        return 0;
    }
    let perms = permutations(k);
    subsets(g.vertex_count(), k)
        .into_iter()
        .map(|set| {
            usize::from(perms.iter().any(|p| {
                (0..k).all(|i| (i + 1..k).all(|j| pattern.has_edge(i, j) == g.has_edge(set[p[i]], set[p[j]])))
            }))
        })
        .sum()
}

/// Hand-built reference graphs.
pub fn k23() -> Graph {
    Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
}

pub fn c(k: usize) -> Graph {
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
}

/// Rim `0..k`, hub `k`.
pub fn w(k: usize) -> Graph {
    Graph::from_edges(k + 1, (0..k).flat_map(|i| [(i, (i + 1) % k), (i, k)])).unwrap()
}

/// `w(k)` minus the spoke at rim vertex 0.
pub fn w_minus(k: usize) -> Graph {
    w(k).without_edge(0, k)
}

/// Weakly modular and free of induced `K23`, `W4` and `W4^-`.
pub fn naive_bucolic(g: &Graph) -> bool {
    naive_weakly_modular(g) && [k23(), w(4), w_minus(4)].iter().all(|p| !naive_has_induced(g, p))
}

/// Weakly modular, no induced `C4`.
pub fn naive_weakly_bridged(g: &Graph) -> bool {
    naive_weakly_modular(g) && !naive_has_induced(g, &c(4))
}

/// Closure of `s` under intervals, computed from the distance matrix.
pub fn naive_convex_hull(g: &Graph, s: &BTreeSet<usize>) -> BTreeSet<usize> {
    let d = apsp(g);
    let mut hull = s.clone();
    loop {
        let members: Vec<usize> = hull.iter().copied().collect();
        let mut grown = hull.clone();
        for &a in &members {
            for &b in &members {
                for x in 0..g.vertex_count() {
                    if d[a][x] + d[x][b] == d[a][b] {
                        grown.insert(x);
                    }
                }
            }
        }
        if grown.len() == hull.len() {
            return hull;
        }
        hull = grown;
    }
}

/// Every vertex outside `s` has a member of `s` on a shortest path to all
/// of `s`.
pub fn naive_gated(g: &Graph, s: &BTreeSet<usize>) -> bool {
    let d = apsp(g);
    (0..g.vertex_count())
        .filter(|x| !s.contains(x))
        .all(|x| s.iter().any(|&y| s.iter().all(|&z| d[x][y] + d[y][z] == d[x][z])))
}

/// At least three vertices and no cut vertex, by deletion and search.
pub fn naive_two_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    (0..n).all(|cut| {
        let start = (0..n).find(|&v| v != cut).unwrap();
        let mut seen = vec![false; n];
        seen[cut] = true;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}
