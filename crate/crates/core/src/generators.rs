//! Canonical labeled instances of the standard graph families.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn out_of_range(name: &'static str, value: usize, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value: value.to_string(),
        reason,
    }
}

/// The cycle `C_k` on `0..k`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(out_of_range("k", k, "cycles need at least 3 vertices"));
    }
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// The path on `k` vertices `0 - 1 - ... - (k-1)`.
pub fn path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(out_of_range("k", k, "paths need at least 1 vertex"));
    }
    Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))
}

/// The complete graph `K_k`.
pub fn complete(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(out_of_range("k", k, "complete graphs need at least 1 vertex"));
    }
    Graph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
}

/// The wheel `W_k`: hub `0` joined to every vertex of the rim cycle `1..=k`.
pub fn wheel(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(out_of_range("k", k, "wheels need a rim of at least 3 vertices"));
    }
    let rim = (1..=k).map(|i| (i, if i == k { 1 } else { i + 1 }));
    Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)).chain(rim))
}

/// The almost wheel `W_k^-`: the wheel `W_k` without the spoke `0 - k`.
pub fn almost_wheel(k: usize) -> Result<Graph> {
    if k < 4 {
        return Err(out_of_range("k", k, "almost wheels need a rim of at least 4 vertices"));
    }
    Ok(wheel(k)?.without_edge(0, k))
}

/// The hypercube `Q_k` on bit strings; `u ~ v` iff they differ in one bit.
pub fn hypercube(k: usize) -> Result<Graph> {
    if k > 20 {
        return Err(out_of_range("k", k, "hypercube dimension is capped at 20"));
    }
    let n = 1usize << k;
    Graph::from_edges(
        n,
        (0..n)
            .flat_map(|v| (0..k).map(move |b| (v, v ^ (1 << b))))
            .filter(|&(u, v)| u < v),
    )
}

/// The Hamming graph `K_{s1} x ... x K_{sm}` (Cartesian product of cliques).
/// The empty list gives a single vertex.
pub fn hamming(sizes: &[usize]) -> Result<Graph> {
    let mut g = complete(1)?;
    for &s in sizes {
        if s == 0 {
            return Err(out_of_range("size", s, "clique factors need at least 1 vertex"));
        }
        g = g.cartesian_product(&complete(s)?);
    }
    Ok(g.with_numeric_labels())
}

/// The complete bipartite graph `K_{m,n}`: sides `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(out_of_range("m,n", m.min(n), "both sides must be nonempty"));
    }
    Graph::from_edges(m + n, (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))))
}

/// The grid `P_m x P_n`; vertex `(i, j)` is `i * n + j`.
pub fn grid(m: usize, n: usize) -> Result<Graph> {
    Ok(path(m)?.cartesian_product(&path(n)?).with_numeric_labels())
}

/// The torus `C_m x C_n`; vertex `(i, j)` is `i * n + j`.
pub fn torus(m: usize, n: usize) -> Result<Graph> {
    Ok(cycle(m)?.cartesian_product(&cycle(n)?).with_numeric_labels())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let w4 = wheel(4).unwrap();
        assert_eq!((w4.vertex_count(), w4.edge_count()), (5, 8));
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count()), (8, 12));
        let aw4 = almost_wheel(4).unwrap();
        assert_eq!((aw4.vertex_count(), aw4.edge_count()), (5, 7));
        assert_eq!(wheel(5).unwrap().vertex_count(), 6);
        let prism = hamming(&[3, 2]).unwrap();
        assert_eq!((prism.vertex_count(), prism.edge_count()), (6, 9));
        assert_eq!(hypercube(4).unwrap().edge_count(), 32);
        assert_eq!(hamming(&[]).unwrap().vertex_count(), 1);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(cycle(2).is_err());
        assert!(wheel(2).is_err());
        assert!(almost_wheel(3).is_err());
        assert!(path(0).is_err());
        assert!(complete(0).is_err());
        assert!(hamming(&[2, 0]).is_err());
        assert!(hypercube(21).is_err());
    }

    #[test]
    fn generators_are_connected_ordered() {
        let graphs = [
            cycle(7).unwrap(),
            wheel(6).unwrap(),
            almost_wheel(5).unwrap(),
            hypercube(4).unwrap(),
            hamming(&[3, 3]).unwrap(),
            grid(3, 4).unwrap(),
            torus(5, 5).unwrap(),
        ];
        for g in &graphs {
            for v in 1..g.vertex_count() {
                assert!(g.neighbors(v).iter().any(|&u| u < v), "{g:?} at {v}");
            }
        }
    }
}
