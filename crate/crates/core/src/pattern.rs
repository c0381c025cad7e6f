//! Induced-subgraph search for the small forbidden and structural patterns.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{almost_wheel, complete, complete_bipartite, cycle, hypercube, wheel};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    K23,
    C4,
    C5,
    W4,
    W5,
    /// The almost wheel `W_k^-`, `4 <= k <= 8`.
    WkMinus(usize),
    /// `W5` plus a vertex adjacent to two consecutive rim vertices.
    ExtendedW5,
    House,
    TwinHouse,
    DoubleHouse,
    Cogwheel3,
    TriangularPrism,
    DoublePrism,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::K23 => f.write_str("K23"),
            PatternKind::C4 => f.write_str("C4"),
            PatternKind::C5 => f.write_str("C5"),
            PatternKind::W4 => f.write_str("W4"),
            PatternKind::W5 => f.write_str("W5"),
            PatternKind::WkMinus(k) => write!(f, "W{k}-"),
            PatternKind::ExtendedW5 => f.write_str("extended W5"),
            PatternKind::House => f.write_str("house"),
            PatternKind::TwinHouse => f.write_str("twin-house"),
            PatternKind::DoubleHouse => f.write_str("double-house"),
            PatternKind::Cogwheel3 => f.write_str("cogwheel CW3"),
            PatternKind::TriangularPrism => f.write_str("triangular prism"),
            PatternKind::DoublePrism => f.write_str("double prism"),
        }
    }
}

impl PatternKind {
    pub const FIXED: [PatternKind; 12] = [
        PatternKind::K23,
        PatternKind::C4,
        PatternKind::C5,
        PatternKind::W4,
        PatternKind::W5,
        PatternKind::ExtendedW5,
        PatternKind::House,
        PatternKind::TwinHouse,
        PatternKind::DoubleHouse,
        PatternKind::Cogwheel3,
        PatternKind::TriangularPrism,
        PatternKind::DoublePrism,
    ];

    /// The reference graph of the pattern, built once.
    pub fn graph(self) -> Result<&'static Graph> {
        static REFS: OnceLock<HashMap<PatternKind, Graph>> = OnceLock::new();
        let refs = REFS.get_or_init(|| {
            let mut m: HashMap<_, _> = PatternKind::FIXED
                .iter()
                .map(|&k| (k, build_reference(k).expect("reference pattern")))
                .collect();
            for k in 4..=8 {
                m.insert(PatternKind::WkMinus(k), almost_wheel(k).expect("almost wheel"));
            }
            m
        });
        refs.get(&self).ok_or_else(|| Error::InvalidParameter {
            name: "pattern",
            value: self.to_string(),
            reason: "almost wheels are supported for 4 <= k <= 8",
        })
    }
}

fn build_reference(kind: PatternKind) -> Result<Graph> {
    match kind {
        PatternKind::K23 => complete_bipartite(2, 3),
        PatternKind::C4 => cycle(4),
        PatternKind::C5 => cycle(5),
        PatternKind::W4 => wheel(4),
        PatternKind::W5 => wheel(5),
        PatternKind::WkMinus(k) => almost_wheel(k),
        // hub 0, rim 1..=5, extra vertex 6 on rim edge 1 2
        PatternKind::ExtendedW5 => {
            let mut edges: Vec<_> = wheel(5)?.edges().collect();
            edges.extend([(1, 6), (2, 6)]);
            Graph::from_edges(7, edges)
        }
        // square 0 1 2 3, roof 4 on edge 1 2
        PatternKind::House => Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (2, 4)]),
        // u v w x1 x2 y1 y2 = 0..7
        PatternKind::TwinHouse => Graph::from_edges(
            7,
            [
                (0, 1),
                (1, 4),
                (4, 3),
                (3, 0),
                (1, 6),
                (6, 5),
                (5, 0),
                (1, 2),
                (2, 4),
                (2, 6),
            ],
        ),
        // x y u v w z = 0..6
        PatternKind::DoubleHouse => {
            Graph::from_edges(6, [(2, 3), (3, 4), (2, 4), (0, 1), (1, 3), (2, 0), (4, 5), (5, 0)])
        }
        PatternKind::Cogwheel3 => {
            let q3 = hypercube(3)?;
            Ok(q3.induced_subgraph(&(0..7).collect::<Vec<_>>()).with_numeric_labels())
        }
        PatternKind::TriangularPrism => Ok(complete(3)?.cartesian_product(&complete(2)?).with_numeric_labels()),
        PatternKind::DoublePrism => {
            let diamond = complete(4)?.without_edge(0, 3);
            Ok(diamond.cartesian_product(&complete(2)?).with_numeric_labels())
        }
    }
}

/// All induced occurrences of `kind` in `g`, one tuple per vertex set.
/// Tuple position `i` holds the image of reference vertex `i`.
pub fn find_induced(g: &Graph, kind: PatternKind) -> Result<Vec<Vec<Vertex>>> {
    PatternSearch::new(g, kind.graph()?).run()
}

/// The first induced occurrence of `kind` in `g`, if any.
pub fn first_induced(g: &Graph, kind: PatternKind) -> Result<Option<Vec<Vertex>>> {
    Ok(PatternSearch::new(g, kind.graph()?)
        .first_only()
        .run()?
        .into_iter()
        .next())
}

/// Whether `tuple` is an induced copy of `pattern` in `g` under the
/// position-wise correspondence.
pub fn is_induced_copy(g: &Graph, pattern: &Graph, tuple: &[Vertex]) -> bool {
    let k = pattern.vertex_count();
    if tuple.len() != k || tuple.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let distinct: BTreeSet<_> = tuple.iter().collect();
    if distinct.len() != k {
        return false;
    }
    (0..k).all(|i| (i + 1..k).all(|j| pattern.has_edge(i, j) == g.has_edge(tuple[i], tuple[j])))
}

/// Backtracking search for induced embeddings of a pattern graph.
pub struct PatternSearch<'a> {
    g: &'a Graph,
    pattern: &'a Graph,
    fixed: Vec<Option<Vertex>>,
    within: Option<Vec<bool>>,
    first_only: bool,
    node_budget: Option<usize>,
}

impl<'a> PatternSearch<'a> {
    pub fn new(g: &'a Graph, pattern: &'a Graph) -> Self {
        PatternSearch {
            g,
            pattern,
            fixed: vec![None; pattern.vertex_count()],
            within: None,
            first_only: false,
            node_budget: None,
        }
    }

    /// Forces pattern vertex `p` onto `v`.
    pub fn fix(mut self, p: Vertex, v: Vertex) -> Self {
        self.fixed[p] = Some(v);
        self
    }

    /// Restricts images to `set`.
    pub fn within(mut self, set: &BTreeSet<Vertex>) -> Self {
        let mut mask = vec![false; self.g.vertex_count()];
        for &v in set {
            mask[v] = true;
        }
        self.within = Some(mask);
        self
    }

    pub fn first_only(mut self) -> Self {
        self.first_only = true;
        self
    }

    /// Caps the number of partial maps explored.
    pub fn node_budget(mut self, budget: usize) -> Self {
        self.node_budget = Some(budget);
        self
    }

    /// Runs the search. Results are deduplicated by vertex set, keeping the
    /// lexicographically least tuple, and sorted.
    pub fn run(&self) -> Result<Vec<Vec<Vertex>>> {
        let k = self.pattern.vertex_count();
        if k == 0 || k > self.g.vertex_count() {
            return Ok(Vec::new());
        }
        if self.fixed.iter().flatten().any(|&v| v >= self.g.vertex_count()) {
            return Ok(Vec::new());
        }
        let order = search_order(self.pattern, &self.fixed);
        let mut st = SearchState {
            map: vec![usize::MAX; k],
            used: vec![false; self.g.vertex_count()],
            found: HashMap::new(),
            nodes: 0,
        };
        self.extend(&order, 0, &mut st)?;
        let mut out: Vec<Vec<Vertex>> = st.found.into_values().collect();
        out.sort();
        Ok(out)
    }

    fn allowed(&self, v: Vertex) -> bool {
        self.within.as_ref().is_none_or(|m| m[v])
    }

    fn extend(&self, order: &[Vertex], depth: usize, st: &mut SearchState) -> Result<bool> {
        if depth == order.len() {
            let mut key = st.map.clone();
            key.sort_unstable();
            let tuple = st.map.clone();
            st.found
                .entry(key)
                .and_modify(|t| {
                    if tuple < *t {
                        *t = tuple.clone();
                    }
                })
                .or_insert(tuple);
            return Ok(self.first_only);
        }
        st.nodes += 1;
        if let Some(budget) = self.node_budget {
            if st.nodes > budget {
                return Err(Error::BudgetExceeded {
                    what: "pattern search nodes",
                    budget,
                    reached: st.nodes,
                });
            }
        }
        let p = order[depth];
        let anchor = self
            .pattern
            .neighbors(p)
            .iter()
            .copied()
            .find(|&q| st.map[q] != usize::MAX);
        let candidates: Vec<Vertex> = match (self.fixed[p], anchor) {
            (Some(v), _) => vec![v],
            (None, Some(q)) => self.g.neighbors(st.map[q]).to_vec(),
            (None, None) => self.g.vertices().collect(),
        };
        let need = self.pattern.degree(p);
        for v in candidates {
            if st.used[v] || !self.allowed(v) || self.g.degree(v) < need {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&q| self.pattern.has_edge(p, q) == self.g.has_edge(v, st.map[q]));
            if !consistent {
                continue;
            }
            st.map[p] = v;
            st.used[v] = true;
            let stop = self.extend(order, depth + 1, st)?;
            st.used[v] = false;
            st.map[p] = usize::MAX;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

struct SearchState {
    map: Vec<Vertex>,
    used: Vec<bool>,
    found: HashMap<Vec<Vertex>, Vec<Vertex>>,
    nodes: usize,
}

/// Fixed vertices first, then a connected order grown greedily by the
/// number of already placed neighbors.
fn search_order(pattern: &Graph, fixed: &[Option<Vertex>]) -> Vec<Vertex> {
    let k = pattern.vertex_count();
    let mut placed = vec![false; k];
    let mut order: Vec<Vertex> = (0..k).filter(|&p| fixed[p].is_some()).collect();
    for &p in &order {
        placed[p] = true;
    }
    while order.len() < k {
        let next = (0..k)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = pattern.neighbors(p).iter().filter(|&&q| placed[q]).count();
                (links, pattern.degree(p), std::cmp::Reverse(p))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn reference_sizes() {
        let sizes = [
            (PatternKind::K23, 5, 6),
            (PatternKind::W4, 5, 8),
            (PatternKind::WkMinus(4), 5, 7),
            (PatternKind::ExtendedW5, 7, 12),
            (PatternKind::House, 5, 6),
            (PatternKind::TwinHouse, 7, 10),
            (PatternKind::DoubleHouse, 6, 8),
            (PatternKind::Cogwheel3, 7, 9),
            (PatternKind::TriangularPrism, 6, 9),
            (PatternKind::DoublePrism, 8, 14),
        ];
        for (kind, n, m) in sizes {
            let g = kind.graph().unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m), "{kind}");
            assert!(g.vertex_count() <= 9);
        }
        assert!(PatternKind::WkMinus(9).graph().is_err());
    }

    #[test]
    fn examples() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let occ = find_induced(&k23, PatternKind::K23).unwrap();
        assert_eq!(occ.len(), 1);
        let mut set = occ[0].clone();
        set.sort();
        assert_eq!(set, vec![0, 1, 2, 3, 4]);
        assert!(find_induced(&hypercube(3).unwrap(), PatternKind::W4)
            .unwrap()
            .is_empty());
        let w5 = wheel(5).unwrap();
        let rims = find_induced(&w5, PatternKind::C5).unwrap();
        assert_eq!(rims.len(), 1);
        let mut rim = rims[0].clone();
        rim.sort();
        assert_eq!(rim, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn occurrences_are_induced_copies() {
        let q3 = hypercube(3).unwrap();
        let squares = find_induced(&q3, PatternKind::C4).unwrap();
        assert_eq!(squares.len(), 6);
        for s in &squares {
            assert!(is_induced_copy(&q3, PatternKind::C4.graph().unwrap(), s));
        }
        assert_eq!(find_induced(&q3, PatternKind::Cogwheel3).unwrap().len(), 8);
        let prism = hamming(&[3, 2]).unwrap();
        assert_eq!(find_induced(&prism, PatternKind::TriangularPrism).unwrap().len(), 1);
        assert_eq!(find_induced(&prism, PatternKind::House).unwrap().len(), 6);
    }

    #[test]
    fn fixed_and_restricted_search() {
        let q3 = hypercube(3).unwrap();
        let c4 = PatternKind::C4.graph().unwrap();
        let at0 = PatternSearch::new(&q3, c4).fix(0, 0).run().unwrap();
        assert_eq!(at0.len(), 3);
        let bottom: BTreeSet<_> = [0, 1, 2, 3].into();
        assert_eq!(PatternSearch::new(&q3, c4).within(&bottom).run().unwrap().len(), 1);
        assert!(PatternSearch::new(&q3, c4).node_budget(2).run().is_err());
    }
}
