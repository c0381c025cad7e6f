//! The triangle and quadrangle conditions and weak modularity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Graph, Vertex, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// TC(u)
    Triangle,
    /// QC(u)
    Quadrangle,
}

/// Outcome of a condition check. A violation names the basepoint and the
/// configuration, `(v, w)` for TC and `(v, w, z)` for QC, that lacks the
/// required vertex `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionWitness {
    Satisfied,
    Violated {
        condition: Condition,
        basepoint: Vertex,
        vertices: Vec<Vertex>,
    },
}

impl ConditionWitness {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ConditionWitness::Satisfied)
    }

    /// Re-checks a violation against `g`: the premise must hold and no
    /// valid `x` may exist. Satisfied witnesses replay trivially.
    pub fn replays(&self, g: &Graph) -> bool {
        let ConditionWitness::Violated {
            condition,
            basepoint: u,
            vertices,
        } = self
        else {
            return true;
        };
        let n = g.vertex_count();
        if *u >= n || vertices.iter().any(|&x| x >= n) {
            return false;
        }
        let row = g.distance_row(*u);
        match (condition, vertices.as_slice()) {
            (Condition::Triangle, &[v, w]) => tc_premise(g, &row, v, w) && !has_lower_common_neighbor(g, &row, v, w),
            (Condition::Quadrangle, &[v, w, z]) => {
                qc_premise(g, &row, v, w, z) && !has_lower_common_neighbor(g, &row, v, w)
            }
            _ => false,
        }
    }
}

fn tc_premise(g: &Graph, row: &[u32], v: Vertex, w: Vertex) -> bool {
    g.has_edge(v, w) && row[v] == row[w] && row[v] >= 1 && row[v] != UNREACHABLE
}

fn qc_premise(g: &Graph, row: &[u32], v: Vertex, w: Vertex, z: Vertex) -> bool {
    v != w
        && !g.has_edge(v, w)
        && g.has_edge(v, z)
        && g.has_edge(w, z)
        && row[v] == row[w]
        && row[v] >= 2
        && row[v] != UNREACHABLE
        && row[z] == row[v] + 1
}

fn has_lower_common_neighbor(g: &Graph, row: &[u32], v: Vertex, w: Vertex) -> bool {
    let target = row[v].wrapping_sub(1);
    g.common_neighbors(v, w).into_iter().any(|x| row[x] == target)
}

/// TC(u). Edges are scanned in lexicographic order; the first failing edge
/// is reported.
pub fn triangle_condition_at(g: &Graph, u: Vertex) -> Result<ConditionWitness> {
    g.check_vertex(u)?;
    let row = g.distance_row(u);
    for (v, w) in g.edges() {
        if tc_premise(g, &row, v, w) && !has_lower_common_neighbor(g, &row, v, w) {
            return Ok(ConditionWitness::Violated {
                condition: Condition::Triangle,
                basepoint: u,
                vertices: vec![v, w],
            });
        }
    }
    Ok(ConditionWitness::Satisfied)
}

/// QC(u). Scans `z` in id order and pairs `v < w` of its neighbors one level
/// closer to `u`; each pair is tested once.
pub fn quadrangle_condition_at(g: &Graph, u: Vertex) -> Result<ConditionWitness> {
    g.check_vertex(u)?;
    let row = g.distance_row(u);
    let mut tested: HashMap<(Vertex, Vertex), bool> = HashMap::new();
    for z in g.vertices() {
        let dz = row[z];
        if dz == UNREACHABLE || dz < 3 {
            continue;
        }
        let lower: Vec<Vertex> = g.neighbors(z).iter().copied().filter(|&y| row[y] + 1 == dz).collect();
        for (i, &v) in lower.iter().enumerate() {
            for &w in &lower[i + 1..] {
                if g.has_edge(v, w) {
                    continue;
                }
                let ok = *tested
                    .entry((v, w))
                    .or_insert_with(|| has_lower_common_neighbor(g, &row, v, w));
                if !ok {
                    return Ok(ConditionWitness::Violated {
                        condition: Condition::Quadrangle,
                        basepoint: u,
                        vertices: vec![v, w, z],
                    });
                }
            }
        }
    }
    Ok(ConditionWitness::Satisfied)
}

/// TC(u) and QC(u).
pub fn weakly_modular_at(g: &Graph, u: Vertex) -> Result<ConditionWitness> {
    let tc = triangle_condition_at(g, u)?;
    if !tc.is_satisfied() {
        return Ok(tc);
    }
    quadrangle_condition_at(g, u)
}

/// Weak modularity of a connected graph; the first failing basepoint (in id
/// order, TC before QC) is reported.
pub fn weak_modularity(g: &Graph) -> Result<ConditionWitness> {
    g.require_connected()?;
    for u in g.vertices() {
        let w = weakly_modular_at(g, u)?;
        if !w.is_satisfied() {
            return Ok(w);
        }
    }
    Ok(ConditionWitness::Satisfied)
}

pub fn is_weakly_modular(g: &Graph) -> Result<bool> {
    Ok(weak_modularity(g)?.is_satisfied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn house() -> Graph {
        // square w x y z (0 1 2 3), roof t = 4 on x y
        Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn triangle_condition_examples() {
        let c5 = cycle(5).unwrap();
        for u in 0..5 {
            let w = triangle_condition_at(&c5, u).unwrap();
            let ConditionWitness::Violated { vertices, .. } = &w else {
                panic!("C5 satisfies TC({u})");
            };
            let opposite = [(u + 2) % 5, (u + 3) % 5];
            assert!(vertices.iter().all(|x| opposite.contains(x)));
            assert!(w.replays(&c5));
        }
        let k4 = complete(4).unwrap();
        assert!((0..4).all(|u| triangle_condition_at(&k4, u).unwrap().is_satisfied()));
        let w = triangle_condition_at(&house(), 4).unwrap();
        assert_eq!(
            w,
            ConditionWitness::Violated {
                condition: Condition::Triangle,
                basepoint: 4,
                vertices: vec![0, 3]
            }
        );
    }

    #[test]
    fn quadrangle_condition_examples() {
        let c4 = cycle(4).unwrap();
        assert!(quadrangle_condition_at(&c4, 0).unwrap().is_satisfied());
        let c6 = cycle(6).unwrap();
        let w = quadrangle_condition_at(&c6, 0).unwrap();
        assert_eq!(
            w,
            ConditionWitness::Violated {
                condition: Condition::Quadrangle,
                basepoint: 0,
                vertices: vec![2, 4, 3]
            }
        );
        assert!(w.replays(&c6));
        let tree = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert!((0..6).all(|u| quadrangle_condition_at(&tree, u).unwrap().is_satisfied()));
    }

    #[test]
    fn weak_modularity_examples() {
        assert!(is_weakly_modular(&cycle(4).unwrap()).unwrap());
        assert!(!is_weakly_modular(&cycle(5).unwrap()).unwrap());
        assert!(is_weakly_modular(&hypercube(3).unwrap()).unwrap());
        assert!(is_weakly_modular(&wheel(5).unwrap()).unwrap());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(weak_modularity(&split).is_err());
    }

    #[test]
    fn forged_witness_does_not_replay() {
        let c4 = cycle(4).unwrap();
        let forged = ConditionWitness::Violated {
            condition: Condition::Quadrangle,
            basepoint: 0,
            vertices: vec![1, 3, 2],
        };
        assert!(!forged.replays(&c4));
    }
}
