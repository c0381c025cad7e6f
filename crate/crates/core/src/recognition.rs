//! Membership tests for the weakly modular classes.
//!
//! Every predicate is weak modularity plus a list of forbidden induced
//! patterns. Disconnected inputs are evaluated per component; a graph is a
//! member iff every component is, and certificates use the original ids.
//! All graphs here are finite, so local finiteness holds trivially.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::conditions::{weak_modularity, ConditionWitness};
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::pattern::{find_induced, first_induced, is_induced_copy, PatternKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Bridged,
    WeaklyBridged,
    PreMedian,
    Bucolic,
    StronglyBucolic,
}

impl Class {
    pub const ALL: [Class; 5] = [
        Class::Bridged,
        Class::WeaklyBridged,
        Class::PreMedian,
        Class::Bucolic,
        Class::StronglyBucolic,
    ];

    /// Induced patterns excluded on top of weak modularity.
    pub fn forbidden(self) -> &'static [PatternKind] {
        match self {
            Class::Bridged => &[PatternKind::C4, PatternKind::C5],
            Class::WeaklyBridged => &[PatternKind::C4],
            Class::PreMedian => &[PatternKind::K23, PatternKind::WkMinus(4)],
            Class::Bucolic => &[PatternKind::K23, PatternKind::W4, PatternKind::WkMinus(4)],
            Class::StronglyBucolic => &[
                PatternKind::K23,
                PatternKind::W4,
                PatternKind::WkMinus(4),
                PatternKind::W5,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Class::Bridged => "bridged",
            Class::WeaklyBridged => "weakly-bridged",
            Class::PreMedian => "pre-median",
            Class::Bucolic => "bucolic",
            Class::StronglyBucolic => "strongly-bucolic",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Class {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// Why a graph is not in a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// A failed triangle or quadrangle condition.
    Condition(ConditionWitness),
    /// An induced forbidden pattern; position `i` is the image of reference
    /// vertex `i`.
    Pattern { kind: PatternKind, vertices: Vec<Vertex> },
}

impl Certificate {
    pub fn replays(&self, g: &Graph) -> bool {
        match self {
            Certificate::Condition(w) => !w.is_satisfied() && w.replays(g),
            Certificate::Pattern { kind, vertices } => kind.graph().is_ok_and(|p| is_induced_copy(g, p, vertices)),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Certificate::Condition(ConditionWitness::Violated {
                basepoint, vertices, ..
            }) => std::iter::once(*basepoint).chain(vertices.iter().copied()).collect(),
            Certificate::Condition(ConditionWitness::Satisfied) => Vec::new(),
            Certificate::Pattern { vertices, .. } => vertices.clone(),
        }
    }

    fn relabel(self, map: &[Vertex]) -> Self {
        match self {
            Certificate::Condition(ConditionWitness::Violated {
                condition,
                basepoint,
                vertices,
            }) => Certificate::Condition(ConditionWitness::Violated {
                condition,
                basepoint: map[basepoint],
                vertices: vertices.into_iter().map(|v| map[v]).collect(),
            }),
            Certificate::Condition(w) => Certificate::Condition(w),
            Certificate::Pattern { kind, vertices } => Certificate::Pattern {
                kind,
                vertices: vertices.into_iter().map(|v| map[v]).collect(),
            },
        }
    }
}

/// Answer of a single membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// Present exactly when `member` is false.
    pub certificate: Option<Certificate>,
}

impl Membership {
    fn yes() -> Self {
        Membership {
            member: true,
            certificate: None,
        }
    }

    fn no(c: Certificate) -> Self {
        Membership {
            member: false,
            certificate: Some(c),
        }
    }
}

/// Runs `f` on each component, relabeling certificates to `g`'s ids.
fn per_component<F>(g: &Graph, mut f: F) -> Result<Membership>
where
    F: FnMut(&Graph) -> Result<Membership>,
{
    let comps = g.components();
    if comps.len() <= 1 {
        return f(g);
    }
    for comp in comps {
        let h = g.induced_subgraph(&comp);
        let m = f(&h)?;
        if !m.member {
            return Ok(Membership::no(
                m.certificate
                    .expect("negative answers carry a certificate")
                    .relabel(&comp),
            ));
        }
    }
    Ok(Membership::yes())
}

fn check_connected(g: &Graph, class: Class) -> Result<Membership> {
    let wm = weak_modularity(g)?;
    if !wm.is_satisfied() {
        return Ok(Membership::no(Certificate::Condition(wm)));
    }
    for &kind in class.forbidden() {
        if let Some(vertices) = first_induced(g, kind)? {
            return Ok(Membership::no(Certificate::Pattern { kind, vertices }));
        }
    }
    Ok(Membership::yes())
}

pub fn membership(g: &Graph, class: Class) -> Result<Membership> {
    per_component(g, |h| check_connected(h, class))
}

pub fn is_bridged(g: &Graph) -> Result<Membership> {
    membership(g, Class::Bridged)
}

pub fn is_weakly_bridged(g: &Graph) -> Result<Membership> {
    membership(g, Class::WeaklyBridged)
}

pub fn is_premedian(g: &Graph) -> Result<Membership> {
    membership(g, Class::PreMedian)
}

pub fn is_bucolic(g: &Graph) -> Result<Membership> {
    membership(g, Class::Bucolic)
}

pub fn is_strongly_bucolic(g: &Graph) -> Result<Membership> {
    membership(g, Class::StronglyBucolic)
}

/// Cut vertices, in increasing order.
pub fn articulation_points(g: &Graph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    for root in g.vertices() {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if let Some(&w) = g.neighbors(v).get(top.2) {
                top.2 += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    g.vertices().filter(|&v| is_cut[v]).collect()
}

/// Connected, at least three vertices, and no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    g.vertex_count() >= 3 && g.is_connected() && articulation_points(g).is_empty()
}

/// All class answers for one graph, sharing the weak-modularity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub components: usize,
    pub weakly_modular: bool,
    pub flags: BTreeMap<Class, bool>,
    /// One certificate per false flag, or every occurrence in exhaustive
    /// mode.
    pub certificates: BTreeMap<Class, Vec<Certificate>>,
    pub timings: BTreeMap<Class, Duration>,
}

impl ClassReport {
    pub fn flag(&self, class: Class) -> bool {
        self.flags[&class]
    }
}

/// Evaluates every class. With `exhaustive`, negative answers list every
/// forbidden occurrence instead of the first one.
pub fn classify(g: &Graph, exhaustive: bool) -> Result<ClassReport> {
    let comps = g.components();
    let mut wm_failure = None;
    for comp in &comps {
        let h = g.induced_subgraph(comp);
        let w = weak_modularity(&h)?;
        if !w.is_satisfied() {
            wm_failure = Some(Certificate::Condition(w).relabel(comp));
            break;
        }
    }
    let mut occurrences: BTreeMap<PatternKind, (Vec<Vec<Vertex>>, Duration)> = BTreeMap::new();
    let mut report = ClassReport {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        components: comps.len(),
        weakly_modular: wm_failure.is_none(),
        flags: BTreeMap::new(),
        certificates: BTreeMap::new(),
        timings: BTreeMap::new(),
    };
    for class in Class::ALL {
        let start = Instant::now();
        let mut certs = Vec::new();
        if let Some(c) = &wm_failure {
            certs.push(c.clone());
        }
        if wm_failure.is_none() || exhaustive {
            for &kind in class.forbidden() {
                if !exhaustive && !certs.is_empty() {
                    break;
                }
                let entry = match occurrences.get(&kind) {
                    Some(e) => e.clone(),
                    None => {
                        let t = Instant::now();
                        let occ = if exhaustive {
                            find_induced(g, kind)?
                        } else {
                            first_induced(g, kind)?.into_iter().collect()
                        };
                        let e = (occ, t.elapsed());
                        occurrences.insert(kind, e.clone());
                        e
                    }
                };
                certs.extend(
                    entry
                        .0
                        .into_iter()
                        .map(|vertices| Certificate::Pattern { kind, vertices }),
                );
            }
        }
        report.flags.insert(class, certs.is_empty());
        if !certs.is_empty() {
            report.certificates.insert(class, certs);
        }
        report.timings.insert(class, start.elapsed());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn house() -> Graph {
        PatternKind::House.graph().unwrap().clone()
    }

    fn diamond() -> Graph {
        complete(4).unwrap().without_edge(0, 3)
    }

    #[test]
    fn bridged_examples() {
        assert!(is_bridged(&complete(4).unwrap()).unwrap().member);
        let w5 = is_bridged(&wheel(5).unwrap()).unwrap();
        assert!(!w5.member);
        assert!(matches!(
            w5.certificate,
            Some(Certificate::Pattern {
                kind: PatternKind::C5,
                ..
            })
        ));
        assert!(!is_bridged(&hypercube(3).unwrap()).unwrap().member);
    }

    #[test]
    fn weakly_bridged_examples() {
        assert!(is_weakly_bridged(&wheel(5).unwrap()).unwrap().member);
        assert!(!is_weakly_bridged(&cycle(4).unwrap()).unwrap().member);
        assert!(is_weakly_bridged(&diamond()).unwrap().member);
    }

    #[test]
    fn bucolic_examples() {
        assert!(is_bucolic(&hypercube(3).unwrap()).unwrap().member);
        let k23 = complete_bipartite(2, 3).unwrap();
        let m = is_bucolic(&k23).unwrap();
        assert!(!m.member && m.certificate.unwrap().replays(&k23));
        let h = house();
        let m = is_bucolic(&h).unwrap();
        assert!(matches!(m.certificate, Some(Certificate::Condition(_))));
        assert!(m.certificate.unwrap().replays(&h));
    }

    #[test]
    fn strongly_bucolic_and_premedian_examples() {
        assert!(is_strongly_bucolic(&hypercube(3).unwrap()).unwrap().member);
        assert!(!is_strongly_bucolic(&wheel(5).unwrap()).unwrap().member);
        assert!(is_strongly_bucolic(&hamming(&[3, 3]).unwrap()).unwrap().member);
        assert!(is_premedian(&wheel(4).unwrap()).unwrap().member);
        assert!(!is_premedian(&complete_bipartite(2, 3).unwrap()).unwrap().member);
        assert!(is_premedian(&hypercube(3).unwrap()).unwrap().member);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&hypercube(4).unwrap(), false).unwrap();
        assert!(r.flag(Class::Bucolic) && r.flag(Class::StronglyBucolic));
        assert!(!r.flag(Class::Bridged) && !r.flag(Class::WeaklyBridged));
        let r = classify(&hamming(&[3, 2]).unwrap(), false).unwrap();
        assert!(r.flag(Class::Bucolic));
        let w6 = wheel(6).unwrap();
        let r = classify(&w6, true).unwrap();
        for (class, certs) in &r.certificates {
            assert!(!r.flag(*class));
            assert!(certs.iter().all(|c| c.replays(&w6)));
        }
    }

    #[test]
    fn components_are_evaluated_separately() {
        let g = hypercube(3).unwrap().disjoint_union(&complete_bipartite(2, 3).unwrap());
        let m = is_bucolic(&g).unwrap();
        let cert = m.certificate.unwrap();
        assert!(cert.replays(&g));
        assert!(cert.vertices().iter().all(|&v| v >= 8));
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&cycle(5).unwrap()));
        assert!(!is_two_connected(&path(3).unwrap()));
        assert!(!is_two_connected(&complete(2).unwrap()));
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(articulation_points(&bowtie), vec![2]);
    }
}
