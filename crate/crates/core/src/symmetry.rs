//! Finite groups of automorphisms, orbit hulls, invariant boxes and
//! invariant prisms.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::decompose::{cartesian_factorization, peripheral_subgraphs, DEFAULT_SEPARATOR_BOUND};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::hulls::{convex_hull, VertexSet};
use crate::iso::automorphism_list;
use crate::recognition::is_bucolic;

pub const DEFAULT_GROUP_CAP: usize = 100_000;

pub type Permutation = Vec<Vertex>;

/// A finite group of automorphisms of a graph, stored element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    graph: Graph,
    elements: Vec<Permutation>,
}

fn compose(p: &[Vertex], q: &[Vertex]) -> Permutation {
    q.iter().map(|&v| p[v]).collect()
}

fn check_automorphism(g: &Graph, p: &[Vertex], index: usize) -> Result<()> {
    let n = g.vertex_count();
    if p.len() != n {
        return Err(Error::InvalidPermutation {
            index,
            reason: format!("has {} entries for {n} vertices", p.len()),
        });
    }
    let mut seen = vec![false; n];
    for &v in p {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidPermutation {
                index,
                reason: format!("is not a permutation of 0..{n}"),
            });
        }
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !g.has_edge(p[u], p[v])) {
        return Err(Error::InvalidPermutation {
            index,
            reason: format!(
                "maps edge {}-{} to non-edge {}-{}",
                g.label(u),
                g.label(v),
                g.label(p[u]),
                g.label(p[v])
            ),
        });
    }
    Ok(())
}

impl GroupAction {
    /// The group generated by `generators`; each must be an automorphism.
    pub fn generated_by(g: &Graph, generators: &[Permutation], cap: usize) -> Result<Self> {
        for (i, p) in generators.iter().enumerate() {
            check_automorphism(g, p, i)?;
        }
        let identity: Permutation = g.vertices().collect();
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for s in generators {
                let next = compose(s, &elements[i]);
                if seen.insert(next.clone()) {
                    elements.push(next);
                    if elements.len() > cap {
                        return Err(Error::BudgetExceeded {
                            what: "group elements",
                            budget: cap,
                            reached: elements.len(),
                        });
                    }
                }
            }
            i += 1;
        }
        elements.sort();
        Ok(GroupAction {
            graph: g.clone(),
            elements,
        })
    }

    /// The trivial group.
    pub fn trivial(g: &Graph) -> Self {
        GroupAction {
            graph: g.clone(),
            elements: vec![g.vertices().collect()],
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Identity present, closed under composition and inverses, and every
    /// element an automorphism.
    pub fn verify(&self) -> Result<()> {
        for (i, p) in self.elements.iter().enumerate() {
            check_automorphism(&self.graph, p, i)?;
        }
        let set: HashSet<&Permutation> = self.elements.iter().collect();
        let identity: Permutation = self.graph.vertices().collect();
        if !set.contains(&identity) {
            return Err(Error::Invariant("group lacks the identity".into()));
        }
        for p in &self.elements {
            for q in &self.elements {
                if !set.contains(&compose(p, q)) {
                    return Err(Error::Invariant("group is not closed under composition".into()));
                }
            }
        }
        Ok(())
    }

    pub fn orbit(&self, v: Vertex) -> VertexSet {
        self.elements.iter().map(|p| p[v]).collect()
    }

    /// Orbits ordered by least element.
    pub fn orbits(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            if !seen[v] {
                let o = self.orbit(v);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_invariant(&self, set: &VertexSet) -> bool {
        self.elements.iter().all(|p| set.iter().all(|&v| set.contains(&p[v])))
    }

    /// The action on an invariant vertex set, relabeled to the ids of the
    /// induced subgraph on `set` in increasing order.
    pub fn restrict(&self, set: &VertexSet) -> Result<GroupAction> {
        if !self.is_invariant(set) {
            return Err(Error::Precondition("restriction to a set that is not invariant".into()));
        }
        let members: Vec<Vertex> = set.iter().copied().collect();
        let local = |v: Vertex| members.binary_search(&v).expect("invariant set");
        let mut elements: Vec<Permutation> = self
            .elements
            .iter()
            .map(|p| members.iter().map(|&v| local(p[v])).collect())
            .collect();
        elements.sort();
        elements.dedup();
        Ok(GroupAction {
            graph: self.graph.induced_subgraph(&members),
            elements,
        })
    }
}

/// The full automorphism group.
pub fn automorphisms(g: &Graph, cap: usize) -> Result<GroupAction> {
    Ok(GroupAction {
        graph: g.clone(),
        elements: automorphism_list(g, cap)?,
    })
}

fn require_bucolic(g: &Graph) -> Result<()> {
    let m = is_bucolic(g)?;
    if m.member {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "graph is not bucolic: {:?}",
            m.certificate.map(|c| c.vertices()).unwrap_or_default()
        )))
    }
}

/// Convex hull of the orbit of `v`.
pub fn invariant_bucolic_subgraph(f: &GroupAction, v: Vertex) -> Result<VertexSet> {
    let g = f.graph();
    g.check_vertex(v)?;
    require_bucolic(g)?;
    orbit_hull(f, v)
}

fn orbit_hull(f: &GroupAction, v: Vertex) -> Result<VertexSet> {
    let hull = convex_hull(f.graph(), &f.orbit(v))?.vertices;
    if !f.is_invariant(&hull) {
        return Err(Error::Invariant("orbit hull is not invariant".into()));
    }
    Ok(hull)
}

/// Sum of distances from the set to every vertex, for tie-breaking.
fn remoteness(g: &Graph, set: &VertexSet) -> u64 {
    set.iter()
        .map(|&v| g.distance_row(v).iter().map(|&d| u64::from(d)).sum::<u64>())
        .sum()
}

/// The smallest orbit hull; ties go to the most central one, then the
/// lexicographically least.
pub fn minimal_invariant_subgraph(f: &GroupAction) -> Result<VertexSet> {
    let g = f.graph();
    require_bucolic(g)?;
    let mut best: Option<(usize, u64, VertexSet)> = None;
    for orbit in f.orbits() {
        let v = *orbit.first().expect("nonempty orbit");
        let hull = orbit_hull(f, v)?;
        let key = (hull.len(), remoteness(g, &hull), hull);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.map(|b| b.2)
        .ok_or_else(|| Error::Precondition("empty graph".into()))
}

/// Strips all peripheral subgraphs until a box remains.
pub fn invariant_box(f: &GroupAction) -> Result<VertexSet> {
    let g = f.graph();
    require_bucolic(g)?;
    let mut current: VertexSet = g.vertices().collect();
    loop {
        let members: Vec<Vertex> = current.iter().copied().collect();
        let sub = g.induced_subgraph(&members);
        let peripherals = peripheral_subgraphs(&sub, DEFAULT_SEPARATOR_BOUND)?;
        if peripherals.is_empty() {
            break;
        }
        let strip: VertexSet = peripherals
            .iter()
            .flat_map(|p| p.vertices.iter().map(|&v| members[v]))
            .collect();
        current = current.difference(&strip).copied().collect();
        if current.is_empty() {
            return Err(Error::Invariant(
                "stripping peripheral subgraphs emptied the graph".into(),
            ));
        }
    }
    if !f.is_invariant(&current) {
        return Err(Error::Invariant("box is not invariant".into()));
    }
    Ok(current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrismMethod {
    OrbitDismantling,
    /// Orbit dismantling stalled; the smallest brute-force prism was used.
    BruteForceFallback,
    BruteForce,
}

/// An invariant induced Hamming subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismWitness {
    /// Cliques through the least prism vertex, one per factor.
    pub factors: Vec<VertexSet>,
    pub vertices: VertexSet,
    /// Number of group elements checked to map the prism onto itself.
    pub elements_checked: usize,
    pub method: PrismMethod,
}

impl PrismWitness {
    fn from_vertices(g: &Graph, vertices: VertexSet, f: &GroupAction, method: PrismMethod) -> Option<Self> {
        let factors = hamming_factors(g, &vertices)?;
        Some(PrismWitness {
            factors,
            vertices,
            elements_checked: f.order(),
            method,
        })
    }

    /// Re-checks the Hamming structure and invariance.
    pub fn verify(&self, f: &GroupAction) -> bool {
        let g = f.graph();
        hamming_factors(g, &self.vertices).is_some_and(|fs| fs == self.factors) && f.is_invariant(&self.vertices)
    }

    /// Uniform weights over the prism vertices; the fixed point is their
    /// barycenter.
    pub fn barycenter(&self) -> Vec<(Vertex, f64)> {
        let w = 1.0 / self.vertices.len() as f64;
        self.vertices.iter().map(|&v| (v, w)).collect()
    }
}

/// If the set induces a Hamming graph, its factor cliques through the least
/// vertex, largest first.
pub fn hamming_factors(g: &Graph, set: &VertexSet) -> Option<Vec<VertexSet>> {
    let members: Vec<Vertex> = set.iter().copied().collect();
    if members.is_empty() {
        return None;
    }
    let sub = g.induced_subgraph(&members);
    if !sub.is_connected() {
        return None;
    }
    let fact = cartesian_factorization(&sub).ok()?;
    if fact
        .factors
        .iter()
        .any(|h| h.edge_count() * 2 != h.vertex_count() * (h.vertex_count() - 1))
    {
        return None;
    }
    let base = &fact.coordinates[0];
    let factors = (0..fact.factors.len())
        .map(|i| {
            (0..members.len())
                .filter(|&v| (0..base.len()).all(|j| j == i || fact.coordinates[v][j] == base[j]))
                .map(|v| members[v])
                .collect()
        })
        .collect();
    Some(factors)
}

/// Outcome of orbit dismantling on the strong product of the box factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueSearch {
    Clique(VertexSet),
    /// No orbit could be removed; the remaining vertices are reported.
    Stalled(VertexSet),
}

/// Invariant clique in the strong product of the factors of a box, by
/// deleting whole orbits of dominated vertices.
fn invariant_clique(strong: &Graph, f: &GroupAction) -> CliqueSearch {
    let n = strong.vertex_count();
    let mut alive = vec![true; n];
    let orbits = f.orbits();
    loop {
        let live: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
        if strong.is_clique(&live) {
            return CliqueSearch::Clique(live.into_iter().collect());
        }
        let dominated_by_outsider = |v: Vertex, orbit: &VertexSet, alive: &[bool]| {
            strong.neighbors(v).iter().any(|&w| {
                alive[w]
                    && !orbit.contains(&w)
                    && strong
                        .neighbors(v)
                        .iter()
                        .all(|&x| !alive[x] || x == w || strong.has_edge(x, w))
            })
        };
        let removable = orbits
            .iter()
            .filter(|o| alive[*o.first().expect("orbit")])
            .find(|o| o.iter().all(|&v| dominated_by_outsider(v, o, &alive)));
        match removable {
            Some(o) => {
                for &v in o {
                    alive[v] = false;
                }
            }
            None => return CliqueSearch::Stalled(live.into_iter().collect()),
        }
    }
}

/// Invariant prism of a box: the smallest prism containing an invariant
/// clique of the strong product of its prime factors.
pub fn invariant_prism(f: &GroupAction) -> Result<PrismWitness> {
    let g = f.graph();
    let fact = cartesian_factorization(g)?;
    let n = g.vertex_count();
    let coords = &fact.coordinates;
    let strong_adj = |u: Vertex, v: Vertex| {
        u != v
            && coords[u]
                .iter()
                .zip(&coords[v])
                .enumerate()
                .all(|(i, (&a, &b))| a == b || fact.factors[i].has_edge(a, b))
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if strong_adj(u, v) {
                edges.push((u, v));
            }
        }
    }
    let strong = Graph::from_edges(n, edges)?;
    match invariant_clique(&strong, f) {
        CliqueSearch::Clique(sigma) => {
            let projections: Vec<BTreeSet<Vertex>> = (0..fact.factors.len())
                .map(|i| sigma.iter().map(|&v| coords[v][i]).collect())
                .collect();
            let prism: VertexSet = g
                .vertices()
                .filter(|&v| coords[v].iter().zip(&projections).all(|(c, p)| p.contains(c)))
                .collect();
            let w = PrismWitness::from_vertices(g, prism, f, PrismMethod::OrbitDismantling)
                .ok_or_else(|| Error::Invariant("projected cliques do not span a prism".into()))?;
            if !w.verify(f) {
                return Err(Error::Invariant("constructed prism is not invariant".into()));
            }
            Ok(w)
        }
        CliqueSearch::Stalled(_) => {
            let mut all = brute_force_invariant_prisms(f, DEFAULT_GROUP_CAP)?;
            if all.is_empty() {
                return Err(Error::Invariant("no invariant prism exists".into()));
            }
            let mut w = all.remove(0);
            w.method = PrismMethod::BruteForceFallback;
            Ok(w)
        }
    }
}

/// Every invariant induced Hamming subgraph, smallest first. Candidates are
/// unions of orbits; `budget` bounds how many are examined.
pub fn brute_force_invariant_prisms(f: &GroupAction, budget: usize) -> Result<Vec<PrismWitness>> {
    let g = f.graph();
    let orbits = f.orbits();
    let k = orbits.len();
    if k >= usize::BITS as usize - 1 || (1usize << k) - 1 > budget {
        return Err(Error::BudgetExceeded {
            what: "orbit unions",
            budget,
            reached: if k >= usize::BITS as usize - 1 {
                usize::MAX
            } else {
                (1usize << k) - 1
            },
        });
    }
    let mut out = Vec::new();
    for mask in 1usize..(1 << k) {
        let set: VertexSet = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .flat_map(|i| orbits[i].iter().copied())
            .collect();
        if let Some(w) = PrismWitness::from_vertices(g, set, f, PrismMethod::BruteForce) {
            out.push(w);
        }
    }
    out.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    Ok(out)
}

/// Prisms in `all` containing no other prism of `all`.
pub fn inclusion_minimal(all: &[PrismWitness]) -> Vec<&PrismWitness> {
    all.iter()
        .filter(|p| {
            !all.iter()
                .any(|q| q.vertices.len() < p.vertices.len() && q.vertices.is_subset(&p.vertices))
        })
        .collect()
}

/// Every stage of the fixed-prism pipeline, in ids of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPrism {
    pub invariant_subgraph: VertexSet,
    pub invariant_box: VertexSet,
    pub prism: PrismWitness,
}

/// Minimal orbit hull, then its invariant box, then an invariant prism of
/// the box. The prism's barycenter is fixed by the group.
pub fn fixed_prism(f: &GroupAction) -> Result<FixedPrism> {
    f.verify()?;
    let hull = minimal_invariant_subgraph(f)?;
    let on_hull = f.restrict(&hull)?;
    let hull_members: Vec<Vertex> = hull.iter().copied().collect();
    let boxed_local = invariant_box(&on_hull)?;
    let box_set: VertexSet = boxed_local.iter().map(|&v| hull_members[v]).collect();
    let on_box = f.restrict(&box_set)?;
    let box_members: Vec<Vertex> = box_set.iter().copied().collect();
    let local = invariant_prism(&on_box)?;
    let lift = |s: &VertexSet| -> VertexSet { s.iter().map(|&v| box_members[v]).collect() };
    let prism = PrismWitness {
        factors: local.factors.iter().map(lift).collect(),
        vertices: lift(&local.vertices),
        elements_checked: f.order(),
        method: local.method,
    };
    if !prism.verify(f) {
        return Err(Error::Invariant("fixed prism fails re-verification".into()));
    }
    Ok(FixedPrism {
        invariant_subgraph: hull,
        invariant_box: box_set,
        prism,
    })
}
