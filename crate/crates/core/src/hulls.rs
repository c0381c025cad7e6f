//! Convexity, gates, gated hulls and fibers.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::conditions::{weak_modularity, Condition, ConditionWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, UNREACHABLE};
use crate::pattern::{first_induced, PatternKind};
use crate::recognition::{is_two_connected, is_weakly_bridged};

pub type VertexSet = BTreeSet<Vertex>;

/// Vertices added in one closure round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullRound {
    pub round: usize,
    pub added: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullResult {
    pub vertices: VertexSet,
    pub trace: Vec<HullRound>,
}

impl HullResult {
    /// Whether `seed` plus the traced additions is exactly the hull.
    pub fn replays(&self, seed: &VertexSet) -> bool {
        let mut set = seed.clone();
        for r in &self.trace {
            for &v in &r.added {
                if !set.insert(v) {
                    return false;
                }
            }
        }
        set == self.vertices
    }
}

fn check_set(g: &Graph, s: &VertexSet) -> Result<()> {
    s.iter().try_for_each(|&v| g.check_vertex(v))
}

/// A triple `(u, v, x)` with `u, v` in `S`, `x` outside `S` and `x` on a
/// shortest `(u, v)`-path, if one exists.
pub fn convexity_violation(g: &Graph, s: &VertexSet) -> Result<Option<(Vertex, Vertex, Vertex)>> {
    check_set(g, s)?;
    let members: Vec<Vertex> = s.iter().copied().collect();
    let outside: Vec<Vertex> = g.vertices().filter(|v| !s.contains(v)).collect();
    for (i, &u) in members.iter().enumerate() {
        let ru = g.distance_row(u);
        for &v in &members[i + 1..] {
            let rv = g.distance_row(v);
            if ru[v] == UNREACHABLE {
                // no path at all, so some path vertex must be missing
                return Ok(Some((u, v, u)));
            }
            if let Some(&x) = outside
                .iter()
                .find(|&&x| ru[x] != UNREACHABLE && ru[x] + rv[x] == ru[v])
            {
                return Ok(Some((u, v, x)));
            }
        }
    }
    Ok(None)
}

pub fn is_convex(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(convexity_violation(g, s)?.is_none())
}

/// Which closure rules a hull computation applies each round.
#[derive(Debug, Clone, Copy)]
struct Rules {
    intervals: bool,
    triangles: bool,
}

/// Closes `seed` under the rules. Pairs are only examined when at least one
/// member was added in the previous round.
fn close(g: &Graph, seed: &VertexSet, rules: Rules) -> HullResult {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in seed {
        inside[v] = true;
    }
    let mut members: Vec<Vertex> = seed.iter().copied().collect();
    let mut fresh = members.clone();
    let mut trace = Vec::new();
    let mut round = 0;
    while !fresh.is_empty() {
        round += 1;
        let mut added = BTreeSet::new();
        for &a in &fresh {
            let ra = g.distance_row(a);
            for &b in &members {
                if a == b || (inside_fresh(&fresh, b) && b < a) {
                    continue;
                }
                let dab = ra[b];
                if dab == UNREACHABLE {
                    continue;
                }
                if rules.intervals && dab >= 2 {
                    let rb = g.distance_row(b);
                    added.extend((0..n).filter(|&x| !inside[x] && ra[x] != UNREACHABLE && ra[x] + rb[x] == dab));
                }
                if rules.triangles && dab == 1 {
                    added.extend(g.common_neighbors(a, b).into_iter().filter(|&x| !inside[x]));
                }
            }
        }
        for &x in &added {
            inside[x] = true;
        }
        members.extend(added.iter().copied());
        fresh = added.iter().copied().collect();
        if !added.is_empty() {
            trace.push(HullRound {
                round,
                added: added.into_iter().collect(),
            });
        }
    }
    HullResult {
        vertices: members.into_iter().collect(),
        trace,
    }
}

fn inside_fresh(fresh: &[Vertex], v: Vertex) -> bool {
    fresh.binary_search(&v).is_ok()
}

fn require_nonempty_component(g: &Graph, s: &VertexSet) -> Result<()> {
    check_set(g, s)?;
    let Some(&first) = s.iter().next() else {
        return Err(Error::InvalidParameter {
            name: "set",
            value: "{}".into(),
            reason: "hulls need a nonempty seed",
        });
    };
    let row = g.distance_row(first);
    if let Some(&v) = s.iter().find(|&&v| row[v] == UNREACHABLE) {
        return Err(Error::Disconnected(first, v));
    }
    Ok(())
}

/// The least convex superset of `s`, by interval closure to a fixpoint.
pub fn convex_hull(g: &Graph, s: &VertexSet) -> Result<HullResult> {
    require_nonempty_component(g, s)?;
    Ok(close(
        g,
        s,
        Rules {
            intervals: true,
            triangles: false,
        },
    ))
}

/// The gate of `x` in `s`: the vertex of `s` lying on a shortest path from
/// `x` to every vertex of `s`.
pub fn gate(g: &Graph, s: &VertexSet, x: Vertex) -> Result<Option<Vertex>> {
    check_set(g, s)?;
    g.check_vertex(x)?;
    if s.is_empty() {
        return Err(Error::InvalidParameter {
            name: "set",
            value: "{}".into(),
            reason: "gates are defined for nonempty sets",
        });
    }
    Ok(gate_unchecked(g, s, x))
}

fn gate_unchecked(g: &Graph, s: &VertexSet, x: Vertex) -> Option<Vertex> {
    let rx = g.distance_row(x);
    // a gate is strictly closer to x than every other member, so only the
    // first nearest vertex can qualify
    let &candidate = s.iter().min_by_key(|&&y| (rx[y], y))?;
    if rx[candidate] == UNREACHABLE {
        return None;
    }
    let rc = g.distance_row(candidate);
    let is_gate = s
        .iter()
        .all(|&y| rx[y] != UNREACHABLE && rx[candidate] + rc[y] == rx[y]);
    if !is_gate {
        return None;
    }
    debug_assert!(
        s.iter().filter(|&&y| rx[y] == rx[candidate]).count() == 1,
        "gate of {x} is not unique"
    );
    Some(candidate)
}

/// Why a set fails to be gated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotGated {
    Empty,
    Disconnected,
    /// This outside vertex has no gate.
    NoGate(Vertex),
}

pub fn gatedness(g: &Graph, s: &VertexSet) -> Result<std::result::Result<(), NotGated>> {
    check_set(g, s)?;
    if s.is_empty() {
        return Ok(Err(NotGated::Empty));
    }
    if !g.is_connected_set(s) {
        return Ok(Err(NotGated::Disconnected));
    }
    for x in g.vertices().filter(|x| !s.contains(x)) {
        if gate_unchecked(g, s, x).is_none() {
            return Ok(Err(NotGated::NoGate(x)));
        }
    }
    Ok(Ok(()))
}

pub fn is_gated(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(gatedness(g, s)?.is_ok())
}

/// Closes `seed` under adding every vertex with at least two neighbors
/// inside. No preconditions are checked.
pub fn twin_ball_closure(g: &Graph, seed: &VertexSet) -> HullResult {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in seed {
        inside[v] = true;
    }
    let mut trace = Vec::new();
    let mut round = 0;
    loop {
        round += 1;
        let added: Vec<Vertex> = (0..n)
            .filter(|&x| !inside[x] && g.neighbors(x).iter().filter(|&&y| inside[y]).count() >= 2)
            .collect();
        if added.is_empty() {
            break;
        }
        for &x in &added {
            inside[x] = true;
        }
        trace.push(HullRound { round, added });
    }
    HullResult {
        vertices: (0..n).filter(|&v| inside[v]).collect(),
        trace,
    }
}

fn describe_witness(g: &Graph, w: &ConditionWitness) -> String {
    match w {
        ConditionWitness::Satisfied => "no violation".into(),
        ConditionWitness::Violated {
            condition,
            basepoint,
            vertices,
        } => {
            let name = match condition {
                Condition::Triangle => "TC",
                Condition::Quadrangle => "QC",
            };
            let tuple: Vec<&str> = vertices.iter().map(|&v| g.label(v)).collect();
            format!("{name}({}) fails at ({})", g.label(*basepoint), tuple.join(","))
        }
    }
}

/// The gated hull of a triangle, by twin-ball closure. Requires a weakly
/// modular graph without induced `W4` and `W4^-`; the result is verified to
/// be gated, 2-connected and weakly bridged.
pub fn gated_hull_of_triangle(g: &Graph, t: [Vertex; 3]) -> Result<HullResult> {
    for v in t {
        g.check_vertex(v)?;
    }
    if !g.is_clique(&t) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(Error::InvalidParameter {
            name: "triangle",
            value: format!("{t:?}"),
            reason: "vertices must be pairwise adjacent",
        });
    }
    // only the component of the triangle matters
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.contains(&t[0]))
        .expect("component");
    let h = g.induced_subgraph(&comp);
    let wm = weak_modularity(&h)?;
    if !wm.is_satisfied() {
        return Err(Error::Precondition(format!(
            "graph not weakly modular: {}",
            describe_witness(&h, &wm)
        )));
    }
    for kind in [PatternKind::W4, PatternKind::WkMinus(4)] {
        if let Some(occ) = first_induced(&h, kind)? {
            let labels: Vec<&str> = occ.iter().map(|&v| h.label(v)).collect();
            return Err(Error::Precondition(format!("induced {kind} on ({})", labels.join(","))));
        }
    }
    let seed: VertexSet = t.into_iter().collect();
    let hull = twin_ball_closure(g, &seed);
    verify_triangle_hull(g, &hull.vertices)?;
    Ok(hull)
}

fn verify_triangle_hull(g: &Graph, k: &VertexSet) -> Result<()> {
    if let Err(reason) = gatedness(g, k)? {
        return Err(Error::Invariant(format!("twin-ball hull is not gated: {reason:?}")));
    }
    let members: Vec<Vertex> = k.iter().copied().collect();
    let sub = g.induced_subgraph(&members);
    if !is_two_connected(&sub) {
        return Err(Error::Invariant("twin-ball hull is not 2-connected".into()));
    }
    let wb = is_weakly_bridged(&sub)?;
    if !wb.member {
        return Err(Error::Invariant(format!(
            "twin-ball hull is not weakly bridged: {:?}",
            wb.certificate
        )));
    }
    Ok(())
}

/// The least superset of `s` that is convex and contains the third vertex
/// of every triangle on an inside edge. In a weakly modular graph this is
/// the gated hull; the result is verified gated.
pub fn gated_hull(g: &Graph, s: &VertexSet) -> Result<HullResult> {
    let hull = gated_hull_unverified(g, s)?;
    if let Err(reason) = gatedness(g, &hull.vertices)? {
        return Err(Error::Precondition(format!(
            "closure of the set is not gated ({reason:?}); the graph is not weakly modular around it"
        )));
    }
    Ok(hull)
}

/// The closure used by [`gated_hull`], without the gatedness check.
pub fn gated_hull_unverified(g: &Graph, s: &VertexSet) -> Result<HullResult> {
    require_nonempty_component(g, s)?;
    Ok(close(
        g,
        s,
        Rules {
            intervals: true,
            triangles: true,
        },
    ))
}

/// Fibers of a gated set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPartition {
    pub base: VertexSet,
    /// `F_a` for each `a` in the base.
    pub fibers: BTreeMap<Vertex, VertexSet>,
    /// `U_a`: members of `F_a` with a neighbor in another fiber.
    pub boundary: BTreeMap<Vertex, VertexSet>,
    /// `U_ab` for adjacent `a, b` in the base: members of `F_a` with a
    /// neighbor in `F_b`.
    pub cross: BTreeMap<(Vertex, Vertex), VertexSet>,
}

impl FiberPartition {
    pub fn fiber_of(&self, x: Vertex) -> Option<Vertex> {
        self.fibers.iter().find(|(_, f)| f.contains(&x)).map(|(&a, _)| a)
    }
}

pub fn fibers(g: &Graph, s: &VertexSet) -> Result<FiberPartition> {
    if let Err(reason) = gatedness(g, s)? {
        return Err(Error::Precondition(format!("fibers need a gated set: {reason:?}")));
    }
    let mut gate_of = vec![usize::MAX; g.vertex_count()];
    let mut fibers: BTreeMap<Vertex, VertexSet> = s.iter().map(|&a| (a, VertexSet::new())).collect();
    for x in g.vertices() {
        let a = if s.contains(&x) {
            x
        } else {
            gate_unchecked(g, s, x).expect("gated set")
        };
        gate_of[x] = a;
        fibers.get_mut(&a).expect("base vertex").insert(x);
    }
    let mut boundary: BTreeMap<Vertex, VertexSet> = s.iter().map(|&a| (a, VertexSet::new())).collect();
    let mut cross: BTreeMap<(Vertex, Vertex), VertexSet> = BTreeMap::new();
    for &a in s {
        for &b in g.neighbors(a) {
            if s.contains(&b) {
                cross.insert((a, b), VertexSet::new());
            }
        }
    }
    for (x, y) in g.edges() {
        let (a, b) = (gate_of[x], gate_of[y]);
        if a == b {
            continue;
        }
        boundary.get_mut(&a).expect("base").insert(x);
        boundary.get_mut(&b).expect("base").insert(y);
        if let Some(set) = cross.get_mut(&(a, b)) {
            set.insert(x);
        }
        if let Some(set) = cross.get_mut(&(b, a)) {
            set.insert(y);
        }
    }
    Ok(FiberPartition {
        base: s.clone(),
        fibers,
        boundary,
        cross,
    })
}

/// Result of the bounded fiber-complementation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberComplementReport {
    pub holds: bool,
    /// A gated set and a base vertex whose fiber is not gated.
    pub witness: Option<(VertexSet, Vertex)>,
    pub gated_sets_checked: usize,
    /// Candidate sets come from seeds of at most three vertices.
    pub bounded: bool,
    /// Set when the graph is not weakly modular; the closure used to find
    /// gated sets is then only a heuristic.
    pub caveat: bool,
}

pub const DEFAULT_FIBER_BOUND: usize = 16;

/// Whether every fiber of every candidate gated set is gated. Candidates are
/// the gated hulls of all vertex sets of size at most three.
pub fn is_fiber_complemented(g: &Graph, bound: usize) -> Result<FiberComplementReport> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "fiber-complementation check",
            bound,
            actual: n,
        });
    }
    g.require_connected()?;
    let caveat = !weak_modularity(g)?.is_satisfied();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut candidates = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let seed: VertexSet = [a, b, c].into_iter().collect();
                let Ok(hull) = gated_hull(g, &seed) else {
                    continue;
                };
                if seen.insert(hull.vertices.clone()) {
                    candidates.push(hull.vertices);
                }
            }
        }
    }
    candidates.sort();
    for s in &candidates {
        let part = fibers(g, s)?;
        for (&a, f) in &part.fibers {
            if !is_gated(g, f)? {
                return Ok(FiberComplementReport {
                    holds: false,
                    witness: Some((s.clone(), a)),
                    gated_sets_checked: candidates.len(),
                    bounded: true,
                    caveat,
                });
            }
        }
    }
    Ok(FiberComplementReport {
        holds: true,
        witness: None,
        gated_sets_checked: candidates.len(),
        bounded: true,
        caveat,
    })
}

/// Every gated set of a weakly modular graph, found as the closure of the
/// singletons under `A -> gated_hull(A + v)`. Errors once more than `cap`
/// sets are found.
pub fn all_gated_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut queue: Vec<VertexSet> = Vec::new();
    for v in g.vertices() {
        let s: VertexSet = [v].into();
        if seen.insert(s.clone()) {
            queue.push(s);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i].clone();
        i += 1;
        for v in g.vertices().filter(|v| !a.contains(v)) {
            let mut seed = a.clone();
            seed.insert(v);
            let hull = gated_hull(g, &seed)?;
            if seen.insert(hull.vertices.clone()) {
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded {
                        what: "gated sets",
                        budget: cap,
                        reached: seen.len(),
                    });
                }
                queue.push(hull.vertices);
            }
        }
    }
    queue.sort();
    Ok(queue)
}
