//! Level-by-level unfolding of the universal cover of a triangle-square
//! complex.
//!
//! Level `i + 1` is built from couples `(w, z)` where `w` lies on the outer
//! sphere and `z` is a base neighbor of the image of `w` not yet reached
//! from `w`. Couples with the same `z` are identified when their first
//! entries coincide, are adjacent, or span a square cell with a common inner
//! neighbor. Every level is checked against the ball, weak modularity,
//! local isomorphism and square lifting properties.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::complex::{canonical_square, flag_complex, local_conditions, Square, TriangleSquareComplex};
use crate::conditions::{weakly_modular_at, ConditionWitness};
use crate::error::{CoverFailure, CoverProperty, Error, Result};
use crate::graph::{Graph, Vertex};

/// Where a cover vertex came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// A vertex of the initial unit ball.
    BaseBall,
    /// The class of these couples `(outer vertex, base vertex)`.
    Class { couples: Vec<(Vertex, Vertex)> },
}

/// When [`unfold`] stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverLimit {
    /// Build levels up to this radius.
    Radius(usize),
    /// Stop once the cover has more vertices than this.
    VertexBudget(usize),
}

impl CoverLimit {
    pub const DEFAULT_VERTEX_BUDGET: usize = 100_000;
}

impl Default for CoverLimit {
    fn default() -> Self {
        CoverLimit::VertexBudget(Self::DEFAULT_VERTEX_BUDGET)
    }
}

#[derive(Debug, Clone)]
pub struct CoverState {
    base: TriangleSquareComplex,
    basepoint: Vertex,
    base_ok: bool,
    levels: Vec<Range<Vertex>>,
    level_of: Vec<usize>,
    image: Vec<Vertex>,
    adj: Vec<Vec<Vertex>>,
    provenance: Vec<Provenance>,
    /// `(w, w') -> (u, u')` for every base square cell `w w' u u'`.
    square_ends: HashMap<(Vertex, Vertex), Vec<(Vertex, Vertex)>>,
    stars_checked: usize,
    stabilized: bool,
}

impl CoverState {
    /// Starts the cover at the unit ball of `basepoint`. The base complex
    /// must satisfy the local conditions.
    pub fn init(x: &TriangleSquareComplex, basepoint: Vertex) -> Result<Self> {
        let state = Self::init_unchecked(x, basepoint)?;
        if !state.base_ok {
            let report = local_conditions(x)?;
            let (name, check) = report.first_failure().expect("some condition fails");
            return Err(Error::Precondition(format!(
                "complex violates the {name} at {:?}",
                check.witness.as_deref().unwrap_or_default()
            )));
        }
        Ok(state)
    }

    /// Like [`init`](Self::init) but runs on any complex; failures are then
    /// reported with `base_conditions_hold = false`.
    pub fn init_unchecked(x: &TriangleSquareComplex, basepoint: Vertex) -> Result<Self> {
        let g = x.graph();
        g.check_vertex(basepoint)?;
        let base_ok = local_conditions(x)?.passes();
        let mut image = vec![basepoint];
        image.extend_from_slice(g.neighbors(basepoint));
        let n = image.len();
        let mut adj = vec![Vec::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(image[a], image[b]) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        let mut square_ends: HashMap<(Vertex, Vertex), Vec<(Vertex, Vertex)>> = HashMap::new();
        for s in x.squares() {
            for r in 0..4 {
                let rot = [s[r], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]];
                for [w, w2, u, u2] in [rot, [rot[1], rot[0], rot[3], rot[2]]] {
                    square_ends.entry((w, w2)).or_default().push((u, u2));
                }
            }
        }
        Ok(CoverState {
            base: x.clone(),
            basepoint,
            base_ok,
            levels: vec![0..1, 1..n],
            level_of: (0..n).map(|v| usize::from(v > 0)).collect(),
            image,
            adj,
            provenance: vec![Provenance::BaseBall; n],
            square_ends,
            stars_checked: 0,
            stabilized: false,
        })
    }

    pub fn base(&self) -> &TriangleSquareComplex {
        &self.base
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    /// Index of the outermost level built so far.
    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.image.len()
    }

    pub fn level_of(&self, v: Vertex) -> usize {
        self.level_of[v]
    }

    /// Position of `v` within its level.
    pub fn class_index(&self, v: Vertex) -> usize {
        v - self.levels[self.level_of[v]].start
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.image[v]
    }

    pub fn images(&self) -> &[Vertex] {
        &self.image
    }

    pub fn provenance(&self, v: Vertex) -> &Provenance {
        &self.provenance[v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    /// The 1-skeleton built so far.
    pub fn graph(&self) -> Graph {
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)));
        Graph::from_edges(self.vertex_count(), edges).expect("valid cover edges")
    }

    fn add_edge(&mut self, a: Vertex, b: Vertex) {
        for (x, y) in [(a, b), (b, a)] {
            if let Err(pos) = self.adj[x].binary_search(&y) {
                self.adj[x].insert(pos, y);
            }
        }
    }

    fn failure(&self, property: CoverProperty, witness: Vec<Vertex>) -> Error {
        Error::Cover(CoverFailure {
            property,
            level: self.level(),
            witness,
            base_conditions_hold: self.base_ok,
        })
    }

    /// Builds the next level. Returns `false` when no couple remains, i.e.
    /// the cover has closed up.
    pub fn extend(&mut self) -> Result<bool> {
        if self.stabilized {
            return Ok(false);
        }
        let g = self.base.graph().clone();
        let top = self.levels[self.level()].clone();
        let mut by_z: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for w in top.clone() {
            let reached: BTreeSet<Vertex> = self.adj[w].iter().map(|&a| self.image[a]).collect();
            for &z in g.neighbors(self.image[w]) {
                if !reached.contains(&z) {
                    by_z.entry(z).or_default().push(w);
                }
            }
        }
        if by_z.is_empty() {
            self.stabilized = true;
            self.check_stars(self.level())?;
            return Ok(false);
        }

        let mut classes: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
        for (&z, ws) in &by_z {
            let mut parent: Vec<usize> = (0..ws.len()).collect();
            fn find(p: &mut [usize], mut i: usize) -> usize {
                while p[i] != i {
                    p[i] = p[p[i]];
                    i = p[i];
                }
                i
            }
            let mut related = vec![vec![false; ws.len()]; ws.len()];
            for i in 0..ws.len() {
                related[i][i] = true;
                for j in i + 1..ws.len() {
                    if self.couples_related(ws[i], ws[j], z) {
                        related[i][j] = true;
                        related[j][i] = true;
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for i in 0..ws.len() {
                let r = find(&mut parent, i);
                groups.entry(r).or_default().push(i);
            }
            for members in groups.into_values() {
                for (k, &i) in members.iter().enumerate() {
                    if let Some(&j) = members[k + 1..].iter().find(|&&j| !related[i][j]) {
                        return Err(self.failure(CoverProperty::Transitivity, vec![ws[i], ws[j]]));
                    }
                }
                classes.push((z, members.iter().map(|&i| ws[i]).collect()));
            }
        }
        // order classes by their least couple
        classes.sort_by_key(|(z, ws)| (ws[0], *z));

        let start = self.vertex_count();
        let next = self.level() + 1;
        let mut class_of: HashMap<(Vertex, Vertex), Vertex> = HashMap::new();
        for (k, (z, ws)) in classes.iter().enumerate() {
            let id = start + k;
            self.image.push(*z);
            self.level_of.push(next);
            self.adj.push(Vec::new());
            self.provenance.push(Provenance::Class {
                couples: ws.iter().map(|&w| (w, *z)).collect(),
            });
            for &w in ws {
                class_of.insert((w, *z), id);
            }
        }
        self.levels.push(start..start + classes.len());
        for (&(w, z), &id) in &class_of {
            self.add_edge(w, id);
            for &z2 in g.neighbors(z) {
                if let Some(&id2) = class_of.get(&(w, z2)) {
                    self.add_edge(id, id2);
                }
            }
        }
        if next >= 2 {
            self.check_stars(next - 2)?;
        }
        Ok(true)
    }

    fn couples_related(&self, w: Vertex, w2: Vertex, z: Vertex) -> bool {
        if w == w2 || self.adj[w].binary_search(&w2).is_ok() {
            return true;
        }
        let inner = self.level() - 1;
        let (a, b) = (&self.adj[w], &self.adj[w2]);
        a.iter().filter(|u| b.binary_search(u).is_ok()).any(|&u| {
            self.level_of[u] <= inner && self.base.has_square([self.image[u], self.image[w], z, self.image[w2]])
        })
    }

    /// Whether the map restricted to the unit ball of `u` is injective and
    /// an induced isomorphism onto its image; with `onto`, the image must
    /// also be the full base unit ball.
    fn unit_ball_maps(&self, u: Vertex, onto: bool) -> bool {
        let g = self.base.graph();
        let fu = self.image[u];
        let nb = &self.adj[u];
        let mut imgs: Vec<Vertex> = nb.iter().map(|&a| self.image[a]).collect();
        imgs.sort_unstable();
        if imgs.windows(2).any(|p| p[0] == p[1]) || imgs.binary_search(&fu).is_ok() {
            return false;
        }
        if !imgs.iter().all(|&y| g.has_edge(fu, y)) {
            return false;
        }
        if onto && imgs.as_slice() != g.neighbors(fu) {
            return false;
        }
        nb.iter().enumerate().all(|(i, &a)| {
            nb[i + 1..]
                .iter()
                .all(|&b| self.adj[a].binary_search(&b).is_ok() == g.has_edge(self.image[a], self.image[b]))
        })
    }

    /// Checks the ball, weak modularity, local isomorphism and square
    /// lifting properties at the current level.
    pub fn verify_level(&self) -> std::result::Result<(), CoverFailure> {
        self.verify_inner().map_err(|e| match e {
            Error::Cover(f) => f,
            other => unreachable!("verification only raises cover failures: {other}"),
        })
    }

    fn verify_inner(&self) -> Result<()> {
        let cover = self.graph();
        let i = self.level();
        let row = cover.distance_row(0);
        if let Some(v) = cover.vertices().find(|&v| row[v] as usize != self.level_of[v]) {
            return Err(self.failure(CoverProperty::P, vec![v]));
        }
        match weakly_modular_at(&cover, 0)? {
            ConditionWitness::Satisfied => {}
            ConditionWitness::Violated { vertices, .. } => return Err(self.failure(CoverProperty::Q, vertices)),
        }
        let inner = self.levels[..i].iter().flat_map(|r| r.clone());
        for u in inner.clone() {
            if !self.unit_ball_maps(u, true) {
                return Err(self.failure(CoverProperty::R, vec![u]));
            }
        }
        for u in self.levels[i].clone() {
            if !self.unit_ball_maps(u, false) {
                return Err(self.failure(CoverProperty::T, vec![u]));
            }
        }
        for w in inner.clone() {
            for &w2 in &self.adj[w] {
                if self.level_of[w2] >= i {
                    continue;
                }
                let Some(ends) = self.square_ends.get(&(self.image[w], self.image[w2])) else {
                    continue;
                };
                for &(u, u2) in ends {
                    let lift = |from: Vertex, target: Vertex| {
                        self.adj[from].iter().copied().find(|&a| self.image[a] == target)
                    };
                    let lifted = match (lift(w2, u), lift(w, u2)) {
                        (Some(a), Some(b)) => self.adj[a].binary_search(&b).is_ok(),
                        _ => false,
                    };
                    if !lifted {
                        return Err(self.failure(CoverProperty::S, vec![w, w2]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Star isomorphism for all vertices up to `max_level` whose stars are
    /// complete and have not been checked yet.
    fn check_stars(&mut self, max_level: usize) -> Result<()> {
        while self.stars_checked <= max_level {
            for v in self.levels[self.stars_checked].clone() {
                if !self.star_maps(v) {
                    return Err(self.failure(CoverProperty::Star, vec![v]));
                }
            }
            self.stars_checked += 1;
        }
        Ok(())
    }

    fn star_maps(&self, v: Vertex) -> bool {
        let fv = self.image[v];
        let nb = &self.adj[v];
        let adjacent = |a: Vertex, b: Vertex| self.adj[a].binary_search(&b).is_ok();
        let mut tris = Vec::new();
        let mut squares = Vec::new();
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if adjacent(a, c) {
                    let mut t = [fv, self.image[a], self.image[c]];
                    t.sort_unstable();
                    tris.push(t);
                    continue;
                }
                for &b in &self.adj[a] {
                    if b != v && adjacent(b, c) && !adjacent(b, v) {
                        squares.push(canonical_square([fv, self.image[a], self.image[b], self.image[c]]));
                    }
                }
            }
        }
        tris.sort_unstable();
        squares.sort_unstable();
        let base_tris: Vec<[Vertex; 3]> = self
            .base
            .triangles()
            .iter()
            .copied()
            .filter(|t| t.contains(&fv))
            .collect();
        let base_squares: Vec<Square> = self
            .base
            .squares()
            .iter()
            .copied()
            .filter(|s| s.contains(&fv))
            .collect();
        tris == base_tris && squares == base_squares
    }

    /// The cover with all triangles and induced 4-cycles as cells.
    pub fn complex(&self) -> TriangleSquareComplex {
        flag_complex(&self.graph())
    }

    /// Graphviz rendering; vertices are labeled `level.class(image)`.
    pub fn to_dot(&self) -> String {
        let g = self.base.graph();
        let mut out = String::from("graph cover {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(
                out,
                "  {v} [label=\"{}.{}({})\"];",
                self.level_of[v],
                self.class_index(v),
                g.label(self.image[v])
            );
        }
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb.iter().filter(|&&b| a < b) {
                let _ = writeln!(out, "  {a} -- {b};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone)]
pub struct Unfolding {
    pub state: CoverState,
    /// Cumulative ball sizes: `growth[r]` vertices within radius `r`.
    pub growth: Vec<usize>,
    pub stabilized: bool,
    /// The vertex budget ran out before the limit was reached.
    pub budget_exhausted: bool,
}

/// Unfolds the universal cover of `x` around `basepoint`, verifying every
/// level.
pub fn unfold(x: &TriangleSquareComplex, basepoint: Vertex, limit: CoverLimit) -> Result<Unfolding> {
    let mut state = CoverState::init(x, basepoint)?;
    let mut growth = vec![1];
    let mut budget_exhausted = false;
    loop {
        state.verify_level().map_err(Error::Cover)?;
        growth.push(state.vertex_count());
        match limit {
            CoverLimit::Radius(r) if state.level() >= r => break,
            CoverLimit::VertexBudget(b) if state.vertex_count() > b => {
                budget_exhausted = true;
                break;
            }
            _ => {}
        }
        if !state.extend()? {
            break;
        }
    }
    if let CoverLimit::Radius(r) = limit {
        growth.truncate(r + 1);
    }
    Ok(Unfolding {
        stabilized: state.is_stabilized(),
        state,
        growth,
        budget_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn unfold_graph(g: &Graph, limit: CoverLimit) -> Unfolding {
        unfold(&flag_complex(g), 0, limit).unwrap()
    }

    #[test]
    fn cycle_unrolls_to_a_line() {
        let u = unfold_graph(&cycle(6).unwrap(), CoverLimit::Radius(6));
        assert_eq!(u.growth, (0..=6).map(|r| 2 * r + 1).collect::<Vec<_>>());
        assert!(!u.stabilized);
    }

    #[test]
    fn torus_unrolls_to_the_grid() {
        let u = unfold_graph(&torus(5, 5).unwrap(), CoverLimit::Radius(5));
        assert_eq!(u.growth, (0..=5).map(|r| 2 * r * r + 2 * r + 1).collect::<Vec<_>>());
        let ball = unfold_graph(&torus(5, 5).unwrap(), CoverLimit::Radius(2))
            .state
            .complex();
        assert_eq!(ball.graph().vertex_count(), 13);
        assert_eq!(ball.squares().len(), 4);
    }

    #[test]
    fn simply_connected_complexes_close_up() {
        for g in [
            hypercube(3).unwrap(),
            hamming(&[3, 2]).unwrap(),
            grid(3, 4).unwrap(),
            wheel(5).unwrap(),
        ] {
            let u = unfold_graph(&g, CoverLimit::default());
            assert!(u.stabilized);
            assert_eq!(u.state.vertex_count(), g.vertex_count());
            let mut imgs = u.state.images().to_vec();
            imgs.sort_unstable();
            assert_eq!(imgs, g.vertices().collect::<Vec<_>>());
            assert!(crate::iso::is_isomorphic(&u.state.graph(), &g));
        }
    }

    #[test]
    fn budget_stops_infinite_unfolding() {
        let u = unfold_graph(&torus(5, 5).unwrap(), CoverLimit::VertexBudget(100));
        assert!(u.budget_exhausted);
        assert!(u.state.vertex_count() > 100);
    }

    #[test]
    fn failed_local_conditions_are_rejected() {
        let house = flag_complex(crate::pattern::PatternKind::House.graph().unwrap());
        assert!(matches!(CoverState::init(&house, 0), Err(Error::Precondition(_))));
        assert!(!CoverState::init_unchecked(&house, 0).unwrap().base_ok);
    }

    #[test]
    fn dropped_edge_is_detected() {
        let x = flag_complex(&torus(5, 5).unwrap());
        let mut s = CoverState::init(&x, 0).unwrap();
        s.extend().unwrap();
        s.extend().unwrap();
        s.verify_level().unwrap();
        let v = s.levels[2].start;
        let a = s.adj[v][0];
        s.adj[v].retain(|&b| b != a);
        s.adj[a].retain(|&b| b != v);
        let f = s.verify_level().unwrap_err();
        assert!(matches!(
            f.property,
            CoverProperty::P | CoverProperty::R | CoverProperty::S
        ));
        assert!(f.base_conditions_hold);
    }

    #[test]
    fn wrong_image_is_detected() {
        let x = flag_complex(&hypercube(3).unwrap());
        let mut s = CoverState::init(&x, 0).unwrap();
        s.extend().unwrap();
        let v = s.levels[2].start;
        s.image[v] = 7;
        let f = s.verify_level().unwrap_err();
        assert_eq!(f.property, CoverProperty::R);
    }

    #[test]
    fn missing_square_lift_is_detected() {
        let x = flag_complex(&grid(3, 3).unwrap());
        let mut s = CoverState::init(&x, 4).unwrap();
        s.extend().unwrap();
        // cut the rim so the square around the first corner no longer closes
        let corner = s.levels[2].start;
        let nb = s.adj[corner].clone();
        for a in nb {
            s.adj[a].retain(|&b| b != corner);
        }
        s.adj[corner].clear();
        assert!(s.verify_level().is_err());
    }

    #[test]
    fn provenance_and_dot() {
        let x = flag_complex(&cycle(4).unwrap());
        let u = unfold(&x, 0, CoverLimit::default()).unwrap();
        assert_eq!(u.state.vertex_count(), 4);
        assert_eq!(
            u.state.provenance(3),
            &Provenance::Class {
                couples: vec![(1, 2), (2, 2)]
            }
        );
        let dot = u.state.to_dot();
        assert!(dot.contains("2.0(2)"));
        assert!(dot.contains("1 -- 3;"));
    }
}
