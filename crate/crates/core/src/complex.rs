//! Triangle-square complexes and their local conditions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cover::{CoverLimit, CoverState};
use crate::error::{Error, Result};
use crate::generators::{complete, hypercube};
use crate::graph::{Graph, Vertex};
use crate::pattern::{find_induced, first_induced, PatternKind, PatternSearch};

pub type Triangle = [Vertex; 3];
/// A square as a cyclic sequence: consecutive entries are adjacent.
pub type Square = [Vertex; 4];

/// The lexicographically least rotation or reflection of a 4-cycle.
pub fn canonical_square(s: Square) -> Square {
    let mut best = s;
    for r in 0..4 {
        let rot = [s[r], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]];
        let rev = [rot[0], rot[3], rot[2], rot[1]];
        best = best.min(rot).min(rev);
    }
    best
}

fn sorted_triangle(mut t: Triangle) -> Triangle {
    t.sort_unstable();
    t
}

/// A graph with explicit triangle and square cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSquareComplex {
    graph: Graph,
    triangles: BTreeSet<Triangle>,
    squares: BTreeSet<Square>,
}

impl TriangleSquareComplex {
    /// Validates that triangles are 3-cliques and squares induced 4-cycles.
    pub fn new<T, S>(graph: Graph, triangles: T, squares: S) -> Result<Self>
    where
        T: IntoIterator<Item = Triangle>,
        S: IntoIterator<Item = Square>,
    {
        let mut tri = BTreeSet::new();
        for t in triangles {
            t.iter().try_for_each(|&v| graph.check_vertex(v))?;
            let t = sorted_triangle(t);
            if t[0] == t[1] || t[1] == t[2] || !graph.is_clique(&t) {
                return Err(Error::InvalidComplex(format!("{t:?} is not a triangle of the graph")));
            }
            tri.insert(t);
        }
        let mut sq = BTreeSet::new();
        for s in squares {
            s.iter().try_for_each(|&v| graph.check_vertex(v))?;
            if !is_induced_square(&graph, s) {
                return Err(Error::InvalidComplex(format!("{s:?} is not an induced 4-cycle")));
            }
            sq.insert(canonical_square(s));
        }
        Ok(TriangleSquareComplex {
            graph,
            triangles: tri,
            squares: sq,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn triangles(&self) -> &BTreeSet<Triangle> {
        &self.triangles
    }

    pub fn squares(&self) -> &BTreeSet<Square> {
        &self.squares
    }

    pub fn has_triangle(&self, t: Triangle) -> bool {
        self.triangles.contains(&sorted_triangle(t))
    }

    pub fn has_square(&self, s: Square) -> bool {
        self.squares.contains(&canonical_square(s))
    }
}

fn is_induced_square(g: &Graph, s: Square) -> bool {
    let distinct: BTreeSet<_> = s.iter().collect();
    distinct.len() == 4
        && (0..4).all(|i| g.has_edge(s[i], s[(i + 1) % 4]))
        && !g.has_edge(s[0], s[2])
        && !g.has_edge(s[1], s[3])
}

pub fn all_triangles(g: &Graph) -> BTreeSet<Triangle> {
    let mut out = BTreeSet::new();
    for (u, v) in g.edges() {
        for w in g.common_neighbors(u, v) {
            if w > v {
                out.insert([u, v, w]);
            }
        }
    }
    out
}

/// Induced 4-cycles, canonicalized.
pub fn all_squares(g: &Graph) -> BTreeSet<Square> {
    let mut out = BTreeSet::new();
    for a in g.vertices() {
        for c in a + 1..g.vertex_count() {
            if g.has_edge(a, c) {
                continue;
            }
            let common = g.common_neighbors(a, c);
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !g.has_edge(b, d) {
                        out.insert(canonical_square([a, b, c, d]));
                    }
                }
            }
        }
    }
    out
}

/// The complex whose cells are all triangles and induced 4-cycles of `g`.
pub fn flag_complex(g: &Graph) -> TriangleSquareComplex {
    TriangleSquareComplex {
        triangles: all_triangles(g),
        squares: all_squares(g),
        graph: g.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MissingCell {
    Triangle(Triangle),
    Square(Square),
}

/// The first cell of the flag completion that the complex lacks.
pub fn missing_flag_cell(x: &TriangleSquareComplex) -> Option<MissingCell> {
    if let Some(t) = all_triangles(&x.graph).into_iter().find(|t| !x.triangles.contains(t)) {
        return Some(MissingCell::Triangle(t));
    }
    all_squares(&x.graph)
        .into_iter()
        .find(|s| !x.squares.contains(s))
        .map(MissingCell::Square)
}

pub fn is_flag(x: &TriangleSquareComplex) -> bool {
    missing_flag_cell(x).is_none()
}

/// Two square cells sharing a diagonal, i.e. meeting in more than a face.
/// Triangles can never meet another cell badly, and two squares meeting in
/// two edges always share a diagonal.
pub fn cell_intersection_violation(x: &TriangleSquareComplex) -> Option<(Square, Square)> {
    let mut by_diagonal: BTreeMap<(Vertex, Vertex), Square> = BTreeMap::new();
    for &s in &x.squares {
        for d in [(s[0].min(s[2]), s[0].max(s[2])), (s[1].min(s[3]), s[1].max(s[3]))] {
            if let Some(&other) = by_diagonal.get(&d) {
                return Some((other, s));
            }
            by_diagonal.insert(d, s);
        }
    }
    None
}

/// Outcome of one local condition; failures carry the offending vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Vec<Vertex>>,
}

impl Check {
    fn pass() -> Self {
        Check {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<Vertex>) -> Self {
        Check {
            holds: false,
            witness: Some(witness),
        }
    }

    fn from_option(w: Option<Vec<Vertex>>) -> Self {
        w.map_or_else(Check::pass, Check::fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConditionsReport {
    pub flag: Check,
    pub cell_intersections: Check,
    pub w4_free: Check,
    pub w5_hat: Check,
    pub w5_free: Check,
    pub cube: Check,
    pub house: Check,
}

impl LocalConditionsReport {
    /// Flag, cells meeting in faces, the `(W4, W5^)` condition, cube and
    /// house conditions.
    pub fn passes(&self) -> bool {
        self.first_failure().is_none()
    }

    /// Same with `W5`-freeness in place of the extended-wheel condition.
    pub fn passes_strong(&self) -> bool {
        self.passes() && self.w5_free.holds
    }

    /// Name and witness of the first failed condition required by
    /// [`passes`](Self::passes).
    pub fn first_failure(&self) -> Option<(&'static str, &Check)> {
        [
            ("flagness", &self.flag),
            ("cell intersection", &self.cell_intersections),
            ("W4-freeness", &self.w4_free),
            ("extended 5-wheel condition", &self.w5_hat),
            ("cube condition", &self.cube),
            ("house condition", &self.house),
        ]
        .into_iter()
        .find(|(_, c)| !c.holds)
    }
}

pub fn local_conditions(x: &TriangleSquareComplex) -> Result<LocalConditionsReport> {
    let flag = Check::from_option(missing_flag_cell(x).map(|m| match m {
        MissingCell::Triangle(t) => t.to_vec(),
        MissingCell::Square(s) => s.to_vec(),
    }));
    let cell_intersections =
        Check::from_option(cell_intersection_violation(x).map(|(a, b)| a.iter().chain(&b).copied().collect()));
    Ok(LocalConditionsReport {
        flag,
        cell_intersections,
        w4_free: Check::from_option(first_induced(&x.graph, PatternKind::W4)?),
        w5_hat: w5_hat_condition(x)?,
        w5_free: Check::from_option(first_induced(&x.graph, PatternKind::W5)?),
        cube: cube_condition(x),
        house: house_condition(x),
    })
}

/// No induced `W4`, and every induced extended 5-wheel has a vertex
/// adjacent to all seven of its vertices.
pub fn w4_w5hat_condition(x: &TriangleSquareComplex) -> Result<Check> {
    if let Some(w) = first_induced(&x.graph, PatternKind::W4)? {
        return Ok(Check::fail(w));
    }
    w5_hat_condition(x)
}

fn w5_hat_condition(x: &TriangleSquareComplex) -> Result<Check> {
    let g = &x.graph;
    for occ in find_induced(g, PatternKind::ExtendedW5)? {
        let apex = g
            .common_neighbors(occ[0], occ[6])
            .into_iter()
            .any(|a| occ.iter().all(|&y| g.has_edge(a, y)));
        if !apex {
            return Ok(Check::fail(occ));
        }
    }
    Ok(Check::pass())
}

/// Three square cells at a vertex `c`, pairwise sharing an edge, must lie in
/// an induced 3-cube whose faces are cells. The witness is
/// `[c, a1, a2, a3, b12, b23, b13]`.
pub fn cube_condition(x: &TriangleSquareComplex) -> Check {
    let g = &x.graph;
    for c in g.vertices() {
        let nb = g.neighbors(c);
        for (i, &a1) in nb.iter().enumerate() {
            for (j, &a2) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a1, a2) {
                    continue;
                }
                for &a3 in &nb[j + 1..] {
                    if g.has_edge(a1, a3) || g.has_edge(a2, a3) {
                        continue;
                    }
                    let corners = |p: Vertex, q: Vertex| -> Vec<Vertex> {
                        g.common_neighbors(p, q)
                            .into_iter()
                            .filter(|&b| b != c && x.has_square([c, p, b, q]))
                            .collect()
                    };
                    for b12 in corners(a1, a2) {
                        for b23 in corners(a2, a3) {
                            for b13 in corners(a1, a3) {
                                if b12 == b23 || b23 == b13 || b12 == b13 {
                                    continue;
                                }
                                let seven = [c, a1, a2, a3, b12, b23, b13];
                                if !completes_cube(x, seven) {
                                    return Check::fail(seven.to_vec());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Check::pass()
}

fn completes_cube(x: &TriangleSquareComplex, [c, a1, a2, a3, b12, b23, b13]: [Vertex; 7]) -> bool {
    let g = &x.graph;
    let q3 = hypercube(3).expect("Q3");
    g.common_neighbors(b12, b23).into_iter().any(|d| {
        // bit 0 = a1, bit 1 = a2, bit 2 = a3
        let tuple = [c, a1, a2, b12, a3, b13, b23, d];
        crate::pattern::is_induced_copy(g, &q3, &tuple)
            && x.has_square([a3, b13, d, b23])
            && x.has_square([a1, b12, d, b13])
            && x.has_square([a2, b12, d, b23])
    })
}

/// Every triangle cell `p q w` and square cell `p q r s` forming an induced
/// house must extend to an induced prism through a vertex `w'` adjacent to
/// `w, r, s` and not to `p, q`. The witness is `[p, q, r, s, w]`.
pub fn house_condition(x: &TriangleSquareComplex) -> Check {
    let g = &x.graph;
    let prism = PatternKind::TriangularPrism.graph().expect("prism");
    for &t in &x.triangles {
        for k in 0..3 {
            let (p, q, w) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            for (p, q) in [(p, q), (q, p)] {
                for &r in g.neighbors(q) {
                    if r == p || r == w || g.has_edge(r, p) || g.has_edge(r, w) {
                        continue;
                    }
                    for s in g.common_neighbors(p, r) {
                        if s == q || g.has_edge(s, q) || g.has_edge(s, w) || !x.has_square([p, q, r, s]) {
                            continue;
                        }
                        // prism ids: (i, b) = 2 i + b
                        let ok = g.common_neighbors(r, s).into_iter().any(|w2| {
                            g.has_edge(w2, w)
                                && crate::pattern::is_induced_copy(g, prism, &[p, s, q, r, w, w2])
                                && x.has_square([q, r, w2, w])
                                && x.has_square([p, s, w2, w])
                                && x.has_triangle([s, r, w2])
                        });
                        if !ok {
                            return Check::fail(vec![p, q, r, s, w]);
                        }
                    }
                }
            }
        }
    }
    Check::pass()
}

/// Induced `Q_k` copies as vertex tuples indexed by bit strings.
fn induced_cubes(g: &Graph, k: usize, budget: usize) -> Result<Vec<Vec<Vertex>>> {
    let q = hypercube(k)?;
    PatternSearch::new(g, &q).node_budget(budget).run()
}

pub const DEFAULT_CONDITION_BUDGET: usize = 2_000_000;

/// Bounded hypercube condition for `2 <= k <= kmax`: three induced `k`-cubes
/// pairwise meeting in `(k-1)`-cubes and jointly in a `(k-2)`-cube must lie
/// in an induced `(k+1)`-cube. The witness lists the three cubes.
pub fn hypercube_condition_bounded(g: &Graph, kmax: usize, budget: usize) -> Result<Check> {
    if kmax < 2 {
        return Err(Error::InvalidParameter {
            name: "kmax",
            value: kmax.to_string(),
            reason: "the hypercube condition starts at k = 2",
        });
    }
    let mut next = induced_cubes(g, 2, budget)?;
    for k in 2..=kmax {
        let cubes: Vec<BTreeSet<Vertex>> = next.iter().map(|c| c.iter().copied().collect()).collect();
        next = induced_cubes(g, k + 1, budget)?;
        let bigger: Vec<BTreeSet<Vertex>> = next.iter().map(|c| c.iter().copied().collect()).collect();
        let face = 1usize << (k - 1);
        let corner = 1usize << (k - 2);
        let mut work = 0usize;
        for (i, a) in cubes.iter().enumerate() {
            for (j, b) in cubes.iter().enumerate().skip(i + 1) {
                let ab: BTreeSet<Vertex> = a.intersection(b).copied().collect();
                if ab.len() != face || !is_subcube(g, &ab, k - 1) {
                    continue;
                }
                for c in &cubes[j + 1..] {
                    work += 1;
                    if work > budget {
                        return Err(Error::BudgetExceeded {
                            what: "cube triples",
                            budget,
                            reached: work,
                        });
                    }
                    let ac: BTreeSet<Vertex> = a.intersection(c).copied().collect();
                    let bc: BTreeSet<Vertex> = b.intersection(c).copied().collect();
                    let abc: BTreeSet<Vertex> = ab.intersection(c).copied().collect();
                    if ac.len() != face || bc.len() != face || abc.len() != corner {
                        continue;
                    }
                    if !is_subcube(g, &ac, k - 1) || !is_subcube(g, &bc, k - 1) || !is_subcube(g, &abc, k - 2) {
                        continue;
                    }
                    let union: BTreeSet<Vertex> = a.union(b).chain(c.iter()).copied().collect();
                    if !bigger.iter().any(|big| union.is_subset(big)) {
                        return Ok(Check::fail(a.iter().chain(b).chain(c).copied().collect()));
                    }
                }
            }
        }
    }
    Ok(Check::pass())
}

fn is_subcube(g: &Graph, set: &BTreeSet<Vertex>, k: usize) -> bool {
    let members: Vec<Vertex> = set.iter().copied().collect();
    let sub = g.induced_subgraph(&members);
    let q = hypercube(k).expect("cube");
    crate::iso::is_isomorphic(&sub, &q)
}

/// Maximal cliques (Bron-Kerbosch with pivoting), each sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    fn expand(g: &Graph, r: &mut Vec<Vertex>, p: Vec<Vertex>, mut x: Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
            .expect("nonempty");
        let mut p = p;
        let candidates: Vec<Vertex> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            expand(g, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(g, &mut Vec::new(), g.vertices().collect(), Vec::new(), &mut out);
    out.sort();
    out
}

/// Bounded hyperhouse condition: every maximal clique of size at least
/// three meeting an induced `k`-cube (`2 <= k <= kmax`) in exactly an edge
/// must lie with it in an induced `K_m x Q_(k-1)`. The witness is the
/// clique followed by the cube.
pub fn hyperhouse_condition_bounded(g: &Graph, kmax: usize, budget: usize) -> Result<Check> {
    let cliques: Vec<Vec<Vertex>> = maximal_cliques(g).into_iter().filter(|c| c.len() >= 3).collect();
    if cliques.is_empty() {
        return Ok(Check::pass());
    }
    for k in 2..=kmax {
        let cubes = induced_cubes(g, k, budget)?;
        let sub = hypercube(k - 1)?;
        let half = sub.vertex_count();
        for cube in &cubes {
            for clique in &cliques {
                let shared: Vec<usize> = (0..cube.len()).filter(|&b| clique.contains(&cube[b])).collect();
                if shared.len() != 2 {
                    continue;
                }
                let (bp, bq) = (shared[0], shared[1]);
                let dir = bp ^ bq;
                debug_assert!(dir.is_power_of_two());
                let pattern = complete(clique.len())?.cartesian_product(&sub);
                let spread = |y: usize| -> usize {
                    // insert a zero at the direction bit
                    let low = y & (dir - 1);
                    let high = (y & !(dir - 1)) << 1;
                    high | low
                };
                let (p, q) = (cube[bp], cube[bq]);
                let mut search = PatternSearch::new(g, &pattern).node_budget(budget);
                for y in 0..half {
                    search = search.fix(y, cube[bp ^ spread(y)]);
                    search = search.fix(half + y, cube[bq ^ spread(y)]);
                }
                let others: Vec<Vertex> = clique.iter().copied().filter(|&v| v != p && v != q).collect();
                for (i, &v) in others.iter().enumerate() {
                    search = search.fix((i + 2) * half, v);
                }
                if search.first_only().run()?.is_empty() {
                    return Ok(Check::fail(clique.iter().chain(cube).copied().collect()));
                }
            }
        }
    }
    Ok(Check::pass())
}

/// Answer of the simple-connectivity decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimpleConnectivity {
    /// The cover closed up with one vertex per base vertex.
    Yes,
    /// At this radius the cover ball outgrew the base ball.
    No {
        radius: usize,
        cover_ball: usize,
        base_ball: usize,
    },
    /// The cover outgrew the vertex budget first.
    BudgetExceeded { reached: usize },
}

/// Decides simple connectivity by unfolding the universal cover from vertex
/// `0`. If the complex is simply connected, every cover ball has the size of
/// the base ball of the same radius; otherwise some cover ball is larger.
pub fn is_simply_connected(x: &TriangleSquareComplex, vertex_budget: usize) -> Result<SimpleConnectivity> {
    x.graph.require_connected()?;
    if x.graph.vertex_count() == 0 {
        return Ok(SimpleConnectivity::Yes);
    }
    let mut state = CoverState::init(x, 0)?;
    let base_row = x.graph.distance_row(0);
    loop {
        state.verify_level().map_err(Error::Cover)?;
        let r = state.level();
        let base_ball = base_row.iter().filter(|&&d| d as usize <= r).count();
        let cover_ball = state.vertex_count();
        if cover_ball > base_ball {
            return Ok(SimpleConnectivity::No {
                radius: r,
                cover_ball,
                base_ball,
            });
        }
        if cover_ball > vertex_budget {
            return Ok(SimpleConnectivity::BudgetExceeded { reached: cover_ball });
        }
        if !state.extend()? {
            return Ok(SimpleConnectivity::Yes);
        }
    }
}

/// Default vertex budget for cover unfolding.
pub const DEFAULT_VERTEX_BUDGET: usize = CoverLimit::DEFAULT_VERTEX_BUDGET;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn house_complex() -> TriangleSquareComplex {
        flag_complex(PatternKind::House.graph().unwrap())
    }

    #[test]
    fn flag_complex_cell_counts() {
        let c6 = flag_complex(&cycle(6).unwrap());
        assert_eq!((c6.triangles().len(), c6.squares().len()), (0, 0));
        let prism = flag_complex(&hamming(&[3, 2]).unwrap());
        assert_eq!((prism.triangles().len(), prism.squares().len()), (2, 3));
        let t = flag_complex(&torus(5, 5).unwrap());
        assert_eq!((t.triangles().len(), t.squares().len()), (0, 25));
    }

    #[test]
    fn flagness() {
        let q3 = hypercube(3).unwrap();
        assert!(is_flag(&flag_complex(&q3)));
        let mut squares: Vec<Square> = all_squares(&q3).into_iter().collect();
        let dropped = squares.pop().unwrap();
        let x = TriangleSquareComplex::new(q3, [], squares).unwrap();
        assert_eq!(missing_flag_cell(&x), Some(MissingCell::Square(dropped)));
        let c4 = cycle(4).unwrap();
        let x = TriangleSquareComplex::new(c4, [], [[0, 1, 2, 3]]).unwrap();
        assert!(is_flag(&x));
    }

    #[test]
    fn invalid_cells_are_rejected() {
        let c4 = cycle(4).unwrap();
        assert!(TriangleSquareComplex::new(c4.clone(), [[0, 1, 2]], []).is_err());
        assert!(TriangleSquareComplex::new(c4, [], [[0, 2, 1, 3]]).is_err());
    }

    #[test]
    fn squares_are_canonical() {
        assert_eq!(canonical_square([2, 3, 0, 1]), [0, 1, 2, 3]);
        assert_eq!(canonical_square([3, 2, 1, 0]), [0, 1, 2, 3]);
        assert_eq!(canonical_square([1, 0, 3, 2]), [0, 1, 2, 3]);
    }

    #[test]
    fn cube_condition_examples() {
        assert!(cube_condition(&flag_complex(&hypercube(3).unwrap())).holds);
        let cw3 = flag_complex(PatternKind::Cogwheel3.graph().unwrap());
        let c = cube_condition(&cw3);
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap().len(), 7);
        assert!(cube_condition(&flag_complex(&torus(5, 5).unwrap())).holds);
    }

    #[test]
    fn house_condition_examples() {
        assert!(house_condition(&flag_complex(&hamming(&[3, 2]).unwrap())).holds);
        assert!(!house_condition(&house_complex()).holds);
        assert!(house_condition(&flag_complex(&hypercube(3).unwrap())).holds);
    }

    #[test]
    fn wheel_conditions() {
        assert!(!w4_w5hat_condition(&flag_complex(&wheel(4).unwrap())).unwrap().holds);
        let ew5 = flag_complex(PatternKind::ExtendedW5.graph().unwrap());
        assert!(!w4_w5hat_condition(&ew5).unwrap().holds);
        assert!(w4_w5hat_condition(&flag_complex(&hypercube(3).unwrap())).unwrap().holds);
        // an apex over the extended wheel satisfies the condition
        let mut edges: Vec<_> = PatternKind::ExtendedW5.graph().unwrap().edges().collect();
        edges.extend((0..7).map(|v| (v, 7)));
        let apexed = Graph::from_edges(8, edges).unwrap();
        assert!(w4_w5hat_condition(&flag_complex(&apexed)).unwrap().holds);
    }

    #[test]
    fn bad_cell_intersections() {
        let k23 = flag_complex(&complete_bipartite(2, 3).unwrap());
        assert!(cell_intersection_violation(&k23).is_some());
        let w4m = flag_complex(&almost_wheel(4).unwrap());
        assert!(cell_intersection_violation(&w4m).is_some());
        assert!(cell_intersection_violation(&flag_complex(&hypercube(3).unwrap())).is_none());
    }

    #[test]
    fn bounded_prism_conditions() {
        let q4 = hypercube(4).unwrap();
        assert!(
            hypercube_condition_bounded(&q4, 3, DEFAULT_CONDITION_BUDGET)
                .unwrap()
                .holds
        );
        let cw3 = PatternKind::Cogwheel3.graph().unwrap();
        assert!(
            !hypercube_condition_bounded(cw3, 2, DEFAULT_CONDITION_BUDGET)
                .unwrap()
                .holds
        );
        let k3q2 = complete(3).unwrap().cartesian_product(&hypercube(2).unwrap());
        assert!(
            hyperhouse_condition_bounded(&k3q2, 3, DEFAULT_CONDITION_BUDGET)
                .unwrap()
                .holds
        );
        let house = PatternKind::House.graph().unwrap();
        assert!(
            !hyperhouse_condition_bounded(house, 3, DEFAULT_CONDITION_BUDGET)
                .unwrap()
                .holds
        );
        assert!(
            hyperhouse_condition_bounded(&path(5).unwrap(), 3, DEFAULT_CONDITION_BUDGET)
                .unwrap()
                .holds
        );
        assert!(hypercube_condition_bounded(&q4, 3, 10).is_err());
    }

    #[test]
    fn maximal_cliques_of_small_graphs() {
        assert_eq!(maximal_cliques(&wheel(4).unwrap()).len(), 4);
        assert_eq!(maximal_cliques(&complete(4).unwrap()), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn simple_connectivity_examples() {
        let q3 = flag_complex(&hypercube(3).unwrap());
        assert_eq!(is_simply_connected(&q3, 1000).unwrap(), SimpleConnectivity::Yes);
        let t = flag_complex(&torus(5, 5).unwrap());
        assert_eq!(
            is_simply_connected(&t, 1000).unwrap(),
            SimpleConnectivity::No {
                radius: 3,
                cover_ball: 25,
                base_ball: 21
            }
        );
        let c6 = flag_complex(&cycle(6).unwrap());
        assert_eq!(
            is_simply_connected(&c6, 1000).unwrap(),
            SimpleConnectivity::No {
                radius: 3,
                cover_ball: 7,
                base_ball: 6
            }
        );
        assert!(is_simply_connected(&house_complex(), 1000).is_err());
    }
}
