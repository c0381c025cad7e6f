mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use bucolic::complex::flag_complex;
use bucolic::conditions::is_weakly_modular;
use bucolic::corpus::{self, random_bucolic, random_connected, random_weakly_bridged};
use bucolic::cover::{unfold, CoverLimit};
use bucolic::hulls::{convex_hull, gated_hull, is_convex, is_gated};
use bucolic::iso::is_isomorphic;
use bucolic::mooring::{dismantling_order, is_dismantlable, lexbfs_order};
use bucolic::pattern::find_induced;
use bucolic::recognition::{classify, Class};
use bucolic::{Graph, PatternKind};
use common::*;

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.0..0.7f64).prop_map(|(n, seed, p)| random_connected(&mut corpus::rng(seed), n, p))
}

fn bucolic(max_n: usize) -> impl Strategy<Value = Graph> {
    any::<u64>().prop_map(move |seed| random_bucolic(&mut corpus::rng(seed), max_n))
}

fn with_subset(g: Graph) -> impl Strategy<Value = (Graph, BTreeSet<usize>)> {
    let n = g.vertex_count();
    proptest::collection::btree_set(0..n, 1..=n.min(4)).prop_map(move |s| (g.clone(), s))
}

fn with_permutation(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.vertex_count();
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |p| (g.clone(), p))
}

/// Whether some cycle of length at least 4 is isometric, by walking all
/// simple paths from each least vertex.
fn has_long_isometric_cycle(g: &Graph) -> bool {
    let d = apsp(g);
    let n = g.vertex_count();
    fn walk(g: &Graph, d: &[Vec<usize>], path: &mut Vec<usize>, on: &mut Vec<bool>) -> bool {
        let start = path[0];
        let last = *path.last().unwrap();
        for &y in g.neighbors(last) {
            if y == start && path.len() >= 4 {
                let k = path.len();
                let isometric = (0..k).all(|i| {
                    (0..k).all(|j| {
                        let gap = i.abs_diff(j);
                        d[path[i]][path[j]] == gap.min(k - gap)
                    })
                });
                if isometric {
                    return true;
                }
            }
            if y > start && !on[y] {
                on[y] = true;
                path.push(y);
                if walk(g, d, path, on) {
                    return true;
                }
                path.pop();
                on[y] = false;
            }
        }
        false
    }
    (0..n).any(|s| {
        let mut on = vec![false; n];
        on[s] = true;
        walk(g, &d, &mut vec![s], &mut on)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distances_form_a_metric(g in connected(9)) {
        let d = apsp(&g);
        for u in g.vertices() {
            let row = g.distance_row(u);
            for v in g.vertices() {
                prop_assert_eq!(row[v] as usize, d[u][v]);
                prop_assert_eq!(d[u][v], d[v][u]);
                prop_assert_eq!(d[u][v] == 0, u == v);
                for x in g.vertices() {
                    prop_assert!(d[u][v] <= d[u][x] + d[x][v]);
                }
            }
        }
    }

    #[test]
    fn intervals_are_symmetric(g in connected(9)) {
        for u in g.vertices() {
            for v in g.vertices() {
                let i = g.interval(u, v).unwrap();
                prop_assert_eq!(&i, &g.interval(v, u).unwrap());
                prop_assert!(i.contains(&u) && i.contains(&v));
            }
        }
    }

    #[test]
    fn induced_search_matches_brute_force(g in connected(8)) {
        for (kind, pattern) in [
            (PatternKind::C4, c(4)),
            (PatternKind::C5, c(5)),
            (PatternKind::K23, k23()),
            (PatternKind::W4, w(4)),
            (PatternKind::WkMinus(4), w_minus(4)),
        ] {
            let found = find_induced(&g, kind).unwrap();
            prop_assert_eq!(found.len(), naive_induced_count(&g, &pattern));
            let distinct: BTreeSet<BTreeSet<usize>> = found.iter().map(|t| t.iter().copied().collect()).collect();
            prop_assert_eq!(distinct.len(), found.len());
            for t in &found {
                prop_assert!(naive_has_induced(&g.induced_subgraph(t), &pattern));
            }
        }
    }

    #[test]
    fn weak_modularity_is_relabeling_invariant((g, p) in connected(9).prop_flat_map(with_permutation)) {
        let h = g.permuted(&p).unwrap();
        prop_assert_eq!(is_weakly_modular(&g).unwrap(), is_weakly_modular(&h).unwrap());
        prop_assert_eq!(is_weakly_modular(&g).unwrap(), naive_weakly_modular(&g));
    }

    #[test]
    fn product_distances_add(a in connected(5), b in connected(5)) {
        let p = a.cartesian_product(&b);
        let (da, db) = (apsp(&a), apsp(&b));
        let nb = b.vertex_count();
        for u in p.vertices() {
            let row = p.distance_row(u);
            for v in p.vertices() {
                prop_assert_eq!(row[v] as usize, da[u / nb][v / nb] + db[u % nb][v % nb]);
            }
        }
    }

    #[test]
    fn convex_hulls_are_closures((g, s) in connected(9).prop_flat_map(with_subset), extra in any::<prop::sample::Index>()) {
        let h = convex_hull(&g, &s).unwrap();
        prop_assert!(h.replays(&s));
        prop_assert_eq!(&h.vertices, &naive_convex_hull(&g, &s));
        prop_assert_eq!(&convex_hull(&g, &h.vertices).unwrap().vertices, &h.vertices);
        let mut bigger = s.clone();
        bigger.insert(extra.index(g.vertex_count()));
        prop_assert!(h.vertices.is_subset(&convex_hull(&g, &bigger).unwrap().vertices));
    }

    #[test]
    fn gated_sets_are_convex((g, s) in bucolic(10).prop_flat_map(with_subset)) {
        let h = gated_hull(&g, &s).unwrap();
        prop_assert!(s.is_subset(&h.vertices));
        prop_assert!(naive_gated(&g, &h.vertices));
        prop_assert!(is_convex(&g, &h.vertices).unwrap());
        prop_assert_eq!(is_gated(&g, &s).unwrap(), naive_gated(&g, &s));
        if is_gated(&g, &s).unwrap() {
            prop_assert_eq!(naive_convex_hull(&g, &s), s);
        }
    }

    #[test]
    fn classes_nest(g in connected(8)) {
        let r = classify(&g, false).unwrap();
        let implies = |a: Class, b: Class| !r.flag(a) || r.flag(b);
        prop_assert!(implies(Class::Bridged, Class::WeaklyBridged));
        prop_assert!(implies(Class::WeaklyBridged, Class::Bucolic));
        prop_assert!(implies(Class::StronglyBucolic, Class::Bucolic));
        prop_assert!(implies(Class::Bucolic, Class::PreMedian));
        prop_assert_eq!(r.flag(Class::Bucolic), naive_bucolic(&g));
        prop_assert_eq!(r.flag(Class::WeaklyBridged), naive_weakly_bridged(&g));
    }

    #[test]
    fn bridged_means_no_long_isometric_cycle(g in connected(7)) {
        let r = classify(&g, false).unwrap();
        prop_assert_eq!(r.flag(Class::Bridged), !has_long_isometric_cycle(&g));
    }

    #[test]
    fn cover_projects_homomorphically(g in bucolic(9), radius in 1usize..4) {
        let u = unfold(&flag_complex(&g), 0, CoverLimit::Radius(radius)).unwrap();
        let cover = u.state.graph();
        for (a, b) in cover.edges() {
            prop_assert!(g.has_edge(u.state.image(a), u.state.image(b)));
        }
        for v in cover.vertices() {
            prop_assert_eq!(cover.distance(0, v), Some(u.state.level_of(v)));
        }
    }

    #[test]
    fn cover_of_bucolic_graph_is_the_graph(g in bucolic(9), base in any::<prop::sample::Index>()) {
        let v = base.index(g.vertex_count());
        let u = unfold(&flag_complex(&g), v, CoverLimit::default()).unwrap();
        prop_assert!(u.stabilized);
        prop_assert!(is_isomorphic(&u.state.graph(), &g));
    }

    #[test]
    fn lexbfs_is_deterministic((g, p) in connected(9).prop_flat_map(with_permutation)) {
        let order = lexbfs_order(&g, 0).unwrap();
        prop_assert_eq!(&order, &lexbfs_order(&g, 0).unwrap());
        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, g.vertices().collect::<Vec<_>>());
        let d = apsp(&g);
        prop_assert!(order.windows(2).all(|w| d[0][w[0]] <= d[0][w[1]]));
        let h = g.permuted(&p).unwrap();
        prop_assert_eq!(lexbfs_order(&h, p[0]).unwrap().len(), order.len());
    }

    #[test]
    fn strong_products_of_dismantlable_graphs(seed in any::<u64>()) {
        let mut r = corpus::rng(seed);
        let a = random_weakly_bridged(&mut r, 6);
        let b = corpus::random_tree(&mut r, 4);
        prop_assert!(is_dismantlable(&a));
        prop_assert!(is_dismantlable(&b));
        let s = a.strong_product(&b);
        let order = dismantling_order(&s);
        prop_assert!(order.is_some());
        prop_assert_eq!(order.unwrap().len(), s.vertex_count());
    }
}
