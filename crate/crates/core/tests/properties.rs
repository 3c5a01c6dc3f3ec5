mod common;

use common::{
    decomposable_d1_oracle, degeneracy_oracle, has_directed_cycle, naive_first_match, random_extension_case,
    stacked_triangulation,
};
use dhdecomp::degeneracy::{orientation_from_order, PeelingOrder};
use dhdecomp::discharge::discharge;
use dhdecomp::embedding::{delete_vertices, face_trace};
use dhdecomp::format::{emit_egf, parse_egf, Labels};
use dhdecomp::generators::random_rotation;
use dhdecomp::patterns::{match_pattern, DegreeConstraint, Pattern};
use dhdecomp::reductions::{extend_decomposition, rule_catalog, solve_constructive, SolveError, SolveOptions};
use dhdecomp::{
    degeneracy, euler_characteristic, is_d_degenerate, solve_exact, verify_decomposition, verify_orientation, Graph,
    Vertex,
};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = (n * n.saturating_sub(1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn constraint_strategy() -> impl Strategy<Value = DegreeConstraint> {
    prop_oneof![
        Just(DegreeConstraint::Any),
        (0usize..5).prop_map(DegreeConstraint::Exact),
        (0usize..5).prop_map(DegreeConstraint::AtLeast),
        (0usize..5).prop_map(DegreeConstraint::AtMost),
    ]
}

const LABELS: [&str; 4] = ["p0", "p1", "p2", "p3"];

/// Connected patterns on up to four vertices: a random spanning tree plus
/// random extra edges.
fn pattern_strategy() -> impl Strategy<Value = Pattern> {
    (1usize..=4).prop_flat_map(|k| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), k.saturating_sub(1)),
            proptest::collection::vec(any::<bool>(), k * (k - 1) / 2),
            proptest::collection::vec(constraint_strategy(), k),
        )
            .prop_map(move |(parents, extra, constraints)| {
                let mut skeleton = Graph::with_vertices(k as u32);
                for (i, p) in parents.iter().enumerate() {
                    let child = i + 1;
                    skeleton.add_edge(Vertex(p.index(child) as u32), Vertex(child as u32)).unwrap();
                }
                let mut bit = 0;
                for a in 0..k {
                    for b in a + 1..k {
                        if extra[bit] && !skeleton.has_edge(Vertex(a as u32), Vertex(b as u32)) {
                            skeleton.add_edge(Vertex(a as u32), Vertex(b as u32)).unwrap();
                        }
                        bit += 1;
                    }
                }
                Pattern { name: "random", labels: LABELS[..k].to_vec(), skeleton, constraints }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matcher_agrees_with_injection_oracle(host in graph_strategy(8), p in pattern_strategy()) {
        let found = match_pattern(&host, &p).map(|w| w.mapping);
        prop_assert_eq!(found, naive_first_match(&host, &p));
    }

    #[test]
    fn degeneracy_matches_subset_oracle(g in graph_strategy(7)) {
        let (k, order) = degeneracy(&g);
        prop_assert_eq!(k, degeneracy_oracle(&g));
        prop_assert_eq!(order.back_degree(&g), k);
        for d in 0..=4 {
            prop_assert_eq!(is_d_degenerate(&g, d), k <= d);
        }
    }

    #[test]
    fn orientation_verifier_agrees_with_cycle_search(
        g in graph_strategy(7),
        perm in any::<prop::sample::Index>(),
        flips in proptest::collection::vec(any::<bool>(), 21),
    ) {
        let mut order: Vec<Vertex> = g.vertices().collect();
        let r = perm.index(order.len().max(1));
        order.rotate_left(r);
        let acyclic = orientation_from_order(&g, &PeelingOrder { order });
        let mut arcs: Vec<_> = acyclic.arcs().collect();
        for (a, flip) in arcs.iter_mut().zip(&flips) {
            if *flip {
                *a = dhdecomp::Arc::new(a.head, a.tail);
            }
        }
        let o = dhdecomp::Orientation::from_arcs(arcs).unwrap();
        let d = o.max_out_degree();
        prop_assert_eq!(verify_orientation(&g, &o, d).unwrap(), !has_directed_cycle(&o));
        prop_assert_eq!(o.is_acyclic(), !has_directed_cycle(&o));
    }

    #[test]
    fn exact_solver_is_monotone(g in graph_strategy(6)) {
        let found = |d: usize, h: usize| solve_exact(&g, d, h).is_some();
        for d in 0..=3 {
            for h in 0..=2 {
                if found(d, h) {
                    prop_assert!(found(d + 1, h) && found(d, h + 1), "d={} h={}", d, h);
                }
            }
        }
        if let Some(dec) = solve_exact(&g, 2, 1) {
            prop_assert!(verify_decomposition(&g, &dec).unwrap().is_valid());
        }
    }

    #[test]
    fn exact_solver_matches_matching_oracle(g in graph_strategy(6)) {
        for d in 1..=2 {
            prop_assert_eq!(solve_exact(&g, d, 1).is_some(), decomposable_d1_oracle(&g, d));
        }
    }

    #[test]
    fn egf_round_trips(n in 1usize..30, deg in 0.0f64..5.0, seed in any::<u64>()) {
        let eg = random_rotation(n, deg, seed).unwrap();
        let labels = Labels::numeric(n);
        let (back, back_labels) = parse_egf(&emit_egf(&eg, &labels)).unwrap();
        prop_assert_eq!(back, eg);
        prop_assert_eq!(back_labels, labels);
    }

    #[test]
    fn faces_partition_the_darts(n in 1usize..40, deg in 0.0f64..6.0, seed in any::<u64>()) {
        let eg = random_rotation(n, deg, seed).unwrap();
        let faces = face_trace(&eg);
        let total: usize = faces.iter().map(|f| f.size()).sum();
        prop_assert_eq!(total, 2 * eg.graph().edge_count());
        let removed = eg.graph().vertices().filter(|v| v.0 % 3 == 0).collect();
        let rest = delete_vertices(&eg, &removed).unwrap();
        let total: usize = face_trace(&rest).iter().map(|f| f.size()).sum();
        prop_assert_eq!(total, 2 * rest.graph().edge_count());
    }

    #[test]
    fn discharging_conserves_charge(n in 1usize..40, deg in 0.0f64..6.0, seed in any::<u64>()) {
        let eg = random_rotation(n, deg, seed).unwrap();
        let ledger = discharge(&eg);
        prop_assert_eq!(ledger.total(), ledger.initial_total());
        prop_assert_eq!(ledger.replay(), ledger.charge.clone());
        prop_assert!(ledger.log.iter().all(|t| (t.amount * Rational64::from_integer(6)).is_integer()));
        let has_edges = eg.graph().edge_count() > 0;
        if let (Ok(chi), true) = (euler_characteristic(&eg), has_edges) {
            prop_assert_eq!(ledger.initial_total(), Rational64::from_integer(-4 * chi));
        }
    }

    #[test]
    fn recipes_extend_random_exteriors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rule in rule_catalog() {
            for recipe in 0..rule.recipes.len() {
                let case = random_extension_case(&mut rng, rule.id, recipe);
                let dec = extend_decomposition(&case.host, &case.matched, &case.exterior).unwrap();
                prop_assert!(verify_decomposition(case.host.graph(), &dec).unwrap().is_valid());
            }
        }
    }

    #[test]
    fn constructive_solver_agrees_with_exact(n in 1usize..=10, deg in 1.0f64..3.5, seed in any::<u64>()) {
        let eg = random_rotation(n, deg, seed).unwrap();
        let exact = solve_exact(eg.graph(), 2, 1);
        match solve_constructive(&eg, SolveOptions::default()) {
            Ok(out) => {
                prop_assert!(verify_decomposition(eg.graph(), &out.decomposition).unwrap().is_valid());
                prop_assert!(exact.is_some());
            }
            Err(SolveError::NotDecomposable(_)) => prop_assert!(exact.is_none()),
            Err(SolveError::Forbidden(w)) => prop_assert!(w.witness.is_valid(eg.graph(), &dhdecomp::patterns::forbidden_catalog()[w.index])),
            Err(SolveError::Stuck(rest)) => prop_assert!(rest.graph().edge_count() > 20),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn planar_triangulations_are_five_degenerate(n in 3usize..60, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eg = stacked_triangulation(&mut rng, n);
        prop_assert_eq!(euler_characteristic(&eg), Ok(2));
        prop_assert_eq!(eg.graph().edge_count(), 3 * n - 3 - 3);
        prop_assert!(face_trace(&eg).iter().all(|f| f.size() == 3));
        prop_assert!(degeneracy(eg.graph()).0 <= 5);
        prop_assert_eq!(discharge(&eg).total(), Rational64::from_integer(-8));
    }
}
