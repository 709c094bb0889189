use std::sync::Arc;

use proptest::prelude::*;
use twistlab::curves::{
    build_geometric_presentation, dual_graph, graph_connected_to, verify_geometric_presentation, BuildOptions,
    CurveSystem,
};
use twistlab::presentation::{SurfaceGroup, Word};
use twistlab::surface::{intersection_pairing, Curve, SurfaceData};

fn build(g: usize, rels: &[&str], extra: bool) -> twistlab::curves::GeometricPresentation {
    let s = SurfaceGroup::new(g).unwrap();
    let words: Vec<Word> = rels.iter().map(|r| Word::parse(r, &s.generator_names()).unwrap()).collect();
    build_geometric_presentation(s, &words, BuildOptions { extra_handle: extra }).unwrap()
}

#[test]
fn embedded_loop_needs_no_handles() {
    let gp = build(1, &["b1"], false);
    assert_eq!(gp.genus, 1);
    assert_eq!(gp.system.len(), 1);
    assert!(verify_geometric_presentation(&gp).passes());
}

#[test]
fn two_generators_cross_once() {
    let gp = build(1, &["a1", "b1"], false);
    assert_eq!(gp.genus, 2);
    assert_eq!(gp.crossings.len(), 1);
    let names: Vec<&str> = gp.system.curves().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["c1", "c2", "a2", "b2"]);
    // c1 -- b2 -- a2 -- c2, relator curves disjoint
    let t = gp.system.intersections();
    assert_eq!(t[0][1], 0);
    assert_eq!((t[2][3], t[0][3], t[1][2]), (1, 1, 1));
    let rep = verify_geometric_presentation(&gp);
    assert!(rep.passes());
    assert!(rep.target_abelianization.is_trivial());
}

#[test]
fn square_of_a_generator() {
    let gp = build(1, &["a1^2"], false);
    assert!(!gp.crossings.is_empty());
    assert_eq!(gp.genus, 1 + gp.crossings.len());
    let rep = verify_geometric_presentation(&gp);
    assert!(rep.passes());
    assert_eq!(rep.target_abelianization.to_string(), "Z + Z/2");
}

#[test]
fn disconnected_relators_get_finger_moves() {
    let gp = build(2, &["a1", "a2"], false);
    assert!(gp.crossings.iter().any(|c| c.finger));
    assert!(verify_geometric_presentation(&gp).passes());
}

#[test]
fn extra_handle_for_null_homologous_relators() {
    let gp = build(2, &["a1 b1 a1^-1 b1^-1"], true);
    assert!(gp.system.curves().iter().any(|c| !c.separating));
    assert!(verify_geometric_presentation(&gp).passes());
}

#[test]
fn empty_relators_are_rejected() {
    let s = SurfaceGroup::new(1).unwrap();
    assert!(build_geometric_presentation(s, &[], BuildOptions::default()).is_err());
    assert!(build_geometric_presentation(s, &[Word::new(vec![1, -1])], BuildOptions::default()).is_err());
}

#[test]
fn verifier_flags_bad_systems() {
    let mut gp = build(1, &["a1", "b1"], false);
    let curves = gp.system.curves().to_vec();
    let mut table = gp.system.intersections().to_vec();
    table[2][3] = 2;
    table[3][2] = 2;
    gp.system = CurveSystem::new(gp.system.surface(), curves.clone(), table).unwrap();
    assert!(!verify_geometric_presentation(&gp).at_most_one_point);
    let zero = vec![vec![0; 4]; 4];
    gp.system = CurveSystem::new(gp.system.surface(), curves, zero).unwrap_or_else(|_| {
        // counts below the algebraic ones are rejected outright; fall back to disjoint copies
        let s = SurfaceData::closed(2);
        let c: Vec<Arc<Curve>> = ["x", "y"].iter().map(|n| Arc::new(Curve::from_class(*n, vec![1, 0, 0, 0]))).collect();
        CurveSystem::new(s, c, vec![vec![0, 0], vec![0, 0]]).unwrap()
    });
    assert!(!verify_geometric_presentation(&gp).connected);
}

fn curve(name: &str, class: Vec<i64>) -> Arc<Curve> {
    Arc::new(Curve::from_class(name, class))
}

#[test]
fn graph_connectivity_is_monotone() {
    let s = SurfaceData::closed(2);
    let sys = CurveSystem::new(
        s,
        vec![
            curve("l", vec![1, 0, 0, 0]),
            curve("v1", vec![0, 1, 0, 0]),
            curve("v2", vec![0, 0, 1, 0]),
            curve("v3", vec![0, 0, 0, 1]),
        ],
        vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]],
    )
    .unwrap();
    assert!(graph_connected_to(&sys, &[0], &[1]).connected);
    assert!(graph_connected_to(&sys, &[0], &[1, 2]).connected);
    assert!(!graph_connected_to(&sys, &[0], &[2]).connected);
    assert!(graph_connected_to(&sys, &[0, 2], &[1, 3]).connected);
    assert_eq!(dual_graph(&sys).components().len(), 2);
}

fn relator(g: usize) -> impl Strategy<Value = Word> {
    let n = 2 * g as i32;
    proptest::collection::vec((1..=n, any::<bool>()), 1..5)
        .prop_map(|v| Word::new(v.into_iter().map(|(x, s)| if s { x } else { -x }).collect()).cyclic_reduce())
        .prop_filter("nontrivial", |w| !w.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn builder_invariants(g in 1usize..3, rels in proptest::collection::vec(relator(2), 1..4)) {
        let s = SurfaceGroup::new(2).unwrap();
        let _ = g;
        let gp = build_geometric_presentation(s, &rels, BuildOptions::default()).unwrap();
        let rep = verify_geometric_presentation(&gp);
        prop_assert!(rep.passes(), "{:?}", rep);
    }

    #[test]
    fn crossing_signs_sum_to_the_intersection_number(r in relator(2), s in relator(2)) {
        let sg = SurfaceGroup::new(2).unwrap();
        let gp = build_geometric_presentation(sg, &[r.clone(), s.clone()], BuildOptions::default()).unwrap();
        let total: i64 = gp
            .crossings
            .iter()
            .filter(|c| c.first.0 == 0 && c.second.0 == 1)
            .map(|c| i64::from(c.sign))
            .sum();
        let expected = intersection_pairing(&r.exponent_vector(4), &s.exponent_vector(4)).unwrap();
        prop_assert_eq!(total, expected);
    }
}
