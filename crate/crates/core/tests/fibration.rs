use std::sync::Arc;

use num_rational::Ratio;
use proptest::prelude::*;
use twistlab::exact::{rank_over_rationals, IntMatrix};
use twistlab::fibration::{
    check_relation, cyclic_word, euler_characteristic, fiber_sum, h1_total_space, hodge_pairing, invariant_report,
    liu_bound, mu, pi1_presentation, signature, torelli_certificate, verify_higher_base, Factorization,
    FibrationError, Tagged, TorelliCertificate,
};
use twistlab::presentation::{abelianize, SurfaceGroup, Word};
use twistlab::surface::{Curve, SurfaceData};
use twistlab::words::TwistWord;

fn curve(name: &str, word: &str, g: usize) -> Arc<Curve> {
    let names = SurfaceGroup::new(g).unwrap().generator_names();
    Arc::new(Curve::from_word(name, Word::parse(word, &names).unwrap(), g))
}

fn e1() -> Factorization {
    let (a, b) = (curve("a", "a1", 1), curve("b", "b1", 1));
    let w = cyclic_word(SurfaceData::closed(1), &[Arc::clone(&a), Arc::clone(&b)], 6);
    Factorization::over_sphere(1, vec![a, b], w).unwrap()
}

/// A chain `c₁, …, c₅` on the genus-two surface.
fn chain() -> Vec<Arc<Curve>> {
    vec![
        curve("c1", "a1", 2),
        curve("c2", "b1", 2),
        curve("c3", "a1 a2^-1", 2),
        curve("c4", "b2", 2),
        curve("c5", "a2", 2),
    ]
}

fn separating(n: usize) -> Factorization {
    let s = curve("s", "a1 b1 a1^-1 b1^-1", 2);
    let w = TwistWord::from_powers(SurfaceData::closed(2), &[(&s, n as i64)]).unwrap();
    Factorization::over_sphere(2, vec![s], w).unwrap()
}

#[test]
fn e1_invariants() {
    let f = e1();
    let r = invariant_report(&f, None).unwrap();
    assert!(r.relation.holds);
    assert_eq!((r.mu, r.euler, r.b1, r.b2), (12, 12, Some(0), Some(10)));
    assert_eq!(r.signature, Tagged::Computed(-8));
    assert_eq!(r.lambda, Tagged::Computed(1));
    assert_eq!(r.c1_squared, Tagged::Computed(0));
    assert!(r.h1.unwrap().is_trivial());
    assert!(r.szpiro.unwrap().passes());
    assert_eq!(r.torelli, TorelliCertificate::Ok { sign_plus_mu: Some(4) });
    let liu = r.liu_bound.unwrap();
    assert!(liu.passes);
    assert_eq!(liu.bound, Ratio::new(-1, 6));
    assert!(r.inconsistencies.is_empty());
}

#[test]
fn e1_fiber_sums() {
    let f = fiber_sum(&e1(), &e1()).unwrap();
    let r = invariant_report(&f, None).unwrap();
    assert_eq!((r.mu, r.euler), (24, 24));
    assert_eq!(r.signature, Tagged::Computed(-16));
    assert_eq!(r.lambda, Tagged::Computed(2));
    let empty = Factorization::over_sphere(1, vec![], TwistWord::empty(SurfaceData::closed(1))).unwrap();
    assert_eq!(fiber_sum(&e1(), &empty).unwrap(), e1());
    assert!(matches!(fiber_sum(&e1(), &separating(1)), Err(FibrationError::FiberGenusMismatch(1, 2))));
}

#[test]
fn external_signature_disagreement_is_flagged() {
    let r = invariant_report(&e1(), Some(-4)).unwrap();
    assert_eq!(r.signature, Tagged::Computed(-8));
    assert_eq!(r.inconsistencies.len(), 1);
}

#[test]
fn chain_relations_hold() {
    let c = chain();
    let s = SurfaceData::closed(2);
    for (curves, r) in [(&c[..], 6), (&c[..4], 10)] {
        let f = Factorization::over_sphere(2, c.clone(), cyclic_word(s, curves, r)).unwrap();
        assert!(check_relation(&f).unwrap().holds);
        let rep = invariant_report(&f, None).unwrap();
        assert_eq!(rep.signature, Tagged::Unknown);
        assert_eq!(rep.lambda, Tagged::Unknown);
        assert!(rep.h1.unwrap().is_trivial());
        assert_eq!(rep.torelli, TorelliCertificate::Ok { sign_plus_mu: None });
    }
    // the (c1..c5)^6 fibration is K3 # 2 CP2-bar, with sign = -18 and lambda = 3
    let f = Factorization::over_sphere(2, c.clone(), cyclic_word(s, &c, 6)).unwrap();
    let rep = invariant_report(&f, Some(-18)).unwrap();
    assert_eq!((rep.mu, rep.euler), (30, 26));
    assert_eq!(rep.lambda, Tagged::ExternalInput(3));
    assert_eq!(rep.c1_squared, Tagged::ExternalInput(-2));
    assert!(rep.liu_bound.unwrap().passes);
    // an external value making lambda fractional is reported
    let rep = invariant_report(&f, Some(-7)).unwrap();
    assert_eq!(rep.lambda, Tagged::Unknown);
    assert_eq!(rep.inconsistencies.len(), 1);
    // a broken relation leaves a residual
    let f = Factorization::over_sphere(2, c.clone(), cyclic_word(s, &c, 5)).unwrap();
    let check = check_relation(&f).unwrap();
    assert!(!check.holds);
    assert!(!check.residual.is_identity());
}

#[test]
fn separating_twists() {
    let f = separating(5);
    assert_eq!(signature(&f, None).unwrap(), Tagged::Computed(-5));
    assert_eq!(hodge_pairing(&Tagged::Computed(-5), 5).unwrap(), Tagged::Computed(Ok(0)));
    assert!(matches!(torelli_certificate(&f, &Tagged::Computed(-5)), TorelliCertificate::Contradiction(_)));
    assert_eq!(h1_total_space(&f).unwrap().free_rank, 4);
    let r = invariant_report(&f, None).unwrap();
    assert_eq!(r.b1, Some(4));
    assert!(!r.liu_bound.unwrap().passes);
    assert_eq!(liu_bound(0, 2).bound, Ratio::new(1, 2));
}

#[test]
fn euler_and_mu() {
    let empty = Factorization::over_sphere(3, vec![], TwistWord::empty(SurfaceData::closed(3))).unwrap();
    assert_eq!(mu(&empty), Ok(0));
    assert_eq!(euler_characteristic(&empty), Ok(-8));
    let c = chain();
    let neg = TwistWord::from_powers(SurfaceData::closed(2), &[(&c[0], -1)]).unwrap();
    let f = Factorization::over_sphere(2, c.clone(), neg).unwrap();
    assert_eq!(mu(&f), Err(FibrationError::NotPositive));
    assert_eq!(
        torelli_certificate(&empty, &Tagged::Unknown),
        TorelliCertificate::NotApplicable("word is empty or not positive".into())
    );
}

#[test]
fn validation() {
    let c = chain();
    let w = cyclic_word(SurfaceData::closed(2), &c, 1);
    assert!(matches!(
        Factorization::over_sphere(2, c[..2].to_vec(), w.clone()),
        Err(FibrationError::UnknownCurve(_))
    ));
    let mut dup = c.clone();
    dup.push(Arc::clone(&c[0]));
    assert!(matches!(Factorization::over_sphere(2, dup, w.clone()), Err(FibrationError::DuplicateCurve(_))));
    let other = vec![curve("c1", "b1", 2)];
    let w1 = TwistWord::from_powers(SurfaceData::closed(2), &[(&c[0], 1)]).unwrap();
    assert!(matches!(Factorization::over_sphere(2, other, w1), Err(FibrationError::ConflictingCurve(_))));
    assert!(matches!(Factorization::over_sphere(3, c, w), Err(FibrationError::GenusMismatch { .. })));
}

#[test]
fn fundamental_groups() {
    let f = e1();
    assert!(abelianize(&pi1_presentation(&f).unwrap()).is_trivial());
    let c = chain();
    let f = Factorization::over_sphere(2, c.clone(), cyclic_word(SurfaceData::closed(2), &c, 6)).unwrap();
    assert!(abelianize(&pi1_presentation(&f).unwrap()).is_trivial());
    let empty = Factorization::over_sphere(2, vec![], TwistWord::empty(SurfaceData::closed(2))).unwrap();
    assert_eq!(pi1_presentation(&empty).unwrap(), SurfaceGroup::new(2).unwrap().presentation());
    let bare = Arc::new(Curve::from_class("x", vec![1, 0, 0, 0]));
    let w = TwistWord::from_powers(SurfaceData::closed(2), &[(&bare, 1)]).unwrap();
    let f = Factorization::over_sphere(2, vec![bare], w).unwrap();
    assert_eq!(pi1_presentation(&f), Err(FibrationError::MissingWords("x".into())));
    assert_eq!(h1_total_space(&f).unwrap().free_rank, 3);
}

fn m(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])
}

#[test]
fn higher_base() {
    let a = curve("a", "a1", 1);
    let word = TwistWord::from_powers(SurfaceData::closed(1), &[(&a, 12)]).unwrap();
    let pairs = vec![
        (m([[-4, 1], [-1, 0]]), m([[-3, 2], [-2, 1]])),
        (m([[-4, -1], [-3, -1]]), m([[-4, 3], [1, -1]])),
    ];
    let f = Factorization::new(1, 2, vec![Arc::clone(&a)], word.clone(), Some(pairs.clone())).unwrap();
    let r = verify_higher_base(&f).unwrap();
    assert!(r.relation.holds);
    assert_eq!(r.gamma_abelianization.unwrap().to_string(), "Z");
    assert_eq!(euler_characteristic(&f), Ok(12));
    let rep = invariant_report(&f, None).unwrap();
    assert_eq!(rep.b1, None);
    assert_eq!(rep.notes.len(), 2);

    let smooth = Factorization::new(1, 1, vec![], TwistWord::empty(SurfaceData::closed(1)), Some(vec![(
        IntMatrix::identity(2),
        IntMatrix::identity(2),
    )]))
    .unwrap();
    assert!(verify_higher_base(&smooth).unwrap().relation.holds);

    let wrong = TwistWord::from_powers(SurfaceData::closed(1), &[(&a, 11)]).unwrap();
    let f = Factorization::new(1, 2, vec![Arc::clone(&a)], wrong, Some(pairs)).unwrap();
    let r = verify_higher_base(&f).unwrap();
    assert!(!r.relation.holds);
    assert_eq!(r.relation.residual, m([[1, -1], [0, 1]]));

    let f = Factorization::new(1, 2, vec![Arc::clone(&a)], word, None).unwrap();
    assert_eq!(verify_higher_base(&f).unwrap_err(), FibrationError::MissingCommutatorData(2));
    assert_eq!(verify_higher_base(&e1()).unwrap_err(), FibrationError::BaseIsSphere);
}

fn word_on_genus2() -> impl Strategy<Value = Vec<(String, i64)>> {
    let gens = ["a1", "b1", "a2", "b2"];
    proptest::collection::vec(
        proptest::collection::vec((0usize..4, any::<bool>()), 1..4).prop_map(move |v| {
            let text: Vec<String> = v
                .into_iter()
                .map(|(i, s)| if s { gens[i].to_string() } else { format!("{}^-1", gens[i]) })
                .collect();
            (text.join(" "), 1)
        }),
        0..5,
    )
}

proptest! {
    #[test]
    fn h1_two_routes(words in word_on_genus2()) {
        let curves: Vec<Arc<Curve>> = words
            .iter()
            .enumerate()
            .map(|(i, (w, _))| curve(&format!("x{i}"), w, 2))
            .collect();
        let w = cyclic_word(SurfaceData::closed(2), &curves, 1);
        let f = Factorization::over_sphere(2, curves.clone(), w).unwrap();
        let h = h1_total_space(&f).unwrap();
        let classes: Vec<Vec<i64>> = curves.iter().map(|c| c.homology.clone()).collect();
        prop_assert_eq!(h.free_rank, 4 - rank_over_rationals(&IntMatrix::from_rows_with_cols(&classes, 4)));
        prop_assert_eq!(abelianize(&pi1_presentation(&f).unwrap()), h);
        // report consistency
        let r = invariant_report(&f, Some(0)).unwrap();
        prop_assert_eq!(r.b2.unwrap(), r.euler - 2 + 2 * r.b1.unwrap() as i64);
        if let Some(s) = r.signature.value() {
            prop_assert_eq!(r.c1_squared.value().copied(), Some(2 * r.euler + 3 * s));
        }
    }

    #[test]
    fn fiber_sums_add(r1 in 1usize..3, r2 in 1usize..3) {
        let (a, b) = (curve("a", "a1", 1), curve("b", "b1", 1));
        let s = SurfaceData::closed(1);
        let f = |r| Factorization::over_sphere(1, vec![Arc::clone(&a), Arc::clone(&b)], cyclic_word(s, &[Arc::clone(&a), Arc::clone(&b)], 6 * r)).unwrap();
        let (f1, f2) = (f(r1), f(r2));
        let sum = fiber_sum(&f1, &f2).unwrap();
        let [x, y, z] = [&f1, &f2, &sum].map(|f| invariant_report(f, None).unwrap());
        prop_assert_eq!(z.mu, x.mu + y.mu);
        prop_assert_eq!(z.euler, x.euler + y.euler - 2 * (2 - 2));
        prop_assert_eq!(z.signature.value().unwrap(), &(x.signature.value().unwrap() + y.signature.value().unwrap()));
        prop_assert_eq!(z.lambda.value().unwrap(), &(x.lambda.value().unwrap() + y.lambda.value().unwrap()));
        // genus one: 4n − μ = sign and Σ = 12n
        let sz = z.szpiro.unwrap();
        prop_assert_eq!(4 * sz.n - z.mu, *z.signature.value().unwrap());
        prop_assert_eq!(sz.sum_exponents, 12 * sz.n);
    }
}
