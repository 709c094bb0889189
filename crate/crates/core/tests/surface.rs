use proptest::prelude::*;
use twistlab::exact::IntMatrix;
use twistlab::surface::{
    apply_to_class, intersection_pairing, is_symplectic, symplectic_inverse, transvection_power,
};

fn class(g: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, 2 * g)
}

#[test]
fn genus_one_generators_satisfy_the_braid_relation() {
    let a = transvection_power(&[1, 0], 1);
    let b = transvection_power(&[0, 1], 1);
    assert_eq!(&(&a * &b) * &a, &(&b * &a) * &b);
    let ab = &a * &b;
    assert!(ab.pow(6).is_identity());
    assert!(!ab.pow(3).is_identity());
}

#[test]
fn powers_compose() {
    let c = [2, -1, 0, 1];
    assert_eq!(transvection_power(&c, 3), transvection_power(&c, 1).pow(3));
    assert!((&transvection_power(&c, 2) * &transvection_power(&c, -2)).is_identity());
}

proptest! {
    #[test]
    fn twist_fixes_its_curve_and_the_orthogonal_complement(c in class(2), x in class(2), n in -3i64..=3) {
        let t = transvection_power(&c, n);
        prop_assert_eq!(apply_to_class(&t, &c), c.clone());
        let moved = apply_to_class(&t, &x);
        let pair = intersection_pairing(&x, &c).unwrap();
        let expected: Vec<i64> = x.iter().zip(&c).map(|(xi, ci)| xi - n * pair * ci).collect();
        prop_assert_eq!(&moved, &expected);
        if pair == 0 {
            prop_assert_eq!(moved, x);
        }
        prop_assert!(is_symplectic(&t));
    }

    #[test]
    fn pairing_is_alternating_and_bilinear(x in class(3), y in class(3), z in class(3)) {
        prop_assert_eq!(intersection_pairing(&x, &x).unwrap(), 0);
        prop_assert_eq!(intersection_pairing(&x, &y).unwrap(), -intersection_pairing(&y, &x).unwrap());
        let yz: Vec<i64> = y.iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert_eq!(
            intersection_pairing(&x, &yz).unwrap(),
            intersection_pairing(&x, &y).unwrap() + intersection_pairing(&x, &z).unwrap()
        );
    }

    #[test]
    fn twists_are_covariant(c in class(2), word in proptest::collection::vec((class(2), -1i64..=1), 1..4)) {
        // M built from twists is symplectic; M T_c M⁻¹ = T_{Mc}
        let m = word
            .iter()
            .fold(IntMatrix::identity(4), |acc, (d, k)| &acc * &transvection_power(d, *k));
        prop_assert!(is_symplectic(&m));
        let lhs = &(&m * &transvection_power(&c, 1)) * &symplectic_inverse(&m);
        prop_assert_eq!(lhs, transvection_power(&apply_to_class(&m, &c), 1));
    }

    #[test]
    fn classes_meeting_once_braid(x in class(2), y in class(2)) {
        let pair = intersection_pairing(&x, &y).unwrap();
        let (a, b) = (transvection_power(&x, 1), transvection_power(&y, 1));
        if pair.abs() == 1 {
            prop_assert_eq!(&(&a * &b) * &a, &(&b * &a) * &b);
        } else if pair == 0 {
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
