mod common;

use common::{cnf, cnf_add, cnf_cmp, cnf_mul, from_cnf, Cnf};
use listind::ordinal::expr;
use listind::Ordinal;
use proptest::prelude::*;

/// Ordinals below ω^5·9.
fn ordinal() -> impl Strategy<Value = Ordinal> {
    proptest::collection::btree_map(0u64..5, 1u128..9, 0..5).prop_map(|m| {
        let c: Cnf = m.into_iter().rev().collect();
        from_cnf(&c)
    })
}

proptest! {
    #[test]
    fn addition_and_multiplication_match_reference(a in ordinal(), b in ordinal()) {
        prop_assert_eq!(cnf(&a.add(&b)), cnf_add(&cnf(&a), &cnf(&b)));
        prop_assert_eq!(cnf(&a.mul(&b)), cnf_mul(&cnf(&a), &cnf(&b)));
        prop_assert_eq!(a.cmp(&b), cnf_cmp(&cnf(&a), &cnf(&b)));
    }

    #[test]
    fn associativity(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn left_subtraction_inverts_addition(a in ordinal(), b in ordinal()) {
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        let d = big.sub_left(&small).unwrap();
        prop_assert_eq!(small.add(&d), big.clone());
        if small != big {
            prop_assert!(small.sub_left(&big).is_err());
        }
    }

    #[test]
    fn division_with_remainder(xi in ordinal(), alpha in ordinal()) {
        prop_assume!(!alpha.is_zero());
        let (q, r) = xi.divmod(&alpha).unwrap();
        prop_assert_eq!(alpha.mul(&q).add(&r), xi);
        prop_assert!(r < alpha);
    }

    #[test]
    fn left_cancellation(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assume!(b != c);
        prop_assert_ne!(a.add(&b), a.add(&c));
    }

    #[test]
    fn text_round_trip(a in ordinal()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Ordinal>().unwrap(), a.clone());
        prop_assert_eq!(expr::evaluate(&text).unwrap().to_string(), text);
    }
}

#[test]
fn right_cancellation_fails() {
    let w = Ordinal::omega();
    assert_eq!(Ordinal::one().add(&w), w);
    assert_eq!(Ordinal::finite(2u64).add(&w), w);
    assert!(Ordinal::zero().divmod(&Ordinal::zero()).is_err());
}
