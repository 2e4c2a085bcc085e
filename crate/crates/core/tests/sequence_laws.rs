mod common;

use common::{oracle_at, random_position};
use listind::gen::{fragment, ElementShape};
use listind::models::Model;
use listind::transfinite::{NElem, TransfiniteList};
use listind::Ordinal;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lists(n: usize) -> impl Strategy<Value = (Vec<TransfiniteList>, ChaCha8Rng)> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = ElementShape::default();
        ((0..n).map(|_| fragment(&mut rng, &shape)).collect(), rng)
    })
}

proptest! {
    #[test]
    fn concatenation_laws((ls, _) in lists(3)) {
        let (a, b, c) = (&ls[0], &ls[1], &ls[2]);
        prop_assert_eq!(a.concat(b).concat(c), a.concat(&b.concat(c)));
        prop_assert_eq!(a.concat(b).length(), a.length().add(&b.length()));
        prop_assert_eq!(a.concat(b).suffix(&a.length()).unwrap(), b.clone());
        prop_assert_eq!(a.suffix(&Ordinal::zero()).unwrap(), a.clone());
        if b != c {
            prop_assert_ne!(a.concat(b), a.concat(c));
        }
    }

    #[test]
    fn indexing_matches_construction((ls, mut rng) in lists(2)) {
        let (a, b) = (&ls[0], &ls[1]);
        let ab = a.concat(b);
        for _ in 0..8 {
            let Some(g) = random_position(&mut rng, &b.length()) else { continue };
            let pos = a.length().add(&g);
            prop_assert_eq!(ab.at(&pos).ok(), oracle_at(b, &g));
            prop_assert_eq!(b.at(&g).ok(), oracle_at(b, &g));
        }
        prop_assert!(ab.at(&ab.length()).is_err());
        prop_assert_eq!(oracle_at(&ab, &ab.length()), None);
    }

    #[test]
    fn canonical_form_is_stable((ls, _) in lists(1)) {
        let a = &ls[0];
        let rebuilt = TransfiniteList::from_parts(a.blocks().to_vec(), a.tail().to_vec()).unwrap();
        prop_assert_eq!(&rebuilt, a);
        prop_assert_eq!(a.to_string().parse::<TransfiniteList>().unwrap(), a.clone());
    }

    #[test]
    fn first_difference_is_a_real_difference((ls, _) in lists(2)) {
        let (a, b) = (&ls[0], &ls[1]);
        match a.first_difference(b) {
            None => prop_assert_eq!(a, b),
            Some(xi) => {
                prop_assert_ne!(oracle_at(a, &xi), oracle_at(b, &xi));
                prop_assert_eq!(a.suffix(&xi).is_ok() && b.suffix(&xi).is_ok(), true);
            }
        }
        prop_assert_eq!(a.first_difference(a), None);
    }

    #[test]
    fn fragment_is_closed((ls, mut rng) in lists(2)) {
        use rand::Rng;
        let (a, b) = (&ls[0], &ls[1]);
        let m2 = Model::M2;
        prop_assert!(m2.contains(&a.concat(b)));
        if let Some(g) = random_position(&mut rng, &a.length()) {
            prop_assert!(m2.contains(&a.suffix(&g).unwrap()));
        }
        let cycle: Vec<NElem> = (0..rng.gen_range(1..3)).map(|_| listind::gen::nelem(&mut rng, &ElementShape::default())).collect();
        prop_assert!(m2.contains(&TransfiniteList::omega_power(cycle).unwrap()));
    }
}

#[test]
fn regrouped_cycles_are_equal() {
    let n0: TransfiniteList = "N(0)".parse().unwrap();
    let omega = TransfiniteList::omega_power(vec![NElem::tail(0)]).unwrap();
    assert_eq!(n0.concat(&omega), omega);
    let two: TransfiniteList = "rep(N(0),N(0))".parse().unwrap();
    assert_eq!(two, omega);
}
