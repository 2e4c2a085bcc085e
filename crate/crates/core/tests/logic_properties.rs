use listind::gen::{self, FormulaShape};
use listind::logic::{parse_formula, Formula, Signature, Term, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape() -> FormulaShape {
    FormulaShape {
        max_depth: 2,
        max_atoms: 3,
        list_vars: vec![Var::new("X"), Var::new("Y")],
        elem_vars: vec![Var::new("x"), Var::new("y")],
        list_constants: vec!["N(0)".parse().unwrap(), "[1,2]".parse().unwrap(), "rep(N(1)).[3]".parse().unwrap()],
        max_entry: 4,
    }
}

fn formula(seed: u64, depth: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen::formula(&mut rng, &Signature::FULL, &shape(), depth)
}

/// Replaces one list argument inside the first atom with an element, or the
/// reverse, so the atom becomes ill-sorted.
fn break_sorts<R: Rng>(rng: &mut R, phi: &Formula) -> Option<Formula> {
    let mut done = false;
    let out = phi.map_atoms(&mut |atom| {
        if done {
            return atom.clone();
        }
        let broken = match atom {
            Formula::A(_) => Some(Formula::a(Term::Elem(0))),
            Formula::Eq(a, b) => match a.sort() {
                Ok(listind::logic::Sort::List) => Some(Formula::eq(a.clone(), Term::Elem(rng.gen_range(0..3)))),
                Ok(listind::logic::Sort::Elem) => Some(Formula::eq(Term::Nil, b.clone())),
                Err(_) => None,
            },
            _ => None,
        };
        match broken {
            Some(f) => {
                done = true;
                f
            }
            None => atom.clone(),
        }
    });
    done.then_some(out)
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let phi = formula(seed, 4);
        let text = phi.to_string();
        let back = parse_formula(&text, &Signature::FULL);
        prop_assert_eq!(back.as_ref(), Ok(&phi), "{}", text);
    }

    #[test]
    fn sort_checker_rejects_mutations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = gen::formula(&mut rng, &Signature::FULL, &shape(), 3);
        prop_assert!(phi.check_sorts().is_ok());
        if let Some(bad) = break_sorts(&mut rng, &phi) {
            prop_assert!(bad.check_sorts().is_err(), "{}", bad);
            prop_assert!(parse_formula(&bad.to_string(), &Signature::FULL).is_err());
        }
    }

    #[test]
    fn substitution_replaces_free_variables(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = gen::formula(&mut rng, &Signature::FULL, &shape(), 3);
        let x = Var::new("X");
        prop_assume!(phi.free_vars().contains(&x));
        let t = gen::list_term(&mut rng, &Signature::FULL, &shape(), 2);
        let out = phi.substitute(&x, &t).unwrap();
        let mut want = phi.free_vars();
        want.remove(&x);
        want.extend(t.free_vars());
        prop_assert_eq!(out.free_vars(), want);
        prop_assert!(out.check_sorts().is_ok());
    }
}
