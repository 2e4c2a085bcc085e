//! Seeded random generators for ordinals, domain elements, terms and formulas.
//!
//! Every generator takes the RNG explicitly; callers seed a `ChaCha8Rng` so
//! runs replay exactly.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{Formula, Signature, Sort, Term, Var};
use crate::models::Model;
use crate::ordinal::Ordinal;
use crate::transfinite::{Block, NElem, Nat, TransfiniteList};

/// Size limits for random domain elements.
#[derive(Debug, Clone, Copy)]
pub struct ElementShape {
    pub max_entry: Nat,
    pub max_word: usize,
    pub max_prefix: usize,
    pub max_start: Nat,
    pub max_blocks: usize,
    pub max_cycle: usize,
}

impl Default for ElementShape {
    fn default() -> Self {
        ElementShape { max_entry: 4, max_word: 3, max_prefix: 2, max_start: 5, max_blocks: 3, max_cycle: 2 }
    }
}

/// Ordinal with exponents at most `max_exponent` and coefficients in `1..=max_coefficient`.
pub fn ordinal<R: Rng>(rng: &mut R, max_exponent: u64, max_coefficient: u64) -> Ordinal {
    let mut terms = Vec::new();
    for e in (0..=max_exponent).rev() {
        if rng.gen_bool(0.5) {
            terms.push((e, rng.gen_range(1..=max_coefficient)));
        }
    }
    Ordinal::from_terms(terms)
}

pub fn word<R: Rng>(rng: &mut R, max_len: usize, max_entry: Nat) -> Vec<Nat> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..=max_entry)).collect()
}

pub fn nelem<R: Rng>(rng: &mut R, shape: &ElementShape) -> NElem {
    let prefix = word(rng, shape.max_prefix, shape.max_entry);
    NElem::new(prefix, rng.gen_range(0..=shape.max_start))
}

/// Element of the implemented fragment: random blocks followed by a random tail.
pub fn fragment<R: Rng>(rng: &mut R, shape: &ElementShape) -> TransfiniteList {
    let n_blocks = rng.gen_range(0..=shape.max_blocks);
    let blocks = (0..n_blocks)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Block::Letter(nelem(rng, shape))
            } else {
                let len = rng.gen_range(1..=shape.max_cycle);
                Block::Cycle((0..len).map(|_| nelem(rng, shape)).collect())
            }
        })
        .collect();
    let tail = word(rng, shape.max_word, shape.max_entry);
    TransfiniteList::from_parts(blocks, tail).expect("cycles are nonempty")
}

/// Element of the list domain of `model`.
pub fn element<R: Rng>(rng: &mut R, model: &Model, shape: &ElementShape) -> TransfiniteList {
    match model {
        Model::M1 { .. } => {
            if rng.gen_bool(0.5) {
                TransfiniteList::word(word(rng, shape.max_word, shape.max_entry))
            } else {
                TransfiniteList::from_nelem(nelem(rng, shape))
            }
        }
        Model::M2 => fragment(rng, shape),
    }
}

/// Parameters for random terms and formulas.
#[derive(Debug, Clone)]
pub struct FormulaShape {
    pub max_depth: usize,
    pub max_atoms: usize,
    pub list_vars: Vec<Var>,
    pub elem_vars: Vec<Var>,
    pub list_constants: Vec<TransfiniteList>,
    pub max_entry: Nat,
}

impl FormulaShape {
    /// Open formulas in the single list variable `X`, with constants drawn from `constants`.
    pub fn in_x(constants: Vec<TransfiniteList>) -> FormulaShape {
        FormulaShape {
            max_depth: 3,
            max_atoms: 3,
            list_vars: vec![Var::new("X")],
            elem_vars: Vec::new(),
            list_constants: constants,
            max_entry: 3,
        }
    }
}

fn elem_term<R: Rng>(rng: &mut R, shape: &FormulaShape) -> Term {
    match shape.elem_vars.choose(rng) {
        Some(v) if rng.gen_bool(0.5) => Term::Var(v.clone()),
        _ => Term::Elem(rng.gen_range(0..=shape.max_entry)),
    }
}

/// List term of depth at most `depth` over the symbols of `sig`.
pub fn list_term<R: Rng>(rng: &mut R, sig: &Signature, shape: &FormulaShape, depth: usize) -> Term {
    let leaf = |rng: &mut R| -> Term {
        match rng.gen_range(0..4) {
            0 => Term::Nil,
            1 if !shape.list_constants.is_empty() => {
                Term::List(shape.list_constants.choose(rng).expect("nonempty").clone())
            }
            _ => match shape.list_vars.choose(rng) {
                Some(v) => Term::Var(v.clone()),
                None => Term::Nil,
            },
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 | 1 => Term::cons(elem_term(rng, shape), list_term(rng, sig, shape, depth - 1)),
        2 if sig.append => Term::append(list_term(rng, sig, shape, depth - 1), list_term(rng, sig, shape, depth - 1)),
        _ => leaf(rng),
    }
}

fn atom<R: Rng>(rng: &mut R, sig: &Signature, shape: &FormulaShape) -> Formula {
    let depth = shape.max_depth;
    match rng.gen_range(0..6) {
        0 if sig.predicate_a => Formula::a(list_term(rng, sig, shape, depth)),
        1 if !shape.elem_vars.is_empty() => Formula::eq(elem_term(rng, shape), elem_term(rng, shape)),
        2 if !shape.list_vars.is_empty() => {
            // bias towards equations that can hold for some value
            let v = Term::Var(shape.list_vars.choose(rng).expect("nonempty").clone());
            Formula::eq(v, list_term(rng, sig, shape, depth))
        }
        _ => Formula::eq(list_term(rng, sig, shape, depth), list_term(rng, sig, shape, depth)),
    }
}

/// Quantifier-free formula with at most `max_atoms` atoms and connective depth at most `max_depth`.
pub fn open_formula<R: Rng>(rng: &mut R, sig: &Signature, shape: &FormulaShape) -> Formula {
    let atoms = rng.gen_range(1..=shape.max_atoms.max(1));
    connectives(rng, sig, shape, atoms, shape.max_depth)
}

fn connectives<R: Rng>(rng: &mut R, sig: &Signature, shape: &FormulaShape, atoms: usize, depth: usize) -> Formula {
    if atoms <= 1 || depth == 0 {
        let a = atom(rng, sig, shape);
        return if rng.gen_bool(0.3) { Formula::not(a) } else { a };
    }
    let left = rng.gen_range(1..atoms);
    let l = connectives(rng, sig, shape, left, depth - 1);
    let r = connectives(rng, sig, shape, atoms - left, depth - 1);
    let f = match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::implies(l, r),
    };
    if rng.gen_bool(0.2) {
        Formula::not(f)
    } else {
        f
    }
}

/// Formula of depth at most `depth` that may contain quantifiers, for printer tests.
pub fn formula<R: Rng>(rng: &mut R, sig: &Signature, shape: &FormulaShape, depth: usize) -> Formula {
    if depth == 0 {
        return match rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            _ => atom(rng, sig, shape),
        };
    }
    let sub = |rng: &mut R| formula(rng, sig, shape, depth - 1);
    match rng.gen_range(0..7) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 | 5 => {
            let pool: Vec<&Var> = shape.list_vars.iter().chain(&shape.elem_vars).collect();
            let v = pool.choose(rng).map_or_else(|| Var::new("X"), |v| (*v).clone());
            if rng.gen_bool(0.5) {
                Formula::forall(v, sub(rng))
            } else {
                Formula::exists(v, sub(rng))
            }
        }
        _ => atom(rng, sig, shape),
    }
}

/// Value of sort `sort` for `model`.
pub fn value<R: Rng>(rng: &mut R, model: &Model, sort: Sort, shape: &ElementShape) -> crate::logic::Value {
    match sort {
        Sort::Elem => crate::logic::Value::Elem(rng.gen_range(0..=shape.max_entry)),
        Sort::List => crate::logic::Value::List(element(rng, model, shape)),
    }
}
