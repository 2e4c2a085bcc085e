//! Independent reference implementations shared by the property and acceptance suites.
#![allow(dead_code)]

use listind::logic::{Assignment, Formula, Term, Value, Var};
use listind::models::{
    a_atom_bound, equation_bound_m1, equation_bound_m2, formula_sync_bound, BoundError, Model, StabilizationBound,
};
use listind::transfinite::{Block, NElem, Nat, TransfiniteList};
use listind::Ordinal;
use rand::Rng;

/// Cantor normal form as `(exponent, coefficient)` pairs, exponents strictly decreasing.
pub type Cnf = Vec<(u64, u128)>;

pub fn cnf(o: &Ordinal) -> Cnf {
    o.terms().iter().map(|t| (t.exponent, u128::try_from(&t.coefficient).unwrap())).collect()
}

pub fn from_cnf(c: &Cnf) -> Ordinal {
    Ordinal::from_terms(c.iter().map(|&(e, k)| (e, num_bigint::BigUint::from(k))))
}

/// Terms of `a` below the leading exponent of `b` are absorbed.
pub fn cnf_add(a: &Cnf, b: &Cnf) -> Cnf {
    let Some(&(e, d)) = b.first() else { return a.clone() };
    let mut out: Cnf = a.iter().copied().filter(|&(x, _)| x > e).collect();
    match a.iter().find(|&&(x, _)| x == e) {
        Some(&(_, c)) => out.push((e, c + d)),
        None => out.push((e, d)),
    }
    out.extend_from_slice(&b[1..]);
    out
}

/// Right distributivity over the terms of `b`.
pub fn cnf_mul(a: &Cnf, b: &Cnf) -> Cnf {
    let Some(&(a0, c0)) = a.first() else { return Vec::new() };
    let mut acc = Vec::new();
    for &(e, d) in b {
        let piece = if e > 0 {
            vec![(a0 + e, d)]
        } else {
            let mut p = vec![(a0, c0 * d)];
            p.extend_from_slice(&a[1..]);
            p
        };
        acc = cnf_add(&acc, &piece);
    }
    acc
}

pub fn cnf_cmp(a: &Cnf, b: &Cnf) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.cmp(y);
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

pub fn random_ordinal<R: Rng>(rng: &mut R, max_exp: u64, max_coeff: u128) -> Ordinal {
    let mut c = Cnf::new();
    for e in (0..=max_exp).rev() {
        if rng.gen_bool(0.5) {
            c.push((e, rng.gen_range(1..=max_coeff)));
        }
    }
    from_cnf(&c)
}

fn nelem_at(n: &NElem, i: u64) -> Nat {
    let p = n.prefix();
    if (i as usize) < p.len() {
        p[i as usize]
    } else {
        n.start() + i - p.len() as u64
    }
}

/// Entry at position `xi` by walking blocks of length ω and ω², or `None` past the end.
pub fn oracle_at(l: &TransfiniteList, xi: &Ordinal) -> Option<Nat> {
    let omega = Ordinal::omega();
    let omega2 = Ordinal::monomial(2, 1u64);
    let mut pos = xi.clone();
    for b in l.blocks() {
        let len = match b {
            Block::Letter(_) => &omega,
            Block::Cycle(_) => &omega2,
        };
        if &pos < len {
            return Some(match b {
                Block::Letter(n) => nelem_at(n, pos.to_u64()?),
                Block::Cycle(c) => {
                    let (q, r) = pos.divmod(&omega).ok()?;
                    let q = q.to_u64()? as usize;
                    nelem_at(&c[q % c.len()], r.to_u64()?)
                }
            });
        }
        pos = pos.sub_left(len).ok()?;
    }
    l.tail().get(pos.to_usize()?).copied()
}

/// Ordinal strictly below `bound` with exponents at most 2, or `None` if the draw misses.
pub fn random_position<R: Rng>(rng: &mut R, bound: &Ordinal) -> Option<Ordinal> {
    for _ in 0..8 {
        let p = random_ordinal(rng, 2, 4);
        let p = if rng.gen_bool(0.3) { Ordinal::finite(rng.gen_range(0..6u64)) } else { p };
        if &p < bound {
            return Some(p);
        }
    }
    None
}

pub fn x() -> Var {
    Var::new("X")
}

fn with_x(params: &Assignment, l: TransfiniteList) -> Assignment {
    params.clone().with(x(), Value::List(l))
}

/// Checks `A(t(N_k))` for every `k` in `[K, K + 50]` with `m ∤ k`.
/// A constantly false atom must not contain `X` and must be false.
pub fn verify_a_bound(m: u64, t: &Term, params: &Assignment) -> Result<Option<u64>, String> {
    let model = Model::m1(m).unwrap();
    let atom = Formula::a(t.clone());
    let b = match a_atom_bound(m, t, &x(), params) {
        Err(BoundError::ConstantlyFalse(_)) => {
            let value = model.eval_formula(&atom, &with_x(params, TransfiniteList::n(1)));
            return if t.contains_var(&x()) || value != Ok(false) {
                Err(format!("A({t}) wrongly reported constantly false"))
            } else {
                Ok(None)
            };
        }
        other => other.map_err(|e| e.to_string())?,
    };
    for k in b.bound..=b.bound + 50 {
        if k % m == 0 {
            continue;
        }
        if model.eval_formula(&atom, &with_x(params, TransfiniteList::n(k))) != Ok(true) {
            return Err(format!("A({t}) false at N({k}) above bound {}", b.bound));
        }
    }
    Ok(Some(b.bound))
}

/// Checks that an unsatisfied-somewhere equation fails on `N_k` and on random
/// words of length `k` for every `k` in `[K, K + 50]`.
pub fn verify_m1_equation<R: Rng>(rng: &mut R, m: u64, e: &Formula, params: &Assignment) -> Result<Option<u64>, String> {
    let model = Model::m1(m).unwrap();
    let Some(b) = equation_bound_m1(e, &x(), params).map_err(|e| e.to_string())? else {
        // claimed valid: spot-check
        for k in 0..20 {
            for l in [TransfiniteList::n(k), TransfiniteList::word((0..k).map(|_| rng.gen_range(0..6)).collect())] {
                if model.eval_formula(e, &with_x(params, l.clone())) != Ok(true) {
                    return Err(format!("`{e}` claimed valid but fails at {l}"));
                }
            }
        }
        return Ok(None);
    };
    for k in b.bound..=b.bound + 50 {
        let word = TransfiniteList::word((0..k).map(|_| rng.gen_range(0..6)).collect());
        for l in [TransfiniteList::n(k), word] {
            if model.eval_formula(e, &with_x(params, l.clone())) != Ok(false) {
                return Err(format!("`{e}` holds at {l} above bound {}", b.bound));
            }
        }
    }
    Ok(Some(b.bound))
}

/// Checks that `e((n) ⌢ l)` fails for every `n` in `[N, N + 50]` and random `l`.
pub fn verify_m2_equation<R: Rng>(rng: &mut R, e: &Formula, params: &Assignment) -> Result<Option<u64>, String> {
    let shape = listind::gen::ElementShape::default();
    let Some(b) = equation_bound_m2(e, &x(), params).map_err(|e| e.to_string())? else {
        for _ in 0..20 {
            let l = listind::gen::fragment(rng, &shape);
            if Model::M2.eval_formula(e, &with_x(params, l.clone())) != Ok(true) {
                return Err(format!("`{e}` claimed valid but fails at {l}"));
            }
        }
        return Ok(None);
    };
    for n in b.bound..=b.bound + 50 {
        let l = TransfiniteList::word(vec![n]).concat(&listind::gen::fragment(rng, &shape));
        if Model::M2.eval_formula(e, &with_x(params, l.clone())) != Ok(false) {
            return Err(format!("`{e}` holds at {l} above bound {}", b.bound));
        }
    }
    Ok(Some(b.bound))
}

/// Checks `phi(λ ↑ n) = phi((n))` for every `n` in `[n0, n0 + 50]`.
pub fn verify_sync(phi: &Formula, lambda: &TransfiniteList, params: &Assignment) -> Result<u64, String> {
    let b: StabilizationBound = formula_sync_bound(phi, &x(), lambda, params).map_err(|e: BoundError| e.to_string())?;
    for n in b.bound..=b.bound + 50 {
        let shifted = lambda.suffix_finite(n).map_err(|e| e.to_string())?;
        let l = Model::M2.eval_formula(phi, &with_x(params, shifted));
        let r = Model::M2.eval_formula(phi, &with_x(params, TransfiniteList::word(vec![n])));
        if l != r {
            return Err(format!("`{phi}` at {lambda} shifted by {n}: {l:?} vs {r:?}"));
        }
    }
    Ok(b.bound)
}

/// Random assignment of every variable of `vars` except `X`.
pub fn random_params<R: Rng>(rng: &mut R, model: &Model, vars: impl IntoIterator<Item = Var>) -> Assignment {
    let shape = listind::gen::ElementShape::default();
    let mut sigma = Assignment::new();
    for v in vars {
        if v != x() {
            sigma.set(v.clone(), listind::gen::value(rng, model, v.sort(), &shape));
        }
    }
    sigma
}
