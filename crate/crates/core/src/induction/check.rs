//! Bounded checking of universal formulas and of induction instances.
//!
//! A universal formula is checked on every assignment drawn from a finite
//! enumeration of the domain (or on a seeded sample of it when the product is
//! larger than the budget). When an instance's conclusion fails at some list
//! `λ`, a failing premise is searched for exactly along the predecessors of `λ`.

use indexmap::IndexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{InductionInstance, SchemaKind};
use crate::logic::{Assignment, Formula, Sort, Term, Value, Var};
use crate::models::{a_atom_bound, equation_bound_m1, equation_bound_m2, formula_sync_bound, EvalError, Model};
use crate::transfinite::{Block, NElem, Nat, TransfiniteList};

/// Longest run of extra `N_k` candidates added for stabilization bounds.
const MAX_EXTRA: u64 = 64;
/// Word count up to which word lengths are raised to the stabilization bound.
const MAX_WORDS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    /// Enumeration bound `B` for word lengths, prefix lengths and tail starts.
    pub alphabet_bound: usize,
    /// Maximum number of assignments evaluated per universal formula.
    pub budget: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { alphabet_bound: 2, budget: 20_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("`{0}` is not a universal closure of an open formula")]
    NotUniversal(String),
    #[error("`{formula}` has free variables: {vars}")]
    FreeVariables { formula: String, vars: String },
    #[error("`{formula}` uses symbols outside the signature of {model}")]
    Signature { formula: String, model: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Falsified { witness: Assignment },
    NoCounterexampleFound { bound: u64, checked: usize, exhaustive: bool },
}

impl Verdict {
    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Verdict::Falsified { witness } => Some(witness),
            Verdict::NoCounterexampleFound { .. } => None,
        }
    }
}

/// Every list of the given shape: words over `alphabet ∪ {fresh}` of length
/// at most `bound`, every `w ⌢ N_k` with `|w| <= bound` and `k <= bound`, and
/// for `M2` elements with up to two cycles built from a small letter pool.
pub fn enumerate_domain(model: &Model, alphabet: &[Nat], bound: usize) -> Vec<TransfiniteList> {
    enumerate_with_words(model, alphabet, bound, bound)
}

fn enumerate_with_words(model: &Model, alphabet: &[Nat], bound: usize, word_bound: usize) -> Vec<TransfiniteList> {
    let mut letters: Vec<Nat> = alphabet.to_vec();
    letters.sort_unstable();
    letters.dedup();
    letters.push(smallest_missing(&letters, 1)[0]);
    letters.sort_unstable();

    let mut out: IndexSet<TransfiniteList> = IndexSet::new();
    for w in words_upto(&letters, word_bound.max(bound)) {
        out.insert(TransfiniteList::word(w));
    }
    for w in &words_upto(&letters, bound) {
        for k in 0..=bound as Nat {
            out.insert(TransfiniteList::from_nelem(NElem::new(w.clone(), k)));
        }
    }
    if *model == Model::M2 {
        let small = bound.min(1);
        let pool_letters = &letters[..letters.len().min(2)];
        let mut pool: IndexSet<NElem> = IndexSet::new();
        for w in words_upto(pool_letters, small) {
            for k in 0..=small as Nat {
                pool.insert(NElem::new(w.clone(), k));
            }
        }
        let pool: Vec<NElem> = pool.into_iter().collect();
        let mut cycles: Vec<Vec<NElem>> = pool.iter().map(|a| vec![a.clone()]).collect();
        for a in &pool {
            for b in &pool {
                if a != b {
                    cycles.push(vec![a.clone(), b.clone()]);
                }
            }
        }
        let tails = words_upto(pool_letters, small);
        let mut shapes: Vec<Vec<Block>> = Vec::new();
        for c in &cycles {
            shapes.push(vec![Block::Cycle(c.clone())]);
            for a in &pool {
                shapes.push(vec![Block::Letter(a.clone()), Block::Cycle(c.clone())]);
                shapes.push(vec![Block::Cycle(c.clone()), Block::Letter(a.clone())]);
            }
        }
        for a in &pool {
            for b in &pool {
                shapes.push(vec![Block::Cycle(vec![a.clone()]), Block::Cycle(vec![b.clone()])]);
            }
        }
        for blocks in shapes {
            for t in &tails {
                out.insert(TransfiniteList::from_parts(blocks.clone(), t.clone()).expect("cycles are nonempty"));
            }
        }
    }
    out.into_iter().collect()
}

fn words_upto(letters: &[Nat], max_len: usize) -> Vec<Vec<Nat>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Nat>| letters.iter().map(move |&c| [w.as_slice(), &[c]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The `count` smallest naturals not in `taken`.
fn smallest_missing(taken: &[Nat], count: usize) -> Vec<Nat> {
    (0..).filter(|n| !taken.contains(n)).take(count).collect()
}

fn term_constants(t: &Term, out: &mut Vec<Nat>) {
    match t {
        Term::Elem(n) => out.push(*n),
        Term::List(l) => {
            for b in l.blocks() {
                let letters = match b {
                    Block::Letter(n) => std::slice::from_ref(n),
                    Block::Cycle(c) => c.as_slice(),
                };
                for n in letters {
                    out.extend_from_slice(n.prefix());
                }
            }
            out.extend_from_slice(l.tail());
        }
        Term::Cons(a, b) | Term::Append(a, b) => {
            term_constants(a, out);
            term_constants(b, out);
        }
        Term::Var(_) | Term::Nil => {}
    }
}

/// Element constants of `phi`, including the finite entries of list literals.
fn formula_constants(phi: &Formula) -> Vec<Nat> {
    let mut out = Vec::new();
    phi.visit_atoms(&mut |a| match a {
        Formula::Eq(l, r) => {
            term_constants(l, &mut out);
            term_constants(r, &mut out);
        }
        Formula::A(t) => term_constants(t, &mut out),
        _ => {}
    });
    out.sort_unstable();
    out.dedup();
    out
}

/// Values for element variables: the formula's constants plus the two
/// smallest naturals not among them.
pub fn element_candidates(phi: &Formula) -> Vec<Nat> {
    let mut c = formula_constants(phi);
    let fresh = smallest_missing(&c, 2);
    c.extend(fresh);
    c.sort_unstable();
    c
}

/// Largest stabilization bound among atoms with a single list variable.
fn atom_bounds(model: &Model, body: &Formula) -> u64 {
    let mut k = 0;
    let empty = Assignment::new();
    body.visit_atoms(&mut |atom| {
        let list_vars: Vec<Var> = match atom {
            Formula::Eq(a, b) => a.free_vars().into_iter().chain(b.free_vars()).collect(),
            Formula::A(t) => t.free_vars().into_iter().collect(),
            _ => return,
        };
        if list_vars.iter().any(|v| v.sort() == Sort::Elem) {
            return;
        }
        let Some(x) = list_vars.first() else { return };
        if list_vars.iter().any(|v| v != x) {
            return;
        }
        let bound = match (model, atom) {
            (Model::M1 { step }, Formula::A(t)) => a_atom_bound(*step, t, x, &empty).ok().map(|b| b.bound),
            (Model::M1 { .. }, Formula::Eq(..)) => equation_bound_m1(atom, x, &empty).ok().flatten().map(|b| b.bound),
            (Model::M2, Formula::Eq(..)) => equation_bound_m2(atom, x, &empty).ok().flatten().map(|b| b.bound),
            _ => None,
        };
        k = k.max(bound.unwrap_or(0));
    });
    k
}

/// Candidate lists: the enumerated domain with words up to the largest
/// stabilization bound (while there are at most `MAX_WORDS` of them), plus,
/// past `B`, every `N_k`, `(k)` and `(0)^k` up to that bound plus the step.
fn list_candidates(model: &Model, body: &Formula, cfg: &CheckConfig) -> (Vec<TransfiniteList>, u64) {
    let b = cfg.alphabet_bound as u64;
    let stab = atom_bounds(model, body);
    let constants = formula_constants(body);
    let letters = constants.len() + 1;
    let mut word_bound = (stab as usize).max(cfg.alphabet_bound);
    while word_bound > cfg.alphabet_bound && (0..=word_bound as u32).map(|i| letters.saturating_pow(i)).sum::<usize>() > MAX_WORDS {
        word_bound -= 1;
    }
    let reach = match model {
        Model::M1 { step } => stab + step,
        Model::M2 => stab + 1,
    };
    let mut set: IndexSet<TransfiniteList> =
        enumerate_with_words(model, &constants, cfg.alphabet_bound, word_bound).into_iter().collect();
    for k in (b + 1)..=reach.min(b + MAX_EXTRA) {
        set.insert(TransfiniteList::n(k));
        set.insert(TransfiniteList::word(vec![k]));
        set.insert(TransfiniteList::word(vec![0; k as usize]));
    }
    (set.into_iter().collect(), b.max(stab))
}

fn check_signature(model: &Model, phi: &Formula) -> Result<(), CheckError> {
    if phi.fits(&model.signature()) {
        Ok(())
    } else {
        Err(CheckError::Signature { formula: phi.to_string(), model: model.to_string() })
    }
}

/// Searches for a falsifying assignment of a closed formula `∀v1..vn φ` with `φ` open.
pub fn check_universal(model: &Model, formula: &Formula, cfg: &CheckConfig) -> Result<Verdict, CheckError> {
    let (vars, body) = formula.strip_universals();
    if !body.is_open() {
        return Err(CheckError::NotUniversal(formula.to_string()));
    }
    let free = formula.free_vars();
    if !free.is_empty() {
        let vars: Vec<String> = free.iter().map(|v| v.name().to_string()).collect();
        return Err(CheckError::FreeVariables { formula: formula.to_string(), vars: vars.join(", ") });
    }
    check_signature(model, body)?;

    let (lists, bound) = list_candidates(model, body, cfg);
    let elems: Vec<Value> = element_candidates(body).into_iter().map(Value::Elem).collect();
    let lists: Vec<Value> = lists.into_iter().map(Value::List).collect();
    let domains: Vec<&[Value]> = vars
        .iter()
        .map(|v| match v.sort() {
            Sort::Elem => elems.as_slice(),
            Sort::List => lists.as_slice(),
        })
        .collect();
    let total = domains.iter().try_fold(1usize, |acc, d| acc.checked_mul(d.len()));

    let assign = |idx: &[usize]| {
        let mut sigma = Assignment::new();
        for ((v, d), &i) in vars.iter().zip(&domains).zip(idx) {
            sigma.set(v.clone(), d[i].clone());
        }
        sigma
    };

    match total {
        Some(total) if total <= cfg.budget => {
            let mut idx = vec![0usize; vars.len()];
            for _ in 0..total {
                let sigma = assign(&idx);
                if !model.eval_formula(body, &sigma)? {
                    return Ok(Verdict::Falsified { witness: sigma });
                }
                // odometer, last variable fastest
                for pos in (0..idx.len()).rev() {
                    idx[pos] += 1;
                    if idx[pos] < domains[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
            Ok(Verdict::NoCounterexampleFound { bound, checked: total, exhaustive: true })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.budget {
                let idx: Vec<usize> = domains.iter().map(|d| rng.gen_range(0..d.len())).collect();
                let sigma = assign(&idx);
                if !model.eval_formula(body, &sigma)? {
                    return Ok(Verdict::Falsified { witness: sigma });
                }
            }
            Ok(Verdict::NoCounterexampleFound { bound, checked: cfg.budget, exhaustive: false })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PremiseReport {
    pub formula: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceVerdict {
    /// Every premise survived the search and the conclusion failed.
    AxiomInstanceFalsified,
    PremiseFalsified,
    NoCounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub model: String,
    pub schema: String,
    pub formula: String,
    pub seed: u64,
    pub alphabet_bound: usize,
    pub budget: usize,
    pub premises: Vec<PremiseReport>,
    pub conclusion: PremiseReport,
    pub overall: InstanceVerdict,
}

/// Checks each premise and the conclusion (all closed over the parameters)
/// and combines the verdicts.
pub fn check_instance(model: &Model, inst: &InductionInstance, cfg: &CheckConfig) -> Result<CheckReport, CheckError> {
    let params = inst.parameters();
    let close = |f: &Formula| Formula::forall_all(params.clone(), f.clone());
    let closed: Vec<Formula> = inst.premises.iter().map(close).collect();
    let mut verdicts = closed.iter().map(|p| check_universal(model, p, cfg)).collect::<Result<Vec<_>, _>>()?;
    let conclusion = close(&inst.conclusion);
    let conclusion_verdict = check_universal(model, &conclusion, cfg)?;

    if let (Verdict::Falsified { witness }, SchemaKind::OneStep | SchemaKind::BigStep(_)) =
        (&conclusion_verdict, &inst.kind)
    {
        if let Some((index, values)) = descend(model, inst, witness)? {
            if !verdicts[index].is_falsified() {
                if let Some(w) = premise_witness(model, &closed[index], witness, &params, values)? {
                    verdicts[index] = Verdict::Falsified { witness: w };
                }
            }
        }
    }

    let overall = if verdicts.iter().any(Verdict::is_falsified) {
        InstanceVerdict::PremiseFalsified
    } else if conclusion_verdict.is_falsified() {
        InstanceVerdict::AxiomInstanceFalsified
    } else {
        InstanceVerdict::NoCounterexampleFound
    };
    Ok(CheckReport {
        model: model.to_string(),
        schema: inst.kind.to_string(),
        formula: inst.formula.to_string(),
        seed: cfg.seed,
        alphabet_bound: cfg.alphabet_bound,
        budget: cfg.budget,
        premises: closed
            .iter()
            .zip(verdicts)
            .map(|(f, verdict)| PremiseReport { formula: f.to_string(), verdict })
            .collect(),
        conclusion: PremiseReport { formula: conclusion.to_string(), verdict: conclusion_verdict },
        overall,
    })
}

/// Binds the parameters from `outer` and the premise's own variables to
/// `values`, and keeps the assignment only if it falsifies the premise.
fn premise_witness(
    model: &Model,
    premise: &Formula,
    outer: &Assignment,
    params: &[Var],
    values: Vec<Value>,
) -> Result<Option<Assignment>, CheckError> {
    let (vars, body) = premise.strip_universals();
    let own = &vars[params.len()..];
    if own.len() != values.len() {
        return Ok(None);
    }
    let mut sigma = Assignment::new();
    for p in params {
        if let Some(v) = outer.get(p) {
            sigma.set(p.clone(), v.clone());
        }
    }
    for (v, val) in own.iter().zip(values) {
        if v.sort() != val.sort() {
            return Ok(None);
        }
        sigma.set(v.clone(), val);
    }
    Ok((!model.eval_formula(body, &sigma)?).then_some(sigma))
}

/// A failing premise: its index and the values of its own bound variables.
type PremiseFailure = (usize, Vec<Value>);

struct Descent<'a> {
    model: &'a Model,
    phi: &'a Formula,
    x: &'a Var,
    params: Assignment,
    step: u64,
}

impl Descent<'_> {
    fn holds(&self, l: &TransfiniteList) -> Result<bool, CheckError> {
        let sigma = self.params.clone().with(self.x.clone(), Value::List(l.clone()));
        Ok(self.model.eval_formula(self.phi, &sigma)?)
    }

    fn step_failure(&self, lambda: &TransfiniteList, i: u64) -> PremiseFailure {
        let m = self.step;
        let mut values = vec![Value::List(lambda.suffix_finite((i + 1) * m).expect("within the chain"))];
        for j in i * m..(i + 1) * m {
            values.push(Value::Elem(lambda.at_finite(j).expect("within the chain")));
        }
        (m as usize, values)
    }

    /// Walks `λ, λ↑m, λ↑2m, ...` up to `λ↑(links·m)` looking for a false link
    /// followed by a true one.
    fn chain(&self, lambda: &TransfiniteList, links: u64) -> Result<Option<PremiseFailure>, CheckError> {
        let m = self.step;
        let mut prev = self.holds(lambda)?;
        for i in 0..links {
            let next = self.holds(&lambda.suffix_finite((i + 1) * m).expect("non-standard"))?;
            if !prev && next {
                return Ok(Some(self.step_failure(lambda, i)));
            }
            prev = next;
        }
        Ok(None)
    }

    /// Exact descent for a finite word on which the formula fails.
    fn word(&self, w: &[Nat]) -> Result<Option<PremiseFailure>, CheckError> {
        let m = self.step as usize;
        let lambda = TransfiniteList::word(w.to_vec());
        if self.holds(&lambda)? {
            return Ok(None);
        }
        let q = w.len() / m;
        let base = &w[q * m..];
        if !self.holds(&TransfiniteList::word(base.to_vec()))? {
            return Ok(Some((base.len(), base.iter().map(|&n| Value::Elem(n)).collect())));
        }
        self.chain(&lambda, q as u64)
    }

    fn m2(&self, lambda: &TransfiniteList) -> Result<Option<PremiseFailure>, CheckError> {
        let m = self.step;
        let n0 = match formula_sync_bound(self.phi, self.x, lambda, &self.params) {
            Ok(b) => b.bound,
            Err(_) => return Ok(None),
        };
        for i in 0..m {
            let n = n0 + m + i;
            if let Some(f) = self.word(&[n])? {
                return Ok(Some(f));
            }
        }
        self.chain(lambda, n0.div_ceil(m) + 1)
    }

    fn m1(&self, lambda: &TransfiniteList, reach: u64) -> Result<Option<PremiseFailure>, CheckError> {
        let m = self.step;
        if let Some(f) = self.chain(lambda, (reach + 2 * m).div_ceil(m) + 1)? {
            return Ok(Some(f));
        }
        for len in 0..=(reach + 2 * m) as usize {
            for w in [vec![0; len], (0..len as Nat).collect(), vec![reach + 1; len]] {
                if let Some(f) = self.word(&w)? {
                    return Ok(Some(f));
                }
            }
        }
        Ok(None)
    }
}

/// Looks for a premise that fails below the conclusion's counterexample.
fn descend(model: &Model, inst: &InductionInstance, witness: &Assignment) -> Result<Option<PremiseFailure>, CheckError> {
    let step = match inst.kind {
        SchemaKind::OneStep => 1,
        SchemaKind::BigStep(m) => m,
        _ => return Ok(None),
    };
    let x = &inst.variables[0];
    let Some(Value::List(lambda)) = witness.get(x) else {
        return Ok(None);
    };
    let mut params = witness.clone();
    params.remove(x);
    let d = Descent { model, phi: &inst.formula, x, params, step };
    if lambda.is_word() {
        return d.word(lambda.tail());
    }
    match model {
        Model::M2 => d.m2(lambda),
        Model::M1 { .. } => {
            let prefix = lambda.as_nelem().map_or(0, |n| n.prefix().len() as u64);
            let reach = atom_bounds(model, &inst.formula) + prefix;
            d.m1(lambda, reach)
        }
    }
}
