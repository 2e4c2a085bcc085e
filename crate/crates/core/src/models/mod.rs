//! The two non-standard list structures.
//!
//! `M1 { step: m }` has lists `ℕ* ∪ {w ⌢ N_k}`, interprets `cons` by prepending
//! and the predicate `A` as "every word, and every `w ⌢ N_k` with `w` nonempty
//! or `m ∤ k`". It has no append. `M2` has the whole implemented fragment as
//! lists and interprets `++` as transfinite concatenation; it has no `A`.

mod bounds;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gen::{self, ElementShape};
use crate::logic::{Assignment, Formula, Signature, Sort, Term, Value, Var};
use crate::transfinite::{Block, Nat, TransfiniteList};

pub use bounds::{
    a_atom_bound, decompose_term, equation_bound_m1, equation_bound_m2, formula_sync_bound, BoundError, BoundKind,
    Decomposition, StabilizationBound,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    M1 { step: u64 },
    M2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not assigned")]
    Unassigned(String),
    #[error("symbol {symbol} is not in the signature of {model}")]
    NotInSignature { symbol: &'static str, model: String },
    #[error("quantified formulas cannot be evaluated directly: {0}")]
    Quantifier(String),
    #[error("{value} is not an element of {model}")]
    OutsideDomain { value: String, model: String },
    #[error("ill-sorted: {0}")]
    IllSorted(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("model must be `m2` or `m1:<step>` with step >= 1, got {0:?}")]
pub struct ModelSyntaxError(String);

impl Model {
    pub fn m1(step: u64) -> Option<Model> {
        (step >= 1).then_some(Model::M1 { step })
    }

    pub fn signature(&self) -> Signature {
        match self {
            Model::M1 { .. } => Signature::WITH_A,
            Model::M2 => Signature::WITH_APPEND,
        }
    }

    /// Domain guard for the list sort.
    pub fn contains(&self, l: &TransfiniteList) -> bool {
        match self {
            Model::M1 { .. } => match l.blocks() {
                [] => true,
                [Block::Letter(_)] => l.tail().is_empty(),
                _ => false,
            },
            Model::M2 => true,
        }
    }

    fn check_domain(&self, l: &TransfiniteList) -> Result<(), EvalError> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(EvalError::OutsideDomain { value: l.to_string(), model: self.to_string() })
        }
    }

    fn missing(&self, symbol: &'static str) -> EvalError {
        EvalError::NotInSignature { symbol, model: self.to_string() }
    }

    /// Interpretation of `A`; only `M1` has it.
    pub fn holds_a(&self, l: &TransfiniteList) -> Result<bool, EvalError> {
        match self {
            Model::M1 { step } => {
                self.check_domain(l)?;
                Ok(m1_holds_a(*step, l))
            }
            Model::M2 => Err(self.missing("A")),
        }
    }

    pub fn eval_term(&self, t: &Term, sigma: &Assignment) -> Result<Value, EvalError> {
        match t {
            Term::Var(v) => {
                let val = sigma.get(v).ok_or_else(|| EvalError::Unassigned(v.name().to_string()))?;
                if let Value::List(l) = val {
                    self.check_domain(l)?;
                }
                Ok(val.clone())
            }
            Term::Nil => Ok(Value::List(TransfiniteList::empty())),
            Term::Elem(n) => Ok(Value::Elem(*n)),
            Term::List(l) => {
                self.check_domain(l)?;
                Ok(Value::List(l.clone()))
            }
            Term::Cons(h, tail) => {
                let h = self.eval_elem(h, sigma)?;
                let tail = self.eval_list(tail, sigma)?;
                Ok(Value::List(tail.cons(h)))
            }
            Term::Append(a, b) => {
                if !self.signature().append {
                    return Err(self.missing("++"));
                }
                let a = self.eval_list(a, sigma)?;
                let b = self.eval_list(b, sigma)?;
                Ok(Value::List(a.concat(&b)))
            }
        }
    }

    pub fn eval_list(&self, t: &Term, sigma: &Assignment) -> Result<TransfiniteList, EvalError> {
        match self.eval_term(t, sigma)? {
            Value::List(l) => Ok(l),
            Value::Elem(_) => Err(EvalError::IllSorted(format!("`{t}` is not a list"))),
        }
    }

    pub fn eval_elem(&self, t: &Term, sigma: &Assignment) -> Result<Nat, EvalError> {
        match self.eval_term(t, sigma)? {
            Value::Elem(n) => Ok(n),
            Value::List(_) => Err(EvalError::IllSorted(format!("`{t}` is not an element"))),
        }
    }

    /// Truth value of a quantifier-free formula.
    pub fn eval_formula(&self, phi: &Formula, sigma: &Assignment) -> Result<bool, EvalError> {
        match phi {
            Formula::True => Ok(true),
            Formula::False => Ok(false),
            Formula::Eq(a, b) => {
                let a = self.eval_term(a, sigma)?;
                let b = self.eval_term(b, sigma)?;
                if a.sort() != b.sort() {
                    return Err(EvalError::IllSorted(phi.to_string()));
                }
                Ok(a == b)
            }
            Formula::A(t) => {
                let l = self.eval_list(t, sigma)?;
                self.holds_a(&l)
            }
            Formula::Not(a) => Ok(!self.eval_formula(a, sigma)?),
            Formula::And(a, b) => Ok(self.eval_formula(a, sigma)? && self.eval_formula(b, sigma)?),
            Formula::Or(a, b) => Ok(self.eval_formula(a, sigma)? || self.eval_formula(b, sigma)?),
            Formula::Implies(a, b) => Ok(!self.eval_formula(a, sigma)? || self.eval_formula(b, sigma)?),
            Formula::Forall(..) | Formula::Exists(..) => Err(EvalError::Quantifier(phi.to_string())),
        }
    }
}

/// `A` in `M1` with step `m`: all words, and `w ⌢ N_k` when `w ≠ ε` or `m ∤ k`.
pub fn m1_holds_a(m: u64, l: &TransfiniteList) -> bool {
    match l.as_nelem() {
        Some(n) => !n.prefix().is_empty() || n.start() % m != 0,
        None => true,
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::M1 { step } => write!(f, "m1:{step}"),
            Model::M2 => f.write_str("m2"),
        }
    }
}

impl FromStr for Model {
    type Err = ModelSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelSyntaxError(s.to_string());
        match s.trim() {
            "m2" | "M2" => Ok(Model::M2),
            other => {
                let step = other
                    .strip_prefix("m1:")
                    .or_else(|| other.strip_prefix("M1:"))
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?;
                Model::m1(step).ok_or_else(bad)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    #[serde(rename = "L0.1")]
    NilNotCons,
    #[serde(rename = "L0.2")]
    ConsInjective,
    #[serde(rename = "L1.1")]
    AppendNil,
    #[serde(rename = "L1.2")]
    AppendCons,
    #[serde(rename = "CA")]
    CaseAnalysis,
}

impl Axiom {
    pub const ALL: [Axiom; 5] =
        [Axiom::NilNotCons, Axiom::ConsInjective, Axiom::AppendNil, Axiom::AppendCons, Axiom::CaseAnalysis];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::NilNotCons => "L0.1",
            Axiom::ConsInjective => "L0.2",
            Axiom::AppendNil => "L1.1",
            Axiom::AppendCons => "L1.2",
            Axiom::CaseAnalysis => "CA",
        }
    }

    /// Matrix of the axiom; its universal closure is the axiom itself.
    pub fn formula(&self) -> Formula {
        let text = match self {
            Axiom::NilNotCons => "nil != cons(x, X)",
            Axiom::ConsInjective => "cons(x, X) = cons(y, Y) -> x = y & X = Y",
            Axiom::AppendNil => "nil ++ Y = Y",
            Axiom::AppendCons => "cons(x, X) ++ Y = cons(x, X ++ Y)",
            Axiom::CaseAnalysis => "X = nil | exists X':list. exists x':i. X = cons(x', X')",
        };
        text.parse().expect("axiom text parses")
    }

    /// Axioms whose symbols all belong to `model`.
    pub fn applicable(model: &Model) -> Vec<Axiom> {
        Axiom::ALL.into_iter().filter(|a| a.formula().fits(&model.signature())).collect()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub samples: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub model: String,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("axiom {axiom} uses a symbol that {model} does not interpret")]
    NotApplicable { axiom: Axiom, model: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Draws an assignment for `vars`; a later variable copies an earlier one of
/// the same sort with probability 1/3 so that premises of implications hold.
pub fn sample_assignment<R: Rng>(rng: &mut R, model: &Model, vars: &[Var], shape: &ElementShape) -> Assignment {
    let mut sigma = Assignment::new();
    let mut drawn: Vec<(Sort, Value)> = Vec::new();
    for v in vars {
        let same: Vec<&Value> = drawn.iter().filter(|(s, _)| *s == v.sort()).map(|(_, x)| x).collect();
        let value = if !same.is_empty() && rng.gen_ratio(1, 3) {
            same[rng.gen_range(0..same.len())].clone()
        } else {
            gen::value(rng, model, v.sort(), shape)
        };
        drawn.push((v.sort(), value.clone()));
        sigma.set(v.clone(), value);
    }
    sigma
}

/// Checks `X = nil` or `X = cons(head, rest)` with the exact witness
/// `head = X(0)`, `rest = X ↑ 1`, which must itself lie in the domain.
fn case_analysis_holds(model: &Model, x: &TransfiniteList) -> Result<bool, EvalError> {
    let Some(head) = x.head() else {
        return Ok(true);
    };
    let rest = x.suffix_finite(1).expect("nonempty list has a suffix at 1");
    if !model.contains(&rest) {
        return Ok(false);
    }
    let sigma = Assignment::new()
        .with(Var::new("X"), Value::List(x.clone()))
        .with(Var::new("x'"), Value::Elem(head))
        .with(Var::new("X'"), Value::List(rest));
    model.eval_formula(&"X = cons(x', X')".parse().expect("fixed text"), &sigma)
}

/// Evaluates each axiom on `count` sampled assignments and reports the first
/// counterexample found.
pub fn check_axioms<R: Rng>(
    model: &Model,
    axioms: &[Axiom],
    rng: &mut R,
    count: usize,
) -> Result<AxiomReport, AxiomError> {
    let shape = ElementShape::default();
    let mut results = Vec::new();
    for &axiom in axioms {
        let phi = axiom.formula();
        if !phi.fits(&model.signature()) {
            return Err(AxiomError::NotApplicable { axiom, model: model.to_string() });
        }
        let vars: Vec<Var> = phi.free_vars().into_iter().collect();
        let mut counterexample = None;
        let mut tried = 0;
        for _ in 0..count {
            tried += 1;
            let sigma = sample_assignment(rng, model, &vars, &shape);
            let holds = match axiom {
                Axiom::CaseAnalysis => {
                    let x = sigma.get(&Var::new("X")).and_then(Value::as_list).expect("X is sampled");
                    case_analysis_holds(model, x)?
                }
                _ => model.eval_formula(&phi, &sigma)?,
            };
            if !holds {
                counterexample = Some(sigma.to_string());
                break;
            }
        }
        results.push(AxiomResult { axiom, samples: tried, passed: counterexample.is_none(), counterexample });
    }
    Ok(AxiomReport { model: model.to_string(), results })
}
