//! Induction schema instances over lists, bounded checking of instances in
//! the two structures, exact counterexample certificates and benchmark output.

mod certificates;
mod check;
mod emit;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{fresh_var, Formula, Sort, SortError, Term, Var};

pub use certificates::{
    replicate_big_step_failure, replicate_right_cancellation_failure, replicate_right_decomposition_failure,
    BigStepCertificate, CertificateError, RightCancellationCertificate, RightDecompositionCertificate,
};
pub use check::{
    check_instance, check_universal, element_candidates, enumerate_domain, CheckConfig, CheckError, CheckReport,
    InstanceVerdict, PremiseReport, Verdict,
};
pub use emit::{emit_benchmarks, smtlib_big_step, tptp_big_step, BenchmarkFormat, EmitError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "schema", content = "steps")]
pub enum SchemaKind {
    OneStep,
    BigStep(u64),
    Double,
    Multivariate(Vec<u64>),
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaKind::OneStep => f.write_str("one-step"),
            SchemaKind::BigStep(m) => write!(f, "big-step({m})"),
            SchemaKind::Double => f.write_str("double"),
            SchemaKind::Multivariate(p) => {
                let parts: Vec<String> = p.iter().map(u64::to_string).collect();
                write!(f, "multivariate({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionInstance {
    pub kind: SchemaKind,
    pub formula: Formula,
    pub variables: Vec<Var>,
    /// Base premises first, the step premise last.
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl InductionInstance {
    /// Free variables of the induction formula other than the induction variables.
    pub fn parameters(&self) -> Vec<Var> {
        self.formula.free_vars().into_iter().filter(|v| !self.variables.contains(v)).collect()
    }

    /// `premises -> conclusion` closed over the parameters.
    pub fn axiom(&self) -> Formula {
        let body = Formula::implies(Formula::conjunction(self.premises.iter().cloned()), self.conclusion.clone());
        Formula::forall_all(self.parameters(), body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("induction variable {0} must have sort list")]
    NotAList(String),
    #[error("the step must be at least 1")]
    ZeroStep,
    #[error("induction variables must be pairwise distinct")]
    DuplicateVariable,
    #[error("{vars} induction variables but {steps} steps")]
    LengthMismatch { vars: usize, steps: usize },
    #[error("at least one induction variable is required")]
    NoVariables,
    #[error(transparent)]
    Sort(#[from] SortError),
}

fn require_list(v: &Var) -> Result<(), BuildError> {
    if v.sort() == Sort::List {
        Ok(())
    } else {
        Err(BuildError::NotAList(v.name().to_string()))
    }
}

/// Supplies element variables named after a list variable (`X` gives `x1, x2, ...`)
/// that avoid every name already taken.
struct FreshElems {
    taken: BTreeSet<Var>,
}

impl FreshElems {
    fn new(phi: &Formula, vars: &[Var]) -> Self {
        let mut taken = phi.free_vars();
        taken.extend(vars.iter().cloned());
        FreshElems { taken }
    }

    fn vector(&mut self, list_var: &Var, n: u64) -> Vec<Var> {
        let stem = Var::new(list_var.name().to_ascii_lowercase());
        (0..n)
            .map(|_| {
                let v = fresh_var(&stem, &self.taken);
                self.taken.insert(v.clone());
                v
            })
            .collect()
    }
}

fn terms(vars: &[Var]) -> Vec<Term> {
    vars.iter().cloned().map(Term::Var).collect()
}

/// `phi(nil) ∧ ∀X ∀x1 (phi(X) -> phi(cons(x1, X))) -> ∀X phi(X)`.
pub fn build_one_step(phi: &Formula, x: &Var) -> Result<InductionInstance, BuildError> {
    let mut inst = build_big_step(phi, x, 1)?;
    inst.kind = SchemaKind::OneStep;
    Ok(inst)
}

/// Bases `∀x1..x(i-1) phi(cons(x1, ..., x(i-1); nil))` for `i = 1..m` and the
/// step `∀X ∀x1..xm (phi(X) -> phi(cons(x1, ..., xm; X)))`.
pub fn build_big_step(phi: &Formula, x: &Var, m: u64) -> Result<InductionInstance, BuildError> {
    let inst = build_multivariate(phi, std::slice::from_ref(x), &[m])?;
    Ok(InductionInstance { kind: SchemaKind::BigStep(m), ..inst })
}

/// Bases `∀X phi(X, nil)` and `∀Y phi(nil, Y)`, step
/// `∀X ∀Y ∀x ∀y (phi(X, Y) -> phi(cons(x, X), cons(y, Y)))`.
pub fn build_double(phi: &Formula, x: &Var, y: &Var) -> Result<InductionInstance, BuildError> {
    require_list(x)?;
    require_list(y)?;
    if x == y {
        return Err(BuildError::DuplicateVariable);
    }
    let mut fresh = FreshElems::new(phi, &[x.clone(), y.clone()]);
    let ex = fresh.vector(x, 1).remove(0);
    let ey = fresh.vector(y, 1).remove(0);
    let base_y = Formula::forall(x.clone(), phi.substitute(y, &Term::Nil)?);
    let base_x = Formula::forall(y.clone(), phi.substitute(x, &Term::Nil)?);
    let stepped = phi
        .substitute(x, &Term::cons(Term::Var(ex.clone()), Term::Var(x.clone())))?
        .substitute(y, &Term::cons(Term::Var(ey.clone()), Term::Var(y.clone())))?;
    let step = Formula::forall_all(
        [x.clone(), y.clone(), ex, ey],
        Formula::implies(phi.clone(), stepped),
    );
    Ok(InductionInstance {
        kind: SchemaKind::Double,
        formula: phi.clone(),
        variables: vec![x.clone(), y.clone()],
        premises: vec![base_y, base_x, step],
        conclusion: Formula::forall_all([x.clone(), y.clone()], phi.clone()),
    })
}

/// Bases for each variable `Xi` and each `j = 1..pi`, with the other list
/// variables universally quantified, and one simultaneous step that prepends
/// `pi` fresh elements to each `Xi`.
pub fn build_multivariate(phi: &Formula, xs: &[Var], ps: &[u64]) -> Result<InductionInstance, BuildError> {
    if xs.is_empty() {
        return Err(BuildError::NoVariables);
    }
    if xs.len() != ps.len() {
        return Err(BuildError::LengthMismatch { vars: xs.len(), steps: ps.len() });
    }
    if ps.contains(&0) {
        return Err(BuildError::ZeroStep);
    }
    for (i, x) in xs.iter().enumerate() {
        require_list(x)?;
        if xs[..i].contains(x) {
            return Err(BuildError::DuplicateVariable);
        }
    }
    let mut fresh = FreshElems::new(phi, xs);
    let vectors: Vec<Vec<Var>> = xs.iter().zip(ps).map(|(x, &p)| fresh.vector(x, p)).collect();

    let mut premises = Vec::new();
    for (i, (x, vec)) in xs.iter().zip(&vectors).enumerate() {
        let others = xs[..i].iter().chain(&xs[i + 1..]).cloned();
        for j in 0..vec.len() {
            let elems = &vec[..j];
            let chain = Term::cons_chain(terms(elems), Term::Nil);
            let body = phi.substitute(x, &chain)?;
            premises.push(Formula::forall_all(others.clone().chain(elems.iter().cloned()).collect::<Vec<_>>(), body));
        }
    }
    let mut stepped = phi.clone();
    for (x, vec) in xs.iter().zip(&vectors) {
        stepped = stepped.substitute(x, &Term::cons_chain(terms(vec), Term::Var(x.clone())))?;
    }
    let bound: Vec<Var> = xs.iter().cloned().chain(vectors.iter().flatten().cloned()).collect();
    premises.push(Formula::forall_all(bound, Formula::implies(phi.clone(), stepped)));
    Ok(InductionInstance {
        kind: SchemaKind::Multivariate(ps.to_vec()),
        formula: phi.clone(),
        variables: xs.to_vec(),
        premises,
        conclusion: Formula::forall_all(xs.to_vec(), phi.clone()),
    })
}
