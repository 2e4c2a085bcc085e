//! Benchmark problems for the big-step instances of `A(X)`: premises asserted,
//! conclusion negated (SMT-LIB 2) or conjectured (TPTP typed first-order form).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use super::build_big_step;
use crate::logic::{Formula, Sort, Term, Var};
use crate::models::Axiom;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchmarkFormat {
    SmtLib2,
    Tptp,
}

impl BenchmarkFormat {
    pub fn extension(self) -> &'static str {
        match self {
            BenchmarkFormat::SmtLib2 => "smt2",
            BenchmarkFormat::Tptp => "p",
        }
    }
}

impl FromStr for BenchmarkFormat {
    type Err = EmitError;

    fn from_str(s: &str) -> Result<Self, EmitError> {
        match s.to_ascii_lowercase().as_str() {
            "smtlib2" | "smtlib" | "smt2" => Ok(BenchmarkFormat::SmtLib2),
            "tptp" => Ok(BenchmarkFormat::Tptp),
            _ => Err(EmitError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("unknown benchmark format `{0}` (expected smtlib2 or tptp)")]
    UnknownFormat(String),
    #[error("no step sizes given")]
    EmptyRange,
    #[error("the step must be at least 1")]
    ZeroStep,
    #[error("`{0}` cannot be expressed over an uninterpreted element sort")]
    Unsupported(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn smt_symbol(v: &Var) -> String {
    let name = v.name();
    if name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

fn smt_sort(s: Sort) -> &'static str {
    match s {
        Sort::Elem => "Elem",
        Sort::List => "List",
    }
}

fn smt_term(t: &Term) -> Result<String, EmitError> {
    Ok(match t {
        Term::Var(v) => smt_symbol(v),
        Term::Nil => "nil".into(),
        Term::Cons(h, tl) => format!("(cons {} {})", smt_term(h)?, smt_term(tl)?),
        Term::Append(..) | Term::Elem(_) | Term::List(_) => return Err(EmitError::Unsupported(t.to_string())),
    })
}

/// Consecutive quantifiers of one kind and their body.
fn quantifier_block(phi: &Formula) -> (Vec<&Var>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = phi;
    let universal = matches!(phi, Formula::Forall(..));
    loop {
        match cur {
            Formula::Forall(v, b) if universal => {
                vars.push(v);
                cur = b;
            }
            Formula::Exists(v, b) if !universal => {
                vars.push(v);
                cur = b;
            }
            _ => return (vars, cur),
        }
    }
}

pub(crate) fn smt_formula(phi: &Formula) -> Result<String, EmitError> {
    Ok(match phi {
        Formula::True => "true".into(),
        Formula::False => "false".into(),
        Formula::Eq(a, b) => format!("(= {} {})", smt_term(a)?, smt_term(b)?),
        Formula::A(t) => format!("(A {})", smt_term(t)?),
        Formula::Not(f) => format!("(not {})", smt_formula(f)?),
        Formula::And(a, b) => format!("(and {} {})", smt_formula(a)?, smt_formula(b)?),
        Formula::Or(a, b) => format!("(or {} {})", smt_formula(a)?, smt_formula(b)?),
        Formula::Implies(a, b) => format!("(=> {} {})", smt_formula(a)?, smt_formula(b)?),
        Formula::Forall(..) | Formula::Exists(..) => {
            let (vars, body) = quantifier_block(phi);
            let q = if matches!(phi, Formula::Forall(..)) { "forall" } else { "exists" };
            let binders: Vec<String> = vars.iter().map(|v| format!("({} {})", smt_symbol(v), smt_sort(v.sort()))).collect();
            format!("({q} ({}) {})", binders.join(" "), smt_formula(body)?)
        }
    })
}

fn tptp_var(v: &Var) -> String {
    let name: String = v.name().chars().map(|c| if c == '\'' { 'p' } else { c }).collect();
    format!("V{name}")
}

fn tptp_sort(s: Sort) -> &'static str {
    match s {
        Sort::Elem => "elem",
        Sort::List => "list",
    }
}

fn tptp_term(t: &Term) -> Result<String, EmitError> {
    Ok(match t {
        Term::Var(v) => tptp_var(v),
        Term::Nil => "nil".into(),
        Term::Cons(h, tl) => format!("cons({}, {})", tptp_term(h)?, tptp_term(tl)?),
        Term::Append(..) | Term::Elem(_) | Term::List(_) => return Err(EmitError::Unsupported(t.to_string())),
    })
}

pub(crate) fn tptp_formula(phi: &Formula) -> Result<String, EmitError> {
    Ok(match phi {
        Formula::True => "$true".into(),
        Formula::False => "$false".into(),
        Formula::Eq(a, b) => format!("{} = {}", tptp_term(a)?, tptp_term(b)?),
        Formula::A(t) => format!("a({})", tptp_term(t)?),
        Formula::Not(f) => match f.as_ref() {
            Formula::Eq(a, b) => format!("{} != {}", tptp_term(a)?, tptp_term(b)?),
            _ => format!("~ ({})", tptp_formula(f)?),
        },
        Formula::And(a, b) => format!("({} & {})", tptp_formula(a)?, tptp_formula(b)?),
        Formula::Or(a, b) => format!("({} | {})", tptp_formula(a)?, tptp_formula(b)?),
        Formula::Implies(a, b) => format!("({} => {})", tptp_formula(a)?, tptp_formula(b)?),
        Formula::Forall(..) | Formula::Exists(..) => {
            let (vars, body) = quantifier_block(phi);
            let q = if matches!(phi, Formula::Forall(..)) { "!" } else { "?" };
            let binders: Vec<String> = vars.iter().map(|v| format!("{}: {}", tptp_var(v), tptp_sort(v.sort()))).collect();
            format!("{q}[{}]: {}", binders.join(", "), tptp_formula(body)?)
        }
    })
}

fn a_instance(m: u64) -> super::InductionInstance {
    let x = Var::new("X");
    build_big_step(&Formula::a(Term::Var(x.clone())), &x, m).expect("m >= 1 and X is a list variable")
}

/// SMT-LIB 2 problem: premises of the `m`-step instance for `A(X)` and the
/// negated conclusion; `unsat` means the instance is provable.
pub fn smtlib_big_step(m: u64) -> Result<String, EmitError> {
    if m == 0 {
        return Err(EmitError::ZeroStep);
    }
    let inst = a_instance(m);
    let mut out = String::new();
    writeln!(out, "; {m}-step list induction for the predicate A").unwrap();
    out.push_str("(set-logic UFDT)\n");
    out.push_str("(declare-sort Elem 0)\n");
    out.push_str("(declare-datatypes ((List 0)) (((nil) (cons (head Elem) (tail List)))))\n");
    out.push_str("(declare-fun A (List) Bool)\n");
    for p in &inst.premises {
        writeln!(out, "(assert {})", smt_formula(p)?).unwrap();
    }
    writeln!(out, "(assert (not {}))", smt_formula(&inst.conclusion)?).unwrap();
    out.push_str("(check-sat)\n");
    Ok(out)
}

/// TPTP typed first-order problem: list axioms and premises as axioms, the
/// conclusion as conjecture.
pub fn tptp_big_step(m: u64) -> Result<String, EmitError> {
    if m == 0 {
        return Err(EmitError::ZeroStep);
    }
    let inst = a_instance(m);
    let mut out = String::new();
    writeln!(out, "% {m}-step list induction for the predicate A").unwrap();
    out.push_str("tff(elem_type, type, elem: $tType).\n");
    out.push_str("tff(list_type, type, list: $tType).\n");
    out.push_str("tff(nil_type, type, nil: list).\n");
    out.push_str("tff(cons_type, type, cons: (elem * list) > list).\n");
    out.push_str("tff(a_type, type, a: list > $o).\n");
    for (name, axiom) in [("nil_not_cons", Axiom::NilNotCons), ("cons_injective", Axiom::ConsInjective)] {
        writeln!(out, "tff({name}, axiom, {}).", tptp_formula(&axiom.formula().universal_closure())?).unwrap();
    }
    let (bases, step) = inst.premises.split_at(inst.premises.len() - 1);
    for (i, b) in bases.iter().enumerate() {
        writeln!(out, "tff(base_{i}, axiom, {}).", tptp_formula(b)?).unwrap();
    }
    writeln!(out, "tff(step, axiom, {}).", tptp_formula(&step[0])?).unwrap();
    writeln!(out, "tff(goal, conjecture, {}).", tptp_formula(&inst.conclusion)?).unwrap();
    Ok(out)
}

/// Writes `big_step_m<m>.<ext>` into `out_dir` for every `m` in `steps`.
pub fn emit_benchmarks(steps: &[u64], format: BenchmarkFormat, out_dir: &Path) -> Result<Vec<PathBuf>, EmitError> {
    if steps.is_empty() {
        return Err(EmitError::EmptyRange);
    }
    std::fs::create_dir_all(out_dir).map_err(|source| EmitError::Io { path: out_dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for &m in steps {
        let text = match format {
            BenchmarkFormat::SmtLib2 => smtlib_big_step(m)?,
            BenchmarkFormat::Tptp => tptp_big_step(m)?,
        };
        let path = out_dir.join(format!("big_step_m{m}.{}", format.extension()));
        std::fs::write(&path, text).map_err(|source| EmitError::Io { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}
