//! Two-sorted first-order syntax over lists: element sort `i` and sort `list`.
//!
//! Terms are built from `nil`, `cons`, the optional `++` (append) and domain
//! constants written in list literal syntax. Formulas add equations, the
//! optional unary predicate `A`, the propositional connectives and quantifiers.

mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::transfinite::{Nat, TransfiniteList};

pub use parser::{parse_assignment, parse_formula, parse_term, ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Elem,
    List,
}

impl Sort {
    /// Sort implied by the case of a variable name.
    pub fn of_name(name: &str) -> Sort {
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            Sort::List
        } else {
            Sort::Elem
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Elem => "i",
            Sort::List => "list",
        })
    }
}

/// Which optional symbols are available on top of `nil`, `cons` and `=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub append: bool,
    pub predicate_a: bool,
}

impl Signature {
    pub const BASE: Signature = Signature { append: false, predicate_a: false };
    pub const WITH_A: Signature = Signature { append: false, predicate_a: true };
    pub const WITH_APPEND: Signature = Signature { append: true, predicate_a: false };
    pub const FULL: Signature = Signature { append: true, predicate_a: true };
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    name: String,
    sort: Sort,
}

impl Var {
    /// Variable whose sort follows the naming convention (upper case is a list).
    pub fn new(name: impl Into<String>) -> Var {
        let name = name.into();
        let sort = Sort::of_name(&name);
        Var { name, sort }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sort(&self) -> Sort {
        self.sort
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Nil,
    Cons(Box<Term>, Box<Term>),
    Append(Box<Term>, Box<Term>),
    Elem(Nat),
    List(TransfiniteList),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("expected a term of sort {expected}, found `{term}` of sort {found}")]
    Mismatch { expected: Sort, found: Sort, term: String },
    #[error("both sides of `{0}` must have the same sort")]
    Equation(String),
    #[error("cannot substitute `{term}` of sort {found} for variable {var} of sort {expected}")]
    Substitution { var: String, expected: Sort, found: Sort, term: String },
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name))
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Cons(Box::new(head), Box::new(tail))
    }

    pub fn append(left: Term, right: Term) -> Term {
        Term::Append(Box::new(left), Box::new(right))
    }

    /// `cons(t1, cons(t2, ... tail))`; the empty chain is `tail` itself.
    pub fn cons_chain(heads: impl IntoIterator<Item = Term, IntoIter: DoubleEndedIterator>, tail: Term) -> Term {
        heads.into_iter().rev().fold(tail, |acc, h| Term::cons(h, acc))
    }

    pub fn sort(&self) -> Result<Sort, SortError> {
        match self {
            Term::Var(v) => Ok(v.sort),
            Term::Elem(_) => Ok(Sort::Elem),
            Term::Nil | Term::List(_) => Ok(Sort::List),
            Term::Cons(h, t) => {
                expect_sort(h, Sort::Elem)?;
                expect_sort(t, Sort::List)?;
                Ok(Sort::List)
            }
            Term::Append(a, b) => {
                expect_sort(a, Sort::List)?;
                expect_sort(b, Sort::List)?;
                Ok(Sort::List)
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Cons(a, b) | Term::Append(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Nil | Term::Elem(_) | Term::List(_) => {}
        }
    }

    pub fn contains_var(&self, var: &Var) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::Cons(a, b) | Term::Append(a, b) => a.contains_var(var) || b.contains_var(var),
            Term::Nil | Term::Elem(_) | Term::List(_) => false,
        }
    }

    pub fn uses_append(&self) -> bool {
        match self {
            Term::Append(..) => true,
            Term::Cons(a, b) => a.uses_append() || b.uses_append(),
            _ => false,
        }
    }

    /// Replaces every occurrence of `var`; terms have no binders.
    pub fn substitute(&self, var: &Var, replacement: &Term) -> Result<Term, SortError> {
        check_substitution(var, replacement)?;
        Ok(self.replace(var, replacement))
    }

    fn replace(&self, var: &Var, replacement: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => replacement.clone(),
            Term::Cons(a, b) => Term::cons(a.replace(var, replacement), b.replace(var, replacement)),
            Term::Append(a, b) => Term::append(a.replace(var, replacement), b.replace(var, replacement)),
            other => other.clone(),
        }
    }
}

fn expect_sort(t: &Term, expected: Sort) -> Result<(), SortError> {
    let found = t.sort()?;
    if found == expected {
        Ok(())
    } else {
        Err(SortError::Mismatch { expected, found, term: t.to_string() })
    }
}

fn check_substitution(var: &Var, replacement: &Term) -> Result<(), SortError> {
    let found = replacement.sort()?;
    if found != var.sort {
        return Err(SortError::Substitution {
            var: var.name.clone(),
            expected: var.sort,
            found,
            term: replacement.to_string(),
        });
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Nil => f.write_str("nil"),
            Term::Cons(h, t) => write!(f, "cons({h}, {t})"),
            Term::Append(a, b) => {
                write!(f, "{a} ++ ")?;
                if matches!(**b, Term::Append(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Term::Elem(n) => write!(f, "{n}"),
            Term::List(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    A(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::Eq(a, b))
    }

    pub fn a(t: Term) -> Formula {
        Formula::A(t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// `forall v1. forall v2. ... body`, outermost binder first.
    pub fn forall_all(vars: impl IntoIterator<Item = Var, IntoIter: DoubleEndedIterator>, body: Formula) -> Formula {
        vars.into_iter().rev().fold(body, |acc, v| Formula::forall(v, acc))
    }

    /// Universal closure over the free variables in their sorted order.
    pub fn universal_closure(&self) -> Formula {
        Formula::forall_all(self.free_vars(), self.clone())
    }

    /// Splits off the leading block of universal quantifiers.
    pub fn strip_universals(&self) -> (Vec<Var>, &Formula) {
        let mut vars = Vec::new();
        let mut f = self;
        while let Formula::Forall(v, body) = f {
            vars.push(v.clone());
            f = body;
        }
        (vars, f)
    }

    pub fn is_open(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::A(_) => true,
            Formula::Not(a) => a.is_open(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.is_open() && b.is_open(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn check_sorts(&self) -> Result<(), SortError> {
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Eq(a, b) => {
                if a.sort()? == b.sort()? {
                    Ok(())
                } else {
                    Err(SortError::Equation(self.to_string()))
                }
            }
            Formula::A(t) => expect_sort(t, Sort::List),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.check_sorts(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.check_sorts()?;
                b.check_sorts()
            }
        }
    }

    /// Whether every symbol used belongs to `sig`.
    pub fn fits(&self, sig: &Signature) -> bool {
        let mut ok = true;
        self.visit_atoms(&mut |atom| match atom {
            Formula::Eq(a, b) => ok &= sig.append || !(a.uses_append() || b.uses_append()),
            Formula::A(t) => ok &= sig.predicate_a && (sig.append || !t.uses_append()),
            _ => {}
        });
        ok
    }

    /// Calls `f` on every atom (`True`, `False`, equations and `A`-atoms), left to right.
    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::A(_) => f(self),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add = |t: &Term| {
            for v in t.free_vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) => {
                add(a);
                add(b);
            }
            Formula::A(t) => add(t),
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of `replacement` for the free occurrences of `var`.
    pub fn substitute(&self, var: &Var, replacement: &Term) -> Result<Formula, SortError> {
        check_substitution(var, replacement)?;
        Ok(self.subst(var, replacement, &replacement.free_vars()))
    }

    fn subst(&self, var: &Var, t: &Term, t_vars: &BTreeSet<Var>) -> Formula {
        let rec = |f: &Formula| Box::new(f.subst(var, t, t_vars));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(a.replace(var, t), b.replace(var, t)),
            Formula::A(a) => Formula::A(a.replace(var, t)),
            Formula::Not(a) => Formula::Not(rec(a)),
            Formula::And(a, b) => Formula::And(rec(a), rec(b)),
            Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
            Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let rebuild = |v: Var, body: Formula| match self {
                    Formula::Forall(..) => Formula::forall(v, body),
                    _ => Formula::exists(v, body),
                };
                if v == var || !body.free_vars().contains(var) {
                    return self.clone();
                }
                if t_vars.contains(v) {
                    let mut avoid = body.free_vars();
                    avoid.extend(t_vars.iter().cloned());
                    avoid.insert(var.clone());
                    let fresh = fresh_var(v, &avoid);
                    let renamed = body.rename_free(v, &fresh);
                    rebuild(fresh, renamed.subst(var, t, t_vars))
                } else {
                    rebuild(v.clone(), body.subst(var, t, t_vars))
                }
            }
        }
    }

    fn rename_free(&self, from: &Var, to: &Var) -> Formula {
        let t = Term::Var(to.clone());
        self.subst(from, &t, &BTreeSet::from([to.clone()]))
    }

    /// Replaces every equation or `A`-atom by `f(atom)`; connectives are kept.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) | Formula::A(_) => f(self),
            Formula::Not(a) => Formula::not(a.map_atoms(f)),
            Formula::And(a, b) => {
                let a = a.map_atoms(f);
                Formula::and(a, b.map_atoms(f))
            }
            Formula::Or(a, b) => {
                let a = a.map_atoms(f);
                Formula::or(a, b.map_atoms(f))
            }
            Formula::Implies(a, b) => {
                let a = a.map_atoms(f);
                Formula::implies(a, b.map_atoms(f))
            }
            Formula::Forall(v, a) => Formula::forall(v.clone(), a.map_atoms(f)),
            Formula::Exists(v, a) => Formula::exists(v.clone(), a.map_atoms(f)),
        }
    }
}

/// `base` with the smallest numeric suffix that avoids `taken`.
pub fn fresh_var(base: &Var, taken: &BTreeSet<Var>) -> Var {
    let stem = base.name.trim_end_matches(|c: char| c.is_ascii_digit());
    (1..)
        .map(|i| Var { name: format!("{stem}{i}"), sort: base.sort })
        .find(|v| !taken.contains(v))
        .expect("unbounded supply of names")
}

// Binding strength used by the printer: higher binds tighter.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        _ => 4,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    let p = precedence(child);
    if p == 0 || p < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::A(t) => write!(f, "A({t})"),
            Formula::Not(inner) => match &**inner {
                Formula::Eq(a, b) => write!(f, "{a} != {b}"),
                other => {
                    f.write_str("~")?;
                    write_operand(f, other, 4)
                }
            },
            Formula::And(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(" & ")?;
                write_operand(f, b, 4)
            }
            Formula::Or(a, b) => {
                write_operand(f, a, 2)?;
                f.write_str(" | ")?;
                write_operand(f, b, 3)
            }
            Formula::Implies(a, b) => {
                write_operand(f, a, 2)?;
                f.write_str(" -> ")?;
                write_operand(f, b, 1)
            }
            Formula::Forall(v, body) => write!(f, "forall {v}:{}. {body}", v.sort),
            Formula::Exists(v, body) => write!(f, "exists {v}:{}. {body}", v.sort),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s, &Signature::FULL)
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s, &Signature::FULL)
    }
}

/// A domain element of either sort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Elem(Nat),
    List(TransfiniteList),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::Elem(_) => Sort::Elem,
            Value::List(_) => Sort::List,
        }
    }

    pub fn as_list(&self) -> Option<&TransfiniteList> {
        match self {
            Value::List(l) => Some(l),
            Value::Elem(_) => None,
        }
    }

    pub fn as_elem(&self) -> Option<Nat> {
        match self {
            Value::Elem(n) => Some(*n),
            Value::List(_) => None,
        }
    }

    /// The constant term denoting this value.
    pub fn to_term(&self) -> Term {
        match self {
            Value::Elem(n) => Term::Elem(*n),
            Value::List(l) => Term::List(l.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(n) => write!(f, "{n}"),
            Value::List(l) => write!(f, "{l}"),
        }
    }
}

/// Sort-respecting map from variables to domain elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, Value>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    /// Binds `var`; panics if the value has the wrong sort.
    pub fn set(&mut self, var: Var, value: Value) {
        assert_eq!(var.sort, value.sort(), "sort mismatch binding {var}");
        self.0.insert(var, value);
    }

    pub fn with(mut self, var: Var, value: Value) -> Assignment {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: &Var) -> Option<&Value> {
        self.0.get(var)
    }

    pub fn remove(&mut self, var: &Var) -> Option<Value> {
        self.0.remove(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Value)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `name -> literal` pairs for reports.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.0.iter().map(|(k, v)| (k.name.clone(), v.to_string())).collect()
    }
}

/// Serializes as a map from variable names to literals.
impl serde::Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (&k.name, v.to_string())))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
