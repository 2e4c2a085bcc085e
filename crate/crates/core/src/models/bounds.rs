//! Term decomposition and stabilization bounds.
//!
//! With every parameter fixed, a list term `t(X)` denotes
//! `l0 ⌢ X ⌢ l1 ⌢ ... ⌢ X ⌢ ln` for constant segments `li`. The bounds below
//! are read off these segments.

use serde::Serialize;
use thiserror::Error;

use super::{m1_holds_a, EvalError, Model};
use crate::logic::{Assignment, Formula, Sort, Term, Var};
use crate::transfinite::{Block, TransfiniteList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("list variable {0} other than the distinguished variable occurs unassigned")]
    OtherListVariable(String),
    #[error("expected a list-sorted term, found `{0}`")]
    NotAList(String),
    #[error("expected an equation between lists, found `{0}`")]
    NotAListEquation(String),
    #[error("`{0}` uses append, which this structure does not interpret")]
    UsesAppend(String),
    #[error("`{0}` contains a symbol outside the signature with append")]
    OutsideSignature(String),
    #[error("A({0}) does not depend on the distinguished variable and is false")]
    ConstantlyFalse(String),
    #[error("the reference element {0} is a finite word")]
    StandardElement(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The constant segments `l0, ..., ln` around the `n` occurrences of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    segments: Vec<TransfiniteList>,
}

impl Decomposition {
    pub fn segments(&self) -> &[TransfiniteList] {
        &self.segments
    }

    /// Number of occurrences of `X`.
    pub fn occurrences(&self) -> usize {
        self.segments.len() - 1
    }

    /// `l0 ⌢ x ⌢ l1 ⌢ ... ⌢ x ⌢ ln`.
    pub fn apply(&self, x: &TransfiniteList) -> TransfiniteList {
        let mut acc = self.segments[0].clone();
        for seg in &self.segments[1..] {
            acc = acc.concat(x).concat(seg);
        }
        acc
    }
}

/// Splits `t` around the occurrences of `x`; other variables are read from `params`.
pub fn decompose_term(t: &Term, x: &Var, params: &Assignment) -> Result<Decomposition, BoundError> {
    let segments = match t {
        Term::Var(v) if v == x => vec![TransfiniteList::empty(), TransfiniteList::empty()],
        Term::Var(v) if v.sort() == Sort::List => match params.get(v).and_then(|val| val.as_list()) {
            Some(l) => vec![l.clone()],
            None => return Err(BoundError::OtherListVariable(v.name().to_string())),
        },
        Term::Nil => vec![TransfiniteList::empty()],
        Term::List(l) => vec![l.clone()],
        Term::Cons(h, tail) => {
            let head = Model::M2.eval_elem(h, params)?;
            let mut d = decompose_term(tail, x, params)?;
            d.segments[0] = d.segments[0].cons(head);
            return Ok(d);
        }
        Term::Append(a, b) => {
            let mut left = decompose_term(a, x, params)?.segments;
            let right = decompose_term(b, x, params)?.segments;
            let last = left.pop().expect("at least one segment");
            left.push(last.concat(&right[0]));
            left.extend_from_slice(&right[1..]);
            left
        }
        Term::Var(_) | Term::Elem(_) => return Err(BoundError::NotAList(t.to_string())),
    };
    Ok(Decomposition { segments })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    AAtom,
    M1Equation,
    M2Equation,
    FormulaSync,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationBound {
    pub kind: BoundKind,
    pub bound: u64,
    /// The case of the argument that produced the bound.
    pub trace: String,
}

impl StabilizationBound {
    fn new(kind: BoundKind, bound: u64, trace: impl Into<String>) -> Self {
        StabilizationBound { kind, bound, trace: trace.into() }
    }
}

/// `K` such that `A(t(N_k))` holds in `M1` with step `m` for every `k >= K`
/// with `m ∤ k`. A term without `x` gives `K = 0` when the constant atom is
/// true and an error when it is false.
pub fn a_atom_bound(m: u64, t: &Term, x: &Var, params: &Assignment) -> Result<StabilizationBound, BoundError> {
    let kind = BoundKind::AAtom;
    if t.uses_append() {
        return Err(BoundError::UsesAppend(t.to_string()));
    }
    let d = decompose_term(t, x, params)?;
    if d.occurrences() == 0 {
        if !m1_holds_a(m, &d.segments[0]) {
            return Err(BoundError::ConstantlyFalse(t.to_string()));
        }
        return Ok(StabilizationBound::new(kind, 0, "X does not occur and A(t) is constantly true: K = 0"));
    }
    let w = &d.segments[0];
    match w.tail().last() {
        None => Ok(StabilizationBound::new(kind, 0, "cons prefix w is empty: K = 0")),
        Some(&last) => Ok(StabilizationBound::new(
            kind,
            last + 2,
            format!("cons prefix w = {w}: K = last(w) + 2 = {}", last + 2),
        )),
    }
}

fn list_equation(e: &Formula) -> Result<(&Term, &Term), BoundError> {
    match e {
        Formula::Eq(a, b) if a.sort().ok() == Some(Sort::List) && b.sort().ok() == Some(Sort::List) => Ok((a, b)),
        _ => Err(BoundError::NotAListEquation(e.to_string())),
    }
}

/// `None` when `e` holds for every `X` in `M1`; otherwise `K` such that `e`
/// fails on every word of length `>= K` and on every `N_k` with `k >= K`.
pub fn equation_bound_m1(e: &Formula, x: &Var, params: &Assignment) -> Result<Option<StabilizationBound>, BoundError> {
    let kind = BoundKind::M1Equation;
    let (u, v) = list_equation(e)?;
    if u.uses_append() || v.uses_append() {
        return Err(BoundError::UsesAppend(e.to_string()));
    }
    let du = decompose_term(u, x, params)?;
    let dv = decompose_term(v, x, params)?;
    let bound = |k: u64, trace: String| Ok(Some(StabilizationBound::new(kind, k, trace)));
    match (du.occurrences(), dv.occurrences()) {
        (0, 0) if du == dv => Ok(None),
        (0, 0) => bound(0, "X does not occur and the sides differ: K = 0".into()),
        (1, 1) if du == dv => Ok(None),
        (1, 1) => bound(0, "both sides contain X with different cons prefixes: K = 0".into()),
        (1, 0) | (0, 1) => {
            let (var_side, constant) = if du.occurrences() == 1 { (&du, &dv) } else { (&dv, &du) };
            let w = var_side.segments[0].tail();
            let c = &constant.segments[0];
            let Ok(rest) = c.suffix_finite(w.len() as u64) else {
                return bound(0, format!("|w| = {} exceeds |{c}|: K = 0", w.len()));
            };
            if &rest.prepend_word(w) != c {
                return bound(0, format!("w is not a prefix of {c}: K = 0"));
            }
            if rest.is_word() {
                let k = rest.tail().len() as u64 + 1;
                bound(k, format!("constant = w ⌢ {rest} with a finite remainder: K = |l''| + 1 = {k}"))
            } else {
                let k = rest.head().expect("non-standard remainder is nonempty") + 1;
                bound(k, format!("constant = w ⌢ {rest} with a non-standard remainder: K = (l'')_0 + 1 = {k}"))
            }
        }
        _ => Err(BoundError::UsesAppend(e.to_string())),
    }
}

/// `None` when `e` holds for every `X` in `M2`; otherwise `N` such that
/// `e((n) ⌢ l)` fails for every `n >= N` and every list `l`.
pub fn equation_bound_m2(e: &Formula, x: &Var, params: &Assignment) -> Result<Option<StabilizationBound>, BoundError> {
    let kind = BoundKind::M2Equation;
    let (u, v) = list_equation(e)?;
    let mut d1 = decompose_term(u, x, params)?;
    let mut d2 = decompose_term(v, x, params)?;
    if d1 == d2 {
        return Ok(None);
    }
    if d1.occurrences() > d2.occurrences() {
        std::mem::swap(&mut d1, &mut d2);
    }
    let (n1, n2) = (d1.occurrences(), d2.occurrences());
    let bound = |k: u64, trace: String| Ok(Some(StabilizationBound::new(kind, k, trace)));
    let Some(j0) = (0..=n1).find(|&j| d1.segments[j] != d2.segments[j]) else {
        return bound(0, format!("segments agree up to occurrence {n1}; reduces to nil = X ⌢ ...: N = 0"));
    };
    let (a, b) = (&d1.segments[j0], &d2.segments[j0]);
    let xi = a.first_difference(b).expect("segments differ");
    let ra = a.suffix(&xi).expect("difference lies within both");
    let rb = b.suffix(&xi).expect("difference lies within both");
    match (ra.head(), rb.head()) {
        (Some(p), Some(q)) => bound(0, format!("segment {j0} differs at {xi} with entries {p} and {q}: N = 0")),
        (None, Some(q)) if j0 < n1 => {
            bound(q + 1, format!("segment {j0} is a proper prefix; X meets entry {q}: N = {}", q + 1))
        }
        (Some(p), None) if j0 < n2 => {
            bound(p + 1, format!("segment {j0} is a proper prefix; X meets entry {p}: N = {}", p + 1))
        }
        _ => bound(0, format!("one side ends inside segment {j0} while the other continues: N = 0")),
    }
}

/// `n0` such that `phi(lambda ↑ n)` and `phi((n))` agree for every `n >= n0`.
pub fn formula_sync_bound(
    phi: &Formula,
    x: &Var,
    lambda: &TransfiniteList,
    params: &Assignment,
) -> Result<StabilizationBound, BoundError> {
    let first = match lambda.blocks().first() {
        Some(Block::Letter(n)) => n,
        Some(Block::Cycle(c)) => &c[0],
        None => return Err(BoundError::StandardElement(lambda.to_string())),
    };
    let p = first.prefix().len() as u64;
    let k = first.start();
    let mut atoms = Vec::new();
    phi.visit_atoms(&mut |a| atoms.push(a));
    let mut n0 = 0;
    let mut trace = vec![format!("first letter of lambda has prefix length {p} and start {k}")];
    for atom in atoms {
        match atom {
            Formula::A(_) => return Err(BoundError::OutsideSignature(phi.to_string())),
            Formula::Eq(a, b) if a.sort().ok() == Some(Sort::List) => {
                if !(a.contains_var(x) || b.contains_var(x)) {
                    continue;
                }
                if let Some(nb) = equation_bound_m2(atom, x, params)? {
                    let cand = nb.bound.max(p).max((p + nb.bound).saturating_sub(k));
                    trace.push(format!("`{atom}`: N = {}, needs n >= {cand}", nb.bound));
                    n0 = n0.max(cand);
                }
            }
            _ => {}
        }
    }
    if trace.len() == 1 {
        trace.push("no list equation depends on X".into());
    }
    trace.push(format!("n0 = {n0}"));
    Ok(StabilizationBound::new(BoundKind::FormulaSync, n0, trace.join("; ")))
}
