//! Exact counterexamples: big-step induction for `A` failing in `M1^m`, and
//! right cancellation and right decomposition failing in `M2`.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::build_big_step;
use crate::logic::{Assignment, Formula, Sort, Term, Value, Var};
use crate::models::{m1_holds_a, Model};
use crate::transfinite::{NElem, Nat, TransfiniteList};

/// Largest start index probed when checking the non-`A` characterization.
const PROBE_STARTS: Nat = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("big-step failure needs a step of at least 2, got {0}")]
    StepTooSmall(u64),
}

/// One verified claim of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub claim: String,
    pub holds: bool,
}

impl Claim {
    fn new(claim: impl Into<String>, holds: bool) -> Self {
        Claim { claim: claim.into(), holds }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleSummary {
    pub samples: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigStepCertificate {
    pub model: String,
    pub m: u64,
    pub premises: Vec<String>,
    pub conclusion: String,
    /// Each base premise only ever denotes finite words, all of which are in `A`.
    pub base: Vec<Claim>,
    /// The contrapositive of the step: a failure after the cons chain forces `X = N_(k+m)` with `m | k`.
    pub step: Vec<Claim>,
    pub witness: String,
    pub witness_outside_a: bool,
    pub sampled: SampleSummary,
}

impl BigStepCertificate {
    pub fn verified(&self) -> bool {
        self.base.iter().chain(&self.step).all(|c| c.holds) && self.witness_outside_a && self.sampled.violations == 0
    }
}

/// True when `t` has no list variables and no non-word list literals, so it
/// denotes a finite word under every assignment.
fn denotes_word(t: &Term) -> bool {
    match t {
        Term::Nil | Term::Elem(_) => true,
        Term::Var(v) => v.sort() == Sort::Elem,
        Term::List(l) => l.is_word(),
        Term::Cons(a, b) | Term::Append(a, b) => denotes_word(a) && denotes_word(b),
    }
}

/// Certificate that the big-step instance for `A(X)` fails in `M1^m`, with
/// `samples` random premise checks.
pub fn replicate_big_step_failure<R: Rng>(m: u64, samples: usize, rng: &mut R) -> Result<BigStepCertificate, CertificateError> {
    if m < 2 {
        return Err(CertificateError::StepTooSmall(m));
    }
    let model = Model::M1 { step: m };
    let x = Var::new("X");
    let phi = Formula::a(Term::Var(x.clone()));
    let inst = build_big_step(&phi, &x, m).expect("A(X) is a valid induction formula");
    let (bases, step) = inst.premises.split_at(m as usize);

    let mut base = Vec::new();
    for premise in bases {
        let (_, body) = premise.strip_universals();
        let word = matches!(body, Formula::A(t) if denotes_word(t));
        base.push(Claim::new(format!("`{premise}`: the argument of A denotes a finite word"), word));
    }
    let words_in_a = (0..=3).all(|len| {
        (0..4u64.pow(len)).all(|code| {
            let w: Vec<Nat> = (0..len).map(|i| (code / 4u64.pow(i)) % 4).collect();
            m1_holds_a(m, &TransfiniteList::word(w))
        })
    });
    base.push(Claim::new("every finite word is in A (words over {0..3} of length <= 3 probed)", words_in_a));

    let mut claims = Vec::new();
    let characterization = (0..PROBE_STARTS).all(|k| {
        let n = TransfiniteList::n(k);
        let prefixed = TransfiniteList::from_nelem(NElem::new(vec![k + 1], k));
        m1_holds_a(m, &n) == (k % m != 0) && m1_holds_a(m, &prefixed)
    });
    claims.push(Claim::new(
        format!("outside A exactly the N_k with {m} | k (empty main prefix), probed for k < {PROBE_STARTS}"),
        characterization,
    ));
    claims.push(Claim::new(
        format!("cons(n1, ..., n{m}; l) = N_k forces l = N_k ↑ {m} = N_(k+{m}), probed for k < {PROBE_STARTS}"),
        (0..PROBE_STARTS).all(|k| {
            let n = TransfiniteList::n(k);
            let entries: Vec<Nat> = (k..k + m).collect();
            let rest = n.suffix_finite(m).expect("N_k is infinite");
            rest == TransfiniteList::n(k + m) && rest.prepend_word(&entries) == n
        }),
    ));
    claims.push(Claim::new(
        format!("{m} | k implies {m} | k + {m} (checked on every residue)"),
        (0..m).all(|r| r % m != 0 || (r + m) % m == 0),
    ));
    claims.push(Claim::new(
        "hence A(cons(n1, ..., nm; l)) false implies A(l) false, so the step premise holds",
        claims.iter().all(|c| c.holds),
    ));

    let witness = TransfiniteList::n(0);
    let sigma = Assignment::new().with(x.clone(), Value::List(witness.clone()));
    let witness_outside_a = !model.eval_formula(&phi, &sigma).expect("A(X) evaluates in M1");

    let mut violations = 0;
    let (step_vars, step_body) = step[0].strip_universals();
    for i in 0..samples {
        let premise_ok = if i % 4 == 0 {
            let j = rng.gen_range(0..m as usize);
            let (vars, body) = bases[j].strip_universals();
            let mut sigma = Assignment::new();
            for v in vars {
                sigma.set(v.clone(), Value::Elem(rng.gen_range(0..8)));
            }
            model.eval_formula(body, &sigma)
        } else {
            let mut sigma = Assignment::new();
            // half of the step samples sit on the chain N_(k-m) = cons(k-m, ..., k-1; N_k)
            let k = rng.gen_range(0..4 * m) * if rng.gen_bool(0.5) { 1 } else { m } + m;
            let on_chain = rng.gen_bool(0.5);
            for (idx, v) in step_vars.iter().enumerate() {
                let value = match v.sort() {
                    Sort::List if on_chain => Value::List(TransfiniteList::n(k)),
                    Sort::List => Value::List(random_m1_element(rng)),
                    Sort::Elem if on_chain => Value::Elem(k - m + idx as u64 - 1),
                    Sort::Elem => Value::Elem(rng.gen_range(0..8)),
                };
                sigma.set(v.clone(), value);
            }
            model.eval_formula(step_body, &sigma)
        };
        if premise_ok != Ok(true) {
            violations += 1;
        }
    }

    Ok(BigStepCertificate {
        model: model.to_string(),
        m,
        premises: inst.premises.iter().map(Formula::to_string).collect(),
        conclusion: inst.conclusion.to_string(),
        base,
        step: claims,
        witness: witness.to_string(),
        witness_outside_a,
        sampled: SampleSummary { samples, violations },
    })
}

fn random_m1_element<R: Rng>(rng: &mut R) -> TransfiniteList {
    let prefix: Vec<Nat> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..8)).collect();
    if rng.gen_bool(0.3) {
        TransfiniteList::word(prefix)
    } else {
        TransfiniteList::from_nelem(NElem::new(prefix, rng.gen_range(0..12)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightCancellationCertificate {
    pub formula: String,
    pub witness: Assignment,
    /// `Y ++ X` evaluated under the witness.
    pub left_side: String,
    pub equation_holds: bool,
    pub y_nonempty: bool,
    pub formula_false: bool,
    /// Nonempty words `w` probed for `w ++ X != X`, each confirmed by comparing entries.
    pub word_probes: SampleSummary,
}

impl RightCancellationCertificate {
    pub fn verified(&self) -> bool {
        self.equation_holds && self.y_nonempty && self.formula_false && self.word_probes.violations == 0
    }
}

/// `Y = N_0`, `X = N_0^ω` satisfy `Y ++ X = X` in `M2` with `Y` nonempty.
pub fn replicate_right_cancellation_failure() -> RightCancellationCertificate {
    let y = TransfiniteList::n(0);
    let x = TransfiniteList::omega_power(vec![NElem::tail(0)]).expect("cycle is nonempty");
    let phi: Formula = "Y ++ X = X -> Y = nil".parse().expect("valid formula");
    let witness = Assignment::new()
        .with(Var::new("Y"), Value::List(y.clone()))
        .with(Var::new("X"), Value::List(x.clone()));
    let left = y.concat(&x);
    let formula_false = Model::M2.eval_formula(&phi, &witness) == Ok(false);

    let mut samples = 0;
    let mut violations = 0;
    for len in 1..=4u32 {
        for code in 0..3u64.pow(len) {
            let w: Vec<Nat> = (0..len).map(|i| (code / 3u64.pow(i)) % 3).collect();
            let lhs = TransfiniteList::word(w.clone()).concat(&x);
            let differs = (0..=w.len() as u64 + 1).any(|i| lhs.at_finite(i).ok() != x.at_finite(i).ok());
            samples += 1;
            if !differs || lhs == x {
                violations += 1;
            }
        }
    }

    RightCancellationCertificate {
        formula: phi.to_string(),
        witness,
        left_side: left.to_string(),
        equation_holds: left == x,
        y_nonempty: !y.is_empty(),
        formula_false,
        word_probes: SampleSummary { samples, violations },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightDecompositionCertificate {
    pub formula: String,
    pub witness: String,
    pub nonempty: bool,
    pub last_decomposition: Option<String>,
    /// Lists that do decompose, with their decomposition.
    pub controls: Vec<(String, Option<String>)>,
}

impl RightDecompositionCertificate {
    pub fn verified(&self) -> bool {
        self.nonempty && self.last_decomposition.is_none() && self.controls.iter().all(|(_, d)| d.is_some())
    }
}

fn show_decomposition(l: &TransfiniteList) -> Option<String> {
    l.last_decomposition().map(|(init, last)| format!("{init} ++ cons({last}, nil)"))
}

/// `N_0` is nonempty and has no last element.
pub fn replicate_right_decomposition_failure() -> RightDecompositionCertificate {
    let witness = TransfiniteList::n(0);
    let controls = [
        TransfiniteList::word(vec![1, 2]),
        TransfiniteList::omega_power(vec![NElem::tail(0)]).expect("cycle is nonempty").concat(&TransfiniteList::word(vec![5])),
    ];
    RightDecompositionCertificate {
        formula: "X = nil | exists x':i. exists X':list. X = X' ++ cons(x', nil)".into(),
        witness: witness.to_string(),
        nonempty: !witness.is_empty(),
        last_decomposition: show_decomposition(&witness),
        controls: controls.iter().map(|l| (l.to_string(), show_decomposition(l))).collect(),
    }
}
