use super::*;

fn f(s: &str) -> Formula {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn t(s: &str) -> Term {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn roundtrip(s: &str) {
    let parsed = f(s);
    let printed = parsed.to_string();
    assert_eq!(f(&printed), parsed, "{s} printed as {printed}");
}

#[test]
fn parses_injectivity_axiom() {
    let got = parse_formula("cons(x, X) = cons(y, Y) -> x = y & X = Y", &Signature::BASE).unwrap();
    let want = Formula::implies(
        Formula::eq(Term::cons(Term::var("x"), Term::var("X")), Term::cons(Term::var("y"), Term::var("Y"))),
        Formula::and(Formula::eq(Term::var("x"), Term::var("y")), Formula::eq(Term::var("X"), Term::var("Y"))),
    );
    assert_eq!(got, want);
}

#[test]
fn parses_append_axiom() {
    let got = parse_formula("nil ++ Y = Y", &Signature::WITH_APPEND).unwrap();
    assert_eq!(got, Formula::eq(Term::append(Term::Nil, Term::var("Y")), Term::var("Y")));
}

#[test]
fn unbalanced_predicate_is_a_syntax_error_at_end() {
    let err = parse_formula("A(nil", &Signature::WITH_A).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Syntax);
    assert_eq!(err.pos, 5);
}

#[test]
fn error_kinds_are_distinct() {
    let lexical = "X = $".parse::<Formula>().unwrap_err();
    assert_eq!((lexical.kind, lexical.pos), (ParseErrorKind::Lexical, 4));
    let sort = "cons(X, nil) = nil".parse::<Formula>().unwrap_err();
    assert_eq!((sort.kind, sort.pos), (ParseErrorKind::Sort, 5));
    let sort = "x = X".parse::<Formula>().unwrap_err();
    assert_eq!(sort.kind, ParseErrorKind::Sort);
    let sort = "forall X:i. A(X)".parse::<Formula>().unwrap_err();
    assert_eq!(sort.kind, ParseErrorKind::Sort);
    let sig = parse_formula("X ++ Y = Y", &Signature::WITH_A).unwrap_err();
    assert_eq!(sig.kind, ParseErrorKind::Signature);
    let sig = parse_formula("A(X)", &Signature::WITH_APPEND).unwrap_err();
    assert_eq!(sig.kind, ParseErrorKind::Signature);
    let syntax = "X = ".parse::<Formula>().unwrap_err();
    assert_eq!(syntax.kind, ParseErrorKind::Syntax);
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(f("~A(X) & A(Y) | A(Z)"), Formula::or(
        Formula::and(Formula::not(f("A(X)")), f("A(Y)")),
        f("A(Z)"),
    ));
    assert_eq!(f("A(X) -> A(Y) -> A(Z)"), Formula::implies(f("A(X)"), Formula::implies(f("A(Y)"), f("A(Z)"))));
    assert_eq!(t("X ++ Y ++ Z"), Term::append(Term::append(t("X"), t("Y")), t("Z")));
    assert_eq!(f("(A(X))"), f("A(X)"));
    assert_eq!(f("(X ++ Y) = Z"), Formula::eq(t("X ++ Y"), t("Z")));
    assert_eq!(f("X != Y"), Formula::neq(t("X"), t("Y")));
    // a quantifier body extends to the right
    assert_eq!(
        f("A(X) & forall Y:list. A(Y) | A(X)"),
        Formula::and(f("A(X)"), Formula::forall(Var::new("Y"), f("A(Y) | A(X)")))
    );
}

#[test]
fn printing_roundtrips() {
    for s in [
        "nil != cons(x, X)",
        "cons(x, X) = cons(y, Y) -> x = y & X = Y",
        "nil ++ Y = Y",
        "cons(x, X) ++ Y = cons(x, X ++ Y)",
        "(A(X) -> A(Y)) -> A(Z)",
        "A(X) & (A(Y) & A(Z))",
        "~(A(X) | ~A(Y))",
        "X ++ (Y ++ Z) = (X ++ Y) ++ Z",
        "forall X:list. (exists x:i. X = cons(x, nil)) | X = nil",
        "~forall X:list. A(X)",
        "(forall X:list. A(X)) & A(Y)",
        "A(cons(3, [1,2]~N(7))) & X = rep(N(0)).[5]",
        "true & ~false",
    ] {
        roundtrip(s);
    }
    assert_eq!(f("cons(1, N(0)) = X").to_string(), "cons(1, N(0)) = X");
    assert_eq!(Term::List("rep(N(0)).[5]".parse().unwrap()).to_string(), "rep(N(0)).[5]");
}

#[test]
fn sort_checker_rejects_mismatches() {
    assert!(Term::cons(Term::Nil, Term::Nil).sort().is_err());
    assert!(Term::cons(Term::Elem(1), Term::Elem(2)).sort().is_err());
    assert!(Term::append(Term::var("x"), Term::Nil).sort().is_err());
    assert!(Formula::A(Term::var("x")).check_sorts().is_err());
    assert!(Formula::eq(Term::var("x"), Term::Nil).check_sorts().is_err());
    assert!(f("cons(x, X) = Y").check_sorts().is_ok());
}

#[test]
fn substitution() {
    let x = Var::new("X");
    assert_eq!(f("A(X)").substitute(&x, &Term::Nil).unwrap(), f("A(nil)"));
    assert_eq!(f("A(X)").substitute(&x, &t("cons(x1, X)")).unwrap(), f("A(cons(x1, X))"));
    let shadowed = f("forall X:list. A(X)");
    assert_eq!(shadowed.substitute(&x, &Term::Nil).unwrap(), shadowed);
    // the binder y is renamed so the substituted y stays free
    let got = f("forall y:i. X = cons(y, Y)").substitute(&x, &t("cons(y, nil)")).unwrap();
    assert_eq!(got, f("forall y1:i. cons(y, nil) = cons(y1, Y)"));
    assert!(f("A(X)").substitute(&x, &Term::Elem(0)).is_err());
}

#[test]
fn free_variables() {
    let phi = f("forall x:i. X = cons(x, Y) & y = x");
    let names: Vec<_> = phi.free_vars().iter().map(|v| v.name().to_string()).collect();
    assert_eq!(names, ["X", "Y", "y"]);
    assert!(f("exists X:list. A(X)").free_vars().is_empty());
    assert_eq!(f("A(X)").universal_closure(), f("forall X:list. A(X)"));
}

#[test]
fn open_formulas_and_signatures() {
    assert!(f("A(X) -> X = nil").is_open());
    assert!(!f("~exists x:i. X = cons(x, nil)").is_open());
    assert!(f("A(X)").fits(&Signature::WITH_A));
    assert!(!f("A(X ++ Y)").fits(&Signature::WITH_A));
    assert!(!f("A(X)").fits(&Signature::WITH_APPEND));
}

#[test]
fn assignments() {
    let a = parse_assignment("Y=N(0); X=rep(N(0))").unwrap();
    assert_eq!(a.get(&Var::new("Y")), Some(&Value::List(TransfiniteList::n(0))));
    assert_eq!(a.to_string(), "X=rep(N(0)); Y=N(0)");
    let b = parse_assignment("x=3, X=nil").unwrap();
    assert_eq!(b.get(&Var::new("x")), Some(&Value::Elem(3)));
    assert_eq!(b.get(&Var::new("X")), Some(&Value::List(TransfiniteList::empty())));
    assert!(parse_assignment("").unwrap().is_empty());
    assert_eq!(parse_assignment("x=[1]").unwrap_err().kind, ParseErrorKind::Sort);
    assert!(parse_assignment("X=[1] Y=[2]").is_err());
}

#[test]
fn cons_chains() {
    let chain = Term::cons_chain([Term::var("x1"), Term::var("x2")], Term::var("X"));
    assert_eq!(chain, t("cons(x1, cons(x2, X))"));
    assert_eq!(Term::cons_chain(Vec::new(), Term::Nil), Term::Nil);
}
