//! Recursive-descent parser for terms, formulas and assignments.
//!
//! ```text
//! formula  := disj ('->' formula)?
//! disj     := conj ('|' conj)*
//! conj     := unary ('&' unary)*
//! unary    := '~' unary | ('forall' | 'exists') ident ':' sort '.' formula | atom
//! atom     := 'true' | 'false' | 'A' '(' term ')' | term ('=' | '!=') term | '(' formula ')'
//! term     := primary ('++' primary)*
//! primary  := 'nil' | 'cons' '(' term ',' term ')' | ident | nat | literal | '(' term ')'
//! ```
//!
//! A quantifier body extends as far to the right as possible.

use thiserror::Error;

use super::{Assignment, Formula, Signature, Sort, Term, Value, Var};
use crate::transfinite::syntax::{parse_literal_at, starts_literal};
use crate::transfinite::TransfiniteList;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Sort,
    Signature,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind:?} error at offset {pos}: {msg}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Lit(TransfiniteList),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Semi,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Arrow,
    Append,
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(Tok::Num(n)) => format!("`{n}`"),
        Some(Tok::Lit(l)) => format!("literal `{l}`"),
        Some(other) => format!("{other:?}"),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let lex_err = |pos: usize, msg: String| ParseError { kind: ParseErrorKind::Lexical, pos, msg };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'[' || ((c == b'N' || c == b'r') && starts_literal(bytes, i)) {
            let (lit, end) = parse_literal_at(bytes, i).map_err(|e| lex_err(e.pos, e.msg))?;
            out.push((Tok::Lit(lit), i));
            i = end;
            continue;
        }
        let two = bytes.get(i..i + 2);
        let (tok, len) = match (c, two) {
            (_, Some(b"->")) => (Tok::Arrow, 2),
            (_, Some(b"++")) => (Tok::Append, 2),
            (_, Some(b"!=")) => (Tok::Neq, 2),
            (b'(', _) => (Tok::LParen, 1),
            (b')', _) => (Tok::RParen, 1),
            (b',', _) => (Tok::Comma, 1),
            (b':', _) => (Tok::Colon, 1),
            (b'.', _) => (Tok::Dot, 1),
            (b';', _) => (Tok::Semi, 1),
            (b'=', _) => (Tok::Eq, 1),
            (b'~', _) => (Tok::Not, 1),
            (b'&', _) => (Tok::And, 1),
            (b'|', _) => (Tok::Or, 1),
            (b'0'..=b'9', _) => {
                let end = i + bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                let n = src[i..end]
                    .parse()
                    .map_err(|_| lex_err(i, "number too large".into()))?;
                (Tok::Num(n), end - i)
            }
            (c, _) if c.is_ascii_alphabetic() || c == b'_' => {
                let len = bytes[i..]
                    .iter()
                    .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_' || **b == b'\'')
                    .count();
                (Tok::Ident(src[i..i + len].to_string()), len)
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(lex_err(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, i));
        i += len;
    }
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["nil", "cons", "A", "true", "false", "forall", "exists"];

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    sig: &'s Signature,
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, kind: ParseErrorKind, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { kind, pos: self.offset(), msg: msg.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error(ParseErrorKind::Syntax, format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn at_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            self.unexpected("end of input")
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            Ok(Formula::implies(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Or) {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        for (kw, universal) in [("forall", true), ("exists", false)] {
            if self.at_ident(kw) {
                self.pos += 1;
                return self.quantifier(universal);
            }
        }
        self.atom()
    }

    fn quantifier(&mut self, universal: bool) -> PResult<Formula> {
        let name = match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return self.unexpected("a variable name"),
        };
        self.pos += 1;
        self.expect(Tok::Colon, "`:`")?;
        let sort = match self.peek() {
            Some(Tok::Ident(s)) if s == "i" => Sort::Elem,
            Some(Tok::Ident(s)) if s == "list" => Sort::List,
            _ => return self.unexpected("a sort (`i` or `list`)"),
        };
        let var = Var::new(name);
        if var.sort() != sort {
            return self.error(
                ParseErrorKind::Sort,
                format!("variable {var} has sort {} by its name but is annotated {sort}", var.sort()),
            );
        }
        self.pos += 1;
        self.expect(Tok::Dot, "`.`")?;
        let body = self.formula()?;
        Ok(if universal { Formula::forall(var, body) } else { Formula::exists(var, body) })
    }

    fn atom(&mut self) -> PResult<Formula> {
        if self.at_ident("true") {
            self.pos += 1;
            return Ok(Formula::True);
        }
        if self.at_ident("false") {
            self.pos += 1;
            return Ok(Formula::False);
        }
        if self.at_ident("A") {
            if !self.sig.predicate_a {
                return self.error(ParseErrorKind::Signature, "predicate A is not in the signature");
            }
            self.pos += 1;
            self.expect(Tok::LParen, "`(`")?;
            let t = self.list_term()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Formula::A(t));
        }
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            match self.equation() {
                Ok(f) => return Ok(f),
                Err(first) if first.kind == ParseErrorKind::Syntax => {
                    self.pos = save + 1;
                    let inner = self.formula();
                    match inner {
                        Ok(f) => {
                            self.expect(Tok::RParen, "`)`")?;
                            return Ok(f);
                        }
                        // report whichever reading got further
                        Err(second) => return Err(if second.pos >= first.pos { second } else { first }),
                    }
                }
                Err(e) => return Err(e),
            }
        }
        self.equation()
    }

    fn equation(&mut self) -> PResult<Formula> {
        let start = self.offset();
        let lhs = self.term()?;
        let negated = match self.peek() {
            Some(Tok::Eq) => false,
            Some(Tok::Neq) => true,
            _ => return self.unexpected("`=` or `!=`"),
        };
        self.pos += 1;
        let rhs = self.term()?;
        let (ls, rs) = (lhs.sort().expect("checked"), rhs.sort().expect("checked"));
        if ls != rs {
            return Err(ParseError {
                kind: ParseErrorKind::Sort,
                pos: start,
                msg: format!("equation between sort {ls} and sort {rs}"),
            });
        }
        let eq = Formula::eq(lhs, rhs);
        Ok(if negated { Formula::not(eq) } else { eq })
    }

    fn sorted_term(&mut self, expected: Sort) -> PResult<Term> {
        let start = self.offset();
        let t = self.term()?;
        let found = t.sort().expect("parsed terms are well-sorted");
        if found != expected {
            return Err(ParseError {
                kind: ParseErrorKind::Sort,
                pos: start,
                msg: format!("expected a term of sort {expected}, found `{t}` of sort {found}"),
            });
        }
        Ok(t)
    }

    fn list_term(&mut self) -> PResult<Term> {
        self.sorted_term(Sort::List)
    }

    fn term(&mut self) -> PResult<Term> {
        let first_pos = self.offset();
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::Append) {
            if !self.sig.append {
                return self.error(ParseErrorKind::Signature, "`++` is not in the signature");
            }
            if acc.sort().expect("checked") != Sort::List {
                return Err(ParseError {
                    kind: ParseErrorKind::Sort,
                    pos: first_pos,
                    msg: format!("`++` needs list operands, found `{acc}` of sort i"),
                });
            }
            self.pos += 1;
            let rhs = self.list_term_primary()?;
            acc = Term::append(acc, rhs);
        }
        Ok(acc)
    }

    fn list_term_primary(&mut self) -> PResult<Term> {
        let start = self.offset();
        let t = self.primary()?;
        if t.sort().expect("checked") != Sort::List {
            return Err(ParseError {
                kind: ParseErrorKind::Sort,
                pos: start,
                msg: format!("`++` needs list operands, found `{t}` of sort i"),
            });
        }
        Ok(t)
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Term::Elem(n))
            }
            Some(Tok::Lit(l)) => {
                self.pos += 1;
                Ok(Term::List(l))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(s)) if s == "nil" => {
                self.pos += 1;
                Ok(Term::Nil)
            }
            Some(Tok::Ident(s)) if s == "cons" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let h = self.sorted_term(Sort::Elem)?;
                self.expect(Tok::Comma, "`,`")?;
                let t = self.list_term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::cons(h, t))
            }
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(Term::Var(Var::new(s)))
            }
            _ => self.unexpected("a term"),
        }
    }
}

fn parser<'s>(text: &str, sig: &'s Signature) -> PResult<Parser<'s>> {
    Ok(Parser { toks: lex(text)?, pos: 0, end: text.len(), sig })
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = parser(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = parser(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `X=rep(N(0)); y=3` (separators `;` or `,`, empty input allowed).
pub fn parse_assignment(text: &str) -> Result<Assignment, ParseError> {
    let mut p = parser(text, &Signature::FULL)?;
    let mut out = Assignment::new();
    while p.peek().is_some() {
        let name = match p.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return p.unexpected("a variable name"),
        };
        p.pos += 1;
        p.expect(Tok::Eq, "`=`")?;
        let var = Var::new(name);
        let value = match (var.sort(), p.peek().cloned()) {
            (Sort::Elem, Some(Tok::Num(n))) => Value::Elem(n),
            (Sort::List, Some(Tok::Lit(l))) => Value::List(l),
            (Sort::List, Some(Tok::Ident(s))) if s == "nil" => Value::List(TransfiniteList::empty()),
            (Sort::Elem, Some(Tok::Lit(_) | Tok::Ident(_))) | (Sort::List, Some(Tok::Num(_))) => {
                return p.error(ParseErrorKind::Sort, format!("value for {var} must have sort {}", var.sort()))
            }
            _ => return p.unexpected("a value"),
        };
        p.pos += 1;
        out.set(var, value);
        if !(p.eat(&Tok::Semi) || p.eat(&Tok::Comma)) {
            p.finish()?;
        }
    }
    Ok(out)
}
