//! Ordinals below ω^ω in Cantor normal form.
//!
//! An ordinal is stored as a list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents and non-zero coefficients, so every value has
//! exactly one representation and derived equality is ordinal equality.
//! Coefficients are arbitrary precision; exponents are `u64` and any exponent
//! overflow in a product is reported as a panic rather than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("cannot subtract {subtrahend} from the smaller ordinal {minuend}")]
    SubtrahendTooLarge { minuend: String, subtrahend: String },
    #[error("division by the zero ordinal")]
    DivisionByZero,
    #[error("ordinal syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// One `ω^exponent · coefficient` summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: u64,
    pub coefficient: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1u64)
    }

    pub fn omega() -> Self {
        Self::monomial(1, 1u64)
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        Self::monomial(0, n)
    }

    /// `ω^exponent · coefficient`; zero coefficient gives zero.
    pub fn monomial(exponent: u64, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Self::zero();
        }
        Ordinal { terms: vec![Term { exponent, coefficient }] }
    }

    /// Builds an ordinal from terms given in any order, merging them with
    /// ordinal addition (so smaller terms preceding larger ones are absorbed).
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| acc.add(&Self::monomial(e, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent == 0)
    }

    /// A successor ordinal has a non-zero finite part.
    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent == 0)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn leading_exponent(&self) -> Option<u64> {
        self.terms.first().map(|t| t.exponent)
    }

    /// The finite part (coefficient of ω^0).
    pub fn finite_part(&self) -> BigUint {
        match self.terms.last() {
            Some(t) if t.exponent == 0 => t.coefficient.clone(),
            _ => BigUint::zero(),
        }
    }

    /// Value as a machine integer when the ordinal is finite and fits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent == 0 => t.coefficient.to_u64(),
            _ => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_u64().and_then(|n| usize::try_from(n).ok())
    }

    /// Ordinal sum. Terms of `self` below the leading exponent of `rhs` are
    /// absorbed; a term at the same exponent has its coefficient merged.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent >= lead.exponent)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        match terms.last_mut() {
            Some(last) if last.exponent == lead.exponent => {
                last.coefficient += &lead.coefficient;
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Left subtraction: the unique `δ` with `rhs + δ = self`.
    pub fn sub_left(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let too_large = || OrdinalError::SubtrahendTooLarge {
            minuend: self.to_string(),
            subtrahend: rhs.to_string(),
        };
        for (i, a) in self.terms.iter().enumerate() {
            let Some(b) = rhs.terms.get(i) else {
                // rhs is a proper prefix of self
                return Ok(Ordinal { terms: self.terms[i..].to_vec() });
            };
            if a == b {
                continue;
            }
            return match a.exponent.cmp(&b.exponent) {
                Ordering::Greater => Ok(Ordinal { terms: self.terms[i..].to_vec() }),
                Ordering::Less => Err(too_large()),
                Ordering::Equal if b.coefficient < a.coefficient => {
                    let mut terms = vec![Term {
                        exponent: a.exponent,
                        coefficient: &a.coefficient - &b.coefficient,
                    }];
                    terms.extend_from_slice(&self.terms[i + 1..]);
                    Ok(Ordinal { terms })
                }
                Ordering::Equal => Err(too_large()),
            };
        }
        if rhs.terms.len() > self.terms.len() {
            Err(too_large())
        } else {
            Ok(Ordinal::zero())
        }
    }

    /// Ordinal product, right-distributing over the terms of `rhs`.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut acc = Ordinal::zero();
        for t in &rhs.terms {
            let part = if t.exponent == 0 {
                let mut terms = self.terms.clone();
                terms[0].coefficient = &lead.coefficient * &t.coefficient;
                Ordinal { terms }
            } else {
                let exponent = lead
                    .exponent
                    .checked_add(t.exponent)
                    .expect("ordinal exponent overflow");
                Ordinal::monomial(exponent, t.coefficient.clone())
            };
            acc = acc.add(&part);
        }
        acc
    }

    /// Left division with remainder: `(δ, μ)` with `self = divisor·δ + μ`
    /// and `μ < divisor`.
    pub fn divmod(&self, divisor: &Ordinal) -> Result<(Ordinal, Ordinal), OrdinalError> {
        let Some(lead) = divisor.terms.first() else {
            return Err(OrdinalError::DivisionByZero);
        };
        let e = lead.exponent;
        // Terms strictly above the divisor's leading exponent divide exactly:
        // divisor · ω^f·d = ω^(e+f)·d for f > 0.
        let split = self.terms.iter().take_while(|t| t.exponent > e).count();
        let mut quotient_terms: Vec<Term> = self.terms[..split]
            .iter()
            .map(|t| Term { exponent: t.exponent - e, coefficient: t.coefficient.clone() })
            .collect();
        let low = Ordinal { terms: self.terms[split..].to_vec() };

        let mut n = match low.terms.first() {
            Some(t) if t.exponent == e => &t.coefficient / &lead.coefficient,
            _ => BigUint::zero(),
        };
        if !n.is_zero() && divisor.mul(&Ordinal::finite(n.clone())) > low {
            n -= 1u32;
        }
        let remainder = low.sub_left(&divisor.mul(&Ordinal::finite(n.clone())))?;
        if !n.is_zero() {
            quotient_terms.push(Term { exponent: 0, coefficient: n });
        }
        Ok((Ordinal { terms: quotient_terms }, remainder))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then_with(|| a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl From<usize> for Ordinal {
    fn from(n: usize) -> Self {
        Ordinal::finite(n as u64)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match t.exponent {
                0 => write!(f, "{}", t.coefficient)?,
                1 => f.write_str("w")?,
                e => write!(f, "w^{e}")?,
            }
            if t.exponent > 0 && !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    /// Accepts the printed form and, more generally, any expression built
    /// from naturals, `w`, `^` (finite exponent), `*`, `+`, `-` and parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match expr::evaluate(s)? {
            expr::Value::Ordinal(o) => Ok(o),
            expr::Value::Pair(..) => Err(OrdinalError::Syntax {
                pos: 0,
                msg: "expected an ordinal, found a divmod pair".into(),
            }),
        }
    }
}

/// Small expression language over ordinals used by the CLI `ord` command.
///
/// Grammar (all binary operators left-associative):
///
/// ```text
/// top     := 'divmod' '(' sum ',' sum ')' | sum
/// sum     := product (('+' | '-') product)*
/// product := power ('*' power)*
/// power   := atom ('^' natural)?
/// atom    := natural | 'w' | '(' sum ')'
/// ```
pub mod expr {
    use super::{Ordinal, OrdinalError};
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use std::fmt;

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub enum Value {
        Ordinal(Ordinal),
        Pair(Ordinal, Ordinal),
    }

    impl fmt::Display for Value {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match self {
                Value::Ordinal(o) => write!(f, "{o}"),
                Value::Pair(q, r) => write!(f, "({q}, {r})"),
            }
        }
    }

    pub fn evaluate(text: &str) -> Result<Value, OrdinalError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        p.skip_ws();
        let value = if p.eat_keyword("divmod") {
            p.expect(b'(')?;
            let a = p.sum()?;
            p.expect(b',')?;
            let b = p.sum()?;
            p.expect(b')')?;
            let (q, r) = a.divmod(&b)?;
            Value::Pair(q, r)
        } else {
            Value::Ordinal(p.sum()?)
        };
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }

    struct Parser<'a> {
        src: &'a [u8],
        pos: usize,
    }

    impl Parser<'_> {
        fn error(&self, msg: &str) -> OrdinalError {
            OrdinalError::Syntax { pos: self.pos, msg: msg.to_string() }
        }

        fn skip_ws(&mut self) {
            while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.src.get(self.pos).copied()
        }

        fn eat(&mut self, c: u8) -> bool {
            if self.peek() == Some(c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, c: u8) -> Result<(), OrdinalError> {
            if self.eat(c) {
                Ok(())
            } else {
                Err(self.error(&format!("expected '{}'", c as char)))
            }
        }

        fn eat_keyword(&mut self, kw: &str) -> bool {
            self.skip_ws();
            let end = self.pos + kw.len();
            let matches = self.src.get(self.pos..end) == Some(kw.as_bytes())
                && !self.src.get(end).is_some_and(u8::is_ascii_alphanumeric);
            if matches {
                self.pos = end;
            }
            matches
        }

        fn natural(&mut self) -> Result<BigUint, OrdinalError> {
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a natural number"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            Ok(digits.parse().expect("validated digits"))
        }

        fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
            let mut acc = self.product()?;
            loop {
                if self.eat(b'+') {
                    acc = acc.add(&self.product()?);
                } else if self.eat(b'-') {
                    let rhs = self.product()?;
                    acc = acc.sub_left(&rhs)?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn product(&mut self) -> Result<Ordinal, OrdinalError> {
            let mut acc = self.power()?;
            while self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            }
            Ok(acc)
        }

        fn power(&mut self) -> Result<Ordinal, OrdinalError> {
            let at = self.pos;
            let base = self.atom()?;
            if !self.eat(b'^') {
                return Ok(base);
            }
            if base != Ordinal::omega() {
                return Err(OrdinalError::Syntax {
                    pos: at,
                    msg: "only w may be raised to a power".into(),
                });
            }
            let e = self.natural()?;
            let e = e.to_u64().ok_or_else(|| self.error("exponent too large"))?;
            Ok(Ordinal::monomial(e, 1u64))
        }

        fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let o = self.sum()?;
                    self.expect(b')')?;
                    Ok(o)
                }
                Some(b'w') => {
                    self.pos += 1;
                    Ok(Ordinal::omega())
                }
                Some(c) if c.is_ascii_digit() => Ok(Ordinal::finite(self.natural()?)),
                Some(_) => Err(self.error("expected a natural, 'w' or '('")),
                None => Err(self.error("unexpected end of input")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn comparison() {
        assert_eq!(o("w").cmp(&o("1")), Ordering::Greater);
        assert_eq!(o("w*2+3").cmp(&o("w*2+3")), Ordering::Equal);
        assert_eq!(o("w^2").cmp(&o("w*5+9")), Ordering::Greater);
        assert!(o("w + 1") < o("w + 2"));
        assert!(o("w") < o("w + 1"));
    }

    #[test]
    fn addition() {
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w").add(&o("1")).to_string(), "w + 1");
        assert_eq!(o("w+2").add(&o("w*2+1")), o("w*3+1"));
        assert_eq!(o("w^2 + w").add(&o("0")), o("w^2 + w"));
    }

    #[test]
    fn left_subtraction() {
        assert_eq!(o("w*2+3").sub_left(&o("w")).unwrap().to_string(), "w + 3");
        let a = o("w^3*2 + w + 7");
        assert_eq!(a.sub_left(&Ordinal::zero()).unwrap(), a);
        assert_eq!(a.sub_left(&a).unwrap(), Ordinal::zero());
        assert_eq!(o("w^2").sub_left(&o("w*5+9")).unwrap(), o("w^2"));
        assert!(matches!(
            o("1").sub_left(&o("2")),
            Err(OrdinalError::SubtrahendTooLarge { .. })
        ));
        assert!(o("w").sub_left(&o("w+1")).is_err());
    }

    #[test]
    fn multiplication() {
        assert_eq!(o("w").mul(&o("2")).to_string(), "w*2");
        assert_eq!(o("2").mul(&o("w")), o("w"));
        assert_eq!(o("w").mul(&o("w")).to_string(), "w^2");
        assert_eq!(o("w+1").mul(&o("2")), o("w*2+1"));
        assert_eq!(o("w+1").mul(&o("w")), o("w^2"));
        assert_eq!(o("0").mul(&o("w")), Ordinal::zero());
    }

    #[test]
    fn division_with_remainder() {
        let d = |a: &str, b: &str| o(a).divmod(&o(b)).unwrap();
        assert_eq!(d("w+3", "w"), (o("1"), o("3")));
        assert_eq!(d("w^2", "w"), (o("w"), o("0")));
        assert_eq!(d("5", "2"), (o("2"), o("1")));
        assert_eq!(d("w*3+1", "w+1"), (o("3"), o("0")));
        assert_eq!(d("w*3", "w+1"), (o("2"), o("w")));
        assert_eq!(o("5").divmod(&Ordinal::zero()), Err(OrdinalError::DivisionByZero));
    }

    #[test]
    fn right_cancellation_fails() {
        assert_eq!(o("1").add(&o("w")), o("2").add(&o("w")));
        assert_ne!(o("1"), o("2"));
    }

    #[test]
    fn printing_and_parsing() {
        for s in ["0", "5", "w", "w*2", "w^2*3 + w*2 + 5", "w^7 + 1"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w*2+3 - w").to_string(), "w + 3");
        assert_eq!(expr::evaluate("divmod(w^2, w)").unwrap().to_string(), "(w, 0)");
        assert!(expr::evaluate("1 - 2").is_err());
        assert!(matches!("w +".parse::<Ordinal>(), Err(OrdinalError::Syntax { .. })));
        assert!("3^2".parse::<Ordinal>().is_err());
    }
}
