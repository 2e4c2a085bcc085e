//! Transfinite sequences of naturals of length below ω³.
//!
//! The building block is an [`NElem`]: a finite word followed by the tail
//! `N_k = (k, k+1, k+2, …)`. A [`TransfiniteList`] is the flattening of a
//! sequence of `NElem` letters followed by a finite word. Each ω-run of letters
//! is ultimately periodic: a finite run of [`Block::Letter`]s closed off by a
//! [`Block::Cycle`] that repeats ω times.
//!
//! All values are kept in canonical form, which makes structural equality
//! coincide with pointwise equality of the denoted sequences:
//!
//! * every `NElem` has no trailing prefix entry equal to `start - 1`;
//! * every cycle is primitive (not a power of a shorter letter sequence);
//! * no letter immediately before a cycle equals the cycle's last letter
//!   (such a letter is absorbed by rotating the cycle right);
//! * finite words have no blocks at all.

pub(crate) mod syntax;

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ordinal::Ordinal;

pub use syntax::{parse_literal_at, LiteralError};

/// Entries of every sequence are naturals.
pub type Nat = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransfiniteError {
    #[error("an omega-cycle needs at least one letter")]
    EmptyCycle,
    #[error("position {position} is out of range for a sequence of length {length}")]
    OutOfRange { position: String, length: String },
    #[error("sequence entry exceeds the natural-number range")]
    Overflow,
}

/// `prefix ⌢ N_start`, canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NElem {
    prefix: Vec<Nat>,
    start: Nat,
}

impl NElem {
    /// Canonical form of `prefix ⌢ N_start`: trailing prefix entries equal to
    /// `start - 1` are folded into the tail.
    pub fn new(mut prefix: Vec<Nat>, mut start: Nat) -> Self {
        while start > 0 && prefix.last() == Some(&(start - 1)) {
            prefix.pop();
            start -= 1;
        }
        NElem { prefix, start }
    }

    /// `N_k`.
    pub fn tail(start: Nat) -> Self {
        NElem { prefix: Vec::new(), start }
    }

    /// The main prefix.
    pub fn prefix(&self) -> &[Nat] {
        &self.prefix
    }

    /// Start of the main suffix.
    pub fn start(&self) -> Nat {
        self.start
    }

    pub fn at(&self, n: u64) -> Result<Nat, TransfiniteError> {
        match usize::try_from(n).ok().and_then(|i| self.prefix.get(i)) {
            Some(&v) => Ok(v),
            None => self
                .start
                .checked_add(n - self.prefix.len() as u64)
                .ok_or(TransfiniteError::Overflow),
        }
    }

    /// `self ↑ n`.
    pub fn suffix(&self, n: u64) -> Result<NElem, TransfiniteError> {
        let len = self.prefix.len() as u64;
        if n <= len {
            Ok(NElem { prefix: self.prefix[n as usize..].to_vec(), start: self.start })
        } else {
            let start = self.start.checked_add(n - len).ok_or(TransfiniteError::Overflow)?;
            Ok(NElem::tail(start))
        }
    }

    /// `word ⌢ self`.
    pub fn prepend(&self, word: &[Nat]) -> NElem {
        if word.is_empty() {
            return self.clone();
        }
        let mut prefix = word.to_vec();
        prefix.extend_from_slice(&self.prefix);
        // A canonical prefix stays canonical when extended on the left,
        // unless it was empty.
        if self.prefix.is_empty() {
            NElem::new(prefix, self.start)
        } else {
            NElem { prefix, start: self.start }
        }
    }

    /// First position at which the two sequences differ. Past both prefixes
    /// the sequences are shifted copies of each other, so one extra position
    /// decides the rest.
    pub fn first_difference(&self, other: &NElem) -> Option<u64> {
        if self == other {
            return None;
        }
        let horizon = self.prefix.len().max(other.prefix.len()) as u64;
        (0..=horizon).find(|&i| self.at(i).ok() != other.at(i).ok())
    }

    fn fmt_literal(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            fmt_word(&self.prefix, f)?;
            f.write_str("~")?;
        }
        write!(f, "N({})", self.start)
    }
}

impl fmt::Display for NElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_literal(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// A single letter, contributing ω positions.
    Letter(NElem),
    /// A non-empty primitive letter sequence repeated ω times, contributing ω² positions.
    Cycle(Vec<NElem>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TransfiniteList {
    blocks: Vec<Block>,
    tail: Vec<Nat>,
}

impl TransfiniteList {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn word(entries: Vec<Nat>) -> Self {
        TransfiniteList { blocks: Vec::new(), tail: entries }
    }

    pub fn from_nelem(n: NElem) -> Self {
        TransfiniteList { blocks: vec![Block::Letter(n)], tail: Vec::new() }
    }

    /// `N_k` as a list.
    pub fn n(start: Nat) -> Self {
        Self::from_nelem(NElem::tail(start))
    }

    /// The flattening of `cycle` repeated ω times.
    pub fn omega_power(cycle: Vec<NElem>) -> Result<Self, TransfiniteError> {
        Self::from_parts(vec![Block::Cycle(cycle)], Vec::new())
    }

    /// Canonicalizing constructor.
    pub fn from_parts(blocks: Vec<Block>, tail: Vec<Nat>) -> Result<Self, TransfiniteError> {
        let blocks = blocks
            .into_iter()
            .map(|b| match b {
                Block::Letter(n) => Ok(Block::Letter(NElem::new(n.prefix, n.start))),
                Block::Cycle(c) if c.is_empty() => Err(TransfiniteError::EmptyCycle),
                Block::Cycle(c) => Ok(Block::Cycle(
                    c.into_iter().map(|n| NElem::new(n.prefix, n.start)).collect(),
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TransfiniteList { blocks: canonical_blocks(blocks), tail })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn tail(&self) -> &[Nat] {
        &self.tail
    }

    /// Standard elements are the finite words.
    pub fn is_word(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty() && self.tail.is_empty()
    }

    /// The single letter when the list is exactly one `NElem`.
    pub fn as_nelem(&self) -> Option<&NElem> {
        match (self.blocks.as_slice(), self.tail.is_empty()) {
            ([Block::Letter(n)], true) => Some(n),
            _ => None,
        }
    }

    /// Ordinal length: ω · (letter count) + |tail|.
    pub fn length(&self) -> Ordinal {
        let omega = Ordinal::omega();
        let letters = self.blocks.iter().fold(Ordinal::zero(), |acc, b| match b {
            Block::Letter(_) => acc.add(&Ordinal::one()),
            Block::Cycle(_) => acc.add(&omega),
        });
        omega.mul(&letters).add(&Ordinal::from(self.tail.len()))
    }

    fn out_of_range(&self, position: &Ordinal) -> TransfiniteError {
        TransfiniteError::OutOfRange {
            position: position.to_string(),
            length: self.length().to_string(),
        }
    }

    /// Entry at position `xi`.
    pub fn at(&self, xi: &Ordinal) -> Result<Nat, TransfiniteError> {
        let omega = Ordinal::omega();
        let omega2 = Ordinal::monomial(2, 1u64);
        let mut rest = xi.clone();
        for block in &self.blocks {
            match block {
                Block::Letter(n) => {
                    if rest < omega {
                        return n.at(rest.to_u64().ok_or(TransfiniteError::Overflow)?);
                    }
                    rest = rest.sub_left(&omega).expect("rest >= ω");
                }
                Block::Cycle(c) => {
                    if rest < omega2 {
                        let (q, k) = rest.divmod(&omega).expect("ω > 0");
                        let idx = (q.finite_part() % c.len()).to_usize().expect("below cycle length");
                        return c[idx].at(k.to_u64().ok_or(TransfiniteError::Overflow)?);
                    }
                    rest = rest.sub_left(&omega2).expect("rest >= ω²");
                }
            }
        }
        rest.to_usize()
            .and_then(|i| self.tail.get(i).copied())
            .ok_or_else(|| self.out_of_range(xi))
    }

    /// Entry at a finite position.
    pub fn at_finite(&self, n: u64) -> Result<Nat, TransfiniteError> {
        self.at(&Ordinal::from(n))
    }

    /// The first entry, if the list is non-empty.
    pub fn head(&self) -> Option<Nat> {
        match self.blocks.first() {
            Some(Block::Letter(n)) => n.at(0).ok(),
            Some(Block::Cycle(c)) => c[0].at(0).ok(),
            None => self.tail.first().copied(),
        }
    }

    /// `word ⌢ self`.
    pub fn prepend_word(&self, word: &[Nat]) -> TransfiniteList {
        if word.is_empty() {
            return self.clone();
        }
        let Some(first) = self.blocks.first() else {
            let mut tail = word.to_vec();
            tail.extend_from_slice(&self.tail);
            return TransfiniteList::word(tail);
        };
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        match first {
            Block::Letter(n) => blocks.push(Block::Letter(n.prepend(word))),
            Block::Cycle(c) => {
                // unroll one letter of the cycle to absorb the word
                blocks.push(Block::Letter(c[0].prepend(word)));
                blocks.push(Block::Cycle(rotate_left(c, 1)));
            }
        }
        blocks.extend_from_slice(&self.blocks[1..]);
        TransfiniteList { blocks: canonical_blocks(blocks), tail: self.tail.clone() }
    }

    /// `(n) ⌢ self`.
    pub fn cons(&self, n: Nat) -> TransfiniteList {
        self.prepend_word(&[n])
    }

    /// `self ⌢ other`: our tail word merges into the first letter of `other`.
    pub fn concat(&self, other: &TransfiniteList) -> TransfiniteList {
        let moved = other.prepend_word(&self.tail);
        if moved.blocks.is_empty() {
            return TransfiniteList { blocks: self.blocks.clone(), tail: moved.tail };
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(moved.blocks);
        TransfiniteList { blocks: canonical_blocks(blocks), tail: moved.tail }
    }

    /// Finite power `self ⌢ … ⌢ self` (`n` copies).
    pub fn repeat(&self, n: usize) -> TransfiniteList {
        (0..n).fold(TransfiniteList::empty(), |acc, _| acc.concat(self))
    }

    /// `self ↑ beta`, defined by `(a ↑ β)_γ = a_{β+γ}`.
    pub fn suffix(&self, beta: &Ordinal) -> Result<TransfiniteList, TransfiniteError> {
        if *beta > self.length() {
            return Err(self.out_of_range(beta));
        }
        let omega = Ordinal::omega();
        let omega2 = Ordinal::monomial(2, 1u64);
        let mut rest = beta.clone();
        for (i, block) in self.blocks.iter().enumerate() {
            if rest.is_zero() {
                return Ok(TransfiniteList {
                    blocks: self.blocks[i..].to_vec(),
                    tail: self.tail.clone(),
                });
            }
            let later = &self.blocks[i + 1..];
            match block {
                Block::Letter(n) => {
                    if rest >= omega {
                        rest = rest.sub_left(&omega).expect("rest >= ω");
                        continue;
                    }
                    let k = rest.to_u64().ok_or(TransfiniteError::Overflow)?;
                    let mut blocks = vec![Block::Letter(n.suffix(k)?)];
                    blocks.extend_from_slice(later);
                    return Ok(self.with_blocks(blocks));
                }
                Block::Cycle(c) => {
                    if rest >= omega2 {
                        rest = rest.sub_left(&omega2).expect("rest >= ω²");
                        continue;
                    }
                    let (q, k) = rest.divmod(&omega).expect("ω > 0");
                    let shift = (q.finite_part() % c.len()).to_usize().expect("below cycle length");
                    let rotated = rotate_left(c, shift);
                    let k = k.to_u64().ok_or(TransfiniteError::Overflow)?;
                    let mut blocks = Vec::with_capacity(later.len() + 2);
                    if k == 0 {
                        blocks.push(Block::Cycle(rotated));
                    } else {
                        blocks.push(Block::Letter(rotated[0].suffix(k)?));
                        blocks.push(Block::Cycle(rotate_left(&rotated, 1)));
                    }
                    blocks.extend_from_slice(later);
                    return Ok(self.with_blocks(blocks));
                }
            }
        }
        let k = rest.to_usize().filter(|&k| k <= self.tail.len()).ok_or_else(|| self.out_of_range(beta))?;
        Ok(TransfiniteList::word(self.tail[k..].to_vec()))
    }

    /// `self ↑ n` for finite `n`.
    pub fn suffix_finite(&self, n: u64) -> Result<TransfiniteList, TransfiniteError> {
        self.suffix(&Ordinal::from(n))
    }

    fn with_blocks(&self, blocks: Vec<Block>) -> TransfiniteList {
        TransfiniteList { blocks: canonical_blocks(blocks), tail: self.tail.clone() }
    }

    /// `Some((init, x))` with `self = init ⌢ (x)` exactly when the length is
    /// a successor ordinal.
    pub fn last_decomposition(&self) -> Option<(TransfiniteList, Nat)> {
        let (&last, init) = self.tail.split_last()?;
        Some((TransfiniteList { blocks: self.blocks.clone(), tail: init.to_vec() }, last))
    }

    /// The leftmost position where the two sequences differ, or where the
    /// shorter one ends if it is a proper prefix of the other. `None` when equal.
    pub fn first_difference(&self, other: &TransfiniteList) -> Option<Ordinal> {
        if self == other {
            return None;
        }
        let a = Runs::of(self);
        let b = Runs::of(other);
        let omega = Ordinal::omega();
        let omega2 = Ordinal::monomial(2, 1u64);
        let mut run = 0usize;
        loop {
            let va = a.view(run);
            let vb = b.view(run);
            if let (View::Periodic(ra), View::Periodic(rb)) = (&va, &vb) {
                if ra == rb {
                    run += 1;
                    continue;
                }
            }
            let base = omega2.mul(&Ordinal::from(run));
            let (letter_index, offset) = va.first_difference(&vb);
            return Some(
                base.add(&omega.mul(&Ordinal::from(letter_index)))
                    .add(&Ordinal::from(offset)),
            );
        }
    }
}

/// Structure of a canonical list as consecutive ω²-runs (letters closed off
/// by a cycle), then the final letters and the tail word.
struct Runs<'a> {
    periodic: Vec<PeriodicRun<'a>>,
    letters: Vec<&'a NElem>,
    tail: &'a [Nat],
}

#[derive(Debug, PartialEq)]
struct PeriodicRun<'a> {
    head: Vec<&'a NElem>,
    cycle: &'a [NElem],
}

enum View<'r, 'a> {
    Periodic(&'r PeriodicRun<'a>),
    Final(&'r [&'a NElem], &'a [Nat]),
}

impl<'a> Runs<'a> {
    fn of(list: &'a TransfiniteList) -> Self {
        let mut periodic = Vec::new();
        let mut letters: Vec<&NElem> = Vec::new();
        for b in &list.blocks {
            match b {
                Block::Letter(n) => letters.push(n),
                Block::Cycle(c) => periodic.push(PeriodicRun {
                    head: std::mem::take(&mut letters),
                    cycle: c.as_slice(),
                }),
            }
        }
        Runs { periodic, letters, tail: &list.tail }
    }

    fn view(&self, run: usize) -> View<'_, 'a> {
        match self.periodic.get(run) {
            Some(r) => View::Periodic(r),
            None => View::Final(&self.letters, self.tail),
        }
    }
}

impl View<'_, '_> {
    fn letter(&self, j: usize) -> Option<&NElem> {
        match self {
            View::Periodic(r) => Some(if j < r.head.len() {
                r.head[j]
            } else {
                &r.cycle[(j - r.head.len()) % r.cycle.len()]
            }),
            View::Final(letters, _) => letters.get(j).copied(),
        }
    }

    fn tail(&self) -> &[Nat] {
        match self {
            View::Periodic(_) => &[],
            View::Final(_, tail) => tail,
        }
    }

    /// Letter index and offset of the first difference between two views that
    /// are known to differ (or to have different lengths).
    fn first_difference(&self, other: &View<'_, '_>) -> (usize, u64) {
        let mut j = 0usize;
        loop {
            match (self.letter(j), other.letter(j)) {
                (Some(x), Some(y)) => {
                    if let Some(n) = x.first_difference(y) {
                        return (j, n);
                    }
                }
                (Some(x), None) => return (j, word_vs_nelem(other.tail(), x)),
                (None, Some(y)) => return (j, word_vs_nelem(self.tail(), y)),
                (None, None) => {
                    let (s, t) = (self.tail(), other.tail());
                    let n = s.iter().zip(t).take_while(|(a, b)| a == b).count();
                    return (j, n as u64);
                }
            }
            j += 1;
        }
    }
}

/// First index where `word` disagrees with `letter`, or `|word|` when the word
/// is a prefix of it.
fn word_vs_nelem(word: &[Nat], letter: &NElem) -> u64 {
    word.iter()
        .enumerate()
        .find(|&(i, &v)| letter.at(i as u64).ok() != Some(v))
        .map_or(word.len(), |(i, _)| i) as u64
}

fn rotate_left(c: &[NElem], k: usize) -> Vec<NElem> {
    let mut v = c.to_vec();
    v.rotate_left(k % c.len());
    v
}

/// Shortest `p` such that `c` is `c[..p]` repeated.
fn primitive_root(mut c: Vec<NElem>) -> Vec<NElem> {
    let n = c.len();
    let period = (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| c[i] == c[i - p]))
        .unwrap_or(n);
    c.truncate(period);
    c
}

fn canonical_blocks(blocks: Vec<Block>) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::with_capacity(blocks.len());
    for block in blocks {
        match block {
            Block::Letter(_) => out.push(block),
            Block::Cycle(c) => {
                let mut c = primitive_root(c);
                while let Some(Block::Letter(prev)) = out.last() {
                    if prev != c.last().expect("non-empty cycle") {
                        break;
                    }
                    out.pop();
                    c.rotate_right(1);
                }
                out.push(Block::Cycle(c));
            }
        }
    }
    out
}

/// `w` concatenated `n` times.
pub fn repeat_word(w: &[Nat], n: usize) -> Vec<Nat> {
    w.repeat(n)
}

fn fmt_word(w: &[Nat], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

impl fmt::Display for TransfiniteList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("[]");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !std::mem::take(&mut first) {
                f.write_str(".")?;
            }
            Ok::<(), fmt::Error>(())
        };
        for block in &self.blocks {
            sep(f)?;
            match block {
                Block::Letter(n) => n.fmt_literal(f)?,
                Block::Cycle(c) => {
                    f.write_str("rep(")?;
                    for (i, n) in c.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        n.fmt_literal(f)?;
                    }
                    f.write_str(")")?;
                }
            }
        }
        if !self.tail.is_empty() {
            sep(f)?;
            fmt_word(&self.tail, f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for TransfiniteList {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        syntax::parse_literal(s)
    }
}
