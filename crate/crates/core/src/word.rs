//! Bracketed words: the free operated monoid over a finite alphabet with the
//! two operators `D` and `P`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    D,
    P,
}

impl Operator {
    pub fn symbol(self) -> char {
        match self {
            Operator::D => 'D',
            Operator::P => 'P',
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Whether the unit word `1` (and therefore empty bracket contents) is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nonunital,
    Unital,
}

impl Mode {
    pub fn is_unital(self) -> bool {
        self == Mode::Unital
    }
}

/// A letter of a bracketed word: a generator (by alphabet rank) or a bracket.
///
/// A bracket with empty content is `D(1)` or `P(1)`, which only exists in
/// unital mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(u32),
    Op(Operator, Word),
}

/// Degree data that the monomial orders compare before falling back to the
/// structural comparison.  Field order is the comparison order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub deg_d: u32,
    pub deg_p: u32,
    /// Generators plus the bare units `D(1)` and `P(1)`.
    pub deg_z: u32,
    pub deg_gd: u64,
    pub deg_gp: u64,
}

impl Signature {
    fn concat(self, b: Signature) -> Signature {
        let a = self;
        Signature {
            deg_d: a.deg_d + b.deg_d,
            deg_p: a.deg_p + b.deg_p,
            deg_z: a.deg_z + b.deg_z,
            deg_gd: a.deg_gd + b.deg_gd + a.deg_d as u64 * b.deg_z as u64,
            deg_gp: a.deg_gp
                + b.deg_gp
                + a.deg_p as u64 * b.deg_z as u64
                + b.deg_p as u64 * a.deg_z as u64,
        }
    }

    fn of_letter(l: &Letter) -> Signature {
        match l {
            Letter::Gen(_) => Signature { deg_z: 1, ..Default::default() },
            Letter::Op(Operator::D, w) if w.is_one() => Signature { deg_z: 1, ..Default::default() },
            Letter::Op(Operator::P, w) if w.is_one() => {
                Signature { deg_p: 1, deg_z: 1, ..Default::default() }
            }
            Letter::Op(Operator::D, w) => Signature { deg_d: w.sig.deg_d + 1, ..w.sig },
            Letter::Op(Operator::P, w) => Signature { deg_p: w.sig.deg_p + 1, ..w.sig },
        }
    }
}

/// A bracketed word.  Immutable; cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Arc<[Letter]>,
    sig: Signature,
    weight: u32,
}

fn letter_weight(l: &Letter) -> u32 {
    match l {
        Letter::Gen(_) => 1,
        Letter::Op(_, w) => 1 + w.weight,
    }
}

impl Word {
    pub fn one() -> Word {
        Word { letters: Arc::from(Vec::new()), sig: Signature::default(), weight: 0 }
    }

    pub fn generator(i: u32) -> Word {
        Word::from_letters(vec![Letter::Gen(i)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        let mut sig = Signature::default();
        let mut weight = 0;
        for l in &letters {
            sig = sig.concat(Signature::of_letter(l));
            weight += letter_weight(l);
        }
        Word { letters: Arc::from(letters), sig, weight }
    }

    pub fn from_slice(letters: &[Letter]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    /// `⌊w⌋_op`.  Fails on empty content in nonunital mode.
    pub fn bracket(op: Operator, w: Word, mode: Mode) -> Result<Word> {
        if w.is_one() && !mode.is_unital() {
            return Err(Error::EmptyContent(op));
        }
        Ok(Word::bracket_unchecked(op, w))
    }

    pub(crate) fn bracket_unchecked(op: Operator, w: Word) -> Word {
        Word::from_letters(vec![Letter::Op(op, w)])
    }

    pub fn concat(&self, other: &Word) -> Word {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.letters);
        v.extend_from_slice(&other.letters);
        Word {
            letters: Arc::from(v),
            sig: self.sig.concat(other.sig),
            weight: self.weight + other.weight,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_one(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of top-level letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Generators plus brackets; `D(1)` and `P(1)` have weight 1.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn deg_d(&self) -> u32 {
        self.sig.deg_d
    }
    pub fn deg_p(&self) -> u32 {
        self.sig.deg_p
    }
    pub fn deg_z(&self) -> u32 {
        self.sig.deg_z
    }
    pub fn deg_gd(&self) -> u64 {
        self.sig.deg_gd
    }
    pub fn deg_gp(&self) -> u64 {
        self.sig.deg_gp
    }

    /// Whether the word contains `D(1)` or `P(1)` anywhere.
    pub fn has_unit(&self) -> bool {
        self.letters.iter().any(|l| match l {
            Letter::Gen(_) => false,
            Letter::Op(_, w) => w.is_one() || w.has_unit(),
        })
    }

    /// Number of occurrences of each generator, indexed by rank.
    pub fn generator_counts(&self, out: &mut Vec<u32>) {
        for l in self.letters.iter() {
            match l {
                Letter::Gen(i) => {
                    let i = *i as usize;
                    if out.len() <= i {
                        out.resize(i + 1, 0);
                    }
                    out[i] += 1;
                }
                Letter::Op(_, w) => w.generator_counts(out),
            }
        }
    }

    /// Sorted distinct generators.
    pub fn generators(&self) -> Vec<u32> {
        let mut c = Vec::new();
        self.generator_counts(&mut c);
        c.iter().enumerate().filter(|(_, n)| **n > 0).map(|(i, _)| i as u32).collect()
    }

    /// The letter sequence addressed by `path` (indices of bracket letters to
    /// descend through).
    pub fn sequence_at(&self, path: &[usize]) -> &[Letter] {
        let mut cur: &[Letter] = &self.letters;
        for &i in path {
            match &cur[i] {
                Letter::Op(_, w) => cur = &w.letters,
                Letter::Gen(_) => panic!("path descends into a generator"),
            }
        }
        cur
    }

    pub fn subword(&self, pos: &Position) -> Word {
        Word::from_slice(&self.sequence_at(&pos.path)[pos.start..pos.end])
    }

    pub fn context_at(&self, pos: &Position) -> StarContext {
        let mut frames = Vec::with_capacity(pos.path.len());
        let mut cur: &[Letter] = &self.letters;
        for &i in &pos.path {
            match &cur[i] {
                Letter::Op(op, w) => {
                    frames.push(Frame {
                        left: Word::from_slice(&cur[..i]),
                        op: *op,
                        right: Word::from_slice(&cur[i + 1..]),
                    });
                    cur = &w.letters;
                }
                Letter::Gen(_) => panic!("path descends into a generator"),
            }
        }
        StarContext {
            frames,
            left: Word::from_slice(&cur[..pos.start]),
            right: Word::from_slice(&cur[pos.end..]),
        }
    }

    /// All positions of nonempty factors, in breadth-first order of the
    /// sequences, then by start, then by decreasing length.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        for path in self.sequence_paths() {
            let n = self.sequence_at(&path).len();
            for start in 0..n {
                for end in (start + 1..=n).rev() {
                    out.push(Position { path: path.clone(), start, end });
                }
            }
        }
        out
    }

    /// Paths of all letter sequences (top level and every bracket content),
    /// breadth first, left to right.
    pub fn sequence_paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut i = 0;
        while i < out.len() {
            let path = out[i].clone();
            for (j, l) in self.sequence_at(&path).iter().enumerate() {
                if let Letter::Op(_, w) = l {
                    if !w.is_one() {
                        let mut p = path.clone();
                        p.push(j);
                        out.push(p);
                    }
                }
            }
            i += 1;
        }
        out
    }

    /// Whether `pattern` occurs as a factor of some letter sequence.
    pub fn contains_factor(&self, pattern: &[Letter]) -> bool {
        if pattern.is_empty() {
            return true;
        }
        self.find_factor(pattern, &mut |_| true)
    }

    /// Calls `f` on each occurrence of `pattern` until it returns true.
    pub fn find_factor(&self, pattern: &[Letter], f: &mut dyn FnMut(Position) -> bool) -> bool {
        for path in self.sequence_paths() {
            let seq = self.sequence_at(&path);
            if seq.len() < pattern.len() {
                continue;
            }
            for start in 0..=seq.len() - pattern.len() {
                if seq[start..start + pattern.len()] == *pattern
                    && f(Position { path: path.clone(), start, end: start + pattern.len() })
                {
                    return true;
                }
            }
        }
        false
    }

    /// Replaces every generator `i` by `subst[i]`.
    pub fn substitute_generators(&self, subst: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in self.letters.iter() {
            match l {
                Letter::Gen(i) => out.extend_from_slice(&subst[*i as usize].letters),
                Letter::Op(op, w) => out.push(Letter::Op(*op, w.substitute_generators(subst))),
            }
        }
        Word::from_letters(out)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match l {
                Letter::Gen(g) => write!(f, "g{g}")?,
                Letter::Op(op, w) => write!(f, "{op}({w:?})")?,
            }
        }
        Ok(())
    }
}

/// Location of a factor: a letter sequence (`path`) and a half-open range in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub path: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

impl Position {
    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub left: Word,
    pub op: Operator,
    pub right: Word,
}

/// A word with exactly one occurrence of the placeholder `★`, stored as the
/// chain of enclosing brackets (outermost first) and the innermost left and
/// right neighbours of the hole.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarContext {
    pub frames: Vec<Frame>,
    pub left: Word,
    pub right: Word,
}

impl StarContext {
    /// The trivial context `★`.
    pub fn hole() -> StarContext {
        StarContext { frames: Vec::new(), left: Word::one(), right: Word::one() }
    }

    pub fn is_hole(&self) -> bool {
        self.frames.is_empty() && self.left.is_one() && self.right.is_one()
    }

    /// `u ★ v`.
    pub fn around(left: Word, right: Word) -> StarContext {
        StarContext { frames: Vec::new(), left, right }
    }

    /// `l ⌊★⌋_op r` composed onto the inside of this context.
    pub fn wrap(mut self, op: Operator) -> StarContext {
        let left = std::mem::replace(&mut self.left, Word::one());
        let right = std::mem::replace(&mut self.right, Word::one());
        self.frames.push(Frame { left, op, right });
        self
    }

    /// `q|_u`.  The result is rebuilt from the innermost frame outwards.
    pub fn substitute(&self, u: &Word) -> Word {
        let mut w = self.left.concat(u).concat(&self.right);
        for fr in self.frames.iter().rev() {
            w = fr.left.concat(&Word::bracket_unchecked(fr.op, w)).concat(&fr.right);
        }
        w
    }

    /// `self ∘ inner`, i.e. the context `self|_{inner}`.
    pub fn compose(&self, inner: &StarContext) -> StarContext {
        let mut frames = self.frames.clone();
        if inner.frames.is_empty() {
            return StarContext {
                frames,
                left: self.left.concat(&inner.left),
                right: inner.right.concat(&self.right),
            };
        }
        let first = &inner.frames[0];
        frames.push(Frame {
            left: self.left.concat(&first.left),
            op: first.op,
            right: first.right.concat(&self.right),
        });
        frames.extend(inner.frames[1..].iter().cloned());
        StarContext { frames, left: inner.left.clone(), right: inner.right.clone() }
    }

    pub fn weight(&self) -> u32 {
        self.left.weight()
            + self.right.weight()
            + self.frames.iter().map(|f| f.left.weight() + f.right.weight() + 1).sum::<u32>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Word {
        Word::generator(0)
    }
    fn y() -> Word {
        Word::generator(1)
    }
    fn z() -> Word {
        Word::generator(2)
    }
    fn d(w: Word) -> Word {
        Word::bracket_unchecked(Operator::D, w)
    }
    fn p(w: Word) -> Word {
        Word::bracket_unchecked(Operator::P, w)
    }

    #[test]
    fn degrees_of_small_words() {
        let w = p(x().concat(&y())).concat(&p(z()));
        assert_eq!(w.deg_p(), 2);
        assert_eq!(w.deg_z(), 3);
        assert_eq!(w.deg_gp(), 3);
        assert_eq!(d(x()).concat(&d(y())).deg_gd(), 1);
        assert_eq!(d(x()).concat(&y()).deg_gd(), 1);
        assert_eq!(x().concat(&d(y())).deg_gd(), 0);
        assert_eq!(w.weight(), 5);
    }

    #[test]
    fn units_count_as_letters() {
        let dp = p(Word::one());
        assert_eq!(dp.deg_p(), 1);
        assert_eq!(dp.deg_z(), 1);
        assert_eq!(dp.deg_gp(), 0);
        assert_eq!(dp.weight(), 1);
        let dd = d(Word::one());
        assert_eq!((dd.deg_d(), dd.deg_z()), (0, 1));
        assert_eq!(dp.concat(&x()).deg_gp(), 1);
    }

    #[test]
    fn nonunital_rejects_empty_brackets() {
        assert!(Word::bracket(Operator::D, Word::one(), Mode::Nonunital).is_err());
        assert!(Word::bracket(Operator::D, Word::one(), Mode::Unital).is_ok());
    }

    #[test]
    fn context_roundtrip() {
        let w = x().concat(&p(y().concat(&d(z())))).concat(&x());
        for pos in w.positions() {
            let q = w.context_at(&pos);
            assert_eq!(q.substitute(&w.subword(&pos)), w);
        }
    }

    #[test]
    fn compose_contexts() {
        let q1 = StarContext::around(x(), y()).wrap(Operator::P);
        let q2 = StarContext::around(z(), Word::one()).wrap(Operator::D);
        let u = x().concat(&x());
        assert_eq!(q1.compose(&q2).substitute(&u), q1.substitute(&q2.substitute(&u)));
    }
}
