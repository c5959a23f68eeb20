//! Finite linear combinations of bracketed words with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::word::{Mode, Operator, StarContext, Word};

pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial: nonzero coefficients keyed by word in increasing order, so
/// the leading monomial is the last key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Word, Coeff>,
}

/// The leading part of a polynomial.  In unital mode a constant (including 0)
/// has leading monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leading {
    Zero,
    Term(Word, Coeff),
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn monomial(w: Word) -> Poly {
        Poly::term(w, Coeff::one())
    }

    pub fn term(w: Word, c: Coeff) -> Poly {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: Coeff) -> Poly {
        Poly::term(Word::one(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coeff)>) -> Poly {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn add_poly(&mut self, other: &Poly) {
        self.add_scaled(other, &Coeff::one());
    }

    pub fn sub_poly(&mut self, other: &Poly) {
        self.add_scaled(other, &-Coeff::one());
    }

    pub fn scaled(&self, c: &Coeff) -> Poly {
        let mut p = Poly::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn coeff_of(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    /// Leading monomial and coefficient of a nonzero polynomial.
    pub fn lead(&self) -> Option<(&Word, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn leading(&self, mode: Mode) -> Leading {
        match self.lead() {
            Some((w, c)) => Leading::Term(w.clone(), c.clone()),
            None if mode.is_unital() => Leading::Term(Word::one(), Coeff::zero()),
            None => Leading::Zero,
        }
    }

    /// Scales so the leading coefficient is 1.  Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scaled(&c.recip()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Word::is_one)
    }

    /// `q|_f`, extended linearly.
    pub fn in_context(&self, q: &StarContext) -> Poly {
        if q.is_hole() {
            return self.clone();
        }
        Poly::from_terms(self.terms.iter().map(|(w, c)| (q.substitute(w), c.clone())))
    }

    pub fn mul_word_left(&self, u: &Word) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(w, c)| (u.concat(w), c.clone())))
    }

    pub fn mul_word_right(&self, u: &Word) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(w, c)| (w.concat(u), c.clone())))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                p.add_term(u.concat(v), a * b);
            }
        }
        p
    }

    /// Applies the operator linearly to each term.
    pub fn bracket(&self, op: Operator) -> Poly {
        Poly::from_terms(
            self.terms.iter().map(|(w, c)| (Word::bracket_unchecked(op, w.clone()), c.clone())),
        )
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.sub_poly(rhs);
        p
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_poly(rhs);
        p
    }
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn is_negative(c: &Coeff) -> bool {
    c.is_negative()
}
