//! Text form of words, polynomials and templates.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' coeff)* ['*' word] | word
//! coeff  := INT ['/' INT] | 'L' ['^' ['-'] INT]      (L only in catalog files)
//! word   := factor ('*' factor)*
//! factor := IDENT | '1' | '$' INT | ('D'|'P') '(' word ')'
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_coeff, is_negative, Coeff, Poly};
use crate::word::{Letter, Mode, Operator, Word};

/// Ordered generator names; rank in the list is the order used by `dlex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.as_ref().trim();
            if !valid_ident(n) {
                return Err(Error::Alphabet(format!("`{n}` is not an identifier")));
            }
            if n == "D" || n == "P" || n == "L" {
                return Err(Error::Alphabet(format!("`{n}` is reserved")));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::Alphabet(format!("`{n}` appears twice")));
            }
            out.push(n.to_string());
        }
        if out.is_empty() {
            return Err(Error::Alphabet("no generators".into()));
        }
        Ok(Alphabet { names: out })
    }

    /// Parses `x < y < z`, `x,y,z` or `x y z`.
    pub fn parse(spec: &str) -> Result<Alphabet> {
        let names: Vec<&str> =
            spec.split(|c: char| c == '<' || c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        Alphabet::new(&names)
    }

    /// The alphabet of all identifiers in `texts`, sorted.
    pub fn infer(texts: &[&str]) -> Result<Alphabet> {
        let mut names = Vec::new();
        for t in texts {
            for tok in tokenize(t)? {
                if let Tok::Ident(s) = tok.kind {
                    if s != "D" && s != "P" && !names.contains(&s) {
                        names.push(s);
                    }
                }
            }
        }
        names.sort();
        if names.is_empty() {
            names.push("x".to_string());
        }
        Alphabet::new(&names)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.names.len() as u32).map(Word::generator).collect()
    }

    pub fn parse_word(&self, src: &str, mode: Mode) -> Result<Word> {
        let mut p = Parser::new(src, false, false)?;
        let atoms = p.word()?;
        p.expect_end()?;
        lower_word(&atoms, self, mode)
    }

    pub fn parse_poly(&self, src: &str, mode: Mode) -> Result<Poly> {
        let mut p = Parser::new(src, false, false)?;
        let terms = p.poly()?;
        p.expect_end()?;
        let mut out = Poly::zero();
        for t in terms {
            let w = lower_word(&t.factors, self, mode)?;
            if w.is_one() && !mode.is_unital() && !t.coeff.is_zero() {
                return Err(Error::syntax(t.pos, "constant term in nonunital mode"));
            }
            out.add_term(w, t.coeff);
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut s = String::new();
        self.write_word(w, &mut s);
        s
    }

    fn write_word(&self, w: &Word, s: &mut String) {
        if w.is_one() {
            s.push('1');
            return;
        }
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            match l {
                Letter::Gen(g) => s.push_str(self.name(*g)),
                Letter::Op(op, inner) => {
                    s.push(op.symbol());
                    s.push('(');
                    self.write_word(inner, s);
                    s.push(')');
                }
            }
        }
    }

    /// Terms in decreasing order, e.g. `P(x)*P(y) - 1/2*x - 1`.
    pub fn format_poly(&self, p: &Poly) -> String {
        format_terms(p.terms().rev().map(|(w, c)| (c.clone(), self.format_word(w))))
    }
}

/// Joins `(coefficient, monomial text)` pairs with signs; monomial `1` is the
/// constant term.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Coeff, String)>) -> String {
    let mut s = String::new();
    for (i, (c, w)) in terms.enumerate() {
        let neg = is_negative(&c);
        let a = if neg { -c } else { c };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if w == "1" {
            s.push_str(&format_coeff(&a));
        } else if a.is_one() {
            s.push_str(&w);
        } else {
            s.push_str(&format_coeff(&a));
            s.push('*');
            s.push_str(&w);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Meta(u32),
    LParen,
    RParen,
    Star,
    Plus,
    Minus,
    Slash,
    Caret,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let pos = i;
        let kind = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'$' => {
                let start = i + 1;
                let mut j = start;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let n: u32 = src[start..j].parse().map_err(|_| Error::syntax(pos, "expected a number after `$`"))?;
                if n == 0 {
                    return Err(Error::syntax(pos, "metavariables are numbered from $1"));
                }
                out.push(Token { kind: Tok::Meta(n - 1), pos });
                i = j;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                out.push(Token { kind: Tok::Num(src[i..j].parse().unwrap()), pos });
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i;
                while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                    j += 1;
                }
                out.push(Token { kind: Tok::Ident(src[i..j].to_string()), pos });
                i = j;
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(Error::syntax(pos, format!("unexpected character `{ch}`")));
            }
        };
        out.push(Token { kind, pos });
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Atom {
    Ident(String, usize),
    One(usize),
    Meta(u32),
    Op(Operator, Vec<Atom>),
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub coeff: Coeff,
    pub lambda_pow: i32,
    pub factors: Vec<Atom>,
    pub pos: usize,
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
    allow_meta: bool,
    allow_lambda: bool,
}

impl Parser {
    pub(crate) fn new(src: &str, allow_meta: bool, allow_lambda: bool) -> Result<Parser> {
        Ok(Parser { toks: tokenize(src)?, i: 0, end: src.len(), allow_meta, allow_lambda })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.kind.clone());
        self.i += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Error::syntax(self.pos(), format!("unexpected {t:?}"))),
        }
    }

    fn is_lambda(&self) -> bool {
        self.allow_lambda && matches!(self.peek(), Some(Tok::Ident(s)) if s == "L")
    }

    pub(crate) fn poly(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let mut t = self.term()?;
            if neg {
                t.coeff = -t.coeff;
            }
            out.push(t);
            if self.eat(&Tok::Plus) {
                neg = false;
            } else if self.eat(&Tok::Minus) {
                neg = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        let mut coeff = Coeff::one();
        let mut lambda_pow = 0;
        let mut any_coeff = false;
        loop {
            match self.peek() {
                Some(Tok::Num(_)) => {
                    let Some(Tok::Num(n)) = self.bump() else { unreachable!() };
                    let mut c = Coeff::from_integer(n);
                    if self.eat(&Tok::Slash) {
                        let p = self.pos();
                        match self.bump() {
                            Some(Tok::Num(d)) if !d.is_zero() => c /= Coeff::from_integer(d),
                            _ => return Err(Error::syntax(p, "expected a nonzero denominator")),
                        }
                    }
                    coeff *= c;
                }
                _ if self.is_lambda() => {
                    self.bump();
                    let mut e = 1;
                    if self.eat(&Tok::Caret) {
                        let neg = self.eat(&Tok::Minus);
                        let p = self.pos();
                        match self.bump() {
                            Some(Tok::Num(n)) => {
                                e = i32::try_from(n).map_err(|_| Error::syntax(p, "exponent too large"))?
                            }
                            _ => return Err(Error::syntax(p, "expected an exponent")),
                        }
                        if neg {
                            e = -e;
                        }
                    }
                    lambda_pow += e;
                }
                _ => break,
            }
            any_coeff = true;
            if !self.eat(&Tok::Star) {
                return Ok(Term { coeff, lambda_pow, factors: Vec::new(), pos });
            }
        }
        if any_coeff && self.peek().is_none() {
            return Err(Error::syntax(self.pos(), "expected a word after `*`"));
        }
        let factors = self.word()?;
        Ok(Term { coeff, lambda_pow, factors, pos })
    }

    pub(crate) fn word(&mut self) -> Result<Vec<Atom>> {
        let mut out = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Atom> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) if n.is_one() => Ok(Atom::One(pos)),
            Some(Tok::Num(_)) => Err(Error::syntax(pos, "coefficients must come before the word")),
            Some(Tok::Meta(k)) if self.allow_meta => Ok(Atom::Meta(k)),
            Some(Tok::Meta(_)) => Err(Error::syntax(pos, "metavariables are only allowed in templates")),
            Some(Tok::Ident(s)) if s == "D" || s == "P" => {
                let op = if s == "D" { Operator::D } else { Operator::P };
                if !self.eat(&Tok::LParen) {
                    return Err(Error::syntax(self.pos(), format!("expected `(` after {s}")));
                }
                let inner = self.word()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::syntax(self.pos(), "expected `)`"));
                }
                Ok(Atom::Op(op, inner))
            }
            Some(Tok::Ident(s)) if self.allow_lambda && s == "L" => {
                Err(Error::syntax(pos, "the weight L is a coefficient and must come before the word"))
            }
            Some(Tok::Ident(s)) => Ok(Atom::Ident(s, pos)),
            Some(t) => Err(Error::syntax(pos, format!("unexpected {t:?}"))),
            None => Err(Error::syntax(pos, "unexpected end of input")),
        }
    }
}

fn lower_word(atoms: &[Atom], alpha: &Alphabet, mode: Mode) -> Result<Word> {
    let mut letters = Vec::new();
    for a in atoms {
        match a {
            Atom::Ident(s, _) => {
                let i = alpha.index(s).ok_or_else(|| Error::UnknownGenerator(s.clone()))?;
                letters.push(Letter::Gen(i));
            }
            Atom::One(pos) => {
                if !mode.is_unital() {
                    return Err(Error::syntax(*pos, "the unit `1` is only allowed in unital mode"));
                }
            }
            Atom::Meta(_) => unreachable!("metavariables are rejected by the parser"),
            Atom::Op(op, inner) => {
                let w = lower_word(inner, alpha, mode)?;
                if w.is_one() && !mode.is_unital() {
                    return Err(Error::EmptyContent(*op));
                }
                letters.push(Letter::Op(*op, w));
            }
        }
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn roundtrip_words() {
        let a = abc();
        for s in ["x", "P(x*y)*P(z)", "D(P(x)*y)*x", "P(D(P(x)*y))"] {
            let w = a.parse_word(s, Mode::Nonunital).unwrap();
            assert_eq!(a.format_word(&w), s);
        }
        for s in ["1", "P(1)*x", "D(1)"] {
            let w = a.parse_word(s, Mode::Unital).unwrap();
            assert_eq!(a.format_word(&w), s);
        }
    }

    #[test]
    fn unit_rejected_in_nonunital_mode() {
        let a = abc();
        assert!(a.parse_word("D(1)", Mode::Nonunital).is_err());
        assert!(a.parse_word("1", Mode::Nonunital).is_err());
        assert!(a.parse_poly("x + 3", Mode::Nonunital).is_err());
        assert!(a.parse_poly("0", Mode::Nonunital).unwrap().is_zero());
    }

    #[test]
    fn polys_print_in_decreasing_order() {
        let a = abc();
        let p = a.parse_poly("x - 1/2*x*y + 2*P(x) - x", Mode::Nonunital).unwrap();
        assert_eq!(a.format_poly(&p), "2*P(x) - 1/2*x*y");
        assert_eq!(a.format_poly(&a.parse_poly("-1 + x", Mode::Unital).unwrap()), "x - 1");
    }

    #[test]
    fn errors_carry_positions() {
        let a = abc();
        match a.parse_word("P(x*)", Mode::Nonunital) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(a.parse_word("w", Mode::Nonunital), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn inferred_alphabet_is_sorted() {
        let a = Alphabet::infer(&["P(y)*x", "z"]).unwrap();
        assert_eq!(a.names(), ["x", "y", "z"]);
    }
}
