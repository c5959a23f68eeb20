//! Words with metavariables `$1, $2, ...`, used for the terms and leading
//! shapes of operated polynomial identities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::syntax::{Atom, Parser};
use crate::word::{Letter, Operator, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TLetter {
    Meta(u32),
    Op(Operator, Template),
}

/// A template; the empty template is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Template(pub Vec<TLetter>);

impl Template {
    pub fn parse(src: &str) -> Result<Template> {
        let mut p = Parser::new(src, true, false)?;
        let atoms = p.word()?;
        p.expect_end()?;
        Template::from_atoms(&atoms)
    }

    pub(crate) fn from_atoms(atoms: &[Atom]) -> Result<Template> {
        let mut out = Vec::new();
        for a in atoms {
            match a {
                Atom::Meta(k) => out.push(TLetter::Meta(*k)),
                Atom::One(_) => {}
                Atom::Op(op, inner) => out.push(TLetter::Op(*op, Template::from_atoms(inner)?)),
                Atom::Ident(s, pos) => {
                    return Err(Error::syntax(*pos, format!("generator `{s}` in a template; use $1, $2, ...")))
                }
            }
        }
        Ok(Template(out))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn instantiate(&self, args: &[Word]) -> Word {
        let mut letters = Vec::new();
        self.expand_into(args, &mut letters);
        Word::from_letters(letters)
    }

    fn expand_into(&self, args: &[Word], out: &mut Vec<Letter>) {
        for l in &self.0 {
            match l {
                TLetter::Meta(k) => out.extend_from_slice(args[*k as usize].letters()),
                TLetter::Op(op, inner) => out.push(Letter::Op(*op, inner.instantiate(args))),
            }
        }
    }

    pub fn collect_metas(&self, out: &mut Vec<u32>) {
        for l in &self.0 {
            match l {
                TLetter::Meta(k) => out.push(*k),
                TLetter::Op(_, inner) => inner.collect_metas(out),
            }
        }
    }

    /// Metavariables in order of first appearance.
    pub fn metas(&self) -> Vec<u32> {
        let mut all = Vec::new();
        self.collect_metas(&mut all);
        let mut seen = Vec::new();
        for k in all {
            if !seen.contains(&k) {
                seen.push(k);
            }
        }
        seen
    }

    /// Whether some letter sequence has two metavariables side by side, which
    /// would make the split of a matched factor ambiguous.
    pub fn has_adjacent_metas(&self) -> bool {
        self.0.windows(2).any(|w| matches!(w, [TLetter::Meta(_), TLetter::Meta(_)]))
            || self.0.iter().any(|l| matches!(l, TLetter::Op(_, t) if t.has_adjacent_metas()))
    }

    pub fn rename(&self, map: &BTreeMap<u32, u32>) -> Template {
        Template(
            self.0
                .iter()
                .map(|l| match l {
                    TLetter::Meta(k) => TLetter::Meta(map[k]),
                    TLetter::Op(op, t) => TLetter::Op(*op, t.rename(map)),
                })
                .collect(),
        )
    }

    /// Renaming that numbers metavariables by first appearance.
    pub fn canonical_renaming(&self) -> BTreeMap<u32, u32> {
        self.metas().into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect()
    }

    /// The template obtained from a word by replacing generators by
    /// metavariables according to `map`.
    pub fn abstract_word(w: &Word, map: &BTreeMap<u32, u32>) -> Template {
        Template(
            w.letters()
                .iter()
                .map(|l| match l {
                    Letter::Gen(g) => TLetter::Meta(map[g]),
                    Letter::Op(op, inner) => TLetter::Op(*op, Template::abstract_word(inner, map)),
                })
                .collect(),
        )
    }

    pub fn format(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match l {
                TLetter::Meta(k) => format!("${}", k + 1),
                TLetter::Op(op, t) => format!("{}({})", op.symbol(), t.format()),
            })
            .collect();
        parts.join("*")
    }

    /// Smallest number of letters a match of this sequence can span.
    fn min_span(tpl: &[TLetter], unital: bool) -> usize {
        tpl.iter().filter(|l| matches!(l, TLetter::Op(..)) || !unital).count()
    }

    fn has_top_meta(&self) -> bool {
        self.0.iter().any(|l| matches!(l, TLetter::Meta(_)))
    }

    /// All bindings under which the template expands to exactly `seq`.
    /// Arguments that do not occur stay `None`.
    pub fn match_seq(&self, seq: &[Letter], arity: usize, unital: bool) -> Vec<Vec<Option<Word>>> {
        let mut out = Vec::new();
        let mut binds = vec![None; arity];
        match_rec(&self.0, seq, unital, &mut binds, &mut |b| out.push(b.clone()));
        out
    }

    /// Length range of factors this template can match at top level.
    pub fn span_bounds(&self, unital: bool, available: usize) -> (usize, usize) {
        let lo = Template::min_span(&self.0, unital).max(1);
        let hi = if self.has_top_meta() { available } else { self.0.len() };
        (lo, hi)
    }

    /// Quick necessary condition for matching a factor starting at `first`
    /// and ending at `last`.
    pub fn ends_compatible(&self, first: &Letter, last: &Letter) -> bool {
        let ok = |t: Option<&TLetter>, l: &Letter| match (t, l) {
            (Some(TLetter::Op(op, inner)), Letter::Op(op2, w)) => op == op2 && (!inner.is_one() || w.is_one()),
            (Some(TLetter::Op(..)), Letter::Gen(_)) => false,
            _ => true,
        };
        ok(self.0.first(), first) && ok(self.0.last(), last)
    }
}

fn match_rec(
    tpl: &[TLetter],
    seq: &[Letter],
    unital: bool,
    binds: &mut Vec<Option<Word>>,
    k: &mut dyn FnMut(&mut Vec<Option<Word>>),
) {
    let Some(first) = tpl.first() else {
        if seq.is_empty() {
            k(binds);
        }
        return;
    };
    let rest = &tpl[1..];
    match first {
        TLetter::Op(op, inner) => {
            let Some(Letter::Op(op2, content)) = seq.first() else { return };
            if op != op2 {
                return;
            }
            let seq_rest = &seq[1..];
            match_rec(&inner.0, content.letters(), unital, binds, &mut |b| {
                match_rec(rest, seq_rest, unital, b, k)
            });
        }
        TLetter::Meta(m) => {
            let m = *m as usize;
            if let Some(w) = &binds[m] {
                let n = w.len();
                if seq.len() >= n && seq[..n] == *w.letters() {
                    match_rec(rest, &seq[n..], unital, binds, k);
                }
                return;
            }
            let need = Template::min_span(rest, unital);
            if seq.len() < need {
                return;
            }
            let lo = if unital { 0 } else { 1 };
            let hi = if rest.is_empty() { seq.len() } else { seq.len() - need };
            if rest.is_empty() {
                if seq.len() >= lo {
                    binds[m] = Some(Word::from_slice(seq));
                    k(binds);
                    binds[m] = None;
                }
                return;
            }
            for len in lo..=hi {
                binds[m] = Some(Word::from_slice(&seq[..len]));
                match_rec(rest, &seq[len..], unital, binds, k);
            }
            binds[m] = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Alphabet;
    use crate::word::Mode;

    #[test]
    fn parse_and_format() {
        for s in ["P($1)*P($2)", "D(P($1)*$2)", "P(D($1))", "D(1)"] {
            assert_eq!(Template::parse(s).unwrap().format(), s);
        }
        assert!(Template::parse("P(x)").is_err());
    }

    #[test]
    fn adjacent_metas_detected() {
        assert!(Template::parse("P($1*$2)").unwrap().has_adjacent_metas());
        assert!(!Template::parse("D($1)*$2").unwrap().has_adjacent_metas());
    }

    #[test]
    fn matching_recovers_arguments() {
        let a = Alphabet::new(&["x", "y", "z"]).unwrap();
        let t = Template::parse("D($1)*$2").unwrap();
        let w = a.parse_word("D(x*y)*z*x", Mode::Nonunital).unwrap();
        let m = t.match_seq(w.letters(), 2, false);
        assert_eq!(m.len(), 1);
        let args: Vec<Word> = m[0].iter().map(|b| b.clone().unwrap()).collect();
        assert_eq!(t.instantiate(&args), w);
        assert_eq!(a.format_word(&args[1]), "z*x");
    }

    #[test]
    fn unital_metas_may_be_empty() {
        let a = Alphabet::new(&["x"]).unwrap();
        let t = Template::parse("P($1)*D($2)").unwrap();
        let w = a.parse_word("P(x)*D(1)", Mode::Unital).unwrap();
        assert_eq!(t.match_seq(w.letters(), 2, true).len(), 1);
        assert!(t.match_seq(w.letters(), 2, false).is_empty());
    }
}
