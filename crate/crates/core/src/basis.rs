//! Irreducible words, dimension series and the linear-algebra check that
//! irreducible words complement the ideal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::enumerate::WordEnumerator;
use crate::error::Result;
use crate::poly::Poly;
use crate::rewrite::{Reducer, RuleSet};
use crate::syntax::Alphabet;
use crate::word::Word;

/// Irreducible words of weight `≤ bound` over the first `k` generators, by
/// weight then order.  Includes `1` in unital mode.
pub fn irreducible_words(rules: &RuleSet, k: u32, bound: usize) -> Vec<Word> {
    let mut e = WordEnumerator::new(k, rules.mode());
    e.words_up_to(bound).into_iter().filter(|w| rules.is_irreducible(w)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrReport {
    pub system: String,
    pub bound: usize,
    pub generators: Vec<String>,
    /// `counts[n]` is the number of irreducible words of weight `n`.
    pub counts: Vec<usize>,
    /// Irreducible words grouped by weight, empty when only counts were asked for.
    pub words: Vec<Vec<String>>,
}

pub fn irr_enumerate(rules: &RuleSet, alpha: &Alphabet, bound: usize, with_words: bool) -> IrrReport {
    let k = alpha.len() as u32;
    let mut counts = vec![0; bound + 1];
    let mut words = vec![Vec::new(); if with_words { bound + 1 } else { 0 }];
    for w in irreducible_words(rules, k, bound) {
        let n = w.weight() as usize;
        counts[n] += 1;
        if with_words {
            words[n].push(alpha.format_word(&w));
        }
    }
    IrrReport {
        system: rules.system().name.clone(),
        bound,
        generators: alpha.names().to_vec(),
        counts,
        words,
    }
}

pub fn dimension_series(rules: &RuleSet, k: u32, bound: usize) -> Vec<usize> {
    let mut counts = vec![0; bound + 1];
    for w in irreducible_words(rules, k, bound) {
        counts[w.weight() as usize] += 1;
    }
    counts
}

/// Row echelon form over the rationals, rows keyed by leading word.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Word, Poly>,
}

impl Echelon {
    /// Adds `p` to the span; returns whether the rank grew.
    pub fn insert(&mut self, p: &Poly) -> bool {
        let r = self.reduce(p);
        match r.lead() {
            None => false,
            Some((w, _)) => {
                self.rows.insert(w.clone(), r.monic());
                true
            }
        }
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut r = p.clone();
        // Fully reduced: no word of the remainder is a pivot.
        let mut done = Poly::zero();
        while let Some((w, c)) = r.lead() {
            let (w, c) = (w.clone(), c.clone());
            match self.rows.get(&w) {
                Some(row) => r.add_scaled(row, &-c),
                None => {
                    r.add_term(w.clone(), -c.clone());
                    done.add_term(w, c);
                }
            }
        }
        done
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub system: String,
    pub bound: usize,
    pub words: usize,
    pub irreducible: usize,
    /// Rank of `{q|_s : q|_{s̄} of weight ≤ bound}`.
    pub ideal_rank: usize,
    /// Distinct words occurring in the ideal elements and the slice.
    pub columns: usize,
    /// Rank of irreducible words together with the ideal elements.
    pub combined_rank: usize,
    /// Words whose normal form uses a reducible word.
    pub nf_not_irreducible: usize,
    /// Words `w` with `w - NF(w)` outside the span of the ideal elements.
    pub nf_outside_ideal: usize,
    pub passed: bool,
}

/// Checks `k·W_b = k·Irr_b ⊕ (ideal ∩ k·W_b)` at weight `≤ bound` by exact
/// elimination, independently of the rewriting strategy.
pub fn span_check(rules: &RuleSet, k: u32, bound: usize) -> Result<SpanReport> {
    let words = WordEnumerator::new(k, rules.mode()).words_up_to(bound);
    let mut ideal = Echelon::default();
    let mut columns: BTreeSet<Word> = words.iter().cloned().collect();
    let mut irr = Vec::new();
    for w in &words {
        let redexes = rules.find_redexes(w);
        if redexes.is_empty() {
            irr.push(w.clone());
        }
        for r in redexes {
            let e = r.poly.in_context(&r.context);
            columns.extend(e.words().cloned());
            ideal.insert(&e);
        }
    }
    let mut reducer = Reducer::new(rules);
    let irr_set: BTreeSet<&Word> = irr.iter().collect();
    let (mut bad_support, mut outside) = (0, 0);
    for w in &words {
        let nf = reducer.nf_word(w)?;
        if nf.words().any(|u| !irr_set.contains(u)) {
            bad_support += 1;
        }
        let diff = &Poly::monomial(w.clone()) - &nf;
        if !ideal.contains(&diff) {
            outside += 1;
        }
    }
    let ideal_rank = ideal.rank();
    let mut combined = ideal;
    for w in &irr {
        combined.insert(&Poly::monomial(w.clone()));
    }
    let reducible = words.len() - irr.len();
    let passed = ideal_rank == reducible && combined.rank() == columns.len() && bad_support == 0 && outside == 0;
    Ok(SpanReport {
        system: rules.system().name.clone(),
        bound,
        words: words.len(),
        irreducible: irr.len(),
        ideal_rank,
        columns: columns.len(),
        combined_rank: combined.rank(),
        nf_not_irreducible: bad_support,
        nf_outside_ideal: outside,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opi::{catalog, OpiSystem};
    use crate::poly::{coeff, ratio};
    use crate::word::Mode;

    #[test]
    fn echelon_rank() {
        let (x, y) = (Word::generator(0), Word::generator(1));
        let mut e = Echelon::default();
        assert!(e.insert(&Poly::from_terms([(x.clone(), coeff(1)), (y.clone(), coeff(2))])));
        assert!(!e.insert(&Poly::from_terms([(x.clone(), coeff(3)), (y.clone(), coeff(6))])));
        assert!(e.insert(&Poly::from_terms([(x.clone(), coeff(1)), (y.clone(), ratio(1, 2))])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&Poly::monomial(y)));
    }

    #[test]
    fn empty_system_keeps_everything() {
        let rs = RuleSet::new(OpiSystem::new("free", Mode::Nonunital, coeff(0), vec![], vec![])).unwrap();
        assert_eq!(dimension_series(&rs, 2, 3), [0, 2, 8, 40]);
        let r = span_check(&rs, 2, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.ideal_rank, 0);
        let rs = RuleSet::new(OpiSystem::new("free", Mode::Unital, coeff(0), vec![], vec![])).unwrap();
        assert_eq!(dimension_series(&rs, 1, 0), [1]);
    }

    #[test]
    fn weight_one_irreducibles() {
        let rs = RuleSet::new(catalog("DRB0", &coeff(0), false).unwrap()).unwrap();
        let a = Alphabet::new(&["x"]).unwrap();
        let r = irr_enumerate(&rs, &a, 1, true);
        assert_eq!(r.words, [Vec::<String>::new(), vec!["x".to_string()]]);
        let rs = RuleSet::new(catalog("uDRB0", &coeff(0), true).unwrap()).unwrap();
        let r = irr_enumerate(&rs, &a, 1, true);
        assert_eq!(r.words[1], ["x", "P(1)"]);
    }

    #[test]
    fn drb_span() {
        let rs = RuleSet::new(catalog("DRB", &coeff(1), false).unwrap()).unwrap();
        let r = span_check(&rs, 1, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
