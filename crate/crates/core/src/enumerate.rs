//! Exhaustive enumeration of bracketed words and star contexts by weight.

use crate::word::{Letter, Mode, Operator, StarContext, Word};

/// Words over `k` generators, cached by weight.
pub struct WordEnumerator {
    k: u32,
    mode: Mode,
    /// `seqs[n]`: letter sequences (words) of weight exactly `n`.
    seqs: Vec<Vec<Word>>,
    letters: Vec<Vec<Letter>>,
}

impl WordEnumerator {
    pub fn new(k: u32, mode: Mode) -> WordEnumerator {
        WordEnumerator { k, mode, seqs: vec![vec![Word::one()]], letters: vec![Vec::new()] }
    }

    fn letters_of_weight(&mut self, n: usize) -> Vec<Letter> {
        while self.letters.len() <= n {
            let m = self.letters.len();
            let mut ls = Vec::new();
            if m == 1 {
                if self.mode.is_unital() {
                    ls.push(Letter::Op(Operator::D, Word::one()));
                }
                ls.extend((0..self.k).map(Letter::Gen));
                if self.mode.is_unital() {
                    ls.push(Letter::Op(Operator::P, Word::one()));
                }
            } else {
                let inner = self.words_of_weight(m - 1);
                for op in [Operator::D, Operator::P] {
                    ls.extend(inner.iter().map(|w| Letter::Op(op, w.clone())));
                }
            }
            self.letters.push(ls);
        }
        self.letters[n].clone()
    }

    /// All words of weight exactly `n`, sorted by the monomial order.
    pub fn words_of_weight(&mut self, n: usize) -> Vec<Word> {
        while self.seqs.len() <= n {
            let m = self.seqs.len();
            let mut out = Vec::new();
            for first in 1..=m {
                let ls = self.letters_of_weight(first);
                let rest = self.seqs[m - first].clone();
                for l in &ls {
                    for r in &rest {
                        let mut v = Vec::with_capacity(r.len() + 1);
                        v.push(l.clone());
                        v.extend_from_slice(r.letters());
                        out.push(Word::from_letters(v));
                    }
                }
            }
            out.sort();
            self.seqs.push(out);
        }
        self.seqs[n].clone()
    }

    /// Words of weight `1..=b`, plus `1` in unital mode, by weight then order.
    pub fn words_up_to(&mut self, b: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if self.mode.is_unital() {
            out.push(Word::one());
        }
        for n in 1..=b {
            out.extend(self.words_of_weight(n));
        }
        out
    }
}

pub fn words_up_to(k: u32, mode: Mode, b: usize) -> Vec<Word> {
    WordEnumerator::new(k, mode).words_up_to(b)
}

/// All star contexts of weight `≤ b` (the hole has weight 0) over `k`
/// generators, including `★`.
pub fn contexts_up_to(k: u32, mode: Mode, b: usize) -> Vec<StarContext> {
    // Enumerate words over k+1 generators of weight b+1 with the extra
    // generator used exactly once as the hole.
    let star = k;
    let mut e = WordEnumerator::new(k + 1, mode);
    let mut out = Vec::new();
    for n in 1..=b + 1 {
        for w in e.words_of_weight(n) {
            let mut counts = Vec::new();
            w.generator_counts(&mut counts);
            if counts.get(star as usize).copied().unwrap_or(0) != 1 {
                continue;
            }
            if !mode.is_unital() && w.has_unit() {
                continue;
            }
            let mut pos = None;
            w.find_factor(&[Letter::Gen(star)], &mut |p| {
                pos = Some(p);
                true
            });
            out.push(w.context_at(&pos.unwrap()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts by an independent recurrence on generating functions:
    /// letters L(1) = k (+2 units), L(n) = 2·S(n-1), sequences S = 1/(1 - L).
    fn recurrence(k: u64, unital: bool, b: usize) -> Vec<u64> {
        let mut s = vec![1u64];
        let mut l = vec![0u64];
        for n in 1..=b {
            let ln = if n == 1 { k + if unital { 2 } else { 0 } } else { 2 * s[n - 1] };
            l.push(ln);
            let sn = (1..=n).map(|m| l[m] * s[n - m]).sum();
            s.push(sn);
        }
        s
    }

    #[test]
    fn counts_match_recurrence() {
        for (k, mode) in [(1, Mode::Nonunital), (2, Mode::Nonunital), (1, Mode::Unital), (2, Mode::Unital)] {
            let mut e = WordEnumerator::new(k, mode);
            let rec = recurrence(k as u64, mode.is_unital(), 5);
            for (n, &expected) in rec.iter().enumerate().skip(1) {
                assert_eq!(e.words_of_weight(n).len() as u64, expected, "k={k} {mode:?} n={n}");
            }
        }
    }

    #[test]
    fn known_small_counts() {
        let mut e = WordEnumerator::new(2, Mode::Nonunital);
        let c: Vec<usize> = (1..=5).map(|n| e.words_of_weight(n).len()).collect();
        assert_eq!(c, [2, 8, 40, 224, 1344]);
        let mut e = WordEnumerator::new(1, Mode::Unital);
        let c: Vec<usize> = (1..=4).map(|n| e.words_of_weight(n).len()).collect();
        assert_eq!(c, [3, 15, 93, 645]);
    }

    #[test]
    fn contexts_substitute_uniquely() {
        let cs = contexts_up_to(1, Mode::Nonunital, 2);
        assert!(cs[0].is_hole());
        let fresh = Word::generator(1);
        let mut imgs: Vec<Word> = cs.iter().map(|q| q.substitute(&fresh)).collect();
        let n = imgs.len();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), n);
    }
}
