//! Monomial orders on bracketed words.
//!
//! `Word`'s `Ord` is the unital order: degree cascade (`deg_D`, `deg_P`,
//! `deg_Z'`, `GD`, `GP`) then the structural comparison [`dlex`].  Restricted
//! to words without units it is the nonunital order, and the empty word is the
//! minimum.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::word::{Letter, Operator, Word};

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.signature().cmp(&other.signature()).then_with(|| dlex(self, other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank classes of letters: `D(1)` < generators < `P(1)` < `D`-brackets <
/// `P`-brackets.  Generators compare by alphabet rank, same-operator brackets
/// by their contents.
fn letter_class(l: &Letter) -> (u8, u32) {
    match l {
        Letter::Op(Operator::D, w) if w.is_one() => (0, 0),
        Letter::Gen(i) => (1, *i),
        Letter::Op(Operator::P, w) if w.is_one() => (2, 0),
        Letter::Op(Operator::D, _) => (3, 0),
        Letter::Op(Operator::P, _) => (4, 0),
    }
}

fn letter_cmp(a: &Letter, b: &Letter) -> Ordering {
    letter_class(a).cmp(&letter_class(b)).then_with(|| match (a, b) {
        (Letter::Op(_, u), Letter::Op(_, v)) if !u.is_one() => dlex(u, v),
        _ => Ordering::Equal,
    })
}

/// Structural comparison: number of top-level letters first, then the first
/// differing letter.  On words without brackets this is degree-lexicographic.
pub fn dlex(u: &Word, v: &Word) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| {
        for (a, b) in u.letters().iter().zip(v.letters()) {
            let c = letter_cmp(a, b);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// Nonunital order; rejects words containing units.
    Pd,
    /// Unital order.
    Upd,
    /// Degree-lexicographic order on bracket-free words.
    Dlex,
}

impl OrderKind {
    pub fn compare(self, u: &Word, v: &Word) -> crate::Result<Ordering> {
        match self {
            OrderKind::Pd => {
                if u.has_unit() || v.has_unit() || u.is_one() || v.is_one() {
                    return Err(crate::Error::UnitInNonunital);
                }
                Ok(u.cmp(v))
            }
            OrderKind::Upd => Ok(u.cmp(v)),
            OrderKind::Dlex => {
                for w in [u, v] {
                    if w.letters().iter().any(|l| matches!(l, Letter::Op(..))) {
                        return Err(crate::Error::Config(
                            "dlex compares bracket-free words only".into(),
                        ));
                    }
                }
                Ok(dlex(u, v))
            }
        }
    }
}

/// Outcome of an exhaustive property check of the order on a sample.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderReport {
    pub sample_size: usize,
    pub contexts: usize,
    pub comparisons: u64,
    pub violations: Vec<String>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `cmp` is a linear order on `sample` compatible with left and
/// right multiplication, with both brackets and with every context in
/// `contexts`.
pub fn check_monomial_order_properties(
    cmp: &dyn Fn(&Word, &Word) -> Ordering,
    sample: &[Word],
    multipliers: &[Word],
    contexts: &[crate::word::StarContext],
    unital: bool,
) -> OrderReport {
    let mut rep = OrderReport { sample_size: sample.len(), contexts: contexts.len(), ..Default::default() };
    let fail = |rep: &mut OrderReport, msg: String| {
        if rep.violations.len() < 20 {
            rep.violations.push(msg);
        }
    };
    for (i, u) in sample.iter().enumerate() {
        for (j, v) in sample.iter().enumerate() {
            rep.comparisons += 1;
            let c = cmp(u, v);
            if c != cmp(v, u).reverse() {
                fail(&mut rep, format!("antisymmetry {u:?} {v:?}"));
            }
            if (c == Ordering::Equal) != (i == j) {
                fail(&mut rep, format!("totality {u:?} {v:?}"));
            }
            if c != Ordering::Less {
                continue;
            }
            for w in multipliers {
                if cmp(&w.concat(u), &w.concat(v)) != Ordering::Less {
                    fail(&mut rep, format!("left compatibility {w:?} {u:?} {v:?}"));
                }
                if cmp(&u.concat(w), &v.concat(w)) != Ordering::Less {
                    fail(&mut rep, format!("right compatibility {u:?} {v:?} {w:?}"));
                }
            }
            if unital || (!u.is_one() && !v.is_one()) {
                for op in [Operator::D, Operator::P] {
                    let (bu, bv) = (
                        Word::bracket_unchecked(op, u.clone()),
                        Word::bracket_unchecked(op, v.clone()),
                    );
                    if cmp(&bu, &bv) != Ordering::Less {
                        fail(&mut rep, format!("bracket compatibility {op} {u:?} {v:?}"));
                    }
                }
            }
            for q in contexts {
                rep.comparisons += 1;
                if cmp(&q.substitute(u), &q.substitute(v)) != Ordering::Less {
                    fail(&mut rep, format!("context compatibility {q:?} {u:?} {v:?}"));
                }
            }
        }
    }
    let mut sorted: Vec<&Word> = sample.iter().collect();
    sorted.sort_by(|a, b| cmp(a, b));
    // A relation that is total and antisymmetric is transitive iff the sorted
    // sample is a strictly increasing chain.
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if cmp(a, b) != Ordering::Less {
                fail(&mut rep, format!("transitivity {a:?} {b:?}"));
            }
        }
    }
    rep
}
