//! Rewriting modulo a system of identities.
//!
//! Shape rules are matched directly against words: a factor matching the
//! leading shape of `φ` under arguments `u` is a redex when the leading
//! monomial of the instance `φ(u)` really is that factor.  Ground rules are
//! plain polynomials.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::opi::{Opi, OpiSystem};
use crate::poly::{Coeff, Leading, Poly};
use crate::word::{Letter, Mode, Position, StarContext, Word};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A monic polynomial read as `lm → lm - poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub poly: Poly,
    pub lm: Word,
    pub origin: String,
}

/// Monic versions of the nonzero elements of `g`.  Fails if some element is
/// a nonzero constant.
pub fn monicize(g: &[(String, Poly)]) -> Result<Vec<RewriteRule>> {
    let mut out = Vec::new();
    for (origin, p) in g {
        match p.leading(Mode::Unital) {
            Leading::Zero => {}
            Leading::Term(w, c) if w.is_one() => {
                if !c.is_zero() {
                    return Err(Error::Inconsistent(crate::poly::format_coeff(&c)));
                }
            }
            Leading::Term(w, _) => out.push(RewriteRule { poly: p.monic(), lm: w, origin: origin.clone() }),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Shape(usize),
    Ground(usize),
}

/// Shape rules from an identity system plus ground rules.
#[derive(Clone, Debug)]
pub struct RuleSet {
    sys: OpiSystem,
    ground: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn new(sys: OpiSystem) -> Result<RuleSet> {
        let ground = monicize(&sys.ground)?;
        Ok(RuleSet { sys, ground })
    }

    pub fn system(&self) -> &OpiSystem {
        &self.sys
    }

    pub fn mode(&self) -> Mode {
        self.sys.mode
    }

    pub fn shapes(&self) -> &[Opi] {
        &self.sys.opis
    }

    pub fn ground(&self) -> &[RewriteRule] {
        &self.ground
    }

    pub fn add_shape(&mut self, opi: Opi) {
        self.sys.opis.push(opi);
    }

    pub fn add_ground(&mut self, rule: RewriteRule) {
        self.ground.push(rule);
    }

    pub fn rule_name(&self, id: RuleId) -> &str {
        match id {
            RuleId::Shape(k) => &self.sys.opis[k].name,
            RuleId::Ground(k) => &self.ground[k].origin,
        }
    }

    /// Tries rule `id` on the factor `seq[start..end]`.
    fn try_rule(&self, id: RuleId, slice: &[Letter]) -> Option<(Vec<Word>, Poly)> {
        match id {
            RuleId::Ground(k) => {
                let r = &self.ground[k];
                (r.lm.letters() == slice).then(|| (Vec::new(), r.poly.clone()))
            }
            RuleId::Shape(k) => {
                let opi = &self.sys.opis[k];
                let unital = self.mode().is_unital();
                let (lo, hi) = opi.shape.span_bounds(unital, slice.len());
                if slice.len() < lo || slice.len() > hi {
                    return None;
                }
                if !opi.shape.ends_compatible(&slice[0], &slice[slice.len() - 1]) {
                    return None;
                }
                for b in opi.shape.match_seq(slice, opi.arity, unital) {
                    let args: Vec<Word> = b.into_iter().map(|a| a.unwrap_or_else(Word::one)).collect();
                    let p = self.sys.instance(k, &args).ok()?;
                    if let Some((lm, _)) = p.lead() {
                        if lm.letters() == slice {
                            return Some((args, p.monic()));
                        }
                    }
                }
                None
            }
        }
    }

    fn rule_ids(&self) -> impl Iterator<Item = RuleId> + '_ {
        (0..self.sys.opis.len()).map(RuleId::Shape).chain((0..self.ground.len()).map(RuleId::Ground))
    }

    /// Redexes of `w` in the deterministic order: shallower sequences first,
    /// then by start, then longer factors first, then by rule.
    fn scan(&self, w: &Word, f: &mut dyn FnMut(Redex) -> bool) {
        for path in w.sequence_paths() {
            let seq = w.sequence_at(&path);
            for start in 0..seq.len() {
                for end in (start + 1..=seq.len()).rev() {
                    let slice = &seq[start..end];
                    for id in self.rule_ids() {
                        if let Some((args, poly)) = self.try_rule(id, slice) {
                            let position = Position { path: path.clone(), start, end };
                            let context = w.context_at(&position);
                            if f(Redex { position, context, rule: id, args, poly }) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn find_redexes(&self, w: &Word) -> Vec<Redex> {
        let mut out = Vec::new();
        self.scan(w, &mut |r| {
            out.push(r);
            false
        });
        out
    }

    pub fn first_redex(&self, w: &Word) -> Option<Redex> {
        let mut out = None;
        self.scan(w, &mut |r| {
            out = Some(r);
            true
        });
        out
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.first_redex(w).is_none()
    }
}

/// An occurrence `w = q|_{lm(s)}` of a rule's leading monomial.
#[derive(Clone, Debug)]
pub struct Redex {
    pub position: Position,
    pub context: StarContext,
    pub rule: RuleId,
    /// Instance arguments (empty for ground rules).
    pub args: Vec<Word>,
    /// The monic rule instance `s`.
    pub poly: Poly,
}

/// One reduction: `f ↦ f - coeff · context|_poly`.
#[derive(Clone, Debug)]
pub struct Step {
    pub coeff: Coeff,
    pub context: StarContext,
    pub rule: RuleId,
    pub args: Vec<Word>,
    pub poly: Poly,
}

fn apply(f: &Poly, c: &Coeff, r: &Redex) -> Poly {
    let mut g = f.clone();
    g.add_scaled(&r.poly.in_context(&r.context), &-c.clone());
    g
}

/// One step of the standard strategy: rewrite the largest reducible
/// monomial at its first redex.
pub fn reduce_once(f: &Poly, rules: &RuleSet) -> Option<(Poly, Step)> {
    for (w, c) in f.terms().rev() {
        if let Some(r) = rules.first_redex(w) {
            let g = apply(f, c, &r);
            return Some((g, Step { coeff: c.clone(), context: r.context, rule: r.rule, args: r.args, poly: r.poly }));
        }
    }
    None
}

/// Normal form by repeated [`reduce_once`], recording every step so that
/// `f - NF(f) = Σ coeff · context|_poly`.
pub fn normal_form_traced(f: &Poly, rules: &RuleSet, budget: usize) -> Result<(Poly, Vec<Step>)> {
    let mut cur = f.clone();
    let mut steps = Vec::new();
    while let Some((g, s)) = reduce_once(&cur, rules) {
        steps.push(s);
        if steps.len() > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        cur = g;
    }
    Ok((cur, steps))
}

/// Normal form under a randomly chosen strategy: at each step a random
/// reducible monomial is rewritten at a random redex.
pub fn normal_form_random(f: &Poly, rules: &RuleSet, rng: &mut impl Rng, budget: usize) -> Result<Poly> {
    RandomReducer::new(rules, budget).nf(f, rng)
}

/// Random-strategy rewriting with the redexes of each word cached across
/// calls.
pub struct RandomReducer<'a> {
    rules: &'a RuleSet,
    redexes: HashMap<Word, Vec<Redex>>,
    budget: usize,
}

impl<'a> RandomReducer<'a> {
    pub fn new(rules: &'a RuleSet, budget: usize) -> RandomReducer<'a> {
        RandomReducer { rules, redexes: HashMap::new(), budget }
    }

    fn redexes(&mut self, w: &Word) -> &[Redex] {
        if !self.redexes.contains_key(w) {
            let rs = self.rules.find_redexes(w);
            self.redexes.insert(w.clone(), rs);
        }
        &self.redexes[w]
    }

    pub fn nf(&mut self, f: &Poly, rng: &mut impl Rng) -> Result<Poly> {
        let mut cur = f.clone();
        for _ in 0..self.budget {
            let mut reducible = Vec::new();
            for (w, c) in cur.terms() {
                if !self.redexes(w).is_empty() {
                    reducible.push((w.clone(), c.clone()));
                }
            }
            if reducible.is_empty() {
                return Ok(cur);
            }
            let (w, c) = &reducible[rng.gen_range(0..reducible.len())];
            let rs = &self.redexes[w];
            let r = &rs[rng.gen_range(0..rs.len())];
            cur = apply(&cur, c, r);
        }
        Err(Error::BudgetExceeded(self.budget))
    }
}

/// Normal forms with a per-instance memo of word normal forms.  The memo
/// must be discarded when the rules change, which the borrow enforces.
pub struct Reducer<'a> {
    rules: &'a RuleSet,
    memo: HashMap<Word, Poly>,
    budget: usize,
    steps: usize,
}

impl<'a> Reducer<'a> {
    pub fn new(rules: &'a RuleSet) -> Reducer<'a> {
        Reducer::with_budget(rules, DEFAULT_BUDGET)
    }

    pub fn with_budget(rules: &'a RuleSet, budget: usize) -> Reducer<'a> {
        Reducer { rules, memo: HashMap::new(), budget, steps: 0 }
    }

    pub fn rules(&self) -> &RuleSet {
        self.rules
    }

    /// Rewriting steps taken so far (each word is rewritten at most once).
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn nf(&mut self, f: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (w, c) in f.terms() {
            let n = self.nf_word(w)?;
            out.add_scaled(&n, c);
        }
        Ok(out)
    }

    pub fn nf_word(&mut self, w: &Word) -> Result<Poly> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        struct Frame {
            word: Word,
            children: Vec<(Word, Coeff)>,
        }
        let start_steps = self.steps;
        let mut stack: Vec<Frame> = Vec::new();
        let mut pending = Some(w.clone());
        loop {
            if let Some(word) = pending.take() {
                match self.rules.first_redex(&word) {
                    None => {
                        self.memo.insert(word.clone(), Poly::monomial(word));
                    }
                    Some(r) => {
                        self.steps += 1;
                        if self.steps - start_steps > self.budget {
                            return Err(Error::BudgetExceeded(self.budget));
                        }
                        let mut children = Vec::with_capacity(r.poly.len());
                        for (u, c) in r.poly.terms().rev().skip(1) {
                            let child = r.context.substitute(u);
                            if child >= word {
                                return Err(Error::NonDescending(format!("{word:?}")));
                            }
                            children.push((child, -c.clone()));
                        }
                        stack.push(Frame { word, children });
                    }
                }
            }
            let Some(top) = stack.last() else { break };
            if let Some((child, _)) = top.children.iter().find(|(u, _)| !self.memo.contains_key(u)) {
                pending = Some(child.clone());
                continue;
            }
            let top = stack.pop().unwrap();
            let mut acc = Poly::zero();
            for (u, c) in &top.children {
                acc.add_scaled(&self.memo[u], c);
            }
            self.memo.insert(top.word, acc);
        }
        Ok(self.memo[w].clone())
    }

    pub fn is_irreducible(&mut self, w: &Word) -> Result<bool> {
        let n = self.nf_word(w)?;
        Ok(n.len() == 1 && n.lead().map(|(u, c)| u == w && c.is_one()).unwrap_or(false))
    }
}

pub fn normal_form(f: &Poly, rules: &RuleSet) -> Result<Poly> {
    Reducer::new(rules).nf(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opi::catalog;
    use crate::poly::coeff;
    use crate::syntax::Alphabet;

    fn setup(name: &str) -> (Alphabet, RuleSet) {
        let sys = catalog(name, &coeff(1), false).unwrap();
        (Alphabet::new(&["x", "y", "z"]).unwrap(), RuleSet::new(sys).unwrap())
    }

    #[test]
    fn rota_baxter_product() {
        let (a, rs) = setup("RB");
        let f = a.parse_poly("P(x)*P(y)", Mode::Nonunital).unwrap();
        let n = normal_form(&f, &rs).unwrap();
        assert_eq!(a.format_poly(&n), "P(P(x)*y) + P(x*P(y)) + P(x*y)");
    }

    #[test]
    fn section_identity() {
        let (a, rs) = setup("DRB");
        let f = a.parse_poly("D(P(x*y))*z", Mode::Nonunital).unwrap();
        assert_eq!(a.format_poly(&normal_form(&f, &rs).unwrap()), "x*y*z");
    }

    #[test]
    fn traced_matches_memoized() {
        let (a, rs) = setup("DRB");
        let f = a.parse_poly("P(x)*D(y)*P(z) + D(x)*D(P(y)) - 2*D(x)*P(y)", Mode::Nonunital).unwrap();
        let (n, steps) = normal_form_traced(&f, &rs, DEFAULT_BUDGET).unwrap();
        assert_eq!(n, normal_form(&f, &rs).unwrap());
        let mut diff = &f - &n;
        for s in &steps {
            diff.add_scaled(&s.poly.in_context(&s.context), &-s.coeff.clone());
        }
        assert!(diff.is_zero());
    }

    #[test]
    fn inconsistent_ground_rule() {
        let g = vec![("c".to_string(), Poly::constant(coeff(2)))];
        assert!(matches!(monicize(&g), Err(Error::Inconsistent(_))));
    }
}
