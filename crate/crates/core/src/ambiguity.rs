//! Compositions (critical pairs) between rule instances, the bounded
//! Gröbner-Shirshov check and bounded completion.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::opi::Opi;
use crate::poly::Poly;
use crate::rewrite::{Reducer, RewriteRule, RuleSet};
use crate::syntax::Alphabet;
use crate::template::{TLetter, Template};
use crate::word::{Letter, Position, StarContext, Word};

/// A concrete monic rule together with where it came from.
#[derive(Clone, Debug)]
pub struct Instance {
    pub rule: RewriteRule,
    /// Index of the shape rule and its arguments, for instances of identities.
    pub shape: Option<(usize, Vec<Word>)>,
}

impl Instance {
    pub fn describe(&self, rules: &RuleSet, alpha: &Alphabet) -> String {
        match &self.shape {
            Some((k, args)) => {
                let a: Vec<String> = args.iter().map(|w| alpha.format_word(w)).collect();
                format!("{}({})", rules.shapes()[*k].name, a.join(", "))
            }
            None => self.rule.origin.clone(),
        }
    }
}

/// All instances of the shape rules at argument tuples drawn from `args`,
/// followed by the ground rules.  Zero instances are skipped and duplicates
/// (equal monic polynomials) kept once.
pub fn instance_pool(rules: &RuleSet, args: &[Word]) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut seen: HashSet<Poly> = HashSet::new();
    for (k, opi) in rules.shapes().iter().enumerate() {
        let mut idx = vec![0usize; opi.arity];
        if args.is_empty() {
            continue;
        }
        loop {
            let tuple: Vec<Word> = idx.iter().map(|&i| args[i].clone()).collect();
            let p = rules.system().instance(k, &tuple)?.monic();
            if let Some((lm, _)) = p.lead() {
                if lm.is_one() {
                    return Err(Error::Inconsistent(format!("{}({:?})", opi.name, tuple)));
                }
                if seen.insert(p.clone()) {
                    let lm = lm.clone();
                    out.push(Instance {
                        rule: RewriteRule { poly: p, lm, origin: opi.name.clone() },
                        shape: Some((k, tuple)),
                    });
                }
            }
            let mut j = 0;
            loop {
                if j == idx.len() {
                    break;
                }
                idx[j] += 1;
                if idx[j] < args.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }
    for g in rules.ground() {
        if seen.insert(g.poly.clone()) {
            out.push(Instance { rule: g.clone(), shape: None });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// `p = f̄·u = v·ḡ`.
    Intersection { u: Word, v: Word },
    /// `p = f̄ = q|_{ḡ}`.
    Inclusion { context: StarContext, position: Position },
}

#[derive(Clone, Debug)]
pub struct Composition {
    pub kind: CompositionKind,
    pub left: usize,
    pub right: usize,
    pub p: Word,
    pub witness: Witness,
    pub value: Poly,
}

/// Intersection compositions of `f` and `g`: a proper suffix of `f̄`'s
/// top-level letters equals a proper prefix of `ḡ`'s.
pub fn intersection_compositions(f: &RewriteRule, g: &RewriteRule) -> Vec<(Word, Witness, Poly)> {
    let (a, b) = (f.lm.letters(), g.lm.letters());
    let mut out = Vec::new();
    for k in 1..a.len().min(b.len()) {
        if a[a.len() - k..] == b[..k] {
            out.push(intersection_at(f, g, k));
        }
    }
    out
}

fn intersection_at(f: &RewriteRule, g: &RewriteRule, k: usize) -> (Word, Witness, Poly) {
    let (a, b) = (f.lm.letters(), g.lm.letters());
    let u = Word::from_slice(&b[k..]);
    let v = Word::from_slice(&a[..a.len() - k]);
    let p = f.lm.concat(&u);
    let mut value = f.poly.mul_word_right(&u);
    value.sub_poly(&g.poly.mul_word_left(&v));
    (p, Witness::Intersection { u, v }, value)
}

/// Inclusion compositions: every occurrence of `ḡ` inside `f̄`, except the
/// whole word when `same` (the rule with itself).
pub fn inclusion_compositions(f: &RewriteRule, g: &RewriteRule, same: bool) -> Vec<(Word, Witness, Poly)> {
    let mut out = Vec::new();
    f.lm.find_factor(g.lm.letters(), &mut |pos| {
        out.push(pos);
        false
    });
    out.into_iter().filter_map(|pos| inclusion_at(f, g, pos, same)).collect()
}

fn inclusion_at(f: &RewriteRule, g: &RewriteRule, pos: Position, same: bool) -> Option<(Word, Witness, Poly)> {
    let q = f.lm.context_at(&pos);
    if same && q.is_hole() {
        return None;
    }
    let mut value = f.poly.clone();
    value.sub_poly(&g.poly.in_context(&q));
    Some((f.lm.clone(), Witness::Inclusion { context: q, position: pos }, value))
}

/// Whether the factor at `pos` of `shape(args)` lies inside the expansion of
/// a single metavariable.
pub fn inside_argument(shape: &Template, args: &[Word], pos: &Position) -> bool {
    let mut tpl = shape;
    let mut path: &[usize] = &pos.path;
    loop {
        // Map positions of the expanded sequence back to template letters.
        let mut offset = 0;
        let mut hit = None;
        for l in &tpl.0 {
            let span = match l {
                TLetter::Meta(k) => args[*k as usize].len(),
                TLetter::Op(..) => 1,
            };
            let target = path.first().copied().unwrap_or(pos.start);
            if target < offset + span {
                hit = Some((l, offset, span));
                break;
            }
            offset += span;
        }
        let Some((l, off, span)) = hit else { return false };
        match (l, path.first()) {
            (TLetter::Meta(_), Some(_)) => return true,
            (TLetter::Meta(_), None) => return pos.end <= off + span,
            (TLetter::Op(_, inner), Some(_)) => {
                tpl = inner;
                path = &path[1..];
            }
            (TLetter::Op(..), None) => return false,
        }
    }
}

/// Streams all compositions among `pool` in a deterministic order.
pub fn for_each_composition(
    pool: &[Instance],
    prune_in_argument: bool,
    rules: &RuleSet,
    f: &mut dyn FnMut(Composition) -> Result<()>,
) -> Result<CompositionCounts> {
    let mut by_lm: HashMap<&Word, Vec<usize>> = HashMap::new();
    let mut by_prefix: HashMap<Word, Vec<usize>> = HashMap::new();
    for (j, inst) in pool.iter().enumerate() {
        by_lm.entry(&inst.rule.lm).or_default().push(j);
        let ls = inst.rule.lm.letters();
        for k in 1..ls.len() {
            by_prefix.entry(Word::from_slice(&ls[..k])).or_default().push(j);
        }
    }
    let mut counts = CompositionCounts::default();
    for (i, fi) in pool.iter().enumerate() {
        let a = fi.rule.lm.letters();
        for k in 1..a.len() {
            let suffix = Word::from_slice(&a[a.len() - k..]);
            let Some(js) = by_prefix.get(&suffix) else { continue };
            for &j in js {
                let (p, witness, value) = intersection_at(&fi.rule, &pool[j].rule, k);
                counts.intersections += 1;
                f(Composition { kind: CompositionKind::Intersection, left: i, right: j, p, witness, value })?;
            }
        }
        let mut occurrences: Vec<(Position, usize)> = Vec::new();
        for path in fi.rule.lm.sequence_paths() {
            let seq = fi.rule.lm.sequence_at(&path);
            for start in 0..seq.len() {
                for end in start + 1..=seq.len() {
                    let w = Word::from_slice(&seq[start..end]);
                    if let Some(js) = by_lm.get(&w) {
                        for &j in js {
                            occurrences.push((Position { path: path.clone(), start, end }, j));
                        }
                    }
                }
            }
        }
        for (pos, j) in occurrences {
            if prune_in_argument {
                if let Some((k, args)) = &fi.shape {
                    if inside_argument(&rules.shapes()[*k].shape, args, &pos) {
                        counts.pruned += 1;
                        continue;
                    }
                }
            }
            if let Some((p, witness, value)) = inclusion_at(&fi.rule, &pool[j].rule, pos, i == j) {
                counts.inclusions += 1;
                f(Composition { kind: CompositionKind::Inclusion, left: i, right: j, p, witness, value })?;
            }
        }
    }
    Ok(counts)
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct CompositionCounts {
    pub intersections: usize,
    pub inclusions: usize,
    pub pruned: usize,
}

#[derive(Clone, Debug)]
pub struct GsConfig {
    /// Arguments are all words of weight `≤ bound`.
    pub bound: usize,
    /// Number of generators the arguments are built from.
    pub generators: u32,
    /// Skip inclusions that sit inside an argument of the outer instance.
    pub prune: bool,
    pub max_failures: usize,
    pub budget: usize,
}

impl Default for GsConfig {
    fn default() -> Self {
        GsConfig { bound: 2, generators: 2, prune: false, max_failures: 20, budget: crate::rewrite::DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GsFailure {
    pub kind: CompositionKind,
    pub left: String,
    pub right: String,
    pub ambiguity: String,
    pub witness: String,
    pub residual: String,
    pub residual_leading: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GsReport {
    pub system: String,
    pub mode: crate::word::Mode,
    pub lambda: String,
    pub bound: usize,
    pub generators: Vec<String>,
    pub instances: usize,
    pub compositions: CompositionCounts,
    pub failures_total: usize,
    pub failures: Vec<GsFailure>,
    pub passed: bool,
}

pub fn describe_witness(w: &Witness, alpha: &Alphabet) -> String {
    match w {
        Witness::Intersection { u, v } => format!("u = {}, v = {}", alpha.format_word(u), alpha.format_word(v)),
        Witness::Inclusion { context, .. } => format!("q = {}", format_context(context, alpha)),
    }
}

pub fn format_context(q: &StarContext, alpha: &Alphabet) -> String {
    let part = |w: &Word, s: &mut String, left: bool| {
        if !w.is_one() {
            if !left {
                s.push('*');
            }
            s.push_str(&alpha.format_word(w));
            if left {
                s.push('*');
            }
        }
    };
    let mut inner = String::new();
    part(&q.left, &mut inner, true);
    inner.push('★');
    part(&q.right, &mut inner, false);
    for fr in q.frames.iter().rev() {
        let mut s = String::new();
        part(&fr.left, &mut s, true);
        s.push_str(&format!("{}({inner})", fr.op.symbol()));
        part(&fr.right, &mut s, false);
        inner = s;
    }
    inner
}

/// Checks every composition among the instances at the configured bound and
/// reports those whose value does not reduce to zero.
pub fn gs_check(rules: &RuleSet, alpha: &Alphabet, cfg: &GsConfig) -> Result<GsReport> {
    let args = crate::enumerate::words_up_to(cfg.generators, rules.mode(), cfg.bound);
    let pool = instance_pool(rules, &args)?;
    let mut reducer = Reducer::with_budget(rules, cfg.budget);
    let mut failures = Vec::new();
    let mut total = 0;
    let counts = for_each_composition(&pool, cfg.prune, rules, &mut |c| {
        let r = reducer.nf(&c.value)?;
        if !r.is_zero() {
            total += 1;
            if failures.len() < cfg.max_failures {
                failures.push(GsFailure {
                    kind: c.kind,
                    left: pool[c.left].describe(rules, alpha),
                    right: pool[c.right].describe(rules, alpha),
                    ambiguity: alpha.format_word(&c.p),
                    witness: describe_witness(&c.witness, alpha),
                    residual: alpha.format_poly(&r.monic()),
                    residual_leading: alpha.format_word(r.lead().unwrap().0),
                });
            }
        }
        Ok(())
    })?;
    Ok(GsReport {
        system: rules.system().name.clone(),
        mode: rules.mode(),
        lambda: rules.system().lambda_text(),
        bound: cfg.bound,
        generators: alpha.names()[..cfg.generators as usize].to_vec(),
        instances: pool.len(),
        compositions: counts,
        failures_total: total,
        failures,
        passed: total == 0,
    })
}

#[derive(Clone, Debug)]
pub struct CompletionConfig {
    pub bound: usize,
    pub generators: u32,
    pub max_rounds: usize,
    pub max_new_rules: usize,
    pub budget: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            bound: 2,
            generators: 2,
            max_rounds: 8,
            max_new_rules: 40,
            budget: crate::rewrite::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub round: usize,
    pub name: String,
    /// `identity` for rules generalized to all arguments, `ground` otherwise.
    pub kind: String,
    pub rule: String,
    pub shape: Option<String>,
    pub left: String,
    pub right: String,
    pub composition: CompositionKind,
    pub ambiguity: String,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub rules: RuleSet,
    pub log: Vec<Derivation>,
    pub converged: bool,
    pub rounds: usize,
}

/// Turns a residual that is multilinear in its generators into an identity
/// by replacing the generators with metavariables.
pub fn generalize(name: &str, r: &Poly) -> Option<Opi> {
    let (lm, _) = r.lead()?;
    let gens = lm.generators();
    for w in r.words() {
        let mut c = Vec::new();
        w.generator_counts(&mut c);
        c.resize(c.len().max(gens.last().map_or(0, |g| *g as usize + 1)), 0);
        for (g, n) in c.iter().enumerate() {
            let want = u32::from(gens.contains(&(g as u32)));
            if *n != want {
                return None;
            }
        }
    }
    let mut order = Vec::new();
    first_appearance(lm, &mut order);
    let map: BTreeMap<u32, u32> = order.iter().enumerate().map(|(i, g)| (*g, i as u32)).collect();
    let body = r.terms().rev().map(|(w, c)| (c.clone(), Template::abstract_word(w, &map))).collect();
    Opi::new(name, body, Template::abstract_word(lm, &map)).ok()
}

fn first_appearance(w: &Word, out: &mut Vec<u32>) {
    for l in w.letters() {
        match l {
            Letter::Gen(g) => {
                if !out.contains(g) {
                    out.push(*g)
                }
            }
            Letter::Op(_, inner) => first_appearance(inner, out),
        }
    }
}

/// Bounded completion.  Each round enumerates all compositions of the current
/// instances, processes them by increasing ambiguity weight (more distinct
/// generators first, so generic residuals come before their
/// specializations) and adds nonzero reduced residuals as new rules.
pub fn complete(start: RuleSet, alpha: &Alphabet, cfg: &CompletionConfig) -> Result<Completion> {
    let mut rules = start;
    let mut log = Vec::new();
    let args = crate::enumerate::words_up_to(cfg.generators, rules.mode(), cfg.bound);
    for round in 1..=cfg.max_rounds {
        let pool = instance_pool(&rules, &args)?;
        let mut comps = Vec::new();
        for_each_composition(&pool, false, &rules, &mut |c| {
            comps.push(c);
            Ok(())
        })?;
        comps.sort_by(|a, b| {
            let key = |c: &Composition| (c.p.weight(), std::cmp::Reverse(c.p.generators().len()));
            key(a).cmp(&key(b)).then_with(|| a.p.cmp(&b.p)).then_with(|| (a.left, a.right).cmp(&(b.left, b.right)))
        });
        let mut added = 0;
        let mut i = 0;
        while i < comps.len() {
            // Reduce with the current rules until a residual appears.
            let mut found = None;
            {
                let mut reducer = Reducer::with_budget(&rules, cfg.budget);
                while i < comps.len() {
                    let r = reducer.nf(&comps[i].value)?;
                    i += 1;
                    if !r.is_zero() {
                        found = Some((i - 1, r.monic()));
                        break;
                    }
                }
            }
            let Some((ci, r)) = found else { break };
            let c = &comps[ci];
            let (lm, _) = r.lead().unwrap();
            if lm.is_one() {
                return Err(Error::Inconsistent(alpha.format_poly(&r)));
            }
            let name = format!("c{}", log.len() + 1);
            let entry = |kind: &str, shape: Option<String>| Derivation {
                round,
                name: name.clone(),
                kind: kind.to_string(),
                rule: alpha.format_poly(&r),
                shape,
                left: pool[c.left].describe(&rules, alpha),
                right: pool[c.right].describe(&rules, alpha),
                composition: c.kind,
                ambiguity: alpha.format_word(&c.p),
                witness: describe_witness(&c.witness, alpha),
            };
            match generalize(&name, &r) {
                Some(opi) => {
                    log.push(entry("identity", Some(opi.shape.format())));
                    rules.add_shape(opi);
                }
                None => {
                    log.push(entry("ground", None));
                    rules.add_ground(RewriteRule { lm: lm.clone(), poly: r.clone(), origin: name.clone() });
                }
            }
            added += 1;
            if log.len() >= cfg.max_new_rules {
                return Ok(Completion { rules, log, converged: false, rounds: round });
            }
        }
        if added == 0 {
            return Ok(Completion { rules, log, converged: true, rounds: round });
        }
    }
    Ok(Completion { rules, log, converged: false, rounds: cfg.max_rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opi::catalog;
    use crate::poly::coeff;
    use crate::word::Mode;

    fn inst(a: &Alphabet, rules: &RuleSet, k: usize, args: &[&str]) -> RewriteRule {
        let args: Vec<Word> = args.iter().map(|s| a.parse_word(s, Mode::Nonunital).unwrap()).collect();
        let p = rules.system().instance(k, &args).unwrap().monic();
        RewriteRule { lm: p.lead().unwrap().0.clone(), poly: p, origin: String::new() }
    }

    #[test]
    fn overlap_of_phi5_and_phi1() {
        let a = Alphabet::new(&["x", "y", "z"]).unwrap();
        let rs = RuleSet::new(catalog("DRB", &coeff(1), false).unwrap()).unwrap();
        let f = inst(&a, &rs, 4, &["x", "y"]);
        let g = inst(&a, &rs, 0, &["y", "z"]);
        let cs = intersection_compositions(&f, &g);
        assert_eq!(cs.len(), 1);
        assert_eq!(a.format_word(&cs[0].0), "D(x)*P(y)*P(z)");
        let x = inst(&a, &rs, 2, &["x"]);
        assert!(intersection_compositions(&x, &x).is_empty());
    }

    #[test]
    fn phi2_contains_phi3() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let rs = RuleSet::new(catalog("DRB-prime", &coeff(1), false).unwrap()).unwrap();
        let f = inst(&a, &rs, 1, &["P(x)", "y"]);
        let g = inst(&a, &rs, 2, &["x"]);
        let cs = inclusion_compositions(&f, &g, false);
        assert_eq!(cs.len(), 1);
        assert_eq!(describe_witness(&cs[0].1, &a), "q = ★*D(y)");
        assert!(inclusion_compositions(&g, &g, true).is_empty());
    }

    #[test]
    fn empty_system_passes() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let sys = crate::opi::OpiSystem::new("empty", Mode::Nonunital, coeff(1), vec![], vec![]);
        let rep = gs_check(&RuleSet::new(sys).unwrap(), &a, &GsConfig::default()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.instances, 0);
    }

    #[test]
    fn argument_slots() {
        let t = Template::parse("P($1)*D($2)").unwrap();
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let args = [a.parse_word("x*y", Mode::Nonunital).unwrap(), a.parse_word("y", Mode::Nonunital).unwrap()];
        let inside = Position { path: vec![0], start: 0, end: 2 };
        let outside = Position { path: vec![], start: 0, end: 2 };
        assert!(inside_argument(&t, &args, &inside));
        assert!(!inside_argument(&t, &args, &outside));
    }
}
