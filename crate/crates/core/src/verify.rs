//! The acceptance suite: each check reproduces one claim about the catalogs
//! at a fixed bound and reports witnesses.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{mixed_gs_check, Presentation};
use crate::ambiguity::{
    complete, for_each_composition, gs_check, inside_argument, instance_pool, CompletionConfig, GsConfig, GsReport,
};
use crate::basis::{irreducible_words, span_check};
use crate::enumerate::{contexts_up_to, words_up_to};
use crate::error::{Error, Result};
use crate::opi::{catalog, named_decl, ShapeOutcome};
use crate::order::{check_monomial_order_properties, dlex, OrderKind};
use crate::poly::{coeff, ratio, Coeff, Poly};
use crate::rewrite::{RandomReducer, Reducer, RuleSet};
use crate::syntax::Alphabet;
use crate::word::{Letter, Mode, Operator, Word};

pub const CRITERIA: [u32; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Weight bound of the order samples.
    pub order_bound: usize,
    /// Weight bound of the contexts and multipliers in the order check.
    pub order_context_bound: usize,
    /// Weight bound of arguments when checking leading shapes.
    pub shape_bound: usize,
    /// Weight bound of arguments in the GS checks.
    pub gs_bound: usize,
    pub completion_rounds: usize,
    pub strategies: usize,
    /// Word weight bounds for the confluence check over `{x}` and `{x,y}`.
    pub confluence_bound_one: usize,
    pub confluence_bound_two: usize,
    pub span_bound: usize,
    pub irr_bound: usize,
    pub witness_bound: usize,
    pub budget: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            order_bound: 3,
            order_context_bound: 2,
            shape_bound: 3,
            gs_bound: 2,
            completion_rounds: 2,
            strategies: 20,
            confluence_bound_one: 4,
            confluence_bound_two: 3,
            span_bound: 3,
            irr_bound: 4,
            witness_bound: 5,
            budget: crate::rewrite::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub summary: String,
    pub detail: Value,
}

/// Supplementary findings that are not acceptance criteria.
#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub claim: String,
    pub holds: bool,
    pub summary: String,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub diagnostics: Vec<Diagnostic>,
    pub passed: bool,
}

fn xy() -> Alphabet {
    Alphabet::new(&["x", "y"]).unwrap()
}

fn rules(name: &str, lambda: &Coeff, unital: bool) -> Result<RuleSet> {
    RuleSet::new(catalog(name, lambda, unital)?)
}

/// The eight systems claimed to be GS bases, with the weight used.
fn gs_catalogs() -> Vec<(&'static str, Coeff)> {
    vec![
        ("DRB", coeff(1)),
        ("DRB0", coeff(0)),
        ("uDRB", coeff(1)),
        ("uDRB0", coeff(0)),
        ("ID", coeff(1)),
        ("ID0", coeff(0)),
        ("uID", coeff(1)),
        ("uID0", coeff(0)),
    ]
}

fn check(id: u32, name: &str, claim: &str, passed: bool, summary: String, detail: Value) -> CheckResult {
    CheckResult { id, name: name.into(), claim: claim.into(), passed, summary, detail }
}

pub fn run_criterion(id: u32, cfg: &VerifyConfig) -> Result<CheckResult> {
    match id {
        1 => order_soundness(cfg),
        2 => unital_chains(cfg).map(|(c, _)| c),
        3 => leading_shapes(cfg),
        4 => gs_theorems(cfg),
        5 => negative_controls(cfg),
        6 => confluence(cfg, &gs_catalogs()),
        7 => cd_instance(cfg),
        8 => over_algebra(cfg),
        9 => irr_inclusion(cfg),
        10 => determinism(cfg),
        _ => Err(Error::Config(format!("no criterion {id}"))),
    }
}

/// Runs the selected criteria (all when `only` is empty) and, for the full
/// suite, the diagnostics.
pub fn verify_paper(cfg: &VerifyConfig, only: &[u32]) -> Result<Report> {
    let ids: Vec<u32> = if only.is_empty() { CRITERIA.to_vec() } else { only.to_vec() };
    let mut checks = Vec::new();
    for id in ids {
        checks.push(run_criterion(id, cfg)?);
    }
    let diagnostics = if only.is_empty() { diagnostics(cfg)? } else { Vec::new() };
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        tool: "opgs verify-paper".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        checks,
        diagnostics,
        passed,
    })
}

fn order_soundness(cfg: &VerifyConfig) -> Result<CheckResult> {
    let mut parts = Vec::new();
    let mut ok = true;
    for (mode, kind) in [(Mode::Nonunital, OrderKind::Pd), (Mode::Unital, OrderKind::Upd)] {
        let sample = words_up_to(2, mode, cfg.order_bound);
        let mult = words_up_to(2, mode, cfg.order_context_bound);
        let contexts = contexts_up_to(2, mode, cfg.order_context_bound);
        let cmp = |a: &Word, b: &Word| kind.compare(a, b).unwrap();
        let rep = check_monomial_order_properties(&cmp, &sample, &mult, &contexts, mode.is_unital());
        ok &= rep.passed();
        parts.push(json!({
            "order": kind,
            "sample": rep.sample_size,
            "multipliers": mult.len(),
            "contexts": rep.contexts,
            "comparisons": rep.comparisons,
            "violations": rep.violations,
        }));
    }
    // On bracket-free words the order is deg-lex.
    let plain: Vec<Word> = words_up_to(2, Mode::Nonunital, 4)
        .into_iter()
        .filter(|w| w.letters().iter().all(|l| matches!(l, Letter::Gen(_))))
        .collect();
    let mut restriction = 0;
    for a in &plain {
        for b in &plain {
            if a.cmp(b) != dlex(a, b) {
                restriction += 1;
            }
        }
    }
    ok &= restriction == 0;
    let summary = format!(
        "{} and {} words, {} restriction mismatches",
        parts[0]["sample"], parts[1]["sample"], restriction
    );
    Ok(check(
        1,
        "order_soundness",
        "PD and uPD are total, antisymmetric, transitive and compatible with brackets, multiplication and contexts",
        ok,
        summary,
        json!({ "orders": parts, "bracket_free_words": plain.len(), "restriction_mismatches": restriction }),
    ))
}

type Chain = (&'static str, Vec<(Word, Ordering, Word)>);

fn p(w: Word) -> Word {
    Word::bracket_unchecked(Operator::P, w)
}

fn d(w: Word) -> Word {
    Word::bracket_unchecked(Operator::D, w)
}

/// The five chains, each a list of links `a > b` or `a ≥ b` (the latter
/// encoded as `Ordering::Equal`), plus the chain with the last two terms of
/// (b) swapped.
fn chains(u: &Word, v: &Word) -> Vec<Chain> {
    let p1 = p(Word::one());
    let gt = Ordering::Greater;
    let ge = Ordering::Equal;
    vec![
        ("a", vec![(p(u.clone()).concat(&p1), gt, p(u.concat(&p1))), (p(u.concat(&p1)), ge, p(p(u.clone())))]),
        ("b", vec![(p1.concat(&p(v.clone())), gt, p(p(v.clone()))), (p(p(v.clone())), ge, p(p1.concat(v)))]),
        ("c", vec![(p1.concat(&p1), gt, p(p1.clone()))]),
        ("d", vec![(p1.concat(&d(v.clone())), gt, d(p1.concat(v)))]),
        ("e", vec![(d(u.clone()).concat(&p1), gt, d(u.concat(&p1)))]),
        ("b_swapped", vec![(p1.concat(&p(v.clone())), gt, p(p1.concat(v))), (p(p1.concat(v)), ge, p(p(v.clone())))]),
    ]
}

fn unital_chains(cfg: &VerifyConfig) -> Result<(CheckResult, Diagnostic)> {
    let a = xy();
    let words: Vec<Word> = words_up_to(2, Mode::Unital, cfg.order_bound).into_iter().filter(|w| !w.is_one()).collect();
    let names = ["a", "b", "c", "d", "e", "b_swapped"];
    let mut violations = [0usize; 6];
    let mut first: [Option<String>; 6] = Default::default();
    let mut checked = 0;
    for u in &words {
        for v in &words {
            checked += 1;
            for (i, (_, links)) in chains(u, v).iter().enumerate() {
                for (j, (l, rel, r)) in links.iter().enumerate() {
                    let c = l.cmp(r);
                    let ok = if *rel == Ordering::Greater { c == Ordering::Greater } else { c != Ordering::Less };
                    if !ok {
                        violations[i] += 1;
                        if first[i].is_none() {
                            let sym = if *rel == Ordering::Greater { ">" } else { ">=" };
                            first[i] = Some(format!(
                                "link {}: {} {sym} {} fails (u = {}, v = {})",
                                j + 1,
                                a.format_word(l),
                                a.format_word(r),
                                a.format_word(u),
                                a.format_word(v)
                            ));
                        }
                        break;
                    }
                }
            }
        }
    }
    let per: Vec<Value> = (0..6)
        .map(|i| json!({ "chain": names[i], "violations": violations[i], "first": first[i] }))
        .collect();
    let ok = violations[..5].iter().all(|&n| n == 0);
    let failing: Vec<&str> = (0..5).filter(|&i| violations[i] > 0).map(|i| names[i]).collect();
    let summary = if ok {
        format!("{checked} pairs, all five chains hold")
    } else {
        format!("{checked} pairs, chains failing: {}", failing.join(", "))
    };
    let c = check(
        2,
        "unital_order_chains",
        "the five uPD inequality chains between products and nestings of P(1), D(1), P(u), D(v) hold",
        ok,
        summary,
        json!({ "pairs": checked, "chains": per[..5].to_vec() }),
    );
    let diag = Diagnostic {
        name: "unital_order_chain_b_swapped".into(),
        claim: "chain (b) with its last two terms exchanged: P(1)P(v) > P(P(1)v) >= P(P(v))".into(),
        holds: violations[5] == 0,
        summary: format!("{} violations over {checked} pairs", violations[5]),
        detail: per[5].clone(),
    };
    Ok((c, diag))
}

fn leading_shapes(cfg: &VerifyConfig) -> Result<CheckResult> {
    let mut runs: Vec<(&str, Coeff, bool)> = Vec::new();
    for l in [coeff(1), coeff(2), ratio(1, 2)] {
        runs.push(("ID", l.clone(), false));
        runs.push(("ID-prime", l, false));
    }
    runs.push(("DRB0", coeff(0), false));
    runs.push(("ID0", coeff(0), false));
    runs.push(("ID0-prime", coeff(0), false));
    runs.push(("uID", coeff(1), true));
    runs.push(("uID0", coeff(0), true));
    let mut ok = true;
    let mut parts = Vec::new();
    let mut total = 0usize;
    for (name, lambda, unital) in runs {
        let sys = catalog(name, &lambda, unital)?;
        let args = words_up_to(2, sys.mode, cfg.shape_bound);
        for (k, opi) in sys.opis.iter().enumerate() {
            let (mut matches, mut vanish, mut degenerate, mut mismatch) = (0, 0, 0, 0);
            let mut first = None;
            let mut degenerate_by = std::collections::BTreeSet::new();
            for_each_tuple(&args, opi.arity, &mut |t| {
                total += 1;
                match sys.verify_leading_shape(k, t)? {
                    ShapeOutcome::Matches => matches += 1,
                    ShapeOutcome::Vanishes => vanish += 1,
                    ShapeOutcome::Degenerate { by } => {
                        degenerate += 1;
                        degenerate_by.insert(by);
                    }
                    ShapeOutcome::Mismatch { leading, expected } => {
                        mismatch += 1;
                        if first.is_none() {
                            let a = xy();
                            first = Some(format!("{} != {}", a.format_word(&leading), a.format_word(&expected)));
                        }
                    }
                }
                Ok(())
            })?;
            ok &= mismatch == 0;
            parts.push(json!({
                "system": sys.name,
                "lambda": sys.lambda_text(),
                "identity": opi.name,
                "shape": opi.shape.format(),
                "multilinear": is_multilinear(&opi.body, opi.arity),
                "matches": matches,
                "vanishes": vanish,
                "degenerate": degenerate,
                "degenerate_by": degenerate_by,
                "mismatches": mismatch,
                "first_mismatch": first,
            }));
            ok &= is_multilinear(&opi.body, opi.arity);
        }
    }
    let mismatches: usize = parts.iter().map(|p| p["mismatches"].as_u64().unwrap() as usize).sum();
    Ok(check(
        3,
        "leading_shapes",
        "every catalog identity has its declared leading monomial at every argument tuple, up to the unital degenerations",
        ok,
        format!("{} identity/weight pairs, {total} instances, {mismatches} mismatches", parts.len()),
        json!({ "identities": parts }),
    ))
}

fn for_each_tuple(args: &[Word], arity: usize, f: &mut dyn FnMut(&[Word]) -> Result<()>) -> Result<()> {
    let mut idx = vec![0usize; arity];
    let mut t: Vec<Word> = vec![Word::one(); arity];
    loop {
        for (i, &j) in idx.iter().enumerate() {
            t[i] = args[j].clone();
        }
        f(&t)?;
        let mut j = 0;
        while j < arity {
            idx[j] += 1;
            if idx[j] < args.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == arity {
            return Ok(());
        }
    }
}

/// Each metavariable occurs exactly once in every term.
fn is_multilinear(body: &[(Coeff, crate::template::Template)], arity: usize) -> bool {
    body.iter().all(|(_, t)| {
        let mut ms = Vec::new();
        t.collect_metas(&mut ms);
        ms.sort();
        ms == (0..arity as u32).collect::<Vec<_>>()
    })
}

fn gs_summary(r: &GsReport) -> Value {
    json!({
        "system": r.system,
        "mode": r.mode,
        "lambda": r.lambda,
        "passed": r.passed,
        "instances": r.instances,
        "intersections": r.compositions.intersections,
        "inclusions": r.compositions.inclusions,
        "failures_total": r.failures_total,
        "failures": r.failures.iter().take(3).collect::<Vec<_>>(),
    })
}

fn gs_theorems(cfg: &VerifyConfig) -> Result<CheckResult> {
    let a = xy();
    let gcfg = GsConfig { bound: cfg.gs_bound, generators: 2, budget: cfg.budget, ..GsConfig::default() };
    let mut parts = Vec::new();
    let mut failing = Vec::new();
    for (name, lambda) in gs_catalogs() {
        let r = gs_check(&rules(name, &lambda, false)?, &a, &gcfg)?;
        if !r.passed {
            failing.push(format!("{name} ({})", r.failures_total));
        }
        parts.push(gs_summary(&r));
    }
    let summary = if failing.is_empty() {
        "all 8 systems pass".to_string()
    } else {
        format!("failing: {}", failing.join(", "))
    };
    Ok(check(
        4,
        "gs_bases",
        "DRB, DRB0, uDRB, uDRB0, ID, ID0, uID and uID0 are Gröbner-Shirshov bases: every composition reduces to 0",
        failing.is_empty(),
        summary,
        json!({ "bound": cfg.gs_bound, "generators": ["x", "y"], "systems": parts }),
    ))
}

/// Shapes of the named identities at weight 1, canonically renamed.
fn reference_shape(name: &str) -> (String, crate::template::Template, Vec<(Coeff, crate::template::Template)>) {
    let opi = named_decl(name).unwrap().evaluate(&coeff(1)).unwrap();
    let (s, b) = opi.canonical();
    (name.to_string(), s, b)
}

fn negative_controls(cfg: &VerifyConfig) -> Result<CheckResult> {
    let a = Alphabet::new(&["x", "y", "z"])?;
    let gcfg = GsConfig { bound: cfg.gs_bound, generators: 2, budget: cfg.budget, ..GsConfig::default() };
    let ccfg = CompletionConfig {
        bound: cfg.gs_bound,
        generators: 2,
        max_rounds: cfg.completion_rounds,
        budget: cfg.budget,
        ..CompletionConfig::default()
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for (seed, expected) in [("DRB-prime", vec!["phi4", "phi5"]), ("ID-prime", vec!["phi1", "phi4", "phi5", "phi8", "phi9"])]
    {
        let rs = rules(seed, &coeff(1), false)?;
        let start = rs.shapes().len();
        let gs = gs_check(&rs, &a, &gcfg)?;
        let c = complete(rs, &a, &ccfg)?;
        let found: Vec<_> = c.rules.shapes()[start..].iter().map(|o| (o.name.clone(), o.canonical())).collect();
        let mut matched = Vec::new();
        for e in &expected {
            let (n, s, b) = reference_shape(e);
            let hit = found.iter().find(|(_, (fs, _))| *fs == s);
            ok &= hit.is_some();
            matched.push(json!({
                "identity": n,
                "shape": s.format(),
                "found_as": hit.map(|h| h.0.clone()),
                "same_body": hit.map(|h| h.1 .1 == b),
            }));
        }
        ok &= !gs.passed;
        parts.push(json!({
            "seed": seed,
            "gs_passed": gs.passed,
            "gs_failures_total": gs.failures_total,
            "first_failure": gs.failures.first(),
            "rounds": c.rounds,
            "converged": c.converged,
            "new_rules": c.log,
            "expected": matched,
        }));
    }
    // A GS system gains nothing.
    let drb = complete(rules("DRB", &coeff(1), false)?, &a, &ccfg)?;
    ok &= drb.log.is_empty() && drb.converged;
    parts.push(json!({ "seed": "DRB", "new_rules": drb.log.len(), "converged": drb.converged }));
    Ok(check(
        5,
        "negative_controls",
        "the defining sets DRB' and ID' are not GS, and completion rediscovers phi4, phi5 (and phi1, phi8, phi9 from ID') up to renaming",
        ok,
        format!(
            "DRB': {} new rules, ID': {} new rules, DRB: {} new rules",
            parts[0]["new_rules"].as_array().map_or(0, Vec::len),
            parts[1]["new_rules"].as_array().map_or(0, Vec::len),
            drb.log.len()
        ),
        json!({ "runs": parts }),
    ))
}

fn confluence(cfg: &VerifyConfig, systems: &[(&str, Coeff)]) -> Result<CheckResult> {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut total_words = 0;
    for (si, (name, lambda)) in systems.iter().enumerate() {
        let rs = rules(name, lambda, false)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1_000_003).wrapping_add(si as u64));
        let mut memo = Reducer::with_budget(&rs, cfg.budget);
        let mut random = RandomReducer::new(&rs, cfg.budget);
        let (mut disagree, mut irr_mismatch, mut words) = (0, 0, 0);
        let mut first = None;
        let a = xy();
        for (k, bound) in [(1, cfg.confluence_bound_one), (2, cfg.confluence_bound_two)] {
            for w in words_up_to(k, rs.mode(), bound) {
                words += 1;
                let nf = memo.nf_word(&w)?;
                let fixed = nf == Poly::monomial(w.clone());
                if fixed != rs.is_irreducible(&w) {
                    irr_mismatch += 1;
                }
                let f = Poly::monomial(w.clone());
                for _ in 0..cfg.strategies {
                    let r = random.nf(&f, &mut rng)?;
                    if r != nf {
                        disagree += 1;
                        if first.is_none() {
                            first = Some(format!(
                                "{}: {} vs {}",
                                a.format_word(&w),
                                a.format_poly(&nf),
                                a.format_poly(&r)
                            ));
                        }
                        break;
                    }
                }
            }
        }
        total_words += words;
        ok &= disagree == 0 && irr_mismatch == 0;
        parts.push(json!({
            "system": rs.system().name,
            "words": words,
            "strategy_disagreements": disagree,
            "irr_mismatches": irr_mismatch,
            "first_disagreement": first,
        }));
    }
    Ok(check(
        6,
        "confluence",
        "normal forms do not depend on the reduction strategy and Irr is exactly the set of NF-fixed words",
        ok,
        format!("{total_words} words, {} strategies each", cfg.strategies),
        json!({ "strategies": cfg.strategies, "seed": cfg.seed, "systems": parts }),
    ))
}

fn cd_instance(cfg: &VerifyConfig) -> Result<CheckResult> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, lambda) in [("DRB", coeff(1)), ("ID0", coeff(0))] {
        let r = span_check(&rules(name, &lambda, false)?, 2, cfg.span_bound)?;
        ok &= r.passed;
        parts.push(serde_json::to_value(&r).unwrap());
    }
    let summary = parts
        .iter()
        .map(|p| format!("{}: rank {} = {} - {}", p["system"], p["ideal_rank"], p["words"], p["irreducible"]))
        .collect::<Vec<_>>()
        .join("; ")
        .replace('"', "");
    Ok(check(
        7,
        "composition_diamond_instance",
        "irreducible words and the ideal elements q|s span complementary subspaces of each weight slice",
        ok,
        summary,
        json!({ "systems": parts }),
    ))
}

/// `k⟨x,y⟩/(yx - xy)`.
pub fn commutative_plane(mode: Mode) -> Presentation {
    let a = xy();
    let rel = a.parse_poly("y*x - x*y", mode).unwrap();
    Presentation::new(a, mode, vec![rel]).unwrap()
}

fn over_algebra(cfg: &VerifyConfig) -> Result<CheckResult> {
    let gcfg = GsConfig { bound: cfg.gs_bound, budget: cfg.budget, ..GsConfig::default() };
    let mut ok = true;
    let mut parts = Vec::new();
    let mut failing = Vec::new();
    for unital in [false, true] {
        let mode = if unital { Mode::Unital } else { Mode::Nonunital };
        let pres = commutative_plane(mode);
        for (name, lambda) in [("DRB", coeff(1)), ("DRB0", coeff(0)), ("ID", coeff(1)), ("ID0", coeff(0))] {
            let sys = catalog(name, &lambda, unital)?;
            let r = mixed_gs_check(&pres, &sys, &gcfg)?;
            ok &= r.passed;
            if !r.passed {
                failing.push(sys.name.clone());
            }
            parts.push(json!({
                "system": sys.name,
                "algebra_passed": r.algebra.passed,
                "combined": gs_summary(&r.combined),
                "passed": r.passed,
            }));
        }
    }
    let summary = if failing.is_empty() {
        "all 8 combined systems pass".into()
    } else {
        format!("failing: {}", failing.join(", "))
    };
    Ok(check(
        8,
        "over_algebra",
        "over A = k<x,y>/(yx - xy) the instances of each system together with yx - xy form a GS basis",
        ok,
        summary,
        json!({ "relations": ["y*x - x*y"], "bound": cfg.gs_bound, "systems": parts }),
    ))
}

fn irr_inclusion(cfg: &VerifyConfig) -> Result<CheckResult> {
    let a = xy();
    let id = rules("ID", &coeff(1), false)?;
    let drb = rules("DRB", &coeff(1), false)?;
    let irr_id = irreducible_words(&id, 2, cfg.irr_bound);
    let outside: Vec<String> = irr_id.iter().filter(|w| !drb.is_irreducible(w)).map(|w| a.format_word(w)).collect();
    let witness = irreducible_words(&drb, 2, cfg.witness_bound).into_iter().find(|w| !id.is_irreducible(w));
    let ok = outside.is_empty() && witness.is_some();
    Ok(check(
        9,
        "irr_inclusion",
        "Irr(ID) is contained in Irr(DRB), strictly",
        ok,
        format!(
            "{} ID-irreducible words, {} not DRB-irreducible, witness {}",
            irr_id.len(),
            outside.len(),
            witness.as_ref().map_or("none".to_string(), |w| a.format_word(w))
        ),
        json!({
            "bound": cfg.irr_bound,
            "irr_id": irr_id.len(),
            "irr_drb": irreducible_words(&drb, 2, cfg.irr_bound).len(),
            "not_in_irr_drb": outside,
            "witness_bound": cfg.witness_bound,
            "witness": witness.map(|w| a.format_word(&w)),
        }),
    ))
}

/// Re-runs the randomized and iterative parts in-process; the acceptance
/// suite additionally compares two separate processes.
fn determinism(cfg: &VerifyConfig) -> Result<CheckResult> {
    let systems = [("DRB", coeff(1)), ("uDRB0", coeff(0))];
    let small = VerifyConfig { confluence_bound_one: 3, confluence_bound_two: 2, ..cfg.clone() };
    let once = || -> Result<String> {
        let c = confluence(&small, &systems)?;
        let a = Alphabet::new(&["x", "y", "z"])?;
        let ccfg = CompletionConfig { max_rounds: cfg.completion_rounds, budget: cfg.budget, ..Default::default() };
        let log = complete(rules("DRB-prime", &coeff(1), false)?, &a, &ccfg)?.log;
        Ok(serde_json::to_string(&(c, log)).unwrap())
    };
    let (first, second) = (once()?, once()?);
    let same = first == second;
    Ok(check(
        10,
        "determinism",
        "repeated runs with the same seed produce byte-identical reports",
        same,
        format!("{} bytes compared", first.len()),
        json!({ "bytes": first.len(), "identical": same }),
    ))
}

fn diagnostics(cfg: &VerifyConfig) -> Result<Vec<Diagnostic>> {
    let mut out = vec![
        unital_chains(cfg)?.1,
        cross_identities()?,
        argument_slot_inclusions(cfg)?,
        id_completion(cfg)?,
        span_at_weight_seven()?,
    ];
    for name in ["IID", "IID-ext"] {
        let r = gs_check(
            &rules(name, &coeff(1), false)?,
            &xy(),
            &GsConfig { bound: cfg.gs_bound, budget: cfg.budget, ..GsConfig::default() },
        )?;
        out.push(Diagnostic {
            name: format!("gs_{}", name.to_lowercase().replace('-', "_")),
            claim: format!("{name} is a GS basis"),
            holds: r.passed,
            summary: format!("{} failing compositions", r.failures_total),
            detail: gs_summary(&r),
        });
    }
    Ok(out)
}

/// `P(φ₄) = φ₇ - φ₈` and `P(φ₅) = φ₆ - φ₉` on sampled arguments.
fn cross_identities() -> Result<Diagnostic> {
    let args = words_up_to(2, Mode::Nonunital, 2);
    let mut failures = 0;
    let mut checked = 0;
    for lambda in [coeff(1), coeff(2), ratio(1, 2)] {
        let get = |n: &str| named_decl(n).unwrap().evaluate(&lambda).unwrap();
        let (p4, p5, p6, p7, p8, p9) = (get("phi4"), get("phi5"), get("phi6"), get("phi7"), get("phi8"), get("phi9"));
        for u in &args {
            for v in &args {
                let t = [u.clone(), v.clone()];
                checked += 2;
                if p4.instantiate(&t)?.bracket(Operator::P) != &p7.instantiate(&t)? - &p8.instantiate(&t)? {
                    failures += 1;
                }
                if p5.instantiate(&t)?.bracket(Operator::P) != &p6.instantiate(&t)? - &p9.instantiate(&t)? {
                    failures += 1;
                }
            }
        }
    }
    Ok(Diagnostic {
        name: "catalog_cross_identities".into(),
        claim: "P(phi4) = phi7 - phi8 and P(phi5) = phi6 - phi9".into(),
        holds: failures == 0,
        summary: format!("{checked} instances, {failures} failures"),
        detail: json!({ "instances": checked, "failures": failures }),
    })
}

/// Inclusions of an instance inside an argument slot of another reduce to 0.
fn argument_slot_inclusions(cfg: &VerifyConfig) -> Result<Diagnostic> {
    let rs = rules("DRB", &coeff(1), false)?;
    let args = words_up_to(2, Mode::Nonunital, cfg.gs_bound);
    let pool = instance_pool(&rs, &args)?;
    let mut reducer = Reducer::with_budget(&rs, cfg.budget);
    let (mut slot, mut nonzero) = (0, 0);
    for_each_composition(&pool, false, &rs, &mut |c| {
        if let (crate::ambiguity::Witness::Inclusion { position, .. }, Some((k, a))) = (&c.witness, &pool[c.left].shape) {
            if inside_argument(&rs.shapes()[*k].shape, a, position) {
                slot += 1;
                if !reducer.nf(&c.value)?.is_zero() {
                    nonzero += 1;
                }
            }
        }
        Ok(())
    })?;
    Ok(Diagnostic {
        name: "argument_slot_inclusions".into(),
        claim: "inclusion compositions inside an argument slot are trivial (justifies pruning)".into(),
        holds: nonzero == 0,
        summary: format!("DRB: {slot} slot inclusions, {nonzero} nontrivial"),
        detail: json!({ "system": "DRB", "slot_inclusions": slot, "nontrivial": nonzero }),
    })
}

/// Exact elimination over `{x}` up to weight 7, the first weight at which
/// the ID overlap `P(D(P(x)D(x)))` fits.
fn span_at_weight_seven() -> Result<Diagnostic> {
    let mut parts = Vec::new();
    let mut holds = true;
    let mut summary = Vec::new();
    for (name, lambda) in [("DRB0", coeff(0)), ("ID", coeff(1)), ("ID0", coeff(0))] {
        let r = span_check(&rules(name, &lambda, false)?, 1, 7)?;
        let surplus = r.ideal_rank as i64 - (r.words - r.irreducible) as i64;
        holds &= r.passed;
        summary.push(format!("{name}: {surplus} dependent irreducible words"));
        parts.push(json!({ "report": r, "dependent_irreducible": surplus }));
    }
    Ok(Diagnostic {
        name: "span_weight_seven".into(),
        claim: "irreducible words are independent modulo the ideal at weight 7 over {x}".into(),
        holds,
        summary: summary.join("; "),
        detail: json!({ "systems": parts }),
    })
}

/// One completion round from ID, showing the identities it is missing.
fn id_completion(cfg: &VerifyConfig) -> Result<Diagnostic> {
    let a = Alphabet::new(&["x", "y", "z"])?;
    let ccfg = CompletionConfig { bound: cfg.gs_bound, max_rounds: 1, budget: cfg.budget, ..Default::default() };
    let c = complete(rules("ID", &coeff(1), false)?, &a, &ccfg)?;
    let shapes: Vec<String> = c.log.iter().filter_map(|d| d.shape.clone()).collect();
    Ok(Diagnostic {
        name: "id_completion".into(),
        claim: "completion adds nothing to ID".into(),
        holds: c.log.is_empty(),
        summary: format!("one round adds {} rules: {}", c.log.len(), shapes.join(", ")),
        detail: json!({ "new_rules": c.log }),
    })
}
