use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opgs::algebra::{assoc_gs_check, mixed_gs_check, Presentation};
use opgs::ambiguity::{complete, format_context, gs_check, CompletionConfig, GsConfig, GsReport};
use opgs::basis::{irr_enumerate, span_check};
use opgs::order::OrderKind;
use opgs::rewrite::{normal_form_traced, Reducer, RuleId};
use opgs::verify::{verify_paper, VerifyConfig};
use opgs::{catalog, Alphabet, Coeff, Error, Mode, OpiSystem, RuleSet};

#[derive(Parser)]
#[command(name = "opgs", version, about = "Rewriting and Gröbner-Shirshov checks for operated polynomial identities")]
struct Cli {
    /// Weight λ of the identities, an integer or a fraction like 1/2.
    #[arg(long, global = true, default_value = "1")]
    lambda: String,
    /// Work with the unit 1 and the unital order.
    #[arg(long, global = true)]
    unital: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of rewriting steps per normal form.
    #[arg(long = "bound-steps", global = true, default_value_t = opgs::rewrite::DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a polynomial and print it in canonical form.
    Parse {
        expr: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Compare words under a monomial order.
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// Normal form of a polynomial modulo a system.
    Nf {
        expr: String,
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        alphabet: Option<String>,
        /// Print every rewriting step.
        #[arg(long)]
        trace: bool,
    },
    /// Check all compositions among instances with arguments up to a weight bound.
    GsCheck {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        /// Arguments are built from the first N generators of x, y, z, ...
        #[arg(long, default_value_t = 2)]
        generators: u32,
        /// Skip inclusions inside an argument slot.
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = 20)]
        max_failures: usize,
    },
    /// Bounded completion; prints the completed system and the derivations.
    Complete {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        generators: u32,
        #[arg(long, default_value_t = 8)]
        rounds: usize,
        #[arg(long, default_value_t = 40)]
        max_rules: usize,
    },
    /// Irreducible words up to a weight bound.
    Basis {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, default_value = "x")]
        alphabet: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        counts_only: bool,
        /// Also check by exact elimination that Irr complements the ideal.
        #[arg(long)]
        span: bool,
    },
    /// Checks on presented base algebras.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Run the acceptance suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Subcommand)]
enum OrderCmd {
    /// Prints LT, EQ or GT.
    Compare {
        u: String,
        v: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Pd)]
        order: OrderArg,
        #[arg(long)]
        alphabet: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Pd,
    Upd,
    Dlex,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// GS check of a presentation; with --system, of the combined system.
    Check {
        file: String,
        #[arg(long)]
        system: Option<String>,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

#[derive(Args)]
struct SystemArg {
    /// A catalog name (DRB, ID0, uDRB, DRB', ...) or a system file.
    #[arg(long)]
    system: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only these criteria, e.g. 1,4.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
    #[arg(long)]
    bound_order: Option<usize>,
    #[arg(long)]
    bound_shapes: Option<usize>,
    #[arg(long)]
    bound_gs: Option<usize>,
    #[arg(long)]
    bound_span: Option<usize>,
    #[arg(long)]
    bound_irr: Option<usize>,
    #[arg(long)]
    strategies: Option<usize>,
}

/// Exit statuses.
const OK: u8 = 0;
const USAGE: u8 = 1;
const FAILED: u8 = 2;
const BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::BudgetExceeded(_)) { BUDGET } else { USAGE })
        }
    }
}

fn mode(cli: &Cli) -> Mode {
    if cli.unital {
        Mode::Unital
    } else {
        Mode::Nonunital
    }
}

fn lambda(cli: &Cli) -> opgs::Result<Coeff> {
    Coeff::from_str(cli.lambda.trim()).map_err(|_| Error::Config(format!("invalid lambda `{}`", cli.lambda)))
}

fn load_system(cli: &Cli, name: &str) -> opgs::Result<OpiSystem> {
    let l = lambda(cli)?;
    if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name)?;
        OpiSystem::parse(&text, &l, cli.unital.then_some(Mode::Unital))
    } else {
        catalog(name, &l, cli.unital)
    }
}

fn alphabet_for(spec: Option<&str>, texts: &[&str]) -> opgs::Result<Alphabet> {
    match spec {
        Some(s) => Alphabet::parse(s),
        None => Alphabet::infer(texts),
    }
}

fn default_alphabet(k: u32) -> opgs::Result<Alphabet> {
    let names = ["x", "y", "z", "u", "v", "w"];
    if k == 0 || k as usize > names.len() {
        return Err(Error::Config(format!("--generators must be between 1 and {}", names.len())));
    }
    Alphabet::new(&names[..k.max(3) as usize])
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

fn run(cli: &Cli) -> opgs::Result<u8> {
    match &cli.cmd {
        Cmd::Parse { expr, alphabet } => cmd_parse(cli, expr, alphabet.as_deref()),
        Cmd::Order { cmd: OrderCmd::Compare { u, v, order, alphabet } } => {
            cmd_compare(cli, u, v, *order, alphabet.as_deref())
        }
        Cmd::Nf { expr, sys, alphabet, trace } => cmd_nf(cli, expr, &sys.system, alphabet.as_deref(), *trace),
        Cmd::GsCheck { sys, bound, generators, prune, max_failures } => {
            let rules = RuleSet::new(load_system(cli, &sys.system)?)?;
            let a = default_alphabet(*generators)?;
            let cfg = GsConfig {
                bound: *bound,
                generators: *generators,
                prune: *prune,
                max_failures: *max_failures,
                budget: cli.budget,
            };
            let r = gs_check(&rules, &a, &cfg)?;
            if cli.json {
                emit(&r);
            } else {
                print_gs(&r);
            }
            Ok(if r.passed { OK } else { FAILED })
        }
        Cmd::Complete { sys, bound, generators, rounds, max_rules } => {
            let rules = RuleSet::new(load_system(cli, &sys.system)?)?;
            let a = default_alphabet(*generators)?;
            let cfg = CompletionConfig {
                bound: *bound,
                generators: *generators,
                max_rounds: *rounds,
                max_new_rules: *max_rules,
                budget: cli.budget,
            };
            let c = complete(rules, &a, &cfg)?;
            let text = format_rules(&c.rules, &a);
            if cli.json {
                #[derive(Serialize)]
                struct Out<'a> {
                    converged: bool,
                    rounds: usize,
                    system: &'a str,
                    derivations: &'a [opgs::ambiguity::Derivation],
                }
                emit(&Out { converged: c.converged, rounds: c.rounds, system: &text, derivations: &c.log });
            } else {
                print!("{text}");
                for d in &c.log {
                    println!(
                        "# {} (round {}, {}): {} ∧ {} at {} [{}]",
                        d.name, d.round, d.kind, d.left, d.right, d.ambiguity, d.witness
                    );
                }
                println!("# converged: {} after {} rounds", c.converged, c.rounds);
            }
            Ok(OK)
        }
        Cmd::Basis { sys, alphabet, bound, counts_only, span } => {
            let rules = RuleSet::new(load_system(cli, &sys.system)?)?;
            let a = Alphabet::parse(alphabet)?;
            let r = irr_enumerate(&rules, &a, *bound, !counts_only);
            let s = if *span { Some(span_check(&rules, a.len() as u32, *bound)?) } else { None };
            if cli.json {
                #[derive(Serialize)]
                struct Out<'a> {
                    #[serde(flatten)]
                    irr: &'a opgs::basis::IrrReport,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    span: Option<&'a opgs::basis::SpanReport>,
                }
                emit(&Out { irr: &r, span: s.as_ref() });
            } else {
                for (n, c) in r.counts.iter().enumerate() {
                    if *counts_only {
                        println!("{n}\t{c}");
                    } else {
                        println!("weight {n}: {c}");
                        for w in &r.words[n] {
                            println!("  {w}");
                        }
                    }
                }
                if let Some(s) = &s {
                    println!(
                        "span: {} (ideal rank {}, {} words, {} irreducible)",
                        if s.passed { "ok" } else { "FAILED" },
                        s.ideal_rank,
                        s.words,
                        s.irreducible
                    );
                }
            }
            Ok(if s.is_none_or(|s| s.passed) { OK } else { FAILED })
        }
        Cmd::Algebra { cmd: AlgebraCmd::Check { file, system, bound } } => {
            let text = std::fs::read_to_string(file)?;
            let pres = Presentation::parse(&text, cli.unital.then_some(Mode::Unital))?;
            match system {
                None => {
                    let r = assoc_gs_check(&pres)?;
                    if cli.json {
                        emit(&r);
                    } else {
                        print_gs(&r);
                    }
                    Ok(if r.passed { OK } else { FAILED })
                }
                Some(name) => {
                    let sys = load_system(cli, name)?;
                    let cfg = GsConfig { bound: *bound, budget: cli.budget, ..GsConfig::default() };
                    let r = mixed_gs_check(&pres, &sys, &cfg)?;
                    if cli.json {
                        emit(&r);
                    } else {
                        println!("relations: {}", if r.algebra.passed { "GS" } else { "not GS" });
                        print_gs(&r.combined);
                    }
                    Ok(if r.passed { OK } else { FAILED })
                }
            }
        }
        Cmd::VerifyPaper(v) => {
            let mut cfg = VerifyConfig { seed: cli.seed, budget: cli.budget, ..VerifyConfig::default() };
            let set = |slot: &mut usize, val: Option<usize>| {
                if let Some(x) = val {
                    *slot = x;
                }
            };
            set(&mut cfg.order_bound, v.bound_order);
            set(&mut cfg.shape_bound, v.bound_shapes);
            set(&mut cfg.gs_bound, v.bound_gs);
            set(&mut cfg.span_bound, v.bound_span);
            set(&mut cfg.irr_bound, v.bound_irr);
            set(&mut cfg.strategies, v.strategies);
            let r = verify_paper(&cfg, &v.only)?;
            if cli.json {
                emit(&r);
            } else {
                for c in &r.checks {
                    println!("[{}] {:>2} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.summary);
                }
                for d in &r.diagnostics {
                    println!("[note] {}: {} ({})", d.name, if d.holds { "holds" } else { "fails" }, d.summary);
                }
            }
            Ok(if r.passed { OK } else { FAILED })
        }
    }
}

fn cmd_parse(cli: &Cli, expr: &str, alphabet: Option<&str>) -> opgs::Result<u8> {
    let a = alphabet_for(alphabet, &[expr])?;
    let p = a.parse_poly(expr, mode(cli))?;
    let text = a.format_poly(&p);
    let terms: Vec<_> = p
        .terms()
        .rev()
        .map(|(w, c)| {
            let s = w.signature();
            serde_json::json!({
                "word": a.format_word(w),
                "coeff": opgs::poly::format_coeff(c),
                "weight": w.weight(),
                "degrees": [s.deg_d, s.deg_p, s.deg_z],
                "gd": s.deg_gd,
                "gp": s.deg_gp,
            })
        })
        .collect();
    if cli.json {
        emit(&serde_json::json!({ "alphabet": a.names(), "normalized": text, "terms": terms }));
    } else {
        println!("{text}");
    }
    Ok(OK)
}

fn cmd_compare(cli: &Cli, u: &str, v: &str, order: OrderArg, alphabet: Option<&str>) -> opgs::Result<u8> {
    let a = alphabet_for(alphabet, &[u, v])?;
    let kind = match order {
        OrderArg::Pd => OrderKind::Pd,
        OrderArg::Upd => OrderKind::Upd,
        OrderArg::Dlex => OrderKind::Dlex,
    };
    let m = if matches!(kind, OrderKind::Upd) || cli.unital { Mode::Unital } else { Mode::Nonunital };
    let (wu, wv) = (a.parse_word(u, m)?, a.parse_word(v, m)?);
    let res = match kind.compare(&wu, &wv)? {
        std::cmp::Ordering::Less => "LT",
        std::cmp::Ordering::Equal => "EQ",
        std::cmp::Ordering::Greater => "GT",
    };
    if cli.json {
        emit(&serde_json::json!({ "order": kind, "u": a.format_word(&wu), "v": a.format_word(&wv), "result": res }));
    } else {
        println!("{res}");
    }
    Ok(OK)
}

fn cmd_nf(cli: &Cli, expr: &str, system: &str, alphabet: Option<&str>, trace: bool) -> opgs::Result<u8> {
    let rules = RuleSet::new(load_system(cli, system)?)?;
    let a = alphabet_for(alphabet, &[expr])?;
    let p = a.parse_poly(expr, rules.mode())?;
    let (nf, steps) = if trace {
        normal_form_traced(&p, &rules, cli.budget)?
    } else {
        (Reducer::with_budget(&rules, cli.budget).nf(&p)?, Vec::new())
    };
    let describe = |s: &opgs::rewrite::Step| {
        let args: Vec<String> = s.args.iter().map(|w| a.format_word(w)).collect();
        let rule = match s.rule {
            RuleId::Shape(_) => format!("{}({})", rules.rule_name(s.rule), args.join(", ")),
            RuleId::Ground(_) => rules.rule_name(s.rule).to_string(),
        };
        format!("{} * {} <- {rule}", opgs::poly::format_coeff(&s.coeff), format_context(&s.context, &a))
    };
    if cli.json {
        let st: Vec<String> = steps.iter().map(describe).collect();
        emit(&serde_json::json!({
            "input": a.format_poly(&p),
            "normal_form": a.format_poly(&nf),
            "steps": if trace { Some(st) } else { None },
        }));
    } else {
        for s in &steps {
            println!("# {}", describe(s));
        }
        println!("{}", a.format_poly(&nf));
    }
    Ok(OK)
}

fn print_gs(r: &GsReport) {
    let lambda = if r.lambda.is_empty() { String::new() } else { format!(", lambda = {}", r.lambda) };
    println!(
        "{} ({:?}{lambda}), arguments of weight <= {} over {}: {} instances, {} intersections, {} inclusions",
        r.system,
        r.mode,
        r.bound,
        r.generators.join(","),
        r.instances,
        r.compositions.intersections,
        r.compositions.inclusions
    );
    for f in &r.failures {
        println!("  {:?} {} ∧ {} at {} [{}]", f.kind, f.left, f.right, f.ambiguity, f.witness);
        println!("    residual: {}", f.residual);
    }
    if r.failures_total > r.failures.len() {
        println!("  ... {} more", r.failures_total - r.failures.len());
    }
    println!("{}", if r.passed { "PASS" } else { "FAIL" });
}

/// The rules in the system file format.
fn format_rules(rules: &RuleSet, a: &Alphabet) -> String {
    let sys = rules.system();
    let mut s = format!("name: {}\nunital: {}\n", sys.name, sys.mode.is_unital());
    for o in rules.shapes() {
        s.push_str(&format!("{} | {}\n", o.format_body(), o.shape.format()));
    }
    for g in rules.ground() {
        s.push_str(&format!("{} | {}\n", a.format_poly(&g.poly), a.format_word(&g.lm)));
    }
    s
}
