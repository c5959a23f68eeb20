//! Operated polynomial identities, the built-in catalogs and the system file
//! format.
//!
//! A system file has optional `key: value` header lines (`name`, `unital`)
//! followed by one identity per line, `body | leading shape`:
//!
//! ```text
//! name: DRB-prime
//! P($1)*P($2) - P($1*P($2)) - P(P($1)*$2) - L*P($1*$2) | P($1)*P($2)
//! D(P($1)) - $1 | D(P($1))
//! ```
//!
//! `L` is the weight.  An identity without metavariables is a ground rule.

use std::collections::BTreeMap;

use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_coeff, Coeff, Poly};
use crate::syntax::{format_terms, Parser};
use crate::template::Template;
use crate::word::{Letter, Mode, Operator, Word};

/// A term of an identity before the weight is fixed: `coeff · L^lambda_pow · tpl`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateTerm {
    pub coeff: Coeff,
    pub lambda_pow: i32,
    pub tpl: Template,
}

/// An identity as written, with the weight symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpiDecl {
    pub name: String,
    pub body: Vec<TemplateTerm>,
    pub shape: Template,
}

impl OpiDecl {
    pub fn parse(name: &str, line: &str) -> Result<OpiDecl> {
        let (body_src, shape_src) = line
            .split_once('|')
            .ok_or_else(|| Error::syntax(line.len(), "missing `| leading shape`"))?;
        let mut p = Parser::new(body_src, true, true)?;
        let terms = p.poly()?;
        p.expect_end()?;
        let mut body: Vec<TemplateTerm> = Vec::new();
        for t in terms {
            let tpl = Template::from_atoms(&t.factors)?;
            match body.iter_mut().find(|b| b.tpl == tpl && b.lambda_pow == t.lambda_pow) {
                Some(b) => b.coeff += t.coeff,
                None => body.push(TemplateTerm { coeff: t.coeff, lambda_pow: t.lambda_pow, tpl }),
            }
        }
        body.retain(|t| !t.coeff.is_zero());
        let shape = Template::parse(shape_src.trim()).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::syntax(body_src.len() + 1 + pos, msg),
            e => e,
        })?;
        Ok(OpiDecl { name: name.to_string(), body, shape })
    }

    pub fn needs_inverse_weight(&self) -> bool {
        self.body.iter().any(|t| t.lambda_pow < 0)
    }

    pub fn evaluate(&self, lambda: &Coeff) -> Result<Opi> {
        let mut body: Vec<(Coeff, Template)> = Vec::new();
        for t in &self.body {
            let c = if t.lambda_pow == 0 {
                t.coeff.clone()
            } else if lambda.is_zero() && t.lambda_pow < 0 {
                return Err(Error::ZeroWeight(self.name.clone()));
            } else {
                &t.coeff * Pow::pow(lambda, t.lambda_pow)
            };
            if c.is_zero() {
                continue;
            }
            match body.iter_mut().find(|(_, tp)| *tp == t.tpl) {
                Some((d, _)) => *d += c,
                None => body.push((c, t.tpl.clone())),
            }
        }
        body.retain(|(c, _)| !c.is_zero());
        Opi::new(&self.name, body, self.shape.clone())
    }
}

/// An identity with concrete coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opi {
    pub name: String,
    pub arity: usize,
    pub body: Vec<(Coeff, Template)>,
    pub shape: Template,
}

impl Opi {
    /// Checks that metavariables are `$1..$n`, that the shape contains all of
    /// them, is one of the terms and has no adjacent metavariables.
    pub fn new(name: &str, body: Vec<(Coeff, Template)>, shape: Template) -> Result<Opi> {
        let mut metas = Vec::new();
        for (_, t) in &body {
            t.collect_metas(&mut metas);
        }
        metas.sort();
        metas.dedup();
        let arity = metas.len();
        if metas.iter().enumerate().any(|(i, k)| *k as usize != i) {
            return Err(Error::Hypothesis(format!("{name}: metavariables must be $1..${arity}")));
        }
        let mut in_shape = shape.metas();
        in_shape.sort();
        if in_shape != metas {
            return Err(Error::Hypothesis(format!(
                "{name}: the leading shape must contain every metavariable"
            )));
        }
        if !body.iter().any(|(_, t)| *t == shape) {
            return Err(Error::Hypothesis(format!("{name}: the leading shape {} is not a term", shape.format())));
        }
        if shape.has_adjacent_metas() {
            return Err(Error::Hypothesis(format!(
                "{name}: leading shape {} has adjacent metavariables",
                shape.format()
            )));
        }
        if shape.is_one() {
            return Err(Error::Hypothesis(format!("{name}: constant leading shape")));
        }
        Ok(Opi { name: name.to_string(), arity, body, shape })
    }

    /// `φ(u_1, ..., u_n)` without any simplification.
    pub fn instantiate(&self, args: &[Word]) -> Result<Poly> {
        if args.len() != self.arity {
            return Err(Error::Arity { name: self.name.clone(), expected: self.arity, got: args.len() });
        }
        Ok(Poly::from_terms(self.body.iter().map(|(c, t)| (t.instantiate(args), c.clone()))))
    }

    pub fn format_body(&self) -> String {
        format_terms(self.body.iter().map(|(c, t)| (c.clone(), t.format())))
    }

    /// The identity with metavariables renumbered by first appearance in the
    /// shape; two identities agree up to renaming iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> (Template, Vec<(Coeff, Template)>) {
        let map = self.shape.canonical_renaming();
        let mut body: Vec<(Coeff, Template)> = self.body.iter().map(|(c, t)| (c.clone(), t.rename(&map))).collect();
        body.sort_by(|a, b| a.1.cmp(&b.1));
        (self.shape.rename(&map), body)
    }
}

/// Whether `w` contains `D(1)` strictly inside, i.e. as a factor other than
/// the whole word.
fn has_proper_unit_d(w: &Word) -> bool {
    fn inside(w: &Word) -> bool {
        w.letters().iter().any(|l| match l {
            Letter::Op(Operator::D, c) if c.is_one() => true,
            Letter::Op(_, c) => inside(c),
            Letter::Gen(_) => false,
        })
    }
    !matches!(w.letters(), [Letter::Op(Operator::D, c)] if c.is_one()) && inside(w)
}

/// Drops the monomials that contain `D(1)` strictly inside.  When `D(1)`
/// lies in the ideal these differ from the input by an ideal element.
pub fn drop_unit_d_multiples(p: &Poly) -> Poly {
    Poly::from_terms(p.terms().filter(|(w, _)| !has_proper_unit_d(w)).map(|(w, c)| (w.clone(), c.clone())))
}

/// A named set of identities plus ground rules.
#[derive(Clone, Debug)]
pub struct OpiSystem {
    pub name: String,
    pub mode: Mode,
    pub lambda: Coeff,
    pub opis: Vec<Opi>,
    /// Identities without metavariables, e.g. `D(1)`.
    pub ground: Vec<(String, Poly)>,
    unit_d: bool,
}

impl OpiSystem {
    pub fn new(name: &str, mode: Mode, lambda: Coeff, opis: Vec<Opi>, ground: Vec<(String, Poly)>) -> OpiSystem {
        let mut s = OpiSystem { name: name.to_string(), mode, lambda, opis, ground, unit_d: false };
        s.unit_d = s.compute_unit_d();
        s
    }

    /// Whether `D(1)` is in the ideal in an evident way: as a ground rule or
    /// as a multiple of an instance at all-unit arguments.
    pub fn unit_d_in_ideal(&self) -> bool {
        self.unit_d
    }

    fn compute_unit_d(&self) -> bool {
        if !self.mode.is_unital() {
            return false;
        }
        let d1 = Word::bracket_unchecked(Operator::D, Word::one());
        let is_d1 = |p: &Poly| p.len() == 1 && p.lead().map(|(w, _)| w) == Some(&d1);
        self.ground.iter().any(|(_, g)| is_d1(g))
            || self.opis.iter().any(|o| {
                let args = vec![Word::one(); o.arity];
                o.instantiate(&args).map(|p| is_d1(&p)).unwrap_or(false)
            })
    }

    pub fn format(&self) -> String {
        let mut s = format!("name: {}\nunital: {}\n", self.name, self.mode.is_unital());
        for o in &self.opis {
            s.push_str(&format!("{} | {}\n", o.format_body(), o.shape.format()));
        }
        let alpha = crate::syntax::Alphabet::new(&["x"]).unwrap();
        for (_, g) in &self.ground {
            let lead = g.lead().map(|(w, _)| alpha.format_word(w)).unwrap_or_default();
            s.push_str(&format!("{} | {}\n", alpha.format_poly(g), lead));
        }
        s
    }

    /// Parses a system file.  `mode` overrides an `unital:` header.
    pub fn parse(text: &str, lambda: &Coeff, mode: Option<Mode>) -> Result<OpiSystem> {
        let mut name = "custom".to_string();
        let mut header_mode = None;
        let mut decls = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if !line.contains('|') {
                if let Some((k, v)) = line.split_once(':') {
                    match k.trim() {
                        "name" => name = v.trim().to_string(),
                        "unital" => {
                            header_mode = Some(match v.trim() {
                                "true" => Mode::Unital,
                                "false" => Mode::Nonunital,
                                other => return Err(Error::Config(format!("unital: expected true or false, got `{other}`"))),
                            })
                        }
                        other => return Err(Error::Config(format!("line {}: unknown header `{other}`", lineno + 1))),
                    }
                    continue;
                }
            }
            let decl = OpiDecl::parse(&format!("r{}", decls.len() + 1), line).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("line {}: {msg}", lineno + 1) },
                e => e,
            })?;
            decls.push(decl);
        }
        let mode = mode.or(header_mode).unwrap_or(Mode::Nonunital);
        OpiSystem::from_decls(&name, &decls, lambda, mode)
    }

    pub fn from_decls(name: &str, decls: &[OpiDecl], lambda: &Coeff, mode: Mode) -> Result<OpiSystem> {
        let mut opis = Vec::new();
        let mut ground = Vec::new();
        for d in decls {
            if d.needs_inverse_weight() && lambda.is_zero() {
                return Err(Error::ZeroWeight(name.to_string()));
            }
            let o = d.evaluate(lambda)?;
            if o.arity == 0 {
                let p = o.instantiate(&[])?;
                if p.terms().any(|(w, _)| w.has_unit() || w.is_one()) && !mode.is_unital() {
                    return Err(Error::UnitInNonunital);
                }
                ground.push((o.name.clone(), p));
            } else {
                opis.push(o);
            }
        }
        Ok(OpiSystem::new(name, mode, lambda.clone(), opis, ground))
    }

    pub fn lambda_text(&self) -> String {
        format_coeff(&self.lambda)
    }
}

const PHI1: &str = "P($1)*P($2) - P($1*P($2)) - P(P($1)*$2) - L*P($1*$2) | P($1)*P($2)";
const PHI2: &str = "D($1)*D($2) + L^-1*D($1)*$2 + L^-1*$1*D($2) - L^-1*D($1*$2) | D($1)*D($2)";
const PHI3: &str = "D(P($1)) - $1 | D(P($1))";
const PHI4: &str = "P($1)*D($2) - D(P($1)*$2) + $1*$2 + L*$1*D($2) | P($1)*D($2)";
const PHI5: &str = "D($1)*P($2) - D($1*P($2)) + $1*$2 + L*D($1)*$2 | D($1)*P($2)";
const PHI6: &str = "P(D($1)*P($2)) - $1*P($2) + P($1*$2) + L*P(D($1)*$2) | P(D($1)*P($2))";
const PHI7: &str = "P(P($1)*D($2)) - P($1)*$2 + P($1*$2) + L*P($1*D($2)) | P(P($1)*D($2))";
const PHI8: &str = "P(D(P($1)*$2)) - P($1)*$2 | P(D(P($1)*$2))";
const PHI9: &str = "P(D($1*P($2))) - $1*P($2) | P(D($1*P($2)))";
const PHI10: &str = "P(D($1)) | P(D($1))";
const PHI2_0: &str = "D($1)*$2 + $1*D($2) - D($1*$2) | D($1)*$2";
const PHI1_0: &str = "P($1)*P($2) - P($1*P($2)) - P(P($1)*$2) | P($1)*P($2)";
const PHI4_0: &str = "P($1)*D($2) - D(P($1)*$2) + $1*$2 | P($1)*D($2)";
const PHI6_0: &str = "P(D($1)*P($2)) - $1*P($2) + P($1*$2) | P(D($1)*P($2))";
const PHI7_0: &str = "P(P($1)*D($2)) - P($1)*$2 + P($1*$2) | P(P($1)*D($2))";
const UNIT_D: &str = "D(1) | D(1)";

/// (name, identities, unital)
type CatalogEntry = (&'static str, &'static [(&'static str, &'static str)], bool);

const CATALOG: &[CatalogEntry] = &[
    ("DRB", &[("phi1", PHI1), ("phi2", PHI2), ("phi3", PHI3), ("phi4", PHI4), ("phi5", PHI5)], false),
    ("DRB0", &[("phi1_0", PHI1_0), ("phi2_0", PHI2_0), ("phi3", PHI3), ("phi4_0", PHI4_0)], false),
    (
        "uDRB",
        &[("phi1", PHI1), ("phi2", PHI2), ("phi3", PHI3), ("phi4", PHI4), ("phi5", PHI5), ("unit", UNIT_D)],
        true,
    ),
    ("uDRB0", &[("phi1_0", PHI1_0), ("phi2_0", PHI2_0), ("phi3", PHI3), ("phi4_0", PHI4_0)], true),
    (
        "ID",
        &[
            ("phi1", PHI1),
            ("phi2", PHI2),
            ("phi3", PHI3),
            ("phi4", PHI4),
            ("phi5", PHI5),
            ("phi8", PHI8),
            ("phi9", PHI9),
        ],
        false,
    ),
    (
        "ID0",
        &[
            ("phi1_0", PHI1_0),
            ("phi2_0", PHI2_0),
            ("phi3", PHI3),
            ("phi4_0", PHI4_0),
            ("phi8", PHI8),
            ("phi9", PHI9),
        ],
        false,
    ),
    (
        "uID",
        &[
            ("phi1", PHI1),
            ("phi2", PHI2),
            ("phi3", PHI3),
            ("phi4", PHI4),
            ("phi5", PHI5),
            ("phi8", PHI8),
            ("phi9", PHI9),
            ("unit", UNIT_D),
        ],
        true,
    ),
    (
        "uID0",
        &[
            ("phi1_0", PHI1_0),
            ("phi2_0", PHI2_0),
            ("phi3", PHI3),
            ("phi4_0", PHI4_0),
            ("phi8", PHI8),
            ("phi9", PHI9),
        ],
        true,
    ),
    ("DRB-prime", &[("phi1", PHI1), ("phi2", PHI2), ("phi3", PHI3)], false),
    ("DRB0-prime", &[("phi1_0", PHI1_0), ("phi2_0", PHI2_0), ("phi3", PHI3)], false),
    ("ID-prime", &[("phi2", PHI2), ("phi3", PHI3), ("phi6", PHI6), ("phi7", PHI7)], false),
    ("ID0-prime", &[("phi2_0", PHI2_0), ("phi3", PHI3), ("phi6_0", PHI6_0), ("phi7_0", PHI7_0)], false),
    ("IID", &[("phi1", PHI1), ("phi2", PHI2), ("phi3", PHI3), ("phi10", PHI10)], false),
    (
        "IID-ext",
        &[("phi1", PHI1), ("phi2", PHI2), ("phi3", PHI3), ("phi10", PHI10), ("phi4", PHI4), ("phi5", PHI5)],
        false,
    ),
    ("RB", &[("phi1", PHI1)], false),
    ("diff", &[("phi2", PHI2)], false),
    ("diff0", &[("phi2_0", PHI2_0)], false),
];

/// Names accepted by [`catalog`], in a stable order.
pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.0).collect()
}

/// Individual identities by name (`phi1`, `phi2_0`, ...) with the weight symbolic.
pub fn named_decl(name: &str) -> Option<OpiDecl> {
    for (_, ids, _) in CATALOG {
        for (n, src) in ids.iter() {
            if *n == name {
                return Some(OpiDecl::parse(n, src).expect("catalog identities parse"));
            }
        }
    }
    None
}

fn canonical_catalog_name(name: &str, unital: bool) -> Option<String> {
    let base = name.replace('\'', "-prime");
    let base = if base.ends_with("-prime") || CATALOG.iter().any(|c| c.0 == base) {
        base
    } else {
        return None;
    };
    if unital && !base.starts_with('u') {
        let u = format!("u{base}");
        if CATALOG.iter().any(|c| c.0 == u) {
            return Some(u);
        }
    }
    CATALOG.iter().any(|c| c.0 == base).then_some(base)
}

/// A built-in system.  `unital = true` selects the unital variant of
/// `DRB`, `DRB0`, `ID` and `ID0`; names starting with `u` are always unital.
pub fn catalog(name: &str, lambda: &Coeff, unital: bool) -> Result<OpiSystem> {
    let cname = canonical_catalog_name(name, unital).ok_or_else(|| Error::UnknownSystem(name.to_string()))?;
    let (n, ids, cat_unital) = CATALOG.iter().find(|c| c.0 == cname).unwrap();
    let mode = if *cat_unital || unital { Mode::Unital } else { Mode::Nonunital };
    let decls: Vec<OpiDecl> =
        ids.iter().map(|(n, src)| OpiDecl::parse(n, src).expect("catalog identities parse")).collect();
    OpiSystem::from_decls(n, &decls, lambda, mode)
}

/// How an instance relates to its declared leading shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeOutcome {
    Matches,
    /// The (simplified) instance is zero.
    Vanishes,
    /// The instance is a scalar multiple of another instance or ground rule.
    Degenerate { by: String },
    Mismatch { leading: Word, expected: Word },
}

impl OpiSystem {
    /// The instance used for rewriting: in unital systems whose ideal
    /// contains `D(1)`, monomials with `D(1)` strictly inside are dropped.
    pub fn instance(&self, k: usize, args: &[Word]) -> Result<Poly> {
        let p = self.opis[k].instantiate(args)?;
        Ok(if self.unit_d { drop_unit_d_multiples(&p) } else { p })
    }

    /// Compares the leading monomial of `φ_k(args)` with the shape instance.
    pub fn verify_leading_shape(&self, k: usize, args: &[Word]) -> Result<ShapeOutcome> {
        let opi = &self.opis[k];
        let p = self.instance(k, args)?;
        let expected = opi.shape.instantiate(args);
        let Some((lead, _)) = p.lead() else { return Ok(ShapeOutcome::Vanishes) };
        if *lead == expected {
            return Ok(ShapeOutcome::Matches);
        }
        // Modulo D(1) the instance may also lose a trailing multiple of D(1).
        let mut candidates = vec![(p.monic(), "")];
        if self.unit_d {
            let d1 = Word::bracket_unchecked(Operator::D, Word::one());
            let q = Poly::from_terms(p.terms().filter(|(w, _)| **w != d1).map(|(w, c)| (w.clone(), c.clone())));
            if q != p && !q.is_zero() {
                candidates.push((q.monic(), " mod D(1)"));
            }
        }
        for (monic, suffix) in &candidates {
            for (name, g) in &self.ground {
                if g.monic() == *monic {
                    return Ok(ShapeOutcome::Degenerate { by: format!("{name}{suffix}") });
                }
            }
            let lead = monic.lead().unwrap().0;
            for (j, o) in self.opis.iter().enumerate() {
                for b in o.shape.match_seq(lead.letters(), o.arity, self.mode.is_unital()) {
                    let Some(args2) = b.into_iter().collect::<Option<Vec<Word>>>() else { continue };
                    if self.instance(j, &args2)?.monic() == *monic {
                        return Ok(ShapeOutcome::Degenerate { by: format!("{}{suffix}", o.name) });
                    }
                }
            }
        }
        Ok(ShapeOutcome::Mismatch { leading: lead.clone(), expected })
    }
}

/// Canonical forms of all identities in a system, for comparison up to
/// renaming of metavariables.
pub fn canonical_map(sys: &OpiSystem) -> BTreeMap<String, (Template, Vec<(Coeff, Template)>)> {
    sys.opis.iter().map(|o| (o.name.clone(), o.canonical())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff;
    use crate::syntax::Alphabet;

    #[test]
    fn all_catalogs_load() {
        for n in catalog_names() {
            catalog(n, &coeff(1), false).unwrap();
        }
    }

    #[test]
    fn zero_weight_rejected_where_inverse_needed() {
        assert!(matches!(catalog("DRB", &coeff(0), false), Err(Error::ZeroWeight(_))));
        assert!(catalog("RB", &coeff(0), false).is_ok());
        assert!(catalog("DRB0", &coeff(0), false).is_ok());
    }

    #[test]
    fn names_and_modes() {
        assert_eq!(catalog("DRB", &coeff(1), true).unwrap().name, "uDRB");
        assert_eq!(catalog("DRB'", &coeff(1), false).unwrap().name, "DRB-prime");
        assert_eq!(catalog("uID0", &coeff(1), false).unwrap().mode, Mode::Unital);
        assert!(catalog("nope", &coeff(1), false).is_err());
    }

    #[test]
    fn weight_powers_evaluate() {
        let s = catalog("DRB", &coeff(2), false).unwrap();
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let args = [a.parse_word("x", Mode::Nonunital).unwrap(), a.parse_word("y", Mode::Nonunital).unwrap()];
        let p = s.opis[1].instantiate(&args).unwrap();
        assert_eq!(a.format_poly(&p), "D(x)*D(y) + 1/2*D(x)*y + 1/2*x*D(y) - 1/2*D(x*y)");
    }

    #[test]
    fn unital_degenerations() {
        let s = catalog("uDRB", &coeff(1), false).unwrap();
        let a = Alphabet::new(&["x"]).unwrap();
        let x = a.parse_word("x", Mode::Unital).unwrap();
        let one = Word::one();
        assert_eq!(s.verify_leading_shape(1, &[x.clone(), one.clone()]).unwrap(), ShapeOutcome::Vanishes);
        assert_eq!(
            s.verify_leading_shape(3, &[x.clone(), one.clone()]).unwrap(),
            ShapeOutcome::Degenerate { by: "phi3".into() }
        );
        assert_eq!(
            s.verify_leading_shape(1, &[one.clone(), one]).unwrap(),
            ShapeOutcome::Degenerate { by: "unit".into() }
        );
    }

    #[test]
    fn file_format_roundtrip() {
        let s = catalog("DRB-prime", &coeff(1), false).unwrap();
        let text = s.format();
        let t = OpiSystem::parse(&text, &coeff(1), None).unwrap();
        assert_eq!(t.name, "DRB-prime");
        assert_eq!(canonical_map(&s).into_values().collect::<Vec<_>>(), canonical_map(&t).into_values().collect::<Vec<_>>());
    }

    #[test]
    fn malformed_shapes_rejected() {
        let e = OpiSystem::parse("P($1*$2) - P($2*$1) | P($1*$2)", &coeff(1), None);
        assert!(matches!(e, Err(Error::Hypothesis(_))));
        let e = OpiSystem::parse("P($1) - $1 | D($1)", &coeff(1), None);
        assert!(matches!(e, Err(Error::Hypothesis(_))));
    }
}
