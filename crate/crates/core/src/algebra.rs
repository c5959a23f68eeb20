//! Presented associative base algebras `A = k⟨Z⟩/I_A` and free operated
//! algebras over them.

use serde::Serialize;

use crate::ambiguity::{gs_check, GsConfig, GsReport};
use crate::error::{Error, Result};
use crate::opi::OpiSystem;
use crate::poly::{coeff, Poly};
use crate::rewrite::RuleSet;
use crate::syntax::Alphabet;
use crate::word::{Letter, Mode};

/// Generators in increasing order and bracket-free relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub mode: Mode,
    pub relations: Vec<Poly>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, mode: Mode, relations: Vec<Poly>) -> Result<Presentation> {
        for (i, r) in relations.iter().enumerate() {
            for w in r.words() {
                if w.letters().iter().any(|l| matches!(l, Letter::Op(..))) {
                    return Err(Error::Config(format!(
                        "relation {} contains an operator bracket: {}",
                        i + 1,
                        alphabet.format_poly(r)
                    )));
                }
            }
        }
        Ok(Presentation { alphabet, mode, relations })
    }

    /// The free algebra on `alphabet`.
    pub fn free(alphabet: Alphabet, mode: Mode) -> Presentation {
        Presentation { alphabet, mode, relations: Vec::new() }
    }

    /// Parses a presentation file:
    ///
    /// ```text
    /// generators: x < y; unital: false;
    /// y*x - x*y
    /// ```
    ///
    /// `mode` overrides the `unital:` header.
    pub fn parse(text: &str, mode: Option<Mode>) -> Result<Presentation> {
        let mut alphabet = None;
        let mut header_mode = None;
        let mut rels = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let is_header = line.starts_with("generators:") || line.starts_with("unital:");
            if !is_header {
                rels.push((lineno + 1, line.to_string()));
                continue;
            }
            for item in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Config(format!("line {}: expected `key: value`", lineno + 1)))?;
                match k.trim() {
                    "generators" => alphabet = Some(Alphabet::parse(v)?),
                    "unital" => {
                        header_mode = Some(match v.trim() {
                            "true" => Mode::Unital,
                            "false" => Mode::Nonunital,
                            other => return Err(Error::Config(format!("unital: expected true or false, got `{other}`"))),
                        })
                    }
                    other => return Err(Error::Config(format!("line {}: unknown header `{other}`", lineno + 1))),
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::Config("missing `generators:` header".into()))?;
        let mode = mode.or(header_mode).unwrap_or(Mode::Nonunital);
        let mut relations = Vec::new();
        for (lineno, src) in rels {
            let p = alphabet.parse_poly(&src, mode).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("line {lineno}: {msg}") },
                e => e,
            })?;
            relations.push(p);
        }
        Presentation::new(alphabet, mode, relations)
    }

    fn ground(&self) -> Vec<(String, Poly)> {
        self.relations.iter().enumerate().map(|(i, r)| (format!("rel{}", i + 1), r.clone())).collect()
    }
}

/// GS check of the relations alone.  On bracket-free words the operated
/// order restricts to deg-lex, so this is the associative check.
pub fn assoc_gs_check(pres: &Presentation) -> Result<GsReport> {
    let sys = OpiSystem::new("A", pres.mode, coeff(0), Vec::new(), pres.ground());
    let rules = RuleSet::new(sys)?;
    let cfg = GsConfig { bound: 0, generators: pres.alphabet.len() as u32, ..GsConfig::default() };
    let mut rep = gs_check(&rules, &pres.alphabet, &cfg)?;
    rep.lambda = String::new();
    Ok(rep)
}

/// The identities of `sys` together with the relations of `pres` as ground
/// rules.
pub fn combined_system(pres: &Presentation, sys: &OpiSystem) -> Result<RuleSet> {
    if pres.mode != sys.mode {
        return Err(Error::Config(format!(
            "presentation is {:?} but system `{}` is {:?}",
            pres.mode, sys.name, sys.mode
        )));
    }
    for o in &sys.opis {
        if o.shape.has_adjacent_metas() {
            return Err(Error::Hypothesis(format!("leading shape of {} has adjacent metavariables", o.name)));
        }
    }
    let mut ground = sys.ground.clone();
    ground.extend(pres.ground());
    let name = if pres.relations.is_empty() { sys.name.clone() } else { format!("{}/A", sys.name) };
    RuleSet::new(OpiSystem::new(&name, sys.mode, sys.lambda.clone(), sys.opis.clone(), ground))
}

#[derive(Clone, Debug, Serialize)]
pub struct MixedReport {
    pub algebra: GsReport,
    pub combined: GsReport,
    pub passed: bool,
}

/// Checks the relations on their own, then the combined system at the bound
/// of `cfg` with arguments over all generators of the presentation.
pub fn mixed_gs_check(pres: &Presentation, sys: &OpiSystem, cfg: &GsConfig) -> Result<MixedReport> {
    let algebra = assoc_gs_check(pres)?;
    let rules = combined_system(pres, sys)?;
    let cfg = GsConfig { generators: pres.alphabet.len() as u32, ..cfg.clone() };
    let combined = gs_check(&rules, &pres.alphabet, &cfg)?;
    let passed = algebra.passed && combined.passed;
    Ok(MixedReport { algebra, combined, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opi::catalog;

    fn commutative() -> Presentation {
        Presentation::parse("generators: x < y; unital: false;\ny*x - x*y\n", None).unwrap()
    }

    #[test]
    fn parse_presentation() {
        let p = commutative();
        assert_eq!(p.alphabet.names(), ["x", "y"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.alphabet.format_poly(&p.relations[0]), "y*x - x*y");
        assert!(Presentation::parse("generators: x\nP(x) - x\n", None).is_err());
        assert!(Presentation::parse("x*x\n", None).is_err());
    }

    #[test]
    fn commutation_is_gs() {
        assert!(assoc_gs_check(&commutative()).unwrap().passed);
        let free = Presentation::free(Alphabet::new(&["x"]).unwrap(), Mode::Nonunital);
        assert!(assoc_gs_check(&free).unwrap().passed);
    }

    #[test]
    fn overlap_counts() {
        // Overlaps yyx and yyy both resolve: {yx - xy, yy - x} is GS.
        let p = Presentation::parse("generators: x<y\ny*x - x*y\ny*y - x\n", None).unwrap();
        let r = assoc_gs_check(&p).unwrap();
        assert_eq!((r.compositions.intersections, r.compositions.inclusions), (2, 0));
        assert!(r.passed);
        // xxx → yx or xy.
        let p = Presentation::parse("generators: x<y\nx*x - y\n", None).unwrap();
        let r = assoc_gs_check(&p).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures[0].residual, "y*x - x*y");
    }

    #[test]
    fn combined_rules() {
        let sys = catalog("DRB0", &coeff(0), false).unwrap();
        let rs = combined_system(&commutative(), &sys).unwrap();
        assert_eq!(rs.shapes().len(), sys.opis.len());
        assert_eq!(rs.ground().len(), 1);
        let unital = catalog("DRB", &coeff(1), true).unwrap();
        assert!(combined_system(&commutative(), &unital).is_err());
    }
}
