use std::cmp::Ordering;

use proptest::prelude::*;

use opgs::order::OrderKind;
use opgs::poly::{coeff, ratio};
use opgs::rewrite::Reducer;
use opgs::{catalog, Alphabet, Mode, Poly, RuleSet, Word};

fn xy() -> Alphabet {
    Alphabet::new(&["x", "y"]).unwrap()
}

/// Source text of a nonunital word over {x, y}.
fn word_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("x".to_string()), Just("y".to_string())];
    leaf.prop_recursive(4, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| v.join("*")),
            inner.clone().prop_map(|s| format!("D({s})")),
            inner.prop_map(|s| format!("P({s})")),
        ]
    })
}

/// Unital words may also contain `1`, `D(1)` and `P(1)`.
fn unital_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("D(1)".to_string()),
        Just("P(1)".to_string())
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| v.join("*")),
            inner.clone().prop_map(|s| format!("D({s})")),
            inner.prop_map(|s| format!("P({s})")),
        ]
    })
}

fn word() -> impl Strategy<Value = Word> {
    word_text().prop_map(|s| xy().parse_word(&s, Mode::Nonunital).unwrap())
}

fn small_word() -> impl Strategy<Value = Word> {
    word().prop_filter("weight <= 4", |w| w.weight() <= 4)
}

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((any::<bool>(), 0i64..=3, 1i64..=3, word_text()), 1..5).prop_map(|terms| {
        let mut s = String::new();
        for (neg, n, d, w) in terms {
            s.push_str(if neg { " - " } else { " + " });
            s.push_str(&format!("{n}/{d}*{w}"));
        }
        s
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Tok {
    Open(char),
    Close,
    Gen,
}

fn tokens(text: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'D' | 'P' if chars.peek() == Some(&'(') => {
                chars.next();
                out.push(Tok::Open(c));
            }
            ')' => out.push(Tok::Close),
            'x' | 'y' => out.push(Tok::Gen),
            _ => {}
        }
    }
    out
}

/// Degrees counted directly on the printed form of a nonunital word:
/// `(deg_D, deg_P, deg_Z, deg_GD, deg_GP)`.  GD counts pairs of a D-bracket
/// and a generator to its right outside it; GP counts pairs of a P-bracket
/// and a generator outside it on either side.
fn degrees_from_text(text: &str) -> (u32, u32, u32, u64, u64) {
    let toks = tokens(text);
    // For each bracket: (operator, open index, close index).
    let mut spans = Vec::new();
    let mut stack = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::Open(c) => stack.push((*c, i)),
            Tok::Close => {
                let (c, o) = stack.pop().unwrap();
                spans.push((c, o, i));
            }
            Tok::Gen => {}
        }
    }
    let gens: Vec<usize> = toks.iter().enumerate().filter(|(_, t)| **t == Tok::Gen).map(|(i, _)| i).collect();
    let nd = spans.iter().filter(|s| s.0 == 'D').count() as u32;
    let np = spans.iter().filter(|s| s.0 == 'P').count() as u32;
    let mut gd = 0;
    let mut gp = 0;
    for &(c, o, e) in &spans {
        for &g in &gens {
            if c == 'D' && g > e {
                gd += 1;
            }
            if c == 'P' && (g < o || g > e) {
                gp += 1;
            }
        }
    }
    (nd, np, gens.len() as u32, gd, gp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_round_trip(s in word_text()) {
        let a = xy();
        let w = a.parse_word(&s, Mode::Nonunital).unwrap();
        let printed = a.format_word(&w);
        prop_assert_eq!(a.parse_word(&printed, Mode::Nonunital).unwrap(), w.clone());
        prop_assert_eq!(a.format_word(&a.parse_word(&printed, Mode::Nonunital).unwrap()), printed);
    }

    #[test]
    fn unital_word_round_trip(s in unital_text()) {
        let a = xy();
        let w = a.parse_word(&s, Mode::Unital).unwrap();
        prop_assert_eq!(a.parse_word(&a.format_word(&w), Mode::Unital).unwrap(), w);
        if s.contains('1') {
            prop_assert!(a.parse_word(&s, Mode::Nonunital).is_err());
        }
    }

    #[test]
    fn poly_round_trip(s in poly_text()) {
        let a = xy();
        let p = a.parse_poly(&s, Mode::Nonunital).unwrap();
        let printed = a.format_poly(&p);
        prop_assert_eq!(a.parse_poly(&printed, Mode::Nonunital).unwrap(), p);
    }

    #[test]
    fn degrees_match_text(s in word_text()) {
        let w = xy().parse_word(&s, Mode::Nonunital).unwrap();
        let sig = w.signature();
        prop_assert_eq!((sig.deg_d, sig.deg_p, sig.deg_z, sig.deg_gd, sig.deg_gp), degrees_from_text(&s));
        prop_assert_eq!(w.weight(), sig.deg_d + sig.deg_p + sig.deg_z);
    }

    #[test]
    fn context_substitution_composes(w in word(), u in small_word(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let pos = w.positions();
        let q = w.context_at(&pos[i.index(pos.len())]);
        let upos = u.positions();
        let r = u.context_at(&upos[j.index(upos.len())]);
        let z = Word::generator(0);
        prop_assert_eq!(q.compose(&r).substitute(&z), q.substitute(&r.substitute(&z)));
        prop_assert_eq!(q.substitute(&w.subword(&pos[i.index(pos.len())])), w.clone());
        prop_assert_eq!(q.weight() + w.subword(&pos[i.index(pos.len())]).weight(), w.weight());
    }

    #[test]
    fn order_is_total_and_transitive(u in word(), v in word(), w in word()) {
        let c = |a: &Word, b: &Word| OrderKind::Pd.compare(a, b).unwrap();
        prop_assert_eq!(c(&u, &v), c(&v, &u).reverse());
        prop_assert_eq!(c(&u, &v) == Ordering::Equal, u == v);
        if c(&u, &v) != Ordering::Greater && c(&v, &w) != Ordering::Greater {
            prop_assert_ne!(c(&u, &w), Ordering::Greater);
        }
    }

    #[test]
    fn order_is_compatible(u in word(), v in word(), w in word(), i in any::<prop::sample::Index>()) {
        prop_assume!(u != v);
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let pos = w.positions();
        let q = w.context_at(&pos[i.index(pos.len())]);
        prop_assert!(q.substitute(&lo) < q.substitute(&hi));
        prop_assert!(lo.concat(&w) < hi.concat(&w));
        prop_assert!(w.concat(&lo) < w.concat(&hi));
    }

    #[test]
    fn unital_order_agrees_with_ord(a in unital_text(), b in unital_text()) {
        let al = xy();
        let (u, v) = (al.parse_word(&a, Mode::Unital).unwrap(), al.parse_word(&b, Mode::Unital).unwrap());
        prop_assert_eq!(OrderKind::Upd.compare(&u, &v).unwrap(), u.cmp(&v));
        prop_assert!(Word::one() < u);
    }

    #[test]
    fn poly_arithmetic(a in poly_text(), b in poly_text(), c in poly_text()) {
        let al = xy();
        let (p, q, r) = (
            al.parse_poly(&a, Mode::Nonunital).unwrap(),
            al.parse_poly(&b, Mode::Nonunital).unwrap(),
            al.parse_poly(&c, Mode::Nonunital).unwrap(),
        );
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&(&q + &r)), &p.mul(&q) + &p.mul(&r));
        prop_assert_eq!(p.scaled(&ratio(2, 3)).scaled(&ratio(3, 2)), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_linear_and_idempotent(a in poly_text(), b in poly_text()) {
        let al = xy();
        let rules = RuleSet::new(catalog("DRB", &coeff(1), false).unwrap()).unwrap();
        let mut red = Reducer::new(&rules);
        let (p, q) = (al.parse_poly(&a, Mode::Nonunital).unwrap(), al.parse_poly(&b, Mode::Nonunital).unwrap());
        prop_assume!(p.max_weight() <= 6 && q.max_weight() <= 6);
        let (np, nq) = (red.nf(&p).unwrap(), red.nf(&q).unwrap());
        prop_assert_eq!(red.nf(&np).unwrap(), np.clone());
        prop_assert_eq!(red.nf(&(&p + &q)).unwrap(), &np + &nq);
        prop_assert!(np.words().all(|w| rules.is_irreducible(w)));
    }
}

/// Every identity in every catalog is multilinear: instantiated at distinct
/// generators, each monomial contains each generator exactly once.
#[test]
fn catalog_identities_are_multilinear() {
    for name in opgs::opi::catalog_names() {
        for lambda in [coeff(1), ratio(1, 2)] {
            let sys = catalog(name, &lambda, false).unwrap();
            for opi in &sys.opis {
                let args: Vec<Word> = (0..opi.arity).map(|i| Word::generator(i as u32)).collect();
                let p: Poly = opi.instantiate(&args).unwrap();
                for w in p.words() {
                    let mut counts = Vec::new();
                    w.generator_counts(&mut counts);
                    counts.resize(opi.arity, 0);
                    assert!(counts.iter().all(|&c| c == 1), "{name}: {} not multilinear in {w:?}", opi.name);
                }
            }
        }
    }
}
