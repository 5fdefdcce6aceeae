use std::collections::BTreeMap;

use onp::{format, parse, Context, Element, ExpOrdinal, Mode, Ordinal, Style};
use proptest::prelude::*;

fn ordinal_below_omega_omega(p: u32) -> impl Strategy<Value = Ordinal> {
    prop::collection::vec((0u32..4, 0u32..12, 1..p), 0..6).prop_map(move |digits| {
        let mut map = BTreeMap::new();
        for (a, b, c) in digits {
            map.insert(ExpOrdinal::from_counts([(1, a.into()), (0, b.into())]), c);
        }
        Ordinal::from_p_digits(p, &map).unwrap()
    })
}

/// Ordinals whose base-p exponents reach `ω^3`, i.e. generators up to `χ_7`.
fn ordinal_below_omega_omega_cubed(p: u32) -> impl Strategy<Value = Ordinal> {
    let exponent = (0u32..2, 0u32..3, 0u32..3, 0u32..6);
    prop::collection::vec((exponent, 1..p), 0..5).prop_map(move |digits| {
        let mut map = BTreeMap::new();
        for ((c3, c2, c1, c0), d) in digits {
            map.insert(
                ExpOrdinal::from_counts([(3, c3.into()), (2, c2.into()), (1, c1.into()), (0, c0.into())]),
                d,
            );
        }
        Ordinal::from_p_digits(p, &map).unwrap()
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11])
}

#[test]
fn bijection_exhaustive_below_p_to_the_sixth() {
    for p in [2u32, 3, 5] {
        let ctx = Context::new(p).unwrap();
        let mut prev: Option<Element> = None;
        for n in 0..(p as u64).pow(6) {
            let e = ctx.natural(n);
            assert_eq!(ctx.element_to_ordinal(&e), Ordinal::from(n));
            assert_eq!(ctx.ordinal_to_element(&Ordinal::from(n)), e);
            if let Some(prev) = prev {
                assert!(prev < e, "order breaks at {n} in On_{p}");
            }
            prev = Some(e);
        }
    }
}

#[test]
fn generator_images() {
    let ctx = Context::new(2).unwrap();
    let cases = [("chi(2)", "2"), ("chi(4)", "4"), ("chi(3)", "w"), ("chi(9)", "w^3"), ("chi(5)", "w^w"), ("chi(7)", "w^(w^2)")];
    for (expr, want) in cases {
        let o = parse(expr, Mode::Field, &ctx).unwrap();
        assert_eq!(format(&o, Style::Cnf, 2), want, "{expr}");
    }
}

#[test]
fn expression_corpus_round_trips() {
    // 100 expressions mixing bracketed and field operators, every prime, both styles.
    let mut corpus = Vec::new();
    for p in [2u32, 3, 5, 7, 11] {
        for expr in [
            "0", "1", "w", "w+1", "[w^2]", "[w^w]", "[w*3+2]", "[w^(w^2)+w^3*2+5]", "chi(6)", "chi(12)",
            "(w+1)*(w+2)", "w^3", "[w^3]^2", "2*w+1", "chi(5)*chi(3)", "[w^w]^2", "(1+w)^4", "17", "[w^2+w]-w", "chi(8)",
        ] {
            corpus.push((p, expr));
        }
    }
    assert_eq!(corpus.len(), 100);
    for (p, expr) in corpus {
        let ctx = Context::new(p).unwrap();
        let value = parse(expr, Mode::Field, &ctx).unwrap();
        for style in [Style::Cnf, Style::PExpansion] {
            let text = format(&value, style, p);
            assert_eq!(parse(&text, Mode::Ordinal, &ctx).unwrap(), value, "{expr} in On_{p} as {text}");
            // Field-mode evaluation of a plain ordinal literal is the same ordinal.
            assert_eq!(parse(&format!("[{text}]"), Mode::Field, &ctx).unwrap(), value);
        }
    }
}

proptest! {
    #[test]
    fn bijection_below_omega_omega((p, o) in prime().prop_flat_map(|p| (Just(p), ordinal_below_omega_omega(p)))) {
        let ctx = Context::new(p).unwrap();
        let e = ctx.ordinal_to_element(&o);
        prop_assert_eq!(ctx.element_to_ordinal(&e), o);
    }

    #[test]
    fn bijection_with_larger_generators(o in ordinal_below_omega_omega_cubed(3)) {
        let ctx = Context::new(3).unwrap();
        let e = ctx.ordinal_to_element(&o);
        prop_assert_eq!(ctx.element_to_ordinal(&e), o);
    }

    #[test]
    fn order_compatibility(a in ordinal_below_omega_omega_cubed(5), b in ordinal_below_omega_omega_cubed(5)) {
        let ctx = Context::new(5).unwrap();
        let (x, y) = (ctx.ordinal_to_element(&a), ctx.ordinal_to_element(&b));
        prop_assert_eq!(x.cmp(&y), a.cmp(&b));
    }

    #[test]
    fn canonical_formatting(o in ordinal_below_omega_omega_cubed(7)) {
        let ctx = Context::new(7).unwrap();
        for style in [Style::Cnf, Style::PExpansion] {
            let text = format(&o, style, 7);
            prop_assert_eq!(parse(&text, Mode::Ordinal, &ctx).unwrap(), o.clone());
        }
    }

    #[test]
    fn ordinal_sub_inverts_add(a in ordinal_below_omega_omega(3), b in ordinal_below_omega_omega(3)) {
        let sum = a.add(&b);
        prop_assert_eq!(sum.sub(&a), Some(b.clone()));
        prop_assert!(sum >= a && sum >= b);
    }
}
