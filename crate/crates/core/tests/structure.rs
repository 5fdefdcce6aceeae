use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use onp::nt::{self, factor_p_power_minus_one, FactorLimits};
use onp::oracle::mex::field_mex_pairs;
use onp::oracle::tower::build_tower;
use onp::{sample, table, u_part, Context, Element, GeneratorId, Ordinal, TablesFile};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn chi_h_decomposition() {
    for p in [2u32, 3, 5] {
        let ctx = Context::new(p).unwrap();
        // 7-smooth h keep every degree computation small.
        for h in (2..=64u64).filter(|&h| nt::factor_u64(h).iter().all(|&(q, _)| q <= 7)) {
            let rec = ctx.chi_h(h).unwrap();
            let mut sum = Element::zero();
            for &r in &rec.q {
                assert_eq!(h % r, 0, "p={p} h={h} r={r}");
                assert_eq!(r.gcd(&(h / r)), 1);
                let (u, n) = nt::factor_u64(r).into_iter().map(|(u, n)| (u as u32, n)).next().unwrap();
                sum = sum.add(&Element::generator(GeneratorId::new(u, n).unwrap()), p);
            }
            assert_eq!(sum, rec.element, "p={p} h={h}");
            let (big, power) = *nt::factor_u64(h).last().unwrap();
            assert!(rec.q.contains(&big.pow(power)), "p={p} h={h} Q={:?}", rec.q);
            let primes: Vec<u64> = rec.q.iter().map(|&r| nt::factor_u64(r)[0].0).collect();
            assert!(primes.windows(2).all(|w| w[0] > w[1]), "Q ordered by decreasing prime");
        }
    }
}

#[test]
fn chi_h_degree_and_minimality() {
    for p in [2u32, 3] {
        let ctx = Context::new(p).unwrap();
        for h in [2u64, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18, 20, 24, 30] {
            let chi = ctx.chi_h(h).unwrap().element;
            assert_eq!(ctx.degree(&chi).unwrap() % h, 0, "p={p} h={h}");
            // Below chi_h, nothing of the form [limit + t] has a degree divisible by h.
            let o = chi.to_ordinal(p);
            let limit = o.limit_part();
            let finite = o.finite_part();
            let mut t = BigUint::ZERO;
            while t < finite {
                let below = ctx.ordinal_to_element(&limit.add(&Ordinal::natural(t.clone())));
                assert_ne!(ctx.degree(&below).unwrap() % h, 0, "p={p} h={h} t={t}");
                t += 1u32;
            }
        }
    }
}

#[test]
fn chi_of_two_powers_by_scanning_naturals() {
    for p in [2u32, 3, 5] {
        let ctx = Context::new(p).unwrap();
        for h in [2u64, 4, 8] {
            let first = (0u64..).find(|&n| ctx.degree(&ctx.natural(n)).unwrap().is_multiple_of(h)).unwrap();
            assert_eq!(ctx.chi_h(h).unwrap().element, ctx.natural(first), "p={p} h={h}");
        }
    }
}

#[test]
fn alpha_records_are_minimal() {
    for p in [2u32, 3, 5, 7] {
        let ctx = Context::new(p).unwrap();
        for u in nt::primes_up_to(23).into_iter().filter(|&u| u != p) {
            let rec = ctx.alpha_u(u).unwrap();
            assert_eq!(rec.f, nt::multiplicative_order(p as u64, u as u64).unwrap());
            assert_eq!(ctx.degree(&rec.alpha).unwrap() % rec.f, 0, "p={p} u={u}");
            assert!(!ctx.is_uth_power(&rec.alpha, u).unwrap());
            let start = ctx.chi_h(rec.f).unwrap().element.to_ordinal(p);
            for t in 0..rec.excess {
                let smaller = start.limit_part().add(&Ordinal::natural(start.finite_part() + t));
                assert!(ctx.is_uth_power(&ctx.ordinal_to_element(&smaller), u).unwrap(), "p={p} u={u} t={t}");
            }
            // Sum form: the Q generators plus the excess.
            let want = ctx.add(&ctx.chi_h(rec.f).unwrap().element, &Element::scalar(rec.excess, p));
            if rec.excess < p as u64 {
                assert_eq!(rec.alpha, want, "p={p} u={u}");
            }
            // alpha_u is the u-th power of chi_u.
            let chi_u = Element::generator(GeneratorId::new(u, 1).unwrap());
            assert_eq!(ctx.pow_u64(&chi_u, u as u64).unwrap(), rec.alpha);
        }
    }
}

#[test]
fn lifting_the_exponent() {
    // v_u(p^(fm) - 1) = v_u(p^f - 1) + v_u(m) for odd u, and the 2-adic
    // analogue for even m.
    let v = |u: u64, n: BigUint| u_part(u, &n);
    for p in [2u64, 3, 5, 7, 11] {
        for u in nt::primes_up_to(43).into_iter().map(u64::from).filter(|&u| u != p) {
            let f = nt::multiplicative_order(p % u, u).unwrap();
            let pf = BigUint::from(p).pow(f as u32);
            let base = v(u, pf.clone() - 1u32);
            assert!(base >= 1);
            for m in 1..=12u32 {
                let got = v(u, pf.pow(m) - 1u32);
                let want = if u == 2 && m % 2 == 0 {
                    base + v(2, pf.clone() + 1u32) + v(2, m.into()) - 1
                } else {
                    base + v(u, m.into())
                };
                assert_eq!(got, want, "p={p} u={u} m={m}");
            }
        }
    }
}

#[test]
fn factoring_p_powers_minus_one() {
    for (p, d) in [(2u64, 36u64), (3, 42), (5, 20), (7, 6), (11, 30)] {
        let factors = factor_p_power_minus_one(p, d, FactorLimits::default()).unwrap();
        let product = factors.iter().fold(BigUint::from(1u32), |acc, (q, e)| acc * q.pow(*e));
        assert_eq!(product, BigUint::from(p).pow(d as u32) - 1u32);
        assert!(factors.iter().all(|(q, _)| nt::is_probable_prime(q)));
    }
}

/// Every `u`-th power test agrees with a root search in the tower field.
#[test]
fn uth_powers_against_tower_roots() {
    for (p, size, u) in [(3u32, 81usize, 5u32), (3, 3, 2), (2, 16, 3), (2, 16, 5), (2, 256, 5), (2, 256, 17), (5, 25, 3)] {
        let field = build_tower(p, size).unwrap();
        let powers: BTreeSet<u32> = (0..size as u32)
            .map(|x| (1..u).fold(x, |acc, _| field.mul(acc, x)))
            .collect();
        let ctx = Context::new(p).unwrap();
        for beta in 0..size as u32 {
            let engine = ctx.is_uth_power(&ctx.natural(beta as u64), u).unwrap();
            assert_eq!(engine, powers.contains(&beta), "p={p} u={u} beta={beta}");
        }
    }
}

#[test]
fn field_pairs_have_the_mex_property() {
    for (p, phi) in [(2u32, 2u64), (2, 4), (3, 3), (5, 5)] {
        let ctx = Context::new(p).unwrap();
        for r in field_mex_pairs(phi, &ctx).unwrap() {
            assert!(r.mex_property, "p={p}: {{{}, {}}} has product {} but mex {}", r.a, r.b, r.product, r.mex);
        }
    }
}

#[test]
fn tables_round_trip_through_json() {
    let ctx = Context::new(3).unwrap();
    let tables = table::generate(&ctx, 23).unwrap();
    let back = TablesFile::from_json(&tables.to_json()).unwrap();
    assert_eq!(back, tables);
    for row in &tables.rows {
        assert_eq!(row.to_record(&ctx).unwrap(), ctx.alpha_u(row.u).unwrap());
    }
    let fresh = Context::new(3).unwrap();
    back.seed(&fresh).unwrap();
    assert_eq!(fresh.cached_alphas().len(), tables.rows.len());
    assert!(TablesFile::from_json("{\"p\": 3}").is_err());
}

#[test]
fn sums_of_coprime_degrees() {
    for p in [2u32, 3, 5] {
        let ctx = Context::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        let gens = sample::mixed_generators();
        for _ in 0..200 {
            let b = sample::random_element(&mut rng, p, &gens, 3);
            let c = sample::random_element(&mut rng, p, &gens, 3);
            let (db, dc) = (ctx.degree(&b).unwrap(), ctx.degree(&c).unwrap());
            let sum = ctx.degree(&ctx.add(&b, &c)).unwrap();
            let diff = ctx.degree(&ctx.sub(&b, &c)).unwrap();
            for (q, e) in nt::factor_u64(db) {
                let r = q.pow(e);
                if dc % r != 0 {
                    assert_eq!(sum % r, 0, "p={p} b={b} c={c}");
                    assert_eq!(diff % r, 0, "p={p} b={b} c={c}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn uth_power_of_anything_is_a_uth_power(e in proptest::collection::vec(0u32..3, 3), c in 1u64..9) {
        let ctx = Context::new(3).unwrap();
        // Elements of F_{3^8} with chi_3 mixed in stay below chi_5.
        let x = Element::from_terms(
            [(onp::Monomial::from_exponents([
                (GeneratorId::new(2, 1).unwrap(), e[0] % 2),
                (GeneratorId::new(2, 2).unwrap(), e[1] % 2),
                (GeneratorId::new(3, 1).unwrap(), e[2]),
            ]).unwrap(), 1)],
            3,
        );
        let x = ctx.add(&x, &ctx.natural(c));
        let fifth = ctx.pow_u64(&x, 5).unwrap();
        prop_assert!(ctx.is_uth_power(&fifth, 5).unwrap());
    }
}

#[test]
fn generator_degrees_scale_with_the_alpha_degree() {
    for p in [2u32, 3, 5] {
        let ctx = Context::new(p).unwrap();
        for u in [2u32, 3, 5, 7].into_iter().filter(|&u| u != p) {
            let d_alpha = ctx.degree(&ctx.alpha_u(u).unwrap().alpha).unwrap();
            for n in 1..=2 {
                let chi = Element::generator(GeneratorId::new(u, n).unwrap());
                assert_eq!(ctx.degree(&chi).unwrap(), d_alpha * (u as u64).pow(n), "p={p} u={u} n={n}");
            }
        }
    }
}
