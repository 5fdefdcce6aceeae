//! Random elements and ordinals for property checks.

use std::collections::BTreeMap;

use rand::Rng;

use crate::element::{Element, GeneratorId, Monomial};
use crate::ordinal::{ExpOrdinal, Ordinal};

/// `χ_2, χ_4, ..., χ_{2^n}`: the field `χ_{2^(n+1)}` of `p^(2^n)` naturals.
pub fn power_of_two_generators(n: u32) -> Vec<GeneratorId> {
    (1..=n).map(|k| GeneratorId { u: 2, n: k }).collect()
}

/// A modest generator set with infinite ordinals: `χ_2, χ_4, χ_3`.
pub fn mixed_generators() -> Vec<GeneratorId> {
    vec![GeneratorId { u: 2, n: 1 }, GeneratorId { u: 2, n: 2 }, GeneratorId { u: 3, n: 1 }]
}

/// A random element whose monomials only use `gens`, with at most
/// `max_terms` terms.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, p: u32, gens: &[GeneratorId], max_terms: usize) -> Element {
    let terms = rng.gen_range(0..=max_terms);
    let mut out = Element::zero();
    for _ in 0..terms {
        let exps: BTreeMap<GeneratorId, u32> = gens.iter().map(|&g| (g, rng.gen_range(0..g.u))).collect();
        let m = Monomial::from_map_unchecked(exps);
        out = out.add(&Element::monomial(m, rng.gen_range(1..p)), p);
    }
    out
}

/// Like [`random_element`] but never zero.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, p: u32, gens: &[GeneratorId], max_terms: usize) -> Element {
    loop {
        let e = random_element(rng, p, gens, max_terms.max(1));
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random ordinal below `ω^ω`, i.e. with base-`p` exponents `ω·a + b`
/// for `a < 4`, `b < 12`.
pub fn random_ordinal_below_omega_omega<R: Rng + ?Sized>(rng: &mut R, p: u32, max_terms: usize) -> Ordinal {
    let mut digits = BTreeMap::new();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let a: u32 = rng.gen_range(0..4);
        let b: u32 = rng.gen_range(0..12);
        let delta = ExpOrdinal::from_counts([(1, a.into()), (0, b.into())]);
        digits.insert(delta, rng.gen_range(1..p));
    }
    Ordinal::from_p_digits(p, &digits).expect("digits below p")
}
