//! Addition straight from base-`p` digits, without the generator form.

use std::collections::BTreeMap;

use crate::ordinal::{ExpOrdinal, Ordinal};

/// Sum of two ordinals digit by digit in base `p` with no carries.
pub fn add_no_carry(a: &Ordinal, b: &Ordinal, p: u32) -> Ordinal {
    let mut digits: BTreeMap<ExpOrdinal, u32> = a.p_digits(p);
    for (delta, d) in b.p_digits(p) {
        let slot = digits.entry(delta).or_insert(0);
        *slot = (*slot + d) % p;
    }
    digits.retain(|_, d| *d != 0);
    Ordinal::from_p_digits(p, &digits).expect("digits are reduced mod p")
}

/// Same for naturals, on plain integers.
pub fn add_no_carry_u64(mut a: u64, mut b: u64, p: u64) -> u64 {
    let (mut out, mut place) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}
