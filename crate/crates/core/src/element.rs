//! The internal field-element form.
//!
//! Every group `[p^δ]` below the first transcendental factors as a product of
//! generators `χ_{u^n} = [p^(ω^k·u^(n-1))]` (`k` = number of primes below `u`)
//! with exponents below `u`: writing `δ = Σ_k ω^k·c_k`, the base-`u` digits of
//! `c_k` are the exponents of `χ_u, χ_{u^2}, ...`. An [`Element`] is then a
//! finite sum of such [`Monomial`]s with coefficients in `1..p`, and the
//! monomial order coincides with the ordinal order of the `δ`s.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;
use crate::ordinal::{cmp_desc, ExpOrdinal, Ordinal};

/// `χ_{u^n}` for a prime `u` and `n >= 1`. Ordered by `u`, then `n`, which is
/// the order of the corresponding ordinals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorId {
    pub u: u32,
    pub n: u32,
}

impl GeneratorId {
    pub fn new(u: u32, n: u32) -> Result<Self> {
        if !nt::is_prime(u as u64) {
            return Err(Error::InvalidArgument(format!("{u} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("generator index must be at least 1".into()));
        }
        Ok(GeneratorId { u, n })
    }

    /// The prime power `u^n` this generator is named after.
    pub fn prime_power(&self) -> u64 {
        (self.u as u64).pow(self.n)
    }

    /// The exponent `δ = ω^k·u^(n-1)·e` of `χ_{u^n}^e` viewed as `[p^δ]`.
    pub fn delta(&self, e: u32) -> ExpOrdinal {
        let k = nt::prime_index(self.u) as u32;
        ExpOrdinal::omega_power(k, BigUint::from(self.u).pow(self.n - 1) * e)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi({})", self.prime_power())
    }
}

/// A reduced product of generators, stored by decreasing generator.
///
/// The derived lexicographic order on that layout is the ordinal order of the
/// associated groups `[p^δ]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(GeneratorId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: GeneratorId) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// Builds a monomial from `(generator, exponent)` pairs. Exponents must be
    /// below the generator's prime; zero exponents are dropped.
    pub fn from_exponents(exps: impl IntoIterator<Item = (GeneratorId, u32)>) -> Result<Self> {
        let mut map: BTreeMap<GeneratorId, u32> = BTreeMap::new();
        for (g, e) in exps {
            *map.entry(g).or_default() += e;
        }
        if let Some((g, e)) = map.iter().find(|(g, &e)| e >= g.u) {
            return Err(Error::Malformed(format!("exponent {e} of {g} is not reduced")));
        }
        Ok(Monomial::from_map_unchecked(map))
    }

    pub(crate) fn from_map_unchecked(map: BTreeMap<GeneratorId, u32>) -> Self {
        Monomial(map.into_iter().rev().filter(|&(_, e)| e > 0).collect())
    }

    /// `(generator, exponent)` pairs, largest generator first.
    pub fn exponents(&self) -> &[(GeneratorId, u32)] {
        &self.0
    }

    pub fn exponent_of(&self, g: GeneratorId) -> u32 {
        self.0.iter().find(|(h, _)| *h == g).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// The `δ` with `self = [p^δ]`.
    pub fn delta(&self) -> ExpOrdinal {
        self.0
            .iter()
            .rev()
            .fold(ExpOrdinal::zero(), |acc, (g, e)| {
                let d = g.delta(*e);
                ExpOrdinal::from_counts(acc.counts().chain(d.counts()).map(|(k, c)| (k, c.clone())))
            })
    }

    /// Inverse of [`Monomial::delta`].
    pub fn from_delta(delta: &ExpOrdinal) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in delta.counts() {
            let u = nt::nth_prime(k as usize);
            let mut rest = c.clone();
            let mut n = 1u32;
            while !rest.is_zero() {
                let (q, d) = rest.div_rem(&BigUint::from(u));
                let d = d.to_u32().unwrap();
                if d > 0 {
                    map.insert(GeneratorId { u, n }, d);
                }
                rest = q;
                n += 1;
            }
        }
        Monomial::from_map_unchecked(map)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A field element below `[ω^ω^ω]`: monomials with coefficients in `1..p`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::one(), 1)
    }

    pub fn monomial(m: Monomial, coeff: u32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(m, coeff);
        }
        Element { terms }
    }

    pub fn generator(g: GeneratorId) -> Self {
        Element::monomial(Monomial::generator(g), 1)
    }

    /// The prime-field element `c mod p`.
    pub fn scalar(c: u64, p: u32) -> Self {
        Element::monomial(Monomial::one(), (c % p as u64) as u32)
    }

    /// Builds an element from `(monomial, coefficient)` pairs, summing mod `p`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, u32)>, p: u32) -> Self {
        let mut out = Element::zero();
        for (m, c) in terms {
            out.add_term(m, c, p);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u32, p: u32) {
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = (*existing + c) % p;
                if *existing == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `(monomial, coefficient)` pairs in increasing ordinal order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar() == Some(1)
    }

    /// The value in `0..p` if this element lies in the prime field.
    pub fn as_scalar(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Monomial::one()).copied(),
            _ => None,
        }
    }

    /// Every generator occurring in some monomial.
    pub fn support(&self) -> BTreeSet<GeneratorId> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().iter().map(|&(g, _)| g))
            .collect()
    }

    /// Largest prime `u` among the generators, if any.
    pub fn max_prime(&self) -> Option<u32> {
        self.support().iter().map(|g| g.u).max()
    }

    pub fn add(&self, other: &Element, p: u32) -> Element {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, p);
        }
        out
    }

    pub fn negate(&self, p: u32) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), p - c)).collect(),
        }
    }

    pub fn scale(&self, k: u32, p: u32) -> Element {
        let k = k % p;
        if k == 0 {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), ((c as u64 * k as u64) % p as u64) as u32))
                .collect(),
        }
    }

    /// The ordinal `Σ [p^δ]·a` denoted by this element.
    pub fn to_ordinal(&self, p: u32) -> Ordinal {
        let digits: BTreeMap<ExpOrdinal, u32> =
            self.terms.iter().map(|(m, &c)| (m.delta(), c)).collect();
        Ordinal::from_p_digits(p, &digits).expect("element coefficients are below p")
    }

    pub fn from_ordinal(o: &Ordinal, p: u32) -> Element {
        Element {
            terms: o
                .p_digits(p)
                .iter()
                .map(|(delta, &a)| (Monomial::from_delta(delta), a))
                .collect(),
        }
    }

    /// Builds the element for a base-`p` digit map, rejecting digits `>= p`.
    pub fn from_p_digits(p: u32, digits: &BTreeMap<ExpOrdinal, u32>) -> Result<Element> {
        if let Some((_, &a)) = digits.iter().find(|(_, &a)| a >= p) {
            return Err(Error::Malformed(format!("digit {a} is not below p = {p}")));
        }
        Ok(Element {
            terms: digits
                .iter()
                .filter(|(_, &a)| a != 0)
                .map(|(delta, &a)| (Monomial::from_delta(delta), a))
                .collect(),
        })
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_desc(&self.terms, &other.terms)
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| match (m.is_one(), c) {
                (true, _) => c.to_string(),
                (false, 1) => m.to_string(),
                (false, _) => format!("{c}*{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
