//! Ordinals below `ω^ω^ω` in Cantor normal form.
//!
//! [`ExpOrdinal`] holds ordinals below `ω^ω`, the exponents that appear in
//! base-`p` expansions. [`Ordinal`] holds ordinals below `ω^ω^ω` as a base-`ω`
//! Cantor normal form with [`ExpOrdinal`] exponents; the base-`p` expansion
//! `Σ p^δ·a_δ` is a view computed on demand for a given prime.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Compares two sparse normal forms by their largest key first.
pub(crate) fn cmp_desc<K: Ord, V: Ord>(a: &BTreeMap<K, V>, b: &BTreeMap<K, V>) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Ordinal sum of two normal forms keyed by exponent: terms of `a` below the
/// leading exponent of `b` are absorbed.
fn cnf_add<K: Ord + Clone>(a: &BTreeMap<K, BigUint>, b: &BTreeMap<K, BigUint>) -> BTreeMap<K, BigUint> {
    let Some((lead, lead_c)) = b.iter().next_back() else {
        return a.clone();
    };
    let mut out: BTreeMap<K, BigUint> = a
        .range(lead.clone()..)
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect();
    match out.get_mut(lead) {
        Some(c) => *c += lead_c,
        None => {
            out.insert(lead.clone(), lead_c.clone());
        }
    }
    for (k, c) in b.range(..lead.clone()) {
        out.insert(k.clone(), c.clone());
    }
    out
}

/// An ordinal `Σ_k ω^k·c_k` below `ω^ω`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ExpOrdinal {
    terms: BTreeMap<u32, BigUint>,
}

impl ExpOrdinal {
    pub fn zero() -> Self {
        ExpOrdinal::default()
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        ExpOrdinal::omega_power(0, n)
    }

    /// `ω^k·c`.
    pub fn omega_power(k: u32, c: impl Into<BigUint>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        ExpOrdinal { terms }
    }

    /// Builds `Σ ω^k·c_k` from `(k, c_k)` pairs; repeated keys are summed.
    pub fn from_counts(counts: impl IntoIterator<Item = (u32, BigUint)>) -> Self {
        let mut terms: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (k, c) in counts {
            if !c.is_zero() {
                *terms.entry(k).or_default() += c;
            }
        }
        ExpOrdinal { terms }
    }

    /// `(k, c_k)` pairs in increasing `k`.
    pub fn counts(&self) -> impl DoubleEndedIterator<Item = (u32, &BigUint)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn count(&self, k: u32) -> Option<&BigUint> {
        self.terms.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn as_natural(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| self.terms.get(&0).cloned().unwrap_or_default())
    }

    pub fn leading_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Ordinal sum `self + other`.
    pub fn add(&self, other: &ExpOrdinal) -> ExpOrdinal {
        ExpOrdinal {
            terms: cnf_add(&self.terms, &other.terms),
        }
    }

    /// `ω·self`.
    pub fn omega_times(&self) -> ExpOrdinal {
        ExpOrdinal {
            terms: self.terms.iter().map(|(&k, c)| (k + 1, c.clone())).collect(),
        }
    }

    /// Splits `self = ω·γ + r`.
    pub fn split_omega(&self) -> (ExpOrdinal, BigUint) {
        let gamma = ExpOrdinal {
            terms: self
                .terms
                .range(1..)
                .map(|(&k, c)| (k - 1, c.clone()))
                .collect(),
        };
        let r = self.terms.get(&0).cloned().unwrap_or_default();
        (gamma, r)
    }

    /// The `e'` with `1 + e' = self`, for `self >= 1`.
    fn strip_leading_one(&self) -> ExpOrdinal {
        if self.is_finite() {
            let n = self.as_natural().unwrap();
            ExpOrdinal::finite(n - 1u32)
        } else {
            self.clone()
        }
    }

    pub fn to_ordinal(&self) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (ExpOrdinal::finite(k), c.clone()))
                .collect(),
        }
    }
}

impl Ord for ExpOrdinal {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_desc(&self.terms, &other.terms)
    }
}

impl PartialOrd for ExpOrdinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "w")?,
                _ => write!(f, "w^{k}")?,
            }
            if k > 0 && !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpOrdinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpOrdinal({self})")
    }
}

/// Largest finite exponent accepted by [`Ordinal::pow`].
const MAX_FINITE_EXPONENT: u64 = 1 << 16;

/// An ordinal below `ω^ω^ω`, stored as `Σ ω^e·n_e` with `e < ω^ω`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: BTreeMap<ExpOrdinal, BigUint>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal::default()
    }

    pub fn one() -> Self {
        Ordinal::natural(1u32)
    }

    pub fn natural(n: impl Into<BigUint>) -> Self {
        Ordinal::omega_power(ExpOrdinal::zero(), n)
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(ExpOrdinal::finite(1u32), 1u32)
    }

    /// `ω^e·c`.
    pub fn omega_power(e: ExpOrdinal, c: impl Into<BigUint>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Ordinal { terms }
    }

    /// Cantor normal form terms `(exponent, coefficient)`, increasing.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpOrdinal, &BigUint)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.keys().all(ExpOrdinal::is_zero)
    }

    pub fn as_natural(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| self.finite_part())
    }

    /// The trailing natural number `m` in `self = λ + m`.
    pub fn finite_part(&self) -> BigUint {
        self.terms.get(&ExpOrdinal::zero()).cloned().unwrap_or_default()
    }

    /// `self` with its trailing natural number removed: the limit part `λ`.
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        terms.remove(&ExpOrdinal::zero());
        Ordinal { terms }
    }

    pub fn leading(&self) -> Option<(&ExpOrdinal, &BigUint)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Ordinal) -> Ordinal {
        Ordinal {
            terms: cnf_add(&self.terms, &other.terms),
        }
    }

    /// Left subtraction: the unique `c` with `other + c = self`, if `other <= self`.
    pub fn sub(&self, other: &Ordinal) -> Option<Ordinal> {
        if other > self {
            return None;
        }
        let mut mine = self.terms.iter().rev().peekable();
        let mut theirs = other.terms.iter().rev().peekable();
        loop {
            match (mine.peek(), theirs.next()) {
                (_, None) => {
                    return Some(Ordinal {
                        terms: mine.map(|(e, c)| (e.clone(), c.clone())).collect(),
                    });
                }
                (Some(&(ea, ca)), Some((eb, cb))) if ea == eb && ca == cb => {
                    mine.next();
                }
                (Some(&(ea, ca)), Some((eb, cb))) => {
                    let mut terms: BTreeMap<ExpOrdinal, BigUint> =
                        mine.map(|(e, c)| (e.clone(), c.clone())).collect();
                    if ea == eb {
                        terms.insert(ea.clone(), ca - cb);
                    }
                    return Some(Ordinal { terms });
                }
                (None, Some(_)) => unreachable!("other <= self"),
            }
        }
    }

    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = self.leading() else {
            return Ordinal::zero();
        };
        let mut acc = Ordinal::zero();
        for (e, c) in other.terms.iter().rev() {
            let piece = if e.is_zero() {
                let mut terms = self.terms.clone();
                terms.insert(lead.clone(), lead_c * c);
                Ordinal { terms }
            } else {
                Ordinal::omega_power(lead.add(e), c.clone())
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// Ordinal exponentiation; fails when the result reaches `ω^ω^ω`.
    pub fn pow(&self, exponent: &Ordinal) -> Result<Ordinal> {
        if exponent.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() || *self == Ordinal::one() {
            return Ok(self.clone());
        }
        // exponent = ω·y + n
        let n = exponent.finite_part();
        let infinite = exponent.limit_part();
        let mut result = Ordinal::one();
        if !infinite.is_zero() {
            let lead_exp = if self.is_finite() {
                let y = Ordinal {
                    terms: infinite
                        .terms
                        .iter()
                        .map(|(e, c)| (e.strip_leading_one(), c.clone()))
                        .collect(),
                };
                y.to_exp_ordinal()?
            } else {
                let (lead, _) = self.leading().unwrap();
                lead.to_ordinal().mul(&infinite).to_exp_ordinal()?
            };
            result = Ordinal::omega_power(lead_exp, 1u32);
        }
        if !n.is_zero() {
            let small = n
                .to_u64()
                .filter(|&v| v <= MAX_FINITE_EXPONENT)
                .ok_or_else(|| Error::Resource(format!("finite exponent {n} is too large")))?;
            let power = match self.as_natural() {
                Some(base) => {
                    if base.bits() * small > 1 << 22 {
                        return Err(Error::Resource("natural power is too large".into()));
                    }
                    Ordinal::natural(base.pow(small as u32))
                }
                None => {
                    let mut acc = Ordinal::one();
                    let mut base = self.clone();
                    let mut k = small;
                    while k > 0 {
                        if k & 1 == 1 {
                            acc = acc.mul(&base);
                        }
                        base = base.mul(&base);
                        k >>= 1;
                    }
                    acc
                }
            };
            result = result.mul(&power);
        }
        Ok(result)
    }

    /// Reinterprets an ordinal below `ω^ω` as an [`ExpOrdinal`].
    pub fn to_exp_ordinal(&self) -> Result<ExpOrdinal> {
        let mut counts = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let k = e
                .as_natural()
                .and_then(|k| k.to_u32())
                .ok_or_else(|| Error::OutOfRange("exponent reaches ω^ω^ω".into()))?;
            counts.push((k, c.clone()));
        }
        Ok(ExpOrdinal::from_counts(counts))
    }

    /// Base-`p` digits `δ ↦ a_δ` with `self = Σ p^δ·a_δ` and each `a_δ` in `1..p`.
    pub fn p_digits(&self, p: u32) -> BTreeMap<ExpOrdinal, u32> {
        let mut out = BTreeMap::new();
        for (gamma, n) in &self.terms {
            let shifted = gamma.omega_times();
            let mut rest = n.clone();
            let mut r = 0u32;
            while !rest.is_zero() {
                let (q, d) = rest.div_rem(&BigUint::from(p));
                if let Some(d) = d.to_u32().filter(|&d| d != 0) {
                    out.insert(shifted.add(&ExpOrdinal::finite(r)), d);
                }
                rest = q;
                r += 1;
            }
        }
        out
    }

    /// Inverse of [`Ordinal::p_digits`]; digits must lie in `0..p`.
    pub fn from_p_digits(p: u32, digits: &BTreeMap<ExpOrdinal, u32>) -> Result<Ordinal> {
        let mut terms: BTreeMap<ExpOrdinal, BigUint> = BTreeMap::new();
        for (delta, &a) in digits {
            if a >= p {
                return Err(Error::Malformed(format!("digit {a} is not below p = {p}")));
            }
            if a == 0 {
                continue;
            }
            let (gamma, r) = delta.split_omega();
            let r = r
                .to_u32()
                .ok_or_else(|| Error::Resource("finite exponent too large".into()))?;
            *terms.entry(gamma).or_default() += BigUint::from(p).pow(r) * a;
        }
        Ok(Ordinal { terms })
    }

    /// Base-`ω` Cantor normal form using `w` for `ω`, e.g. `w^(w*3)*2+5`.
    pub fn to_cnf_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                if e.is_zero() {
                    return c.to_string();
                }
                let mut s = power_string("w", e);
                if !c.is_one() {
                    s.push_str(&format!("*{c}"));
                }
                s
            })
            .collect();
        parts.join("+")
    }

    /// Base-`p` expansion `Σ p^δ·a_δ`, e.g. `3^(w*3)+3^2*2+1`.
    pub fn to_p_expansion_string(&self, p: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .p_digits(p)
            .iter()
            .rev()
            .map(|(delta, &a)| {
                if delta.is_zero() {
                    return a.to_string();
                }
                let mut s = power_string(&p.to_string(), delta);
                if a != 1 {
                    s.push_str(&format!("*{a}"));
                }
                s
            })
            .collect();
        parts.join("+")
    }
}

fn power_string(base: &str, e: &ExpOrdinal) -> String {
    match e.as_natural() {
        Some(k) if k.is_one() => base.to_string(),
        Some(k) => format!("{base}^{k}"),
        None if *e == ExpOrdinal::omega_power(1, 1u32) => format!("{base}^w"),
        None => format!("{base}^({e})"),
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_desc(&self.terms, &other.terms)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cnf_string())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::natural(n)
    }
}
