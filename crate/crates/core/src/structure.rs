//! The generators `χ_r`, the elements `χ_h` for composite `h`, and the
//! smallest non-`u`-th powers `α_u`.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::context::Context;
use crate::element::{Element, GeneratorId};
use crate::error::{Error, Result};
use crate::nt;
use crate::ordinal::Ordinal;

pub use crate::nt::u_part;

/// `χ_h` written as a sum of generators `χ_r` over the prime powers `r ∈ Q(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiRecord {
    pub h: u64,
    pub element: Element,
    /// `Q(h)`, ordered by decreasing prime.
    pub q: Vec<u64>,
}

/// The smallest element `α_u` of `χ_u` with no `u`-th root in `χ_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRecord {
    pub u: u32,
    pub f: u64,
    /// `Q(f(u))`, ordered by decreasing prime.
    pub q: Vec<u64>,
    /// `m` with `α_u = [χ_{f(u)} + m]` as ordinals.
    pub excess: u64,
    pub alpha: Element,
}

impl Context {
    /// `χ_{u^n} = [p^(ω^k·u^(n-1))]` with `k` the number of primes below `u`.
    pub fn chi_prime_power(&self, u: u32, n: u32) -> Result<Ordinal> {
        Ok(Element::generator(GeneratorId::new(u, n)?).to_ordinal(self.p()))
    }

    /// The generators `χ_u, χ_{u^2}, ..., χ_{u^count}`, an increasing chain of fields.
    pub fn field_chain(&self, u: u32, count: u32) -> Result<Vec<Ordinal>> {
        (1..=count).map(|n| self.chi_prime_power(u, n)).collect()
    }

    /// The first `count` fields above `F_p`: `χ_2, χ_4, χ_8, ...`.
    pub fn first_field_chain(&self, count: u32) -> Vec<Ordinal> {
        self.field_chain(2, count).expect("2 is prime")
    }

    /// Multiplicative order of `p` modulo `u`.
    pub fn f_of(&self, u: u32) -> Result<u64> {
        if !nt::is_prime(u as u64) {
            return Err(Error::InvalidArgument(format!("{u} is not prime")));
        }
        if u == self.p() {
            return Err(Error::InvalidArgument(format!("f(u) is undefined for u = p = {u}")));
        }
        Ok(nt::multiplicative_order(self.p() as u64 % u as u64, u as u64).expect("p is a unit mod u"))
    }

    /// `χ_h` for a positive integer `h`.
    ///
    /// With `u` the smallest prime of `h`, `r` its full power in `h` and
    /// `g = h / r`: `χ_h = χ_g` when `r` divides the degree of `χ_g`, and
    /// `χ_h = χ_g + χ_r` otherwise. `χ_1 = 0`.
    pub fn chi_h(&self, h: u64) -> Result<ChiRecord> {
        if h == 0 {
            return Err(Error::InvalidArgument("chi(0) is undefined".into()));
        }
        if let Some(hit) = self.chis.read().get(&h) {
            return Ok(hit.clone());
        }
        let record = if h == 1 {
            ChiRecord {
                h,
                element: Element::zero(),
                q: Vec::new(),
            }
        } else {
            let (u, a) = nt::factor_u64(h)[0];
            let r = u.pow(a);
            let gen = Element::generator(GeneratorId::new(u as u32, a)?);
            if r == h {
                ChiRecord {
                    h,
                    element: gen,
                    q: vec![r],
                }
            } else {
                let inner = self.chi_h(h / r)?;
                if self.degree(&inner.element)? % r == 0 {
                    ChiRecord { h, ..inner }
                } else {
                    let mut q = inner.q.clone();
                    q.push(r);
                    ChiRecord {
                        h,
                        element: inner.element.add(&gen, self.p()),
                        q,
                    }
                }
            }
        };
        self.chis.write().insert(h, record.clone());
        Ok(record)
    }

    /// Whether `beta ∈ χ_u` has a `u`-th root in `χ_u`, for a prime `u != p`.
    ///
    /// With `D = lcm(d(beta), f(u))`, the `u`-part of `p^D - 1` does not grow
    /// in any finite extension inside `χ_u`, so `beta` is a `u`-th power iff
    /// `beta^((p^D - 1)/u) = 1`.
    pub fn is_uth_power(&self, beta: &Element, u: u32) -> Result<bool> {
        if u == self.p() {
            return Err(Error::InvalidArgument(format!(
                "every element is a {u}-th power in characteristic {u}"
            )));
        }
        let f = self.f_of(u)?;
        if let Some(g) = beta.support().into_iter().find(|g| g.u >= u) {
            return Err(Error::InvalidArgument(format!("{g} does not lie below chi({u})")));
        }
        if beta.is_zero() {
            return Ok(true);
        }
        let d = self.degree(beta)?.lcm(&f);
        let e = (BigUint::from(self.p()).pow(d as u32) - 1u32) / u;
        Ok(self.pow(beta, &e)?.is_one())
    }

    /// `α_u` for a prime `u != p`, found by scanning `[λ + t]` upwards from
    /// `χ_{f(u)} = [λ + m₁]`. Memoized.
    pub fn alpha_u(&self, u: u32) -> Result<AlphaRecord> {
        if let Some(hit) = self.alphas.read().get(&u) {
            return Ok(hit.clone());
        }
        let f = self.f_of(u)?;
        let chi = self.chi_h(f)?;
        let start = chi.element.to_ordinal(self.p());
        let limit = start.limit_part();
        let m1 = start.finite_part();
        let cap = self.config().alpha_scan_cap;
        for excess in 0..cap {
            let t = &m1 + BigUint::from(excess);
            let candidate = self.ordinal_to_element(&limit.add(&Ordinal::natural(t)));
            if !self.is_uth_power(&candidate, u)? {
                let record = AlphaRecord {
                    u,
                    f,
                    q: chi.q,
                    excess,
                    alpha: candidate,
                };
                self.alphas.write().insert(u, record.clone());
                return Ok(record);
            }
        }
        Err(Error::Resource(format!("no alpha_{u} among the first {cap} candidates")))
    }

    /// Installs a previously computed `α_u`, checking that it has the expected
    /// shape and is not a `u`-th power.
    pub fn seed_alpha(&self, record: AlphaRecord) -> Result<()> {
        let bad = |why: &str| Error::Malformed(format!("cached alpha_{}: {why}", record.u));
        let f = self.f_of(record.u)?;
        if f != record.f {
            return Err(bad("wrong f(u)"));
        }
        let chi = self.chi_h(f)?;
        if chi.q != record.q {
            return Err(bad("wrong Q(f(u))"));
        }
        let start = chi.element.to_ordinal(self.p());
        let expected = start
            .limit_part()
            .add(&Ordinal::natural(start.finite_part() + BigUint::from(record.excess)));
        if self.ordinal_to_element(&expected) != record.alpha {
            return Err(bad("value does not match its excess"));
        }
        if self.is_uth_power(&record.alpha, record.u)? {
            return Err(bad("value is a u-th power"));
        }
        self.alphas.write().insert(record.u, record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_as_ordinals() {
        let ctx = Context::new(3).unwrap();
        assert_eq!(ctx.chi_prime_power(2, 1).unwrap(), Ordinal::from(3));
        assert_eq!(ctx.chi_prime_power(2, 2).unwrap(), Ordinal::from(9));
        assert_eq!(ctx.chi_prime_power(3, 1).unwrap(), Ordinal::omega());
        let chain: Vec<String> = ctx.first_field_chain(4).iter().map(|o| o.to_string()).collect();
        assert_eq!(chain, ["3", "9", "81", "6561"]);
        let two = Context::new(2).unwrap();
        let chain: Vec<String> = two.first_field_chain(4).iter().map(|o| o.to_string()).collect();
        assert_eq!(chain, ["2", "4", "16", "256"]);
    }

    #[test]
    fn f_values() {
        assert_eq!(Context::new(2).unwrap().f_of(7).unwrap(), 3);
        assert_eq!(Context::new(3).unwrap().f_of(13).unwrap(), 3);
        assert_eq!(Context::new(11).unwrap().f_of(5).unwrap(), 1);
        assert!(Context::new(3).unwrap().f_of(3).is_err());
    }

    #[test]
    fn chi_twelve_in_on2() {
        let ctx = Context::new(2).unwrap();
        let rec = ctx.chi_h(12).unwrap();
        assert_eq!(rec.q, vec![3, 4]);
        assert_eq!(rec.element.to_ordinal(2).to_p_expansion_string(2), "2^w+2^2");
        assert_eq!(ctx.chi_h(8).unwrap().q, vec![8]);
        assert!(ctx.chi_h(1).unwrap().element.is_zero());
    }

    #[test]
    fn chi_eighteen_in_on3() {
        let ctx = Context::new(3).unwrap();
        let rec = ctx.chi_h(18).unwrap();
        assert_eq!(rec.q, vec![9, 2]);
        assert_eq!(rec.element.to_ordinal(3).to_p_expansion_string(3), "3^(w*3)+3");
    }

    #[test]
    fn uth_powers() {
        let ctx = Context::new(3).unwrap();
        assert!(ctx.is_uth_power(&Element::one(), 2).unwrap());
        assert!(!ctx.is_uth_power(&ctx.natural(2), 2).unwrap());
        assert!(ctx.is_uth_power(&Element::zero(), 2).unwrap());
        assert!(ctx.is_uth_power(&ctx.natural(2), 3).is_err());
        let five = Context::new(5).unwrap();
        assert!(!five.is_uth_power(&five.natural(6), 3).unwrap());
    }

    #[test]
    fn small_alphas() {
        let ctx = Context::new(2).unwrap();
        let a19 = ctx.alpha_u(19).unwrap();
        assert_eq!((a19.f, a19.excess), (18, 4));
        assert_eq!(a19.alpha.to_ordinal(2).to_cnf_string(), "w^3+4");
        let ctx = Context::new(11).unwrap();
        assert_eq!(ctx.alpha_u(2).unwrap().alpha, ctx.natural(2));
    }

    #[test]
    fn seeding_checks_the_record() {
        let ctx = Context::new(3).unwrap();
        let rec = ctx.alpha_u(5).unwrap();
        let fresh = Context::new(3).unwrap();
        fresh.seed_alpha(rec.clone()).unwrap();
        assert_eq!(fresh.alpha_u(5).unwrap(), rec);
        let wrong = AlphaRecord {
            excess: 0,
            alpha: ctx.natural(9),
            ..rec
        };
        assert!(matches!(Context::new(3).unwrap().seed_alpha(wrong), Err(Error::Malformed(_))));
    }
}
