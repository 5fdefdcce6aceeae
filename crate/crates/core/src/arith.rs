//! Field operations of `On_p` below the first transcendental.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::context::Context;
use crate::dense::{self, Layout};
use crate::element::{Element, GeneratorId, Monomial};
use crate::error::{Error, Result};
use crate::nt;

impl Context {
    pub fn add(&self, a: &Element, b: &Element) -> Element {
        a.add(b, self.p())
    }

    pub fn negate(&self, a: &Element) -> Element {
        a.negate(self.p())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        a.add(&b.negate(self.p()), self.p())
    }

    /// `g^u` for the generator `g = χ_{u^n}`, as a reduced element.
    pub fn reduce_generator_power(&self, g: GeneratorId) -> Result<Element> {
        let p = self.p();
        if g.u != p {
            return Ok(match g.n {
                1 => self.alpha_u(g.u)?.alpha,
                2 if g.u == 2 && p % 4 == 3 => {
                    Element::generator(GeneratorId { u: 2, n: 1 }).add(&Element::one(), p)
                }
                n => Element::generator(GeneratorId { u: g.u, n: n - 1 }),
            });
        }
        // χ_{p^n}^p = χ_{p^n} + Π_{k<n} χ_{p^k}^{p-1}; the product is already reduced.
        let tail = Monomial::from_map_unchecked((1..g.n).map(|k| (GeneratorId { u: p, n: k }, p - 1)).collect());
        Ok(Element::generator(g).add(&Element::monomial(tail, 1), p))
    }

    /// Smallest generator set containing `gens` that spans a field: closed
    /// downwards within each prime and under the support of every `α_u`.
    pub fn closure(&self, gens: impl IntoIterator<Item = GeneratorId>) -> Result<Vec<GeneratorId>> {
        let mut set: BTreeSet<GeneratorId> = BTreeSet::new();
        let mut pending: Vec<GeneratorId> = gens.into_iter().collect();
        while let Some(g) = pending.pop() {
            if !set.insert(g) {
                continue;
            }
            if g.n > 1 {
                pending.push(GeneratorId { u: g.u, n: g.n - 1 });
            } else if g.u != self.p() {
                pending.extend(self.alpha_u(g.u)?.alpha.support());
            }
        }
        Ok(set.into_iter().collect())
    }

    /// The dense layout for the field spanned by the given elements, or `None`
    /// if its dimension exceeds the configured dense limit.
    pub fn layout_for(&self, elems: &[&Element]) -> Result<Option<Arc<Layout>>> {
        let gens = self.closure(elems.iter().flat_map(|e| e.support()))?;
        let mut dim: usize = 1;
        for g in &gens {
            dim = match dim.checked_mul(g.u as usize) {
                Some(d) if d <= self.config().dense_limit => d,
                _ => return Ok(None),
            };
        }
        if let Some(l) = self.layouts.read().get(&gens) {
            return Ok(Some(l.clone()));
        }
        let relations = gens
            .iter()
            .map(|&g| self.reduce_generator_power(g))
            .collect::<Result<Vec<_>>>()?;
        let layout = Arc::new(Layout::new(self.p(), gens.clone(), &relations));
        Ok(Some(self.layouts.write().entry(gens).or_insert(layout).clone()))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let p = self.p();
        if let Some(s) = a.as_scalar() {
            return Ok(b.scale(s, p));
        }
        if let Some(s) = b.as_scalar() {
            return Ok(a.scale(s, p));
        }
        match self.layout_for(&[a, b])? {
            Some(l) => Ok(l.from_dense(&l.mul(&to_dense(&l, a), &to_dense(&l, b)))),
            None => self.mul_rewriting(a, b),
        }
    }

    /// Multiplication by merging monomials and rewriting every exponent that
    /// reaches its generator's prime with [`Context::reduce_generator_power`],
    /// largest generator first. Independent of the dense engine.
    pub fn mul_rewriting(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut memo = HashMap::new();
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let merged: Vec<(GeneratorId, u32)> =
                    ma.exponents().iter().chain(mb.exponents()).copied().collect();
                let prod = self.reduce_exponents(merged, &mut memo)?;
                out = out.add(&prod.scale(((ca as u64 * cb as u64) % self.p() as u64) as u32, self.p()), self.p());
                if out.term_count() > self.config().sparse_term_cap {
                    return Err(Error::Resource("sparse product has too many terms".into()));
                }
            }
        }
        Ok(out)
    }

    fn reduce_exponents(
        &self,
        exps: Vec<(GeneratorId, u32)>,
        memo: &mut HashMap<BTreeMap<GeneratorId, u32>, Element>,
    ) -> Result<Element> {
        let mut map: BTreeMap<GeneratorId, u32> = BTreeMap::new();
        for (g, e) in exps {
            *map.entry(g).or_default() += e;
        }
        map.retain(|_, e| *e > 0);
        if let Some(hit) = memo.get(&map) {
            return Ok(hit.clone());
        }
        let p = self.p();
        let overflow = map.iter().rev().find(|(g, &e)| e >= g.u).map(|(&g, &e)| (g, e));
        let result = match overflow {
            None => Element::monomial(Monomial::from_map_unchecked(map.clone()), 1),
            Some((g, e)) => {
                // g^e = g^(e-u) · g^u, with g^u rewritten.
                let mut rest = map.clone();
                rest.insert(g, e - g.u);
                let mut out = Element::zero();
                for (m, c) in self.reduce_generator_power(g)?.terms() {
                    let merged: Vec<(GeneratorId, u32)> = rest
                        .iter()
                        .map(|(&h, &k)| (h, k))
                        .chain(m.exponents().iter().copied())
                        .collect();
                    out = out.add(&self.reduce_exponents(merged, memo)?.scale(c, p), p);
                }
                out
            }
        };
        memo.insert(map, result.clone());
        Ok(result)
    }

    pub fn pow(&self, a: &Element, e: &BigUint) -> Result<Element> {
        let p = self.p();
        if e.is_zero() {
            return Ok(Element::one());
        }
        if let Some(s) = a.as_scalar() {
            if s == 0 {
                return Ok(Element::zero());
            }
            // Nonzero scalars have order dividing p - 1.
            let r = (e % (p as u64 - 1).max(1)).to_u64().unwrap();
            let r = if r == 0 { p as u64 - 1 } else { r };
            return Ok(Element::scalar(nt::pow_mod(s as u64, r, p as u64), p));
        }
        match self.layout_for(&[a])? {
            Some(l) => Ok(l.from_dense(&l.pow(&to_dense(&l, a), e))),
            None => {
                let mut acc = Element::one();
                for i in (0..e.bits()).rev() {
                    acc = self.mul_rewriting(&acc, &acc)?;
                    if e.bit(i) {
                        acc = self.mul_rewriting(&acc, a)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    pub fn pow_u64(&self, a: &Element, e: u64) -> Result<Element> {
        self.pow(a, &BigUint::from(e))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &Element) -> Result<Element> {
        self.pow_u64(a, self.p() as u64)
    }

    /// Degree of the minimal polynomial of `a` over `F_p`.
    pub fn degree(&self, a: &Element) -> Result<u64> {
        if a.as_scalar().is_some() {
            return Ok(1);
        }
        if let Some(&d) = self.degrees.read().get(a) {
            return Ok(d);
        }
        let cap = self.config().degree_cap;
        let exceeded = || Error::Resource(format!("degree exceeds {cap} Frobenius iterations"));
        let d = match self.layout_for(&[a])? {
            Some(l) => dense::frobenius_period(&l, &to_dense(&l, a), cap).ok_or_else(exceeded)?,
            None => {
                let mut x = self.frobenius(a)?;
                let mut m = 1;
                while &x != a {
                    if m >= cap {
                        return Err(exceeded());
                    }
                    x = self.frobenius(&x)?;
                    m += 1;
                }
                m
            }
        };
        self.degrees.write().insert(a.clone(), d);
        Ok(d)
    }

    /// Multiplicative order of a nonzero element.
    pub fn ord(&self, a: &Element) -> Result<BigUint> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = self.degree(a)?;
        let p = self.p() as u64;
        let mut n = BigUint::from(p).pow(d as u32) - 1u32;
        for (q, e) in nt::factor_p_power_minus_one(p, d, self.config().factor_limits)? {
            for _ in 0..e {
                let candidate = &n / &q;
                if self.pow(a, &candidate)?.is_one() {
                    n = candidate;
                } else {
                    break;
                }
            }
        }
        Ok(n)
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = self.degree(a)?;
        let e = BigUint::from(self.p()).pow(d as u32) - 2u32;
        self.pow(a, &e)
    }

    /// `a / b`.
    pub fn div(&self, a: &Element, b: &Element) -> Result<Element> {
        self.mul(a, &self.inverse(b)?)
    }
}

fn to_dense(l: &Layout, e: &Element) -> Vec<u32> {
    l.to_dense(e).expect("layout covers the element's support")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use num_traits::One;

    fn nat(ctx: &Context, n: u64) -> Element {
        ctx.natural(n)
    }

    fn omega(ctx: &Context) -> Element {
        ctx.ordinal_to_element(&Ordinal::omega())
    }

    #[test]
    fn small_products_in_on3() {
        let ctx = Context::new(3).unwrap();
        assert_eq!(ctx.mul(&nat(&ctx, 4), &nat(&ctx, 4)).unwrap(), nat(&ctx, 6));
        assert_eq!(ctx.mul(&nat(&ctx, 3), &nat(&ctx, 3)).unwrap(), nat(&ctx, 2));
        assert_eq!(ctx.mul(&nat(&ctx, 9), &nat(&ctx, 9)).unwrap(), nat(&ctx, 4));
        let w = omega(&ctx);
        let w3 = ctx.pow_u64(&w, 3).unwrap();
        assert_eq!(w3, w.add(&Element::one(), 3));
    }

    #[test]
    fn small_products_in_on2() {
        let ctx = Context::new(2).unwrap();
        assert_eq!(ctx.mul(&nat(&ctx, 4), &nat(&ctx, 4)).unwrap(), nat(&ctx, 6));
        assert_eq!(ctx.mul(&nat(&ctx, 16), &nat(&ctx, 16)).unwrap(), nat(&ctx, 24));
        assert_eq!(ctx.mul(&nat(&ctx, 256), &nat(&ctx, 256)).unwrap(), nat(&ctx, 384));
        assert_eq!(ctx.pow_u64(&omega(&ctx), 3).unwrap(), nat(&ctx, 2));
    }

    #[test]
    fn rewriting_agrees_with_dense() {
        let ctx = Context::new(3).unwrap();
        for a in 0..81 {
            for b in [1u64, 5, 9, 17, 40, 80] {
                let (x, y) = (nat(&ctx, a), nat(&ctx, b));
                assert_eq!(ctx.mul(&x, &y).unwrap(), ctx.mul_rewriting(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn degree_order_inverse() {
        let ctx = Context::new(3).unwrap();
        let three = nat(&ctx, 3);
        assert_eq!(ctx.degree(&three).unwrap(), 2);
        // 3^2 = 2 = -1, so 3 has order 4 in F_9^*.
        assert_eq!(ctx.ord(&three).unwrap(), BigUint::from(4u32));
        assert_eq!(ctx.ord(&ctx.add(&three, &Element::one())).unwrap(), BigUint::from(8u32));
        assert_eq!(ctx.ord(&nat(&ctx, 2)).unwrap(), BigUint::from(2u32));
        assert_eq!(ctx.ord(&Element::one()).unwrap(), BigUint::one());
        assert_eq!(ctx.frobenius(&three).unwrap(), nat(&ctx, 6));
        let w = omega(&ctx);
        assert!(ctx.mul(&w, &ctx.inverse(&w).unwrap()).unwrap().is_one());
        assert_eq!(ctx.inverse(&Element::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn chi_five_degree_in_on3() {
        let ctx = Context::new(3).unwrap();
        let chi5 = Element::generator(GeneratorId::new(5, 1).unwrap());
        assert_eq!(ctx.degree(&chi5).unwrap(), 20);
    }
}
