//! Minimal excludents, MEX sets and the MEX property.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Largest table side used by [`FiniteTables`].
pub const MAX_TABLE_SIDE: u64 = 10_000;

/// Least ordinal not in `set`.
pub fn mex(set: &BTreeSet<Ordinal>) -> Ordinal {
    let mut n = 0u64;
    while set.contains(&Ordinal::from(n)) {
        n += 1;
    }
    Ordinal::from(n)
}

fn mex_u64(set: &BTreeSet<u64>) -> u64 {
    (0..).find(|n| !set.contains(n)).expect("finite set")
}

fn small(o: &Ordinal, what: &str) -> Result<u64> {
    o.as_natural()
        .and_then(|n| n.to_u64())
        .filter(|&n| n <= MAX_TABLE_SIDE)
        .ok_or_else(|| Error::Resource(format!("{what} {o} is beyond the enumeration cap {MAX_TABLE_SIDE}")))
}

/// `{a'b + ab' - a'b' : a' < a, b' < b}` computed with the engine.
pub fn mex_set(a: &Ordinal, b: &Ordinal, ctx: &Context) -> Result<BTreeSet<Ordinal>> {
    let (a, b) = (small(a, "left factor")?, small(b, "right factor")?);
    let tables = FiniteTables::new(ctx, a.max(b) + 1)?;
    Ok(tables.mex_set(a, b).into_iter().map(Ordinal::from).collect())
}

/// Whether `ab = mex(mex_set(a, b))`.
pub fn has_mex_property(a: &Ordinal, b: &Ordinal, ctx: &Context) -> Result<bool> {
    let (x, y) = (small(a, "left factor")?, small(b, "right factor")?);
    let tables = FiniteTables::new(ctx, x.max(y) + 1)?;
    Ok(tables.has_mex_property(x, y))
}

/// Engine addition and multiplication tables on the naturals below a cap.
///
/// Sums are tabulated on the smallest field `p^(2^k)` containing the cap so
/// that every expression in a MEX set can be looked up.
#[derive(Clone, Debug)]
pub struct FiniteTables {
    p: u32,
    cap: u64,
    q: u64,
    add: Vec<u32>,
    neg: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteTables {
    pub fn new(ctx: &Context, cap: u64) -> Result<Self> {
        let p = ctx.p() as u64;
        let mut q = p;
        while q < cap {
            q = q.saturating_mul(q);
        }
        if q > MAX_TABLE_SIDE {
            return Err(Error::Resource(format!("tables of side {q} exceed {MAX_TABLE_SIDE}")));
        }
        let elems: Vec<_> = (0..q).map(|n| ctx.natural(n)).collect();
        let back = |e: &crate::Element| -> u32 {
            ctx.element_to_ordinal(e).as_natural().and_then(|n| n.to_u32()).expect("stays finite")
        };
        let mut add = vec![0u32; (q * q) as usize];
        for a in 0..q as usize {
            for b in 0..q as usize {
                add[a * q as usize + b] = back(&ctx.add(&elems[a], &elems[b]));
            }
        }
        let neg = elems.iter().map(|e| back(&ctx.negate(e))).collect();
        let mut mul = vec![0u32; (cap * cap) as usize];
        for a in 0..cap as usize {
            for b in a..cap as usize {
                let v = back(&ctx.mul(&elems[a], &elems[b])?);
                mul[a * cap as usize + b] = v;
                mul[b * cap as usize + a] = v;
            }
        }
        Ok(FiniteTables {
            p: ctx.p(),
            cap,
            q,
            add,
            neg,
            mul,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize] as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg[b as usize] as u64)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        assert!(a < self.cap && b < self.cap, "({a}, {b}) outside the product table");
        self.mul[(a * self.cap + b) as usize] as u64
    }

    pub fn mex_set(&self, a: u64, b: u64) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for a1 in 0..a {
            for b1 in 0..b {
                let v = self.add(self.mul(a1, b), self.mul(a, b1));
                out.insert(self.sub(v, self.mul(a1, b1)));
            }
        }
        out
    }

    pub fn mul_mex(&self, a: u64, b: u64) -> u64 {
        mex_u64(&self.mex_set(a, b))
    }

    pub fn add_mex(&self, a: u64, b: u64) -> u64 {
        let set: BTreeSet<u64> = (0..a).map(|a1| self.add(a1, b)).chain((0..b).map(|b1| self.add(a, b1))).collect();
        mex_u64(&set)
    }

    pub fn has_mex_property(&self, a: u64, b: u64) -> bool {
        self.mul(a, b) == self.mul_mex(a, b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub p: u32,
    pub cap: u64,
    pub pairs: u64,
    /// Pairs with `a + b < mex{a' + b, a + b'}`.
    pub add_violations: Vec<(u64, u64)>,
    /// Pairs with `ab` below the mex of their MEX set.
    pub mul_violations: Vec<(u64, u64)>,
    pub add_equalities: u64,
    /// Pairs with the MEX property.
    pub mul_equalities: u64,
}

impl LowerBoundReport {
    pub fn holds(&self) -> bool {
        self.add_violations.is_empty() && self.mul_violations.is_empty()
    }
}

/// Checks both mex lower bounds on every pair below `cap`.
pub fn check_lower_bounds(cap: u64, ctx: &Context) -> Result<LowerBoundReport> {
    let mut report = LowerBoundReport {
        p: ctx.p(),
        cap,
        ..Default::default()
    };
    if cap <= 1 {
        report.pairs = cap * cap;
        return Ok(report);
    }
    let t = FiniteTables::new(ctx, cap)?;
    for a in 0..cap {
        for b in 0..cap {
            report.pairs += 1;
            let (sum, sum_mex) = (t.add(a, b), t.add_mex(a, b));
            if sum < sum_mex {
                report.add_violations.push((a, b));
            } else if sum == sum_mex {
                report.add_equalities += 1;
            }
            let (prod, prod_mex) = (t.mul(a, b), t.mul_mex(a, b));
            if prod < prod_mex {
                report.mul_violations.push((a, b));
            } else if prod == prod_mex {
                report.mul_equalities += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub a: u64,
    pub b: u64,
    pub product: u64,
    pub mex: u64,
    pub mex_property: bool,
}

/// MEX property for every unordered pair of groups `p^i, p^j` below `cap`.
pub fn group_pairs(cap: u64, ctx: &Context) -> Result<Vec<PairResult>> {
    let p = ctx.p() as u64;
    let groups: Vec<u64> = std::iter::successors(Some(1u64), |g| g.checked_mul(p))
        .take_while(|&g| g < cap)
        .collect();
    let t = FiniteTables::new(ctx, cap.max(2))?;
    let mut out = Vec::new();
    for (i, &a) in groups.iter().enumerate() {
        for &b in &groups[i..] {
            out.push(pair_result(&t, a, b));
        }
    }
    Ok(out)
}

/// Pairs `{[φ^i], β}` with `β < φ` and `[φ^i]` in the next field, and pairs
/// `{[φ^i], [φ^j]}` with `i + j <= 2`, for the field `φ = p^(2^k)` given.
pub fn field_mex_pairs(phi: u64, ctx: &Context) -> Result<Vec<PairResult>> {
    let t = FiniteTables::new(ctx, phi * phi)?;
    let mut out = Vec::new();
    for g in [1, phi] {
        for beta in 0..phi {
            out.push(pair_result(&t, g, beta));
        }
    }
    out.push(pair_result(&t, phi, phi));
    Ok(out)
}

fn pair_result(t: &FiniteTables, a: u64, b: u64) -> PairResult {
    let (product, mex) = (t.mul(a, b), t.mul_mex(a, b));
    PairResult {
        a,
        b,
        product,
        mex,
        mex_property: product == mex,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mex_basics() {
        let set = |v: &[u64]| v.iter().map(|&n| Ordinal::from(n)).collect::<BTreeSet<_>>();
        assert_eq!(mex(&set(&[])), Ordinal::zero());
        assert_eq!(mex(&set(&[0, 1, 2])), Ordinal::from(3));
        assert_eq!(mex(&set(&[0, 2, 3])), Ordinal::from(1));
    }

    #[test]
    fn four_times_four() {
        let three = Context::new(3).unwrap();
        let four = Ordinal::from(4);
        assert_eq!(mex(&mex_set(&four, &four, &three).unwrap()), Ordinal::from(2));
        assert!(!has_mex_property(&four, &four, &three).unwrap());
        let two = Context::new(2).unwrap();
        assert!(has_mex_property(&four, &four, &two).unwrap());
        let one = Ordinal::one();
        assert_eq!(mex_set(&one, &one, &three).unwrap(), BTreeSet::from([Ordinal::zero()]));
    }

    #[test]
    fn lower_bounds_small() {
        let ctx = Context::new(3).unwrap();
        assert!(check_lower_bounds(16, &ctx).unwrap().holds());
        assert!(check_lower_bounds(1, &ctx).unwrap().holds());
        let two = Context::new(2).unwrap();
        let r = check_lower_bounds(16, &two).unwrap();
        assert_eq!(r.mul_equalities, r.pairs);
    }

    #[test]
    fn field_pairs_in_on3() {
        let ctx = Context::new(3).unwrap();
        assert!(field_mex_pairs(3, &ctx).unwrap().iter().all(|r| r.mex_property));
    }
}
