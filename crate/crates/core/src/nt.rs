//! Number-theory helpers: primes and prime indices, multiplicative orders,
//! `u`-adic valuations and factorization of `p^d - 1`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use parking_lot::Mutex;

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Bases that make Miller-Rabin deterministic below 3.3e24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over the fixed base set. Exact below 3.3e24, a strong
/// probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    for &q in &MR_BASES {
        if (n % q).is_zero() {
            return false;
        }
    }
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_table() -> &'static Mutex<Vec<u32>> {
    static TABLE: OnceLock<Mutex<Vec<u32>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![2, 3, 5, 7, 11, 13]))
}

fn extend_until(primes: &mut Vec<u32>, done: impl Fn(&[u32]) -> bool) {
    let mut candidate = *primes.last().unwrap() + 2;
    while !done(primes) {
        if is_prime(candidate as u64) {
            primes.push(candidate);
        }
        candidate += 2;
    }
}

/// The `k`-th prime, counting from zero (`nth_prime(0) == 2`).
pub fn nth_prime(k: usize) -> u32 {
    let mut primes = prime_table().lock();
    extend_until(&mut primes, |ps| ps.len() > k);
    primes[k]
}

/// Number of primes strictly below `u`.
pub fn prime_index(u: u32) -> usize {
    let mut primes = prime_table().lock();
    extend_until(&mut primes, |ps| *ps.last().unwrap() >= u);
    primes.partition_point(|&q| q < u)
}

/// All primes `<= n`.
pub fn primes_up_to(n: u32) -> Vec<u32> {
    let mut primes = prime_table().lock();
    extend_until(&mut primes, |ps| *ps.last().unwrap() > n);
    primes.iter().copied().take_while(|&q| q <= n).collect()
}

/// Trial-division factorization of a machine integer, smallest prime first.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let phi = factor_u64(m)
        .iter()
        .fold(1u64, |acc, &(q, e)| acc * (q - 1) * q.pow(e - 1));
    let mut order = phi;
    for (q, _) in factor_u64(phi) {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// The exponent `a` with `u^a || n`.
pub fn u_part(u: u64, n: &BigUint) -> u64 {
    assert!(u >= 2, "valuation base must be at least 2");
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let mut n = n.clone();
    let mut a = 0;
    loop {
        let (q, r) = n.div_rem(&BigUint::from(u));
        if !r.is_zero() {
            return a;
        }
        n = q;
        a += 1;
    }
}

/// Limits for [`factor`]: trial division bound and the Pollard rho step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorLimits {
    pub trial_division: u64,
    pub rho_iterations: u64,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits {
            trial_division: 1_000_000,
            rho_iterations: 1 << 24,
        }
    }
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the
/// composite `n`, or `None` if the step budget runs out.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let mut steps = 0u64;
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += BATCH;
                steps += BATCH;
                if steps > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Full factorization: trial division, then Pollard rho with Miller-Rabin.
pub fn factor(n: &BigUint, limits: FactorLimits) -> Result<Vec<(BigUint, u32)>> {
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut rest = n.clone();
    let mut q = 2u64;
    while q <= limits.trial_division {
        let big_q = BigUint::from(q);
        if &big_q * &big_q > rest {
            break;
        }
        while (&rest % q).is_zero() {
            rest /= q;
            *found.entry(big_q.clone()).or_default() += 1;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *found.entry(m).or_default() += 1;
            continue;
        }
        let d = pollard_brent(&m, limits.rho_iterations).ok_or_else(|| {
            Error::Resource(format!("factorization of a {}-bit cofactor timed out", m.bits()))
        })?;
        stack.push(&m / &d);
        stack.push(d);
    }
    Ok(found.into_iter().collect())
}

fn mobius(n: u64) -> i32 {
    let fs = factor_u64(n);
    if fs.iter().any(|&(_, e)| e > 1) {
        0
    } else if fs.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mirrored: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&e| e * e != n).collect();
    out.extend(mirrored);
    out
}

/// Value of the cyclotomic polynomial `Phi_e` at `p`.
pub fn cyclotomic_value(e: u64, p: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in divisors(e) {
        let term = BigUint::from(p).pow(k as u32) - 1u32;
        match mobius(e / k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Factorization of `p^d - 1`, split along its cyclotomic factors first.
pub fn factor_p_power_minus_one(p: u64, d: u64, limits: FactorLimits) -> Result<Vec<(BigUint, u32)>> {
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    for e in divisors(d) {
        let phi = cyclotomic_value(e, p);
        for (q, k) in factor(&phi, limits)? {
            *found.entry(q).or_default() += k;
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_indices() {
        assert_eq!(nth_prime(0), 2);
        assert_eq!(nth_prime(1), 3);
        assert_eq!(nth_prime(13), 43);
        assert_eq!(prime_index(2), 0);
        assert_eq!(prime_index(3), 1);
        assert_eq!(prime_index(5), 2);
        assert_eq!(prime_index(43), 13);
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn orders_mod_u() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 13), Some(3));
        assert_eq!(multiplicative_order(11, 5), Some(1));
        assert_eq!(multiplicative_order(3, 43), Some(42));
        assert_eq!(multiplicative_order(4, 6), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(u_part(2, &BigUint::from(12u32)), 2);
        assert_eq!(u_part(3, &BigUint::from(80u32)), 0);
        assert_eq!(u_part(5, &BigUint::from(625u32)), 4);
    }

    #[test]
    fn factors_multiply_back() {
        let n = BigUint::from(3u32).pow(42) - 1u32;
        let fs = factor_p_power_minus_one(3, 42, FactorLimits::default()).unwrap();
        let product = fs
            .iter()
            .fold(BigUint::one(), |acc, (q, e)| acc * q.pow(*e));
        assert_eq!(product, n);
        assert!(fs.iter().all(|(q, _)| is_probable_prime(q)));

        // 2^67 - 1 = 193707721 * 761838257287 needs rho past trial division.
        let m = (BigUint::one() << 67) - 1u32;
        let fs = factor(&m, FactorLimits::default()).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, BigUint::from(193_707_721u64));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(1, 3), BigUint::from(2u32));
        assert_eq!(cyclotomic_value(2, 3), BigUint::from(4u32));
        assert_eq!(cyclotomic_value(6, 2), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(12, 2), BigUint::from(13u32));
    }
}
