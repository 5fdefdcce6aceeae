//! Finite fields built one extension at a time from the lexicographically
//! earliest rootless `x^n - h(x)`, independent of the generator engine.
//!
//! An element `Σ a_i x^i` of `φ[x]/(x^n - h)` is identified with the ordinal
//! `Σ φ^i·a_i`, so a field of size `N` is the set of naturals `0..N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nt;

/// Largest supported field size (cells per table axis).
pub const MAX_TOWER_SIZE: usize = 10_000;

/// One extension step: `x^n = h(x)` with `h` given lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub base_size: usize,
    pub n: usize,
    pub h: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct TowerField {
    p: u32,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    history: Vec<Extension>,
}

/// Builds the tower over `F_p` up to exactly `target_size` elements.
pub fn build_tower(p: u32, target_size: usize) -> Result<TowerField> {
    let mut field = TowerField::prime(p)?;
    if target_size > MAX_TOWER_SIZE {
        return Err(Error::Resource(format!("tower size {target_size} exceeds {MAX_TOWER_SIZE}")));
    }
    while field.size < target_size {
        let ext = field.next_extension();
        let new_size = field.size.pow(ext.n as u32);
        if new_size > target_size {
            return Err(Error::InvalidArgument(format!(
                "{target_size} is not a field size of the tower over F_{p}"
            )));
        }
        field = field.extend(ext);
    }
    if field.size != target_size {
        return Err(Error::InvalidArgument(format!(
            "{target_size} is not a field size of the tower over F_{p}"
        )));
    }
    Ok(field)
}

impl TowerField {
    pub fn prime(p: u32) -> Result<TowerField> {
        if !nt::is_prime(p as u64) || p as usize > MAX_TOWER_SIZE {
            return Err(Error::InvalidArgument(format!("unsupported prime {p}")));
        }
        let n = p as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u32;
                mul[a * n + b] = ((a * b) % n) as u32;
            }
        }
        Ok(TowerField {
            p,
            size: n,
            add,
            mul,
            history: Vec::new(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn history(&self) -> &[Extension] {
        &self.history
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.size as u32).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    fn pow(&self, a: u32, n: usize) -> u32 {
        (0..n).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Evaluates `h` (lowest degree first) at `x`.
    fn eval(&self, h: &[u32], x: u32) -> u32 {
        h.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// The next extension step: smallest `n >= 2`, then the earliest `h` of
    /// degree below `n` comparing the coefficient of `x^(n-1)` first, such
    /// that `x^n - h(x)` has no root in this field.
    pub fn next_extension(&self) -> Extension {
        for n in 2.. {
            let mut digits = vec![0u32; n];
            loop {
                // digits[0] is the coefficient of x^(n-1).
                let h: Vec<u32> = digits.iter().rev().copied().collect();
                let rootless = (0..self.size as u32).all(|x| self.pow(x, n) != self.eval(&h, x));
                if rootless {
                    return Extension {
                        base_size: self.size,
                        n,
                        h,
                    };
                }
                let mut i = n;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if (digits[i] as usize) < self.size {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        unreachable!("some degree admits a rootless polynomial")
    }

    fn extend(&self, ext: Extension) -> TowerField {
        let q = self.size;
        let n = ext.n;
        let size = q.pow(n as u32);
        let digits = |mut v: usize| -> Vec<u32> {
            (0..n)
                .map(|_| {
                    let d = (v % q) as u32;
                    v /= q;
                    d
                })
                .collect()
        };
        let join = |ds: &[u32]| ds.iter().rev().fold(0usize, |acc, &d| acc * q + d as usize);
        let polys: Vec<Vec<u32>> = (0..size).map(digits).collect();
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let (pa, pb) = (&polys[a], &polys[b]);
                let sum: Vec<u32> = pa.iter().zip(pb).map(|(&x, &y)| self.add(x, y)).collect();
                add[a * size + b] = join(&sum) as u32;
                let mut prod = vec![0u32; 2 * n - 1];
                for i in (0..n).filter(|&i| pa[i] != 0) {
                    for j in (0..n).filter(|&j| pb[j] != 0) {
                        prod[i + j] = self.add(prod[i + j], self.mul(pa[i], pb[j]));
                    }
                }
                // x^k = x^(k-n) · h(x), from the top down.
                for k in (n..2 * n - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &hi) in ext.h.iter().enumerate() {
                        prod[k - n + i] = self.add(prod[k - n + i], self.mul(c, hi));
                    }
                }
                mul[a * size + b] = join(&prod[..n]) as u32;
            }
        }
        let mut history = self.history.clone();
        history.push(ext);
        TowerField {
            p: self.p,
            size,
            add,
            mul,
            history,
        }
    }

    /// Exhaustive field-axiom check; returns a description of the first failure.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.size as u32;
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if a != 0 && !(0..n).any(|b| self.mul(a, b) == 1) {
                return Err(format!("{a} has no inverse"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}
