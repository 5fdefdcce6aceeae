//! `On_2` computed directly from the minimal-excludent definitions
//! `a + b = mex{a' + b, a + b'}` and `ab = mex{a'b + ab' - a'b'}`.

use crate::error::{Error, Result};

/// Largest supported cap.
pub const MAX_GENETIC_CAP: usize = 256;

/// Addition and multiplication tables of `On_2` below a field size.
#[derive(Clone, Debug)]
pub struct GeneticOn2 {
    cap: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

impl GeneticOn2 {
    /// Tables for all pairs below `cap`, which must be one of 2, 4, 16, 256
    /// so that both operations stay below it.
    pub fn build(cap: usize) -> Result<Self> {
        if cap > MAX_GENETIC_CAP {
            return Err(Error::Resource(format!("genetic cap {cap} exceeds {MAX_GENETIC_CAP}")));
        }
        if ![2, 4, 16, 256].contains(&cap) {
            return Err(Error::InvalidArgument(format!("genetic cap {cap} is not a field size")));
        }
        let mut add = vec![0u16; cap * cap];
        let mut seen = vec![0u32; cap + 1];
        let mut stamp = 0u32;
        for a in 0..cap {
            for b in 0..cap {
                stamp += 1;
                for a1 in 0..a {
                    seen[add[a1 * cap + b] as usize] = stamp;
                }
                for b1 in 0..b {
                    seen[add[a * cap + b1] as usize] = stamp;
                }
                add[a * cap + b] = mex_of(&seen, stamp);
            }
        }
        let mut mul = vec![0u16; cap * cap];
        for a in 0..cap {
            for b in 0..cap {
                stamp += 1;
                for a1 in 0..a {
                    let x = mul[a1 * cap + b] as usize;
                    for b1 in 0..b {
                        let y = mul[a * cap + b1] as usize;
                        let z = mul[a1 * cap + b1] as usize;
                        // Subtraction equals addition in characteristic 2.
                        let v = add[add[x * cap + y] as usize * cap + z];
                        seen[v as usize] = stamp;
                    }
                }
                mul[a * cap + b] = mex_of(&seen, stamp);
            }
        }
        Ok(GeneticOn2 { cap, add, mul })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn eval(&self, a: u64, b: u64, op: Op) -> Result<u64> {
        let cap = self.cap as u64;
        if a >= cap || b >= cap {
            return Err(Error::Resource(format!("({a}, {b}) is not below the genetic cap {cap}")));
        }
        let idx = (a * cap + b) as usize;
        Ok(match op {
            Op::Add => self.add[idx] as u64,
            Op::Mul => self.mul[idx] as u64,
        })
    }
}

fn mex_of(seen: &[u32], stamp: u32) -> u16 {
    seen.iter().position(|&s| s != stamp).expect("cap + 1 slots") as u16
}

/// One-off genetic evaluation with tables just large enough for `a` and `b`.
pub fn on2_genetic(a: u64, b: u64, op: Op) -> Result<u64> {
    let need = a.max(b) + 1;
    let cap = [2u64, 4, 16, 256]
        .into_iter()
        .find(|&c| c >= need)
        .ok_or_else(|| Error::Resource(format!("({a}, {b}) exceeds the genetic cap")))?;
    GeneticOn2::build(cap as usize)?.eval(a, b, op)
}
