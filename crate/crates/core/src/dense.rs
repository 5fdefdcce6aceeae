//! Dense arithmetic in the finite field spanned by a closed set of generators.
//!
//! A closed generator set `g_0 < g_1 < ... < g_{m-1}` (ordered as ordinals)
//! spans a field of dimension `Π u_i` over `F_p`. Each `g_i` satisfies a
//! relation over the field spanned by the generators below it: either
//! `g^u = c` for `u != p` or `g^p = g + c` for `u = p`. Elements are stored as
//! coefficient vectors in the mixed-radix monomial basis, with `g_0` varying
//! fastest, and multiplied recursively one generator at a time.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::element::{Element, GeneratorId, Monomial};

#[derive(Clone, Debug)]
pub(crate) enum Rule {
    /// `g^u = c`.
    Kummer(Vec<u32>),
    /// `g^p = g + c`.
    ArtinSchreier(Vec<u32>),
}

#[derive(Debug)]
pub struct Layout {
    p: u32,
    gens: Vec<GeneratorId>,
    stride: Vec<usize>,
    rules: Vec<Rule>,
    size: usize,
}

impl Layout {
    /// `relations[i]` is `g_i^{u_i}` expressed as an element; it may only
    /// involve generators below `g_i`.
    pub(crate) fn new(p: u32, gens: Vec<GeneratorId>, relations: &[Element]) -> Layout {
        assert_eq!(gens.len(), relations.len());
        let mut stride = Vec::with_capacity(gens.len());
        let mut size = 1usize;
        for g in &gens {
            stride.push(size);
            size *= g.u as usize;
        }
        let mut layout = Layout {
            p,
            gens,
            stride,
            rules: Vec::new(),
            size,
        };
        let mut rules = Vec::with_capacity(layout.gens.len());
        for (i, rel) in relations.iter().enumerate() {
            let g = layout.gens[i];
            let prefix = layout.stride[i];
            if g.u == p {
                let c = rel.add(&Element::generator(g).negate(p), p);
                let dense = layout.to_dense(&c).expect("relation lies in the layout");
                assert!(dense[prefix..].iter().all(|&x| x == 0), "relation for {g} is not lower");
                rules.push(Rule::ArtinSchreier(dense[..prefix].to_vec()));
            } else {
                let dense = layout.to_dense(rel).expect("relation lies in the layout");
                assert!(dense[prefix..].iter().all(|&x| x == 0), "relation for {g} is not lower");
                rules.push(Rule::Kummer(dense[..prefix].to_vec()));
            }
        }
        layout.rules = rules;
        layout
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.gens
    }

    /// Dimension over `F_p`.
    pub fn size(&self) -> usize {
        self.size
    }

    fn level_of(&self, g: GeneratorId) -> Option<usize> {
        self.gens.binary_search(&g).ok()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        let mut idx = 0;
        for &(g, e) in m.exponents() {
            idx += self.stride[self.level_of(g)?] * e as usize;
        }
        Some(idx)
    }

    pub fn monomial_at(&self, mut idx: usize) -> Monomial {
        let mut map = BTreeMap::new();
        for (level, g) in self.gens.iter().enumerate() {
            let e = (idx % g.u as usize) as u32;
            idx /= g.u as usize;
            if e > 0 {
                map.insert(self.gens[level], e);
            }
        }
        Monomial::from_map_unchecked(map)
    }

    /// `None` if the element uses a generator outside the layout.
    pub fn to_dense(&self, e: &Element) -> Option<Vec<u32>> {
        let mut v = vec![0u32; self.size];
        for (m, c) in e.terms() {
            v[self.index_of(m)?] = c;
        }
        Some(v)
    }

    pub fn from_dense(&self, v: &[u32]) -> Element {
        Element::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.monomial_at(i), c)),
            self.p,
        )
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.size];
        v[0] = 1;
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.size];
        self.mul_into(self.gens.len(), a, b, &mut out);
        out
    }

    pub fn square(&self, a: &[u32]) -> Vec<u32> {
        self.mul(a, a)
    }

    /// `a^e` by square-and-multiply. Nonzero exponents are first reduced
    /// modulo the order of the multiplicative group.
    pub fn pow(&self, a: &[u32], e: &BigUint) -> Vec<u32> {
        if e.is_zero() {
            return self.one();
        }
        if is_zero(a) {
            return vec![0; self.size];
        }
        let mut e = e.clone();
        let bits_bound = (self.size as f64 * (self.p as f64).log2()).floor() as u64;
        if e.bits() > bits_bound {
            let group_order = BigUint::from(self.p).pow(self.size as u32) - 1u32;
            e %= &group_order;
            if e.is_zero() {
                return self.one();
            }
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn is_one(&self, a: &[u32]) -> bool {
        a[0] == 1 && is_zero(&a[1..])
    }

    fn mul_into(&self, level: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
        let p = self.p as u64;
        if let Some(s) = scalar_of(a) {
            scale_into(b, s, p, out);
            return;
        }
        if let Some(s) = scalar_of(b) {
            scale_into(a, s, p, out);
            return;
        }
        let l = level - 1;
        let u = self.gens[l].u as usize;
        let s = self.stride[l];
        let nz_a: Vec<bool> = (0..u).map(|i| !is_zero(&a[i * s..(i + 1) * s])).collect();
        let nz_b: Vec<bool> = (0..u).map(|j| !is_zero(&b[j * s..(j + 1) * s])).collect();
        let mut prod = vec![0u32; (2 * u - 1) * s];
        let mut tmp = vec![0u32; s];
        for i in (0..u).filter(|&i| nz_a[i]) {
            for j in (0..u).filter(|&j| nz_b[j]) {
                self.mul_into(l, &a[i * s..(i + 1) * s], &b[j * s..(j + 1) * s], &mut tmp);
                add_assign(&mut prod[(i + j) * s..(i + j + 1) * s], &tmp, p);
            }
        }
        for k in (u..2 * u - 1).rev() {
            let block = prod[k * s..(k + 1) * s].to_vec();
            if is_zero(&block) {
                continue;
            }
            match &self.rules[l] {
                Rule::Kummer(c) => {
                    self.mul_into(l, &block, c, &mut tmp);
                    add_assign(&mut prod[(k - u) * s..(k - u + 1) * s], &tmp, p);
                }
                Rule::ArtinSchreier(c) => {
                    add_assign(&mut prod[(k - u + 1) * s..(k - u + 2) * s], &block, p);
                    if !is_zero(c) {
                        self.mul_into(l, &block, c, &mut tmp);
                        add_assign(&mut prod[(k - u) * s..(k - u + 1) * s], &tmp, p);
                    }
                }
            }
        }
        out.copy_from_slice(&prod[..u * s]);
    }
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn scalar_of(v: &[u32]) -> Option<u32> {
    is_zero(&v[1..]).then_some(v[0])
}

fn scale_into(v: &[u32], s: u32, p: u64, out: &mut [u32]) {
    for (o, &x) in out.iter_mut().zip(v) {
        *o = ((x as u64 * s as u64) % p) as u32;
    }
}

fn add_assign(acc: &mut [u32], v: &[u32], p: u64) {
    for (a, &x) in acc.iter_mut().zip(v) {
        let sum = *a as u64 + x as u64;
        *a = if sum >= p { (sum - p) as u32 } else { sum as u32 };
    }
}

/// Smallest `m >= 1` with `frob^m(a) = a`,
/// iterating `x -> x^p` at most `cap` times.
pub(crate) fn frobenius_period(layout: &Layout, a: &[u32], cap: u64) -> Option<u64> {
    let p = BigUint::from(layout.p());
    let mut x = layout.pow(a, &p);
    let mut m = 1;
    while x != a {
        if m >= cap {
            return None;
        }
        x = layout.pow(&x, &p);
        m += 1;
    }
    Some(m)
}
