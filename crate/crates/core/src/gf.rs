//! Arithmetic in GF(p^k) with a polynomial basis.
//!
//! The modulus is the least monic irreducible polynomial of degree `k`,
//! where polynomials are ordered by their base-`p` encoding
//! `c_0 + c_1 p + .. + c_{k-1} p^{k-1}` of the non-leading coefficients.
//! Elements are indexed the same way, which gives a stable labelling of the
//! projective line.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{is_prime, prime_divisors};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem {
    coeffs: Vec<u32>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    /// Monic modulus, coefficients from degree 0 up to degree `k`.
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// GF(p^k) with the least irreducible modulus. `p = 2` is accepted so
    /// that PΓL(2, 2^k) can be built; squareness questions assume odd `p`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(alloc::format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        let size = (p as u64)
            .checked_pow(k)
            .filter(|&s| s <= 1 << 20)
            .ok_or_else(|| Error::InvalidField(alloc::format!("GF({p}^{k}) is too large")))?;
        let modulus = (0..size)
            .map(|code| {
                let mut m = digits(code, p, k as usize);
                m.push(1);
                m
            })
            .find(|m| poly_is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(FieldSpec { p, k, modulus })
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, k) = crate::util::prime_power(q)
            .ok_or_else(|| Error::InvalidField(alloc::format!("{q} is not a prime power")))?;
        FieldSpec::new(p as u32, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: alloc::vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(
                "coefficient vector does not fit the field".into(),
            ));
        }
        Ok(FieldElem {
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn from_index(&self, index: u32) -> FieldElem {
        debug_assert!(index < self.size());
        FieldElem {
            coeffs: digits(index as u64, self.p, self.k as usize),
        }
    }

    pub fn index(&self, a: &FieldElem) -> u32 {
        a.coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let k = self.k as usize;
        let p = self.p as u64;
        let mut prod = alloc::vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..k {
                let m = self.modulus[j] as u64;
                prod[d - k + j] = (prod[d - k + j] + (p - c) * m) % p;
            }
        }
        FieldElem {
            coeffs: prod[..k].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.size() as u64 - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Euler's criterion `a^((q-1)/2) = 1`; every element is a square in
    /// characteristic two.
    pub fn is_square(&self, a: &FieldElem) -> Result<bool> {
        if self.is_zero(a) {
            return Err(Error::InvalidArgument("squareness of zero".into()));
        }
        if self.p == 2 {
            return Ok(true);
        }
        Ok(self.pow(a, (self.size() as u64 - 1) / 2) == self.one())
    }

    /// `a ↦ a^(p^i)`.
    pub fn frobenius(&self, a: &FieldElem, i: u32) -> FieldElem {
        let mut out = a.clone();
        for _ in 0..i % self.k {
            out = self.pow(&out, self.p as u64);
        }
        out
    }

    pub fn multiplicative_order(&self, a: &FieldElem) -> u64 {
        let n = self.size() as u64 - 1;
        let mut order = n;
        for r in prime_divisors(n) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        order
    }

    /// Least-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElem {
        let n = self.size() as u64 - 1;
        (1..self.size())
            .map(|i| self.from_index(i))
            .find(|a| self.multiplicative_order(a) == n)
            .expect("multiplicative group is cyclic")
    }

    /// Least-index non-square (odd characteristic).
    pub fn non_square(&self) -> Result<FieldElem> {
        (1..self.size())
            .map(|i| self.from_index(i))
            .find(|a| !self.is_square(a).unwrap_or(true))
            .ok_or_else(|| Error::InvalidField("every element is a square".into()))
    }
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

// Dense polynomials over GF(p), coefficients from degree 0 upwards, with
// no trailing zeros (the zero polynomial is empty).

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for (j, &mj) in m.iter().enumerate() {
            let idx = dr - dm + j;
            r[idx] = ((r[idx] as u64 + (p as u64 - c) * mj as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = alloc::vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `k` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for `1 ≤ i ≤ k/2`.
pub(crate) fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = alloc::vec![0u32, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        // xp ← xp^p mod f
        let mut acc = alloc::vec![1u32];
        for _ in 0..p {
            acc = poly_mulmod(&acc, &xp, f, p);
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(f, &trim(diff), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn field_and_elems() -> impl Strategy<Value = (FieldSpec, u32, u32, u32)> {
        prop_oneof![
            Just((3u32, 3u32)),
            Just((5, 2)),
            Just((7, 2)),
            Just((2, 5)),
            Just((11, 2))
        ]
        .prop_flat_map(|(p, k)| {
            let f = FieldSpec::new(p, k).unwrap();
            let q = f.size();
            (Just(f), 0..q, 0..q, 0..q)
        })
    }

    proptest! {
        #[test]
        fn ring_laws((f, a, b, c) in field_and_elems()) {
            let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if a != f.zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                prop_assert_eq!(f.pow(&a, f.size() as u64 - 1), f.one());
            }
        }

        #[test]
        fn frobenius_fixes_only_the_prime_field((f, a, _, _) in field_and_elems()) {
            let x = f.from_index(a);
            let fixed = f.frobenius(&x, 1) == x;
            prop_assert_eq!(fixed, (a as u64) < f.characteristic() as u64);
        }
    }
}
