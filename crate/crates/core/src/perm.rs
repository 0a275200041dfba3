//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Composition follows the right-action convention used throughout the
//! crate: `a.then(&b)` (also `&a * &b`) applies `a` first, and conjugation
//! `g^x` is `x⁻¹ g x`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{gcd_u64, lcm_u64};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "image {i} repeated"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles
    /// (0-based points).
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(alloc::format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                if touched[a as usize] {
                    return Err(Error::InvalidPermutation(alloc::format!(
                        "point {a} appears in more than one cycle"
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x⁻¹ · self · x`, i.e. `self^x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        // (x⁻¹ g x)(x(i)) = x(g(i))
        let mut out = alloc::vec![0u32; self.degree()];
        for (i, &gi) in self.images.iter().enumerate() {
            out[x.images[i] as usize] = x.images[gi as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths, including fixed points, in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(core::iter::repeat_n(1, self.fixed_points().len()));
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm_u64(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&i| self.images[i as usize] == i)
            .collect()
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i as u32)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &a)| other.images[a as usize] == self.images[other.images[i] as usize])
    }

    /// Image of a point set, sorted.
    pub fn image_of_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&p| self.images[p as usize]).collect();
        out.sort_unstable();
        out
    }

    /// Parity as the number of transpositions modulo two.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Restriction to an invariant prefix `{0, .., m-1}`.
    pub fn restrict(&self, m: usize) -> Result<Permutation> {
        Permutation::from_images(self.images[..m].to_vec())
    }

    /// `self^k` where `k = order / m` when `m` divides the order.
    pub fn power_to_order(&self, m: u64) -> Option<Permutation> {
        let o = self.order();
        if m == 0 || !o.is_multiple_of(m) {
            return None;
        }
        let p = self.pow((o / m) as i64);
        debug_assert_eq!(gcd_u64(p.order(), m), m);
        Some(p)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation on 0-based points, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert_eq!((&a * &b).image(2), 1);
    }

    #[test]
    fn conjugation_matches_definition() {
        let g = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let x = Permutation::from_cycles(5, &[&[2, 3, 4], &[0, 1]]).unwrap();
        let direct = x.inverse().then(&g).then(&x);
        assert_eq!(g.conjugate_by(&x), direct);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn order_and_cycle_type() {
        let g = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.cycle_type(), vec![1, 1, 2, 3]);
        assert_eq!(g.pow(6), Permutation::identity(7));
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.power_to_order(3).unwrap().order(), 3);
        assert!(g.power_to_order(4).is_none());
        assert!(!g.is_even());
    }

    #[test]
    fn display_uses_canonical_cycles() {
        let g = Permutation::from_cycles(6, &[&[4, 2], &[3, 1, 5]]).unwrap();
        assert_eq!(alloc::format!("{g}"), "(1,5,3)(2,4)");
        assert_eq!(alloc::format!("{}", Permutation::identity(3)), "()");
    }
}
