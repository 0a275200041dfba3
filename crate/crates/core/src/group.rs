//! Permutation groups backed by a base and strong generating set.
//!
//! The chain is built eagerly with the deterministic Schreier–Sims
//! algorithm. Base points are taken from an optional caller prefix and then
//! greedily as the first moved point of each strong generator that fixes
//! the current base, so identical generator lists always give identical
//! chains.

use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::util::{Rng, UnionFind};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    /// Indices into `strong` of the generators fixing earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    position: Vec<u32>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<u32>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, &[])
    }

    /// Builds the group so that the chain starts with `prefix`; the tail of
    /// the chain after `prefix.len()` levels is the pointwise stabilizer.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: &[u32],
    ) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidGenerators(alloc::format!(
                "generator of degree {} in a group of degree {degree}",
                bad.degree()
            )));
        }
        if let Some(&p) = prefix.iter().find(|&&p| p as usize >= degree) {
            return Err(Error::InvalidArgument(alloc::format!(
                "base point {p} out of range"
            )));
        }
        let mut group = PermGroup {
            degree,
            generators,
            base: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        group.schreier_sims(prefix);
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Lengths of the fundamental orbits along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order exceeds u128")
        })
    }

    pub fn order_big(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    fn schreier_sims(&mut self, prefix: &[u32]) {
        let mut seen = crate::util::new_set::<Permutation>();
        for g in &self.generators {
            if !g.is_identity() && seen.insert(g.clone()) {
                self.strong.push(g.clone());
            }
        }
        self.base = prefix.to_vec();
        for s in &self.strong {
            if self.base.iter().all(|&b| s.image(b) == b) {
                self.base.push(s.first_moved_point().expect("non-identity"));
            }
        }
        self.levels = (0..self.base.len()).map(|i| self.make_level(i)).collect();

        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match self.first_failing_schreier_generator(li) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == self.levels.len() {
                        let b = residue.first_moved_point().expect("non-identity residue");
                        self.base.push(b);
                        self.levels.push(Level {
                            base_point: b,
                            gens: Vec::new(),
                            orbit: Vec::new(),
                            position: Vec::new(),
                            reps: Vec::new(),
                            reps_inv: Vec::new(),
                        });
                    }
                    self.strong.push(residue);
                    for l in li + 1..=drop {
                        self.levels[l] = self.make_level(l);
                    }
                    i = drop as isize;
                }
            }
        }
    }

    fn first_failing_schreier_generator(&self, li: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[li];
        for (j, &beta) in level.orbit.iter().enumerate() {
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let img = s.image(beta);
                let k = level.position[img as usize] as usize;
                let us = level.reps[j].then(s);
                if us == level.reps[k] {
                    continue;
                }
                let h = us.then(&level.reps_inv[k]);
                let (residue, drop) = self.sift_from(h, li + 1);
                if drop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    fn make_level(&self, i: usize) -> Level {
        let base_point = self.base[i];
        let prefix = &self.base[..i];
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&k| prefix.iter().all(|&b| self.strong[k].image(b) == b))
            .collect();
        let mut position = alloc::vec![NONE; self.degree];
        let mut orbit = alloc::vec![base_point];
        let mut reps = alloc::vec![Permutation::identity(self.degree)];
        position[base_point as usize] = 0;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            for &gi in &gens {
                let q = self.strong[gi].image(p);
                if position[q as usize] == NONE {
                    position[q as usize] = orbit.len() as u32;
                    orbit.push(q);
                    reps.push(reps[head].then(&self.strong[gi]));
                }
            }
            head += 1;
        }
        let reps_inv = reps.iter().map(Permutation::inverse).collect();
        Level {
            base_point,
            gens,
            orbit,
            position,
            reps,
            reps_inv,
        }
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it went all the way).
    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.image(level.base_point);
            let pos = level.position[beta as usize];
            if pos == NONE {
                return (h, l);
            }
            h = h.then(&level.reps_inv[pos as usize]);
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, drop) = self.sift_from(g.clone(), 0);
        drop == self.levels.len() && residue.is_identity()
    }

    /// Uniformly random element: a product of random coset representatives
    /// down the stabilizer chain.
    pub fn random_element(&self, rng: &mut Rng) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let j = rng.gen_range(0..level.reps.len());
            g = g.then(&level.reps[j]);
        }
        g
    }

    /// All elements, in chain order. Panics if the group is larger than
    /// `limit`.
    pub fn elements(&self, limit: usize) -> Vec<Permutation> {
        let order = self.order();
        assert!(
            order <= limit as u128,
            "group of order {order} exceeds enumeration limit"
        );
        let mut out = alloc::vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for g in &out {
                for u in &level.reps {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// Group generated by the strong generators fixing the first `m` base
    /// points, reusing the existing chain.
    pub fn chain_tail(&self, m: usize) -> PermGroup {
        let m = m.min(self.levels.len());
        let keep: Vec<usize> = (0..self.strong.len())
            .filter(|&k| self.base[..m].iter().all(|&b| self.strong[k].image(b) == b))
            .collect();
        let mut remap = alloc::vec![usize::MAX; self.strong.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let strong: Vec<Permutation> = keep.iter().map(|&k| self.strong[k].clone()).collect();
        let levels = self.levels[m..]
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.gens = l.gens.iter().map(|&g| remap[g]).collect();
                l
            })
            .collect();
        PermGroup {
            degree: self.degree,
            generators: strong.clone(),
            base: self.base[m..].to_vec(),
            strong,
            levels,
        }
    }

    /// Pointwise stabilizer of `points`, by rebuilding with them as the base
    /// prefix.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup> {
        if points.is_empty() {
            return Ok(self.clone());
        }
        let rebuilt = PermGroup::with_base_prefix(self.degree, self.strong.clone(), points)?;
        Ok(rebuilt.chain_tail(points.len()))
    }

    pub fn point_stabilizer(&self, point: u32) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// The group generated by `self` and `g`.
    pub fn extended(&self, g: &Permutation) -> Result<PermGroup> {
        let mut gens = self.strong.clone();
        gens.push(g.clone());
        PermGroup::with_base_prefix(self.degree, gens, &self.base)
    }

    /// Smallest subgroup of `self` containing `elems`.
    pub fn subgroup_closure(&self, elems: &[Permutation]) -> Result<PermGroup> {
        if elems.iter().any(|e| !self.contains(e)) {
            return Err(Error::NotASubgroupElement);
        }
        PermGroup::new(self.degree, elems.to_vec())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.generators.iter().all(|x| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(x)))
        })
    }

    pub fn orbit_partition(&self) -> Vec<Vec<u32>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for p in 0..self.degree as u32 {
                uf.union(p, g.image(p));
            }
        }
        uf.classes()
    }

    pub fn orbit_of_point(&self, point: u32) -> Vec<u32> {
        let mut seen = alloc::vec![false; self.degree];
        let mut orbit = alloc::vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            for g in &self.generators {
                let q = g.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
            head += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of_point(0).len() == self.degree
    }

    /// k-transitivity: the orbit of the tuple `(0, .., k-1)` has length
    /// `n(n-1)..(n-k+1)`, read off a chain with that tuple as base prefix.
    pub fn is_k_transitive(&self, k: usize) -> bool {
        if k > self.degree {
            return false;
        }
        let prefix: Vec<u32> = (0..k as u32).collect();
        let g = PermGroup::with_base_prefix(self.degree, self.strong.clone(), &prefix)
            .expect("valid prefix");
        g.levels[..k]
            .iter()
            .enumerate()
            .all(|(i, l)| l.orbit.len() == self.degree - i)
    }

    /// Random search for an element of order exactly `m`, optionally
    /// filtered by a class tag. Deterministic for a given RNG state.
    pub fn element_of_order(
        &self,
        m: u64,
        tag: Option<ClassTag>,
        rng: &mut Rng,
        budget: usize,
    ) -> Result<Permutation> {
        if m == 1 {
            return Ok(Permutation::identity(self.degree));
        }
        for _ in 0..budget {
            let r = self.random_element(rng);
            if let Some(g) = r.power_to_order(m) {
                if g.order() == m && tag.is_none_or(|t| t.matches(&g)) {
                    return Ok(g);
                }
            }
        }
        Err(Error::NotFound { order: m })
    }
}

/// Disambiguates between classes of elements with equal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ClassTag {
    /// Number of fixed points in the natural action.
    FixedPoints(usize),
}

impl ClassTag {
    pub fn matches(&self, g: &Permutation) -> bool {
        match *self {
            ClassTag::FixedPoints(f) => g.fixed_points().len() == f,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rng;
    use alloc::vec;

    fn s3() -> PermGroup {
        PermGroup::new(
            3,
            vec![
                Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(
            PermGroup::new(4, vec![Permutation::identity(4)])
                .unwrap()
                .order(),
            1
        );
        assert_eq!(PermGroup::trivial(0).order(), 1);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let err = PermGroup::new(3, vec![Permutation::identity(3), Permutation::identity(4)])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidGenerators(_)));
    }

    #[test]
    fn membership_and_enumeration() {
        let g = s3();
        let elems = g.elements(10);
        assert_eq!(elems.len(), 6);
        let mut sorted = elems.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
        assert!(elems.iter().all(|e| g.contains(e)));
        let c4 = PermGroup::new(
            4,
            vec![Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap()],
        )
        .unwrap();
        assert!(!c4.contains(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn stabilizers_by_base_change() {
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(s4.pointwise_stabilizer(&[]).unwrap().order(), 24);
        let st = s4.pointwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(st.order(), 2);
        assert!(st
            .generators()
            .iter()
            .all(|g| g.image(0) == 0 && g.image(1) == 1));
        assert!(s4.is_k_transitive(4));
        assert_eq!(s4.point_stabilizer(3).unwrap().order(), 6);
    }

    #[test]
    fn random_elements_are_members() {
        let g = s3();
        let mut r = rng(7);
        for _ in 0..20 {
            assert!(g.contains(&g.random_element(&mut r)));
        }
        let t = g.element_of_order(3, None, &mut r, 100).unwrap();
        assert_eq!(t.order(), 3);
        let inv = g
            .element_of_order(2, Some(ClassTag::FixedPoints(1)), &mut r, 100)
            .unwrap();
        assert_eq!(inv.fixed_points().len(), 1);
        assert!(matches!(
            g.element_of_order(5, None, &mut r, 50),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn closure_checks_membership() {
        let g = s3();
        assert_eq!(g.subgroup_closure(&[]).unwrap().order(), 1);
        let outside = Permutation::from_cycles(3, &[&[0, 2]]).unwrap();
        let c3 =
            PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(
            c3.subgroup_closure(&[outside]).unwrap_err(),
            Error::NotASubgroupElement
        );
        assert!(c3.is_normalized_by(&g));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::util::rng;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn gens() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
        (2usize..9).prop_flat_map(|n| {
            let p = Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap());
            (Just(n), proptest::collection::vec(p, 1..4))
        })
    }

    proptest! {
        #[test]
        fn chain_order_counts_elements((n, g) in gens()) {
            let group = PermGroup::new(n, g.clone()).unwrap();
            let elems = group.elements(40_320);
            prop_assert_eq!(elems.len() as u128, group.order());
            let set: crate::util::HashSet<&Permutation> = elems.iter().collect();
            prop_assert_eq!(set.len(), elems.len());
            for x in &g {
                prop_assert!(group.contains(x));
            }
        }

        #[test]
        fn random_elements_and_products_are_members((n, g) in gens(), seed in any::<u64>()) {
            let group = PermGroup::new(n, g).unwrap();
            let mut r = rng(seed);
            for _ in 0..10 {
                let a = group.random_element(&mut r);
                let b = group.random_element(&mut r);
                prop_assert!(group.contains(&a.then(&b)));
                prop_assert!(group.contains(&a.inverse()));
            }
        }

        #[test]
        fn stabilizer_times_orbit_is_order((n, g) in gens(), p in 0u32..8) {
            let group = PermGroup::new(n, g).unwrap();
            let p = p % n as u32;
            let stab = group.point_stabilizer(p).unwrap();
            prop_assert_eq!(stab.order() * group.orbit_of_point(p).len() as u128, group.order());
            prop_assert!(stab.is_subgroup_of(&group));
        }
    }
}
