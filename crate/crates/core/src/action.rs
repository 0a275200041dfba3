//! Group actions, orbits with Schreier trees, and stabilizers.
//!
//! Stabilizers are found from random Schreier generators: for a uniformly
//! random `r ∈ G` with `o^r` at orbit position `j`, the element
//! `r · t_j⁻¹` (with `t_j` the tree transversal) is uniform in `G_o`.
//! Because `|G_o| = |G| / |orbit|` is known exactly, generators are added
//! until the subgroup reaches that order, so the result is never partial.

use alloc::vec::Vec;
use core::hash::{BuildHasher, Hash};

use hashbrown::HashTable;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::{rng, FxBuild, DEFAULT_SEED};

/// Default cap on orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 1 << 24;

const ROOT: u32 = u32::MAX;

pub trait GroupAction {
    type Obj: Clone + Eq + Hash;

    fn act(&self, obj: &Self::Obj, g: &Permutation) -> Self::Obj;

    /// Action of generator number `index` of the acting group. Actions with
    /// precomputed generator tables override this.
    fn act_gen(&self, obj: &Self::Obj, index: usize, gen: &Permutation) -> Self::Obj {
        let _ = index;
        self.act(obj, gen)
    }
}

/// A value together with the rule by which permutations act on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ActionObject {
    /// Natural action on points.
    Point(u32),
    /// Action on sorted point sets.
    PointSet(Vec<u32>),
    /// Conjugation action on elements.
    Element(Permutation),
    /// Conjugation action on sorted sets of elements.
    ElementSet(Vec<Permutation>),
}

impl ActionObject {
    pub fn point_set(mut pts: Vec<u32>) -> Self {
        pts.sort_unstable();
        pts.dedup();
        ActionObject::PointSet(pts)
    }

    pub fn element_set(mut elems: Vec<Permutation>) -> Self {
        elems.sort();
        elems.dedup();
        ActionObject::ElementSet(elems)
    }

    pub fn act(&self, g: &Permutation) -> ActionObject {
        match self {
            ActionObject::Point(p) => ActionObject::Point(g.image(*p)),
            ActionObject::PointSet(s) => ActionObject::PointSet(g.image_of_set(s)),
            ActionObject::Element(h) => ActionObject::Element(h.conjugate_by(g)),
            ActionObject::ElementSet(s) => {
                let mut out: Vec<Permutation> = s.iter().map(|h| h.conjugate_by(g)).collect();
                out.sort();
                ActionObject::ElementSet(out)
            }
        }
    }
}

/// The action encoded in each [`ActionObject`] variant.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardAction;

impl GroupAction for StandardAction {
    type Obj = ActionObject;
    fn act(&self, obj: &ActionObject, g: &Permutation) -> ActionObject {
        obj.act(g)
    }
}

/// Natural action on points, used for plain `u32` orbits.
#[derive(Clone, Copy, Debug, Default)]
pub struct OnPoints;

impl GroupAction for OnPoints {
    type Obj = u32;
    fn act(&self, obj: &u32, g: &Permutation) -> u32 {
        g.image(*obj)
    }
}

/// Conjugation on single elements.
#[derive(Clone, Copy, Debug, Default)]
pub struct ByConjugation;

impl GroupAction for ByConjugation {
    type Obj = Permutation;
    fn act(&self, obj: &Permutation, g: &Permutation) -> Permutation {
        obj.conjugate_by(g)
    }
}

/// An orbit in breadth-first order with its Schreier tree.
#[derive(Clone, Debug)]
pub struct Orbit<O> {
    elements: Vec<O>,
    table: HashTable<u32>,
    parent: Vec<(u32, u32)>,
    generators: Vec<Permutation>,
    hasher: FxBuild,
}

impl<O: Clone + Eq + Hash> Orbit<O> {
    pub fn compute<A: GroupAction<Obj = O>>(
        group: &PermGroup,
        action: &A,
        start: O,
        cap: usize,
    ) -> Result<Self> {
        let hasher = FxBuild::default();
        let mut orbit = Orbit {
            elements: Vec::new(),
            table: HashTable::new(),
            parent: Vec::new(),
            generators: group.generators().to_vec(),
            hasher,
        };
        orbit.push(start, (ROOT, ROOT));
        let mut head = 0;
        while head < orbit.elements.len() {
            for (gi, gen) in orbit.generators.clone().iter().enumerate() {
                let img = action.act_gen(&orbit.elements[head], gi, gen);
                if orbit.position(&img).is_none() {
                    if orbit.elements.len() >= cap {
                        return Err(Error::OrbitOverflow { cap });
                    }
                    orbit.push(img, (head as u32, gi as u32));
                }
            }
            head += 1;
        }
        Ok(orbit)
    }

    fn push(&mut self, obj: O, parent: (u32, u32)) {
        let h = self.hasher.hash_one(&obj);
        let idx = self.elements.len() as u32;
        self.elements.push(obj);
        self.parent.push(parent);
        let (elements, hasher) = (&self.elements, &self.hasher);
        self.table
            .insert_unique(h, idx, |&i| hasher.hash_one(&elements[i as usize]));
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[O] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &O {
        &self.elements[i]
    }

    pub fn position(&self, obj: &O) -> Option<usize> {
        let h = self.hasher.hash_one(obj);
        self.table
            .find(h, |&i| self.elements[i as usize] == *obj)
            .map(|&i| i as usize)
    }

    pub fn contains(&self, obj: &O) -> bool {
        self.position(obj).is_some()
    }

    /// Element of the group mapping the first orbit element to element `j`,
    /// read off the Schreier tree.
    pub fn transversal(&self, j: usize) -> Permutation {
        let degree = self.generators.first().map_or(0, Permutation::degree);
        let mut path = Vec::new();
        let mut k = j;
        while self.parent[k].0 != ROOT {
            path.push(self.parent[k].1);
            k = self.parent[k].0 as usize;
        }
        let mut t = Permutation::identity(degree);
        for &gi in path.iter().rev() {
            t = t.then(&self.generators[gi as usize]);
        }
        t
    }
}

/// Orbit of `start` together with its stabilizer.
pub fn orbit_with_stabilizer<A: GroupAction>(
    group: &PermGroup,
    action: &A,
    start: A::Obj,
    cap: usize,
    seed: u64,
) -> Result<(Orbit<A::Obj>, PermGroup)> {
    let orbit = Orbit::compute(group, action, start, cap)?;
    let stab = stabilizer_from_orbit(group, action, &orbit, seed)?;
    Ok((orbit, stab))
}

/// Stabilizer of the first orbit element, built from random Schreier
/// generators until it reaches order `|G| / |orbit|`.
pub fn stabilizer_from_orbit<A: GroupAction>(
    group: &PermGroup,
    action: &A,
    orbit: &Orbit<A::Obj>,
    seed: u64,
) -> Result<PermGroup> {
    let order = group.order();
    let len = orbit.len() as u128;
    if !order.is_multiple_of(len) {
        return Err(Error::InternalInconsistency(alloc::format!(
            "orbit length {len} does not divide group order {order}"
        )));
    }
    let target = order / len;
    let start = orbit.get(0);
    let mut stab = PermGroup::trivial(group.degree());
    let mut r = rng(seed);
    let mut misses = 0usize;
    while stab.order() < target {
        let g = group.random_element(&mut r);
        let img = action.act(start, &g);
        let j = orbit
            .position(&img)
            .ok_or_else(|| Error::InternalInconsistency("random image left the orbit".into()))?;
        let s = g.then(&orbit.transversal(j).inverse());
        if stab.contains(&s) {
            misses += 1;
            if misses > 10_000 {
                return Err(Error::InternalInconsistency(
                    "stabilizer search stalled below its known order".into(),
                ));
            }
            continue;
        }
        misses = 0;
        stab = stab.extended(&s)?;
    }
    if stab.order() != target {
        return Err(Error::InternalInconsistency(
            "stabilizer order overshoot".into(),
        ));
    }
    Ok(stab)
}

pub fn centralizer(group: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    centralizer_with_class(group, g, DEFAULT_ORBIT_CAP).map(|(_, c)| c)
}

/// Conjugacy class of `g` (as an orbit with transversal) and its
/// centralizer.
pub fn centralizer_with_class(
    group: &PermGroup,
    g: &Permutation,
    cap: usize,
) -> Result<(Orbit<Permutation>, PermGroup)> {
    orbit_with_stabilizer(group, &ByConjugation, g.clone(), cap, DEFAULT_SEED)
}

pub fn conjugacy_class(
    group: &PermGroup,
    g: &Permutation,
    cap: usize,
) -> Result<Orbit<Permutation>> {
    Orbit::compute(group, &ByConjugation, g.clone(), cap)
}

/// Setwise stabilizer of a point set.
pub fn set_stabilizer(group: &PermGroup, pts: &[u32], cap: usize) -> Result<PermGroup> {
    let (_, st) = orbit_with_stabilizer(
        group,
        &StandardAction,
        ActionObject::point_set(pts.to_vec()),
        cap,
        DEFAULT_SEED,
    )?;
    Ok(st)
}

/// Normalizer of the subgroup whose full element set is `elems`.
pub fn normalizer_of_element_set(
    group: &PermGroup,
    elems: Vec<Permutation>,
    cap: usize,
) -> Result<(Orbit<ActionObject>, PermGroup)> {
    orbit_with_stabilizer(
        group,
        &StandardAction,
        ActionObject::element_set(elems),
        cap,
        DEFAULT_SEED,
    )
}

/// Conjugation action on sorted index sets into a stored conjugacy class.
/// Generator images are tabulated once.
#[derive(Debug)]
pub struct ClassSetAction<'a> {
    class: &'a Orbit<Permutation>,
    tables: Vec<Vec<u32>>,
}

impl<'a> ClassSetAction<'a> {
    pub fn new(class: &'a Orbit<Permutation>, generators: &[Permutation]) -> Result<Self> {
        let tables = generators
            .iter()
            .map(|s| induced_on_class(class, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassSetAction { class, tables })
    }

    /// Reuses tables computed earlier for the same generator list.
    pub fn from_tables(class: &'a Orbit<Permutation>, tables: Vec<Vec<u32>>) -> Self {
        ClassSetAction { class, tables }
    }

    pub fn class(&self) -> &Orbit<Permutation> {
        self.class
    }

    /// Generator images on class indices.
    pub fn tables(&self) -> &[Vec<u32>] {
        &self.tables
    }

    pub fn image_of_index(&self, i: u32, g: &Permutation) -> u32 {
        self.class
            .position(&self.class.get(i as usize).conjugate_by(g))
            .expect("class is closed under conjugation") as u32
    }
}

/// Permutation of class indices induced by conjugation with `g`.
pub fn induced_on_class(class: &Orbit<Permutation>, g: &Permutation) -> Result<Vec<u32>> {
    class
        .elements()
        .iter()
        .map(|h| {
            class
                .position(&h.conjugate_by(g))
                .map(|j| j as u32)
                .ok_or_else(|| {
                    Error::InternalInconsistency("conjugate left the stored class".into())
                })
        })
        .collect()
}

impl GroupAction for ClassSetAction<'_> {
    type Obj = Vec<u32>;

    fn act(&self, obj: &Vec<u32>, g: &Permutation) -> Vec<u32> {
        let mut out: Vec<u32> = obj.iter().map(|&i| self.image_of_index(i, g)).collect();
        out.sort_unstable();
        out
    }

    fn act_gen(&self, obj: &Vec<u32>, index: usize, _gen: &Permutation) -> Vec<u32> {
        let t = &self.tables[index];
        let mut out: Vec<u32> = obj.iter().map(|&i| t[i as usize]).collect();
        out.sort_unstable();
        out
    }
}
