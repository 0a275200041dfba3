//! The two constructions of 1-designs from a group.
//!
//! Stabilizer-orbit construction: for `G` transitive on `Ω` and a
//! nontrivial orbit `Δ` of a point stabilizer `G_α`, the images of `Δ`
//! under `G` are the blocks of a 1-(n, |Δ|, |Δ|) design on `Ω`.
//!
//! Conjugacy-class construction: for a maximal subgroup `M` and
//! `g ∈ M \ {1}`, the points are the class `g^G` and the blocks are the sets
//! `g^G ∩ M^x`, giving a 1-(|g^G|, |g^G ∩ M|, 1_M^G(g)) design with
//! `|G:M|` blocks.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::action::{
    conjugacy_class, orbit_with_stabilizer, stabilizer_from_orbit, ActionObject, ClassSetAction,
    Orbit, StandardAction,
};
use crate::design::{DesignParams, IncidenceStructure};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::{rng, DEFAULT_SEED};

/// Orbits of `G_α` on the points, each sorted, ordered by least point.
pub fn stabilizer_orbits(group: &PermGroup, alpha: u32) -> Result<Vec<Vec<u32>>> {
    if alpha as usize >= group.degree() {
        return Err(Error::InvalidArgument(alloc::format!(
            "point {alpha} out of range"
        )));
    }
    Ok(group.point_stabilizer(alpha)?.orbit_partition())
}

/// Picks an orbit by size and by position among the orbits of that size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSelector {
    pub size: usize,
    pub index: usize,
}

impl OrbitSelector {
    pub fn pick<'a>(&self, orbits: &'a [Vec<u32>]) -> Option<&'a Vec<u32>> {
        orbits
            .iter()
            .filter(|o| o.len() == self.size)
            .nth(self.index)
    }
}

/// A transitive action of `G` on the cosets of `M`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Image of `G` on the coset points, generator by generator.
    pub group: PermGroup,
    kind: CosetKind,
}

#[derive(Clone, Debug)]
enum CosetKind {
    /// `M` is the stabilizer of `point`; cosets are labelled by the orbit
    /// of that point, in orbit order.
    Points { orbit: Vec<u32>, position: Vec<u32> },
    /// Cosets are the conjugates of `M`, stored as element sets.
    Conjugates { orbit: Orbit<ActionObject> },
}

impl CosetAction {
    /// Degree of the action, `|G:M|`.
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Permutation of the cosets induced by `g ∈ G`.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let images = match &self.kind {
            CosetKind::Points { orbit, position } => orbit
                .iter()
                .map(|&p| match position[g.image(p) as usize] {
                    u32::MAX => Err(Error::NotASubgroupElement),
                    j => Ok(j),
                })
                .collect::<Result<Vec<u32>>>()?,
            CosetKind::Conjugates { orbit } => orbit
                .elements()
                .iter()
                .map(|o| {
                    orbit
                        .position(&o.act(g))
                        .map(|j| j as u32)
                        .ok_or(Error::NotASubgroupElement)
                })
                .collect::<Result<Vec<u32>>>()?,
        };
        Permutation::from_images(images)
    }

    /// Number of cosets fixed by `g`.
    pub fn fixed_points(&self, g: &Permutation) -> Result<usize> {
        Ok(self.image(g)?.fixed_points().len())
    }
}

/// Subgroups up to this order may be handled through their element sets.
pub const ELEMENT_SET_LIMIT: u128 = 10_000;

/// The action of `G` on the cosets of `M`. When `M` is the full stabilizer
/// of a point, the natural action on that point's orbit is used; otherwise
/// `M` must be self-normalizing and small enough to act on its conjugates.
pub fn coset_action(group: &PermGroup, sub: &PermGroup, cap: usize) -> Result<CosetAction> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::NotASubgroupElement);
    }
    let index = group.order() / sub.order();
    for point in 0..group.degree() as u32 {
        if sub.generators().iter().all(|s| s.image(point) == point) {
            let orbit = group.orbit_of_point(point);
            if orbit.len() as u128 == index {
                let mut position = alloc::vec![u32::MAX; group.degree()];
                for (j, &p) in orbit.iter().enumerate() {
                    position[p as usize] = j as u32;
                }
                return finish(group, CosetKind::Points { orbit, position });
            }
        }
    }
    if sub.order() > ELEMENT_SET_LIMIT {
        return Err(Error::InvalidArgument(
            "subgroup is neither a point stabilizer nor small enough to enumerate".into(),
        ));
    }
    let elems = sub.elements(ELEMENT_SET_LIMIT as usize);
    let orbit = Orbit::compute(
        group,
        &StandardAction,
        ActionObject::element_set(elems),
        cap,
    )?;
    if orbit.len() as u128 != index {
        return Err(Error::InvalidArgument(alloc::format!(
            "subgroup has {} conjugates but index {index}; it is not self-normalizing",
            orbit.len()
        )));
    }
    finish(group, CosetKind::Conjugates { orbit })
}

fn finish(group: &PermGroup, kind: CosetKind) -> Result<CosetAction> {
    let mut action = CosetAction {
        group: PermGroup::trivial(0),
        kind,
    };
    let gens = group
        .generators()
        .iter()
        .map(|g| action.image(g))
        .collect::<Result<Vec<_>>>()?;
    let degree = match &action.kind {
        CosetKind::Points { orbit, .. } => orbit.len(),
        CosetKind::Conjugates { orbit } => orbit.len(),
    };
    action.group = PermGroup::new(degree, gens)?;
    Ok(action)
}

/// Design from a stabilizer orbit, with the data it was built from.
#[derive(Clone, Debug)]
pub struct Method1Design {
    pub alpha: u32,
    pub delta: Vec<u32>,
    pub stabilizer_orbits: Vec<Vec<u32>>,
    pub design: IncidenceStructure,
    pub params: DesignParams,
}

/// Blocks are the distinct images of the chosen `G_α`-orbit `Δ`.
pub fn method1_design(
    group: &PermGroup,
    alpha: u32,
    selector: OrbitSelector,
    cap: usize,
) -> Result<Method1Design> {
    if !group.is_transitive() {
        return Err(Error::InvalidArgument("group is not transitive".into()));
    }
    let orbits = stabilizer_orbits(group, alpha)?;
    let delta = selector
        .pick(&orbits)
        .ok_or_else(|| {
            Error::InvalidArgument(alloc::format!(
                "no stabilizer orbit of size {} with index {}",
                selector.size,
                selector.index
            ))
        })?
        .clone();
    if delta == [alpha] {
        return Err(Error::InvalidArgument(
            "the orbit {α} gives no design".into(),
        ));
    }
    let blocks = Orbit::compute(
        group,
        &StandardAction,
        ActionObject::point_set(delta.clone()),
        cap,
    )?;
    let n = group.degree();
    if blocks.len() != n {
        return Err(Error::InternalInconsistency(alloc::format!(
            "{} distinct blocks for {n} points",
            blocks.len()
        )));
    }
    let blocks: Vec<Vec<u32>> = blocks
        .elements()
        .iter()
        .map(|b| match b {
            ActionObject::PointSet(s) => s.clone(),
            _ => unreachable!("orbit of a point set"),
        })
        .collect();
    let design = IncidenceStructure::new(n, blocks)?;
    let params = design.validate_1design()?;
    if params.k != delta.len() || params.r != delta.len() {
        return Err(Error::InternalInconsistency(
            "parameters differ from 1-(n,|Δ|,|Δ|)".into(),
        ));
    }
    Ok(Method1Design {
        alpha,
        delta,
        stabilizer_orbits: orbits,
        design,
        params,
    })
}

/// Design on a conjugacy class, with the class stored for later group work.
#[derive(Clone, Debug)]
pub struct Method2Design {
    pub element: Permutation,
    /// `g^G`; point `i` of the design is `class.get(i)`.
    pub class: Orbit<Permutation>,
    /// Class indices lying in `M`, i.e. the block `g^G ∩ M`.
    pub base_block: Vec<u32>,
    pub design: IncidenceStructure,
    pub params: DesignParams,
    /// Conjugation tables of the group generators on class indices.
    pub tables: Vec<Vec<u32>>,
}

impl Method2Design {
    pub fn action(&self) -> ClassSetAction<'_> {
        ClassSetAction::from_tables(&self.class, self.tables.clone())
    }

    /// Permutation of the points induced by conjugation with `x`.
    pub fn induced_point_map(&self, x: &Permutation) -> Result<Permutation> {
        Permutation::from_images(crate::action::induced_on_class(&self.class, x)?)
    }
}

pub fn method2_design(
    group: &PermGroup,
    sub: &PermGroup,
    g: &Permutation,
    cap: usize,
) -> Result<Method2Design> {
    if g.is_identity() {
        return Err(Error::InvalidArgument(
            "g must be a non-identity element".into(),
        ));
    }
    if !sub.contains(g) || !sub.is_subgroup_of(group) {
        return Err(Error::NotASubgroupElement);
    }
    let class = conjugacy_class(group, g, cap)?;
    let base_block: Vec<u32> = (0..class.len() as u32)
        .filter(|&i| sub.contains(class.get(i as usize)))
        .collect();
    let action = ClassSetAction::new(&class, group.generators())?;
    let blocks = Orbit::compute(group, &action, base_block.clone(), cap)?;
    let index = group.order() / sub.order();
    if blocks.len() as u128 != index {
        return Err(Error::InternalInconsistency(alloc::format!(
            "{} blocks but |G:M| = {index}",
            blocks.len()
        )));
    }
    let tables = action.tables().to_vec();
    let design = IncidenceStructure::new(class.len(), blocks.elements().to_vec())?;
    let params = design.validate_1design()?;
    Ok(Method2Design {
        element: g.clone(),
        class,
        base_block,
        design,
        params,
        tables,
    })
}

/// `1_M^G(g)` computed two ways: fixed cosets of `g`, and
/// `|G:M| · |g^G ∩ M| / |g^G|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermCharValue {
    pub by_fixed_cosets: u64,
    pub by_class_count: u64,
}

impl PermCharValue {
    pub fn agree(&self) -> bool {
        self.by_fixed_cosets == self.by_class_count
    }
}

/// Both routes to the permutation character. The class count is only
/// computed when the class fits under `cap`.
pub fn perm_char_value(
    group: &PermGroup,
    sub: &PermGroup,
    cosets: &CosetAction,
    g: &Permutation,
    cap: usize,
) -> Result<PermCharValue> {
    let by_fixed_cosets = cosets.fixed_points(g)? as u64;
    let index = group.order() / sub.order();
    let class = conjugacy_class(group, g, cap)?;
    let meet = class.elements().iter().filter(|h| sub.contains(h)).count() as u128;
    let num = index * meet;
    if !num.is_multiple_of(class.len() as u128) {
        return Err(Error::InternalInconsistency(
            "class count is not an integer".into(),
        ));
    }
    Ok(PermCharValue {
        by_fixed_cosets,
        by_class_count: (num / class.len() as u128) as u64,
    })
}

/// Whether every generator and `samples` random non-identity elements move
/// at least one point, where `moves` reports whether an element acts
/// nontrivially.
pub fn faithfulness_check(
    group: &PermGroup,
    samples: usize,
    seed: u64,
    moves: impl Fn(&Permutation) -> bool,
) -> bool {
    let mut r = rng(seed);
    let sampled = (0..samples).map(|_| group.random_element(&mut r));
    group
        .generators()
        .iter()
        .cloned()
        .chain(sampled)
        .filter(|g| !g.is_identity())
        .all(|g| moves(&g))
}

/// Stabilizer in `G` of block `i` of a conjugacy-class design.
pub fn method2_block_stabilizer(
    group: &PermGroup,
    d: &Method2Design,
    block: usize,
    cap: usize,
) -> Result<PermGroup> {
    let action = d.action();
    let orbit = Orbit::compute(group, &action, d.design.block(block).to_vec(), cap)?;
    stabilizer_from_orbit(group, &action, &orbit, DEFAULT_SEED)
}

/// Stabilizer of the point set `pts` of the natural action.
pub fn method1_block_stabilizer(group: &PermGroup, block: &[u32], cap: usize) -> Result<PermGroup> {
    orbit_with_stabilizer(
        group,
        &StandardAction,
        ActionObject::point_set(block.to_vec()),
        cap,
        DEFAULT_SEED,
    )
    .map(|(_, s)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::DEFAULT_ORBIT_CAP;
    use crate::atlas::{a6_transitive_s4, build_alternating, build_psl2, embed_pgl2, Pgl2Variant};

    #[test]
    fn a6_natural_gives_1_6_5_5() {
        let g = build_alternating(6).unwrap();
        let orbits = stabilizer_orbits(&g, 0).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 5]);
        let d = method1_design(
            &g,
            0,
            OrbitSelector { size: 5, index: 0 },
            DEFAULT_ORBIT_CAP,
        )
        .unwrap();
        assert_eq!(
            (d.params.v, d.params.b, d.params.k, d.params.lambda),
            (6, 6, 5, 5)
        );
        assert!(method1_design(&g, 0, OrbitSelector { size: 1, index: 0 }, 100).is_err());
    }

    #[test]
    fn a6_on_s4_cosets_gives_1_15_8_8() {
        let g = build_alternating(6).unwrap();
        let m = a6_transitive_s4().unwrap();
        let cosets = coset_action(&g, &m, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(cosets.degree(), 15);
        assert_eq!(cosets.group.order(), 360);
        let d = method1_design(
            &cosets.group,
            0,
            OrbitSelector { size: 8, index: 0 },
            DEFAULT_ORBIT_CAP,
        )
        .unwrap();
        assert_eq!((d.params.v, d.params.k, d.params.lambda), (15, 8, 8));
    }

    #[test]
    fn psl29_involution_design() {
        let g = build_psl2(9).unwrap();
        let m = embed_pgl2(3, Pgl2Variant::Squared).unwrap();
        let x = m.element_of_order(2, None, &mut rng(7), 1000).unwrap();
        // choose an involution of M; PSL(2,9) has a single class of them
        let d = method2_design(&g, &m, &x, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(
            (d.params.v, d.params.b, d.params.k, d.params.lambda),
            (45, 15, 9, 3)
        );
        let cosets = coset_action(&g, &m, DEFAULT_ORBIT_CAP).unwrap();
        let pc = perm_char_value(&g, &m, &cosets, &x, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(
            pc,
            PermCharValue {
                by_fixed_cosets: 3,
                by_class_count: 3
            }
        );
        let id = Permutation::identity(10);
        assert_eq!(cosets.fixed_points(&id).unwrap(), 15);
        let stab = method2_block_stabilizer(&g, &d, 0, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(stab.order(), 24);
        assert!(faithfulness_check(&g, 100, 1, |h| d
            .induced_point_map(h)
            .is_ok_and(|p| !p.is_identity())));
        assert!(method2_design(&g, &m, &Permutation::identity(10), 100).is_err());
    }

    #[test]
    fn point_stabilizer_cosets_use_natural_action() {
        let g = build_alternating(5).unwrap();
        let m = g.point_stabilizer(2).unwrap();
        let c = coset_action(&g, &m, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(c.degree(), 5);
        assert_eq!(c.group.order(), 60);
    }
}
