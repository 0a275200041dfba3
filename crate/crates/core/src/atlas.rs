//! Concrete groups: alternating and symmetric groups, PSL(2,q) on the
//! projective line, the two classes of PGL(2,q) inside PSL(2,q^2), and
//! subgroups derived from a parent by stabilizing or normalizing.
//!
//! The projective line PG(1,q) is labelled by field-element index for the
//! affine points `(a:1)` and by `q` for the point at infinity `(1:0)`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::action::{normalizer_of_element_set, DEFAULT_ORBIT_CAP};
use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::Rng;

/// A point of PG(1,q) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    /// `(a:1)`
    Affine(FieldElem),
    /// `(1:0)`
    Infinity,
}

impl ProjectivePoint {
    /// Canonical form of the homogeneous pair `(a:b)`.
    pub fn from_pair(field: &FieldSpec, a: &FieldElem, b: &FieldElem) -> Result<Self> {
        if field.is_zero(b) {
            if field.is_zero(a) {
                return Err(Error::InvalidArgument(
                    "(0:0) is not a projective point".into(),
                ));
            }
            return Ok(ProjectivePoint::Infinity);
        }
        Ok(ProjectivePoint::Affine(field.div(a, b)?))
    }

    pub fn index(&self, field: &FieldSpec) -> u32 {
        match self {
            ProjectivePoint::Affine(a) => field.index(a),
            ProjectivePoint::Infinity => field.size(),
        }
    }

    pub fn from_index(field: &FieldSpec, i: u32) -> Self {
        if i == field.size() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Affine(field.from_index(i))
        }
    }
}

/// Permutation of PG(1,q) induced by `x ↦ (ax + b)/(cx + d)`.
pub fn mobius(
    field: &FieldSpec,
    a: &FieldElem,
    b: &FieldElem,
    c: &FieldElem,
    d: &FieldElem,
) -> Result<Permutation> {
    let det = field.sub(&field.mul(a, d), &field.mul(b, c));
    if field.is_zero(&det) {
        return Err(Error::InvalidArgument("singular matrix".into()));
    }
    let q = field.size();
    let images = (0..=q)
        .map(|i| {
            let (num, den) = match ProjectivePoint::from_index(field, i) {
                ProjectivePoint::Infinity => (a.clone(), c.clone()),
                ProjectivePoint::Affine(x) => (
                    field.add(&field.mul(a, &x), b),
                    field.add(&field.mul(c, &x), d),
                ),
            };
            ProjectivePoint::from_pair(field, &num, &den).map(|p| p.index(field))
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::from_images(images)
}

/// `x ↦ x^(p^i)` on PG(1,q), fixing infinity.
pub fn frobenius_on_projline(field: &FieldSpec, i: u32) -> Permutation {
    let q = field.size();
    let images = (0..=q)
        .map(|j| {
            if j == q {
                q
            } else {
                field.index(&field.frobenius(&field.from_index(j), i))
            }
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Generators `x+1`, `ω²x`, `-1/x` of PSL(2,q) on PG(1,q).
pub fn psl2_generators(field: &FieldSpec) -> Result<Vec<Permutation>> {
    let (zero, one) = (field.zero(), field.one());
    let w = field.primitive_element();
    let w_inv = field.inv(&w)?;
    Ok(alloc::vec![
        mobius(field, &one, &one, &zero, &one)?,
        mobius(field, &w, &zero, &zero, &w_inv)?,
        mobius(field, &zero, &field.neg(&one), &one, &zero)?,
    ])
}

/// PSL(2,q) acting on the `q+1` points of the projective line.
pub fn build_psl2(q: u64) -> Result<PermGroup> {
    let field = FieldSpec::of_order(q)?;
    PermGroup::new(q as usize + 1, psl2_generators(&field)?)
}

/// PSL(2,q) extended by the Frobenius map; for even `q` this is PΓL(2,q).
pub fn build_psl2_with_frobenius(q: u64) -> Result<PermGroup> {
    let field = FieldSpec::of_order(q)?;
    let mut gens = psl2_generators(&field)?;
    gens.push(frobenius_on_projline(&field, 1));
    PermGroup::new(q as usize + 1, gens)
}

/// The two conjugacy classes of PGL(2,q) in PSL(2,q^2), told apart by the
/// class of the unipotent elements they contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pgl2Variant {
    /// Contains unipotent elements `x ↦ x + t` with `t` a square.
    Squared,
    NonSquared,
}

/// PGL(2,q) embedded in PSL(2,q^2) on PG(1,q^2).
///
/// The squared copy is generated by `x+1`, `μx` and `1/x` with `μ` a
/// generator of GF(q)^×; the non-squared copy is its conjugate under
/// `x ↦ νx` for a non-square `ν`, which normalizes but does not lie in
/// PSL(2,q^2).
pub fn embed_pgl2(q: u64, variant: Pgl2Variant) -> Result<PermGroup> {
    let (p, k) = crate::util::prime_power(q)
        .ok_or_else(|| Error::InvalidField(alloc::format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::InvalidField("PGL(2,q) embedding needs odd q".into()));
    }
    let big = FieldSpec::new(p as u32, 2 * k)?;
    let (zero, one) = (big.zero(), big.one());
    let zeta = big.primitive_element();
    let mu = big.pow(&zeta, q + 1);
    let mut gens = alloc::vec![
        mobius(&big, &one, &one, &zero, &one)?,
        mobius(&big, &mu, &zero, &zero, &one)?,
        mobius(&big, &zero, &one, &one, &zero)?,
    ];
    if variant == Pgl2Variant::NonSquared {
        let nu = big.non_square()?;
        let delta = mobius(&big, &nu, &zero, &zero, &one)?;
        gens = gens.iter().map(|g| g.conjugate_by(&delta)).collect();
    }
    PermGroup::new((q * q) as usize + 1, gens)
}

/// For a unipotent element of PSL(2,q) (exactly one fixed point), whether it
/// is conjugate to `x ↦ x + t` with `t` a square. `None` for elements that
/// are not unipotent.
pub fn unipotent_is_squared(field: &FieldSpec, u: &Permutation) -> Result<Option<bool>> {
    let fixed = u.fixed_points();
    if fixed.len() != 1 || u.is_identity() || u.order() != field.characteristic() as u64 {
        return Ok(None);
    }
    let q = field.size();
    let u = if fixed[0] == q {
        u.clone()
    } else {
        // h : x ↦ -1/(x - P) sends P to infinity and lies in PSL(2,q)
        let pt = field.from_index(fixed[0]);
        let h = mobius(
            field,
            &field.zero(),
            &field.neg(&field.one()),
            &field.one(),
            &field.neg(&pt),
        )?;
        u.conjugate_by(&h)
    };
    let t = field.from_index(u.image(field.index(&field.zero())));
    field.is_square(&t).map(Some)
}

pub fn build_alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "alternating group needs n >= 3".into(),
        ));
    }
    let three = Permutation::from_cycles(n, &[&[0, 1, 2]])?;
    let long: Vec<u32> = if n % 2 == 1 {
        (0..n as u32).collect()
    } else {
        (1..n as u32).collect()
    };
    let long = Permutation::from_cycles(n, &[&long])?;
    PermGroup::new(n, alloc::vec![three, long])
}

pub fn build_symmetric(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "symmetric group needs n >= 2".into(),
        ));
    }
    let swap = Permutation::from_cycles(n, &[&[0, 1]])?;
    let long: Vec<u32> = (0..n as u32).collect();
    PermGroup::new(n, alloc::vec![swap, Permutation::from_cycles(n, &[&long])?])
}

pub fn point_stabilizer_subgroup(group: &PermGroup, point: u32) -> Result<PermGroup> {
    if point as usize >= group.degree() {
        return Err(Error::InvalidArgument(alloc::format!(
            "point {point} out of range"
        )));
    }
    group.point_stabilizer(point)
}

/// All elements of the cyclic group generated by `g`.
pub fn cyclic_elements(g: &Permutation) -> Vec<Permutation> {
    let mut out = alloc::vec![Permutation::identity(g.degree())];
    let mut h = g.clone();
    while !h.is_identity() {
        out.push(h.clone());
        h = h.then(g);
    }
    out
}

/// N_G(⟨g⟩) as the stabilizer of the element set of ⟨g⟩ under conjugation.
pub fn normalizer_of_cyclic(group: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    if g.order() > 10_000 {
        return Err(Error::InvalidArgument("cyclic subgroup too large".into()));
    }
    if g.is_identity() {
        return Ok(group.clone());
    }
    normalizer_of_element_set(group, cyclic_elements(g), DEFAULT_ORBIT_CAP).map(|(_, n)| n)
}

/// Whether conjugation by `phi` maps every generator of `group` into it.
pub fn normalizes(group: &PermGroup, phi: &Permutation) -> bool {
    phi.degree() == group.degree()
        && group
            .generators()
            .iter()
            .all(|g| group.contains(&g.conjugate_by(phi)))
}

/// Randomized guard against construction errors: for `trials` random
/// elements outside `sub`, the closure with `sub` is the whole group.
pub fn maximality_spot_check(
    group: &PermGroup,
    sub: &PermGroup,
    trials: usize,
    rng: &mut Rng,
) -> Result<bool> {
    if !sub.is_subgroup_of(group) || sub.order() == group.order() {
        return Ok(false);
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > 1000 * trials {
            return Err(Error::InternalInconsistency(
                "no elements outside subgroup".into(),
            ));
        }
        let g = group.random_element(rng);
        if sub.contains(&g) {
            continue;
        }
        if sub.extended(&g)?.order() != group.order() {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}

/// How to rebuild a group; serialized into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupRecipe {
    Alternating {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    Psl2 {
        q: u64,
    },
    /// PSL(2,q) extended by the Frobenius map.
    Psl2Frobenius {
        q: u64,
    },
    Pgl2InPsl2Sq {
        q: u64,
        variant: Pgl2Variant,
    },
    /// Generators read from a file, resolved by the caller.
    FromFile {
        name: String,
    },
    /// Explicit generators, 0-based images.
    Explicit {
        name: String,
        degree: usize,
        generators: Vec<Permutation>,
    },
    PointStabilizer {
        parent: Box<GroupRecipe>,
        point: u32,
    },
    NormalizerOfCyclic {
        parent: Box<GroupRecipe>,
        element: Permutation,
    },
}

/// Supplies groups named by [`GroupRecipe::FromFile`].
pub trait GroupResolver {
    fn resolve(&self, name: &str) -> Result<PermGroup>;
}

/// Resolver that knows no files.
pub struct NoFiles;

impl GroupResolver for NoFiles {
    fn resolve(&self, name: &str) -> Result<PermGroup> {
        Err(Error::InvalidArgument(alloc::format!(
            "no generator source for `{name}`"
        )))
    }
}

impl GroupRecipe {
    pub fn build(&self, resolver: &dyn GroupResolver) -> Result<PermGroup> {
        match self {
            GroupRecipe::Alternating { n } => build_alternating(*n),
            GroupRecipe::Symmetric { n } => build_symmetric(*n),
            GroupRecipe::Psl2 { q } => build_psl2(*q),
            GroupRecipe::Psl2Frobenius { q } => build_psl2_with_frobenius(*q),
            GroupRecipe::Pgl2InPsl2Sq { q, variant } => embed_pgl2(*q, *variant),
            GroupRecipe::FromFile { name } => resolver.resolve(name),
            GroupRecipe::Explicit {
                degree, generators, ..
            } => PermGroup::new(*degree, generators.clone()),
            GroupRecipe::PointStabilizer { parent, point } => {
                point_stabilizer_subgroup(&parent.build(resolver)?, *point)
            }
            GroupRecipe::NormalizerOfCyclic { parent, element } => {
                let g = parent.build(resolver)?;
                if !g.contains(element) {
                    return Err(Error::NotASubgroupElement);
                }
                normalizer_of_cyclic(&g, element)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupRecipe::Alternating { n } => alloc::format!("A{n}"),
            GroupRecipe::Symmetric { n } => alloc::format!("S{n}"),
            GroupRecipe::Psl2 { q } => alloc::format!("PSL(2,{q})"),
            GroupRecipe::Psl2Frobenius { q } => alloc::format!("PSL(2,{q}).frob"),
            GroupRecipe::Pgl2InPsl2Sq { q, variant } => {
                let v = match variant {
                    Pgl2Variant::Squared => "squared",
                    Pgl2Variant::NonSquared => "non-squared",
                };
                alloc::format!("PGL(2,{q}) {v}")
            }
            GroupRecipe::FromFile { name } | GroupRecipe::Explicit { name, .. } => name.clone(),
            GroupRecipe::PointStabilizer { parent, point } => {
                alloc::format!("{}_{point}", parent.name())
            }
            GroupRecipe::NormalizerOfCyclic { parent, element } => {
                alloc::format!("N_{}(<g>), |g| = {}", parent.name(), element.order())
            }
        }
    }
}

/// A6 generators on 6 points and the transitive S4 generated by
/// `(0,1,2)(3,4,5)` and `(0,3)(2,4)`.
pub fn a6_transitive_s4() -> Result<PermGroup> {
    PermGroup::new(
        6,
        alloc::vec![
            Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]])?,
            Permutation::from_cycles(6, &[&[0, 3], &[2, 4]])?,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{orbit_with_stabilizer, StandardAction};
    use crate::util::{rng, DEFAULT_SEED};

    #[test]
    fn psl2_orders_and_transitivity() {
        for (q, order) in [
            (3u64, 12u128),
            (5, 60),
            (7, 168),
            (8, 504),
            (9, 360),
            (27, 9828),
            (49, 58800),
        ] {
            let g = build_psl2(q).unwrap();
            assert_eq!(g.degree(), q as usize + 1);
            assert_eq!(g.order(), order, "q = {q}");
            assert!(g.is_k_transitive(2));
        }
        assert!(build_psl2(6).is_err());
    }

    #[test]
    fn frobenius_normalizes() {
        let f9 = FieldSpec::of_order(9).unwrap();
        let g = build_psl2(9).unwrap();
        let phi = frobenius_on_projline(&f9, 1);
        assert!(normalizes(&g, &phi));
        assert!(!g.contains(&phi));
        assert!(frobenius_on_projline(&f9, 0).is_identity());
        let f27 = FieldSpec::of_order(27).unwrap();
        let phi = frobenius_on_projline(&f27, 1);
        assert_eq!(phi.order(), 3);
        assert!(normalizes(&build_psl2(27).unwrap(), &phi));
        assert_eq!(build_psl2_with_frobenius(8).unwrap().order(), 1512);
    }

    #[test]
    fn pgl2_embeddings() {
        for q in [3u64, 5] {
            let g = build_psl2(q * q).unwrap();
            let big = FieldSpec::of_order(q * q).unwrap();
            let m1 = embed_pgl2(q, Pgl2Variant::Squared).unwrap();
            let m2 = embed_pgl2(q, Pgl2Variant::NonSquared).unwrap();
            for (m, want) in [(&m1, true), (&m2, false)] {
                assert_eq!(m.order(), (q * (q * q - 1)) as u128);
                assert!(m.is_subgroup_of(&g));
                let gens_cls: Vec<Option<bool>> = m
                    .generators()
                    .iter()
                    .map(|u| unipotent_is_squared(&big, u).unwrap())
                    .collect();
                assert!(gens_cls.contains(&Some(want)));
                assert!(!gens_cls.contains(&Some(!want)));
                assert_eq!(g.order() / m.order(), (q * (q * q + 1) / 2) as u128);
            }
            let elems = m1.elements(200);
            let (orbit, _) = orbit_with_stabilizer(
                &g,
                &StandardAction,
                crate::action::ActionObject::element_set(elems),
                1 << 10,
                DEFAULT_SEED,
            )
            .unwrap();
            assert_eq!(orbit.len() as u64, q * (q * q + 1) / 2);
            let other = crate::action::ActionObject::element_set(m2.elements(200));
            assert!(!orbit.contains(&other));
        }
        assert!(maximality_spot_check(
            &build_psl2(9).unwrap(),
            &embed_pgl2(3, Pgl2Variant::Squared).unwrap(),
            5,
            &mut rng(1)
        )
        .unwrap());
    }

    #[test]
    fn alternating_and_symmetric() {
        assert_eq!(build_alternating(6).unwrap().order(), 360);
        assert_eq!(build_alternating(9).unwrap().order(), 181440);
        assert_eq!(build_alternating(3).unwrap().order(), 3);
        assert_eq!(build_symmetric(3).unwrap().order(), 6);
        assert_eq!(build_symmetric(6).unwrap().order(), 720);
        assert_eq!(a6_transitive_s4().unwrap().order(), 24);
    }

    #[test]
    fn normalizers_of_cyclic_subgroups() {
        let g = build_psl2(27).unwrap();
        let x = g.element_of_order(13, None, &mut rng(3), 10_000).unwrap();
        assert_eq!(normalizer_of_cyclic(&g, &x).unwrap().order(), 26);
        let a6 = build_alternating(6).unwrap();
        let y = a6.element_of_order(5, None, &mut rng(3), 10_000).unwrap();
        assert_eq!(normalizer_of_cyclic(&a6, &y).unwrap().order(), 10);
        assert_eq!(
            normalizer_of_cyclic(&a6, &Permutation::identity(6))
                .unwrap()
                .order(),
            360
        );
    }

    #[test]
    fn recipes_rebuild_identically() {
        let r = GroupRecipe::PointStabilizer {
            parent: Box::new(GroupRecipe::Pgl2InPsl2Sq {
                q: 3,
                variant: Pgl2Variant::NonSquared,
            }),
            point: 0,
        };
        let a = r.build(&NoFiles).unwrap();
        let b = r.build(&NoFiles).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert!(GroupRecipe::FromFile { name: "m24".into() }
            .build(&NoFiles)
            .is_err());
    }
}
