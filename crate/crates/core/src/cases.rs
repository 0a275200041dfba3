//! End-to-end verifiers: the Mathieu-group rows, the PSL(2,q^2) family
//! with its two classes of PGL(2,q), and small alternating-group and
//! PSL(2,q) examples. Every report carries a list of [`Check`]s comparing
//! an expected value with the observed one.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Display;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::action::{stabilizer_from_orbit, ActionObject, ByConjugation, Orbit, StandardAction};
use crate::atlas::{
    self, build_alternating, build_psl2, build_psl2_with_frobenius, embed_pgl2,
    frobenius_on_projline, mobius, normalizer_of_cyclic, unipotent_is_squared, GroupRecipe,
    Pgl2Variant,
};
use crate::aut::{
    aut_group, induced_on_cosets, is_design_automorphism, lift_test_method1, lift_test_method2,
    verify_aut_quotient, verify_s_i_intersection, QuotientReport, SIntersectionReport,
};
use crate::construct::{
    coset_action, method1_design, method2_design, perm_char_value, stabilizer_orbits,
    Method2Design, OrbitSelector, ELEMENT_SET_LIMIT,
};
use crate::design::{DesignParams, ReducedStructure, TDesignOutcome};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::{new_map, new_set, rng, HashMap, UnionFind};

/// One verified claim: what was expected, what was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    pub fn eq<T: PartialEq + Display>(claim: impl Into<String>, expected: T, observed: T) -> Self {
        Check {
            claim: claim.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass: expected == observed,
        }
    }

    pub fn holds(claim: impl Into<String>, observed: bool) -> Self {
        Check::eq(claim, true, observed)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Budgets and seed shared by the verifiers.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CaseOptions {
    pub seed: u64,
    pub orbit_cap: usize,
    /// Refinement nodes per automorphism search.
    pub aut_budget: u64,
    /// Increments allowed when tallying t-subsets.
    pub tally_budget: u128,
}

impl Default for CaseOptions {
    fn default() -> Self {
        CaseOptions {
            seed: crate::util::DEFAULT_SEED,
            orbit_cap: crate::action::DEFAULT_ORBIT_CAP,
            aut_budget: 10_000_000,
            tally_budget: 1 << 28,
        }
    }
}

fn params_str(p: &DesignParams) -> String {
    alloc::format!("1-({},{},{})", p.v, p.k, p.lambda)
}

fn triple(v: u64, k: u64, l: u64) -> String {
    alloc::format!("1-({v},{k},{l})")
}

/// Images of the generators of `G` on the reduced points (I-classes).
///
/// Returned as bare generators: the degree can be far too large for a
/// stabilizer chain with stored transversals.
pub fn generators_on_classes(d: &Method2Design, r: &ReducedStructure) -> Result<Vec<Permutation>> {
    d.tables
        .iter()
        .map(|t| {
            Permutation::from_images(
                r.classes
                    .iter()
                    .map(|c| r.class_of[t[c[0] as usize] as usize])
                    .collect(),
            )
        })
        .collect()
}

fn transitive_on(degree: usize, gens: &[Permutation]) -> bool {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree as u32 {
            uf.union(x, g.image(x));
        }
    }
    degree == 0 || uf.class_size(0) == degree
}

/// Permutation induced on the I-classes by an arbitrary element of `G`.
pub fn element_on_classes(
    d: &Method2Design,
    r: &ReducedStructure,
    x: &Permutation,
) -> Result<Permutation> {
    let table = crate::action::induced_on_class(&d.class, x)?;
    Permutation::from_images(
        r.classes
            .iter()
            .map(|c| r.class_of[table[c[0] as usize] as usize])
            .collect(),
    )
}

/// Permutation group induced on the blocks of a conjugacy-class design.
pub fn action_on_blocks(d: &Method2Design) -> Result<PermGroup> {
    let mut index: HashMap<&[u32], u32> = new_map();
    for (i, b) in d.design.blocks().iter().enumerate() {
        index.insert(b, i as u32);
    }
    let gens = d
        .tables
        .iter()
        .map(|t| {
            let images = d
                .design
                .blocks()
                .iter()
                .map(|b| {
                    let mut img: Vec<u32> = b.iter().map(|&x| t[x as usize]).collect();
                    img.sort_unstable();
                    index.get(img.as_slice()).copied().ok_or_else(|| {
                        Error::InternalInconsistency("block image is not a block".into())
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(d.design.b(), gens)
}

/// Block system of the group generated by `gens` containing the pair
/// `{a, b}` (Atkinson's closure); returns the size of the block of `a`.
pub fn minimal_block_size(degree: usize, gens: &[Permutation], a: u32, b: u32) -> usize {
    let mut uf = UnionFind::new(degree);
    let mut pending = alloc::vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = pending.pop() {
        for g in gens {
            let (gx, gy) = (g.image(x), g.image(y));
            if uf.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    uf.class_size(a)
}

/// Primitivity of a transitive group, tested by the minimal block through
/// `0` and a representative of each nontrivial suborbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Primitivity {
    pub degree: usize,
    pub suborbit_lengths: Vec<usize>,
    pub primitive: bool,
    /// Size of a nontrivial block found, if any.
    pub block_size: Option<usize>,
}

pub fn primitivity(
    degree: usize,
    gens: &[Permutation],
    stabilizer_of_zero: &[Permutation],
) -> Primitivity {
    let n = degree;
    let mut uf = UnionFind::new(n);
    for s in stabilizer_of_zero {
        for x in 0..n as u32 {
            uf.union(x, s.image(x));
        }
    }
    let classes = uf.classes();
    let suborbit_lengths = classes.iter().map(Vec::len).collect();
    let mut block_size = None;
    for c in &classes {
        if c[0] == 0 {
            continue;
        }
        let size = minimal_block_size(n, gens, 0, c[0]);
        if size < n {
            block_size = Some(size);
            break;
        }
    }
    Primitivity {
        degree: n,
        suborbit_lengths,
        primitive: block_size.is_none(),
        block_size,
    }
}

/// How `A_x`, the intersection of the conjugates of `M` through `x`, was
/// obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxStrategy {
    /// `M` is a point stabilizer: `A_x` fixes every point fixed by `x`.
    PointwiseStabilizer,
    /// Element sets of the conjugates were intersected.
    ElementSets,
    NotComputed,
}

/// Structure of the stabilizer of a reduced point `I_x`, with `x = g`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabReport {
    pub class_size: usize,
    pub i_x_size: usize,
    pub centralizer_order: u128,
    pub s_x_order: u128,
    /// `|S_x| = |C_G(x)| · |I_x|`.
    pub product_rule: bool,
    /// `x^{S_x} = I_x`.
    pub i_x_is_orbit: bool,
    /// `C_G(x) ≤ S_x`.
    pub centralizer_in_s_x: bool,
    pub a_x_strategy: AxStrategy,
    pub a_x_order: Option<u128>,
    /// `A_x ∩ g^G = I_x`.
    pub a_x_meets_class_in_i_x: Option<bool>,
    /// `S_x = N_G(A_x)`.
    pub s_x_is_normalizer: Option<bool>,
    pub h_x_order: u128,
    /// `H_x ⊴ S_x` where `H_x = ⟨C_G(y) : y ∈ I_x⟩`.
    pub h_x_normal: bool,
    /// `H_x A_x ⊴ S_x`.
    pub h_x_a_x_normal: Option<bool>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub s_x: Option<PermGroup>,
}

/// Verifies the stabilizer identities at the point `x = g` (class index 0).
pub fn verify_stabilizer_structure(
    group: &PermGroup,
    sub: &PermGroup,
    d: &Method2Design,
    r: &ReducedStructure,
    opts: &CaseOptions,
) -> Result<StabReport> {
    let x = d.class.get(0).clone();
    let centralizer = stabilizer_from_orbit(group, &ByConjugation, &d.class, opts.seed)?;
    let i_x: Vec<u32> = r.class_containing(0).to_vec();
    let action = d.action();
    let i_orbit = Orbit::compute(group, &action, i_x.clone(), opts.orbit_cap)?;
    let s_x = stabilizer_from_orbit(group, &action, &i_orbit, opts.seed)?;

    // orbit of x under S_x, on class indices
    let s_tables = s_x
        .generators()
        .iter()
        .map(|s| crate::action::induced_on_class(&d.class, s))
        .collect::<Result<Vec<_>>>()?;
    let mut orbit_x = alloc::vec![0u32];
    let mut seen = new_set();
    seen.insert(0u32);
    let mut head = 0;
    while head < orbit_x.len() {
        let i = orbit_x[head];
        for t in &s_tables {
            let j = t[i as usize];
            if seen.insert(j) {
                orbit_x.push(j);
            }
        }
        head += 1;
    }
    orbit_x.sort_unstable();
    let i_x_is_orbit = orbit_x == i_x;
    let centralizer_in_s_x = centralizer.generators().iter().all(|c| s_x.contains(c));
    let product_rule = s_x.order() == centralizer.order() * i_x.len() as u128;

    // A_x
    let (a_x_strategy, a_x) = intersection_of_conjugates(group, sub, d, &x, opts)?;
    let (a_x_order, a_x_meets_class_in_i_x, s_x_is_normalizer) = match &a_x {
        Some(a) => {
            let meet: Vec<u32> = (0..d.class.len() as u32)
                .filter(|&i| a.contains(d.class.get(i as usize)))
                .collect();
            let normalizes = a.is_normalized_by(&s_x);
            let normalizer_ok = if a.order() <= ELEMENT_SET_LIMIT {
                let orbit = Orbit::compute(
                    group,
                    &StandardAction,
                    ActionObject::element_set(a.elements(ELEMENT_SET_LIMIT as usize)),
                    opts.orbit_cap,
                )?;
                normalizes && group.order() / orbit.len() as u128 == s_x.order()
            } else {
                normalizes
            };
            (Some(a.order()), Some(meet == i_x), Some(normalizer_ok))
        }
        None => (None, None, None),
    };

    // H_x
    let mut h_gens = Vec::new();
    for &y in &i_x {
        let t = d.class.transversal(y as usize);
        h_gens.extend(centralizer.generators().iter().map(|c| c.conjugate_by(&t)));
    }
    let h_x = group.subgroup_closure(&h_gens)?;
    let h_x_normal = h_x.is_subgroup_of(&s_x) && h_x.is_normalized_by(&s_x);
    let h_x_a_x_normal = match &a_x {
        Some(a) => {
            let mut gens = h_x.generators().to_vec();
            gens.extend_from_slice(a.generators());
            let ha = PermGroup::new(group.degree(), gens)?;
            Some(ha.is_subgroup_of(&s_x) && ha.is_normalized_by(&s_x))
        }
        None => None,
    };

    let mut checks = alloc::vec![
        Check::eq(
            "stabilizer.product-rule",
            centralizer.order() * i_x.len() as u128,
            s_x.order()
        ),
        Check::holds("stabilizer.i-x-is-orbit", i_x_is_orbit),
        Check::holds("stabilizer.centralizer-contained", centralizer_in_s_x),
        Check::holds("stabilizer.h-x-normal", h_x_normal),
        Check::eq(
            "stabilizer.reduced-point-orbit",
            r.classes.len(),
            i_orbit.len()
        ),
    ];
    if let Some(ok) = a_x_meets_class_in_i_x {
        checks.push(Check::holds("stabilizer.a-x-meets-class-in-i-x", ok));
    }
    if let Some(ok) = s_x_is_normalizer {
        checks.push(Check::holds("stabilizer.s-x-normalizes-a-x", ok));
    }
    if let Some(ok) = h_x_a_x_normal {
        checks.push(Check::holds("stabilizer.h-x-a-x-normal", ok));
    }
    Ok(StabReport {
        class_size: d.class.len(),
        i_x_size: i_x.len(),
        centralizer_order: centralizer.order(),
        s_x_order: s_x.order(),
        product_rule,
        i_x_is_orbit,
        centralizer_in_s_x,
        a_x_strategy,
        a_x_order,
        a_x_meets_class_in_i_x,
        s_x_is_normalizer,
        h_x_order: h_x.order(),
        h_x_normal,
        h_x_a_x_normal,
        checks,
        s_x: Some(s_x),
    })
}

/// `A_x`: intersection of all conjugates of `M` containing `x`.
fn intersection_of_conjugates(
    group: &PermGroup,
    sub: &PermGroup,
    d: &Method2Design,
    x: &Permutation,
    opts: &CaseOptions,
) -> Result<(AxStrategy, Option<PermGroup>)> {
    let index = group.order() / sub.order();
    let fixed_by_sub = (0..group.degree() as u32)
        .find(|&p| sub.generators().iter().all(|s| s.image(p) == p))
        .filter(|&p| group.orbit_of_point(p).len() as u128 == index);
    if let Some(alpha) = fixed_by_sub {
        // conjugates of M = G_α are the G_β, β in the orbit of α
        let orbit = group.orbit_of_point(alpha);
        let fixed: Vec<u32> = orbit.into_iter().filter(|&b| x.image(b) == b).collect();
        return Ok((
            AxStrategy::PointwiseStabilizer,
            Some(group.pointwise_stabilizer(&fixed)?),
        ));
    }
    if sub.order() > ELEMENT_SET_LIMIT {
        return Ok((AxStrategy::NotComputed, None));
    }
    let action = d.action();
    let blocks = Orbit::compute(group, &action, d.base_block.clone(), opts.orbit_cap)?;
    let m_elems = sub.elements(ELEMENT_SET_LIMIT as usize);
    let mut common: Option<crate::util::HashSet<Permutation>> = None;
    for (j, b) in blocks.elements().iter().enumerate() {
        if b.binary_search(&0).is_err() {
            continue;
        }
        let t = blocks.transversal(j);
        let conj: crate::util::HashSet<Permutation> =
            m_elems.iter().map(|h| h.conjugate_by(&t)).collect();
        debug_assert!(conj.contains(x));
        common = Some(match common {
            None => conj,
            Some(c) => c.into_iter().filter(|h| conj.contains(h)).collect(),
        });
    }
    let elems: Vec<Permutation> = common.map(|c| c.into_iter().collect()).unwrap_or_default();
    let mut sorted = elems;
    sorted.sort();
    Ok((
        AxStrategy::ElementSets,
        Some(PermGroup::new(group.degree(), sorted)?),
    ))
}

/// Expected values for one Mathieu row.
#[derive(Clone, Copy, Debug)]
pub struct MathieuExpectation {
    pub n: usize,
    pub ord: u64,
    pub i_x: usize,
    pub t: usize,
    pub k: usize,
    pub lambda_t: u64,
    pub aut_order: u128,
    pub stab_order: u128,
}

/// The six rows: `(M_n, point stabilizer, ord g)` with the reduced-class
/// size, the dual t-design, its automorphism group order and the order of
/// the stabilizer of a dual block.
pub const MATHIEU_ROWS: [MathieuExpectation; 6] = [
    MathieuExpectation {
        n: 24,
        ord: 2,
        i_x: 15,
        t: 5,
        k: 8,
        lambda_t: 1,
        aut_order: 244_823_040,
        stab_order: 322_560,
    },
    MathieuExpectation {
        n: 24,
        ord: 3,
        i_x: 2,
        t: 5,
        k: 6,
        lambda_t: 16,
        aut_order: 244_823_040,
        stab_order: 2_160,
    },
    MathieuExpectation {
        n: 23,
        ord: 2,
        i_x: 15,
        t: 4,
        k: 7,
        lambda_t: 1,
        aut_order: 10_200_960,
        stab_order: 40_320,
    },
    MathieuExpectation {
        n: 23,
        ord: 3,
        i_x: 2,
        t: 4,
        k: 5,
        lambda_t: 16,
        aut_order: 10_200_960,
        stab_order: 360,
    },
    MathieuExpectation {
        n: 22,
        ord: 2,
        i_x: 15,
        t: 3,
        k: 6,
        lambda_t: 1,
        aut_order: 887_040,
        stab_order: 5_760,
    },
    MathieuExpectation {
        n: 22,
        ord: 3,
        i_x: 2,
        t: 3,
        k: 4,
        lambda_t: 16,
        aut_order: 887_040,
        stab_order: 72,
    },
];

pub fn mathieu_expectation(n: usize, ord: u64) -> Option<MathieuExpectation> {
    MATHIEU_ROWS
        .iter()
        .copied()
        .find(|e| e.n == n && e.ord == ord)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MathieuRow {
    pub group: String,
    pub subgroup: GroupRecipe,
    pub ord: u64,
    pub element: Permutation,
    pub design: DesignParams,
    pub i_x: usize,
    pub reduced: DesignParams,
    pub dual_t: usize,
    pub dual_v: usize,
    pub dual_b: usize,
    pub dual_k: usize,
    pub dual_lambda_t: Option<u64>,
    pub dual_max_multiplicity: usize,
    pub aut_order: String,
    pub aut_complete: bool,
    pub aut_nodes: u64,
    /// Every generator of `G`, acting on the dual points, is an
    /// automorphism of the dual design.
    pub group_embeds: bool,
    pub dual_point_transitive: bool,
    pub dual_block_transitive: bool,
    pub dual_block_stabilizer_order: u128,
    pub dual_block_primitivity: Primitivity,
    pub stab: StabReport,
    pub checks: Vec<Check>,
}

/// Full pipeline for `G = M_n` (given as a group on `n` points), `M` the
/// stabilizer of point 0, and `g ∈ M` of order `ord`.
pub fn run_mathieu_row(
    name: &str,
    group: &PermGroup,
    ord: u64,
    opts: &CaseOptions,
) -> Result<MathieuRow> {
    let n = group.degree();
    let sub = atlas::point_stabilizer_subgroup(group, 0)?;
    let mut r = rng(opts.seed);
    let g = sub.element_of_order(ord, None, &mut r, 100_000)?;
    let d = method2_design(group, &sub, &g, opts.orbit_cap)?;
    let red = d.design.reduce()?;
    let dual = red.quotient.dual();
    let t = n.saturating_sub(19).max(1);
    let dual_lambda_t = match dual.t_design_lambda(t, opts.tally_budget)? {
        TDesignOutcome::Uniform { lambda } => Some(lambda),
        TDesignOutcome::NotUniform { .. } => None,
    };
    let aut = aut_group(&dual, opts.aut_budget)?;

    // G on the dual points = blocks of the original design
    let on_blocks = action_on_blocks(&d)?;
    let group_embeds = on_blocks
        .generators()
        .iter()
        .all(|p| is_design_automorphism(&dual, p));
    let dual_block0 = dual.block(0).to_vec();
    let (_, block_stab) = crate::action::orbit_with_stabilizer(
        &on_blocks,
        &StandardAction,
        ActionObject::point_set(dual_block0),
        opts.orbit_cap,
        opts.seed,
    )?;
    let stab = verify_stabilizer_structure(group, &sub, &d, &red, opts)?;
    let on_classes = generators_on_classes(&d, &red)?;
    let classes_transitive = transitive_on(red.classes.len(), &on_classes);
    let s_x_on_classes = stab
        .s_x
        .as_ref()
        .expect("stabilizer computed")
        .generators()
        .iter()
        .map(|s| element_on_classes(&d, &red, s))
        .collect::<Result<Vec<_>>>()?;
    let prim = primitivity(red.classes.len(), &on_classes, &s_x_on_classes);

    let aut_order_u = aut.order_u128();
    let mut checks = Vec::new();
    let dual_k = dual.block(0).len();
    let group_order = group.order();
    if let Some(e) = mathieu_expectation(n, ord) {
        let tag = alloc::format!("mathieu-{n}-{ord}");
        checks.push(Check::eq(
            alloc::format!("{tag}.i-x"),
            e.i_x,
            red.class_size,
        ));
        checks.push(Check::eq(
            alloc::format!("{tag}.dual-design"),
            alloc::format!("{}-({},{},{})", e.t, e.n, e.k, e.lambda_t),
            alloc::format!(
                "{}-({},{},{})",
                t,
                dual.v(),
                dual_k,
                dual_lambda_t.map_or("not uniform".to_string(), |l| l.to_string())
            ),
        ));
        checks.push(Check::eq(
            alloc::format!("{tag}.dual-block-stabilizer"),
            e.stab_order,
            block_stab.order(),
        ));
        if aut.complete {
            checks.push(Check::eq(
                alloc::format!("{tag}.aut-order"),
                e.aut_order.to_string(),
                aut.order.to_string(),
            ));
        } else {
            // property fallback when the search budget binds
            checks.push(Check::holds(
                alloc::format!("{tag}.group-embeds"),
                group_embeds,
            ));
            checks.push(Check::holds(
                alloc::format!("{tag}.transitive"),
                on_blocks.is_transitive() && classes_transitive,
            ));
        }
    }
    checks.push(Check::holds("dual.group-embeds", group_embeds));
    checks.push(Check::holds(
        "dual.g-transitive-on-dual-blocks",
        classes_transitive,
    ));
    if aut.complete {
        checks.push(Check::holds(
            "dual.aut-order-divisible-by-group",
            aut_order_u.is_some_and(|o| o % group_order == 0),
        ));
    }
    checks.extend(stab.checks.iter().cloned());
    Ok(MathieuRow {
        group: name.into(),
        subgroup: GroupRecipe::PointStabilizer {
            parent: Box::new(GroupRecipe::FromFile { name: name.into() }),
            point: 0,
        },
        ord,
        element: g,
        design: d.params,
        i_x: red.class_size,
        reduced: red.quotient.validate_1design()?,
        dual_t: t,
        dual_v: dual.v(),
        dual_b: dual.b(),
        dual_k,
        dual_lambda_t,
        dual_max_multiplicity: dual.max_multiplicity(),
        aut_order: aut.order.to_string(),
        aut_complete: aut.complete,
        aut_nodes: aut.nodes,
        group_embeds,
        dual_point_transitive: aut.point_transitive,
        dual_block_transitive: aut.block_transitive,
        dual_block_stabilizer_order: block_stab.order(),
        dual_block_primitivity: prim,
        stab,
        checks,
    })
}

/// Kind of element `g ∈ M` used for a PSL(2,q^2) design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    Involution,
    Unipotent,
    /// Lies in a torus of order `q - 1` of M.
    SplitSemisimple,
    /// Lies in a torus of order `q + 1` of M.
    NonSplitSemisimple,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PslDesignReport {
    pub kind: ElementKind,
    pub order: u64,
    pub element: Permutation,
    pub params: DesignParams,
    pub expected_params: String,
    /// Sizes of the I-classes, deduplicated.
    pub i_x_sizes: Vec<usize>,
    pub i_x: usize,
    /// Whether `I_x = {x, x^-1}`; semisimple elements only.
    pub i_x_is_inverse_pair: Option<bool>,
    pub reduced: DesignParams,
    pub expected_reduced: Option<String>,
    /// Unipotent only: order of the stabilizer of the fixed point of `x`
    /// (a Borel subgroup) and whether it contains `Stab_G(I_x)`.
    pub borel_order: Option<u128>,
    pub i_x_stabilizer_in_borel: Option<bool>,
    /// Random elements of `G` whose conjugation lifts to the design.
    pub inner_samples: usize,
    pub inner_lifted: usize,
    pub stab: StabReport,
    pub checks: Vec<Check>,
}

/// One conjugacy class of `G` and the value of `1_M^G` on it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharRow {
    pub order: u64,
    pub class_size: usize,
    pub meets_subgroup: bool,
    /// For unipotent classes: whether `x ↦ x + t` with `t` square.
    pub unipotent_squared: Option<bool>,
    pub fixed_cosets: u64,
    pub class_count: u64,
    /// Value with conditions `ord | (q∓1)/2`, `q` on every unipotent class.
    pub printed_formula: u64,
    /// Value with conditions `ord | q∓1`, zero on classes missing M.
    pub torus_formula: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PslVariantReport {
    pub variant: Pgl2Variant,
    pub subgroup_order: u128,
    pub index: u128,
    pub designs: Vec<PslDesignReport>,
    pub characters: Vec<CharRow>,
    pub printed_formula_matches: bool,
    pub torus_formula_matches: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PslReport {
    pub q: u64,
    pub group_order: u128,
    pub variants: Vec<PslVariantReport>,
}

impl PslReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.variants.iter().flat_map(|v| v.checks.iter())
    }
}

/// Divisors `d > 2` of `n`.
fn divisors_above_two(n: u64) -> Vec<u64> {
    (3..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `G = PSL(2,q^2)` with both classes of `M ≅ PGL(2,q)`: designs from an
/// involution, a unipotent element and every admissible semisimple order,
/// and `1_M^G` on every class of `G`.
pub fn run_psl2_family(q: u64, opts: &CaseOptions) -> Result<PslReport> {
    let (p, _) = crate::util::prime_power(q)
        .filter(|&(p, _)| p != 2)
        .ok_or_else(|| {
            Error::InvalidArgument(alloc::format!("q = {q} must be an odd prime power"))
        })?;
    let big = FieldSpec::of_order(q * q)?;
    let group = build_psl2(q * q)?;
    let classes = all_classes(&group, opts)?;
    let mut variants = Vec::new();
    for variant in [Pgl2Variant::Squared, Pgl2Variant::NonSquared] {
        let sub = embed_pgl2(q, variant)?;
        if !sub.is_subgroup_of(&group) {
            return Err(Error::InternalInconsistency(
                "PGL(2,q) not inside PSL(2,q^2)".into(),
            ));
        }
        let index = group.order() / sub.order();
        let tag = alloc::format!(
            "psl2.q{q}.{}",
            match variant {
                Pgl2Variant::Squared => "squared",
                Pgl2Variant::NonSquared => "non-squared",
            }
        );
        let mut checks = alloc::vec![Check::eq(
            alloc::format!("{tag}.index"),
            (q * (q * q + 1) / 2) as u128,
            index
        )];

        // permutation character on every class
        let cosets = coset_action(&group, &sub, opts.orbit_cap)?;
        let mut characters = Vec::new();
        for class in &classes {
            let g = class.get(0);
            let d = g.order();
            let value = perm_char_value(&group, &sub, &cosets, g, opts.orbit_cap)?;
            let meets = class.elements().iter().any(|h| sub.contains(h));
            let unipotent_squared = if d == p {
                unipotent_is_squared(&big, g)?
            } else {
                None
            };
            let printed = if d == 1 {
                index as u64
            } else if d == 2 || d == p {
                q
            } else if ((q - 1) / 2).is_multiple_of(d) {
                q.div_ceil(2)
            } else if q.div_ceil(2).is_multiple_of(d) {
                (q - 1) / 2
            } else {
                0
            };
            let torus = if d == 1 {
                index as u64
            } else if !meets {
                0
            } else if d == 2 || d == p {
                q
            } else if (q - 1).is_multiple_of(d) {
                q.div_ceil(2)
            } else if (q + 1).is_multiple_of(d) {
                (q - 1) / 2
            } else {
                0
            };
            checks.push(Check::holds(
                alloc::format!(
                    "{tag}.perm-char.routes-agree.order-{d}.size-{}",
                    class.len()
                ),
                value.agree(),
            ));
            characters.push(CharRow {
                order: d,
                class_size: class.len(),
                meets_subgroup: meets,
                unipotent_squared,
                fixed_cosets: value.by_fixed_cosets,
                class_count: value.by_class_count,
                printed_formula: printed,
                torus_formula: torus,
            });
        }
        let printed_formula_matches = characters
            .iter()
            .all(|c| c.fixed_cosets == c.printed_formula);
        let torus_formula_matches = characters.iter().all(|c| c.fixed_cosets == c.torus_formula);
        checks.push(Check::holds(
            alloc::format!("{tag}.perm-char.formula-by-count"),
            printed_formula_matches || torus_formula_matches,
        ));
        if let Some(squared) = characters
            .iter()
            .filter(|c| c.meets_subgroup)
            .find_map(|c| c.unipotent_squared)
        {
            checks.push(Check::eq(
                alloc::format!("{tag}.unipotent-class"),
                variant == Pgl2Variant::Squared,
                squared,
            ));
        }

        // designs
        let mut r = rng(opts.seed);
        let mut wanted: Vec<(ElementKind, u64)> =
            alloc::vec![(ElementKind::Involution, 2), (ElementKind::Unipotent, p)];
        wanted.extend(
            divisors_above_two(q - 1)
                .into_iter()
                .map(|d| (ElementKind::SplitSemisimple, d)),
        );
        wanted.extend(
            divisors_above_two(q + 1)
                .into_iter()
                .map(|d| (ElementKind::NonSplitSemisimple, d)),
        );
        let mut designs = Vec::new();
        for (kind, d) in wanted {
            let g = sub.element_of_order(d, None, &mut r, 100_000)?;
            let report = psl_design(&group, &sub, &g, kind, q, opts)?;
            checks.extend(report.checks.iter().map(|c| Check {
                claim: alloc::format!("{tag}.{}", c.claim),
                ..c.clone()
            }));
            designs.push(report);
        }
        variants.push(PslVariantReport {
            variant,
            subgroup_order: sub.order(),
            index,
            designs,
            characters,
            printed_formula_matches,
            torus_formula_matches,
            checks,
        });
    }
    Ok(PslReport {
        q,
        group_order: group.order(),
        variants,
    })
}

/// Conjugacy classes of a small group, identity first.
fn all_classes(group: &PermGroup, opts: &CaseOptions) -> Result<Vec<Orbit<Permutation>>> {
    let limit = usize::try_from(group.order()).unwrap_or(usize::MAX);
    if group.order() > opts.orbit_cap as u128 {
        return Err(Error::OrbitOverflow {
            cap: opts.orbit_cap,
        });
    }
    let mut elems = group.elements(limit);
    elems.sort();
    let mut seen = new_set();
    let mut out = Vec::new();
    for g in &elems {
        if seen.contains(g) {
            continue;
        }
        let class = crate::action::conjugacy_class(group, g, opts.orbit_cap)?;
        seen.extend(class.elements().iter().cloned());
        out.push(class);
    }
    out.sort_by_key(|c| (c.get(0).order(), c.len()));
    Ok(out)
}

fn psl_design(
    group: &PermGroup,
    sub: &PermGroup,
    g: &Permutation,
    kind: ElementKind,
    q: u64,
    opts: &CaseOptions,
) -> Result<PslDesignReport> {
    let d = method2_design(group, sub, g, opts.orbit_cap)?;
    let red = d.design.reduce()?;
    let stab = verify_stabilizer_structure(group, sub, &d, &red, opts)?;
    let mut sizes: Vec<usize> = red.classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let reduced = red.quotient.validate_1design()?;
    let i_x = red.class_containing(0).to_vec();
    let ord = g.order();
    let q2 = q * q;
    let label = match kind {
        ElementKind::Involution => "involution".to_string(),
        ElementKind::Unipotent => "unipotent".to_string(),
        ElementKind::SplitSemisimple => alloc::format!("split-{ord}"),
        ElementKind::NonSplitSemisimple => alloc::format!("non-split-{ord}"),
    };
    let (expected_params, expected_i_x, expected_reduced) = match kind {
        ElementKind::Involution => (
            triple(q2 * (q2 + 1) / 2, q2, q),
            if q == 3 { 3 } else { 1 },
            None,
        ),
        ElementKind::Unipotent => (
            triple((q2 * q2 - 1) / 2, q2 - 1, q),
            (q - 1) as usize,
            Some(triple((q2 + 1) * (q + 1) / 2, q + 1, q)),
        ),
        ElementKind::SplitSemisimple => (
            triple(q2 * (q2 + 1), q * (q + 1), q.div_ceil(2)),
            2,
            Some(triple(q2 * (q2 + 1) / 2, q * (q + 1) / 2, q.div_ceil(2))),
        ),
        ElementKind::NonSplitSemisimple => (
            triple(q2 * (q2 + 1), q * (q - 1), (q - 1) / 2),
            2,
            Some(triple(q2 * (q2 + 1) / 2, q * (q - 1) / 2, (q - 1) / 2)),
        ),
    };
    let i_x_is_inverse_pair = match kind {
        ElementKind::SplitSemisimple | ElementKind::NonSplitSemisimple => {
            let inv = d.class.position(&g.inverse()).map(|i| i as u32);
            let mut pair = alloc::vec![0u32];
            pair.extend(inv);
            pair.sort_unstable();
            Some(pair == i_x)
        }
        _ => None,
    };
    let mut checks = alloc::vec![
        Check::eq(
            alloc::format!("{label}.params"),
            expected_params.clone(),
            params_str(&d.params)
        ),
        Check::eq(alloc::format!("{label}.i-x"), expected_i_x, i_x.len()),
        Check::eq(alloc::format!("{label}.i-x-constant"), 1, sizes.len()),
    ];
    if let Some(e) = &expected_reduced {
        checks.push(Check::eq(
            alloc::format!("{label}.reduced"),
            e.clone(),
            params_str(&reduced),
        ));
    }
    if let Some(ok) = i_x_is_inverse_pair {
        checks.push(Check::holds(alloc::format!("{label}.i-x-inverse-pair"), ok));
    }
    let (mut borel_order, mut i_x_stabilizer_in_borel) = (None, None);
    if kind == ElementKind::Unipotent {
        if let (Some(s_x), [fixed]) = (&stab.s_x, g.fixed_points().as_slice()) {
            let borel = group.point_stabilizer(*fixed)?;
            borel_order = Some(borel.order());
            i_x_stabilizer_in_borel = Some(s_x.is_subgroup_of(&borel));
        }
        checks.push(Check::eq(
            alloc::format!("{label}.i-x-stabilizer-borel"),
            (q2 * (q2 - 1) / 2) as u128,
            stab.s_x_order,
        ));
    }
    let inner_lifted = inner_lift_count(group, INNER_SAMPLES, opts.seed, |x| {
        lift_test_method2(&d, x).is_some()
    });
    checks.push(Check::eq(
        alloc::format!("{label}.inner-lifts"),
        INNER_SAMPLES,
        inner_lifted,
    ));
    checks.extend(stab.checks.iter().map(|c| Check {
        claim: alloc::format!("{label}.{}", c.claim),
        ..c.clone()
    }));
    Ok(PslDesignReport {
        kind,
        order: ord,
        element: g.clone(),
        params: d.params,
        expected_params,
        i_x_sizes: sizes,
        i_x: i_x.len(),
        i_x_is_inverse_pair,
        reduced,
        expected_reduced,
        borel_order,
        i_x_stabilizer_in_borel,
        inner_samples: INNER_SAMPLES,
        inner_lifted,
        stab,
        checks,
    })
}

/// How many of `samples` random elements of `group` pass `lifts`.
pub fn inner_lift_count(
    group: &PermGroup,
    samples: usize,
    seed: u64,
    mut lifts: impl FnMut(&Permutation) -> bool,
) -> usize {
    let mut r = rng(seed);
    (0..samples)
        .filter(|_| lifts(&group.random_element(&mut r)))
        .count()
}

/// PSL(2,9) with `M ≅ S4` from the squared PGL(2,3), on its involutions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvolutionExampleReport {
    pub params: DesignParams,
    pub blocks: usize,
    pub i_x: usize,
    pub reduced: DesignParams,
    pub quotient: QuotientReport,
    pub frobenius_normalizes: bool,
    pub frobenius_lifts: bool,
    pub diagonal_normalizes: bool,
    pub diagonal_lifts: bool,
    pub inner_samples: usize,
    pub inner_lifted: usize,
    pub s_of_i_intersection: SIntersectionReport,
    pub stab: StabReport,
    pub checks: Vec<Check>,
}

pub fn run_involution_example(opts: &CaseOptions) -> Result<InvolutionExampleReport> {
    const SAMPLES: usize = INNER_SAMPLES;
    let field = FieldSpec::of_order(9)?;
    let group = build_psl2(9)?;
    let sub = embed_pgl2(3, Pgl2Variant::Squared)?;
    let mut r = rng(opts.seed);
    let g = sub.element_of_order(2, None, &mut r, 10_000)?;
    let d = method2_design(&group, &sub, &g, opts.orbit_cap)?;
    let red = d.design.reduce()?;
    let reduced = red.quotient.validate_1design()?;
    let quotient = verify_aut_quotient(&d.design, &red, opts.aut_budget)?;
    let stab = verify_stabilizer_structure(&group, &sub, &d, &red, opts)?;

    let frobenius = frobenius_on_projline(&field, 1);
    let (zero, nu) = (field.zero(), field.non_square()?);
    let diagonal = mobius(&field, &nu, &zero, &zero, &field.one())?;
    let frobenius_lift = lift_test_method2(&d, &frobenius);
    let diagonal_lift = lift_test_method2(&d, &diagonal);
    let inner_lifted = inner_lift_count(&group, SAMPLES, opts.seed, |x| {
        lift_test_method2(&d, x).is_some()
    });

    let mut lifted = group
        .generators()
        .iter()
        .map(|x| d.induced_point_map(x))
        .collect::<Result<Vec<_>>>()?;
    lifted.extend(frobenius_lift.clone());
    let s_of_i_intersection = verify_s_i_intersection(&d.design, &lifted);

    let s_order = BigUint::from(6u32).pow(15);
    let checks = alloc::vec![
        Check::eq(
            "involution-example.params",
            "1-(45,9,3)".to_string(),
            params_str(&d.params)
        ),
        Check::eq("involution-example.blocks", 15, d.design.b()),
        Check::eq("involution-example.i-x", 3, red.class_size),
        Check::eq(
            "involution-example.reduced",
            "1-(15,3,3)".to_string(),
            params_str(&reduced)
        ),
        Check::eq(
            "involution-example.aut-order",
            (&s_order * BigUint::from(720u32)).to_string(),
            quotient.aut_order.to_string(),
        ),
        Check::eq(
            "involution-example.reduced-aut-order",
            "720".to_string(),
            quotient.reduced_aut_order.to_string()
        ),
        Check::holds(
            "involution-example.orders-multiply",
            quotient.orders_multiply
        ),
        Check::holds(
            "involution-example.reduced-generators-lift",
            quotient.reduced_generators_lift
        ),
        Check::holds(
            "involution-example.s-of-i-fixes-blocks",
            quotient.s_of_i_fixes_blocks
        ),
        Check::holds(
            "involution-example.block-kernel-is-s-of-i",
            quotient.block_kernel_is_s_of_i == Some(true),
        ),
        Check::holds(
            "involution-example.frobenius-lifts",
            frobenius_lift.is_some()
        ),
        Check::holds(
            "involution-example.diagonal-does-not-lift",
            diagonal_lift.is_none()
        ),
        Check::eq("involution-example.inner-lifts", SAMPLES, inner_lifted),
        Check::holds(
            "involution-example.s-of-i-meets-lifts-trivially",
            s_of_i_intersection.trivial_intersection
        ),
    ];
    Ok(InvolutionExampleReport {
        params: d.params,
        blocks: d.design.b(),
        i_x: red.class_size,
        reduced,
        quotient,
        frobenius_normalizes: atlas::normalizes(&group, &frobenius),
        frobenius_lifts: frobenius_lift.is_some(),
        diagonal_normalizes: atlas::normalizes(&group, &diagonal),
        diagonal_lifts: diagonal_lift.is_some(),
        inner_samples: SAMPLES,
        inner_lifted,
        s_of_i_intersection,
        stab,
        checks,
    })
}

/// One stabilizer-orbit design with its automorphism group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitDesignReport {
    pub orbit_index: usize,
    pub params: DesignParams,
    pub aut_order: String,
    pub aut_complete: bool,
    pub aut_nodes: u64,
    pub inner_lifted: usize,
    /// Whether a supplied outer map lifts, when one was tested.
    pub outer_lifts: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExamplesReport {
    /// PSL(2,27) on the cosets of D26: `(orbit length, count)`, trivial
    /// orbit included.
    pub psl27_census: Vec<(usize, usize)>,
    pub psl27_designs: Vec<OrbitDesignReport>,
    /// `(aut order, count)` over the designs from orbits of length 13.
    pub psl27_distribution: Vec<(String, usize)>,
    pub a6_natural: OrbitDesignReport,
    pub a6_on_s4_cosets: OrbitDesignReport,
    pub a9_on_pgaml28_cosets: OrbitDesignReport,
    pub checks: Vec<Check>,
    /// Checks that do not gate success.
    pub stretch_checks: Vec<Check>,
}

const INNER_SAMPLES: usize = 100;

fn orbit_design(
    acting: &PermGroup,
    orbit_size: usize,
    orbit_index: usize,
    outer: Option<&Permutation>,
    opts: &CaseOptions,
) -> Result<OrbitDesignReport> {
    let m1 = method1_design(
        acting,
        0,
        OrbitSelector {
            size: orbit_size,
            index: orbit_index,
        },
        opts.orbit_cap,
    )?;
    let aut = aut_group(&m1.design, opts.aut_budget)?;
    let inner_lifted = inner_lift_count(acting, INNER_SAMPLES, opts.seed, |x| {
        lift_test_method1(&m1.design, x)
    });
    Ok(OrbitDesignReport {
        orbit_index,
        params: m1.params,
        aut_order: aut.order.to_string(),
        aut_complete: aut.complete,
        aut_nodes: aut.nodes,
        inner_lifted,
        outer_lifts: outer.map(|phi| lift_test_method1(&m1.design, phi)),
    })
}

fn census(orbits: &[Vec<u32>]) -> Vec<(usize, usize)> {
    let mut counts: alloc::collections::BTreeMap<usize, usize> = Default::default();
    for o in orbits {
        *counts.entry(o.len()).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// Stabilizer-orbit designs from PSL(2,27) on the cosets of `D26`, from
/// A6 in two actions, and from A9 on the cosets of PΓL(2,8).
pub fn run_examples(opts: &CaseOptions) -> Result<ExamplesReport> {
    let mut checks = Vec::new();
    let mut stretch_checks = Vec::new();

    // PSL(2,27), M = N(<g>) for g of order 13
    let field = FieldSpec::of_order(27)?;
    let psl = build_psl2(27)?;
    let mut r = rng(opts.seed);
    let g13 = psl.element_of_order(13, None, &mut r, 100_000)?;
    let dihedral = normalizer_of_cyclic(&psl, &g13)?;
    let cosets = coset_action(&psl, &dihedral, opts.orbit_cap)?;
    let frobenius =
        induced_on_cosets(&cosets, &frobenius_on_projline(&field, 1)).ok_or_else(|| {
            Error::InternalInconsistency("Frobenius does not act on the cosets".into())
        })?;
    let orbits = stabilizer_orbits(&cosets.group, 0)?;
    let psl27_census = census(&orbits);
    let mut psl27_designs = Vec::new();
    let thirteen = orbits.iter().filter(|o| o.len() == 13).count();
    for i in 0..thirteen {
        psl27_designs.push(orbit_design(&cosets.group, 13, i, Some(&frobenius), opts)?);
    }
    let mut dist: alloc::collections::BTreeMap<String, usize> = Default::default();
    for d in &psl27_designs {
        *dist.entry(d.aut_order.clone()).or_default() += 1;
    }
    let mut psl27_distribution: Vec<(String, usize)> = dist.into_iter().collect();
    psl27_distribution.sort_by(|(a, _), (b, _)| (a.len(), a).cmp(&(b.len(), b)));
    let big_order = (9828u128 * 6).to_string();
    checks.push(Check::eq("psl27.degree", 378, cosets.degree()));
    checks.push(Check::eq(
        "psl27.census",
        "1x1 13x13 8x26".to_string(),
        psl27_census
            .iter()
            .map(|(l, c)| alloc::format!("{c}x{l}"))
            .collect::<Vec<_>>()
            .join(" "),
    ));
    checks.push(Check::eq(
        "psl27.aut-distribution",
        alloc::format!("12x9828 1x{big_order}"),
        psl27_distribution
            .iter()
            .map(|(o, c)| alloc::format!("{c}x{o}"))
            .collect::<Vec<_>>()
            .join(" "),
    ));
    checks.push(Check::holds(
        "psl27.designs-complete",
        psl27_designs.iter().all(|d| d.aut_complete),
    ));
    checks.push(Check::holds(
        "psl27.params",
        psl27_designs
            .iter()
            .all(|d| params_str(&d.params) == "1-(378,13,13)"),
    ));
    let lifting: Vec<&OrbitDesignReport> = psl27_designs
        .iter()
        .filter(|d| d.outer_lifts == Some(true))
        .collect();
    checks.push(Check::eq("psl27.frobenius-lifts-once", 1, lifting.len()));
    checks.push(Check::holds(
        "psl27.frobenius-lifts-on-largest-aut",
        lifting.len() == 1 && lifting[0].aut_order == big_order,
    ));
    checks.push(Check::holds(
        "psl27.inner-lifts",
        psl27_designs
            .iter()
            .all(|d| d.inner_lifted == INNER_SAMPLES),
    ));

    // A6 natural
    let a6 = build_alternating(6)?;
    let a6_natural = orbit_design(&a6, 5, 0, None, opts)?;
    checks.push(Check::eq(
        "a6-natural.params",
        "1-(6,5,5)".to_string(),
        params_str(&a6_natural.params),
    ));
    checks.push(Check::eq(
        "a6-natural.aut-order",
        "720".to_string(),
        a6_natural.aut_order.clone(),
    ));
    checks.push(Check::eq(
        "a6-natural.inner-lifts",
        INNER_SAMPLES,
        a6_natural.inner_lifted,
    ));

    // A6 on the 15 cosets of a transitive S4
    let s4 = atlas::a6_transitive_s4()?;
    let a6_cosets = coset_action(&a6, &s4, opts.orbit_cap)?;
    let a6_on_s4_cosets = orbit_design(&a6_cosets.group, 8, 0, None, opts)?;
    checks.push(Check::eq(
        "a6-s4.params",
        "1-(15,8,8)".to_string(),
        params_str(&a6_on_s4_cosets.params),
    ));
    checks.push(Check::eq(
        "a6-s4.aut-order",
        "20160".to_string(),
        a6_on_s4_cosets.aut_order.clone(),
    ));
    checks.push(Check::eq(
        "a6-s4.inner-lifts",
        INNER_SAMPLES,
        a6_on_s4_cosets.inner_lifted,
    ));

    // A9 on the 120 cosets of PΓL(2,8)
    let a9 = build_alternating(9)?;
    let pgaml = build_psl2_with_frobenius(8)?;
    if !pgaml.is_subgroup_of(&a9) {
        return Err(Error::InternalInconsistency(
            "PΓL(2,8) is not inside A9".into(),
        ));
    }
    let a9_cosets = coset_action(&a9, &pgaml, opts.orbit_cap)?;
    let a9_design = orbit_design(&a9_cosets.group, 56, 0, None, opts)?;
    checks.push(Check::eq(
        "a9.params",
        "1-(120,56,56)".to_string(),
        params_str(&a9_design.params),
    ));
    checks.push(Check::eq(
        "a9.inner-lifts",
        INNER_SAMPLES,
        a9_design.inner_lifted,
    ));
    stretch_checks.push(Check::eq(
        "a9.aut-order",
        "348364800".to_string(),
        a9_design.aut_order.clone(),
    ));

    Ok(ExamplesReport {
        psl27_census,
        psl27_designs,
        psl27_distribution,
        a6_natural,
        a6_on_s4_cosets,
        a9_on_pgaml28_cosets: a9_design,
        checks,
        stretch_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::build_symmetric;

    fn d8() -> Vec<Permutation> {
        alloc::vec![
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[1, 3]]).unwrap(),
        ]
    }

    #[test]
    fn dihedral_square_has_diagonal_blocks() {
        let gens = d8();
        assert_eq!(minimal_block_size(4, &gens, 0, 2), 2);
        assert_eq!(minimal_block_size(4, &gens, 0, 1), 4);
        let stab = [Permutation::from_cycles(4, &[&[1, 3]]).unwrap()];
        let p = primitivity(4, &gens, &stab);
        assert!(!p.primitive);
        assert_eq!(p.block_size, Some(2));
    }

    #[test]
    fn symmetric_group_is_primitive() {
        let s4 = build_symmetric(4).unwrap();
        let stab = s4.point_stabilizer(0).unwrap();
        let p = primitivity(4, s4.generators(), stab.generators());
        assert!(p.primitive);
        let mut lens = p.suborbit_lengths.clone();
        lens.sort_unstable();
        assert_eq!(lens, alloc::vec![1, 3]);
    }

    #[test]
    fn check_records_mismatch() {
        let c = Check::eq("x", 3, 4);
        assert!(!c.pass);
        assert_eq!((c.expected.as_str(), c.observed.as_str()), ("3", "4"));
        assert!(all_pass(&[Check::holds("y", true)]));
    }

    #[test]
    fn involution_example_passes() {
        let report = run_involution_example(&CaseOptions::default()).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    /// Brute-force setwise stabilizer, under conjugation, of the I-class of
    /// a unipotent element of PGL(2,3) inside PSL(2,9).
    #[test]
    fn unipotent_class_stabilizer_by_enumeration() {
        let q = 3u64;
        let group = build_psl2(q * q).unwrap();
        let sub = embed_pgl2(q, Pgl2Variant::Squared).unwrap();
        let mut r = rng(5);
        let g = sub.element_of_order(q, None, &mut r, 10_000).unwrap();
        let d = method2_design(&group, &sub, &g, 1 << 20).unwrap();
        let red = d.design.reduce().unwrap();
        let i_x: Vec<Permutation> = red
            .class_containing(0)
            .iter()
            .map(|&i| d.class.get(i as usize).clone())
            .collect();
        assert_eq!(i_x.len(), (q - 1) as usize);
        let all = group.elements(usize::MAX);
        assert_eq!(all.len(), 360);
        let stabilizing = all
            .iter()
            .filter(|h| i_x.iter().all(|y| i_x.contains(&y.conjugate_by(h))))
            .count() as u128;
        assert_eq!(stabilizing, (q * q * (q - 1)) as u128);
        let stab =
            verify_stabilizer_structure(&group, &sub, &d, &red, &CaseOptions::default()).unwrap();
        assert_eq!(stab.s_x_order, stabilizing);
    }

    /// With a single block through each pair, an element's I-class is its
    /// whole block, so order-4 semisimple elements at q = 3 do not give
    /// inverse pairs.
    #[test]
    fn order_four_at_three_has_block_sized_classes() {
        let report = run_psl2_family(3, &CaseOptions::default()).unwrap();
        let mut seen = 0;
        for d in report.variants.iter().flat_map(|v| &v.designs) {
            if d.order == 4 && d.kind != ElementKind::Unipotent {
                seen += 1;
                assert_eq!(d.params.lambda, 1);
                assert_eq!(d.i_x, d.params.k);
                assert_eq!(d.i_x_is_inverse_pair, Some(false));
            }
        }
        assert!(seen > 0);
    }
}
