//! Automorphism groups of incidence structures, lift tests for
//! automorphisms of the underlying group, and checks of the relation
//! between a design, its reduction and the block-fixing kernel S(I).
//!
//! The search works on the bipartite incidence graph whose vertices are the
//! points followed by the distinct blocks, blocks coloured by multiplicity.
//! It individualizes a vertex of the first smallest non-singleton cell
//! (preferring point cells), refines to an equitable partition and records
//! a trace of every split. The leftmost path fixes a base; each other
//! branch at level `l` is explored only if it is not already in the orbit
//! of a tried vertex under the automorphisms found so far (all of which fix
//! the first `l` base vertices), and branches whose trace departs from the
//! leftmost path are cut. A branch that reaches a leaf yields the candidate
//! map "leftmost leaf ↦ this leaf", kept if it preserves incidence. The
//! group order is the product of the basic orbit lengths along the base.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::construct::{CosetAction, Method2Design};
use crate::design::{IncidenceStructure, ReducedStructure};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::util::{new_map, HashMap, UnionFind};

/// Incidence graph: vertices `0..v` are points, `v..v+nb` distinct blocks.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    v: usize,
    blocks: Vec<Vec<u32>>,
    multiplicity: Vec<usize>,
    start: Vec<u32>,
    adj: Vec<u32>,
}

impl IncidenceGraph {
    pub fn new(d: &IncidenceStructure) -> Self {
        let v = d.v();
        let distinct = d.distinct_blocks();
        let n = v + distinct.len();
        let mut lists: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
        for (j, (block, _)) in distinct.iter().enumerate() {
            let bv = (v + j) as u32;
            for &p in block {
                lists[p as usize].push(bv);
                lists[bv as usize].push(p);
            }
        }
        let mut start = Vec::with_capacity(n + 1);
        let mut adj = Vec::new();
        start.push(0);
        for l in &lists {
            adj.extend_from_slice(l);
            start.push(adj.len() as u32);
        }
        let (blocks, multiplicity) = distinct.into_iter().unzip();
        IncidenceGraph {
            v,
            blocks,
            multiplicity,
            start,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.v + self.blocks.len()
    }

    pub fn point_count(&self) -> usize {
        self.v
    }

    /// Distinct blocks in vertex order (vertex `v + j` is block `j`).
    pub fn distinct_blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicity
    }

    fn nbrs(&self, u: u32) -> &[u32] {
        &self.adj[self.start[u as usize] as usize..self.start[u as usize + 1] as usize]
    }

    /// Whether the vertex map `gamma` preserves colours and adjacency.
    pub fn is_automorphism(&self, gamma: &[u32]) -> bool {
        let n = self.vertex_count();
        if gamma.len() != n {
            return false;
        }
        let mut mark = alloc::vec![u32::MAX; n];
        for u in 0..n as u32 {
            let gu = gamma[u as usize];
            if ((u as usize) < self.v) != ((gu as usize) < self.v) {
                return false;
            }
            if u as usize >= self.v
                && self.multiplicity[u as usize - self.v] != self.multiplicity[gu as usize - self.v]
            {
                return false;
            }
            let (a, b) = (self.nbrs(u), self.nbrs(gu));
            if a.len() != b.len() {
                return false;
            }
            for &x in b {
                mark[x as usize] = u;
            }
            if a.iter().any(|&x| mark[gamma[x as usize] as usize] != u) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// Vertex to the start position of its cell.
    cell: Vec<u32>,
    /// Cell start to cell end (exclusive); meaningful at cell starts only.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn members(&self, s: u32) -> &[u32] {
        &self.lab[s as usize..self.end[s as usize] as usize]
    }

    /// First smallest non-singleton cell among point cells, else overall.
    fn target_cell(&self, v: usize) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        let mut best_point: Option<(u32, u32)> = None;
        let mut s = 0usize;
        while s < self.lab.len() {
            let e = self.end[s] as usize;
            let size = (e - s) as u32;
            if size > 1 {
                if best.is_none_or(|(_, b)| size < b) {
                    best = Some((s as u32, size));
                }
                if s < v && best_point.is_none_or(|(_, b)| size < b) {
                    best_point = Some((s as u32, size));
                }
            }
            s = e;
        }
        best_point.or(best).map(|(s, _)| s)
    }
}

fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95)
}

enum Trace<'a> {
    Record(&'a mut Vec<u64>),
    Compare { expected: &'a [u64], at: usize },
}

impl Trace<'_> {
    fn event(&mut self, x: u64) -> bool {
        match self {
            Trace::Record(v) => {
                v.push(x);
                true
            }
            Trace::Compare { expected, at } => {
                let ok = expected.get(*at) == Some(&x);
                *at += 1;
                ok
            }
        }
    }

    fn finished(&self) -> bool {
        match self {
            Trace::Record(_) => true,
            Trace::Compare { expected, at } => *at == expected.len(),
        }
    }
}

struct Refiner<'g> {
    g: &'g IncidenceGraph,
    cnt: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g IncidenceGraph, budget: u64) -> Self {
        let n = g.vertex_count();
        Refiner {
            g,
            cnt: alloc::vec![0; n],
            touched: Vec::new(),
            in_queue: alloc::vec![false; n],
            nodes: 0,
            budget,
        }
    }

    fn exhausted(&self) -> bool {
        self.nodes > self.budget
    }

    /// Refines to the coarsest equitable partition below `p`, starting from
    /// the splitter cells in `queue`. Returns false on a trace mismatch.
    fn refine(&mut self, p: &mut Partition, init: &[u32], trace: &mut Trace<'_>) -> bool {
        self.nodes += 1;
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in init {
            if !self.in_queue[s as usize] {
                self.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut ok = true;
        let mut frag: Vec<(u32, u32, u32)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w as usize] = false;
            if !ok || p.is_discrete() {
                continue;
            }
            self.touched.clear();
            for i in w..p.end[w as usize] {
                let u = p.lab[i as usize];
                for &x in self.g.nbrs(u) {
                    if self.cnt[x as usize] == 0 {
                        self.touched.push(x);
                    }
                    self.cnt[x as usize] += 1;
                }
            }
            let mut cells: Vec<u32> = self.touched.iter().map(|&x| p.cell[x as usize]).collect();
            cells.sort_unstable();
            cells.dedup();
            for &s in &cells {
                let (su, eu) = (s as usize, p.end[s as usize] as usize);
                if eu - su == 1 {
                    ok &= trace.event(mix(s as u64, self.cnt[p.lab[su] as usize] as u64));
                    continue;
                }
                let cnt = &self.cnt;
                p.lab[su..eu].sort_by_key(|&x| cnt[x as usize]);
                frag.clear();
                let mut fs = su;
                for i in su + 1..=eu {
                    if i == eu || cnt[p.lab[i] as usize] != cnt[p.lab[fs] as usize] {
                        frag.push((fs as u32, i as u32, cnt[p.lab[fs] as usize]));
                        fs = i;
                    }
                }
                let mut h = mix(s as u64, frag.len() as u64);
                for &(a, b, c) in &frag {
                    h = mix(mix(h, c as u64), (b - a) as u64);
                }
                ok &= trace.event(h);
                for i in su..eu {
                    p.pos[p.lab[i] as usize] = i as u32;
                }
                if frag.len() == 1 {
                    continue;
                }
                for &(a, b, _) in &frag {
                    p.end[a as usize] = b;
                    for i in a..b {
                        p.cell[p.lab[i as usize] as usize] = a;
                    }
                }
                p.cells += frag.len() - 1;
                if self.in_queue[su] {
                    for &(a, _, _) in &frag[1..] {
                        self.in_queue[a as usize] = true;
                        queue.push_back(a);
                    }
                } else {
                    let largest = frag
                        .iter()
                        .enumerate()
                        .max_by(|x, y| {
                            (x.1 .1 - x.1 .0)
                                .cmp(&(y.1 .1 - y.1 .0))
                                .then(y.0.cmp(&x.0))
                        })
                        .map(|(i, _)| i)
                        .unwrap_or(0);
                    for (i, &(a, _, _)) in frag.iter().enumerate() {
                        if i != largest {
                            self.in_queue[a as usize] = true;
                            queue.push_back(a);
                        }
                    }
                }
            }
            for &x in &self.touched {
                self.cnt[x as usize] = 0;
            }
        }
        ok && trace.finished()
    }

    /// Makes `w` a singleton cell at the front of its cell, then refines.
    fn individualize(&mut self, p: &mut Partition, w: u32, trace: &mut Trace<'_>) -> bool {
        let s = p.cell[w as usize];
        let e = p.end[s as usize];
        let i = p.pos[w as usize];
        let other = p.lab[s as usize];
        p.lab.swap(s as usize, i as usize);
        p.pos[other as usize] = i;
        p.pos[w as usize] = s;
        p.end[s as usize] = s + 1;
        p.end[s as usize + 1] = e;
        for j in s + 1..e {
            p.cell[p.lab[j as usize] as usize] = s + 1;
        }
        p.cells += 1;
        if !trace.event(mix(0xa5a5, s as u64)) {
            return false;
        }
        self.refine(p, &[s], trace)
    }
}

struct PathLevel {
    part: Partition,
    target: u32,
    vertex: u32,
    trace: Vec<u64>,
}

/// Automorphism group of an incidence structure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutResult {
    /// Generators on points followed by distinct blocks.
    pub generators: Vec<Permutation>,
    /// The same generators restricted to the points.
    pub point_generators: Vec<Permutation>,
    /// Base of vertices fixed along the leftmost path.
    pub base: Vec<u32>,
    pub orbit_lengths: Vec<usize>,
    pub order: BigUint,
    pub point_transitive: bool,
    pub block_transitive: bool,
    /// False when the node budget ran out; generators are then a subgroup.
    pub complete: bool,
    pub nodes: u64,
}

impl AutResult {
    pub fn order_u128(&self) -> Option<u128> {
        let digits = self.order.to_u64_digits();
        match digits.len() {
            0 => Some(0),
            1 => Some(digits[0] as u128),
            2 => Some(digits[0] as u128 | (digits[1] as u128) << 64),
            _ => None,
        }
    }

    /// The point group as a permutation group.
    pub fn point_group(&self, v: usize) -> Result<PermGroup> {
        PermGroup::new(v, self.point_generators.clone())
    }
}

/// Full automorphism group of `d`, exploring at most `budget` refinement
/// nodes.
pub fn aut_group(d: &IncidenceStructure, budget: u64) -> Result<AutResult> {
    let g = IncidenceGraph::new(d);
    let n = g.vertex_count();
    let v = g.point_count();
    let mut rf = Refiner::new(&g, budget);

    // initial colours: points, then blocks by ascending multiplicity
    let mut lab: Vec<u32> = (0..v as u32).collect();
    let mut blocks: Vec<u32> = (v as u32..n as u32).collect();
    blocks.sort_by_key(|&b| g.multiplicity[b as usize - v]);
    lab.extend(blocks);
    let mut part = Partition {
        pos: alloc::vec![0; n],
        cell: alloc::vec![0; n],
        end: alloc::vec![0; n],
        lab,
        cells: 0,
    };
    let mut starts = Vec::new();
    let mut s = 0usize;
    while s < n {
        let colour = |x: u32| {
            if (x as usize) < v {
                0
            } else {
                1 + g.multiplicity[x as usize - v]
            }
        };
        let c = colour(part.lab[s]);
        let mut e = s;
        while e < n && colour(part.lab[e]) == c {
            e += 1;
        }
        for i in s..e {
            part.pos[part.lab[i] as usize] = i as u32;
            part.cell[part.lab[i] as usize] = s as u32;
        }
        part.end[s] = e as u32;
        part.cells += 1;
        starts.push(s as u32);
        s = e;
    }
    let mut root_trace = Vec::new();
    rf.refine(&mut part, &starts, &mut Trace::Record(&mut root_trace));

    // leftmost path
    let mut path: Vec<PathLevel> = Vec::new();
    let mut cur = part;
    while let Some(t) = cur.target_cell(v) {
        let vertex = *cur.members(t).iter().min().expect("nonempty cell");
        let mut next = cur.clone();
        let mut trace = Vec::new();
        rf.individualize(&mut next, vertex, &mut Trace::Record(&mut trace));
        path.push(PathLevel {
            part: cur,
            target: t,
            vertex,
            trace,
        });
        cur = next;
    }
    let leaf = cur.lab;

    let mut search = Search {
        rf,
        path: &path,
        leaf: &leaf,
        g: &g,
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit_lengths = alloc::vec![1usize; path.len()];
    let mut complete = !search.rf.exhausted();
    'levels: for l in (0..path.len()).rev() {
        let mut uf = UnionFind::new(n);
        for gamma in &gens {
            for x in 0..n as u32 {
                uf.union(x, gamma.image(x));
            }
        }
        let vl = path[l].vertex;
        let mut tried: Vec<u32> = alloc::vec![vl];
        let mut cands: Vec<u32> = path[l].part.members(path[l].target).to_vec();
        cands.sort_unstable();
        for w in cands {
            if tried.iter().any(|&t| uf.find(t) == uf.find(w)) {
                continue;
            }
            tried.push(w);
            if let Some(gamma) = search.try_branch(l, w) {
                for x in 0..n as u32 {
                    uf.union(x, gamma.image(x));
                }
                gens.push(gamma);
            }
            if search.rf.exhausted() {
                complete = false;
                break 'levels;
            }
        }
        orbit_lengths[l] = uf.class_size(vl);
    }
    let nodes = search.rf.nodes;

    let point_generators: Vec<Permutation> = gens
        .iter()
        .map(|gamma| gamma.restrict(v))
        .collect::<Result<_>>()?;
    let order = orbit_lengths
        .iter()
        .fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
    let mut uf = UnionFind::new(n);
    for gamma in &gens {
        for x in 0..n as u32 {
            uf.union(x, gamma.image(x));
        }
    }
    let point_transitive = v == 0 || uf.class_size(0) == v;
    let block_transitive = n == v || uf.class_size(v as u32) == n - v;
    let base = path.iter().map(|l| l.vertex).collect();
    Ok(AutResult {
        generators: gens,
        point_generators,
        base,
        orbit_lengths,
        order,
        point_transitive,
        block_transitive,
        complete,
        nodes,
    })
}

struct Search<'a> {
    rf: Refiner<'a>,
    path: &'a [PathLevel],
    leaf: &'a [u32],
    g: &'a IncidenceGraph,
}

impl Search<'_> {
    fn try_branch(&mut self, l: usize, w: u32) -> Option<Permutation> {
        let mut p = self.path[l].part.clone();
        let trace = &self.path[l].trace;
        if !self.rf.individualize(
            &mut p,
            w,
            &mut Trace::Compare {
                expected: trace,
                at: 0,
            },
        ) {
            return None;
        }
        self.descend(p, l + 1)
    }

    fn descend(&mut self, p: Partition, m: usize) -> Option<Permutation> {
        if self.rf.exhausted() {
            return None;
        }
        if m == self.path.len() {
            if !p.is_discrete() {
                return None;
            }
            let mut gamma = alloc::vec![0u32; p.lab.len()];
            for (i, &x) in self.leaf.iter().enumerate() {
                gamma[x as usize] = p.lab[i];
            }
            return if self.g.is_automorphism(&gamma) {
                Some(Permutation::from_images_unchecked(gamma))
            } else {
                None
            };
        }
        let level = &self.path[m];
        let t = p.target_cell(self.g.v)?;
        if t != level.target || p.end[t as usize] != level.part.end[t as usize] {
            return None;
        }
        let mut cands = p.members(t).to_vec();
        cands.sort_unstable();
        for u in cands {
            let mut q = p.clone();
            let ok = self.rf.individualize(
                &mut q,
                u,
                &mut Trace::Compare {
                    expected: &level.trace,
                    at: 0,
                },
            );
            if ok {
                if let Some(gamma) = self.descend(q, m + 1) {
                    return Some(gamma);
                }
            }
            if self.rf.exhausted() {
                return None;
            }
        }
        None
    }
}

/// Whether a point permutation maps the block multiset of `d` onto itself.
pub fn is_design_automorphism(d: &IncidenceStructure, point_map: &Permutation) -> bool {
    if point_map.degree() != d.v() {
        return false;
    }
    let mut counts: HashMap<Vec<u32>, i64> = new_map();
    for b in d.blocks() {
        *counts.entry(b.clone()).or_insert(0) += 1;
    }
    for b in d.blocks() {
        match counts.get_mut(&point_map.image_of_set(b)) {
            Some(c) => *c -= 1,
            None => return false,
        }
    }
    counts.values().all(|&c| c == 0)
}

/// Whether `phi` normalizes `group` (conjugation keeps every generator in
/// the group).
pub fn normalizing_map_check(group: &PermGroup, phi: &Permutation) -> bool {
    crate::atlas::normalizes(group, phi)
}

/// Point map induced on the cosets of `M` by a normalizing map, if `phi`
/// carries the conjugates of `M` to conjugates of `M`.
pub fn induced_on_cosets(cosets: &CosetAction, phi: &Permutation) -> Option<Permutation> {
    cosets.image(phi).ok()
}

/// Stabilizer-orbit design: the induced point map lifts exactly when it
/// maps the block set onto itself.
pub fn lift_test_method1(d: &IncidenceStructure, point_map: &Permutation) -> bool {
    is_design_automorphism(d, point_map)
}

/// Conjugacy-class design: `phi` lifts iff `g^phi` lies in the stored class
/// and the image of the base block is a block. Returns the induced point
/// map when it lifts.
pub fn lift_test_method2(d: &Method2Design, phi: &Permutation) -> Option<Permutation> {
    if phi.degree() != d.element.degree() {
        return None;
    }
    d.class.position(&d.element.conjugate_by(phi))?;
    let map = d.induced_point_map(phi).ok()?;
    let image = map.image_of_set(&d.base_block);
    d.design.blocks().contains(&image).then_some(map)
}

/// Order of S(I), the product of the symmetric groups on the I-classes.
pub fn s_of_i_order(r: &ReducedStructure) -> BigUint {
    let fact = (1..=r.class_size).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    fact.pow(r.classes.len() as u32)
}

/// Outcome of comparing `Aut(D)` with `S(I)` and `Aut(D_I)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientReport {
    pub aut_order: BigUint,
    pub reduced_aut_order: BigUint,
    pub s_of_i_order: BigUint,
    /// `|Aut(D)| = |S(I)| · |Aut(D_I)|`.
    pub orders_multiply: bool,
    /// Every generator of `Aut(D_I)`, expanded class by class, is an
    /// automorphism of `D`.
    pub reduced_generators_lift: bool,
    /// Generators of `S(I)` are automorphisms of `D` fixing every block.
    pub s_of_i_fixes_blocks: bool,
    /// Every element of the computed `Aut(D)` that fixes all blocks lies in
    /// S(I); checked on the kernel of the action on blocks.
    pub block_kernel_is_s_of_i: Option<bool>,
    pub complete: bool,
}

/// Expands a permutation of the I-classes to the points, mapping the
/// `i`-th point of a class to the `i`-th point of its image class.
pub fn expand_class_map(r: &ReducedStructure, class_map: &Permutation) -> Result<Permutation> {
    let v = r.class_of.len();
    let mut images = alloc::vec![0u32; v];
    for (c, class) in r.classes.iter().enumerate() {
        let target = &r.classes[class_map.image(c as u32) as usize];
        for (x, y) in class.iter().zip(target) {
            images[*x as usize] = *y;
        }
    }
    Permutation::from_images(images)
}

/// Generators of S(I): a transposition and a full cycle on every class.
pub fn s_of_i_generators(r: &ReducedStructure) -> Vec<Permutation> {
    let v = r.class_of.len();
    let mut out = Vec::new();
    if r.class_size < 2 {
        return out;
    }
    for class in &r.classes {
        out.push(Permutation::from_cycles(v, &[&class[..2]]).expect("distinct points"));
        if class.len() > 2 {
            out.push(Permutation::from_cycles(v, &[class]).expect("distinct points"));
        }
    }
    out
}

pub fn verify_aut_quotient(
    d: &IncidenceStructure,
    r: &ReducedStructure,
    budget: u64,
) -> Result<QuotientReport> {
    let full = aut_group(d, budget)?;
    let reduced = aut_group(&r.quotient, budget)?;
    let s_order = s_of_i_order(r);
    let orders_multiply = full.order == &s_order * &reduced.order;
    let reduced_generators_lift = reduced
        .point_generators
        .iter()
        .map(|c| expand_class_map(r, c))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|p| is_design_automorphism(d, p));
    let s_of_i_fixes_blocks = s_of_i_generators(r).iter().all(|s| {
        is_design_automorphism(d, s) && d.blocks().iter().all(|b| s.image_of_set(b) == *b)
    });
    let block_kernel_is_s_of_i = if full.complete {
        Some(block_kernel_matches(d, r, &full)?)
    } else {
        None
    };
    Ok(QuotientReport {
        aut_order: full.order,
        reduced_aut_order: reduced.order,
        s_of_i_order: s_order,
        orders_multiply,
        reduced_generators_lift,
        s_of_i_fixes_blocks,
        block_kernel_is_s_of_i,
        complete: full.complete && reduced.complete,
    })
}

/// The kernel of `Aut(D)` on blocks has order `|Aut(D)| / |image on blocks|`;
/// it equals S(I) when that order is `|S(I)|` and S(I) fixes all blocks.
fn block_kernel_matches(
    d: &IncidenceStructure,
    r: &ReducedStructure,
    full: &AutResult,
) -> Result<bool> {
    let v = d.v();
    let block_gens: Vec<Permutation> = full
        .generators
        .iter()
        .map(|g| Permutation::from_images(g.images()[v..].iter().map(|&x| x - v as u32).collect()))
        .collect::<Result<_>>()?;
    let nb = full.generators.first().map_or(0, |g| g.degree() - v);
    if nb == 0 {
        return Ok(false);
    }
    let on_blocks = PermGroup::new(nb, block_gens)?;
    let kernel = &full.order / BigUint::from(on_blocks.order());
    Ok(kernel == s_of_i_order(r))
}

/// For each lifted point map that is not the identity, a block it moves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SIntersectionReport {
    pub checked: usize,
    pub witnesses: Vec<Option<usize>>,
    /// No non-identity lifted map fixes every block.
    pub trivial_intersection: bool,
}

pub fn verify_s_i_intersection(
    d: &IncidenceStructure,
    maps: &[Permutation],
) -> SIntersectionReport {
    let witnesses: Vec<Option<usize>> = maps
        .iter()
        .filter(|m| !m.is_identity())
        .map(|m| d.blocks().iter().position(|b| m.image_of_set(b) != *b))
        .collect();
    SIntersectionReport {
        checked: witnesses.len(),
        trivial_intersection: witnesses.iter().all(Option::is_some),
        witnesses,
    }
}

/// Errors out when a search did not finish.
pub fn require_complete(a: &AutResult) -> Result<()> {
    if a.complete {
        Ok(())
    } else {
        Err(Error::BudgetExceeded(a.nodes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn order(d: &IncidenceStructure) -> u128 {
        let a = aut_group(d, 1 << 24).unwrap();
        assert!(a.complete);
        let pg = a.point_group(d.v()).unwrap();
        assert_eq!(BigUint::from(pg.order()), a.order);
        for g in &a.point_generators {
            assert!(is_design_automorphism(d, g));
        }
        a.order_u128().unwrap()
    }

    #[test]
    fn complete_design_has_symmetric_group() {
        let d = IncidenceStructure::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(order(&d), 24);
    }

    #[test]
    fn fano_plane_has_168() {
        let d = IncidenceStructure::new(
            7,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap();
        assert_eq!(order(&d), 168);
        let dual = d.dual();
        assert_eq!(order(&dual), 168);
    }

    #[test]
    fn repeated_blocks_are_coloured() {
        // {0,1} twice and {1,2} once: only the identity
        let d = IncidenceStructure::new(3, vec![vec![0, 1], vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(order(&d), 1);
        let d = IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(order(&d), 2);
    }

    #[test]
    fn twins_multiply() {
        // Fano with every point tripled: Aut = S3^7 : PSL(3,2)
        let fano = [
            [0u32, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        let blocks: Vec<Vec<u32>> = fano
            .iter()
            .map(|b| {
                b.iter()
                    .flat_map(|&p| [3 * p, 3 * p + 1, 3 * p + 2])
                    .collect()
            })
            .collect();
        let d = IncidenceStructure::new(21, blocks).unwrap();
        assert_eq!(order(&d), 6u128.pow(7) * 168);
        let r = d.reduce().unwrap();
        let rep = verify_aut_quotient(&d, &r, 1 << 24).unwrap();
        assert!(rep.orders_multiply && rep.reduced_generators_lift && rep.s_of_i_fixes_blocks);
        assert_eq!(rep.block_kernel_is_s_of_i, Some(true));
    }

    #[test]
    fn budget_is_reported() {
        let d = IncidenceStructure::new(6, vec![vec![0, 1, 2, 3, 4, 5]]).unwrap();
        let a = aut_group(&d, 2).unwrap();
        assert!(!a.complete);
        assert!(require_complete(&a).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn structure() -> impl Strategy<Value = IncidenceStructure> {
        (3usize..9).prop_flat_map(|v| {
            proptest::collection::vec(proptest::collection::btree_set(0..v as u32, 1..v), 2..9)
                .prop_map(move |bs| {
                    IncidenceStructure::new(
                        v,
                        bs.into_iter().map(|b| b.into_iter().collect()).collect(),
                    )
                    .unwrap()
                })
        })
    }

    fn with_relabelling() -> impl Strategy<Value = (IncidenceStructure, Permutation)> {
        structure().prop_flat_map(|s| {
            let v = s.v() as u32;
            let sigma = Just((0..v).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|im| Permutation::from_images(im).unwrap());
            (Just(s), sigma)
        })
    }

    fn relabel(s: &IncidenceStructure, sigma: &Permutation) -> IncidenceStructure {
        let blocks: Vec<Vec<u32>> = s.blocks().iter().map(|b| sigma.image_of_set(b)).collect();
        IncidenceStructure::new(s.v(), blocks).unwrap()
    }

    proptest! {
        #[test]
        fn generators_are_automorphisms(s in structure()) {
            let a = aut_group(&s, 1 << 20).unwrap();
            prop_assert!(a.complete);
            for g in &a.point_generators {
                prop_assert!(is_design_automorphism(&s, g));
            }
            prop_assert_eq!(
                BigUint::from(a.point_group(s.v()).unwrap().order()),
                a.order.clone()
            );
        }

        #[test]
        fn order_is_invariant_under_relabelling((s, sigma) in with_relabelling()) {
            let a = aut_group(&s, 1 << 20).unwrap();
            let b = aut_group(&relabel(&s, &sigma), 1 << 20).unwrap();
            prop_assert_eq!(a.order, b.order);
        }
    }
}
