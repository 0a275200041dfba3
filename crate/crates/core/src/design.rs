//! Incidence structures, 1-design parameters, t-subset tallies, duals and
//! reduced designs.
//!
//! Blocks are sorted point sets. The block list may repeat a set; the
//! number of copies is its multiplicity and every count below includes it.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{binomial, new_map, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub lambda: u64,
    pub r: usize,
}

/// Result of tallying t-subsets over the blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TDesignOutcome {
    Uniform {
        lambda: u64,
    },
    /// Two t-subsets lying in different numbers of blocks.
    NotUniform {
        first: (Vec<u32>, u64),
        second: (Vec<u32>, u64),
    },
}

impl IncidenceStructure {
    pub fn new(v: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidStructure("block list is empty".into()));
        }
        let mut out = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidStructure("block repeats a point".into()));
            }
            if block.last().is_some_and(|&p| p as usize >= v) {
                return Err(Error::InvalidStructure(alloc::format!(
                    "block point outside [0,{v})"
                )));
            }
            out.push(block);
        }
        Ok(IncidenceStructure {
            v,
            blocks: out,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.v {
            return Err(Error::InvalidArgument(
                "one label per point required".into(),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[u32] {
        &self.blocks[i]
    }

    /// For every point, the indices of the blocks containing it.
    pub fn point_incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = alloc::vec![Vec::new(); self.v];
        for (i, block) in self.blocks.iter().enumerate() {
            for &p in block {
                inc[p as usize].push(i as u32);
            }
        }
        inc
    }

    pub fn blocks_through(&self, x: u32) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.binary_search(&x).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    /// Distinct blocks with their multiplicities, in order of first
    /// occurrence.
    pub fn distinct_blocks(&self) -> Vec<(Vec<u32>, usize)> {
        let mut index: HashMap<&[u32], usize> = new_map();
        let mut out: Vec<(Vec<u32>, usize)> = Vec::new();
        for block in &self.blocks {
            match index.get(block.as_slice()) {
                Some(&i) => out[i].1 += 1,
                None => {
                    index.insert(block, out.len());
                    out.push((block.clone(), 1));
                }
            }
        }
        out
    }

    pub fn max_multiplicity(&self) -> usize {
        self.distinct_blocks()
            .iter()
            .map(|(_, m)| *m)
            .max()
            .unwrap_or(0)
    }

    /// Checks constant block size and constant replication.
    pub fn validate_1design(&self) -> Result<DesignParams> {
        let k = self.blocks[0].len();
        if let Some(other) = self.blocks.iter().map(Vec::len).find(|&s| s != k) {
            return Err(Error::NonUniformBlockSize(k, other));
        }
        let mut reps = alloc::vec![0usize; self.v];
        for block in &self.blocks {
            for &p in block {
                reps[p as usize] += 1;
            }
        }
        let r = reps.first().copied().unwrap_or(0);
        if let Some(&other) = reps.iter().find(|&&x| x != r) {
            return Err(Error::NonUniformReplication(r, other));
        }
        if r == 0 {
            return Err(Error::NonUniformReplication(0, 0));
        }
        debug_assert_eq!(self.b() * k, self.v * r);
        Ok(DesignParams {
            t: 1,
            v: self.v,
            b: self.b(),
            k,
            lambda: r as u64,
            r,
        })
    }

    /// Number of blocks through each t-subset, if constant. Every block's
    /// t-subsets are tallied, so the work is `b · C(k,t)` increments; the
    /// budget bounds that count and the `C(v,t)` table size.
    pub fn t_design_lambda(&self, t: usize, budget: u128) -> Result<TDesignOutcome> {
        let k = self.blocks.iter().map(Vec::len).min().unwrap_or(0);
        if t == 0 || t > k {
            return Err(Error::InvalidArgument(alloc::format!(
                "t = {t} with minimum block size {k}"
            )));
        }
        let work = self.b() as u128 * binomial(k as u64, t as u64);
        let keys = binomial(self.v as u64, t as u64);
        if work > budget || keys > budget {
            return Err(Error::BudgetExceeded(work.max(keys) as u64));
        }
        let bits = (usize::BITS - (self.v.max(2) - 1).leading_zeros()) as usize;
        if bits * t > 128 {
            return Err(Error::InvalidArgument("t-subsets too wide to pack".into()));
        }
        let pack = |s: &[u32]| s.iter().fold(0u128, |acc, &p| (acc << bits) | p as u128);
        let unpack = |mut c: u128| {
            let mut s: Vec<u32> = (0..t)
                .map(|_| {
                    let p = (c & ((1 << bits) - 1)) as u32;
                    c >>= bits;
                    p
                })
                .collect();
            s.reverse();
            s
        };
        let mut tally: HashMap<u128, u64> = new_map();
        let mut sub = alloc::vec![0u32; t];
        for block in &self.blocks {
            for_each_subset(block, t, &mut sub, &mut |s| {
                *tally.entry(pack(s)).or_insert(0) += 1
            });
        }
        let (&c0, &l0) = tally
            .iter()
            .min_by_key(|(c, _)| **c)
            .expect("nonempty tally");
        if let Some((&c1, &l1)) = tally
            .iter()
            .filter(|(_, &l)| l != l0)
            .min_by_key(|(c, _)| **c)
        {
            return Ok(TDesignOutcome::NotUniform {
                first: (unpack(c0), l0),
                second: (unpack(c1), l1),
            });
        }
        if tally.len() as u128 != keys {
            // some t-subset lies in no block
            let all: Vec<u32> = (0..self.v as u32).collect();
            let mut missing = None;
            for_each_subset(&all, t, &mut sub, &mut |s| {
                if missing.is_none() && !tally.contains_key(&pack(s)) {
                    missing = Some(s.to_vec());
                }
            });
            let missing = missing.expect("a missing subset exists");
            return Ok(TDesignOutcome::NotUniform {
                first: (unpack(c0), l0),
                second: (missing, 0),
            });
        }
        Ok(TDesignOutcome::Uniform { lambda: l0 })
    }

    /// Transpose: point `i` of the dual is block `i`, and block `x` of the
    /// dual is the set of blocks through point `x`.
    pub fn dual(&self) -> IncidenceStructure {
        IncidenceStructure {
            v: self.b(),
            blocks: self.point_incidence(),
            labels: None,
        }
    }

    /// Quotient by the classes `I_x`, the intersection of all blocks
    /// through `x`.
    pub fn reduce(&self) -> Result<ReducedStructure> {
        self.validate_1design()?;
        // With constant replication, y ∈ I_x iff the blocks through x are
        // exactly the blocks through y.
        let inc = self.point_incidence();
        let mut by_sig: HashMap<&[u32], u32> = new_map();
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut class_of = alloc::vec![0u32; self.v];
        for (x, sig) in inc.iter().enumerate() {
            let c = *by_sig.entry(sig.as_slice()).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() as u32 - 1
            });
            classes[c as usize].push(x as u32);
            class_of[x] = c;
        }
        let size = classes[0].len();
        if let Some(bad) = classes.iter().find(|c| c.len() != size) {
            return Err(Error::PartitionViolation(alloc::format!(
                "I-classes of sizes {size} and {}",
                bad.len()
            )));
        }
        let mut quotient_blocks = Vec::with_capacity(self.b());
        for block in &self.blocks {
            let mut qb: Vec<u32> = block.iter().map(|&p| class_of[p as usize]).collect();
            qb.sort_unstable();
            qb.dedup();
            if qb.len() * size != block.len() {
                return Err(Error::PartitionViolation(
                    "block is not a union of I-classes".into(),
                ));
            }
            quotient_blocks.push(qb);
        }
        let quotient = IncidenceStructure::new(classes.len(), quotient_blocks)?;
        Ok(ReducedStructure {
            classes,
            class_of,
            class_size: size,
            quotient,
        })
    }
}

/// Calls `f` on every `t`-subset of the sorted slice `set`, in
/// lexicographic order.
pub(crate) fn for_each_subset(set: &[u32], t: usize, buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
    let n = set.len();
    if t > n {
        return;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        for (j, &i) in idx.iter().enumerate() {
            buf[j] = set[i];
        }
        f(&buf[..t]);
        // rightmost index that can still advance
        let mut j = t;
        while j > 0 && idx[j - 1] == j - 1 + n - t {
            j -= 1;
        }
        if j == 0 {
            return;
        }
        idx[j - 1] += 1;
        for m in j..t {
            idx[m] = idx[m - 1] + 1;
        }
    }
}

/// A 1-design together with its I-classes and quotient design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedStructure {
    /// Classes ordered by least point.
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
    pub class_size: usize,
    pub quotient: IncidenceStructure,
}

impl ReducedStructure {
    pub fn is_trivial(&self) -> bool {
        self.class_size == 1
    }

    pub fn class_containing(&self, x: u32) -> &[u32] {
        &self.classes[self.class_of[x as usize] as usize]
    }
}
