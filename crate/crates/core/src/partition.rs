//! Ordered 2- and 3-way splits of a small index set, encoded as bitmasks.
//!
//! A split assigns each ground index a part label. Splits are ranked by their
//! label vector read as a base-`p` numeral with index 0 as the most
//! significant digit, so `n = 1, p = 2` yields `({0},∅)` then `(∅,{0})`.
//! Constrained enumerations keep the same relative order. Ranks make it cheap
//! to hand disjoint ranges to workers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_GROUND: usize = 63;

/// Where a ground index came from: a set label and a position in that set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Origin {
    pub set: String,
    pub index: usize,
}

impl std::fmt::Display for Origin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.set, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroundSet {
    origin: Vec<Origin>,
}

impl GroundSet {
    pub fn new(origin: Vec<Origin>) -> Result<Self> {
        if origin.len() > MAX_GROUND {
            return Err(Error::Constraint(format!(
                "ground set of size {} exceeds {MAX_GROUND}",
                origin.len()
            )));
        }
        Ok(GroundSet { origin })
    }

    /// Anonymous ground set `x[0..n]`.
    pub fn plain(n: usize) -> Result<Self> {
        Self::concat(&[("x", n)])
    }

    /// Concatenation of labelled blocks, e.g. `[("u", 2), ("v", 3)]`.
    pub fn concat(blocks: &[(&str, usize)]) -> Result<Self> {
        let origin = blocks
            .iter()
            .flat_map(|&(label, len)| {
                (0..len).map(move |index| Origin {
                    set: label.to_string(),
                    index,
                })
            })
            .collect();
        Self::new(origin)
    }

    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn origin(&self) -> &[Origin] {
        &self.origin
    }

    /// Sorted origin tags of the indices in `mask`, e.g. `["u[0]", "v[2]"]`.
    pub fn tags(&self, mask: u64) -> Vec<String> {
        let mut tags: Vec<String> = indices(mask).map(|i| self.origin[i].to_string()).collect();
        tags.sort();
        tags
    }
}

pub fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Set bit positions of `mask`, ascending.
pub fn indices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Picks the entries of `values` selected by `mask`.
pub fn select<T: Clone>(values: &[T], mask: u64) -> Vec<T> {
    indices(mask).map(|i| values[i].clone()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Split {
    masks: [u64; 3],
    count: u8,
}

impl Split {
    pub fn parts(&self) -> &[u64] {
        &self.masks[..self.count as usize]
    }

    pub fn part(&self, i: usize) -> u64 {
        assert!(i < self.count as usize, "part {i} out of range");
        self.masks[i]
    }

    pub fn part_len(&self, i: usize) -> usize {
        self.part(i).count_ones() as usize
    }

    fn from_labels(labels: &[u8], count: u8) -> Split {
        let mut masks = [0u64; 3];
        for (i, &l) in labels.iter().enumerate() {
            masks[l as usize] |= 1 << i;
        }
        Split { masks, count }
    }
}

/// Resolves one part of a split to parameter values using the origin tags.
/// `spectra` maps set labels to their values.
pub fn split_elements(ground: &GroundSet, split: &Split, part: usize, spectra: &[(&str, &[Scalar])]) -> Vec<Scalar> {
    indices(split.part(part))
        .map(|i| {
            let o = &ground.origin[i];
            let (_, vals) = spectra
                .iter()
                .find(|(label, _)| *label == o.set)
                .unwrap_or_else(|| panic!("no spectral set labelled {:?}", o.set));
            vals[o.index].clone()
        })
        .collect()
}

/// The space of splits of `n` indices into `parts` labelled parts, optionally
/// with fixed part sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpace {
    n: usize,
    parts: u8,
    cards: Option<Vec<usize>>,
    total: u64,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn multinomial(cards: &[usize]) -> u64 {
    let mut rest: usize = cards.iter().sum();
    let mut acc = 1u64;
    for &k in cards {
        acc = acc.checked_mul(binomial(rest, k)).expect("split count overflows u64");
        rest -= k;
    }
    acc
}

impl SplitSpace {
    pub fn new(n: usize, parts: usize, cards: Option<&[usize]>) -> Result<Self> {
        if !(2..=3).contains(&parts) {
            return Err(Error::Constraint(format!("part count must be 2 or 3, got {parts}")));
        }
        if n > MAX_GROUND {
            return Err(Error::Constraint(format!(
                "ground set of size {n} exceeds {MAX_GROUND}"
            )));
        }
        let total = match cards {
            Some(cs) => {
                if cs.len() != parts {
                    return Err(Error::Constraint(format!(
                        "{} cardinalities given for {parts} parts",
                        cs.len()
                    )));
                }
                let sum: usize = cs.iter().sum();
                if sum != n {
                    return Err(Error::Constraint(format!(
                        "cardinalities {cs:?} sum to {sum}, ground set has {n}"
                    )));
                }
                multinomial(cs)
            }
            None => (parts as u64)
                .checked_pow(n as u32)
                .ok_or_else(|| Error::Constraint(format!("{parts}^{n} splits overflow u64")))?,
        };
        Ok(SplitSpace {
            n,
            parts: parts as u8,
            cards: cards.map(|c| c.to_vec()),
            total,
        })
    }

    pub fn two(n: usize) -> Self {
        Self::new(n, 2, None).expect("valid")
    }

    pub fn three(n: usize) -> Self {
        Self::new(n, 3, None).expect("valid")
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    /// The split with the given rank.
    pub fn at(&self, rank: u64) -> Split {
        assert!(rank < self.total, "rank {rank} out of range");
        let mut labels = vec![0u8; self.n];
        match &self.cards {
            None => {
                let p = self.parts as u64;
                let mut r = rank;
                for slot in labels.iter_mut().rev() {
                    *slot = (r % p) as u8;
                    r /= p;
                }
            }
            Some(cs) => {
                let mut left = cs.clone();
                let mut r = rank;
                for slot in labels.iter_mut() {
                    for l in 0..self.parts as usize {
                        if left[l] == 0 {
                            continue;
                        }
                        left[l] -= 1;
                        let block = multinomial(&left);
                        if r < block {
                            *slot = l as u8;
                            break;
                        }
                        r -= block;
                        left[l] += 1;
                    }
                }
            }
        }
        Split::from_labels(&labels, self.parts)
    }

    /// Streams splits with ranks in `range`, in rank order.
    pub fn iter_range(&self, range: std::ops::Range<u64>) -> SplitIter<'_> {
        let end = range.end.min(self.total);
        let start = range.start.min(end);
        let labels = if start < end {
            let s = self.at(start);
            let mut labels = vec![0u8; self.n];
            for (l, &m) in s.parts().iter().enumerate() {
                for i in indices(m) {
                    labels[i] = l as u8;
                }
            }
            labels
        } else {
            Vec::new()
        };
        SplitIter {
            space: self,
            labels,
            remaining: end - start,
        }
    }

    pub fn iter(&self) -> SplitIter<'_> {
        self.iter_range(0..self.total)
    }

    /// Exact sum of `term` over all splits, split into rank ranges across
    /// `jobs` workers. Exact addition makes the result independent of `jobs`.
    /// On failure the error from the lowest-ranked failing chunk is returned.
    pub fn sum<F>(&self, jobs: usize, term: F) -> Result<Scalar>
    where
        F: Fn(&Split) -> Result<Scalar> + Sync,
    {
        let chunk_sum = |range: std::ops::Range<u64>| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for s in self.iter_range(range) {
                acc += term(&s)?;
            }
            Ok(acc)
        };
        if jobs <= 1 || self.total < 64 {
            return chunk_sum(0..self.total);
        }
        let chunks = (jobs as u64 * 8).min(self.total);
        let step = self.total.div_ceil(chunks);
        let ranges: Vec<_> = (0..chunks)
            .map(|k| (k * step).min(self.total)..((k + 1) * step).min(self.total))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))?;
        let partial: Vec<Result<Scalar>> = pool.install(|| ranges.into_par_iter().map(chunk_sum).collect());
        let mut acc = Scalar::zero();
        for p in partial {
            acc += p?;
        }
        Ok(acc)
    }
}

pub struct SplitIter<'a> {
    space: &'a SplitSpace,
    labels: Vec<u8>,
    remaining: u64,
}

impl SplitIter<'_> {
    fn advance(&mut self) {
        let labels = &mut self.labels;
        match self.space.cards {
            None => {
                let top = self.space.parts - 1;
                for slot in labels.iter_mut().rev() {
                    if *slot < top {
                        *slot += 1;
                        return;
                    }
                    *slot = 0;
                }
            }
            // next multiset permutation in lexicographic order
            Some(_) => {
                let n = labels.len();
                if n < 2 {
                    return;
                }
                let mut i = n - 1;
                while i > 0 && labels[i - 1] >= labels[i] {
                    i -= 1;
                }
                if i == 0 {
                    return;
                }
                let mut j = n - 1;
                while labels[j] <= labels[i - 1] {
                    j -= 1;
                }
                labels.swap(i - 1, j);
                labels[i..].reverse();
            }
        }
    }
}

impl Iterator for SplitIter<'_> {
    type Item = Split;

    fn next(&mut self) -> Option<Split> {
        if self.remaining == 0 {
            return None;
        }
        let s = Split::from_labels(&self.labels, self.space.parts);
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Convenience wrapper over [`SplitSpace`] for callers that want a stream.
pub fn enumerate_splits(n: usize, parts: usize, cards: Option<&[usize]>) -> Result<SplitSpace> {
    SplitSpace::new(n, parts, cards)
}

/// Linear combination indexed by subsets of a ground set. Entries may be
/// stored as explicit zeros; comparisons treat absent and zero alike.
#[derive(Debug, Clone, Default)]
pub struct CoefficientMap {
    entries: BTreeMap<u64, Scalar>,
}

impl CoefficientMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: u64, value: Scalar) {
        match self.entries.get_mut(&key) {
            Some(v) => *v += value,
            None => {
                self.entries.insert(key, value);
            }
        }
    }

    pub fn merge(&mut self, other: CoefficientMap) {
        for (k, v) in other.entries {
            self.add(k, v);
        }
    }

    pub fn get(&self, key: u64) -> Scalar {
        self.entries.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Copy without explicit zeros.
    pub fn nonzero(&self) -> CoefficientMap {
        CoefficientMap {
            entries: self
                .entries
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Rewrites every key with `f` (which must be injective), merging values.
    pub fn map_keys(&self, f: impl Fn(u64) -> u64) -> CoefficientMap {
        let mut out = CoefficientMap::new();
        for (k, v) in &self.entries {
            out.add(f(*k), v.clone());
        }
        out
    }

    pub fn scale(&mut self, factor: &Scalar) {
        for v in self.entries.values_mut() {
            *v *= factor;
        }
    }
}

impl PartialEq for CoefficientMap {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero().entries == other.nonzero().entries
    }
}

impl Eq for CoefficientMap {}

impl FromIterator<(u64, Scalar)> for CoefficientMap {
    fn from_iter<I: IntoIterator<Item = (u64, Scalar)>>(iter: I) -> Self {
        let mut out = CoefficientMap::new();
        for (k, v) in iter {
            out.add(k, v);
        }
        out
    }
}
