//! Two-sided record statistics.
//!
//! The first entry of a word is the center, an improper record of both
//! types. Proper lower records are indexed `-1, -2, ...` in order of
//! occurrence, proper upper records `1, 2, ...`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{InitialRanks, Permutation};

/// The record-value sequence `r_{-l} < ... < r_0 < ... < r_u` of a word of size `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RecordValues {
    values: Vec<usize>,
    center: usize,
}

impl RecordValues {
    /// `values` in increasing order, `center` the index of `r_0` within it.
    pub fn new(values: Vec<usize>, center: usize) -> Result<Self> {
        if values.is_empty() || center >= values.len() {
            return Err(Error::Validation("record values need a center".into()));
        }
        if values[0] != 1 {
            return Err(Error::Validation(format!(
                "smallest record value is {}, expected 1",
                values[0]
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation("record values must increase".into()));
        }
        let n = *values.last().unwrap();
        let total = values.len();
        if total < n.min(2) || total > n {
            return Err(Error::Validation(format!(
                "{total} records impossible for size {n}"
            )));
        }
        Ok(RecordValues { values, center })
    }

    /// The size of the permutation, equal to the largest record value.
    pub fn n(&self) -> usize {
        *self.values.last().unwrap()
    }

    pub fn lower_count(&self) -> usize {
        self.center
    }

    pub fn upper_count(&self) -> usize {
        self.values.len() - self.center - 1
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn center_index(&self) -> usize {
        self.center
    }

    pub fn center_value(&self) -> usize {
        self.values[self.center]
    }

    /// `r_k` for `-l <= k <= u`.
    pub fn value(&self, k: isize) -> usize {
        self.values[(self.center as isize + k) as usize]
    }
}

impl fmt::Display for RecordValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if i == self.center {
                write!(f, "[{v}]")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RecordValues {
    type Err = Error;

    /// Parses `"1,2,[3],7,8"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut center = None;
        for tok in s.split(',') {
            let tok = tok.trim();
            let (body, is_center) = match tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                Some(inner) => (inner, true),
                None => (tok, false),
            };
            let v = body
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?;
            if is_center {
                if center.is_some() {
                    return Err(Error::Parse("more than one center".into()));
                }
                center = Some(values.len());
            }
            values.push(v);
        }
        let center = center.ok_or_else(|| Error::Parse("no center marked with [..]".into()))?;
        RecordValues::new(values, center)
    }
}

/// Record values together with record times, as extracted from a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecordProfile {
    values: RecordValues,
    /// `times[i]` is the position at which `values[i]` occurred.
    times: Vec<usize>,
}

impl RecordProfile {
    pub fn new(values: RecordValues, times: Vec<usize>) -> Result<Self> {
        if times.len() != values.values.len() {
            return Err(Error::Validation("one time per record value required".into()));
        }
        let c = values.center;
        if times[c] != 1 {
            return Err(Error::Validation("the center occurs at time 1".into()));
        }
        let n = values.n();
        // lower times increase going down, upper times increase going up
        if times[..=c].windows(2).any(|w| w[0] <= w[1])
            || times[c..].windows(2).any(|w| w[0] >= w[1])
            || times.iter().any(|&t| t == 0 || t > n)
        {
            return Err(Error::Validation("record times out of order".into()));
        }
        let distinct: BTreeSet<_> = times.iter().collect();
        if distinct.len() != times.len() {
            return Err(Error::Validation("record times must be distinct".into()));
        }
        Ok(RecordProfile { values, times })
    }

    pub fn values(&self) -> &RecordValues {
        &self.values
    }

    pub fn into_values(self) -> RecordValues {
        self.values
    }

    /// Times aligned with `values().values()`.
    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn time(&self, k: isize) -> usize {
        self.times[(self.values.center as isize + k) as usize]
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn lower_count(&self) -> usize {
        self.values.lower_count()
    }

    pub fn upper_count(&self) -> usize {
        self.values.upper_count()
    }
}

pub fn extract_records(p: &Permutation) -> RecordProfile {
    let w = p.as_slice();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let (mut lo, mut hi) = (w[0], w[0]);
    for (idx, &v) in w.iter().enumerate().skip(1) {
        if v < lo {
            lo = v;
            lower.push((v, idx + 1));
        } else if v > hi {
            hi = v;
            upper.push((v, idx + 1));
        }
    }
    let center = lower.len();
    let mut values = Vec::with_capacity(lower.len() + upper.len() + 1);
    let mut times = Vec::with_capacity(values.capacity());
    for &(v, t) in lower.iter().rev() {
        values.push(v);
        times.push(t);
    }
    values.push(w[0]);
    times.push(1);
    for &(v, t) in &upper {
        values.push(v);
        times.push(t);
    }
    RecordProfile {
        values: RecordValues { values, center },
        times,
    }
}

/// Proper record counts `(l, u)`.
pub fn record_counts(p: &Permutation) -> (usize, usize) {
    record_counts_from_ranks(p.to_initial_ranks().as_slice())
}

pub(crate) fn record_counts_from_ranks(ranks: &[usize]) -> (usize, usize) {
    let mut l = 0;
    let mut u = 0;
    for (idx, &r) in ranks.iter().enumerate().skip(1) {
        if r == 1 {
            l += 1;
        } else if r == idx + 1 {
            u += 1;
        }
    }
    (l, u)
}

/// Maps a word of size `n >= 2` to one of size `n - 1` so that every proper
/// record becomes a lower record of the image.
pub fn fold_records(p: &Permutation) -> Result<Permutation> {
    let n = p.len();
    if n < 2 {
        return Err(Error::Argument("fold_records needs n >= 2".into()));
    }
    let ranks = p.to_initial_ranks();
    let folded: Vec<usize> = (2..=n)
        .map(|j| {
            let r = ranks.as_slice()[j - 1];
            if r < j {
                r
            } else {
                1
            }
        })
        .collect();
    Ok(InitialRanks::from_vec_unchecked(folded).to_permutation())
}

/// Positions of a word grouped into blocks labelled by record index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedPartition {
    n: usize,
    blocks: BTreeMap<isize, BTreeSet<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: BTreeMap<isize, BTreeSet<usize>>) -> Result<Self> {
        if blocks.get(&0).map(|b| b.iter().copied().collect::<Vec<_>>()) != Some(vec![1]) {
            return Err(Error::Validation("block 0 must be {1}".into()));
        }
        let mut seen = BTreeSet::new();
        for b in blocks.values() {
            if b.is_empty() {
                return Err(Error::Validation("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n || !seen.insert(x) {
                    return Err(Error::Validation(format!("position {x} misplaced")));
                }
            }
        }
        if seen.len() != n {
            return Err(Error::Validation("blocks do not cover 1..=n".into()));
        }
        Ok(OrderedPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &BTreeMap<isize, BTreeSet<usize>> {
        &self.blocks
    }

    /// Block sizes from the lowest label to the highest.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.values().map(|b| b.len()).collect()
    }
}

/// Label of the block that a non-record value `v` falls into, given the
/// record values (ascending) and the center index.
pub(crate) fn block_of_value(values: &[usize], center: usize, v: usize) -> isize {
    // a = index of the largest record value below v
    let a = values.partition_point(|&r| r < v) - 1;
    let k = a as isize - center as isize;
    if k >= 0 {
        k + 1
    } else {
        k
    }
}

pub fn ordered_blocks(p: &Permutation) -> OrderedPartition {
    let prof = extract_records(p);
    let vals = prof.values.values();
    let c = prof.values.center;
    let mut blocks: BTreeMap<isize, BTreeSet<usize>> = BTreeMap::new();
    let mut record_at = BTreeMap::new();
    for (i, &t) in prof.times.iter().enumerate() {
        record_at.insert(t, i as isize - c as isize);
    }
    for (idx, &v) in p.as_slice().iter().enumerate() {
        let pos = idx + 1;
        let label = match record_at.get(&pos) {
            Some(&k) => k,
            None => block_of_value(vals, c, v),
        };
        blocks.entry(label).or_default().insert(pos);
    }
    OrderedPartition {
        n: p.len(),
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::factorial_usize;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn extract_examples() {
        let prof = extract_records(&perm("3,2,7,6,1,4,8,5"));
        assert_eq!(prof.values().to_string(), "1,2,[3],7,8");
        assert_eq!((prof.lower_count(), prof.upper_count()), (2, 2));
        assert_eq!(prof.times(), &[5, 2, 1, 3, 7]);

        let prof = extract_records(&perm("1"));
        assert_eq!(prof.values().to_string(), "[1]");
        assert_eq!((prof.lower_count(), prof.upper_count()), (0, 0));

        let prof = extract_records(&perm("2,3,1"));
        assert_eq!(prof.values().to_string(), "1,[2],3");
        assert_eq!((prof.time(0), prof.time(1), prof.time(-1)), (1, 2, 3));
    }

    #[test]
    fn record_values_parse_and_validate() {
        let rv: RecordValues = "1,2,[3],7,8".parse().unwrap();
        assert_eq!(rv.n(), 8);
        assert_eq!(rv.value(-2), 1);
        assert_eq!(rv.value(2), 8);
        assert!("2,[3]".parse::<RecordValues>().is_err());
        assert!("1,3,2".parse::<RecordValues>().is_err());
        assert!("[1],3,2".parse::<RecordValues>().is_err());
        assert!("[3]".parse::<RecordValues>().is_err());
        assert!("1,[1]".parse::<RecordValues>().is_err());
    }

    #[test]
    fn profile_invariants_hold_exhaustively() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let prof = extract_records(&p);
                let again = RecordProfile::new(prof.values().clone(), prof.times().to_vec());
                assert_eq!(again.unwrap(), prof);
                assert_eq!(record_counts(&p), (prof.lower_count(), prof.upper_count()));
            }
        }
    }

    #[test]
    fn lower_records_agree_with_ranks() {
        let p = perm("3,2,7,6,1,4,8,5");
        let r = p.to_initial_ranks();
        let prof = extract_records(&p);
        for (idx, &rank) in r.as_slice().iter().enumerate().skip(1) {
            let j = idx + 1;
            let is_record = prof.times().contains(&j);
            assert_eq!(is_record, rank == 1 || rank == j);
        }
    }

    #[test]
    fn inverse_preserves_lower_count() {
        for n in 1..=7 {
            for p in Permutation::all(n) {
                assert_eq!(record_counts(&p).0, record_counts(&p.inverse()).0);
            }
        }
    }

    #[test]
    fn complement_swaps_record_types() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let (l, u) = record_counts(&p);
                assert_eq!(record_counts(&p.complement()), (u, l));
            }
        }
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold_records(&perm("2,1")).unwrap(), perm("1"));
        assert!(fold_records(&perm("1")).is_err());
        let p = perm("3,2,7,6,1,4,8,5");
        let (l, u) = record_counts(&p);
        let image = fold_records(&p).unwrap();
        assert_eq!(record_counts(&image).0, 3);
        assert_eq!(l + u, record_counts(&image).0 + 1);
    }

    #[test]
    fn fold_fibers_have_power_of_two_sizes() {
        for n in 2..=7 {
            let mut fibers: BTreeMap<Permutation, Vec<(usize, usize)>> = BTreeMap::new();
            for p in Permutation::all(n) {
                fibers
                    .entry(fold_records(&p).unwrap())
                    .or_default()
                    .push(record_counts(&p));
            }
            let mut total = 0;
            for (image, members) in &fibers {
                let r = record_counts(image).0 + 1;
                assert_eq!(members.len(), 1 << r);
                for l in 0..=r {
                    let with_l = members.iter().filter(|m| m.0 == l).count();
                    assert_eq!(with_l as u64, binomial_u64(r as u64, l as u64));
                }
                total += members.len();
            }
            assert_eq!(total, factorial_usize(n));
        }
    }

    fn binomial_u64(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn ordered_blocks_examples() {
        let b = ordered_blocks(&perm("1"));
        assert_eq!(b.blocks().len(), 1);
        let b = ordered_blocks(&perm("2,3,1"));
        assert_eq!(b.blocks()[&0], BTreeSet::from([1]));
        assert_eq!(b.blocks()[&1], BTreeSet::from([2]));
        assert_eq!(b.blocks()[&-1], BTreeSet::from([3]));
        let b = ordered_blocks(&perm("3,2,7,6,1,4,8,5"));
        assert_eq!(b.sizes(), vec![1, 1, 1, 4, 1]);
    }

    #[test]
    fn ordered_blocks_minima_are_record_times() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let prof = extract_records(&p);
                let b = ordered_blocks(&p);
                let c = prof.values().center_index() as isize;
                for (&k, block) in b.blocks() {
                    assert_eq!(*block.iter().next().unwrap(), prof.times()[(k + c) as usize]);
                }
                assert!(OrderedPartition::new(n, b.blocks().clone()).is_ok());
            }
        }
    }
}
