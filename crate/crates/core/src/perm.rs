//! Permutations in one-row notation and their initial-rank encoding.
//!
//! The initial rank of position `j` counts the entries among the first `j`
//! that are not larger than the entry at `j`. A lower record therefore has
//! rank 1 and an upper record at position `j` has rank `j`. Cutting a
//! permutation to its first `m` entries and re-ranking them is the same as
//! truncating the initial-rank sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest size accepted by word-producing front ends (sampler output, shape constructions).
pub const WORD_CAP: usize = 20;
/// Largest size accepted by exhaustive enumeration over the symmetric group.
pub const ENUMERATION_CAP: usize = 10;

/// Fenwick tree over `1..=n` holding 0/1 occupancy counts.
struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn full(n: usize) -> Self {
        let mut tree = vec![0u32; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i];
            }
        }
        Fenwick { tree }
    }

    fn add(&mut self, mut i: usize, delta: i32) {
        while i < self.tree.len() {
            self.tree[i] = (self.tree[i] as i32 + delta) as u32;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> u32 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest index whose prefix count reaches `k` (1-based).
    fn select(&self, mut k: u32) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] < k {
                pos = next;
                k -= self.tree[next];
            }
            step >>= 1;
        }
        pos + 1
    }
}

/// A permutation of `{1, ..., n}` written as a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("entry {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Entry at 1-based position `j`.
    pub fn at(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Permutation(inv)
    }

    /// Order reversal `v -> n + 1 - v`; swaps the roles of lower and upper records.
    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    /// Composition as mappings: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn to_initial_ranks(&self) -> InitialRanks {
        let n = self.len();
        let mut fw = Fenwick::new(n);
        let mut ranks = Vec::with_capacity(n);
        for &v in &self.0 {
            ranks.push(fw.prefix(v) as usize + 1);
            fw.add(v, 1);
        }
        InitialRanks(ranks)
    }

    /// Ranking permutation of the first `m` entries (the projection onto size `m`).
    pub fn restrict(&self, m: usize) -> Result<Permutation> {
        if m == 0 || m > self.len() {
            return Err(Error::Argument(format!(
                "restriction size {m} outside 1..={}",
                self.len()
            )));
        }
        let mut prefix: Vec<(usize, usize)> =
            self.0[..m].iter().copied().zip(0..m).collect();
        prefix.sort_unstable();
        let mut out = vec![0; m];
        for (rank, &(_, pos)) in prefix.iter().enumerate() {
            out[pos] = rank + 1;
        }
        Ok(Permutation(out))
    }

    /// Position of this permutation in the mixed-radix enumeration of its initial ranks.
    pub fn code(&self) -> usize {
        self.to_initial_ranks().code()
    }

    /// All permutations of size `n`, in code order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let total = factorial_usize(n);
        (0..total).map(move |c| InitialRanks::from_code(n, c).to_permutation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_word(s)?)
    }
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

pub(crate) fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

pub fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

/// The sequence `(i_1, ..., i_n)` with `1 <= i_j <= j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InitialRanks(Vec<usize>);

impl InitialRanks {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidEncoding("empty rank sequence".into()));
        }
        for (idx, &r) in ranks.iter().enumerate() {
            let j = idx + 1;
            if r == 0 || r > j {
                return Err(Error::InvalidEncoding(format!(
                    "rank {r} at position {j} outside 1..={j}"
                )));
            }
        }
        Ok(InitialRanks(ranks))
    }

    pub(crate) fn from_vec_unchecked(ranks: Vec<usize>) -> Self {
        InitialRanks(ranks)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation(decode_ranks(&self.0))
    }

    pub fn code(&self) -> usize {
        let mut code = 0;
        let mut radix = 1;
        for (idx, &r) in self.0.iter().enumerate() {
            code += (r - 1) * radix;
            radix *= idx + 1;
        }
        code
    }

    pub fn from_code(n: usize, mut code: usize) -> InitialRanks {
        let mut ranks = Vec::with_capacity(n);
        for j in 1..=n {
            ranks.push(code % j + 1);
            code /= j;
        }
        InitialRanks(ranks)
    }
}

/// Decodes initial ranks into the word, working from the last position backwards.
pub(crate) fn decode_ranks(ranks: &[usize]) -> Vec<usize> {
    let n = ranks.len();
    let mut fw = Fenwick::full(n);
    let mut out = vec![0; n];
    for j in (0..n).rev() {
        let v = fw.select(ranks[j] as u32);
        out[j] = v;
        fw.add(v, -1);
    }
    out
}

impl fmt::Display for InitialRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.0)
    }
}

impl FromStr for InitialRanks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InitialRanks::new(parse_word(s)?)
    }
}

pub fn to_initial_ranks(p: &Permutation) -> InitialRanks {
    p.to_initial_ranks()
}

pub fn from_initial_ranks(r: &InitialRanks) -> Permutation {
    r.to_permutation()
}

pub fn restrict(p: &Permutation, m: usize) -> Result<Permutation> {
    p.restrict(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn naive_ranks(p: &Permutation) -> Vec<usize> {
        let w = p.as_slice();
        (0..w.len())
            .map(|j| (0..=j).filter(|&k| w[k] <= w[j]).count())
            .collect()
    }

    #[test]
    fn initial_ranks_examples() {
        assert_eq!(perm("1").to_initial_ranks().as_slice(), &[1]);
        let p = perm("3,2,7,6,1,4,8,5");
        assert_eq!(naive_ranks(&p), vec![1, 1, 3, 3, 1, 4, 7, 5]);
        assert_eq!(p.to_initial_ranks().as_slice(), &[1, 1, 3, 3, 1, 4, 7, 5]);
        assert_eq!(perm("2,3,1").to_initial_ranks().as_slice(), &[1, 2, 1]);
    }

    #[test]
    fn decode_examples() {
        let r: InitialRanks = "1,1,3,3,1,4,7,5".parse().unwrap();
        assert_eq!(r.to_permutation(), perm("3,2,7,6,1,4,8,5"));
        let r: InitialRanks = "1,2,1".parse().unwrap();
        assert_eq!(r.to_permutation(), perm("2,3,1"));
        assert_eq!(InitialRanks::new(vec![1]).unwrap().to_permutation(), perm("1"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(InitialRanks::new(vec![1, 3]).is_err());
        assert!(InitialRanks::new(vec![0]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!("1,x".parse::<Permutation>().is_err());
    }

    #[test]
    fn bijection_exhaustive() {
        for n in 1..=8 {
            let mut count = 0;
            for p in Permutation::all(n) {
                let r = p.to_initial_ranks();
                assert_eq!(naive_ranks(&p), r.as_slice());
                assert_eq!(r.to_permutation(), p);
                assert_eq!(InitialRanks::from_code(n, r.code()), r);
                count += 1;
            }
            assert_eq!(count, factorial_usize(n));
        }
    }

    #[test]
    fn restrict_examples() {
        let p = perm("3,2,7,6,1,4,8,5");
        assert_eq!(p.restrict(8).unwrap(), p);
        assert_eq!(p.restrict(4).unwrap(), perm("2,1,4,3"));
        assert_eq!(perm("2,3,1").restrict(1).unwrap(), perm("1"));
        assert!(p.restrict(0).is_err());
        assert!(p.restrict(9).is_err());
    }

    #[test]
    fn restrict_is_rank_prefix() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                for m in 1..=n {
                    let q = p.restrict(m).unwrap();
                    assert_eq!(q.to_initial_ranks().as_slice(), &p.to_initial_ranks().as_slice()[..m]);
                    for m2 in m..=n {
                        assert_eq!(p.restrict(m2).unwrap().restrict(m).unwrap(), q);
                    }
                    assert_eq!(q.code(), p.code() % factorial_usize(m));
                }
            }
        }
    }

    #[test]
    fn large_decode_matches_encode() {
        let n = 5000;
        let ranks: Vec<usize> = (1..=n).map(|j| (j * 7919) % j + 1).collect();
        let r = InitialRanks::new(ranks).unwrap();
        let p = r.to_permutation();
        assert_eq!(p.to_initial_ranks(), r);
    }
}
