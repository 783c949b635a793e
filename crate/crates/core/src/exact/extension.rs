//! Counts of words of size `n2` with given record counts whose restriction
//! to `[n]` has given record counts.

use num_traits::Zero;

use super::stirling::record_stirling;
use crate::error::{Error, Result};
use crate::perm::{InitialRanks, Permutation, ENUMERATION_CAP};
use crate::rational::BigCount;
use crate::records::record_counts;

pub const EXTENSION_CAP: usize = 60;

/// `c(n, l, u)` times the number of rank paths from counts `(l, u)` at
/// size `n` to `(l2, u2)` at size `n2`: each step adds a lower record, an
/// upper record, or one of `s - 1` interior ranks at size `s`.
pub fn extension_count(n: usize, l: usize, u: usize, n2: usize, l2: usize, u2: usize) -> Result<BigCount> {
    if n == 0 || n > n2 {
        return Err(Error::Argument(format!("need 1 <= n <= n2, got n = {n}, n2 = {n2}")));
    }
    if n2 > EXTENSION_CAP {
        return Err(Error::Resource(format!("n2 = {n2} exceeds {EXTENSION_CAP}")));
    }
    let base = record_stirling(n, l, u);
    if base.is_zero() || l2 < l || u2 < u {
        return Ok(BigCount::zero());
    }
    let (dl, du) = (l2 - l, u2 - u);
    // paths[a][b]: ways to have gained a lower and b upper records so far
    let mut paths = vec![vec![BigCount::zero(); du + 1]; dl + 1];
    paths[0][0] = BigCount::from(1u32);
    for s in n..n2 {
        let mut next = vec![vec![BigCount::zero(); du + 1]; dl + 1];
        for a in 0..=dl {
            for b in 0..=du {
                let c = &paths[a][b];
                if c.is_zero() {
                    continue;
                }
                next[a][b] += c * BigCount::from(s - 1);
                if a < dl {
                    next[a + 1][b] += c;
                }
                if b < du {
                    next[a][b + 1] += c;
                }
            }
        }
        paths = next;
    }
    Ok(base * &paths[dl][du])
}

/// The same count by scanning `S_{n2}`.
pub fn extension_count_brute(n: usize, l: usize, u: usize, n2: usize, l2: usize, u2: usize) -> Result<usize> {
    if n == 0 || n > n2 || n2 > ENUMERATION_CAP {
        return Err(Error::Resource(format!("brute force needs 1 <= n <= n2 <= {ENUMERATION_CAP}")));
    }
    Ok(Permutation::all(n2)
        .filter(|p| record_counts(p) == (l2, u2))
        .filter(|p| {
            let ranks = p.to_initial_ranks();
            let prefix = InitialRanks::new(ranks.as_slice()[..n].to_vec()).expect("prefix of ranks");
            record_counts(&prefix.to_permutation()) == (l, u)
        })
        .count())
}
