//! Projection of a longer word onto `S_n` through a sliding window of
//! middle order statistics, for integer `θ, ζ >= 1`.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Number of extra leading entries, `θ + ζ - 2`.
pub fn window_depth(theta: usize, zeta: usize) -> Result<usize> {
    if theta == 0 || zeta == 0 {
        return Err(Error::Argument(format!(
            "window parameters must be positive integers, got ({theta}, {zeta})"
        )));
    }
    Ok(theta + zeta - 2)
}

/// Selects `n` values from `xs` (of length `n + d`, distinct): the first is
/// the `θ`-th smallest of the first `d + 1`; afterwards each new entry is
/// kept if its initial rank `s` lies in `θ..=j+θ-1`, and otherwise replaced
/// by the element of rank `θ` (when `s < θ`) or of rank `j+θ-1` (when
/// `s > j+θ-1`) among the first `d + j`.
pub fn window_select<T: PartialOrd + Copy>(xs: &[T], theta: usize, zeta: usize) -> Result<Vec<T>> {
    let d = window_depth(theta, zeta)?;
    if xs.len() <= d {
        return Err(Error::Argument(format!(
            "need more than {d} values, got {}",
            xs.len()
        )));
    }
    let n = xs.len() - d;
    let mut sorted: Vec<T> = Vec::with_capacity(xs.len());
    let mut out = Vec::with_capacity(n);
    for &x in &xs[..=d] {
        let pos = sorted.partition_point(|y| *y < x);
        sorted.insert(pos, x);
    }
    out.push(sorted[theta - 1]);
    for j in 2..=n {
        let x = xs[d + j - 1];
        let pos = sorted.partition_point(|y| *y < x);
        sorted.insert(pos, x);
        let s = pos + 1;
        let chosen = if s < theta {
            sorted[theta - 1]
        } else if s > j + theta - 1 {
            sorted[j + theta - 2]
        } else {
            x
        };
        out.push(chosen);
    }
    Ok(out)
}

/// Ranking permutation of distinct comparable values.
pub fn rank_distinct<T: PartialOrd>(xs: &[T]) -> Permutation {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("comparable values"));
    let mut w = vec![0; xs.len()];
    for (rank, &i) in idx.iter().enumerate() {
        w[i] = rank + 1;
    }
    Permutation::from_vec_unchecked(w)
}

/// The deterministic map `S_{n+d} -> S_n`.
pub fn window_project(w: &Permutation, theta: usize, zeta: usize) -> Result<Permutation> {
    let picked = window_select(w.as_slice(), theta, zeta)?;
    Ok(rank_distinct(&picked))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_window_is_identity() {
        for p in Permutation::all(5) {
            assert_eq!(window_project(&p, 1, 1).unwrap(), p);
        }
    }

    #[test]
    fn picked_values_are_distinct_middle_values() {
        for w in Permutation::all(7) {
            let picked = window_select(w.as_slice(), 3, 2).unwrap();
            assert_eq!(picked.len(), 4);
            let mut sorted = picked.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), 4);
        }
    }

    #[test]
    fn errors() {
        assert!(window_depth(0, 1).is_err());
        let w = Permutation::identity(2);
        assert!(window_select(w.as_slice(), 2, 2).is_err());
    }
}
