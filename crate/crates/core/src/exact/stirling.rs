//! Counts of permutations by proper lower and upper record counts.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::params::TwoParam;
use crate::perm::{factorial_usize, InitialRanks, ENUMERATION_CAP};
use crate::rational::{binomial, count_to_rational, rising, BigCount, Rational};
use crate::records::record_counts;
use crate::error::{Error, Result};

/// `table[l][u]` for a fixed `n`; both indices run over `0..n`.
pub type CountTable = Vec<Vec<BigCount>>;

/// Tables for `n = 1..=n_max` by the recursion
/// `c(n+1, l, u) = c(n, l-1, u) + c(n, l, u-1) + (n-1) c(n, l, u)`.
/// Entry `i` of the result is the table for `n = i + 1`.
pub fn record_stirling_tables(n_max: usize) -> Vec<CountTable> {
    let mut out: Vec<CountTable> = Vec::with_capacity(n_max);
    if n_max == 0 {
        return out;
    }
    out.push(vec![vec![BigCount::one()]]);
    for n in 1..n_max {
        let prev = &out[n - 1];
        let get = |l: usize, u: usize| prev.get(l).and_then(|row| row.get(u));
        let mut next = vec![vec![BigCount::zero(); n + 1]; n + 1];
        for (l, row) in next.iter_mut().enumerate() {
            for (u, cell) in row.iter_mut().enumerate() {
                let mut acc = BigCount::zero();
                if l > 0 {
                    if let Some(c) = get(l - 1, u) {
                        acc += c;
                    }
                }
                if u > 0 {
                    if let Some(c) = get(l, u - 1) {
                        acc += c;
                    }
                }
                if let Some(c) = get(l, u) {
                    acc += c * BigCount::from(n - 1);
                }
                *cell = acc;
            }
        }
        out.push(next);
    }
    out
}

/// Number of permutations of `[n]` with `l` proper lower and `u` proper upper records.
pub fn record_stirling(n: usize, l: usize, u: usize) -> BigCount {
    if n == 0 || l + u >= n {
        return BigCount::zero();
    }
    record_stirling_tables(n)[n - 1][l][u].clone()
}

/// Signless Stirling numbers of the first kind `[n; k]` for `k = 0..=n`.
pub fn stirling_first_row(n: usize) -> Vec<BigCount> {
    let mut row = vec![BigCount::one()];
    for m in 0..n {
        let mut next = vec![BigCount::zero(); m + 2];
        for k in 0..=m {
            next[k + 1] += &row[k];
            next[k] += &row[k] * BigCount::from(m);
        }
        row = next;
    }
    row
}

pub fn stirling_first(n: usize, k: usize) -> BigCount {
    stirling_first_row(n).get(k).cloned().unwrap_or_default()
}

/// `[n-1; l+u] * C(l+u, l)`.
pub fn record_stirling_via_cycles(n: usize, l: usize, u: usize) -> BigCount {
    if n == 0 {
        return BigCount::zero();
    }
    stirling_first(n - 1, l + u) * binomial(l + u, l)
}

/// Tally of record counts over all of `S_n`, by decoding every code.
pub fn record_stirling_enumerated(n: usize) -> Result<CountTable> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "enumeration needs 1 <= n <= {ENUMERATION_CAP}, got {n}"
        )));
    }
    let total = factorial_usize(n);
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![vec![0u64; n]; n],
            |mut acc, code| {
                let p = InitialRanks::from_code(n, code).to_permutation();
                let (l, u) = record_counts(&p);
                acc[l][u] += 1;
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; n]; n],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(BigCount::from).collect())
        .collect())
}

/// Both sides of `Σ c(n,l,u) θ^l ζ^u = (θ+ζ)_{n-1}`.
pub fn generating_function_sides(n: usize, params: &TwoParam) -> (Rational, Rational) {
    let table = &record_stirling_tables(n)[n - 1];
    let mut lhs = Rational::zero();
    for (l, row) in table.iter().enumerate() {
        for (u, c) in row.iter().enumerate() {
            if !c.is_zero() {
                lhs += count_to_rational(c)
                    * num_traits::pow(params.theta.clone(), l)
                    * num_traits::pow(params.zeta.clone(), u);
            }
        }
    }
    let rhs = rising(&(&params.theta + &params.zeta), n - 1);
    (lhs, rhs)
}

pub fn check_generating_function(n: usize, params: &TwoParam) -> bool {
    let (lhs, rhs) = generating_function_sides(n, params);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn c(n: usize, l: usize, u: usize) -> u64 {
        record_stirling(n, l, u).try_into().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(c(1, 0, 0), 1);
        assert_eq!(c(3, 0, 1), 1);
        assert_eq!(c(3, 0, 2), 1);
        assert_eq!(c(3, 1, 0), 1);
        assert_eq!(c(3, 1, 1), 2);
        assert_eq!(c(3, 2, 0), 1);
        assert_eq!(c(3, 0, 0), 0);
        assert_eq!(c(4, 1, 1), 6);
        assert_eq!(c(3, 5, 0), 0);
    }

    #[test]
    fn three_computations_agree() {
        let tables = record_stirling_tables(8);
        for n in 1..=8 {
            let enumerated = record_stirling_enumerated(n).unwrap();
            for l in 0..n {
                for u in 0..n {
                    let t = &tables[n - 1][l][u];
                    assert_eq!(t, &enumerated[l][u], "n={n} l={l} u={u}");
                    assert_eq!(t, &record_stirling_via_cycles(n, l, u));
                    assert_eq!(t, &tables[n - 1][u][l]);
                }
            }
        }
    }

    #[test]
    fn marginal_is_signless_stirling() {
        let tables = record_stirling_tables(9);
        for n in 1..=9 {
            let row = stirling_first_row(n);
            for l in 0..n {
                let sum: BigCount = tables[n - 1][l].iter().sum();
                assert_eq!(sum, row[l + 1]);
            }
        }
    }

    #[test]
    fn generating_function() {
        let p = TwoParam::new(int(2), int(3)).unwrap();
        assert_eq!(generating_function_sides(3, &p), (int(30), int(30)));
        assert_eq!(generating_function_sides(1, &p), (int(1), int(1)));
        for n in 1..=10 {
            assert!(check_generating_function(n, &TwoParam::uniform()));
            assert!(check_generating_function(n, &TwoParam::new(ratio(1, 2), ratio(5, 2)).unwrap()));
        }
    }

    #[test]
    fn stirling_first_values() {
        assert_eq!(stirling_first(4, 2), BigCount::from(11u32));
        assert_eq!(stirling_first(0, 0), BigCount::one());
        assert_eq!(stirling_first(3, 5), BigCount::zero());
    }
}
