//! Total variation and chi-square between an exact table and samples.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exact::table::DistTable;
use crate::perm::{factorial_usize, Permutation, ENUMERATION_CAP};
use crate::rational::to_f64;
use crate::sample::rng::substream;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub total_variation: f64,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
    pub samples: u64,
}

impl DivergenceReport {
    /// `p > 10^-3` and `TV < 3 sqrt(n! / N)`.
    pub fn accepts(&self, n: usize) -> bool {
        self.p_value > 1e-3 && self.total_variation < self.tv_bound(n)
    }

    pub fn tv_bound(&self, n: usize) -> f64 {
        3.0 * (factorial_usize(n) as f64 / self.samples as f64).sqrt()
    }
}

/// Counts indexed by permutation code.
pub fn compare_counts(table: &DistTable, counts: &[u64]) -> Result<DivergenceReport> {
    if counts.len() != table.probs().len() {
        return Err(Error::Argument(format!(
            "{} counts for a table over {} permutations",
            counts.len(),
            table.probs().len()
        )));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Argument("no samples".into()));
    }
    let nf = total as f64;
    let (mut tv, mut chi, mut cells) = (0.0, 0.0, 0usize);
    for (p, &c) in table.probs().iter().zip(counts) {
        let p = to_f64(p);
        let freq = c as f64 / nf;
        tv += (freq - p).abs();
        if p > 0.0 {
            let e = p * nf;
            chi += (c as f64 - e).powi(2) / e;
            cells += 1;
        } else if c > 0 {
            chi = f64::INFINITY;
        }
    }
    let dof = cells.saturating_sub(1).max(1);
    let p_value = if chi.is_infinite() {
        0.0
    } else {
        let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Argument(e.to_string()))?;
        (1.0 - dist.cdf(chi)).max(0.0)
    };
    Ok(DivergenceReport {
        total_variation: tv / 2.0,
        chi_square: chi,
        dof,
        p_value,
        samples: total,
    })
}

pub fn compare_exact_empirical(table: &DistTable, samples: &[Permutation]) -> Result<DivergenceReport> {
    let mut counts = vec![0u64; table.probs().len()];
    for p in samples {
        if p.len() != table.n() {
            return Err(Error::Argument(format!(
                "sample of size {} against a table of size {}",
                p.len(),
                table.n()
            )));
        }
        counts[p.code()] += 1;
    }
    compare_counts(table, &counts)
}

/// Code-indexed counts of `trials` draws; trial `t` uses substream `t` of `seed`.
pub fn empirical_counts<F>(n: usize, trials: u64, seed: u64, draw: F) -> Result<Vec<u64>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Permutation> + Sync,
{
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!("counting needs n <= {ENUMERATION_CAP}")));
    }
    let size = factorial_usize(n);
    (0..trials)
        .into_par_iter()
        .try_fold(
            || vec![0u64; size],
            |mut acc, t| {
                let p = draw(&mut substream(seed, t))?;
                if p.len() != n {
                    return Err(Error::Argument(format!("sampler returned size {}", p.len())));
                }
                acc[p.code()] += 1;
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u64; size],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laws::Model;
    use crate::exact::table::pushforward_table;
    use crate::params::TwoParam;
    use crate::rational::int;
    use crate::sample::sample_two_param_with;

    #[test]
    fn exact_frequencies_have_zero_distance() {
        let t = DistTable::uniform(3).unwrap();
        let r = compare_counts(&t, &[5; 6]).unwrap();
        assert_eq!(r.total_variation, 0.0);
        assert_eq!(r.chi_square, 0.0);
        assert_eq!(r.dof, 5);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_mismatch() {
        let t = DistTable::uniform(3).unwrap();
        assert!(compare_exact_empirical(&t, &["1,2".parse().unwrap()]).is_err());
        assert!(compare_counts(&t, &[1; 2]).is_err());
    }

    #[test]
    fn sampler_accepted_and_swapped_rejected() {
        let p = TwoParam::new(int(2), int(3)).unwrap();
        let table = pushforward_table(4, &Model::TwoParam(p.clone())).unwrap();
        let good = empirical_counts(4, 100_000, 11, |r| sample_two_param_with(4, &p, r)).unwrap();
        assert!(compare_counts(&table, &good).unwrap().accepts(4));
        let q = p.swapped();
        let bad = empirical_counts(4, 100_000, 11, |r| sample_two_param_with(4, &q, r)).unwrap();
        assert!(compare_counts(&table, &bad).unwrap().p_value < 1e-3);
    }

    #[test]
    fn counts_are_deterministic() {
        let p = TwoParam::uniform();
        let a = empirical_counts(3, 1000, 5, |r| sample_two_param_with(3, &p, r)).unwrap();
        let b = empirical_counts(3, 1000, 5, |r| sample_two_param_with(3, &p, r)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 1000);
    }
}
