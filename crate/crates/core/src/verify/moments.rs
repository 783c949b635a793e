//! Exact and empirical moments of the record counts under two-parameter laws.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::z_score;
use crate::error::{Error, Result};
use crate::params::TwoParam;
use crate::sample::rng::{substream, uniform};

/// Cumulants of a sum of independent Bernoulli indicators, plus the
/// covariance between the lower and upper sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Cumulants {
    pub mean: f64,
    pub variance: f64,
    pub k3: f64,
    pub k4: f64,
}

impl Cumulants {
    fn add(&mut self, p: f64) {
        let q = p * (1.0 - p);
        self.mean += p;
        self.variance += q;
        self.k3 += q * (1.0 - 2.0 * p);
        self.k4 += q * (1.0 - 6.0 * q);
    }

    pub fn skewness(&self) -> f64 {
        self.k3 / self.variance.powf(1.5)
    }

    pub fn excess_kurtosis(&self) -> f64 {
        self.k4 / (self.variance * self.variance)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactCounts {
    pub lower: Cumulants,
    pub upper: Cumulants,
    pub covariance: f64,
}

impl ExactCounts {
    pub fn correlation(&self) -> f64 {
        self.covariance / (self.lower.variance * self.upper.variance).sqrt()
    }
}

/// From the step law: position `j >= 2` is a lower record with probability
/// `θ/(θ+ζ+j-2)`, an upper one with `ζ/(θ+ζ+j-2)`, independently over `j`.
pub fn exact_count_moments(params: &TwoParam, n: usize) -> ExactCounts {
    exact_count_moments_between(params, 2, n)
}

/// The same restricted to positions `from..=to`.
pub fn exact_count_moments_between(params: &TwoParam, from: usize, to: usize) -> ExactCounts {
    let (t, z) = (params.theta_f64(), params.zeta_f64());
    let mut out = ExactCounts {
        lower: Cumulants::default(),
        upper: Cumulants::default(),
        covariance: 0.0,
    };
    for j in from.max(2)..=to {
        let d = t + z + (j - 2) as f64;
        let (pl, pu) = (t / d, z / d);
        out.lower.add(pl);
        out.upper.add(pu);
        out.covariance -= pl * pu;
    }
    out
}

/// `(l, u)` of a two-parameter word of size `n` without storing it.
pub fn sample_counts<R: Rng + ?Sized>(n: usize, theta: f64, zeta: f64, rng: &mut R) -> (usize, usize) {
    let (mut l, mut u) = (0, 0);
    for j in 2..=n {
        let x = uniform(rng) * (theta + zeta + (j - 2) as f64);
        if x < theta {
            l += 1;
        } else if x < theta + zeta || j == 2 {
            u += 1;
        }
    }
    (l, u)
}

/// Empirical moments of one count against exact values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountMoments {
    pub exact_mean: f64,
    pub exact_variance: f64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub mean_se: f64,
    pub variance_se: f64,
    pub z_mean: f64,
    pub z_variance: f64,
    /// `exact_mean / (parameter * ln n)`.
    pub log_ratio: f64,
}

impl CountMoments {
    pub fn from_samples(xs: &[f64], exact: &Cumulants, scale: f64) -> Self {
        let m = sample_moments(xs);
        let nf = xs.len() as f64;
        let mean_se = (m.variance / nf).sqrt();
        let variance_se = ((m.m4 - m.variance * m.variance).max(0.0) / nf).sqrt();
        CountMoments {
            exact_mean: exact.mean,
            exact_variance: exact.variance,
            empirical_mean: m.mean,
            empirical_variance: m.variance,
            mean_se,
            variance_se,
            z_mean: z_score(m.mean, exact.mean, mean_se),
            z_variance: z_score(m.variance, exact.variance, variance_se),
            log_ratio: exact.mean / scale,
        }
    }

    pub fn within(&self, z: f64) -> bool {
        self.z_mean.abs() < z && self.z_variance.abs() < z
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleMoments {
    pub mean: f64,
    pub variance: f64,
    pub m3: f64,
    pub m4: f64,
}

/// Mean and central moments, variance with divisor `N`.
pub fn sample_moments(xs: &[f64]) -> SampleMoments {
    let nf = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for x in xs {
        let d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    SampleMoments {
        mean,
        variance: m2 / nf,
        m3: m3 / nf,
        m4: m4 / nf,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub lower: CountMoments,
    pub upper: CountMoments,
}

/// Exact moments of `l` and `u` at size `n` against `trials` simulated words.
pub fn record_moments(params: &TwoParam, n: usize, trials: u64, seed: u64) -> Result<MomentReport> {
    if n == 0 || trials < 2 {
        return Err(Error::Argument("need n >= 1 and at least two trials".into()));
    }
    let (t, z) = (params.theta_f64(), params.zeta_f64());
    let runs: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|k| sample_counts(n, t, z, &mut substream(seed, k)))
        .collect();
    let exact = exact_count_moments(params, n);
    let ln = (n as f64).ln();
    let ls: Vec<f64> = runs.iter().map(|r| r.0 as f64).collect();
    let us: Vec<f64> = runs.iter().map(|r| r.1 as f64).collect();
    Ok(MomentReport {
        n,
        trials,
        seed,
        lower: CountMoments::from_samples(&ls, &exact.lower, t * ln),
        upper: CountMoments::from_samples(&us, &exact.upper, z * ln),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laws::Model;
    use crate::exact::table::pushforward_table;
    use crate::rational::{int, ratio, to_f64};
    use crate::records::record_counts;

    #[test]
    fn harmonic_mean_for_uniform() {
        let e = exact_count_moments(&TwoParam::uniform(), 10);
        let h: f64 = (2..=10).map(|j| 1.0 / j as f64).sum();
        assert!((e.lower.mean - h).abs() < 1e-12);
        assert_eq!(exact_count_moments(&TwoParam::uniform(), 1).lower.mean, 0.0);
    }

    #[test]
    fn matches_table_moments() {
        for (t, z) in [(int(1), int(1)), (int(2), int(3)), (ratio(1, 2), ratio(5, 2))] {
            let p = TwoParam::new(t, z).unwrap();
            for n in 1..=7 {
                let table = pushforward_table(n, &Model::TwoParam(p.clone())).unwrap();
                let (mut ml, mut vl, mut cov, mut mu) = (0.0, 0.0, 0.0, 0.0);
                for (w, prob) in table.entries() {
                    let (l, u) = record_counts(&w);
                    let q = to_f64(prob);
                    ml += q * l as f64;
                    mu += q * u as f64;
                    vl += q * (l * l) as f64;
                    cov += q * (l * u) as f64;
                }
                let e = exact_count_moments(&p, n);
                assert!((e.lower.mean - ml).abs() < 1e-12);
                assert!((e.upper.mean - mu).abs() < 1e-12);
                assert!((e.lower.variance - (vl - ml * ml)).abs() < 1e-12);
                assert!((e.covariance - (cov - ml * mu)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn log_ratio_band() {
        let e = exact_count_moments(&TwoParam::uniform(), 10_000);
        let r = e.lower.mean / (10_000f64).ln();
        assert!(r > 0.9 && r < 1.1);
    }

    #[test]
    fn simulated_moments_agree() {
        let p = TwoParam::new(int(2), int(1)).unwrap();
        let r = record_moments(&p, 2000, 2000, 3).unwrap();
        assert!(r.lower.within(4.0), "{r:?}");
        assert!(r.upper.within(4.0), "{r:?}");
        assert!(record_moments(&p, 5, 1, 0).is_err());
    }
}
