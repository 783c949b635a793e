//! Monte Carlo checks of the large-`n` record laws under two-parameter models.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;
use statrs::distribution::{Beta, ContinuousCDF};

use super::moments::{exact_count_moments, exact_count_moments_between, sample_moments};
use super::{z_score, Report};
use crate::error::{Error, Result};
use crate::params::TwoParam;
use crate::sample::rng::{substream, uniform};

/// Largest `n * trials` accepted.
pub const STEP_BUDGET: u64 = 20_000_000_000;

const Z: f64 = 4.0;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Experiment {
    ShapeConvergence,
    PoissonTimes,
    PoissonValues,
    AdjacentPairs,
    GaussianCounts,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::ShapeConvergence,
        Experiment::PoissonTimes,
        Experiment::PoissonValues,
        Experiment::AdjacentPairs,
        Experiment::GaussianCounts,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::ShapeConvergence => "shape-convergence",
            Experiment::PoissonTimes => "poisson-times",
            Experiment::PoissonValues => "poisson-values",
            Experiment::AdjacentPairs => "adjacent-pairs",
            Experiment::GaussianCounts => "gaussian-counts",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown experiment {s:?}")))
    }
}

/// Final record values and times of one simulated two-parameter word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordRun {
    pub n: usize,
    pub center: usize,
    /// `(time, value)` of the proper lower records in order of occurrence.
    pub lower: Vec<(usize, usize)>,
    pub upper: Vec<(usize, usize)>,
}

/// Simulates a word of size `n` and tracks only its records: for each lower
/// record the number of values below it, for each upper record the number
/// above, updated as later values arrive.
pub fn simulate_records<R: Rng + ?Sized>(n: usize, theta: f64, zeta: f64, rng: &mut R) -> RecordRun {
    let mut below_center = 0usize;
    let mut low: Vec<usize> = Vec::new();
    let mut up: Vec<usize> = Vec::new();
    let mut low_t = Vec::new();
    let mut up_t = Vec::new();
    for j in 2..=n {
        let m = j - 1;
        let x = uniform(rng) * (theta + zeta + (j - 2) as f64);
        let i = if x < theta {
            1
        } else if x < theta + zeta || j == 2 {
            j
        } else {
            (2 + (x - theta - zeta) as usize).min(j - 1)
        };
        if i <= below_center + 1 {
            below_center += 1;
        }
        for c in low.iter_mut() {
            if *c + 1 >= i {
                *c += 1;
            } else {
                break;
            }
        }
        for a in up.iter_mut() {
            if i + *a > m {
                *a += 1;
            } else {
                break;
            }
        }
        if i == 1 {
            low.push(0);
            low_t.push(j);
        } else if i == j {
            up.push(0);
            up_t.push(j);
        }
    }
    RecordRun {
        n,
        center: below_center + 1,
        lower: low_t.into_iter().zip(low.into_iter().map(|c| c + 1)).collect(),
        upper: up_t.into_iter().zip(up.into_iter().map(|a| n - a)).collect(),
    }
}

fn runs<T: Send>(
    n: usize,
    trials: u64,
    seed: u64,
    p: &TwoParam,
    f: impl Fn(RecordRun) -> T + Sync,
) -> Vec<T> {
    let (t, z) = (p.theta_f64(), p.zeta_f64());
    (0..trials)
        .into_par_iter()
        .map(|k| f(simulate_records(n, t, z, &mut substream(seed, k))))
        .collect()
}

struct MeanCheck {
    mean: f64,
    se: f64,
    z: f64,
}

fn mean_check(xs: &[f64], expected: f64) -> MeanCheck {
    let m = sample_moments(xs);
    let se = (m.variance / xs.len() as f64).sqrt();
    MeanCheck {
        mean: m.mean,
        se,
        z: z_score(m.mean, expected, se),
    }
}

fn add_mean(r: Report, key: &str, c: &MeanCheck, expected: f64) -> Report {
    r.stat(&format!("{key}_mean"), c.mean)
        .stat(&format!("{key}_expected"), expected)
        .stat(&format!("{key}_se"), c.se)
        .stat(&format!("{key}_z"), c.z)
        .require(&format!("{key}_within_4se"), c.z.abs() < Z)
}

/// Sample variance against `expected`, with standard error from the fourth moment.
fn add_variance(r: Report, key: &str, xs: &[f64], expected: f64) -> Report {
    let m = sample_moments(xs);
    let se = ((m.m4 - m.variance * m.variance).max(0.0) / xs.len() as f64).sqrt();
    let z = z_score(m.variance, expected, se);
    r.stat(&format!("{key}_variance"), m.variance)
        .stat(&format!("{key}_variance_expected"), expected)
        .stat(&format!("{key}_variance_z"), z)
        .require(&format!("{key}_variance_within_4se"), z.abs() < Z)
}

/// `∫_a^b P(ρ_0 > x) dx / x` by Simpson's rule in `ln x`.
fn tail_log_integral(dist: &Beta, a: f64, b: f64, upper: bool) -> f64 {
    let steps = 2000;
    let (la, lb) = (a.ln(), b.ln());
    let h = (lb - la) / steps as f64;
    let f = |s: f64| {
        let x = s.exp();
        if upper {
            dist.cdf(1.0 - x)
        } else {
            1.0 - dist.cdf(x)
        }
    };
    let mut acc = f(la) + f(lb);
    for k in 1..steps {
        acc += f(la + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

pub fn mc_asymptotics(exp: Experiment, params: &TwoParam, n: usize, trials: u64, seed: u64) -> Result<Report> {
    if n < 2 || trials < 2 {
        return Err(Error::Argument("need n >= 2 and at least two trials".into()));
    }
    if (n as u64).saturating_mul(trials) > STEP_BUDGET {
        return Err(Error::Resource(format!(
            "n * trials = {} exceeds the budget {STEP_BUDGET}",
            (n as u128) * (trials as u128)
        )));
    }
    let (t, z) = (params.theta_f64(), params.zeta_f64());
    let c = t + z;
    let nf = n as f64;
    let base = Report::new(exp.name())
        .params(json!({"theta": params.theta.to_string(), "zeta": params.zeta.to_string()}))
        .n(n)
        .sampling(trials, seed);
    let report = match exp {
        Experiment::ShapeConvergence => {
            let rows = runs(n, trials, seed, params, |r| {
                let lo = r.lower.first().map_or(0.0, |x| x.1 as f64 / nf);
                let hi = r.upper.first().map_or(1.0, |x| x.1 as f64 / nf);
                [r.center as f64 / nf, lo, hi]
            });
            let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<f64>>();
            let e0 = t / c;
            let e_lo = e0 * t / (t + 1.0);
            let e_hi = 1.0 - (z / c) * z / (z + 1.0);
            let e0sq = t * (t + 1.0) / (c * (c + 1.0));
            let sq: Vec<f64> = col(0).iter().map(|x| x * x).collect();
            let r = add_mean(base, "rho0", &mean_check(&col(0), e0), e0);
            let r = add_mean(r, "rho0_sq", &mean_check(&sq, e0sq), e0sq);
            let r = add_mean(r, "rho_minus1", &mean_check(&col(1), e_lo), e_lo);
            add_mean(r, "rho_plus1", &mean_check(&col(2), e_hi), e_hi)
        }
        Experiment::PoissonTimes => {
            let a = 0.1;
            let from = (a * nf).ceil() as usize;
            let rows = runs(n, trials, seed, params, |r| {
                let l = r.lower.iter().filter(|x| x.0 >= from).count() as f64;
                let u = r.upper.iter().filter(|x| x.0 >= from).count() as f64;
                [l, u]
            });
            let ls: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            let us: Vec<f64> = rows.iter().map(|r| r[1]).collect();
            let lam_l = t * (1.0 / a).ln();
            let lam_u = z * (1.0 / a).ln();
            let exact = exact_count_moments_between(params, from, n);
            let r = base
                .stat("window", json!([a, 1.0]))
                .stat("lower_exact_finite_n", exact.lower.mean)
                .stat("upper_exact_finite_n", exact.upper.mean);
            let r = add_mean(r, "lower", &mean_check(&ls, lam_l), lam_l);
            let r = add_variance(r, "lower", &ls, lam_l);
            let r = add_mean(r, "upper", &mean_check(&us, lam_u), lam_u);
            add_variance(r, "upper", &us, lam_u)
        }
        Experiment::PoissonValues => {
            let (a, b) = (0.01, 0.1);
            let rows = runs(n, trials, seed, params, |r| {
                let inside = |v: usize| {
                    let x = v as f64 / nf;
                    x >= a && x <= b
                };
                let inside_up = |v: usize| {
                    let y = 1.0 - v as f64 / nf;
                    y >= a && y <= b
                };
                let l = r.lower.iter().filter(|x| inside(x.1)).count() as f64;
                let u = r.upper.iter().filter(|x| inside_up(x.1)).count() as f64;
                let rho0 = r.center as f64 / nf;
                [l, u, rho0]
            });
            let dist = Beta::new(t, z).map_err(|e| Error::Domain(e.to_string()))?;
            let e_l = t * tail_log_integral(&dist, a, b, false);
            let e_u = z * tail_log_integral(&dist, a, b, true);
            let ls: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            let us: Vec<f64> = rows.iter().map(|r| r[1]).collect();
            // given rho_0 > b the lower count is Poisson(θ ln(b/a))
            let cond: Vec<f64> = rows.iter().filter(|r| r[2] > b).map(|r| r[0]).collect();
            let lam = t * (b / a).ln();
            let r = base.stat("value_window", json!([a, b]));
            let r = add_mean(r, "lower", &mean_check(&ls, e_l), e_l);
            let r = add_mean(r, "upper", &mean_check(&us, e_u), e_u);
            let r = r.stat("conditional_trials", cond.len() as u64);
            if cond.len() >= 2 {
                let r = add_mean(r, "lower_given_center", &mean_check(&cond, lam), lam);
                add_variance(r, "lower_given_center", &cond, lam)
            } else {
                r
            }
        }
        Experiment::AdjacentPairs => {
            let rows = runs(n, trials, seed, params, |r| {
                r.lower.windows(2).filter(|w| w[1].0 == w[0].0 + 1).count() as f64
            });
            let limit = t * t / c;
            let finite = t * t * (1.0 / c - 1.0 / (c + nf - 2.0));
            let var_rho0 = t * z / (c * c * (c + 1.0));
            let r = base
                .stat("finite_n_mean", finite)
                .stat("mixed_poisson_variance", limit + t * t * var_rho0)
                .stat("variance", sample_moments(&rows).variance);
            add_mean(r, "pairs", &mean_check(&rows, limit), limit)
        }
        Experiment::GaussianCounts => {
            let (tt, zz) = (t, z);
            let rows: Vec<(usize, usize)> = (0..trials)
                .into_par_iter()
                .map(|k| super::moments::sample_counts(n, tt, zz, &mut substream(seed, k)))
                .collect();
            let exact = exact_count_moments(params, n);
            let std = |x: usize, m: f64, v: f64| (x as f64 - m) / v.sqrt();
            let ls: Vec<f64> = rows.iter().map(|r| std(r.0, exact.lower.mean, exact.lower.variance)).collect();
            let us: Vec<f64> = rows.iter().map(|r| std(r.1, exact.upper.mean, exact.upper.variance)).collect();
            let nt = trials as f64;
            let mut r = base;
            for (key, xs, cum) in [("lower", &ls, &exact.lower), ("upper", &us, &exact.upper)] {
                let m = sample_moments(xs);
                let skew = m.m3 / m.variance.powf(1.5);
                let kurt = m.m4 / (m.variance * m.variance) - 3.0;
                let z_mean = z_score(m.mean, 0.0, (1.0 / nt).sqrt());
                let z_var = z_score(m.variance, 1.0, ((2.0 + cum.excess_kurtosis()) / nt).sqrt());
                let z_skew = z_score(skew, cum.skewness(), (6.0 / nt).sqrt());
                let z_kurt = z_score(kurt, cum.excess_kurtosis(), (24.0 / nt).sqrt());
                r = r
                    .stat(&format!("{key}_skewness"), skew)
                    .stat(&format!("{key}_skewness_exact"), cum.skewness())
                    .stat(&format!("{key}_excess_kurtosis"), kurt)
                    .stat(&format!("{key}_excess_kurtosis_exact"), cum.excess_kurtosis())
                    .require(&format!("{key}_mean_within_4se"), z_mean.abs() < Z)
                    .require(&format!("{key}_variance_within_4se"), z_var.abs() < Z)
                    .require(&format!("{key}_skewness_within_4se"), z_skew.abs() < Z)
                    .require(&format!("{key}_kurtosis_within_4se"), z_kurt.abs() < Z);
            }
            let corr = ls.iter().zip(&us).map(|(a, b)| a * b).sum::<f64>() / nt;
            let exact_corr = exact.correlation();
            let se = (1.0 - exact_corr * exact_corr) / nt.sqrt();
            r.stat("correlation", corr)
                .stat("correlation_exact_finite_n", exact_corr)
                .stat("correlation_se", se)
                .require("correlation_within_4se_of_exact", (corr - exact_corr).abs() < Z * se)
                .require("correlation_within_4se_of_zero", corr.abs() < Z * se)
        }
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::InitialRanks;
    use crate::records::extract_records;
    use crate::sample::models::two_param_ranks;

    #[test]
    fn tracked_records_match_decoded_words() {
        for seed in 0..200 {
            let n = 1 + (seed as usize % 40);
            let run = simulate_records(n, 1.5, 0.7, &mut substream(seed, 0));
            let ranks = two_param_ranks(n, 1.5, 0.7, &mut substream(seed, 0));
            let w = InitialRanks::new(ranks).unwrap().to_permutation();
            let prof = extract_records(&w);
            assert_eq!(run.center, w.at(1));
            let l = prof.lower_count() as isize;
            let lower: Vec<(usize, usize)> =
                (1..=l).map(|k| (prof.time(-k), prof.values().value(-k))).collect();
            let upper: Vec<(usize, usize)> = (1..=prof.upper_count() as isize)
                .map(|k| (prof.time(k), prof.values().value(k)))
                .collect();
            assert_eq!(run.lower, lower);
            assert_eq!(run.upper, upper);
        }
    }

    #[test]
    fn names_and_budget() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        let p = TwoParam::uniform();
        assert!(matches!(
            mc_asymptotics(Experiment::PoissonTimes, &p, 1 << 40, 1 << 20, 0),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn small_runs_pass() {
        let p = TwoParam::uniform();
        for e in Experiment::ALL {
            let r = mc_asymptotics(e, &p, 20_000, 400, 9).unwrap();
            assert!(r.verdict, "{}", r.to_json());
        }
    }
}
