//! Record indicators, type thinning and allocation uniformity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::laws::Model;
use crate::exact::table::pushforward_table;
use crate::perm::Permutation;
use crate::rational::{binomial, count_to_rational, int, Rational};

/// `B_j` for `j = 2..=n` and the types `I_k` (true = lower) of the proper
/// records in order of occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorStats {
    pub b: Vec<bool>,
    pub types: Vec<bool>,
}

impl IndicatorStats {
    pub fn from_perm(p: &Permutation) -> Self {
        let ranks = p.to_initial_ranks();
        let mut b = Vec::with_capacity(p.len().saturating_sub(1));
        let mut types = Vec::new();
        for (idx, &r) in ranks.as_slice().iter().enumerate().skip(1) {
            let lower = r == 1;
            let rec = lower || r == idx + 1;
            b.push(rec);
            if rec {
                types.push(lower);
            }
        }
        IndicatorStats { b, types }
    }

    /// `S_n`.
    pub fn record_count(&self) -> usize {
        self.types.len()
    }

    /// `l / (l + u)`, or `None` without proper records.
    pub fn thinning_estimate(&self) -> Option<f64> {
        let r = self.types.len();
        (r > 0).then(|| self.types.iter().filter(|&&t| t).count() as f64 / r as f64)
    }

    /// The `η` solving `Σ_{j=2}^n η / (η + j - 2) = S_n`; `None` when `S_n`
    /// is at either end of its range.
    pub fn intensity_estimate(&self) -> Option<f64> {
        let n = self.b.len() + 1;
        let s = self.record_count() as f64;
        if self.record_count() <= 1 || self.record_count() >= n - 1 {
            return None;
        }
        let mean = |eta: f64| (2..=n).map(|j| eta / (eta + (j - 2) as f64)).sum::<f64>();
        let (mut lo, mut hi) = (1e-12, 1.0);
        while mean(hi) < s {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mean(mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndicatorReport {
    pub n: usize,
    /// `B_2, ..., B_n` independent Bernoulli `(θ+ζ)/(θ+ζ+j-2)`.
    pub bernoulli: bool,
    /// Types independent Bernoulli `θ/(θ+ζ)`, independent of the `B`s.
    pub thinning: bool,
    /// Given the record positions and `(l, u)`, all `C(l+u, l)` type
    /// allocations equally likely; checked for the uniform law only.
    pub allocation: Option<bool>,
    pub thinning_probability: String,
}

impl IndicatorReport {
    pub fn holds(&self) -> bool {
        self.bernoulli && self.thinning && self.allocation.unwrap_or(true)
    }
}

fn bits(mask: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| mask >> i & 1 == 1).collect()
}

/// Exact factorization checks on the pushforward table of `model` at size `n`.
pub fn check_indicator_structure(model: &Model, n: usize) -> Result<IndicatorReport> {
    let (theta, zeta, uniform) = match model {
        Model::TwoParam(p) => (p.theta.clone(), p.zeta.clone(), p.theta.is_one() && p.zeta.is_one()),
        Model::General(g) => (g.theta.clone(), g.zeta.clone(), false),
        _ => return Err(Error::Argument("indicator structure needs theta and zeta".into())),
    };
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let table = pushforward_table(n, model)?;
    let c = &theta + &zeta;
    let p = &theta / &c;
    let rec_prob = |j: usize| &c / (&c + int(j as i64 - 2));
    let joint: BTreeMap<(Vec<bool>, Vec<bool>), Rational> = table.marginal(|w| {
        let s = IndicatorStats::from_perm(w);
        (s.b, s.types)
    });
    let mut b_marg: BTreeMap<Vec<bool>, Rational> = BTreeMap::new();
    for ((b, _), q) in &joint {
        *b_marg.entry(b.clone()).or_insert_with(Rational::zero) += q;
    }
    let m = n - 1;
    let mut bernoulli = true;
    let mut thinning = true;
    for mask in 0..1usize << m {
        let b = bits(mask, m);
        let mut expect = Rational::one();
        for (i, &x) in b.iter().enumerate() {
            let q = rec_prob(i + 2);
            expect *= if x { q } else { Rational::one() - q };
        }
        let got = b_marg.get(&b).cloned().unwrap_or_else(Rational::zero);
        bernoulli &= got == expect;
        let r = b.iter().filter(|&&x| x).count();
        for tmask in 0..1usize << r {
            let types = bits(tmask, r);
            let mut e = expect.clone();
            for &t in &types {
                e *= if t { p.clone() } else { Rational::one() - &p };
            }
            let got = joint.get(&(b.clone(), types)).cloned().unwrap_or_else(Rational::zero);
            thinning &= got == e;
        }
    }
    let allocation = uniform.then(|| {
        let mut groups: BTreeMap<(Vec<bool>, usize), Vec<Rational>> = BTreeMap::new();
        for ((b, types), q) in &joint {
            let l = types.iter().filter(|&&t| t).count();
            groups.entry((b.clone(), l)).or_default().push(q.clone());
        }
        groups.iter().all(|((b, l), qs)| {
            let r = b.iter().filter(|&&x| x).count();
            let total: Rational = qs.iter().sum();
            let k = count_to_rational(&binomial(r, *l));
            Rational::from_integer(qs.len().into()) == k
                && qs.iter().all(|q| q.clone() * &k == total)
        })
    });
    Ok(IndicatorReport {
        n,
        bernoulli,
        thinning,
        allocation,
        thinning_probability: crate::rational::format_rational(&p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{GeneralParams, TwoParam};

    #[test]
    fn stats_of_a_word() {
        let s = IndicatorStats::from_perm(&"3,1,4,2,5".parse().unwrap());
        assert_eq!(s.b, vec![true, true, false, true]);
        assert_eq!(s.types, vec![true, false, false]);
        assert_eq!(s.record_count(), 3);
        assert!((s.thinning_estimate().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn intensity_estimate_inverts_the_mean() {
        let s = IndicatorStats {
            b: vec![true, false, true, false, false, true, false],
            types: vec![true, false, true],
        };
        let eta = s.intensity_estimate().unwrap();
        let mean: f64 = (2..=8).map(|j| eta / (eta + (j - 2) as f64)).sum();
        assert!((mean - 3.0).abs() < 1e-9);
    }

    #[test]
    fn uniform_law_all_three() {
        for n in 1..=7 {
            let r = check_indicator_structure(&Model::TwoParam(TwoParam::uniform()), n).unwrap();
            assert!(r.holds() && r.allocation == Some(true), "{r:?}");
        }
    }

    #[test]
    fn skewed_two_param() {
        let p = TwoParam::parse("3", "1").unwrap();
        for n in 1..=6 {
            let r = check_indicator_structure(&Model::TwoParam(p.clone()), n).unwrap();
            assert!(r.bernoulli && r.thinning && r.allocation.is_none());
            assert_eq!(r.thinning_probability, "3/4");
        }
    }

    #[test]
    fn general_alpha_breaks_bernoulli() {
        let g = GeneralParams::parse("1", "1", "tail:1/2").unwrap();
        let r = check_indicator_structure(&Model::General(g), 5).unwrap();
        assert!(!r.bernoulli);
    }
}
