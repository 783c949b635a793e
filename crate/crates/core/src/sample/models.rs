//! Samplers for the two-parameter, generalized, limit and window models.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::rng::{substream, uniform};
use super::stream::{StreamModel, StreamState};
use crate::error::{Error, Result};
use crate::exact::laws::Model;
use crate::exact::window::{rank_distinct, window_depth, window_select};
use crate::params::{GeneralParams, LimitFamily, TwoParam};
use crate::perm::{InitialRanks, Permutation};
use crate::rational::to_f64;

/// Independent initial ranks: `1` with weight `θ`, `j` with weight `ζ`,
/// every other rank with weight 1; one uniform per position `j >= 2`.
pub fn two_param_ranks<R: Rng + ?Sized>(n: usize, theta: f64, zeta: f64, rng: &mut R) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(n);
    if n == 0 {
        return ranks;
    }
    ranks.push(1);
    for j in 2..=n {
        let x = uniform(rng) * (theta + zeta + (j - 2) as f64);
        let r = if x < theta {
            1
        } else if x < theta + zeta || j == 2 {
            j
        } else {
            (2 + (x - theta - zeta) as usize).min(j - 1)
        };
        ranks.push(r);
    }
    ranks
}

pub fn sample_two_param_with(n: usize, params: &TwoParam, rng: &mut ChaCha8Rng) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let ranks = two_param_ranks(n, params.theta_f64(), params.zeta_f64(), rng);
    Ok(InitialRanks::new(ranks)?.to_permutation())
}

pub fn sample_two_param(n: usize, params: &TwoParam, seed: u64) -> Result<Permutation> {
    sample_two_param_with(n, params, &mut substream(seed, 0))
}

pub fn sample_general_with(n: usize, params: &GeneralParams, rng: ChaCha8Rng) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let model = StreamModel::from_model(&Model::General(params.clone()))?;
    let mut s = StreamState::with_rng(model, rng);
    s.advance_to(n)?;
    Ok(s.prefix())
}

pub fn sample_general(n: usize, params: &GeneralParams, seed: u64) -> Result<Permutation> {
    sample_general_with(n, params, substream(seed, 0))
}

/// Direct constructions of the degenerate laws:
/// pyramid: each position `j >= 2` has rank 1 with probability `p`, else rank `j`;
/// single record: `(1, n)` with probability `p`, else `(n, 1)`, then the
/// middle values in uniform order; theta-zero: `1` followed by a `(1, ζ)`
/// word on `2..=n`; zeta-zero: `n` followed by a `(θ, 1)` word on `1..n`.
pub fn sample_limit_with(n: usize, family: &LimitFamily, rng: &mut ChaCha8Rng) -> Result<Permutation> {
    family.validate()?;
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    if n == 1 {
        return Ok(Permutation::identity(1));
    }
    let word = match family {
        LimitFamily::BernoulliPyramid(p) => {
            let p = to_f64(p);
            let ranks = std::iter::once(1)
                .chain((2..=n).map(|j| if uniform(rng) < p { 1 } else { j }))
                .collect();
            return Ok(InitialRanks::new(ranks)?.to_permutation());
        }
        LimitFamily::SingleRecord(p) => {
            let upper = uniform(rng) < to_f64(p);
            let mut middle: Vec<usize> = (2..n).collect();
            middle.shuffle(rng);
            let mut w = if upper { vec![1, n] } else { vec![n, 1] };
            w.extend(middle);
            w
        }
        LimitFamily::ThetaZero(zeta) => {
            let rest = two_param_ranks(n - 1, 1.0, to_f64(zeta), rng);
            let rest = InitialRanks::new(rest)?.to_permutation();
            std::iter::once(1).chain(rest.as_slice().iter().map(|v| v + 1)).collect()
        }
        LimitFamily::ZetaZero(theta) => {
            let rest = two_param_ranks(n - 1, to_f64(theta), 1.0, rng);
            let rest = InitialRanks::new(rest)?.to_permutation();
            std::iter::once(n).chain(rest.as_slice().iter().copied()).collect()
        }
    };
    Permutation::new(word)
}

pub fn sample_limit(n: usize, family: &LimitFamily, seed: u64) -> Result<Permutation> {
    sample_limit_with(n, family, &mut substream(seed, 0))
}

/// `d = θ+ζ-2` leading uniforms followed by `n` more, projected through the
/// middle-order-statistic window and ranked.
pub fn sample_integer_window_with(n: usize, theta: usize, zeta: usize, rng: &mut ChaCha8Rng) -> Result<Permutation> {
    let d = window_depth(theta, zeta)?;
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let xs: Vec<f64> = (0..n + d).map(|_| uniform(rng)).collect();
    Ok(rank_distinct(&window_select(&xs, theta, zeta)?))
}

pub fn sample_integer_window(n: usize, theta: usize, zeta: usize, seed: u64) -> Result<Permutation> {
    sample_integer_window_with(n, theta, zeta, &mut substream(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::records::record_counts;

    #[test]
    fn singleton_and_determinism() {
        let p = TwoParam::new(int(2), int(3)).unwrap();
        assert_eq!(sample_two_param(1, &p, 9).unwrap().as_slice(), &[1]);
        assert_eq!(sample_two_param(30, &p, 9).unwrap(), sample_two_param(30, &p, 9).unwrap());
        let g = GeneralParams::parse("1", "1", "tail:1/2").unwrap();
        assert_eq!(sample_general(1, &g, 0).unwrap().as_slice(), &[1]);
        assert_eq!(sample_general(25, &g, 4).unwrap(), sample_general(25, &g, 4).unwrap());
    }

    #[test]
    fn pyramid_extremes() {
        for seed in 0..20 {
            let p1 = sample_limit(5, &LimitFamily::BernoulliPyramid(int(1)), seed).unwrap();
            assert_eq!(p1.as_slice(), &[5, 4, 3, 2, 1]);
            let p0 = sample_limit(5, &LimitFamily::BernoulliPyramid(int(0)), seed).unwrap();
            assert_eq!(p0.as_slice(), &[1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn single_record_words() {
        for seed in 0..50 {
            let w = sample_limit(4, &LimitFamily::SingleRecord(int(1)), seed).unwrap();
            assert_eq!(&w.as_slice()[..2], &[1, 4]);
            let (l, u) = record_counts(&w);
            assert_eq!(l + u, 1);
            let w = sample_limit(6, &LimitFamily::SingleRecord(ratio(1, 2)), seed).unwrap();
            let (l, u) = record_counts(&w);
            assert_eq!(l + u, 1);
        }
    }

    #[test]
    fn degenerate_limits_fix_the_first_entry() {
        for seed in 0..20 {
            let w = sample_limit(7, &LimitFamily::ThetaZero(int(2)), seed).unwrap();
            assert_eq!(w.at(1), 1);
            let w = sample_limit(7, &LimitFamily::ZetaZero(int(2)), seed).unwrap();
            assert_eq!(w.at(1), 7);
        }
    }

    #[test]
    fn window_with_unit_parameters_is_plain_ranking() {
        for seed in 0..10 {
            assert_eq!(sample_integer_window(6, 1, 1, seed).unwrap().len(), 6);
        }
        assert!(sample_integer_window(3, 0, 2, 0).is_err());
    }
}
