//! Random shapes by two-sided beta stick-breaking, and the ranking
//! construction that turns a shape into a coherent word.

use rand_chacha::ChaCha8Rng;

use super::rng::{beta, substream, uniform};
use crate::error::{Error, Result};
use crate::params::{GeneralParams, TwoParam};
use crate::perm::Permutation;
use crate::ranking::{rank_order, Tiebreak};
use crate::rational::to_f64;
use crate::shape::TwoSidedShape;

pub const DEFAULT_TRUNCATION: usize = 64;

#[derive(Clone, PartialEq, Debug)]
pub enum ShapeParams {
    TwoParam(TwoParam),
    General(GeneralParams),
}

impl From<TwoParam> for ShapeParams {
    fn from(p: TwoParam) -> Self {
        ShapeParams::TwoParam(p)
    }
}

impl From<GeneralParams> for ShapeParams {
    fn from(p: GeneralParams) -> Self {
        ShapeParams::General(p)
    }
}

impl ShapeParams {
    fn general(&self) -> Result<GeneralParams> {
        match self {
            ShapeParams::TwoParam(p) => Ok(p.to_general()),
            ShapeParams::General(p) => {
                p.check_domain()?;
                Ok(p.clone())
            }
        }
    }
}

/// `ρ_0 ~ beta(θ, ζ)`; for `k < 0`, `ρ_k = ρ_{k+1} T_k` with
/// `T_k ~ beta(θ + α_{-1} + ... + α_k, 1 - α_k)`; for `k > 0`,
/// `1 - ρ_k = (1 - ρ_{k-1}) Z_k` with `Z_k ~ beta(ζ + α_1 + ... + α_k, 1 - α_k)`.
/// Entries `|k| <= k_max` are kept.
pub fn sample_shape_with(params: &ShapeParams, k_max: usize, rng: &mut ChaCha8Rng) -> Result<TwoSidedShape> {
    if k_max < 1 {
        return Err(Error::Argument("truncation K must be at least 1".into()));
    }
    let g = params.general()?;
    let rho0 = beta(rng, to_f64(&g.theta), to_f64(&g.zeta))?;
    let mut left = Vec::with_capacity(k_max);
    let mut cur = rho0;
    for m in 1..=k_max {
        let k = -(m as isize);
        let a = to_f64(&g.lower_weight(m));
        let b = 1.0 - to_f64(g.alpha(k));
        cur *= beta(rng, a, b)?;
        left.push(cur);
    }
    let mut right = Vec::with_capacity(k_max);
    let mut rest = 1.0 - rho0;
    for m in 1..=k_max {
        let a = to_f64(&g.upper_weight(m));
        let b = 1.0 - to_f64(g.alpha(m as isize));
        rest *= beta(rng, a, b)?;
        right.push(1.0 - rest);
    }
    TwoSidedShape::new(rho0, left, right)
}

pub fn sample_shape(params: &ShapeParams, k_max: usize, seed: u64) -> Result<TwoSidedShape> {
    sample_shape_with(params, k_max, &mut substream(seed, 0))
}

/// `X_1 = ρ_0`; afterwards a uniform `W` above the current upper record
/// level `ρ_u` is replaced by `ρ_{u+1}`, one below `ρ_{-l}` by `ρ_{-l-1}`,
/// and any other `W` is kept. Returns the word together with the `X` sequence.
pub fn sample_from_shape_traced(
    shape: &TwoSidedShape,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Permutation, Vec<f64>)> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let mut xs = Vec::with_capacity(n);
    let mut ties = Vec::with_capacity(n.saturating_sub(1));
    let (mut l, mut u) = (0isize, 0isize);
    xs.push(*shape.center());
    for _ in 1..n {
        let w = uniform(rng);
        let hi = *shape.rho(u).unwrap();
        let lo = *shape.rho(-l).unwrap();
        if w > hi {
            u += 1;
            xs.push(*shape.rho_or_truncation(u)?);
            ties.push(Tiebreak::High);
        } else if w < lo {
            l += 1;
            xs.push(*shape.rho_or_truncation(-l)?);
            ties.push(Tiebreak::Low);
        } else {
            xs.push(w);
            ties.push(Tiebreak::Low);
        }
    }
    let word = rank_order(&xs, &ties)?.to_permutation();
    Ok((word, xs))
}

pub fn sample_from_shape_with(shape: &TwoSidedShape, n: usize, rng: &mut ChaCha8Rng) -> Result<Permutation> {
    sample_from_shape_traced(shape, n, rng).map(|(w, _)| w)
}

pub fn sample_from_shape(shape: &TwoSidedShape, n: usize, seed: u64) -> Result<Permutation> {
    sample_from_shape_with(shape, n, &mut substream(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::records::{extract_records, record_counts};

    fn unit() -> ShapeParams {
        TwoParam::uniform().into()
    }

    #[test]
    fn truncation_argument() {
        assert!(matches!(sample_shape(&unit(), 0, 1), Err(Error::Argument(_))));
        let s = sample_shape(&unit(), 5, 1).unwrap();
        assert_eq!((s.left_len(), s.right_len()), (5, 5));
        assert!(s.gap_sum() <= 1.0);
    }

    #[test]
    fn beta_moments() {
        let trials = 20_000;
        let (mut m0, mut m1) = (0.0, 0.0);
        for t in 0..trials {
            let s = sample_shape_with(&unit(), 3, &mut substream(77, t)).unwrap();
            m0 += s.center();
            m1 += s.rho(1).unwrap();
        }
        m0 /= trials as f64;
        m1 /= trials as f64;
        // sd of rho_0 is 0.289, of rho_1 about 0.22
        assert!((m0 - 0.5).abs() < 4.0 * 0.289 / (trials as f64).sqrt());
        assert!((m1 - 0.75).abs() < 4.0 * 0.23 / (trials as f64).sqrt());
    }

    #[test]
    fn large_parameters_collapse_gaps() {
        let p = TwoParam::new(int(1_000_000), int(1_000_000)).unwrap();
        let s = sample_shape(&p.into(), 4, 3).unwrap();
        assert!(s.rho(-4).unwrap() / s.center() > 0.999);
        assert!((1.0 - s.rho(4).unwrap()) / (1.0 - s.center()) > 0.999);
    }

    #[test]
    fn constant_shape_gives_pyramid_words() {
        let s = TwoSidedShape::new(0.3, vec![0.3; 10], vec![0.3; 10]).unwrap();
        for seed in 0..50 {
            let w = sample_from_shape(&s, 8, seed).unwrap();
            let (l, u) = record_counts(&w);
            assert_eq!(l + u, 7);
        }
    }

    #[test]
    fn extreme_center_gives_single_record() {
        let s = TwoSidedShape::new(0.0, vec![], vec![1.0]).unwrap();
        for seed in 0..50 {
            let w = sample_from_shape(&s, 6, seed).unwrap();
            assert_eq!(w.at(1), 1);
            assert_eq!(record_counts(&w), (0, 1));
        }
    }

    #[test]
    fn record_values_are_consumed_shape_entries() {
        let s = sample_shape(&unit(), 64, 5).unwrap();
        for t in 0..200 {
            let (w, xs) = sample_from_shape_traced(&s, 12, &mut substream(6, t)).unwrap();
            let prof = extract_records(&w);
            let rv = prof.values();
            for k in -(rv.lower_count() as isize)..=rv.upper_count() as isize {
                let x = xs[prof.time(k) - 1];
                assert_eq!(x, *s.rho(k).unwrap());
            }
        }
    }

    #[test]
    fn truncation_is_reported() {
        let s = TwoSidedShape::new(0.5, vec![0.4], vec![0.6]).unwrap();
        let err = (0..100).find_map(|seed| sample_from_shape(&s, 40, seed).err());
        assert!(matches!(err, Some(Error::Truncation(_))));
    }
}
