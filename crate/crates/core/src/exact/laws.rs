//! Step laws of the sequential models and exact permutation probabilities.

use num_traits::{One, Zero};

use crate::composition::{profile_to_composition, CenteredComposition, GrowingComposition};
use crate::error::{Error, Result};
use crate::params::{GeneralParams, LimitFamily, TwoParam};
use crate::perm::Permutation;
use crate::rational::{count_to_rational, factorial, int, rising, Rational};
use crate::records::{extract_records, record_counts};
use crate::shape::ExactShape;

/// A model defined by the conditional law of each next initial rank.
#[derive(Clone, PartialEq, Debug)]
pub enum Model {
    TwoParam(TwoParam),
    General(GeneralParams),
    Limit(LimitFamily),
    /// The ranking construction driven by a fixed shape.
    FixedShape(ExactShape),
}

/// Law of the next position at block level: a new lower record, a new
/// upper record, or a join of block `k`, each with its total probability.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockLaw {
    pub lower: Rational,
    pub upper: Rational,
    /// `(k, probability)` in label order.
    pub blocks: Vec<(isize, Rational)>,
}

impl BlockLaw {
    pub fn total(&self) -> Rational {
        self.blocks
            .iter()
            .fold(&self.lower + &self.upper, |acc, (_, p)| acc + p)
    }
}

fn uniform_interior(g: &GrowingComposition, lower: Rational, upper: Rational, denom: &Rational) -> BlockLaw {
    BlockLaw {
        lower: lower / denom,
        upper: upper / denom,
        blocks: g
            .blocks()
            .map(|(k, s)| (k, int(s as i64) / denom))
            .collect(),
    }
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        match self {
            Model::TwoParam(p) => TwoParam::new(p.theta.clone(), p.zeta.clone()).map(|_| ()),
            Model::General(p) => p.check_domain(),
            Model::Limit(f) => f.validate(),
            Model::FixedShape(_) => Ok(()),
        }
    }

    /// Law of the position after a word whose composition is `g`.
    pub fn block_law(&self, g: &GrowingComposition) -> Result<BlockLaw> {
        let size = g.size();
        let size_r = int(size as i64);
        let one = Rational::one();
        Ok(match self {
            Model::TwoParam(p) => {
                let denom = &p.theta + &p.zeta + &size_r - &one;
                uniform_interior(g, p.theta.clone(), p.zeta.clone(), &denom)
            }
            Model::General(p) => {
                let denom = &p.theta + &p.zeta + &size_r - &one;
                BlockLaw {
                    lower: p.lower_weight(g.lower_count()) / &denom,
                    upper: p.upper_weight(g.upper_count()) / &denom,
                    blocks: g
                        .blocks()
                        .map(|(k, s)| (k, (int(s as i64) - p.alpha(k)) / &denom))
                        .collect(),
                }
            }
            Model::Limit(LimitFamily::BernoulliPyramid(p)) => BlockLaw {
                lower: p.clone(),
                upper: &one - p,
                blocks: g.blocks().map(|(k, _)| (k, Rational::zero())).collect(),
            },
            Model::Limit(LimitFamily::SingleRecord(p)) => {
                if size == 1 {
                    BlockLaw {
                        lower: &one - p,
                        upper: p.clone(),
                        blocks: Vec::new(),
                    }
                } else {
                    uniform_interior(g, Rational::zero(), Rational::zero(), &(&size_r - &one))
                }
            }
            Model::Limit(LimitFamily::ThetaZero(zeta)) => {
                let denom = zeta + &size_r - &one;
                uniform_interior(g, Rational::zero(), zeta.clone(), &denom)
            }
            Model::Limit(LimitFamily::ZetaZero(theta)) => {
                let denom = theta + &size_r - &one;
                uniform_interior(g, theta.clone(), Rational::zero(), &denom)
            }
            Model::FixedShape(shape) => {
                let l = g.lower_count() as isize;
                let u = g.upper_count() as isize;
                let mut blocks = Vec::new();
                for (k, _) in g.blocks() {
                    blocks.push((k, shape.gap(k)?));
                }
                BlockLaw {
                    lower: shape.rho_or_truncation(-l)?.clone(),
                    upper: &one - shape.rho_or_truncation(u)?,
                    blocks,
                }
            }
        })
    }

    /// Probability that the next initial rank equals `rank` (in `1..=size+1`).
    pub fn rank_probability(&self, g: &GrowingComposition, rank: usize) -> Result<Rational> {
        let j = g.size() + 1;
        if rank == 0 || rank > j {
            return Err(Error::Argument(format!("rank {rank} outside 1..={j}")));
        }
        let one = Rational::one();
        match self {
            Model::TwoParam(p) => {
                let denom = &p.theta + &p.zeta + int(j as i64 - 2);
                let w = if rank == 1 {
                    p.theta.clone()
                } else if rank == j {
                    p.zeta.clone()
                } else {
                    one
                };
                Ok(w / denom)
            }
            Model::Limit(LimitFamily::BernoulliPyramid(p)) => Ok(if rank == 1 {
                p.clone()
            } else if rank == j {
                one - p
            } else {
                Rational::zero()
            }),
            _ => {
                let law = self.block_law(g)?;
                if rank == 1 {
                    return Ok(law.lower);
                }
                if rank == j {
                    return Ok(law.upper);
                }
                let k = g.block_of_rank(rank);
                let p = law
                    .blocks
                    .into_iter()
                    .find(|(label, _)| *label == k)
                    .map(|(_, p)| p)
                    .expect("block present");
                Ok(p / int(g.part(k) as i64))
            }
        }
    }
}

/// Distribution of `i_j` for `j = degree + 1`, indexed by rank `1..=j` (entry `r - 1`).
pub fn step_law(model: &Model, state: &CenteredComposition) -> Result<Vec<Rational>> {
    model.validate()?;
    let g = GrowingComposition::from_composition(state);
    (1..=g.size() + 1)
        .map(|r| model.rank_probability(&g, r))
        .collect()
}

/// Product of the step probabilities along the initial ranks; stops at the
/// first zero factor.
pub fn path_probability(model: &Model, ranks: &[usize]) -> Result<Rational> {
    let mut g = GrowingComposition::new();
    let mut acc = Rational::one();
    for &r in ranks.iter().skip(1) {
        let p = model.rank_probability(&g, r)?;
        if p.is_zero() {
            return Ok(p);
        }
        acc *= p;
        g.push_rank(r);
    }
    Ok(acc)
}

/// `θ^l ζ^u / (θ+ζ)_{n-1}`.
pub fn perm_probability(p: &Permutation, params: &TwoParam) -> Rational {
    let (l, u) = record_counts(p);
    two_param_class_probability(p.len(), l, u, params)
}

/// Per-permutation probability of any word with record counts `(l, u)`.
pub fn two_param_class_probability(n: usize, l: usize, u: usize, params: &TwoParam) -> Rational {
    num_traits::pow(params.theta.clone(), l) * num_traits::pow(params.zeta.clone(), u)
        / rising(&(&params.theta + &params.zeta), n - 1)
}

pub fn general_perm_probability(p: &Permutation, params: &GeneralParams) -> Result<Rational> {
    params.check_domain()?;
    path_probability(&Model::General(params.clone()), p.to_initial_ranks().as_slice())
}

/// Closed form of the per-permutation probability of the block-level law:
/// `Π_{m<l}(θ + α_{-1}+...+α_{-m}) Π_{m<u}(ζ + α_1+...+α_m)
///  Π_k (1-α_k)_{λ_k-1}/(λ_k-1)! / (θ+ζ)_{n-1}`.
pub fn general_closed_form(lambda: &CenteredComposition, params: &GeneralParams) -> Rational {
    let mut num = Rational::one();
    for m in 0..lambda.lower_len() {
        num *= params.lower_weight(m);
    }
    for m in 0..lambda.upper_len() {
        num *= params.upper_weight(m);
    }
    for k in lambda.labels().filter(|&k| k != 0) {
        let s = lambda.part(k);
        num *= rising(&(Rational::one() - params.alpha(k)), s - 1)
            / count_to_rational(&factorial(s - 1));
    }
    num / rising(&(&params.theta + &params.zeta), lambda.degree() - 1)
}

/// The closed form exactly as printed in the source display: record
/// products starting at `θ + α_{-1}` and no `(λ_k - 1)!` divisor.
pub fn printed_closed_form(lambda: &CenteredComposition, params: &GeneralParams) -> Rational {
    let mut num = Rational::one();
    for m in 1..=lambda.lower_len() {
        num *= params.lower_weight(m);
    }
    for m in 1..=lambda.upper_len() {
        num *= params.upper_weight(m);
    }
    for k in lambda.labels().filter(|&k| k != 0) {
        num *= rising(&(Rational::one() - params.alpha(k)), lambda.part(k) - 1);
    }
    num / rising(&(&params.theta + &params.zeta), lambda.degree() - 1)
}

/// Total mass of the per-rank reading of the generalized step law, where
/// every interior rank of an upper block `k` gets `1 - α_k` and of a lower
/// block `k` gets `1 - α_{k-1}`.
pub fn literal_per_rank_total(state: &CenteredComposition, params: &GeneralParams) -> Rational {
    let g = GrowingComposition::from_composition(state);
    let denom = &params.theta + &params.zeta + int(g.size() as i64 - 1);
    let mut total = params.lower_weight(g.lower_count()) + params.upper_weight(g.upper_count());
    for (k, s) in g.blocks() {
        let a = if k < 0 { params.alpha(k - 1) } else { params.alpha(k) };
        total += int(s as i64) * (Rational::one() - a);
    }
    total / denom
}

/// Per-permutation probability of a word with composition `λ` under the
/// fixed-shape construction: `φ(λ) / Π (λ_k - 1)!`.
pub fn shape_perm_probability(lambda: &CenteredComposition, shape: &ExactShape) -> Result<Rational> {
    let mut acc = phi_exact(lambda, shape)?;
    for k in lambda.labels() {
        acc /= count_to_rational(&factorial(lambda.part(k) - 1));
    }
    Ok(acc)
}

/// `Π_{k<0} ρ_{k+1} p_k^{λ_k-1} · Π_{k>0} (1 - ρ_{k-1}) p_k^{λ_k-1}` in exact arithmetic.
pub fn phi_exact(lambda: &CenteredComposition, shape: &ExactShape) -> Result<Rational> {
    let one = Rational::one();
    let mut acc = Rational::one();
    for k in lambda.labels().filter(|&k| k != 0) {
        let edge = if k < 0 {
            shape.rho_or_truncation(k + 1)?.clone()
        } else {
            &one - shape.rho_or_truncation(k - 1)?
        };
        acc *= edge * num_traits::pow(shape.gap(k)?, lambda.part(k) - 1);
    }
    Ok(acc)
}

/// Ratio of the printed closed form to the per-permutation probability.
pub fn closed_form_ratio(p: &Permutation, params: &GeneralParams) -> Result<Rational> {
    let lambda = profile_to_composition(extract_records(p).values());
    Ok(printed_closed_form(&lambda, params) / general_perm_probability(p, params)?)
}

/// `Π (λ_k - 1)!` over all labels.
pub fn part_factorials(lambda: &CenteredComposition) -> Rational {
    lambda
        .labels()
        .map(|k| count_to_rational(&factorial(lambda.part(k) - 1)))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use std::collections::BTreeMap;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn comp(s: &str) -> CenteredComposition {
        s.parse().unwrap()
    }

    fn tp(t: i64, z: i64) -> TwoParam {
        TwoParam::new(int(t), int(z)).unwrap()
    }

    #[test]
    fn two_param_examples() {
        assert_eq!(perm_probability(&perm("2,3,1"), &tp(2, 3)), ratio(1, 5));
        assert_eq!(perm_probability(&perm("1"), &tp(2, 3)), int(1));
        for p in Permutation::all(5) {
            assert_eq!(perm_probability(&p, &TwoParam::uniform()), ratio(1, 120));
        }
        let total: Rational = Permutation::all(3).map(|p| perm_probability(&p, &tp(2, 3))).sum();
        assert_eq!(total, int(1));
    }

    #[test]
    fn uniform_step_law() {
        let law = step_law(&Model::TwoParam(TwoParam::uniform()), &comp("^1,1")).unwrap();
        assert_eq!(law, vec![ratio(1, 3); 3]);
    }

    #[test]
    fn general_reduces_to_two_param() {
        let params = tp(2, 3);
        let general = Model::General(params.to_general());
        let two = Model::TwoParam(params);
        for n in 1..=5 {
            for c in CenteredComposition::all_of_degree(n) {
                assert_eq!(step_law(&general, &c).unwrap(), step_law(&two, &c).unwrap());
            }
        }
    }

    #[test]
    fn step_laws_normalize() {
        let general = GeneralParams::parse("1/2", "2", "1:1/2,-1:-1/4,2:1/3;tail:1/5").unwrap();
        let models = [
            Model::General(general),
            Model::Limit(LimitFamily::SingleRecord(ratio(1, 3))),
            Model::Limit(LimitFamily::ThetaZero(int(2))),
            Model::Limit(LimitFamily::ZetaZero(ratio(1, 2))),
            Model::Limit(LimitFamily::BernoulliPyramid(ratio(1, 4))),
            Model::FixedShape(
                ExactShape::new(
                    ratio(1, 2),
                    vec![ratio(1, 3), ratio(1, 4), ratio(1, 8), int(0), int(0)],
                    vec![ratio(2, 3), ratio(3, 4), ratio(7, 8), int(1), int(1)],
                )
                .unwrap(),
            ),
        ];
        for m in &models {
            for n in 1..=5 {
                for c in CenteredComposition::all_of_degree(n) {
                    let law = step_law(m, &c).unwrap();
                    assert_eq!(law.iter().sum::<Rational>(), int(1), "{m:?} {c}");
                }
            }
        }
    }

    #[test]
    fn literal_reading_fails_to_normalize() {
        let params = GeneralParams::parse("1", "1", "1:1/2").unwrap();
        let state = comp("^1,2");
        assert_eq!(literal_per_rank_total(&state, &params), ratio(7, 8));
        let law = step_law(&Model::General(params), &state).unwrap();
        assert_eq!(law.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn path_product_matches_closed_form() {
        let params = GeneralParams::parse("3/2", "1/2", "1:1/2,-1:-1/4,-2:1/3;tail:1/7").unwrap();
        for n in 1..=6 {
            let mut by_class: BTreeMap<CenteredComposition, Rational> = BTreeMap::new();
            for p in Permutation::all(n) {
                let lambda = profile_to_composition(extract_records(&p).values());
                let prob = general_perm_probability(&p, &params).unwrap();
                assert_eq!(prob, general_closed_form(&lambda, &params));
                if let Some(prev) = by_class.insert(lambda, prob.clone()) {
                    assert_eq!(prev, prob);
                }
            }
        }
    }

    #[test]
    fn printed_form_differs_by_part_factorials_at_zero_alpha() {
        let params = tp(2, 3).to_general();
        for p in Permutation::all(6) {
            let lambda = profile_to_composition(extract_records(&p).values());
            assert_eq!(closed_form_ratio(&p, &params).unwrap(), part_factorials(&lambda));
            assert_eq!(general_perm_probability(&p, &params).unwrap(), perm_probability(&p, &tp(2, 3)));
        }
    }

    #[test]
    fn shape_probability_is_path_product() {
        let shape = ExactShape::new(
            ratio(2, 5),
            vec![ratio(1, 4), ratio(1, 10), int(0)],
            vec![ratio(7, 10), ratio(9, 10), int(1)],
        )
        .unwrap();
        let model = Model::FixedShape(shape.clone());
        for n in 1..=6 {
            let mut total = Rational::zero();
            for p in Permutation::all(n) {
                let lambda = profile_to_composition(extract_records(&p).values());
                let path = path_probability(&model, p.to_initial_ranks().as_slice()).unwrap();
                if lambda.lower_len() <= 3 && lambda.upper_len() <= 3 {
                    assert_eq!(path, shape_perm_probability(&lambda, &shape).unwrap());
                }
                total += path;
            }
            assert_eq!(total, int(1));
        }
        let small = ExactShape::new(ratio(2, 5), vec![], vec![ratio(7, 10)]).unwrap();
        assert_eq!(phi_exact(&comp("^1,2"), &small).unwrap(), ratio(9, 50));
    }

    #[test]
    fn truncated_shape_reports_truncation() {
        let shape = ExactShape::new(ratio(1, 2), vec![], vec![ratio(3, 4)]).unwrap();
        let model = Model::FixedShape(shape);
        let r = path_probability(&model, &[1, 1, 1]);
        assert!(matches!(r, Err(Error::Truncation(_))));
    }
}
