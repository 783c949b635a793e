//! Laws of the record counts `(l, u)` and the recursion they satisfy.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::laws::{two_param_class_probability, Model};
use super::stirling::record_stirling_tables;
use crate::composition::{CenteredComposition, GrowingComposition};
use crate::error::Result;
use crate::params::TwoParam;
use crate::rational::{count_to_rational, Rational};
use super::boundary::d_count;

/// `w_n(l, u)`: probability of `l` proper lower and `u` proper upper records.
#[derive(Clone, PartialEq, Debug)]
pub struct WTable {
    /// `rows[n-1][l][u]`.
    rows: Vec<Vec<Vec<Rational>>>,
}

impl WTable {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, n: usize, l: usize, u: usize) -> Rational {
        self.rows
            .get(n.wrapping_sub(1))
            .and_then(|r| r.get(l))
            .and_then(|r| r.get(u))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries keyed by `(n, l, u)`.
    pub fn entries(&self) -> BTreeMap<(usize, usize, usize), Rational> {
        let mut out = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (l, cells) in row.iter().enumerate() {
                for (u, w) in cells.iter().enumerate() {
                    if !w.is_zero() {
                        out.insert((i + 1, l, u), w.clone());
                    }
                }
            }
        }
        out
    }
}

pub fn w_table_two_param(params: &TwoParam, n_max: usize) -> WTable {
    let counts = record_stirling_tables(n_max);
    let rows = counts
        .iter()
        .enumerate()
        .map(|(i, table)| {
            let n = i + 1;
            table
                .iter()
                .enumerate()
                .map(|(l, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(u, c)| {
                            if c.is_zero() {
                                Rational::zero()
                            } else {
                                count_to_rational(c) * two_param_class_probability(n, l, u, params)
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    WTable { rows }
}

/// Probability of one word with composition `λ`, along the path that first
/// creates every lower record, then every upper record, then fills blocks.
pub fn class_member_probability(model: &Model, lambda: &CenteredComposition) -> Result<Rational> {
    let mut g = GrowingComposition::new();
    let mut acc = Rational::one();
    let push = |g: &mut GrowingComposition, rank: usize, acc: &mut Rational| -> Result<()> {
        *acc *= model.rank_probability(g, rank)?;
        g.push_rank(rank);
        Ok(())
    };
    for _ in 0..lambda.lower_len() {
        push(&mut g, 1, &mut acc)?;
    }
    for _ in 0..lambda.upper_len() {
        let j = g.size() + 1;
        push(&mut g, j, &mut acc)?;
    }
    for k in lambda.labels().filter(|&k| k != 0) {
        for _ in 1..lambda.part(k) {
            let r = g.first_rank_of_block(k);
            push(&mut g, r, &mut acc)?;
        }
    }
    Ok(acc)
}

/// `w_n(l, u)` for any model whose law is constant on composition classes.
pub fn w_table(model: &Model, n_max: usize) -> Result<WTable> {
    model.validate()?;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut row = vec![vec![Rational::zero(); n]; n];
        for lambda in CenteredComposition::all_of_degree(n) {
            let p = class_member_probability(model, &lambda)?;
            row[lambda.lower_len()][lambda.upper_len()] += count_to_rational(&d_count(&lambda)) * p;
        }
        rows.push(row);
    }
    Ok(WTable { rows })
}

/// The recursion `q_n(l,u) = q_{n+1}(l+1,u) + q_{n+1}(l,u+1) + (n-1) q_{n+1}(l,u)`
/// with `q_1(0,0) = 1`, where `q_n(l,u) = w_n(l,u) / c(n,l,u)` is the
/// probability of a single word with those counts.
pub fn check_dual(w: &WTable) -> bool {
    let n_max = w.n_max();
    if n_max == 0 || w.get(1, 0, 0) != Rational::one() {
        return false;
    }
    let counts = record_stirling_tables(n_max);
    let q = |n: usize, l: usize, u: usize| -> Rational {
        let c = counts[n - 1].get(l).and_then(|r| r.get(u));
        match c {
            Some(c) if !c.is_zero() => w.get(n, l, u) / count_to_rational(c),
            _ => Rational::zero(),
        }
    };
    for n in 1..n_max {
        for l in 0..n {
            for u in 0..n - l {
                if counts[n - 1][l][u].is_zero() {
                    continue;
                }
                let rhs = q(n + 1, l + 1, u) + q(n + 1, l, u + 1) + q(n + 1, l, u) * Rational::from_integer((n as i64 - 1).into());
                if q(n, l, u) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The same recursion read literally on the masses `w_n(l, u)`, over the
/// support of `c(n, l, u)`.
pub fn check_dual_on_masses(w: &WTable) -> bool {
    let n_max = w.n_max();
    for n in 1..n_max {
        for l in 0..n {
            for u in 0..n - l {
                if n > 1 && l + u == 0 {
                    continue;
                }
                let rhs = w.get(n + 1, l + 1, u)
                    + w.get(n + 1, l, u + 1)
                    + w.get(n + 1, l, u) * Rational::from_integer((n as i64 - 1).into());
                if w.get(n, l, u) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::table::pushforward_table;
    use crate::params::GeneralParams;
    use crate::rational::{int, ratio};
    use crate::records::record_counts;

    #[test]
    fn examples() {
        let w = w_table_two_param(&TwoParam::uniform(), 4);
        assert_eq!(w.get(3, 1, 1), ratio(1, 3));
        assert_eq!(w.get(1, 0, 0), int(1));
        let total: Rational = (0..4).flat_map(|l| (0..4).map(move |u| (l, u))).map(|(l, u)| w.get(4, l, u)).sum();
        assert_eq!(total, int(1));
    }

    #[test]
    fn dual_recursion_holds_per_word() {
        let grid = [ratio(1, 2), int(1), int(2), int(3)];
        for t in &grid {
            for z in &grid {
                let w = w_table_two_param(&TwoParam::new(t.clone(), z.clone()).unwrap(), 9);
                assert!(check_dual(&w));
            }
        }
        assert!(!check_dual_on_masses(&w_table_two_param(&TwoParam::uniform(), 3)));
    }

    #[test]
    fn generic_table_matches_exact_law() {
        let params = TwoParam::new(int(2), ratio(1, 3)).unwrap();
        assert_eq!(w_table(&Model::TwoParam(params.clone()), 7).unwrap(), w_table_two_param(&params, 7));
        let general = Model::General(GeneralParams::parse("1", "2", "1:1/2;tail:1/4").unwrap());
        let w = w_table(&general, 6).unwrap();
        let t = pushforward_table(6, &general).unwrap();
        let m = t.marginal(record_counts);
        for ((l, u), p) in m {
            assert_eq!(w.get(6, l, u), p);
        }
    }
}
