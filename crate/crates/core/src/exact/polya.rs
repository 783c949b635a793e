//! Pólya-Eggenberger laws and the Markov chains of record values.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::params::TwoParam;
use crate::rational::{binomial, count_to_rational, rising, Rational};

fn check_range(n: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::Argument(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// `C(n-1, r-1) (θ)_{r-1} (ζ)_{n-r} / (θ+ζ)_{n-1}`: the law of the first
/// entry of a word of size `n`.
pub fn pe_pmf(n: usize, params: &TwoParam, r: usize) -> Result<Rational> {
    check_range(n, r)?;
    Ok(count_to_rational(&binomial(n - 1, r - 1))
        * rising(&params.theta, r - 1)
        * rising(&params.zeta, n - r)
        / rising(&(&params.theta + &params.zeta), n - 1))
}

/// The display `C(n-1, r-1) (θ)_{n-1} (ζ)_{r-1} / (θ+ζ)_{n-1}`, which is not
/// a probability law.
pub fn pe_pmf_printed(n: usize, params: &TwoParam, r: usize) -> Result<Rational> {
    check_range(n, r)?;
    Ok(count_to_rational(&binomial(n - 1, r - 1))
        * rising(&params.theta, n - 1)
        * rising(&params.zeta, r - 1)
        / rising(&(&params.theta + &params.zeta), n - 1))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Lower,
    Upper,
}

/// Law of the next record value after the current record value `r` on the
/// given side. From `r` the next lower record is `v` in `1..r` with
/// probability `pe_pmf(r-1, (θ,1), v)`; the next upper record is `r+c`,
/// `c` in `1..=n-r`, with probability `pe_pmf(n-r, (1,ζ), c)`. The chain is
/// absorbed (empty law) at `1` and at `n` respectively.
pub fn record_chain_step(
    r: usize,
    n: usize,
    params: &TwoParam,
    side: Side,
) -> Result<BTreeMap<usize, Rational>> {
    check_range(n, r)?;
    let one = Rational::one();
    let mut out = BTreeMap::new();
    match side {
        Side::Lower => {
            let p = TwoParam::new(params.theta.clone(), one)?;
            for v in 1..r {
                out.insert(v, pe_pmf(r - 1, &p, v)?);
            }
        }
        Side::Upper => {
            let p = TwoParam::new(one, params.zeta.clone())?;
            for c in 1..=n - r {
                out.insert(r + c, pe_pmf(n - r, &p, c)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laws::Model;
    use crate::exact::table::pushforward_table;
    use crate::rational::{int, ratio};
    use crate::records::extract_records;
    use num_traits::Zero;

    #[test]
    fn examples() {
        for n in 1..=6 {
            for r in 1..=n {
                assert_eq!(pe_pmf(n, &TwoParam::uniform(), r).unwrap(), ratio(1, n as i64));
            }
        }
        let p = TwoParam::new(int(2), int(3)).unwrap();
        assert_eq!(pe_pmf(2, &p, 1).unwrap(), ratio(3, 5));
        assert_eq!(pe_pmf(2, &p, 2).unwrap(), ratio(2, 5));
        assert_eq!(pe_pmf(1, &p, 1).unwrap(), int(1));
        assert!(pe_pmf(3, &p, 4).is_err());
    }

    #[test]
    fn printed_display_does_not_normalize() {
        let total: Rational = (1..=3)
            .map(|r| pe_pmf_printed(3, &TwoParam::uniform(), r).unwrap())
            .sum();
        assert_eq!(total, ratio(5, 3));
    }

    #[test]
    fn center_marginal_matches_table() {
        for params in [TwoParam::new(int(2), int(3)).unwrap(), TwoParam::new(ratio(1, 2), int(1)).unwrap()] {
            for n in 1..=7 {
                let t = pushforward_table(n, &Model::TwoParam(params.clone())).unwrap();
                let m = t.marginal(|p| p.at(1));
                for r in 1..=n {
                    assert_eq!(m[&r], pe_pmf(n, &params, r).unwrap());
                }
            }
        }
    }

    #[test]
    fn rows_sum_to_one() {
        let p = TwoParam::new(ratio(3, 2), ratio(2, 3)).unwrap();
        for n in 1..=8 {
            for r in 1..=n {
                for side in [Side::Lower, Side::Upper] {
                    let row = record_chain_step(r, n, &p, side).unwrap();
                    let absorbed = (side == Side::Lower && r == 1) || (side == Side::Upper && r == n);
                    let s: Rational = row.values().sum();
                    assert_eq!(s, if absorbed { Rational::zero() } else { int(1) });
                }
            }
        }
    }

    /// The conditional law of each record value given all earlier ones on
    /// its side equals the chain step.
    #[test]
    fn chain_matches_exact_conditionals() {
        for params in [TwoParam::uniform(), TwoParam::new(int(2), ratio(1, 3)).unwrap()] {
            for n in 2..=6 {
                let t = pushforward_table(n, &Model::TwoParam(params.clone())).unwrap();
                for side in [Side::Lower, Side::Upper] {
                    // joint law of (history prefix, next value)
                    let mut joint: BTreeMap<(Vec<usize>, usize), Rational> = BTreeMap::new();
                    let mut hist: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
                    for (perm, p) in t.entries() {
                        let prof = extract_records(&perm);
                        let rv = prof.values();
                        let seq: Vec<usize> = match side {
                            Side::Lower => (0..=rv.lower_count()).map(|i| rv.value(-(i as isize))).collect(),
                            Side::Upper => (0..=rv.upper_count()).map(|i| rv.value(i as isize)).collect(),
                        };
                        for i in 1..seq.len() {
                            *joint.entry((seq[..i].to_vec(), seq[i])).or_insert_with(Rational::zero) += p;
                        }
                        for i in 1..=seq.len() {
                            *hist.entry(seq[..i].to_vec()).or_insert_with(Rational::zero) += p;
                        }
                    }
                    for (h, mass) in &hist {
                        let r = *h.last().unwrap();
                        let row = record_chain_step(r, n, &params, side).unwrap();
                        for (v, q) in row {
                            let got = joint.get(&(h.clone(), v)).cloned().unwrap_or_else(Rational::zero);
                            assert_eq!(got / mass, q, "side {side:?} n={n} history {h:?} next {v}");
                        }
                    }
                }
            }
        }
    }
}
