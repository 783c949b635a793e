//! Ranking of real sequences in which only running extremes may repeat.
//!
//! Distinct values are ordered as reals. A repeat of the running maximum is
//! placed above the earlier copies, a repeat of the running minimum below
//! them. Inside an initial constant run neither rule applies and each
//! position takes rank 1 or `j` from an explicit tiebreak.

use crate::error::{Error, Result};
use crate::perm::InitialRanks;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tiebreak {
    /// Initial rank 1.
    Low,
    /// Initial rank `j`.
    High,
}

/// `tiebreak[j - 2]` decides position `j` when `x_j` repeats a constant
/// prefix; entries for positions outside such a prefix are ignored.
pub fn rank_order(xs: &[f64], tiebreak: &[Tiebreak]) -> Result<InitialRanks> {
    if xs.is_empty() {
        return Err(Error::Argument("empty sequence".into()));
    }
    if let Some(x) = xs.iter().find(|x| x.is_nan()) {
        return Err(Error::InvalidSequence(format!("{x} is not comparable")));
    }
    let mut ranks = Vec::with_capacity(xs.len());
    ranks.push(1);
    for j in 1..xs.len() {
        let x = xs[j];
        let (mut lt, mut gt, mut eq) = (0, 0, 0);
        for &y in &xs[..j] {
            if y < x {
                lt += 1;
            } else if y > x {
                gt += 1;
            } else {
                eq += 1;
            }
        }
        let pos = j + 1;
        let rank = if eq == 0 {
            lt + 1
        } else if lt == 0 && gt == 0 {
            match tiebreak.get(j - 1) {
                Some(Tiebreak::Low) => 1,
                Some(Tiebreak::High) => pos,
                None => {
                    return Err(Error::Argument(format!(
                        "no tiebreak for position {pos} of the constant prefix"
                    )))
                }
            }
        } else if gt == 0 {
            pos
        } else if lt == 0 {
            1
        } else {
            return Err(Error::InvalidSequence(format!(
                "value {x} at position {pos} repeats without being a running extreme"
            )));
        };
        ranks.push(rank);
    }
    Ok(InitialRanks::from_vec_unchecked(ranks))
}
