//! Exact conditional uniformity of a table given a record statistic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::table::DistTable;
use crate::perm::Permutation;
use crate::rational::{format_rational, Rational};
use crate::records::{extract_records, record_counts};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Statistic {
    /// The full record-value sequence with its center.
    Rec,
    /// `(l, u)`.
    Counts,
    Lower,
    Upper,
    Total,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::Rec,
        Statistic::Counts,
        Statistic::Lower,
        Statistic::Upper,
        Statistic::Total,
    ];

    pub fn key(&self, p: &Permutation) -> Vec<usize> {
        match self {
            Statistic::Rec => {
                let prof = extract_records(p);
                let mut k = prof.values().values().to_vec();
                k.push(prof.values().center_index());
                k
            }
            Statistic::Counts => {
                let (l, u) = record_counts(p);
                vec![l, u]
            }
            Statistic::Lower => vec![record_counts(p).0],
            Statistic::Upper => vec![record_counts(p).1],
            Statistic::Total => {
                let (l, u) = record_counts(p);
                vec![l + u]
            }
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Rec => "rec",
            Statistic::Counts => "l,u",
            Statistic::Lower => "l",
            Statistic::Upper => "u",
            Statistic::Total => "l+u",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rec" => Ok(Statistic::Rec),
            "l,u" | "(l,u)" | "lu" => Ok(Statistic::Counts),
            "l" => Ok(Statistic::Lower),
            "u" => Ok(Statistic::Upper),
            "l+u" | "total" => Ok(Statistic::Total),
            other => Err(Error::Parse(format!("unknown statistic {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformityReport {
    pub statistic: String,
    pub holds: bool,
    pub fibers: usize,
    pub nonconstant_fibers: usize,
    /// Two members of the first nonconstant fiber with their probabilities.
    pub witness: Option<[(String, String); 2]>,
}

/// True iff the table is constant on every fiber of `stat`; exact.
pub fn check_conditional_uniformity(table: &DistTable, stat: Statistic) -> UniformityReport {
    let mut fibers: BTreeMap<Vec<usize>, (Permutation, Rational, Option<(Permutation, Rational)>)> =
        BTreeMap::new();
    for (p, prob) in table.entries() {
        let key = stat.key(&p);
        match fibers.get_mut(&key) {
            None => {
                fibers.insert(key, (p, prob.clone(), None));
            }
            Some((_, first, bad)) => {
                if bad.is_none() && prob != first {
                    *bad = Some((p, prob.clone()));
                }
            }
        }
    }
    let nonconstant = fibers.values().filter(|f| f.2.is_some()).count();
    let witness = fibers.values().find_map(|(p, a, bad)| {
        bad.as_ref().map(|(q, b)| {
            [
                (p.to_string(), format_rational(a)),
                (q.to_string(), format_rational(b)),
            ]
        })
    });
    UniformityReport {
        statistic: stat.to_string(),
        holds: nonconstant == 0,
        fibers: fibers.len(),
        nonconstant_fibers: nonconstant,
        witness,
    }
}
