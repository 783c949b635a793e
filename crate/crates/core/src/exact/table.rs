//! Exact distributions over `S_n`, indexed by initial-rank code.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::laws::{path_probability, Model};
use super::window::{window_depth, window_project};
use crate::error::{Error, Result};
use crate::perm::{factorial_usize, InitialRanks, Permutation, ENUMERATION_CAP};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, PartialEq, Debug)]
pub struct DistTable {
    n: usize,
    /// `probs[code]` for the permutation with that initial-rank code.
    probs: Vec<Rational>,
}

#[derive(Serialize)]
struct Entry {
    perm: String,
    p: String,
}

#[derive(Serialize)]
struct TableJson {
    n: usize,
    entries: Vec<Entry>,
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "exact tables need 1 <= n <= {ENUMERATION_CAP}, got {n}"
        )));
    }
    Ok(())
}

impl DistTable {
    /// Checks length and exact normalization.
    pub fn new(n: usize, probs: Vec<Rational>) -> Result<Self> {
        check_cap(n)?;
        if probs.len() != factorial_usize(n) {
            return Err(Error::Validation(format!(
                "{} probabilities for n = {n}",
                probs.len()
            )));
        }
        let t = DistTable { n, probs };
        if t.total() != Rational::one() {
            return Err(Error::Validation(format!("table sums to {}", t.total())));
        }
        Ok(t)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        check_cap(n)?;
        let size = factorial_usize(n);
        Ok(DistTable {
            n,
            probs: vec![Rational::new(1.into(), (size as i64).into()); size],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, p: &Permutation) -> &Rational {
        &self.probs[p.code()]
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().sum()
    }

    /// `(permutation, probability)` in code order.
    pub fn entries(&self) -> impl Iterator<Item = (Permutation, &Rational)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(code, p)| (InitialRanks::from_code(self.n, code).to_permutation(), p))
    }

    /// Law of the restriction to the first `m` positions.
    pub fn restrict(&self, m: usize) -> Result<DistTable> {
        if m == 0 || m > self.n {
            return Err(Error::Argument(format!("restrict to {m} from {}", self.n)));
        }
        let size = factorial_usize(m);
        let mut probs = vec![Rational::zero(); size];
        for (code, p) in self.probs.iter().enumerate() {
            probs[code % size] += p;
        }
        Ok(DistTable { n: m, probs })
    }

    /// Pushforward of the table under a statistic.
    pub fn marginal<K: Ord, F: Fn(&Permutation) -> K>(&self, f: F) -> BTreeMap<K, Rational> {
        let mut out = BTreeMap::new();
        for (perm, p) in self.entries() {
            *out.entry(f(&perm)).or_insert_with(Rational::zero) += p;
        }
        out
    }

    /// `{"n":…, "entries":[{"perm":"2,3,1","p":"1/5"},…]}` in code order.
    pub fn to_json(&self) -> String {
        let doc = TableJson {
            n: self.n,
            entries: self
                .entries()
                .map(|(perm, p)| Entry {
                    perm: perm.to_string(),
                    p: format_rational(p),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("perm,p\n");
        for (perm, p) in self.entries() {
            s.push_str(&format!("\"{perm}\",{}\n", format_rational(p)));
        }
        s
    }
}

/// Exact law of a sequential model at size `n`.
pub fn pushforward_table(n: usize, model: &Model) -> Result<DistTable> {
    check_cap(n)?;
    model.validate()?;
    let probs = (0..factorial_usize(n))
        .into_par_iter()
        .map(|code| path_probability(model, InitialRanks::from_code(n, code).as_slice()))
        .collect::<Result<Vec<_>>>()?;
    Ok(DistTable { n, probs })
}

/// Image of the uniform law on `S_{n+d}` under the window projection.
pub fn window_table(n: usize, theta: usize, zeta: usize) -> Result<DistTable> {
    let d = window_depth(theta, zeta)?;
    check_cap(n)?;
    check_cap(n + d)?;
    let big = factorial_usize(n + d);
    let counts = (0..big)
        .into_par_iter()
        .fold(
            || vec![0u64; factorial_usize(n)],
            |mut acc, code| {
                let w = InitialRanks::from_code(n + d, code).to_permutation();
                let p = window_project(&w, theta, zeta).expect("valid window");
                acc[p.code()] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; factorial_usize(n)],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let denom = int(big as i64);
    let probs = counts.into_iter().map(|c| int(c as i64) / &denom).collect();
    Ok(DistTable { n, probs })
}
