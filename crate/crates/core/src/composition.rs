//! Centered compositions: the differenced form of a record-value sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::records::RecordValues;

/// Positive parts `(λ_{-l}, ..., λ_0 = 1, ..., λ_u)` summing to the degree `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CenteredComposition {
    parts: Vec<usize>,
    center: usize,
}

impl CenteredComposition {
    pub fn new(parts: Vec<usize>, center: usize) -> Result<Self> {
        if center >= parts.len() {
            return Err(Error::Validation("center index out of range".into()));
        }
        if parts[center] != 1 {
            return Err(Error::Validation(format!(
                "center part is {}, expected 1",
                parts[center]
            )));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Validation("parts must be positive".into()));
        }
        Ok(CenteredComposition { parts, center })
    }

    /// The one-part composition of degree 1.
    pub fn unit() -> Self {
        CenteredComposition {
            parts: vec![1],
            center: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn lower_len(&self) -> usize {
        self.center
    }

    pub fn upper_len(&self) -> usize {
        self.parts.len() - self.center - 1
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn center_index(&self) -> usize {
        self.center
    }

    /// `λ_k` for `-l <= k <= u`.
    pub fn part(&self, k: isize) -> usize {
        self.parts[(self.center as isize + k) as usize]
    }

    /// Labels `-l..=u` in order.
    pub fn labels(&self) -> impl Iterator<Item = isize> {
        let l = self.lower_len() as isize;
        let u = self.upper_len() as isize;
        -l..=u
    }

    /// Tail sum `Λ_k`: `λ_k + ... + λ_u` for `k > 0`, `λ_k + ... + λ_{-l}` for `k < 0`.
    pub fn tail_sum(&self, k: isize) -> usize {
        let idx = (self.center as isize + k) as usize;
        match k.signum() {
            1 => self.parts[idx..].iter().sum(),
            -1 => self.parts[..=idx].iter().sum(),
            _ => self.degree(),
        }
    }

    /// Noncentral tail sums in label order.
    pub fn tail_sums(&self) -> Vec<usize> {
        self.labels()
            .filter(|&k| k != 0)
            .map(|k| self.tail_sum(k))
            .collect()
    }

    pub fn to_record_values(&self) -> RecordValues {
        let mut values = Vec::with_capacity(self.parts.len());
        let mut acc = 0;
        for (i, &p) in self.parts.iter().enumerate() {
            if i <= self.center {
                values.push(1 + acc);
                acc += p;
            } else {
                acc += p;
                values.push(acc);
            }
        }
        RecordValues::new(values, self.center).expect("composition yields valid record values")
    }

    pub fn from_record_values(rv: &RecordValues) -> Self {
        let v = rv.values();
        let c = rv.center_index();
        let parts = (0..v.len())
            .map(|i| match i.cmp(&c) {
                std::cmp::Ordering::Less => v[i + 1] - v[i],
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => v[i] - v[i - 1],
            })
            .collect();
        CenteredComposition { parts, center: c }
    }

    /// Immediate followers: append 1 on the left, increment each noncentral
    /// part from left to right, append 1 on the right.
    pub fn followers(&self) -> Vec<CenteredComposition> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut left = vec![1];
        left.extend_from_slice(&self.parts);
        out.push(CenteredComposition {
            parts: left,
            center: self.center + 1,
        });
        for i in 0..self.parts.len() {
            if i == self.center {
                continue;
            }
            let mut parts = self.parts.clone();
            parts[i] += 1;
            out.push(CenteredComposition {
                parts,
                center: self.center,
            });
        }
        let mut right = self.parts.clone();
        right.push(1);
        out.push(CenteredComposition {
            parts: right,
            center: self.center,
        });
        out
    }

    /// Whether `mu` lies above `self` in the poset; returns the numbers
    /// `(b, a)` of parts `mu` adds on the left and right.
    pub fn successor_offsets(&self, mu: &CenteredComposition) -> Option<(usize, usize)> {
        let b = mu.lower_len().checked_sub(self.lower_len())?;
        let a = mu.upper_len().checked_sub(self.upper_len())?;
        for k in self.labels() {
            if mu.part(k) < self.part(k) {
                return None;
            }
        }
        Some((b, a))
    }

    /// Every centered composition of `n`.
    pub fn all_of_degree(n: usize) -> Vec<CenteredComposition> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        if n == 1 {
            out.push(CenteredComposition::unit());
            return out;
        }
        // ordinary compositions of n - 1 with a center inserted at each gap
        let mut stack: Vec<usize> = Vec::new();
        fn rec(rem: usize, stack: &mut Vec<usize>, out: &mut Vec<CenteredComposition>) {
            if rem == 0 {
                for c in 0..=stack.len() {
                    let mut parts = stack[..c].to_vec();
                    parts.push(1);
                    parts.extend_from_slice(&stack[c..]);
                    out.push(CenteredComposition { parts, center: c });
                }
                return;
            }
            for p in 1..=rem {
                stack.push(p);
                rec(rem - p, stack, out);
                stack.pop();
            }
        }
        rec(n - 1, &mut stack, &mut out);
        out
    }
}

impl fmt::Display for CenteredComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if i == self.center {
                f.write_str("^")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for CenteredComposition {
    type Err = Error;

    /// Parses `"3,1,^1,3,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut center = None;
        for tok in s.split(',') {
            let tok = tok.trim();
            let body = match tok.strip_prefix('^') {
                Some(rest) => {
                    if center.replace(parts.len()).is_some() {
                        return Err(Error::Parse("more than one center".into()));
                    }
                    rest
                }
                None => tok,
            };
            parts.push(
                body.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?,
            );
        }
        let center = center.ok_or_else(|| Error::Parse("no center marked with ^".into()))?;
        CenteredComposition::new(parts, center)
    }
}

/// Record values to composition.
pub fn profile_to_composition(rv: &RecordValues) -> CenteredComposition {
    CenteredComposition::from_record_values(rv)
}

/// Composition to record values.
pub fn composition_to_profile(lambda: &CenteredComposition) -> RecordValues {
    lambda.to_record_values()
}


/// What a new position did to the record structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Growth {
    Lower,
    Upper,
    /// The new entry joined the block with this label.
    Interior(isize),
}

/// Centered composition maintained while a coherent word grows one position
/// at a time. Interior ranks `2..=size` of the next position are split into
/// consecutive runs, one per noncentral block in label order, block `k`
/// owning `λ_k` of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrowingComposition {
    size: usize,
    /// `λ_{-1}, λ_{-2}, ...`
    lower: Vec<usize>,
    /// `λ_1, λ_2, ...`
    upper: Vec<usize>,
}

impl Default for GrowingComposition {
    fn default() -> Self {
        Self::new()
    }
}

impl GrowingComposition {
    pub fn new() -> Self {
        GrowingComposition {
            size: 1,
            lower: Vec::new(),
            upper: Vec::new(),
        }
    }

    pub fn from_composition(c: &CenteredComposition) -> Self {
        GrowingComposition {
            size: c.degree(),
            lower: c.parts[..c.center].iter().rev().copied().collect(),
            upper: c.parts[c.center + 1..].to_vec(),
        }
    }

    /// Current word length.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn lower_count(&self) -> usize {
        self.lower.len()
    }

    pub fn upper_count(&self) -> usize {
        self.upper.len()
    }

    /// `λ_k` for `k != 0`.
    pub fn part(&self, k: isize) -> usize {
        match k.signum() {
            1 => self.upper[(k - 1) as usize],
            -1 => self.lower[(-k - 1) as usize],
            _ => 1,
        }
    }

    /// Noncentral blocks `(label, size)` in label order.
    pub fn blocks(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        let lower = self
            .lower
            .iter()
            .enumerate()
            .rev()
            .map(|(i, &s)| (-(i as isize) - 1, s));
        let upper = self
            .upper
            .iter()
            .enumerate()
            .map(|(i, &s)| (i as isize + 1, s));
        lower.chain(upper)
    }

    /// Block receiving interior rank `rank` (in `2..=size`) at the next position.
    pub fn block_of_rank(&self, rank: usize) -> isize {
        debug_assert!(rank >= 2 && rank <= self.size);
        let mut offset = rank - 2;
        for (k, s) in self.blocks() {
            if offset < s {
                return k;
            }
            offset -= s;
        }
        unreachable!("rank {rank} beyond size {}", self.size)
    }

    /// First interior rank owned by block `k`.
    pub fn first_rank_of_block(&self, k: isize) -> usize {
        let mut rank = 2;
        for (label, s) in self.blocks() {
            if label == k {
                return rank;
            }
            rank += s;
        }
        panic!("no block {k}")
    }

    /// Appends a position with initial rank `rank` (in `1..=size + 1`).
    pub fn push_rank(&mut self, rank: usize) -> Growth {
        let j = self.size + 1;
        let g = if rank == 1 {
            self.lower.push(1);
            Growth::Lower
        } else if rank == j {
            self.upper.push(1);
            Growth::Upper
        } else {
            let k = self.block_of_rank(rank);
            self.grow_block(k);
            Growth::Interior(k)
        };
        self.size = j;
        g
    }

    pub(crate) fn grow_block(&mut self, k: isize) {
        match k.signum() {
            1 => self.upper[(k - 1) as usize] += 1,
            -1 => self.lower[(-k - 1) as usize] += 1,
            _ => panic!("the center block never grows"),
        }
    }

    /// Applies a growth event chosen at block level.
    pub fn push_growth(&mut self, g: Growth) {
        match g {
            Growth::Lower => self.lower.push(1),
            Growth::Upper => self.upper.push(1),
            Growth::Interior(k) => self.grow_block(k),
        }
        self.size += 1;
    }

    /// `r_0`, the current value of the center.
    pub fn center_value(&self) -> usize {
        1 + self.lower.iter().sum::<usize>()
    }

    /// `r_k` for `-l <= k <= u`.
    pub fn record_value(&self, k: isize) -> usize {
        let r0 = self.center_value();
        match k.signum() {
            1 => r0 + self.upper[..k as usize].iter().sum::<usize>(),
            -1 => r0 - self.lower[..(-k) as usize].iter().sum::<usize>(),
            _ => r0,
        }
    }

    pub fn to_composition(&self) -> CenteredComposition {
        let mut parts: Vec<usize> = self.lower.iter().rev().copied().collect();
        let center = parts.len();
        parts.push(1);
        parts.extend_from_slice(&self.upper);
        CenteredComposition { parts, center }
    }
}
