//! The classical projections onto `n - 1` and the record-to-cycle bijection.

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjectionMode {
    /// Delete the entry `n` from the word.
    OneRowDelete,
    /// Delete `n` from its cycle, joining its predecessor to its successor.
    CycleDelete,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HatDirection {
    Forward,
    Inverse,
}

pub fn classical_project(p: &Permutation, mode: ProjectionMode) -> Result<Permutation> {
    let n = p.len();
    if n < 2 {
        return Err(Error::Argument("classical projection needs n >= 2".into()));
    }
    let w = p.as_slice();
    let out = match mode {
        ProjectionMode::OneRowDelete => w.iter().copied().filter(|&v| v != n).collect(),
        ProjectionMode::CycleDelete => {
            let mut map = w.to_vec();
            let succ = map[n - 1];
            if succ != n {
                let pred = map.iter().position(|&v| v == n).unwrap();
                map[pred] = succ;
            }
            map.truncate(n - 1);
            map
        }
    };
    Ok(Permutation::from_vec_unchecked(out))
}

/// Forward: cut the word before each proper lower record and read the pieces
/// as cycles. Inverse: list each cycle from its minimum, cycles by
/// decreasing minimum, and concatenate.
pub fn hat_bijection(p: &Permutation, direction: HatDirection) -> Permutation {
    match direction {
        HatDirection::Forward => hat_forward(p),
        HatDirection::Inverse => hat_inverse(p),
    }
}

fn hat_forward(p: &Permutation) -> Permutation {
    let w = p.as_slice();
    let n = w.len();
    let mut map = vec![0; n];
    let mut start = 0;
    let mut lo = w[0];
    for j in 1..=n {
        let cut = j == n || w[j] < lo;
        if cut {
            let cycle = &w[start..j];
            for (i, &x) in cycle.iter().enumerate() {
                map[x - 1] = cycle[(i + 1) % cycle.len()];
            }
            start = j;
            if j < n {
                lo = w[j];
            }
        }
    }
    Permutation::from_vec_unchecked(map)
}

fn hat_inverse(sigma: &Permutation) -> Permutation {
    let map = sigma.as_slice();
    let n = map.len();
    let mut seen = vec![false; n + 1];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        // scanning upward, `start` is the minimum of its cycle
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = map[start - 1];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = map[x - 1];
        }
        cycles.push(cycle);
    }
    let word = cycles.into_iter().rev().flatten().collect();
    Permutation::from_vec_unchecked(word)
}

/// Cycle notation of a permutation read as a mapping, cycles in order of their minima.
pub fn cycles(sigma: &Permutation) -> Vec<Vec<usize>> {
    let map = sigma.as_slice();
    let mut seen = vec![false; map.len() + 1];
    let mut out = Vec::new();
    for start in 1..=map.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = map[start - 1];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = map[x - 1];
        }
        out.push(cycle);
    }
    out
}
