//! Uniform words with prescribed record values.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::rng::substream;
use crate::error::Result;
use crate::perm::Permutation;
use crate::records::RecordValues;

/// The first entry is the center; each later entry draws `v` uniformly from
/// the values not yet output. A `v` below the current minimum is replaced by
/// the next lower record value, one above the current maximum by the next
/// upper record value; the value actually output leaves the pool.
pub fn sample_conditioned_with(rv: &RecordValues, rng: &mut ChaCha8Rng) -> Result<Permutation> {
    let n = rv.n();
    let mut pool: Vec<usize> = (1..=n).collect();
    // slot[v - 1] is the index of v in pool
    let mut slot: Vec<usize> = (0..n).collect();
    let mut take = |v: usize, pool: &mut Vec<usize>| {
        let i = slot[v - 1];
        let last = *pool.last().unwrap();
        pool.swap_remove(i);
        if last != v {
            slot[last - 1] = i;
        }
    };
    let mut out = Vec::with_capacity(n);
    let c = rv.center_value();
    take(c, &mut pool);
    out.push(c);
    let (mut l, mut u) = (0isize, 0isize);
    while !pool.is_empty() {
        let v = pool[rng.random_range(0..pool.len())];
        let x = if v < rv.value(-l) {
            l += 1;
            rv.value(-l)
        } else if v > rv.value(u) {
            u += 1;
            rv.value(u)
        } else {
            v
        };
        take(x, &mut pool);
        out.push(x);
    }
    Permutation::new(out)
}

pub fn sample_conditioned(rv: &RecordValues, seed: u64) -> Result<Permutation> {
    sample_conditioned_with(rv, &mut substream(seed, 0))
}
