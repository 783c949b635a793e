//! Dimension and extension counts of the centered-composition poset, Martin
//! ratios, and the boundary functions indexed by shapes.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::composition::{profile_to_composition, CenteredComposition};
use crate::error::{Error, Result};
use crate::perm::{factorial_usize, InitialRanks, Permutation, ENUMERATION_CAP};
use crate::rational::{binomial, count_to_rational, factorial, falling, int, BigCount, Rational};
use crate::records::extract_records;
use crate::shape::TwoSidedShape;

/// `(n-1)! / Π_{k≠0} Λ_k`: the number of words with composition `λ`.
pub fn d_count(lambda: &CenteredComposition) -> BigCount {
    let denom: BigCount = lambda.tail_sums().into_iter().map(BigCount::from).product();
    let (q, r) = factorial(lambda.degree() - 1).div_rem(&denom);
    debug_assert!(r.is_zero());
    q
}

/// Label offset of `λ` inside a successor `μ`, with the new part counts `(b, a)`.
fn offsets(lambda: &CenteredComposition, mu: &CenteredComposition) -> Result<(usize, usize)> {
    lambda.successor_offsets(mu).ok_or_else(|| {
        Error::Order(format!("{mu} does not succeed {lambda}"))
    })
}

/// `(m-n)! Π_k C(μ_k - 1, λ_k - 1) / (M_{-l-b}…M_{-l-1} M_{u+1}…M_{u+a})`:
/// the number of words with composition `μ` extending a fixed word with
/// composition `λ`.
pub fn d_ext(lambda: &CenteredComposition, mu: &CenteredComposition) -> Result<BigCount> {
    let (b, a) = offsets(lambda, mu)?;
    let (l, u) = (lambda.lower_len() as isize, lambda.upper_len() as isize);
    let mut num = factorial(mu.degree() - lambda.degree());
    for k in lambda.labels() {
        num *= binomial(mu.part(k) - 1, lambda.part(k) - 1);
    }
    let mut denom = BigCount::one();
    for k in (-l - b as isize)..=(-l - 1) {
        denom *= BigCount::from(mu.tail_sum(k));
    }
    for k in (u + 1)..=(u + a as isize) {
        denom *= BigCount::from(mu.tail_sum(k));
    }
    let (q, r) = num.div_rem(&denom);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `Π_{k≠0, |λ|} M_k / (m-1)_{(n-1)↓} · Π_k (μ_k - 1)_{(λ_k - 1)↓} / (λ_k - 1)!`.
pub fn martin_ratio(lambda: &CenteredComposition, mu: &CenteredComposition) -> Result<Rational> {
    offsets(lambda, mu)?;
    let mut acc = Rational::one();
    for k in lambda.labels().filter(|&k| k != 0) {
        acc *= int(mu.tail_sum(k) as i64);
    }
    acc /= falling(&int(mu.degree() as i64 - 1), lambda.degree() - 1);
    for k in lambda.labels() {
        let s = lambda.part(k) - 1;
        acc *= falling(&int(mu.part(k) as i64 - 1), s) / count_to_rational(&factorial(s));
    }
    Ok(acc)
}

/// `d_ext(λ, μ) / d_count(μ)` as a quotient of counts.
pub fn martin_ratio_by_counts(lambda: &CenteredComposition, mu: &CenteredComposition) -> Result<Rational> {
    Ok(count_to_rational(&d_ext(lambda, mu)?) / count_to_rational(&d_count(mu)))
}

/// `Π_{k<0} ρ_{k+1} p_k^{λ_k-1} · Π_{k>0} (1 - ρ_{k-1}) p_k^{λ_k-1}`.
pub fn phi_boundary(lambda: &CenteredComposition, shape: &TwoSidedShape) -> Result<f64> {
    let mut acc = 1.0;
    for k in lambda.labels().filter(|&k| k != 0) {
        let edge = if k < 0 {
            *shape.rho_or_truncation(k + 1)?
        } else {
            1.0 - shape.rho_or_truncation(k - 1)?
        };
        acc *= edge * shape.gap(k)?.powi(lambda.part(k) as i32 - 1);
    }
    Ok(acc)
}

/// Number of centered compositions of `n`, by enumeration.
pub fn composition_count(n: usize) -> BigCount {
    BigCount::from(CenteredComposition::all_of_degree(n).len())
}

/// `2^{n-3} (n+2)` for `n >= 2`, as an exact rational so that `n = 2` is covered.
pub fn composition_count_formula(n: usize) -> Rational {
    let pow = if n >= 3 {
        Rational::from_integer(num_bigint::BigInt::one() << (n - 3))
    } else {
        Rational::new(1.into(), (1i64 << (3 - n)).into())
    };
    pow * int(n as i64 + 2)
}

fn composition_of(p: &Permutation) -> CenteredComposition {
    profile_to_composition(extract_records(p).values())
}

/// Size of the class of `λ` by scanning all of `S_n`.
pub fn d_count_brute(lambda: &CenteredComposition) -> Result<usize> {
    let n = lambda.degree();
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!("brute force needs n <= {ENUMERATION_CAP}")));
    }
    Ok(Permutation::all(n).filter(|p| &composition_of(p) == lambda).count())
}

/// Extensions of `p` to size `m` with composition `mu`, by scanning every
/// coherent extension.
pub fn d_ext_brute(p: &Permutation, mu: &CenteredComposition) -> Result<usize> {
    let n = p.len();
    let m = mu.degree();
    if m > ENUMERATION_CAP || m < n {
        return Err(Error::Resource(format!("brute force needs {n} <= m <= {ENUMERATION_CAP}")));
    }
    let base = p.code();
    let step = factorial_usize(n);
    Ok((0..factorial_usize(m) / step)
        .filter(|t| {
            let q = InitialRanks::from_code(m, base + t * step).to_permutation();
            &composition_of(&q) == mu
        })
        .count())
}
