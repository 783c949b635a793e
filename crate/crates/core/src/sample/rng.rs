//! Seeded generators and the beta draws used by the shape samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};

/// ChaCha8 keyed by `seed` on substream `stream`; substreams of one seed
/// are independent, so trial `t` of a batch uses stream `t`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on `[0, 1)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>()
}

/// `beta(a, b)`: `U^{1/a}` when `b = 1`, otherwise `G_a / (G_a + G_b)` with
/// independent unit-scale gammas.
pub fn beta<R: Rng + ?Sized>(rng: &mut R, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("beta({a}, {b}) needs positive finite parameters")));
    }
    if b == 1.0 {
        return Ok(uniform(rng).powf(1.0 / a));
    }
    let ga = Gamma::new(a, 1.0).map_err(|e| Error::Domain(e.to_string()))?;
    let gb = Gamma::new(b, 1.0).map_err(|e| Error::Domain(e.to_string()))?;
    let x = ga.sample(rng);
    let y = gb.sample(rng);
    Ok(if x + y > 0.0 { x / (x + y) } else { 0.5 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| substream(7, 0).random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let x: u64 = substream(7, 0).random();
        let y: u64 = substream(7, 1).random();
        assert_ne!(x, y);
    }

    #[test]
    fn beta_means() {
        let mut rng = substream(1, 0);
        for (a, b) in [(2.0, 1.0), (2.0, 3.0), (0.5, 0.5)] {
            let n = 200_000;
            let mean: f64 = (0..n).map(|_| beta(&mut rng, a, b).unwrap()).sum::<f64>() / n as f64;
            let var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
            assert!((mean - a / (a + b)).abs() < 4.0 * (var / n as f64).sqrt(), "beta({a},{b}) mean {mean}");
        }
        assert!(beta(&mut rng, 0.0, 1.0).is_err());
    }
}
