//! Seed-deterministic sampling of rational parameter points, with rejection
//! of the degenerate loci the exact identities must avoid.

use dsbo_core::affine::AffineForm;
use dsbo_core::params::InductionParams;
use dsbo_core::scalar::{ratq, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rational with numerator in [−200, 200] and denominator ≤ 97.
pub fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(-200i64..=200);
    let den = rng.gen_range(1i64..=97);
    ratq(num, den)
}

fn half_integer_shifted(d: &Rat) -> bool {
    (d + &ratq(1, 2)).is_integer()
}

/// Numeric parameters for the rank-(n, n+1) pair with every λ_i − λ_j
/// non-integral and every λ_i − ν_j off the half-integer lattice, so that
/// kernel exponents and eigenvalue divisions stay generic.  Deterministic in
/// the rng state; rejection sampling with a hard retry cap.
pub fn random_generic_params(rng: &mut ChaCha8Rng, n: usize) -> InductionParams {
    'outer: for _ in 0..10_000 {
        let lambda: Vec<Rat> = (0..=n).map(|_| random_rat(rng)).collect();
        let nu: Vec<Rat> = (0..n).map(|_| random_rat(rng)).collect();
        for i in 0..=n {
            for j in 0..=n {
                if i != j && (&lambda[i] - &lambda[j]).is_integer() {
                    continue 'outer;
                }
            }
        }
        for l in &lambda {
            for v in &nu {
                if half_integer_shifted(&(l - v)) || (l - v).is_integer() {
                    continue 'outer;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (&nu[i] - &nu[j]).is_integer() {
                    continue 'outer;
                }
            }
        }
        return InductionParams::numeric(n, &lambda, &nu);
    }
    panic!("rejection sampling failed to find a generic point");
}

/// A random parity vector pair (ξ, η) for the pair of principal series.
pub fn random_parities(rng: &mut ChaCha8Rng, n: usize) -> (Vec<u8>, Vec<u8>) {
    let xi = (0..=n).map(|_| rng.gen_range(0u8..=1)).collect();
    let eta = (0..n).map(|_| rng.gen_range(0u8..=1)).collect();
    (xi, eta)
}

/// A random affine form a + b·x over the given variable, with small integer
/// slope and rational constant.
pub fn random_affine(rng: &mut ChaCha8Rng, var: &str) -> AffineForm {
    let slope = rng.gen_range(0i64..=2);
    let base = AffineForm::var(var).scale(&Rat::from_integer(slope.into()));
    base.add_const(&random_rat(rng))
}
