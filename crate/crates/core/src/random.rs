//! Seeded randomness for property checks and sampled verifications.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::fields::{FieldTower, Scalar};

pub const DEFAULT_SEED: u64 = 20_240_611;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `CSA_SEED` if set and numeric, else `fallback`.
pub fn seed_from_env(fallback: u64) -> u64 {
    std::env::var("CSA_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(fallback)
}

/// A small nonzero constant of the algebraic part.
pub fn small_constant(t: &FieldTower, rng: &mut Rng64, height: i64) -> Scalar {
    loop {
        let mut x = t.int(rng.gen_range(-height..=height));
        if t.algebraic_degree() > 1 && rng.gen_bool(0.3) {
            x = &x + &(&t.int(rng.gen_range(-height..=height)) * &t.z());
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random nonzero Laurent polynomial: a short sum of small constants times
/// monomials in the last `depth` variables.
pub fn laurent_scalar(t: &FieldTower, rng: &mut Rng64, depth: usize) -> Scalar {
    loop {
        let terms = rng.gen_range(1..=2);
        let mut x = t.zero();
        for _ in 0..terms {
            let e: Vec<i64> = (0..depth).map(|_| rng.gen_range(-1..=2)).collect();
            x = &x + &(&small_constant(t, rng, 3) * &Scalar::monomial(t, &e));
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random element with `k` nonzero coordinates drawn by `coef`.
pub fn sparse_element(
    alg: &Algebra,
    rng: &mut Rng64,
    k: usize,
    mut coef: impl FnMut(&mut Rng64) -> Scalar,
) -> Element {
    let mut c = vec![alg.tower().zero(); alg.dim()];
    for _ in 0..k.max(1) {
        let i = rng.gen_range(0..alg.dim());
        c[i] = coef(rng);
    }
    alg.element(c).unwrap()
}
