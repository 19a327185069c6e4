//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use implic::constraint::Ci;
use implic::{Constraint, Implication, Rational, SetFunction, VarSet, VarUniverse};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_h(n: usize, rng: &mut ChaCha8Rng) -> SetFunction<Rational> {
    let u = VarUniverse::letters(n).expect("n within cap");
    SetFunction::from_fn(u, |_| {
        Rational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=7).into())
    })
}

pub fn random_f64_h(n: usize, rng: &mut ChaCha8Rng) -> SetFunction<f64> {
    let u = VarUniverse::letters(n).expect("n within cap");
    SetFunction::from_fn(u, |_| rng.gen_range(-1.0..1.0))
}

/// A random saturated CI `(A;B|C)` with `ABC = Ω`.
pub fn random_saturated(n: usize, rng: &mut ChaCha8Rng) -> Ci {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    let s = |r: &[usize]| VarSet::from_indices(r.iter().copied());
    Ci::new(s(&idx[..i]), s(&idx[i..j]), s(&idx[j..]))
}

/// Saturated antecedents with a consequent taken from one of their chain parts,
/// so that the implication holds.
pub fn holding_implication(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Implication {
    let u: Arc<VarUniverse> = VarUniverse::letters(n).expect("n within cap");
    let sigma: Vec<Ci> = (0..k).map(|_| random_saturated(n, rng)).collect();
    let parts = implic::chain_decompose(&sigma[0]);
    let tau = *parts.choose(rng).expect("nonempty");
    Implication::new(
        u,
        sigma.into_iter().map(Constraint::Ci).collect(),
        Constraint::Ci(tau),
    )
    .expect("valid implication")
}
