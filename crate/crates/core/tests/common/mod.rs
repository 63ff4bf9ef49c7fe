#![allow(dead_code)]

use fourfold::fixtures::{corpus, CorpusEntry};
use fourfold::poly::{inverse, rat, RatMat4};
use fourfold::{InvariantReport, TraceConfig};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn identity() -> RatMat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() }))
}

pub fn matmul(a: &RatMat4, b: &RatMat4) -> RatMat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

/// Rational rotation `(I - A)(I + A)^-1` from the skew matrix with upper entries `upper / den`.
pub fn cayley(upper: [i64; 6], den: i64) -> RatMat4 {
    let mut a: RatMat4 = std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()));
    let mut k = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            a[i][j] = rat(upper[k], den);
            a[j][i] = -rat(upper[k], den);
            k += 1;
        }
    }
    let id = identity();
    let minus: RatMat4 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] - &a[i][j]));
    let plus: RatMat4 = std::array::from_fn(|i| std::array::from_fn(|j| &id[i][j] + &a[i][j]));
    matmul(&minus, &inverse(&plus).expect("I + A is invertible for skew A"))
}

/// Random rational rotations with small entries, reproducible from `seed`.
pub fn random_rotations(count: usize, seed: u64) -> Vec<RatMat4> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| cayley(std::array::from_fn(|_| rng.random_range(-4..=4)), 5)).collect()
}

pub fn gating_corpus() -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| !e.optional).collect()
}

pub fn entry(name: &str) -> CorpusEntry {
    fourfold::fixtures::corpus_entry(name).unwrap_or_else(|| panic!("corpus entry {name}"))
}

pub fn default_config() -> TraceConfig {
    TraceConfig::default()
}

/// Counts compared across equivalent runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counts {
    pub components: usize,
    pub umbrellas: usize,
    pub triple_points: usize,
    pub pushoff_components: Vec<usize>,
    pub invariant: i64,
}

pub fn counts(r: &InvariantReport) -> Counts {
    let mut pushoff_components: Vec<usize> = r.components.iter().map(|c| c.pushoff_components).collect();
    pushoff_components.sort();
    Counts {
        components: r.components.len(),
        umbrellas: r.umbrella_total(),
        triple_points: r.triple_points_total,
        pushoff_components,
        invariant: r.invariant,
    }
}
