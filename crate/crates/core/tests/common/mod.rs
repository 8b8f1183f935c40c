#![allow(dead_code)]

use latpair::exact_linalg::{IntMat, RatMat};
use latpair::oracle::{random_pair, GeneratedPair, GeneratorOptions};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn generated(seed: u64) -> GeneratedPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pair(&mut rng, &GeneratorOptions::default())
}

pub fn int_mat(n: usize, m: usize, entries: &[i64]) -> IntMat {
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..m).map(|j| BigInt::from(entries[i * m + j])).collect()).collect();
    IntMat::from_rows(&rows)
}

pub fn rat_mat(n: usize, m: usize, entries: &[(i64, i64)]) -> RatMat {
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..m).map(|j| BigRational::new(entries[i * m + j].0.into(), entries[i * m + j].1.into())).collect())
        .collect();
    RatMat::from_rows(&rows)
}
