//! Arbitrary-precision integer and rational matrices and polynomials.

pub mod arith;
mod matrix;
pub mod normal_form;
pub mod poly;
pub mod rational;

pub use matrix::{IntMat, Matrix, RatMat};
pub use normal_form::{ext_gcd, hnf, hnf_basis, integer_kernel, snf, Snf};
pub use poly::{char_poly, cyclotomic_multiplicities, strip_unit_root, CyclotomicFactorization, IntPoly};
pub use rational::{column_space, det, det_int, inverse, rank, rational_kernel, rref, solve, solve_vec};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ratv(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}
