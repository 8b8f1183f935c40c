//! Small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Some((q, k))` when `m = q^k` with `q` prime and `k >= 1`.
pub fn prime_power(m: usize) -> Option<(usize, u32)> {
    if m < 2 {
        return None;
    }
    let q = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = m;
    while r.is_multiple_of(q) {
        r /= q;
        k += 1;
    }
    (r == 1).then_some((q, k))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division (`|n| >= 1`).
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factorize(0)");
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let mut k = 0;
            while n.is_multiple_of(&d) {
                n /= &d;
                k += 1;
            }
            out.push((d.clone(), k));
        }
        d += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Squarefree part of a nonzero integer, sign dropped.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    factorize(n).into_iter().filter(|(_, k)| k % 2 == 1).fold(BigInt::one(), |acc, (p, _)| acc * p)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    is_square(n).then(|| n.sqrt())
}

/// 2-adic valuation of a nonzero integer.
pub fn ord2(n: &BigInt) -> i64 {
    assert!(!n.is_zero());
    n.trailing_zeros().and_then(|t| t.to_i64()).unwrap_or(0)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_prime_powers() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(72)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::one());
        assert_eq!(squarefree_part(&BigInt::from(-45)), BigInt::from(5));
    }
}
