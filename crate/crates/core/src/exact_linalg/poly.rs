//! Integer polynomials, characteristic polynomials and cyclotomic factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{euler_phi, prime_power};
use super::matrix::RatMat;
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Division by a monic polynomial: `(quotient, remainder)`.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        assert!(d.lead().is_one(), "divisor must be monic");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// `t^m - 1`.
    fn unit_root_poly(m: usize) -> Self {
        let mut c = vec![BigInt::zero(); m + 1];
        c[0] = -BigInt::one();
        c[m] = BigInt::one();
        Self::new(c)
    }

    /// The `m`-th cyclotomic polynomial.
    pub fn cyclotomic(m: usize) -> Self {
        assert!(m >= 1);
        let mut p = Self::unit_root_poly(m);
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = p.divrem_monic(&Self::cyclotomic(d)).0;
            }
        }
        p
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{a}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{a}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `det(t·I - M)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &RatMat) -> Result<IntPoly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let id = RatMat::identity(n);
    let mut mk = RatMat::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&c[n - k + 1]);
        let am = m * &mk;
        c[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
    }
    if c.iter().any(|x| !x.is_integer()) {
        return Err(Error::NotIntegral("characteristic polynomial has non-integral coefficients".into()));
    }
    Ok(IntPoly::new(c.into_iter().map(|x| x.to_integer()).collect()))
}

/// Writes `p = ±(t-1)^r q` with `r` maximal and `q(1) > 0`; returns `(r, q(1), q)`.
pub fn strip_unit_root(p: &IntPoly) -> (usize, BigInt, IntPoly) {
    assert!(!p.is_zero(), "zero polynomial");
    let lin = IntPoly::from_i64(&[-1, 1]);
    let one = BigInt::one();
    let mut q = p.clone();
    let mut r = 0;
    while q.eval(&one).is_zero() {
        let (quot, rem) = q.divrem_monic(&lin);
        assert!(rem.is_zero());
        q = quot;
        r += 1;
    }
    let mut v = q.eval(&one);
    assert!(!v.is_zero());
    if v.is_negative() {
        q = q.neg();
        v = -v;
    }
    (r, v, q)
}

/// Factorization of a product of cyclotomic polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    /// `m ↦ a_m` with `q = ∏ Φ_m^{a_m}`.
    pub multiplicities: BTreeMap<usize, usize>,
    /// `∏ q^{a_m}` over prime powers `m = q^k`.
    pub p_value: BigInt,
    /// lcm of the `m` occurring.
    pub order: usize,
}

pub fn cyclotomic_multiplicities(q: &IntPoly) -> Result<CyclotomicFactorization> {
    let mut rest = if q.lead().is_negative() { q.neg() } else { q.clone() };
    let deg = rest.degree().ok_or_else(|| Error::NotFiniteOrder("zero polynomial".into()))?;
    if !rest.lead().is_one() {
        return Err(Error::NotFiniteOrder(format!("{q} is not monic")));
    }
    let mut multiplicities = BTreeMap::new();
    let bound = (2 * deg * deg).max(2);
    for m in 1..=bound {
        if euler_phi(m) > deg {
            continue;
        }
        let phi = IntPoly::cyclotomic(m);
        loop {
            let (quot, rem) = rest.divrem_monic(&phi);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            *multiplicities.entry(m).or_insert(0) += 1;
        }
    }
    if rest != IntPoly::one() {
        return Err(Error::NotFiniteOrder(format!("{q} has the non-cyclotomic factor {rest}")));
    }
    let mut p_value = BigInt::one();
    let mut order = 1usize;
    for (&m, &a) in &multiplicities {
        if let Some((prime, _)) = prime_power(m) {
            p_value *= num_traits::pow(BigInt::from(prime), a);
        }
        order = order.lcm(&m);
    }
    Ok(CyclotomicFactorization { multiplicities, p_value, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(IntPoly::cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(IntPoly::cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn char_poly_examples() {
        let f = RatMat::from_i64(&[&[0, -1], &[1, -1]]);
        assert_eq!(char_poly(&f).unwrap(), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(char_poly(&RatMat::identity(2)).unwrap(), IntPoly::from_i64(&[1, -2, 1]));
        let f = RatMat::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&f).unwrap(), IntPoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn strip_examples() {
        let (r, p1, _) = strip_unit_root(&IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!((r, p1), (2, BigInt::one()));
        let (r, p1, _) = strip_unit_root(&IntPoly::from_i64(&[1, 2, 1]));
        assert_eq!((r, p1), (0, BigInt::from(4)));
        let (r, p1, _) = strip_unit_root(&IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!((r, p1), (1, BigInt::from(2)));
    }

    #[test]
    fn multiplicities_examples() {
        let c = cyclotomic_multiplicities(&IntPoly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(c.multiplicities, BTreeMap::from([(3, 1)]));
        assert_eq!(c.p_value, BigInt::from(3));
        let c = cyclotomic_multiplicities(&IntPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(c.multiplicities, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(c.p_value, BigInt::from(2));
        let c = cyclotomic_multiplicities(&IntPoly::from_i64(&[1, -1, 1])).unwrap();
        assert_eq!(c.p_value, BigInt::one());
        assert_eq!(c.order, 6);
        assert!(cyclotomic_multiplicities(&IntPoly::from_i64(&[-1, -1, 1])).is_err());
    }
}
