//! Finite abelian groups given by invariant factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact_linalg::{snf, IntMat, RatMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    /// Invariant factors, each at least 2, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Ambient coset representatives of the generators, one column per factor.
    pub generators: Option<RatMat>,
    /// Matrix of an induced endomorphism in generator coordinates.
    pub induced_endo: Option<IntMat>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: Vec::new(), generators: None, induced_endo: None }
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        assert!(orders.iter().all(|o| o.is_positive()), "cyclic orders must be positive");
        let d = snf(&IntMat::diag(orders)).d;
        FinAbGroup {
            invariant_factors: d.into_iter().filter(|x| !x.is_one()).collect(),
            generators: None,
            induced_endo: None,
        }
    }

    pub fn from_u64(orders: &[u64]) -> Self {
        let v: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        Self::from_cyclic_orders(&v)
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Order of the `e`-torsion subgroup, `∏ gcd(d_i, e)`.
    pub fn torsion_order(&self, e: &BigInt) -> BigInt {
        self.invariant_factors.iter().map(|d| d.gcd(e)).product()
    }

    /// The `e`-torsion subgroup as an abstract group.
    pub fn torsion(&self, e: &BigInt) -> FinAbGroup {
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(e)).collect();
        Self::from_cyclic_orders(&orders)
    }

    /// `B / B[e]`, computed factorwise as `d / gcd(d, e)`.
    pub fn quotient_by_torsion(&self, e: &BigInt) -> FinAbGroup {
        assert!(e.is_positive(), "e must be positive");
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d / d.gcd(e)).collect();
        Self::from_cyclic_orders(&orders)
    }

    /// Same abstract group, without generator data.
    pub fn abstract_group(&self) -> FinAbGroup {
        FinAbGroup { invariant_factors: self.invariant_factors.clone(), generators: None, induced_endo: None }
    }

    /// Whether the stored endomorphism is the identity modulo the invariant factors.
    pub fn endo_is_identity(&self) -> Option<bool> {
        let m = self.induced_endo.as_ref()?;
        let k = self.invariant_factors.len();
        Some((0..k).all(|i| {
            (0..k).all(|j| {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                (&m[(i, j)] - want).is_multiple_of(&self.invariant_factors[i])
            })
        }))
    }

    /// Whether the stored endomorphism is zero modulo the invariant factors.
    pub fn endo_is_zero(&self) -> Option<bool> {
        let m = self.induced_endo.as_ref()?;
        let k = self.invariant_factors.len();
        Some((0..k).all(|i| (0..k).all(|j| m[(i, j)].is_multiple_of(&self.invariant_factors[i]))))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
