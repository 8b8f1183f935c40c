//! Lattices and lattice pairs `(Λ, Λ′, F[, pairing])`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    char_poly, cyclotomic_multiplicities, det, inverse, CyclotomicFactorization, IntMat, RatMat,
};
use crate::mixed_module::{check_gram, MixedModule};

/// A full-rank lattice in `ℚ^d`, given by a basis (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: RatMat,
}

impl Lattice {
    pub fn new(basis: RatMat) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch("lattice basis must be square".into()));
        }
        if basis.rows() > 0 && det(&basis).is_zero() {
            return Err(Error::InvalidInput("lattice basis is singular".into()));
        }
        Ok(Lattice { basis })
    }

    pub fn standard(d: usize) -> Self {
        Lattice { basis: RatMat::identity(d) }
    }

    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn module(&self) -> MixedModule {
        MixedModule::lattice(&self.basis)
    }

    pub fn scaled(&self, e: &BigInt) -> Lattice {
        Lattice { basis: self.basis.scale(&BigRational::from_integer(e.clone())) }
    }

    pub fn transformed(&self, g: &RatMat) -> Lattice {
        Lattice { basis: g * &self.basis }
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        match inverse(&self.basis) {
            Some(inv) => (&inv * &other.basis).is_integral(),
            None => false,
        }
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        inverse(&self.basis).is_some_and(|inv| inv.mul_vec(v).iter().all(|x| x.is_integer()))
    }

    /// Whether `alpha` maps the lattice into itself.
    pub fn is_stable(&self, alpha: &RatMat) -> bool {
        self.contains(&Lattice { basis: alpha * &self.basis })
    }

    /// `[self : sub]` for a full-rank sublattice.
    pub fn index(&self, sub: &Lattice) -> BigInt {
        (det(&sub.basis) / det(&self.basis)).abs().to_integer()
    }

    /// The dual lattice `{v : vᵀ G λ ∈ ℤ for all λ}`, basis `B (BᵀGB)⁻¹`.
    pub fn dual(&self, gram: &RatMat) -> Result<Lattice> {
        check_gram(gram, self.dim())?;
        let b = &self.basis;
        let m = &(&b.transpose() * gram) * b;
        let inv = inverse(&m).ok_or_else(|| Error::Degenerate("pairing is degenerate on the lattice".into()))?;
        Ok(Lattice { basis: b * &inv })
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.contains(other) && other.contains(self)
    }
}

/// `(Λ, Λ′, F, G)` with `Λ′ ⊆ Λ` full rank and both `F`-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePair {
    pub lambda: Lattice,
    pub lambda_prime: Lattice,
    pub frobenius: RatMat,
    pub gram: Option<RatMat>,
}

impl LatticePair {
    /// Validates and builds a pair. With a pairing present, `Λ′` must equal `Λ^∨`.
    pub fn new(lambda: Lattice, lambda_prime: Lattice, frobenius: RatMat, gram: Option<RatMat>) -> Result<Self> {
        let d = lambda.dim();
        if lambda_prime.dim() != d || frobenius.rows() != d || frobenius.cols() != d {
            return Err(Error::DimensionMismatch("lattices and automorphism disagree on dimension".into()));
        }
        if !lambda.contains(&lambda_prime) {
            return Err(Error::NotContained("Λ′ is not contained in Λ".into()));
        }
        if !lambda.is_stable(&frobenius) || !lambda_prime.is_stable(&frobenius) {
            return Err(Error::InvalidInput("automorphism does not preserve both lattices".into()));
        }
        if det(&frobenius).abs() != BigRational::one() {
            return Err(Error::NotFiniteOrder("automorphism is not invertible on the lattice".into()));
        }
        cyclotomic_multiplicities(&char_poly(&frobenius)?)?;
        if let Some(g) = &gram {
            check_gram(g, d)?;
            if &(&frobenius.transpose() * g) * &frobenius != *g {
                return Err(Error::InvalidInput("pairing is not invariant under the automorphism".into()));
            }
            if !lambda.dual(g)?.same_lattice(&lambda_prime) {
                return Err(Error::InvalidInput("Λ′ is not the dual of Λ under the given pairing".into()));
            }
        }
        Ok(LatticePair { lambda, lambda_prime, frobenius, gram })
    }

    /// The pair `(Λ, Λ^∨, F, G)`.
    pub fn dual_pair(lambda: Lattice, frobenius: RatMat, gram: RatMat) -> Result<Self> {
        let dual = lambda.dual(&gram)?;
        Self::new(lambda, dual, frobenius, Some(gram))
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn is_dual(&self) -> bool {
        self.gram.is_some()
    }

    /// `D = F - 1`.
    pub fn d_matrix(&self) -> RatMat {
        &self.frobenius - &RatMat::identity(self.dim())
    }

    pub fn cyclotomic(&self) -> CyclotomicFactorization {
        cyclotomic_multiplicities(&char_poly(&self.frobenius).expect("validated")).expect("validated")
    }

    /// Order of `F`.
    pub fn order(&self) -> usize {
        self.cyclotomic().order
    }

    /// `(Λ, eΛ′, F, G/e)`.
    pub fn scaled(&self, e: &BigInt) -> LatticePair {
        assert!(e.is_positive(), "e must be positive");
        let inv = BigRational::new(BigInt::one(), e.clone());
        LatticePair {
            lambda: self.lambda.clone(),
            lambda_prime: self.lambda_prime.scaled(e),
            frobenius: self.frobenius.clone(),
            gram: self.gram.as_ref().map(|g| g.scale(&inv)),
        }
    }

    /// `(Λ, Λ′, F^f, G)`.
    pub fn powered(&self, f: u64) -> LatticePair {
        LatticePair { frobenius: self.frobenius.pow(f), ..self.clone() }
    }

    /// Change of coordinates by an invertible matrix `g`: `Λ ↦ gΛ`, `F ↦ gFg⁻¹`, `G ↦ g⁻ᵀGg⁻¹`.
    pub fn conjugated(&self, g: &IntMat) -> LatticePair {
        let g = g.to_rat();
        let gi = inverse(&g).expect("conjugating matrix must be invertible");
        LatticePair {
            lambda: self.lambda.transformed(&g),
            lambda_prime: self.lambda_prime.transformed(&g),
            frobenius: &(&g * &self.frobenius) * &gi,
            gram: self.gram.as_ref().map(|m| &(&gi.transpose() * m) * &gi),
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &LatticePair) -> LatticePair {
        let block = |a: &RatMat, b: &RatMat| {
            let (n, m) = (a.rows(), b.rows());
            let mut out = RatMat::zeros(n + m, n + m);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] = a[(i, j)].clone();
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out[(n + i, n + j)] = b[(i, j)].clone();
                }
            }
            out
        };
        let gram = match (&self.gram, &other.gram) {
            (Some(a), Some(b)) => Some(block(a, b)),
            _ => None,
        };
        LatticePair {
            lambda: Lattice { basis: block(self.lambda.basis(), other.lambda.basis()) },
            lambda_prime: Lattice { basis: block(self.lambda_prime.basis(), other.lambda_prime.basis()) },
            frobenius: block(&self.frobenius, &other.frobenius),
            gram,
        }
    }
}
