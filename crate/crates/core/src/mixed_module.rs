//! Subsets of `V = ℚ^d` of the form `U + Λ₀` with `U` a subspace and `Λ₀`
//! a finitely generated subgroup.
//!
//! Canonical form: the subspace basis is the reduced row echelon basis of `U`;
//! lattice generators have their pivot coordinates (with respect to that basis)
//! zeroed, and are then put in column Hermite normal form. Two modules are
//! equal iff their canonical forms agree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{hnf_basis, rational_kernel, rref, snf, solve_vec, IntMat, RatMat, Snf};
use crate::group::FinAbGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedModule {
    dim: usize,
    subspace: RatMat,
    pivots: Vec<usize>,
    lattice: RatMat,
}

fn to_rat(m: &IntMat) -> RatMat {
    m.to_rat()
}

impl MixedModule {
    /// Builds the module `span_ℚ(sub) + span_ℤ(lat)`; generators are columns.
    pub fn from_generators(dim: usize, sub: &RatMat, lat: &RatMat) -> Self {
        assert!(sub.cols() == 0 || sub.rows() == dim, "subspace generators have wrong dimension");
        assert!(lat.cols() == 0 || lat.rows() == dim, "lattice generators have wrong dimension");
        let (subspace, pivots) = if sub.cols() == 0 {
            (RatMat::zeros(dim, 0), Vec::new())
        } else {
            let (r, piv) = rref(&sub.transpose());
            let rows: Vec<usize> = (0..piv.len()).collect();
            (r.select_rows(&rows).transpose(), piv)
        };
        let mut m = MixedModule { dim, subspace, pivots, lattice: RatMat::zeros(dim, 0) };
        if lat.cols() > 0 {
            let reduced: Vec<Vec<BigRational>> = lat.to_cols().iter().map(|v| m.reduce(v)).collect();
            let red = RatMat::from_cols(dim, &reduced);
            let (a, l) = red.clear_denominators();
            let h = hnf_basis(&a);
            let lr = BigRational::from_integer(l);
            m.lattice = to_rat(&h).map(|x| x / &lr);
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &RatMat::zeros(dim, 0), &RatMat::zeros(dim, 0))
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::subspace(&RatMat::identity(dim))
    }

    pub fn lattice(basis: &RatMat) -> Self {
        Self::from_generators(basis.rows(), &RatMat::zeros(basis.rows(), 0), basis)
    }

    pub fn subspace(basis: &RatMat) -> Self {
        Self::from_generators(basis.rows(), basis, &RatMat::zeros(basis.rows(), 0))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn subspace_basis(&self) -> &RatMat {
        &self.subspace
    }

    pub fn lattice_gens(&self) -> &RatMat {
        &self.lattice
    }

    pub fn dim_minus(&self) -> usize {
        self.subspace.cols()
    }

    pub fn dim_plus(&self) -> usize {
        self.subspace.cols() + self.lattice.cols()
    }

    pub fn codim_minus(&self) -> usize {
        self.dim - self.dim_minus()
    }

    pub fn codim_plus(&self) -> usize {
        self.dim - self.dim_plus()
    }

    /// Whether this is a full-rank lattice (no subspace part, rank `d`).
    pub fn is_full_lattice(&self) -> bool {
        self.subspace.cols() == 0 && self.lattice.cols() == self.dim
    }

    /// Canonical representative of `v` modulo the subspace part.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (i, x) in out.iter_mut().enumerate() {
                *x -= &c * &self.subspace[(i, k)];
            }
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", self.dim, other.dim)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_generators(self.dim, &self.subspace.hcat(&other.subspace), &self.lattice.hcat(&other.lattice)))
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        Ok(self.sum(other)? == *self)
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        let r = self.reduce(v);
        if r.iter().all(Zero::is_zero) {
            return true;
        }
        match solve_vec(&self.lattice, &r) {
            Some(c) => c.iter().all(|x| x.is_integer()),
            None => false,
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let d = self.dim;
        let (s1, g1, s2, g2) = (self.subspace.cols(), self.lattice.cols(), other.subspace.cols(), other.lattice.cols());
        let big = self.subspace.hcat(&self.lattice).hcat(&(-&other.subspace)).hcat(&(-&other.lattice));
        if big.cols() == 0 {
            return Ok(Self::zero(d));
        }
        let k = rational_kernel(&big);
        if k.cols() == 0 {
            return Ok(Self::zero(d));
        }
        let int_rows: Vec<usize> = (s1..s1 + g1).chain(s1 + g1 + s2..s1 + g1 + s2 + g2).collect();
        let p = k.select_rows(&int_rows);
        let mu = lattice_preimage(&p);
        let first = self.subspace.hcat(&self.lattice);
        let proj = &first * &k.select_rows(&(0..s1 + g1).collect::<Vec<_>>());
        Ok(mu.image(&proj))
    }

    /// `{x ∈ ℚ^n : α x ∈ self}` for a `d × n` matrix `α`.
    pub fn preimage(&self, alpha: &RatMat) -> Result<Self> {
        if alpha.rows() != self.dim {
            return Err(Error::DimensionMismatch("preimage map has wrong target dimension".into()));
        }
        let n = alpha.cols();
        let (s, g) = (self.subspace.cols(), self.lattice.cols());
        let big = alpha.hcat(&(-&self.subspace)).hcat(&(-&self.lattice));
        let k = rational_kernel(&big);
        if k.cols() == 0 {
            return Ok(Self::zero(n));
        }
        let p = k.select_rows(&(n + s..n + s + g).collect::<Vec<_>>());
        let mu = lattice_preimage(&p);
        Ok(mu.image(&k.select_rows(&(0..n).collect::<Vec<_>>())))
    }

    /// `α·self` for a `k × d` matrix `α`.
    pub fn image(&self, alpha: &RatMat) -> Self {
        assert_eq!(alpha.cols(), self.dim, "image map has wrong source dimension");
        Self::from_generators(alpha.rows(), &(alpha * &self.subspace), &(alpha * &self.lattice))
    }

    /// `{v : (v, s) ∈ ℤ for all s ∈ self}` under the symmetric form `g`.
    pub fn dual(&self, gram: &RatMat) -> Result<Self> {
        check_gram(gram, self.dim)?;
        let d = self.dim;
        let k = if self.subspace.cols() == 0 {
            RatMat::identity(d)
        } else {
            rational_kernel(&(&self.subspace.transpose() * gram))
        };
        if k.cols() == 0 {
            return Ok(Self::zero(d));
        }
        if self.lattice.cols() == 0 {
            return Ok(Self::subspace(&k));
        }
        let p = &(&self.lattice.transpose() * gram) * &k;
        Ok(lattice_preimage(&p).image(&k))
    }

    /// Coordinates of a reduced vector in the lattice basis, if `v ∈ self`.
    fn lattice_coords(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let r = self.reduce(v);
        if self.lattice.cols() == 0 {
            return r.iter().all(Zero::is_zero).then(Vec::new);
        }
        let c = solve_vec(&self.lattice, &r)?;
        if !c.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(c.into_iter().map(|x| x.to_integer()).collect())
    }

    /// The finite quotient `self / sub`.
    pub fn finite_quotient(&self, sub: &Self) -> Result<Quotient> {
        self.check_dim(sub)?;
        if !self.contains(sub)? {
            return Err(Error::NotContained("quotient denominator is not a submodule".into()));
        }
        if self.subspace != sub.subspace {
            return Err(Error::InfiniteQuotient("subspace parts differ".into()));
        }
        let g = self.lattice.cols();
        let mut cols = Vec::with_capacity(sub.lattice.cols());
        for v in sub.lattice.to_cols() {
            cols.push(self.lattice_coords(&v).expect("containment already checked"));
        }
        let c = IntMat::from_cols(g, &cols);
        let s = if g == 0 { snf(&IntMat::zeros(0, 0)) } else { snf(&c) };
        if s.rank() < g {
            return Err(Error::InfiniteQuotient("lattice parts have different rank".into()));
        }
        let full_d: Vec<BigInt> = s.d.clone();
        let nontrivial: Vec<usize> = (0..g).filter(|&i| !full_d[i].is_one()).collect();
        let gens_all = &self.lattice * &to_rat(&s.u_inv);
        let generators = gens_all.select_cols(&nontrivial);
        let group = FinAbGroup {
            invariant_factors: nontrivial.iter().map(|&i| full_d[i].clone()).collect(),
            generators: Some(generators),
            induced_endo: None,
        };
        Ok(Quotient { big: self.clone(), snf: s, nontrivial, group })
    }
}

/// `{μ ∈ ℚ^n : P μ ∈ ℤ^k}` for a rational `k × n` matrix `P`.
pub fn lattice_preimage(p: &RatMat) -> MixedModule {
    let n = p.cols();
    if p.rows() == 0 {
        return MixedModule::whole_space(n);
    }
    let (a, l) = p.clear_denominators();
    let s = snf(&a);
    let r = s.rank();
    let v = to_rat(&s.v);
    let lat_cols: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let f = BigRational::new(l.clone(), s.d[i].clone());
            v.col(i).into_iter().map(|x| x * &f).collect()
        })
        .collect();
    let sub_cols: Vec<Vec<BigRational>> = (r..n).map(|i| v.col(i)).collect();
    MixedModule::from_generators(n, &RatMat::from_cols(n, &sub_cols), &RatMat::from_cols(n, &lat_cols))
}

pub fn check_gram(gram: &RatMat, dim: usize) -> Result<()> {
    if gram.rows() != dim || gram.cols() != dim {
        return Err(Error::DimensionMismatch(format!("pairing matrix must be {dim}x{dim}")));
    }
    if !gram.is_symmetric() {
        return Err(Error::Degenerate("pairing matrix is not symmetric".into()));
    }
    if crate::exact_linalg::det(gram).is_zero() {
        return Err(Error::Degenerate("pairing matrix is singular".into()));
    }
    Ok(())
}

/// A finite quotient `M / N` with coordinates adapted to its invariant factors.
#[derive(Clone, Debug)]
pub struct Quotient {
    big: MixedModule,
    snf: Snf,
    nontrivial: Vec<usize>,
    group: FinAbGroup,
}

impl Quotient {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn into_group(self) -> FinAbGroup {
        self.group
    }

    pub fn order(&self) -> BigInt {
        self.group.order()
    }

    /// Coordinates of `x ∈ M` with respect to the generators, reduced into `[0, d_i)`.
    pub fn coords(&self, x: &[BigRational]) -> Result<Vec<BigInt>> {
        let c = self
            .big
            .lattice_coords(x)
            .ok_or_else(|| Error::NotContained("vector is not in the quotient numerator".into()))?;
        let y = self.snf.u.mul_vec(&c);
        Ok(self.nontrivial.iter().zip(&self.group.invariant_factors).map(|(&i, d)| y[i].mod_floor(d)).collect())
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigRational> {
        let g = self.group.generators.as_ref().expect("quotient keeps generators");
        let c: Vec<BigRational> = coords.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        if c.is_empty() {
            return vec![BigRational::zero(); self.big.dim];
        }
        g.mul_vec(&c)
    }

    /// Stores the matrix of the endomorphism induced by `alpha` on the generators.
    pub fn with_induced_endo(mut self, alpha: &RatMat) -> Result<Self> {
        let k = self.group.invariant_factors.len();
        let mut cols = Vec::with_capacity(k);
        if let Some(g) = &self.group.generators {
            for v in g.to_cols() {
                cols.push(self.coords(&alpha.mul_vec(&v))?);
            }
        }
        self.group.induced_endo = Some(IntMat::from_cols(k, &cols));
        Ok(self)
    }

    pub fn is_zero(&self, x: &[BigRational]) -> Result<bool> {
        Ok(self.coords(x)?.iter().all(Zero::is_zero))
    }
}
