//! Rank-1 and rank-2 lattice-pair types, their model pairs, and cyclotomic lattices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_linalg::arith::{euler_phi, exact_sqrt, prime_power};
use crate::exact_linalg::{inverse, rat, snf, IntMat, IntPoly, RatMat};
use crate::group::FinAbGroup;
use crate::invariants::{kernel_subspace, separation_group};
use crate::pair::{Lattice, LatticePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// `1:n`
    One,
    /// `2:n`
    Two,
    /// `1·1:n,m`
    OneOne,
    /// `1·2A:n,m`
    OneTwoA,
    /// `1·2B:n,m`
    OneTwoB,
    /// `2·2:n,m`
    TwoTwo,
    /// `3·3:n`
    ThreeThree,
    /// `4·4:n`
    FourFour,
    /// `6·6:n`
    SixSix,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::One,
        Kind::Two,
        Kind::OneOne,
        Kind::OneTwoA,
        Kind::OneTwoB,
        Kind::TwoTwo,
        Kind::ThreeThree,
        Kind::FourFour,
        Kind::SixSix,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Kind::One => "1",
            Kind::Two => "2",
            Kind::OneOne => "1.1",
            Kind::OneTwoA => "1.2A",
            Kind::OneTwoB => "1.2B",
            Kind::TwoTwo => "2.2",
            Kind::ThreeThree => "3.3",
            Kind::FourFour => "4.4",
            Kind::SixSix => "6.6",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Kind::One | Kind::Two => 1,
            _ => 2,
        }
    }

    pub fn has_two_params(self) -> bool {
        matches!(self, Kind::OneOne | Kind::OneTwoA | Kind::OneTwoB | Kind::TwoTwo)
    }

    /// Order of the automorphism in the model.
    pub fn order(self) -> u64 {
        match self {
            Kind::One | Kind::OneOne => 1,
            Kind::Two | Kind::OneTwoA | Kind::OneTwoB | Kind::TwoTwo => 2,
            Kind::ThreeThree => 3,
            Kind::FourFour => 4,
            Kind::SixSix => 6,
        }
    }
}

/// A classification type such as `1.2B:5,1` or `4.4:2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeDescriptor {
    kind: Kind,
    n: u64,
    m: u64,
}

impl TypeDescriptor {
    /// Builds a descriptor; `1·1` and `2·2` parameters are replaced by `(gcd, lcm)`.
    pub fn new(kind: Kind, n: u64, m: Option<u64>) -> Result<Self> {
        if n == 0 || m == Some(0) {
            return Err(Error::InvalidInput("type parameters must be positive".into()));
        }
        let m = match (kind.has_two_params(), m) {
            (true, Some(m)) => m,
            (false, None) => 0,
            (true, None) => return Err(Error::InvalidInput(format!("type {} needs two parameters", kind.label()))),
            (false, Some(_)) => return Err(Error::InvalidInput(format!("type {} takes one parameter", kind.label()))),
        };
        if kind == Kind::OneTwoB && n % 2 != m % 2 {
            return Err(Error::InvalidInput(format!("1.2B:{n},{m} needs n ≡ m mod 2")));
        }
        let (n, m) = match kind {
            Kind::OneOne | Kind::TwoTwo => (n.gcd(&m), n.lcm(&m)),
            _ => (n, m),
        };
        Ok(TypeDescriptor { kind, n, m })
    }

    pub fn one(kind: Kind, n: u64) -> Self {
        Self::new(kind, n, None).expect("valid one-parameter type")
    }

    pub fn two(kind: Kind, n: u64, m: u64) -> Self {
        Self::new(kind, n, Some(m)).expect("valid two-parameter type")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> Option<u64> {
        self.kind.has_two_params().then_some(self.m)
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    /// Multiplies all parameters by `e`.
    pub fn scaled(&self, e: u64) -> Self {
        Self::new(self.kind, self.n * e, self.m().map(|m| m * e)).expect("scaling keeps validity")
    }

    /// Every descriptor of the given kind with parameters in `1..=bound`.
    pub fn enumerate(kind: Kind, bound: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=bound {
            if kind.has_two_params() {
                for m in 1..=bound {
                    if let Ok(t) = Self::new(kind, n, Some(m)) {
                        if !out.contains(&t) {
                            out.push(t);
                        }
                    }
                }
            } else {
                out.push(Self::one(kind, n));
            }
        }
        out
    }
}

impl fmt::Display for TypeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m() {
            Some(m) => write!(f, "{}:{},{}", self.kind.label(), self.n, m),
            None => write!(f, "{}:{}", self.kind.label(), self.n),
        }
    }
}

impl FromStr for TypeDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed type descriptor {s:?}"));
        let (label, params) = s.split_once(':').ok_or_else(bad)?;
        let kind = Kind::ALL.into_iter().find(|k| k.label() == label).ok_or_else(bad)?;
        let nums: Vec<u64> = params.split(',').map(|p| p.parse::<u64>().map_err(|_| bad())).collect::<Result<_>>()?;
        match nums.as_slice() {
            [n] => Self::new(kind, *n, None),
            [n, m] => Self::new(kind, *n, Some(*m)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for TypeDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn ri(x: i64) -> BigRational {
    rat(x, 1)
}

fn lat(rows: Vec<Vec<BigRational>>) -> Lattice {
    Lattice::new(RatMat::from_rows(&rows)).expect("model basis is nonsingular")
}

/// The model pair of a table row, with a pairing realizing `Λ′ = Λ^∨`.
pub fn make_type(t: &TypeDescriptor) -> LatticePair {
    let n = t.n as i64;
    let m = t.m as i64;
    let (lambda, lambda_prime, f, gram) = match t.kind {
        Kind::One | Kind::Two => {
            let sign = if t.kind == Kind::One { 1 } else { -1 };
            (lat(vec![vec![ri(1)]]), lat(vec![vec![ri(n)]]), RatMat::from_i64(&[&[sign]]), RatMat::diag(&[rat(1, n)]))
        }
        Kind::OneOne | Kind::OneTwoA | Kind::TwoTwo => {
            let f = match t.kind {
                Kind::OneOne => RatMat::identity(2),
                Kind::OneTwoA => RatMat::from_i64(&[&[1, 0], &[0, -1]]),
                _ => RatMat::from_i64(&[&[-1, 0], &[0, -1]]),
            };
            (
                Lattice::standard(2),
                lat(vec![vec![ri(n), ri(0)], vec![ri(0), ri(m)]]),
                f,
                RatMat::diag(&[rat(1, n), rat(1, m)]),
            )
        }
        Kind::OneTwoB => (
            lat(vec![vec![rat(1, 2), ri(0)], vec![rat(1, 2), ri(1)]]),
            lat(vec![vec![rat(n, 2), ri(0)], vec![rat(m, 2), ri(m)]]),
            RatMat::from_i64(&[&[1, 0], &[0, -1]]),
            RatMat::diag(&[rat(2, n), rat(2, m)]),
        ),
        Kind::ThreeThree | Kind::SixSix => {
            let f = if t.kind == Kind::ThreeThree {
                RatMat::from_i64(&[&[0, -1], &[1, -1]])
            } else {
                RatMat::from_i64(&[&[1, -1], &[1, 0]])
            };
            let g = RatMat::from_rows(&[vec![rat(2, 3 * n), rat(-1, 3 * n)], vec![rat(-1, 3 * n), rat(2, 3 * n)]]);
            (Lattice::standard(2), lat(vec![vec![ri(-n), ri(-n)], vec![ri(n), ri(-2 * n)]]), f, g)
        }
        Kind::FourFour => (
            Lattice::standard(2),
            lat(vec![vec![ri(n), ri(0)], vec![ri(0), ri(n)]]),
            RatMat::from_i64(&[&[0, -1], &[1, 0]]),
            RatMat::diag(&[rat(1, n), rat(1, n)]),
        ),
    };
    LatticePair::new(lambda, lambda_prime, f, Some(gram)).expect("model pairs are valid")
}

/// Entries of the classification table for a type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInvariants {
    pub separation: FinAbGroup,
    pub betts: FinAbGroup,
    pub c: BigInt,
}

/// `x̄`: 1 for odd `x`, 2 for even `x`.
pub fn bar(x: u64) -> u64 {
    if x.is_multiple_of(2) {
        2
    } else {
        1
    }
}

pub fn type_invariants(t: &TypeDescriptor) -> TypeInvariants {
    let c2 = || FinAbGroup::from_u64(&[2]);
    let triv = FinAbGroup::trivial;
    let (n, m) = (t.n, t.m);
    let (separation, betts, c) = match t.kind {
        Kind::One => (triv(), triv(), n),
        Kind::Two => (triv(), if n % 2 == 1 { c2() } else { triv() }, bar(n)),
        Kind::OneOne => (triv(), triv(), n * m),
        Kind::OneTwoA => (triv(), if m % 2 == 1 { c2() } else { triv() }, n * bar(m)),
        Kind::OneTwoB => (c2(), triv(), n),
        Kind::TwoTwo => {
            let odd = (n % 2) + (m % 2);
            let b = match odd {
                2 => FinAbGroup::from_u64(&[2, 2]),
                1 => c2(),
                _ => triv(),
            };
            (triv(), b, bar(n) * bar(m))
        }
        Kind::ThreeThree => (triv(), triv(), 3),
        Kind::FourFour => (triv(), if n % 2 == 1 { c2() } else { triv() }, bar(n)),
        Kind::SixSix => (triv(), triv(), 1),
    };
    TypeInvariants { separation, betts, c: BigInt::from(c) }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Unsupported(format!("parameter {x} does not fit in 64 bits")))
}

/// Elementary divisors of `Λ′` in `Λ` (both full rank).
fn relative_snf(pair: &LatticePair) -> Vec<BigInt> {
    let inv = inverse(pair.lambda.basis()).expect("nonsingular");
    let c = (&inv * pair.lambda_prime.basis()).to_int().expect("Λ′ ⊆ Λ");
    snf(&c).d
}

fn eigen_index(pair: &LatticePair, eigen: i64) -> Result<u64> {
    let shift = &pair.frobenius - &RatMat::identity(pair.dim()).scale(&ri(eigen));
    let line = kernel_subspace(&shift);
    let a = pair.lambda.module().intersect(&line)?;
    let b = pair.lambda_prime.module().intersect(&line)?;
    to_u64(&a.finite_quotient(&b)?.order())
}

/// Recognizes the type of a pair of rank at most 2.
pub fn classify(pair: &LatticePair) -> Result<TypeDescriptor> {
    let dim = pair.dim();
    if dim == 0 || dim > 2 {
        return Err(Error::Unsupported(format!("classification needs rank 1 or 2, got {dim}")));
    }
    let cyc = pair.cyclotomic();
    let mult: Vec<(usize, usize)> = cyc.multiplicities.iter().map(|(&k, &v)| (k, v)).collect();
    let index = pair.lambda.index(&pair.lambda_prime);
    let mismatch =
        || Error::Inconsistency(format!("pair does not match any table row (automorphism {:?})", pair.frobenius));
    let d = pair.d_matrix();
    match mult.as_slice() {
        [(1, 1)] => Ok(TypeDescriptor::one(Kind::One, to_u64(&index)?)),
        [(2, 1)] => Ok(TypeDescriptor::one(Kind::Two, to_u64(&index)?)),
        [(1, 2)] | [(2, 2)] => {
            let e = relative_snf(pair);
            let kind = if mult[0].0 == 1 { Kind::OneOne } else { Kind::TwoTwo };
            TypeDescriptor::new(kind, to_u64(&e[0])?, Some(to_u64(&e[1])?))
        }
        [(1, 1), (2, 1)] => {
            let n = eigen_index(pair, 1)?;
            let m = eigen_index(pair, -1)?;
            let t = separation_group(&pair.lambda, &d)?;
            match to_u64(&t.order())? {
                1 => TypeDescriptor::new(Kind::OneTwoA, n, Some(m)),
                2 => TypeDescriptor::new(Kind::OneTwoB, n, Some(m)),
                _ => Err(mismatch()),
            }
        }
        [(3, 1)] | [(6, 1)] => {
            let k = exact_sqrt(&(&index / 3)).filter(|_| (&index % 3u32).is_zero()).ok_or_else(mismatch)?;
            let pi = if mult[0].0 == 3 { d.clone() } else { &pair.frobenius + &RatMat::identity(2) };
            let target = pair.lambda.transformed(&pi.scale(&BigRational::from_integer(k.clone())));
            if !target.same_lattice(&pair.lambda_prime) {
                return Err(mismatch());
            }
            let kind = if mult[0].0 == 3 { Kind::ThreeThree } else { Kind::SixSix };
            Ok(TypeDescriptor::one(kind, to_u64(&k)?))
        }
        [(4, 1)] => {
            let k = exact_sqrt(&index).ok_or_else(mismatch)?;
            if !pair.lambda.scaled(&k).same_lattice(&pair.lambda_prime) {
                return Err(mismatch());
            }
            Ok(TypeDescriptor::one(Kind::FourFour, to_u64(&k)?))
        }
        _ => Err(mismatch()),
    }
}

/// Multiplication-by-`x` matrix on `ℚ(ζ_n)` in the power basis, `x` given by coefficients in `ζ`.
fn mult_matrix(n: usize, x: &[BigRational]) -> RatMat {
    let phi = euler_phi(n);
    let f = companion(n);
    let mut acc = RatMat::zeros(phi, phi);
    let mut power = RatMat::identity(phi);
    for c in x {
        acc = &acc + &power.scale(c);
        power = &power * &f;
    }
    acc
}

/// Companion matrix of `Φ_n` (multiplication by `ζ_n`).
pub fn companion(n: usize) -> RatMat {
    let phi_poly = IntPoly::cyclotomic(n);
    let k = phi_poly.degree().expect("nonzero");
    let mut m = RatMat::zeros(k, k);
    for i in 1..k {
        m[(i, i - 1)] = BigRational::one();
    }
    for i in 0..k {
        m[(i, k - 1)] = BigRational::from_integer(-phi_poly.coeffs()[i].clone());
    }
    m
}

/// An element of the real subfield `c₀ + Σ c_j (ζ^j + ζ^{-j})`, as coefficients in `ζ` (length `n`).
pub fn real_element(n: usize, c: &[i64]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    out[0] = ri(c[0]);
    for (j, &cj) in c.iter().enumerate().skip(1) {
        out[j % n] += ri(cj);
        out[(n - j) % n] += ri(cj);
    }
    out
}

/// The lattice `ℤ[ζ_n]` with `F = ·ζ_n` and pairing `Tr(ω⁻¹ x ȳ)`.
pub fn cyclotomic_pair(n: usize, omega: &[BigRational]) -> Result<LatticePair> {
    if n < 3 {
        return Err(Error::InvalidInput("cyclotomic lattices need n ≥ 3".into()));
    }
    let phi = euler_phi(n);
    let w = mult_matrix(n, omega);
    let mut conj = vec![BigRational::zero(); n];
    for (j, c) in omega.iter().enumerate() {
        conj[(n - j % n) % n] += c;
    }
    if w != mult_matrix(n, &conj) {
        return Err(Error::InvalidInput("ω is not in the real subfield".into()));
    }
    let w_inv = inverse(&w).ok_or_else(|| Error::InvalidInput("ω must be nonzero".into()))?;
    let f = companion(n);
    let f_inv = inverse(&f).expect("ζ is a unit");
    let mut gram = RatMat::zeros(phi, phi);
    for i in 0..phi {
        for j in 0..phi {
            let m = &(&w_inv * &f.pow(i as u64)) * &f_inv.pow(j as u64);
            gram[(i, j)] = m.trace();
        }
    }
    let lambda = Lattice::standard(phi);
    let dual = lambda.dual(&gram)?;
    if !lambda.contains(&dual) {
        return Err(Error::NotContained("Λ^∨ is not contained in Λ for this ω".into()));
    }
    LatticePair::new(lambda, dual, f, Some(gram))
}

/// All `ω = c₀ + Σ_{j=1}^{φ/2-1} c_j(ζ^j+ζ^{-j})` with `|c_j| ≤ bound` giving `Λ^∨ ⊆ Λ`.
pub fn scan_omegas(n: usize, bound: i64) -> Vec<(Vec<i64>, LatticePair)> {
    let phi = euler_phi(n);
    let len = (phi / 2).max(1);
    let mut out = Vec::new();
    let mut c = vec![-bound; len];
    loop {
        if c.iter().any(|&x| x != 0) {
            if let Ok(p) = cyclotomic_pair(n, &real_element(n, &c)) {
                out.push((c.clone(), p));
            }
        }
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = -bound;
            i += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: &BigInt) -> Parity {
        if x.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `|(Λ/eΛ^∨)^F|` for a faithful irreducible `C_n`-lattice, given the parity of `[Λ : eΛ^∨]`.
pub fn c_n_closed_form(n: u64, index_parity: Parity) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidInput("n must exceed 1".into()));
    }
    let c = match prime_power(n as usize) {
        Some((2, _)) if index_parity == Parity::Even => 2,
        Some((q, _)) if q != 2 => q as u64,
        _ => 1,
    };
    Ok(BigInt::from(c))
}

/// Block permutation lattice `⊕ ℤ[C_{m_i}]` inside an optional `F`-stable overlattice.
pub fn permutation_pair(orbit_sizes: &[usize], overlattice: Option<&Lattice>) -> Result<LatticePair> {
    if orbit_sizes.is_empty() || orbit_sizes.contains(&0) {
        return Err(Error::InvalidInput("orbit sizes must be positive".into()));
    }
    let d: usize = orbit_sizes.iter().sum();
    let mut f = IntMat::zeros(d, d);
    let mut start = 0;
    for &m in orbit_sizes {
        for i in 0..m {
            f[(start + (i + 1) % m, start + i)] = BigInt::one();
        }
        start += m;
    }
    let perm = Lattice::standard(d);
    let lambda = overlattice.cloned().unwrap_or_else(|| perm.clone());
    if !lambda.contains(&perm) {
        return Err(Error::NotContained("overlattice does not contain the permutation lattice".into()));
    }
    LatticePair::new(lambda, perm, f.to_rat(), None)
}
