//! Reduction types of genus-2 curves `y² = f(x)` over `ℚ_p`, `p` odd, from double roots of `f̄`.

pub mod field;
pub mod padic;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::classification::{bar, make_type, Kind, TypeDescriptor};
use crate::error::{Error, Result};
use crate::exact_linalg::arith::{is_prime_u64, valuation};
use crate::exact_linalg::{det_int, IntMat};
use crate::tamagawa::{base_change, tamagawa_number, AbVarLocalData, ExtensionSpec};

pub use field::{FiniteField, FqElem, Poly};
pub use padic::{PadicRing, UnramifiedPadic};

/// A double root `α` of `f̄` with its tangents `±√g(α)`, `f̄ = (x−α)²g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRootDatum {
    pub alpha: FqElem,
    pub t_plus: FqElem,
    pub t_minus: FqElem,
    /// `2·v(α₁−α₂)` once computed
    pub val: Option<u32>,
}

/// Double roots of `f̄` in a common field `𝔽_{p^L}` holding all roots and tangents.
#[derive(Clone, Debug)]
pub struct ReductionData {
    pub p: u64,
    pub coeffs: Vec<BigInt>,
    pub field: FiniteField,
    pub double_roots: Vec<DoubleRootDatum>,
    pub simple_roots: usize,
}

fn trimmed(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut f = coeffs.to_vec();
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn reduce_mod_p(fp: &FiniteField, coeffs: &[BigInt]) -> Poly {
    let p = BigInt::from(fp.p());
    let small: Vec<i64> = coeffs.iter().map(|c| c.mod_floor(&p).to_i64().expect("residue fits")).collect();
    fp.poly(&small)
}

/// `Res(f, f')`, equal to `disc f` up to sign and the leading coefficient.
fn resultant_with_derivative(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let size = 2 * n - 1;
    let mut s = IntMat::zeros(size, size);
    for r in 0..n - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            s[(r, r + j)] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            s[(n - 1 + r, r + j)] = c.clone();
        }
    }
    det_int(&s)
}

/// `v_p(disc f)` for `f` with unit leading coefficient; errors if `f` has a repeated root.
pub fn disc_valuation(p: u64, coeffs: &[BigInt]) -> Result<u32> {
    let f = trimmed(coeffs);
    let res = resultant_with_derivative(&f);
    if res.is_zero() {
        return Err(Error::AssumptionViolated("f has a repeated root over Q".into()));
    }
    Ok(valuation(&res.abs(), &BigInt::from(p)))
}

fn check_input(p: u64, coeffs: &[BigInt]) -> Result<Vec<BigInt>> {
    if p == 2 {
        return Err(Error::Unsupported("p = 2 is not supported".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let f = trimmed(coeffs);
    if f.len() != 6 && f.len() != 7 {
        return Err(Error::InvalidInput(format!("f must have degree 5 or 6, got {}", f.len() as i64 - 1)));
    }
    if f.last().unwrap().is_multiple_of(&BigInt::from(p)) {
        return Err(Error::AssumptionViolated("leading coefficient of f is not a unit".into()));
    }
    disc_valuation(p, &f)?;
    Ok(f)
}

/// Double roots of `f̄` with tangents, and the number of simple roots.
pub fn analyze_reduction(p: u64, coeffs: &[BigInt]) -> Result<ReductionData> {
    let f = check_input(p, coeffs)?;
    let fp = FiniteField::prime(p);
    let fbar = reduce_mod_p(&fp, &f);
    let h = fp.poly_gcd(&fbar, &fp.poly_deriv(&fbar));
    let dh = fp.poly_deriv(&h);
    if h.len() > 1 && (dh.is_empty() || fp.poly_gcd(&h, &dh).len() > 1) {
        return Err(Error::AssumptionViolated("f̄ has a triple root".into()));
    }
    let k = h.len() - 1;
    let m = fp.factor_degrees(&h).into_iter().fold(1, |acc, d| acc.lcm(&d));
    let field = FiniteField::new(p, 2 * m)?;
    let roots = if k == 0 { Vec::new() } else { field.split_roots(&field.poly_embed(&h))? };
    let fbig = field.poly_embed(&fbar);
    let second = field.poly_deriv(&field.poly_deriv(&fbig));
    let half = field.inv(&field.from_u64(2))?;
    let mut double_roots = Vec::with_capacity(k);
    for alpha in roots {
        let g_alpha = field.mul(&field.poly_eval(&second, &alpha), &half);
        if g_alpha.is_zero() {
            return Err(Error::AssumptionViolated("f̄ has a triple root".into()));
        }
        let t_plus = field
            .sqrt(&g_alpha)
            .ok_or_else(|| Error::Inconsistency("g(α) is not a square in the working field".into()))?;
        let t_minus = field.neg(&t_plus);
        double_roots.push(DoubleRootDatum { alpha, t_plus, t_minus, val: None });
    }
    Ok(ReductionData { p, simple_roots: fbar.len() - 1 - 2 * k, coeffs: f, field, double_roots })
}

/// `a = v_p(disc q)` for the monic quadratic factor `q` of `f` lifting `(x−α)²`.
pub fn root_valuation(p: u64, coeffs: &[BigInt], alpha: &FqElem) -> Result<u32> {
    let f = check_input(p, coeffs)?;
    if alpha.p() != p {
        return Err(Error::InvalidInput("root lives over a different prime".into()));
    }
    let field = FiniteField::new(p, alpha.k())?;
    root_valuation_in(&field, &f, alpha)
}

fn root_valuation_in(field: &FiniteField, f: &[BigInt], alpha: &FqElem) -> Result<u32> {
    let p = field.p();
    let precision = disc_valuation(p, f)? + 2;
    let fbar = field.poly_embed(&reduce_mod_p(&FiniteField::prime(p), f));
    let lin = vec![field.neg(alpha), field.one()];
    let q_bar = field.poly_mul(&lin, &lin);
    let (h_bar, r) = field.poly_divrem(&fbar, &q_bar);
    if !r.is_empty() {
        return Err(Error::InvalidInput("α is not a double root of f̄".into()));
    }
    let ring = PadicRing::new(field, precision)?;
    let (q, _) = ring.hensel_lift(&ring.poly_from_ints(f), &q_bar, &h_bar, field)?;
    let zero = ring.zero();
    let (q0, q1) = (q.first().unwrap_or(&zero), q.get(1).unwrap_or(&zero));
    let disc = ring.sub(&ring.mul(q1, q1), &ring.mul(&ring.from_int(&BigInt::from(4)), q0));
    disc.valuation().ok_or_else(|| {
        Error::Inconsistency("discriminant of the quadratic factor vanishes to working precision".into())
    })
}

/// Rows of the double-root table, named by Frobenius orbits on the pairs `(root, tangent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableRow {
    /// no double roots
    Good,
    /// `{A+} {A-}`
    OneSplit,
    /// `{A+,A-}`
    OneNonSplit,
    /// `{A+} {A-} {B+} {B-}`
    TwoSplit,
    /// `{A+,A-} {B+} {B-}`
    TwoMixed,
    /// `{A+,A-} {B+,B-}`
    TwoNonSplit,
    /// `{A+,B+} {A-,B-}`
    TwoSwapped,
    /// `{A+,B-,A-,B+}`
    TwoFourCycle,
    /// all six pairs fixed
    ThreeSplit,
    /// `{A+,A-} {B+,B-} {C+,C-}`
    ThreeNonSplit,
    /// `{A+,B+} {A-,B-} {C+} {C-}`
    ThreeSwappedSplit,
    /// `{A+,B+} {A-,B-} {C+,C-}`
    ThreeSwappedNonSplit,
    /// `{A+,B+,C+} {A-,B-,C-}`
    ThreeCycle,
    /// one orbit of length 6
    SixCycle,
}

impl TableRow {
    pub fn frobenius_order(self) -> u32 {
        use TableRow::*;
        match self {
            Good => 1,
            OneSplit | TwoSplit | ThreeSplit => 1,
            OneNonSplit | TwoMixed | TwoNonSplit | TwoSwapped | ThreeNonSplit | ThreeSwappedSplit
            | ThreeSwappedNonSplit => 2,
            ThreeCycle => 3,
            TwoFourCycle => 4,
            SixCycle => 6,
        }
    }

    pub fn double_roots(self) -> usize {
        use TableRow::*;
        match self {
            Good => 0,
            OneSplit | OneNonSplit => 1,
            TwoSplit | TwoMixed | TwoNonSplit | TwoSwapped | TwoFourCycle => 2,
            _ => 3,
        }
    }
}

/// Sign of a tangent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn flip(self, yes: bool) -> Sign {
        match (self, yes) {
            (s, false) => s,
            (Sign::Plus, true) => Sign::Minus,
            (Sign::Minus, true) => Sign::Plus,
        }
    }
}

/// Frobenius orbits on pairs, with roots relabelled `A, B, C` to match the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPattern {
    pub row: TableRow,
    /// index into the double-root list for each of `A, B, C`
    pub labels: Vec<usize>,
    /// orbits as lists of `(label, sign)`
    pub orbits: Vec<Vec<(usize, Sign)>>,
}

impl fmt::Display for OrbitPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbits.is_empty() {
            return write!(f, "-");
        }
        let names = ["A", "B", "C"];
        let orbits: Vec<String> = self
            .orbits
            .iter()
            .map(|o| {
                let items: Vec<String> = o
                    .iter()
                    .map(|&(l, s)| format!("{}{}", names[l], if s == Sign::Plus { "+" } else { "-" }))
                    .collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", orbits.join(" "))
    }
}

/// Frobenius orbits of `(α, t) ↦ (α^p, t^p)` on the pairs.
pub fn frobenius_orbits(field: &FiniteField, data: &[DoubleRootDatum]) -> Result<OrbitPattern> {
    let k = data.len();
    if k > 3 {
        return Err(Error::InvalidInput("at most three double roots".into()));
    }
    let sigma = |i: usize, s: Sign| -> Result<(usize, Sign)> {
        let d = &data[i];
        let a = field.frobenius(&d.alpha);
        let t = field.frobenius(if s == Sign::Plus { &d.t_plus } else { &d.t_minus });
        let j = data
            .iter()
            .position(|e| e.alpha == a)
            .ok_or_else(|| Error::Inconsistency("Frobenius does not permute the double roots".into()))?;
        if data[j].t_plus == t {
            Ok((j, Sign::Plus))
        } else if data[j].t_minus == t {
            Ok((j, Sign::Minus))
        } else {
            Err(Error::Inconsistency("Frobenius does not permute the tangents".into()))
        }
    };
    let perm: Vec<(usize, Sign)> = (0..k).map(|i| sigma(i, Sign::Plus)).collect::<Result<_>>()?;
    let split = |i: usize| perm[i] == (i, Sign::Plus);
    let outside = || Error::Inconsistency("Frobenius action on pairs is not a row of the table".into());
    // (labels, sign flips per label, row)
    let (labels, flips, row): (Vec<usize>, Vec<bool>, TableRow) = match k {
        0 => (vec![], vec![], TableRow::Good),
        1 => (vec![0], vec![false], if split(0) { TableRow::OneSplit } else { TableRow::OneNonSplit }),
        2 if perm[0].0 == 0 => match (split(0), split(1)) {
            (true, true) => (vec![0, 1], vec![false; 2], TableRow::TwoSplit),
            (false, false) => (vec![0, 1], vec![false; 2], TableRow::TwoNonSplit),
            (true, false) => (vec![1, 0], vec![false; 2], TableRow::TwoMixed),
            (false, true) => (vec![0, 1], vec![false; 2], TableRow::TwoMixed),
        },
        2 => {
            let s = perm[0].1;
            let back = sigma(1, s)?;
            if back == (0, Sign::Plus) {
                (vec![0, 1], vec![false, s == Sign::Minus], TableRow::TwoSwapped)
            } else {
                (vec![0, 1], vec![false, s == Sign::Plus], TableRow::TwoFourCycle)
            }
        }
        _ => {
            let fixed: Vec<usize> = (0..3).filter(|&i| perm[i].0 == i).collect();
            match fixed.len() {
                3 => match (0..3).filter(|&i| split(i)).count() {
                    3 => (vec![0, 1, 2], vec![false; 3], TableRow::ThreeSplit),
                    0 => (vec![0, 1, 2], vec![false; 3], TableRow::ThreeNonSplit),
                    _ => return Err(outside()),
                },
                1 => {
                    let c = fixed[0];
                    let a = (0..3).find(|&i| i != c).unwrap();
                    let b = perm[a].0;
                    let s = perm[a].1;
                    if sigma(b, s)? != (a, Sign::Plus) {
                        return Err(outside());
                    }
                    let row = if split(c) { TableRow::ThreeSwappedSplit } else { TableRow::ThreeSwappedNonSplit };
                    (vec![a, b, c], vec![false, s == Sign::Minus, false], row)
                }
                0 => {
                    let (b, sb) = perm[0];
                    let (c, sc) = sigma(b, Sign::Plus)?;
                    let (back, sa) = sigma(c, Sign::Plus)?;
                    debug_assert_eq!(back, 0);
                    let row = if sa == Sign::Plus { TableRow::ThreeCycle } else { TableRow::SixCycle };
                    (vec![0, b, c], vec![false, sb == Sign::Minus, sc == Sign::Minus], row)
                }
                _ => return Err(outside()),
            }
        }
    };
    let label_of = |i: usize, s: Sign| -> (usize, Sign) {
        let l = labels.iter().position(|&x| x == i).expect("labelled root");
        (l, s.flip(flips[l]))
    };
    let unlabel = |l: usize, s: Sign| -> (usize, Sign) { (labels[l], s.flip(flips[l])) };
    let mut seen = Vec::new();
    let mut orbits = Vec::new();
    for l in 0..k {
        for s in [Sign::Plus, Sign::Minus] {
            if seen.contains(&(l, s)) {
                continue;
            }
            let mut orbit = vec![(l, s)];
            seen.push((l, s));
            let mut cur = unlabel(l, s);
            loop {
                let next = sigma(cur.0, cur.1)?;
                let nl = label_of(next.0, next.1);
                if nl == (l, s) {
                    break;
                }
                orbit.push(nl);
                seen.push(nl);
                cur = next;
            }
            orbits.push(orbit);
        }
    }
    Ok(OrbitPattern { row, labels, orbits })
}

/// Reduction data read off from the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveType {
    /// `None` for good reduction (toric dimension 0)
    pub descriptor: Option<TypeDescriptor>,
    pub toric_dim: usize,
    pub tamagawa: BigInt,
    pub pattern: OrbitPattern,
    /// `a, b, c` for the labelled roots `A, B, C`
    pub valuations: Vec<u32>,
}

impl CurveType {
    /// Valuations with Frobenius-conjugate roots listed once.
    pub fn orbit_valuations(&self) -> Vec<u32> {
        use TableRow::*;
        let v = &self.valuations;
        match self.pattern.row {
            TwoSwapped | TwoFourCycle => vec![v[0]],
            ThreeSwappedSplit | ThreeSwappedNonSplit => vec![v[0], v[2]],
            ThreeCycle | SixCycle => vec![v[0]],
            _ => v.clone(),
        }
    }
}

fn table_entry(row: TableRow, v: &[u64]) -> Result<(Option<TypeDescriptor>, u64)> {
    use TableRow::*;
    let one = |k, n| Some(TypeDescriptor::one(k, n));
    let two = |k, n, m| Some(TypeDescriptor::two(k, n, m));
    let conj = |xs: &[u64]| {
        if xs.windows(2).all(|w| w[0] == w[1]) {
            Ok(())
        } else {
            Err(Error::Inconsistency("Frobenius-conjugate double roots have different valuations".into()))
        }
    };
    Ok(match row {
        Good => (None, 1),
        OneSplit => (one(Kind::One, v[0]), v[0]),
        OneNonSplit => (one(Kind::Two, v[0]), bar(v[0])),
        TwoSplit => (two(Kind::OneOne, v[0], v[1]), v[0] * v[1]),
        // A is the root whose tangents are swapped, so it sits on the −1 eigenline
        TwoMixed => (two(Kind::OneTwoA, v[1], v[0]), v[1] * bar(v[0])),
        TwoNonSplit => (two(Kind::TwoTwo, v[0], v[1]), bar(v[0]) * bar(v[1])),
        TwoSwapped => {
            conj(&v[..2])?;
            (two(Kind::OneTwoB, v[0], v[0]), v[0])
        }
        TwoFourCycle => {
            conj(&v[..2])?;
            (one(Kind::FourFour, v[0]), bar(v[0]))
        }
        ThreeSplit | ThreeNonSplit => {
            let d = v[0].gcd(&v[1]).gcd(&v[2]);
            let n = v[0] * v[1] + v[1] * v[2] + v[0] * v[2];
            if row == ThreeSplit {
                (two(Kind::OneOne, d, n / d), n)
            } else {
                (two(Kind::TwoTwo, d, n / d), bar(d) * bar(n / d))
            }
        }
        ThreeSwappedSplit => {
            conj(&v[..2])?;
            (two(Kind::OneTwoB, v[0] + 2 * v[2], v[0]), v[0] + 2 * v[2])
        }
        ThreeSwappedNonSplit => {
            conj(&v[..2])?;
            (two(Kind::OneTwoB, v[0], v[0] + 2 * v[2]), v[0])
        }
        ThreeCycle => {
            conj(v)?;
            (one(Kind::ThreeThree, v[0]), 3)
        }
        SixCycle => {
            conj(v)?;
            (one(Kind::SixSix, v[0]), 1)
        }
    })
}

/// Full analysis: double roots, orbits, valuations, lattice type and Tamagawa number over `ℚ_p`.
pub fn lattice_type_from_curve(p: u64, coeffs: &[BigInt]) -> Result<CurveType> {
    let mut data = analyze_reduction(p, coeffs)?;
    for d in data.double_roots.iter_mut() {
        d.val = Some(root_valuation_in(&data.field, &data.coeffs, &d.alpha)?);
    }
    let pattern = frobenius_orbits(&data.field, &data.double_roots)?;
    let valuations: Vec<u32> = pattern.labels.iter().map(|&i| data.double_roots[i].val.expect("computed")).collect();
    let v: Vec<u64> = valuations.iter().map(|&x| x as u64).collect();
    let (descriptor, c) = table_entry(pattern.row, &v)?;
    Ok(CurveType {
        toric_dim: descriptor.map_or(0, |t| t.rank()),
        descriptor,
        tamagawa: BigInt::from(c),
        pattern,
        valuations,
    })
}

/// Lattice data of the Jacobian, or `None` for good reduction.
pub fn jacobian_data(curve: &CurveType) -> Result<Option<AbVarLocalData>> {
    curve.descriptor.as_ref().map(|t| AbVarLocalData::new(make_type(t))).transpose()
}

/// `c_{J/L}` for an extension `L/ℚ_p` with the given `e, f`.
pub fn curve_tamagawa_over_extension(p: u64, coeffs: &[BigInt], ext: ExtensionSpec) -> Result<BigInt> {
    let curve = lattice_type_from_curve(p, coeffs)?;
    match jacobian_data(&curve)? {
        None => Ok(BigInt::from(1)),
        Some(data) => tamagawa_number(&base_change(&data, ext)?),
    }
}
