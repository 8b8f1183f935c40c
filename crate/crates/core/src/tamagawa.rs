//! Tamagawa numbers of semistable principally polarised abelian varieties
//! from their monodromy lattice data, and their behaviour in field extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classification::{Kind, TypeDescriptor};
use crate::error::{Error, Result};
use crate::exact_linalg::arith::squarefree_part;
use crate::exact_linalg::rank;
use crate::group::FinAbGroup;
use crate::invariants::{betts_group, fixed_points_direct, fixed_points_formula, separation_group, FormulaCertificate};
use crate::pair::LatticePair;

/// Residue degree `f` and ramification degree `e` of an extension `L/K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionSpec {
    pub e: u64,
    pub f: u64,
}

impl ExtensionSpec {
    pub fn new(e: u64, f: u64) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::InvalidInput("e and f must be positive".into()));
        }
        Ok(ExtensionSpec { e, f })
    }

    pub fn trivial() -> Self {
        ExtensionSpec { e: 1, f: 1 }
    }

    pub fn degree(&self) -> u64 {
        self.e * self.f
    }
}

/// `(Λ, Λ^∨, Frobenius, pairing)` of a semistable principally polarised abelian variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbVarLocalData {
    pub pair: LatticePair,
    /// toric dimension
    pub d: usize,
    /// split toric dimension
    pub r: usize,
    /// order of Frobenius on the lattice
    pub n: usize,
}

impl AbVarLocalData {
    pub fn new(pair: LatticePair) -> Result<Self> {
        if !pair.is_dual() {
            return Err(Error::InvalidInput("abelian variety data needs the monodromy pairing".into()));
        }
        let d = pair.dim();
        let r = d - rank(&pair.d_matrix());
        let n = pair.order();
        Ok(AbVarLocalData { pair, d, r, n })
    }

    pub fn separation(&self) -> Result<FinAbGroup> {
        separation_group(&self.pair.lambda, &self.pair.d_matrix())
    }

    pub fn betts(&self) -> Result<FinAbGroup> {
        betts_group(&self.pair)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(crate::json::pair_from_json(s)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::json::pair_to_value(&self.pair)
    }

    /// `P = p(1)`.
    pub fn p_value(&self) -> BigInt {
        self.pair.cyclotomic().p_value
    }
}

/// `c_{A/K} = |(Λ/Λ^∨)^F|`.
pub fn tamagawa_number(data: &AbVarLocalData) -> Result<BigInt> {
    fixed_points_direct(&data.pair, &BigInt::one(), 1)
}

/// The factorization `|Λ^F/Λ^{∨F}| · P / (|𝒯||𝔅|)`.
pub fn tamagawa_certificate(data: &AbVarLocalData) -> Result<FormulaCertificate> {
    fixed_points_formula(&data.pair, &BigInt::one())
}

/// Data over `L`: `Λ^∨ ↦ eΛ^∨`, `F ↦ F^f`, pairing divided by `e`.
pub fn base_change(data: &AbVarLocalData, ext: ExtensionSpec) -> Result<AbVarLocalData> {
    let pair = data.pair.scaled(&BigInt::from(ext.e)).powered(ext.f);
    AbVarLocalData::new(pair)
}

/// `c_{A/L} = |𝔅_{A/K}[e]| · c_{A/K} · e^r` for `gcd(f, n) = 1`.
pub fn tamagawa_via_bram(data: &AbVarLocalData, ext: ExtensionSpec) -> Result<BigInt> {
    if ext.f.gcd(&(data.n as u64)) != 1 {
        return Err(Error::AssumptionViolated(format!("gcd(f, n) = gcd({}, {}) is not 1", ext.f, data.n)));
    }
    let e = BigInt::from(ext.e);
    let b = data.betts()?;
    Ok(b.torsion_order(&e) * tamagawa_number(data)? * num_traits::pow(e, data.r))
}

/// `c_{A/L}` for any `(e, f)`: unramified step of degree `gcd(f, n)`, then the formula above.
pub fn tamagawa_via_gcd_split(data: &AbVarLocalData, ext: ExtensionSpec) -> Result<BigInt> {
    let g = ext.f.gcd(&(data.n as u64));
    let mid = base_change(data, ExtensionSpec { e: 1, f: g })?;
    tamagawa_via_bram(&mid, ExtensionSpec { e: ext.e, f: ext.f / g })
}

fn ord2_ratio(n: u64, m: u64) -> i64 {
    n.trailing_zeros() as i64 - m.trailing_zeros() as i64
}

fn unramified_step(t: TypeDescriptor, q: u64) -> TypeDescriptor {
    let (n, m) = (t.n(), t.m().unwrap_or(0));
    let two = |k, a, b| TypeDescriptor::two(k, a, b);
    match (t.kind(), q) {
        (Kind::Two, 2) => TypeDescriptor::one(Kind::One, n),
        (Kind::OneTwoA, 2) | (Kind::TwoTwo, 2) => two(Kind::OneOne, n, m),
        (Kind::OneTwoB, 2) => match ord2_ratio(n, m) {
            o if o > 0 => two(Kind::OneOne, 2 * n, m / 2),
            0 => two(Kind::OneOne, n, m),
            _ => two(Kind::OneOne, n / 2, 2 * m),
        },
        (Kind::ThreeThree, 3) => two(Kind::OneOne, n, 3 * n),
        (Kind::FourFour, 2) => two(Kind::TwoTwo, n, n),
        (Kind::SixSix, 2) => TypeDescriptor::one(Kind::ThreeThree, n),
        (Kind::SixSix, 3) => two(Kind::TwoTwo, n, 3 * n),
        _ => t,
    }
}

/// The type over `L` predicted by the base-change table.
pub fn type_base_change(t: &TypeDescriptor, ext: ExtensionSpec) -> TypeDescriptor {
    let mut cur = *t;
    let mut f = ext.f;
    loop {
        let g = f.gcd(&cur.kind().order());
        if g == 1 {
            break;
        }
        let q = (2..=g).find(|q| g.is_multiple_of(*q)).expect("g > 1");
        cur = unramified_step(cur, q);
        f /= q;
    }
    cur.scaled(ext.e)
}

/// Outcome of a tower analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerResult {
    Stabilized { c: BigRational, r_inf: usize, k0: usize },
    Undetermined { values: Vec<BigInt> },
}

/// Finds the first level from which `c_{A/L_k} = C · e_k^{r_∞}` holds on the given prefix.
pub fn tower_stabilize(data: &AbVarLocalData, tower: &[ExtensionSpec]) -> Result<TowerResult> {
    for w in tower.windows(2) {
        if w[1].e % w[0].e != 0 || w[1].f % w[0].f != 0 {
            return Err(Error::InvalidInput("tower levels must be nested (e_k | e_{k+1}, f_k | f_{k+1})".into()));
        }
    }
    let mut values = Vec::with_capacity(tower.len());
    let mut ranks = Vec::with_capacity(tower.len());
    for ext in tower {
        let bc = base_change(data, *ext)?;
        values.push(tamagawa_number(&bc)?);
        ranks.push(bc.r);
    }
    let ratio = |k: usize, r: usize| BigRational::new(values[k].clone(), num_traits::pow(BigInt::from(tower[k].e), r));
    for k0 in 0..tower.len().saturating_sub(1) {
        let r = ranks[k0];
        let c = ratio(k0, r);
        if (k0..tower.len()).all(|k| ranks[k] == r && ratio(k, r) == c) {
            return Ok(TowerResult::Stabilized { c, r_inf: r, k0 });
        }
    }
    Ok(TowerResult::Undetermined { values })
}

/// Squarefree class of `c_{A/L}` from data over `K` only.
pub fn c_up_to_squares(data: &AbVarLocalData, ext: ExtensionSpec) -> Result<BigInt> {
    let c = tamagawa_number(data)?;
    let v = if ext.f.is_multiple_of(2) {
        data.pair.lambda.index(&data.pair.lambda_prime) * num_traits::pow(BigInt::from(ext.e), data.d)
    } else {
        let base = c * num_traits::pow(BigInt::from(ext.e), data.r);
        if ext.e.is_multiple_of(2) {
            base * data.betts()?.order()
        } else {
            base
        }
    };
    if v.is_zero() {
        return Err(Error::Inconsistency("zero Tamagawa number".into()));
    }
    Ok(squarefree_part(&v))
}

/// Reference values for an elliptic curve with reduction `I_n`: type `I_{en}` over `L`,
/// split iff split over `K` or `f` is even.
pub fn elliptic_reference(n: u64, split: bool, ext: ExtensionSpec) -> BigInt {
    let en = ext.e * n;
    let c = if split || ext.f.is_multiple_of(2) {
        en
    } else if en.is_multiple_of(2) {
        2
    } else {
        1
    };
    BigInt::from(c)
}

/// The rank-1 data of an `I_n` elliptic curve.
pub fn elliptic_data(n: u64, split: bool) -> AbVarLocalData {
    let kind = if split { Kind::One } else { Kind::Two };
    AbVarLocalData::new(crate::classification::make_type(&TypeDescriptor::one(kind, n))).expect("model data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::{classify, make_type};
    use crate::exact_linalg::int;

    fn data(s: &str) -> AbVarLocalData {
        AbVarLocalData::new(make_type(&s.parse().unwrap())).unwrap()
    }

    fn ext(e: u64, f: u64) -> ExtensionSpec {
        ExtensionSpec::new(e, f).unwrap()
    }

    #[test]
    fn elliptic_examples() {
        assert_eq!(tamagawa_number(&elliptic_data(5, true)).unwrap(), int(5));
        assert_eq!(tamagawa_number(&elliptic_data(4, false)).unwrap(), int(2));
        assert_eq!(tamagawa_number(&data("3.3:5")).unwrap(), int(3));
    }

    #[test]
    fn base_change_examples() {
        let d = data("6.6:2");
        assert_eq!(base_change(&d, ext(1, 1)).unwrap(), d);
        assert_eq!(classify(&base_change(&d, ext(1, 3)).unwrap().pair).unwrap().to_string(), "2.2:2,6");
        let d = data("1.2B:1,1");
        assert_eq!(classify(&base_change(&d, ext(1, 2)).unwrap().pair).unwrap().to_string(), "1.1:1,1");
    }

    #[test]
    fn bram_examples() {
        assert_eq!(tamagawa_via_bram(&elliptic_data(1, false), ext(2, 1)).unwrap(), int(2));
        assert_eq!(tamagawa_via_bram(&elliptic_data(2, false), ext(3, 1)).unwrap(), int(2));
        assert_eq!(tamagawa_via_bram(&elliptic_data(3, true), ext(4, 5)).unwrap(), int(12));
        assert!(tamagawa_via_bram(&elliptic_data(3, false), ext(1, 2)).is_err());
    }

    #[test]
    fn type_table_examples() {
        let t = |s: &str| s.parse::<TypeDescriptor>().unwrap();
        assert_eq!(type_base_change(&t("4.4:3"), ext(1, 2)), t("2.2:3,3"));
        assert_eq!(type_base_change(&t("1.2B:4,2"), ext(1, 2)), t("1.1:8,1"));
        assert_eq!(type_base_change(&t("3.3:2"), ext(1, 2)), t("3.3:2"));
        assert_eq!(type_base_change(&t("6.6:1"), ext(2, 6)), t("1.1:2,6"));
    }

    #[test]
    fn towers() {
        let tower: Vec<ExtensionSpec> = (0..4).map(|k| ext(3u64.pow(k), 1)).collect();
        let r = tower_stabilize(&elliptic_data(5, true), &tower).unwrap();
        assert_eq!(r, TowerResult::Stabilized { c: BigRational::from_integer(int(5)), r_inf: 1, k0: 0 });
        let tower: Vec<ExtensionSpec> = (0..4).map(|k| ext(2 * 3u64.pow(k), 1)).collect();
        let r = tower_stabilize(&elliptic_data(1, false), &tower).unwrap();
        assert_eq!(r, TowerResult::Stabilized { c: BigRational::from_integer(int(2)), r_inf: 0, k0: 0 });
        let r = tower_stabilize(&elliptic_data(1, false), &[ext(1, 1)]).unwrap();
        assert!(matches!(r, TowerResult::Undetermined { .. }));
        assert!(tower_stabilize(&elliptic_data(1, false), &[ext(2, 1), ext(3, 1)]).is_err());
    }

    #[test]
    fn up_to_squares_examples() {
        assert_eq!(c_up_to_squares(&data("2.2:1,1"), ext(1, 2)).unwrap(), int(1));
        assert_eq!(c_up_to_squares(&data("4.4:2"), ext(1, 2)).unwrap(), int(1));
        let d = data("1.2A:1,1");
        let direct = tamagawa_number(&base_change(&d, ext(2, 1)).unwrap()).unwrap();
        assert_eq!(c_up_to_squares(&d, ext(2, 1)).unwrap(), squarefree_part(&direct));
    }
}
