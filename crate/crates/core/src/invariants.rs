//! Separation groups, the 𝔅 group, fixed-point counts and the pairing on 𝔅.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::arith::squarefree_part;
use crate::exact_linalg::{char_poly, column_space, rank, rational_kernel, solve_vec, strip_unit_root, RatMat};
use crate::group::FinAbGroup;
use crate::mixed_module::MixedModule;
use crate::pair::{Lattice, LatticePair};

fn check_d(d: &RatMat, dim: usize) -> Result<()> {
    if d.rows() != dim || d.cols() != dim {
        return Err(Error::DimensionMismatch("endomorphism has wrong size".into()));
    }
    if rank(d) != rank(&(d * d)) {
        return Err(Error::AssumptionViolated("V[D] differs from V[D²]".into()));
    }
    Ok(())
}

/// `DV` as a subspace module.
pub fn image_subspace(d: &RatMat) -> MixedModule {
    MixedModule::subspace(&column_space(d))
}

/// `V[D]` as a subspace module.
pub fn kernel_subspace(d: &RatMat) -> MixedModule {
    MixedModule::subspace(&rational_kernel(d))
}

/// `𝒯_D(Λ) = Λ / ((Λ ∩ DV) + (Λ ∩ V[D]))`.
pub fn separation_group(lambda: &Lattice, d: &RatMat) -> Result<FinAbGroup> {
    check_d(d, lambda.dim())?;
    if !lambda.is_stable(d) {
        return Err(Error::InvalidInput("D does not preserve Λ".into()));
    }
    let l = lambda.module();
    let a = l.intersect(&image_subspace(d))?;
    let b = l.intersect(&kernel_subspace(d))?;
    let q = l.finite_quotient(&a.sum(&b)?)?;
    Ok(q.with_induced_endo(d)?.into_group())
}

/// `𝔅_{Λ,Λ′} = (Λ + D⁻¹Λ′) / (Λ + V[D])` for an endomorphism `D` with `V[D] = V[D²]`.
pub fn betts_group_with(lambda: &Lattice, lambda_prime: &Lattice, d: &RatMat) -> Result<FinAbGroup> {
    check_d(d, lambda.dim())?;
    let l = lambda.module();
    let num = l.sum(&lambda_prime.module().preimage(d)?)?;
    let den = l.sum(&kernel_subspace(d))?;
    let q = num.finite_quotient(&den)?;
    let f = d + &RatMat::identity(lambda.dim());
    Ok(q.with_induced_endo(&f)?.into_group())
}

pub fn betts_group(pair: &LatticePair) -> Result<FinAbGroup> {
    betts_group_with(&pair.lambda, &pair.lambda_prime, &pair.d_matrix())
}

/// `(Λ′ ∩ DV) / (Λ′ ∩ DΛ)`, isomorphic to 𝔅; for dual pairs this is the model carrying the pairing.
pub fn betts_group_alt(pair: &LatticePair) -> Result<crate::mixed_module::Quotient> {
    let d = pair.d_matrix();
    check_d(&d, pair.dim())?;
    let lp = pair.lambda_prime.module();
    let num = lp.intersect(&image_subspace(&d))?;
    let den = lp.intersect(&pair.lambda.module().image(&d))?;
    num.finite_quotient(&den)?.with_induced_endo(&pair.frobenius)
}

/// `𝔅_{Λ,eΛ′} ≅ B / B[e]`.
pub fn betts_scale(b: &FinAbGroup, e: &BigInt) -> Result<FinAbGroup> {
    if !e.is_positive() {
        return Err(Error::InvalidInput("e must be positive".into()));
    }
    Ok(b.quotient_by_torsion(e))
}

/// `r` and `p(0)` in `char(D) = ±t^r p(t)`.
pub fn d_charpoly_data(d: &RatMat) -> Result<(usize, BigInt)> {
    let c = char_poly(d)?;
    let coeffs = c.coeffs();
    let r = coeffs.iter().take_while(|x| x.is_zero()).count();
    Ok((r, coeffs[r].abs()))
}

/// `[Λ ∩ (F^f − 1)⁻¹(eΛ′) : eΛ′]`, the number of `F^f`-fixed points of `Λ/eΛ′`.
pub fn fixed_points_direct(pair: &LatticePair, e: &BigInt, f: u64) -> Result<BigInt> {
    if !e.is_positive() || f == 0 {
        return Err(Error::InvalidInput("e and f must be positive".into()));
    }
    let dim = pair.dim();
    let g = &pair.frobenius.pow(f) - &RatMat::identity(dim);
    let elp = pair.lambda_prime.scaled(e).module();
    let fixed = pair.lambda.module().intersect(&elp.preimage(&g)?)?;
    Ok(fixed.finite_quotient(&elp)?.order())
}

/// Certificate of the closed-form fixed-point count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCertificate {
    pub value: BigInt,
    /// `|Λ^F / Λ′^F|`
    pub fixed_index: BigInt,
    /// `p(1)` with `char(F) = ±(t−1)^r p(t)`
    pub p1: BigInt,
    /// `|𝒯_D(Λ′)|`
    pub separation_order: BigInt,
    /// `|𝔅_{Λ,Λ′}|`
    pub betts_order: BigInt,
    /// `|𝔅_{Λ,Λ′}[e]|`
    pub betts_torsion: BigInt,
    pub r: usize,
}

/// `|𝔅[e]|/|𝔅| · |Λ^F/Λ′^F| · p(1)/|𝒯_D(Λ′)| · e^r`.
pub fn fixed_points_formula(pair: &LatticePair, e: &BigInt) -> Result<FormulaCertificate> {
    if !e.is_positive() {
        return Err(Error::InvalidInput("e must be positive".into()));
    }
    let d = pair.d_matrix();
    let (r, p1, _) = strip_unit_root(&char_poly(&pair.frobenius)?);
    let ker = kernel_subspace(&d);
    let lf = pair.lambda.module().intersect(&ker)?;
    let lpf = pair.lambda_prime.module().intersect(&ker)?;
    let fixed_index = lf.finite_quotient(&lpf)?.order();
    let separation_order = separation_group(&pair.lambda_prime, &d)?.order();
    let b = betts_group(pair)?;
    let betts_order = b.order();
    let betts_torsion = b.torsion_order(e);
    let num = &betts_torsion * &fixed_index * &p1 * num_traits::pow(e.clone(), r);
    let den = &betts_order * &separation_order;
    if !num.is_multiple_of(&den) {
        return Err(Error::Inconsistency(format!("formula value {num}/{den} is not an integer")));
    }
    Ok(FormulaCertificate { value: num / den, fixed_index, p1, separation_order, betts_order, betts_torsion, r })
}

/// The dual lattice of `Λ` under `G`.
pub fn dual_lattice(lambda: &Lattice, gram: &RatMat) -> Result<Lattice> {
    lambda.dual(gram)
}

fn require_dual(pair: &LatticePair) -> Result<&RatMat> {
    pair.gram.as_ref().ok_or_else(|| Error::InvalidInput("a pairing is required (dual pair)".into()))
}

fn frac_part(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

/// `⟨x, y⟩ = (x, (D|_{DV})⁻¹ y) mod ℤ` for `x, y ∈ Λ^∨ ∩ DV`, valued in `[0, 1)`.
pub fn betts_pairing(pair: &LatticePair, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
    let gram = require_dual(pair)?;
    let d = pair.d_matrix();
    let dv = image_subspace(&d);
    let allowed = pair.lambda_prime.module().intersect(&dv)?;
    if !allowed.contains_vector(x) || !allowed.contains_vector(y) {
        return Err(Error::NotContained("pairing arguments must lie in Λ^∨ ∩ DV".into()));
    }
    let kdv = column_space(&d);
    let c = solve_vec(&(&d * &kdv), y).ok_or_else(|| Error::Inconsistency("D is not invertible on DV".into()))?;
    let z = kdv.mul_vec(&c);
    let gz = gram.mul_vec(&z);
    let v = x.iter().zip(&gz).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
    Ok(frac_part(&v))
}

/// The pairing on 𝔅 evaluated on generators, with the group it lives on.
#[derive(Clone, Debug)]
pub struct PairingData {
    pub group: crate::mixed_module::Quotient,
    /// `matrix[i][j] = ⟨g_i, g_j⟩ ∈ [0, 1)`.
    pub matrix: Vec<Vec<BigRational>>,
}

pub fn pairing_data(pair: &LatticePair) -> Result<PairingData> {
    require_dual(pair)?;
    let q = betts_group_alt(pair)?;
    let gens = q.group().generators.clone().expect("quotient keeps generators").to_cols();
    let mut matrix = Vec::with_capacity(gens.len());
    for x in &gens {
        let mut row = Vec::with_capacity(gens.len());
        for y in &gens {
            row.push(betts_pairing(pair, x, y)?);
        }
        matrix.push(row);
    }
    Ok(PairingData { group: q, matrix })
}

impl PairingData {
    pub fn factors(&self) -> &[BigInt] {
        &self.group.group().invariant_factors
    }

    /// `⟨a, b⟩` for elements given in generator coordinates.
    pub fn eval(&self, a: &[BigInt], b: &[BigInt]) -> BigRational {
        let mut v = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                v += &self.matrix[i][j] * BigRational::from_integer(ai * bj);
            }
        }
        frac_part(&v)
    }

    /// All group elements in coordinates (requires a small group).
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in self.factors() {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut v = prefix.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let k = self.matrix.len();
        (0..k).all(|i| (0..k).all(|j| frac_part(&(&self.matrix[i][j] + &self.matrix[j][i])).is_zero()))
    }

    /// Trivial radical, checked by enumeration.
    pub fn is_perfect(&self) -> bool {
        let elems = self.elements();
        elems.iter().all(|a| a.iter().all(Zero::is_zero) || elems.iter().any(|b| !self.eval(a, b).is_zero()))
    }
}

/// Squarefree class of `|(Λ/eΛ^∨)^{F^f}|` via the closed forms.
pub fn up_to_squares(pair: &LatticePair, e: &BigInt, f: u64) -> Result<BigInt> {
    require_dual(pair)?;
    if !e.is_positive() || f == 0 {
        return Err(Error::InvalidInput("e and f must be positive".into()));
    }
    let two = BigInt::from(2);
    if f.is_multiple_of(2) {
        let idx = pair.lambda.index(&pair.lambda_prime);
        let v = idx * num_traits::pow(e.clone(), pair.dim());
        return Ok(squarefree_part(&v));
    }
    let d = pair.d_matrix();
    let (r, p1, _) = strip_unit_root(&char_poly(&pair.frobenius)?);
    let ker = kernel_subspace(&d);
    let lf = pair.lambda.module().intersect(&ker)?;
    let lpf = pair.lambda_prime.module().intersect(&ker)?;
    let fixed_index = lf.finite_quotient(&lpf)?.order();
    let t = separation_group(&pair.lambda, &d)?.order();
    let mut v = fixed_index * p1 * t * num_traits::pow(e.clone(), r);
    if !e.is_multiple_of(&two) {
        v *= betts_group(pair)?.order();
    }
    Ok(squarefree_part(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat, IntMat};

    fn z(d: usize) -> Lattice {
        Lattice::standard(d)
    }

    #[test]
    fn separation_examples() {
        let f = RatMat::from_i64(&[&[0, 1], &[1, 0]]);
        let d = &f - &RatMat::identity(2);
        assert_eq!(separation_group(&z(2), &d).unwrap().invariant_factors, vec![int(2)]);
        assert!(separation_group(&z(2), &RatMat::zeros(2, 2)).unwrap().is_trivial());
        let bad = RatMat::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(matches!(separation_group(&z(2), &bad), Err(Error::AssumptionViolated(_))));
    }

    #[test]
    fn betts_examples() {
        let p = LatticePair::new(z(2), z(2), -&RatMat::identity(2), None).unwrap();
        assert_eq!(betts_group(&p).unwrap().invariant_factors, vec![int(2), int(2)]);
        let p = LatticePair::new(z(2), z(2), RatMat::identity(2), None).unwrap();
        assert!(betts_group(&p).unwrap().is_trivial());
        let i = RatMat::from_i64(&[&[0, -1], &[1, 0]]);
        let p = LatticePair::new(z(2), z(2), i, None).unwrap();
        assert_eq!(betts_group(&p).unwrap().invariant_factors, vec![int(2)]);
    }

    #[test]
    fn betts_has_trivial_action() {
        let p = LatticePair::new(z(2), z(2), -&RatMat::identity(2), None).unwrap();
        assert_eq!(betts_group(&p).unwrap().endo_is_identity(), Some(true));
    }

    #[test]
    fn dual_lattice_examples() {
        let g = RatMat::diag(&[rat(1, 2), rat(1, 3)]);
        let d = dual_lattice(&z(2), &g).unwrap();
        assert!(d.same_lattice(&Lattice::new(RatMat::from_i64(&[&[2, 0], &[0, 3]])).unwrap()));
        let l = Lattice::new(RatMat::from_i64(&[&[1, 1], &[1, -1]])).unwrap();
        let d = dual_lattice(&l, &RatMat::identity(2)).unwrap();
        assert!(d.contains_vector(&[rat(1, 2), rat(1, 2)]));
        assert!(dual_lattice(&d, &RatMat::identity(2)).unwrap().same_lattice(&l));
    }

    #[test]
    fn formula_matches_direct_on_swap() {
        let f = RatMat::from_i64(&[&[0, 1], &[1, 0]]);
        let p = LatticePair::new(z(2), Lattice::new(RatMat::from_i64(&[&[2, 0], &[0, 2]])).unwrap(), f, None).unwrap();
        for e in 1..=4 {
            let e = int(e);
            assert_eq!(fixed_points_formula(&p, &e).unwrap().value, fixed_points_direct(&p, &e, 1).unwrap());
        }
    }

    #[test]
    fn conjugation_keeps_counts() {
        let p = LatticePair::dual_pair(z(2), -&RatMat::identity(2), RatMat::identity(2)).unwrap();
        let g = IntMat::from_i64(&[&[2, 1], &[1, 1]]);
        let q = p.conjugated(&g);
        let q = LatticePair::new(q.lambda, q.lambda_prime, q.frobenius, q.gram).unwrap();
        assert_eq!(fixed_points_direct(&q, &int(2), 1).unwrap(), int(4));
    }
}
