//! Brute-force counterparts of the engine, by explicit finite enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::classification::{make_type, Kind, TypeDescriptor};
use crate::error::{Error, Result};
use crate::exact_linalg::arith::factorize;
use crate::exact_linalg::{
    column_space, det, hnf, hnf_basis, integer_kernel, inverse, rational_kernel, snf, IntMat, RatMat,
};
use crate::group::FinAbGroup;
use crate::pair::{Lattice, LatticePair};

pub const DEFAULT_CAP: u64 = 1_000_000;

fn cap_check(size: &BigInt, cap: u64) -> Result<u64> {
    match size.to_u64() {
        Some(s) if s <= cap => Ok(s),
        _ => Err(Error::CapExceeded { size: size.to_string(), cap }),
    }
}

fn small(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or_else(|| Error::Unsupported(format!("entry {x} too large for enumeration")))
}

/// `T = A / L` with `A` as machine integers, for fast integrality tests.
struct IntegralityTest {
    a: Vec<Vec<i128>>,
    l: i128,
}

impl IntegralityTest {
    fn new(t: &RatMat) -> Result<Self> {
        let (a, l) = t.clear_denominators();
        let a = a.to_rows().iter().map(|r| r.iter().map(small).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(IntegralityTest { a, l: small(&l)? })
    }

    fn holds(&self, y: &[i128]) -> bool {
        self.a.iter().all(|row| row.iter().zip(y).map(|(a, b)| a * b).sum::<i128>().rem_euclid(self.l) == 0)
    }
}

fn box_iter(bounds: &[i128]) -> impl Iterator<Item = Vec<i128>> + '_ {
    let total: i128 = bounds.iter().product();
    (0..total).map(move |mut k| {
        bounds
            .iter()
            .map(|&b| {
                let v = k % b;
                k /= b;
                v
            })
            .collect()
    })
}

/// Coset representatives of `Λ / Λ″` in SNF coordinates.
#[derive(Clone, Debug)]
pub struct CosetTable {
    basis: RatMat,
    basis_inv: RatMat,
    u: IntMat,
    u_inv: IntMat,
    factors: Vec<BigInt>,
    pub representatives: Vec<Vec<BigRational>>,
}

fn quotient_coords(lambda: &Lattice, sub: &Lattice) -> Result<(RatMat, IntMat, IntMat, Vec<BigInt>)> {
    let inv = inverse(lambda.basis()).ok_or_else(|| Error::InvalidInput("singular basis".into()))?;
    let c = (&inv * sub.basis())
        .to_int()
        .ok_or_else(|| Error::NotContained("sublattice is not contained in the lattice".into()))?;
    let s = snf(&c);
    if s.rank() < lambda.dim() {
        return Err(Error::InfiniteQuotient("sublattice is not of full rank".into()));
    }
    Ok((inv, s.u, s.u_inv, s.d))
}

impl CosetTable {
    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Index of the coset containing `x ∈ Λ`.
    pub fn reduce(&self, x: &[BigRational]) -> Result<usize> {
        let c = self.basis_inv.mul_vec(x);
        if !c.iter().all(|v| v.is_integer()) {
            return Err(Error::NotContained("vector is not in the lattice".into()));
        }
        let c: Vec<BigInt> = c.into_iter().map(|v| v.to_integer()).collect();
        let y = self.u.mul_vec(&c);
        let mut idx = 0usize;
        for (v, d) in y.iter().zip(&self.factors).rev() {
            idx = idx * d.to_usize().expect("capped") + v.mod_floor(d).to_usize().expect("capped");
        }
        Ok(idx)
    }

    fn rep(&self, y: &[BigInt]) -> Vec<BigRational> {
        let c = self.u_inv.mul_vec(y);
        let c: Vec<BigRational> = c.into_iter().map(BigRational::from_integer).collect();
        self.basis.mul_vec(&c)
    }
}

pub fn enumerate_quotient(lambda: &Lattice, sub: &Lattice, cap: u64) -> Result<CosetTable> {
    let (inv, u, u_inv, factors) = quotient_coords(lambda, sub)?;
    let size: BigInt = factors.iter().product();
    cap_check(&size, cap)?;
    let bounds: Vec<i128> = factors.iter().map(small).collect::<Result<_>>()?;
    let mut table =
        CosetTable { basis: lambda.basis().clone(), basis_inv: inv, u, u_inv, factors, representatives: Vec::new() };
    for y in box_iter(&bounds) {
        let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
        let r = table.rep(&y);
        table.representatives.push(r);
    }
    Ok(table)
}

/// Number of `x ∈ Λ/eΛ′` with `F^f x ≡ x`.
pub fn brute_fixed_points(pair: &LatticePair, e: &BigInt, f: u64, cap: u64) -> Result<BigInt> {
    let sub = pair.lambda_prime.scaled(e);
    let (inv, _u, u_inv, factors) = quotient_coords(&pair.lambda, &sub)?;
    let size: BigInt = factors.iter().product();
    cap_check(&size, cap)?;
    let b = pair.lambda.basis();
    // (F^f - 1) in Λ-coordinates, then tested against eΛ′ in Λ-coordinates
    let phi = &(&inv * &(&pair.frobenius.pow(f) - &RatMat::identity(pair.dim()))) * b;
    let c = &inv * sub.basis();
    let c_inv = inverse(&c).expect("full rank");
    let test = IntegralityTest::new(&(&(&c_inv * &phi) * &u_inv.to_rat()))?;
    let bounds: Vec<i128> = factors.iter().map(small).collect::<Result<_>>()?;
    Ok(BigInt::from(box_iter(&bounds).filter(|y| test.holds(y)).count()))
}

/// Group structure from the multiset of element orders.
pub fn structure_from_orders(orders: &[BigInt]) -> FinAbGroup {
    let n = BigInt::from(orders.len());
    if n.is_one() {
        return FinAbGroup::trivial();
    }
    let mut cyclic = Vec::new();
    for (p, _) in factorize(&n) {
        let mut prev = BigInt::one();
        let mut counts = Vec::new();
        let mut pj = p.clone();
        loop {
            let nj = BigInt::from(orders.iter().filter(|o| pj.is_multiple_of(o)).count());
            if nj == prev {
                break;
            }
            let mut ratio = &nj / &prev;
            let mut k = 0u32;
            while ratio > BigInt::one() {
                ratio /= &p;
                k += 1;
            }
            counts.push(k);
            prev = nj;
            pj *= &p;
        }
        // counts[j] = number of cyclic p-factors of exponent > j
        for (j, &k) in counts.iter().enumerate() {
            let next = counts.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(k - next) {
                cyclic.push(num_traits::pow(p.clone(), j + 1));
            }
        }
    }
    FinAbGroup::from_cyclic_orders(&cyclic)
}

/// Order of `y` in `ℤ^k / Hℤ^k`.
fn element_order(h_inv: &RatMat, y: &[i128]) -> BigInt {
    let yv: Vec<BigRational> = y.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
    h_inv.mul_vec(&yv).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Representatives `0 ≤ y_i < h_ii` of `ℤ^k / Hℤ^k` for a square lower-triangular HNF `H`.
fn hnf_box(h: &IntMat) -> Result<Vec<i128>> {
    (0..h.rows()).map(|i| small(&h[(i, i)])).collect()
}

fn projection_onto_image(d: &RatMat) -> RatMat {
    let img = column_space(d);
    let ker = rational_kernel(d);
    let p = img.hcat(&ker);
    let pinv = inverse(&p).expect("V = DV ⊕ V[D]");
    let k = img.cols();
    let mut sel = RatMat::zeros(p.cols(), p.cols());
    for i in 0..k {
        sel[(i, i)] = BigRational::one();
    }
    &(&p * &sel) * &pinv
}

/// Basis of `π Λ` inside `DV`, as ambient columns.
fn projected_basis(lambda: &Lattice, pi: &RatMat) -> RatMat {
    let proj = pi * lambda.basis();
    let (a, l) = proj.clear_denominators();
    let h = hnf_basis(&a).to_rat();
    h.scale(&BigRational::new(BigInt::one(), l))
}

fn check_d(d: &RatMat) -> Result<()> {
    if crate::exact_linalg::rank(d) != crate::exact_linalg::rank(&(d * d)) {
        return Err(Error::AssumptionViolated("V[D] differs from V[D²]".into()));
    }
    Ok(())
}

/// `𝒯_D(Λ)` as `πΛ / (Λ ∩ DV)`, with `π` the projection onto `DV` along `V[D]`.
pub fn brute_separation(lambda: &Lattice, d: &RatMat, cap: u64) -> Result<FinAbGroup> {
    check_d(d)?;
    let dim = lambda.dim();
    let pi = projection_onto_image(d);
    let bpi = projected_basis(lambda, &pi);
    let k = bpi.cols();
    if k == 0 {
        return Ok(FinAbGroup::trivial());
    }
    // Λ ∩ DV: integer coordinates c with (1 - π) B c = 0
    let comp = &(&RatMat::identity(dim) - &pi) * lambda.basis();
    let (a, _) = comp.clear_denominators();
    let kc = integer_kernel(&a).to_rat();
    let inter = lambda.basis() * &kc;
    let coords = crate::exact_linalg::solve(&bpi, &inter).expect("Λ ∩ DV ⊆ πΛ");
    let x = coords.to_int().expect("integral coordinates");
    let hs = hnf_basis(&x);
    let size: BigInt = (0..k).map(|i| hs[(i, i)].clone()).product();
    cap_check(&size, cap)?;
    let h_inv = inverse(&hs.to_rat()).expect("full rank in DV");
    let bounds = hnf_box(&hs)?;
    let orders: Vec<BigInt> = box_iter(&bounds).map(|y| element_order(&h_inv, &y)).collect();
    Ok(structure_from_orders(&orders))
}

/// `𝔅_{Λ,Λ′}` by enumerating `A⁻¹ℤ^k / ℤ^k` (with `A = D` on `πΛ`) and keeping
/// the classes `z` with `Dz ∈ Λ′ + DΛ`.
pub fn brute_betts(pair: &LatticePair, cap: u64) -> Result<FinAbGroup> {
    let d = pair.d_matrix();
    check_d(&d)?;
    let pi = projection_onto_image(&d);
    let bpi = projected_basis(&pair.lambda, &pi);
    let k = bpi.cols();
    if k == 0 {
        return Ok(FinAbGroup::trivial());
    }
    let a = crate::exact_linalg::solve(&bpi, &(&d * &bpi)).expect("D preserves DV").to_int().expect("D stabilizes πΛ");
    let size = det(&a.to_rat()).abs().to_integer();
    cap_check(&size, cap)?;
    let (ha, _) = hnf(&a);
    let ha = hnf_basis(&ha);
    let a_inv = inverse(&a.to_rat()).expect("D invertible on DV");
    let gens = pair.lambda_prime.basis().hcat(&(&d * pair.lambda.basis()));
    let (gi, l) = gens.clear_denominators();
    let sum_basis = hnf_basis(&gi).to_rat().scale(&BigRational::new(BigInt::one(), l));
    let sum_inv = inverse(&sum_basis).expect("Λ′ + DΛ has full rank");
    // z = Bπ A⁻¹ w ; test sum_inv · D · z integral
    let test = IntegralityTest::new(&(&(&(&sum_inv * &d) * &bpi) * &a_inv))?;
    let bounds = hnf_box(&ha)?;
    // the order of A⁻¹w in ℚ^k/ℤ^k is the order of w in ℤ^k/Aℤ^k
    let orders: Vec<BigInt> = box_iter(&bounds).filter(|w| test.holds(w)).map(|w| element_order(&a_inv, &w)).collect();
    Ok(structure_from_orders(&orders))
}

/// Parameters of the random pair generator.
#[derive(Clone, Debug)]
pub struct GeneratorOptions {
    pub max_param: u64,
    pub allow_sums: bool,
    pub max_scale: u64,
    pub conj_bound: i64,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions { max_param: 3, allow_sums: true, max_scale: 4, conj_bound: 3 }
    }
}

/// A generated pair with a description of how it was built.
#[derive(Clone, Debug)]
pub struct GeneratedPair {
    pub pair: LatticePair,
    pub templates: Vec<TypeDescriptor>,
    pub scale: u64,
    pub conjugator: IntMat,
}

pub fn random_type<R: Rng>(rng: &mut R, max_param: u64) -> TypeDescriptor {
    loop {
        let kind = *Kind::ALL.choose(rng).expect("nonempty");
        let n = rng.gen_range(1..=max_param);
        let m = rng.gen_range(1..=max_param);
        let m = kind.has_two_params().then_some(m);
        if let Ok(t) = TypeDescriptor::new(kind, n, m) {
            return t;
        }
    }
}

/// Random unimodular matrix with entries in `[-bound, bound]`, by rejection.
pub fn random_unimodular<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> IntMat {
    loop {
        let rows: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = IntMat::from_i64(&refs);
        if det(&m.to_rat()).abs().is_one() {
            return m;
        }
    }
}

pub fn random_pair<R: Rng>(rng: &mut R, opts: &GeneratorOptions) -> GeneratedPair {
    let mut templates = vec![random_type(rng, opts.max_param)];
    if opts.allow_sums && rng.gen_bool(0.3) {
        templates.push(random_type(rng, opts.max_param));
    }
    let mut pair = make_type(&templates[0]);
    for t in &templates[1..] {
        pair = pair.direct_sum(&make_type(t));
    }
    let scale = if opts.max_scale > 1 && rng.gen_bool(0.3) { rng.gen_range(2..=opts.max_scale) } else { 1 };
    if scale > 1 {
        pair = pair.scaled(&BigInt::from(scale));
    }
    let g = random_unimodular(rng, pair.dim(), opts.conj_bound);
    let pair = pair.conjugated(&g);
    let pair =
        LatticePair::new(pair.lambda, pair.lambda_prime, pair.frobenius, pair.gram).expect("generator keeps validity");
    GeneratedPair { pair, templates, scale, conjugator: g }
}

/// Orders of the four descriptions of `𝒯_D(Λ)`, computed with the module engine.
pub fn separation_descriptions(lambda: &Lattice, d: &RatMat) -> Result<[BigInt; 4]> {
    use crate::invariants::{image_subspace, kernel_subspace};
    let l = lambda.module();
    let u = image_subspace(d);
    let w = kernel_subspace(d);
    let pi_u = projection_onto_image(d);
    let pi_w = &RatMat::identity(lambda.dim()) - &pi_u;
    let lu = l.intersect(&u)?;
    let lw = l.intersect(&w)?;
    let first = l.finite_quotient(&lu.sum(&lw)?)?.order();
    let second = l.image(&pi_u).finite_quotient(&lu)?.order();
    let third = l.image(&pi_w).finite_quotient(&lw)?.order();
    let fourth = l.sum(&u)?.intersect(&l.sum(&w)?)?.finite_quotient(&l)?.order();
    Ok([first, second, third, fourth])
}

/// Histogram helper used by reports: kind label ↦ count.
pub fn kind_histogram(pairs: &[GeneratedPair]) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for p in pairs {
        for t in &p.templates {
            *h.entry(t.kind().label().to_string()).or_insert(0) += 1;
        }
    }
    h
}

/// Result of checking one generated pair against the brute-force oracle.
#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub id: usize,
    pub generated: GeneratedPair,
    pub failures: Vec<String>,
    /// brute-force counts skipped because the quotient exceeded the cap
    pub skipped: usize,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Engine vs oracle on one pair: `𝔅`, `𝒯_D(Λ)`, the three fixed-point counts for each `e`,
/// and `|𝔅|·|𝒯_D(Λ′)|` dividing `p(0)`.
pub fn check_case(id: usize, generated: GeneratedPair, es: &[u64], cap: u64) -> CaseOutcome {
    use crate::invariants::{
        betts_group, d_charpoly_data, fixed_points_direct, fixed_points_formula, separation_group,
    };
    let pair = &generated.pair;
    let d = pair.d_matrix();
    let mut failures = Vec::new();
    let mut skipped = 0;
    let mut note = |what: String| failures.push(what);
    let mut compare = |what: &str, engine: Result<FinAbGroup>, brute: Result<FinAbGroup>, skipped: &mut usize| match (
        engine, brute,
    ) {
        (Ok(a), Ok(b)) if a.abstract_group() == b => {}
        (Ok(_), Err(Error::CapExceeded { .. })) => *skipped += 1,
        (Ok(a), Ok(b)) => note(format!("{what}: engine {a}, oracle {b}")),
        (Err(e), _) | (_, Err(e)) => note(format!("{what}: {e}")),
    };
    compare("B", betts_group(pair), brute_betts(pair, cap), &mut skipped);
    compare("T", separation_group(&pair.lambda, &d), brute_separation(&pair.lambda, &d, cap), &mut skipped);
    for &e in es {
        let eb = BigInt::from(e);
        let direct = fixed_points_direct(pair, &eb, 1);
        let formula = fixed_points_formula(pair, &eb).map(|c| c.value);
        match (&direct, &formula) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => failures.push(format!("e={e}: direct {direct:?}, formula {formula:?}")),
        }
        match (brute_fixed_points(pair, &eb, 1, cap), &direct) {
            (Ok(b), Ok(a)) if &b == a => {}
            (Err(Error::CapExceeded { .. }), _) => skipped += 1,
            (b, _) => failures.push(format!("e={e}: brute {b:?}, direct {direct:?}")),
        }
    }
    let divides = || -> Result<bool> {
        let (_, p0) = d_charpoly_data(&d)?;
        let prod = betts_group(pair)?.order() * separation_group(&pair.lambda_prime, &d)?.order();
        Ok(p0.is_multiple_of(&prod))
    };
    match divides() {
        Ok(true) => {}
        Ok(false) => failures.push("|B|·|T(Λ′)| does not divide p(0)".into()),
        Err(e) => failures.push(format!("divisibility: {e}")),
    }
    CaseOutcome { id, generated, failures, skipped }
}

/// Draws pairs until `[Λ : e·Λ′] ≤ cap`, so that every brute-force count fits under the cap.
pub fn random_pair_within<R: Rng>(rng: &mut R, opts: &GeneratorOptions, e: u64, cap: u64) -> GeneratedPair {
    let cap = BigInt::from(cap);
    loop {
        let g = random_pair(rng, opts);
        if g.pair.lambda.index(&g.pair.lambda_prime.scaled(&BigInt::from(e))) <= cap {
            return g;
        }
    }
}

/// Seeded sweep of `cases` random pairs with index capped at `cap` for the largest `e`,
/// checked on all available threads; outcomes sorted by id.
pub fn sweep(cases: usize, seed: u64, cap: u64, es: &[u64]) -> Vec<CaseOutcome> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let opts = GeneratorOptions::default();
    let e_max = es.iter().copied().max().unwrap_or(1);
    let pairs: Vec<(usize, GeneratedPair)> =
        (0..cases).map(|i| (i, random_pair_within(&mut rng, &opts, e_max, cap))).collect();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cases.max(1));
    let chunk = cases.div_ceil(threads).max(1);
    let mut out: Vec<CaseOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || part.iter().map(|(i, g)| check_case(*i, g.clone(), es, cap)).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    out.sort_by_key(|c| c.id);
    out
}
