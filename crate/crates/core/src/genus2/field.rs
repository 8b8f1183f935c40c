//! Arithmetic in `𝔽_{p^k} = 𝔽_p[θ]/(π(θ))` and in polynomial rings over it.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// An element of `𝔽_{p^k}`, stored as the coefficients of a polynomial in `θ` of degree `< k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    p: u64,
    k: usize,
    coords: Vec<u64>,
}

impl FqElem {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.coords[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "θ".to_string(),
                (1, c) => format!("{c}θ"),
                (i, 1) => format!("θ^{i}"),
                (i, c) => format!("{c}θ^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// `𝔽_{p^k}` with a fixed monic irreducible defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// ascending coefficients, monic of degree `k`
    modulus: Vec<u64>,
}

impl FiniteField {
    /// The prime field; `p` must be prime.
    pub fn prime(p: u64) -> Self {
        FiniteField { p, k: 1, modulus: vec![0, 1] }
    }

    /// `𝔽_{p^k}` defined by the lexicographically least monic irreducible polynomial of degree `k`,
    /// where coefficient vectors `(c_0, …, c_{k-1})` are ordered with `c_0` varying fastest.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        if k == 1 {
            return Ok(Self::prime(p));
        }
        let fp = Self::prime(p);
        let mut digits = vec![0u64; k];
        loop {
            let mut cand: Vec<u64> = digits.clone();
            cand.push(1);
            if fp.is_irreducible(&cand) {
                return Ok(FiniteField { p, k, modulus: cand });
            }
            let mut i = 0;
            loop {
                if i == k {
                    return Err(Error::Inconsistency(format!("no irreducible polynomial of degree {k} over F_{p}")));
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.k)
    }

    /// Rabin's test for a monic polynomial over the prime field given by its coefficients.
    fn is_irreducible(&self, poly: &[u64]) -> bool {
        debug_assert_eq!(self.k, 1);
        let n = poly.len() - 1;
        let f: Poly = poly.iter().map(|&c| self.from_u64(c)).collect();
        let x = vec![self.zero(), self.one()];
        let p = BigUint::from(self.p);
        // x^{p^j} mod f for j = 0..=n
        let mut powers = vec![x.clone()];
        for _ in 0..n {
            let next = self.poly_powmod(powers.last().unwrap(), &p, &f);
            powers.push(next);
        }
        if !self.poly_sub(&powers[n], &x).is_empty() {
            return false;
        }
        let mut r = n;
        let mut primes = Vec::new();
        let mut q = 2;
        while q <= r {
            if r.is_multiple_of(q) {
                primes.push(q);
                while r.is_multiple_of(q) {
                    r /= q;
                }
            }
            q += 1;
        }
        primes.iter().all(|&q| {
            let h = self.poly_sub(&powers[n / q], &x);
            self.poly_gcd(&h, &f).len() == 1
        })
    }

    pub fn zero(&self) -> FqElem {
        FqElem { p: self.p, k: self.k, coords: vec![0; self.k] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut z = self.zero();
        z.coords[0] = c % self.p;
        z
    }

    pub fn from_i64(&self, c: i64) -> FqElem {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    /// Element from coordinates in the basis `1, θ, …, θ^{k-1}` (reduced mod `p`).
    pub fn element(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() != self.k {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.k, coords.len())));
        }
        Ok(FqElem { p: self.p, k: self.k, coords: coords.iter().map(|c| c % self.p).collect() })
    }

    /// `θ`, the class of the variable.
    pub fn generator(&self) -> FqElem {
        if self.k == 1 {
            return self.zero();
        }
        let mut z = self.zero();
        z.coords[1] = 1;
        z
    }

    /// The `i`-th element when elements are listed by their coordinates read as base-`p` digits.
    pub fn nth(&self, mut i: u64) -> FqElem {
        let mut z = self.zero();
        for c in z.coords.iter_mut() {
            *c = i % self.p;
            i /= self.p;
        }
        z
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coords = a.coords.iter().zip(&b.coords).map(|(&x, &y)| (x + y) % self.p).collect();
        FqElem { p: self.p, k: self.k, coords }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let coords = a.coords.iter().map(|&x| (self.p - x) % self.p).collect();
        FqElem { p: self.p, k: self.k, coords }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p;
        let k = self.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let t = mulmod(c, self.modulus[j], p);
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
            prod[i] = 0;
        }
        prod.truncate(k);
        FqElem { p, k, coords: prod }
    }

    pub fn pow(&self, a: &FqElem, e: &BigUint) -> FqElem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, &BigUint::from(self.p))
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::Degenerate("inverse of zero in a finite field".into()));
        }
        if self.k == 1 {
            return Ok(self.from_u64(powmod(a.coords[0], self.p - 2, self.p)));
        }
        Ok(self.pow(a, &(self.order() - 2u32)))
    }

    pub fn is_square(&self, a: &FqElem) -> bool {
        a.is_zero() || self.pow(a, &((self.order() - 1u32) >> 1)) == self.one()
    }

    /// A square root, or `None` for non-squares.
    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.order();
        if (&q % 4u32) == BigUint::from(3u32) {
            return Some(self.pow(a, &((q + 1u32) >> 2)));
        }
        // Tonelli–Shanks
        let q1 = &q - 1u32;
        let s = q1.trailing_zeros().expect("q > 1");
        let t = &q1 >> s;
        let z = (1..).map(|i| self.nth(i)).find(|z| !self.is_square(z)).expect("non-residue exists");
        let mut c = self.pow(&z, &t);
        let mut x = self.pow(a, &((&t + 1u32) >> 1));
        let mut b = self.pow(a, &t);
        let mut m = s;
        let one = self.one();
        while b != one {
            let mut i = 0;
            let mut b2 = b.clone();
            while b2 != one {
                b2 = self.mul(&b2, &b2);
                i += 1;
            }
            let mut w = c.clone();
            for _ in 0..(m - i - 1) {
                w = self.mul(&w, &w);
            }
            x = self.mul(&x, &w);
            c = self.mul(&w, &w);
            b = self.mul(&b, &c);
            m = i;
        }
        Some(x)
    }

    /// Image of a prime-field element.
    pub fn embed_prime(&self, a: &FqElem) -> FqElem {
        self.from_u64(a.coords[0])
    }
}

/// Polynomials over a finite field, ascending coefficients, no trailing zeros.
pub type Poly = Vec<FqElem>;

impl FiniteField {
    fn trim(&self, mut a: Poly) -> Poly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn poly(&self, coeffs: &[i64]) -> Poly {
        self.trim(coeffs.iter().map(|&c| self.from_i64(c)).collect())
    }

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.trim((0..n).map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let nb: Poly = b.iter().map(|c| self.neg(c)).collect();
        self.poly_add(a, &nb)
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn poly_scale(&self, a: &Poly, c: &FqElem) -> Poly {
        self.trim(a.iter().map(|x| self.mul(x, c)).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let inv = self.inv(b.last().unwrap()).expect("nonzero leading coefficient");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(r.last().unwrap(), &inv);
            for (j, y) in b.iter().enumerate() {
                r[shift + j] = self.sub(&r[shift + j], &self.mul(&c, y));
            }
            q[shift] = c;
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly_divrem(a, b).1
    }

    pub fn poly_monic(&self, a: &Poly) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(l) => self.poly_scale(a, &self.inv(l).expect("nonzero")),
        }
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g` and `g` monic.
    pub fn poly_xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![self.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![self.one()]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = self.inv(&l).expect("nonzero");
                (self.poly_scale(&r0, &inv), self.poly_scale(&s0, &inv), self.poly_scale(&t0, &inv))
            }
        }
    }

    pub fn poly_powmod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut r = self.poly_rem(&vec![self.one()], m);
        let b = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.poly_rem(&self.poly_mul(&r, &r), m);
            if e.bit(i) {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
        }
        r
    }

    pub fn poly_deriv(&self, a: &Poly) -> Poly {
        self.trim(a.iter().enumerate().skip(1).map(|(i, c)| self.mul(c, &self.from_u64(i as u64))).collect())
    }

    pub fn poly_eval(&self, a: &Poly, x: &FqElem) -> FqElem {
        a.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Coefficients moved from the prime field into this field.
    pub fn poly_embed(&self, a: &Poly) -> Poly {
        self.trim(a.iter().map(|c| self.embed_prime(c)).collect())
    }

    /// Degrees of the irreducible factors of a squarefree polynomial over the prime field.
    pub fn factor_degrees(&self, a: &Poly) -> Vec<usize> {
        debug_assert_eq!(self.k, 1);
        let x = vec![self.zero(), self.one()];
        let p = BigUint::from(self.p);
        let mut rest = self.poly_monic(a);
        let mut xp = x.clone();
        let mut out = Vec::new();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            xp = self.poly_powmod(&xp, &p, &rest);
            let g = self.poly_gcd(&self.poly_sub(&xp, &x), &rest);
            let count = (g.len() - 1) / d;
            out.extend(std::iter::repeat_n(d, count));
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                xp = self.poly_rem(&xp, &rest);
            }
        }
        out
    }

    /// All roots of a squarefree polynomial that splits into linear factors over this field, sorted.
    pub fn split_roots(&self, a: &Poly) -> Result<Vec<FqElem>> {
        let mut out = Vec::new();
        self.split_into(&self.poly_monic(a), &mut out)?;
        out.sort();
        Ok(out)
    }

    fn split_into(&self, a: &Poly, out: &mut Vec<FqElem>) -> Result<()> {
        match a.len() {
            0 => return Err(Error::Degenerate("zero polynomial has no finite root set".into())),
            1 => return Ok(()),
            2 => {
                out.push(self.neg(&a[0]));
                return Ok(());
            }
            _ => {}
        }
        let e = (self.order() - 1u32) >> 1;
        let limit = self.order().min(BigUint::from(u64::MAX));
        let mut i = 0u64;
        while BigUint::from(i) < limit {
            let shift = vec![self.nth(i), self.one()];
            let w = self.poly_sub(&self.poly_powmod(&shift, &e, a), &vec![self.one()]);
            let g = self.poly_gcd(&w, a);
            if g.len() > 1 && g.len() < a.len() {
                let h = self.poly_divrem(a, &g).0;
                self.split_into(&g, out)?;
                return self.split_into(&self.poly_monic(&h), out);
            }
            i += 1;
        }
        Err(Error::Inconsistency("polynomial does not split into distinct linear factors".into()))
    }
}
