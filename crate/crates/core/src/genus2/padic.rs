//! Truncated unramified extensions `ℤ_p[θ]/(π̃, p^N)` and Hensel lifting of coprime factorizations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{FiniteField, FqElem, Poly};
use crate::error::{Error, Result};

/// An element of `W_N(𝔽_{p^m})`, coordinates modulo `p^N` in the basis `1, θ, …, θ^{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnramifiedPadic {
    p: u64,
    m: usize,
    precision: u32,
    coords: Vec<BigInt>,
}

impl UnramifiedPadic {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `v_p`, or `None` when the element vanishes to the working precision.
    pub fn valuation(&self) -> Option<u32> {
        let p = BigInt::from(self.p);
        self.coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let mut c = c.clone();
                let mut v = 0;
                while (&c % &p).is_zero() {
                    c /= &p;
                    v += 1;
                }
                v
            })
            .min()
    }
}

/// The ring `(ℤ/p^N)[θ]/(π̃)` where `π̃` lifts the defining polynomial of a finite field.
#[derive(Clone, Debug)]
pub struct PadicRing {
    p: u64,
    m: usize,
    precision: u32,
    pn: BigInt,
    modulus: Vec<BigInt>,
}

pub type PadicPoly = Vec<UnramifiedPadic>;

impl PadicRing {
    pub fn new(field: &FiniteField, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidInput("p-adic precision must be at least 1".into()));
        }
        let p = field.p();
        Ok(PadicRing {
            p,
            m: field.degree(),
            precision,
            pn: num_traits::pow(BigInt::from(p), precision as usize),
            modulus: field.modulus().iter().map(|&c| BigInt::from(c)).collect(),
        })
    }

    fn make(&self, coords: Vec<BigInt>) -> UnramifiedPadic {
        let coords = coords.into_iter().map(|c| c.mod_floor(&self.pn)).collect();
        UnramifiedPadic { p: self.p, m: self.m, precision: self.precision, coords }
    }

    pub fn zero(&self) -> UnramifiedPadic {
        self.make(vec![BigInt::zero(); self.m])
    }

    pub fn from_int(&self, c: &BigInt) -> UnramifiedPadic {
        let mut v = vec![BigInt::zero(); self.m];
        v[0] = c.clone();
        self.make(v)
    }

    /// Teichmüller-free lift: coordinates taken as integers in `[0, p)`.
    pub fn lift(&self, a: &FqElem) -> UnramifiedPadic {
        self.make(a.coords().iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn reduce(&self, a: &UnramifiedPadic, field: &FiniteField) -> FqElem {
        let p = BigInt::from(self.p);
        let coords: Vec<u64> = a.coords.iter().map(|c| u64::try_from(c.mod_floor(&p)).expect("residue fits")).collect();
        field.element(&coords).expect("matching degree")
    }

    pub fn add(&self, a: &UnramifiedPadic, b: &UnramifiedPadic) -> UnramifiedPadic {
        self.make(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &UnramifiedPadic, b: &UnramifiedPadic) -> UnramifiedPadic {
        self.make(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &UnramifiedPadic) -> UnramifiedPadic {
        self.make(a.coords.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &UnramifiedPadic, b: &UnramifiedPadic) -> UnramifiedPadic {
        let m = self.m;
        let mut prod = vec![BigInt::zero(); 2 * m - 1];
        for (i, x) in a.coords.iter().enumerate() {
            for (j, y) in b.coords.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = std::mem::take(&mut prod[i]);
            for j in 0..m {
                prod[i - m + j] -= &c * &self.modulus[j];
            }
        }
        prod.truncate(m);
        self.make(prod)
    }

    fn trim(&self, mut a: PadicPoly) -> PadicPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn poly_from_ints(&self, coeffs: &[BigInt]) -> PadicPoly {
        self.trim(coeffs.iter().map(|c| self.from_int(c)).collect())
    }

    pub fn poly_lift(&self, a: &Poly) -> PadicPoly {
        self.trim(a.iter().map(|c| self.lift(c)).collect())
    }

    pub fn poly_add(&self, a: &PadicPoly, b: &PadicPoly) -> PadicPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.trim((0..n).map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn poly_sub(&self, a: &PadicPoly, b: &PadicPoly) -> PadicPoly {
        let nb: PadicPoly = b.iter().map(|c| self.neg(c)).collect();
        self.poly_add(a, &nb)
    }

    pub fn poly_mul(&self, a: &PadicPoly, b: &PadicPoly) -> PadicPoly {
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

    /// Division by a monic polynomial.
    pub fn poly_divrem_monic(&self, a: &PadicPoly, b: &PadicPoly) -> (PadicPoly, PadicPoly) {
        let db = b.len() - 1;
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i - db + j] = self.sub(&r[i - db + j], &self.mul(&c, y));
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    /// Lifts `f ≡ q̄·h̄ (mod p)` with `q̄` monic and coprime to `h̄` to `f ≡ q·h (mod p^N)`, `q` monic.
    pub fn hensel_lift(
        &self,
        f: &PadicPoly,
        q_bar: &Poly,
        h_bar: &Poly,
        field: &FiniteField,
    ) -> Result<(PadicPoly, PadicPoly)> {
        let (g, s_bar, t_bar) = field.poly_xgcd(q_bar, h_bar);
        if g.len() != 1 {
            return Err(Error::Degenerate("Hensel lifting needs coprime factors".into()));
        }
        let (s, t) = (self.poly_lift(&s_bar), self.poly_lift(&t_bar));
        let mut q = self.poly_lift(q_bar);
        let mut h = self.poly_lift(h_bar);
        for _ in 0..self.precision {
            let e = self.poly_sub(f, &self.poly_mul(&q, &h));
            if e.is_empty() {
                break;
            }
            let (quo, rem) = self.poly_divrem_monic(&self.poly_mul(&t, &e), &q);
            q = self.poly_add(&q, &rem);
            h = self.poly_add(&h, &self.poly_add(&self.poly_mul(&s, &e), &self.poly_mul(&quo, &h)));
        }
        if !self.poly_sub(f, &self.poly_mul(&q, &h)).is_empty() {
            return Err(Error::Inconsistency("Hensel lift did not converge".into()));
        }
        Ok((q, h))
    }
}
