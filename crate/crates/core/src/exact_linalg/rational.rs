//! Exact linear algebra over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMat, RatMat};

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RatMat) -> (RatMat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = &f * &a[(r, j)];
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RatMat) -> usize {
    rref(m).1.len()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Basis of `{x : M x = 0}` as columns, each cleared to a primitive integer vector.
pub fn rational_kernel(m: &RatMat) -> RatMat {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[(row, f)].clone();
        }
        let p = primitive(&v);
        basis.push(p.into_iter().map(BigRational::from_integer).collect::<Vec<_>>());
    }
    RatMat::from_cols(n, &basis)
}

/// Basis of the column space: the pivot columns of `m`.
pub fn column_space(m: &RatMat) -> RatMat {
    let (_, pivots) = rref(m);
    m.select_cols(&pivots)
}

pub fn inverse(m: &RatMat) -> Option<RatMat> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = m.hcat(&RatMat::identity(n));
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let idx: Vec<usize> = (n..2 * n).collect();
    Some(r.select_cols(&idx))
}

pub fn det(m: &RatMat) -> BigRational {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d *= &piv;
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &piv;
            for j in c..n {
                let v = &f * &a[(c, j)];
                a[(i, j)] -= v;
            }
        }
    }
    d
}

pub fn det_int(m: &IntMat) -> BigInt {
    det(&m.to_rat()).to_integer()
}

/// Solves `A X = B` when a solution exists; returns one solution (free variables zero).
pub fn solve(a: &RatMat, b: &RatMat) -> Option<RatMat> {
    assert_eq!(a.rows(), b.rows());
    let n = a.cols();
    let aug = a.hcat(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = RatMat::zeros(n, b.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(pc, j)] = r[(row, n + j)].clone();
        }
    }
    Some(x)
}

pub fn solve_vec(a: &RatMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let bm = RatMat::from_cols(b.len(), &[b.to_vec()]);
    solve(a, &bm).map(|x| x.col(0))
}
