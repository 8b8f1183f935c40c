//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMat;

/// Extended gcd with `g >= 0` and `s*a + t*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

// col_a <- x*col_a + y*col_b ; col_b <- z*col_a + w*col_b (simultaneously)
fn col_combine(m: &mut IntMat, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
    for i in 0..m.rows() {
        let va = m[(i, a)].clone();
        let vb = m[(i, b)].clone();
        m[(i, a)] = x * &va + y * &vb;
        m[(i, b)] = z * &va + w * &vb;
    }
}

fn col_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, src)] * q;
        m[(i, dst)] -= v;
    }
}

fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(src, j)] * q;
        m[(dst, j)] -= v;
    }
}

fn negate_col(m: &mut IntMat, j: usize) {
    for i in 0..m.rows() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

fn negate_row(m: &mut IntMat, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -m[(i, j)].clone();
    }
}

/// Column Hermite normal form `H = M·U`.
///
/// `H` is lower-triangular echelon: each nonzero column has a positive pivot
/// strictly below the pivot of the previous column, entries to the left of a
/// pivot lie in `[0, pivot)`, and zero columns come last.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMat::identity(cols);
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        for j in k + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            if h[(i, k)].is_zero() {
                h.swap_cols(k, j);
                u.swap_cols(k, j);
                continue;
            }
            let a = h[(i, k)].clone();
            let b = h[(i, j)].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let ag = &a / &g;
            let bg = &b / &g;
            let nb = -bg;
            col_combine(&mut h, k, j, &s, &t, &nb, &ag);
            col_combine(&mut u, k, j, &s, &t, &nb, &ag);
        }
        if h[(i, k)].is_zero() {
            continue;
        }
        if h[(i, k)].is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut u, k);
        }
        let p = h[(i, k)].clone();
        for j in 0..k {
            let q = h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                col_axpy(&mut h, j, k, &q);
                col_axpy(&mut u, j, k, &q);
            }
        }
        k += 1;
    }
    (h, u)
}

/// Nonzero columns of the column HNF: a canonical basis of the lattice
/// generated by the columns of `m`.
pub fn hnf_basis(m: &IntMat) -> IntMat {
    let (h, _) = hnf(m);
    let keep: Vec<usize> = (0..h.cols()).filter(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero())).collect();
    h.select_cols(&keep)
}

/// Basis (columns) of the integer kernel `{x ∈ ℤ^n : M x = 0}`.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let (h, u) = hnf(m);
    let zero: Vec<usize> = (0..h.cols()).filter(|&j| (0..h.rows()).all(|i| h[(i, j)].is_zero())).collect();
    u.select_cols(&zero)
}

/// Smith normal form `U·M·V = diag(d)`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub d: Vec<BigInt>,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

fn min_nonzero(a: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn snf(m: &IntMat) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                // inverse of the row operation acts on columns of u_inv
                let nq = -q;
                col_axpy(&mut u_inv, t, i, &nq);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remaining entry of row/col t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                    u_inv.swap_cols(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let mo = -BigInt::one();
                    row_axpy(&mut a, t, i, &mo);
                    row_axpy(&mut u, t, i, &mo);
                    col_axpy(&mut u_inv, i, t, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
            negate_col(&mut u_inv, t);
        }
        t += 1;
    }
    let d = (0..rows.min(cols)).map(|i| a[(i, i)].clone()).filter(|x| !x.is_zero()).collect();
    Snf { d, u, u_inv, v }
}
