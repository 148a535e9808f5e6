//! Exact linear algebra over Q and over number fields, plus multimodular
//! characteristic polynomials of integer matrices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::arith::is_prime;
use super::numfield::{same_field, NFElem, NumberField};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Minimal field interface used by the generic elimination routines.
pub trait FieldElem: Clone {
    fn f_is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_inv(&self) -> Self;
}

impl FieldElem for BigRational {
    fn f_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Self {
        self.recip()
    }
}

impl FieldElem for NFElem {
    fn f_is_zero(&self) -> bool {
        NFElem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        NFElem::zero(self.field())
    }
    fn one_like(&self) -> Self {
        NFElem::one(self.field())
    }
    fn f_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn f_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn f_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn f_neg(&self) -> Self {
        self.neg()
    }
    fn f_inv(&self) -> Self {
        self.inverse().expect("pivot is nonzero")
    }
}

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref<T: FieldElem>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].f_is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].f_inv();
        for j in c..cols {
            m[r][j] = m[r][j].f_mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].f_is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.f_mul(&m[r][j]);
                    m[i][j] = m[i][j].f_sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right kernel basis: one vector per free column, with a 1 in that column.
pub fn kernel<T: FieldElem>(m: &[Vec<T>], cols: usize, one: &T) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let zero = one.zero_like();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[f] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][f].f_neg();
        }
        basis.push(v);
    }
    basis
}

/// Right kernel of a matrix over a number field.
pub fn kernel_over_field(field: &Arc<NumberField>, m: &[Vec<NFElem>]) -> Result<Vec<Vec<NFElem>>> {
    let cols = m.first().map_or(0, |r| r.len());
    for row in m {
        if row.len() != cols {
            return Err(Error::precondition("ragged matrix"));
        }
        if row.iter().any(|e| !same_field(e.field(), field)) {
            return Err(Error::precondition("matrix entries lie in different number fields"));
        }
    }
    Ok(kernel(m, cols, &NFElem::one(field)))
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::precondition("ragged matrix"));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i][j] = v;
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != o.rows {
            return Err(Error::precondition("dimension mismatch in product"));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.entries[i][j] += a * &o.entries[k][j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        rref(&mut a).len()
    }

    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        kernel(&self.entries, self.cols, &BigRational::one())
    }

    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::precondition("determinant of a non-square matrix"));
        }
        Ok(det_rat(&self.entries))
    }
}

/// Determinant by fraction-tracking Gaussian elimination.
pub fn det_rat(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Characteristic polynomial det(xI - A) mod p via Hessenberg reduction.
pub fn charpoly_mod_p(a: &[Vec<i64>], p: u64) -> Vec<u64> {
    use super::modp::inv_mod;
    let n = a.len();
    let pi = p as i64;
    let mut h: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
        .collect();
    let mulm = |x: u64, y: u64| x * y % p;
    // Reduce to upper Hessenberg form by similarity transforms.
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mulm(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            // Row i -= u * row m; column m += u * column i.
            for j in 0..n {
                h[i][j] = (h[i][j] + p - mulm(u, h[m][j])) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + mulm(u, row[i])) % p;
            }
        }
    }
    // chars[k] is the characteristic polynomial of the leading k x k block.
    let mut chars: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // (x - h_mm) * chars[m]
        let prev = &chars[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mulm(h[m][m], c)) % p;
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = mulm(t, h[i + 1][i]);
            let coef = mulm(t, h[i][m]);
            if coef == 0 {
                continue;
            }
            for (k, &c) in chars[i].iter().enumerate() {
                next[k] = (next[k] + p - mulm(coef, c)) % p;
            }
        }
        chars.push(next);
    }
    chars.pop().unwrap()
}

/// Characteristic polynomial of a square integer matrix, computed modulo
/// enough word-size primes to pin down every coefficient, then lifted by CRT.
pub fn charpoly_int(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    // Every eigenvalue has modulus at most the largest absolute row sum B,
    // so each coefficient is bounded by (1 + B)^n.
    let b: u64 = a
        .iter()
        .map(|r| r.iter().map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let bound: BigInt = num_traits::pow(BigInt::from(b + 1), n) * 2u32;
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut p: u64 = (1 << 31) - 1;
    while modulus <= bound {
        while !is_prime(p) {
            p -= 2;
        }
        let r = charpoly_mod_p(a, p);
        let pb = BigInt::from(p);
        let inv = {
            let m = modulus.mod_floor(&pb);
            let m = m.to_u64_digits().1.first().copied().unwrap_or(0);
            BigInt::from(super::modp::inv_mod(m, p))
        };
        for (k, c) in coeffs.iter_mut().enumerate() {
            // x = c (mod modulus), x = r[k] (mod p)
            let diff = (BigInt::from(r[k]) - &*c).mod_floor(&pb);
            let t = (diff * &inv).mod_floor(&pb);
            *c += &modulus * t;
        }
        modulus *= &pb;
        p -= 2;
    }
    let half: BigInt = &modulus >> 1;
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| if c > half { c - &modulus } else { c })
            .collect(),
    )
}

/// Characteristic polynomial over Z of a small matrix by cofactor-free
/// Faddeev-LeVerrier, used as an independent check in tests.
pub fn charpoly_faddeev(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let am = RatMatrix::from_i64(a).expect("square");
    let mut m = RatMatrix::zeros(n, n);
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = am.mul(&m).expect("square");
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let am_k = am.mul(&next).expect("square");
        let tr: BigRational = (0..n).map(|i| am_k.get(i, i).clone()).sum();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
        m = next;
    }
    IntPoly::new(c.into_iter().map(|x| x.to_integer()).collect())
}

/// Integer matrix-vector product.
pub fn mat_vec_i64(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Integer matrix product.
pub fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            let mut out = vec![0i64; n];
            for (k, &x) in r.iter().enumerate() {
                if x != 0 {
                    for j in 0..n {
                        out[j] += x * b[k][j];
                    }
                }
            }
            out
        })
        .collect()
}

/// Whether every absolute value fits comfortably for i64 products.
pub fn max_abs(a: &[Vec<i64>]) -> u64 {
    a.iter()
        .flat_map(|r| r.iter().map(|x| x.unsigned_abs()))
        .max()
        .unwrap_or(0)
}
