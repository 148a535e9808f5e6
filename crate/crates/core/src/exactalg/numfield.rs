//! Number fields Q[x]/(c(x)) and their elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_int_poly;
use super::poly::{write_poly, IntPoly};
use crate::error::{Error, Result};

/// A number field given by a monic irreducible integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumberField {
    modulus: IntPoly,
}

impl NumberField {
    /// Builds the field, checking that `modulus` is monic and irreducible.
    pub fn new(modulus: IntPoly) -> Result<Arc<Self>> {
        if modulus.deg() == 0 || !modulus.is_monic() {
            return Err(Error::precondition(format!(
                "field modulus must be monic of positive degree, got {modulus}"
            )));
        }
        let fs = factor_int_poly(&modulus)?;
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(Error::precondition(format!("{modulus} is reducible")));
        }
        Ok(Arc::new(NumberField { modulus }))
    }

    /// The field Q itself, presented as Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            modulus: IntPoly::from_i64s(&[0, 1]),
        })
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }
}

/// Element of a number field, stored as a reduced polynomial in the
/// generator with `degree` rational coefficients.
#[derive(Clone, Debug)]
pub struct NFElem {
    field: Arc<NumberField>,
    rep: Vec<BigRational>,
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && same_field(&self.field, &other.field)
    }
}

impl Eq for NFElem {}

pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.modulus == b.modulus
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduce a rational polynomial modulo a monic integer polynomial.
fn reduce(mut a: Vec<BigRational>, m: &IntPoly) -> Vec<BigRational> {
    let d = m.deg();
    let mc: Vec<BigRational> = m
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    for i in (d..a.len()).rev() {
        if a[i].is_zero() {
            continue;
        }
        let c = a[i].clone();
        for j in 0..=d {
            let t = &c * &mc[j];
            a[i - d + j] -= t;
        }
    }
    a.resize(d, BigRational::zero());
    a
}

fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Quotient and remainder of rational polynomials.
fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead_inv = b[db].recip();
    while r.len() > db {
        let i = r.len() - 1;
        let c = &r[i] * &lead_inv;
        for j in 0..=db {
            let t = &c * &b[j];
            r[i - db + j] -= t;
        }
        q[i - db] = c;
        r.truncate(i);
        r = trim(r);
    }
    (trim(q), r)
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

impl NFElem {
    pub fn new(field: &Arc<NumberField>, rep: Vec<BigRational>) -> Self {
        let rep = reduce(rep, &field.modulus);
        NFElem {
            field: field.clone(),
            rep,
        }
    }

    pub fn from_ints(field: &Arc<NumberField>, cs: &[BigInt]) -> Self {
        Self::new(
            field,
            cs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        )
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        Self::new(field, vec![q])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of x, a root of the modulus.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![rat(0), rat(1)])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coefficients in the power basis, length equal to the field degree.
    pub fn rep(&self) -> &[BigRational] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, c)| {
            if i == 0 {
                c.is_one()
            } else {
                c.is_zero()
            }
        })
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.rep.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.rep.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "number field mismatch: {} vs {}",
            self.field.modulus,
            other.field.modulus
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        NFElem {
            field: self.field.clone(),
            rep: self.rep.iter().zip(&other.rep).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        NFElem {
            field: self.field.clone(),
            rep: self.rep.iter().zip(&other.rep).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        NFElem {
            field: self.field.clone(),
            rep: self.rep.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::new(&self.field, mul_q(&self.rep, &other.rep))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        NFElem {
            field: self.field.clone(),
            rep: self.rep.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&rat(s))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::precondition("inverse of zero in a number field"));
        }
        let m: Vec<BigRational> = self
            .field
            .modulus
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m).
        let (mut r0, mut r1) = (m, trim(self.rep.clone()));
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![rat(1)]);
        while r1.len() > 1 {
            let (q, r) = divrem_q(&r0, &r1);
            let s = sub_q(&s0, &mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return Err(Error::defect("non-invertible element: modulus not irreducible"));
        }
        let c = r1[0].recip();
        Ok(Self::new(&self.field, s1.into_iter().map(|x| x * &c).collect()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Matrix of multiplication by this element on the power basis
    /// (column j holds self * x^j).
    pub fn mult_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let x = Self::generator(&self.field);
        for _ in 0..d {
            cols.push(cur.rep.clone());
            cur = cur.mul(&x);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Trace from K down to Q.
    pub fn trace(&self) -> BigRational {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Norm from K down to Q.
    pub fn norm(&self) -> BigRational {
        super::matrix::det_rat(&self.mult_matrix())
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.rep
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    /// Integer coefficients when the denominator is 1.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.rep.iter().all(|c| c.is_integer()) {
            Some(self.rep.iter().map(|c| c.to_integer()).collect())
        } else {
            None
        }
    }

    /// Sign of the highest nonzero power-basis coefficient.
    pub fn leading_sign(&self) -> i32 {
        match self.rep.iter().rev().find(|c| !c.is_zero()) {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Render with the given variable name, e.g. "-2*a - 2".
    pub fn to_string_var(&self, var: &str) -> String {
        let mut s = String::new();
        write_poly(&mut s, &self.rep, var).expect("string write");
        s
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("a"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64s(&[1, 3, 1])).unwrap()
    }

    #[test]
    fn generator_satisfies_modulus() {
        let k = golden();
        let a = NFElem::generator(&k);
        let v = a.mul(&a).add(&a.scale_int(3)).add(&NFElem::one(&k));
        assert!(v.is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let k = golden();
        let a = NFElem::generator(&k);
        let x = a.scale_int(2).add(&NFElem::from_int(&k, 5));
        let y = x.inverse().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn trace_and_norm() {
        let k = golden();
        let a = NFElem::generator(&k);
        assert_eq!(a.trace(), rat(-3));
        assert_eq!(a.norm(), rat(1));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(NumberField::new(IntPoly::from_i64s(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(IntPoly::from_i64s(&[1, 2])).is_err());
    }

    #[test]
    fn rationals_field() {
        let q = NumberField::rationals();
        let x = NFElem::from_int(&q, 6);
        assert_eq!(x.inverse().unwrap().as_rational(), Some(BigRational::new(1.into(), 6.into())));
    }
}
