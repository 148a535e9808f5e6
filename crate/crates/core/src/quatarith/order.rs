//! Maximal orders. Elements of an order are handled as integer coordinate
//! vectors in a fixed Z-basis e_0 = 1, e_1, e_2, e_3 with integer
//! structure constants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::{rq_conj, rq_mul, rq_nrd, rq_one, rq_trd, QuaternionAlgebra, RQuat};
use super::lattice::{Mat4, Vec4};
use crate::error::{Error, Result};
use crate::exactalg::arith::prime_divisors;
use crate::exactalg::matrix::det_rat;

/// A maximal order with its multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaximalOrder {
    pub algebra: QuaternionAlgebra,
    /// Basis rows in the 1, i, j, k frame; row 0 is 1.
    #[serde(with = "crate::exactalg::ratstr::quat_rows")]
    basis: Vec<RQuat>,
    /// e_i e_j = sum_k mult[i][j][k] e_k.
    mult: [[[i64; 4]; 4]; 4],
    /// Row i holds the coordinates of conj(e_i).
    conj: Mat4,
    /// Gram matrix of the reduced trace form trd(x conj(y)) = 2 <x, y>.
    gram: Mat4,
}

/// Lattice in B given by generators; stored as a row HNF of the scaled
/// integer coordinates divided by a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatLattice {
    den: BigInt,
    rows: Vec<[BigInt; 4]>,
}

fn bigint_hnf(mut gens: Vec<[BigInt; 4]>) -> Vec<[BigInt; 4]> {
    let mut out = Vec::new();
    for c in 0..4 {
        let mut pivot: Option<[BigInt; 4]> = None;
        let mut rest = Vec::new();
        for mut r in gens.drain(..) {
            if r[c].is_zero() {
                if r.iter().any(|x| !x.is_zero()) {
                    rest.push(r);
                }
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    let (g, u, v) = (e.gcd, e.x, e.y);
                    let (pc, rc) = (&p[c] / &g, &r[c] / &g);
                    let mut np: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
                    for k in 0..4 {
                        np[k] = &u * &p[k] + &v * &r[k];
                        r[k] = &rc * &p[k] - &pc * &r[k];
                    }
                    *p = np;
                    if r.iter().any(|x| !x.is_zero()) {
                        rest.push(r);
                    }
                }
            }
        }
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push((c, p));
        }
        gens = rest;
    }
    // Reduce above pivots.
    for t in 1..out.len() {
        let (c, piv) = (out[t].0, out[t].1.clone());
        for s in 0..t {
            let q = out[s].1[c].div_floor(&piv[c]);
            if !q.is_zero() {
                for k in 0..4 {
                    out[s].1[k] -= &q * &piv[k];
                }
            }
        }
    }
    out.into_iter().map(|(_, r)| r).collect()
}

impl RatLattice {
    fn from_gens(gens: &[RQuat]) -> Self {
        let den = gens.iter().flat_map(|g| g.iter()).fold(BigInt::one(), |acc, c| {
            acc.lcm(c.denom())
        });
        let ints: Vec<[BigInt; 4]> = gens
            .iter()
            .map(|g| std::array::from_fn(|k| (&g[k] * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let rows = bigint_hnf(ints);
        // Normalize the denominator away where possible.
        let content = rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(den.clone(), |acc, c| acc.gcd(c));
        RatLattice {
            den: &den / &content,
            rows: rows
                .into_iter()
                .map(|r| std::array::from_fn(|k| &r[k] / &content))
                .collect(),
        }
    }

    fn basis(&self) -> Vec<RQuat> {
        self.rows
            .iter()
            .map(|r| std::array::from_fn(|k| BigRational::new(r[k].clone(), self.den.clone())))
            .collect()
    }
}

fn is_integral(alg: &QuaternionAlgebra, x: &RQuat) -> bool {
    rq_trd(x).is_integer() && rq_nrd(alg, x).is_integer()
}

/// Reduced discriminant of the lattice spanned by `basis` (assumed an order).
fn reduced_disc(alg: &QuaternionAlgebra, basis: &[RQuat]) -> BigInt {
    let m: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| rq_trd(&rq_mul(alg, x, y))).collect())
        .collect();
    let d = det_rat(&m).abs();
    debug_assert!(d.is_integer());
    let d = d.to_integer();
    let r = d.sqrt();
    debug_assert_eq!(&r * &r, d);
    r
}

/// Close the lattice under multiplication. Returns None when a non-integral
/// element appears, i.e. no order contains the generators.
fn ring_closure(alg: &QuaternionAlgebra, gens: &[RQuat]) -> Option<RatLattice> {
    let mut lat = RatLattice::from_gens(gens);
    for _ in 0..20 {
        let basis = lat.basis();
        if basis.len() != 4 || !basis.iter().all(|x| is_integral(alg, x)) {
            return None;
        }
        let mut all = basis.clone();
        for x in &basis {
            for y in &basis {
                let z = rq_mul(alg, x, y);
                if !is_integral(alg, &z) {
                    return None;
                }
                all.push(z);
            }
        }
        let next = RatLattice::from_gens(&all);
        if next == lat {
            return Some(lat);
        }
        lat = next;
    }
    None
}

fn std_order() -> Vec<RQuat> {
    (0..4)
        .map(|k| {
            let mut v = [0i64; 4];
            v[k] = 1;
            super::algebra::rq_from_ints(v)
        })
        .collect()
}

/// Coordinates of x in the basis `basis` (must lie in its Q-span).
fn coords(basis: &[RQuat], x: &RQuat) -> Vec<BigRational> {
    // Solve c * B = x for the row vector c.
    let n = basis.len();
    let mut m: Vec<Vec<BigRational>> = (0..4)
        .map(|k| {
            let mut row: Vec<BigRational> = (0..n).map(|i| basis[i][k].clone()).collect();
            row.push(x[k].clone());
            row
        })
        .collect();
    let piv = crate::exactalg::matrix::rref(&mut m);
    let mut c = vec![BigRational::zero(); n];
    for (r, &pc) in piv.iter().enumerate() {
        if pc < n {
            c[pc] = m[r][n].clone();
        }
    }
    c
}

fn to_i64(q: &BigRational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::defect(format!("{what}: non-integral structure constant {q}")));
    }
    q.to_integer()
        .to_i64()
        .ok_or_else(|| Error::defect(format!("{what}: structure constant overflow")))
}

impl MaximalOrder {
    /// A maximal order of `alg`, grown from Z<1, i, j, k> by adjoining
    /// elements of (1/p)O at each prime p where the discriminant is too big.
    pub fn new(alg: &QuaternionAlgebra) -> Result<Self> {
        let target = BigInt::from(alg.discriminant());
        let mut basis = std_order();
        let mut disc = reduced_disc(alg, &basis);
        while disc != target {
            if !(&disc % &target).is_zero() {
                return Err(Error::defect(format!(
                    "order discriminant {disc} not a multiple of {target}"
                )));
            }
            let excess = (&disc / &target).to_u64().ok_or_else(|| Error::defect("discriminant overflow"))?;
            let p = prime_divisors(excess)[0];
            let bigger = enlarge_at(alg, &basis, p)
                .ok_or_else(|| Error::defect(format!("could not enlarge order at {p}")))?;
            basis = bigger;
            disc = reduced_disc(alg, &basis);
        }
        Self::from_basis(alg, basis)
    }

    fn from_basis(alg: &QuaternionAlgebra, basis: Vec<RQuat>) -> Result<Self> {
        // Put 1 first: HNF with the 1-coordinate last leaves (0, 0, 0, 1) as
        // the final row because O meets Q in Z.
        let perm = |x: &RQuat| -> RQuat { [x[1].clone(), x[2].clone(), x[3].clone(), x[0].clone()] };
        let unperm = |x: &RQuat| -> RQuat { [x[3].clone(), x[0].clone(), x[1].clone(), x[2].clone()] };
        let lat = RatLattice::from_gens(&basis.iter().map(perm).collect::<Vec<_>>());
        let mut b: Vec<RQuat> = lat.basis().iter().map(unperm).collect();
        if b.len() != 4 || b[3] != rq_one() {
            return Err(Error::defect("order basis does not contain 1 as a primitive vector"));
        }
        b.rotate_right(1);
        let mut mult = [[[0i64; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let c = coords(&b, &rq_mul(alg, &b[i], &b[j]));
                for k in 0..4 {
                    mult[i][j][k] = to_i64(&c[k], "multiplication")?;
                }
            }
        }
        let mut conj = [[0i64; 4]; 4];
        for i in 0..4 {
            let c = coords(&b, &rq_conj(&b[i]));
            for k in 0..4 {
                conj[i][k] = to_i64(&c[k], "conjugation")?;
            }
        }
        let mut gram = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = rq_trd(&rq_mul(alg, &b[i], &rq_conj(&b[j])));
                gram[i][j] = to_i64(&t, "trace form")?;
            }
        }
        Ok(MaximalOrder {
            algebra: alg.clone(),
            basis: b,
            mult,
            conj,
            gram,
        })
    }

    pub fn level(&self) -> u64 {
        self.algebra.discriminant()
    }

    pub fn basis(&self) -> &[RQuat] {
        &self.basis
    }

    pub fn gram(&self) -> &Mat4 {
        &self.gram
    }

    pub fn mult_table(&self) -> &[[[i64; 4]; 4]; 4] {
        &self.mult
    }

    pub fn mul(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        let mut acc = [0i128; 4];
        for i in 0..4 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if y[j] == 0 {
                    continue;
                }
                let s = x[i] as i128 * y[j] as i128;
                for k in 0..4 {
                    acc[k] += s * self.mult[i][j][k] as i128;
                }
            }
        }
        acc.map(|v| i64::try_from(v).expect("order element coordinates overflow i64"))
    }

    pub fn conj(&self, x: &Vec4) -> Vec4 {
        let mut acc = [0i128; 4];
        for i in 0..4 {
            for k in 0..4 {
                acc[k] += x[i] as i128 * self.conj[i][k] as i128;
            }
        }
        acc.map(|v| i64::try_from(v).expect("order element coordinates overflow i64"))
    }

    pub fn nrd(&self, x: &Vec4) -> i128 {
        let mut s = 0i128;
        for i in 0..4 {
            for j in 0..4 {
                s += x[i] as i128 * self.gram[i][j] as i128 * x[j] as i128;
            }
        }
        s / 2
    }

    pub fn trd(&self, x: &Vec4) -> i128 {
        // trd(x) = <x, 1> in the trace form, and e_0 = 1.
        (0..4).map(|i| x[i] as i128 * self.gram[i][0] as i128).sum()
    }

    /// The element in the 1, i, j, k frame.
    pub fn to_rquat(&self, x: &Vec4) -> RQuat {
        let mut out = super::algebra::rq_zero();
        for i in 0..4 {
            for k in 0..4 {
                out[k] += &self.basis[i][k] * BigRational::from_integer(x[i].into());
            }
        }
        out
    }

    /// The left order of a right O-ideal, I conj(I) / nrd(I).
    pub fn left_order(&self, i: &super::ideal::RightIdeal) -> Result<MaximalOrder> {
        let (rows, _) = i.product_conj(self, i)?;
        let n = BigRational::from_integer(i.norm.into());
        let basis: Vec<RQuat> = rows
            .iter()
            .map(|r| self.to_rquat(r).map(|c| c / &n))
            .collect();
        let o = Self::from_basis(&self.algebra, basis)?;
        if o.discriminant() != BigInt::from(self.level()) {
            return Err(Error::defect("left order is not maximal"));
        }
        Ok(o)
    }

    /// Reduced discriminant recomputed from the Gram matrix of the trace form.
    pub fn discriminant(&self) -> BigInt {
        reduced_disc(&self.algebra, &self.basis)
    }

    /// Two-sided ideal of reduced norm p for a ramified prime p, as a
    /// generating set in order coordinates: the elements of norm divisible
    /// by p.
    pub fn ramified_prime_ideal(&self, p: u64) -> Result<Vec<Vec4>> {
        if !self.algebra.ramified_primes.contains(&p) {
            return Err(Error::precondition(format!("{p} does not ramify")));
        }
        let pi = p as i64;
        let mut gens: Vec<Vec4> = (0..4)
            .map(|k| {
                let mut v = [0i64; 4];
                v[k] = pi;
                v
            })
            .collect();
        if p == 2 {
            for m in 1..16i64 {
                let x = [m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1];
                if self.nrd(&x) % 2 == 0 {
                    gens.push(x);
                }
            }
        } else {
            // Radical of the trace form mod p.
            gens.extend(kernel_mod_p(&self.gram, pi));
        }
        Ok(gens)
    }
}

/// Basis of the kernel of a symmetric integer matrix modulo an odd prime.
fn kernel_mod_p(g: &Mat4, p: i64) -> Vec<Vec4> {
    use crate::exactalg::modp::inv_mod;
    let mut m: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..4 {
        let Some(r) = (row..4).find(|&r| m[r][c] != 0) else { continue };
        m.swap(row, r);
        let inv = inv_mod(m[row][c] as u64, p as u64) as i64;
        for k in 0..4 {
            m[row][k] = m[row][k] * inv % p;
        }
        for r2 in 0..4 {
            if r2 != row && m[r2][c] != 0 {
                let f = m[r2][c];
                for k in 0..4 {
                    m[r2][k] = (m[r2][k] - f * m[row][k]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let mut out = Vec::new();
    for f in (0..4).filter(|c| !pivots.contains(c)) {
        let mut v = [0i64; 4];
        v[f] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (-m[r][f]).rem_euclid(p);
        }
        out.push(v);
    }
    out
}

/// Find an order strictly containing `basis` with index a power of p.
fn enlarge_at(alg: &QuaternionAlgebra, basis: &[RQuat], p: u64) -> Option<Vec<RQuat>> {
    let pr = BigRational::from_integer(BigInt::from(p));
    let pi = p as i64;
    let total = pi.pow(4);
    for code in 1..total {
        let c = [code % pi, code / pi % pi, code / (pi * pi) % pi, code / (pi * pi * pi)];
        let mut x = super::algebra::rq_zero();
        for i in 0..4 {
            if c[i] != 0 {
                for k in 0..4 {
                    x[k] += &basis[i][k] * BigRational::from_integer(c[i].into()) / &pr;
                }
            }
        }
        if !is_integral(alg, &x) {
            continue;
        }
        let mut gens = basis.to_vec();
        gens.push(x);
        if let Some(lat) = ring_closure(alg, &gens) {
            return Some(lat.basis());
        }
    }
    None
}
