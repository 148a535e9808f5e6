//! Definite quaternion algebras B = (a, b | Q) and exact rational arithmetic
//! in the standard basis 1, i, j, k.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::arith::{is_squarefree, kronecker, omega, prime_divisors};

/// The algebra with i^2 = a, j^2 = b, k = ij = -ji.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    pub a: i64,
    pub b: i64,
    /// Finite ramified primes, increasing. Their product is the discriminant.
    pub ramified_primes: Vec<u64>,
}

impl QuaternionAlgebra {
    pub fn discriminant(&self) -> u64 {
        self.ramified_primes.iter().product()
    }
}

/// Hilbert symbol (a, b)_p at a finite prime p.
pub fn hilbert_symbol(a: i64, b: i64, p: u64) -> i32 {
    assert!(a != 0 && b != 0);
    let split = |mut x: i64| {
        let mut v = 0u32;
        while x % p as i64 == 0 {
            x /= p as i64;
            v += 1;
        }
        (v, x)
    };
    let (al, u) = split(a);
    let (be, v) = split(b);
    if p == 2 {
        let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
        let omg = |x: i64| ((x as i128 * x as i128 - 1) / 8).rem_euclid(2) as i64;
        let e = eps(u) * eps(v) + al as i64 * omg(v) + be as i64 * omg(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let pi = p as i64;
        let mut s = if (al * be) % 2 == 1 && (pi - 1) / 2 % 2 == 1 {
            -1
        } else {
            1
        };
        if be % 2 == 1 {
            s *= kronecker(u, pi);
        }
        if al % 2 == 1 {
            s *= kronecker(v, pi);
        }
        s
    }
}

/// Finite primes where (a, b | Q) ramifies.
pub fn ramified_primes(a: i64, b: i64) -> Vec<u64> {
    let mut ps = prime_divisors(2 * a.unsigned_abs() * b.unsigned_abs());
    ps.retain(|&p| hilbert_symbol(a, b, p) == -1);
    ps
}

/// The definite algebra ramified exactly at the primes of N, choosing the
/// smallest (|ab|, |a|) among squarefree negative a, b.
pub fn build_algebra(n: u64) -> Result<QuaternionAlgebra> {
    if n == 0 || !is_squarefree(n) {
        return Err(Error::precondition(format!("level {n} is not squarefree")));
    }
    if omega(n).is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "level {n} has an even number of prime factors; no definite algebra of that discriminant"
        )));
    }
    let target = prime_divisors(n);
    let odd = if n.is_multiple_of(2) { n / 2 } else { n };
    let mut prod = odd;
    loop {
        for aa in 1..=prod {
            if aa * aa > prod {
                break;
            }
            if prod % aa != 0 {
                continue;
            }
            let bb = prod / aa;
            if !is_squarefree(aa) || !is_squarefree(bb) {
                continue;
            }
            let (a, b) = (-(aa as i64), -(bb as i64));
            if ramified_primes(a, b) == target {
                return Ok(QuaternionAlgebra {
                    a,
                    b,
                    ramified_primes: target,
                });
            }
        }
        prod += odd;
    }
}

/// Element of B in the basis 1, i, j, k.
pub type RQuat = [BigRational; 4];

pub fn rq_zero() -> RQuat {
    std::array::from_fn(|_| BigRational::zero())
}

pub fn rq_one() -> RQuat {
    let mut x = rq_zero();
    x[0] = BigRational::one();
    x
}

pub fn rq_from_ints(v: [i64; 4]) -> RQuat {
    std::array::from_fn(|k| BigRational::from_integer(BigInt::from(v[k])))
}

pub fn rq_mul(alg: &QuaternionAlgebra, x: &RQuat, y: &RQuat) -> RQuat {
    let a = BigRational::from_integer(alg.a.into());
    let b = BigRational::from_integer(alg.b.into());
    let ab = &a * &b;
    [
        &x[0] * &y[0] + &a * &x[1] * &y[1] + &b * &x[2] * &y[2] - &ab * &x[3] * &y[3],
        &x[0] * &y[1] + &x[1] * &y[0] - &b * &x[2] * &y[3] + &b * &x[3] * &y[2],
        &x[0] * &y[2] + &x[2] * &y[0] + &a * &x[1] * &y[3] - &a * &x[3] * &y[1],
        &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] - &x[2] * &y[1],
    ]
}

pub fn rq_conj(x: &RQuat) -> RQuat {
    [x[0].clone(), -&x[1], -&x[2], -&x[3]]
}

pub fn rq_trd(x: &RQuat) -> BigRational {
    &x[0] + &x[0]
}

pub fn rq_nrd(alg: &QuaternionAlgebra, x: &RQuat) -> BigRational {
    let a = BigRational::from_integer(alg.a.into());
    let b = BigRational::from_integer(alg.b.into());
    &x[0] * &x[0] - &a * &x[1] * &x[1] - &b * &x[2] * &x[2] + &a * &b * &x[3] * &x[3]
}
