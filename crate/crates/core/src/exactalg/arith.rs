//! Small-integer number theory: factorization, primes, Kronecker symbols.

use crate::error::{Error, Result};

/// Prime factorization by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors in ascending order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> usize {
    factorize(n).len()
}

/// Primes in `[lo, hi)`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..hi).filter(|&n| is_prime(n)).collect()
}

/// The next prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let cur = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Integer square root (floor) of a nonnegative value.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

/// Legendre/Jacobi symbol (a | n) for odd positive n.
fn jacobi(a: i64, n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a | n), completely multiplicative in n with the usual
/// conventions at 2 and at -1.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i32> {
    if n == 0 {
        return Err(Error::precondition("kronecker symbol needs n != 0"));
    }
    let mut n = n;
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    n >>= v;
    if v > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        let r = a.rem_euclid(8);
        if v % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    Ok(result * jacobi(a, n))
}

/// Kronecker symbol for a known-valid (nonzero) modulus.
pub fn kronecker(a: i64, n: i64) -> i32 {
    kronecker_symbol(a, n).expect("nonzero modulus")
}

/// Discriminant of Q(sqrt(-d)) for squarefree positive d.
pub fn imag_quadratic_discriminant(d: u64) -> i64 {
    let d = d as i64;
    if d % 4 == 3 {
        -d
    } else {
        -4 * d
    }
}

/// Whether `disc` is a fundamental discriminant.
pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    let m = disc.rem_euclid(4);
    if m == 1 {
        is_squarefree(disc.unsigned_abs())
    } else if m == 0 {
        let q = disc / 4;
        let r = q.rem_euclid(4);
        (r == 2 || r == 3) && is_squarefree(q.unsigned_abs())
    } else {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_legendre(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 7), -1);
        assert_eq!(kronecker(-7, 3), -1);
        assert_eq!(kronecker(-7, 5), -1);
        for a in -20..20 {
            assert_eq!(kronecker(a, 1), 1);
        }
    }

    #[test]
    fn kronecker_matches_residue_test() {
        for p in primes_between(3, 100) {
            for a in -99..100 {
                assert_eq!(kronecker(a, p as i64), brute_legendre(a, p as i64), "({a}|{p})");
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                for n in [-15i64, -8, -3, 1, 2, 4, 6, 7, 12, 21, 40] {
                    assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
                }
            }
        }
        for a in [-7i64, -4, -3, 5, 8, 13] {
            for m in 1i64..30 {
                for n in 1i64..30 {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
                }
            }
        }
    }

    #[test]
    fn zero_modulus_rejected() {
        assert!(kronecker_symbol(3, 0).is_err());
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(prime_divisors(154), vec![2, 7, 11]);
        assert!(is_squarefree(105));
        assert!(!is_squarefree(12));
        assert_eq!(omega(105), 3);
        assert_eq!(imag_quadratic_discriminant(11), -11);
        assert_eq!(imag_quadratic_discriminant(13), -52);
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-84));
        assert!(!is_fundamental_discriminant(-12));
    }
}
