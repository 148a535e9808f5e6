//! Rational interval arithmetic with outward dyadic rounding.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::exactalg::IntPoly;

/// A closed interval [lo, hi] with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

fn round_down(x: &BigRational, prec: u32) -> BigRational {
    let s = pow2(prec);
    let n = (x * BigRational::from_integer(s.clone())).floor().to_integer();
    BigRational::new(n, s)
}

fn round_up(x: &BigRational, prec: u32) -> BigRational {
    let s = pow2(prec);
    let n = (x * BigRational::from_integer(s.clone())).ceil().to_integer();
    BigRational::new(n, s)
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, s: &BigRational) -> Interval {
        self.mul(&Interval::point(s.clone()))
    }

    /// Widen the endpoints to multiples of 2^-prec.
    pub fn round(&self, prec: u32) -> Interval {
        Interval::new(round_down(&self.lo, prec), round_up(&self.hi, prec))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi) / rat(2);
        ratio_to_f64(&m)
    }
}

pub fn ratio_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Bounds for atan(1/m) from the alternating series.
fn atan_inv(m: i64, prec: u32) -> Interval {
    let m2 = BigInt::from(m * m);
    let mut sum = BigRational::zero();
    let mut denom_pow = BigInt::from(m);
    let eps = BigRational::new(BigInt::one(), pow2(prec + 4));
    let mut k = 0i64;
    loop {
        let term = BigRational::new(BigInt::one(), &denom_pow * BigInt::from(2 * k + 1));
        if term < eps {
            // Remainder of an alternating decreasing series is below the next term.
            return Interval::new(&sum - &term, &sum + &term).round(prec + 2);
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        denom_pow *= &m2;
        k += 1;
    }
}

/// An interval containing pi of width about 2^-prec.
pub fn pi(prec: u32) -> Interval {
    let a = atan_inv(5, prec + 6).scale(&rat(16));
    let b = atan_inv(239, prec + 6).scale(&rat(4));
    a.sub(&b).round(prec + 2)
}

/// Intervals containing cos and sin of 2 pi q.
pub fn cos_sin_turns(q: &Ratio<i64>, prec: u32) -> (Interval, Interval) {
    let q = q - q.floor();
    let qb = BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
    if qb.is_zero() {
        return (Interval::point(rat(1)), Interval::zero());
    }
    let x = pi(prec + 8).scale(&(qb * rat(2)));
    // |x| < 7; Lagrange remainder of the Taylor polynomial of degree n is
    // below 7^(n+1) / (n+1)!.
    let mut terms = vec![Interval::point(rat(1))];
    let mut fact = BigInt::one();
    let mut n = 1u32;
    let mut bound;
    loop {
        let next = terms[terms.len() - 1].mul(&x).scale(&BigRational::new(
            BigInt::one(),
            BigInt::from(n),
        ));
        terms.push(next.round(prec + 16));
        fact *= BigInt::from(n + 1);
        bound = BigRational::new(BigInt::from(7).pow(n + 1), fact.clone());
        if bound < BigRational::new(BigInt::one(), pow2(prec + 4)) {
            break;
        }
        n += 1;
    }
    let rem = Interval::new(-bound.clone(), bound);
    let mut c = Interval::zero();
    let mut s = Interval::zero();
    for (k, t) in terms.iter().enumerate() {
        let signed = if (k / 2) % 2 == 0 { t.clone() } else { t.neg() };
        if k % 2 == 0 {
            c = c.add(&signed);
        } else {
            s = s.add(&signed);
        }
    }
    (c.add(&rem).round(prec + 2), s.add(&rem).round(prec + 2))
}

fn rat_poly(f: &IntPoly) -> Vec<BigRational> {
    f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn eval_rat(f: &[BigRational], x: &BigRational) -> BigRational {
    f.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn trim(f: &mut Vec<BigRational>) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

fn rem_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let q = r[r.len() - 1].clone() / &b[db];
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Sturm sequence of a squarefree polynomial.
fn sturm(f: &IntPoly) -> Vec<Vec<BigRational>> {
    let mut seq = vec![rat_poly(f), rat_poly(&f.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].len() <= 1 {
            break;
        }
        let r = rem_rat(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = eval_rat(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The largest real root of a squarefree polynomial, isolated so that
/// subsequent bisection keeps exactly that root inside.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: Vec<BigRational>,
    pub interval: Interval,
}

impl RealRoot {
    pub fn largest(f: &IntPoly) -> Option<RealRoot> {
        let poly = rat_poly(f);
        if f.deg() == 0 {
            return None;
        }
        let lead = f.lead();
        let bound = f
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.abs(), lead.abs()))
            .max()
            .unwrap()
            + rat(1);
        let seq = sturm(f);
        let count = |a: &BigRational, b: &BigRational| sign_changes(&seq, a) - sign_changes(&seq, b);
        let mut lo = -bound.clone();
        let mut hi = bound;
        if count(&lo, &hi) == 0 {
            return None;
        }
        while count(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / rat(2);
            if count(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut root = RealRoot {
            poly,
            interval: Interval::new(lo, hi.clone()),
        };
        if eval_rat(&root.poly, &hi).is_zero() {
            root.interval = Interval::point(hi);
        }
        Some(root)
    }

    /// Bisect until the width is at most 2^-prec.
    pub fn refine(&mut self, prec: u32) {
        let eps = BigRational::new(BigInt::one(), pow2(prec));
        while self.interval.width() > eps {
            let mid = (&self.interval.lo + &self.interval.hi) / rat(2);
            let fm = eval_rat(&self.poly, &mid);
            if fm.is_zero() {
                self.interval = Interval::point(mid);
                return;
            }
            let fh = eval_rat(&self.poly, &self.interval.hi);
            if fm.is_positive() == fh.is_positive() && !fh.is_zero() {
                self.interval.hi = mid;
            } else {
                self.interval.lo = mid;
            }
        }
        self.interval = self.interval.round(prec + 2);
    }
}

/// Value of a polynomial with rational coefficients on an interval (Horner).
pub fn eval_interval(coeffs: &[BigRational], x: &Interval, prec: u32) -> Interval {
    coeffs.iter().rev().fold(Interval::zero(), |acc, c| {
        acc.mul(x).add(&Interval::point(c.clone())).round(prec + 8)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_bounds() {
        let p = pi(60);
        assert!(ratio_to_f64(&p.lo) <= std::f64::consts::PI);
        assert!(ratio_to_f64(&p.hi) >= std::f64::consts::PI);
        assert!(p.width() < BigRational::new(BigInt::one(), pow2(55)));
    }

    #[test]
    fn roots_of_unity() {
        for (n, d) in [(1i64, 3i64), (1, 4), (2, 5), (5, 7), (0, 1)] {
            let q = Ratio::new(n, d);
            let (c, s) = cos_sin_turns(&q, 64);
            let t = 2.0 * std::f64::consts::PI * n as f64 / d as f64;
            assert!((c.mid_f64() - t.cos()).abs() < 1e-12);
            assert!((s.mid_f64() - t.sin()).abs() < 1e-12);
            assert!(c.width() < BigRational::new(BigInt::one(), pow2(60)));
        }
        let (c, _) = cos_sin_turns(&Ratio::new(1, 4), 64);
        assert!(c.contains_zero());
    }

    #[test]
    fn largest_root() {
        // x^2 + 2x - 4 has roots -1 +- sqrt 5.
        let f = IntPoly::from_i64s(&[-4, 2, 1]);
        let mut r = RealRoot::largest(&f).unwrap();
        r.refine(50);
        assert!((r.interval.mid_f64() - (5f64.sqrt() - 1.0)).abs() < 1e-12);
        let f = IntPoly::from_i64s(&[3, 1]);
        let mut r = RealRoot::largest(&f).unwrap();
        r.refine(50);
        assert_eq!(r.interval, Interval::point(rat(-3)));
        assert!(RealRoot::largest(&IntPoly::from_i64s(&[1, 0, 1])).is_none());
    }
}
