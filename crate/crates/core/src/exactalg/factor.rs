//! Factorization of integer polynomials over Q: modular factorization,
//! quadratic Hensel lifting and Zassenhaus recombination.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, PolyFp};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Irreducible factorization over Q of a nonzero integer polynomial.
///
/// Factors are primitive with positive leading coefficient (monic whenever
/// the input is monic) and sorted by degree, then by coefficients from the
/// constant term upward. The product of `factor^multiplicity` equals the
/// input up to its integer content and sign. Constants yield an empty list.
pub fn factor_int_poly(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::precondition("cannot factor the zero polynomial"));
    }
    let f = p.primitive_part();
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let s = f.squarefree_part();
    let mut out = Vec::new();
    for g in factor_squarefree(&s) {
        let mut m = 0;
        let mut rest = f.clone();
        while let Some(q) = rest.div_exact(&g) {
            rest = q;
            m += 1;
        }
        out.push((g, m));
    }
    out.sort_by(|a, b| poly_order(&a.0, &b.0));
    Ok(out)
}

/// Deterministic ordering: degree first, then coefficients lowest first.
pub fn poly_order(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Factor a primitive square-free polynomial of positive degree.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let a = f.lead();
    if a.is_one() {
        let mut v = factor_monic(f);
        v.sort_by(poly_order);
        return v;
    }
    // F(y) = a^(n-1) f(y / a) is monic; map factors back via y = a x.
    let monic = IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == n {
                    BigInt::one()
                } else {
                    c * num_traits::pow(a.clone(), n - 1 - i)
                }
            })
            .collect(),
    );
    let mut v: Vec<IntPoly> = factor_monic(&monic)
        .into_iter()
        .map(|g| g.compose_scale(&a).primitive_part())
        .collect();
    v.sort_by(poly_order);
    v
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| super::arith::is_prime(n))
}

fn to_fp(fp: &Fp, f: &IntPoly) -> PolyFp {
    let p = BigInt::from(fp.p);
    let mut v: PolyFp = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&p).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Subset sums of factor degrees, as a bitset over 0..=n.
fn degree_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

fn factor_monic(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_ed0f_ac70);
    // Try several primes, keep the one with the fewest modular factors.
    let mut best: Option<(Fp, Vec<PolyFp>)> = None;
    let mut feasible = vec![true; n + 1];
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 6 {
            break;
        }
        let fp = Fp::new(p);
        let fm = to_fp(&fp, f);
        if fm.len() != n + 1 || !fp.is_squarefree(&fm) {
            continue;
        }
        tried += 1;
        let facs = fp.factor_squarefree(&fm, &mut rng);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        let degs: Vec<usize> = facs.iter().map(|g| g.len() - 1).collect();
        let sums = degree_sums(&degs, n);
        for (i, ok) in feasible.iter_mut().enumerate() {
            *ok &= sums[i];
        }
        if (1..n).all(|d| !feasible[d]) {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
    }
    let (fp, facs) = best.expect("some prime keeps the polynomial square-free");

    // Mignotte-style coefficient bound for any factor.
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) << n;
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    let mut steps = 0;
    while modulus <= &bound * 2u32 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_lift(f, &fp, &facs, steps);

    recombine(f, lifted, &modulus, &feasible)
}

// --- polynomials modulo a big integer, coefficients in [0, m) ---

type PolyM = Vec<BigInt>;

fn trim_m(mut a: PolyM) -> PolyM {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn reduce_m(a: &[BigInt], m: &BigInt) -> PolyM {
    trim_m(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add_m(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_m(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub_m(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim_m(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn mul_m(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce_m(&out, m)
}

/// Division by a monic polynomial modulo m.
fn divrem_m(a: &PolyM, b: &PolyM, m: &BigInt) -> (PolyM, PolyM) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = (&r[i - db + j] - &c * &b[j]).mod_floor(m);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim_m(q), trim_m(r))
}

fn from_fp(a: &PolyFp) -> PolyM {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m)
/// to the same relations mod m^2. Both g and h are monic.
fn hensel_step(
    f: &PolyM,
    g: &PolyM,
    h: &PolyM,
    s: &PolyM,
    t: &PolyM,
    m: &BigInt,
) -> (PolyM, PolyM, PolyM, PolyM) {
    let m2 = m * m;
    let e = sub_m(f, &mul_m(g, h, &m2), &m2);
    let (q, r) = divrem_m(&mul_m(s, &e, &m2), h, &m2);
    let g2 = add_m(&add_m(g, &mul_m(t, &e, &m2), &m2), &mul_m(&q, g, &m2), &m2);
    let h2 = add_m(h, &r, &m2);
    let b = sub_m(
        &add_m(&mul_m(s, &g2, &m2), &mul_m(t, &h2, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = divrem_m(&mul_m(s, &b, &m2), &h2, &m2);
    let s2 = sub_m(s, &d, &m2);
    let t2 = sub_m(&sub_m(t, &mul_m(t, &b, &m2), &m2), &mul_m(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lift a monic modular factorization of monic f to modulus p^(2^steps).
fn hensel_lift(f: &IntPoly, fp: &Fp, facs: &[PolyFp], steps: usize) -> Vec<PolyM> {
    let p = BigInt::from(fp.p);
    let mut target = f.coeffs().to_vec();
    let mut out = Vec::new();
    for (idx, g0) in facs.iter().enumerate() {
        if idx + 1 == facs.len() {
            let m = num_traits::pow(p.clone(), 1 << steps);
            out.push(reduce_m(&target, &m));
            break;
        }
        let h0 = facs[idx + 1..]
            .iter()
            .fold(vec![1u64], |acc, x| fp.mul(&acc, x));
        let (_, s0, t0) = fp.ext_gcd(g0, &h0);
        let (mut g, mut h, mut s, mut t) = (from_fp(g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
        let mut m = p.clone();
        for _ in 0..steps {
            let fm = reduce_m(&target, &(&m * &m));
            (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
            m = &m * &m;
        }
        out.push(g);
        target = h;
    }
    out
}

fn symmetric(a: &PolyM, m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(f: &IntPoly, lifted: Vec<PolyM>, m: &BigInt, feasible: &[bool]) -> Vec<IntPoly> {
    let mut remaining = lifted;
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut k = 1;
    'outer: while 2 * k <= remaining.len() {
        let r = remaining.len();
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            let deg: usize = comb.iter().map(|&i| remaining[i].len() - 1).sum();
            let constant_ok = {
                let c = comb
                    .iter()
                    .fold(BigInt::one(), |acc, &i| (acc * &remaining[i][0]).mod_floor(m));
                let c = symmetric(&vec![c], m).coeff(0);
                let f0 = rest.coeff(0);
                f0.is_zero() || (!c.is_zero() && (&f0 % &c).is_zero())
            };
            if feasible.get(deg).copied().unwrap_or(true) && constant_ok {
                let prod = comb
                    .iter()
                    .fold(vec![BigInt::one()], |acc, &i| mul_m(&acc, &remaining[i], m));
                let g = symmetric(&prod, m);
                if let Some(q) = rest.div_exact(&g) {
                    found.push(g);
                    rest = q;
                    for &i in comb.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            if !next_combination(&mut comb, r) {
                break;
            }
        }
        k += 1;
    }
    if rest.deg() > 0 {
        found.push(rest);
    }
    debug_assert!(found.iter().all(|g| g.lead().sign() == Sign::Plus));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(IntPoly, usize)]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| &a * g)
        })
    }

    #[test]
    fn difference_of_squares() {
        let f = IntPoly::from_i64s(&[-1, 0, 1]);
        let fs = factor_int_poly(&f).unwrap();
        assert_eq!(
            fs,
            vec![(IntPoly::from_i64s(&[-1, 1]), 1), (IntPoly::from_i64s(&[1, 1]), 1)]
        );
    }

    #[test]
    fn irreducible_quadratic() {
        let f = IntPoly::from_i64s(&[1, 3, 1]);
        assert_eq!(factor_int_poly(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn zero_rejected() {
        assert!(factor_int_poly(&IntPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_is_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        let f = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_int_poly(&f).unwrap(), vec![(f.clone(), 1)]);
    }

    #[test]
    fn mixed_product_with_multiplicity() {
        let a = IntPoly::from_i64s(&[1, 0, -10, 0, 1]);
        let b = IntPoly::from_i64s(&[-2, 0, 0, 1]);
        let c = IntPoly::from_i64s(&[3, 2]);
        let f = &(&(&a * &b) * &c) * &c;
        let fs = factor_int_poly(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f);
        assert!(fs.iter().any(|(g, m)| g == &c && *m == 2));
    }

    #[test]
    fn many_linear_factors() {
        let mut f = IntPoly::one();
        for r in -6..=6 {
            f = &f * &IntPoly::from_i64s(&[-r, 1]);
        }
        let g = IntPoly::from_i64s(&[5, 0, 1, 0, 0, 1]);
        let f = &f * &g;
        let fs = factor_int_poly(&f).unwrap();
        assert_eq!(fs.len(), 14);
        assert_eq!(product(&fs), f);
    }
}
