//! Polynomial arithmetic over a prime field F_p with p < 2^31.

use num_bigint::BigUint;
use rand::Rng;

pub type PolyFp = Vec<u64>;

fn trim(mut a: PolyFp) -> PolyFp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 31));
        Fp { p }
    }

    pub fn reduce(&self, a: &[i64]) -> PolyFp {
        trim(a.iter().map(|&c| c.rem_euclid(self.p as i64) as u64).collect())
    }

    pub fn add(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(out)
    }

    pub fn scale(&self, a: &PolyFp, s: u64) -> PolyFp {
        trim(a.iter().map(|&c| c * (s % self.p) % self.p).collect())
    }

    pub fn monic(&self, a: &PolyFp) -> PolyFp {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, inv_mod(lc, self.p)),
        }
    }

    pub fn divrem(&self, a: &PolyFp, b: &PolyFp) -> (PolyFp, PolyFp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = inv_mod(*b.last().unwrap(), self.p);
        let db = b.len() - 1;
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for i in (db..r.len()).rev() {
            let c = r[i] * inv % self.p;
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for j in 0..=db {
                r[i - db + j] = (r[i - db + j] + self.p - c * b[j] % self.p) % self.p;
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &PolyFp, b: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: (g, s, t) with s*a + t*b = g monic.
    pub fn ext_gcd(&self, a: &PolyFp, b: &PolyFp) -> (PolyFp, PolyFp, PolyFp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = inv_mod(*r0.last().expect("nonzero gcd"), self.p);
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyFp) -> PolyFp {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * (i as u64 % self.p) % self.p)
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &PolyFp, b: &PolyFp, m: &PolyFp) -> PolyFp {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, base: &PolyFp, e: &BigUint, m: &PolyFp) -> PolyFp {
        let mut result = self.rem(&vec![1u64], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.mulmod(&result, &result, m);
            if e.bit(i) {
                result = self.mulmod(&result, &b, m);
            }
        }
        result
    }

    pub fn is_squarefree(&self, f: &PolyFp) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic square-free polynomial:
    /// pairs (product of all irreducible factors of degree d, d).
    pub fn distinct_degree(&self, f: &PolyFp) -> Vec<(PolyFp, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
    /// equal degree d. Requires odd p.
    pub fn equal_degree<R: Rng>(&self, f: &PolyFp, d: usize, rng: &mut R) -> Vec<PolyFp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: PolyFp = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let g = self.gcd(&self.sub(&b, &vec![1u64]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Full factorization of a monic square-free polynomial into monic
    /// irreducibles, sorted.
    pub fn factor_squarefree<R: Rng>(&self, f: &PolyFp, rng: &mut R) -> Vec<PolyFp> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}
