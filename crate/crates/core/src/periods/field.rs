//! Imaginary quadratic fields through their binary quadratic forms.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::arith::{is_fundamental_discriminant, prime_divisors};
use crate::exactalg::forms::{reduced_forms, Form};

/// K = Q(sqrt(-D)) with its class group in an explicit basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IQField {
    pub d: u64,
    /// Reduced forms, one per class; index 0 is the identity.
    pub forms: Vec<Form>,
    /// mul[s][t] is the index of forms[s] * forms[t].
    pub mul: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    /// Basis elements g_k with orders n_1 | n_2 | ... (all > 1).
    pub generators: Vec<usize>,
    pub invariant_factors: Vec<u64>,
    /// Exponents of each class in the basis.
    pub log: Vec<Vec<u64>>,
}

/// A character of Cl(K) given by chi(g_k) = exp(2 pi i b_k / n_k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub exponents: Vec<u64>,
}

impl IQField {
    pub fn new(d: u64) -> Result<Self> {
        let disc = -(d as i64);
        if !is_fundamental_discriminant(disc) {
            return Err(Error::precondition(format!("-{d} is not a field discriminant")));
        }
        let mut forms = reduced_forms(disc)?;
        let id = Form::identity(disc).reduce();
        let pos = forms
            .iter()
            .position(|f| *f == id)
            .ok_or_else(|| Error::defect("identity form missing"))?;
        let idf = forms.remove(pos);
        forms.insert(0, idf);
        let index = |f: &Form| -> Result<usize> {
            let r = f.reduce();
            forms
                .iter()
                .position(|g| *g == r)
                .ok_or_else(|| Error::defect(format!("composite {r:?} is not a listed class")))
        };
        let h = forms.len();
        let mut mul = vec![vec![0usize; h]; h];
        for s in 0..h {
            for t in s..h {
                let u = index(&forms[s].compose(&forms[t]))?;
                mul[s][t] = u;
                mul[t][s] = u;
            }
        }
        let inverse = (0..h)
            .map(|s| index(&forms[s].inverse()))
            .collect::<Result<Vec<_>>>()?;
        let (generators, invariant_factors) = abelian_basis(&mul)?;
        if invariant_factors.iter().product::<u64>() != h as u64 {
            return Err(Error::defect("class group basis has the wrong size"));
        }
        let mut log = vec![Vec::new(); h];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let mut x = 0;
            for (k, &g) in generators.iter().enumerate() {
                for _ in 0..exps[k] {
                    x = mul[x][g];
                }
            }
            if !log[x].is_empty() {
                return Err(Error::defect("class group basis is not independent"));
            }
            log[x] = exps.clone();
            let mut k = 0;
            while k < exps.len() {
                exps[k] += 1;
                if exps[k] < invariant_factors[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == exps.len() {
                break;
            }
        }
        let field = IQField {
            d,
            forms,
            mul,
            inverse,
            generators,
            invariant_factors,
            log,
        };
        field.check()?;
        Ok(field)
    }

    pub fn disc(&self) -> i64 {
        -(self.d as i64)
    }

    pub fn h(&self) -> usize {
        self.forms.len()
    }

    fn check(&self) -> Result<()> {
        let h = self.h();
        for s in 0..h {
            if self.mul[0][s] != s || self.mul[s][self.inverse[s]] != 0 {
                return Err(Error::defect("class group identity or inverse fails"));
            }
            for t in 0..h {
                for u in 0..h {
                    if self.mul[self.mul[s][t]][u] != self.mul[s][self.mul[t][u]] {
                        return Err(Error::defect("class group composition not associative"));
                    }
                }
            }
        }
        let two_torsion = (0..h).filter(|&s| self.mul[s][s] == 0).count();
        let expect = 1usize << (prime_divisors(self.d).len() - 1);
        if two_torsion != expect {
            return Err(Error::defect(format!(
                "genus count {two_torsion} differs from {expect} at D={}",
                self.d
            )));
        }
        Ok(())
    }

    /// Whether every class has order at most 2.
    pub fn one_class_per_genus(&self) -> bool {
        (0..self.h()).all(|s| self.mul[s][s] == 0)
    }

    /// The class of the prime ideal above a ramified prime p.
    pub fn ramified_prime_class(&self, p: u64) -> Result<usize> {
        if !self.d.is_multiple_of(p) {
            return Err(Error::precondition(format!("{p} does not ramify in K")));
        }
        let disc = self.disc() as i128;
        let pi = p as i128;
        let b = (0..2 * pi)
            .find(|b| (b * b - disc).rem_euclid(4 * pi) == 0)
            .ok_or_else(|| Error::defect("no ramified prime form"))?;
        let c = (b * b - disc) / (4 * pi);
        let f = Form::new(p as i64, b as i64, c as i64).reduce();
        self.forms
            .iter()
            .position(|g| *g == f)
            .ok_or_else(|| Error::defect("ramified prime form is not a listed class"))
    }

    /// All h characters, ordered lexicographically by exponent vector.
    pub fn characters(&self) -> Vec<Character> {
        let mut out = vec![Character { exponents: Vec::new() }];
        for &n in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..n).map(move |b| {
                        let mut e = c.exponents.clone();
                        e.push(b);
                        Character { exponents: e }
                    })
                })
                .collect();
        }
        out
    }

    /// chi(t) as an element of Q/Z, reduced into [0, 1).
    pub fn character_value(&self, chi: &Character, t: usize) -> Ratio<i64> {
        let v: Ratio<i64> = self.log[t]
            .iter()
            .zip(&chi.exponents)
            .zip(&self.invariant_factors)
            .map(|((&a, &b), &n)| Ratio::new((a * b % n) as i64, n as i64))
            .sum();
        v - v.floor()
    }

    pub fn character_order(&self, chi: &Character) -> u64 {
        chi.exponents
            .iter()
            .zip(&self.invariant_factors)
            .fold(1u64, |acc, (&b, &n)| acc.lcm(&(n / b.gcd(&n))))
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            exponents: vec![0; self.invariant_factors.len()],
        }
    }

    pub fn conjugate(&self, chi: &Character) -> Character {
        Character {
            exponents: chi
                .exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&b, &n)| (n - b) % n)
                .collect(),
        }
    }
}

fn element_order(mul: &[Vec<usize>], x: usize) -> u64 {
    let mut y = x;
    let mut k = 1;
    while y != 0 {
        y = mul[y][x];
        k += 1;
    }
    k
}

fn power(mul: &[Vec<usize>], x: usize, e: u64) -> usize {
    (0..e).fold(0, |acc, _| mul[acc][x])
}

/// A basis of a finite abelian group given by its table, with invariant
/// factors n_1 | n_2 | ... Built from primary components.
fn abelian_basis(mul: &[Vec<usize>]) -> Result<(Vec<usize>, Vec<u64>)> {
    let h = mul.len() as u64;
    let mut primary: Vec<Vec<(usize, u64)>> = Vec::new();
    for p in prime_divisors(h) {
        let members: Vec<usize> = (0..mul.len())
            .filter(|&x| {
                let o = element_order(mul, x);
                prime_divisors(o).iter().all(|&q| q == p)
            })
            .collect();
        primary.push(sylow_basis(mul, &members)?);
    }
    // Pair the largest cyclic factors of each prime into one generator.
    let r = primary.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for k in 0..r {
        let mut g = 0;
        let mut n = 1;
        for b in &primary {
            if k < b.len() {
                let (x, o) = b[b.len() - 1 - k];
                g = mul[g][x];
                n *= o;
            }
        }
        gens.push(g);
        orders.push(n);
    }
    gens.reverse();
    orders.reverse();
    Ok((gens, orders))
}

/// Basis of a p-group (given by its members) as (element, order) pairs in
/// increasing order.
fn sylow_basis(mul: &[Vec<usize>], members: &[usize]) -> Result<Vec<(usize, u64)>> {
    let mut basis: Vec<(usize, u64)> = Vec::new();
    // span[x] = Some(exponents) for x in the current subgroup.
    let mut span: Vec<Option<Vec<u64>>> = vec![None; mul.len()];
    span[0] = Some(Vec::new());
    let mut size = 1usize;
    while size < members.len() {
        // Element of largest order modulo the current subgroup.
        let (x, k) = members
            .iter()
            .filter(|&&x| span[x].is_none())
            .map(|&x| {
                let mut y = x;
                let mut k = 1u64;
                while span[y].is_none() {
                    y = mul[y][x];
                    k += 1;
                }
                (x, k)
            })
            .max_by_key(|&(x, k)| (k, std::cmp::Reverse(x)))
            .expect("coset outside the subgroup");
        // x^k = prod g_i^{m_i}; shift x so that x^k = 1.
        let hk = power(mul, x, k);
        let m = span[hk].clone().expect("power lies in the subgroup");
        let mut y = x;
        for (i, &(g, _)) in basis.iter().enumerate() {
            let mi = m.get(i).copied().unwrap_or(0);
            if mi % k != 0 {
                return Err(Error::defect("greedy p-group basis step failed"));
            }
            let shift = (basis[i].1 - mi / k % basis[i].1) % basis[i].1;
            y = mul[y][power(mul, g, shift)];
        }
        if power(mul, y, k) != 0 {
            return Err(Error::defect("lifted basis element has the wrong order"));
        }
        basis.push((y, k));
        // Rebuild the span.
        let mut new_span: Vec<Option<Vec<u64>>> = vec![None; mul.len()];
        let mut exps = vec![0u64; basis.len()];
        size = 0;
        loop {
            let mut z = 0;
            for (i, &(g, _)) in basis.iter().enumerate() {
                z = mul[z][power(mul, g, exps[i])];
            }
            new_span[z] = Some(exps.clone());
            size += 1;
            let mut i = 0;
            while i < exps.len() {
                exps[i] += 1;
                if exps[i] < basis[i].1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
        span = new_span;
    }
    basis.sort_by_key(|&(_, o)| o);
    Ok(basis)
}
