//! Decomposition of M(O) into Hecke eigenforms, one Galois orbit per
//! irreducible factor of a separating operator on each sign eigenspace.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sign::SignPattern;
use crate::error::{Error, Result};
use crate::exactalg::arith::{is_prime, prime_divisors};
use crate::exactalg::factor::{factor_int_poly, poly_order};
use crate::exactalg::matrix::{charpoly_int, kernel};
use crate::exactalg::numfield::{NFElem, NumberField};
use crate::exactalg::poly::IntPoly;
use crate::quatarith::brandt::{hecke_matrices, BrandtMatrix};
use crate::quatarith::classes::IdealClassSet;
use crate::trivzero::{all_reports, InvolutionSet, TrivialZeroReport};

/// Settings for the eigenform decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenConfig {
    /// Separating operators T_p are tried for primes p below this bound.
    pub separating_prime_bound: u64,
    /// Hecke eigenvalues are computed and verified for all primes up to this.
    pub check_primes_upto: u64,
    /// Seed for the fallback combination search.
    pub seed: u64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            separating_prime_bound: 200,
            check_primes_upto: 13,
            seed: 0,
        }
    }
}

/// The operator whose eigenvalues generate the orbit fields:
/// sum of coeff * T_p over the listed terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingOperator {
    pub terms: Vec<(i64, u64)>,
}

impl SeparatingOperator {
    fn eisenstein_eigenvalue(&self) -> i64 {
        self.terms.iter().map(|&(c, p)| c * (p as i64 + 1)).sum()
    }
}

/// A Hecke eigenform with values in its rationality field.
#[derive(Clone, Debug)]
pub struct Eigenform {
    pub level: u64,
    pub field: Arc<NumberField>,
    pub values: Vec<NFElem>,
    pub sign_pattern: SignPattern,
    /// Hecke eigenvalues a_p for the computed Brandt matrices, by prime.
    pub eigenvalues: Vec<(u64, NFElem)>,
    pub is_eisenstein: bool,
}

impl Eigenform {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn eigenvalue(&self, p: u64) -> Option<&NFElem> {
        self.eigenvalues.iter().find(|(q, _)| *q == p).map(|(_, a)| a)
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_zero()).collect()
    }

    /// sum_i values_i / e_i, which vanishes exactly for cusp forms.
    pub fn weighted_sum(&self, weights: &[u64]) -> NFElem {
        self.values
            .iter()
            .zip(weights)
            .fold(NFElem::zero(&self.field), |acc, (v, &e)| {
                acc.add(&v.scale(&BigRational::new(BigInt::one(), BigInt::from(e))))
            })
    }
}

/// One Galois orbit of eigenforms, stored through a single representative
/// with values in K = Q[x] / (defining_factor).
#[derive(Clone, Debug)]
pub struct GaloisOrbit {
    pub defining_factor: IntPoly,
    pub form: Eigenform,
    pub zero_set: Vec<usize>,
}

impl GaloisOrbit {
    pub fn degree(&self) -> usize {
        self.defining_factor.deg()
    }
}

/// The full decomposition of M(O) at one level.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub level: u64,
    pub weights: Vec<u64>,
    pub involutions: InvolutionSet,
    /// Admissibility reports for every sign pattern, in mask order.
    pub reports: Vec<TrivialZeroReport>,
    pub separating: SeparatingOperator,
    pub brandt: Vec<BrandtMatrix>,
    pub orbits: Vec<GaloisOrbit>,
}

impl Spectrum {
    pub fn report(&self, eps: &SignPattern) -> &TrivialZeroReport {
        &self.reports[eps.mask() as usize]
    }

    pub fn brandt(&self, n: u64) -> Option<&BrandtMatrix> {
        self.brandt.iter().find(|t| t.n == n)
    }

    pub fn cusp_orbits(&self) -> impl Iterator<Item = &GaloisOrbit> {
        self.orbits.iter().filter(|o| !o.form.is_eisenstein)
    }
}

/// Matrix of an operator on M^eps in the admissible-orbit basis.
pub fn restrict(t: &[Vec<i64>], report: &TrivialZeroReport) -> Vec<Vec<i64>> {
    let basis = report.basis();
    report
        .fundamental_domain
        .iter()
        .map(|&root| {
            basis
                .iter()
                .map(|b| t[root].iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

/// Square-free test that first tries a few word-size primes.
fn is_squarefree_fast(f: &IntPoly) -> bool {
    use crate::exactalg::modp::Fp;
    for p in [1_000_003u64, 998_244_353, 2_147_483_647] {
        let fp = Fp::new(p);
        let pb = BigInt::from(p);
        let red: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                r.to_u64_digits().1.first().copied().unwrap_or(0)
            })
            .collect();
        let mut red = red;
        while red.last() == Some(&0) {
            red.pop();
        }
        if red.len() == f.coeffs().len() && fp.is_squarefree(&red) {
            return true;
        }
    }
    f.is_squarefree()
}

fn combine_ops(ts: &[&BrandtMatrix], coeffs: &[i64]) -> Vec<Vec<i64>> {
    let h = ts[0].h();
    let mut out = vec![vec![0i64; h]; h];
    for (t, &c) in ts.iter().zip(coeffs) {
        for i in 0..h {
            for j in 0..h {
                out[i][j] += c * t.entries[i][j];
            }
        }
    }
    out
}

fn good_primes(level: u64, below: u64) -> Vec<u64> {
    (2..below).filter(|&p| is_prime(p) && !level.is_multiple_of(p)).collect()
}

/// Decompose the space of functions on Cl(O) into Hecke eigenforms.
pub fn split_spectrum(classes: &IdealClassSet, cfg: &EigenConfig) -> Result<Spectrum> {
    let level = classes.level;
    let bad = prime_divisors(level);
    let mut wanted: Vec<u64> = bad.clone();
    wanted.extend(good_primes(level, cfg.check_primes_upto + 1));
    wanted.sort_unstable();
    let mut brandt = hecke_matrices(classes, &wanted)?;
    let involutions = InvolutionSet::from_brandt(level, &brandt)?;
    let reports = all_reports(&involutions)?;
    let pieces: Vec<&TrivialZeroReport> = reports.iter().filter(|r| r.dim() > 0).collect();

    let ensure = |brandt: &mut Vec<BrandtMatrix>, ps: &[u64]| -> Result<()> {
        let missing: Vec<u64> = ps
            .iter()
            .copied()
            .filter(|p| !brandt.iter().any(|t| t.n == *p))
            .collect();
        if !missing.is_empty() {
            brandt.extend(hecke_matrices(classes, &missing)?);
        }
        Ok(())
    };
    let charpolys_if_separating = |op: &[Vec<i64>]| -> Option<Vec<IntPoly>> {
        let mut out = Vec::new();
        for r in &pieces {
            let f = charpoly_int(&restrict(op, r));
            if !is_squarefree_fast(&f) {
                return None;
            }
            out.push(f);
        }
        Some(out)
    };

    let candidates = good_primes(level, cfg.separating_prime_bound);
    let mut found: Option<(SeparatingOperator, Vec<Vec<i64>>, Vec<IntPoly>)> = None;
    let mut k = 0;
    while k < candidates.len() && found.is_none() {
        // Fetch candidates in small batches to share lattice enumeration.
        let batch: Vec<u64> = candidates[k..(k + 4).min(candidates.len())].to_vec();
        ensure(&mut brandt, &batch)?;
        for &p in &batch {
            let t = brandt.iter().find(|t| t.n == p).unwrap();
            if let Some(cps) = charpolys_if_separating(&t.entries) {
                found = Some((
                    SeparatingOperator { terms: vec![(1, p)] },
                    t.entries.clone(),
                    cps,
                ));
                break;
            }
        }
        k += batch.len();
    }
    if found.is_none() && candidates.len() >= 2 {
        let (p, q) = (candidates[0], candidates[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let tp = brandt.iter().find(|t| t.n == p).unwrap().clone();
        let tq = brandt.iter().find(|t| t.n == q).unwrap().clone();
        for _ in 0..64 {
            let c: i64 = rng.gen_range(1..=16);
            let op = combine_ops(&[&tp, &tq], &[1, c]);
            if let Some(cps) = charpolys_if_separating(&op) {
                found = Some((SeparatingOperator { terms: vec![(1, p), (c, q)] }, op, cps));
                break;
            }
        }
    }
    let (separating, op, charpolys) = found.ok_or_else(|| {
        Error::budget(format!(
            "no separating Hecke operator found below {} at level {level}",
            cfg.separating_prime_bound
        ))
    })?;
    brandt.sort_by_key(|t| t.n);

    let mut orbits = Vec::new();
    for (r, cp) in pieces.iter().zip(&charpolys) {
        let rm = restrict(&op, r);
        let basis = r.basis();
        for (factor, mult) in factor_int_poly(cp)? {
            if mult != 1 {
                return Err(Error::defect("separating polynomial not square-free"));
            }
            let eis = r.eps.is_all_plus()
                && factor == IntPoly::linear_root(BigInt::from(separating.eisenstein_eigenvalue()));
            let field = NumberField::new(factor.clone())?;
            let coords = eigenvector(&rm, &factor, &field)?;
            let h = classes.h();
            let mut values = vec![NFElem::zero(&field); h];
            for (c, b) in coords.iter().zip(&basis) {
                for i in 0..h {
                    if b[i] != 0 {
                        values[i] = values[i].add(&c.scale_int(b[i]));
                    }
                }
            }
            let values = normalize(values)?;
            let mut form = Eigenform {
                level,
                field,
                values,
                sign_pattern: r.eps.clone(),
                eigenvalues: Vec::new(),
                is_eisenstein: eis,
            };
            for t in &brandt {
                let a = hecke_eigenvalue(&form, t)?;
                if let Some(s) = r.eps.eps_p(t.n) {
                    if a.as_rational() != Some(BigRational::from_integer(BigInt::from(s))) {
                        return Err(Error::defect(format!(
                            "T_{} eigenvalue {a} disagrees with sign {s}",
                            t.n
                        )));
                    }
                }
                form.eigenvalues.push((t.n, a));
            }
            let zero_set = form.zero_set();
            orbits.push(GaloisOrbit {
                defining_factor: factor,
                form,
                zero_set,
            });
        }
    }
    orbits.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| poly_order(&a.defining_factor, &b.defining_factor))
            .then_with(|| a.form.sign_pattern.mask().cmp(&b.form.sign_pattern.mask()))
    });
    Ok(Spectrum {
        level,
        weights: classes.weights.clone(),
        involutions,
        reports,
        separating,
        brandt,
        orbits,
    })
}

/// Eigenvalue of T on the form, verified on every coordinate.
pub fn hecke_eigenvalue(form: &Eigenform, t: &BrandtMatrix) -> Result<NFElem> {
    let image = apply(t, &form.values);
    let i0 = form
        .values
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| Error::defect("zero eigenform"))?;
    let a = image[i0].div(&form.values[i0])?;
    for (x, y) in image.iter().zip(&form.values) {
        if *x != a.mul(y) {
            return Err(Error::defect(format!("form is not a T_{} eigenvector", t.n)));
        }
    }
    Ok(a)
}

/// (T f)_i = sum_j T_ij f_j.
pub fn apply(t: &BrandtMatrix, f: &[NFElem]) -> Vec<NFElem> {
    t.entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(f)
                .filter(|(c, _)| **c != 0)
                .fold(NFElem::zero(f[0].field()), |acc, (&c, v)| acc.add(&v.scale_int(c)))
        })
        .collect()
}

/// An eigenvector of the integer matrix `m` for the root x of the monic
/// irreducible factor `c` of its characteristic polynomial, with entries in
/// K = Q[x]/(c). Takes v in ker c(m) and returns q(m) v with
/// q(y) = c(y) / (y - x).
fn eigenvector(m: &[Vec<i64>], c: &IntPoly, field: &Arc<NumberField>) -> Result<Vec<NFElem>> {
    let n = m.len();
    let d = c.deg();
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    // c(m) by Horner.
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in (0..=d).rev() {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if acc[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !big[l][j].is_zero() {
                        next[i][j] += &acc[i][l] * &big[l][j];
                    }
                }
            }
            next[i][i] += c.coeff(k);
        }
        acc = next;
    }
    let rat: Vec<Vec<BigRational>> = acc
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let ker = kernel(&rat, n, &BigRational::one());
    if ker.len() != d {
        return Err(Error::defect(format!(
            "c(T) kernel has dimension {}, expected {d}",
            ker.len()
        )));
    }
    let den = ker[0]
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v: Vec<BigInt> = ker[0]
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    // Krylov vectors m^k v for k < d.
    let mut krylov = vec![v];
    for _ in 1..d {
        let last = krylov.last().unwrap();
        let next: Vec<BigInt> = big
            .iter()
            .map(|row| row.iter().zip(last).map(|(a, b)| a * b).sum())
            .collect();
        krylov.push(next);
    }
    // q(y) = sum_k g_k y^k with g_{d-1} = 1, g_{k-1} = x g_k + c_k.
    let x = NFElem::generator(field);
    let mut g = vec![NFElem::zero(field); d];
    g[d - 1] = NFElem::one(field);
    for k in (1..d).rev() {
        g[k - 1] = x.mul(&g[k]).add(&NFElem::from_ints(field, &[c.coeff(k)]));
    }
    let out: Vec<NFElem> = (0..n)
        .map(|i| {
            (0..d).fold(NFElem::zero(field), |acc, k| {
                acc.add(&g[k].scale(&BigRational::from_integer(krylov[k][i].clone())))
            })
        })
        .collect();
    if out.iter().all(|e| e.is_zero()) {
        return Err(Error::defect("Krylov eigenvector vanished"));
    }
    Ok(out)
}

/// Scale so the first nonzero value is a positive integer and all values
/// have integer power-basis coefficients with content 1.
pub fn normalize(values: Vec<NFElem>) -> Result<Vec<NFElem>> {
    let i0 = values
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| Error::defect("cannot normalize the zero vector"))?;
    let inv = values[i0].inverse()?;
    let scaled: Vec<NFElem> = values.iter().map(|v| v.mul(&inv)).collect();
    let den = scaled.iter().fold(BigInt::one(), |l, v| l.lcm(&v.denominator()));
    let ints: Vec<NFElem> = scaled
        .iter()
        .map(|v| v.scale(&BigRational::from_integer(den.clone())))
        .collect();
    let content = ints
        .iter()
        .flat_map(|v| v.rep().iter().map(|c| c.to_integer()))
        .fold(BigInt::zero(), |g, c| g.gcd(&c));
    let s = BigRational::new(BigInt::one(), content.abs());
    Ok(ints.iter().map(|v| v.scale(&s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_eleven() {
        let c = IdealClassSet::for_level(11).unwrap();
        let s = split_spectrum(&c, &EigenConfig::default()).unwrap();
        assert_eq!(s.orbits.len(), 2);
        let cusp: Vec<&GaloisOrbit> = s.cusp_orbits().collect();
        assert_eq!(cusp.len(), 1);
        let f = &cusp[0].form;
        assert_eq!(f.eigenvalue(2).unwrap().as_rational(), Some(BigRational::from_integer((-2).into())));
        assert!(f.weighted_sum(&c.weights).is_zero());
        assert_eq!(f.sign_pattern, SignPattern::plus(11));
    }
}
