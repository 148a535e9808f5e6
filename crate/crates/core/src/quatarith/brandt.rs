//! Brandt matrices T_n on functions on Cl(O).

use serde::{Deserialize, Serialize};

use super::classes::IdealClassSet;
use super::ideal::product_conj_rows;
use super::lattice::{theta_counts, Vec4};
use crate::error::{Error, Result};

/// The matrix of T_n: (T_n)_{ij} is the number of sublattices of I_i of
/// index n^2 that are right ideals in the class of I_j, so that
/// (T_n f)(x_i) = sum_j (T_n)_{ij} f(x_j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrandtMatrix {
    pub n: u64,
    pub entries: Vec<Vec<i64>>,
}

impl BrandtMatrix {
    pub fn h(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> i64 {
        (0..self.h()).map(|i| self.entries[i][i]).sum()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        crate::exactalg::matrix::mat_vec_i64(&self.entries, v)
    }

    /// The permutation encoded by a 0/1 matrix with one 1 per row.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.h());
        for row in &self.entries {
            let ones: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0).collect();
            if ones.len() != 1 || row[ones[0]] != 1 {
                return None;
            }
            perm.push(ones[0]);
        }
        Some(perm)
    }
}

/// T_n for every n in `ns`, from vector counts on the lattices I_i conj(I_j):
/// (T_n)_{ij} = #{x in I_i conj(I_j) : nrd(x) = n nrd(I_i) nrd(I_j)} / (2 e_j).
pub fn brandt_matrices(classes: &IdealClassSet, ns: &[u64]) -> Result<Vec<BrandtMatrix>> {
    let h = classes.h();
    let o = &classes.order;
    let maxn = ns.iter().copied().max().unwrap_or(0) as i128;
    let mut counts = vec![vec![Vec::new(); h]; h];
    let conj: Vec<[Vec4; 4]> = classes.representatives.iter().map(|r| r.conj_rows(o)).collect();
    for i in 0..h {
        for j in i..h {
            let ri = &classes.representatives[i];
            let rj = &classes.representatives[j];
            let (_, g) = product_conj_rows(o, &ri.basis, ri.norm, &conj[j], rj.norm)?;
            let t = theta_counts(&g, maxn);
            counts[j][i] = t.clone();
            counts[i][j] = t;
        }
    }
    ns.iter()
        .map(|&n| {
            let mut entries = vec![vec![0i64; h]; h];
            for i in 0..h {
                for j in 0..h {
                    let c = counts[i][j][n as usize];
                    let w = 2 * classes.weights[j];
                    if c % w != 0 {
                        return Err(Error::defect(format!(
                            "T_{n}: count {c} at ({i},{j}) not divisible by {w}"
                        )));
                    }
                    entries[i][j] = (c / w) as i64;
                }
            }
            Ok(BrandtMatrix { n, entries })
        })
        .collect()
}

pub fn brandt_matrix(classes: &IdealClassSet, n: u64) -> Result<BrandtMatrix> {
    if n == 0 {
        return Err(Error::precondition("T_0 is undefined"));
    }
    Ok(brandt_matrices(classes, &[n])?.pop().unwrap())
}

/// T_p for a prime p dividing the level, as the permutation induced by the
/// two-sided ideal above p.
pub fn brandt_ramified(classes: &IdealClassSet, p: u64) -> Result<BrandtMatrix> {
    if !classes.level.is_multiple_of(p) {
        return Err(Error::precondition("two-sided route needs p dividing the level"));
    }
    let perm = classes.involution_two_sided(p)?;
    let h = classes.h();
    let mut entries = vec![vec![0i64; h]; h];
    for (i, &j) in perm.iter().enumerate() {
        entries[i][j] = 1;
    }
    Ok(BrandtMatrix { n: p, entries })
}

/// T_n for every n in `ns`, using the two-sided route for primes dividing
/// the level and vector counts otherwise. Output follows the order of `ns`.
pub fn hecke_matrices(classes: &IdealClassSet, ns: &[u64]) -> Result<Vec<BrandtMatrix>> {
    let level = classes.level;
    let ramified = |n: u64| n > 1 && level.is_multiple_of(n) && crate::exactalg::arith::is_prime(n);
    let counted: Vec<u64> = ns.iter().copied().filter(|&n| !ramified(n)).collect();
    let mut by_count = brandt_matrices(classes, &counted)?.into_iter();
    ns.iter()
        .map(|&n| {
            if ramified(n) {
                brandt_ramified(classes, n)
            } else {
                Ok(by_count.next().expect("one matrix per counted index"))
            }
        })
        .collect()
}

/// T_p for a prime p not dividing the level, by classifying the p + 1
/// neighbors of each representative. Independent of the vector counts.
pub fn brandt_by_neighbors(classes: &IdealClassSet, p: u64) -> Result<BrandtMatrix> {
    if classes.level.is_multiple_of(p) {
        return Err(Error::precondition("neighbor route needs p not dividing the level"));
    }
    let h = classes.h();
    let mut entries = vec![vec![0i64; h]; h];
    for i in 0..h {
        for j in classes.representatives[i].neighbors(&classes.order, p)? {
            entries[i][classes.classify(&j)?] += 1;
        }
    }
    Ok(BrandtMatrix { n: p, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::charpoly_int;
    use crate::exactalg::IntPoly;

    #[test]
    fn level_two_is_scalar() {
        let c = IdealClassSet::for_level(2).unwrap();
        for p in [3u64, 5, 7] {
            assert_eq!(brandt_matrix(&c, p).unwrap().entries, vec![vec![p as i64 + 1]]);
        }
    }

    #[test]
    fn level_eleven_t2() {
        let c = IdealClassSet::for_level(11).unwrap();
        let t = brandt_matrix(&c, 2).unwrap();
        // (x - 3)(x + 2)
        assert_eq!(charpoly_int(&t.entries), IntPoly::from_i64s(&[-6, -1, 1]));
        assert_eq!(t, brandt_by_neighbors(&c, 2).unwrap());
    }

    #[test]
    fn level_154_permutations() {
        let c = IdealClassSet::for_level(154).unwrap();
        let ts = brandt_matrices(&c, &[2, 7, 11]).unwrap();
        let fixed: Vec<usize> = ts
            .iter()
            .map(|t| {
                let s = t.as_permutation().unwrap();
                (0..6).filter(|&i| s[i] == i).count()
            })
            .collect();
        assert_eq!(fixed, vec![2, 0, 2]);
        for (t, p) in ts.iter().zip([2u64, 7, 11]) {
            assert_eq!(t.as_permutation().unwrap(), c.involution_two_sided(p).unwrap());
        }
    }

    #[test]
    fn dispatch_matches_count_route() {
        let c = IdealClassSet::for_level(105).unwrap();
        let ns = [2u64, 3, 5, 7, 11];
        assert_eq!(hecke_matrices(&c, &ns).unwrap(), brandt_matrices(&c, &ns).unwrap());
    }
}
