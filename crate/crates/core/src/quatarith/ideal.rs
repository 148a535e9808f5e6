//! Integral right ideals of a maximal order, in order coordinates.

use serde::{Deserialize, Serialize};

use super::lattice::{
    count_norm, hnf_mod, restrict_gram, short_vectors, theta_counts, Mat4, Vec4,
};
use super::order::MaximalOrder;
use crate::error::{Error, Result};

/// An integral right ideal I of O, stored by the HNF of its basis in the
/// coordinates of O together with its reduced norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RightIdeal {
    pub basis: Mat4,
    pub norm: u64,
}

/// Integer Gram matrix type used for norm forms.
pub type Gram = [[i128; 4]; 4];

fn scale_gram(g: &Gram, d: i128, what: &str) -> Result<Gram> {
    let mut out = *g;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            if *x % d != 0 {
                return Err(Error::defect(format!("{what}: norm form not divisible by {d}")));
            }
            *x /= d;
        }
    }
    Ok(out)
}

impl RightIdeal {
    /// The unit ideal O.
    pub fn unit() -> Self {
        let mut b = [[0i64; 4]; 4];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = 1;
        }
        RightIdeal { basis: b, norm: 1 }
    }

    /// Lattice spanned by `gens`, which must be an ideal of reduced norm `norm`.
    pub fn from_gens(gens: &[Vec4], norm: u64) -> Result<Self> {
        let d = (norm as i128) * (norm as i128);
        let basis = hnf_mod(gens, d);
        let det = super::lattice::det_upper(&basis);
        if det != d {
            return Err(Error::defect(format!(
                "ideal lattice has index {det}, expected {d}"
            )));
        }
        Ok(RightIdeal { basis, norm })
    }

    pub fn rows(&self) -> &[Vec4; 4] {
        &self.basis
    }

    /// Gram matrix of (I, nrd / nrd(I)), an integral quaternary form.
    pub fn norm_form(&self, o: &MaximalOrder) -> Result<Gram> {
        let g = restrict_gram(o.gram(), &self.basis);
        scale_gram(&g, self.norm as i128, "ideal norm form")
    }

    /// Counts of vectors with nrd(x) / nrd(I) = 1..=k; a class invariant.
    pub fn theta_prefix(&self, o: &MaximalOrder, k: i128) -> Result<Vec<u64>> {
        Ok(theta_counts(&self.norm_form(o)?, k)[1..].to_vec())
    }

    /// Conjugate basis, spanning the left ideal conj(I).
    pub fn conj_rows(&self, o: &MaximalOrder) -> [Vec4; 4] {
        std::array::from_fn(|i| o.conj(&self.basis[i]))
    }

    /// The lattice I conj(J) with its norm form scaled by nrd(I) nrd(J).
    pub fn product_conj(&self, o: &MaximalOrder, j: &RightIdeal) -> Result<(Mat4, Gram)> {
        let jc = j.conj_rows(o);
        product_conj_rows(o, &self.basis, self.norm, &jc, j.norm)
    }

    /// Number of units of the left order, modulo +-1.
    pub fn unit_weight(&self, o: &MaximalOrder) -> Result<u64> {
        let (_, g) = self.product_conj(o, self)?;
        let c = count_norm(&g, 1);
        if c == 0 || c % 2 == 1 {
            return Err(Error::defect(format!("odd or zero unit count {c}")));
        }
        Ok(c / 2)
    }

    /// Whether I and J lie in the same right ideal class.
    pub fn equivalent(&self, o: &MaximalOrder, j: &RightIdeal) -> Result<bool> {
        let (_, g) = self.product_conj(o, j)?;
        Ok(count_norm(&g, 1) > 0)
    }

    /// An equivalent integral ideal of small norm: conj(y) I / nrd(I) for a
    /// shortest y in I.
    pub fn reduce(&self, o: &MaximalOrder) -> Result<RightIdeal> {
        let g = self.norm_form(o)?;
        let m = (1..)
            .map(|b| short_vectors(&g, b))
            .find(|v| !v.is_empty())
            .expect("positive definite lattice has vectors");
        let (y, q) = m
            .iter()
            .min_by_key(|(v, n)| (*n, *v))
            .copied()
            .expect("nonempty");
        if q as u64 >= self.norm {
            return Ok(self.clone());
        }
        let yv = combine(&self.basis, &y);
        let yc = o.conj(&yv);
        let n = self.norm as i64;
        let gens: Vec<Vec4> = self
            .basis
            .iter()
            .map(|b| {
                let z = o.mul(&yc, b);
                if z.iter().any(|c| c % n != 0) {
                    return Err(Error::defect("conj(y) I not divisible by nrd(I)"));
                }
                Ok(z.map(|c| c / n))
            })
            .collect::<Result<_>>()?;
        RightIdeal::from_gens(&gens, q as u64)
    }

    /// The product I * P with a two-sided ideal P given by generators.
    pub fn right_mul(&self, o: &MaximalOrder, p_gens: &[Vec4], p_norm: u64) -> Result<RightIdeal> {
        let mut gens = Vec::with_capacity(4 * p_gens.len());
        for b in &self.basis {
            for q in p_gens {
                gens.push(o.mul(b, q));
            }
        }
        RightIdeal::from_gens(&gens, self.norm * p_norm)
    }

    /// The p + 1 integral right ideals J of I with [I : J] = p^2, in
    /// deterministic scan order.
    pub fn neighbors(&self, o: &MaximalOrder, p: u64) -> Result<Vec<RightIdeal>> {
        let pi = p as i64;
        let n = self.norm as i128;
        let mut out: Vec<RightIdeal> = Vec::new();
        let units: Vec<Vec4> = (0..4)
            .map(|k| {
                let mut v = [0i64; 4];
                v[k] = 1;
                v
            })
            .collect();
        let scaled: Vec<Vec4> = self.basis.iter().map(|b| b.map(|c| c * pi)).collect();
        // Projective points of F_p^4 with first nonzero coordinate 1.
        for lead in (0..4).rev() {
            let free = 3 - lead;
            let count = pi.pow(free as u32);
            for code in 0..count {
                let mut c = [0i64; 4];
                c[lead] = 1;
                let mut t = code;
                for k in lead + 1..4 {
                    c[k] = t % pi;
                    t /= pi;
                }
                let x = combine(&self.basis, &c);
                if (o.nrd(&x) / n) % p as i128 != 0 {
                    continue;
                }
                let mut gens: Vec<Vec4> = units.iter().map(|e| o.mul(&x, e)).collect();
                gens.extend(scaled.iter().copied());
                let d = (n * p as i128).pow(2);
                let h = hnf_mod(&gens, d);
                if super::lattice::det_upper(&h) != d {
                    continue;
                }
                let j = RightIdeal {
                    basis: h,
                    norm: self.norm * p,
                };
                if !out.contains(&j) {
                    out.push(j);
                    if out.len() as u64 == p + 1 {
                        return Ok(out);
                    }
                }
            }
        }
        Err(Error::defect(format!(
            "found {} neighbors at {p}, expected {}",
            out.len(),
            p + 1
        )))
    }
}

/// Vector sum_i c_i b_i.
pub fn combine(basis: &Mat4, c: &Vec4) -> Vec4 {
    let mut out = [0i64; 4];
    for i in 0..4 {
        if c[i] != 0 {
            for k in 0..4 {
                out[k] += c[i] * basis[i][k];
            }
        }
    }
    out
}

/// The lattice spanned by products a_s * c_t, with its norm form divided by
/// na * nc (the reduced norm of the product lattice).
pub fn product_conj_rows(
    o: &MaximalOrder,
    a: &Mat4,
    na: u64,
    c: &[Vec4; 4],
    nc: u64,
) -> Result<(Mat4, Gram)> {
    let mut gens = Vec::with_capacity(16);
    for x in a {
        for y in c {
            gens.push(o.mul(x, y));
        }
    }
    let m = na as i128 * nc as i128;
    let h = hnf_mod(&gens, m * m);
    let det = super::lattice::det_upper(&h);
    if det != m * m {
        return Err(Error::defect(format!(
            "product lattice has index {det}, expected {}",
            m * m
        )));
    }
    let g = restrict_gram(o.gram(), &h);
    Ok((h, scale_gram(&g, m, "product norm form")?))
}
