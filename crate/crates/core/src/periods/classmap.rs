//! Embeddings of o_K into left orders and the induced map Cl(K) -> Cl(O).

use serde::{Deserialize, Serialize};

use super::field::IQField;
use crate::error::{Error, Result};
use crate::exactalg::arith::{kronecker, prime_divisors};
use crate::quatarith::classes::IdealClassSet;
use crate::quatarith::ideal::{combine, RightIdeal};
use crate::quatarith::lattice::{short_vectors, Vec4};
use crate::trivzero::InvolutionSet;

/// o_K embedded in the left order of representative `class_index`, through
/// beta = scaled_beta / scale (coordinates in O).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub d: u64,
    /// Index into the left order types of the class set.
    pub type_index: usize,
    /// Representative I_j with beta in O_l(I_j); the base point of the map.
    pub class_index: usize,
    pub scaled_beta: Vec4,
    pub scale: i64,
    /// Reduced trace and norm of beta: (0, D/4) or (1, (1+D)/4).
    pub trace: i64,
    pub norm: i64,
}

/// Whether K = Q(sqrt(-D)) embeds in the algebra ramified at the primes of N.
pub fn embeds(d: u64, level: u64) -> bool {
    prime_divisors(level)
        .iter()
        .all(|&p| kronecker(-(d as i64), p as i64) != 1)
}

fn target(d: u64) -> (i64, i64) {
    if d.is_multiple_of(4) {
        (0, (d / 4) as i64)
    } else {
        (1, ((1 + d) / 4) as i64)
    }
}

/// First embedding found, scanning left order types in order and taking the
/// least coordinate vector within each.
pub fn embed(k: &IQField, classes: &IdealClassSet, budget: usize) -> Result<Embedding> {
    if !embeds(k.d, classes.level) {
        return Err(Error::precondition(format!(
            "Q(sqrt(-{})) does not embed: some prime of {} splits",
            k.d, classes.level
        )));
    }
    let (t, n) = target(k.d);
    let o = &classes.order;
    for (ti, ty) in classes.left_order_types.iter().enumerate() {
        let j = ty[0];
        let rep = &classes.representatives[j];
        let (rows, g) = rep.product_conj(o, rep)?;
        let vs = short_vectors(&g, n as i128);
        if vs.len() > budget {
            return Err(Error::budget(format!(
                "{} lattice vectors below norm {n} exceed the budget {budget}",
                vs.len()
            )));
        }
        let scale = rep.norm as i64;
        let hit = vs
            .iter()
            .filter(|(_, m)| *m == n as i128)
            .map(|(y, _)| combine(&rows, y))
            .filter(|x| o.trd(x) == (t * scale) as i128)
            .min();
        if let Some(x) = hit {
            return Ok(Embedding {
                d: k.d,
                type_index: ti,
                class_index: j,
                scaled_beta: x,
                scale,
                trace: t,
                norm: n,
            });
        }
    }
    Err(Error::defect(format!(
        "no embedding of discriminant -{} in any left order at level {}",
        k.d, classes.level
    )))
}

/// Where each class of K lands in Cl(O).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMapTable {
    pub d: u64,
    pub embedding: Embedding,
    /// map[t] for t indexing the reduced forms of K.
    pub map: Vec<usize>,
    /// Classes c with map[t^-1] = sigma_N(map[c t]) for every t.
    pub twists: Vec<usize>,
}

/// beta * x for x in a left O_l(I_j)-module, in O coordinates.
fn beta_times(classes: &IdealClassSet, emb: &Embedding, x: &Vec4) -> Result<Vec4> {
    let z = classes.order.mul(&emb.scaled_beta, x);
    if z.iter().any(|c| c % emb.scale != 0) {
        return Err(Error::defect("beta does not preserve the lattice"));
    }
    Ok(z.map(|c| c / emb.scale))
}

/// The lattice iota(t) L for t = [a, (-b + sqrt(disc)) / 2], with L a right
/// O-ideal stable under iota(o_K).
pub fn left_mul_form(
    classes: &IdealClassSet,
    emb: &Embedding,
    a: i64,
    b: i64,
    lattice: &RightIdeal,
) -> Result<RightIdeal> {
    // iota((-b + sqrt(disc)) / 2) = beta - shift.
    let shift = if emb.trace == 0 { b / 2 } else { (b + 1) / 2 };
    let mut gens = Vec::with_capacity(8);
    for x in lattice.rows() {
        gens.push(x.map(|c| c * a));
        let bx = beta_times(classes, emb, x)?;
        gens.push(std::array::from_fn(|k| bx[k] - shift * x[k]));
    }
    RightIdeal::from_gens(&gens, lattice.norm * a as u64)
}

pub fn ideal_class_map(
    emb: &Embedding,
    k: &IQField,
    classes: &IdealClassSet,
    inv: &InvolutionSet,
) -> Result<ClassMapTable> {
    if emb.d != k.d {
        return Err(Error::precondition("embedding belongs to another field"));
    }
    let base = &classes.representatives[emb.class_index];
    let map = k
        .forms
        .iter()
        .map(|f| classes.classify(&left_mul_form(classes, emb, f.a, f.b, base)?))
        .collect::<Result<Vec<_>>>()?;
    if map[0] != emb.class_index {
        return Err(Error::defect("identity class does not map to the base point"));
    }
    let sn = inv.sigma_level();
    let twists: Vec<usize> = (0..k.h())
        .filter(|&c| (0..k.h()).all(|t| map[k.inverse[t]] == sn[map[k.mul[c][t]]]))
        .collect();
    if twists.is_empty() {
        return Err(Error::defect("no class relates the map to its conjugate through sigma_N"));
    }
    Ok(ClassMapTable {
        d: k.d,
        embedding: emb.clone(),
        map,
        twists,
    })
}

/// Which structural identities a class map satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassMapIdentities {
    /// map[t^-1] = sigma_N(map[t]) for all t.
    pub inverse_is_sigma_n: bool,
    /// Classes of order at most 2 land on fixed points of sigma_N.
    pub two_torsion_fixed: bool,
    /// Some class c gives map[t^-1] = sigma_N(map[c t]) for all t.
    pub twisted_inverse: bool,
    /// With d = D or D/4 dividing N, the image is fixed by sigma_d.
    pub fixed_by_sigma_d: Option<bool>,
    /// For p | gcd(D, N), map[t J_p] = sigma_p(map[t]).
    pub equivariant: Vec<(u64, bool)>,
}

impl ClassMapIdentities {
    /// Whether every identity that applies holds, the twisted form of the
    /// inversion rule standing in for the untwisted one.
    pub fn twisted_hold(&self) -> bool {
        self.twisted_inverse
            && self.fixed_by_sigma_d != Some(false)
            && self.equivariant.iter().all(|&(_, ok)| ok)
    }
}

pub fn class_map_identities(
    table: &ClassMapTable,
    k: &IQField,
    inv: &InvolutionSet,
) -> Result<ClassMapIdentities> {
    let level = inv.level;
    let h = k.h();
    let sn = inv.sigma_level();
    let inverse_is_sigma_n = (0..h).all(|t| table.map[k.inverse[t]] == sn[table.map[t]]);
    let two_torsion_fixed = (0..h)
        .filter(|&t| k.mul[t][t] == 0)
        .all(|t| sn[table.map[t]] == table.map[t]);
    let d0 = if k.d.is_multiple_of(4) { k.d / 4 } else { k.d };
    let fixed_by_sigma_d = level.is_multiple_of(d0).then(|| {
        let sd = inv.sigma_divisor(d0);
        (0..h).all(|t| sd[table.map[t]] == table.map[t])
    });
    let mut equivariant = Vec::new();
    for p in prime_divisors(level) {
        if k.d.is_multiple_of(p) {
            let jp = k.ramified_prime_class(p)?;
            let sp = inv.get(p).expect("sigma_p for p | N");
            equivariant.push((p, (0..h).all(|t| table.map[k.mul[t][jp]] == sp[table.map[t]])));
        }
    }
    Ok(ClassMapIdentities {
        inverse_is_sigma_n,
        two_torsion_fixed,
        twisted_inverse: !table.twists.is_empty(),
        fixed_by_sigma_d,
        equivariant,
    })
}
