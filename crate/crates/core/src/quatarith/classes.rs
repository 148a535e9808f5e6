//! Enumeration of right ideal classes by p-neighbors, certified by the
//! mass formula.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::algebra::build_algebra;
use super::ideal::RightIdeal;
use super::order::MaximalOrder;
use crate::error::{Error, Result};
use crate::exactalg::arith::prime_divisors;

/// Depth of the theta-series prefix used to bucket classes.
const THETA_DEPTH: i128 = 3;

/// The right ideal classes of a maximal order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealClassSet {
    pub level: u64,
    pub order: MaximalOrder,
    /// Representatives; index 0 is O itself.
    pub representatives: Vec<RightIdeal>,
    /// e_i = #O_l(I_i)^x / 2.
    pub weights: Vec<u64>,
    /// Theta prefixes of the normalized norm forms.
    pub theta: Vec<Vec<u64>>,
    /// Classes grouped by isomorphism type of their left orders.
    pub left_order_types: Vec<Vec<usize>>,
    /// The prime used for the neighbor search.
    pub neighbor_prime: u64,
}

/// Sum of 1/e over the class set must equal this.
pub fn mass(level: u64) -> Ratio<i64> {
    prime_divisors(level)
        .into_iter()
        .fold(Ratio::new(1, 12), |acc, p| acc * Ratio::from_integer(p as i64 - 1))
}

/// Smallest prime not dividing `n`.
pub fn smallest_good_prime(n: u64) -> u64 {
    (2..).find(|&p| crate::exactalg::arith::is_prime(p) && !n.is_multiple_of(p)).unwrap()
}

impl IdealClassSet {
    /// Classes of a maximal order in the definite algebra of discriminant N.
    pub fn for_level(n: u64) -> Result<Self> {
        let alg = build_algebra(n)?;
        let o = MaximalOrder::new(&alg)?;
        ideal_classes(o)
    }

    pub fn h(&self) -> usize {
        self.representatives.len()
    }

    /// Index of the class containing `j`.
    pub fn classify(&self, j: &RightIdeal) -> Result<usize> {
        let r = j.reduce(&self.order)?;
        let key = r.theta_prefix(&self.order, THETA_DEPTH)?;
        for (i, rep) in self.representatives.iter().enumerate() {
            if self.theta[i] == key && rep.equivalent(&self.order, &r)? {
                return Ok(i);
            }
        }
        Err(Error::defect("ideal matches no class representative"))
    }

    /// The involution induced by the two-sided ideal above a ramified prime.
    pub fn involution_two_sided(&self, p: u64) -> Result<Vec<usize>> {
        let gens = self.order.ramified_prime_ideal(p)?;
        self.representatives
            .iter()
            .map(|rep| self.classify(&rep.right_mul(&self.order, &gens, p)?))
            .collect()
    }

    pub fn mass_sum(&self) -> Ratio<i64> {
        self.weights.iter().map(|&e| Ratio::new(1, e as i64)).sum()
    }
}

/// Enumerate Cl(O) breadth-first from O through p-neighbors, p the smallest
/// prime not dividing the level. New classes found from one parent are
/// appended in order of their theta prefixes.
pub fn ideal_classes(o: MaximalOrder) -> Result<IdealClassSet> {
    let level = o.level();
    let target = mass(level);
    let p = smallest_good_prime(level);
    let unit = RightIdeal::unit();
    let mut set = IdealClassSet {
        level,
        theta: vec![unit.theta_prefix(&o, THETA_DEPTH)?],
        weights: vec![unit.unit_weight(&o)?],
        representatives: vec![unit],
        order: o,
        left_order_types: Vec::new(),
        neighbor_prime: p,
    };
    let mut total = set.mass_sum();
    let mut next = 0;
    while total < target {
        if next >= set.h() {
            return Err(Error::defect(format!(
                "neighbor closure exhausted at mass {total}, expected {target}"
            )));
        }
        let parent = set.representatives[next].clone();
        next += 1;
        let mut found: Vec<(Vec<u64>, RightIdeal, u64)> = Vec::new();
        for j in parent.neighbors(&set.order, p)? {
            let r = j.reduce(&set.order)?;
            let key = r.theta_prefix(&set.order, THETA_DEPTH)?;
            let mut known = false;
            for (i, rep) in set.representatives.iter().enumerate() {
                if set.theta[i] == key && rep.equivalent(&set.order, &r)? {
                    known = true;
                    break;
                }
            }
            if !known {
                for (k2, r2, _) in &found {
                    if *k2 == key && r2.equivalent(&set.order, &r)? {
                        known = true;
                        break;
                    }
                }
            }
            if !known {
                let e = r.unit_weight(&set.order)?;
                found.push((key, r, e));
            }
        }
        found.sort_by(|a, b| (&a.0, &a.1.norm, &a.1.basis).cmp(&(&b.0, &b.1.norm, &b.1.basis)));
        for (key, r, e) in found {
            total += Ratio::new(1, e as i64);
            set.theta.push(key);
            set.representatives.push(r);
            set.weights.push(e);
        }
    }
    if total != target {
        return Err(Error::defect(format!(
            "class mass {total} overshoots {target}: equivalence test failed"
        )));
    }
    // Left order types are the orbits under the two-sided ideal classes.
    let h = set.h();
    let mut parent: Vec<usize> = (0..h).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for q in prime_divisors(level) {
        let sigma = set.involution_two_sided(q)?;
        for (i, &s) in sigma.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, s));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..h).map(|i| find(&mut parent, i)).collect();
    let mut types: Vec<Vec<usize>> = Vec::new();
    for i in 0..h {
        match types.iter_mut().find(|t| roots[t[0]] == roots[i]) {
            Some(t) => t.push(i),
            None => types.push(vec![i]),
        }
    }
    set.left_order_types = types;
    Ok(set)
}
