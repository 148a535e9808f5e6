//! Involutions sigma_p on Cl(O), their orbits, signed graphs, admissibility
//! and the split of eigenform zeroes into trivial and nontrivial ones.

use serde::{Deserialize, Serialize};

use crate::eigen::sign::SignPattern;
use crate::error::{Error, Result};
use crate::exactalg::arith::prime_divisors;
use crate::quatarith::brandt::{hecke_matrices, BrandtMatrix};
use crate::quatarith::classes::IdealClassSet;

/// sigma_p for each p | N, read off the Brandt permutation matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionSet {
    pub level: u64,
    pub sigma: Vec<(u64, Vec<usize>)>,
}

impl InvolutionSet {
    /// Build from the Brandt matrices T_p for p | N.
    pub fn from_brandt(level: u64, ts: &[BrandtMatrix]) -> Result<Self> {
        let mut sigma = Vec::new();
        for p in prime_divisors(level) {
            let t = ts
                .iter()
                .find(|t| t.n == p)
                .ok_or_else(|| Error::precondition(format!("missing T_{p}")))?;
            let s = t
                .as_permutation()
                .ok_or_else(|| Error::defect(format!("T_{p} is not a permutation matrix")))?;
            if (0..s.len()).any(|i| s[s[i]] != i) {
                return Err(Error::defect(format!("sigma_{p} is not an involution")));
            }
            sigma.push((p, s));
        }
        Ok(InvolutionSet { level, sigma })
    }

    pub fn h(&self) -> usize {
        self.sigma.first().map_or(0, |(_, s)| s.len())
    }

    pub fn get(&self, p: u64) -> Option<&[usize]> {
        self.sigma.iter().find(|(q, _)| *q == p).map(|(_, s)| s.as_slice())
    }

    /// sigma_N, the composite of all sigma_p.
    pub fn sigma_level(&self) -> Vec<usize> {
        let h = self.h();
        (0..h)
            .map(|i| self.sigma.iter().fold(i, |x, (_, s)| s[x]))
            .collect()
    }

    /// sigma_d for a divisor d of the level.
    pub fn sigma_divisor(&self, d: u64) -> Vec<usize> {
        let h = self.h();
        (0..h)
            .map(|i| {
                self.sigma
                    .iter()
                    .filter(|(p, _)| d.is_multiple_of(*p))
                    .fold(i, |x, (_, s)| s[x])
            })
            .collect()
    }
}

/// Compute the involutions of a class set via its Brandt matrices.
pub fn involutions(classes: &IdealClassSet) -> Result<InvolutionSet> {
    let ps = prime_divisors(classes.level);
    let ts = hecke_matrices(classes, &ps)?;
    InvolutionSet::from_brandt(classes.level, &ts)
}

/// Connected components of Cl(O) under all sigma_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Orbits, each sorted, ordered by least element.
    pub orbits: Vec<Vec<usize>>,
    /// Unit weight shared by the classes of each orbit.
    pub weights: Vec<u64>,
    /// Orbit index of each class.
    pub orbit_of: Vec<usize>,
}

pub fn orbit_structure(inv: &InvolutionSet, weights: &[u64]) -> Result<OrbitPartition> {
    let h = weights.len();
    let mut orbit_of = vec![usize::MAX; h];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..h {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for (_, s) in &inv.sigma {
                if orbit_of[s[x]] == usize::MAX {
                    orbit_of[s[x]] = id;
                    members.push(s[x]);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let mut ws = Vec::with_capacity(orbits.len());
    for o in &orbits {
        let w = weights[o[0]];
        if o.iter().any(|&i| weights[i] != w) {
            return Err(Error::defect(format!("unit weight not constant on orbit {o:?}")));
        }
        if !o.len().is_power_of_two() || o.len() > 1 << inv.sigma.len() {
            return Err(Error::defect(format!("orbit {o:?} has impossible size")));
        }
        ws.push(w);
    }
    Ok(OrbitPartition {
        orbits,
        weights: ws,
        orbit_of,
    })
}

/// The signed multigraph: one edge {i, sigma_p(i)} per sigma_p-orbit, with
/// sign eps_p. Fixed points give loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGraph {
    pub eps: SignPattern,
    pub h: usize,
    /// (i, j, p, sign) with i <= j.
    pub edges: Vec<(usize, usize, u64, i8)>,
}

pub fn signed_graph(inv: &InvolutionSet, eps: &SignPattern) -> Result<SignedGraph> {
    if eps.level != inv.level {
        return Err(Error::precondition("sign pattern and involutions at different levels"));
    }
    let mut edges = Vec::new();
    for (p, s) in &inv.sigma {
        let sign = eps.eps_p(*p).expect("p divides the level");
        for i in 0..s.len() {
            if i <= s[i] {
                edges.push((i, s[i], *p, sign));
            }
        }
    }
    Ok(SignedGraph {
        eps: eps.clone(),
        h: inv.h(),
        edges,
    })
}

/// Admissibility data for one sign pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialZeroReport {
    pub eps: SignPattern,
    /// Components of the signed graph, each sorted, ordered by least element.
    pub components: Vec<Vec<usize>>,
    pub admissible: Vec<usize>,
    pub inadmissible: Vec<usize>,
    /// Classes on inadmissible components, sorted.
    pub trivial_zero_classes: Vec<usize>,
    /// Least class of each admissible component.
    pub fundamental_domain: Vec<usize>,
    /// Sign of each class relative to its component's least class; only
    /// meaningful on admissible components.
    pub parity: Vec<i8>,
}

impl TrivialZeroReport {
    pub fn dim(&self) -> usize {
        self.admissible.len()
    }

    /// Basis of M^eps: one vector per admissible component, equal to the
    /// relative parity on that component and zero elsewhere.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        let h = self.parity.len();
        self.admissible
            .iter()
            .map(|&c| {
                let mut v = vec![0i64; h];
                for &i in &self.components[c] {
                    v[i] = self.parity[i] as i64;
                }
                v
            })
            .collect()
    }
}

/// Parity union-find over the signed edges. A component is admissible when
/// no closed walk has sign -1.
pub fn admissibility(graph: &SignedGraph) -> TrivialZeroReport {
    let h = graph.h;
    let mut parent: Vec<usize> = (0..h).collect();
    // rel[i]: sign of i relative to parent[i].
    let mut rel: Vec<i8> = vec![1; h];
    let mut bad = vec![false; h];
    fn find(parent: &mut [usize], rel: &mut [i8], x: usize) -> (usize, i8) {
        if parent[x] == x {
            return (x, 1);
        }
        let (r, s) = find(parent, rel, parent[x]);
        parent[x] = r;
        rel[x] *= s;
        (r, rel[x])
    }
    for &(i, j, _, sign) in &graph.edges {
        let (ri, si) = find(&mut parent, &mut rel, i);
        let (rj, sj) = find(&mut parent, &mut rel, j);
        if ri == rj {
            // Value at j must equal sign * value at i.
            if sj != sign * si {
                bad[ri] = true;
            }
        } else {
            let (lo, hi) = (ri.min(rj), ri.max(rj));
            // Attach hi under lo; rel[hi] is sign(hi) relative to lo.
            let s_hi_rel_lo = if hi == rj { sign * si * sj } else { sign * sj * si };
            parent[hi] = lo;
            rel[hi] = s_hi_rel_lo;
            bad[lo] = bad[lo] || bad[hi];
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut comp_of_root: Vec<Option<usize>> = vec![None; h];
    let mut parity = vec![1i8; h];
    for i in 0..h {
        let (r, s) = find(&mut parent, &mut rel, i);
        parity[i] = s;
        match comp_of_root[r] {
            Some(c) => components[c].push(i),
            None => {
                comp_of_root[r] = Some(components.len());
                components.push(vec![i]);
            }
        }
    }
    // Roots are least elements since unions always attach under the smaller
    // root, so parity is relative to the least class.
    let mut admissible = Vec::new();
    let mut inadmissible = Vec::new();
    for (c, comp) in components.iter().enumerate() {
        let (r, _) = find(&mut parent, &mut rel, comp[0]);
        if bad[r] {
            inadmissible.push(c);
        } else {
            admissible.push(c);
        }
    }
    let mut trivial: Vec<usize> = inadmissible
        .iter()
        .flat_map(|&c| components[c].iter().copied())
        .collect();
    trivial.sort_unstable();
    TrivialZeroReport {
        eps: graph.eps.clone(),
        fundamental_domain: admissible.iter().map(|&c| components[c][0]).collect(),
        components,
        admissible,
        inadmissible,
        trivial_zero_classes: trivial,
        parity,
    }
}

/// Reports for every sign pattern at a level, in mask order.
pub fn all_reports(inv: &InvolutionSet) -> Result<Vec<TrivialZeroReport>> {
    SignPattern::all(inv.level)
        .iter()
        .map(|e| Ok(admissibility(&signed_graph(inv, e)?)))
        .collect()
}

/// Split a zero set into trivial and nontrivial zeroes.
pub fn classify_zeroes(
    zero_set: &[usize],
    report: &TrivialZeroReport,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let trivial: Vec<usize> = zero_set
        .iter()
        .copied()
        .filter(|i| report.trivial_zero_classes.contains(i))
        .collect();
    if trivial.len() != report.trivial_zero_classes.len() {
        return Err(Error::defect(
            "eigenform is nonzero on an inadmissible orbit",
        ));
    }
    let nontrivial = zero_set
        .iter()
        .copied()
        .filter(|i| !report.trivial_zero_classes.contains(i))
        .collect();
    Ok((trivial, nontrivial))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv154() -> InvolutionSet {
        // Labeling x1..x6 as 0..5.
        InvolutionSet {
            level: 154,
            sigma: vec![
                (2, vec![1, 0, 3, 2, 4, 5]),
                (7, vec![1, 0, 3, 2, 5, 4]),
                (11, vec![0, 1, 3, 2, 5, 4]),
            ],
        }
    }

    #[test]
    fn orbits_154() {
        let o = orbit_structure(&inv154(), &[1; 6]).unwrap();
        assert_eq!(o.orbits, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn admissibility_154() {
        let inv = inv154();
        let plus = admissibility(&signed_graph(&inv, &SignPattern::plus(154)).unwrap());
        assert_eq!(plus.dim(), 3);
        assert!(plus.trivial_zero_classes.is_empty());
        let e = SignPattern::parse(154, "+--").unwrap();
        let r = admissibility(&signed_graph(&inv, &e).unwrap());
        assert_eq!(r.trivial_zero_classes, vec![0, 1, 2, 3]);
        assert_eq!(r.fundamental_domain, vec![4]);
        assert_eq!(r.basis(), vec![vec![0, 0, 0, 0, 1, -1]]);
        let (t, n) = classify_zeroes(&[0, 1, 2, 3], &r).unwrap();
        assert_eq!((t.len(), n.len()), (4, 0));
    }

    #[test]
    fn negative_loop_is_trivial_zero() {
        let inv = InvolutionSet {
            level: 7,
            sigma: vec![(7, vec![0, 2, 1])],
        };
        let r = admissibility(&signed_graph(&inv, &SignPattern::minus(7)).unwrap());
        assert_eq!(r.trivial_zero_classes, vec![0]);
        assert_eq!(r.basis(), vec![vec![0, 1, -1]]);
    }
}
