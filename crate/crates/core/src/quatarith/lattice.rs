//! Integer lattices of rank 4: Hermite normal form, LLL reduction and
//! Fincke-Pohst enumeration of short vectors for positive definite forms.
//!
//! A quadratic form is given by an even-diagonal integer Gram matrix `g`,
//! with Q(x) = x^T g x / 2. Floating point only guides the search; every
//! reported vector has its norm recomputed exactly.

use crate::error::{Error, Result};
use crate::exactalg::arith::ext_gcd;

pub type Vec4 = [i64; 4];
pub type Mat4 = [[i64; 4]; 4];

fn egcd128(a: i128, b: i128) -> (i128, i128, i128) {
    if let (Ok(a64), Ok(b64)) = (i64::try_from(a), i64::try_from(b)) {
        let (g, x, y) = ext_gcd(a64, b64);
        return (g as i128, x as i128, y as i128);
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form of the lattice generated by `gens`, which
/// must contain `d * Z^4`. Returns an upper triangular basis with positive
/// diagonal and entries above each pivot reduced into [0, pivot).
pub fn hnf_mod(gens: &[Vec4], d: i128) -> Mat4 {
    assert!(d > 0);
    let mut rows: Vec<[i128; 4]> = gens
        .iter()
        .map(|g| {
            let mut r = [0i128; 4];
            for k in 0..4 {
                r[k] = (g[k] as i128).rem_euclid(d);
            }
            r
        })
        .collect();
    let mut out: Mat4 = [[0; 4]; 4];
    for c in 0..4 {
        let mut de = [0i128; 4];
        de[c] = d;
        rows.push(de);
        let mut pivot: Option<[i128; 4]> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for mut r in rows.drain(..) {
            if r[c] == 0 {
                if r.iter().any(|&x| x != 0) {
                    rest.push(r);
                }
                continue;
            }
            match pivot.as_mut() {
                None => pivot = Some(r),
                Some(p) => {
                    let (g, u, v) = egcd128(p[c], r[c]);
                    let (pc, rc) = (p[c] / g, r[c] / g);
                    let mut np = [0i128; 4];
                    for k in c..4 {
                        np[k] = u * p[k] + v * r[k];
                        r[k] = rc * p[k] - pc * r[k];
                    }
                    for k in c + 1..4 {
                        np[k] = np[k].rem_euclid(d);
                        r[k] = r[k].rem_euclid(d);
                    }
                    *p = np;
                    debug_assert_eq!(r[c], 0);
                    if r.iter().any(|&x| x != 0) {
                        rest.push(r);
                    }
                }
            }
        }
        let mut p = pivot.expect("d * e_c keeps a pivot");
        if p[c] < 0 {
            for x in p.iter_mut() {
                *x = -*x;
            }
        }
        for k in c + 1..4 {
            p[k] = p[k].rem_euclid(d);
        }
        for k in 0..4 {
            out[c][k] = p[k] as i64;
        }
        rows = rest;
    }
    // Reduce entries above the pivots.
    for c in 1..4 {
        let piv = out[c][c];
        for r in 0..c {
            let q = out[r][c].div_euclid(piv);
            if q != 0 {
                for k in c..4 {
                    out[r][k] -= q * out[c][k];
                }
            }
        }
    }
    out
}

pub fn det_upper(m: &Mat4) -> i128 {
    (0..4).map(|i| m[i][i] as i128).product()
}

/// Determinant of a 4x4 integer matrix by cofactor expansion in i128.
pub fn det4(m: &[[i128; 4]; 4]) -> i128 {
    fn det3(m: &[[i128; 4]; 4], rows: [usize; 3], cols: [usize; 3]) -> i128 {
        let a = |i: usize, j: usize| m[rows[i]][cols[j]];
        a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
    }
    let mut det = 0i128;
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let minor = det3(m, [1, 2, 3], [cols[0], cols[1], cols[2]]);
        let s = if j % 2 == 0 { 1 } else { -1 };
        det += s * m[0][j] * minor;
    }
    det
}

/// Gram matrix B g B^T of the sublattice with basis rows `b`.
pub fn restrict_gram(g: &Mat4, b: &Mat4) -> [[i128; 4]; 4] {
    let mut bg = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            bg[i][j] = (0..4).map(|k| b[i][k] as i128 * g[k][j] as i128).sum();
        }
    }
    let mut out = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| bg[i][k] * b[j][k] as i128).sum();
        }
    }
    out
}

pub fn norm_of(g: &[[i128; 4]; 4], x: &Vec4) -> i128 {
    let mut s = 0i128;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] as i128 * g[i][j] * x[j] as i128;
        }
    }
    s / 2
}

/// LLL reduction (delta = 0.99) of the standard basis with respect to the
/// Gram matrix `g`. Returns the unimodular transform U (rows are the new
/// basis vectors in old coordinates) and the reduced Gram matrix.
pub fn lll(g: &[[i128; 4]; 4]) -> (Mat4, [[i128; 4]; 4]) {
    let mut u: [[i128; 4]; 4] = [[0; 4]; 4];
    for i in 0..4 {
        u[i][i] = 1;
    }
    let mut gram = *g;
    let n = 4;
    let mut k = 1;
    let mut guard = 0;
    while k < n {
        guard += 1;
        assert!(guard < 100_000, "LLL failed to converge");
        // Gram-Schmidt data from the current Gram matrix.
        for j in (0..k).rev() {
            let (mu, _) = gso(&gram);
            let q = mu[k][j].round();
            if q != 0.0 {
                size_reduce(&mut gram, &mut u, k, j, q as i128);
            }
        }
        let (mu, bstar) = gso(&gram);
        if bstar[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            k += 1;
        } else {
            swap_basis(&mut gram, &mut u, k, k - 1);
            k = k.saturating_sub(1).max(1);
        }
    }
    let mut out: Mat4 = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = i64::try_from(u[i][j]).expect("LLL transform fits in i64");
        }
    }
    (out, gram)
}

fn gso(g: &[[i128; 4]; 4]) -> ([[f64; 4]; 4], [f64; 4]) {
    let mut mu = [[0f64; 4]; 4];
    let mut r = [[0f64; 4]; 4];
    let mut bstar = [0f64; 4];
    for i in 0..4 {
        for j in 0..=i {
            let mut s = g[i][j] as f64;
            for k in 0..j {
                s -= mu[j][k] * r[i][k];
            }
            r[i][j] = s;
            if j < i {
                mu[i][j] = s / bstar[j];
            } else {
                bstar[i] = s;
            }
        }
    }
    (mu, bstar)
}

/// b_k -= q b_j.
fn size_reduce(g: &mut [[i128; 4]; 4], u: &mut [[i128; 4]; 4], k: usize, j: usize, q: i128) {
    for c in 0..4 {
        u[k][c] -= q * u[j][c];
    }
    let new_kk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j];
    for c in 0..4 {
        if c != k {
            g[k][c] -= q * g[j][c];
            g[c][k] = g[k][c];
        }
    }
    g[k][k] = new_kk;
}

fn swap_basis(g: &mut [[i128; 4]; 4], u: &mut [[i128; 4]; 4], a: usize, b: usize) {
    u.swap(a, b);
    g.swap(a, b);
    for r in g.iter_mut() {
        r.swap(a, b);
    }
}

/// All nonzero x with Q(x) <= bound, each reported with its exact norm.
/// Vectors are in the coordinates of the basis underlying `g`.
pub fn short_vectors(g: &[[i128; 4]; 4], bound: i128) -> Vec<(Vec4, i128)> {
    let (u, red) = lll(g);
    let mut out = Vec::new();
    enumerate_reduced(&red, bound, |y, n| {
        let mut x = [0i64; 4];
        for (i, yi) in y.iter().enumerate() {
            for k in 0..4 {
                x[k] += yi * u[i][k];
            }
        }
        out.push((x, n));
    });
    out
}

/// Number of vectors of each norm 0..=bound (index 0 counts only zero).
pub fn theta_counts(g: &[[i128; 4]; 4], bound: i128) -> Vec<u64> {
    let (_, red) = lll(g);
    let mut counts = vec![0u64; bound as usize + 1];
    counts[0] = 1;
    enumerate_reduced(&red, bound, |_, n| counts[n as usize] += 1);
    counts
}

/// Number of vectors of norm exactly `n`.
pub fn count_norm(g: &[[i128; 4]; 4], n: i128) -> u64 {
    let (_, red) = lll(g);
    let mut c = 0;
    enumerate_reduced(&red, n, |_, m| {
        if m == n {
            c += 1
        }
    });
    c
}

/// Fincke-Pohst over an (ideally LLL-reduced) Gram matrix; calls `f` on
/// every nonzero vector with exact norm <= bound.
pub fn enumerate_reduced<F: FnMut(&Vec4, i128)>(g: &[[i128; 4]; 4], bound: i128, mut f: F) {
    if bound <= 0 {
        return;
    }
    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2 with A = g / 2.
    let mut q = [[0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            q[i][j] = g[i][j] as f64 / 2.0;
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..4 {
            for l in k..4 {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let slack = 1e-7;
    let b = bound as f64 * (1.0 + slack) + slack;
    let mut x = [0i64; 4];
    let mut rem = [0f64; 5];
    rem[4] = b;
    fn rec<F: FnMut(&Vec4, i128)>(
        i: usize,
        q: &[[f64; 4]; 4],
        g: &[[i128; 4]; 4],
        bound: i128,
        x: &mut Vec4,
        rem: &mut [f64; 5],
        f: &mut F,
    ) {
        let mut c = 0f64;
        for j in i + 1..4 {
            c += q[i][j] * x[j] as f64;
        }
        let r = rem[i + 1].max(0.0);
        let w = (r / q[i][i]).sqrt() + 1e-7 * (1.0 + c.abs());
        let lo = (-c - w).ceil() as i64;
        let hi = (-c + w).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 + c;
            rem[i] = rem[i + 1] - q[i][i] * t * t;
            if i == 0 {
                if x.iter().any(|&z| z != 0) {
                    let n = norm_of(g, x);
                    if n <= bound {
                        f(x, n);
                    }
                }
            } else {
                rec(i - 1, q, g, bound, x, rem, f);
            }
        }
        x[i] = 0;
    }
    rec(3, &q, g, bound, &mut x, &mut rem, &mut f);
}

/// Checks that `gens` generate the lattice with basis `h` (used in tests
/// and defensive checks).
pub fn expect_det(h: &Mat4, expected: i128, what: &str) -> Result<()> {
    let d = det_upper(h);
    if d != expected {
        return Err(Error::defect(format!(
            "{what}: lattice index {d}, expected {expected}"
        )));
    }
    Ok(())
}
