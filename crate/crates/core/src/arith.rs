//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigRational` or `BigInt` internally and hands
//! back `i64` vectors where the caller deals in lattice points. Desk-scale
//! inputs never come near the `i64` range; conversions panic loudly if they do.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divide by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_slice(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Primitive with the first nonzero entry positive. Used for vectors that only
/// matter up to sign (lineality directions, kernel vectors).
pub fn primitive_signed(v: &[i64]) -> Vec<i64> {
    let p = primitive(v);
    match p.iter().find(|x| **x != 0) {
        Some(x) if *x < 0 => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}

/// Clear denominators and reduce to a primitive integer vector on the same ray.
pub fn integral_ray(v: &[Rat]) -> Vec<i64> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            y.to_i64().expect("integer vector entry out of i64 range")
        })
        .collect()
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer out of i64 range")
}

/// Row-reduce in place; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rat>> = rows.iter().map(|r| rat_vec(r)).collect();
    rank(&m)
}

/// Basis of `{x : M x = 0}` where `M` has `ncols` columns.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); ncols];
            x[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

/// Integer vectors spanning the rational kernel (not a lattice basis).
pub fn nullspace_i64(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let m: Vec<Vec<Rat>> = rows.iter().map(|r| rat_vec(r)).collect();
    nullspace(&m, ncols).iter().map(|v| integral_ray(v)).collect()
}

/// Solve `x · A = b` for the row vector `x` (A given by rows). `None` if inconsistent.
pub fn solve_left(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let k = a.len();
    let n = b.len();
    // transpose: A^T x = b, augmented
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = (0..k).map(|i| a[i][j].clone()).collect();
            row.push(b[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][k].clone();
    }
    Some(x)
}

/// Is `v` in the rational row span of `rows`?
pub fn in_span(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
    if rows.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    solve_left(rows, v).is_some()
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Z-basis of `ker(M) ∩ Z^n`, LLL-reduced.
pub fn saturated_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    // column echelon form: M U = [H | 0] with U unimodular
    let mut a = big_rows(rows);
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // u stored as columns: u[j] is column j
    let mut k = 0;
    for i in 0..a.len() {
        if k == ncols {
            break;
        }
        loop {
            // smallest nonzero |a[i][j]| among j >= k
            let mut best: Option<usize> = None;
            for j in k..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|b| a[i][j].abs() < a[i][b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_col(&mut a, &mut u, k, b);
            let mut done = true;
            for j in k + 1..ncols {
                if !a[i][j].is_zero() {
                    let q = a[i][j].div_floor(&a[i][k]);
                    col_axpy(&mut a, &mut u, j, k, &q);
                    if !a[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<i64>> = (k..ncols).map(|j| u[j].iter().map(to_i64).collect()).collect();
    lll(&basis)
}

fn swap_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x == y {
        return;
    }
    for row in a.iter_mut() {
        row.swap(x, y);
    }
    u.swap(x, y);
}

/// column j -= q * column k
fn col_axpy(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let t = &row[k] * q;
        row[j] -= t;
    }
    let ck = u[k].clone();
    for (x, y) in u[j].iter_mut().zip(ck) {
        *x -= y * q;
    }
}

/// Lattice basis for the saturation of the lattice spanned by `rows`
/// inside its rational span.
pub fn saturation(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let perp = saturated_kernel(rows, ncols);
    if perp.is_empty() {
        return identity(ncols);
    }
    saturated_kernel(&perp, ncols)
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// LLL reduction (delta = 3/4) of linearly independent integer vectors.
pub fn lll(basis: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut b: Vec<Vec<BigInt>> = big_rows(basis);
    let n = b.len();
    if n == 0 {
        return vec![];
    }
    let delta = Rat::new(BigInt::from(3), BigInt::from(4));
    let to_r = |v: &[BigInt]| -> Vec<Rat> { v.iter().map(|x| Rat::from_integer(x.clone())).collect() };
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
        let mut bs: Vec<Vec<Rat>> = vec![];
        let mut mu = vec![vec![Rat::zero(); b.len()]; b.len()];
        for i in 0..b.len() {
            let bi = to_r(&b[i]);
            let mut v = bi.clone();
            for j in 0..i {
                let d = rdot(&bs[j], &bs[j]);
                mu[i][j] = rdot(&bi, &bs[j]) / d;
                for (x, y) in v.iter_mut().zip(&bs[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            bs.push(v);
        }
        (bs, mu)
    };
    let mut k = 1;
    let (mut bs, mut mu) = gso(&b);
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if !q.is_zero() {
                let qi = q.to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(bj) {
                    *x -= y * &qi;
                }
                let g = gso(&b);
                bs = g.0;
                mu = g.1;
            }
        }
        let lhs = rdot(&bs[k], &bs[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * rdot(&bs[k - 1], &bs[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let g = gso(&b);
            bs = g.0;
            mu = g.1;
            k = (k - 1).max(1);
        }
    }
    b.iter().map(|v| v.iter().map(to_i64).collect()).collect()
}

/// Upper triangular Hermite form of a square nonsingular integer matrix (rows),
/// positive diagonal. Row operations only, so the row lattice is unchanged.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a = big_rows(rows);
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..n {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..n {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    let pr = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(pr) {
                        *x -= y * &q;
                    }
                    if !a[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                if a[r][c].is_negative() {
                    for x in a[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                r += 1;
                break;
            }
        }
    }
    a.iter().map(|v| v.iter().map(to_i64).collect()).collect()
}

pub fn det_i64(rows: &[Vec<i64>]) -> i64 {
    let h = hermite_rows(rows);
    let mut d = 1i64;
    for (i, row) in h.iter().enumerate() {
        d *= row[i];
    }
    // row ops via swaps may flip sign; only |det| is used by callers
    d.abs()
}
