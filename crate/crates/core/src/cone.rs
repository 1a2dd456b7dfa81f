//! Rational polyhedral cones with exact double description, duality and
//! Hilbert bases.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{self, rat_vec, Rat};
use crate::error::{Error, Result};

/// A cone `{x : <f,x> >= 0 for f in facets, <e,x> = 0 for e in equations}`
/// that is also `cone(rays) + span(lineality)`. Both descriptions are irredundant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub ambient: usize,
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
}

impl Cone {
    pub fn from_inequalities(ineqs: &[Vec<i64>], ambient: usize) -> Cone {
        let (rays, lineality) = double_description(ineqs, ambient);
        let (facets, equations) = double_description(&generators_as_rows(&rays, &lineality), ambient);
        Cone { ambient, rays, lineality, facets, equations }
    }

    pub fn from_generators(gens: &[Vec<i64>], ambient: usize) -> Cone {
        let (facets, equations) = double_description(gens, ambient);
        let (rays, lineality) = double_description(&generators_as_rows(&facets, &equations), ambient);
        Cone { ambient, rays, lineality, facets, equations }
    }

    /// `{y : <x,y> >= 0 for all x in C}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| arith::dot(f, x) >= 0)
            && self.equations.iter().all(|e| arith::dot(e, x) == 0)
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.facets.iter().all(|f| arith::rdot(&rat_vec(f), x) >= Rat::zero())
            && self.equations.iter().all(|e| arith::rdot(&rat_vec(e), x).is_zero())
    }

    pub fn in_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| arith::dot(f, x) > 0)
            && self.equations.iter().all(|e| arith::dot(e, x) == 0)
    }

    /// Indices of rays lying on each facet.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| (0..self.rays.len()).filter(|&i| arith::dot(f, &self.rays[i]) == 0).collect())
            .collect()
    }
}

fn generators_as_rows(rays: &[Vec<i64>], lin: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = rays.to_vec();
    for l in lin {
        out.push(l.clone());
        out.push(arith::scale(l, -1));
    }
    out
}

/// Extreme rays of `{x : <h,x> >= 0}` for the given rows, together with a
/// lineality basis. Equalities are passed as a pair `h, -h`.
pub fn extreme_rays(ineqs: &[Vec<i64>], ambient: usize) -> Cone {
    Cone::from_inequalities(ineqs, ambient)
}

fn prim128(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn dot128(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, &y)| x * y as i128).sum()
}

fn to64(v: &[i128]) -> Vec<i64> {
    v.iter().map(|&x| i64::try_from(x).expect("ray entry out of i64 range")).collect()
}

fn tight_rank(r: &[i128], ineqs: &[&Vec<i64>]) -> usize {
    let tight: Vec<Vec<i64>> = ineqs.iter().filter(|h| dot128(r, h) == 0).map(|h| (*h).clone()).collect();
    arith::rank_i64(&tight)
}

fn double_description(ineqs: &[Vec<i64>], d: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut lin: Vec<Vec<i128>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i128).collect()).collect();
    let mut rays: Vec<Vec<i128>> = vec![];
    let mut done: Vec<&Vec<i64>> = vec![];
    for h in ineqs {
        debug_assert_eq!(h.len(), d);
        if h.iter().all(|x| *x == 0) {
            continue;
        }
        done.push(h);
        if let Some(pos) = lin.iter().position(|l| dot128(l, h) != 0) {
            let mut l0 = lin.remove(pos);
            if dot128(&l0, h) < 0 {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let s0 = dot128(&l0, h);
            let reduce = |v: &Vec<i128>| -> Vec<i128> {
                let s = dot128(v, h);
                prim128(&v.iter().zip(&l0).map(|(x, y)| s0 * x - s * y).collect::<Vec<_>>())
            };
            lin = lin.iter().map(reduce).collect();
            rays = rays.iter().map(reduce).collect();
            rays.push(prim128(&l0));
            continue;
        }
        let target = d - lin.len() - 1;
        let mut pos = vec![];
        let mut neg = vec![];
        let mut next = vec![];
        for r in rays.drain(..) {
            let s = dot128(&r, h);
            if s > 0 {
                pos.push((r, s));
            } else if s < 0 {
                neg.push((r, s));
            } else {
                next.push(r);
            }
        }
        let mut fresh = BTreeSet::new();
        for (p, sp) in &pos {
            for (n, sn) in &neg {
                let c: Vec<i128> = p.iter().zip(n).map(|(x, y)| sp * y - sn * x).collect();
                let c = prim128(&c);
                if c.iter().all(|x| *x == 0) {
                    continue;
                }
                if tight_rank(&c, &done) == target {
                    fresh.insert(c);
                }
            }
        }
        next.extend(pos.into_iter().map(|x| x.0));
        next.extend(fresh);
        rays = next;
    }
    let target = d - lin.len();
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    for r in &rays {
        if target >= 1 && tight_rank(r, &done) == target - 1 {
            out.insert(to64(r));
        }
    }
    let lin64: Vec<Vec<i64>> = lin.iter().map(|l| arith::primitive_signed(&to64(l))).collect();
    let lin64 = canonical_span_basis(&lin64);
    (out.into_iter().collect(), lin64)
}

/// Deterministic integer basis of a rational span: rows of the reduced echelon
/// form, cleared of denominators.
pub fn canonical_span_basis(vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if vs.is_empty() {
        return vec![];
    }
    let mut m: Vec<Vec<Rat>> = vs.iter().map(|v| rat_vec(v)).collect();
    arith::rref(&mut m);
    m.iter().map(|r| arith::integral_ray(r)).collect()
}

/// Pulling triangulation of a pointed cone into simplicial cones, returned as
/// index sets into `cone.rays`.
pub fn triangulate(cone: &Cone) -> Vec<Vec<usize>> {
    let inc = cone.incidence();
    let all: Vec<usize> = (0..cone.rays.len()).collect();
    let mut out = vec![];
    pull(cone, &inc, &all, cone.dim(), &mut out);
    out
}

fn pull(cone: &Cone, inc: &[Vec<usize>], face: &[usize], dim: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == dim {
        out.push(face.to_vec());
        return;
    }
    let r0 = face[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in inc {
        let s: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
        if s.contains(&r0) {
            continue;
        }
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| cone.rays[i].clone()).collect();
        if arith::rank_i64(&rows) == dim - 1 {
            facets.insert(s);
        }
    }
    for g in facets {
        let mut sub = vec![];
        pull(cone, inc, &g, dim - 1, &mut sub);
        for mut s in sub {
            s.insert(0, r0);
            out.push(s);
        }
    }
}

/// Lattice points `sum lambda_i r_i` with `0 <= lambda_i < 1` for linearly
/// independent integer rows `r_i` spanning `Z^d ⊗ Q`.
pub fn parallelepiped_points(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let h = arith::hermite_rows(gens);
    let d = gens.len();
    let diag: Vec<i64> = (0..d).map(|i| h[i][i]).collect();
    let g: Vec<Vec<Rat>> = gens.iter().map(|r| rat_vec(r)).collect();
    let mut out = vec![];
    let mut x = vec![0i64; d];
    loop {
        let lam = arith::solve_left(&g, &rat_vec(&x)).expect("independent generators");
        let mut p = vec![Rat::zero(); d];
        for (l, r) in lam.iter().zip(&g) {
            let f = l - l.floor();
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += &f * ri;
            }
        }
        out.push(p.iter().map(|v| arith::to_i64(&v.to_integer())).collect());
        // odometer over the box
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            x[i] += 1;
            if x[i] < diag[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Minimal generating set of `C ∩ Z^d` for a pointed cone.
pub fn hilbert_basis(cone: &Cone) -> Result<Vec<Vec<i64>>> {
    if !cone.is_pointed() {
        return Err(Error::NotPointed(cone.lineality.len()));
    }
    if cone.rays.is_empty() {
        return Ok(vec![]);
    }
    if !cone.equations.is_empty() {
        // pass to lattice coordinates on the linear span
        let basis = arith::saturated_kernel(&cone.equations, cone.ambient);
        let b: Vec<Vec<Rat>> = basis.iter().map(|v| rat_vec(v)).collect();
        let coords: Vec<Vec<i64>> = cone
            .rays
            .iter()
            .map(|r| {
                let y = arith::solve_left(&b, &rat_vec(r)).expect("ray in span");
                y.iter().map(|v| arith::to_i64(&v.to_integer())).collect()
            })
            .collect();
        let inner = Cone::from_generators(&coords, basis.len());
        let hb = hilbert_basis(&inner)?;
        let mut out: Vec<Vec<i64>> = hb
            .iter()
            .map(|y| {
                let mut x = vec![0i64; cone.ambient];
                for (c, bv) in y.iter().zip(&basis) {
                    for (xi, bi) in x.iter_mut().zip(bv) {
                        *xi += c * bi;
                    }
                }
                x
            })
            .collect();
        out.sort();
        return Ok(out);
    }
    let mut cand: BTreeSet<Vec<i64>> = cone.rays.iter().cloned().collect();
    for simplex in triangulate(cone) {
        let gens: Vec<Vec<i64>> = simplex.iter().map(|&i| cone.rays[i].clone()).collect();
        for p in parallelepiped_points(&gens) {
            if p.iter().any(|x| *x != 0) {
                cand.insert(p);
            }
        }
    }
    let cand: Vec<Vec<i64>> = cand.into_iter().collect();
    let out: Vec<Vec<i64>> = cand
        .iter()
        .filter(|x| {
            !cand.iter().any(|y| {
                y != *x && {
                    let diff = arith::sub(x, y);
                    diff.iter().any(|v| *v != 0) && cone.contains(&diff)
                }
            })
        })
        .cloned()
        .collect();
    Ok(out)
}

/// Enumerate all `a in N^k` with `sum a_i gens_i = target`. `grading` must be
/// strictly positive on every generator.
pub fn fiber(gens: &[Vec<i64>], grading: &[i64], target: &[i64]) -> Vec<Vec<u32>> {
    let degs: Vec<i64> = gens.iter().map(|g| arith::dot(g, grading)).collect();
    assert!(degs.iter().all(|d| *d > 0), "grading not positive on generators");
    let mut out = vec![];
    let mut cur = vec![0u32; gens.len()];
    let rem = target.to_vec();
    fiber_rec(gens, &degs, 0, rem, arith::dot(target, grading), &mut cur, &mut out);
    out
}

fn fiber_rec(
    gens: &[Vec<i64>],
    degs: &[i64],
    i: usize,
    rem: Vec<i64>,
    rem_deg: i64,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if rem_deg == 0 {
        if rem.iter().all(|x| *x == 0) {
            out.push(cur.clone());
        }
        return;
    }
    if i == gens.len() || rem_deg < 0 {
        return;
    }
    let max = rem_deg / degs[i];
    let mut r = rem;
    for m in 0..=max {
        if m > 0 {
            for (x, g) in r.iter_mut().zip(&gens[i]) {
                *x -= g;
            }
        }
        cur[i] = m as u32;
        fiber_rec(gens, degs, i + 1, r.clone(), rem_deg - m * degs[i], cur, out);
    }
    cur[i] = 0;
}
