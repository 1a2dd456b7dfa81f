//! Graded pieces of T1 and T2 of the Gorenstein singularity, the
//! Kodaira-Spencer pairing and the obstruction space `W = J / J~`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{self, rat, Rat};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::polytope::{validate_polytope, LatticePolytope};
use crate::scheme;
use crate::versal::{self, Gorenstein};

/// Linear relations among the given vectors: the null space of the matrix
/// having them as columns.
pub fn relation_space(vectors: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return vec![];
    }
    let d = vectors[0].len();
    let rows: Vec<Vec<Rat>> = (0..d).map(|j| vectors.iter().map(|v| rat(v[j])).collect()).collect();
    arith::nullspace(&rows, vectors.len())
}

/// Relations among `E[subset]`, written in coordinates indexed by all of `E`.
fn relations_in(e: &[Vec<i64>], subset: &[usize]) -> Vec<Vec<Rat>> {
    let vs: Vec<Vec<i64>> = subset.iter().map(|&i| e[i].clone()).collect();
    relation_space(&vs)
        .into_iter()
        .map(|q| {
            let mut full = vec![Rat::zero(); e.len()];
            for (k, &i) in subset.iter().enumerate() {
                full[i] = q[k].clone();
            }
            full
        })
        .collect()
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        arith::rank(rows)
    }
}

/// `E_j^R = {r in E : <(a^j,1), r> < <(a^j,1), R>}` for every vertex.
pub fn e_subsets(p: &LatticePolytope, g: &Gorenstein, r: &[i64]) -> Vec<Vec<usize>> {
    p.vertices
        .iter()
        .map(|v| {
            let a = [v.clone(), vec![1]].concat();
            let bound = arith::dot(&a, r);
            (0..g.elements.len()).filter(|&i| arith::dot(&a, &g.elements[i]) < bound).collect()
        })
        .collect()
}

/// `dim L(U_j E_j^R) - dim sum_j L(E_j^R)`.
pub fn t1_dimension(p: &LatticePolytope, g: &Gorenstein, r: &[i64]) -> usize {
    let sets = e_subsets(p, g, r);
    let union: Vec<usize> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let whole = relations_in(&g.elements, &union).len();
    let sum: Vec<Vec<Rat>> = sets.iter().flat_map(|s| relations_in(&g.elements, s)).collect();
    whole - rank(&sum)
}

/// `dim Ker(+_j L(E_j^R) -> L(E))` minus the rank of the edge relations
/// `L(E_i^R ∩ E_j^R) -> L(E_i^R) + L(E_j^R)`, `q -> (q, -q)`.
pub fn t2_dimension(p: &LatticePolytope, g: &Gorenstein, r: &[i64]) -> usize {
    let sets = e_subsets(p, g, r);
    let m = g.elements.len();
    let blocks: Vec<Vec<Vec<Rat>>> = sets.iter().map(|s| relations_in(&g.elements, s)).collect();
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    let stacked: Vec<Vec<Rat>> = blocks.iter().flatten().cloned().collect();
    let kernel = total - rank(&stacked);
    let nv = p.vertices.len();
    let mut image = vec![];
    for e in &p.edges {
        let (i, j) = (e.tail, e.head);
        let common: Vec<usize> = sets[i].iter().filter(|x| sets[j].contains(x)).copied().collect();
        for q in relations_in(&g.elements, &common) {
            let mut v = vec![Rat::zero(); nv * m];
            for k in 0..m {
                v[i * m + k] = q[k].clone();
                v[j * m + k] = -q[k].clone();
            }
            image.push(v);
        }
    }
    kernel - rank(&image)
}

/// `Phi(t, q) = sum_{v,i} t_i q_v eta_i(c^v)` for a relation `q` among the
/// boundary generators.
pub fn pairing(p: &LatticePolytope, g: &Gorenstein, t: &[i64], q: &[Rat]) -> Rat {
    pairing_with(&versal::eta_table(p, g), t, q)
}

fn pairing_with(table: &versal::EtaTable, t: &[i64], q: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (v, qv) in q.iter().enumerate().take(table.eta.len()) {
        if !qv.is_zero() {
            s += qv * rat(arith::dot(t, &table.eta[v]));
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct KodairaSpencer {
    /// Basis of the relations among `E ∩ ∂sigma^v` (all generators but `[0,1]`).
    #[serde(skip)]
    pub relations: Vec<Vec<Rat>>,
    /// Rows: basis of `V`; columns: `relations`.
    #[serde(skip)]
    pub matrix: Vec<Vec<Rat>>,
    pub rank: usize,
    pub kills_diagonal: bool,
    pub kills_vertex_relations: bool,
    pub right_kernel_is_vertex_relations: bool,
}

pub fn kodaira_spencer(p: &LatticePolytope, g: &Gorenstein) -> KodairaSpencer {
    let table = versal::eta_table(p, g);
    let boundary = &g.elements[..g.w()];
    let relations = relation_space(boundary);
    let space = scheme::summand_space(p);
    let matrix: Vec<Vec<Rat>> = space
        .basis
        .iter()
        .map(|t| relations.iter().map(|q| pairing_with(&table, t, q)).collect())
        .collect();
    let rank = if relations.is_empty() { 0 } else { rank(&matrix) };
    let ones = vec![1; p.num_edges()];
    let kills_diagonal = relations.iter().all(|q| pairing_with(&table, &ones, q).is_zero());
    let mut r_star = vec![0; g.n + 1];
    r_star[g.n] = 1;
    let vertex_rel: Vec<Vec<Rat>> = e_subsets(p, g, &r_star)
        .iter()
        .flat_map(|s| relations_in(boundary, s))
        .collect();
    let kills_vertex_relations = vertex_rel
        .iter()
        .all(|q| space.basis.iter().all(|t| pairing_with(&table, t, q).is_zero()));
    let right_kernel_is_vertex_relations = relations.len() - rank == self::rank(&vertex_rel);
    KodairaSpencer { relations, matrix, rank, kills_diagonal, kills_vertex_relations, right_kernel_is_vertex_relations }
}

/// `dim W_k` for `2 <= k <= max k0 + 1`.
pub fn w_dimensions(p: &LatticePolytope) -> Vec<(u32, usize)> {
    let top = (scheme::scheme_ideal(p).max_k0() + 1).max(2);
    (2..=top).map(|k| (k, w_dimension(p, k))).collect()
}

/// `dim W_k`: the degree-`k` part of the ideal generated by all power sums of
/// degree `<= k`, modulo the part generated in degrees `< k`, computed in the
/// variables `u_i = t_i - t_1`.
pub fn w_dimension(p: &LatticePolytope, k: u32) -> usize {
    let lower: Vec<Poly> = (1..k).flat_map(|j| scheme::bar_power_sums(p, j)).collect();
    let before = poly::span_rank(&poly::graded_piece(&lower, k));
    let mut all = lower;
    all.extend(scheme::bar_power_sums(p, k));
    poly::span_rank(&poly::graded_piece(&all, k)) - before
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FaceCheck {
    pub degree: Vec<i64>,
    /// Vertices with `<(a,1), R> = 1`.
    pub face: Vec<usize>,
    /// Dimension of the summand space of the face (0 for a point or nothing).
    pub raw: usize,
    pub computed: usize,
    pub agrees: bool,
}

/// For `R` with `<(a^j,1), R> <= 1` on all vertices, compare `T1(-R)` with
/// the summand space of the face where the value 1 is attained.
pub fn face_t1_crosscheck(p: &LatticePolytope, g: &Gorenstein, r: &[i64]) -> Result<FaceCheck> {
    let vals: Vec<i64> = p.vertices.iter().map(|v| arith::dot(&[v.clone(), vec![1]].concat(), r)).collect();
    if vals.iter().any(|x| *x > 1) {
        return Err(Error::DegenerateInput(format!("degree {r:?} exceeds 1 on a vertex")));
    }
    let face: Vec<usize> = (0..vals.len()).filter(|&j| vals[j] == 1).collect();
    let raw = if face.len() < 2 {
        0
    } else {
        let pts: Vec<Vec<i64>> = face.iter().map(|&j| p.vertices[j].clone()).collect();
        scheme::summand_space(&validate_polytope(None, &pts)?).dim()
    };
    let computed = t1_dimension(p, g, r);
    let agrees = computed == raw.saturating_sub(1);
    Ok(FaceCheck { degree: r.to_vec(), face, raw, computed, agrees })
}

/// Degrees `R = [c, h]` with `max_j <(a^j,1), R> = 1` and `|c_i| <= bound`.
pub fn low_degrees(p: &LatticePolytope, bound: i64) -> Vec<Vec<i64>> {
    let n = p.ambient;
    let mut out = BTreeSet::new();
    let mut c = vec![-bound; n];
    loop {
        let m = p.vertices.iter().map(|v| arith::dot(v, &c)).max().unwrap();
        out.insert([c.clone(), vec![1 - m]].concat());
        let mut i = 0;
        while i < n && c[i] == bound {
            c[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
        c[i] += 1;
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GradedDims {
    pub degree: Vec<i64>,
    pub t1: usize,
    pub t2: usize,
    /// `dim W_k` when the degree is `k R*` with `k >= 2`.
    pub w: Option<usize>,
}

/// `kR*` for the requested multiples, plus the low degrees within the given
/// box bound.
pub fn graded_dims(p: &LatticePolytope, g: &Gorenstein, multiples: &[u32], low: Option<i64>) -> Vec<GradedDims> {
    let mut degrees: Vec<Vec<i64>> = multiples
        .iter()
        .map(|&k| {
            let mut r = vec![0; g.n + 1];
            r[g.n] = k as i64;
            r
        })
        .collect();
    if let Some(bound) = low {
        for r in low_degrees(p, bound) {
            if !degrees.contains(&r) {
                degrees.push(r);
            }
        }
    }
    degrees
        .into_iter()
        .map(|r| {
            let is_multiple = r[..g.n].iter().all(|x| *x == 0) && r[g.n] >= 2;
            let wk = is_multiple.then(|| w_dimension(p, r[g.n] as u32));
            GradedDims { t1: t1_dimension(p, g, &r), t2: t2_dimension(p, g, &r), w: wk, degree: r }
        })
        .collect()
}

/// Default multiples of `R*`: `1..=max k0 + 1`.
pub fn default_multiples(p: &LatticePolytope) -> Vec<u32> {
    (1..=(scheme::scheme_ideal(p).max_k0() + 1).max(2)).collect()
}
