//! The space of Minkowski summands, the scheme cut out by the power-sum
//! equations of the 2-faces, its reduced components and toric binomials.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, rat, rat_vec, Rat};
use crate::cone::{self, Cone};
use crate::error::{Error, Result};
use crate::poly::{self, EchelonSpan, Poly};
use crate::polytope::{convex_hull_vertices, LatticePolytope};

/// `V = {t : sum_i t_i eps_i d^i = 0 for every 2-face}`.
#[derive(Clone, Debug, Serialize)]
pub struct SummandSpace {
    pub n: usize,
    /// One row per 2-face and ambient coordinate (zero rows dropped).
    pub equations: Vec<Vec<i64>>,
    /// Integral basis of V (rational span).
    pub basis: Vec<Vec<i64>>,
    /// Lattice basis of `V^perp ∩ Z^N`.
    pub perp: Vec<Vec<i64>>,
}

impl SummandSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        self.equations.iter().all(|e| arith::dot(e, t) == 0)
    }

    pub fn perp_contains(&self, d: &[i64]) -> bool {
        self.basis.iter().all(|b| arith::dot(b, d) == 0)
    }

    /// Coordinates of the class of `eta` in `Z^N / (V^perp ∩ Z^N)`, read off
    /// by pairing with the basis of V.
    pub fn class(&self, eta: &[i64]) -> Vec<i64> {
        self.basis.iter().map(|b| arith::dot(b, eta)).collect()
    }

    pub fn equivalent(&self, a: &[i64], b: &[i64]) -> bool {
        self.perp_contains(&arith::sub(a, b))
    }
}

pub fn face_equations(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let mut rows = vec![];
    for f in &p.two_faces {
        for j in 0..p.ambient {
            let row: Vec<i64> = p.edges.iter().zip(&f.signs).map(|(e, s)| s * e.dir[j]).collect();
            if row.iter().any(|x| *x != 0) {
                rows.push(row);
            }
        }
    }
    rows
}

pub fn summand_space(p: &LatticePolytope) -> SummandSpace {
    let n = p.num_edges();
    let equations = face_equations(p);
    let basis = if equations.is_empty() {
        arith::identity(n)
    } else {
        cone::canonical_span_basis(&arith::nullspace_i64(&equations, n))
    };
    let perp = if basis.len() == n { vec![] } else { arith::saturated_kernel(&basis, n) };
    SummandSpace { n, equations, basis, perp }
}

/// `C(Q) = V ∩ R^N_{>=0}`.
pub fn summand_cone(p: &LatticePolytope) -> Cone {
    let n = p.num_edges();
    let mut ineqs = arith::identity(n);
    for e in face_equations(p) {
        ineqs.push(arith::scale(&e, -1));
        ineqs.push(e);
    }
    Cone::from_inequalities(&ineqs, n)
}

/// The points `a_t = sum_i t_i lambda_i d^i`, one per vertex, in vertex order.
pub fn summand_vertex_images(p: &LatticePolytope, t: &[i64]) -> Vec<Vec<i64>> {
    (0..p.vertices.len())
        .map(|v| {
            let lam = p.path_from_base(v, None);
            let w: Vec<i64> = lam.iter().zip(t).map(|(l, x)| l * x).collect();
            p.signed_edge_sum(&w)
        })
        .collect()
}

/// Vertices of the summand `Q_t` for a lattice point `t` of `C(Q)`.
pub fn summand_polytope(p: &LatticePolytope, t: &[i64]) -> Result<Vec<Vec<i64>>> {
    if t.len() != p.num_edges() {
        return Err(Error::NotASummandPoint(format!("expected {} coordinates", p.num_edges())));
    }
    if t.iter().any(|x| *x < 0) || !summand_space(p).contains(t) {
        return Err(Error::NotASummandPoint(format!("{t:?}")));
    }
    Ok(convex_hull_vertices(&summand_vertex_images(p, t)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeGenerator {
    pub face: usize,
    pub k: u32,
    pub coord: usize,
    #[serde(skip)]
    pub poly: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeIdeal {
    pub n: usize,
    /// Strip bound per 2-face.
    pub k0: Vec<u32>,
    pub generators: Vec<SchemeGenerator>,
}

impl SchemeIdeal {
    pub fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn max_k0(&self) -> u32 {
        self.k0.iter().copied().max().unwrap_or(0)
    }
}

/// `sum_i eps_i <d^i, c> t_i^k` with `c` a coordinate covector.
pub fn face_power_sum(p: &LatticePolytope, face: usize, k: u32, coord: usize) -> Poly {
    let n = p.num_edges();
    let mut poly = Poly::zero(n);
    for (i, (e, s)) in p.edges.iter().zip(&p.two_faces[face].signs).enumerate() {
        let c = s * e.dir[coord];
        if c != 0 {
            let mut m = vec![0; n];
            m[i] = k;
            poly.add_term(m, rat(c));
        }
    }
    poly
}

pub fn scheme_ideal(p: &LatticePolytope) -> SchemeIdeal {
    let n = p.num_edges();
    let k0: Vec<u32> = (0..p.two_faces.len()).map(|f| p.strip_bound(f)).collect();
    let mut seen: BTreeSet<Poly> = BTreeSet::new();
    let mut generators = vec![];
    for (f, &kmax) in k0.iter().enumerate() {
        for k in 1..=kmax {
            for coord in 0..p.ambient {
                let poly = face_power_sum(p, f, k, coord);
                if poly.is_zero() || !seen.insert(poly.normalized()) {
                    continue;
                }
                generators.push(SchemeGenerator { face: f, k, coord, poly });
            }
        }
    }
    SchemeIdeal { n, k0, generators }
}

/// The generators rewritten in the variables `u_i = t_i - t_1` (i >= 2).
/// Returned polynomials live in `N - 1` variables.
pub fn bar_generators(p: &LatticePolytope) -> Vec<Poly> {
    scheme_ideal(p).generators.iter().map(|g| to_bar(&g.poly, g.k)).collect()
}

/// All power sums of degree `k` (for every 2-face and coordinate, without the
/// strip-bound truncation) in the variables `u_i = t_i - t_1`.
pub fn bar_power_sums(p: &LatticePolytope, k: u32) -> Vec<Poly> {
    let mut out = vec![];
    for f in 0..p.two_faces.len() {
        for coord in 0..p.ambient {
            let g = face_power_sum(p, f, k, coord);
            if !g.is_zero() {
                out.push(to_bar(&g, k));
            }
        }
    }
    out
}

fn to_bar(g: &Poly, k: u32) -> Poly {
    let n = g.nvars;
    // ring (t1, u2, ..., uN)
    let images: Vec<Poly> = (0..n)
        .map(|i| if i == 0 { Poly::var(n, 0) } else { &Poly::var(n, 0) + &Poly::var(n, i) })
        .collect();
    let s = g.substitute(&images);
    let mut pure = vec![0; n];
    pure[0] = k;
    assert!(!s.terms.contains_key(&pure), "pure t1 part does not cancel");
    let mut out = Poly::zero(n - 1);
    for (m, c) in &s.terms {
        if m[0] == 0 {
            out.add_term(m[1..].to_vec(), c.clone());
        }
    }
    out
}

/// Downstairs summand space `V / R(1,...,1)` inside the `u`-coordinates.
pub fn downstairs_basis(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let v = summand_space(p);
    let proj: Vec<Vec<i64>> = v.basis.iter().map(|b| b[1..].iter().map(|x| x - b[0]).collect()).collect();
    let proj: Vec<Vec<i64>> = proj.into_iter().filter(|r| r.iter().any(|x| *x != 0)).collect();
    cone::canonical_span_basis(&proj)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinateChoice {
    /// Search differences `t_a - t_b` for an integral, monomial presentation.
    Auto,
    /// `s_j = t_{a_j} - t_{b_j}` (0-based edge indices).
    Differences(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, Serialize)]
pub struct BasePresentation {
    pub coords: Vec<(usize, usize)>,
    /// `t_i = t + sum_j param[i][j] s_j`.
    #[serde(skip)]
    pub param: Vec<Vec<Rat>>,
    /// Reduced generators of the residual ideal in the `s` variables.
    #[serde(skip)]
    pub residual: Vec<Poly>,
    pub monomial: bool,
    pub integral: bool,
}

const AUTO_BUDGET: usize = 500;

pub fn base_presentation(p: &LatticePolytope, choice: &CoordinateChoice) -> Result<BasePresentation> {
    let n = p.num_edges();
    let down = downstairs_basis(p);
    let bars = bar_generators(p);
    match choice {
        CoordinateChoice::Differences(c) => {
            if c.iter().any(|&(a, b)| a >= n || b >= n) {
                return Err(Error::DegenerateInput("coordinate index out of range".into()));
            }
            present(n, &down, &bars, c).ok_or_else(|| {
                Error::DegenerateInput(format!(
                    "{} differences do not give coordinates on a {}-dimensional base",
                    c.len(),
                    down.len()
                ))
            })
        }
        CoordinateChoice::Auto => {
            let r = down.len();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let mut first_valid = None;
            let mut first_integral = None;
            let mut tried = 0;
            for combo in combinations(pairs.len(), r) {
                let c: Vec<(usize, usize)> = combo.iter().map(|&i| pairs[i]).collect();
                let Some(bp) = present(n, &down, &bars, &c) else { continue };
                tried += 1;
                if bp.integral && bp.monomial {
                    return Ok(bp);
                }
                if bp.integral && first_integral.is_none() {
                    first_integral = Some(bp.clone());
                }
                if first_valid.is_none() {
                    first_valid = Some(bp);
                }
                if tried >= AUTO_BUDGET {
                    break;
                }
            }
            first_integral
                .or(first_valid)
                .ok_or_else(|| Error::ReportedFailure("no coordinate system found".into()))
        }
    }
}

/// All `k`-subsets of `0..n` in lex order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn present(n: usize, down: &[Vec<i64>], bars: &[Poly], coords: &[(usize, usize)]) -> Option<BasePresentation> {
    let r = down.len();
    if coords.len() != r {
        return None;
    }
    // linear forms on u-space (u_1 = 0 is dropped)
    let forms: Vec<Vec<Rat>> = coords
        .iter()
        .map(|&(a, b)| {
            let mut l = vec![Rat::zero(); n - 1];
            if a > 0 {
                l[a - 1] += Rat::one();
            }
            if b > 0 {
                l[b - 1] -= Rat::one();
            }
            l
        })
        .collect();
    let bq: Vec<Vec<Rat>> = down.iter().map(|b| rat_vec(b)).collect();
    // m[j][k] = <form_j, basis_k>
    let m: Vec<Vec<Rat>> = forms.iter().map(|l| bq.iter().map(|b| arith::rdot(l, b)).collect()).collect();
    if arith::rank(&m) != r {
        return None;
    }
    // column j of the parametrization solves m y = e_j; u = sum_k y_k b_k
    let mt: Vec<Vec<Rat>> = (0..r).map(|k| (0..r).map(|j| m[j][k].clone()).collect()).collect();
    let mut param = vec![vec![Rat::zero(); r]; n];
    for j in 0..r {
        let e: Vec<Rat> = (0..r).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        let y = arith::solve_left(&mt, &e)?;
        for i in 1..n {
            let mut v = Rat::zero();
            for (yk, b) in y.iter().zip(&bq) {
                v += yk * &b[i - 1];
            }
            param[i][j] = v;
        }
    }
    let integral = param.iter().flatten().all(|x| x.is_integer());
    let images: Vec<Poly> = (1..n).map(|i| Poly::linear(&param[i])).collect();
    let mut by_degree: std::collections::BTreeMap<u32, Vec<Poly>> = Default::default();
    for g in bars {
        let s = if r == 0 { substitute_to_constants(g) } else { g.substitute(&images) };
        if s.is_zero() {
            continue;
        }
        let d = s.degree().unwrap();
        // linear generators vanish on the downstairs space by construction
        assert!(d >= 2, "linear generator does not vanish on V");
        by_degree.entry(d).or_default().push(s);
    }
    let mut residual: Vec<Poly> = vec![];
    for (d, ps) in by_degree {
        let lower = EchelonSpan::new(&poly::graded_piece(&residual, d));
        let reduced: Vec<Poly> = ps.iter().map(|q| lower.reduce(q)).filter(|q| !q.is_zero()).collect();
        residual.extend(poly::echelon_basis(&reduced));
    }
    let monomial = residual.iter().all(|q| q.is_monomial());
    Some(BasePresentation { coords: coords.to_vec(), param, residual, monomial, integral })
}

fn substitute_to_constants(g: &Poly) -> Poly {
    // no s variables: every u_i is zero on the base
    let c = g.terms.get(&vec![0; g.nvars]).cloned().unwrap_or_else(Rat::zero);
    Poly::constant(0, c)
}

#[derive(Clone, Debug, Serialize)]
pub struct ToricBinomials {
    pub n: usize,
    pub basis: Vec<Vec<i64>>,
    /// Exponent differences `d`, one binomial `t^{d+} - t^{d-}` each.
    pub generators: Vec<Vec<i64>>,
}

impl ToricBinomials {
    pub fn polys(&self) -> Vec<Poly> {
        self.generators.iter().map(|d| binomial_of(d)).collect()
    }
}

pub fn binomial_of(d: &[i64]) -> Poly {
    let plus: Vec<u32> = d.iter().map(|x| (*x).max(0) as u32).collect();
    let minus: Vec<u32> = d.iter().map(|x| (-*x).max(0) as u32).collect();
    Poly::binomial(plus, minus)
}

pub fn toric_binomials(p: &LatticePolytope) -> ToricBinomials {
    let v = summand_space(p);
    let basis = v.perp.clone();
    let norm = |d: &Vec<i64>| d.iter().map(|x| x.abs()).sum::<i64>();
    let bound = 2 * basis.iter().map(norm).max().unwrap_or(0);
    let mut gens: BTreeSet<Vec<i64>> = basis.iter().map(|d| arith::primitive_signed(d)).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for d in [arith::add(&basis[i], &basis[j]), arith::sub(&basis[i], &basis[j])] {
                if norm(&d) <= bound && d.iter().any(|x| *x != 0) {
                    gens.insert(arith::primitive_signed(&d));
                }
            }
        }
    }
    ToricBinomials { n: v.n, basis, generators: gens.into_iter().collect() }
}

/// A decomposition of `(1,...,1)` into `{0,1}`-vectors of `C(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub struct Decomposition {
    /// Edge-indicator vectors, sorted in descending lex order.
    pub summands: Vec<Vec<i64>>,
}

impl Decomposition {
    pub fn new(mut summands: Vec<Vec<i64>>) -> Decomposition {
        summands.sort_by(|a, b| b.cmp(a));
        Decomposition { summands }
    }

    /// Every summand of `self` lies inside a summand of `other`.
    pub fn refines(&self, other: &Decomposition) -> bool {
        self.summands.iter().all(|s| {
            other.summands.iter().any(|o| s.iter().zip(o).all(|(a, b)| *a <= *b))
        })
    }

    pub fn upstairs_dim(&self) -> usize {
        arith::rank_i64(&self.summands)
    }
}

const MAX_ENUM_EDGES: usize = 24;

/// Nonzero `{0,1}`-points of `C(Q)`.
pub fn summand_indicators(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let n = p.num_edges();
    assert!(n <= MAX_ENUM_EDGES, "too many edges to enumerate decompositions");
    let eqs = face_equations(p);
    let mut out = vec![];
    for mask in 1u64..(1u64 << n) {
        let ok = eqs.iter().all(|e| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| e[i]).sum::<i64>() == 0);
        if ok {
            out.push((0..n).map(|i| (mask >> i & 1) as i64).collect());
        }
    }
    out
}

pub fn lattice_decompositions(p: &LatticePolytope) -> Vec<Decomposition> {
    let n = p.num_edges();
    let ind = summand_indicators(p);
    let mut out = vec![];
    let mut cur: Vec<Vec<i64>> = vec![];
    fn rec(n: usize, ind: &[Vec<i64>], covered: &mut Vec<bool>, cur: &mut Vec<Vec<i64>>, out: &mut Vec<Decomposition>) {
        let Some(first) = covered.iter().position(|c| !c) else {
            out.push(Decomposition::new(cur.clone()));
            return;
        };
        for s in ind {
            if s[first] == 1 && (0..n).all(|i| s[i] == 0 || !covered[i]) {
                for i in 0..n {
                    if s[i] == 1 {
                        covered[i] = true;
                    }
                }
                cur.push(s.clone());
                rec(n, ind, covered, cur, out);
                cur.pop();
                for i in 0..n {
                    if s[i] == 1 {
                        covered[i] = false;
                    }
                }
            }
        }
    }
    let mut covered = vec![false; n];
    rec(n, &ind, &mut covered, &mut cur, &mut out);
    out.sort();
    out
}

/// Decompositions admitting no proper refinement.
pub fn maximal_decompositions(p: &LatticePolytope) -> Vec<Decomposition> {
    let all = lattice_decompositions(p);
    let mut out: Vec<Decomposition> = all
        .iter()
        .filter(|d| !all.iter().any(|e| e != *d && e.refines(d)))
        .cloned()
        .collect();
    out.sort_by(|a, b| b.summands.len().cmp(&a.summands.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Flat {
    pub decomposition: Decomposition,
    pub upstairs_dim: usize,
    pub downstairs_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedComponents {
    pub flats: Vec<Flat>,
    /// `(i, j, dim)` with `dim` the downstairs dimension of the intersection.
    pub intersections: Vec<(usize, usize, usize)>,
}

pub fn reduced_components(p: &LatticePolytope) -> ReducedComponents {
    let flats: Vec<Flat> = maximal_decompositions(p)
        .into_iter()
        .map(|d| {
            let up = d.upstairs_dim();
            Flat { decomposition: d, upstairs_dim: up, downstairs_dim: up - 1 }
        })
        .collect();
    let mut intersections = vec![];
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            let a = &flats[i].decomposition.summands;
            let b = &flats[j].decomposition.summands;
            let sum = arith::rank_i64(&[a.clone(), b.clone()].concat());
            let meet = flats[i].upstairs_dim + flats[j].upstairs_dim - sum;
            intersections.push((i, j, meet - 1));
        }
    }
    ReducedComponents { flats, intersections }
}

/// Substitution `t_i -> T_k` for the summand `k` containing edge `i`.
pub fn flat_substitution(d: &Decomposition) -> Vec<Poly> {
    let m = d.summands.len();
    let n = d.summands[0].len();
    (0..n)
        .map(|i| {
            let k = d.summands.iter().position(|s| s[i] == 1).expect("decomposition covers every edge");
            Poly::var(m, k)
        })
        .collect()
}

/// Dimension of the tangent space of the downstairs scheme at the origin.
pub fn tangent_dimension(p: &LatticePolytope) -> usize {
    let lin: Vec<Poly> = bar_generators(p).into_iter().filter(|g| g.degree() == Some(1)).collect();
    (p.num_edges() - 1) - poly::span_rank(&lin)
}
