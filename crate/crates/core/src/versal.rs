//! The toric Gorenstein singularity of a polytope, the eta bookkeeping, the
//! lifted family over the Minkowski scheme, its flatness relations and the
//! total spaces over the reduced components.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::Serialize;

use crate::arith::{self, rat, Rat};
use crate::cone::{self, Cone};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::polytope::LatticePolytope;
use crate::scheme::{self, BasePresentation, Decomposition, SummandSpace};

/// Largest number of Hilbert-basis elements summed when searching for the
/// degrees of a generating set.
pub const DEFAULT_DEGREE_BOUND: usize = 3;

/// `sigma = Cone(Q x {1})`, its dual and the Hilbert basis `E` of the dual.
#[derive(Clone, Debug, Serialize)]
pub struct Gorenstein {
    pub n: usize,
    pub sigma: Cone,
    pub sigma_dual: Cone,
    /// `[c^v, eta0(c^v)]` for `v = 1..w`, then `[0, 1]`.
    pub elements: Vec<Vec<i64>>,
}

impl Gorenstein {
    pub fn w(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn covector(&self, v: usize) -> &[i64] {
        &self.elements[v][..self.n]
    }

    pub fn eta0(&self, v: usize) -> i64 {
        self.elements[v][self.n]
    }

    /// `sum_j (a^j, 1)`, positive on every nonzero element of the dual cone.
    pub fn grading(&self) -> Vec<i64> {
        let mut g = vec![0; self.n + 1];
        for r in &self.sigma.rays {
            for (x, y) in g.iter_mut().zip(r) {
                *x += y;
            }
        }
        g
    }

    pub fn z_names(&self) -> Vec<String> {
        (1..=self.w()).map(|i| format!("z{i}")).chain(["t".to_string()]).collect()
    }
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Anticlockwise angle order starting at `start` (inclusive).
fn angular_cmp(start: &[i64], a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let half = |v: &[i64]| {
        let cr = cross(start, v);
        if cr > 0 || (cr == 0 && arith::dot(start, v) > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

pub fn gorenstein(p: &LatticePolytope) -> Result<Gorenstein> {
    if p.dim != p.ambient {
        return Err(Error::DegenerateInput(format!(
            "the singularity needs a full-dimensional polytope (dimension {} in Z^{})",
            p.dim, p.ambient
        )));
    }
    let n = p.ambient;
    let gens: Vec<Vec<i64>> = p.vertices.iter().map(|v| [v.clone(), vec![1]].concat()).collect();
    let sigma = Cone::from_generators(&gens, n + 1);
    let sigma_dual = sigma.dual();
    let hb = cone::hilbert_basis(&sigma_dual)?;
    let mut r_star = vec![0; n + 1];
    r_star[n] = 1;
    let mut boundary: Vec<Vec<i64>> = hb.into_iter().filter(|e| *e != r_star).collect();
    for e in &boundary {
        let (_, eta0) = p.support_datum(&e[..n]);
        if e[n] != eta0 {
            return Err(Error::ReportedFailure(format!("Hilbert basis element {e:?} is not [c, eta0(c)]")));
        }
    }
    if n == 2 {
        let d1 = &p.edges[0].dir;
        let start = vec![-d1[1], d1[0]];
        boundary.sort_by(|a, b| angular_cmp(&start, &a[..2], &b[..2]));
    } else {
        boundary.sort();
    }
    boundary.push(r_star);
    Ok(Gorenstein { n, sigma, sigma_dual, elements: boundary })
}

/// Paths from the base through `a(c~)`: `lambda` reaches `a(c~)` along any
/// edge path, then a `c`-monotone path continues to `a(c)`.
pub struct RefinedPaths<'a> {
    p: &'a LatticePolytope,
    anchor: usize,
    lambda: Vec<i64>,
}

impl<'a> RefinedPaths<'a> {
    pub fn new(p: &'a LatticePolytope, through: &[i64]) -> RefinedPaths<'a> {
        let (anchor, _) = p.support_datum(through);
        RefinedPaths { p, anchor, lambda: p.path_from_base(anchor, None) }
    }

    pub fn eta(&self, c: &[i64]) -> Vec<i64> {
        let (ac, _) = self.p.support_datum(c);
        let mu = self.p.edge_path(self.anchor, ac, Some(c));
        eta_of_path(self.p, &arith::add(&self.lambda, &mu), c)
    }
}

fn eta_of_path(p: &LatticePolytope, lam: &[i64], c: &[i64]) -> Vec<i64> {
    p.edges.iter().zip(lam).map(|(e, l)| -l * arith::dot(&e.dir, c)).collect()
}

/// `eta(c)` along a `c`-monotone path from the base, or its refined variant
/// along a path through `a(refined_for)`.
pub fn eta_vector(p: &LatticePolytope, c: &[i64], refined_for: Option<&[i64]>) -> Vec<i64> {
    match refined_for {
        None => {
            let (ac, _) = p.support_datum(c);
            eta_of_path(p, &p.path_from_base(ac, Some(c)), c)
        }
        Some(ct) => RefinedPaths::new(p, ct).eta(c),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaTable {
    /// Index of `a(c^v)` among the vertices.
    pub a: Vec<usize>,
    pub eta0: Vec<i64>,
    pub eta: Vec<Vec<i64>>,
}

pub fn eta_table(p: &LatticePolytope, g: &Gorenstein) -> EtaTable {
    let mut t = EtaTable { a: vec![], eta0: vec![], eta: vec![] };
    for v in 0..g.w() {
        let c = g.covector(v);
        let (a, e0) = p.support_datum(c);
        t.a.push(a);
        t.eta0.push(e0);
        t.eta.push(eta_vector(p, c, None));
    }
    t
}

/// `f_(a,b,alpha,beta) = t^alpha z^a - t^beta z^b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub struct Quadruple {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub alpha: u32,
    pub beta: u32,
}

impl Quadruple {
    pub fn from_monomials(lead: &[u32], other: &[u32]) -> Quadruple {
        let w = lead.len() - 1;
        Quadruple { a: lead[..w].to_vec(), b: other[..w].to_vec(), alpha: lead[w], beta: other[w] }
    }

    pub fn lead(&self) -> Monomial {
        [self.a.clone(), vec![self.alpha]].concat()
    }

    pub fn other(&self) -> Monomial {
        [self.b.clone(), vec![self.beta]].concat()
    }

    pub fn poly(&self) -> Poly {
        Poly::binomial(self.lead(), self.other())
    }

    /// Common degree of both monomials in `Z^{n+1}`.
    pub fn degree(&self, g: &Gorenstein) -> Vec<i64> {
        monomial_degree(g, &self.lead())
    }

    /// `c = sum_v a_v c^v`.
    pub fn covector(&self, g: &Gorenstein) -> Vec<i64> {
        self.degree(g)[..g.n].to_vec()
    }

    pub fn is_balanced(&self, g: &Gorenstein) -> bool {
        monomial_degree(g, &self.lead()) == monomial_degree(g, &self.other())
    }
}

fn monomial_degree(g: &Gorenstein, m: &[u32]) -> Vec<i64> {
    let mut d = vec![0; g.n + 1];
    for (e, &k) in g.elements.iter().zip(m) {
        for (x, y) in d.iter_mut().zip(e) {
            *x += k as i64 * y;
        }
    }
    d
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub w: usize,
    pub degree_bound: usize,
    pub equations: Vec<Quadruple>,
}

impl Presentation {
    pub fn polys(&self) -> Vec<Poly> {
        self.equations.iter().map(|q| q.poly()).collect()
    }
}

/// Order used to pick the leading monomial of a fiber: `t`-exponent first,
/// then the `z`-exponents lexicographically.
fn lead_key(m: &[u32]) -> (u32, Vec<u32>) {
    let w = m.len() - 1;
    (m[w], m[..w].to_vec())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Sums of 2..=bound elements of the Hilbert basis, sorted by grading.
fn candidate_degrees(g: &Gorenstein, bound: usize) -> Vec<Vec<i64>> {
    let grading = g.grading();
    let mut out: BTreeSet<(i64, Vec<i64>)> = BTreeSet::new();
    fn rec(g: &Gorenstein, start: usize, left: usize, acc: Vec<i64>, used: usize, grading: &[i64], out: &mut BTreeSet<(i64, Vec<i64>)>) {
        if used >= 2 {
            out.insert((arith::dot(&acc, grading), acc.clone()));
        }
        if left == 0 {
            return;
        }
        for i in start..g.elements.len() {
            rec(g, i, left - 1, arith::add(&acc, &g.elements[i]), used + 1, grading, out);
        }
    }
    rec(g, 0, bound, vec![0; g.n + 1], 0, &grading, &mut out);
    out.into_iter().map(|(_, d)| d).collect()
}

/// Minimal binomial generating set of the toric ideal of `Y` among degrees
/// that are sums of at most `bound` Hilbert-basis elements. In each degree
/// the fiber is split into classes connected by moves of lower degree, and
/// every extra class is joined to the leading monomial.
pub fn gorenstein_equations(_p: &LatticePolytope, g: &Gorenstein, bound: usize) -> Presentation {
    let grading = g.grading();
    let mut equations: Vec<Quadruple> = vec![];
    let mut moves: Vec<(Monomial, Monomial)> = vec![];
    for deg in candidate_degrees(g, bound) {
        let fib = cone::fiber(&g.elements, &grading, &deg);
        if fib.len() < 2 {
            continue;
        }
        let index: BTreeMap<&Monomial, usize> = fib.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut uf = UnionFind((0..fib.len()).collect());
        for (i, m) in fib.iter().enumerate() {
            for (a, b) in &moves {
                for (x, y) in [(a, b), (b, a)] {
                    if crate::poly::divides(x, m) {
                        let target: Monomial = m.iter().zip(x).zip(y).map(|((m, x), y)| m - x + y).collect();
                        if let Some(&j) = index.get(&target) {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<&Monomial>> = BTreeMap::new();
        for (i, m) in fib.iter().enumerate() {
            classes.entry(uf.find(i)).or_default().push(m);
        }
        let mut reps: Vec<&Monomial> = classes
            .values()
            .map(|ms| *ms.iter().max_by_key(|m| lead_key(m)).unwrap())
            .collect();
        reps.sort_by_key(|m| std::cmp::Reverse(lead_key(m)));
        let lead = reps[0];
        for other in &reps[1..] {
            equations.push(Quadruple::from_monomials(lead, other));
            moves.push((lead.clone(), (*other).clone()));
        }
    }
    Presentation { w: g.w(), degree_bound: bound, equations }
}

/// Lift of one equation to `C[Z_1..Z_w, t_1..t_N]`.
#[derive(Clone, Debug, Serialize)]
pub struct Lift {
    pub quadruple: Quadruple,
    /// Exponent of the monomial `Z^{p^c}`.
    pub p: Vec<u32>,
    /// `alpha e_1 + sum a_v eta(c^v) - eta(c)` and its `b`-counterpart.
    pub a_exp: Vec<u32>,
    pub b_exp: Vec<u32>,
    #[serde(skip)]
    pub poly: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedFamily {
    pub w: usize,
    pub n: usize,
    pub lifts: Vec<Lift>,
}

impl LiftedFamily {
    pub fn polys(&self) -> Vec<Poly> {
        self.lifts.iter().map(|l| l.poly.clone()).collect()
    }
}

/// Lexicographically least `p` with `[c, eta0(c)] = sum p_v [c^v, eta0(c^v)]`.
pub fn face_representation(p: &LatticePolytope, g: &Gorenstein, c: &[i64]) -> Result<Vec<u32>> {
    let (_, eta0) = p.support_datum(c);
    let target = [c.to_vec(), vec![eta0]].concat();
    let z = &g.elements[..g.w()];
    let fib = cone::fiber(z, &g.grading(), &target);
    fib.into_iter().min().ok_or_else(|| Error::NoFaceRepresentation(c.to_vec()))
}

fn weighted_eta(paths: &RefinedPaths, g: &Gorenstein, k: &[u32]) -> Vec<i64> {
    let mut s = vec![0; paths.p.num_edges()];
    for (v, &x) in k.iter().enumerate() {
        if x > 0 {
            s = arith::add(&s, &arith::scale(&paths.eta(g.covector(v)), x as i64));
        }
    }
    s
}

fn nonneg(v: &[i64], what: &str) -> Result<Vec<u32>> {
    if v.iter().any(|x| *x < 0) {
        return Err(Error::ReportedFailure(format!("negative exponent in {what}: {v:?}")));
    }
    Ok(v.iter().map(|x| *x as u32).collect())
}

fn z_t_monomial(w: usize, z: &[u32], t: &[u32]) -> Monomial {
    let mut m = z.to_vec();
    m.resize(w, 0);
    m.extend_from_slice(t);
    m
}

/// `F = f(Z, t_1) - Z^{p^c} (t^{A} - t^{B})` with exponents taken from paths
/// through `a(c)`.
pub fn lift(p: &LatticePolytope, g: &Gorenstein, q: &Quadruple) -> Result<Lift> {
    let (w, n) = (g.w(), p.num_edges());
    let c = q.covector(g);
    let paths = RefinedPaths::new(p, &c);
    let eta_c = paths.eta(&c);
    let pc = face_representation(p, g, &c)?;
    if weighted_eta(&paths, g, &pc) != eta_c {
        return Err(Error::ReportedFailure(format!("Z^p does not carry eta(c) for c = {c:?}")));
    }
    let side = |k: &[u32], alpha: u32| {
        let mut e = arith::sub(&weighted_eta(&paths, g, k), &eta_c);
        e[0] += alpha as i64;
        e
    };
    let a_exp = nonneg(&side(&q.a, q.alpha), "lift")?;
    let b_exp = nonneg(&side(&q.b, q.beta), "lift")?;
    let t1 = |k: u32| {
        let mut t = vec![0; n];
        t[0] = k;
        t
    };
    let one = rat(1);
    let mut poly = Poly::zero(w + n);
    poly.add_term(z_t_monomial(w, &q.a, &t1(q.alpha)), one.clone());
    poly = poly - Poly::monomial(z_t_monomial(w, &q.b, &t1(q.beta)), one.clone());
    poly = poly - Poly::monomial(z_t_monomial(w, &pc, &a_exp), one.clone());
    poly = poly + Poly::monomial(z_t_monomial(w, &pc, &b_exp), one);
    Ok(Lift { quadruple: q.clone(), p: pc, a_exp, b_exp, poly })
}

pub fn lift_equations(p: &LatticePolytope, g: &Gorenstein, pres: &Presentation) -> Result<LiftedFamily> {
    let lifts = pres.equations.iter().map(|q| lift(p, g, q)).collect::<Result<Vec<_>>>()?;
    Ok(LiftedFamily { w: g.w(), n: p.num_edges(), lifts })
}

/// Substitute `Z_v -> z_v` and `t_i -> images[i]`, then drop the killed
/// monomials of the base. The result lives in `z_1..z_w` followed by the
/// variables of the images.
pub fn specialize_family(fam: &LiftedFamily, images: &[Poly], killed: &[Monomial]) -> Vec<Poly> {
    let nb = images.first().map(|p| p.nvars).unwrap_or(0);
    let total = fam.w + nb;
    let map: Vec<usize> = (0..nb).map(|j| fam.w + j).collect();
    let mut subs: Vec<Poly> = (0..fam.w).map(|v| Poly::var(total, v)).collect();
    subs.extend(images.iter().map(|im| im.embed(total, &map)));
    let killed: Vec<Monomial> = killed.iter().map(|k| [vec![0; fam.w], k.clone()].concat()).collect();
    fam.lifts.iter().map(|l| l.poly.substitute(&subs).kill_monomials(&killed)).collect()
}

/// `t_i -> t` for all `i`.
pub fn diagonal(n: usize) -> Vec<Poly> {
    vec![Poly::var(1, 0); n]
}

/// `t_i -> t + sum_j param[i][j] s_j` in the ring `(t, s_1, ..)`, with the
/// monomials of the (monomial) residual ideal to be killed.
pub fn base_specialization(bp: &BasePresentation) -> Result<(Vec<Poly>, Vec<Monomial>)> {
    if !bp.monomial {
        return Err(Error::ReportedFailure("the residual base ideal is not monomial".into()));
    }
    let images = bp
        .param
        .iter()
        .map(|row| {
            let mut coeffs = vec![Rat::one()];
            coeffs.extend(row.iter().cloned());
            Poly::linear(&coeffs)
        })
        .collect();
    let killed = bp
        .residual
        .iter()
        .map(|q| [vec![0], q.leading().unwrap().0.clone()].concat())
        .collect();
    Ok((images, killed))
}

/// Class of a monomial in `C[Z, t]` modulo the toric relations among the
/// `t_i`: the `Z`-part together with the pairing of the `t`-part with `V`.
pub fn lattice_class(space: &SummandSpace, w: usize) -> impl Fn(&Monomial) -> (Vec<u32>, Vec<i64>) + '_ {
    move |m: &Monomial| {
        let t: Vec<i64> = m[w..].iter().map(|x| *x as i64).collect();
        (m[..w].to_vec(), space.class(&t))
    }
}

/// Degree of a monomial in `C[z, t]` under `z_v -> [c^v, eta0]`, `t -> [0,1]`.
pub fn singularity_class(g: &Gorenstein) -> impl Fn(&Monomial) -> Vec<i64> + '_ {
    move |m: &Monomial| monomial_degree(g, m)
}

/// Degree of a monomial in `C[Z, t_1..t_N]` under `Z_v -> [c^v, eta(c^v)]`,
/// `t_i -> [0, e_i]`, with the eta-part read modulo `V^perp`.
pub fn total_space_class<'a>(
    g: &'a Gorenstein,
    table: &'a EtaTable,
    space: &'a SummandSpace,
) -> impl Fn(&Monomial) -> (Vec<i64>, Vec<i64>) + 'a {
    move |m: &Monomial| {
        let w = g.w();
        let mut c = vec![0; g.n];
        let mut eta: Vec<i64> = m[w..].iter().map(|x| *x as i64).collect();
        for v in 0..w {
            if m[v] > 0 {
                c = arith::add(&c, &arith::scale(g.covector(v), m[v] as i64));
                eta = arith::add(&eta, &arith::scale(&table.eta[v], m[v] as i64));
            }
        }
        (c, space.class(&eta))
    }
}

/// Nonnegative representative of `sum g_v eta(c^v) - eta(sum g_v c^v)`,
/// checked against the base-path eta vectors modulo `V^perp`.
pub fn convexity_witness(p: &LatticePolytope, space: &SummandSpace, terms: &[(i64, Vec<i64>)]) -> Option<Vec<i64>> {
    let mut c = vec![0; p.ambient];
    for (k, cv) in terms {
        c = arith::add(&c, &arith::scale(cv, *k));
    }
    let paths = RefinedPaths::new(p, &c);
    let mut refined = arith::scale(&paths.eta(&c), -1);
    let mut plain = arith::scale(&eta_vector(p, &c, None), -1);
    for (k, cv) in terms {
        refined = arith::add(&refined, &arith::scale(&paths.eta(cv), *k));
        plain = arith::add(&plain, &arith::scale(&eta_vector(p, cv, None), *k));
    }
    (refined.iter().all(|x| *x >= 0) && space.equivalent(&refined, &plain)).then_some(refined)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentTotalSpace {
    pub decomposition: Decomposition,
    /// Vertices of the summands `R_k`.
    pub summands: Vec<Vec<Vec<i64>>>,
    /// `(r; e^k)` for every vertex `r` of every `R_k`.
    pub generators: Vec<Vec<i64>>,
    pub cone: Cone,
}

impl ComponentTotalSpace {
    /// `[c; eta0_{R_0}(c), ..., eta0_{R_m}(c)]`.
    pub fn lift_covector(&self, c: &[i64]) -> Vec<i64> {
        let mut out = c.to_vec();
        for r in &self.summands {
            out.push(-r.iter().map(|v| arith::dot(v, c)).min().unwrap());
        }
        out
    }

    /// Every element of the Hilbert basis of the dual of `sigma` lifts to the
    /// dual of the total-space cone over itself, and the diagonal copy of
    /// `sigma` lies in the total-space cone.
    pub fn check_lifts(&self, p: &LatticePolytope, g: &Gorenstein) -> Result<()> {
        let n = g.n;
        let m = self.summands.len();
        let dual = self.cone.dual();
        for v in 0..g.w() {
            let l = self.lift_covector(g.covector(v));
            if !dual.contains(&l) || l[n..].iter().sum::<i64>() != g.eta0(v) {
                return Err(Error::ReportedFailure(format!("{:?} does not lift", g.elements[v])));
            }
        }
        for k in 0..m {
            let mut e = vec![0; n + m];
            e[n + k] = 1;
            if !dual.contains(&e) {
                return Err(Error::ReportedFailure("[0, e^k] is not in the dual cone".into()));
            }
        }
        for v in &p.vertices {
            let diag = [v.clone(), vec![1; m]].concat();
            if !self.cone.contains(&diag) {
                return Err(Error::ReportedFailure(format!("diagonal image of {v:?} is not in the cone")));
            }
        }
        Ok(())
    }

    /// Degree of a monomial in `C[Z_1..Z_w, T_1..T_m]` under
    /// `Z_v -> lift_covector(c^v)`, `T_k -> [0, e^k]`.
    pub fn parametrisation_class<'a>(&'a self, g: &'a Gorenstein) -> impl Fn(&Monomial) -> Vec<i64> + 'a {
        let lifts: Vec<Vec<i64>> = (0..g.w()).map(|v| self.lift_covector(g.covector(v))).collect();
        move |mono: &Monomial| {
            let w = g.w();
            let mut d = vec![0; lifts[0].len()];
            for v in 0..w {
                d = arith::add(&d, &arith::scale(&lifts[v], mono[v] as i64));
            }
            for (k, &e) in mono[w..].iter().enumerate() {
                d[g.n + k] += e as i64;
            }
            d
        }
    }
}

pub fn component_total_space(p: &LatticePolytope, d: &Decomposition) -> Result<ComponentTotalSpace> {
    let m = d.summands.len();
    let n = p.ambient;
    let summands = d
        .summands
        .iter()
        .map(|s| scheme::summand_polytope(p, s))
        .collect::<Result<Vec<_>>>()?;
    let mut generators = vec![];
    for (k, r) in summands.iter().enumerate() {
        for v in r {
            let mut e = vec![0; m];
            e[k] = 1;
            generators.push([v.clone(), e].concat());
        }
    }
    let cone = Cone::from_generators(&generators, n + m);
    Ok(ComponentTotalSpace { decomposition: d.clone(), summands, generators, cone })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FlatnessReport {
    pub relation_i: usize,
    pub relation_ii: usize,
    pub relation_iii: usize,
}

fn fail(kind: &str, q: &Quadruple, extra: &str) -> Error {
    Error::ReportedFailure(format!("relation ({kind}) fails for {q:?}{extra}"))
}

/// `Z^r F_(a,b) - F_(a+r,b+r)` equals the product of the first factor (in the
/// ideal of the diagonal) and the second factor (an equation of the total
/// space), up to toric relations among the `t_i`.
pub fn check_relation_iii(p: &LatticePolytope, g: &Gorenstein, q: &Quadruple, r: &[u32]) -> Result<()> {
    let (w, n) = (g.w(), p.num_edges());
    let f = lift(p, g, q)?;
    let shifted = Quadruple {
        a: q.a.iter().zip(r).map(|(x, y)| x + y).collect(),
        b: q.b.iter().zip(r).map(|(x, y)| x + y).collect(),
        alpha: q.alpha,
        beta: q.beta,
    };
    let f2 = lift(p, g, &shifted)?;
    let one = rat(1);
    let zero_t = vec![0; n];
    let first = Poly::monomial(z_t_monomial(w, &[], &f.a_exp), one.clone())
        - Poly::monomial(z_t_monomial(w, &[], &f.b_exp), one.clone());
    let c = q.covector(g);
    let ct = shifted.covector(g);
    let paths = RefinedPaths::new(p, &ct);
    let mid = arith::sub(&arith::add(&paths.eta(&c), &weighted_eta(&paths, g, r)), &paths.eta(&ct));
    let mid = nonneg(&mid, "second factor").map_err(|_| fail("iii", q, " (second factor exponent)"))?;
    let pr: Vec<u32> = f.p.iter().zip(r).map(|(x, y)| x + y).collect();
    let second = Poly::monomial(z_t_monomial(w, &f2.p, &mid), one.clone())
        - Poly::monomial(z_t_monomial(w, &pr, &zero_t), one);
    let lhs = f.poly.mul_monomial(&z_t_monomial(w, r, &zero_t)) - f2.poly.clone() - &first * &second;
    let space = scheme::summand_space(p);
    if !crate::poly::in_lattice_ideal(&lhs, lattice_class(&space, w)) {
        return Err(fail("iii", q, &format!(" with r = {r:?}")));
    }
    let mut diag: Vec<Poly> = (0..w).map(|v| Poly::var(w + 1, v)).collect();
    diag.extend(vec![Poly::var(w + 1, w); n]);
    if !first.substitute(&diag).is_zero() {
        return Err(fail("iii", q, " (first factor off the diagonal)"));
    }
    let table = eta_table(p, g);
    if !crate::poly::in_lattice_ideal(&second, total_space_class(g, &table, &space)) {
        return Err(fail("iii", q, " (second factor not an equation of the total space)"));
    }
    Ok(())
}

/// The three relation types between the equations, lifted to the family:
/// (i) telescoping through every monomial of the same degree, (ii)
/// multiplication by `t_1`, (iii) multiplication by each `Z_v`.
pub fn flatness_smoke_check(
    p: &LatticePolytope,
    g: &Gorenstein,
    pres: &Presentation,
    fam: &LiftedFamily,
) -> Result<FlatnessReport> {
    let w = g.w();
    let grading = g.grading();
    let mut report = FlatnessReport::default();
    for (q, l) in pres.equations.iter().zip(&fam.lifts) {
        if lift(p, g, q)?.poly != l.poly {
            return Err(fail("i", q, " (stored lift differs)"));
        }
        for m in cone::fiber(&g.elements, &grading, &q.degree(g)) {
            if m == q.lead() || m == q.other() {
                continue;
            }
            let x = lift(p, g, &Quadruple::from_monomials(&q.lead(), &m))?;
            let y = lift(p, g, &Quadruple::from_monomials(&m, &q.other()))?;
            if &x.poly + &y.poly != l.poly {
                return Err(fail("i", q, &format!(" through {m:?}")));
            }
            report.relation_i += 1;
        }
        let up = Quadruple { alpha: q.alpha + 1, beta: q.beta + 1, ..q.clone() };
        let mut t1 = vec![0; w + p.num_edges()];
        t1[w] = 1;
        if lift(p, g, &up)?.poly != l.poly.mul_monomial(&t1) {
            return Err(fail("ii", q, ""));
        }
        report.relation_ii += 1;
        for v in 0..w {
            let mut r = vec![0; w];
            r[v] = 1;
            check_relation_iii(p, g, q, &r)?;
            report.relation_iii += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn eta_is_convex_on_pairs_of_generators() {
        for name in ["hexagon", "q4", "q8"] {
            let p = corpus::polytope(name).unwrap();
            let g = gorenstein(&p).unwrap();
            let space = scheme::summand_space(&p);
            for u in 0..g.w() {
                for v in 0..g.w() {
                    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                        let terms = vec![(a, g.covector(u).to_vec()), (b, g.covector(v).to_vec())];
                        assert!(convexity_witness(&p, &space, &terms).is_some(), "{name} {u} {v}");
                    }
                }
            }
        }
    }

    /// `[c, eta(c)]` is the only lift of `[c, eta0(c)]` with coordinate sum
    /// `eta0(c)`: every nonnegative vector with that sum whose difference to
    /// `eta(c)` is nonnegative on `C(Q)` agrees with `eta(c)` modulo `V^perp`.
    #[test]
    fn eta_is_the_unique_lift() {
        for name in ["hexagon", "q4"] {
            let p = corpus::polytope(name).unwrap();
            let g = gorenstein(&p).unwrap();
            let space = scheme::summand_space(&p);
            let rays = scheme::summand_cone(&p).rays;
            let n = p.num_edges();
            for v in 0..g.w() {
                let eta = eta_vector(&p, g.covector(v), None);
                let total = g.eta0(v) as u32;
                for m in crate::poly::monomials_of_degree(n, total) {
                    let x: Vec<i64> = m.iter().map(|k| *k as i64).collect();
                    let d = arith::sub(&x, &eta);
                    if rays.iter().all(|r| arith::dot(r, &d) >= 0) {
                        assert!(space.equivalent(&x, &eta), "{name} v={v} {x:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn eta_does_not_depend_on_the_path() {
        for name in ["hexagon", "q4", "q5", "q8", "cube"] {
            let p = corpus::polytope(name).unwrap();
            let g = gorenstein(&p).unwrap();
            let space = scheme::summand_space(&p);
            for v in 0..g.w() {
                let c = g.covector(v);
                let (a, _) = p.support_datum(c);
                let free = eta_of_path(&p, &p.path_from_base(a, None), c);
                assert!(space.equivalent(&free, &eta_vector(&p, c, None)), "{name}");
                for u in 0..g.w() {
                    assert!(space.equivalent(&eta_vector(&p, c, Some(g.covector(u))), &free), "{name}");
                }
            }
        }
    }

    #[test]
    fn angular_order_starts_at_the_given_direction() {
        let mut vs = vec![vec![1, 0], vec![0, -1], vec![-1, 0], vec![0, 1], vec![1, 1]];
        vs.sort_by(|a, b| angular_cmp(&[0, 1], a, b));
        assert_eq!(vs, vec![vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn non_full_dimensional_input_is_rejected() {
        let p = crate::polytope::validate_polytope(None, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert!(matches!(gorenstein(&p), Err(Error::DegenerateInput(_))));
    }
}
