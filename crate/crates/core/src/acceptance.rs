//! The acceptance criteria as runnable checks, shared by the test suite and
//! the `corpus` command.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, rat};
use crate::cohomology;
use crate::cone;
use crate::corpus;
use crate::poly::{self, Poly};
use crate::polytope::{convex_hull_vertices, validate_polytope, LatticePolytope};
use crate::report::{lift_names, names, z_t_names};
use crate::scheme::{self, CoordinateChoice, Decomposition};
use crate::versal::{self, Gorenstein, LiftedFamily, Presentation};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub result: Result<String, String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.result {
            Ok(s) => format!("PASS criterion {}: {} ({s})", self.id, self.title),
            Err(s) => format!("FAIL criterion {}: {} ({s})", self.id, self.title),
        }
    }
}

type Check = Result<String, String>;

pub const TITLES: [&str; 9] = [
    "hexagon scheme",
    "hexagon singularity",
    "hexagon component total spaces",
    "Q4 summands, equations, lifts and fat point",
    "Q5 base",
    "Q8 scheme and components",
    "cohomology dimensions",
    "property suites on corpus and random polygons",
    "flatness relations",
];

pub fn run(id: u32) -> Outcome {
    let result = match id {
        1 => hexagon_scheme(),
        2 => hexagon_singularity(),
        3 => hexagon_components(),
        4 => q4(),
        5 => q5(),
        6 => q8(),
        7 => cohomology_dims(),
        8 => properties(25, 0x5eed),
        9 => flatness(),
        _ => Err(format!("no criterion {id}")),
    };
    Outcome { id, title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown"), result }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=9).map(run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> Result<LatticePolytope, String> {
    corpus::polytope(name).map_err(|e| e.to_string())
}

fn parse_all(src: &[&str], names: &[String]) -> Result<Vec<Poly>, String> {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    src.iter().map(|s| poly::parse(s, &refs)).collect()
}

fn normalized_set(ps: &[Poly]) -> BTreeSet<Poly> {
    ps.iter().map(|p| p.normalized()).collect()
}

fn set_of(vs: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    vs.iter().cloned().collect()
}

fn setup(p: &LatticePolytope) -> Result<(Gorenstein, Presentation, LiftedFamily), String> {
    let g = versal::gorenstein(p).map_err(|e| e.to_string())?;
    let pres = versal::gorenstein_equations(p, &g, versal::DEFAULT_DEGREE_BOUND);
    let fam = versal::lift_equations(p, &g, &pres).map_err(|e| e.to_string())?;
    Ok((g, pres, fam))
}

/// Each expected lift matches exactly one computed lift up to sign, modulo the
/// toric relations among the `t_i`.
fn lifts_match(p: &LatticePolytope, fam: &LiftedFamily, expected: &[Poly]) -> Result<(), String> {
    let space = scheme::summand_space(p);
    let class = versal::lattice_class(&space, fam.w);
    ensure(fam.lifts.len() == expected.len(), || format!("{} lifts, expected {}", fam.lifts.len(), expected.len()))?;
    for e in expected {
        let hits = fam
            .polys()
            .iter()
            .filter(|f| poly::in_lattice_ideal(&(*f - e), &class) || poly::in_lattice_ideal(&(*f + e), &class))
            .count();
        ensure(hits == 1, || format!("lift {e} matched {hits} times"))?;
    }
    Ok(())
}

fn power_sum(n: usize, k: u32, terms: &[(i64, usize)]) -> Poly {
    let mut p = Poly::zero(n);
    for &(c, i) in terms {
        let mut m = vec![0; n];
        m[i - 1] = k;
        p.add_term(m, rat(c));
    }
    p
}

fn hexagon_scheme() -> Check {
    let p = load("hexagon")?;
    let ideal = scheme::scheme_ideal(&p);
    let expect = [
        power_sum(6, 1, &[(1, 1), (1, 2), (-1, 4), (-1, 5)]),
        power_sum(6, 1, &[(1, 2), (1, 3), (-1, 5), (-1, 6)]),
        power_sum(6, 2, &[(1, 1), (1, 2), (-1, 4), (-1, 5)]),
        power_sum(6, 2, &[(1, 2), (1, 3), (-1, 5), (-1, 6)]),
    ];
    ensure(normalized_set(&ideal.polys()) == normalized_set(&expect), || "scheme generators differ".into())?;
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2), (3, 1), (0, 3)]))
        .map_err(|e| e.to_string())?;
    let s = names("s", 1, 3);
    let expect = parse_all(&["s1s3", "s2s3"], &s)?;
    ensure(normalized_set(&bp.residual) == normalized_set(&expect), || "residual base ideal differs".into())?;
    let auto = scheme::base_presentation(&p, &CoordinateChoice::Auto).map_err(|e| e.to_string())?;
    ensure(auto.monomial && auto.residual.len() == 2, || "automatic coordinates are not monomial".into())?;
    let dims: BTreeSet<usize> = scheme::reduced_components(&p).flats.iter().map(|f| f.downstairs_dim).collect();
    ensure(dims == BTreeSet::from([1, 2]), || format!("component dims {dims:?}"))?;
    Ok("4 generators, residual (s1*s3, s2*s3), components of dims 1 and 2".into())
}

pub const HEXAGON_EQUATIONS: [&str; 9] = [
    "z1t - z6z2",
    "z2t - z1z3",
    "z3t - z2z4",
    "z4t - z3z5",
    "z5t - z4z6",
    "z6t - z5z1",
    "t^2 - z1z4",
    "t^2 - z2z5",
    "t^2 - z3z6",
];

pub const HEXAGON_LIFTS: [&str; 9] = [
    "Z1t1 - Z6Z2",
    "Z2t2 - Z1Z3",
    "Z3t3 - Z2Z4",
    "Z4t4 - Z3Z5",
    "Z5t5 - Z4Z6",
    "Z6t6 - Z5Z1",
    "t5t6 - Z1Z4",
    "t3t4 - Z2Z5",
    "t1t2 - Z3Z6",
];

fn hexagon_singularity() -> Check {
    let p = load("hexagon")?;
    let (g, pres, fam) = setup(&p)?;
    ensure(g.elements.len() == 7, || format!("{} Hilbert basis elements", g.elements.len()))?;
    let eta0: Vec<i64> = (0..g.w()).map(|v| g.eta0(v)).collect();
    ensure(eta0 == [0, 1, 2, 2, 1, 0], || format!("eta0 values {eta0:?}"))?;
    let expect = parse_all(&HEXAGON_EQUATIONS, &z_t_names(g.w()))?;
    ensure(normalized_set(&pres.polys()) == normalized_set(&expect), || "equations differ".into())?;
    let lifts = parse_all(&HEXAGON_LIFTS, &lift_names(g.w(), p.num_edges()))?;
    lifts_match(&p, &fam, &lifts)?;
    Ok("7 generators, 9 equations, 9 lifts".into())
}

fn hexagon_components() -> Check {
    let p = load("hexagon")?;
    let rc = scheme::reduced_components(&p);
    let two = rc
        .flats
        .iter()
        .find(|f| f.decomposition.summands.len() == 2)
        .ok_or("no decomposition into two triangles")?;
    let c2 = versal::component_total_space(&p, &two.decomposition).map_err(|e| e.to_string())?;
    let expect2 = set_of(&[
        vec![0, 0, 1, 0],
        vec![1, 0, 1, 0],
        vec![1, 1, 1, 0],
        vec![0, 0, 0, 1],
        vec![0, 1, 0, 1],
        vec![1, 1, 0, 1],
    ]);
    ensure(set_of(&c2.generators) == expect2, || format!("triangle pair generators {:?}", c2.generators))?;
    let segments = Decomposition {
        summands: vec![vec![1, 0, 0, 1, 0, 0], vec![0, 0, 1, 0, 0, 1], vec![0, 1, 0, 0, 1, 0]],
    };
    ensure(
        rc.flats.iter().any(|f| set_of(&f.decomposition.summands) == set_of(&segments.summands)),
        || "no decomposition into three segments".into(),
    )?;
    let c3 = versal::component_total_space(&p, &segments).map_err(|e| e.to_string())?;
    let expect3 = set_of(&[
        vec![0, 0, 1, 0, 0],
        vec![1, 0, 1, 0, 0],
        vec![0, 0, 0, 1, 0],
        vec![0, 1, 0, 1, 0],
        vec![0, 0, 0, 0, 1],
        vec![1, 1, 0, 0, 1],
    ]);
    ensure(set_of(&c3.generators) == expect3, || format!("segment generators {:?}", c3.generators))?;
    Ok("6 + 6 generators".into())
}

pub const Q4_EQUATIONS: [&str; 20] = [
    "t^2-z4z8", "t^2-z1z5", "t^2-z2z7", "z1t-z2z8", "z2t-z3z8", "z2t-z1z4", "z3t-z2z4", "z4t-z3z7", "z4t-z2z5",
    "z5t-z4z7", "z5t-z2z6", "z6t-z5z7", "z7t-z5z8", "z7t-z1z6", "z8t-z1z7", "z1z3-z2^2", "z3z5-z4^2", "z4z6-z5^2",
    "z6z8-z7^2", "z3z6-z4z5",
];

pub const Q4_LIFTS: [&str; 20] = [
    "t1t2-Z4Z8", "t2^2-Z1Z5", "t1t4-Z2Z7", "Z1t1-Z2Z8", "Z2t1-Z3Z8", "Z2t2-Z1Z4", "Z3t2-Z2Z4", "Z4t3-Z3Z7",
    "Z4t2-Z2Z5", "Z5t3-Z4Z7", "Z5t2-Z2Z6", "Z6t3-Z5Z7", "Z7t3-Z5Z8", "Z7t4-Z1Z6", "Z8t4-Z1Z7", "Z1Z3-Z2^2",
    "Z3Z5-Z4^2", "Z4Z6-Z5^2", "Z6Z8-Z7^2", "Z3Z6-Z4Z5",
];

/// In the ring `z_1..z_8, t, s1` with `s1` the infinitesimal parameter.
pub const Q4_EPSILON: [&str; 20] = [
    "t(t-2s1)-z4z8", "t(t-4s1)-z1z5", "t(t-3s1)-z2z7", "z1t-z2z8", "z2t-z3z8", "z2(t-2s1)-z1z4", "z3(t-2s1)-z2z4",
    "z4(t-s1)-z3z7", "z4(t-2s1)-z2z5", "z5(t-s1)-z4z7", "z5(t-2s1)-z2z6", "z6(t-s1)-z5z7", "z7(t-s1)-z5z8",
    "z7(t-3s1)-z1z6", "z8(t-3s1)-z1z7", "z1z3-z2^2", "z3z5-z4^2", "z4z6-z5^2", "z6z8-z7^2", "z3z6-z4z5",
];

fn q4() -> Check {
    let p = load("q4")?;
    let space = scheme::summand_space(&p);
    ensure(space.dim() == 2, || format!("dim V = {}", space.dim()))?;
    let rays = scheme::summand_cone(&p).rays;
    let triangles: BTreeSet<BTreeSet<Vec<i64>>> = rays
        .iter()
        .map(|r| scheme::summand_polytope(&p, r).map(|v| v.into_iter().collect()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let expect: BTreeSet<BTreeSet<Vec<i64>>> = [
        set_of(&[vec![0, 0], vec![2, 4], vec![0, 3]]),
        set_of(&[vec![0, 0], vec![3, 0], vec![4, 2]]),
    ]
    .into_iter()
    .collect();
    ensure(triangles == expect, || format!("ray summands {triangles:?}"))?;
    let (g, pres, fam) = setup(&p)?;
    let hb: Vec<Vec<i64>> = vec![
        vec![0, 1, 0],
        vec![-1, 1, 1],
        vec![-2, 1, 2],
        vec![-1, 0, 2],
        vec![0, -1, 2],
        vec![1, -2, 2],
        vec![1, -1, 1],
        vec![1, 0, 0],
        vec![0, 0, 1],
    ];
    ensure(g.elements == hb, || format!("Hilbert basis {:?}", g.elements))?;
    let eqs = parse_all(&Q4_EQUATIONS, &z_t_names(g.w()))?;
    ensure(normalized_set(&pres.polys()) == normalized_set(&eqs), || "equations differ".into())?;
    let table = versal::eta_table(&p, &g);
    let eta: [[i64; 4]; 8] =
        [[0, 0, 0, 0], [1, 0, 0, 0], [2, 0, 0, 0], [1, 1, 0, 0], [0, 2, 0, 0], [0, 0, 0, 2], [0, 0, 0, 1], [0, 0, 0, 0]];
    for (v, e) in eta.iter().enumerate() {
        ensure(space.equivalent(&table.eta[v], e), || format!("eta^{} = {:?}", v + 1, table.eta[v]))?;
    }
    let lifts = parse_all(&Q4_LIFTS, &lift_names(g.w(), p.num_edges()))?;
    lifts_match(&p, &fam, &lifts)?;
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Auto).map_err(|e| e.to_string())?;
    ensure(bp.coords == [(0, 2)], || format!("base coordinates {:?}", bp.coords))?;
    let eps = parse_all(&["s1^2"], &names("s", 1, 1))?;
    ensure(bp.residual == eps, || "the base is not the fat point s1^2 = 0".into())?;
    let (images, killed) = versal::base_specialization(&bp).map_err(|e| e.to_string())?;
    let specialised = versal::specialize_family(&fam, &images, &killed);
    let mut ring = z_t_names(g.w());
    ring.push("s1".into());
    let expect = parse_all(&Q4_EPSILON, &ring)?;
    ensure(normalized_set(&specialised) == normalized_set(&expect), || "specialised family differs".into())?;
    Ok("dim V 2, 2 triangles, 9 generators, 20 equations, 20 lifts, fat point".into())
}

fn q5() -> Check {
    let p = load("q5")?;
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2), (0, 1)]))
        .map_err(|e| e.to_string())?;
    let expect = parse_all(&["s1^2", "s1s2"], &names("s", 1, 2))?;
    ensure(normalized_set(&bp.residual) == normalized_set(&expect), || "residual base ideal differs".into())?;
    let maxi = scheme::maximal_decompositions(&p);
    ensure(maxi.len() == 1, || format!("{} maximal decompositions", maxi.len()))?;
    let mut sizes: Vec<usize> = maxi[0].summands.iter().map(|s| s.iter().filter(|x| **x == 1).count()).collect();
    sizes.sort();
    ensure(sizes == [2, 3], || format!("summand edge counts {sizes:?}"))?;
    let rc = scheme::reduced_components(&p);
    ensure(rc.flats.len() == 1 && rc.flats[0].downstairs_dim == 1, || "reduced base is not a line".into())?;
    Ok("residual (s1^2, s1*s2), triangle + segment, reduced base a line".into())
}

fn q8() -> Check {
    let p = load("q8")?;
    let ideal = scheme::scheme_ideal(&p);
    let mut expect = vec![];
    for k in 1..=3 {
        expect.push(power_sum(8, k, &[(1, 1), (1, 2), (1, 8), (-1, 4), (-1, 5), (-1, 6)]));
        expect.push(power_sum(8, k, &[(1, 2), (1, 3), (1, 4), (-1, 6), (-1, 7), (-1, 8)]));
    }
    ensure(normalized_set(&ideal.polys()) == normalized_set(&expect), || "power sums differ".into())?;
    let rc = scheme::reduced_components(&p);
    ensure(rc.flats.len() == 3, || format!("{} maximal decompositions", rc.flats.len()))?;
    let mut dims: Vec<usize> = rc.flats.iter().map(|f| f.downstairs_dim).collect();
    dims.sort();
    ensure(dims == [2, 2, 3], || format!("component dims {dims:?}"))?;
    let big = rc.flats.iter().position(|f| f.downstairs_dim == 3).unwrap();
    for &(i, j, d) in &rc.intersections {
        let expected = if i == big || j == big { 1 } else { 0 };
        ensure(d == expected, || format!("components {i} and {j} meet in dim {d}"))?;
    }
    Ok("6 power sums, components 3,2,2 meeting in lines and a point".into())
}

fn r_star(n: usize, k: i64) -> Vec<i64> {
    let mut r = vec![0; n + 1];
    r[n] = k;
    r
}

fn cohomology_dims() -> Check {
    for e in corpus::entries() {
        let p = load(e.name)?;
        let g = versal::gorenstein(&p).map_err(|e| e.to_string())?;
        let dim_v = scheme::summand_space(&p).dim();
        let t1 = cohomology::t1_dimension(&p, &g, &r_star(p.ambient, 1));
        ensure(t1 + 1 == dim_v, || format!("{}: T1(-R*) = {t1}, dim V = {dim_v}", e.name))?;
        for (k, w) in cohomology::w_dimensions(&p) {
            let t2 = cohomology::t2_dimension(&p, &g, &r_star(p.ambient, k as i64));
            ensure(w <= t2, || format!("{}: W_{k} = {w} > T2 = {t2}", e.name))?;
        }
    }
    let expect: [(&str, &[(u32, usize)]); 3] =
        [("q4", &[(2, 1)]), ("hexagon", &[(2, 2)]), ("q8", &[(2, 2), (3, 2)])];
    for (name, nonzero) in expect {
        let w: Vec<(u32, usize)> = cohomology::w_dimensions(&load(name)?).into_iter().filter(|x| x.1 > 0).collect();
        ensure(w == nonzero, || format!("{name}: W = {w:?}"))?;
    }
    Ok("T1 = dim V - 1 on 7 polytopes, W as expected, W <= T2".into())
}

fn flatness() -> Check {
    let mut counts = vec![];
    for name in ["hexagon", "q4", "square"] {
        let p = load(name)?;
        let (g, pres, fam) = setup(&p)?;
        let r = versal::flatness_smoke_check(&p, &g, &pres, &fam).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.relation_ii == pres.equations.len(), || format!("{name}: {r:?}"))?;
        counts.push(format!("{name} {}/{}/{}", r.relation_i, r.relation_ii, r.relation_iii));
    }
    Ok(counts.join(", "))
}

/// Up to `count` distinct lattice polygons with primitive edges, at most 8
/// vertices and coordinates in `0..=5`.
pub fn random_polygons(count: usize, seed: u64) -> Vec<LatticePolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let m = rng.gen_range(3..=8);
        let pts: Vec<Vec<i64>> = (0..m).map(|_| vec![rng.gen_range(0..=5), rng.gen_range(0..=5)]).collect();
        let hull = convex_hull_vertices(&pts);
        if hull.len() < 3 || hull.len() > 8 || !seen.insert(hull.clone()) {
            continue;
        }
        if let Ok(p) = validate_polytope(Some(format!("random-{}", out.len() + 1)), &hull) {
            if p.dim == 2 {
                out.push(p);
            }
        }
    }
    out
}

/// A unimodular matrix with entries in `-2..=2`, built from elementary moves.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    loop {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..rng.gen_range(1..=4) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            match rng.gen_range(0..3) {
                0 if i != j => {
                    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for k in 0..n {
                        m[i][k] += s * m[j][k];
                    }
                }
                1 => m.swap(i, j),
                _ => m[i].iter_mut().for_each(|x| *x = -*x),
            }
        }
        if m.iter().flatten().all(|x| x.abs() <= 2) {
            return m;
        }
    }
}

fn transform(p: &LatticePolytope, m: &[Vec<i64>]) -> Result<LatticePolytope, String> {
    let pts: Vec<Vec<i64>> = p.vertices.iter().map(|v| m.iter().map(|row| arith::dot(row, v)).collect()).collect();
    validate_polytope(p.name.clone(), &pts).map_err(|e| e.to_string())
}

/// Every dimension computed for a polytope, in a fixed order.
pub fn dimension_signature(p: &LatticePolytope) -> Result<Vec<usize>, String> {
    let g = versal::gorenstein(p).map_err(|e| e.to_string())?;
    let pres = versal::gorenstein_equations(p, &g, versal::DEFAULT_DEGREE_BOUND);
    let mut sig = vec![p.num_edges(), scheme::summand_space(p).dim(), g.elements.len(), pres.equations.len()];
    let k0 = scheme::scheme_ideal(p).max_k0();
    for k in 1..=(k0 as i64 + 1) {
        sig.push(cohomology::t1_dimension(p, &g, &r_star(p.ambient, k)));
        sig.push(cohomology::t2_dimension(p, &g, &r_star(p.ambient, k)));
    }
    sig.extend(cohomology::w_dimensions(p).into_iter().map(|x| x.1));
    let mut comps: Vec<usize> = scheme::reduced_components(p).flats.iter().map(|f| f.downstairs_dim).collect();
    comps.sort();
    sig.push(comps.len());
    sig.extend(comps);
    sig.push(cohomology::kodaira_spencer(p, &g).rank);
    Ok(sig)
}

/// The invariant suite on one polytope.
pub fn check_properties(p: &LatticePolytope, rng: &mut impl Rng) -> Result<(), String> {
    let name = p.name.clone().unwrap_or_default();
    let fail = |what: &str| format!("{name}: {what}");
    for f in &p.two_faces {
        ensure(p.signed_edge_sum(&f.signs).iter().all(|x| *x == 0), || fail("signed edge sum"))?;
    }
    let (g, pres, fam) = setup(p)?;

    // eta splits eta0
    let mut covectors: Vec<Vec<i64>> = (0..g.w()).map(|v| g.covector(v).to_vec()).collect();
    for _ in 0..10 {
        covectors.push((0..p.ambient).map(|_| rng.gen_range(-4..=4)).collect());
    }
    for c in &covectors {
        let eta0 = -p.vertices.iter().map(|v| arith::dot(v, c)).min().unwrap();
        let eta = versal::eta_vector(p, c, None);
        ensure(eta.iter().sum::<i64>() == eta0 && eta.iter().all(|x| *x >= 0), || fail(&format!("eta at {c:?}")))?;
    }

    // lifts restrict to the equations and both vanish on their parametrisations
    let diag = versal::specialize_family(&fam, &versal::diagonal(p.num_edges()), &[]);
    ensure(diag == pres.polys(), || fail("F -> f specialisation"))?;
    let deg = versal::singularity_class(&g);
    ensure(pres.polys().iter().all(|f| poly::in_lattice_ideal(f, &deg)), || fail("f on the parametrisation"))?;
    let table = versal::eta_table(p, &g);
    let space = scheme::summand_space(p);
    let total = versal::total_space_class(&g, &table, &space);
    ensure(fam.polys().iter().all(|f| poly::in_lattice_ideal(f, &total)), || fail("F on the parametrisation"))?;

    // dual involution
    let back = g.sigma_dual.dual();
    ensure(set_of(&back.rays) == set_of(&g.sigma.rays), || fail("dual of the dual cone"))?;

    // Hilbert basis: the boundary elements are irreducible (the appended
    // [0,..,0,1] may be a sum, as for the square), and E is complete on a box
    for (i, a) in g.elements[..g.w()].iter().enumerate() {
        for (j, b) in g.elements.iter().enumerate() {
            if i != j {
                ensure(!g.sigma_dual.contains(&arith::sub(a, b)), || fail("reducible Hilbert basis element"))?;
            }
        }
    }
    let grading = g.grading();
    let d = g.n + 1;
    let radius = 3i64;
    let mut x = vec![-radius; d];
    loop {
        if x.iter().any(|v| *v != 0) && g.sigma_dual.contains(&x) {
            ensure(!cone::fiber(&g.elements, &grading, &x).is_empty(), || fail(&format!("{x:?} not generated")))?;
        }
        let mut k = 0;
        while k < d && x[k] == radius {
            x[k] = -radius;
            k += 1;
        }
        if k == d {
            break;
        }
        x[k] += 1;
    }

    // Minkowski additivity on the rays of the summand cone
    let rays = scheme::summand_cone(p).rays;
    for a in &rays {
        for b in &rays {
            let pa = scheme::summand_polytope(p, a).map_err(|e| e.to_string())?;
            let pb = scheme::summand_polytope(p, b).map_err(|e| e.to_string())?;
            let sum: Vec<Vec<i64>> = pa.iter().flat_map(|u| pb.iter().map(move |v| arith::add(u, v))).collect();
            let pab = scheme::summand_polytope(p, &arith::add(a, b)).map_err(|e| e.to_string())?;
            ensure(set_of(&convex_hull_vertices(&sum)) == set_of(&pab), || fail("Minkowski additivity"))?;
        }
    }

    // unimodular invariance
    let sig = dimension_signature(p)?;
    let m = random_unimodular(p.ambient, rng);
    let q = transform(p, &m)?;
    ensure(dimension_signature(&q)? == sig, || fail(&format!("dimensions change under {m:?}")))?;
    Ok(())
}

pub fn properties(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys: Vec<LatticePolytope> = corpus::entries().iter().map(|e| load(e.name)).collect::<Result<_, _>>()?;
    let random = random_polygons(count, seed);
    ensure(random.len() == count, || format!("only {} random polygons", random.len()))?;
    polys.extend(random);
    for p in &polys {
        check_properties(p, &mut rng)?;
    }
    Ok(format!("{} polytopes ({count} random)", polys.len()))
}
