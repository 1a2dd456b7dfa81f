//! Frozen values for the Gorenstein cone, the eta table, the equations of the
//! singularity, their lifts, specialisations and component total spaces.

use std::collections::BTreeSet;

use toric_versal::corpus;
use toric_versal::poly::{self, Poly};
use toric_versal::polytope::LatticePolytope;
use toric_versal::scheme::{self, CoordinateChoice, Decomposition};
use toric_versal::versal::{self, Gorenstein, LiftedFamily, Presentation};

fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn parse_all(src: &[&str], names: &[String]) -> Vec<Poly> {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    src.iter().map(|s| poly::parse(s, &refs).unwrap()).collect()
}

fn normalized_set(ps: &[Poly]) -> BTreeSet<Poly> {
    ps.iter().map(|p| p.normalized()).collect()
}

fn setup(name: &str) -> (LatticePolytope, Gorenstein, Presentation, LiftedFamily) {
    let p = corpus::polytope(name).unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let pres = versal::gorenstein_equations(&p, &g, versal::DEFAULT_DEGREE_BOUND);
    let fam = versal::lift_equations(&p, &g, &pres).unwrap();
    (p, g, pres, fam)
}

fn z_t_names(w: usize) -> Vec<String> {
    let mut v = names("z", w);
    v.push("t".into());
    v
}

fn lift_names(w: usize, n: usize) -> Vec<String> {
    [names("Z", w), names("t", n)].concat()
}

/// Every expected lift agrees, up to sign and modulo the toric relations
/// among the t_i, with exactly one computed lift.
fn assert_lifts_match(p: &LatticePolytope, fam: &LiftedFamily, expected: &[Poly]) {
    let space = scheme::summand_space(p);
    let class = versal::lattice_class(&space, fam.w);
    assert_eq!(fam.lifts.len(), expected.len());
    for e in expected {
        let hits = fam
            .polys()
            .iter()
            .filter(|f| poly::in_lattice_ideal(&(*f - e), &class) || poly::in_lattice_ideal(&(*f + e), &class))
            .count();
        assert_eq!(hits, 1, "no unique match for {e}");
    }
}

#[test]
fn hexagon_hilbert_basis() {
    let p = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let expect: Vec<Vec<i64>> = vec![
        vec![0, 1, 0],
        vec![-1, 1, 1],
        vec![-1, 0, 2],
        vec![0, -1, 2],
        vec![1, -1, 1],
        vec![1, 0, 0],
        vec![0, 0, 1],
    ];
    assert_eq!(g.elements, expect);
    assert_eq!(g.w(), 6);
}

#[test]
fn q4_hilbert_basis() {
    let p = corpus::polytope("q4").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let expect: Vec<Vec<i64>> = vec![
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
    assert_eq!(g.elements, expect);
}

#[test]
fn square_hilbert_basis_and_conifold_equations() {
    let (_, g, pres, _) = setup("square");
    assert_eq!(
        g.elements,
        vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 1], vec![1, 0, 0], vec![0, 0, 1]]
    );
    let expect = parse_all(&["z1z3 - t", "z2z4 - t"], &z_t_names(4));
    assert_eq!(normalized_set(&pres.polys()), normalized_set(&expect));
}

#[test]
fn hexagon_eta_vectors() {
    let p = corpus::polytope("hexagon").unwrap();
    let space = scheme::summand_space(&p);
    assert_eq!(versal::eta_vector(&p, &[-1, 0], None), vec![1, 1, 0, 0, 0, 0]);
    let e5 = versal::eta_vector(&p, &[1, -1], None);
    assert!(space.equivalent(&e5, &[0, 0, 0, 0, 0, 1]));
    assert!(space.equivalent(&e5, &[-1, 0, 1, 1, 0, 0]));
    assert_eq!(versal::eta_vector(&p, &[0, 0], None), vec![0; 6]);
}

#[test]
fn hexagon_eta_table_matches_paths_through_the_listed_vertices() {
    let p = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let table = versal::eta_table(&p, &g);
    let space = scheme::summand_space(&p);
    let expect: Vec<Vec<i64>> = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![-1, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 0],
    ];
    for (v, e) in expect.iter().enumerate() {
        assert!(space.equivalent(&table.eta[v], e), "eta(c^{})", v + 1);
    }
    assert_eq!(table.eta0, vec![0, 1, 2, 2, 1, 0]);
}

#[test]
fn q4_eta_table() {
    let p = corpus::polytope("q4").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let table = versal::eta_table(&p, &g);
    let space = scheme::summand_space(&p);
    let expect: Vec<Vec<i64>> = vec![
        vec![0, 0, 0, 0],
        vec![1, 0, 0, 0],
        vec![2, 0, 0, 0],
        vec![1, 1, 0, 0],
        vec![0, 2, 0, 0],
        vec![0, 0, 0, 2],
        vec![0, 0, 0, 1],
        vec![0, 0, 0, 0],
    ];
    for (v, e) in expect.iter().enumerate() {
        assert!(space.equivalent(&table.eta[v], e), "eta^{}", v + 1);
    }
    assert!(space.equivalent(&[1, 1, 0, 0], &[0, 0, 2, 0]));
    assert!(space.equivalent(&[0, 2, 0, 0], &[0, 0, 1, 1]));
}

#[test]
fn eta_sums_to_eta0_and_is_nonnegative() {
    for e in corpus::entries() {
        let p = corpus::polytope(e.name).unwrap();
        if p.dim != p.ambient {
            continue;
        }
        let g = versal::gorenstein(&p).unwrap();
        let table = versal::eta_table(&p, &g);
        for v in 0..g.w() {
            assert_eq!(table.eta[v].iter().sum::<i64>(), table.eta0[v], "{}", e.name);
            assert!(table.eta[v].iter().all(|x| *x >= 0), "{}", e.name);
        }
    }
}

const HEXAGON_EQUATIONS: [&str; 9] = [
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

const HEXAGON_LIFTS: [&str; 9] = [
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

const Q4_EQUATIONS: [&str; 20] = [
    "t^2-z4z8", "t^2-z1z5", "t^2-z2z7", "z1t-z2z8", "z2t-z3z8", "z2t-z1z4", "z3t-z2z4", "z4t-z3z7", "z4t-z2z5",
    "z5t-z4z7", "z5t-z2z6", "z6t-z5z7", "z7t-z5z8", "z7t-z1z6", "z8t-z1z7", "z1z3-z2^2", "z3z5-z4^2", "z4z6-z5^2",
    "z6z8-z7^2", "z3z6-z4z5",
];

const Q4_LIFTS: [&str; 20] = [
    "t1t2-Z4Z8", "t2^2-Z1Z5", "t1t4-Z2Z7", "Z1t1-Z2Z8", "Z2t1-Z3Z8", "Z2t2-Z1Z4", "Z3t2-Z2Z4", "Z4t3-Z3Z7",
    "Z4t2-Z2Z5", "Z5t3-Z4Z7", "Z5t2-Z2Z6", "Z6t3-Z5Z7", "Z7t3-Z5Z8", "Z7t4-Z1Z6", "Z8t4-Z1Z7", "Z1Z3-Z2^2",
    "Z3Z5-Z4^2", "Z4Z6-Z5^2", "Z6Z8-Z7^2", "Z3Z6-Z4Z5",
];

const Q4_EPSILON: [&str; 20] = [
    "t(t-2e)-z4z8", "t(t-4e)-z1z5", "t(t-3e)-z2z7", "z1t-z2z8", "z2t-z3z8", "z2(t-2e)-z1z4", "z3(t-2e)-z2z4",
    "z4(t-e)-z3z7", "z4(t-2e)-z2z5", "z5(t-e)-z4z7", "z5(t-2e)-z2z6", "z6(t-e)-z5z7", "z7(t-e)-z5z8",
    "z7(t-3e)-z1z6", "z8(t-3e)-z1z7", "z1z3-z2^2", "z3z5-z4^2", "z4z6-z5^2", "z6z8-z7^2", "z3z6-z4z5",
];

#[test]
fn hexagon_equations() {
    let (_, g, pres, _) = setup("hexagon");
    let expect = parse_all(&HEXAGON_EQUATIONS, &z_t_names(g.w()));
    assert_eq!(normalized_set(&pres.polys()), normalized_set(&expect));
}

#[test]
fn hexagon_lifts() {
    let (p, g, _, fam) = setup("hexagon");
    let expect = parse_all(&HEXAGON_LIFTS, &lift_names(g.w(), p.num_edges()));
    assert_lifts_match(&p, &fam, &expect);
    // the first six come out literally
    let ours = normalized_set(&fam.polys());
    for e in &expect[..6] {
        assert!(ours.contains(&e.normalized()), "{e}");
    }
}

#[test]
fn q4_equations_and_lifts() {
    let (p, g, pres, fam) = setup("q4");
    let expect = parse_all(&Q4_EQUATIONS, &z_t_names(g.w()));
    assert_eq!(normalized_set(&pres.polys()), normalized_set(&expect));
    let lifts = parse_all(&Q4_LIFTS, &lift_names(g.w(), p.num_edges()));
    assert_lifts_match(&p, &fam, &lifts);
}

#[test]
fn q4_epsilon_family() {
    let (p, g, _, fam) = setup("q4");
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2)])).unwrap();
    let (images, killed) = versal::base_specialization(&bp).unwrap();
    let specialised = versal::specialize_family(&fam, &images, &killed);
    let expect = parse_all(&Q4_EPSILON, &z_t_names(g.w()).into_iter().chain(["e".to_string()]).collect::<Vec<_>>());
    assert_eq!(normalized_set(&specialised), normalized_set(&expect));
    // the automatic coordinate choice lands on the same difference
    let auto = scheme::base_presentation(&p, &CoordinateChoice::Auto).unwrap();
    assert_eq!(auto.coords, vec![(0, 2)]);
}

#[test]
fn lifts_specialize_to_equations_on_the_diagonal() {
    for name in ["hexagon", "q4", "q5", "q8", "square", "triangle", "cube"] {
        let (p, _, pres, fam) = setup(name);
        let specialised = versal::specialize_family(&fam, &versal::diagonal(p.num_edges()), &[]);
        assert_eq!(specialised, pres.polys(), "{name}");
    }
}

#[test]
fn equations_vanish_under_the_monomial_parametrisations() {
    for name in ["hexagon", "q4", "q5", "q8", "square", "triangle", "cube"] {
        let (p, g, pres, fam) = setup(name);
        let deg = versal::singularity_class(&g);
        for f in pres.polys() {
            assert!(poly::in_lattice_ideal(&f, &deg), "{name}: {f}");
        }
        let table = versal::eta_table(&p, &g);
        let space = scheme::summand_space(&p);
        let total = versal::total_space_class(&g, &table, &space);
        for f in fam.polys() {
            assert!(poly::in_lattice_ideal(&f, &total), "{name}: {f}");
        }
    }
}

#[test]
fn lifted_exponents_are_nonnegative_and_p_is_balanced() {
    for name in ["hexagon", "q4", "q8", "cube"] {
        let (_, g, _, fam) = setup(name);
        for l in &fam.lifts {
            let c = l.quadruple.degree(&g);
            let mut sum = vec![0i64; c.len()];
            for (v, &k) in l.p.iter().enumerate() {
                for (x, y) in sum.iter_mut().zip(&g.elements[v]) {
                    *x += k as i64 * y;
                }
            }
            // [c, eta0(c)] = sum p_v [c^v, eta0(c^v)]
            assert_eq!(sum[..c.len() - 1], c[..c.len() - 1], "{name}");
        }
    }
}

#[test]
fn hexagon_component_total_spaces() {
    let p = corpus::polytope("hexagon").unwrap();
    let rc = scheme::reduced_components(&p);
    let by_size = |k: usize| rc.flats.iter().find(|f| f.decomposition.summands.len() == k).unwrap();

    let two = versal::component_total_space(&p, &by_size(2).decomposition).unwrap();
    let expect: BTreeSet<Vec<i64>> = [
        [0, 0, 1, 0],
        [1, 0, 1, 0],
        [1, 1, 1, 0],
        [0, 0, 0, 1],
        [0, 1, 0, 1],
        [1, 1, 0, 1],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    assert_eq!(two.generators.iter().cloned().collect::<BTreeSet<_>>(), expect);
    assert_eq!(two.cone.rays.len(), 6);

    // three segments, placed in the listed order (1,0), (0,1), (1,1)
    let ordered = Decomposition {
        summands: vec![vec![1, 0, 0, 1, 0, 0], vec![0, 0, 1, 0, 0, 1], vec![0, 1, 0, 0, 1, 0]],
    };
    let three = versal::component_total_space(&p, &ordered).unwrap();
    let expect: BTreeSet<Vec<i64>> = [
        [0, 0, 1, 0, 0],
        [1, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 1, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [1, 1, 0, 0, 1],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    assert_eq!(three.generators.iter().cloned().collect::<BTreeSet<_>>(), expect);

    // canonical order gives the same set after permuting the summand slots
    let canon = versal::component_total_space(&p, &by_size(3).decomposition).unwrap();
    let permuted: BTreeSet<Vec<i64>> = canon
        .generators
        .iter()
        .map(|g| {
            let mut h = g[..2].to_vec();
            for k in 0..3 {
                let src = canon.decomposition.summands.iter().position(|s| *s == ordered.summands[k]).unwrap();
                h.push(g[2 + src]);
            }
            h
        })
        .collect();
    assert_eq!(permuted, expect);
}

#[test]
fn trivial_decomposition_gives_sigma() {
    for name in ["hexagon", "q4", "square"] {
        let p = corpus::polytope(name).unwrap();
        let d = Decomposition { summands: vec![vec![1; p.num_edges()]] };
        let c = versal::component_total_space(&p, &d).unwrap();
        let mut sigma: Vec<Vec<i64>> = p.vertices.iter().map(|v| [v.clone(), vec![1]].concat()).collect();
        sigma.sort();
        let mut gens = c.generators.clone();
        gens.sort();
        assert_eq!(gens, sigma, "{name}");
    }
}

#[test]
fn hilbert_basis_lifts_through_component_cones() {
    for name in ["hexagon", "q5", "q8", "square"] {
        let p = corpus::polytope(name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        for f in scheme::reduced_components(&p).flats {
            let c = versal::component_total_space(&p, &f.decomposition).unwrap();
            c.check_lifts(&p, &g).unwrap();
        }
    }
}

#[test]
fn lifted_family_restricted_to_a_flat_lies_on_the_component_total_space() {
    let (p, g, _, fam) = setup("hexagon");
    for f in scheme::reduced_components(&p).flats {
        let d = &f.decomposition;
        let comp = versal::component_total_space(&p, d).unwrap();
        let images = scheme::flat_substitution(d);
        let specialised = versal::specialize_family(&fam, &images, &[]);
        let class = comp.parametrisation_class(&g);
        for s in &specialised {
            assert!(poly::in_lattice_ideal(s, &class), "{s}");
        }
    }
}

#[test]
fn flatness_relations_hold() {
    for name in ["hexagon", "q4", "square"] {
        let (p, g, pres, fam) = setup(name);
        let r = versal::flatness_smoke_check(&p, &g, &pres, &fam).unwrap();
        assert!(r.relation_i > 0 && r.relation_ii > 0 && r.relation_iii > 0, "{name}: {r:?}");
    }
}

#[test]
fn q4_relation_iii_on_the_first_quadric() {
    let (p, g, pres, _) = setup("q4");
    let names = z_t_names(g.w());
    let target = parse_all(&["t^2 - z4z8"], &names)[0].normalized();
    let q = pres.equations.iter().find(|q| q.poly().normalized() == target).unwrap();
    let mut r = vec![0u32; g.w()];
    r[0] = 1;
    versal::check_relation_iii(&p, &g, q, &r).unwrap();
}
