//! Frozen values for the summand space, the scheme ideal and the reduced
//! components on the bundled polygons.

use std::collections::BTreeSet;

use toric_versal::arith::rat;
use toric_versal::corpus;
use toric_versal::poly::Poly;
use toric_versal::scheme::{self, CoordinateChoice};

/// `sum c * t_i^k` over the given (coefficient, 1-based index) pairs.
fn power_sum(n: usize, k: u32, terms: &[(i64, usize)]) -> Poly {
    let mut p = Poly::zero(n);
    for &(c, i) in terms {
        let mut m = vec![0; n];
        m[i - 1] = k;
        p.add_term(m, rat(c));
    }
    p
}

fn mono(n: usize, exps: &[(usize, u32)]) -> Poly {
    let mut m = vec![0; n];
    for &(i, e) in exps {
        m[i - 1] = e;
    }
    Poly::monomial(m, rat(1))
}

fn normalized_set(ps: &[Poly]) -> BTreeSet<Poly> {
    ps.iter().map(|p| p.normalized()).collect()
}

#[test]
fn hexagon_scheme_ideal() {
    let p = corpus::polytope("hexagon").unwrap();
    let ideal = scheme::scheme_ideal(&p);
    let expect = vec![
        power_sum(6, 1, &[(1, 1), (1, 2), (-1, 4), (-1, 5)]),
        power_sum(6, 1, &[(1, 2), (1, 3), (-1, 5), (-1, 6)]),
        power_sum(6, 2, &[(1, 1), (1, 2), (-1, 4), (-1, 5)]),
        power_sum(6, 2, &[(1, 2), (1, 3), (-1, 5), (-1, 6)]),
    ];
    assert_eq!(normalized_set(&ideal.polys()), normalized_set(&expect));
    assert_eq!(ideal.k0, vec![2]);
}

#[test]
fn hexagon_summand_space_and_cone() {
    let p = corpus::polytope("hexagon").unwrap();
    let v = scheme::summand_space(&p);
    assert_eq!(v.dim(), 4);
    assert!(v.contains(&[1, 1, 1, 1, 1, 1]));
    assert!(v.contains(&[1, 0, 1, 0, 1, 0]));
    assert!(v.perp_contains(&[1, 1, 0, -1, -1, 0]));
    assert!(v.perp_contains(&[0, 1, 1, 0, -1, -1]));
    assert!(v.perp_contains(&[1, 0, -1, -1, 0, 1]));
    let c = scheme::summand_cone(&p);
    assert_eq!(c.rays.len(), 5);
    let rays: BTreeSet<Vec<i64>> = c.rays.iter().cloned().collect();
    for r in [[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1], [1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]] {
        assert!(rays.contains(&r.to_vec()), "{:?}", r);
    }
}

#[test]
fn hexagon_toric_binomials() {
    let p = corpus::polytope("hexagon").unwrap();
    let tb = scheme::toric_binomials(&p);
    assert_eq!(tb.basis.len(), 2);
    let polys: BTreeSet<Poly> = tb.polys().iter().map(|q| q.normalized()).collect();
    for (a, b) in [((1, 2), (4, 5)), ((2, 3), (5, 6)), ((1, 6), (3, 4))] {
        let q = &mono(6, &[(a.0, 1), (a.1, 1)]) - &mono(6, &[(b.0, 1), (b.1, 1)]);
        assert!(polys.contains(&q.normalized()), "missing {}", q);
    }
}

#[test]
fn hexagon_base_in_explicit_coordinates() {
    // s1 = t1 - t3, s2 = t4 - t2, s3 = t1 - t4
    let p = corpus::polytope("hexagon").unwrap();
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2), (3, 1), (0, 3)])).unwrap();
    let expect = vec![mono(3, &[(1, 1), (3, 1)]), mono(3, &[(2, 1), (3, 1)])];
    assert_eq!(normalized_set(&bp.residual), normalized_set(&expect));
    // t2 = t - s2 - s3, t6 = t - s1 - s3
    assert_eq!(bp.param[1], vec![rat(0), rat(-1), rat(-1)]);
    assert_eq!(bp.param[5], vec![rat(-1), rat(0), rat(-1)]);
}

#[test]
fn hexagon_base_auto_is_monomial_and_isomorphic() {
    let p = corpus::polytope("hexagon").unwrap();
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Auto).unwrap();
    assert!(bp.monomial && bp.integral);
    assert_eq!(bp.coords.len(), 3);
    // two quadratic monomials sharing exactly one variable
    assert_eq!(bp.residual.len(), 2);
    let ms: Vec<Vec<u32>> = bp.residual.iter().map(|q| q.terms.keys().next().unwrap().clone()).collect();
    for m in &ms {
        assert_eq!(m.iter().sum::<u32>(), 2);
        assert!(m.iter().all(|e| *e <= 1));
    }
    let shared: Vec<usize> = (0..3).filter(|&i| ms[0][i] == 1 && ms[1][i] == 1).collect();
    assert_eq!(shared.len(), 1);
}

#[test]
fn hexagon_reduced_components() {
    let p = corpus::polytope("hexagon").unwrap();
    let maxi = scheme::maximal_decompositions(&p);
    assert_eq!(maxi.len(), 2);
    let comps = scheme::reduced_components(&p);
    let dims: BTreeSet<usize> = comps.flats.iter().map(|f| f.downstairs_dim).collect();
    assert_eq!(dims, BTreeSet::from([1, 2]));
    let sizes: BTreeSet<usize> = maxi.iter().map(|d| d.summands.len()).collect();
    assert_eq!(sizes, BTreeSet::from([2, 3]));
}

#[test]
fn q4_summand_cone_and_triangles() {
    let p = corpus::polytope("q4").unwrap();
    let dirs: Vec<Vec<i64>> = p.edges.iter().map(|e| e.dir.clone()).collect();
    assert_eq!(dirs, vec![vec![1, 0], vec![1, 2], vec![-2, -1], vec![0, -1]]);
    let v = scheme::summand_space(&p);
    assert_eq!(v.dim(), 2);
    // (t, eps) coordinates: t_i = t + k_i eps with k = (0,-2,-1,-3)
    assert!(v.contains(&[1, 1, 1, 1]));
    assert!(v.contains(&[0, -2, -1, -3]));
    let c = scheme::summand_cone(&p);
    let rays: BTreeSet<Vec<i64>> = c.rays.iter().cloned().collect();
    // images of (0,-1) and (3,1)
    assert_eq!(rays, BTreeSet::from([vec![0, 2, 1, 3], vec![3, 1, 2, 0]]));
    let tri = |t: &[i64]| -> BTreeSet<Vec<i64>> { scheme::summand_polytope(&p, t).unwrap().into_iter().collect() };
    assert_eq!(tri(&[0, 2, 1, 3]), BTreeSet::from([vec![0, 0], vec![2, 4], vec![0, 3]]));
    assert_eq!(tri(&[3, 1, 2, 0]), BTreeSet::from([vec![0, 0], vec![3, 0], vec![4, 2]]));
    assert!(scheme::summand_polytope(&p, &[1, 0, 0, 0]).is_err());
}

#[test]
fn q4_fat_point() {
    let p = corpus::polytope("q4").unwrap();
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2)])).unwrap();
    assert_eq!(bp.residual, vec![mono(1, &[(1, 2)])]);
    // t2 = t - 2 eps, t3 = t - eps, t4 = t - 3 eps
    let k: Vec<_> = bp.param.iter().map(|r| r[0].clone()).collect();
    assert_eq!(k, vec![rat(0), rat(-2), rat(-1), rat(-3)]);
    let auto = scheme::base_presentation(&p, &CoordinateChoice::Auto).unwrap();
    assert_eq!(auto.coords, vec![(0, 2)]);
    assert_eq!(auto.residual, bp.residual);
    assert!(scheme::maximal_decompositions(&p).iter().all(|d| d.summands.len() == 1));
    assert!(scheme::reduced_components(&p).flats.iter().all(|f| f.downstairs_dim == 0));
}

#[test]
fn q5_line_with_embedded_structure() {
    let p = corpus::polytope("q5").unwrap();
    let dirs: Vec<Vec<i64>> = p.edges.iter().map(|e| e.dir.clone()).collect();
    assert_eq!(dirs, vec![vec![1, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]]);
    // s1 = t1 - t3, s2 = t1 - t2
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Differences(vec![(0, 2), (0, 1)])).unwrap();
    let expect = vec![mono(2, &[(1, 2)]), mono(2, &[(1, 1), (2, 1)])];
    assert_eq!(normalized_set(&bp.residual), normalized_set(&expect));
    // t4 = t + s1, t5 = t - s1 - s2
    assert_eq!(bp.param[3], vec![rat(1), rat(0)]);
    assert_eq!(bp.param[4], vec![rat(-1), rat(-1)]);
    let maxi = scheme::maximal_decompositions(&p);
    assert_eq!(maxi.len(), 1);
    let mut sizes: Vec<usize> = maxi[0].summands.iter().map(|s| s.iter().filter(|x| **x == 1).count()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 3]);
    let comps = scheme::reduced_components(&p);
    assert_eq!(comps.flats.len(), 1);
    assert_eq!(comps.flats[0].downstairs_dim, 1);
}

#[test]
fn q8_power_sums_and_components() {
    let p = corpus::polytope("q8").unwrap();
    let ideal = scheme::scheme_ideal(&p);
    assert_eq!(ideal.k0, vec![3]);
    let mut expect = vec![];
    for k in 1..=3 {
        expect.push(power_sum(8, k, &[(1, 1), (1, 2), (1, 8), (-1, 4), (-1, 5), (-1, 6)]));
        expect.push(power_sum(8, k, &[(1, 2), (1, 3), (1, 4), (-1, 6), (-1, 7), (-1, 8)]));
    }
    assert_eq!(normalized_set(&ideal.polys()), normalized_set(&expect));
    let comps = scheme::reduced_components(&p);
    let mut dims: Vec<usize> = comps.flats.iter().map(|f| f.downstairs_dim).collect();
    dims.sort();
    assert_eq!(dims, vec![2, 2, 3]);
    let mut counts: Vec<usize> = comps.flats.iter().map(|f| f.decomposition.summands.len()).collect();
    counts.sort();
    assert_eq!(counts, vec![3, 3, 4]);
    let big = comps.flats.iter().position(|f| f.downstairs_dim == 3).unwrap();
    for x in &comps.intersections {
        let expected = if x.0 == big || x.1 == big { 1 } else { 0 };
        assert_eq!(x.2, expected, "{:?}", x);
    }
    assert_eq!(comps.intersections.len(), 3);
    // the ambient space of the reduced base: dim V - 1 = 5
    assert_eq!(scheme::summand_space(&p).dim() - 1, 5);
}

#[test]
fn square_ideal_and_binomials() {
    let p = corpus::polytope("square").unwrap();
    let ideal = scheme::scheme_ideal(&p);
    let expect = vec![power_sum(4, 1, &[(1, 1), (-1, 3)]), power_sum(4, 1, &[(1, 2), (-1, 4)])];
    assert_eq!(normalized_set(&ideal.polys()), normalized_set(&expect));
    let tb = scheme::toric_binomials(&p);
    let basis: BTreeSet<Vec<i64>> = tb.basis.iter().map(|d| toric_versal::arith::primitive_signed(d)).collect();
    assert_eq!(basis, BTreeSet::from([vec![1, 0, -1, 0], vec![0, 1, 0, -1]]));
}

#[test]
fn triangle_is_rigid() {
    let p = corpus::polytope("triangle").unwrap();
    assert_eq!(scheme::summand_space(&p).dim(), 1);
    let bp = scheme::base_presentation(&p, &CoordinateChoice::Auto).unwrap();
    assert!(bp.coords.is_empty() && bp.residual.is_empty());
}

#[test]
fn cube_summands_are_three_segments() {
    let p = corpus::polytope("cube").unwrap();
    assert_eq!(scheme::summand_space(&p).dim(), 3);
    let maxi = scheme::maximal_decompositions(&p);
    assert_eq!(maxi.len(), 1);
    assert_eq!(maxi[0].summands.len(), 3);
    assert!(scheme::scheme_ideal(&p).k0.iter().all(|k| *k == 1));
}
