//! Graded T1, T2, the Kodaira-Spencer pairing and the obstruction space W on
//! the bundled polytopes.

use toric_versal::arith::{rat, Rat};
use toric_versal::cohomology;
use toric_versal::corpus;
use toric_versal::scheme;
use toric_versal::versal;

fn r_star(n: usize, k: i64) -> Vec<i64> {
    let mut r = vec![0; n + 1];
    r[n] = k;
    r
}

#[test]
fn relation_space_examples() {
    let l = cohomology::relation_space(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
    assert_eq!(l.len(), 1);
    let v = &l[0];
    assert_eq!(v[0], v[1]);
    assert_eq!(v[2], -v[0].clone());
    assert!(v[0] != Rat::from_integer(0.into()));
    assert!(cohomology::relation_space(&[]).is_empty());
    // the six boundary generators of the hexagon cone span Z^3
    let p = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    assert_eq!(cohomology::relation_space(&g.elements[..6]).len(), 3);
}

#[test]
fn t1_in_degree_minus_r_star() {
    for (name, expect) in [("hexagon", 3), ("q4", 1), ("q5", 2)] {
        let p = corpus::polytope(name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        assert_eq!(cohomology::t1_dimension(&p, &g, &r_star(p.ambient, 1)), expect, "{name}");
    }
}

#[test]
fn t1_is_the_tangent_space_of_the_base() {
    for e in corpus::entries() {
        let p = corpus::polytope(e.name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        let dim_v = scheme::summand_space(&p).dim();
        assert_eq!(cohomology::t1_dimension(&p, &g, &r_star(p.ambient, 1)), dim_v - 1, "{}", e.name);
    }
}

#[test]
fn t2_lower_bounds_and_smooth_case() {
    let q4 = corpus::polytope("q4").unwrap();
    let g = versal::gorenstein(&q4).unwrap();
    assert!(cohomology::t2_dimension(&q4, &g, &r_star(2, 2)) >= 1);
    let hex = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&hex).unwrap();
    assert!(cohomology::t2_dimension(&hex, &g, &r_star(2, 2)) >= 2);

    let tri = corpus::polytope("triangle").unwrap();
    let g = versal::gorenstein(&tri).unwrap();
    for a in -3..=3 {
        for b in -3..=3 {
            for h in -3..=4 {
                let r = vec![a, b, h];
                assert_eq!(cohomology::t1_dimension(&tri, &g, &r), 0, "{r:?}");
                assert_eq!(cohomology::t2_dimension(&tri, &g, &r), 0, "{r:?}");
            }
        }
    }
}

/// Hand reduction for Q4 in degree -2R*. With E = e1..e9 in the listed order,
/// the vertices (0,0), (1,0), (2,2), (0,1) see E_j = {e1,e2,e7,e8,e9},
/// {e1,e2,e3,e4,e8,e9}, {e2,..,e7,e9}, {e1,e5,e6,e7,e8,e9}, all spanning Z^3,
/// so dim L(E_j) = 2, 3, 4, 3. T1(-2R*) = 0 and the union is E, hence the
/// L(E_j) span L(E) (dim 6) and the kernel of the sum map has dim 12 - 6 = 6.
/// Each of the four edges meets in four generators of rank 3 (e.g.
/// e1 + e7 = e8 + e9), giving four independent edge relations. T2 = 6 - 4 = 2.
#[test]
fn q4_second_order_dimensions() {
    let p = corpus::polytope("q4").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    assert_eq!(cohomology::t1_dimension(&p, &g, &r_star(2, 2)), 0);
    assert_eq!(cohomology::t2_dimension(&p, &g, &r_star(2, 2)), 2);
    assert_eq!(cohomology::t2_dimension(&p, &g, &r_star(2, 3)), 0);
}

#[test]
fn kodaira_spencer_pairing() {
    for e in corpus::entries() {
        let p = corpus::polytope(e.name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        let ks = cohomology::kodaira_spencer(&p, &g);
        assert!(ks.kills_diagonal, "{}", e.name);
        assert!(ks.kills_vertex_relations, "{}", e.name);
        assert!(ks.right_kernel_is_vertex_relations, "{}", e.name);
        assert_eq!(ks.rank, cohomology::t1_dimension(&p, &g, &r_star(p.ambient, 1)), "{}", e.name);
    }
    let p = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    assert_eq!(cohomology::kodaira_spencer(&p, &g).rank, 3);
}

#[test]
fn pairing_matrix_entries() {
    // Phi((1,..,1), q) = sum_v q_v eta0(c^v) = 0 for every relation q
    let p = corpus::polytope("q4").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let ks = cohomology::kodaira_spencer(&p, &g);
    let ones = vec![1i64; p.num_edges()];
    for q in &ks.relations {
        assert_eq!(cohomology::pairing(&p, &g, &ones, q), rat(0));
    }
}

#[test]
fn obstruction_space_dimensions() {
    let cases: [(&str, Vec<(u32, usize)>); 3] =
        [("q4", vec![(2, 1), (3, 0)]), ("hexagon", vec![(2, 2), (3, 0)]), ("q8", vec![(2, 2), (3, 2), (4, 0)])];
    for (name, expect) in cases {
        let p = corpus::polytope(name).unwrap();
        assert_eq!(cohomology::w_dimensions(&p), expect, "{name}");
    }
}

#[test]
fn obstructions_inject_into_t2() {
    for e in corpus::entries() {
        let p = corpus::polytope(e.name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        let k0 = scheme::scheme_ideal(&p).max_k0();
        for (k, w) in cohomology::w_dimensions(&p) {
            let t2 = cohomology::t2_dimension(&p, &g, &r_star(p.ambient, k as i64));
            assert!(w <= t2, "{}: W_{k} = {w} > T2 = {t2}", e.name);
            if k > k0 {
                assert_eq!(w, 0, "{}", e.name);
            }
        }
    }
}

#[test]
fn face_cross_check() {
    let p = corpus::polytope("hexagon").unwrap();
    let g = versal::gorenstein(&p).unwrap();
    let top = cohomology::face_t1_crosscheck(&p, &g, &r_star(2, 1)).unwrap();
    assert_eq!(top.face.len(), 6);
    assert_eq!(top.raw, 4);
    assert_eq!(top.computed, 3);
    // <a, R> = 1 exactly on the edge from (0,0) to (1,0)
    let edge = cohomology::face_t1_crosscheck(&p, &g, &[0, -1, 1]).unwrap();
    assert_eq!(edge.face.len(), 2);
    assert_eq!(edge.raw, 1);
    assert_eq!(edge.computed, 0);
    // only the base vertex reaches 1
    let vertex = cohomology::face_t1_crosscheck(&p, &g, &[-1, -1, 1]).unwrap();
    assert_eq!(vertex.face.len(), 1);
    assert_eq!((vertex.raw, vertex.computed), (0, 0));
    for name in ["hexagon", "q4", "q5", "q8", "square", "triangle"] {
        let p = corpus::polytope(name).unwrap();
        let g = versal::gorenstein(&p).unwrap();
        for r in cohomology::low_degrees(&p, 2) {
            let c = cohomology::face_t1_crosscheck(&p, &g, &r).unwrap();
            assert_eq!(c.computed, c.raw.saturating_sub(1), "{name} {r:?}");
        }
    }
}
