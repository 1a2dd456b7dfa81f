//! Lattice polytopes: hull, face lattice, oriented edges, 2-face sign vectors,
//! support data, edge paths and strip bounds.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::{self, rat_vec, Rat};
use crate::cone::Cone;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// `head - tail`, primitive.
    pub dir: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFace {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// One entry per edge of the polytope, zero off the face.
    pub signs: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    pub name: Option<String>,
    pub ambient: usize,
    pub dim: usize,
    /// Input coordinates are `vertex + shift`.
    pub shift: Vec<i64>,
    /// Translated vertices; the base vertex sits at the origin.
    pub vertices: Vec<Vec<i64>>,
    pub base: usize,
    pub edges: Vec<Edge>,
    pub two_faces: Vec<TwoFace>,
    /// Vertex index sets of the facets.
    pub facets: Vec<Vec<usize>>,
}

fn colex_key(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

fn cross(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Validate and canonicalize a point set into a lattice polytope with
/// primitive edges.
///
/// Edge labels: for polygons in the plane the edges run anticlockwise starting
/// at the base vertex, which is the vertex with smallest last coordinate (ties
/// broken on the earlier coordinates). In every other case edges are oriented
/// from the lexicographically smaller endpoint and sorted lexicographically.
pub fn validate_polytope(name: Option<String>, points: &[Vec<i64>]) -> Result<LatticePolytope> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::DegenerateInput("zero-dimensional ambient space".into()));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DegenerateInput("points of differing dimension".into()));
    }
    if points.iter().flatten().any(|x| x.abs() > 1 << 20) {
        return Err(Error::DegenerateInput("coordinates too large".into()));
    }
    let homog: Vec<Vec<i64>> = points.iter().map(|p| [p.clone(), vec![1]].concat()).collect();
    let hull = Cone::from_generators(&homog, n + 1);
    let dim = hull.dim() - 1;
    if dim == 0 {
        return Err(Error::DegenerateInput("a single point".into()));
    }
    let raw: Vec<Vec<i64>> = hull.rays.iter().map(|r| r[..n].to_vec()).collect();
    let raw_facets: Vec<BTreeSet<usize>> = hull.incidence().into_iter().map(|f| f.into_iter().collect()).collect();

    // face lattice by closure under intersection
    let all: BTreeSet<usize> = (0..raw.len()).collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    faces.insert(all.clone());
    let mut queue: VecDeque<BTreeSet<usize>> = raw_facets.iter().cloned().collect();
    while let Some(f) = queue.pop_front() {
        if f.is_empty() || !faces.insert(f.clone()) {
            continue;
        }
        for g in &raw_facets {
            let h: BTreeSet<usize> = f.intersection(g).copied().collect();
            if !h.is_empty() && !faces.contains(&h) {
                queue.push_back(h);
            }
        }
    }
    let face_dim = |f: &BTreeSet<usize>| -> usize {
        let rows: Vec<Vec<i64>> = f.iter().map(|&i| homog_of(&raw[i])).collect();
        arith::rank_i64(&rows) - 1
    };
    let raw_edges: Vec<(usize, usize)> = faces
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| {
            let v: Vec<usize> = f.iter().copied().collect();
            (v[0], v[1])
        })
        .collect();
    for &(a, b) in &raw_edges {
        let d = arith::sub(&raw[b], &raw[a]);
        let g = arith::gcd_slice(&d);
        if g != 1 {
            return Err(Error::NonPrimitiveEdge { tail: raw[a].clone(), head: raw[b].clone(), length: g });
        }
    }
    let base_raw = (0..raw.len()).min_by_key(|&i| colex_key(&raw[i])).unwrap();

    // vertex order and oriented edges
    let planar = n == 2 && dim == 2;
    let order: Vec<usize>;
    let mut oriented: Vec<(usize, usize)>; // in raw indices
    if planar {
        let nbrs = |v: usize| -> Vec<usize> {
            raw_edges
                .iter()
                .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                .collect()
        };
        let nb = nbrs(base_raw);
        let (p, q) = (nb[0], nb[1]);
        let next = if cross(&arith::sub(&raw[p], &raw[base_raw]), &arith::sub(&raw[q], &raw[base_raw])) > 0 {
            p
        } else {
            q
        };
        let mut cyc = vec![base_raw, next];
        while cyc.len() < raw.len() {
            let cur = *cyc.last().unwrap();
            let prev = cyc[cyc.len() - 2];
            let nxt = nbrs(cur).into_iter().find(|&x| x != prev).unwrap();
            cyc.push(nxt);
        }
        oriented = (0..cyc.len()).map(|i| (cyc[i], cyc[(i + 1) % cyc.len()])).collect();
        order = cyc;
    } else {
        let mut o: Vec<usize> = (0..raw.len()).collect();
        o.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        order = o;
        oriented = raw_edges
            .iter()
            .map(|&(a, b)| if raw[a] <= raw[b] { (a, b) } else { (b, a) })
            .collect();
        oriented.sort_by(|x, y| (&raw[x.0], &raw[x.1]).cmp(&(&raw[y.0], &raw[y.1])));
    }
    let mut pos = vec![0; raw.len()];
    for (i, &r) in order.iter().enumerate() {
        pos[r] = i;
    }
    let shift = raw[base_raw].clone();
    let vertices: Vec<Vec<i64>> = order.iter().map(|&r| arith::sub(&raw[r], &shift)).collect();
    let edges: Vec<Edge> = oriented
        .iter()
        .map(|&(a, b)| Edge { tail: pos[a], head: pos[b], dir: arith::sub(&raw[b], &raw[a]) })
        .collect();
    let nedges = edges.len();

    // 2-faces with their boundary cycles
    let mut two_faces = vec![];
    for f in faces.iter().filter(|f| face_dim(f) == 2) {
        let vs: BTreeSet<usize> = f.iter().map(|&r| pos[r]).collect();
        let es: Vec<usize> = (0..nedges)
            .filter(|&e| vs.contains(&edges[e].tail) && vs.contains(&edges[e].head))
            .collect();
        let mut signs = vec![0i64; nedges];
        let e0 = es[0];
        signs[e0] = 1;
        let mut cur = edges[e0].head;
        let mut last = e0;
        while cur != edges[e0].tail {
            let e = *es
                .iter()
                .find(|&&e| e != last && (edges[e].tail == cur || edges[e].head == cur))
                .expect("2-face boundary is a cycle");
            if edges[e].tail == cur {
                signs[e] = 1;
                cur = edges[e].head;
            } else {
                signs[e] = -1;
                cur = edges[e].tail;
            }
            last = e;
        }
        two_faces.push(TwoFace { vertices: vs.into_iter().collect(), edges: es, signs });
    }
    two_faces.sort_by(|a, b| a.edges.cmp(&b.edges));
    let facets: Vec<Vec<usize>> = {
        let mut fs: Vec<Vec<usize>> = raw_facets
            .iter()
            .map(|f| {
                let mut v: Vec<usize> = f.iter().map(|&r| pos[r]).collect();
                v.sort();
                v
            })
            .collect();
        fs.sort();
        fs
    };
    let p = LatticePolytope { name, ambient: n, dim, shift, vertices, base: 0, edges, two_faces, facets };
    let base = p.vertices.iter().position(|v| v.iter().all(|x| *x == 0)).unwrap();
    let p = LatticePolytope { base, ..p };
    for f in &p.two_faces {
        let s = p.signed_edge_sum(&f.signs);
        assert!(s.iter().all(|x| *x == 0), "2-face signs do not close up");
    }
    Ok(p)
}

fn homog_of(v: &[i64]) -> Vec<i64> {
    [v.to_vec(), vec![1]].concat()
}

impl LatticePolytope {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in the input coordinates.
    pub fn input_vertices(&self) -> Vec<Vec<i64>> {
        self.vertices.iter().map(|v| arith::add(v, &self.shift)).collect()
    }

    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    /// `sum_i w_i d^i`
    pub fn signed_edge_sum(&self, w: &[i64]) -> Vec<i64> {
        let mut s = vec![0i64; self.ambient];
        for (e, &c) in self.edges.iter().zip(w) {
            for (x, d) in s.iter_mut().zip(&e.dir) {
                *x += c * d;
            }
        }
        s
    }

    /// Neighbours of a vertex with the connecting edge, in lex order of the
    /// neighbour's coordinates.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                if e.tail == v {
                    Some((e.head, i))
                } else if e.head == v {
                    Some((e.tail, i))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by(|a, b| self.vertices[a.0].cmp(&self.vertices[b.0]));
        out
    }

    /// Minimizing vertex of `<., c>` (lexicographically smallest on ties, the
    /// base vertex for `c = 0`) and `eta0(c) = max_Q <., -c>`.
    pub fn support_datum(&self, c: &[i64]) -> (usize, i64) {
        if c.iter().all(|x| *x == 0) {
            return (self.base, 0);
        }
        let (idx, val) = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (i, arith::dot(v, c)))
            .min_by(|a, b| a.1.cmp(&b.1).then_with(|| self.vertices[a.0].cmp(&self.vertices[b.0])))
            .unwrap();
        (idx, -val)
    }

    /// Edge-coefficient vector of a shortest path in the vertex graph, found by
    /// breadth-first search with neighbours taken in lex order. With `monotone`
    /// only steps that do not increase `<., c>` are allowed.
    pub fn edge_path(&self, from: usize, to: usize, monotone: Option<&[i64]>) -> Vec<i64> {
        let nv = self.vertices.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut seen = vec![false; nv];
        seen[from] = true;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            if u == to {
                break;
            }
            for (w, e) in self.neighbours(u) {
                if seen[w] {
                    continue;
                }
                if let Some(c) = monotone {
                    if arith::dot(&self.vertices[w], c) > arith::dot(&self.vertices[u], c) {
                        continue;
                    }
                }
                seen[w] = true;
                prev[w] = Some((u, e));
                q.push_back(w);
            }
        }
        assert!(seen[to], "no admissible edge path between vertices");
        let mut lam = vec![0i64; self.edges.len()];
        let mut cur = to;
        while cur != from {
            let (u, e) = prev[cur].unwrap();
            lam[e] += if self.edges[e].tail == u { 1 } else { -1 };
            cur = u;
        }
        lam
    }

    /// Path from the base vertex.
    pub fn path_from_base(&self, to: usize, monotone: Option<&[i64]>) -> Vec<i64> {
        self.edge_path(self.base, to, monotone)
    }

    /// Lattice basis of the direction lattice of a 2-face and the face's
    /// vertices in those coordinates.
    pub fn face_lattice_coords(&self, face: &TwoFace) -> Vec<Vec<i64>> {
        let v0 = &self.vertices[face.vertices[0]];
        let diffs: Vec<Vec<i64>> = face.vertices.iter().map(|&v| arith::sub(&self.vertices[v], v0)).collect();
        let basis = arith::saturation(&diffs, self.ambient);
        let b: Vec<Vec<Rat>> = basis.iter().map(|v| rat_vec(v)).collect();
        diffs
            .iter()
            .map(|d| {
                let y = arith::solve_left(&b, &rat_vec(d)).expect("vertex in face span");
                y.iter().map(|x| arith::to_i64(&x.to_integer())).collect()
            })
            .collect()
    }

    /// Smallest `k` such that the 2-face lies in two lattice strips of
    /// thickness at most `k` with independent directions.
    pub fn strip_bound(&self, face: usize) -> u32 {
        let pts = self.face_lattice_coords(&self.two_faces[face]);
        strip_bound_2d(&pts)
    }
}

/// Vertices of the convex hull of a finite point set, sorted lexicographically.
pub fn convex_hull_vertices(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = points[0].len();
    let homog: Vec<Vec<i64>> = points.iter().map(|p| homog_of(p)).collect();
    let c = Cone::from_generators(&homog, n + 1);
    let mut v: Vec<Vec<i64>> = c.rays.iter().map(|r| r[..n].to_vec()).collect();
    v.sort();
    v
}

/// Widths of a planar point set in all primitive directions up to sign with
/// sup-norm bounded by the coordinate spread, sorted by width.
pub fn lattice_widths(pts: &[Vec<i64>]) -> Vec<(i64, Vec<i64>)> {
    let spread = (0..2)
        .map(|j| {
            let xs: Vec<i64> = pts.iter().map(|p| p[j]).collect();
            xs.iter().max().unwrap() - xs.iter().min().unwrap()
        })
        .max()
        .unwrap()
        .max(1);
    let mut out = vec![];
    for a in -spread..=spread {
        for b in -spread..=spread {
            let c = vec![a, b];
            if (a, b) == (0, 0) || arith::gcd_slice(&c) != 1 || arith::primitive_signed(&c) != c {
                continue;
            }
            let vals: Vec<i64> = pts.iter().map(|p| arith::dot(p, &c)).collect();
            out.push((vals.iter().max().unwrap() - vals.iter().min().unwrap(), c));
        }
    }
    out.sort();
    out
}

pub fn strip_bound_2d(pts: &[Vec<i64>]) -> u32 {
    let w = lattice_widths(pts);
    let first = &w[0].1;
    let second = w.iter().find(|(_, c)| cross(first, c) != 0).expect("two independent directions");
    second.0 as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> LatticePolytope {
        validate_polytope(None, &[vec![0, 0], vec![1, 0], vec![2, 1], vec![2, 2], vec![1, 2], vec![0, 1]]).unwrap()
    }

    #[test]
    fn hexagon_edges_run_anticlockwise_from_origin() {
        let p = hexagon();
        let dirs: Vec<Vec<i64>> = p.edges.iter().map(|e| e.dir.clone()).collect();
        assert_eq!(dirs, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]]);
        assert_eq!(p.two_faces.len(), 1);
        assert_eq!(p.two_faces[0].signs, vec![1; 6]);
    }

    #[test]
    fn square_and_interior_points() {
        let p = validate_polytope(None, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 0]]).unwrap();
        let dirs: Vec<Vec<i64>> = p.edges.iter().map(|e| e.dir.clone()).collect();
        assert_eq!(dirs, vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn non_primitive_edge_rejected() {
        let r = validate_polytope(None, &[vec![0, 0], vec![2, 0], vec![0, 1]]);
        assert!(matches!(r, Err(Error::NonPrimitiveEdge { length: 2, .. })));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(validate_polytope(None, &[]), Err(Error::DegenerateInput(_))));
        assert!(matches!(validate_polytope(None, &[vec![1, 1]]), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn cube_face_lattice() {
        let mut pts = vec![];
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let p = validate_polytope(None, &pts).unwrap();
        assert_eq!(p.dim, 3);
        assert_eq!(p.edges.len(), 12);
        assert_eq!(p.two_faces.len(), 6);
        assert_eq!(p.facets.len(), 6);
        for f in &p.two_faces {
            assert_eq!(f.edges.len(), 4);
            assert_eq!(p.strip_bound(p.two_faces.iter().position(|g| g == f).unwrap()), 1);
        }
    }

    #[test]
    fn support_data_on_hexagon() {
        let p = hexagon();
        assert_eq!(p.support_datum(&[0, 1]), (0, 0));
        let (a, eta0) = p.support_datum(&[-1, 1]);
        assert_eq!(eta0, 1);
        // both (1,0) and (2,1) minimize; the lexicographically smaller one is chosen
        assert_eq!(p.vertices[a], vec![1, 0]);
        assert_eq!(p.support_datum(&[-1, 0]).1, 2);
    }

    #[test]
    fn paths() {
        let p = hexagon();
        let v = p.vertex_index(&[2, 1]).unwrap();
        assert_eq!(p.path_from_base(v, None), vec![1, 1, 0, 0, 0, 0]);
        let w = p.vertex_index(&[2, 2]).unwrap();
        let lam = p.path_from_base(w, None);
        assert_eq!(p.signed_edge_sum(&lam), vec![2, 2]);
    }

    #[test]
    fn strip_bounds() {
        assert_eq!(hexagon().strip_bound(0), 2);
        let sq = validate_polytope(None, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(sq.strip_bound(0), 1);
    }

    #[test]
    fn segment_is_one_dimensional() {
        let p = validate_polytope(None, &[vec![3, 1], vec![4, 1]]).unwrap();
        assert_eq!(p.dim, 1);
        assert_eq!(p.edges.len(), 1);
        assert!(p.two_faces.is_empty());
    }
}
