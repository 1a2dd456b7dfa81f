//! The bundled example polytopes.

use crate::error::{Error, Result};
use crate::polytope::{validate_polytope, LatticePolytope};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub vertices: Vec<Vec<i64>>,
}

pub fn entries() -> Vec<CorpusEntry> {
    let e = |name, v: &[&[i64]]| CorpusEntry { name, vertices: v.iter().map(|x| x.to_vec()).collect() };
    vec![
        e("hexagon", &[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]),
        e("q4", &[&[0, 0], &[1, 0], &[2, 2], &[0, 1]]),
        e("q5", &[&[2, 1], &[3, 2], &[2, 3], &[1, 3], &[1, 2]]),
        e("q8", &[&[1, 3], &[2, 4], &[3, 4], &[4, 3], &[4, 2], &[3, 1], &[2, 1], &[1, 2]]),
        e("square", &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]),
        e("triangle", &[&[0, 0], &[1, 0], &[0, 1]]),
        e(
            "cube",
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]],
        ),
    ]
}

pub fn polytope(name: &str) -> Result<LatticePolytope> {
    let e = entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::DegenerateInput(format!("unknown corpus polytope {name}")))?;
    validate_polytope(Some(e.name.to_string()), &e.vertices)
}
