//! Combinatorial triangulations as rotation systems.
//!
//! A triangulation is stored as, for every vertex, the CCW cyclic order of
//! its neighbors, plus a designated outer face listed CCW (interior on the
//! left). Faces are traced with the interior on the left: the dart `u -> v`
//! is followed by `v -> w` where `w` precedes `u` in the rotation at `v`.

mod build;
mod enumerate;

pub use build::{
    build_k_nested_double_chain, build_k_nested_regular, double_chain_layers, DoubleChainLayer,
};
pub use enumerate::{enumerate_comb_triangulations, tutte_count, MAX_ENUMERATED_INTERIOR};

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A labeled planar triangulation with a distinguished outer face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComb")]
pub struct CombTriangulation {
    num_vertices: usize,
    outer_face: Vec<usize>,
    rotations: Vec<Vec<usize>>,
    #[serde(skip)]
    faces: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
struct RawComb {
    num_vertices: usize,
    outer_face: Vec<usize>,
    rotations: Vec<Vec<usize>>,
}

impl TryFrom<RawComb> for CombTriangulation {
    type Error = Error;

    fn try_from(raw: RawComb) -> Result<Self> {
        CombTriangulation::from_rotations(raw.num_vertices, raw.outer_face, raw.rotations)
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidTriangulation(msg.into()))
}

impl CombTriangulation {
    /// Validate a rotation system. The error names the first violated
    /// invariant.
    pub fn from_rotations(
        num_vertices: usize,
        outer_face: Vec<usize>,
        rotations: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = num_vertices;
        if n < 3 {
            return invalid(format!("{n} vertices"));
        }
        if rotations.len() != n {
            return invalid(format!("{} rotations for {n} vertices", rotations.len()));
        }
        if outer_face.len() < 3 {
            return invalid("outer face has fewer than 3 vertices");
        }
        let mut seen = vec![false; n];
        for &v in &outer_face {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return invalid(format!("bad outer face vertex {v}"));
            }
        }

        // Position of each neighbor within each rotation, for O(1) lookups.
        let mut pos: Vec<HashMap<usize, usize>> = Vec::with_capacity(n);
        for (u, rot) in rotations.iter().enumerate() {
            if rot.len() < 2 {
                return invalid(format!("vertex {u} has degree {}", rot.len()));
            }
            let mut m = HashMap::with_capacity(rot.len());
            for (i, &v) in rot.iter().enumerate() {
                if v >= n {
                    return invalid(format!("vertex {u} lists unknown neighbor {v}"));
                }
                if v == u {
                    return invalid(format!("loop at vertex {u}"));
                }
                if m.insert(v, i).is_some() {
                    return invalid(format!("multi-edge {u}-{v}"));
                }
            }
            pos.push(m);
        }
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if !pos[v].contains_key(&u) {
                    return invalid(format!("dart {u}->{v} has no reciprocal {v}->{u}"));
                }
            }
        }

        // Face tracing.
        let next_dart = |u: usize, v: usize| -> usize {
            let rot = &rotations[v];
            let i = pos[v][&u];
            rot[(i + rot.len() - 1) % rot.len()]
        };
        let mut visited: Vec<Vec<bool>> = rotations.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            for i in 0..rotations[u].len() {
                if visited[u][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, rotations[u][i]);
                loop {
                    let slot = pos[a][&b];
                    if visited[a][slot] {
                        break;
                    }
                    visited[a][slot] = true;
                    face.push(a);
                    let c = next_dart(a, b);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }

        // The outer face is traced clockwise: h0, h_{m-1}, ..., h1.
        let m = outer_face.len();
        let mut expected: Vec<usize> = Vec::with_capacity(m);
        expected.push(outer_face[0]);
        expected.extend(outer_face[1..].iter().rev());
        let mut outer_found = false;
        let mut triangles = Vec::with_capacity(faces.len());
        for face in &faces {
            if !outer_found && same_cycle(face, &expected) {
                outer_found = true;
                continue;
            }
            if face.len() != 3 {
                return invalid(format!("non-triangular internal face {face:?}"));
            }
            if face[0] == face[1] || face[1] == face[2] || face[0] == face[2] {
                return invalid(format!("degenerate face {face:?}"));
            }
            triangles.push([face[0], face[1], face[2]]);
        }
        if !outer_found {
            return invalid(format!(
                "outer face {outer_face:?} is not a face of the rotation system"
            ));
        }

        let edges: usize = rotations.iter().map(Vec::len).sum::<usize>() / 2;
        if n as i64 - edges as i64 + faces.len() as i64 != 2 {
            return invalid(format!(
                "Euler check failed: V={n} E={edges} F={}",
                faces.len()
            ));
        }
        // Euler with a non-planar or disconnected system can still balance by
        // accident only if components compensate; rule that out directly.
        if !connected(&rotations) {
            return invalid("graph is disconnected");
        }

        Ok(CombTriangulation {
            num_vertices: n,
            outer_face,
            rotations,
            faces: triangles,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.outer_face
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.num_vertices)
            .flat_map(|u| {
                self.rotations[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotations[u].contains(&v)
    }

    /// Internal faces, each listed CCW. There are `2v - 2 - h` of them.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn is_outer(&self, v: usize) -> bool {
        self.outer_face.contains(&v)
    }

    /// Deterministic serialization seeded at the dart
    /// `outer_face[0] -> outer_face[1]`. Vertices are renamed in breadth-first
    /// discovery order; each vertex then contributes its degree and its
    /// rotation (renamed) starting from the neighbor it was discovered from.
    ///
    /// For triangulations whose outer faces are aligned position by
    /// position, equal codes means an orientation-preserving isomorphism
    /// that fixes the outer face pointwise.
    pub fn canonical_code(&self) -> Vec<u8> {
        let n = self.num_vertices;
        const UNSEEN: usize = usize::MAX;
        let mut name = vec![UNSEEN; n];
        let mut parent = vec![UNSEEN; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();

        let root = self.outer_face[0];
        name[root] = 0;
        parent[root] = self.outer_face[1];
        queue.push_back(root);
        let mut code = Vec::with_capacity(4 * (2 + n + 2 * self.edge_count()));
        let push = |code: &mut Vec<u8>, x: usize| code.extend_from_slice(&(x as u32).to_le_bytes());
        push(&mut code, n);
        push(&mut code, self.outer_face.len());

        let mut body: Vec<usize> = Vec::with_capacity(n + 2 * self.edge_count());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let rot = &self.rotations[v];
            let start = rot
                .iter()
                .position(|&w| w == parent[v])
                .expect("parent is a neighbor");
            body.push(rot.len());
            for k in 0..rot.len() {
                let w = rot[(start + k) % rot.len()];
                if name[w] == UNSEEN {
                    name[w] = order.len() + queue.len();
                    parent[w] = v;
                    queue.push_back(w);
                }
                body.push(name[w]);
            }
        }
        debug_assert_eq!(order.len(), n);
        for x in body {
            push(&mut code, x);
        }
        code
    }

    /// Apply a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.num_vertices;
        if perm.len() != n {
            return Err(Error::Mismatch(format!(
                "permutation of length {} for {n} vertices",
                perm.len()
            )));
        }
        let mut rotations = vec![Vec::new(); n];
        for v in 0..n {
            rotations[perm[v]] = self.rotations[v].iter().map(|&w| perm[w]).collect();
        }
        let outer = self.outer_face.iter().map(|&v| perm[v]).collect();
        CombTriangulation::from_rotations(n, outer, rotations)
    }

    /// Build from a list of triangles in any orientation plus the CCW outer
    /// cycle. Orientation is propagated from the outer face.
    pub fn from_faces(
        num_vertices: usize,
        outer_ccw: &[usize],
        triangles: &[[usize; 3]],
    ) -> Result<Self> {
        build::from_faces(num_vertices, outer_ccw, triangles)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triangulation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parse and validate the JSON rotation-system document.
pub fn from_rotation_json(doc: &str) -> Result<CombTriangulation> {
    CombTriangulation::from_json(doc)
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(shift) = a.iter().position(|&x| x == b[0]) else {
        return false;
    };
    (0..a.len()).all(|i| a[(shift + i) % a.len()] == b[i])
}

fn connected(rotations: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; rotations.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &rotations[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == rotations.len()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// K4 drawn with 3 in the middle of the triangle 0, 1, 2.
    pub(crate) fn k4() -> CombTriangulation {
        let rotations = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        CombTriangulation::from_rotations(4, vec![0, 1, 2], rotations).unwrap()
    }

    /// The three triangulations on five vertices, 0-based.
    pub(crate) fn five_vertex_triangulations() -> [CombTriangulation; 3] {
        let outer = [0, 1, 2];
        let first = [[0, 1, 3], [0, 3, 4], [1, 4, 3], [1, 2, 4], [0, 4, 2]];
        let second = [[0, 1, 3], [0, 3, 4], [1, 2, 3], [2, 4, 3], [0, 4, 2]];
        let third = [[0, 1, 3], [0, 3, 2], [1, 4, 3], [1, 2, 4], [2, 3, 4]];
        [first, second, third].map(|f| CombTriangulation::from_faces(5, &outer, &f).unwrap())
    }

    #[test]
    fn k4_is_valid() {
        let t = k4();
        assert_eq!(t.faces().len(), 3);
        assert_eq!(t.edge_count(), 6);
    }

    #[test]
    fn k4_json_round_trip() {
        let t = k4();
        let json = t.to_json();
        assert_eq!(
            json,
            r#"{"num_vertices":4,"outer_face":[0,1,2],"rotations":[[1,3,2],[2,3,0],[0,3,1],[0,1,2]]}"#
        );
        assert_eq!(from_rotation_json(&json).unwrap(), t);
    }

    #[test]
    fn missing_reciprocal_dart_rejected() {
        let doc = r#"{"num_vertices":4,"outer_face":[0,1,2],"rotations":[[1,3,2],[2,3,0],[0,1],[0,1,2]]}"#;
        let err = from_rotation_json(doc).unwrap_err();
        assert!(err.to_string().contains("reciprocal"), "{err}");
    }

    #[test]
    fn malformed_documents_rejected() {
        // wrong cyclic order at vertex 3 makes non-triangular faces
        let doc = r#"{"num_vertices":4,"outer_face":[0,1,2],"rotations":[[1,3,2],[2,3,0],[0,3,1],[0,2,1]]}"#;
        assert!(from_rotation_json(doc).is_err());
        let doc = r#"{"num_vertices":4,"outer_face":[0,1,2],"rotations":[[1,3,2],[2,3,0,0],[0,3,1],[0,1,2]]}"#;
        assert!(from_rotation_json(doc)
            .unwrap_err()
            .to_string()
            .contains("multi-edge"));
        // outer face given clockwise
        let doc = r#"{"num_vertices":4,"outer_face":[0,2,1],"rotations":[[1,3,2],[2,3,0],[0,3,1],[0,1,2]]}"#;
        assert!(from_rotation_json(doc).is_err());
        assert!(from_rotation_json(r#"{"num_vertices":4}"#).is_err());
    }

    #[test]
    fn faces_examples() {
        assert_eq!(k4().faces().len(), 3);
        let k3 = CombTriangulation::from_rotations(
            3,
            vec![0, 1, 2],
            vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(k3.faces().len(), 1);
        let t = build_k_nested_double_chain(1).unwrap();
        assert_eq!(t.faces().len(), 2 * 12 - 2 - 4);
    }

    #[test]
    fn five_vertex_triangulations_are_distinct() {
        let [a, b, c] = five_vertex_triangulations();
        assert_eq!(a.canonical_code(), a.canonical_code());
        assert_ne!(a.canonical_code(), c.canonical_code());
        assert_ne!(a.canonical_code(), b.canonical_code());
        assert_ne!(b.canonical_code(), c.canonical_code());
    }

    #[test]
    fn code_sees_outer_rotation() {
        // rotating which outer vertex comes first changes the rooting
        let t = five_vertex_triangulations()[0].clone();
        let rotated =
            CombTriangulation::from_rotations(5, vec![1, 2, 0], t.rotations().to_vec()).unwrap();
        assert_ne!(t.canonical_code(), rotated.canonical_code());
    }

    fn interior_permutation(n: usize, outer: &[usize], seed: u64) -> Vec<usize> {
        let interior: Vec<usize> = (0..n).filter(|v| !outer.contains(v)).collect();
        let mut shuffled = interior.clone();
        let mut s = seed | 1;
        for i in (1..shuffled.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for (a, b) in interior.iter().zip(&shuffled) {
            perm[*a] = *b;
        }
        perm
    }

    proptest! {
        #[test]
        fn code_invariant_under_interior_relabeling(k in 1usize..3, n in 3usize..16, seed in any::<u64>()) {
            for t in [build_k_nested_double_chain(k).unwrap(), build_k_nested_regular(n).unwrap()] {
                let perm = interior_permutation(t.num_vertices(), t.outer_face(), seed);
                let r = t.relabel(&perm).unwrap();
                prop_assert_eq!(r.canonical_code(), t.canonical_code());
                prop_assert_eq!(r.edge_count(), 3 * r.num_vertices() - 3 - r.outer_face().len());
            }
        }
    }
}
