use std::collections::HashMap;

use super::CombTriangulation;
use crate::error::{Error, Result};

pub(super) fn from_faces(
    n: usize,
    outer_ccw: &[usize],
    triangles: &[[usize; 3]],
) -> Result<CombTriangulation> {
    // Undirected edge -> incident triangles.
    let mut incident: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for (f, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            incident
                .entry(key(t[k], t[(k + 1) % 3]))
                .or_default()
                .push(f);
        }
    }

    // Orient faces by propagation: a face sharing an edge with an oriented
    // neighbor traverses that edge in the opposite direction.
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; triangles.len()];
    let mut stack: Vec<usize> = Vec::new();
    let m = outer_ccw.len();
    for i in 0..m {
        let (a, b) = (outer_ccw[i], outer_ccw[(i + 1) % m]);
        let Some(fs) = incident.get(&key(a, b)) else {
            return Err(Error::InvalidTriangulation(format!(
                "outer edge {a}-{b} has no face"
            )));
        };
        let f = fs[0];
        let want = orient_along(triangles[f], a, b);
        match oriented[f] {
            Some(o) if o != want => {
                return Err(Error::InvalidTriangulation(format!(
                    "face {:?} oriented both ways",
                    triangles[f]
                )))
            }
            Some(_) => {}
            None => {
                oriented[f] = Some(want);
                stack.push(f);
            }
        }
    }
    while let Some(f) = stack.pop() {
        let t = oriented[f].expect("oriented before push");
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            for &g in &incident[&key(a, b)] {
                if g == f {
                    continue;
                }
                let want = orient_along(triangles[g], b, a);
                match oriented[g] {
                    Some(o) if o != want => {
                        return Err(Error::InvalidTriangulation(format!(
                            "face {:?} cannot be oriented consistently",
                            triangles[g]
                        )))
                    }
                    Some(_) => {}
                    None => {
                        oriented[g] = Some(want);
                        stack.push(g);
                    }
                }
            }
        }
    }

    // next_a(b) = c for every face traversed (.., b, a, c, ..) ... i.e. for
    // a face cycle f with interior on the left, at f_j: next(f_{j+1}) = f_{j-1}.
    let mut next: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    let mut add_cycle = |cycle: &[usize]| -> Result<()> {
        let len = cycle.len();
        for j in 0..len {
            let v = cycle[j];
            let after = cycle[(j + 1) % len];
            let before = cycle[(j + len - 1) % len];
            if v >= n || next[v].insert(after, before).is_some() {
                return Err(Error::InvalidTriangulation(format!(
                    "vertex {v} is not a disk around its faces"
                )));
            }
        }
        Ok(())
    };
    for (f, o) in oriented.iter().enumerate() {
        let Some(t) = o else {
            return Err(Error::InvalidTriangulation(format!(
                "face {:?} is unreachable",
                triangles[f]
            )));
        };
        add_cycle(t)?;
    }
    let mut outer_cw: Vec<usize> = Vec::with_capacity(m);
    outer_cw.push(outer_ccw[0]);
    outer_cw.extend(outer_ccw[1..].iter().rev());
    add_cycle(&outer_cw)?;

    let mut rotations = Vec::with_capacity(n);
    for (v, nx) in next.iter().enumerate() {
        let Some(&start) = nx.keys().min() else {
            return Err(Error::InvalidTriangulation(format!(
                "vertex {v} is isolated"
            )));
        };
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            let Some(&nxt) = nx.get(&cur) else {
                return Err(Error::InvalidTriangulation(format!(
                    "rotation at {v} is open"
                )));
            };
            if nxt == start {
                break;
            }
            if rot.len() > nx.len() {
                return Err(Error::InvalidTriangulation(format!(
                    "rotation at {v} does not close"
                )));
            }
            rot.push(nxt);
            cur = nxt;
        }
        if rot.len() != nx.len() {
            return Err(Error::InvalidTriangulation(format!(
                "vertex {v} is pinched"
            )));
        }
        rotations.push(rot);
    }
    CombTriangulation::from_rotations(n, outer_ccw.to_vec(), rotations)
}

/// Orient triangle `t` so that it traverses `a -> b`; the result starts at
/// its smallest label so equal orientations compare equal.
fn orient_along(t: [usize; 3], a: usize, b: usize) -> [usize; 3] {
    let c = t
        .iter()
        .copied()
        .find(|&v| v != a && v != b)
        .expect("edge in triangle");
    let r = [a, b, c];
    let k = (0..3).min_by_key(|&i| r[i]).unwrap();
    [r[k], r[(k + 1) % 3], r[(k + 2) % 3]]
}

/// The `floor(n / 3)`-nested regular triangulation.
///
/// Layer `j` is the triangle `3j, 3j + 1, 3j + 2` (top, bottom-left,
/// bottom-right). Between consecutive layers, outer vertex `A_i` is joined
/// to inner `a_i` and `a_{i+1}`, so interior layer vertices reach degree 6
/// and the outermost and innermost layers degree 4.
///
/// When `3` does not divide `n` the leftover vertices follow the drawings
/// of the two remainder cases: one vertex joined to the innermost triangle,
/// or two vertices `x, y` with `x ~ t0, t1, y` and `y ~ t0, t1, t2, x`.
/// The leftover wiring goes beyond the recursive definition, which only
/// covers multiples of three.
pub fn build_k_nested_regular(n: usize) -> Result<CombTriangulation> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "nested regular triangulation needs n >= 3, got {n}"
        )));
    }
    let layers = n / 3;
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for j in 0..layers - 1 {
        let outer = [3 * j, 3 * j + 1, 3 * j + 2];
        let inner = [3 * j + 3, 3 * j + 4, 3 * j + 5];
        for i in 0..3 {
            let i1 = (i + 1) % 3;
            faces.push([outer[i], outer[i1], inner[i1]]);
            faces.push([outer[i], inner[i], inner[i1]]);
        }
    }
    let t = [3 * layers - 3, 3 * layers - 2, 3 * layers - 1];
    match n % 3 {
        0 => faces.push(t),
        1 => {
            let x = n - 1;
            faces.extend([[t[0], t[1], x], [t[1], t[2], x], [t[2], t[0], x]]);
        }
        _ => {
            let (x, y) = (n - 2, n - 1);
            faces.extend([
                [t[0], t[1], x],
                [t[1], y, x],
                [t[0], x, y],
                [t[0], y, t[2]],
                [t[1], t[2], y],
            ]);
        }
    }
    // Outer face CCW, starting at the bottom-left corner.
    CombTriangulation::from_faces(n, &[1, 2, 0], &faces)
}

/// Labels of one layer of the nested double chain triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleChainLayer {
    /// Quadrilateral the layer sits in: top-left, top-right, bottom-left,
    /// bottom-right.
    pub corners: [usize; 4],
    /// The four new lower-chain vertices, left to right.
    pub lower: [usize; 4],
    /// The four new upper-chain vertices, left to right.
    pub upper: [usize; 4],
}

impl DoubleChainLayer {
    /// Corners of the next layer's quadrilateral (TL, TR, BL, BR).
    pub fn inner_quadrilateral(&self) -> [usize; 4] {
        [self.upper[1], self.upper[2], self.lower[1], self.lower[2]]
    }
}

/// Layer decomposition of [`build_k_nested_double_chain`]. Vertices
/// `0..4` are the outer corners TL, TR, BL, BR; layer `j` adds
/// `4 + 8j .. 8 + 8j` (lower chain) and `8 + 8j .. 12 + 8j` (upper chain).
pub fn double_chain_layers(k: usize) -> Vec<DoubleChainLayer> {
    let mut layers = Vec::with_capacity(k);
    let mut corners = [0, 1, 2, 3];
    for j in 0..k {
        let base = 4 + 8 * j;
        let layer = DoubleChainLayer {
            corners,
            lower: [base, base + 1, base + 2, base + 3],
            upper: [base + 4, base + 5, base + 6, base + 7],
        };
        corners = layer.inner_quadrilateral();
        layers.push(layer);
    }
    layers
}

/// The `k`-nested double chain triangulation on `8k + 4` vertices.
///
/// Each layer triangulates the band between its quadrilateral
/// `(tl, tr, bl, br)` and the inner quadrilateral `(u1, u2, l1, l2)`
/// exactly as the single-layer drawing: the lower pocket is fanned from
/// `bl` and `br`, the upper pocket from `tl` and `tr`, the left side goes
/// through `l0` and the right side through `u3`. The innermost
/// quadrilateral gets the diagonal `l2 - u1` (bottom-right to top-left).
pub fn build_k_nested_double_chain(k: usize) -> Result<CombTriangulation> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "nested double chain triangulation needs k >= 1".into(),
        ));
    }
    let n = 8 * k + 4;
    let layers = double_chain_layers(k);
    let mut faces: Vec<[usize; 3]> = Vec::with_capacity(2 * n);
    for (j, layer) in layers.iter().enumerate() {
        let [tl, tr, bl, br] = layer.corners;
        let [l0, l1, l2, l3] = layer.lower;
        let [u0, u1, u2, u3] = layer.upper;
        faces.extend([
            [bl, l0, l1],
            [bl, l1, l2],
            [bl, l2, br],
            [br, l2, l3],
            [tl, bl, l0],
            [tr, br, u3],
            [br, l3, u3],
            [tl, l0, u0],
            [l0, l1, u0],
            [l1, u0, u1],
            [l2, l3, u2],
            [l3, u2, u3],
            [tl, u0, u1],
            [tl, u1, tr],
            [tr, u1, u2],
            [tr, u2, u3],
        ]);
        if j + 1 == k {
            faces.extend([[l1, l2, u1], [l2, u1, u2]]);
        }
    }
    // CCW from the bottom-left corner: BL, BR, TR, TL.
    CombTriangulation::from_faces(n, &[2, 3, 1, 0], &faces)
}
