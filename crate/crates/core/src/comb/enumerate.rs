use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;

use super::CombTriangulation;
use crate::error::{Error, Result};

/// Largest interior-vertex count accepted by [`enumerate_comb_triangulations`].
pub const MAX_ENUMERATED_INTERIOR: usize = 4;

/// Number of triangulations of a triangle with `n` interior vertices,
/// `2 / (n (n + 1)) * C(4n + 1, n - 1)`, computed exactly.
pub fn tutte_count(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidParameter("tutte_count needs n >= 1".into()));
    }
    let num = BigUint::from(2u32) * binomial(4 * n + 1, n - 1);
    let den = BigUint::from(n) * BigUint::from(n + 1);
    let (q, r) = num.div_rem(&den);
    assert!(r == BigUint::ZERO, "inexact division in tutte_count({n})");
    Ok(q)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

#[derive(Clone)]
struct State {
    faces: Vec<[usize; 3]>,
    edges: BTreeSet<(usize, usize)>,
    pending: Vec<Vec<usize>>,
    next_label: usize,
    remaining: usize,
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Every triangulation of the triangle `0, 1, 2` with `n` interior
/// vertices, one per boundary-fixing isomorphism class, ordered by code.
///
/// Generation peels the triangle on the inner side of a root edge: its
/// apex is either a fresh interior vertex or a boundary vertex, which
/// splits the region in two. `cap` bounds the number of completed
/// triangulations visited before deduplication.
pub fn enumerate_comb_triangulations(n: usize, cap: u64) -> Result<Vec<CombTriangulation>> {
    if n > MAX_ENUMERATED_INTERIOR {
        return Err(Error::GuardExceeded {
            what: "interior vertices",
            limit: MAX_ENUMERATED_INTERIOR,
            actual: n,
        });
    }
    let start = State {
        faces: Vec::new(),
        edges: [edge(0, 1), edge(1, 2), edge(0, 2)].into_iter().collect(),
        pending: vec![vec![0, 1, 2]],
        next_label: 3,
        remaining: n,
    };
    let mut found: BTreeMap<Vec<u8>, CombTriangulation> = BTreeMap::new();
    let mut visited = 0u64;
    let mut stack = vec![start];
    while let Some(mut s) = stack.pop() {
        let Some(poly) = s.pending.pop() else {
            if s.remaining > 0 {
                continue;
            }
            visited += 1;
            if visited > cap {
                return Err(Error::CapExceeded(cap));
            }
            let t = CombTriangulation::from_faces(n + 3, &[0, 1, 2], &s.faces)?;
            found.entry(t.canonical_code()).or_insert(t);
            continue;
        };
        let m = poly.len();
        let (p0, p1) = (poly[0], poly[1]);
        if s.remaining > 0 {
            let mut c = s.clone();
            let v = c.next_label;
            c.next_label += 1;
            c.remaining -= 1;
            c.faces.push([p0, p1, v]);
            c.edges.insert(edge(p0, v));
            c.edges.insert(edge(p1, v));
            let mut rest = Vec::with_capacity(m + 1);
            rest.push(p0);
            rest.push(v);
            rest.extend_from_slice(&poly[1..]);
            c.pending.push(rest);
            stack.push(c);
        }
        for j in 2..m {
            let pj = poly[j];
            let chord_left = j > 2;
            let chord_right = j < m - 1;
            if (chord_left && s.edges.contains(&edge(p1, pj)))
                || (chord_right && s.edges.contains(&edge(pj, p0)))
            {
                continue;
            }
            let mut c = s.clone();
            c.faces.push([p0, p1, pj]);
            if chord_left {
                c.edges.insert(edge(p1, pj));
                c.pending.push(poly[1..=j].to_vec());
            }
            if chord_right {
                c.edges.insert(edge(pj, p0));
                let mut right = poly[j..].to_vec();
                right.push(p0);
                c.pending.push(right);
            }
            stack.push(c);
        }
        s.pending.clear();
    }
    Ok(found.into_values().collect())
}
