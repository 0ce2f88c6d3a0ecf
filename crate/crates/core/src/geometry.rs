//! Exact integer predicates.
//!
//! Coordinates are `i64` restricted to `|x|, |y| <= COORD_LIMIT` (2^30), and
//! every determinant is evaluated in `i128`, so no predicate can overflow or
//! round. Nothing in this module ever touches a float.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 30;

/// A point on the integer grid. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of `pqr`, i.e. `(q - p) x (r - p)`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ax, ay) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (bx, by) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ax * by - ay * bx
}

/// Orientation of the triple: `Ccw` iff `r` lies strictly left of `p -> q`.
#[inline]
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Whether the closed segments `ab` and `cd` share a point other than a
/// common endpoint. Touching at exactly one shared endpoint is not a
/// crossing; collinear overlap of interiors is.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        return collinear_overlap(a, b, c, d);
    }

    let shared = a == c || a == d || b == c || b == d;
    if shared {
        // Not all four collinear, so the segments meet only at the shared end.
        return false;
    }

    if o1 != o2
        && o3 != o4
        && [o1, o2, o3, o4]
            .iter()
            .all(|o| *o != Orientation::Collinear)
    {
        return true;
    }
    // One endpoint touching the other segment's interior.
    (o1 == Orientation::Collinear && on_segment(a, b, c))
        || (o2 == Orientation::Collinear && on_segment(a, b, d))
        || (o3 == Orientation::Collinear && on_segment(c, d, a))
        || (o4 == Orientation::Collinear && on_segment(c, d, b))
}

/// `r` collinear with `pq` lies within their bounding box.
fn on_segment(p: Point, q: Point, r: Point) -> bool {
    p.x.min(q.x) <= r.x && r.x <= p.x.max(q.x) && p.y.min(q.y) <= r.y && r.y <= p.y.max(q.y)
}

fn collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool {
    let key = |p: Point| if a.x != b.x { p.x } else { p.y };
    let (lo1, hi1) = (key(a).min(key(b)), key(a).max(key(b)));
    let (lo2, hi2) = (key(c).min(key(d)), key(c).max(key(d)));
    // Touching intervals meet in a single point, which is then an endpoint
    // of both segments: a shared endpoint.
    lo1.max(lo2) < hi1.min(hi2)
}

/// Indices of the convex hull vertices in CCW order, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::DegenerateHull(format!("{} points", points.len())));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| points[i]);

    // Andrew's monotone chain.
    let mut hull: Vec<usize> = Vec::with_capacity(points.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(
                    points[hull[hull.len() - 2]],
                    points[hull[hull.len() - 1]],
                    points[i],
                ) != Orientation::Ccw
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::DegenerateHull("all points collinear".into()));
    }
    Ok(hull)
}

/// True iff no three of the points are collinear (coincident points count
/// as degenerate).
pub fn general_position(points: &[Point]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orient(points[i], points[j], points[k]) == Orientation::Collinear {
                    return false;
                }
            }
        }
    }
    true
}

/// Strict containment of `p` in the triangle `abc` (any orientation).
pub fn strictly_inside(a: Point, b: Point, c: Point, p: Point) -> bool {
    let o = orient(a, b, c);
    o != Orientation::Collinear
        && orient(a, b, p) == o
        && orient(b, c, p) == o
        && orient(c, a, p) == o
}

/// Half-plane index used by the exact angular comparator: 0 for directions
/// in `[0, pi)`, 1 for `[pi, 2pi)`.
fn half(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

/// Compare the directions `center -> a` and `center -> b` by polar angle in
/// `[0, 2pi)`, exactly.
pub fn angular_cmp(center: Point, a: Point, b: Point) -> Ordering {
    let da = (a.x - center.x, a.y - center.y);
    let db = (b.x - center.x, b.y - center.y);
    half(da)
        .cmp(&half(db))
        .then_with(|| 0.cmp(&cross(center, a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(p(0, 0), p(1, 0), p(0, 1)), Orientation::Ccw);
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 2)), Orientation::Collinear);
        assert_eq!(orient(p(0, 0), p(0, 1), p(1, 0)), Orientation::Cw);
    }

    #[test]
    fn orient_at_coordinate_limit() {
        let l = COORD_LIMIT;
        assert_eq!(orient(p(-l, -l), p(l, -l), p(l, l)), Orientation::Ccw);
        assert_eq!(orient(p(-l, -l), p(l, l), p(0, 0)), Orientation::Collinear);
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_cross(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_cross(p(0, 0), p(1, 0), p(1, 0), p(2, 1)));
        assert!(segments_cross(p(0, 0), p(3, 0), p(1, 0), p(2, 0)));
    }

    #[test]
    fn crossing_edge_cases() {
        // collinear, touching only at a shared endpoint
        assert!(!segments_cross(p(0, 0), p(1, 0), p(1, 0), p(2, 0)));
        // collinear, sharing an endpoint but overlapping
        assert!(segments_cross(p(0, 0), p(2, 0), p(0, 0), p(1, 0)));
        // collinear and disjoint
        assert!(!segments_cross(p(0, 0), p(1, 0), p(2, 0), p(3, 0)));
        // T-junction: endpoint in the other interior
        assert!(segments_cross(p(0, 0), p(2, 0), p(1, 0), p(1, 5)));
        // far apart
        assert!(!segments_cross(p(0, 0), p(1, 1), p(5, 0), p(6, 2)));
        // vertical collinear overlap
        assert!(segments_cross(p(0, 0), p(0, 4), p(0, 1), p(0, 7)));
    }

    #[test]
    fn hull_examples() {
        let square = [p(0, 0), p(1, 1), p(1, 0), p(0, 1)];
        assert_eq!(convex_hull(&square).unwrap(), vec![0, 2, 1, 3]);

        let tri = [p(0, 0), p(6, 0), p(3, 6), p(3, 2)];
        assert_eq!(convex_hull(&tri).unwrap(), vec![0, 1, 2]);

        assert!(convex_hull(&[p(0, 0), p(1, 1)]).is_err());
        assert!(convex_hull(&[p(0, 0), p(1, 1), p(2, 2)]).is_err());
        // collinear boundary point excluded
        let with_mid = [p(0, 0), p(2, 0), p(4, 0), p(2, 3)];
        assert_eq!(convex_hull(&with_mid).unwrap(), vec![0, 2, 3]);
    }

    #[test]
    fn general_position_examples() {
        assert!(!general_position(&[p(0, 0), p(1, 0), p(2, 0)]));
        assert!(general_position(&[p(0, 0), p(1, 0), p(0, 1)]));
        assert!(!general_position(&[p(0, 0), p(0, 0), p(0, 1)]));
    }

    #[test]
    fn angular_order_around_origin() {
        let c = p(0, 0);
        let mut dirs = vec![p(0, -1), p(-1, 0), p(1, 1), p(1, 0), p(-1, -1), p(0, 1)];
        dirs.sort_by(|a, b| angular_cmp(c, *a, *b));
        assert_eq!(
            dirs,
            vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(-1, -1), p(0, -1)]
        );
    }

    fn coord() -> impl Strategy<Value = i64> {
        -1000i64..1000
    }

    fn point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn orient_flips_under_transposition(a in point(), b in point(), c in point()) {
            prop_assert_eq!(orient(a, b, c), orient(b, a, c).reversed());
            prop_assert_eq!(orient(a, b, c), orient(a, c, b).reversed());
            prop_assert_eq!(orient(a, b, c), orient(b, c, a));
        }

        #[test]
        fn crossing_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
            prop_assume!(a != b && c != d);
            let x = segments_cross(a, b, c, d);
            prop_assert_eq!(x, segments_cross(c, d, a, b));
            prop_assert_eq!(x, segments_cross(b, a, c, d));
            prop_assert_eq!(x, segments_cross(a, b, d, c));
        }

        #[test]
        fn hull_invariant_under_permutation(
            pts in proptest::collection::hash_set((coord(), coord()), 3..24),
            seed in any::<u64>(),
        ) {
            let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
            let Ok(h1) = convex_hull(&pts) else { return Ok(()); };
            let mut perm: Vec<usize> = (0..pts.len()).collect();
            // deterministic shuffle from the seed
            let mut s = seed | 1;
            for i in (1..perm.len()).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                perm.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let shuffled: Vec<Point> = perm.iter().map(|&i| pts[i]).collect();
            let h2: Vec<Point> = convex_hull(&shuffled).unwrap().iter().map(|&i| shuffled[i]).collect();
            let h1: Vec<Point> = h1.iter().map(|&i| pts[i]).collect();
            prop_assert_eq!(h1, h2);
        }
    }
}
