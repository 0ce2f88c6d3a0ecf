//! The two point-set families: nested triangular layers and double chains.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, general_position, orient, strictly_inside, Orientation, Point};

/// Which generator a point set came from.
///
/// Serialized externally tagged: `{"double_chain": [t, l]}` or
/// `{"nested_triangles": n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    DoubleChain(usize, usize),
    NestedTriangles(usize),
}

/// A validated planar point set; the index of a point is its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    points: Vec<Point>,
    family: Option<Family>,
}

#[derive(Deserialize)]
struct RawPointSet {
    points: Vec<Point>,
    #[serde(default)]
    family: Option<Family>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.points, raw.family)
    }
}

impl PointSet {
    /// Validate and wrap. Rejects out-of-range coordinates, duplicates,
    /// collinear triples, and family tags the points do not satisfy.
    pub fn new(points: Vec<Point>, family: Option<Family>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.in_range()) {
            return Err(Error::InvalidPointSet(format!(
                "coordinate out of range: {p:?}"
            )));
        }
        if !general_position(&points) {
            return Err(Error::InvalidPointSet(
                "points are not in general position".into(),
            ));
        }
        let ps = PointSet { points, family };
        match family {
            Some(Family::DoubleChain(t, l)) => {
                if ps.len() != t + l || !validate_double_chain(&ps, t, l) {
                    return Err(Error::InvalidPointSet(format!(
                        "not a ({t},{l})-double chain"
                    )));
                }
            }
            Some(Family::NestedTriangles(n))
                if ps.len() != n || !validate_nested_triangles(&ps) =>
            {
                return Err(Error::InvalidPointSet(
                    "convex layers are not all triangles".into(),
                ));
            }
            _ => {}
        }
        Ok(ps)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn hull(&self) -> Result<Vec<usize>> {
        convex_hull(&self.points)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("point set serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A `(t, l)`-double chain: `t` points on an upward-opening parabola
/// (the upper chain, listed left to right) followed by `l` points on a
/// downward-opening one (the lower chain). The chains bulge toward each
/// other, so for `t, l >= 2` the hull is the quadrilateral of the four
/// chain ends.
pub fn gen_double_chain(t: usize, l: usize) -> Result<PointSet> {
    if t == 0 || l == 0 {
        return Err(Error::InvalidParameter(
            "both chains need at least one point".into(),
        ));
    }
    if t + l < 3 {
        return Err(Error::TooFewPoints(format!("{} points", t + l)));
    }
    // Both chains span x in [-d, d] on integer abscissae.
    let span = |m: usize| (m.max(2) - 1) as i64;
    let d = span(t).lcm(&span(l));
    // Any line through two points of one chain stays within 3 d^2 of its
    // apex over [-d, d]; h = 2 d^2 keeps the other chain strictly beyond.
    let h = 2 * d * d;
    if h + d * d > crate::geometry::COORD_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "chains too long: ({t},{l})"
        )));
    }
    let xs = |m: usize| -> Vec<i64> {
        if m == 1 {
            vec![0]
        } else {
            let step = 2 * d / (m as i64 - 1);
            (0..m as i64).map(|i| -d + i * step).collect()
        }
    };
    let mut points: Vec<Point> = xs(t)
        .into_iter()
        .map(|x| Point::new(x, h + x * x))
        .collect();
    points.extend(xs(l).into_iter().map(|x| Point::new(x, -(h + x * x))));
    PointSet::new(points, Some(Family::DoubleChain(t, l)))
}

/// Exact check of the double-chain conditions for the first `t` (upper)
/// and last `l` (lower) points.
pub fn validate_double_chain(ps: &PointSet, t: usize, l: usize) -> bool {
    if ps.len() != t + l || t == 0 || l == 0 {
        return false;
    }
    let (upper, lower) = ps.points().split_at(t);

    let chain_ok = |chain: &[Point], turn: Orientation| {
        chain.windows(2).all(|w| w[0].x < w[1].x)
            && (0..chain.len()).all(|i| {
                (i + 1..chain.len()).all(|j| {
                    (j + 1..chain.len()).all(|k| orient(chain[i], chain[j], chain[k]) == turn)
                })
            })
    };
    // upper: convex from below (left turns); lower: concave (right turns)
    if !chain_ok(upper, Orientation::Ccw) || !chain_ok(lower, Orientation::Cw) {
        return false;
    }
    let beyond = |chain: &[Point], others: &[Point], side: Orientation| {
        (0..chain.len()).all(|i| {
            (i + 1..chain.len()).all(|j| {
                others
                    .iter()
                    .all(|&q| orient(chain[i], chain[j], q) == side)
            })
        })
    };
    // lower points below every upper line, upper points above every lower line
    beyond(upper, lower, Orientation::Cw) && beyond(lower, upper, Orientation::Ccw)
}

/// Corners of the base triangle: top, bottom-left, bottom-right (CCW).
const BASE_TRIANGLE: [(i64, i64); 3] = [(0, 1000), (-866, -500), (866, -500)];

/// Per-layer rotation step, as the integer numerator of a `1/16` shear.
const TWIST: i64 = 1;

/// `floor(n / 3)` nested triangles, each a half-size copy of the previous
/// one with a slight twist, plus one or two points inside the innermost
/// triangle when `3` does not divide `n`. Layer `j` holds labels
/// `3j, 3j + 1, 3j + 2` as top, bottom-left, bottom-right.
pub fn gen_nested_triangles(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(format!("{n} points")));
    }
    let layers = n / 3;
    if layers > 16 {
        return Err(Error::InvalidParameter(format!(
            "too many layers: {layers}"
        )));
    }
    let mut points = Vec::with_capacity(n);
    for j in 0..layers {
        let scale = 1i64 << (layers - 1 - j);
        let twist = TWIST * j as i64;
        for (x, y) in BASE_TRIANGLE {
            points.push(Point::new(
                scale * (16 * x - twist * y),
                scale * (16 * y + twist * x),
            ));
        }
    }
    let inner = [
        points[3 * layers - 3],
        points[3 * layers - 2],
        points[3 * layers - 1],
    ];
    let extra = n % 3;
    if extra > 0 {
        // leftover points just above the centroid
        // (the innermost triangle is centered at the origin).
        let offsets: &[(i64, i64)] = if extra == 1 {
            &[(7, 23)]
        } else {
            &[(-1600, 400), (1600, 617)]
        };
        for &(dx, dy) in offsets {
            let p = Point::new(dx, dy);
            debug_assert!(strictly_inside(inner[0], inner[1], inner[2], p));
            points.push(p);
        }
    }
    PointSet::new(points, Some(Family::NestedTriangles(n)))
}

/// Convex layer sizes from repeated hull removal (onion peeling). The last
/// entry may be 1 or 2 for leftover points.
pub fn convex_layers(points: &[Point]) -> Vec<usize> {
    let mut remaining: Vec<Point> = points.to_vec();
    let mut sizes = Vec::new();
    while remaining.len() >= 3 {
        let Ok(hull) = convex_hull(&remaining) else {
            break;
        };
        sizes.push(hull.len());
        let mut on_hull = vec![false; remaining.len()];
        hull.iter().for_each(|&i| on_hull[i] = true);
        remaining = remaining
            .into_iter()
            .zip(on_hull)
            .filter(|(_, h)| !h)
            .map(|(p, _)| p)
            .collect();
    }
    if !remaining.is_empty() {
        sizes.push(remaining.len());
    }
    sizes
}

/// True iff peeling hulls yields triangles until at most two points remain.
pub fn validate_nested_triangles(ps: &PointSet) -> bool {
    let sizes = convex_layers(ps.points());
    let full = ps.len() / 3;
    sizes.len() >= full
        && sizes[..full].iter().all(|&s| s == 3)
        && sizes[full..].iter().all(|&s| s < 3)
}
