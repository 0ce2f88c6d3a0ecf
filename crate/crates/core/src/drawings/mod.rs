//! Geometric triangulations of point sets and drawings of combinatorial
//! triangulations on them.

mod count;
mod enumerate;
mod layers;
mod polygons;
mod svg;
mod tables;

pub use count::{
    boundary_automorphisms, classify_csv, classify_drawings, count_drawings, count_mappings,
    find_drawings, Backend,
};
pub use enumerate::{count_geometric_triangulations, enumerate_geometric_triangulations};
pub use layers::{recursive_layer_count, LAYER_MULTIPLICITY};
pub use polygons::{count_polygonalizations, forced_cycle, ForcedCycle};
pub use svg::render_svg;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comb::CombTriangulation;
use crate::error::{Error, Result};
use crate::geometry::angular_cmp;
use crate::pointsets::PointSet;

/// Size limits and parallelism for the exhaustive searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest point set handed to the triangulation enumerator.
    pub max_enumerate_n: usize,
    /// Largest point set handed to the polygon counter.
    pub max_polygon_n: usize,
    /// Largest point set handed to the direct drawing search.
    pub max_direct_n: usize,
    /// Upper bound on the number of objects any single search visits.
    pub cap: u64,
    /// Worker threads; 1 runs everything on the calling thread.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_enumerate_n: 14,
            max_polygon_n: 16,
            max_direct_n: 32,
            cap: 100_000_000,
            jobs: 1,
        }
    }
}

impl SearchConfig {
    /// Defaults, with every size guard replaced by `REDRAW_MAX_N` when set.
    pub fn from_env() -> Self {
        let mut cfg = SearchConfig::default();
        if let Some(n) = std::env::var("REDRAW_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.max_enumerate_n = n;
            cfg.max_polygon_n = n;
            cfg.max_direct_n = n;
        }
        cfg
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub(crate) fn check(&self, what: &'static str, limit: usize, n: usize) -> Result<()> {
        if n > limit {
            return Err(Error::GuardExceeded {
                what,
                limit,
                actual: n,
            });
        }
        Ok(())
    }
}

/// A maximal crossing-free straight-line graph on a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGeom", into = "RawGeom")]
pub struct GeomTriangulation {
    pointset: Arc<PointSet>,
    edges: Vec<(usize, usize)>,
    triangles: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct RawGeom {
    pointset: PointSet,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGeom> for GeomTriangulation {
    type Error = Error;

    fn try_from(raw: RawGeom) -> Result<Self> {
        GeomTriangulation::from_edges(
            Arc::new(raw.pointset),
            raw.edges.iter().map(|e| (e[0], e[1])).collect(),
        )
    }
}

impl From<GeomTriangulation> for RawGeom {
    fn from(g: GeomTriangulation) -> Self {
        RawGeom {
            pointset: (*g.pointset).clone(),
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl GeomTriangulation {
    /// Validate an edge list: in range, no crossings, every hull edge
    /// present and `3n - 3 - h` edges in total.
    pub fn from_edges(pointset: Arc<PointSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = pointset.len();
        let hull = pointset.hull()?;
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidTriangulation(format!("bad edge {a}-{b}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        let h = hull.len();
        if norm.len() != 3 * n - 3 - h {
            return Err(Error::InvalidTriangulation(format!(
                "{} edges, a triangulation of this set has {}",
                norm.len(),
                3 * n - 3 - h
            )));
        }
        for i in 0..h {
            let (a, b) = (hull[i], hull[(i + 1) % h]);
            if norm.binary_search(&(a.min(b), a.max(b))).is_err() {
                return Err(Error::InvalidTriangulation(format!(
                    "hull edge {a}-{b} missing"
                )));
            }
        }
        let pts = pointset.points();
        for (i, &(a, b)) in norm.iter().enumerate() {
            for &(c, d) in &norm[i + 1..] {
                if crate::geometry::segments_cross(pts[a], pts[b], pts[c], pts[d]) {
                    return Err(Error::InvalidTriangulation(format!(
                        "edges {a}-{b} and {c}-{d} cross"
                    )));
                }
            }
        }
        let mut g = GeomTriangulation {
            pointset,
            edges: norm,
            triangles: Vec::new(),
        };
        g.triangles = g.to_comb()?.faces().to_vec();
        Ok(g)
    }

    /// Trusted constructor for edge sets produced by the searches.
    pub(crate) fn from_search(
        pointset: Arc<PointSet>,
        mut edges: Vec<(usize, usize)>,
        order: &AngularOrder,
    ) -> Self {
        edges.sort_unstable();
        let comb = order
            .to_comb(&edges)
            .expect("search produced a triangulation");
        GeomTriangulation {
            pointset,
            edges,
            triangles: comb.faces().to_vec(),
        }
    }

    pub fn pointset(&self) -> &PointSet {
        &self.pointset
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Bounded faces, each CCW.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// The rotation system read off the drawing: neighbors sorted by angle,
    /// outer face the hull in CCW order from its lexicographically smallest
    /// point.
    pub fn to_comb(&self) -> Result<CombTriangulation> {
        AngularOrder::new(&self.pointset)?.to_comb(&self.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triangulation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// For each point, every other point sorted by angle around it, so that
/// rotation systems of many triangulations are cheap to read off.
pub(crate) struct AngularOrder {
    hull: Vec<usize>,
    around: Vec<Vec<usize>>,
}

impl AngularOrder {
    pub fn new(ps: &PointSet) -> Result<Self> {
        let pts = ps.points();
        let around = (0..ps.len())
            .map(|v| {
                let mut others: Vec<usize> = (0..ps.len()).filter(|&w| w != v).collect();
                others.sort_by(|&a, &b| angular_cmp(pts[v], pts[a], pts[b]));
                others
            })
            .collect();
        Ok(AngularOrder {
            hull: ps.hull()?,
            around,
        })
    }

    pub fn to_comb(&self, edges: &[(usize, usize)]) -> Result<CombTriangulation> {
        let n = self.around.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let rotations = (0..n)
            .map(|v| {
                self.around[v]
                    .iter()
                    .copied()
                    .filter(|&w| adj[v][w])
                    .collect()
            })
            .collect();
        CombTriangulation::from_rotations(n, self.hull.clone(), rotations)
    }
}
