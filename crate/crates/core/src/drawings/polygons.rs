use serde::Serialize;

use super::tables::{Bits, Tables};
use super::SearchConfig;
use crate::error::{Error, Result};
use crate::pointsets::{Family, PointSet};

struct Walk<'a> {
    t: &'a Tables,
    n: usize,
    cap: u64,
}

impl Walk<'_> {
    /// Extend `path` (which starts at 0) to every non-crossing Hamiltonian
    /// cycle. Each undirected cycle is counted from the orientation whose
    /// second vertex is smaller than its last.
    fn go(
        &self,
        path: &mut Vec<usize>,
        used: &mut [bool],
        edges: &mut Bits,
        count: &mut u64,
    ) -> Result<()> {
        let last = *path.last().expect("path starts at 0");
        if path.len() == self.n {
            if path[1] < last && !self.t.crossing(last, 0).intersects(edges) {
                *count += 1;
                if *count > self.cap {
                    return Err(Error::CapExceeded(self.cap));
                }
            }
            return Ok(());
        }
        for q in 1..self.n {
            if used[q] || self.t.crossing(last, q).intersects(edges) {
                continue;
            }
            let e = self.t.pair(last, q);
            used[q] = true;
            edges.set(e);
            path.push(q);
            let r = self.go(path, used, edges, count);
            path.pop();
            edges.clear(e);
            used[q] = false;
            r?;
        }
        Ok(())
    }
}

/// Number of simple polygons whose vertex set is exactly `ps`.
pub fn count_polygonalizations(ps: &PointSet, cfg: &SearchConfig) -> Result<u64> {
    cfg.check("points to polygonalize", cfg.max_polygon_n, ps.len())?;
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints(format!(
            "a polygon needs 3 points, got {n}"
        )));
    }
    let t = Tables::new(ps);
    let walk = Walk {
        t: &t,
        n,
        cap: cfg.cap,
    };
    let seed = |second: usize| -> Result<u64> {
        let mut path = vec![0, second];
        let mut used = vec![false; n];
        used[0] = true;
        used[second] = true;
        let mut edges = Bits::zeros(n * n);
        edges.set(t.pair(0, second));
        let mut count = 0;
        walk.go(&mut path, &mut used, &mut edges, &mut count)?;
        Ok(count)
    };
    if cfg.jobs <= 1 {
        (1..n).map(seed).sum()
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            (1..n)
                .into_par_iter()
                .map(seed)
                .try_reduce(|| 0, |a, b| Ok(a + b))
        })
    }
}

/// Edges of a double chain that every triangulation contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedCycle {
    /// Both chain paths and the four hull edges, sorted.
    pub edges: Vec<(usize, usize)>,
    /// The Hamiltonian cycle through both chains, closed by the left and
    /// right hull edges: upper chain left to right, then lower chain right
    /// to left.
    pub cycle: Vec<usize>,
}

impl ForcedCycle {
    pub fn cycle_edges(&self) -> Vec<(usize, usize)> {
        let m = self.cycle.len();
        let mut e: Vec<(usize, usize)> = (0..m)
            .map(|i| {
                let (a, b) = (self.cycle[i], self.cycle[(i + 1) % m]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        e
    }
}

pub fn forced_cycle(ps: &PointSet) -> Result<ForcedCycle> {
    let Some(Family::DoubleChain(t, l)) = ps.family() else {
        return Err(Error::InvalidPointSet(
            "forced cycle needs a point set tagged as a double chain".into(),
        ));
    };
    if t < 2 || l < 2 {
        return Err(Error::InvalidParameter(format!(
            "both chains need 2 points, got ({t},{l})"
        )));
    }
    let cycle: Vec<usize> = (0..t).chain((t..t + l).rev()).collect();
    let mut edges: Vec<(usize, usize)> = (0..t - 1).map(|i| (i, i + 1)).collect();
    edges.extend((t..t + l - 1).map(|i| (i, i + 1)));
    edges.extend([(0, t), (t - 1, t + l - 1), (0, t - 1), (t, t + l - 1)]);
    edges.sort_unstable();
    edges.dedup();
    Ok(ForcedCycle { edges, cycle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawings::enumerate_geometric_triangulations;
    use crate::geometry::{segments_cross, Point};
    use crate::pointsets::gen_double_chain;

    /// Brute force over all permutations fixing the first point, counting
    /// each undirected simple cycle once.
    fn brute(ps: &PointSet) -> u64 {
        let n = ps.len();
        let pts = ps.points();
        let mut rest: Vec<usize> = (1..n).collect();
        let mut count = 0;
        permute(&mut rest, 0, &mut |perm| {
            if perm[0] > perm[n - 2] {
                return;
            }
            let cyc: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
            let seg = |i: usize| (pts[cyc[i]], pts[cyc[(i + 1) % n]]);
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = seg(i);
                    let (c, d) = seg(j);
                    if segments_cross(a, b, c, d) {
                        return;
                    }
                }
            }
            count += 1;
        });
        count
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn convex_sets_have_one_polygon() {
        for n in 3..9 {
            let pts = (0..n as i64).map(|i| Point::new(i, i * i)).collect();
            let ps = PointSet::new(pts, None).unwrap();
            assert_eq!(
                count_polygonalizations(&ps, &SearchConfig::default()).unwrap(),
                1
            );
        }
    }

    #[test]
    fn matches_brute_force() {
        let cfg = SearchConfig::default();
        for (t, l) in [(2, 2), (3, 2), (3, 3), (4, 3), (4, 4), (5, 3)] {
            let ps = gen_double_chain(t, l).unwrap();
            assert_eq!(
                count_polygonalizations(&ps, &cfg).unwrap(),
                brute(&ps),
                "({t},{l})"
            );
        }
        let pts = [(0, 0), (20, 1), (9, 17), (8, 5), (12, 6), (6, 9), (13, 11)]
            .map(|(x, y)| Point::new(x, y));
        let ps = PointSet::new(pts.to_vec(), None).unwrap();
        assert_eq!(count_polygonalizations(&ps, &cfg).unwrap(), brute(&ps));
    }

    #[test]
    fn parallel_matches_sequential() {
        let ps = gen_double_chain(5, 4).unwrap();
        let a = count_polygonalizations(&ps, &SearchConfig::default()).unwrap();
        let b = count_polygonalizations(&ps, &SearchConfig::default().with_jobs(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_cycle_shapes() {
        let f = forced_cycle(&gen_double_chain(2, 2).unwrap()).unwrap();
        assert_eq!(f.edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let f = forced_cycle(&gen_double_chain(7, 7).unwrap()).unwrap();
        assert_eq!(f.edges.len(), 16);
        assert_eq!(f.cycle_edges().len(), 14);
        assert!(f.cycle_edges().iter().all(|e| f.edges.contains(e)));
        let plain = PointSet::new(gen_double_chain(3, 3).unwrap().points().to_vec(), None).unwrap();
        assert!(forced_cycle(&plain).is_err());
    }

    #[test]
    fn forced_edges_are_in_every_triangulation() {
        let ps = gen_double_chain(4, 4).unwrap();
        let f = forced_cycle(&ps).unwrap();
        for g in enumerate_geometric_triangulations(&ps, &SearchConfig::default()).unwrap() {
            assert!(f.edges.iter().all(|&(a, b)| g.has_edge(a, b)));
        }
    }
}
