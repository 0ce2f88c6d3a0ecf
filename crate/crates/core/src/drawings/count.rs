use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::enumerate::fold_triangulations;
use super::tables::{Bits, Tables};
use super::{AngularOrder, GeomTriangulation, SearchConfig};
use crate::comb::CombTriangulation;
use crate::error::{Error, Result};
use crate::pointsets::PointSet;

/// How [`count_drawings`] searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Place the vertices of the triangulation one at a time, pruning
    /// crossings and non-empty or clockwise faces.
    Direct,
    /// Enumerate every triangulation of the point set and compare codes.
    Oracle,
}

fn check_sizes(t: &CombTriangulation, ps: &PointSet) -> Result<Vec<usize>> {
    if t.num_vertices() != ps.len() {
        return Err(Error::Mismatch(format!(
            "{} vertices but {} points",
            t.num_vertices(),
            ps.len()
        )));
    }
    let hull = ps.hull()?;
    if hull.len() != t.outer_face().len() {
        return Err(Error::Mismatch(format!(
            "outer face has {} vertices but the hull has {}",
            t.outer_face().len(),
            hull.len()
        )));
    }
    Ok(hull)
}

/// The distinct geometric triangulations of `ps` that are drawings of `t`,
/// sorted by edge list. Outer face vertex `i` of `t` is pinned to hull
/// vertex `i` (hull listed CCW from its lexicographically smallest point).
pub fn find_drawings(
    t: &CombTriangulation,
    ps: &PointSet,
    backend: Backend,
    cfg: &SearchConfig,
) -> Result<Vec<GeomTriangulation>> {
    check_sizes(t, ps)?;
    let order = AngularOrder::new(ps)?;
    let shared = Arc::new(ps.clone());
    let mut found: Vec<Vec<(usize, usize)>> = match backend {
        Backend::Direct => {
            let (tables, result) = direct(t, ps, cfg)?;
            result.drawings.iter().map(|b| tables.pairs_of(b)).collect()
        }
        Backend::Oracle => {
            let target = t.canonical_code();
            fold_triangulations(
                ps,
                cfg,
                Vec::new,
                |acc: &mut Vec<Vec<(usize, usize)>>, tables, edges| {
                    let pairs = tables.pairs_of(edges);
                    let comb = order
                        .to_comb(&pairs)
                        .expect("enumerated triangulation is valid");
                    if comb.canonical_code() == target {
                        acc.push(pairs);
                    }
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )?
        }
    };
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|e| GeomTriangulation::from_search(shared.clone(), e, &order))
        .collect())
}

/// Number of distinct drawings of `t` on `ps`.
pub fn count_drawings(
    t: &CombTriangulation,
    ps: &PointSet,
    backend: Backend,
    cfg: &SearchConfig,
) -> Result<u64> {
    Ok(find_drawings(t, ps, backend, cfg)?.len() as u64)
}

/// Number of boundary-fixing bijections from `t` onto triangulations of
/// `ps`. Each drawing is reached once per boundary-fixing automorphism.
pub fn count_mappings(t: &CombTriangulation, ps: &PointSet, cfg: &SearchConfig) -> Result<u64> {
    check_sizes(t, ps)?;
    Ok(direct(t, ps, cfg)?.1.mappings)
}

/// Rotation-preserving permutations of `t` that fix every outer-face
/// vertex. Candidates are generated from each dart as the image of the
/// root dart and kept when the relabeled triangulation has the same code.
pub fn boundary_automorphisms(t: &CombTriangulation) -> u64 {
    let outer = t.outer_face();
    let code = t.canonical_code();
    let mut count = 0;
    for u in 0..t.num_vertices() {
        for &w in t.rotation(u) {
            let Some(perm) = extend_dart_map(t, (outer[0], outer[1]), (u, w)) else {
                continue;
            };
            if outer.iter().any(|&v| perm[v] != v) {
                continue;
            }
            if t.relabel(&perm)
                .map(|r| r.canonical_code() == code)
                .unwrap_or(false)
            {
                count += 1;
            }
        }
    }
    count
}

/// The unique rotation-preserving map sending dart `from` to dart `to`, if
/// one exists.
fn extend_dart_map(
    t: &CombTriangulation,
    from: (usize, usize),
    to: (usize, usize),
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = t.num_vertices();
    let mut phi = vec![UNSET; n];
    let mut hit = vec![false; n];
    phi[from.0] = to.0;
    phi[from.1] = to.1;
    hit[to.0] = true;
    hit[to.1] = true;
    let mut done = vec![false; n];
    let mut queue = VecDeque::from([(from.0, from.1)]);
    while let Some((v, parent)) = queue.pop_front() {
        if done[v] {
            continue;
        }
        done[v] = true;
        let (rv, rw) = (t.rotation(v), t.rotation(phi[v]));
        if rv.len() != rw.len() {
            return None;
        }
        let sv = rv.iter().position(|&x| x == parent)?;
        let sw = rw.iter().position(|&x| x == phi[parent])?;
        for k in 0..rv.len() {
            let (a, b) = (rv[(sv + k) % rv.len()], rw[(sw + k) % rw.len()]);
            if phi[a] == UNSET {
                if hit[b] {
                    return None;
                }
                phi[a] = b;
                hit[b] = true;
            } else if phi[a] != b {
                return None;
            }
            if !done[a] {
                queue.push_back((a, v));
            }
        }
    }
    phi.iter().all(|&x| x != UNSET).then_some(phi)
}

#[derive(Default)]
struct DirectResult {
    mappings: u64,
    drawings: HashSet<Bits>,
}

impl DirectResult {
    fn merge(mut self, other: DirectResult) -> DirectResult {
        self.mappings += other.mappings;
        self.drawings.extend(other.drawings);
        self
    }
}

struct Plan {
    order: Vec<usize>,
    /// Placed neighbors of `order[k]` at the time it is placed.
    back: Vec<Vec<usize>>,
    /// Faces completed when `order[k]` is placed.
    faces: Vec<Vec<[usize; 3]>>,
}

fn plan(t: &CombTriangulation) -> Plan {
    let n = t.num_vertices();
    let mut placed = vec![false; n];
    for &v in t.outer_face() {
        placed[v] = true;
    }
    let mut order = Vec::new();
    let mut back = Vec::new();
    while order.len() + t.outer_face().len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                (
                    t.rotation(v).iter().filter(|&&w| placed[w]).count(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("an unplaced vertex remains");
        back.push(
            t.rotation(v)
                .iter()
                .copied()
                .filter(|&w| placed[w])
                .collect(),
        );
        placed[v] = true;
        order.push(v);
    }
    let mut step_of = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        step_of[v] = k;
    }
    let mut faces = vec![Vec::new(); order.len()];
    for f in t.faces() {
        if let Some(last) = f
            .iter()
            .filter(|&&v| step_of[v] != usize::MAX)
            .map(|&v| step_of[v])
            .max()
        {
            faces[last].push(*f);
        }
    }
    Plan { order, back, faces }
}

struct Search<'a> {
    tables: &'a Tables,
    plan: &'a Plan,
    cap: u64,
}

impl Search<'_> {
    fn run(
        &self,
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
        edges: &mut Bits,
        out: &mut DirectResult,
    ) -> Result<()> {
        if k == self.plan.order.len() {
            out.mappings += 1;
            if out.mappings > self.cap {
                return Err(Error::CapExceeded(self.cap));
            }
            out.drawings.insert(edges.clone());
            return Ok(());
        }
        for q in 0..used.len() {
            if used[q] || !self.admissible(k, q, map, edges) {
                continue;
            }
            self.place(k, q, map, used, edges);
            let r = self.run(k + 1, map, used, edges, out);
            self.unplace(k, q, map, used, edges);
            r?;
        }
        Ok(())
    }

    fn admissible(&self, k: usize, q: usize, map: &mut [usize], edges: &Bits) -> bool {
        let t = self.tables;
        if self.plan.back[k]
            .iter()
            .any(|&w| t.crossing(q, map[w]).intersects(edges))
        {
            return false;
        }
        let v = self.plan.order[k];
        map[v] = q;
        let ok = self.plan.faces[k]
            .iter()
            .all(|f| t.empty_ccw(map[f[0]], map[f[1]], map[f[2]]));
        map[v] = usize::MAX;
        ok
    }

    fn place(&self, k: usize, q: usize, map: &mut [usize], used: &mut [bool], edges: &mut Bits) {
        map[self.plan.order[k]] = q;
        used[q] = true;
        for &w in &self.plan.back[k] {
            edges.set(self.tables.pair(q, map[w]));
        }
    }

    fn unplace(&self, k: usize, q: usize, map: &mut [usize], used: &mut [bool], edges: &mut Bits) {
        for &w in &self.plan.back[k] {
            edges.clear(self.tables.pair(q, map[w]));
        }
        map[self.plan.order[k]] = usize::MAX;
        used[q] = false;
    }
}

fn direct(
    t: &CombTriangulation,
    ps: &PointSet,
    cfg: &SearchConfig,
) -> Result<(Tables, DirectResult)> {
    cfg.check("points to place", cfg.max_direct_n, ps.len())?;
    let hull = check_sizes(t, ps)?;
    let tables = Tables::new(ps);
    let n = ps.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (i, &v) in t.outer_face().iter().enumerate() {
        map[v] = hull[i];
        used[hull[i]] = true;
    }
    // Edges and faces among outer vertices are fixed before the search.
    let mut edges = Bits::zeros(n * n);
    for (a, b) in t.edges() {
        if t.is_outer(a) && t.is_outer(b) {
            let (p, q) = (map[a], map[b]);
            if tables.crossing(p, q).intersects(&edges) {
                return Ok((tables, DirectResult::default()));
            }
            edges.set(tables.pair(p, q));
        }
    }
    for f in t.faces() {
        if f.iter().all(|&v| t.is_outer(v)) && !tables.empty_ccw(map[f[0]], map[f[1]], map[f[2]]) {
            return Ok((tables, DirectResult::default()));
        }
    }
    let plan = plan(t);
    let search = Search {
        tables: &tables,
        plan: &plan,
        cap: cfg.cap,
    };
    let result = if cfg.jobs <= 1 || plan.order.is_empty() {
        let mut out = DirectResult::default();
        search.run(0, &mut map, &mut used, &mut edges, &mut out)?;
        out
    } else {
        use rayon::prelude::*;
        let first: Vec<usize> = (0..n)
            .filter(|&q| !used[q] && search.admissible(0, q, &mut map.clone(), &edges))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            first
                .par_iter()
                .map(|&q| {
                    let (mut map, mut used, mut edges) = (map.clone(), used.clone(), edges.clone());
                    let mut out = DirectResult::default();
                    search.place(0, q, &mut map, &mut used, &mut edges);
                    search.run(1, &mut map, &mut used, &mut edges, &mut out)?;
                    Ok::<_, Error>(out)
                })
                .try_reduce(DirectResult::default, |a, b| Ok(a.merge(b)))
        })?
    };
    Ok((tables, result))
}

/// Group every triangulation of `ps` by its combinatorial class. Values
/// sum to the number of triangulations.
pub fn classify_drawings(ps: &PointSet, cfg: &SearchConfig) -> Result<BTreeMap<Vec<u8>, u64>> {
    let order = AngularOrder::new(ps)?;
    fold_triangulations(
        ps,
        cfg,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<u8>, u64>, tables, edges| {
            let comb = order
                .to_comb(&tables.pairs_of(edges))
                .expect("enumerated triangulation is valid");
            *acc.entry(comb.canonical_code()).or_default() += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    )
}

/// Hex SHA-256 of a canonical code.
pub fn code_hash(code: &[u8]) -> String {
    let digest = Sha256::digest(code);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        write!(s, "{b:02x}").unwrap();
    }
    s
}

/// `code_hash,multiplicity` rows, most frequent class first.
pub fn classify_csv(classes: &BTreeMap<Vec<u8>, u64>) -> String {
    let mut rows: Vec<(String, u64)> = classes.iter().map(|(c, &m)| (code_hash(c), m)).collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let mut out = String::from("code_hash,multiplicity\n");
    for (h, m) in rows {
        writeln!(out, "{h},{m}").unwrap();
    }
    out
}
