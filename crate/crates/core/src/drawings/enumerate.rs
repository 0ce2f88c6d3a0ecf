use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use super::tables::{Bits, Tables};
use super::{AngularOrder, GeomTriangulation, SearchConfig};
use crate::error::{Error, Result};
use crate::pointsets::PointSet;

/// Partial triangulation: the edges so far, and the darts whose left side
/// is still uncovered.
#[derive(Clone)]
struct State {
    edges: Bits,
    open: Bits,
}

enum Step {
    Leaf,
    Children(Vec<State>),
}

fn start(t: &Tables, hull: &[usize]) -> State {
    let n = t.n;
    let mut s = State {
        edges: Bits::zeros(n * n),
        open: Bits::zeros(n * n),
    };
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        s.edges.set(t.pair(a, b));
        s.open.set(t.dart(a, b));
    }
    s
}

/// Cover the left side of the smallest open dart with every admissible
/// triangle. Any empty triangle whose new sides cross nothing extends to a
/// full triangulation, so the search has no dead ends, and distinct apexes
/// give distinct triangulations.
fn step(t: &Tables, s: &State) -> Step {
    let n = t.n;
    let Some(d) = s.open.first() else {
        return Step::Leaf;
    };
    let (a, b) = (d / n, d % n);
    let mut children = Vec::new();
    'apex: for p in 0..n {
        if !t.empty_ccw(a, b, p) {
            continue;
        }
        for (x, y) in [(b, p), (p, a)] {
            if s.edges.get(t.pair(x, y)) {
                if !s.open.get(t.dart(x, y)) {
                    continue 'apex;
                }
            } else if t.crossing(x, y).intersects(&s.edges) {
                continue 'apex;
            }
        }
        let mut c = s.clone();
        c.open.clear(d);
        for (x, y) in [(b, p), (p, a)] {
            if c.edges.get(t.pair(x, y)) {
                c.open.clear(t.dart(x, y));
            } else {
                c.edges.set(t.pair(x, y));
                c.open.set(t.dart(y, x));
            }
        }
        children.push(c);
    }
    Step::Children(children)
}

struct Budget {
    cap: u64,
    seen: AtomicU64,
    blown: AtomicBool,
}

impl Budget {
    fn take(&self) -> bool {
        if self.seen.fetch_add(1, Ordering::Relaxed) >= self.cap {
            self.blown.store(true, Ordering::Relaxed);
        }
        !self.blown.load(Ordering::Relaxed)
    }
}

fn dfs<A>(
    t: &Tables,
    root: State,
    acc: &mut A,
    budget: &Budget,
    fold: &(impl Fn(&mut A, &Tables, &Bits) + ?Sized),
) {
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        match step(t, &s) {
            Step::Leaf => {
                if !budget.take() {
                    return;
                }
                fold(acc, t, &s.edges);
            }
            Step::Children(c) => stack.extend(c),
        }
    }
}

/// Fold over every triangulation of `ps`, handing each one's edge set (as
/// pair bits) to `fold`. With `cfg.jobs > 1` the search tree is split
/// across a thread pool and partial results merged with `reduce`.
pub(crate) fn fold_triangulations<A, I, F, R>(
    ps: &PointSet,
    cfg: &SearchConfig,
    identity: I,
    fold: F,
    reduce: R,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &Tables, &Bits) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    cfg.check("points to triangulate", cfg.max_enumerate_n, ps.len())?;
    let hull = ps.hull()?;
    let t = Tables::new(ps);
    let budget = Budget {
        cap: cfg.cap,
        seen: AtomicU64::new(0),
        blown: AtomicBool::new(false),
    };
    let root = start(&t, &hull);
    let mut acc = identity();
    if cfg.jobs <= 1 {
        dfs(&t, root, &mut acc, &budget, &fold);
    } else {
        use rayon::prelude::*;
        let mut frontier = vec![root];
        while frontier.len() < 16 * cfg.jobs {
            let mut next = Vec::new();
            let mut grew = false;
            for s in frontier {
                match step(&t, &s) {
                    Step::Leaf => {
                        if budget.take() {
                            fold(&mut acc, &t, &s.edges);
                        }
                    }
                    Step::Children(c) => {
                        grew = true;
                        next.extend(c);
                    }
                }
            }
            frontier = next;
            if !grew {
                break;
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        let part = pool.install(|| {
            frontier
                .into_par_iter()
                .fold(&identity, |mut a, s| {
                    dfs(&t, s, &mut a, &budget, &fold);
                    a
                })
                .reduce(&identity, &reduce)
        });
        acc = reduce(acc, part);
    }
    if budget.blown.load(Ordering::Relaxed) {
        return Err(Error::CapExceeded(cfg.cap));
    }
    Ok(acc)
}

/// Every geometric triangulation of `ps`, each exactly once, sorted by
/// edge list.
pub fn enumerate_geometric_triangulations(
    ps: &PointSet,
    cfg: &SearchConfig,
) -> Result<Vec<GeomTriangulation>> {
    let shared = Arc::new(ps.clone());
    let order = AngularOrder::new(ps)?;
    let mut all = fold_triangulations(
        ps,
        cfg,
        Vec::new,
        |acc: &mut Vec<Vec<(usize, usize)>>, t, edges| acc.push(t.pairs_of(edges)),
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    all.sort_unstable();
    Ok(all
        .into_iter()
        .map(|e| GeomTriangulation::from_search(shared.clone(), e, &order))
        .collect())
}

/// Number of geometric triangulations of `ps`, without materializing them.
pub fn count_geometric_triangulations(ps: &PointSet, cfg: &SearchConfig) -> Result<u64> {
    fold_triangulations(ps, cfg, || 0u64, |acc, _, _| *acc += 1, |a, b| a + b)
}
