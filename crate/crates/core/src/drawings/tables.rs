//! Precomputed geometric predicates over a point set, packed as bitsets.

use crate::geometry::{orient, segments_cross, strictly_inside, Orientation};
use crate::pointsets::PointSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Crossing and empty-triangle tables for one point set. Undirected pairs
/// are indexed `min * n + max`, darts `from * n + to`.
pub(crate) struct Tables {
    pub n: usize,
    cross: Vec<Bits>,
    empty_ccw: Vec<bool>,
}

impl Tables {
    pub fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let pts = ps.points();
        let mut cross = vec![Bits::zeros(n * n); n * n];
        for a in 0..n {
            for b in a + 1..n {
                for c in 0..n {
                    for d in c + 1..n {
                        if segments_cross(pts[a], pts[b], pts[c], pts[d]) {
                            cross[a * n + b].set(c * n + d);
                        }
                    }
                }
            }
        }
        let mut empty_ccw = vec![false; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b
                        || b == c
                        || a == c
                        || orient(pts[a], pts[b], pts[c]) != Orientation::Ccw
                    {
                        continue;
                    }
                    let empty = (0..n)
                        .filter(|&q| q != a && q != b && q != c)
                        .all(|q| !strictly_inside(pts[a], pts[b], pts[c], pts[q]));
                    empty_ccw[(a * n + b) * n + c] = empty;
                }
            }
        }
        Tables {
            n,
            cross,
            empty_ccw,
        }
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a.min(b) * self.n + a.max(b)
    }

    #[inline]
    pub fn dart(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    /// Pairs whose segments cross the segment `a b`.
    #[inline]
    pub fn crossing(&self, a: usize, b: usize) -> &Bits {
        &self.cross[self.pair(a, b)]
    }

    /// `a, b, c` is a CCW triangle with no point of the set inside.
    #[inline]
    pub fn empty_ccw(&self, a: usize, b: usize, c: usize) -> bool {
        self.empty_ccw[(a * self.n + b) * self.n + c]
    }

    pub fn pairs_of(&self, bits: &Bits) -> Vec<(usize, usize)> {
        bits.ones().map(|i| (i / self.n, i % self.n)).collect()
    }
}
