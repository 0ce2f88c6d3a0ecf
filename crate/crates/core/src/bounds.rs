//! Entropy bounds for the layer recursion: the per-point growth of a
//! layer-type profile, and its maximization under a linear balance
//! constraint.

use std::f64::consts::LN_2;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;

/// Log base 2 of `3`, the per-layer weight of the middle layer type.
fn log2_3() -> f64 {
    3f64.log2()
}

/// Linear coefficient of each layer type in `8 log2 g`: the log of its
/// multiplicity `(1, 2, 3, 2, 1)`.
fn coefficients() -> [f64; 5] {
    [0.0, 1.0, log2_3(), 1.0, 0.0]
}

/// Fractions `(α2, ..., α6)` of layers taking 2 to 6 upper points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AlphaVector([f64; 5]);

impl AlphaVector {
    pub fn new(alpha: [f64; 5]) -> Result<Self> {
        check_distribution(&alpha)?;
        Ok(AlphaVector(alpha))
    }

    pub fn as_array(&self) -> [f64; 5] {
        self.0
    }
}

fn check_distribution(alpha: &[f64]) -> Result<()> {
    if let Some(a) = alpha.iter().find(|a| a.is_nan() || **a < 0.0) {
        return Err(Error::InvalidAlpha(format!(
            "weight {a} is negative or not a number"
        )));
    }
    let sum: f64 = alpha.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidAlpha(format!("weights sum to {sum}")));
    }
    Ok(())
}

/// Which linear identity the profile must satisfy besides summing to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `2 α2 + 3 α3 = 5 α5 + 6 α6`.
    PaperEqn1,
    /// `2 α2 + α3 = α5 + 2 α6`: half of all points come from each chain.
    SymmetricBalance,
    None,
}

impl ConstraintKind {
    /// `w` with the constraint `w · α = 0`.
    pub fn weights(self) -> Option<[f64; 5]> {
        match self {
            ConstraintKind::PaperEqn1 => Some([2.0, 3.0, 0.0, -5.0, -6.0]),
            ConstraintKind::SymmetricBalance => Some([2.0, 1.0, 0.0, -1.0, -2.0]),
            ConstraintKind::None => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstraintKind::PaperEqn1 => "paper",
            ConstraintKind::SymmetricBalance => "balance",
            ConstraintKind::None => "none",
        }
    }
}

impl FromStr for ConstraintKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(ConstraintKind::PaperEqn1),
            "balance" => Ok(ConstraintKind::SymmetricBalance),
            "none" => Ok(ConstraintKind::None),
            _ => Err(Error::InvalidParameter(format!("unknown constraint {s:?}"))),
        }
    }
}

/// `-Σ αᵢ log2 αᵢ`, with `0 log 0 = 0`.
pub fn entropy(alpha: &[f64]) -> Result<f64> {
    check_distribution(alpha)?;
    Ok(entropy_unchecked(alpha))
}

fn entropy_unchecked(alpha: &[f64]) -> f64 {
    -alpha
        .iter()
        .filter(|&&a| a > 0.0)
        .map(|&a| a * a.log2())
        .sum::<f64>()
}

/// Log base 2 of a big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top: u64 = (x >> shift).try_into().expect("at most 64 bits remain");
    (top as f64).log2() + shift as f64
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Round `αᵢ n` to integer parts summing to `n`: round each, then move the
/// leftover one unit at a time to the parts with the largest rounding error.
fn parts(n: usize, alpha: &[f64]) -> Result<Vec<usize>> {
    let exact: Vec<f64> = alpha.iter().map(|&a| a * n as f64).collect();
    let mut p: Vec<i64> = exact.iter().map(|x| x.round() as i64).collect();
    let mut diff = n as i64 - p.iter().sum::<i64>();
    while diff != 0 {
        let step = diff.signum();
        let (i, _) = exact
            .iter()
            .zip(&p)
            .enumerate()
            .filter(|(_, (_, &pi))| pi + step >= 0)
            .map(|(i, (x, &pi))| (i, (x - pi as f64) * step as f64))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::InvalidAlpha("cannot repair rounded parts".into()))?;
        p[i] += step;
        diff -= step;
    }
    if p.iter().sum::<i64>() != n as i64 || p.iter().any(|&x| x < 0) {
        return Err(Error::InvalidAlpha("rounded parts do not sum to n".into()));
    }
    Ok(p.into_iter().map(|x| x as usize).collect())
}

/// `log2(multinomial(n; round(αᵢ n))) / n`, computed exactly.
pub fn multinomial_rate_check(n: usize, alpha: &[f64]) -> Result<f64> {
    check_distribution(alpha)?;
    if n < alpha.len() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is smaller than the {} parts",
            alpha.len()
        )));
    }
    let p = parts(n, alpha)?;
    let den = p
        .iter()
        .fold(BigUint::from(1u32), |acc, &k| acc * factorial(k));
    let m = factorial(n) / den;
    Ok(log2_big(&m) / n as f64)
}

/// `8 log2 g(α) = α3 + α5 + α4 log2 3 + H(α)`.
fn log_growth(alpha: &[f64; 5]) -> f64 {
    let c = coefficients();
    (0..5).map(|i| c[i] * alpha[i]).sum::<f64>() + entropy_unchecked(alpha)
}

/// Gradient of [`log_growth`] at an interior point.
pub fn log_growth_gradient(alpha: &[f64; 5]) -> [f64; 5] {
    let c = coefficients();
    std::array::from_fn(|i| c[i] - alpha[i].log2() - 1.0 / LN_2)
}

/// Per-point growth `2^((α3 + α5 + α4 log2 3 + H(α)) / 8)`.
pub fn growth_objective(alpha: &AlphaVector) -> f64 {
    (log_growth(&alpha.0) / 8.0).exp2()
}

/// Result of [`optimize_growth`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimum {
    pub constraint: &'static str,
    pub alpha: AlphaVector,
    pub growth: f64,
    /// `log2` of the growth.
    pub exponent: f64,
}

impl Optimum {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Orthonormal basis of the constraint rows, for projecting onto the
/// feasible directions.
fn constraint_basis(kind: ConstraintKind) -> Vec<[f64; 5]> {
    let mut rows = vec![[1.0; 5]];
    if let Some(w) = kind.weights() {
        rows.push(w);
    }
    let mut basis: Vec<[f64; 5]> = Vec::new();
    for mut r in rows {
        for b in &basis {
            let d = dot(&r, b);
            for i in 0..5 {
                r[i] -= d * b[i];
            }
        }
        let norm = dot(&r, &r).sqrt();
        basis.push(r.map(|x| x / norm));
    }
    basis
}

fn dot(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    (0..5).map(|i| a[i] * b[i]).sum()
}

fn project(v: [f64; 5], basis: &[[f64; 5]]) -> [f64; 5] {
    let mut v = v;
    for b in basis {
        let d = dot(&v, b);
        for i in 0..5 {
            v[i] -= d * b[i];
        }
    }
    v
}

/// Feasible points of a coarse grid: free coordinates on the grid, the
/// last one or two coordinates solved from the equality constraints.
fn grid_start(kind: ConstraintKind, steps: usize) -> [f64; 5] {
    let h = 1.0 / steps as f64;
    let mut best = ([0.2; 5], f64::NEG_INFINITY);
    let mut consider = |a: [f64; 5]| {
        if a.iter().all(|&x| x > 0.0) {
            let f = log_growth(&a);
            if f > best.1 {
                best = (a, f);
            }
        }
    };
    match kind.weights() {
        None => {
            for i in 1..steps {
                for j in 1..steps - i {
                    for k in 1..steps - i - j {
                        for l in 1..steps - i - j - k {
                            let a = [i, j, k, l].map(|x| x as f64 * h);
                            consider([a[0], a[1], a[2], a[3], 1.0 - a.iter().sum::<f64>()]);
                        }
                    }
                }
            }
        }
        Some(w) => {
            // Solve  x + y = 1 - s,  w3 x + w4 y = -(w0 a0 + w1 a1 + w2 a2).
            for i in 1..steps {
                for j in 1..steps - i {
                    for k in 1..steps - i - j {
                        let a = [i, j, k].map(|x| x as f64 * h);
                        let s = 1.0 - a.iter().sum::<f64>();
                        let r = -(w[0] * a[0] + w[1] * a[1] + w[2] * a[2]);
                        let det = w[4] - w[3];
                        let y = (r - w[3] * s) / det;
                        consider([a[0], a[1], a[2], s - y, y]);
                    }
                }
            }
        }
    }
    best.0
}

/// Maximize the growth over profiles satisfying `kind`. A grid search
/// seeds projected gradient ascent, which stops once the projected
/// gradient of `8 log2 g` is below `tolerance`.
pub fn optimize_growth(kind: ConstraintKind, tolerance: f64) -> Result<Optimum> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let basis = constraint_basis(kind);
    let mut a = grid_start(kind, 40);
    for _ in 0..100_000 {
        let d = project(log_growth_gradient(&a), &basis);
        if dot(&d, &d).sqrt() < tolerance {
            break;
        }
        // The Hessian is diag(-1 / (αᵢ ln 2)), so a step of min αᵢ ln 2
        // stays within the local curvature; halve it if it would leave
        // the positive orthant.
        let mut s = 0.9 * a.iter().copied().fold(f64::INFINITY, f64::min) * LN_2;
        let mut cand: [f64; 5] = std::array::from_fn(|i| a[i] + s * d[i]);
        while cand.iter().any(|&x| x <= 0.0) {
            s *= 0.5;
            cand = std::array::from_fn(|i| a[i] + s * d[i]);
        }
        a = cand;
    }
    // Remove rounding drift from the sum.
    let sum: f64 = a.iter().sum();
    let a = a.map(|x| x / sum);
    let growth = (log_growth(&a) / 8.0).exp2();
    Ok(Optimum {
        constraint: kind.name(),
        alpha: AlphaVector::new(a)?,
        growth,
        exponent: growth.log2(),
    })
}
