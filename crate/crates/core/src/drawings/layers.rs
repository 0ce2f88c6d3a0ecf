use num_bigint::BigUint;

use crate::error::{Error, Result};

/// `(i, d)`: a layer that takes `i` of its eight points from the upper
/// chain can be drawn in `d` ways.
pub const LAYER_MULTIPLICITY: [(usize, u32); 5] = [(2, 1), (3, 2), (4, 3), (5, 2), (6, 1)];

/// Drawings of the `k`-layer nested triangulation produced layer by layer
/// on the balanced double chain: weighted sequences of layer types that
/// take exactly `4k` upper points in total.
pub fn recursive_layer_count(k: usize) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "recursive_layer_count needs k >= 1".into(),
        ));
    }
    let target = 4 * k;
    // ways[s]: weighted sequences so far that consumed s upper points
    let mut ways = vec![BigUint::ZERO; target + 1];
    ways[0] = BigUint::from(1u32);
    for _ in 0..k {
        let mut next = vec![BigUint::ZERO; target + 1];
        for (s, w) in ways.iter().enumerate() {
            if *w == BigUint::ZERO {
                continue;
            }
            for (i, d) in LAYER_MULTIPLICITY {
                if s + i <= target {
                    next[s + i] += w * d;
                }
            }
        }
        ways = next;
    }
    Ok(std::mem::take(&mut ways[target]))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Coefficient of x^(2m) in (1 + x + x^2)^(2m), by repeated
    /// polynomial multiplication.
    fn central_trinomial(m: usize) -> BigUint {
        let mut poly = vec![BigUint::from(1u32)];
        for _ in 0..2 * m {
            let mut next = vec![BigUint::ZERO; poly.len() + 2];
            for (i, c) in poly.iter().enumerate() {
                for j in 0..3 {
                    next[i + j] += c;
                }
            }
            poly = next;
        }
        poly[2 * m].clone()
    }

    #[test]
    fn small_values() {
        assert_eq!(recursive_layer_count(1).unwrap(), BigUint::from(3u32));
        assert_eq!(recursive_layer_count(2).unwrap(), BigUint::from(19u32));
        assert_eq!(
            recursive_layer_count(8).unwrap(),
            BigUint::from(5_196_627u32)
        );
        assert!(recursive_layer_count(0).is_err());
    }

    #[test]
    fn equals_central_trinomial_coefficients() {
        for k in 1..40 {
            assert_eq!(
                recursive_layer_count(k).unwrap(),
                central_trinomial(k),
                "k={k}"
            );
        }
    }

    #[test]
    fn per_point_growth_is_increasing_and_bounded() {
        let bound = 3f64.powf(0.25);
        let mut prev = 0.0;
        for k in 1..=64 {
            let c = recursive_layer_count(k).unwrap();
            let g = (crate::bounds::log2_big(&c) / (8 * k) as f64).exp2();
            assert!(g > prev && g < bound, "k={k} g={g}");
            prev = g;
        }
    }
}
