use alloc::format;
use alloc::vec::Vec;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Drawing, PartiteSignature};
use crate::error::{Error, Result};
use crate::exact_geom::{last_point_in_general_position, ratio, rational, Point, PointSequence, Rational};

const ATTEMPTS_PER_POINT: usize = 10_000;

/// `count` seeded random integer points in `[0, coord_bound]^dim`, no `dim+1`
/// of them on a hyperplane. Points are resampled one at a time until the
/// newest point keeps the sequence in general position.
pub fn random_points(dim: usize, count: usize, seed: u64, coord_bound: u64) -> Result<PointSequence> {
    if (coord_bound as u128) + 1 < count as u128 {
        return Err(Error::Precondition(format!(
            "coord_bound {coord_bound} is below the vertex count {count}"
        )));
    }
    let bound = i64::try_from(coord_bound).map_err(|_| Error::Precondition(format!("coord_bound {coord_bound} too large")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(count);
    for vertex in 0..count {
        let mut placed = false;
        for _ in 0..ATTEMPTS_PER_POINT {
            points.push(Point::new((0..dim).map(|_| rational(rng.random_range(0..=bound))).collect()));
            if last_point_in_general_position(&points, dim) {
                placed = true;
                break;
            }
            points.pop();
        }
        if !placed {
            return Err(Error::GeneralPositionUnreachable { vertex, attempts: ATTEMPTS_PER_POINT });
        }
    }
    PointSequence::new(dim, points)
}

/// Seeded random drawing with vertices listed part by part.
pub fn random_drawing(signature: &PartiteSignature, seed: u64, coord_bound: u64) -> Result<Drawing> {
    let points = random_points(signature.d(), signature.total_vertices(), seed, coord_bound)?;
    let labels = signature
        .part_sizes()
        .iter()
        .enumerate()
        .flat_map(|(part, &size)| core::iter::repeat_n(part, size))
        .collect();
    Drawing::new_unchecked(signature.clone(), points, labels)
}

/// Two-layer drawing of `K_{n,n}`: part 0 near `y = 0`, part 1 near `y = 1`.
///
/// The layers are bent onto parabolas `y = ε i²` and `y = 1 − ε j²` with
/// `ε = 2^-20`, which breaks every collinearity while keeping the crossing
/// pattern of the straight layers: exactly `C(n,2)²` crossings.
pub fn two_layer_bipartite(n: usize) -> Result<Drawing> {
    if n < 2 {
        return Err(Error::Precondition(format!("two-layer drawing needs n >= 2, got {n}")));
    }
    let eps = ratio(1, 1 << 20);
    let mut points = Vec::with_capacity(2 * n);
    for i in 0..n as i64 {
        points.push(Point::new(alloc::vec![rational(i), &eps * rational(i * i)]));
    }
    for j in 0..n as i64 {
        points.push(Point::new(alloc::vec![rational(j), Rational::one() - &eps * rational(j * j)]));
    }
    let labels = (0..2 * n).map(|v| v / n).collect();
    Drawing::new(PartiteSignature::balanced(2, n)?, PointSequence::new(2, points)?, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::is_general_position;

    #[test]
    fn seeded_generation_is_deterministic() {
        let sig = PartiteSignature::balanced(3, 3).unwrap();
        let a = random_drawing(&sig, 7, 1_000_000).unwrap();
        let b = random_drawing(&sig, 7, 1_000_000).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_drawing(&sig, 8, 1_000_000).unwrap());
        assert_eq!(a.vertices().len(), 9);
        is_general_position(a.vertices()).unwrap();
    }

    #[test]
    fn bound_below_vertex_count_is_rejected() {
        assert!(matches!(random_points(2, 5, 0, 3), Err(Error::Precondition(_))));
        random_points(2, 5, 0, 4).unwrap();
    }

    #[test]
    fn two_layer_is_in_general_position() {
        for n in 2..=6 {
            let d = two_layer_bipartite(n).unwrap();
            assert_eq!(d.vertices().len(), 2 * n);
        }
        assert!(two_layer_bipartite(1).is_err());
    }
}
