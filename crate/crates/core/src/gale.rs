//! Gale transforms and the Radon partitions they induce.
//!
//! For a sequence `A = <a_1, ..., a_m>` affinely spanning R^d, the Gale
//! transform is read off a basis of the null space of the homogenized
//! coordinate matrix `M(A)`: the j-th Gale vector collects the j-th entry of
//! every basis vector. Any linear functional `α` on Gale space pulls back to
//! the affine dependence `μ_j = α·g_j`, so a linear hyperplane with at least
//! two Gale vectors strictly on each side yields two point sets whose convex
//! hulls meet. [`radon_certificate`] turns that into explicit convex
//! coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_geom::{null_space_basis, Matrix, Point, PointSequence, Rational, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDiagram {
    source: PointSequence,
    basis: Matrix,
    vectors: Vec<Point>,
}

impl GaleDiagram {
    pub fn source(&self) -> &PointSequence {
        &self.source
    }

    /// Null-space basis of `M(A)`, one basis vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> &[Point] {
        &self.vectors
    }

    /// Dimension of the Gale space, `m - d - 1`.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The linear dependence `μ_j = α·g_j` of the source points.
    pub fn dependence(&self, normal: &[Rational]) -> Vec<Rational> {
        self.vectors.iter().map(|g| g.dot(normal)).collect()
    }
}

pub fn gale_transform(points: &PointSequence) -> Result<GaleDiagram> {
    let d = points.dim();
    let m = points.homogeneous_matrix();
    if points.len() < d + 1 || m.rank() != d + 1 {
        return Err(Error::NotSpanning(d));
    }
    let basis = Matrix::new(points.len(), null_space_basis(&m))?;
    let vectors = (0..points.len()).map(|j| Point::new(basis.column(j))).collect();
    Ok(GaleDiagram { source: points.clone(), basis, vectors })
}

/// Split of Gale indices by the sign of `normal·g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspacePartition {
    pub normal: Point,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub zero: Vec<usize>,
}

pub fn partition_by_hyperplane(diagram: &GaleDiagram, normal: &[Rational]) -> Result<HalfspacePartition> {
    partition_vectors(diagram.vectors(), normal)
}

/// [`partition_by_hyperplane`] over a bare vector sequence.
pub fn partition_vectors(vectors: &[Point], normal: &[Rational]) -> Result<HalfspacePartition> {
    if let Some(g) = vectors.iter().find(|g| g.dim() != normal.len()) {
        return Err(Error::Dimension { expected: g.dim(), found: normal.len() });
    }
    if normal.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("zero hyperplane normal"));
    }
    let mut partition = HalfspacePartition {
        normal: Point::new(normal.to_vec()),
        plus: Vec::new(),
        minus: Vec::new(),
        zero: Vec::new(),
    };
    for (j, g) in vectors.iter().enumerate() {
        match Sign::of(&g.dot(normal)) {
            Sign::Positive => partition.plus.push(j),
            Sign::Negative => partition.minus.push(j),
            Sign::Zero => partition.zero.push(j),
        }
    }
    Ok(partition)
}

/// Two convex combinations of disjoint point sets that land on the same point.
///
/// Indices refer to the point sequence the certificate was built against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionCertificate {
    pub coeffs_a: BTreeMap<usize, Rational>,
    pub coeffs_b: BTreeMap<usize, Rational>,
    pub common_point: Point,
}

impl IntersectionCertificate {
    /// Normalizes positive weights on each side into convex coefficients and
    /// computes the common point from side `a`.
    pub fn from_weights(
        points: &PointSequence,
        weights_a: impl IntoIterator<Item = (usize, Rational)>,
        weights_b: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self> {
        let normalize = |weights: BTreeMap<usize, Rational>| -> BTreeMap<usize, Rational> {
            let total = weights.values().fold(Rational::zero(), |acc, w| acc + w);
            weights.into_iter().map(|(i, w)| (i, w / &total)).collect()
        };
        let coeffs_a = normalize(weights_a.into_iter().collect());
        let coeffs_b = normalize(weights_b.into_iter().collect());
        let common_point = combination(points, &coeffs_a)?;
        Ok(IntersectionCertificate { coeffs_a, coeffs_b, common_point })
    }

    pub fn side_a(&self) -> Vec<usize> {
        self.coeffs_a.keys().copied().collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        self.coeffs_b.keys().copied().collect()
    }

    /// Exact check of every certificate invariant against `points`.
    pub fn verify(&self, points: &PointSequence) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::Verification(msg));
        if self.coeffs_a.is_empty() || self.coeffs_b.is_empty() {
            return fail("empty side".into());
        }
        if let Some(i) = self.coeffs_a.keys().find(|i| self.coeffs_b.contains_key(i)) {
            return fail(format!("index {i} on both sides"));
        }
        for coeffs in [&self.coeffs_a, &self.coeffs_b] {
            if let Some((i, c)) = coeffs.iter().find(|(_, c)| !c.is_positive()) {
                return fail(format!("coefficient of vertex {i} is {c}, not positive"));
            }
            let total = coeffs.values().fold(Rational::zero(), |acc, c| acc + c);
            if !total.is_one() {
                return fail(format!("coefficients sum to {total}"));
            }
            let p = combination(points, coeffs)?;
            if p != self.common_point {
                return fail(format!("convex combination gives {p}, certificate claims {}", self.common_point));
            }
        }
        Ok(())
    }
}

fn combination(points: &PointSequence, coeffs: &BTreeMap<usize, Rational>) -> Result<Point> {
    let mut acc = Point::zero(points.dim());
    for (&i, c) in coeffs {
        let p = points
            .get(i)
            .ok_or_else(|| Error::Verification(format!("vertex {i} out of range 0..{}", points.len())))?;
        acc.add_scaled(c, p);
    }
    Ok(acc)
}

/// Convex coefficients for `Conv(A_plus) ∩ Conv(A_minus)` from a hyperplane
/// partition of the Gale diagram. Indices on the hyperplane get weight zero
/// and are left out. The certificate is re-verified before it is returned.
pub fn radon_certificate(diagram: &GaleDiagram, partition: &HalfspacePartition) -> Result<IntersectionCertificate> {
    if partition.plus.len() < 2 || partition.minus.len() < 2 {
        return Err(Error::PartitionTooSmall { plus: partition.plus.len(), minus: partition.minus.len() });
    }
    let mu = diagram.dependence(&partition.normal);
    for &i in &partition.plus {
        if !mu[i].is_positive() {
            return Err(Error::Verification(format!("index {i} is not in the positive half-space")));
        }
    }
    for &j in &partition.minus {
        if !mu[j].is_negative() {
            return Err(Error::Verification(format!("index {j} is not in the negative half-space")));
        }
    }
    let certificate = IntersectionCertificate::from_weights(
        diagram.source(),
        partition.plus.iter().map(|&i| (i, mu[i].clone())),
        partition.minus.iter().map(|&j| (j, -mu[j].clone())),
    )?;
    certificate.verify(diagram.source())?;
    Ok(certificate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{hyperplane_through_origin, linearly_independent, ratio, rational};
    use crate::hypergraph::random_points;
    use alloc::vec;
    use itertools::Itertools;

    fn gale_of(dim: usize, raw: &[&[i64]]) -> GaleDiagram {
        gale_transform(&PointSequence::from_ints(dim, raw).unwrap()).unwrap()
    }

    fn column(v: &[i64]) -> Vec<Point> {
        v.iter().map(|&x| Point::from_ints(&[x])).collect()
    }

    #[test]
    fn gale_examples() {
        assert_eq!(gale_of(1, &[&[0], &[1], &[2]]).vectors(), column(&[1, -2, 1]).as_slice());
        let square = gale_of(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(square.vectors(), column(&[1, -1, 1, -1]).as_slice());

        let simplex = gale_of(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(simplex.dim(), 0);
        assert_eq!(simplex.len(), 3);
        assert!(simplex.vectors().iter().all(|g| g.dim() == 0));
    }

    #[test]
    fn gale_rejects_non_spanning() {
        let line = PointSequence::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]).unwrap();
        assert_eq!(gale_transform(&line), Err(Error::NotSpanning(2)));
        let short = PointSequence::from_ints(2, &[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(gale_transform(&short), Err(Error::NotSpanning(2)));
    }

    #[test]
    fn partition_examples() {
        let line = gale_of(1, &[&[0], &[1], &[2]]);
        let p = partition_by_hyperplane(&line, &[rational(1)]).unwrap();
        assert_eq!((p.plus, p.minus, p.zero), (vec![0, 2], vec![1], vec![]));

        let square = gale_of(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let p = partition_by_hyperplane(&square, &[rational(1)]).unwrap();
        assert_eq!((p.plus, p.minus, p.zero), (vec![0, 2], vec![1, 3], vec![]));

        assert_eq!(
            partition_by_hyperplane(&square, &[rational(0)]),
            Err(Error::Degenerate("zero hyperplane normal"))
        );
    }

    #[test]
    fn hyperplane_through_three_gale_vectors() {
        // d = 3, m = 8: Gale space is R^4 and at most 3 vectors lie on any
        // linear hyperplane.
        let points = random_points(3, 8, 11, 1000).unwrap();
        let diagram = gale_transform(&points).unwrap();
        let spanning: Vec<&[Rational]> = [0, 3, 5].iter().map(|&j| &diagram.vectors()[j][..]).collect();
        let normal = hyperplane_through_origin(&spanning).unwrap();
        let p = partition_by_hyperplane(&diagram, &normal).unwrap();
        assert_eq!(p.zero, vec![0, 3, 5]);
        for &j in &p.zero {
            assert!(normal.dot(&diagram.vectors()[j]).is_zero());
        }
    }

    #[test]
    fn radon_on_a_line() {
        // 1-D Radon partition by hand: {0,3} vs {1,2} meet at 3/2.
        let line = gale_of(1, &[&[0], &[1], &[2], &[3]]);
        let p = partition_by_hyperplane(&line, &[rational(-1), rational(1)]).unwrap();
        assert_eq!((p.plus.clone(), p.minus.clone()), (vec![0, 3], vec![1, 2]));
        let cert = radon_certificate(&line, &p).unwrap();
        assert_eq!(cert.common_point, Point::new(vec![ratio(3, 2)]));
        assert!(cert.common_point[0] > rational(1) && cert.common_point[0] < rational(2));
    }

    #[test]
    fn radon_square_diagonals() {
        let square = gale_of(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let p = partition_by_hyperplane(&square, &[rational(1)]).unwrap();
        let cert = radon_certificate(&square, &p).unwrap();
        assert_eq!(cert.common_point, Point::new(vec![ratio(1, 2), ratio(1, 2)]));
        assert!(cert.coeffs_a.values().chain(cert.coeffs_b.values()).all(|c| *c == ratio(1, 2)));
        assert_eq!(cert.side_a(), vec![0, 2]);
        assert_eq!(cert.side_b(), vec![1, 3]);
    }

    #[test]
    fn radon_requires_two_per_side() {
        let line = gale_of(1, &[&[0], &[1], &[2]]);
        let p = partition_by_hyperplane(&line, &[rational(1)]).unwrap();
        assert_eq!(radon_certificate(&line, &p), Err(Error::PartitionTooSmall { plus: 2, minus: 1 }));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let square = gale_of(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let p = partition_by_hyperplane(&square, &[rational(1)]).unwrap();
        let mut cert = radon_certificate(&square, &p).unwrap();
        cert.coeffs_a.insert(0, ratio(1, 3));
        cert.coeffs_a.insert(2, ratio(2, 3));
        assert!(matches!(cert.verify(square.source()), Err(Error::Verification(_))));
    }

    #[test]
    fn gale_identities_and_spanning_for_general_position() {
        for (d, seed) in [(2usize, 1u64), (3, 2), (4, 3)] {
            let points = random_points(d, 2 * d + 2, seed, 500).unwrap();
            let diagram = gale_transform(&points).unwrap();
            let m = points.homogeneous_matrix();
            for row in diagram.basis().row_vectors() {
                assert!(m.mul_vec(row).iter().all(Zero::is_zero));
            }
            let mut sum = Point::zero(diagram.dim());
            for g in diagram.vectors() {
                sum.add_scaled(&Rational::one(), g);
            }
            assert!(sum.is_zero());
            for subset in (0..diagram.len()).combinations(d + 1) {
                let vs: Vec<&[Rational]> = subset.iter().map(|&j| &diagram.vectors()[j][..]).collect();
                assert!(linearly_independent(&vs), "{subset:?}");
            }
        }
    }
}
