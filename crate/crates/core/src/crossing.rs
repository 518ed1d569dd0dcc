//! Exact simplex–simplex crossing tests and the extension of small crossings
//! to crossings of full rainbow hyperedges.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_geom::{affinely_independent, rational, Point, PointSequence, Rational};
use crate::gale::IntersectionCertificate;
use crate::hypergraph::Drawing;
use crate::lp::{LinearProgram, LpOutcome};

/// Two vertex-disjoint simplices sharing a relative-interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub certificate: IntersectionCertificate,
}

impl CrossingPair {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>, certificate: IntersectionCertificate) -> Self {
        left.sort_unstable();
        right.sort_unstable();
        CrossingPair { left, right, certificate }
    }

    /// Certificate check plus agreement between the certificate's sides and
    /// the pair.
    pub fn verify(&self, points: &PointSequence) -> Result<()> {
        if self.certificate.side_a() != self.left || self.certificate.side_b() != self.right {
            return Err(Error::Verification(String::from("certificate sides do not match the pair")));
        }
        self.certificate.verify(points)
    }
}

fn check_sides(points: &PointSequence, u: &[usize], w: &[usize]) -> Result<()> {
    for &i in u.iter().chain(w) {
        if i >= points.len() {
            return Err(Error::BadEdge(format!("vertex {i} out of range 0..{}", points.len())));
        }
    }
    if let Some(&i) = u.iter().find(|i| w.contains(i)) {
        return Err(Error::NotDisjoint(i));
    }
    for side in [u, w] {
        let pts: Vec<&Point> = side.iter().filter_map(|&i| points.get(i)).collect();
        if side.is_empty() || !crate::all_distinct(side) || !affinely_independent(&pts) {
            return Err(Error::DegenerateSimplex(side.to_vec()));
        }
    }
    Ok(())
}

/// Decides whether `Conv(U)` and `Conv(W)` share a point of their relative
/// interiors.
///
/// Solves `max t` subject to `Σ λ_i a_i = Σ μ_j a_j`, `Σ λ = Σ μ = 1`,
/// `λ_i ≥ t`, `μ_j ≥ t`, with `t ≥ 0`. For affinely independent sides a
/// point lies in the relative interior iff all its barycentric coordinates
/// are positive, so the simplices cross iff the optimum is positive. The
/// optimal `λ`, `μ` become the certificate.
///
/// The LP is stated in the shifted variables `σ = λ − t`, `τ = μ − t`, which
/// keeps it at `d + 2` rows.
pub fn relint_intersection(points: &PointSequence, u: &[usize], w: &[usize]) -> Result<Option<IntersectionCertificate>> {
    check_sides(points, u, w)?;
    let (nu, nw) = (u.len(), w.len());
    // Variables: σ (nu), τ (nw), then t.
    let sigma = |i: usize| i;
    let tau = |j: usize| nu + j;
    let t = nu + nw;
    let mut lp = LinearProgram::new(nu + nw + 1);

    for k in 0..points.dim() {
        let coord = |v: usize| &points.points()[v][k];
        let t_coeff = u.iter().map(|&v| coord(v)).fold(Rational::zero(), |acc, x| acc + x)
            - w.iter().map(|&v| coord(v)).fold(Rational::zero(), |acc, x| acc + x);
        let left = u.iter().enumerate().map(|(i, &v)| (sigma(i), coord(v).clone()));
        let right = w.iter().enumerate().map(|(j, &v)| (tau(j), -coord(v).clone()));
        lp.add_equality(left.chain(right).chain([(t, t_coeff)]), Rational::zero());
    }
    lp.add_equality((0..nu).map(|i| (sigma(i), Rational::one())).chain([(t, rational(nu as i64))]), Rational::one());
    lp.add_equality((0..nw).map(|j| (tau(j), Rational::one())).chain([(t, rational(nw as i64))]), Rational::one());
    lp.set_objective(t, Rational::one());

    match lp.maximize() {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::Verification(String::from("relative-interior LP reported unbounded"))),
        LpOutcome::Optimal { value, .. } if !value.is_positive() => Ok(None),
        LpOutcome::Optimal { x, value } => {
            let certificate = IntersectionCertificate::from_weights(
                points,
                u.iter().enumerate().map(|(i, &v)| (v, &x[sigma(i)] + &value)),
                w.iter().enumerate().map(|(j, &v)| (v, &x[tau(j)] + &value)),
            )?;
            certificate.verify(points)?;
            Ok(Some(certificate))
        }
    }
}

/// Whether two hyperedges of `drawing` cross. Hyperedges sharing a vertex
/// never cross.
pub fn crosses(drawing: &Drawing, e1: &[usize], e2: &[usize]) -> Result<bool> {
    for e in [e1, e2] {
        if !drawing.is_hyperedge(e) {
            return Err(Error::BadEdge(format!("{e:?} is not a hyperedge of signature {}", drawing.signature())));
        }
    }
    if e1.iter().any(|v| e2.contains(v)) {
        return Ok(false);
    }
    Ok(relint_intersection(drawing.vertices(), e1, e2)?.is_some())
}

/// All ways to complete a crossing `(U, W)` to a crossing pair of rainbow
/// hyperedges `U' ⊇ U`, `W' ⊇ W`.
///
/// Requires `2 ≤ |U|, |W| ≤ d`, `|U| + |W| ≥ d + 1` and at most one vertex per
/// part on each side. For every part a side is missing, each unused vertex of
/// that part is tried. Every completion is re-verified; a completion that
/// does not cross is reported as [`Error::TheoremViolated`].
///
/// Output is sorted by `(left, right)`.
pub fn extend_crossing(drawing: &Drawing, u: &[usize], w: &[usize]) -> Result<Vec<CrossingPair>> {
    let d = drawing.dim();
    let reject = |msg: String| Err(Error::NotExtendable(msg));
    if u.len() < 2 || w.len() < 2 || u.len() > d || w.len() > d {
        return reject(format!("side sizes {} and {} must lie in 2..={d}", u.len(), w.len()));
    }
    if u.len() + w.len() < d + 1 {
        return reject(format!("|U| + |W| = {} is below d + 1 = {}", u.len() + w.len(), d + 1));
    }
    let n = drawing.vertices().len();
    if let Some(&v) = u.iter().chain(w).find(|&&v| v >= n) {
        return reject(format!("vertex {v} out of range 0..{n}"));
    }
    let mut owner_u = vec![None; d];
    let mut owner_w = vec![None; d];
    for (side, owner) in [(u, &mut owner_u), (w, &mut owner_w)] {
        for &v in side {
            let part = drawing.labels()[v];
            if owner[part].replace(v).is_some() {
                return reject(format!("two vertices of part {part} on one side"));
            }
        }
    }
    if relint_intersection(drawing.vertices(), u, w)?.is_none() {
        return reject(String::from("input pair does not cross"));
    }

    // Per part: which vertex (if any) each side gains.
    let choices: Vec<Vec<(Option<usize>, Option<usize>)>> = drawing
        .parts()
        .iter()
        .enumerate()
        .map(|(p, members)| match (owner_u[p], owner_w[p]) {
            (Some(_), Some(_)) => vec![(None, None)],
            (Some(x), None) => members.iter().filter(|&&y| y != x).map(|&y| (None, Some(y))).collect(),
            (None, Some(y)) => members.iter().filter(|&&x| x != y).map(|&x| (Some(x), None)).collect(),
            (None, None) => members
                .iter()
                .flat_map(|&x| members.iter().filter(move |&&y| y != x).map(move |&y| (Some(x), Some(y))))
                .collect(),
        })
        .collect();

    let mut out = Vec::new();
    for combo in choices.into_iter().map(Vec::into_iter).multi_cartesian_product() {
        let mut left = u.to_vec();
        let mut right = w.to_vec();
        for (a, b) in combo {
            left.extend(a);
            right.extend(b);
        }
        left.sort_unstable();
        right.sort_unstable();
        match relint_intersection(drawing.vertices(), &left, &right)? {
            Some(certificate) => out.push(CrossingPair::new(left, right, certificate)),
            None => {
                return Err(Error::TheoremViolated(format!(
                    "extension {left:?} / {right:?} of crossing {u:?} / {w:?} does not cross"
                )))
            }
        }
    }
    out.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{orientation, ratio, Sign};
    use crate::hypergraph::{random_drawing, random_points, PartiteSignature};

    fn pts(dim: usize, raw: &[&[i64]]) -> PointSequence {
        PointSequence::from_ints(dim, raw).unwrap()
    }

    #[test]
    fn crossing_diagonals() {
        let p = pts(2, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0]]);
        let cert = relint_intersection(&p, &[0, 1], &[2, 3]).unwrap().unwrap();
        assert_eq!(cert.common_point, Point::from_ints(&[1, 1]));
        assert!(cert.coeffs_a.values().chain(cert.coeffs_b.values()).all(|c| *c == ratio(1, 2)));
    }

    #[test]
    fn disjoint_hulls_do_not_cross() {
        let p = pts(2, &[&[0, 0], &[1, 0], &[2, 1], &[3, 1]]);
        assert_eq!(relint_intersection(&p, &[0, 1], &[2, 3]).unwrap(), None);
    }

    #[test]
    fn touching_at_an_endpoint_is_not_a_crossing() {
        // (1,1) is an endpoint of the second segment and an interior point of
        // the first: the hulls meet but not in both relative interiors.
        let p = pts(2, &[&[0, 0], &[2, 2], &[1, 1], &[3, 0]]);
        assert_eq!(relint_intersection(&p, &[0, 1], &[2, 3]).unwrap(), None);
    }

    #[test]
    fn point_inside_triangle() {
        let p = pts(2, &[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]);
        let cert = relint_intersection(&p, &[0, 1, 2], &[3]).unwrap().unwrap();
        assert_eq!(cert.common_point, Point::from_ints(&[1, 1]));
    }

    #[test]
    fn error_paths() {
        let p = pts(2, &[&[0, 0], &[2, 2], &[0, 2], &[2, 0], &[1, 1]]);
        assert_eq!(relint_intersection(&p, &[0, 1], &[1, 2]), Err(Error::NotDisjoint(1)));
        assert_eq!(relint_intersection(&p, &[0, 1, 4], &[2, 3]), Err(Error::DegenerateSimplex(vec![0, 1, 4])));
        assert!(matches!(relint_intersection(&p, &[0, 9], &[2, 3]), Err(Error::BadEdge(_))));
    }

    #[test]
    fn lp_verdict_is_symmetric() {
        let p = random_points(3, 8, 5, 100).unwrap();
        for (u, w) in [(vec![0, 1, 2], vec![3, 4, 5]), (vec![0, 1], vec![2, 3, 4]), (vec![0, 6, 7], vec![1, 2, 3])] {
            let a = relint_intersection(&p, &u, &w).unwrap().is_some();
            let b = relint_intersection(&p, &w, &u).unwrap().is_some();
            assert_eq!(a, b);
        }
    }

    fn orientation_cross(p: &PointSequence) -> bool {
        let q = |i: usize| p.get(i).unwrap();
        let s = |a, b, c| orientation(&[q(a), q(b), q(c)]).unwrap().as_i8();
        s(0, 1, 2) * s(0, 1, 3) < 0 && s(2, 3, 0) * s(2, 3, 1) < 0
    }

    #[test]
    fn agrees_with_orientation_oracle_on_segments() {
        let mut seed = 0;
        let mut crossings = 0;
        for _ in 0..200 {
            let p = random_points(2, 4, seed, 20).unwrap();
            seed += 1;
            let lp = relint_intersection(&p, &[0, 1], &[2, 3]).unwrap().is_some();
            assert_eq!(lp, orientation_cross(&p), "seed {}", seed - 1);
            crossings += lp as usize;
        }
        assert!(crossings > 0);
    }

    fn quad_drawing() -> Drawing {
        let sig = PartiteSignature::balanced(2, 2).unwrap();
        Drawing::new(sig, pts(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]), vec![0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn crosses_on_hyperedges() {
        let d = quad_drawing();
        assert!(crosses(&d, &[0, 2], &[1, 3]).unwrap());
        assert!(!crosses(&d, &[0, 3], &[1, 2]).unwrap());
        assert!(!crosses(&d, &[0, 2], &[0, 3]).unwrap());
        assert!(matches!(crosses(&d, &[0, 1], &[2, 3]), Err(Error::BadEdge(_))));
        assert!(matches!(crosses(&d, &[0, 7], &[1, 3]), Err(Error::BadEdge(_))));
    }

    /// Orientation-only oracle: two triangles in general position in R^3
    /// cross iff an edge of one pierces the interior of the other.
    fn triangles_cross(p: &PointSequence, a: &[usize], b: &[usize]) -> bool {
        let q = |i: usize| p.get(i).unwrap();
        let o = |x: usize, y: usize, z: usize, w: usize| orientation(&[q(x), q(y), q(z), q(w)]).unwrap();
        let segment_through = |s: (usize, usize), t: &[usize]| {
            let side1 = o(t[0], t[1], t[2], s.0);
            let side2 = o(t[0], t[1], t[2], s.1);
            if side1 == side2 || side1 == Sign::Zero || side2 == Sign::Zero {
                return false;
            }
            let e1 = o(s.0, s.1, t[0], t[1]);
            let e2 = o(s.0, s.1, t[1], t[2]);
            let e3 = o(s.0, s.1, t[2], t[0]);
            e1 == e2 && e2 == e3
        };
        let edges = |t: &[usize]| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])];
        edges(a).iter().any(|&s| segment_through(s, b)) || edges(b).iter().any(|&s| segment_through(s, a))
    }

    #[test]
    fn crosses_matches_orientation_oracle_in_r3() {
        for seed in 0..10 {
            let sig: PartiteSignature = "1x3+2x2".parse().unwrap();
            let d = random_drawing(&sig, seed, 50).unwrap();
            let edges = d.hyperedges();
            for (i, e1) in edges.iter().enumerate() {
                for e2 in &edges[i + 1..] {
                    if e1.iter().any(|v| e2.contains(v)) {
                        continue;
                    }
                    assert_eq!(crosses(&d, e1, e2).unwrap(), triangles_cross(d.vertices(), e1, e2), "seed {seed} {e1:?} {e2:?}");
                }
            }
        }
    }

    #[test]
    fn full_pair_extends_to_itself() {
        let d = quad_drawing();
        let out = extend_crossing(&d, &[0, 2], &[1, 3]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!((out[0].left.clone(), out[0].right.clone()), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn extension_preconditions() {
        let d = quad_drawing();
        assert!(matches!(extend_crossing(&d, &[0, 3], &[1, 2]), Err(Error::NotExtendable(_))));
        assert!(matches!(extend_crossing(&d, &[0, 1], &[2, 3]), Err(Error::NotExtendable(_))));
        assert!(matches!(extend_crossing(&d, &[0], &[1, 3]), Err(Error::NotExtendable(_))));
    }

    #[test]
    fn lemma1_extensions_always_cross() {
        // For random 2d points and every crossing with |U| + |W| >= d + 1,
        // all disjoint completions to two d-sets inside the 2d points cross.
        for (d, seed) in [(3usize, 1u64), (3, 2), (4, 3)] {
            let points = random_points(d, 2 * d, seed, 200).unwrap();
            let all: Vec<usize> = (0..2 * d).collect();
            let mut checked = 0;
            for u_size in 2..=d {
                for w_size in 2..=d {
                    if u_size + w_size < d + 1 {
                        continue;
                    }
                    for u in all.iter().copied().combinations(u_size) {
                        let rest: Vec<usize> = all.iter().copied().filter(|v| !u.contains(v)).collect();
                        for w in rest.iter().copied().combinations(w_size) {
                            if relint_intersection(&points, &u, &w).unwrap().is_none() {
                                continue;
                            }
                            let free: Vec<usize> = rest.iter().copied().filter(|v| !w.contains(v)).collect();
                            for add_u in free.iter().copied().combinations(d - u_size) {
                                let left: Vec<usize> = u.iter().copied().chain(add_u.iter().copied()).collect();
                                let pool: Vec<usize> = free.iter().copied().filter(|v| !add_u.contains(v)).collect();
                                for add_w in pool.iter().copied().combinations(d - w_size) {
                                    let right: Vec<usize> = w.iter().copied().chain(add_w).collect();
                                    assert!(relint_intersection(&points, &left, &right).unwrap().is_some());
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
            assert!(checked > 0);
        }
    }
}
