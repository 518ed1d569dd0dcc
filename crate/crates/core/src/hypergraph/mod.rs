//! Complete d-partite d-uniform hypergraphs, their rectilinear drawings, and
//! brute-force crossing counts.

mod bounds;
mod generate;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::time::Duration;

use itertools::Itertools;

use crate::crossing::{relint_intersection, CrossingPair};
use crate::error::{Error, Result};
use crate::exact_geom::{is_general_position, PointSequence, Rational};

pub use bounds::{lower_bound, lower_bound_closed_form, subhypergraph_counts, BoundKind, SubhypergraphCounts};
pub use generate::{random_drawing, random_points, two_layer_bipartite};

/// Part sizes of a complete d-partite d-uniform hypergraph; `d` is the
/// number of parts.
///
/// The text form joins `kxn` terms with `+`, so `"2x3+1x2"` is two parts of
/// three vertices followed by one part of two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartiteSignature {
    part_sizes: Vec<usize>,
}

impl PartiteSignature {
    pub fn new(part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.len() < 2 {
            return Err(Error::WrongSignature(format!("need at least 2 parts, got {}", part_sizes.len())));
        }
        if part_sizes.contains(&0) {
            return Err(Error::WrongSignature(String::from("empty part")));
        }
        Ok(PartiteSignature { part_sizes })
    }

    /// `K_{d×n}^d`.
    pub fn balanced(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; d])
    }

    /// `K_{2×3+(d−2)×2}^d`, the sub-hypergraph the Gale pipeline works on.
    pub fn theorem1(d: usize) -> Result<Self> {
        Self::new((0..d).map(|i| if i < 2 { 3 } else { 2 }).collect())
    }

    /// `K_{(⌈d/2⌉+1)×3+(⌊d/2⌋−1)×2}^d`, the Tverberg pipeline's shape.
    pub fn observation1(d: usize) -> Result<Self> {
        let triples = d.div_ceil(2) + 1;
        Self::new((0..d).map(|i| if i < triples { 3 } else { 2 }).collect())
    }

    pub fn d(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn total_vertices(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn hyperedge_count(&self) -> usize {
        self.part_sizes.iter().product()
    }

    /// `Some(n)` when every part has `n` vertices.
    pub fn balanced_size(&self) -> Option<usize> {
        let first = self.part_sizes[0];
        self.part_sizes.iter().all(|&s| s == first).then_some(first)
    }
}

impl fmt::Display for PartiteSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .part_sizes
            .iter()
            .chunk_by(|&&s| s)
            .into_iter()
            .map(|(size, run)| format!("{}x{}", run.count(), size))
            .join("+");
        f.write_str(&terms)
    }
}

impl FromStr for PartiteSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::WrongSignature(format!("cannot parse signature {s:?}, expected e.g. 3x3 or 2x3+1x2"));
        let mut sizes = Vec::new();
        for term in s.split('+') {
            let (count, size) = term.trim().split_once(['x', 'X']).ok_or_else(bad)?;
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            let size: usize = size.trim().parse().map_err(|_| bad())?;
            sizes.extend(core::iter::repeat_n(size, count));
        }
        Self::new(sizes)
    }
}

/// A rectilinear drawing: one point in R^d per vertex, each labelled with its
/// part. Vertices are validated to be in general position on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    signature: PartiteSignature,
    vertices: PointSequence,
    labels: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl Drawing {
    pub fn new(signature: PartiteSignature, vertices: PointSequence, labels: Vec<usize>) -> Result<Self> {
        let drawing = Self::new_unchecked(signature, vertices, labels)?;
        is_general_position(&drawing.vertices)?;
        Ok(drawing)
    }

    /// Validates everything except general position.
    pub(crate) fn new_unchecked(signature: PartiteSignature, vertices: PointSequence, labels: Vec<usize>) -> Result<Self> {
        let d = signature.d();
        if vertices.dim() != d {
            return Err(Error::InvalidDrawing(format!(
                "{d} parts require dimension {d}, vertices have dimension {}",
                vertices.dim()
            )));
        }
        if labels.len() != vertices.len() {
            return Err(Error::InvalidDrawing(format!(
                "{} part labels for {} vertices",
                labels.len(),
                vertices.len()
            )));
        }
        let mut parts = vec![Vec::new(); d];
        for (v, &label) in labels.iter().enumerate() {
            let part = parts
                .get_mut(label)
                .ok_or_else(|| Error::InvalidDrawing(format!("vertex {v} has part {label}, expected 0..{d}")))?;
            part.push(v);
        }
        for (i, (part, &size)) in parts.iter().zip(signature.part_sizes()).enumerate() {
            if part.len() != size {
                return Err(Error::InvalidDrawing(format!(
                    "part {i} has {} vertices, signature says {size}",
                    part.len()
                )));
            }
        }
        Ok(Drawing { signature, vertices, labels, parts })
    }

    pub fn signature(&self) -> &PartiteSignature {
        &self.signature
    }

    pub fn vertices(&self) -> &PointSequence {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    /// Part label of every vertex.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn part_of(&self, vertex: usize) -> Option<usize> {
        self.labels.get(vertex).copied()
    }

    /// Vertex indices of each part, in vertex order.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Every hyperedge, one vertex per part listed in part order, in
    /// lexicographic order.
    pub fn hyperedges(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.iter().copied()).multi_cartesian_product().collect()
    }

    /// Whether `edge` has exactly one vertex from every part.
    pub fn is_hyperedge(&self, edge: &[usize]) -> bool {
        let mut seen = vec![false; self.signature.d()];
        edge.len() == seen.len()
            && edge.iter().all(|&v| match self.part_of(v) {
                Some(p) if !seen[p] => {
                    seen[p] = true;
                    true
                }
                _ => false,
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundComparison {
    pub kind: BoundKind,
    pub value: Rational,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub total_pairs_checked: u64,
    pub crossing_count: u64,
    pub pairs: Option<Vec<CrossingPair>>,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
    /// One-sided check: the bounds are lower bounds on the minimum over all
    /// drawings, so every sampled drawing must meet them.
    pub bound_comparisons: Vec<BoundComparison>,
}

/// Counts crossing pairs over every unordered pair of vertex-disjoint
/// hyperedges.
pub fn count_crossings(drawing: &Drawing, emit_pairs: bool) -> Result<CrossingReport> {
    let edges = drawing.hyperedges();
    let mut report = CrossingReport {
        total_pairs_checked: 0,
        crossing_count: 0,
        pairs: emit_pairs.then(Vec::new),
        elapsed: None,
        bound_comparisons: Vec::new(),
    };
    for (i, e1) in edges.iter().enumerate() {
        for e2 in &edges[i + 1..] {
            if e1.iter().zip(e2).any(|(a, b)| a == b) {
                continue;
            }
            report.total_pairs_checked += 1;
            if let Some(certificate) = relint_intersection(drawing.vertices(), e1, e2)? {
                report.crossing_count += 1;
                if let Some(pairs) = report.pairs.as_mut() {
                    pairs.push(CrossingPair::new(e1.clone(), e2.clone(), certificate));
                }
            }
        }
    }
    if let Some(n) = drawing.signature().balanced_size().filter(|&n| n >= 3) {
        let d = drawing.signature().d();
        for kind in [BoundKind::Theorem1, BoundKind::Observation1] {
            let value = lower_bound(n, d, kind)?;
            let satisfied = Rational::from_integer(report.crossing_count.into()) >= value;
            report.bound_comparisons.push(BoundComparison { kind, value, satisfied });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{orientation, Point, Sign};
    use alloc::string::ToString;

    #[test]
    fn signature_text_form() {
        let s: PartiteSignature = "2x3+1x2".parse().unwrap();
        assert_eq!(s.part_sizes(), &[3, 3, 2]);
        assert_eq!(s.to_string(), "2x3+1x2");
        assert_eq!("3x3".parse::<PartiteSignature>().unwrap(), PartiteSignature::balanced(3, 3).unwrap());
        assert!("3".parse::<PartiteSignature>().is_err());
        assert!("1x3".parse::<PartiteSignature>().is_err());
        assert_eq!(PartiteSignature::theorem1(4).unwrap().to_string(), "2x3+2x2");
        assert_eq!(PartiteSignature::observation1(6).unwrap().to_string(), "4x3+2x2");
        assert_eq!(PartiteSignature::observation1(3).unwrap().to_string(), "3x3");
    }

    #[test]
    fn drawing_validation() {
        let sig = PartiteSignature::balanced(2, 2).unwrap();
        let square = PointSequence::from_ints(2, &[&[0, 0], &[1, 1], &[1, 0], &[0, 1]]).unwrap();
        let d = Drawing::new(sig.clone(), square.clone(), vec![0, 0, 1, 1]).unwrap();
        assert_eq!(d.parts(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(d.hyperedges(), vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(d.is_hyperedge(&[3, 0]));
        assert!(!d.is_hyperedge(&[0, 1]));

        assert!(matches!(
            Drawing::new(sig.clone(), square.clone(), vec![0, 0, 0, 1]),
            Err(Error::InvalidDrawing(_))
        ));
        let collinear = PointSequence::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2], &[0, 1]]).unwrap();
        assert_eq!(
            Drawing::new(sig, collinear, vec![0, 0, 1, 1]),
            Err(Error::NotInGeneralPosition(vec![0, 1, 2]))
        );
    }

    #[test]
    fn convex_quadrilateral_has_one_crossing() {
        let sig = PartiteSignature::balanced(2, 2).unwrap();
        let square = PointSequence::from_ints(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        let d = Drawing::new(sig, square, vec![0, 0, 1, 1]).unwrap();
        let report = count_crossings(&d, true).unwrap();
        assert_eq!(report.total_pairs_checked, 2);
        assert_eq!(report.crossing_count, 1);
        let pairs = report.pairs.unwrap();
        assert_eq!((pairs[0].left.as_slice(), pairs[0].right.as_slice()), (&[0, 2][..], &[1, 3][..]));
    }

    /// Segment crossing by two-sided orientation tests.
    fn segments_cross(points: &PointSequence, e1: &[usize], e2: &[usize]) -> bool {
        let p = |i: usize| points.get(i).unwrap();
        let side = |a: &Point, b: &Point, c: &Point| orientation(&[a, b, c]).unwrap();
        let s1 = side(p(e1[0]), p(e1[1]), p(e2[0])).as_i8() * side(p(e1[0]), p(e1[1]), p(e2[1])).as_i8();
        let s2 = side(p(e2[0]), p(e2[1]), p(e1[0])).as_i8() * side(p(e2[0]), p(e2[1]), p(e1[1])).as_i8();
        s1 < 0 && s2 < 0
    }

    #[test]
    fn two_layer_counts_match_orientation_brute_force() {
        for n in 2..=4 {
            let d = two_layer_bipartite(n).unwrap();
            let edges = d.hyperedges();
            let mut expected = 0;
            for (i, e1) in edges.iter().enumerate() {
                for e2 in &edges[i + 1..] {
                    if e1[0] != e2[0] && e1[1] != e2[1] && segments_cross(d.vertices(), e1, e2) {
                        expected += 1;
                    }
                }
            }
            let binom = (n * (n - 1) / 2) as u64;
            assert_eq!(expected, binom * binom);
            assert_eq!(count_crossings(&d, false).unwrap().crossing_count, expected);
            assert_ne!(Sign::Zero, orientation(&[d.vertices().get(0).unwrap(), d.vertices().get(1).unwrap(), d.vertices().get(n).unwrap()]).unwrap());
        }
    }

    #[test]
    fn bound_comparisons_reported_for_balanced_signatures() {
        let d = random_drawing(&PartiteSignature::balanced(3, 3).unwrap(), 7, 1_000_000).unwrap();
        let report = count_crossings(&d, false).unwrap();
        assert!(report.crossing_count >= 3);
        assert!(report.crossing_count <= report.total_pairs_checked);
        assert_eq!(report.bound_comparisons.len(), 2);
        assert!(report.bound_comparisons.iter().all(|b| b.satisfied));
        assert_eq!(report.bound_comparisons[0].value, crate::exact_geom::rational(3));
    }

    #[test]
    fn count_is_invariant_under_relabeling_within_parts() {
        let sig = PartiteSignature::balanced(3, 3).unwrap();
        let d = random_drawing(&sig, 3, 1000).unwrap();
        let base = count_crossings(&d, false).unwrap().crossing_count;
        // Reverse the vertex order inside every part.
        let mut order: Vec<usize> = Vec::new();
        for part in d.parts() {
            order.extend(part.iter().rev());
        }
        let permuted = d.vertices().select(&order).unwrap();
        let labels = order.iter().map(|&v| d.labels()[v]).collect();
        let d2 = Drawing::new(sig, permuted, labels).unwrap();
        assert_eq!(count_crossings(&d2, false).unwrap().crossing_count, base);
    }
}
