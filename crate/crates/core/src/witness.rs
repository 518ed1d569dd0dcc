//! Constructive crossing witnesses.
//!
//! Two pipelines produce verified crossing pairs of rainbow hyperedges:
//!
//! * [`theorem1_witness`] works on `K_{2×3+(d−2)×2}^d`. It takes the Gale
//!   transform of the `2d+2` vertices, finds a linear hyperplane in Gale space
//!   that bisects every part ([`ham_sandwich_linear`]), reads a Radon
//!   partition off the two open half-spaces, and extends it to full
//!   hyperedges.
//! * [`observation1_witness`] works on `K_{(⌈d/2⌉+1)×3+(⌊d/2⌋−1)×2}^d`. It
//!   finds a colored Tverberg pair of `⌈d/2⌉`-simplices by exhaustive search
//!   and extends it in every possible way.
//!
//! All searches run in lexicographic order and return the first hit, so
//! outputs are reproducible.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::crossing::{extend_crossing, relint_intersection, CrossingPair};
use crate::error::{Error, Result};
use crate::exact_geom::{affinely_independent, hyperplane_through_origin, Point, PointSequence, Rational};
use crate::gale::{gale_transform, partition_vectors, radon_certificate, HalfspacePartition, IntersectionCertificate};
use crate::hypergraph::{Drawing, PartiteSignature};

/// Disjoint color classes over Gale vector indices. The origin carries its
/// own color and always lies on the bisecting hyperplane, so it is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClasses {
    classes: Vec<Vec<usize>>,
}

impl ColorClasses {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let all: Vec<usize> = classes.iter().flatten().copied().collect();
        if !crate::all_distinct(&all) {
            return Err(Error::Precondition(String::from("color classes overlap")));
        }
        Ok(ColorClasses { classes })
    }

    /// `{0,1,2}`, `{3,4,5}`, then `{2k, 2k+1}` for the remaining `d − 2`
    /// parts: the parts of `K_{2×3+(d−2)×2}^d` listed in order.
    pub fn theorem1(d: usize) -> Self {
        let mut classes = alloc::vec![alloc::vec![0, 1, 2], alloc::vec![3, 4, 5]];
        classes.extend((3..=d).map(|k| alloc::vec![2 * k, 2 * k + 1]));
        ColorClasses { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Each open half-space holds at most `⌊|C|/2⌋` indices of every class.
    pub fn bisected_by(&self, partition: &HalfspacePartition) -> bool {
        self.classes.iter().all(|class| {
            let half = class.len() / 2;
            let plus = class.iter().filter(|i| partition.plus.contains(i)).count();
            let minus = class.iter().filter(|i| partition.minus.contains(i)).count();
            plus <= half && minus <= half
        })
    }
}

/// Linear hyperplane in Gale space bisecting every color class.
///
/// Enumerates, in lexicographic order of index sets, the hyperplanes spanned
/// by `dim − 1` of the vectors and returns the normal of the first one that
/// bisects. Any bisecting linear hyperplane can be rotated about the vectors
/// it already contains until it contains `dim − 1` of them without any open
/// half-space gaining points, so for vectors in general position the search
/// cannot miss.
pub fn ham_sandwich_linear(vectors: &[Point], colors: &ColorClasses) -> Result<Point> {
    ham_sandwich_search(vectors, colors).map(|(normal, _)| normal)
}

fn ham_sandwich_search(vectors: &[Point], colors: &ColorClasses) -> Result<(Point, HalfspacePartition)> {
    let dim = vectors.first().map_or(0, Point::dim);
    if dim < 2 {
        return Err(Error::Precondition(format!("Gale space of dimension {dim} has no proper linear hyperplane")));
    }
    if let Some(&i) = colors.classes().iter().flatten().find(|&&i| i >= vectors.len()) {
        return Err(Error::Precondition(format!("color class index {i} out of range")));
    }
    for subset in (0..vectors.len()).combinations(dim - 1) {
        let spanning: Vec<&[Rational]> = subset.iter().map(|&j| &vectors[j][..]).collect();
        let Ok(normal) = hyperplane_through_origin(&spanning) else {
            continue;
        };
        let partition = partition_vectors(vectors, &normal)?;
        if colors.bisected_by(&partition) {
            return Ok((normal, partition));
        }
    }
    Err(Error::NoBisector)
}

/// Which size hypothesis the extension step relied on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionHypothesis {
    /// `|U| + |W| ≥ d + 2`, what the Gale argument guarantees.
    GaleBound,
    /// Only `|U| + |W| ≥ d + 1`, the weaker condition the extension lemma
    /// needs.
    LemmaBound,
}

impl ExtensionHypothesis {
    pub fn name(self) -> &'static str {
        match self {
            ExtensionHypothesis::GaleBound => "u+w>=d+2",
            ExtensionHypothesis::LemmaBound => "u+w>=d+1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [ExtensionHypothesis::GaleBound, ExtensionHypothesis::LemmaBound].into_iter().find(|h| h.name() == name)
    }

    /// Classifies a Radon partition with `sum = |U| + |W|` in dimension `d`.
    pub fn for_sizes(sum: usize, d: usize) -> Option<Self> {
        if sum >= d + 2 {
            Some(ExtensionHypothesis::GaleBound)
        } else if sum == d + 1 {
            Some(ExtensionHypothesis::LemmaBound)
        } else {
            None
        }
    }
}

/// Output of [`theorem1_witness`]. All indices are drawing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Witness {
    /// The selected crossing pair of hyperedges.
    pub pair: CrossingPair,
    /// Normal of the bisecting hyperplane in Gale space.
    pub normal: Point,
    pub partition: HalfspacePartition,
    /// The Radon partition read off the Gale diagram, before extension.
    pub radon: CrossingPair,
    pub hypothesis: ExtensionHypothesis,
    /// Number of verified extensions of `radon`.
    pub extensions: usize,
}

fn relabel(cert: &IntersectionCertificate, order: &[usize]) -> IntersectionCertificate {
    IntersectionCertificate {
        coeffs_a: cert.coeffs_a.iter().map(|(&i, c)| (order[i], c.clone())).collect(),
        coeffs_b: cert.coeffs_b.iter().map(|(&i, c)| (order[i], c.clone())).collect(),
        common_point: cert.common_point.clone(),
    }
}

fn check_shape(drawing: &Drawing, expected: PartiteSignature) -> Result<()> {
    if drawing.signature() != &expected {
        return Err(Error::WrongSignature(format!("expected {expected}, drawing has {}", drawing.signature())));
    }
    Ok(())
}

fn rainbow(drawing: &Drawing, side: &[usize], full: bool) -> bool {
    let parts: Vec<usize> = side.iter().map(|&v| drawing.labels()[v]).collect();
    crate::all_distinct(&parts) && (!full || parts.len() == drawing.dim())
}

/// Gale transform plus linear Ham-Sandwich witness on `K_{2×3+(d−2)×2}^d`.
pub fn theorem1_witness(drawing: &Drawing) -> Result<Theorem1Witness> {
    let d = drawing.dim();
    check_shape(drawing, PartiteSignature::theorem1(d)?)?;
    crate::exact_geom::is_general_position(drawing.vertices())?;

    // V' lists the parts in order.
    let order: Vec<usize> = drawing.parts().iter().flatten().copied().collect();
    let sequence = drawing.vertices().select(&order)?;
    let diagram = gale_transform(&sequence)?;
    let colors = ColorClasses::theorem1(d);
    let (normal, gale_partition) = ham_sandwich_search(diagram.vectors(), &colors)?;
    if gale_partition.zero.len() > d {
        return Err(Error::TheoremViolated(format!("{} Gale vectors on the bisecting hyperplane", gale_partition.zero.len())));
    }
    let radon = relabel(&radon_certificate(&diagram, &gale_partition)?, &order);
    radon.verify(drawing.vertices())?;

    let map = |idx: &[usize]| -> Vec<usize> {
        let mut v: Vec<usize> = idx.iter().map(|&i| order[i]).collect();
        v.sort_unstable();
        v
    };
    let partition = HalfspacePartition {
        normal: normal.clone(),
        plus: map(&gale_partition.plus),
        minus: map(&gale_partition.minus),
        zero: map(&gale_partition.zero),
    };
    let (side_a, side_b) = (radon.side_a(), radon.side_b());

    // (I) disjointness holds by construction; (II)-(V) below.
    let violated = |what: &str| Err(Error::TheoremViolated(format!("Radon partition {side_a:?} / {side_b:?}: {what}")));
    for side in [&side_a, &side_b] {
        let pts: Vec<&Point> = side.iter().map(|&v| &drawing.vertices().points()[v]).collect();
        if !affinely_independent(&pts) {
            return violated("side is affinely dependent");
        }
        if !rainbow(drawing, side, false) {
            return violated("two vertices from one part on a side");
        }
        if side.len() < 2 || side.len() > d {
            return violated("side size outside 2..=d");
        }
    }
    let Some(hypothesis) = ExtensionHypothesis::for_sizes(side_a.len() + side_b.len(), d) else {
        return violated("fewer than d + 1 vertices");
    };

    let extensions = extend_crossing(drawing, &side_a, &side_b)?;
    let pair = extensions
        .first()
        .cloned()
        .ok_or_else(|| Error::TheoremViolated(String::from("no rainbow extension exists")))?;
    if !rainbow(drawing, &pair.left, true) || !rainbow(drawing, &pair.right, true) {
        return Err(Error::TheoremViolated(String::from("extension is not a pair of hyperedges")));
    }
    pair.verify(drawing.vertices())?;

    Ok(Theorem1Witness {
        pair,
        normal,
        partition,
        radon: CrossingPair::new(side_a, side_b, radon),
        hypothesis,
        extensions: extensions.len(),
    })
}

/// Two disjoint rainbow sets over the color classes whose simplices cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TverbergPair {
    /// One vertex per class, in class order.
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub certificate: IntersectionCertificate,
}

/// Colored Tverberg pair for `r = 2` by exhaustive search.
///
/// `classes` are `k + 1` disjoint triples of point indices with
/// `2(d − k) ≤ d`. Rainbow choices for `s1` are tried in lexicographic order,
/// and for each the rainbow choices for `s2` among the remaining vertices.
pub fn colored_tverberg_pair(points: &PointSequence, classes: &[Vec<usize>]) -> Result<TverbergPair> {
    let d = points.dim();
    let Some(k) = classes.len().checked_sub(1) else {
        return Err(Error::Precondition(String::from("no color classes")));
    };
    if 2 * (d.saturating_sub(k)) > d || k > d {
        return Err(Error::Precondition(format!("k = {k} classes minus one violates 2(d - k) <= d <= ... for d = {d}")));
    }
    if let Some(c) = classes.iter().find(|c| c.len() != 3) {
        return Err(Error::Precondition(format!("color class {c:?} is not a triple")));
    }
    ColorClasses::new(classes.to_vec())?;
    if let Some(&i) = classes.iter().flatten().find(|&&i| i >= points.len()) {
        return Err(Error::Precondition(format!("vertex {i} out of range 0..{}", points.len())));
    }

    for s1 in classes.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
        let rest = classes
            .iter()
            .zip(&s1)
            .map(|(c, chosen)| c.iter().copied().filter(move |v| v != chosen));
        for s2 in rest.multi_cartesian_product() {
            let (mut a, mut b) = (s1.clone(), s2.clone());
            a.sort_unstable();
            b.sort_unstable();
            if let Some(certificate) = relint_intersection(points, &a, &b)? {
                return Ok(TverbergPair { s1, s2, certificate });
            }
        }
    }
    Err(Error::TheoremViolated(String::from("no colored Tverberg pair among the rainbow choices")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation1Witness {
    pub tverberg: TverbergPair,
    pub pairs: Vec<CrossingPair>,
}

/// `2^(⌊d/2⌋−1)`: the number of rainbow completions of a Tverberg pair on the
/// Observation 1 shape.
pub fn observation1_pair_count(d: usize) -> usize {
    1 << (d / 2).saturating_sub(1)
}

/// Colored Tverberg witness on `K_{(⌈d/2⌉+1)×3+(⌊d/2⌋−1)×2}^d`, extended in
/// every possible way.
pub fn observation1_witness(drawing: &Drawing) -> Result<Observation1Witness> {
    let d = drawing.dim();
    check_shape(drawing, PartiteSignature::observation1(d)?)?;
    crate::exact_geom::is_general_position(drawing.vertices())?;

    let classes = &drawing.parts()[..d.div_ceil(2) + 1];
    let tverberg = colored_tverberg_pair(drawing.vertices(), classes)?;
    let pairs = extend_crossing(drawing, &tverberg.s1, &tverberg.s2)?;
    let expected = observation1_pair_count(d);
    if pairs.len() != expected {
        return Err(Error::TheoremViolated(format!("{} extensions, expected {expected}", pairs.len())));
    }
    for pair in &pairs {
        if !rainbow(drawing, &pair.left, true) || !rainbow(drawing, &pair.right, true) {
            return Err(Error::TheoremViolated(String::from("extension is not a pair of hyperedges")));
        }
        pair.verify(drawing.vertices())?;
    }
    Ok(Observation1Witness { tverberg, pairs })
}
