//! Independent re-verification of witness files.
//!
//! Nothing in a witness is trusted: every certificate is re-evaluated against
//! the drawing in exact arithmetic, and pipeline metadata (hyperplane normal,
//! partition, Tverberg classes) is recomputed and compared.

use hypercross_core::crossing::{extend_crossing, CrossingPair};
use hypercross_core::exact_geom::PointSequence;
use hypercross_core::gale::{gale_transform, partition_vectors};
use hypercross_core::hypergraph::{Drawing, PartiteSignature};
use hypercross_core::witness::{observation1_pair_count, ColorClasses, ExtensionHypothesis};

use crate::format::{
    drawing_digest, strings_to_rationals, FormatError, PairEntry, PartitionEntry, Pipeline, TverbergMeta, WitnessFile,
    WITNESS_FORMAT, WITNESS_VERSION,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("malformed witness: {0}")]
    Malformed(#[from] FormatError),

    #[error("verification failed: {0}")]
    Failed(String),
}

fn fail<T>(message: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Failed(message.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub pipeline: Pipeline,
    pub pairs: usize,
}

pub fn verify_witness(file: &WitnessFile, drawing: &Drawing) -> Result<VerifySummary, VerifyError> {
    if file.format != WITNESS_FORMAT {
        return Err(FormatError::value("format", format!("expected {WITNESS_FORMAT:?}, found {:?}", file.format)).into());
    }
    if file.version != WITNESS_VERSION {
        return Err(FormatError::value("version", format!("unsupported version {}", file.version)).into());
    }
    let present = [file.theorem1.is_some(), file.observation1.is_some(), file.tverberg.is_some()];
    let expected = match file.pipeline {
        Pipeline::Theorem1 => [true, false, false],
        Pipeline::Observation1 => [false, true, false],
        Pipeline::Tverberg => [false, false, true],
    };
    if present != expected {
        return Err(FormatError::value("pipeline", "metadata sections do not match the pipeline").into());
    }

    let r = &file.drawing_ref;
    if r.dimension != drawing.dim() || r.part_sizes != drawing.signature().part_sizes() {
        return fail("witness was issued for a drawing of a different shape");
    }
    if r.sha256 != drawing_digest(drawing) {
        return fail("drawing digest does not match drawing_ref.sha256");
    }
    if file.pairs.is_empty() {
        return fail("no crossing pairs");
    }

    let points = drawing.vertices();
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for (i, entry) in file.pairs.iter().enumerate() {
        let pair = checked_pair(entry, &format!("pairs[{i}]"), points)?;
        if file.pipeline != Pipeline::Tverberg && !(drawing.is_hyperedge(&pair.left) && drawing.is_hyperedge(&pair.right)) {
            return fail(format!("pairs[{i}] is not a pair of hyperedges"));
        }
        pairs.push(pair);
    }

    match file.pipeline {
        Pipeline::Theorem1 => verify_theorem1(file, drawing, &pairs)?,
        Pipeline::Observation1 => verify_observation1(file, drawing, &pairs)?,
        Pipeline::Tverberg => {
            let meta = file.tverberg.as_ref().expect("checked above");
            if pairs.len() != 1 {
                return fail(format!("a Tverberg witness holds one pair, found {}", pairs.len()));
            }
            check_tverberg(meta, &pairs[0], drawing.dim(), points.len())?;
        }
    }
    Ok(VerifySummary { pipeline: file.pipeline, pairs: pairs.len() })
}

fn checked_pair(entry: &PairEntry, field: &str, points: &PointSequence) -> Result<CrossingPair, VerifyError> {
    let pair = entry.to_pair(field)?;
    if let Some(&v) = pair.left.iter().chain(&pair.right).find(|&&v| v >= points.len()) {
        return fail(format!("{field}: vertex {v} out of range 0..{}", points.len()));
    }
    pair.verify(points).or_else(|e| fail(format!("{field}: {e}")))?;
    Ok(pair)
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.contains(v))
}

fn verify_theorem1(file: &WitnessFile, drawing: &Drawing, pairs: &[CrossingPair]) -> Result<(), VerifyError> {
    let meta = file.theorem1.as_ref().expect("checked by caller");
    let d = drawing.dim();
    if PartiteSignature::theorem1(d).ok().as_ref() != Some(drawing.signature()) {
        return fail(format!("drawing {} is not of the 2x3+{}x2 shape", drawing.signature(), d.saturating_sub(2)));
    }
    if pairs.len() != 1 {
        return fail(format!("expected one crossing pair, found {}", pairs.len()));
    }

    // Recompute the Gale diagram and the partition the normal induces.
    let order: Vec<usize> = drawing.parts().iter().flatten().copied().collect();
    let sequence = drawing.vertices().select(&order).or_else(|e| fail(e.to_string()))?;
    let diagram = gale_transform(&sequence).or_else(|e| fail(e.to_string()))?;
    let normal = strings_to_rationals(&meta.normal, "theorem1.normal")?;
    let gale = partition_vectors(diagram.vectors(), &normal).map_err(|e| FormatError::value("theorem1.normal", e))?;
    if !ColorClasses::theorem1(d).bisected_by(&gale) {
        return fail("hyperplane does not bisect every part");
    }
    if gale.zero.len() > d {
        return fail(format!("{} Gale vectors lie on the hyperplane", gale.zero.len()));
    }
    let relabel = |idx: &[usize]| {
        let mut v: Vec<usize> = idx.iter().map(|&i| order[i]).collect();
        v.sort_unstable();
        v
    };
    let recomputed = PartitionEntry { plus: relabel(&gale.plus), minus: relabel(&gale.minus), zero: relabel(&gale.zero) };
    if recomputed != meta.partition {
        return fail("stored partition does not match the hyperplane normal");
    }

    let radon = checked_pair(&meta.radon, "theorem1.radon", drawing.vertices())?;
    if radon.left != recomputed.plus || radon.right != recomputed.minus {
        return fail("Radon sides are not the two open half-spaces");
    }
    for side in [&radon.left, &radon.right] {
        let mut parts: Vec<usize> = side.iter().map(|&v| drawing.labels()[v]).collect();
        parts.sort_unstable();
        parts.dedup();
        if parts.len() != side.len() || side.len() < 2 || side.len() > d {
            return fail(format!("Radon side {side:?} breaks the size or one-per-part condition"));
        }
    }
    let hypothesis = ExtensionHypothesis::from_name(&meta.hypothesis)
        .ok_or_else(|| FormatError::value("theorem1.hypothesis", format!("unknown hypothesis {:?}", meta.hypothesis)))?;
    if ExtensionHypothesis::for_sizes(radon.left.len() + radon.right.len(), d) != Some(hypothesis) {
        return fail(format!("hypothesis {} does not match the Radon side sizes", meta.hypothesis));
    }

    let pair = &pairs[0];
    if !is_subset(&radon.left, &pair.left) || !is_subset(&radon.right, &pair.right) {
        return fail("crossing pair does not extend the Radon partition");
    }
    let extensions = extend_crossing(drawing, &radon.left, &radon.right).or_else(|e| fail(e.to_string()))?;
    if extensions.len() != meta.extensions {
        return fail(format!("{} extensions exist, witness claims {}", extensions.len(), meta.extensions));
    }
    if !extensions.iter().any(|e| e.left == pair.left && e.right == pair.right) {
        return fail("crossing pair is not among the extensions");
    }
    Ok(())
}

fn verify_observation1(file: &WitnessFile, drawing: &Drawing, pairs: &[CrossingPair]) -> Result<(), VerifyError> {
    let meta = file.observation1.as_ref().expect("checked by caller");
    let d = drawing.dim();
    if PartiteSignature::observation1(d).ok().as_ref() != Some(drawing.signature()) {
        return fail(format!("drawing {} is not of the Observation-1 shape", drawing.signature()));
    }
    let k1 = d.div_ceil(2) + 1;
    if meta.tverberg.classes != drawing.parts()[..k1] {
        return fail("Tverberg classes are not the parts of size three");
    }
    let tverberg = checked_pair(&meta.tverberg_pair, "observation1.tverberg_pair", drawing.vertices())?;
    check_tverberg(&meta.tverberg, &tverberg, d, drawing.vertices().len())?;

    let expected = observation1_pair_count(d);
    if meta.expected_pairs != expected || pairs.len() != expected {
        return fail(format!("expected {expected} crossing pairs, found {}", pairs.len()));
    }
    for (i, pair) in pairs.iter().enumerate() {
        if !is_subset(&meta.tverberg.s1, &pair.left) || !is_subset(&meta.tverberg.s2, &pair.right) {
            return fail(format!("pairs[{i}] does not extend the Tverberg pair"));
        }
        if pairs[..i].iter().any(|p| p.left == pair.left && p.right == pair.right) {
            return fail(format!("pairs[{i}] is listed twice"));
        }
    }
    Ok(())
}

fn check_tverberg(meta: &TverbergMeta, pair: &CrossingPair, d: usize, vertices: usize) -> Result<(), VerifyError> {
    let classes = &meta.classes;
    let k = classes.len().saturating_sub(1);
    if classes.is_empty() || k > d || 2 * d.saturating_sub(k) > d {
        return fail(format!("{} color classes do not satisfy 2(d - k) <= d for d = {d}", classes.len()));
    }
    let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    if classes.iter().any(|c| c.len() != 3) || all.len() != 3 * classes.len() || all.iter().any(|&v| v >= vertices) {
        return fail("color classes must be disjoint triples of vertices");
    }
    if meta.s1.len() != classes.len() || meta.s2.len() != classes.len() {
        return fail("s1 and s2 must pick one vertex per class");
    }
    for ((class, a), b) in classes.iter().zip(&meta.s1).zip(&meta.s2) {
        if !class.contains(a) || !class.contains(b) || a == b {
            return fail(format!("class {class:?}: picks {a} and {b} are not two distinct members"));
        }
    }
    let sorted = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    if pair.left != sorted(&meta.s1) || pair.right != sorted(&meta.s2) {
        return fail("certificate sides are not s1 and s2");
    }
    Ok(())
}
