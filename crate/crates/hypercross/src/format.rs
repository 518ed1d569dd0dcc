//! JSON file formats for drawings and witnesses.
//!
//! Rationals are always written as strings, `"p"` or `"p/q"` in lowest terms,
//! so a value read back is bit-identical to the value written. Vertex and
//! part indices are 0-based.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hypercross_core::crossing::CrossingPair;
use hypercross_core::exact_geom::{format_rational, parse_rational};
use hypercross_core::gale::{HalfspacePartition, IntersectionCertificate};
use hypercross_core::hypergraph::{Drawing, PartiteSignature};
use hypercross_core::witness::{Observation1Witness, Theorem1Witness, TverbergPair};
use hypercross_core::{Point, PointSequence, Rational};

pub const WITNESS_FORMAT: &str = "hypercross-witness";
pub const WITNESS_VERSION: u32 = 1;

/// A malformed input file. Syntax errors carry a line and column; schema and
/// value errors carry the path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}, column {column}, field `{field}`: {message}")]
    Schema { field: String, line: usize, column: usize, message: String },

    #[error("field `{field}`: {message}")]
    Value { field: String, message: String },
}

impl FormatError {
    pub fn value(field: impl Into<String>, message: impl ToString) -> Self {
        FormatError::Value { field: field.into(), message: message.to_string() }
    }
}

fn strip_position(message: String) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    }
}

/// Deserializes `text`, reporting the JSON path of any schema error.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let message = strip_position(inner.to_string());
        if inner.is_syntax() || inner.is_eof() || field == "." {
            FormatError::Syntax { line, column, message }
        } else {
            FormatError::Schema { field, line, column, message }
        }
    })?;
    de.end().map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(e.to_string()),
    })?;
    Ok(value)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("file structs always serialize");
    text.push('\n');
    text
}

pub fn rationals_to_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

pub fn strings_to_rationals(values: &[String], field: &str) -> Result<Vec<Rational>, FormatError> {
    values
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| FormatError::value(format!("{field}[{i}]"), e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingFile {
    pub dimension: usize,
    pub part_sizes: Vec<usize>,
    pub vertices: Vec<VertexEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub part: usize,
    pub coords: Vec<String>,
}

impl DrawingFile {
    pub fn from_drawing(drawing: &Drawing) -> Self {
        DrawingFile {
            dimension: drawing.dim(),
            part_sizes: drawing.signature().part_sizes().to_vec(),
            vertices: drawing
                .vertices()
                .points()
                .iter()
                .zip(drawing.labels())
                .map(|(p, &part)| VertexEntry { part, coords: rationals_to_strings(p.coords()) })
                .collect(),
        }
    }

    /// Validates the file and builds the drawing, including the general
    /// position check.
    pub fn to_drawing(&self) -> Result<Drawing, FormatError> {
        let signature = PartiteSignature::new(self.part_sizes.clone()).map_err(|e| FormatError::value("part_sizes", e))?;
        if self.dimension != signature.d() {
            return Err(FormatError::value(
                "dimension",
                format!("{} parts require dimension {}, found {}", signature.d(), signature.d(), self.dimension),
            ));
        }
        let mut points = Vec::with_capacity(self.vertices.len());
        for (v, vertex) in self.vertices.iter().enumerate() {
            let field = format!("vertices[{v}].coords");
            if vertex.coords.len() != self.dimension {
                return Err(FormatError::value(
                    field,
                    format!("expected {} coordinates, found {}", self.dimension, vertex.coords.len()),
                ));
            }
            points.push(Point::new(strings_to_rationals(&vertex.coords, &field)?));
        }
        let labels = self.vertices.iter().map(|v| v.part).collect();
        let points = PointSequence::new(self.dimension, points).map_err(|e| FormatError::value("vertices", e))?;
        Drawing::new(signature, points, labels).map_err(|e| FormatError::value("vertices", e))
    }
}

pub fn parse_drawing(text: &str) -> Result<Drawing, FormatError> {
    from_json::<DrawingFile>(text)?.to_drawing()
}

pub fn drawing_to_json(drawing: &Drawing) -> String {
    to_json(&DrawingFile::from_drawing(drawing))
}

/// SHA-256 of the canonical serialization, so the digest ignores whitespace
/// and non-canonical rational spellings in the source file.
pub fn drawing_digest(drawing: &Drawing) -> String {
    hex::encode(Sha256::digest(drawing_to_json(drawing).as_bytes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Theorem1,
    Observation1,
    Tverberg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingRef {
    pub path: String,
    pub sha256: String,
    pub dimension: usize,
    pub part_sizes: Vec<usize>,
}

impl DrawingRef {
    pub fn new(path: &str, drawing: &Drawing) -> Self {
        DrawingRef {
            path: path.to_string(),
            sha256: drawing_digest(drawing),
            dimension: drawing.dim(),
            part_sizes: drawing.signature().part_sizes().to_vec(),
        }
    }
}

/// Two index sets and the convex coefficients that certify their simplices
/// meet at `common_point`. `coeffs_u[i]` belongs to vertex `u[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub coeffs_u: Vec<String>,
    pub coeffs_w: Vec<String>,
    pub common_point: Vec<String>,
}

impl PairEntry {
    pub fn from_certificate(certificate: &IntersectionCertificate) -> Self {
        PairEntry {
            u: certificate.side_a(),
            w: certificate.side_b(),
            coeffs_u: certificate.coeffs_a.values().map(format_rational).collect(),
            coeffs_w: certificate.coeffs_b.values().map(format_rational).collect(),
            common_point: rationals_to_strings(certificate.common_point.coords()),
        }
    }

    pub fn from_pair(pair: &CrossingPair) -> Self {
        Self::from_certificate(&pair.certificate)
    }

    pub fn to_certificate(&self, field: &str) -> Result<IntersectionCertificate, FormatError> {
        let side = |name: &str, idx: &[usize], coeffs: &[String]| -> Result<BTreeMap<usize, Rational>, FormatError> {
            if idx.len() != coeffs.len() {
                return Err(FormatError::value(
                    format!("{field}.coeffs_{name}"),
                    format!("{} coefficients for {} indices", coeffs.len(), idx.len()),
                ));
            }
            let values = strings_to_rationals(coeffs, &format!("{field}.coeffs_{name}"))?;
            let map: BTreeMap<usize, Rational> = idx.iter().copied().zip(values).collect();
            if map.len() != idx.len() {
                return Err(FormatError::value(format!("{field}.{name}"), "repeated vertex index"));
            }
            Ok(map)
        };
        Ok(IntersectionCertificate {
            coeffs_a: side("u", &self.u, &self.coeffs_u)?,
            coeffs_b: side("w", &self.w, &self.coeffs_w)?,
            common_point: Point::new(strings_to_rationals(&self.common_point, &format!("{field}.common_point"))?),
        })
    }

    pub fn to_pair(&self, field: &str) -> Result<CrossingPair, FormatError> {
        let certificate = self.to_certificate(field)?;
        Ok(CrossingPair::new(self.u.clone(), self.w.clone(), certificate))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionEntry {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub zero: Vec<usize>,
}

impl From<&HalfspacePartition> for PartitionEntry {
    fn from(p: &HalfspacePartition) -> Self {
        PartitionEntry { plus: p.plus.clone(), minus: p.minus.clone(), zero: p.zero.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1Meta {
    /// Hyperplane normal in the Gale space of the vertices listed part by
    /// part, in the canonical null-space basis.
    pub normal: Vec<String>,
    /// Drawing vertices by the side of the hyperplane their Gale vector is on.
    pub partition: PartitionEntry,
    pub radon: PairEntry,
    pub hypothesis: String,
    pub extensions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TverbergMeta {
    pub classes: Vec<Vec<usize>>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation1Meta {
    pub tverberg: TverbergMeta,
    pub tverberg_pair: PairEntry,
    pub expected_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub format: String,
    pub version: u32,
    pub drawing_ref: DrawingRef,
    pub pipeline: Pipeline,
    pub pairs: Vec<PairEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<Theorem1Meta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observation1: Option<Observation1Meta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tverberg: Option<TverbergMeta>,
}

impl WitnessFile {
    fn empty(drawing_ref: DrawingRef, pipeline: Pipeline, pairs: Vec<PairEntry>) -> Self {
        WitnessFile {
            format: WITNESS_FORMAT.to_string(),
            version: WITNESS_VERSION,
            drawing_ref,
            pipeline,
            pairs,
            theorem1: None,
            observation1: None,
            tverberg: None,
        }
    }

    pub fn theorem1(drawing_ref: DrawingRef, w: &Theorem1Witness) -> Self {
        let mut file = Self::empty(drawing_ref, Pipeline::Theorem1, vec![PairEntry::from_pair(&w.pair)]);
        file.theorem1 = Some(Theorem1Meta {
            normal: rationals_to_strings(w.normal.coords()),
            partition: (&w.partition).into(),
            radon: PairEntry::from_pair(&w.radon),
            hypothesis: w.hypothesis.name().to_string(),
            extensions: w.extensions,
        });
        file
    }

    pub fn observation1(drawing_ref: DrawingRef, classes: &[Vec<usize>], w: &Observation1Witness) -> Self {
        let mut file = Self::empty(drawing_ref, Pipeline::Observation1, w.pairs.iter().map(PairEntry::from_pair).collect());
        file.observation1 = Some(Observation1Meta {
            tverberg: tverberg_meta(classes, &w.tverberg),
            tverberg_pair: PairEntry::from_certificate(&w.tverberg.certificate),
            expected_pairs: w.pairs.len(),
        });
        file
    }

    pub fn tverberg(drawing_ref: DrawingRef, classes: &[Vec<usize>], t: &TverbergPair) -> Self {
        let mut file = Self::empty(drawing_ref, Pipeline::Tverberg, vec![PairEntry::from_certificate(&t.certificate)]);
        file.tverberg = Some(tverberg_meta(classes, t));
        file
    }
}

fn tverberg_meta(classes: &[Vec<usize>], t: &TverbergPair) -> TverbergMeta {
    TverbergMeta { classes: classes.to_vec(), s1: t.s1.clone(), s2: t.s2.clone() }
}
