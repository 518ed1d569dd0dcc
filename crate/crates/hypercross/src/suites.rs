//! Acceptance suites, shared by `hypercross selftest` and the test suite.
//!
//! Each suite checks library results against an oracle that does not share
//! the code path under test: determinants instead of rank for spanning,
//! hand-rolled convex combinations instead of certificate verification,
//! orientation tests instead of the LP, and so on.

use std::fmt;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypercross_core::crossing::{crosses, relint_intersection};
use hypercross_core::exact_geom::{determinant, dot, orientation, Sign};
use hypercross_core::gale::{gale_transform, partition_vectors, radon_certificate, IntersectionCertificate};
use hypercross_core::hypergraph::{
    count_crossings, lower_bound, lower_bound_closed_form, random_drawing, random_points, two_layer_bipartite, BoundKind,
    Drawing, PartiteSignature,
};
use hypercross_core::witness::{
    ham_sandwich_linear, observation1_pair_count, observation1_witness, theorem1_witness, ColorClasses,
};
use hypercross_core::{Point, PointSequence, Rational};

use crate::cli::{execute, BoundsArgs, Command, CountArgs, Format, GenArgs, WitnessArgs};

/// Criterion number and title.
pub const CRITERIA: [(u8, &str); 10] = [
    (1, "Gale identities"),
    (2, "Radon certificates from Gale partitions"),
    (3, "Ham-Sandwich bisection in Gale space"),
    (4, "Gale + Ham-Sandwich crossing witnesses"),
    (5, "colored Tverberg pair counts"),
    (6, "LP crossing test vs orientation oracle"),
    (7, "exact lower bound values"),
    (8, "sampled drawings respect the lower bounds"),
    (9, "two-layer crossing counts"),
    (10, "determinism"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} criterion {:>2}: {}: {}", self.id, self.title, self.detail)
    }
}

type Outcome = Result<String, String>;

/// Runs one criterion. Panics on an unknown id.
pub fn run_criterion(id: u8, seed: u64) -> SuiteResult {
    let title = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).expect("unknown criterion");
    let outcome = match id {
        1 => gale_identities(seed),
        2 => radon_certificates(seed),
        3 => ham_sandwich(seed),
        4 => theorem1_witnesses(seed),
        5 => observation1_counts(seed),
        6 => segment_oracle(seed),
        7 => bound_values(),
        8 => bound_respect(seed),
        9 => two_layer(),
        _ => determinism(seed),
    };
    let (passed, detail) = match outcome {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    SuiteResult { id, title, passed, detail }
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, seed)).collect()
}

fn instance_seed(base: u64, criterion: u64, d: usize, i: usize) -> u64 {
    base.wrapping_mul(1_000_003) ^ (criterion << 40) ^ ((d as u64) << 20) ^ i as u64
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(zero(), |acc, v| acc + v)
}

/// Convex combination computed without the certificate code.
fn combine(points: &PointSequence, coeffs: &std::collections::BTreeMap<usize, Rational>) -> Vec<Rational> {
    let mut acc = vec![zero(); points.dim()];
    for (&i, c) in coeffs {
        for (a, x) in acc.iter_mut().zip(points.points()[i].coords()) {
            *a += c * x;
        }
    }
    acc
}

/// Positive coefficients summing to one on each side, both combinations
/// equal to the stated common point.
fn check_certificate(points: &PointSequence, cert: &IntersectionCertificate) -> Result<(), String> {
    for coeffs in [&cert.coeffs_a, &cert.coeffs_b] {
        ensure(coeffs.values().all(|c| *c > zero()), || "non-positive coefficient".into())?;
        ensure(sum(coeffs.values()) == one(), || "coefficients do not sum to 1".into())?;
        ensure(combine(points, coeffs) == cert.common_point.coords(), || "combination misses the common point".into())?;
    }
    ensure(cert.coeffs_a.keys().all(|k| !cert.coeffs_b.contains_key(k)), || "sides overlap".into())
}

fn gale_identities(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, 1, 0, 0));
    let (mut sequences, mut subsets) = (0, 0);
    for d in 3..=6 {
        let m = 2 * d + 2;
        for i in 0..100 {
            let points = random_points(d, m, instance_seed(seed, 1, d, i), 1000).map_err(err)?;
            let diagram = gale_transform(&points).map_err(err)?;
            let basis = diagram.basis();
            ensure(basis.rows() == m - d - 1, || format!("d={d} #{i}: null space has dimension {}", basis.rows()))?;
            for b in basis.row_vectors() {
                // Every coordinate row of M(A), and the row of ones, annihilates b.
                for r in 0..d {
                    let s = sum(&points.points().iter().zip(b).map(|(p, bj)| &p[r] * bj).collect::<Vec<_>>());
                    ensure(s == zero(), || format!("d={d} #{i}: coordinate row {r} does not annihilate a basis row"))?;
                }
                ensure(sum(b) == zero(), || format!("d={d} #{i}: row of ones does not annihilate a basis row"))?;
            }
            for c in 0..=d {
                let s = sum(diagram.vectors().iter().map(|g| &g[c]));
                ensure(s == zero(), || format!("d={d} #{i}: Gale vectors do not sum to zero"))?;
            }
            let chosen: Vec<Vec<usize>> = if d <= 4 {
                (0..m).combinations(d + 1).collect()
            } else {
                (0..500)
                    .map(|_| {
                        let mut s = sample(&mut rng, m, d + 1).into_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect()
            };
            for subset in chosen {
                let rows: Vec<Vec<Rational>> = subset.iter().map(|&j| diagram.vectors()[j].coords().to_vec()).collect();
                let det = determinant(&rows).map_err(err)?;
                ensure(det != zero(), || format!("d={d} #{i}: Gale vectors {subset:?} do not span"))?;
                subsets += 1;
            }
            sequences += 1;
        }
    }
    Ok(format!("{sequences} sequences, {subsets} spanning subsets, all identities exact"))
}

fn radon_certificates(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, 2, 0, 0));
    let mut dims = [0usize; 4];
    for i in 0..200 {
        let d = 3 + i % 4;
        let points = random_points(d, 2 * d + 2, instance_seed(seed, 2, d, i), 1000).map_err(err)?;
        let diagram = gale_transform(&points).map_err(err)?;
        let mut found = None;
        for _ in 0..10_000 {
            let normal: Vec<Rational> = (0..=d).map(|_| Rational::from_integer(rng.random_range(-9i64..=9).into())).collect();
            if normal.iter().all(|x| *x == zero()) {
                continue;
            }
            let p = partition_vectors(diagram.vectors(), &normal).map_err(err)?;
            if p.plus.len() >= 2 && p.minus.len() >= 2 {
                found = Some(p);
                break;
            }
        }
        let partition = found.ok_or_else(|| format!("instance {i}: no hyperplane with two vectors per side"))?;
        let cert = radon_certificate(&diagram, &partition).map_err(|e| format!("instance {i}: {e}"))?;
        check_certificate(&points, &cert).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(cert.side_a() == partition.plus && cert.side_b() == partition.minus, || {
            format!("instance {i}: certificate sides are not the open half-spaces")
        })?;
        dims[d - 3] += 1;
    }
    Ok(format!("200 instances (d=3..6: {dims:?}), all certificates exact"))
}

fn theorem1_drawing(seed: u64, d: usize, i: usize) -> Result<Drawing, String> {
    let signature = PartiteSignature::theorem1(d).map_err(err)?;
    random_drawing(&signature, instance_seed(seed, 3, d, i), 1000).map_err(err)
}

fn ham_sandwich(seed: u64) -> Outcome {
    for d in 3..=6 {
        let colors = ColorClasses::theorem1(d);
        for i in 0..100 {
            let drawing = theorem1_drawing(seed, d, i)?;
            let order: Vec<usize> = drawing.parts().iter().flatten().copied().collect();
            let diagram = gale_transform(&drawing.vertices().select(&order).map_err(err)?).map_err(err)?;
            let normal = ham_sandwich_linear(diagram.vectors(), &colors).map_err(|e| format!("d={d} #{i}: {e}"))?;
            let signs: Vec<Sign> = diagram.vectors().iter().map(|g| Sign::of(&dot(g, &normal))).collect();
            ensure(signs.iter().filter(|s| **s == Sign::Zero).count() <= d, || {
                format!("d={d} #{i}: more than d Gale vectors on the hyperplane")
            })?;
            for class in colors.classes() {
                for side in [Sign::Positive, Sign::Negative] {
                    let k = class.iter().filter(|&&j| signs[j] == side).count();
                    ensure(k <= class.len() / 2, || format!("d={d} #{i}: class {class:?} has {k} vectors on one side"))?;
                }
            }
        }
    }
    Ok("400 drawings (100 per d=3..6), every class bisected".into())
}

fn is_rainbow(drawing: &Drawing, side: &[usize], full: bool) -> bool {
    let mut parts: Vec<usize> = side.iter().map(|&v| drawing.labels()[v]).collect();
    parts.sort_unstable();
    parts.dedup();
    parts.len() == side.len() && (!full || side.len() == drawing.dim())
}

fn theorem1_witnesses(seed: u64) -> Outcome {
    let mut extensions = 0;
    for d in 3..=6 {
        for i in 0..100 {
            let drawing = theorem1_drawing(seed, d, i)?;
            let w = theorem1_witness(&drawing).map_err(|e| format!("d={d} #{i}: {e}"))?;
            let at = || format!("d={d} #{i}");
            let points = drawing.vertices();
            // Radon partition: (I) disjoint, (II) crossing, (III) sizes, (IV)/(V) one per part.
            let (a, b) = (&w.radon.left, &w.radon.right);
            check_certificate(points, &w.radon.certificate).map_err(|e| format!("{}: radon {e}", at()))?;
            ensure(a.iter().all(|v| !b.contains(v)), || format!("{}: (I) fails", at()))?;
            ensure((2..=d).contains(&a.len()) && (2..=d).contains(&b.len()) && a.len() + b.len() >= d + 2, || {
                format!("{}: (III) fails with sizes {} and {}", at(), a.len(), b.len())
            })?;
            ensure(is_rainbow(&drawing, a, false) && is_rainbow(&drawing, b, false), || format!("{}: (IV)/(V) fail", at()))?;
            // Extended pair: the same conditions with |U| = |W| = d.
            let (u, v) = (&w.pair.left, &w.pair.right);
            check_certificate(points, &w.pair.certificate).map_err(|e| format!("{}: pair {e}", at()))?;
            ensure(u.iter().all(|x| !v.contains(x)), || format!("{}: extended (I) fails", at()))?;
            ensure(is_rainbow(&drawing, u, true) && is_rainbow(&drawing, v, true), || {
                format!("{}: extended pair is not two hyperedges", at())
            })?;
            ensure(a.iter().all(|x| u.contains(x)) && b.iter().all(|x| v.contains(x)), || {
                format!("{}: pair does not contain the Radon partition", at())
            })?;
            ensure(crosses(&drawing, u, v).map_err(err)?, || format!("{}: crossing test disagrees", at()))?;
            extensions += w.extensions;
        }
    }
    Ok(format!("400 witnesses verified, {extensions} extensions in total"))
}

fn observation1_counts(seed: u64) -> Outcome {
    let mut counts = Vec::new();
    for d in [4, 5, 6] {
        let expected = 1usize << (d / 2 - 1);
        ensure(observation1_pair_count(d) == expected, || format!("d={d}: pair count formula"))?;
        for i in 0..5 {
            let signature = PartiteSignature::observation1(d).map_err(err)?;
            let drawing = random_drawing(&signature, instance_seed(seed, 5, d, i), 1000).map_err(err)?;
            let w = observation1_witness(&drawing).map_err(|e| format!("d={d} #{i}: {e}"))?;
            ensure(w.pairs.len() == expected, || format!("d={d} #{i}: {} pairs, expected {expected}", w.pairs.len()))?;
            check_certificate(drawing.vertices(), &w.tverberg.certificate).map_err(|e| format!("d={d} #{i}: {e}"))?;
            for p in &w.pairs {
                check_certificate(drawing.vertices(), &p.certificate).map_err(|e| format!("d={d} #{i}: {e}"))?;
                ensure(is_rainbow(&drawing, &p.left, true) && is_rainbow(&drawing, &p.right, true), || {
                    format!("d={d} #{i}: pair is not two hyperedges")
                })?;
            }
        }
        counts.push(expected);
    }
    Ok(format!("pairs per witness for d=4,5,6: {counts:?} (5 drawings each)"))
}

/// Proper crossing of segments `p0p1` and `p2p3` from orientation signs.
fn segments_cross(p: &PointSequence) -> Result<bool, String> {
    let q = |i: usize| &p.points()[i];
    let o = |a: usize, b: usize, c: usize| orientation(&[q(a), q(b), q(c)]).map(Sign::as_i8).map_err(err);
    Ok(o(0, 1, 2)? * o(0, 1, 3)? < 0 && o(2, 3, 0)? * o(2, 3, 1)? < 0)
}

fn segment_oracle(seed: u64) -> Outcome {
    let mut crossing = 0;
    for i in 0..1000 {
        let p = random_points(2, 4, instance_seed(seed, 6, 2, i), 50).map_err(err)?;
        let lp = relint_intersection(&p, &[0, 1], &[2, 3]).map_err(err)?;
        let oracle = segments_cross(&p)?;
        ensure(lp.is_some() == oracle, || format!("pair {i}: LP says {}, orientation says {oracle}", lp.is_some()))?;
        if let Some(cert) = lp {
            check_certificate(&p, &cert).map_err(|e| format!("pair {i}: {e}"))?;
            crossing += 1;
        }
    }
    Ok(format!("1000/1000 agree ({crossing} crossing)"))
}

/// Binomial coefficient by the multiplicative formula in u128.
fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn bound_values() -> Outcome {
    let expect = |n: usize, d: usize, kind: BoundKind, value: i64| -> Result<(), String> {
        let want = Rational::from_integer(value.into());
        let product = lower_bound(n, d, kind).map_err(err)?;
        let closed = lower_bound_closed_form(n, d, kind).map_err(err)?;
        ensure(product == want && closed == want, || format!("{kind}({n},{d}) = {product} / {closed}, expected {value}"))
    };
    expect(3, 3, BoundKind::Theorem1, 3)?;
    expect(3, 4, BoundKind::Theorem1, 9)?;
    expect(3, 5, BoundKind::Theorem1, 27)?;
    expect(3, 4, BoundKind::Observation1, 6)?;

    let mut compared = 0;
    for n in 3..=10usize {
        for d in 2..=20usize {
            for kind in [BoundKind::Theorem1, BoundKind::Observation1] {
                let product = lower_bound(n, d, kind).map_err(err)?;
                let closed = lower_bound_closed_form(n, d, kind).map_err(err)?;
                ensure(product == closed, || format!("{kind}({n},{d}): {product} != {closed}"))?;
                compared += 1;
            }
            // Independent small-integer evaluation where it fits.
            let (c3, c2, n2) = (binom(n as u128, 3), binom(n as u128, 2), (n - 2) as u128);
            if let Some(num) = c3.checked_pow(2).and_then(|x| c2.checked_pow(d as u32 - 2).and_then(|y| x.checked_mul(y))) {
                let oracle = Rational::new(num.into(), (n2 * n2).into());
                ensure(oracle == lower_bound(n, d, BoundKind::Theorem1).map_err(err)?, || format!("thm1({n},{d}) oracle"))?;
            }
        }
    }
    Ok(format!("4 exact values, {compared} product/closed-form pairs agree"))
}

fn bound_respect(seed: u64) -> Outcome {
    let mut minima = Vec::new();
    for (d, n, drawings, bound) in [(3usize, 3usize, 50usize, 3u64), (4, 3, 10, 9)] {
        let signature = PartiteSignature::balanced(d, n).map_err(err)?;
        let mut min = u64::MAX;
        for i in 0..drawings {
            let drawing = random_drawing(&signature, instance_seed(seed, 8, d, i), 1000).map_err(err)?;
            let report = count_crossings(&drawing, false).map_err(err)?;
            ensure(report.crossing_count >= bound, || {
                format!("{signature} drawing #{i}: {} crossings, bound {bound}", report.crossing_count)
            })?;
            ensure(report.bound_comparisons.iter().all(|b| b.satisfied), || format!("{signature} #{i}: report flags a bound"))?;
            min = min.min(report.crossing_count);
        }
        minima.push(format!("{signature}: {drawings} drawings, min {min} >= {bound}"));
    }
    Ok(minima.join("; "))
}

fn two_layer() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=6usize {
        let drawing = two_layer_bipartite(n).map_err(err)?;
        let report = count_crossings(&drawing, false).map_err(err)?;
        let expected = (binom(n as u128, 2) * binom(n as u128, 2)) as u64;
        ensure(report.crossing_count == expected, || format!("n={n}: {} crossings, expected {expected}", report.crossing_count))?;
        counts.push(report.crossing_count);
    }
    Ok(format!("n=2..6: {counts:?}"))
}

fn determinism(seed: u64) -> Outcome {
    let dir = std::env::temp_dir().join(format!("hypercross-selftest-{}-{seed}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let result = determinism_in(&dir, seed);
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn determinism_in(dir: &std::path::Path, seed: u64) -> Outcome {
    let gen = |sig: &str| {
        Command::Gen(GenArgs {
            signature: Some(sig.into()),
            n: None,
            d: None,
            seed,
            coord_bound: 1000,
            output: None,
        })
    };
    let run = |make: &dyn Fn() -> Command| -> Result<String, String> {
        let a = execute(make()).map_err(|(_, f)| f.to_string())?.stdout;
        let b = execute(make()).map_err(|(_, f)| f.to_string())?.stdout;
        ensure(a == b, || "two runs differ".into())?;
        Ok(a)
    };
    let balanced = run(&|| gen("3x3"))?;
    let shaped = run(&|| gen("2x3+1x2"))?;
    let (balanced_path, shaped_path) = (dir.join("balanced.json"), dir.join("shaped.json"));
    std::fs::write(&balanced_path, &balanced).map_err(err)?;
    std::fs::write(&shaped_path, &shaped).map_err(err)?;

    let mut bytes = balanced.len() + shaped.len();
    for format in [Format::Human, Format::Structured] {
        bytes += run(&|| Command::Count(CountArgs { input: balanced_path.clone(), emit_pairs: true, format }))?.len();
        bytes += run(&|| Command::Bounds(BoundsArgs { n: "3..4".into(), d: "2..6".into(), format }))?.len();
    }
    bytes += run(&|| {
        Command::Witness(WitnessArgs { input: shaped_path.clone(), observation1: false, output: None, format: None })
    })?
    .len();
    ensure(random_points(3, 8, seed, 1000) == random_points(3, 8, seed, 1000), || "generator differs".into())?;
    let a: Vec<Point> = random_points(2, 5, seed, 100).map_err(err)?.points().to_vec();
    let b: Vec<Point> = random_points(2, 5, seed, 100).map_err(err)?.points().to_vec();
    ensure(a == b, || "point generator differs".into())?;
    Ok(format!("gen, count, bounds, witness repeated: {bytes} bytes identical"))
}
