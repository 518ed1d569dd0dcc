//! Exact rational scalars, points, and the small dense linear algebra every
//! other module builds on: orientation, rank, null spaces and hyperplanes
//! through the origin.
//!
//! Nothing in here rounds. Pivoting is always leftmost column, first nonzero
//! row, so every derived object is reproducible bit for bit.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `"p"`, `"-p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let text_trim = text.trim();
    let (num, den) = match text_trim.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text_trim, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Rational) -> Self {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn of_int(value: &BigInt) -> Self {
        match value.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// A coordinate vector. Also used for Gale vectors and hyperplane normals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        dot(&self.0, other)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Accumulates `scale * other` into `self`.
    pub fn add_scaled(&mut self, scale: &Rational, other: &[Rational]) {
        for (a, b) in self.0.iter_mut().zip(other) {
            *a += scale * b;
        }
    }
}

impl Deref for Point {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for Point {
    fn from(coords: Vec<Rational>) -> Self {
        Point(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(format_rational).join(", "))
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// An ordered sequence of points of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSequence {
    dim: usize,
    points: Vec<Point>,
}

impl PointSequence {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension { expected: 1, found: 0 });
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::Dimension { expected: dim, found: p.dim() });
        }
        Ok(PointSequence { dim, points })
    }

    pub fn from_ints(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| Point::from_ints(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, index: usize) -> Option<&Point> {
        self.points.get(index)
    }

    /// Returns the subsequence at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<PointSequence> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points.get(i).cloned().ok_or_else(|| {
                    Error::BadEdge(alloc::format!("vertex {} out of range 0..{}", i, self.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSequence { dim: self.dim, points })
    }

    /// The (d+1)×m matrix with the points as columns and a row of ones below.
    pub fn homogeneous_matrix(&self) -> Matrix {
        let mut rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|k| self.points.iter().map(|p| p[k].clone()).collect())
            .collect();
        rows.push(vec![Rational::one(); self.len()]);
        Matrix { rows: self.dim + 1, cols: self.len(), data: rows }
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn new(cols: usize, data: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(row) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, found: row.len() });
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    pub fn from_ints(cols: usize, data: &[&[i64]]) -> Result<Self> {
        Self::new(cols, data.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[row].clone();
            for (r, target) in m.iter_mut().enumerate() {
                if r == row || target[col].is_zero() {
                    continue;
                }
                let factor = target[col].clone();
                for (t, p) in target.iter_mut().zip(&pivot_row) {
                    *t -= &factor * p;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray with a positive first nonzero entry.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        gcd = -gcd;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &gcd)).collect()
}

/// A basis of `{v : M v = 0}`.
///
/// One vector per free column of the reduced row echelon form, in column
/// order; the free variable is set to one and the vector is then scaled to
/// its primitive integer representative. A zero matrix yields the standard
/// basis.
pub fn null_space_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = m.rref();
    let mut basis = Vec::with_capacity(m.cols - pivots.len());
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced.data[r][free].clone();
        }
        basis.push(primitive(&v));
    }
    basis
}

/// Fraction-free Gaussian elimination. Consumes the matrix.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Clears the denominators of each row, returning the integer rows and the
/// positive per-row multipliers.
fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            (ints, lcm)
        })
        .unzip()
}

/// Exact determinant of a square matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Result<Rational> {
    if let Some(r) = rows.iter().find(|r| r.len() != rows.len()) {
        return Err(Error::Dimension { expected: rows.len(), found: r.len() });
    }
    let (ints, scales) = integer_rows(rows);
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rational::new(bareiss_determinant(ints), scale))
}

fn determinant_sign(rows: &[Vec<Rational>]) -> Sign {
    // Row multipliers are positive, so the sign survives scaling.
    Sign::of_int(&bareiss_determinant(integer_rows(rows).0))
}

/// Sign of the determinant whose rows are `(1, p_0)`, ..., `(1, p_d)`.
/// Zero iff the d+1 points are affinely dependent.
pub fn orientation(simplex: &[&Point]) -> Result<Sign> {
    let d = simplex.len().saturating_sub(1);
    if let Some(p) = simplex.iter().find(|p| p.dim() != d) {
        return Err(Error::Dimension { expected: d, found: p.dim() });
    }
    let rows: Vec<Vec<Rational>> = simplex
        .iter()
        .map(|p| core::iter::once(Rational::one()).chain(p.iter().cloned()).collect())
        .collect();
    Ok(determinant_sign(&rows))
}

/// Whether `vectors` (all of one dimension) are linearly independent.
pub fn linearly_independent(vectors: &[&[Rational]]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let cols = first.len();
    if vectors.len() > cols {
        return false;
    }
    if vectors.len() == cols {
        return determinant_sign(&vectors.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
            != Sign::Zero;
    }
    let m = Matrix { rows: vectors.len(), cols, data: vectors.iter().map(|v| v.to_vec()).collect() };
    m.rank() == vectors.len()
}

pub fn affinely_independent(points: &[&Point]) -> bool {
    let lifted: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| p.iter().cloned().chain(core::iter::once(Rational::one())).collect())
        .collect();
    linearly_independent(&lifted.iter().map(Vec::as_slice).collect::<Vec<_>>())
}

/// Checks that no d+1 points lie on a common hyperplane.
///
/// On failure the lexicographically first violating index subset is
/// reported.
pub fn is_general_position(seq: &PointSequence) -> Result<()> {
    let k = seq.dim() + 1;
    for subset in (0..seq.len()).combinations(k) {
        let simplex: Vec<&Point> = subset.iter().map(|&i| &seq.points[i]).collect();
        if orientation(&simplex)? == Sign::Zero {
            return Err(Error::NotInGeneralPosition(subset));
        }
    }
    Ok(())
}

/// Like [`is_general_position`] but only examines subsets that contain the
/// last point; used when growing a sequence one point at a time.
pub(crate) fn last_point_in_general_position(points: &[Point], dim: usize) -> bool {
    let Some((last, rest)) = points.split_last() else {
        return true;
    };
    if rest.len() < dim {
        return affinely_independent(&points.iter().collect::<Vec<_>>());
    }
    rest.iter().combinations(dim).all(|mut subset| {
        subset.push(last);
        matches!(orientation(&subset), Ok(s) if s != Sign::Zero)
    })
}

/// Normal of the linear hyperplane through `k` linearly independent vectors in
/// R^{k+1}, scaled so its first nonzero entry is +1.
pub fn hyperplane_through_origin(spanning: &[&[Rational]]) -> Result<Point> {
    let ambient = spanning.len() + 1;
    if let Some(s) = spanning.iter().find(|s| s.len() != ambient) {
        return Err(Error::Dimension { expected: ambient, found: s.len() });
    }
    let m = Matrix { rows: spanning.len(), cols: ambient, data: spanning.iter().map(|s| s.to_vec()).collect() };
    let mut basis = null_space_basis(&m);
    if basis.len() != 1 {
        return Err(Error::Degenerate("spanning vectors are linearly dependent"));
    }
    let mut normal = basis.pop().expect("one basis vector");
    let lead = normal.iter().find(|x| !x.is_zero()).cloned().expect("nonzero null vector");
    for x in normal.iter_mut() {
        *x /= &lead;
    }
    Ok(Point(normal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(dim: usize, raw: &[&[i64]]) -> PointSequence {
        PointSequence::from_ints(dim, raw).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    /// Cofactor expansion; independent of the elimination path.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        if m.is_empty() {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for (j, lead) in m[0].iter().enumerate() {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = lead * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
        assert_eq!(parse_rational(" 7 ").unwrap(), rational(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn orientation_examples() {
        let tri = pts(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let tri: Vec<&Point> = tri.points().iter().collect();
        assert_eq!(orientation(&tri).unwrap(), Sign::Positive);

        let line = pts(2, &[&[0, 0], &[1, 1], &[2, 2]]);
        let line: Vec<&Point> = line.points().iter().collect();
        assert_eq!(orientation(&line).unwrap(), Sign::Zero);

        let rows = [ints(&[1, 0, 0, 0]), ints(&[1, 1, 0, 0]), ints(&[1, 0, 1, 0]), ints(&[1, 0, 0, 1])];
        assert_eq!(cofactor_det(&rows), rational(1));
        let tet = pts(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let tet: Vec<&Point> = tet.points().iter().collect();
        assert_eq!(orientation(&tet).unwrap(), Sign::Positive);
    }

    #[test]
    fn orientation_rejects_dimension_mismatch() {
        let a = Point::from_ints(&[0, 0]);
        let b = Point::from_ints(&[1, 0, 0]);
        let c = Point::from_ints(&[0, 1]);
        assert!(matches!(orientation(&[&a, &b, &c]), Err(Error::Dimension { .. })));
        assert!(matches!(orientation(&[&a, &c]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = [
            vec![ratio(1, 2), rational(3), rational(-1)],
            vec![rational(2), ratio(-5, 3), rational(4)],
            vec![rational(0), rational(7), ratio(1, 7)],
        ];
        assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn null_space_examples() {
        let m = Matrix::from_ints(3, &[&[0, 1, 2], &[1, 1, 1]]).unwrap();
        assert_eq!(null_space_basis(&m), vec![ints(&[1, -2, 1])]);

        assert!(null_space_basis(&Matrix::identity(3)).is_empty());

        let square = Matrix::from_ints(4, &[&[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 1, 1, 1]]).unwrap();
        assert_eq!(null_space_basis(&square), vec![ints(&[1, -1, 1, -1])]);

        let zero = Matrix::zeros(2, 3);
        assert_eq!(null_space_basis(&zero), vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn general_position_examples() {
        assert!(is_general_position(&pts(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).is_ok());
        assert_eq!(
            is_general_position(&pts(2, &[&[0, 0], &[1, 1], &[2, 2], &[0, 1]])),
            Err(Error::NotInGeneralPosition(vec![0, 1, 2]))
        );
    }

    #[test]
    fn hyperplane_examples() {
        let e1 = ints(&[1, 0]);
        assert_eq!(hyperplane_through_origin(&[&e1]).unwrap(), Point::from_ints(&[0, 1]));

        let a = ints(&[1, 0, 0]);
        let b = ints(&[0, 1, 0]);
        assert_eq!(hyperplane_through_origin(&[&a, &b]).unwrap(), Point::from_ints(&[0, 0, 1]));

        let a = ints(&[1, 1, 1]);
        let b = ints(&[1, 2, 3]);
        assert_eq!(hyperplane_through_origin(&[&a, &b]).unwrap(), Point::from_ints(&[1, -2, 1]));

        let c = ints(&[2, 2, 2]);
        assert_eq!(
            hyperplane_through_origin(&[&a, &c]),
            Err(Error::Degenerate("spanning vectors are linearly dependent"))
        );
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[ratio(-1, 2), ratio(1, 3), rational(0)]), ints(&[3, -2, 0]));
        assert_eq!(primitive(&[rational(0), rational(4), rational(-6)]), ints(&[0, 2, -3]));
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
                .prop_map(move |rows| Matrix::new(c, rows.into_iter().map(|r| r.into_iter().map(rational).collect()).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let basis = null_space_basis(&m);
            prop_assert_eq!(m.rank() + basis.len(), m.cols());
            for v in &basis {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            let refs: Vec<&[Rational]> = basis.iter().map(Vec::as_slice).collect();
            prop_assert!(linearly_independent(&refs));
        }

        #[test]
        fn orientation_alternates(raw in proptest::collection::vec(proptest::collection::vec(-50i64..50, 3), 4), i in 0usize..4, j in 0usize..4) {
            prop_assume!(i != j);
            let points: Vec<Point> = raw.iter().map(|p| Point::from_ints(p)).collect();
            let mut swapped = points.clone();
            swapped.swap(i, j);
            let a = orientation(&points.iter().collect::<Vec<_>>()).unwrap();
            let b = orientation(&swapped.iter().collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(a.as_i8(), -b.as_i8());
        }

        #[test]
        fn hyperplane_is_orthogonal(raw in proptest::collection::vec(proptest::collection::vec(-20i64..20, 4), 3)) {
            let vs: Vec<Vec<Rational>> = raw.iter().map(|v| v.iter().map(|&x| rational(x)).collect()).collect();
            let refs: Vec<&[Rational]> = vs.iter().map(Vec::as_slice).collect();
            match hyperplane_through_origin(&refs) {
                Ok(normal) => {
                    prop_assert!(!normal.is_zero());
                    for v in &vs {
                        prop_assert!(normal.dot(v).is_zero());
                    }
                }
                Err(_) => prop_assert!(!linearly_independent(&refs)),
            }
        }
    }
}
