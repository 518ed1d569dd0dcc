//! Exact evaluation of the crossing lower bounds for `K_{d×n}^d`.
//!
//! Each bound has a counting form (crossings in a small sub-hypergraph, times
//! the number of its induced copies, divided by how many copies share one
//! crossing pair) and an algebraically simplified closed form. Both are
//! computed independently so they can be checked against each other.

use alloc::format;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::exact_geom::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundKind {
    /// Gale transform and Ham-Sandwich pipeline.
    Theorem1,
    /// Colored Tverberg pipeline.
    Observation1,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Theorem1 => "thm1",
            BoundKind::Observation1 => "obs1",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm1" => Ok(BoundKind::Theorem1),
            "obs1" => Ok(BoundKind::Observation1),
            _ => Err(Error::Precondition(format!("unknown bound {s:?}, expected thm1 or obs1"))),
        }
    }
}

fn check(n: usize, d: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Undefined(format!("bounds need n >= 3 (n - 2 divides), got n = {n}")));
    }
    if d < 2 {
        return Err(Error::Undefined(format!("bounds need d >= 2, got d = {d}")));
    }
    Ok(())
}

fn choose(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

fn int(x: usize) -> BigInt {
    BigInt::from(x)
}

fn pow(base: BigInt, exp: usize) -> BigInt {
    Pow::pow(base, exp)
}

/// Counting form of the bound.
///
/// * `thm1 = C(n,3)^2 · C(n,2)^(d−2) / (n−2)^2`
/// * `obs1 = 2^(⌊d/2⌋−1) · C(n,3)^(⌈d/2⌉+1) · C(n,2)^(⌊d/2⌋−1) / (n−2)^(⌈d/2⌉+1)`
pub fn lower_bound(n: usize, d: usize, kind: BoundKind) -> Result<Rational> {
    check(n, d)?;
    let (c3, c2) = (choose(n, 3), choose(n, 2));
    let (num, den) = match kind {
        BoundKind::Theorem1 => (pow(c3, 2) * pow(c2, d - 2), pow(int(n - 2), 2)),
        BoundKind::Observation1 => {
            let (hi, lo) = (d.div_ceil(2), d / 2);
            (pow(int(2), lo - 1) * pow(c3, hi + 1) * pow(c2, lo - 1), pow(int(n - 2), hi + 1))
        }
    };
    Ok(Rational::new(num, den))
}

/// Closed form of the bound.
///
/// * `thm1 = n^d (n−1)^d / (9 · 2^d)`
/// * `obs1 = n^d (n−1)^d / 6^(⌈d/2⌉+1)`
pub fn lower_bound_closed_form(n: usize, d: usize, kind: BoundKind) -> Result<Rational> {
    check(n, d)?;
    let num = pow(int(n), d) * pow(int(n - 1), d);
    let den = match kind {
        BoundKind::Theorem1 => int(9) * pow(int(2), d),
        BoundKind::Observation1 => pow(int(6), d.div_ceil(2) + 1),
    };
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubhypergraphCounts {
    /// Induced copies of `K_{2×3+(d−2)×2}^d` inside `K_{d×n}^d`.
    pub embeddings: BigInt,
    /// Copies that contain one fixed crossing pair of hyperedges.
    pub containment: BigInt,
}

pub fn subhypergraph_counts(n: usize, d: usize) -> Result<SubhypergraphCounts> {
    if n < 3 || d < 3 {
        return Err(Error::Undefined(format!("sub-hypergraph counts need n >= 3 and d >= 3, got n = {n}, d = {d}")));
    }
    Ok(SubhypergraphCounts {
        embeddings: pow(choose(n, 3), 2) * pow(choose(n, 2), d - 2),
        containment: pow(int(n - 2), 2),
    })
}

impl SubhypergraphCounts {
    /// `embeddings / containment`, i.e. the Theorem 1 bound.
    pub fn ratio(&self) -> Rational {
        if self.containment.is_one() {
            Rational::from_integer(self.embeddings.clone())
        } else {
            Rational::new(self.embeddings.clone(), self.containment.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{ratio, rational};

    #[test]
    fn exact_values() {
        assert_eq!(lower_bound(3, 3, BoundKind::Theorem1).unwrap(), rational(3));
        assert_eq!(lower_bound(3, 4, BoundKind::Theorem1).unwrap(), rational(9));
        assert_eq!(lower_bound(3, 5, BoundKind::Theorem1).unwrap(), rational(27));
        assert_eq!(lower_bound(3, 4, BoundKind::Observation1).unwrap(), rational(6));
        // C(5,3)^2 C(5,2) / 9 = 1000/9
        assert_eq!(lower_bound(5, 3, BoundKind::Theorem1).unwrap(), ratio(1000, 9));
    }

    #[test]
    fn forms_agree() {
        for n in 3..=10 {
            for d in 2..=20 {
                for kind in [BoundKind::Theorem1, BoundKind::Observation1] {
                    assert_eq!(lower_bound(n, d, kind).unwrap(), lower_bound_closed_form(n, d, kind).unwrap(), "{kind} n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn theorem1_dominates_for_large_d() {
        for n in 3..=10 {
            for d in 7..=20 {
                assert!(lower_bound(n, d, BoundKind::Theorem1).unwrap() >= lower_bound(n, d, BoundKind::Observation1).unwrap());
            }
        }
    }

    #[test]
    fn undefined_below_three() {
        assert!(matches!(lower_bound(2, 3, BoundKind::Theorem1), Err(Error::Undefined(_))));
        assert!(matches!(lower_bound_closed_form(2, 3, BoundKind::Observation1), Err(Error::Undefined(_))));
        assert!(matches!(subhypergraph_counts(3, 2), Err(Error::Undefined(_))));
    }

    #[test]
    fn subhypergraph_examples() {
        let c = subhypergraph_counts(3, 3).unwrap();
        assert_eq!((c.embeddings, c.containment), (BigInt::from(3), BigInt::from(1)));
        let c = subhypergraph_counts(3, 4).unwrap();
        assert_eq!((c.embeddings, c.containment), (BigInt::from(9), BigInt::from(1)));
        let c = subhypergraph_counts(4, 3).unwrap();
        assert_eq!((c.embeddings.clone(), c.containment.clone()), (BigInt::from(96), BigInt::from(4)));
        assert_eq!(c.ratio(), lower_bound(4, 3, BoundKind::Theorem1).unwrap());
    }
}
