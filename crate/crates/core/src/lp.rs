//! Dense two-phase simplex over exact rationals.
//!
//! Solves `maximize c·x subject to A x = b, x ≥ 0`. Bland's rule is used for
//! both the entering and the leaving variable, which rules out cycling and
//! makes the returned vertex a pure function of the input.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exact_geom::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// An equality-form linear program.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, rows: Vec::new(), rhs: Vec::new(), objective: vec![Rational::zero(); vars] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Adds the constraint `Σ coeff·x_var = rhs`.
    pub fn add_equality<I>(&mut self, terms: I, rhs: Rational)
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut row = vec![Rational::zero(); self.vars];
        for (var, coeff) in terms {
            row[var] += coeff;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn maximize(&self) -> LpOutcome {
        Tableau::new(self).solve(&self.objective)
    }
}

struct Tableau {
    vars: usize,
    // Each row holds the structural columns, then one artificial column per
    // original row, then the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let width = lp.vars + m + 1;
        let mut rows = Vec::with_capacity(m);
        for (i, (row, rhs)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = rhs.is_negative();
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().map(|x| if flip { -x } else { x.clone() }));
            t.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            t.push(if flip { -rhs } else { rhs.clone() });
            rows.push(t);
        }
        Tableau { vars: lp.vars, rows, basis: (lp.vars..lp.vars + m).collect() }
    }

    fn rhs_col(&self) -> usize {
        self.rows.first().map_or(self.vars, |r| r.len() - 1)
    }

    fn pivot(&mut self, reduced: &mut [Rational], row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for x in self.rows[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let factor = target[col].clone();
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                *t -= &factor * p;
            }
        }
        if !reduced[col].is_zero() {
            let factor = reduced[col].clone();
            for (t, p) in reduced.iter_mut().zip(&pivot_row) {
                *t -= &factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced-cost row for `cost`, with the negated objective value stored in
    /// the right-hand-side slot.
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.resize(self.rhs_col() + 1, Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (r, t) in reduced.iter_mut().zip(row) {
                *r -= &cost[b] * t;
            }
        }
        reduced
    }

    /// Runs simplex iterations allowing only columns `< allowed` to enter.
    /// Returns false if the objective is unbounded.
    fn iterate(&mut self, reduced: &mut [Rational], allowed: usize) -> bool {
        let rhs = self.rhs_col();
        loop {
            let Some(col) = (0..allowed).find(|&j| reduced[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else {
                return false;
            };
            self.pivot(reduced, row, col);
        }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        let m = self.rows.len();
        let total = self.vars + m;
        let rhs = self.rhs_col();

        let mut phase1_cost = vec![Rational::zero(); total];
        for c in phase1_cost.iter_mut().skip(self.vars) {
            *c = -Rational::one();
        }
        let mut reduced = self.reduced_costs(&phase1_cost);
        self.iterate(&mut reduced, total);
        let infeasibility = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|&(_, &b)| b >= self.vars)
            .fold(Rational::zero(), |acc, (row, _)| acc + &row[rhs]);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }

        // Drive zero-valued artificials out of the basis; rows where that is
        // impossible are redundant and dropped.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.vars {
                r += 1;
                continue;
            }
            match (0..self.vars).find(|&j| !self.rows[r][j].is_zero()) {
                Some(col) => {
                    self.pivot(&mut reduced, r, col);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }

        let mut cost = objective.to_vec();
        cost.resize(total, Rational::zero());
        let mut reduced = self.reduced_costs(&cost);
        if !self.iterate(&mut reduced, self.vars) {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); self.vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[rhs].clone();
        }
        let value = objective.iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::{ratio, rational};

    #[test]
    fn textbook_maximum() {
        // max 3x + 2y, x + y + s1 = 4, x + 3y + s2 = 6
        let mut lp = LinearProgram::new(4);
        lp.add_equality([(0, rational(1)), (1, rational(1)), (2, rational(1))], rational(4));
        lp.add_equality([(0, rational(1)), (1, rational(3)), (3, rational(1))], rational(6));
        lp.set_objective(0, rational(3));
        lp.set_objective(1, rational(2));
        match lp.maximize() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rational(12));
                assert_eq!(x[0], rational(4));
                assert_eq!(x[1], rational(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_optimum() {
        // max x, 3x + s = 1 -> 1/3
        let mut lp = LinearProgram::new(2);
        lp.add_equality([(0, rational(3)), (1, rational(1))], rational(1));
        lp.set_objective(0, rational(1));
        assert_eq!(
            lp.maximize(),
            LpOutcome::Optimal { x: vec![ratio(1, 3), rational(0)], value: ratio(1, 3) }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_equality([(0, rational(1))], rational(-1));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.add_equality([(0, rational(1)), (1, rational(-1))], rational(0));
        lp.set_objective(0, rational(1));
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.add_equality([(0, rational(1)), (1, rational(1))], rational(2));
        lp.add_equality([(0, rational(2)), (1, rational(2))], rational(4));
        lp.set_objective(1, rational(1));
        assert_eq!(lp.maximize(), LpOutcome::Optimal { x: vec![rational(0), rational(2)], value: rational(2) });
    }
}
