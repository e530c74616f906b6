//! Exact linear programming over polyhedra.
//!
//! A dense two-phase tableau simplex with Bland's rule. Free variables are
//! split as `x = u - v` with `u, v >= 0`, every inequality gets a slack, and
//! rows with a negative right-hand side get an artificial variable for
//! phase one. Bland's rule guarantees termination on degenerate problems, and
//! with an exact scalar type the results are exact.

use crate::error::{Error, Result};
use crate::numeric::ColVec;
use crate::polyhedra::{LinearConstraint, Polyhedron};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Infeasible,
    Unbounded,
    Optimal { value: T, witness: ColVec<T> },
}

impl<T> LpOutcome<T> {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() / pivot.clone();
        }
        self.rhs[row] = self.rhs[row].clone() / pivot;

        let (pivot_row, pivot_rhs) = (self.rows[row].clone(), self.rhs[row].clone());
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.clone() - factor.clone() * p.clone();
                }
            }
            self.rhs[i] = self.rhs[i].clone() - factor * pivot_rhs.clone();
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, cost: &[T], col: usize) -> T {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(cost[col].clone(), |acc, (row, &b)| {
                if cost[b].is_zero() {
                    acc
                } else {
                    acc - cost[b].clone() * row[col].clone()
                }
            })
    }

    fn objective(&self, cost: &[T]) -> T {
        self.rhs
            .iter()
            .zip(&self.basis)
            .fold(T::zero(), |acc, (r, &b)| acc + cost[b].clone() * r.clone())
    }

    /// Maximizes `cost . z` letting only columns below `enterable` enter.
    fn optimize(&mut self, cost: &[T], enterable: usize) -> Phase {
        loop {
            let entering = (0..enterable).find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j) > T::zero());
            let Some(col) = entering else {
                return Phase::Optimal;
            };

            let mut leaving: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if *a <= T::zero() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / a.clone();
                let better = match &leaving {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return Phase::Unbounded,
            }
        }
    }

    fn value_of(&self, col: usize) -> T {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(T::zero, |i| self.rhs[i].clone())
    }
}

/// Result of phase one: a tableau whose basis is feasible for the original
/// problem with artificial columns removed, or `None` if infeasible.
fn phase_one<T: Scalar>(p: &Polyhedron<T>) -> Option<Tableau<T>> {
    let n = p.dim();
    let m = p.constraints().len();
    let structural = 2 * n + m;
    let negative_rows: Vec<usize> = (0..m).filter(|&i| *p.constraints()[i].bound() < T::zero()).collect();
    let width = structural + negative_rows.len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_artificial = structural;
    for (i, c) in p.constraints().iter().enumerate() {
        let mut row = vec![T::zero(); width];
        for (k, a) in c.coeffs().iter().enumerate() {
            row[k] = a.clone();
            row[n + k] = -a.clone();
        }
        row[2 * n + i] = T::one();
        let mut b = c.bound().clone();
        if b < T::zero() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
            row[next_artificial] = T::one();
            basis.push(next_artificial);
            next_artificial += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
        rhs.push(b);
    }

    let mut tableau = Tableau { rows, rhs, basis };
    if !negative_rows.is_empty() {
        let mut cost = vec![T::zero(); width];
        for c in cost.iter_mut().skip(structural) {
            *c = -T::one();
        }
        // Phase one is bounded above by zero, so it always ends optimal.
        tableau.optimize(&cost, width);
        if tableau.objective(&cost) < T::zero() {
            return None;
        }

        // Artificials still basic sit at level zero; swap them out or drop
        // their (redundant) rows.
        let mut i = 0;
        while i < tableau.rows.len() {
            if tableau.basis[i] < structural {
                i += 1;
                continue;
            }
            match (0..structural).find(|&j| !tableau.rows[i][j].is_zero()) {
                Some(j) => {
                    tableau.pivot(i, j);
                    i += 1;
                }
                None => {
                    tableau.rows.remove(i);
                    tableau.rhs.remove(i);
                    tableau.basis.remove(i);
                }
            }
        }
        for row in tableau.rows.iter_mut() {
            row.truncate(structural);
        }
    }
    Some(tableau)
}

fn split_point<T: Scalar>(tableau: &Tableau<T>, n: usize) -> ColVec<T> {
    (0..n).map(|k| tableau.value_of(k) - tableau.value_of(n + k)).collect()
}

/// Optimizes `objective . x` over `p`.
pub fn solve<T: Scalar>(p: &Polyhedron<T>, objective: &ColVec<T>, sense: Sense) -> Result<LpOutcome<T>> {
    let n = p.dim();
    if objective.dim() != n {
        return Err(Error::Dimension {
            op: "solve",
            expected: n,
            found: objective.dim(),
        });
    }
    let Some(mut tableau) = phase_one(p) else {
        return Ok(LpOutcome::Infeasible);
    };

    let structural = 2 * n + p.constraints().len();
    let mut cost = vec![T::zero(); structural];
    for (k, c) in objective.iter().enumerate() {
        let c = match sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c.clone(),
        };
        cost[n + k] = -c.clone();
        cost[k] = c;
    }
    match tableau.optimize(&cost, structural) {
        Phase::Unbounded => Ok(LpOutcome::Unbounded),
        Phase::Optimal => {
            let witness = split_point(&tableau, n);
            let value = objective.dot(&witness)?;
            Ok(LpOutcome::Optimal { value, witness })
        }
    }
}

/// Some point of `p`, or `None` if `p` is empty.
pub fn feasible_point<T: Scalar>(p: &Polyhedron<T>) -> Option<ColVec<T>> {
    phase_one(p).map(|t| split_point(&t, p.dim()))
}

pub fn is_empty<T: Scalar>(p: &Polyhedron<T>) -> bool {
    phase_one(p).is_none()
}

/// A point `x` of `p` with `functional . x != target`, or `None` when the
/// functional is constantly `target` on `p` (including when `p` is empty).
pub fn find_deviation<T: Scalar>(p: &Polyhedron<T>, functional: &ColVec<T>, target: &T) -> Result<Option<ColVec<T>>> {
    if functional.dim() != p.dim() {
        return Err(Error::Dimension {
            op: "find_deviation",
            expected: p.dim(),
            found: functional.dim(),
        });
    }
    if functional.is_zero() {
        return Ok(if target.is_zero() { None } else { feasible_point(p) });
    }

    for sense in [Sense::Maximize, Sense::Minimize] {
        match solve(p, functional, sense)? {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Optimal { value, witness } => {
                if value != *target {
                    return Ok(Some(witness));
                }
            }
            LpOutcome::Unbounded => {
                // Push past the target by one unit in the unbounded direction.
                let cut = match sense {
                    Sense::Maximize => {
                        LinearConstraint::new(functional.scale(&-T::one()), -(target.clone() + T::one()))
                    }
                    Sense::Minimize => LinearConstraint::new(functional.clone(), target.clone() - T::one()),
                };
                return Ok(feasible_point(&p.with_constraint(cut)?));
            }
        }
    }
    Ok(None)
}

/// True iff `functional . x == target` for every `x` in `p`.
pub fn is_constant_on<T: Scalar>(p: &Polyhedron<T>, functional: &ColVec<T>, target: &T) -> Result<bool> {
    Ok(find_deviation(p, functional, target)?.is_none())
}
