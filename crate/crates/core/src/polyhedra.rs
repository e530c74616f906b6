//! Closed halfspaces `c . x <= b` and their finite intersections.
//!
//! Constraint lists are kept verbatim: no normalization, reordering or
//! deduplication. An empty list describes the whole space.

use crate::error::{Error, Result};
use crate::numeric::ColVec;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint<T> {
    coeffs: ColVec<T>,
    bound: T,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn new(coeffs: ColVec<T>, bound: T) -> Self {
        Self { coeffs, bound }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn coeffs(&self) -> &ColVec<T> {
        &self.coeffs
    }

    pub fn bound(&self) -> &T {
        &self.bound
    }

    pub fn is_satisfied_by(&self, x: &ColVec<T>) -> Result<bool> {
        Ok(self.coeffs.dot(x)? <= self.bound)
    }

    pub fn lift_bottom(&self, new_dim: usize) -> Result<Self> {
        Ok(Self::new(self.coeffs.extend_bottom(new_dim)?, self.bound.clone()))
    }

    pub fn lift_top(&self, new_dim: usize) -> Result<Self> {
        Ok(Self::new(self.coeffs.extend_top(new_dim)?, self.bound.clone()))
    }
}

/// Zero-pads every constraint's normal vector at the bottom to `new_dim`.
pub fn lift_constraints_bottom<T: Scalar>(
    constraints: &[LinearConstraint<T>],
    new_dim: usize,
) -> Result<Vec<LinearConstraint<T>>> {
    constraints.iter().map(|c| c.lift_bottom(new_dim)).collect()
}

/// Zero-pads every constraint's normal vector at the top to `new_dim`.
pub fn lift_constraints_top<T: Scalar>(
    constraints: &[LinearConstraint<T>],
    new_dim: usize,
) -> Result<Vec<LinearConstraint<T>>> {
    constraints.iter().map(|c| c.lift_top(new_dim)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron<T> {
    dim: usize,
    constraints: Vec<LinearConstraint<T>>,
}

impl<T: Scalar> Polyhedron<T> {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint<T>>) -> Result<Self> {
        if let Some(bad) = constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::Dimension {
                op: "polyhedron",
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { dim, constraints })
    }

    /// The whole of `R^dim`.
    pub fn universe(dim: usize) -> Self {
        Self {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint<T>] {
        &self.constraints
    }

    pub fn into_constraints(self) -> Vec<LinearConstraint<T>> {
        self.constraints
    }

    pub fn contains(&self, x: &ColVec<T>) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::Dimension {
                op: "contains",
                expected: self.dim,
                found: x.dim(),
            });
        }
        for c in &self.constraints {
            if !c.is_satisfied_by(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Conjunction of both constraint lists, `self`'s first.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                op: "intersect",
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut constraints = Vec::with_capacity(self.constraints.len() + other.constraints.len());
        constraints.extend_from_slice(&self.constraints);
        constraints.extend_from_slice(&other.constraints);
        Ok(Self {
            dim: self.dim,
            constraints,
        })
    }

    /// Returns a copy with one extra constraint appended.
    pub fn with_constraint(&self, constraint: LinearConstraint<T>) -> Result<Self> {
        let mut constraints = self.constraints.clone();
        constraints.push(constraint);
        Self::new(self.dim, constraints)
    }
}
