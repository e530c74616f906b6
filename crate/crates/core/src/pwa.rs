//! Piecewise-affine functions given by a list of `(polyhedron, M, b)` pieces.
//!
//! Evaluation takes the first piece whose polyhedron contains the input. A
//! function is univalent when any two overlapping pieces agree on their
//! whole overlap; then the first-match choice does not affect the value.
//! Univalence is decided exactly with the LP engine and cached on the value
//! as an [`UnivalenceStatus`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp;
use crate::numeric::{ColVec, Mat};
use crate::polyhedra::Polyhedron;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece<T> {
    polyhedron: Polyhedron<T>,
    matrix: Mat<T>,
    offset: ColVec<T>,
}

impl<T: Scalar> AffinePiece<T> {
    pub fn new(polyhedron: Polyhedron<T>, matrix: Mat<T>, offset: ColVec<T>) -> Result<Self> {
        if matrix.cols() != polyhedron.dim() {
            return Err(Error::Dimension {
                op: "affine piece",
                expected: polyhedron.dim(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() != offset.dim() {
            return Err(Error::Dimension {
                op: "affine piece",
                expected: matrix.rows(),
                found: offset.dim(),
            });
        }
        Ok(Self {
            polyhedron,
            matrix,
            offset,
        })
    }

    pub fn polyhedron(&self) -> &Polyhedron<T> {
        &self.polyhedron
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn offset(&self) -> &ColVec<T> {
        &self.offset
    }

    pub fn in_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn out_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `M x + b`, ignoring the polyhedron.
    pub fn apply(&self, x: &ColVec<T>) -> Result<ColVec<T>> {
        self.matrix.mul_vec(x)?.add(&self.offset)
    }
}

/// Two pieces whose affine maps differ at a common point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<T> {
    pub first: usize,
    pub second: usize,
    pub row: usize,
    pub witness: ColVec<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivalenceVerdict<T> {
    Univalent,
    Violation(Violation<T>),
}

impl<T> UnivalenceVerdict<T> {
    pub fn is_univalent(&self) -> bool {
        matches!(self, UnivalenceVerdict::Univalent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum UnivalenceStatus<T> {
    #[default]
    Unchecked,
    Verified,
    Refuted(Violation<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwaFn<T> {
    in_dim: usize,
    out_dim: usize,
    pieces: Vec<AffinePiece<T>>,
    status: UnivalenceStatus<T>,
}

impl<T: Scalar> PwaFn<T> {
    /// A function with the given pieces and an unchecked univalence status.
    pub fn new(in_dim: usize, out_dim: usize, pieces: Vec<AffinePiece<T>>) -> Result<Self> {
        for piece in &pieces {
            if piece.in_dim() != in_dim {
                return Err(Error::Dimension {
                    op: "pwa function",
                    expected: in_dim,
                    found: piece.in_dim(),
                });
            }
            if piece.out_dim() != out_dim {
                return Err(Error::Dimension {
                    op: "pwa function",
                    expected: out_dim,
                    found: piece.out_dim(),
                });
            }
        }
        Ok(Self {
            in_dim,
            out_dim,
            pieces,
            status: UnivalenceStatus::Unchecked,
        })
    }

    /// Replaces the cached univalence status without re-checking it, e.g.
    /// when loading a stored function.
    pub fn with_status(mut self, status: UnivalenceStatus<T>) -> Self {
        self.status = status;
        self
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(Mat::identity(n), ColVec::zeros(n)).expect("identity is shape-consistent")
    }

    /// Single full-space piece computing `M x + b`.
    pub fn linear(matrix: Mat<T>, offset: ColVec<T>) -> Result<Self> {
        let (out_dim, in_dim) = matrix.shape();
        let piece = AffinePiece::new(Polyhedron::universe(in_dim), matrix, offset)?;
        Ok(Self::new(in_dim, out_dim, vec![piece])?.with_status(UnivalenceStatus::Verified))
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn pieces(&self) -> &[AffinePiece<T>] {
        &self.pieces
    }

    pub fn status(&self) -> &UnivalenceStatus<T> {
        &self.status
    }

    fn check_input(&self, x: &ColVec<T>) -> Result<()> {
        if x.dim() != self.in_dim {
            return Err(Error::Dimension {
                op: "pwa eval",
                expected: self.in_dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Index of the first piece containing `x`.
    pub fn find_piece(&self, x: &ColVec<T>) -> Result<Option<usize>> {
        self.check_input(x)?;
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.polyhedron.contains(x)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Value at `x` from the first containing piece; `None` outside the domain.
    pub fn eval(&self, x: &ColVec<T>) -> Result<Option<ColVec<T>>> {
        match self.find_piece(x)? {
            Some(i) => Ok(Some(self.pieces[i].apply(x)?)),
            None => Ok(None),
        }
    }

    pub fn in_domain(&self, x: &ColVec<T>) -> Result<bool> {
        Ok(self.find_piece(x)?.is_some())
    }

    /// First violated `(pair, row)` in lexicographic order, or `None` if
    /// the function is univalent. Does not touch the cached status.
    pub fn find_violation(&self) -> Option<Violation<T>> {
        let n = self.pieces.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs.into_par_iter().find_map_first(|(i, j)| self.pair_violation(i, j))
    }

    fn pair_violation(&self, i: usize, j: usize) -> Option<Violation<T>> {
        let (a, b) = (&self.pieces[i], &self.pieces[j]);
        let rows: Vec<usize> = (0..self.out_dim)
            .filter(|&r| a.matrix.row_slice(r) != b.matrix.row_slice(r) || a.offset[r] != b.offset[r])
            .collect();
        if rows.is_empty() {
            return None;
        }
        let overlap = a
            .polyhedron
            .intersect(&b.polyhedron)
            .expect("pieces share the input dimension");
        if lp::is_empty(&overlap) {
            return None;
        }
        let diff = a.matrix.sub(&b.matrix).expect("pieces share a shape");
        rows.into_iter().find_map(|row| {
            let target = b.offset[row].clone() - a.offset[row].clone();
            lp::find_deviation(&overlap, &diff.row(row), &target)
                .expect("functional has the input dimension")
                .map(|witness| Violation {
                    first: i,
                    second: j,
                    row,
                    witness,
                })
        })
    }

    /// Decides univalence and caches the outcome on `self`.
    pub fn check_univalence(&mut self) -> UnivalenceVerdict<T> {
        match self.find_violation() {
            None => {
                self.status = UnivalenceStatus::Verified;
                UnivalenceVerdict::Univalent
            }
            Some(v) => {
                self.status = UnivalenceStatus::Refuted(v.clone());
                UnivalenceVerdict::Violation(v)
            }
        }
    }

    /// Drops pieces with empty polyhedra, keeping the order of the rest.
    pub fn prune_empty(&self) -> Self {
        let pieces: Vec<_> = self
            .pieces
            .par_iter()
            .filter(|p| !lp::is_empty(&p.polyhedron))
            .cloned()
            .collect();
        // Removing pieces cannot create a violation, but can remove one.
        let status = match &self.status {
            UnivalenceStatus::Verified => UnivalenceStatus::Verified,
            _ => UnivalenceStatus::Unchecked,
        };
        Self {
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            pieces,
            status,
        }
    }

    /// Number of pieces with a non-empty polyhedron.
    pub fn count_regions(&self) -> usize {
        self.pieces.par_iter().filter(|p| !lp::is_empty(&p.polyhedron)).count()
    }
}
