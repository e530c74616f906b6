//! Dense column vectors and matrices with the block and padding operations
//! used to build concatenated piecewise-affine functions.
//!
//! Zero-sized vectors and matrices are valid values and act as neutral
//! elements for concatenation and block-diagonal assembly.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColVec<T> {
    entries: Vec<T>,
}

impl<T: Scalar> ColVec<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![T::zero(); dim],
        }
    }

    /// The `index`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    fn check_dim(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                op,
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        self.check_dim(other, "dot")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other, "vec_add")?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other, "vec_sub")?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self::new(self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(self.entries.iter().map(|a| factor.clone() * a.clone()).collect())
    }

    /// Stacks `self` above `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.dim() + other.dim());
        entries.extend_from_slice(&self.entries);
        entries.extend_from_slice(&other.entries);
        Self::new(entries)
    }

    /// Splits into the first `at` entries and the rest.
    pub fn split_at(&self, at: usize) -> Result<(Self, Self)> {
        if at > self.dim() {
            return Err(Error::Dimension {
                op: "split_at",
                expected: self.dim(),
                found: at,
            });
        }
        let (top, bottom) = self.entries.split_at(at);
        Ok((Self::new(top.to_vec()), Self::new(bottom.to_vec())))
    }

    /// Pads with zeros below the existing entries up to `new_dim`.
    pub fn extend_bottom(&self, new_dim: usize) -> Result<Self> {
        let pad = self.padding("extend_vec_bottom", new_dim)?;
        Ok(self.concat(&Self::zeros(pad)))
    }

    /// Pads with zeros above the existing entries up to `new_dim`.
    pub fn extend_top(&self, new_dim: usize) -> Result<Self> {
        let pad = self.padding("extend_vec_top", new_dim)?;
        Ok(Self::zeros(pad).concat(self))
    }

    fn padding(&self, op: &'static str, new_dim: usize) -> Result<usize> {
        new_dim.checked_sub(self.dim()).ok_or(Error::Shrink {
            op,
            from: self.dim(),
            to: new_dim,
        })
    }
}

impl<T> std::ops::Index<usize> for ColVec<T> {
    type Output = T;

    fn index(&self, index: usize) -> &T {
        &self.entries[index]
    }
}

impl<T: Scalar> FromIterator<T> for ColVec<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<T: fmt::Display> fmt::Display for ColVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds a `rows x cols` matrix from row vectors. The explicit shape
    /// makes `0 x n` and `n x 0` matrices expressible.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::Dimension {
                op: "from_rows",
                expected: rows,
                found: entries.len(),
            });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            if row.len() != cols {
                return Err(Error::Dimension {
                    op: "from_rows",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { rows, cols, data })
    }

    /// Matrix with a single column.
    pub fn from_col(v: &ColVec<T>) -> Self {
        Self {
            rows: v.dim(),
            cols: 1,
            data: v.entries().to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.cols + col]
    }

    pub fn row_slice(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row(&self, row: usize) -> ColVec<T> {
        ColVec::new(self.row_slice(row).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row_slice(r).to_vec()).collect()
    }

    fn shape_error(&self, other: &Self, op: &'static str) -> Error {
        Error::Shape {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.shape_error(other, "mat_mul"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = cell.clone() + a.clone() * other.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &ColVec<T>) -> Result<ColVec<T>> {
        if self.cols != x.dim() {
            return Err(Error::Dimension {
                op: "mat_vec_mul",
                expected: self.cols,
                found: x.dim(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row_slice(r)
                    .iter()
                    .zip(x.iter())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "mat_add", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "mat_sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(self.shape_error(other, op));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| factor.clone() * a.clone()).collect(),
        }
    }

    /// `self` in the top-left block, `other` in the bottom-right, zeros elsewhere.
    pub fn block_diag(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].clone_from_slice(self.row_slice(r));
        }
        for r in 0..other.rows {
            let start = (self.rows + r) * cols + self.cols;
            out.data[start..start + other.cols].clone_from_slice(other.row_slice(r));
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
